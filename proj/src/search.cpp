#include "welfare/search.hpp"

#include <algorithm>
#include <cmath>

#include "welfare/measures.hpp"
#include "welfare/parallel.hpp"

namespace welfare {

std::string_view to_string(PairOrder order) noexcept {
  switch (order) {
    case PairOrder::a_better: return "a_better";
    case PairOrder::b_better: return "b_better";
    case PairOrder::tie: return "tie";
  }
  return "unknown";
}

PairOrder compare_values(double value_a, double value_b) {
  const double band = kOrderTieBand * std::max(std::abs(value_a), std::abs(value_b));
  if (value_a - value_b > band) return PairOrder::a_better;
  if (value_b - value_a > band) return PairOrder::b_better;
  return PairOrder::tie;
}

namespace {

bool is_flip(PairOrder before, PairOrder after) {
  return before != PairOrder::tie && after != PairOrder::tie && before != after;
}

}  // namespace

// --- scale reversal ------------------------------------------------------------

void ScaleGrid::validate() const {
  if (!explicit_scales.empty()) {
    for (double t : explicit_scales) {
      if (!std::isfinite(t) || !(t > 0.0)) {
        throw Error(ErrorKind::InvalidScale, "grid scales must be finite and > 0");
      }
    }
    return;
  }
  if (!std::isfinite(log10_min) || !std::isfinite(log10_max) || log10_max < log10_min ||
      points < 1) {
    throw Error(ErrorKind::InvalidParams, "scale grid needs log10_min <= log10_max, points >= 1");
  }
}

std::vector<double> ScaleGrid::values() const {
  validate();
  if (!explicit_scales.empty()) {
    auto out = explicit_scales;
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
  }
  if (points == 1) return {std::pow(10.0, log10_min)};
  std::vector<double> out(points);
  const double steps = static_cast<double>(points - 1);
  for (std::size_t i = 0; i < points; ++i) {
    // (lo * steps + span * i) / steps keeps decade points exact
    const double exponent =
        (log10_min * steps + (log10_max - log10_min) * static_cast<double>(i)) / steps;
    out[i] = std::pow(10.0, exponent);
  }
  return out;
}

bool ReversalWitness::verify(const AggregateSpec& spec) const {
  const double a1 = f_aggregate(profile_a, spec);
  const double b1 = f_aggregate(profile_b, spec);
  const double at = f_aggregate(scale_profile(profile_a, scale), spec);
  const double bt = f_aggregate(scale_profile(profile_b, scale), spec);
  return compare_values(a1, b1) == before && compare_values(at, bt) == after &&
         is_flip(before, after);
}

std::optional<ReversalWitness> reversal_at(const UtilityProfile& a, const UtilityProfile& b,
                                           const AggregateSpec& spec, double t) {
  ReversalWitness w{a, b, t};
  w.value_a = f_aggregate(a, spec);
  w.value_b = f_aggregate(b, spec);
  w.scaled_value_a = f_aggregate(scale_profile(a, t), spec);
  w.scaled_value_b = f_aggregate(scale_profile(b, t), spec);
  w.before = compare_values(w.value_a, w.value_b);
  w.after = compare_values(w.scaled_value_a, w.scaled_value_b);
  if (!is_flip(w.before, w.after)) return std::nullopt;
  return w;
}

ScaleSweep sweep_scale_reversals(const UtilityProfile& a, const UtilityProfile& b,
                                 const AggregateSpec& spec, const ScaleGrid& grid) {
  ScaleSweep sweep;
  sweep.scales = grid.values();
  sweep.base_order = compare_values(f_aggregate(a, spec), f_aggregate(b, spec));
  sweep.orders.resize(sweep.scales.size());
  parallel_for(sweep.scales.size(), [&](std::size_t i) {
    const double t = sweep.scales[i];
    sweep.orders[i] = compare_values(f_aggregate(scale_profile(a, t), spec),
                                     f_aggregate(scale_profile(b, t), spec));
  });
  for (std::size_t i = 0; i < sweep.scales.size(); ++i) {
    if (is_flip(sweep.base_order, sweep.orders[i])) {
      sweep.flipping_scales.push_back(sweep.scales[i]);
    }
  }
  if (!sweep.flipping_scales.empty()) {
    sweep.first = reversal_at(a, b, spec, sweep.flipping_scales.front());
    if (!sweep.first) {
      throw Error(ErrorKind::InternalNumeric, "reversal witness failed to recompute");
    }
  }
  return sweep;
}

std::optional<ReversalWitness> find_scale_reversal(const UtilityProfile& a,
                                                   const UtilityProfile& b,
                                                   const AggregateSpec& spec,
                                                   const ScaleGrid& grid) {
  return sweep_scale_reversals(a, b, spec, grid).first;
}

// --- IRBD collapse --------------------------------------------------------------

PairOrder leximin_compare(const UtilityProfile& a, const UtilityProfile& b) {
  const auto sa = sort_view(a);
  const auto sb = sort_view(b);
  const std::size_t common = std::min(sa.size(), sb.size());
  for (std::size_t i = 0; i < common; ++i) {
    if (sa[i] > sb[i]) return PairOrder::a_better;
    if (sb[i] > sa[i]) return PairOrder::b_better;
  }
  // surplus entries add k-weighted terms of their own sign
  for (std::size_t i = common; i < sa.size(); ++i) {
    if (sa[i] != 0.0) return sa[i] > 0.0 ? PairOrder::a_better : PairOrder::b_better;
  }
  for (std::size_t i = common; i < sb.size(); ++i) {
    if (sb[i] != 0.0) return sb[i] > 0.0 ? PairOrder::b_better : PairOrder::a_better;
  }
  return PairOrder::tie;
}

CollapseReport demonstrate_irbd_collapse(const UtilityProfile& a, const UtilityProfile& b,
                                         const DiscountFactor& k, std::int64_t lambda_max) {
  if (lambda_max < 1) {
    throw Error(ErrorKind::InvalidReplication, "lambda_max must be >= 1");
  }
  CollapseReport report;
  report.leximin_order = leximin_compare(a, b);
  if (report.leximin_order == PairOrder::tie) {
    throw Error(ErrorKind::DegenerateIdentical, "sorted profiles are identical");
  }
  report.k = k.value();
  report.cross_size = a.size() != b.size();
  const auto largest = static_cast<std::int64_t>(std::max(a.size(), b.size()));
  report.lambda_max = std::max<std::int64_t>(1, std::min(lambda_max, kReplicationBudget / largest));
  report.limit_a = irbd_replication_limit(a, k);
  report.limit_b = irbd_replication_limit(b, k);

  std::vector<std::int64_t> ladder;
  for (std::int64_t lam = 1; lam <= report.lambda_max; lam *= 2) ladder.push_back(lam);
  report.rungs.resize(ladder.size());
  parallel_for(ladder.size(), [&](std::size_t i) {
    const auto lam = ladder[i];
    const double wa = w_irbd(replicate_profile(a, lam), k);
    const double wb = w_irbd(replicate_profile(b, lam), k);
    report.rungs[i] = {lam, wa, wb, compare_values(wa, wb)};
  });
  report.initial_order = report.rungs.front().order;

  for (std::size_t i = report.rungs.size(); i-- > 0;) {
    if (report.rungs[i].order != report.leximin_order) break;
    report.crossover_lambda = report.rungs[i].lambda;
  }
  return report;
}

// --- ULBD construction ----------------------------------------------------------

UlbdConstruction build_ulbd_construction(std::int64_t n_total, std::int64_t m_levels,
                                         const DiscountFactor& k) {
  if (n_total < 2 || n_total % 2 != 0 || m_levels < 2 || n_total % m_levels != 0) {
    throw Error(ErrorKind::InvalidShape,
                "need N even, m >= 2 and m dividing N (N=" + std::to_string(n_total) +
                    ", m=" + std::to_string(m_levels) + ")");
  }
  UlbdConstruction c;
  c.n_total = n_total;
  c.m_levels = m_levels;
  c.k = k.value();
  const auto half = static_cast<std::size_t>(n_total / 2);
  c.dist_a = {{1.0, 10.0}, {half, half}};
  const auto per_level = static_cast<std::size_t>(n_total / m_levels);
  const double span = static_cast<double>(m_levels - 1);
  for (std::int64_t j = 1; j <= m_levels; ++j) {
    c.dist_b.levels.push_back(9.0 + static_cast<double>(j - 1) / span);
    c.dist_b.counts.push_back(per_level);
  }

  const double n = static_cast<double>(n_total);
  c.w_a = w_ulbd(c.dist_a, k);
  c.w_a_closed_form = n / 2.0 + 5.0 * n * k.value();
  c.w_b = w_ulbd(c.dist_b, k);
  const auto profile_a = c.dist_a.to_profile();
  const auto profile_b = c.dist_b.to_profile();
  c.total_a = profile_a.sum();
  c.total_b = profile_b.sum();
  c.gini_a = gini(profile_a);
  c.gini_b = gini(profile_b);
  c.anomaly = c.w_a > c.w_b && c.total_b > c.total_a && c.gini_b < c.gini_a;
  return c;
}

bool ulbd_limit_inequality_holds(const DiscountFactor& k, std::int64_t m) {
  if (m < 2) throw Error(ErrorKind::InvalidParams, "m must be >= 2");
  const double kv = k.value();
  const double md = static_cast<double>(m);
  const double lhs = 0.5 + 5.0 * kv;
  const double rhs = 9.0 / (md * (1.0 - kv)) + kv / (md * (md - 1.0) * (1.0 - kv) * (1.0 - kv));
  return lhs > rhs;
}

std::int64_t anomaly_threshold_m(const DiscountFactor& k) {
  // the right-hand side decreases strictly in m: gallop, then bisect
  std::int64_t lo = 1;  // treated as failing
  std::int64_t hi = 2;
  while (!ulbd_limit_inequality_holds(k, hi)) {
    lo = hi;
    if (hi > (std::int64_t{1} << 61)) {
      throw Error(ErrorKind::InternalNumeric, "anomaly threshold scan overflowed");
    }
    hi *= 2;
  }
  while (hi - lo > 1) {
    const std::int64_t mid = lo + (hi - lo) / 2;
    if (ulbd_limit_inequality_holds(k, mid)) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return hi;
}

}  // namespace welfare
