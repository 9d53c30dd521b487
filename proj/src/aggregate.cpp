#include "welfare/aggregate.hpp"

#include <cmath>
#include <optional>
#include <random>

#include "welfare/parallel.hpp"

namespace welfare {

AggregateSpec AggregateSpec::make(MeasureDescriptor measure, double lambda) {
  if (!std::isfinite(lambda)) {
    throw Error(ErrorKind::InvalidParams, "penalty weight lambda must be finite");
  }
  return AggregateSpec{std::move(measure), lambda};
}

double f_util(const UtilityProfile& p) { return p.sum(); }

double f_aggregate(const UtilityProfile& p, const AggregateSpec& spec) {
  if (spec.penalty_weight == 0.0) return f_util(p);
  return (1.0 - spec.penalty_weight * evaluate(spec.egal_measure, p)) * f_util(p);
}

double rank_gini(const UtilityProfile& p) {
  require_nonnegative(p, "rank gini");
  const double total = p.sum();
  if (!(total > 0.0)) throw Error(ErrorKind::ZeroTotal, "rank gini requires a positive total");
  const auto view = sort_view(p);
  const double n = static_cast<double>(view.size());
  CompensatedSum weighted;
  for (std::size_t j = 0; j < view.size(); ++j) {
    weighted.add((n - static_cast<double>(j)) * view[j]);  // (n + 1 - j) for 1-based j
  }
  return (n + 1.0 - 2.0 * weighted.value() / total) / n;
}

double gini_max_partial(const UtilityProfile& p) {
  require_nonnegative(p, "gini partial");
  const double total = p.sum();
  if (!(total > 0.0)) throw Error(ErrorKind::ZeroTotal, "gini partial requires a positive total");
  const auto view = sort_view(p);
  const std::size_t n = view.size();
  CompensatedSum acc;
  for (std::size_t j = 0; j + 1 < n; ++j) {
    acc.add(static_cast<double>(n - 1 - j) * view[j]);  // (n - j) for 1-based j
  }
  return 2.0 / static_cast<double>(n) * acc.value() / (total * total);
}

double gini_aggregate_partial(const UtilityProfile& p, double lambda, std::size_t i) {
  if (i >= p.size()) throw Error(ErrorKind::DimensionMismatch, "coordinate out of range");
  // F = S - lambda * (1/n) sum_r (2r - n - 1) x_(r), so dF/dx_(r) = 1 - lambda (2r - n - 1) / n
  std::size_t rank = 0;  // 1-based rank after moving up by an infinitesimal
  for (double v : p.values()) {
    if (v <= p[i]) ++rank;
  }
  const double n = static_cast<double>(p.size());
  return 1.0 - lambda * (2.0 * static_cast<double>(rank) - n - 1.0) / n;
}

double gini_lambda_bound(std::int64_t n) {
  if (n < 2) throw Error(ErrorKind::InvalidParams, "lambda bound needs n >= 2");
  return static_cast<double>(n) / static_cast<double>(n - 1);
}

double atkinson_aggregate(const UtilityProfile& p, double epsilon) {
  return static_cast<double>(p.size()) * equally_distributed_equivalent(p, epsilon);
}

// --- audit --------------------------------------------------------------------

void ProfileGenerator::validate() const {
  if (min_n < 1 || max_n < min_n) {
    throw Error(ErrorKind::InvalidParams, "generator needs 1 <= min_n <= max_n");
  }
  if (!std::isfinite(min_value) || !std::isfinite(max_value) || !(min_value > 0.0) ||
      max_value < min_value) {
    throw Error(ErrorKind::InvalidParams, "generator needs 0 < min_value <= max_value");
  }
}

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

struct SampleOutcome {
  std::size_t triples = 0;
  std::size_t violations = 0;
  std::optional<MonotonicityViolation> first;
  std::size_t sign_checks = 0;
  std::size_t sign_disagreements = 0;
};

bool crosses_neighbour(const UtilityProfile& p, std::size_t i, double bumped) {
  for (std::size_t j = 0; j < p.size(); ++j) {
    if (j != i && p[j] > p[i] && p[j] <= bumped) return true;
  }
  return false;
}

SampleOutcome audit_sample(const AggregateSpec& spec, const UtilityProfile& p,
                           std::size_t sample) {
  SampleOutcome out;
  const bool gini_penalty = spec.egal_measure.kind == MeasureKind::gini;
  const double before = f_aggregate(p, spec);
  const double mean = p.mean();
  std::vector<double> values(p.values().begin(), p.values().end());
  for (std::size_t i = 0; i < p.size(); ++i) {
    for (double fraction : kBumpFractions) {
      const double delta = fraction * mean;
      values[i] = p[i] + delta;
      const double after = f_aggregate(UtilityProfile(values), spec);
      values[i] = p[i];
      ++out.triples;
      if (after - before < -kMonotonicitySlack) {
        ++out.violations;
        if (!out.first) {
          out.first = MonotonicityViolation{sample, values, i, delta, before, after};
        }
      }
      if (gini_penalty && fraction == kBumpFractions[0] &&
          !crosses_neighbour(p, i, p[i] + delta)) {
        const double slope = gini_aggregate_partial(p, spec.penalty_weight, i);
        if (std::abs(slope * delta) > 1e-8) {
          ++out.sign_checks;
          if ((after - before > 0.0) != (slope > 0.0)) ++out.sign_disagreements;
        }
      }
    }
  }
  return out;
}

}  // namespace

UtilityProfile ProfileGenerator::sample(std::size_t index) const {
  std::mt19937_64 rng(splitmix64(seed ^ splitmix64(index)));
  std::uniform_int_distribution<std::size_t> size_dist(min_n, max_n);
  const std::size_t n = size_dist(rng);
  std::vector<double> values(n);
  if (sampling == ValueSampling::uniform) {
    std::uniform_real_distribution<double> dist(min_value, max_value);
    for (double& v : values) v = dist(rng);
  } else {
    std::uniform_real_distribution<double> dist(std::log(min_value), std::log(max_value));
    for (double& v : values) v = std::exp(dist(rng));
  }
  return UtilityProfile(std::move(values));
}

AuditReport monotonicity_audit(const AggregateSpec& spec, const ProfileGenerator& gen,
                               std::size_t max_reported) {
  gen.validate();
  std::vector<SampleOutcome> outcomes(gen.samples);
  parallel_for(gen.samples, [&](std::size_t s) {
    outcomes[s] = audit_sample(spec, gen.sample(s), s);
  });

  AuditReport report;
  report.spec = spec;
  report.seed = gen.seed;
  report.samples = gen.samples;
  for (auto& o : outcomes) {
    report.triples_checked += o.triples;
    report.violation_count += o.violations;
    report.sign_checks += o.sign_checks;
    report.sign_disagreements += o.sign_disagreements;
    if (o.first && report.violations.size() < max_reported) {
      report.violations.push_back(std::move(*o.first));
    }
  }
  return report;
}

}  // namespace welfare
