#include "welfare/lorenz.hpp"

#include <algorithm>
#include <cmath>

namespace welfare {

namespace {
constexpr double kKnotSlack = 1e-12;

void invalid(const std::string& what) { throw Error(ErrorKind::InvalidParams, what); }
}  // namespace

LorenzCurve LorenzCurve::from_knots(std::vector<LorenzKnot> knots) {
  if (knots.size() < 2) invalid("a Lorenz curve needs at least two knots");
  if (knots.front() != LorenzKnot{0.0, 0.0}) invalid("first knot must be (0,0)");
  if (knots.back() != LorenzKnot{1.0, 1.0}) invalid("last knot must be (1,1)");
  double prev_slope = -1.0;
  for (std::size_t i = 1; i < knots.size(); ++i) {
    const auto& lo = knots[i - 1];
    const auto& hi = knots[i];
    if (!std::isfinite(hi.u) || !std::isfinite(hi.l)) invalid("knots must be finite");
    if (!(hi.u > lo.u)) invalid("knot abscissae must be strictly increasing");
    if (hi.l < lo.l - kKnotSlack) invalid("Lorenz curve must be nondecreasing");
    if (hi.l > hi.u + kKnotSlack) invalid("Lorenz curve must lie on or below the diagonal");
    const double slope = (hi.l - lo.l) / (hi.u - lo.u);
    if (slope < prev_slope - 1e-9 * std::max(1.0, std::abs(prev_slope))) {
      invalid("Lorenz curve must be convex");
    }
    prev_slope = slope;
  }
  return LorenzCurve(std::move(knots));
}

LorenzCurve LorenzCurve::diagonal() { return LorenzCurve({{0.0, 0.0}, {1.0, 1.0}}); }

double LorenzCurve::at(double u) const {
  u = std::clamp(u, 0.0, 1.0);
  auto hi = std::lower_bound(knots_.begin(), knots_.end(), u,
                             [](const LorenzKnot& k, double x) { return k.u < x; });
  if (hi == knots_.begin()) return hi->l;
  if (hi->u == u) return hi->l;
  const auto lo = std::prev(hi);
  const double w = (u - lo->u) / (hi->u - lo->u);
  return lo->l + w * (hi->l - lo->l);
}

double LorenzCurve::integral() const {
  CompensatedSum acc;
  for (std::size_t i = 1; i < knots_.size(); ++i) {
    acc.add(0.5 * (knots_[i].u - knots_[i - 1].u) * (knots_[i].l + knots_[i - 1].l));
  }
  return acc.value();
}

LorenzCurve lorenz_from_profile(const UtilityProfile& p) {
  require_nonnegative(p, "lorenz curve");
  const double total = p.sum();
  if (!(total > 0.0)) throw Error(ErrorKind::ZeroTotal, "lorenz curve requires a positive total");
  const auto view = sort_view(p);
  const double n = static_cast<double>(view.size());
  std::vector<LorenzKnot> knots;
  knots.reserve(view.size() + 1);
  knots.push_back({0.0, 0.0});
  CompensatedSum running;
  for (std::size_t i = 0; i < view.size(); ++i) {
    running.add(view[i]);
    knots.push_back({static_cast<double>(i + 1) / n, running.value() / total});
  }
  // pin the endpoint exactly; the compensated total and running sum agree to
  // rounding but the curve invariant wants (1,1)
  knots.back() = {1.0, 1.0};
  return LorenzCurve::from_knots(std::move(knots));
}

std::string_view to_string(LorenzOrder order) noexcept {
  switch (order) {
    case LorenzOrder::a_dominates: return "a_dominates";
    case LorenzOrder::b_dominates: return "b_dominates";
    case LorenzOrder::equal: return "equal";
    case LorenzOrder::crossing: return "crossing";
  }
  return "unknown";
}

LorenzComparison lorenz_dominates(const LorenzCurve& a, const LorenzCurve& b,
                                  const Tolerance& tol) {
  std::vector<double> grid;
  grid.reserve(a.knots().size() + b.knots().size());
  for (const auto& k : a.knots()) grid.push_back(k.u);
  for (const auto& k : b.knots()) grid.push_back(k.u);
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());

  bool a_above = false;
  bool b_above = false;
  double max_gap = 0.0;
  for (double u : grid) {
    const double la = a.at(u);
    const double lb = b.at(u);
    const double gap = la - lb;
    max_gap = std::max(max_gap, std::abs(gap));
    const double band = tol.band(la, lb);
    if (gap > band) a_above = true;
    if (-gap > band) b_above = true;
  }
  LorenzOrder order = LorenzOrder::equal;
  if (a_above && b_above) {
    order = LorenzOrder::crossing;
  } else if (a_above) {
    order = LorenzOrder::a_dominates;
  } else if (b_above) {
    order = LorenzOrder::b_dominates;
  }
  return {order, max_gap};
}

double gini_from_lorenz(const LorenzCurve& c) { return 1.0 - 2.0 * c.integral(); }

RankWeightFn::RankWeightFn(double k) : k_(k) {
  if (!std::isfinite(k) || !(k > 0.0)) {
    throw Error(ErrorKind::InvalidParams, "rank weight scale k must be > 0");
  }
}

double lorenz_value(const LorenzCurve& c, const RankWeightFn& w) {
  return w.k() * c.integral();
}

}  // namespace welfare
