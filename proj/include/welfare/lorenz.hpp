#pragma once

#include <span>
#include <string_view>
#include <vector>

#include "welfare/core.hpp"

namespace welfare {

struct LorenzKnot {
  double u = 0.0;  // population share
  double l = 0.0;  // utility share

  friend bool operator==(const LorenzKnot&, const LorenzKnot&) = default;
};

// Piecewise-linear Lorenz curve through its knots: starts at (0,0), ends at
// (1,1), u strictly increasing, slopes nondecreasing, L(u) <= u.
class LorenzCurve {
 public:
  /// Validates the invariants above (to 1e-12). Throws InvalidParams.
  static LorenzCurve from_knots(std::vector<LorenzKnot> knots);
  static LorenzCurve diagonal();

  std::span<const LorenzKnot> knots() const noexcept { return knots_; }
  /// Linear interpolation between knots; u is clamped to [0, 1].
  double at(double u) const;
  /// Exact trapezoid integral of L over [0, 1].
  double integral() const;

 private:
  explicit LorenzCurve(std::vector<LorenzKnot> knots) : knots_(std::move(knots)) {}
  std::vector<LorenzKnot> knots_;
};

/// Knots at u = i/n with l = (ascending cumulative sum) / total.
/// Requires non-negative values and a positive total.
LorenzCurve lorenz_from_profile(const UtilityProfile& p);

enum class LorenzOrder { a_dominates, b_dominates, equal, crossing };
std::string_view to_string(LorenzOrder order) noexcept;

struct LorenzComparison {
  LorenzOrder order = LorenzOrder::equal;
  double max_gap = 0.0;  // sup |L_a - L_b|
};

/// Compares on the union of both knot sets; exact for piecewise-linear curves.
LorenzComparison lorenz_dominates(const LorenzCurve& a, const LorenzCurve& b,
                                  const Tolerance& tol = kDefaultTolerance);

/// J(L) = 1 - 2 * integral of L.
double gini_from_lorenz(const LorenzCurve& c);

// Rank weight p(u) = k (1 - u); only the Gini-linear family is supported.
class RankWeightFn {
 public:
  explicit RankWeightFn(double k);
  double k() const noexcept { return k_; }
  double operator()(double u) const noexcept { return k_ * (1.0 - u); }

 private:
  double k_;
};

/// V(L) = k * integral of L, which equals (k / 2)(1 - J(L)).
double lorenz_value(const LorenzCurve& c, const RankWeightFn& w);

}  // namespace welfare
