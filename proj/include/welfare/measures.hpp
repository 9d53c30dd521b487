#pragma once

// Scalar inequality and fairness measures: range, variance, standard
// deviation, relative mean deviation, Gini, the Atkinson family and the
// generalized fairness measure with power and logarithmic generators.

#include <optional>
#include <set>
#include <string>
#include <string_view>

#include "welfare/core.hpp"

namespace welfare {

double range_measure(const UtilityProfile& p);

/// Population variance (divides by n).
double variance_measure(const UtilityProfile& p);
double std_dev_measure(const UtilityProfile& p);

/// Mean absolute deviation over the mean. Throws ZeroMean.
double relative_mean_deviation(const UtilityProfile& p);

/// O(n log n) sorted-rank form. Requires non-negative values with a
/// positive mean; n = 1 gives 0.
double gini(const UtilityProfile& p);
/// Literal double sum over all pairs, O(n^2).
double gini_pairwise(const UtilityProfile& p);

/// Generalized mean of order 1 - epsilon (geometric mean at epsilon = 1).
/// Requires positive values.
double equally_distributed_equivalent(const UtilityProfile& p, double epsilon);

/// 1 - y_e / mean. Requires positive values and epsilon >= 0.
double atkinson(const UtilityProfile& p, double epsilon);

// Distance from 1 inside which epsilon is routed to the geometric-mean branch.
inline constexpr double kUnitEpsilonBand = 1e-9;

enum class FairnessGenerator { power, log };

struct FairnessParams {
  FairnessGenerator generator = FairnessGenerator::power;
  double beta = 1.0;  // generator exponent
  double r = 0.0;     // population exponent: f(1_n) = n^r
  double rho = 1.0;   // partition-weight exponent, rho + beta * r = 1

  /// Validates and returns params. rho is derived when omitted and checked
  /// against 1 - beta * r (1e-9) when given.
  static FairnessParams power(double beta, double r,
                              std::optional<double> rho = std::nullopt);
  static FairnessParams log(double r);
  /// beta = 1 - epsilon, r = epsilon / (1 - epsilon); then
  /// f(x) = n^r * (1 - A(epsilon)). Throws InvalidParams for epsilon in {0, 1}.
  static FairnessParams for_atkinson(double epsilon);

  void validate() const;
};

/// Power form (sum_i s_i^{1 - beta r})^{1/beta}; log form exp(r H(s)) where
/// H is the Shannon entropy of the shares s_i = x_i / sum x. The sign factor
/// is fixed to +1.
double fairness_measure(const UtilityProfile& p, const FairnessParams& params);

/// Inverts f = n^r (1 - A) under FairnessParams::for_atkinson(epsilon).
double fairness_to_atkinson(double f_value, std::size_t n, double epsilon);

enum class MeasureKind {
  range,
  variance,
  std_dev,
  relative_mean_deviation,
  gini,
  atkinson,
  fairness_power,
  fairness_log,
};

std::string_view to_string(MeasureKind kind) noexcept;
/// Accepts the enum names plus the aliases "std", "stddev", "rmd".
std::optional<MeasureKind> measure_kind_from_string(std::string_view name);

struct MeasureDescriptor {
  MeasureKind kind = MeasureKind::gini;
  double epsilon = 0.0;       // atkinson only
  FairnessParams params{};  // fairness_* only
  std::set<std::string> tags;

  static MeasureDescriptor range();
  static MeasureDescriptor variance();
  static MeasureDescriptor std_dev();
  static MeasureDescriptor relative_mean_deviation();
  static MeasureDescriptor gini();
  static MeasureDescriptor atkinson(double epsilon);
  static MeasureDescriptor fairness(const FairnessParams& params);

  bool has_tag(std::string_view tag) const;
  std::string name() const { return std::string(to_string(kind)); }
};

double evaluate(const MeasureDescriptor& m, const UtilityProfile& p);

}  // namespace welfare
