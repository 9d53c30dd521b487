#pragma once

// Penalty-weighted aggregate welfare F = (1 - lambda * f_egal) * f_util, the
// coordinate-bump monotonicity audit and the Gini penalty bound.

#include <cstdint>
#include <vector>

#include "welfare/core.hpp"
#include "welfare/measures.hpp"

namespace welfare {

struct AggregateSpec {
  MeasureDescriptor egal_measure = MeasureDescriptor::gini();
  double penalty_weight = 1.0;  // lambda

  /// Throws InvalidParams when lambda is not finite.
  static AggregateSpec make(MeasureDescriptor measure, double lambda);
};

/// Unweighted sum of utilities.
double f_util(const UtilityProfile& p);
double f_aggregate(const UtilityProfile& p, const AggregateSpec& spec);

/// Gini via the rank formula (1/n)(n + 1 - 2 sum_j (n + 1 - j) x_(j) / S).
double rank_gini(const UtilityProfile& p);

/// dG/dx for the maximum, (2/n) sum_{j<n} (n - j) x_(j) / S^2.
double gini_max_partial(const UtilityProfile& p);

/// Analytic one-sided partial derivative of the Gini-penalized aggregate
/// with respect to coordinate i (upward direction; ties resolve to the
/// highest rank in the tie group).
double gini_aggregate_partial(const UtilityProfile& p, double lambda, std::size_t i);

/// n / (n - 1); its infimum over n is 1.
double gini_lambda_bound(std::int64_t n);

/// n * y_e, equal to (1 - A(epsilon)) * sum x.
double atkinson_aggregate(const UtilityProfile& p, double epsilon);

enum class ValueSampling { uniform, log_uniform };

struct ProfileGenerator {
  std::size_t samples = 10'000;
  std::size_t min_n = 2;
  std::size_t max_n = 50;
  double min_value = 0.1;
  double max_value = 100.0;
  ValueSampling sampling = ValueSampling::log_uniform;
  std::uint64_t seed = 0x5eed;

  void validate() const;
  /// Deterministic in (seed, index) and independent of evaluation order.
  UtilityProfile sample(std::size_t index) const;
};

struct MonotonicityViolation {
  std::size_t sample = 0;
  std::vector<double> profile;
  std::size_t index = 0;
  double delta = 0.0;
  double before = 0.0;
  double after = 0.0;
};

struct AuditReport {
  AggregateSpec spec;
  std::uint64_t seed = 0;
  std::size_t samples = 0;
  std::size_t triples_checked = 0;
  std::size_t violation_count = 0;
  // first violation per offending sample, sorted by (sample, index, delta),
  // truncated to max_reported
  std::vector<MonotonicityViolation> violations;
  // Gini penalty only: finite-difference vs analytic derivative sign checks
  std::size_t sign_checks = 0;
  std::size_t sign_disagreements = 0;

  bool passed() const { return violation_count == 0; }
};

inline constexpr double kMonotonicitySlack = 1e-9;
inline constexpr double kBumpFractions[] = {1e-6, 1e-3, 0.1};

/// Bumps every coordinate of every sampled profile by delta in
/// {1e-6, 1e-3, 0.1} * mean and flags F decreasing by more than the slack.
AuditReport monotonicity_audit(const AggregateSpec& spec, const ProfileGenerator& gen,
                               std::size_t max_reported = 32);

}  // namespace welfare
