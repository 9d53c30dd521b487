#pragma once

// Counterexample engines: scale reversals of penalty-weighted aggregates,
// the IRBD replication collapse, and the ULBD two-distribution construction.

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "welfare/aggregate.hpp"
#include "welfare/core.hpp"
#include "welfare/rank_weighted.hpp"

namespace welfare {

enum class PairOrder { a_better, b_better, tie };
std::string_view to_string(PairOrder order) noexcept;

// Values within this relative band compare as ties.
inline constexpr double kOrderTieBand = 1e-12;
PairOrder compare_values(double value_a, double value_b);

// Geometric grid 10^lo .. 10^hi with `points` points, or explicit scales.
struct ScaleGrid {
  double log10_min = -3.0;
  double log10_max = 3.0;
  std::size_t points = 121;
  std::vector<double> explicit_scales;

  void validate() const;
  std::vector<double> values() const;
};

struct ReversalWitness {
  UtilityProfile profile_a;
  UtilityProfile profile_b;
  double scale = 1.0;
  PairOrder before = PairOrder::tie;  // at t = 1
  PairOrder after = PairOrder::tie;   // at t = scale
  double value_a = 0.0;               // F_agg(a)
  double value_b = 0.0;               // F_agg(b)
  double scaled_value_a = 0.0;        // F_agg(t a)
  double scaled_value_b = 0.0;        // F_agg(t b)

  /// Recomputes all four values from scratch and confirms the flip.
  bool verify(const AggregateSpec& spec) const;
};

/// The witness at a fixed scale t, or none when the strict order at t is not
/// the opposite of the strict order at 1.
std::optional<ReversalWitness> reversal_at(const UtilityProfile& a, const UtilityProfile& b,
                                           const AggregateSpec& spec, double t);

struct ScaleSweep {
  PairOrder base_order = PairOrder::tie;
  std::vector<double> scales;
  std::vector<PairOrder> orders;
  std::vector<double> flipping_scales;  // ascending
  std::optional<ReversalWitness> first;  // smallest flipping scale
};

ScaleSweep sweep_scale_reversals(const UtilityProfile& a, const UtilityProfile& b,
                                 const AggregateSpec& spec, const ScaleGrid& grid = {});

/// Smallest grid scale whose strict ordering flips relative to t = 1.
std::optional<ReversalWitness> find_scale_reversal(const UtilityProfile& a,
                                                   const UtilityProfile& b,
                                                   const AggregateSpec& spec,
                                                   const ScaleGrid& grid = {});

/// Lexicographic comparison of ascending order statistics (the ordering the
/// replicated IRBD values converge to). Longer profiles continue with their
/// surplus entries when the common prefix is equal.
PairOrder leximin_compare(const UtilityProfile& a, const UtilityProfile& b);

struct CollapseRung {
  std::int64_t lambda = 1;
  double w_a = 0.0;
  double w_b = 0.0;
  PairOrder order = PairOrder::tie;
};

struct CollapseReport {
  double k = 0.5;
  std::int64_t lambda_max = 1;  // after the 10^6 / n cap
  std::vector<CollapseRung> rungs;  // lambda = 1, 2, 4, ...
  PairOrder initial_order = PairOrder::tie;
  PairOrder leximin_order = PairOrder::tie;
  // smallest rung from which every rung matches the leximin order
  std::optional<std::int64_t> crossover_lambda;
  double limit_a = 0.0;
  double limit_b = 0.0;
  bool cross_size = false;  // unnormalized values of different-size populations
};

inline constexpr std::int64_t kReplicationBudget = 1'000'000;

/// Throws DegenerateIdentical when the sorted profiles coincide.
CollapseReport demonstrate_irbd_collapse(const UtilityProfile& a, const UtilityProfile& b,
                                         const DiscountFactor& k, std::int64_t lambda_max);

struct UlbdConstruction {
  std::int64_t n_total = 0;
  std::int64_t m_levels = 0;
  double k = 0.5;
  LevelHistogram dist_a;  // N/2 at 1, N/2 at 10
  LevelHistogram dist_b;  // N/m at each 9 + (j - 1)/(m - 1)
  double w_a = 0.0;
  double w_a_closed_form = 0.0;  // N/2 + 5Nk
  double w_b = 0.0;
  double total_a = 0.0;
  double total_b = 0.0;
  double gini_a = 0.0;
  double gini_b = 0.0;
  bool anomaly = false;  // w_a > w_b, total_b > total_a, gini_b < gini_a
};

/// Throws InvalidShape unless N is even, m >= 2 and m divides N.
UlbdConstruction build_ulbd_construction(std::int64_t n_total, std::int64_t m_levels,
                                         const DiscountFactor& k);

/// 1/2 + 5k > 9/(m(1-k)) + k/(m(m-1)(1-k)^2), the large-m form of the
/// comparison.
bool ulbd_limit_inequality_holds(const DiscountFactor& k, std::int64_t m);

/// Smallest m >= 2 satisfying ulbd_limit_inequality_holds.
std::int64_t anomaly_threshold_m(const DiscountFactor& k);

}  // namespace welfare
