#pragma once

// Rank-discounted welfare: utility-level-based (ULBD) and
// individual-ranking-based (IRBD) geometric discounting.

#include <cstddef>
#include <vector>

#include "welfare/core.hpp"

namespace welfare {

class DiscountFactor {
 public:
  /// Throws InvalidParams unless 0 < k < 1.
  explicit DiscountFactor(double k);
  double value() const noexcept { return k_; }

 private:
  double k_;
};

struct LevelHistogram {
  std::vector<double> levels;       // strictly increasing
  std::vector<std::size_t> counts;  // each >= 1

  std::size_t population() const;
  /// Expands back into an ascending profile.
  UtilityProfile to_profile() const;
};

/// Sorted values whose consecutive gaps are <= merge_tol share a level; the
/// level value is the mean of its members. merge_tol = 0 means exact.
LevelHistogram level_histogram(const UtilityProfile& p, double merge_tol = 0.0);

/// sum_j k^{j-1} n(u_j) u_j over ascending levels.
double w_ulbd(const LevelHistogram& h, const DiscountFactor& k);
double w_ulbd(const UtilityProfile& p, const DiscountFactor& k);

/// sum_i k^{i-1} u_(i) over ascending order statistics.
double w_irbd(const UtilityProfile& p, const DiscountFactor& k);

/// u_min / (1 - k): the limit of w_irbd under unbounded replication.
double irbd_replication_limit(const UtilityProfile& p, const DiscountFactor& k);

}  // namespace welfare
