#pragma once

// Pairwise "at least as good as" judgments checked against the preorder
// axioms, profile dominance, and rankings induced by real-valued evaluators.

#include <cstddef>
#include <functional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "welfare/core.hpp"

namespace welfare {

class RelationTable {
 public:
  using Judgment = std::pair<std::string, std::string>;  // (a, b): a >= b

  /// Throws InvalidTable on duplicate labels or unknown judgment labels.
  RelationTable(std::vector<std::string> alternatives, const std::vector<Judgment>& judgments);

  const std::vector<std::string>& alternatives() const noexcept { return alternatives_; }
  std::size_t size() const noexcept { return alternatives_.size(); }
  bool weakly_prefers(std::size_t a, std::size_t b) const { return pairs_.contains({a, b}); }
  bool strictly_prefers(std::size_t a, std::size_t b) const {
    return weakly_prefers(a, b) && !weakly_prefers(b, a);
  }
  std::vector<Judgment> judgments() const;
  std::size_t index_of(std::string_view label) const;

  RelationTable without(const Judgment& j) const;

 private:
  std::vector<std::string> alternatives_;
  std::set<std::pair<std::size_t, std::size_t>> pairs_;
};

struct ConsistencyReport {
  bool reflexive_ok = false;
  bool complete_ok = false;
  bool transitive_ok = false;
  // Each cycle lists labels c0, c1, ..., ck meaning c0 > c1 > ... > ck > c0,
  // rotated to start at its lowest-index alternative.
  std::vector<std::vector<std::string>> cycles;
  bool cycles_truncated = false;
  // unordered pairs (and self-pairs) with no judgment in either direction
  std::vector<std::pair<std::string, std::string>> missing_pairs;
  // (a, b, c) with a >= b, b >= c but not a >= c
  std::vector<std::vector<std::string>> transitivity_violations;
};

inline constexpr std::size_t kCycleCap = 10'000;

ConsistencyReport check_preorder(const RelationTable& t, std::size_t cycle_cap = kCycleCap);

enum class DominanceOrder { a_dominates, b_dominates, equal, incomparable };
std::string_view to_string(DominanceOrder order) noexcept;

/// Sorted (anonymous) comparison by default; coordinatewise when
/// perm_sensitive. Throws LengthMismatch.
DominanceOrder dominance_compare(const UtilityProfile& a, const UtilityProfile& b,
                                 bool perm_sensitive = false);

enum class RankDirection { higher_is_better, lower_is_better };

struct RankedEntry {
  std::size_t index = 0;  // position in the input list
  std::string label;
  double value = 0.0;
  std::size_t rank = 1;  // 1 = best; ties share a rank
};

using ProfileEvaluator = std::function<double(const UtilityProfile&)>;

std::vector<RankedEntry> rank_by_function(const std::vector<UtilityProfile>& profiles,
                                          const ProfileEvaluator& value_fn,
                                          RankDirection direction = RankDirection::higher_is_better);

/// Judgment table of a ranking: i >= j whenever rank(i) <= rank(j).
RelationTable induced_table(const std::vector<RankedEntry>& ranking);

}  // namespace welfare
