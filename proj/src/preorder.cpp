#include "welfare/preorder.hpp"

#include <algorithm>
#include <numeric>
#include <unordered_set>

namespace welfare {

RelationTable::RelationTable(std::vector<std::string> alternatives,
                             const std::vector<Judgment>& judgments)
    : alternatives_(std::move(alternatives)) {
  std::unordered_set<std::string> seen;
  for (const auto& label : alternatives_) {
    if (!seen.insert(label).second) {
      throw Error(ErrorKind::InvalidTable, "duplicate alternative '" + label + "'");
    }
  }
  for (const auto& [a, b] : judgments) pairs_.insert({index_of(a), index_of(b)});
}

std::size_t RelationTable::index_of(std::string_view label) const {
  const auto it = std::find(alternatives_.begin(), alternatives_.end(), label);
  if (it == alternatives_.end()) {
    throw Error(ErrorKind::InvalidTable, "unknown alternative '" + std::string(label) + "'");
  }
  return static_cast<std::size_t>(it - alternatives_.begin());
}

std::vector<RelationTable::Judgment> RelationTable::judgments() const {
  std::vector<Judgment> out;
  out.reserve(pairs_.size());
  for (const auto& [a, b] : pairs_) out.emplace_back(alternatives_[a], alternatives_[b]);
  return out;
}

RelationTable RelationTable::without(const Judgment& j) const {
  auto remaining = judgments();
  std::erase(remaining, j);
  return RelationTable(alternatives_, remaining);
}

namespace {

// Elementary cycles of the strict-preference digraph. Each cycle is found
// once, from its lowest-index vertex, by a DFS restricted to higher indices.
class CycleFinder {
 public:
  CycleFinder(const RelationTable& t, std::size_t cap) : table_(t), cap_(cap) {}

  void run(ConsistencyReport& report) {
    const std::size_t n = table_.size();
    on_path_.assign(n, false);
    for (std::size_t start = 0; start < n && !truncated_; ++start) {
      start_ = start;
      path_ = {start};
      on_path_[start] = true;
      extend(start, report);
      on_path_[start] = false;
    }
    report.cycles_truncated = truncated_;
  }

 private:
  void extend(std::size_t v, ConsistencyReport& report) {
    for (std::size_t w = start_; w < table_.size() && !truncated_; ++w) {
      if (!table_.strictly_prefers(v, w)) continue;
      if (w == start_) {
        if (report.cycles.size() >= cap_) {
          truncated_ = true;
          return;
        }
        std::vector<std::string> cycle;
        for (std::size_t x : path_) cycle.push_back(table_.alternatives()[x]);
        report.cycles.push_back(std::move(cycle));
      } else if (!on_path_[w]) {
        on_path_[w] = true;
        path_.push_back(w);
        extend(w, report);
        path_.pop_back();
        on_path_[w] = false;
      }
    }
  }

  const RelationTable& table_;
  std::size_t cap_;
  std::size_t start_ = 0;
  std::vector<std::size_t> path_;
  std::vector<bool> on_path_;
  bool truncated_ = false;
};

}  // namespace

ConsistencyReport check_preorder(const RelationTable& t, std::size_t cycle_cap) {
  ConsistencyReport report;
  const std::size_t n = t.size();
  const auto& labels = t.alternatives();

  report.reflexive_ok = true;
  report.complete_ok = true;
  for (std::size_t a = 0; a < n; ++a) {
    if (!t.weakly_prefers(a, a)) {
      report.reflexive_ok = false;
      report.complete_ok = false;
      report.missing_pairs.emplace_back(labels[a], labels[a]);
    }
    for (std::size_t b = a + 1; b < n; ++b) {
      if (!t.weakly_prefers(a, b) && !t.weakly_prefers(b, a)) {
        report.complete_ok = false;
        report.missing_pairs.emplace_back(labels[a], labels[b]);
      }
    }
  }

  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      if (b == a || !t.weakly_prefers(a, b)) continue;
      for (std::size_t c = 0; c < n; ++c) {
        if (c == a || c == b || !t.weakly_prefers(b, c)) continue;
        if (!t.weakly_prefers(a, c)) {
          report.transitivity_violations.push_back({labels[a], labels[b], labels[c]});
        }
      }
    }
  }
  report.transitive_ok = report.transitivity_violations.empty();

  CycleFinder(t, cycle_cap).run(report);
  return report;
}

std::string_view to_string(DominanceOrder order) noexcept {
  switch (order) {
    case DominanceOrder::a_dominates: return "a_dominates";
    case DominanceOrder::b_dominates: return "b_dominates";
    case DominanceOrder::equal: return "equal";
    case DominanceOrder::incomparable: return "incomparable";
  }
  return "unknown";
}

DominanceOrder dominance_compare(const UtilityProfile& a, const UtilityProfile& b,
                                 bool perm_sensitive) {
  if (a.size() != b.size()) {
    throw Error(ErrorKind::LengthMismatch, "dominance needs profiles of equal length");
  }
  std::vector<double> xs(a.values().begin(), a.values().end());
  std::vector<double> ys(b.values().begin(), b.values().end());
  if (!perm_sensitive) {
    std::sort(xs.begin(), xs.end());
    std::sort(ys.begin(), ys.end());
  }
  bool a_better = false;
  bool b_better = false;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (xs[i] > ys[i]) a_better = true;
    if (ys[i] > xs[i]) b_better = true;
  }
  if (a_better && b_better) return DominanceOrder::incomparable;
  if (a_better) return DominanceOrder::a_dominates;
  if (b_better) return DominanceOrder::b_dominates;
  return DominanceOrder::equal;
}

std::vector<RankedEntry> rank_by_function(const std::vector<UtilityProfile>& profiles,
                                          const ProfileEvaluator& value_fn,
                                          RankDirection direction) {
  std::vector<RankedEntry> entries;
  entries.reserve(profiles.size());
  for (std::size_t i = 0; i < profiles.size(); ++i) {
    const auto& p = profiles[i];
    entries.push_back({i, p.label().empty() ? "#" + std::to_string(i) : p.label(),
                       value_fn(p), 0});
  }
  const bool higher = direction == RankDirection::higher_is_better;
  std::stable_sort(entries.begin(), entries.end(), [&](const auto& x, const auto& y) {
    return higher ? x.value > y.value : x.value < y.value;
  });
  for (std::size_t i = 0; i < entries.size(); ++i) {
    entries[i].rank = (i > 0 && entries[i].value == entries[i - 1].value)
                          ? entries[i - 1].rank
                          : i + 1;
  }
  return entries;
}

RelationTable induced_table(const std::vector<RankedEntry>& ranking) {
  std::vector<std::string> labels;
  std::vector<RelationTable::Judgment> judgments;
  for (const auto& e : ranking) labels.push_back(e.label);
  for (const auto& x : ranking) {
    for (const auto& y : ranking) {
      if (x.rank <= y.rank) judgments.emplace_back(x.label, y.label);
    }
  }
  return RelationTable(std::move(labels), judgments);
}

}  // namespace welfare
