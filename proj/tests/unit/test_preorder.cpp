#include <random>

#include "oracles.hpp"
#include "test_util.hpp"
#include "welfare/aggregate.hpp"
#include "welfare/measures.hpp"
#include "welfare/preorder.hpp"

using namespace welfare;

namespace {
RelationTable circular_table() { return RelationTable({"A", "B", "C"}, {{"B", "A"}, {"C", "B"}, {"A", "C"}}); }
}  // namespace

TEST(RelationTable, Validation) {
  EXPECT_WELFARE_ERROR(RelationTable({"A", "A"}, {}), InvalidTable);
  EXPECT_WELFARE_ERROR(RelationTable({"A", "B"}, {{"A", "Z"}}), InvalidTable);
  const auto t = circular_table();
  EXPECT_EQ(t.index_of("C"), 2u);
  EXPECT_TRUE(t.weakly_prefers(1, 0));
  EXPECT_TRUE(t.strictly_prefers(1, 0));
  EXPECT_FALSE(t.weakly_prefers(0, 1));
  EXPECT_EQ(t.judgments().size(), 3u);
  EXPECT_EQ(t.without({"B", "A"}).judgments().size(), 2u);
}

TEST(CheckPreorder, CircularTableHasOneStrictCycle) {
  const auto report = check_preorder(circular_table());
  ASSERT_EQ(report.cycles.size(), 1u);
  EXPECT_EQ(report.cycles[0], (std::vector<std::string>{"A", "C", "B"}));
  EXPECT_FALSE(report.transitive_ok);
  EXPECT_FALSE(report.reflexive_ok);
  EXPECT_FALSE(report.complete_ok);
  EXPECT_FALSE(report.cycles_truncated);
  EXPECT_EQ(report.transitivity_violations.size(), 3u);
}

TEST(CheckPreorder, RemovingAnyJudgmentBreaksTheCycle) {
  const auto t = circular_table();
  for (const auto& j : t.judgments()) EXPECT_TRUE(check_preorder(t.without(j)).cycles.empty());
}

TEST(CheckPreorder, IndifferenceIsNotACycle) {
  const RelationTable t({"A", "B"}, {{"A", "B"}, {"B", "A"}, {"A", "A"}, {"B", "B"}});
  const auto report = check_preorder(t);
  EXPECT_TRUE(report.cycles.empty());
  EXPECT_TRUE(report.reflexive_ok);
  EXPECT_TRUE(report.complete_ok);
  EXPECT_TRUE(report.transitive_ok);
}

TEST(CheckPreorder, EmptyTableIsIncomplete) {
  const auto report = check_preorder(RelationTable({"A", "B"}, {}));
  EXPECT_FALSE(report.complete_ok);
  EXPECT_FALSE(report.reflexive_ok);
  EXPECT_TRUE(report.transitive_ok);
  EXPECT_EQ(report.missing_pairs.size(), 3u);  // (A,A), (A,B), (B,B)
}

TEST(CheckPreorder, CycleCountMatchesBruteForce) {
  std::mt19937_64 rng(51);
  std::bernoulli_distribution edge(0.45);
  const std::vector<std::string> names{"a", "b", "c", "d", "e", "f"};
  for (int trial = 0; trial < 150; ++trial) {
    const std::size_t n = 2 + trial % 5;
    std::vector<std::string> alts(names.begin(), names.begin() + static_cast<long>(n));
    std::vector<RelationTable::Judgment> judgments;
    std::vector<std::vector<bool>> weak(n, std::vector<bool>(n, false));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (i != j && edge(rng)) {
          weak[i][j] = true;
          judgments.emplace_back(alts[i], alts[j]);
        }
    std::vector<std::vector<bool>> strict(n, std::vector<bool>(n, false));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) strict[i][j] = weak[i][j] && !weak[j][i];
    const auto report = check_preorder(RelationTable(alts, judgments));
    EXPECT_EQ(report.cycles.size(), oracle::count_cycles(strict)) << "trial " << trial;
    for (const auto& cycle : report.cycles) {
      const auto t = RelationTable(alts, judgments);
      for (std::size_t i = 0; i < cycle.size(); ++i) {
        EXPECT_TRUE(t.strictly_prefers(t.index_of(cycle[i]), t.index_of(cycle[(i + 1) % cycle.size()])));
      }
    }
  }
}

TEST(CheckPreorder, CycleCapTruncates) {
  // complete tournament-like strict relation with many cycles
  std::vector<std::string> alts;
  for (int i = 0; i < 9; ++i) alts.push_back("x" + std::to_string(i));
  std::vector<RelationTable::Judgment> judgments;
  for (int i = 0; i < 9; ++i)
    for (int j = 0; j < 9; ++j)
      if ((j - i + 9) % 9 >= 1 && (j - i + 9) % 9 <= 4) judgments.emplace_back(alts[i], alts[j]);
  const auto report = check_preorder(RelationTable(alts, judgments), 50);
  EXPECT_TRUE(report.cycles_truncated);
  EXPECT_EQ(report.cycles.size(), 50u);
}

TEST(Dominance, Cases) {
  EXPECT_EQ(dominance_compare(UtilityProfile{6, 7}, UtilityProfile{6, 6}), DominanceOrder::a_dominates);
  EXPECT_EQ(dominance_compare(UtilityProfile{5, 9}, UtilityProfile{6, 6}), DominanceOrder::incomparable);
  EXPECT_EQ(dominance_compare(UtilityProfile{3, 3}, UtilityProfile{3, 3}), DominanceOrder::equal);
  EXPECT_EQ(dominance_compare(UtilityProfile{1, 5}, UtilityProfile{5, 1}), DominanceOrder::equal);
  EXPECT_EQ(dominance_compare(UtilityProfile{1, 5}, UtilityProfile{5, 1}, true), DominanceOrder::incomparable);
  EXPECT_EQ(dominance_compare(UtilityProfile{3, 3}, UtilityProfile{5, 1}), DominanceOrder::incomparable);
  EXPECT_EQ(dominance_compare(UtilityProfile{2, 1}, UtilityProfile{3, 3}), DominanceOrder::b_dominates);
  EXPECT_WELFARE_ERROR(dominance_compare(UtilityProfile{1}, UtilityProfile{1, 2}), LengthMismatch);
}

TEST(Ranking, FrozenOrders) {
  const std::vector<UtilityProfile> ps{UtilityProfile({5, 9}, "A"), UtilityProfile({6, 6}, "B"),
                                       UtilityProfile({6, 7}, "C")};
  const auto by_util = rank_by_function(ps, [](const UtilityProfile& p) { return f_util(p); });
  ASSERT_EQ(by_util.size(), 3u);
  EXPECT_EQ(by_util[0].label, "A");
  EXPECT_EQ(by_util[1].label, "C");
  EXPECT_EQ(by_util[2].label, "B");
  EXPECT_EQ(by_util[0].value, 14.0);

  const auto by_gini = rank_by_function(
      ps, [](const UtilityProfile& p) { return gini(p); }, RankDirection::lower_is_better);
  EXPECT_EQ(by_gini[0].label, "B");
  EXPECT_EQ(by_gini[1].label, "C");
  EXPECT_EQ(by_gini[2].label, "A");
  EXPECT_NEAR(by_gini[1].value, 1.0 / 26.0, 1e-15);
}

TEST(Ranking, TiesShareRankAndDefaultLabels) {
  const std::vector<UtilityProfile> ps{UtilityProfile{1, 3}, UtilityProfile{2, 2}, UtilityProfile{5}};
  const auto r = rank_by_function(ps, [](const UtilityProfile& p) { return f_util(p); });
  EXPECT_EQ(r[0].rank, 1u);
  EXPECT_EQ(r[1].rank, 2u);
  EXPECT_EQ(r[2].rank, 2u);
  EXPECT_EQ(r[0].label, "#2");
  EXPECT_EQ(rank_by_function({UtilityProfile{1}}, [](const UtilityProfile& p) { return p[0]; }).size(), 1u);
}

TEST(Ranking, InducedTableIsAPreorder) {
  std::mt19937_64 rng(52);
  std::vector<UtilityProfile> ps;
  for (int i = 0; i < 8; ++i) ps.emplace_back(oracle::random_profile(rng, 2, 5), "p" + std::to_string(i));
  ps.push_back(ps[0].with_label("dup"));
  const auto ranking = rank_by_function(ps, [](const UtilityProfile& p) { return gini(p); },
                                        RankDirection::lower_is_better);
  const auto report = check_preorder(induced_table(ranking));
  EXPECT_TRUE(report.reflexive_ok);
  EXPECT_TRUE(report.complete_ok);
  EXPECT_TRUE(report.transitive_ok);
  EXPECT_TRUE(report.cycles.empty());
}
