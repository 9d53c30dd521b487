#include <algorithm>
#include <cmath>
#include <random>

#include "oracles.hpp"
#include "test_util.hpp"
#include "welfare/search.hpp"

using namespace welfare;

namespace {
const UtilityProfile kU{2, 1, 1, 1, 1, 1};
const UtilityProfile kV{1, 1, 1, 1, 1, 1};
const UtilityProfile kTenths{0.1, 0.2, 0.3, 0.4, 0.5};
const UtilityProfile kFlatTenths{0.1, 0.1, 0.1, 0.1, 0.1};

AggregateSpec spec_of(MeasureDescriptor m, double lambda = 1.0) { return AggregateSpec::make(std::move(m), lambda); }
}  // namespace

TEST(CompareValues, TieBand) {
  EXPECT_EQ(compare_values(2.0, 1.0), PairOrder::a_better);
  EXPECT_EQ(compare_values(1.0, 2.0), PairOrder::b_better);
  EXPECT_EQ(compare_values(1.0, 1.0 + 1e-14), PairOrder::tie);
  EXPECT_EQ(compare_values(0.0, 0.0), PairOrder::tie);
}

TEST(ScaleGrid, Values) {
  const auto v = ScaleGrid{}.values();
  ASSERT_EQ(v.size(), 121u);
  EXPECT_EQ(v.front(), 1e-3);
  EXPECT_EQ(v[60], 1.0);
  EXPECT_EQ(v[80], 10.0);
  EXPECT_EQ(v.back(), 1e3);
  EXPECT_TRUE(std::is_sorted(v.begin(), v.end()));
  ScaleGrid explicit_grid;
  explicit_grid.explicit_scales = {10, 2, 10};
  EXPECT_EQ(explicit_grid.values(), (std::vector<double>{2, 10}));
  explicit_grid.explicit_scales = {0.0};
  EXPECT_WELFARE_ERROR(explicit_grid.values(), InvalidScale);
  ScaleGrid bad;
  bad.log10_min = 2;
  bad.log10_max = 1;
  EXPECT_WELFARE_ERROR(bad.values(), InvalidParams);
}

TEST(Reversal, VarianceAtTen) {
  const auto spec = spec_of(MeasureDescriptor::variance());
  const auto w = reversal_at(kU, kV, spec, 10.0);
  ASSERT_TRUE(w.has_value());
  EXPECT_EQ(w->before, PairOrder::a_better);
  EXPECT_EQ(w->after, PairOrder::b_better);
  EXPECT_NEAR(w->value_a, 6.0278, 1e-3);
  EXPECT_EQ(w->value_b, 6.0);
  EXPECT_NEAR(w->scaled_value_a, -902.3, 0.5);
  EXPECT_NEAR(w->scaled_value_a, 70.0 * (1 - 500.0 / 36.0), 1e-10);
  EXPECT_EQ(w->scaled_value_b, 60.0);
  EXPECT_TRUE(w->verify(spec));
  EXPECT_FALSE(reversal_at(kU, kV, spec, 1.0).has_value());
}

TEST(Reversal, SweepContainsTenAndReportsSmallestFlip) {
  const auto spec = spec_of(MeasureDescriptor::variance());
  const auto sweep = sweep_scale_reversals(kU, kV, spec);
  EXPECT_EQ(sweep.base_order, PairOrder::a_better);
  EXPECT_TRUE(std::count(sweep.flipping_scales.begin(), sweep.flipping_scales.end(), 10.0) == 1);
  ASSERT_TRUE(sweep.first.has_value());
  EXPECT_EQ(sweep.first->scale, sweep.flipping_scales.front());
  EXPECT_NEAR(sweep.first->scale, std::pow(10.0, 0.05), 1e-12);
  EXPECT_TRUE(sweep.first->verify(spec));
  // F(tU) - F(tV) = 7t - 35t^2/36 - 6t changes sign at t = 36/35
  for (std::size_t i = 0; i < sweep.scales.size(); ++i) {
    const bool flipped = sweep.scales[i] > 36.0 / 35.0;
    EXPECT_EQ(sweep.orders[i] == PairOrder::b_better, flipped) << sweep.scales[i];
  }
  const auto found = find_scale_reversal(kU, kV, spec);
  ASSERT_TRUE(found.has_value());
  EXPECT_EQ(found->scale, sweep.first->scale);
}

TEST(Reversal, StdDevAndRange) {
  const auto sd = spec_of(MeasureDescriptor::std_dev());
  const auto w = reversal_at(kTenths, kFlatTenths, sd, 10.0);
  ASSERT_TRUE(w.has_value());
  EXPECT_NEAR(w->value_a, 1.2879, 1e-3);
  EXPECT_NEAR(w->scaled_value_a, -6.21, 0.01);
  EXPECT_NEAR(w->scaled_value_b, 5.0, 1e-12);

  const auto range = spec_of(MeasureDescriptor::range());
  const auto r = reversal_at(kTenths, kFlatTenths, range, 10.0);
  ASSERT_TRUE(r.has_value());
  EXPECT_NEAR(r->value_a, 0.9, 1e-12);
  EXPECT_NEAR(r->value_b, 0.5, 1e-12);
  EXPECT_NEAR(r->scaled_value_a, -45.0, 1e-9);
  EXPECT_NEAR(r->scaled_value_b, 5.0, 1e-12);
  const auto sweep = sweep_scale_reversals(kTenths, kFlatTenths, range);
  EXPECT_TRUE(std::count(sweep.flipping_scales.begin(), sweep.flipping_scales.end(), 10.0) == 1);
  EXPECT_NEAR(sweep.first->scale, std::pow(10.0, 0.25), 1e-12);
}

TEST(Reversal, RatioInvariantPenaltiesNeverFlip) {
  std::mt19937_64 rng(61);
  for (const auto& spec : {spec_of(MeasureDescriptor::gini()), spec_of(MeasureDescriptor::atkinson(2.0), 0.7)}) {
    EXPECT_FALSE(find_scale_reversal(kU, kV, spec).has_value());
    for (int trial = 0; trial < 100; ++trial) {
      const UtilityProfile a(oracle::random_profile(rng, 2, 10));
      const UtilityProfile b(oracle::random_profile(rng, 2, 10));
      ScaleGrid coarse;
      coarse.points = 25;
      EXPECT_FALSE(find_scale_reversal(a, b, spec, coarse).has_value());
    }
  }
}

TEST(Leximin, MatchesOracle) {
  std::mt19937_64 rng(62);
  std::uniform_int_distribution<int> v(1, 4);
  for (int trial = 0; trial < 300; ++trial) {
    std::vector<double> a(3), b(3);
    for (double& x : a) x = v(rng);
    for (double& x : b) x = v(rng);
    const int expected = oracle::leximin(a, b);
    const auto got = leximin_compare(UtilityProfile(a), UtilityProfile(b));
    EXPECT_EQ(got, expected > 0 ? PairOrder::a_better : expected < 0 ? PairOrder::b_better : PairOrder::tie);
  }
  EXPECT_EQ(leximin_compare(UtilityProfile{2, 2}, UtilityProfile{1, 100}), PairOrder::a_better);
}

TEST(Collapse, FrozenLadder) {
  const auto r = demonstrate_irbd_collapse(UtilityProfile{2, 2}, UtilityProfile{1, 100}, DiscountFactor(0.9), 1024);
  ASSERT_EQ(r.rungs.size(), 11u);
  EXPECT_EQ(r.initial_order, PairOrder::b_better);
  EXPECT_EQ(r.leximin_order, PairOrder::a_better);
  ASSERT_TRUE(r.crossover_lambda.has_value());
  EXPECT_EQ(*r.crossover_lambda, 64);
  const double expected_a[] = {3.8, 6.878, 11.3906558, 16.29396, 19.31326, 19.97642, 19.99997};
  const double expected_b[] = {91, 155.8, 229.07179, 250.8605, 159.11216, 42.81445, 11.16584};
  for (int i = 0; i < 7; ++i) {
    EXPECT_NEAR(r.rungs[i].w_a, expected_a[i], 1e-4) << i;
    EXPECT_NEAR(r.rungs[i].w_b, expected_b[i], 1e-4) << i;
  }
  EXPECT_NEAR(r.rungs.back().w_a, 20.0, 1e-6);
  EXPECT_NEAR(r.rungs.back().w_b, 10.0, 1e-6);
  EXPECT_NEAR(r.limit_a, 20.0, 1e-12);
  EXPECT_NEAR(r.limit_b, 10.0, 1e-12);
  EXPECT_FALSE(r.cross_size);
}

TEST(Collapse, MatchesOracleAndEdgeCases) {
  const auto r = demonstrate_irbd_collapse(UtilityProfile{3, 4, 5}, UtilityProfile{2, 9}, DiscountFactor(0.6), 64);
  EXPECT_TRUE(r.cross_size);
  for (const auto& rung : r.rungs) {
    const auto a = replicate_profile(UtilityProfile{3, 4, 5}, rung.lambda);
    const std::vector<double> av(a.values().begin(), a.values().end());
    EXPECT_NEAR(rung.w_a, oracle::w_irbd(av, 0.6), 1e-12);
  }
  EXPECT_WELFARE_ERROR(
      demonstrate_irbd_collapse(UtilityProfile{1, 2}, UtilityProfile{2, 1}, DiscountFactor(0.5), 8),
      DegenerateIdentical);
  EXPECT_WELFARE_ERROR(
      demonstrate_irbd_collapse(UtilityProfile{1, 2}, UtilityProfile{2, 3}, DiscountFactor(0.5), 0),
      InvalidReplication);
  const auto capped =
      demonstrate_irbd_collapse(UtilityProfile{1, 2}, UtilityProfile{2, 3}, DiscountFactor(0.5), 1LL << 40);
  EXPECT_EQ(capped.lambda_max, kReplicationBudget / 2);
}

TEST(Ulbd, FrozenConstruction) {
  const auto c = build_ulbd_construction(1000, 100, DiscountFactor(0.5));
  EXPECT_EQ(c.w_a, 3000.0);
  EXPECT_EQ(c.w_a_closed_form, 3000.0);
  EXPECT_NEAR(c.w_b, 180.2020202, 1e-6);
  EXPECT_EQ(c.total_a, 5500.0);
  EXPECT_NEAR(c.total_b, 9500.0, 1e-9);
  EXPECT_NEAR(c.gini_a, 0.409090909, 1e-9);
  EXPECT_NEAR(c.gini_b, 0.0177192982, 1e-9);
  EXPECT_TRUE(c.anomaly);
  EXPECT_EQ(c.dist_b.levels.front(), 9.0);
  EXPECT_EQ(c.dist_b.levels.back(), 10.0);
}

TEST(Ulbd, TinyConstructionFails) {
  const auto c = build_ulbd_construction(4, 2, DiscountFactor(0.5));
  EXPECT_EQ(c.w_a, 12.0);
  EXPECT_EQ(c.w_b, 28.0);
  EXPECT_FALSE(c.anomaly);
  EXPECT_WELFARE_ERROR(build_ulbd_construction(1000, 3, DiscountFactor(0.5)), InvalidShape);
  EXPECT_WELFARE_ERROR(build_ulbd_construction(7, 7, DiscountFactor(0.5)), InvalidShape);
  EXPECT_WELFARE_ERROR(build_ulbd_construction(10, 1, DiscountFactor(0.5)), InvalidShape);
}

TEST(Ulbd, ClosedFormHoldsExactly) {
  for (double k : {0.1, 0.25, 0.5, 0.75}) {
    for (std::int64_t n : {4, 100, 1000, 4096}) {
      const auto c = build_ulbd_construction(n, 2, DiscountFactor(k));
      EXPECT_EQ(c.w_a, c.w_a_closed_form) << k << " " << n;
    }
  }
}

TEST(Ulbd, ThresholdMatchesLinearScan) {
  const std::pair<double, std::int64_t> frozen[] = {{0.5, 7}, {0.1, 11}, {0.9, 20}, {0.99, 176}, {0.999, 1743}};
  for (auto [k, m] : frozen) EXPECT_EQ(anomaly_threshold_m(DiscountFactor(k)), m) << k;
  for (double k : {0.05, 0.2, 0.3, 0.6, 0.8, 0.95}) {
    const DiscountFactor f(k);
    std::int64_t scan = 2;
    while (!ulbd_limit_inequality_holds(f, scan)) ++scan;
    EXPECT_EQ(anomaly_threshold_m(f), scan) << k;
  }
  EXPECT_WELFARE_ERROR(ulbd_limit_inequality_holds(DiscountFactor(0.5), 1), InvalidParams);
}
