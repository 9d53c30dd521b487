#include <random>

#include "test_util.hpp"
#include "welfare/choice_theory.hpp"

using namespace welfare;

namespace {
const TrolleyScenario kCase1 = TrolleyScenario::make(5, 0.10, 0.10, 0.0, 0.19);
const TrolleyScenario kCase2 = TrolleyScenario::make(5, 0.01, 0.98, 0.199, 0.0011);
}  // namespace

TEST(Trolley, ExpectedDeaths) {
  EXPECT_NEAR(expected_deaths(kCase1, Act::intervene), 4.19, 1e-12);
  EXPECT_NEAR(expected_deaths(kCase1, Act::do_nothing), 4.5, 1e-12);
  EXPECT_NEAR(expected_deaths(kCase2, Act::intervene), 0.2501, 1e-12);
  EXPECT_NEAR(expected_deaths(kCase2, Act::do_nothing), 5.149, 1e-12);
  const auto safe = TrolleyScenario::make(5, 1.0, 0.0, 0.0, 0.0);
  EXPECT_EQ(expected_deaths(safe, Act::intervene), 0.0);
  EXPECT_EQ(expected_deaths(safe, Act::do_nothing), 0.0);
}

TEST(Trolley, Validation) {
  EXPECT_WELFARE_ERROR(TrolleyScenario::make(5, 0.9, 0.2, 0.0, 0.0), InvalidScenario);
  EXPECT_WELFARE_ERROR(TrolleyScenario::make(5, 0.1, 0.0, 0.95, 0.1), InvalidScenario);
  EXPECT_WELFARE_ERROR(TrolleyScenario::make(-1, 0.1, 0.0, 0.0, 0.0), InvalidScenario);
  EXPECT_WELFARE_ERROR(TrolleyScenario::make(5, -0.1, 0.2, 0.0, 0.0), InvalidScenario);
}

TEST(Trolley, LinearInParameters) {
  const double h = 1e-3;
  auto bumped = kCase1;
  bumped.eps1 += h;
  EXPECT_NEAR((expected_deaths(bumped, Act::intervene) - expected_deaths(kCase1, Act::intervene)) / h, -5.0, 1e-9);
  bumped = kCase1;
  bumped.eps2 += h;
  EXPECT_NEAR((expected_deaths(bumped, Act::intervene) - expected_deaths(kCase1, Act::intervene)) / h, 1.0, 1e-9);
}

TEST(ThresholdAudit, TwoCasesInvert) {
  const std::vector<TrolleyScenario> cases{kCase1, kCase2};
  const auto audit = threshold_rule_audit({0.20, CutoffReading::total_risk}, cases);
  ASSERT_EQ(audit.verdicts.size(), 2u);
  EXPECT_TRUE(audit.verdicts[0].permitted);
  EXPECT_FALSE(audit.verdicts[1].permitted);
  EXPECT_NEAR(audit.verdicts[0].delta, -0.31, 1e-12);
  EXPECT_NEAR(audit.verdicts[1].delta, -4.8989, 1e-12);
  ASSERT_EQ(audit.inversions.size(), 1u);
  EXPECT_EQ(audit.inversions[0].permitted, 0u);
  EXPECT_EQ(audit.inversions[0].forbidden, 1u);
}

TEST(ThresholdAudit, InversionIsCutoffRobust) {
  const std::vector<TrolleyScenario> cases{kCase1, kCase2};
  for (int i = 0; i < 20; ++i) {
    const double cutoff = 0.1901 + 0.0005 * i;
    EXPECT_EQ(threshold_rule_audit({cutoff, CutoffReading::total_risk}, cases).inversions.size(), 1u) << cutoff;
  }
}

TEST(ThresholdAudit, AddedRiskReading) {
  const std::vector<TrolleyScenario> cases{kCase1, kCase2};
  const auto audit = threshold_rule_audit({0.20, CutoffReading::added_risk}, cases);
  EXPECT_TRUE(audit.verdicts[0].permitted);
  EXPECT_TRUE(audit.verdicts[1].permitted);
  EXPECT_TRUE(audit.inversions.empty());
  EXPECT_EQ(to_string(CutoffReading::added_risk), "added_risk");
}

TEST(ThresholdAudit, TrivialCases) {
  EXPECT_TRUE(threshold_rule_audit({}, std::vector<TrolleyScenario>{kCase1}).inversions.empty());
  EXPECT_TRUE(threshold_rule_audit({}, std::vector<TrolleyScenario>{kCase2, kCase2}).inversions.empty());
  EXPECT_WELFARE_ERROR(threshold_rule_audit({}, std::vector<TrolleyScenario>{}), InvalidParams);
  EXPECT_WELFARE_ERROR(threshold_rule_audit({1.5}, std::vector<TrolleyScenario>{kCase1}), InvalidParams);
}

TEST(Calibration, Assignment) {
  const auto u = calibrated_utility({{"best", "mid", "worst"}, {0.7}});
  EXPECT_EQ(u.utilities, (std::vector<double>{1.0, 0.7, 0.0}));
  EXPECT_EQ(calibrated_utility({{"x", "y"}, {}}).utilities, (std::vector<double>{1.0, 0.0}));
  EXPECT_WELFARE_ERROR(calibrated_utility({{"a", "b", "c", "d"}, {0.3, 0.7}}), NonMonotoneBetas);
  EXPECT_WELFARE_ERROR(calibrated_utility({{"a", "b", "c"}, {1.2}}), NonMonotoneBetas);
  EXPECT_WELFARE_ERROR(calibrated_utility({{"a", "b", "c"}, {}}), InvalidParams);
}

TEST(Lottery, ExpectedUtility) {
  const auto u = calibrated_utility({{"best", "mid", "worst"}, {0.7}});
  EXPECT_EQ(expected_utility(Lottery::degenerate(3, 0), u), 1.0);
  EXPECT_NEAR(expected_utility(Lottery({1.0 / 3, 1.0 / 3, 1.0 / 3}), u), 17.0 / 30.0, 1e-12);
  EXPECT_WELFARE_ERROR(expected_utility(Lottery({0.5, 0.5}), u), DimensionMismatch);
  EXPECT_WELFARE_ERROR(Lottery({0.5, 0.6}), InvalidParams);
  EXPECT_WELFARE_ERROR(Lottery({1.2, -0.2}), InvalidParams);
  EXPECT_WELFARE_ERROR(Lottery(std::vector<double>{}), InvalidParams);
}

TEST(Lottery, AffineInvariance) {
  std::mt19937_64 rng(71);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const auto u = calibrated_utility({{"a", "b", "c", "d", "e"}, {0.9, 0.5, 0.2}});
  for (int trial = 0; trial < 100; ++trial) {
    const double a = 0.01 + 10 * unit(rng);
    const double b = -5 + 10 * unit(rng);
    const auto v = affine_transform(u, a, b);
    std::vector<Lottery> lotteries;
    for (int i = 0; i < 6; ++i) {
      std::vector<double> p(5);
      double total = 0;
      for (double& x : p) total += (x = unit(rng));
      for (double& x : p) x /= total;
      p.back() = 1.0 - (p[0] + p[1] + p[2] + p[3]);
      lotteries.emplace_back(p);
    }
    auto argmax = [&](const UtilityAssignment& w) {
      std::size_t best = 0;
      for (std::size_t i = 1; i < lotteries.size(); ++i) {
        if (expected_utility(lotteries[i], w) > expected_utility(lotteries[best], w)) best = i;
      }
      return best;
    };
    EXPECT_EQ(argmax(u), argmax(v));
    for (std::size_t i = 0; i + 1 < lotteries.size(); ++i) {
      const bool under_u = expected_utility(lotteries[i], u) < expected_utility(lotteries[i + 1], u);
      const bool under_v = expected_utility(lotteries[i], v) < expected_utility(lotteries[i + 1], v);
      EXPECT_EQ(under_u, under_v);
    }
  }
  EXPECT_WELFARE_ERROR(affine_transform(u, 0.0, 1.0), InvalidParams);
}

TEST(Harsanyi, SumSymmetryAndPareto) {
  EXPECT_EQ(harsanyi_social_value(std::vector<double>{0.5, 0.5}), 1.0);
  const std::vector<double> a{0.2, 0.9, 0.4};
  const std::vector<double> b{0.4, 0.2, 0.9};
  EXPECT_EQ(harsanyi_social_value(a), harsanyi_social_value(b));
  auto c = a;
  c[1] += 0.01;
  EXPECT_GT(harsanyi_social_value(c), harsanyi_social_value(a));
}
