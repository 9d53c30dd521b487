#pragma once

// Probabilistic trolley expected-death calculus with threshold-rule
// auditing; constructive expected-utility calibration; equal-weight social
// aggregation.

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "welfare/core.hpp"

namespace welfare {

struct TrolleyScenario {
  int group_size = 5;
  double p = 0.0;     // survival probability of the group if nothing is done
  double eps1 = 0.0;  // survival increase from intervening
  double q = 0.0;     // death probability of the one if nothing is done
  double eps2 = 0.0;  // death increase from intervening

  /// Throws InvalidScenario unless every probability (and both sums) lies in [0, 1].
  static TrolleyScenario make(int group_size, double p, double eps1, double q, double eps2);
  void validate() const;
};

enum class Act { intervene, do_nothing };

/// Deaths counted: group_size (1 - survival) + death probability of the one.
double expected_deaths(const TrolleyScenario& s, Act act);

enum class CutoffReading {
  total_risk,  // q + eps2 < cutoff
  added_risk,  // eps2 < cutoff
};
std::string_view to_string(CutoffReading reading) noexcept;

struct ThresholdRule {
  double cutoff = 0.2;
  CutoffReading reading = CutoffReading::total_risk;
};

struct ScenarioVerdict {
  bool permitted = false;
  double delta = 0.0;  // intervene - do_nothing
};

struct ThresholdInversion {
  std::size_t permitted = 0;  // smaller benefit, larger added risk, allowed
  std::size_t forbidden = 0;  // larger benefit, smaller added risk, refused
};

struct ThresholdAudit {
  ThresholdRule rule;
  std::vector<ScenarioVerdict> verdicts;
  std::vector<ThresholdInversion> inversions;
};

/// Benefit is the drop in expected deaths; risk is the added death
/// probability eps2. Pairs are reported in index order.
ThresholdAudit threshold_rule_audit(const ThresholdRule& rule,
                                    std::span<const TrolleyScenario> scenarios);

struct CalibrationTable {
  std::vector<std::string> outcomes;  // best first
  std::vector<double> betas;          // interior outcomes, outcomes.size() - 2 values

  /// Throws InvalidParams on shape errors and NonMonotoneBetas unless
  /// betas lie in (0, 1) and strictly decrease.
  void validate() const;
};

struct UtilityAssignment {
  std::vector<std::string> outcomes;
  std::vector<double> utilities;
};

/// u(best) = 1, u(worst) = 0, u(x_i) = beta_i.
UtilityAssignment calibrated_utility(const CalibrationTable& t);

/// Affine transform a*u + b; a must be > 0.
UtilityAssignment affine_transform(const UtilityAssignment& u, double a, double b);

class Lottery {
 public:
  /// Throws InvalidParams unless probabilities are non-negative and sum to 1 (1e-12).
  explicit Lottery(std::vector<double> probabilities);
  std::span<const double> probabilities() const noexcept { return probabilities_; }
  std::size_t size() const noexcept { return probabilities_.size(); }

  static Lottery degenerate(std::size_t outcomes, std::size_t on);

 private:
  std::vector<double> probabilities_;
};

/// Throws DimensionMismatch when the outcome counts differ.
double expected_utility(const Lottery& l, const UtilityAssignment& u);

/// Equal-weight sum of per-person expected utilities.
double harsanyi_social_value(std::span<const double> person_utilities);

}  // namespace welfare
