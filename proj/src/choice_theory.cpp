#include "welfare/choice_theory.hpp"

#include <cmath>

namespace welfare {

namespace {

bool is_probability(double x) { return std::isfinite(x) && x >= 0.0 && x <= 1.0; }

}  // namespace

TrolleyScenario TrolleyScenario::make(int group_size, double p, double eps1, double q,
                                      double eps2) {
  TrolleyScenario s{group_size, p, eps1, q, eps2};
  s.validate();
  return s;
}

void TrolleyScenario::validate() const {
  if (group_size < 0) throw Error(ErrorKind::InvalidScenario, "group size must be >= 0");
  if (!is_probability(p) || !is_probability(q) || !is_probability(p + eps1) ||
      !is_probability(q + eps2) || !std::isfinite(eps1) || !std::isfinite(eps2)) {
    throw Error(ErrorKind::InvalidScenario,
                "p, q, p + eps1 and q + eps2 must all lie in [0, 1]");
  }
}

double expected_deaths(const TrolleyScenario& s, Act act) {
  s.validate();
  const double group = static_cast<double>(s.group_size);
  if (act == Act::do_nothing) return group * (1.0 - s.p) + s.q;
  return group * (1.0 - (s.p + s.eps1)) + (s.q + s.eps2);
}

std::string_view to_string(CutoffReading reading) noexcept {
  switch (reading) {
    case CutoffReading::total_risk: return "total_risk";
    case CutoffReading::added_risk: return "added_risk";
  }
  return "unknown";
}

ThresholdAudit threshold_rule_audit(const ThresholdRule& rule,
                                    std::span<const TrolleyScenario> scenarios) {
  if (!std::isfinite(rule.cutoff) || !(rule.cutoff > 0.0) || !(rule.cutoff < 1.0)) {
    throw Error(ErrorKind::InvalidParams, "cutoff must lie in (0, 1)");
  }
  if (scenarios.empty()) throw Error(ErrorKind::InvalidParams, "no scenarios to audit");

  ThresholdAudit audit{rule, {}, {}};
  for (const auto& s : scenarios) {
    const double risk = rule.reading == CutoffReading::total_risk ? s.q + s.eps2 : s.eps2;
    audit.verdicts.push_back({risk < rule.cutoff, expected_deaths(s, Act::intervene) -
                                                      expected_deaths(s, Act::do_nothing)});
  }
  for (std::size_t i = 0; i < scenarios.size(); ++i) {
    if (!audit.verdicts[i].permitted) continue;
    for (std::size_t j = 0; j < scenarios.size(); ++j) {
      if (audit.verdicts[j].permitted) continue;
      const bool more_benefit = audit.verdicts[j].delta < audit.verdicts[i].delta;
      const bool less_risk = scenarios[j].eps2 <= scenarios[i].eps2;
      if (more_benefit && less_risk) audit.inversions.push_back({i, j});
    }
  }
  return audit;
}

void CalibrationTable::validate() const {
  if (outcomes.size() < 2) {
    throw Error(ErrorKind::InvalidParams, "calibration needs at least two outcomes");
  }
  if (betas.size() + 2 != outcomes.size()) {
    throw Error(ErrorKind::InvalidParams, "need one beta per interior outcome");
  }
  double previous = 1.0;
  for (double beta : betas) {
    if (!std::isfinite(beta) || !(beta > 0.0) || !(beta < previous)) {
      throw Error(ErrorKind::NonMonotoneBetas,
                  "betas must lie in (0, 1) and strictly decrease down the outcome order");
    }
    previous = beta;
  }
}

UtilityAssignment calibrated_utility(const CalibrationTable& t) {
  t.validate();
  UtilityAssignment u{t.outcomes, {}};
  u.utilities.push_back(1.0);
  u.utilities.insert(u.utilities.end(), t.betas.begin(), t.betas.end());
  u.utilities.push_back(0.0);
  return u;
}

UtilityAssignment affine_transform(const UtilityAssignment& u, double a, double b) {
  if (!std::isfinite(a) || !std::isfinite(b) || !(a > 0.0)) {
    throw Error(ErrorKind::InvalidParams, "affine transform needs finite a > 0 and b");
  }
  UtilityAssignment out = u;
  for (double& x : out.utilities) x = a * x + b;
  return out;
}

Lottery::Lottery(std::vector<double> probabilities) : probabilities_(std::move(probabilities)) {
  if (probabilities_.empty()) throw Error(ErrorKind::InvalidParams, "empty lottery");
  for (double x : probabilities_) {
    if (!std::isfinite(x) || x < 0.0) {
      throw Error(ErrorKind::InvalidParams, "lottery probabilities must be >= 0");
    }
  }
  if (std::abs(compensated_sum(probabilities_) - 1.0) > 1e-12) {
    throw Error(ErrorKind::InvalidParams, "lottery probabilities must sum to 1");
  }
}

Lottery Lottery::degenerate(std::size_t outcomes, std::size_t on) {
  std::vector<double> p(outcomes, 0.0);
  p.at(on) = 1.0;
  return Lottery(std::move(p));
}

double expected_utility(const Lottery& l, const UtilityAssignment& u) {
  if (l.size() != u.utilities.size()) {
    throw Error(ErrorKind::DimensionMismatch, "lottery and utility sizes differ");
  }
  CompensatedSum acc;
  for (std::size_t i = 0; i < l.size(); ++i) acc.add(l.probabilities()[i] * u.utilities[i]);
  return acc.value();
}

double harsanyi_social_value(std::span<const double> person_utilities) {
  return compensated_sum(person_utilities);
}

}  // namespace welfare
