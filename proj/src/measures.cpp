#include "welfare/measures.hpp"

#include <algorithm>
#include <cmath>

namespace welfare {

namespace {

double mean_of(const UtilityProfile& p) { return p.mean(); }

void require_gini_domain(const UtilityProfile& p, std::string_view who) {
  require_nonnegative(p, who);
  if (!(p.sum() > 0.0)) {
    throw Error(ErrorKind::ZeroMean, std::string(who) + " requires a positive mean");
  }
}

bool is_unit_epsilon(double epsilon) {
  return std::abs(epsilon - 1.0) <= kUnitEpsilonBand;
}

// Generalized mean of order 1 - epsilon relative to the arithmetic mean,
// i.e. y_e / mean. Working on x / mean keeps the ratio scale-free.
double ede_ratio(const UtilityProfile& p, double epsilon) {
  const double mu = mean_of(p);
  const double n = static_cast<double>(p.size());
  if (epsilon == 0.0) return 1.0;
  CompensatedSum acc;
  if (is_unit_epsilon(epsilon)) {
    for (double x : p.values()) acc.add(std::log(x / mu));
    return std::exp(acc.value() / n);
  }
  const double order = 1.0 - epsilon;
  for (double x : p.values()) acc.add(std::pow(x / mu, order));
  return std::pow(acc.value() / n, 1.0 / order);
}

void require_finite_param(double v, const char* name) {
  if (!std::isfinite(v)) {
    throw Error(ErrorKind::InvalidParams, std::string(name) + " must be finite");
  }
}

}  // namespace

double range_measure(const UtilityProfile& p) { return p.max() - p.min(); }

double variance_measure(const UtilityProfile& p) {
  const double mu = mean_of(p);
  CompensatedSum acc;
  for (double x : p.values()) acc.add((x - mu) * (x - mu));
  return acc.value() / static_cast<double>(p.size());
}

double std_dev_measure(const UtilityProfile& p) {
  return std::sqrt(variance_measure(p));
}

double relative_mean_deviation(const UtilityProfile& p) {
  const double mu = mean_of(p);
  if (mu == 0.0) {
    throw Error(ErrorKind::ZeroMean, "relative mean deviation requires a non-zero mean");
  }
  CompensatedSum acc;
  for (double x : p.values()) acc.add(std::abs(x - mu));
  return acc.value() / static_cast<double>(p.size()) / mu;
}

double gini(const UtilityProfile& p) {
  require_gini_domain(p, "gini");
  if (p.size() == 1 || p.is_constant()) return 0.0;
  const auto view = sort_view(p);
  const double n = static_cast<double>(view.size());
  // sum_i (2i - n - 1) x_(i) over n * S, ranks i = 1..n
  CompensatedSum weighted;
  for (std::size_t i = 0; i < view.size(); ++i) {
    weighted.add((2.0 * static_cast<double>(i + 1) - n - 1.0) * view[i]);
  }
  return weighted.value() / (n * p.sum());
}

double gini_pairwise(const UtilityProfile& p) {
  require_gini_domain(p, "gini");
  const double n = static_cast<double>(p.size());
  CompensatedSum acc;
  for (double xi : p.values()) {
    for (double xj : p.values()) acc.add(std::abs(xi - xj));
  }
  return acc.value() / (2.0 * n * n * mean_of(p));
}

double equally_distributed_equivalent(const UtilityProfile& p, double epsilon) {
  require_finite_param(epsilon, "epsilon");
  require_positive(p, "equally distributed equivalent");
  return mean_of(p) * ede_ratio(p, epsilon);
}

double atkinson(const UtilityProfile& p, double epsilon) {
  require_finite_param(epsilon, "epsilon");
  if (epsilon < 0.0) {
    throw Error(ErrorKind::InvalidParams, "atkinson requires epsilon >= 0");
  }
  require_positive(p, "atkinson");
  if (epsilon == 0.0 || p.is_constant()) return 0.0;
  // rounding can push the ratio a hair above 1 on near-equal profiles
  return std::max(0.0, 1.0 - ede_ratio(p, epsilon));
}

// --- fairness measure --------------------------------------------------------

FairnessParams FairnessParams::power(double beta, double r, std::optional<double> rho) {
  FairnessParams params{FairnessGenerator::power, beta, r,
                        rho.value_or(1.0 - beta * r)};
  params.validate();
  return params;
}

FairnessParams FairnessParams::log(double r) {
  // the log generator is the beta -> 0 member; rho = 1 carries no constraint
  FairnessParams params{FairnessGenerator::log, 0.0, r, 1.0};
  params.validate();
  return params;
}

FairnessParams FairnessParams::for_atkinson(double epsilon) {
  require_finite_param(epsilon, "epsilon");
  if (epsilon < 0.0 || is_unit_epsilon(epsilon)) {
    throw Error(ErrorKind::InvalidParams,
                "atkinson-linked fairness needs epsilon >= 0 and epsilon != 1");
  }
  const double beta = 1.0 - epsilon;
  return power(beta, epsilon / beta);
}

void FairnessParams::validate() const {
  require_finite_param(beta, "beta");
  require_finite_param(r, "r");
  require_finite_param(rho, "rho");
  if (generator == FairnessGenerator::power) {
    if (beta == 0.0) {
      throw Error(ErrorKind::InvalidParams, "power generator requires beta != 0");
    }
    if (std::abs(rho + beta * r - 1.0) > 1e-9) {
      throw Error(ErrorKind::InvalidParams, "rho + beta * r must equal 1");
    }
  }
}

double fairness_measure(const UtilityProfile& p, const FairnessParams& params) {
  params.validate();
  require_positive(p, "fairness measure");
  const double total = p.sum();
  CompensatedSum acc;
  if (params.generator == FairnessGenerator::log) {
    for (double x : p.values()) {
      const double s = x / total;
      acc.add(-s * std::log(s));
    }
    return std::exp(params.r * acc.value());
  }
  const double exponent = 1.0 - params.beta * params.r;
  for (double x : p.values()) acc.add(std::pow(x / total, exponent));
  const double f = std::pow(acc.value(), 1.0 / params.beta);
  if (!std::isfinite(f)) {
    throw Error(ErrorKind::InternalNumeric, "fairness measure overflowed");
  }
  return f;
}

double fairness_to_atkinson(double f_value, std::size_t n, double epsilon) {
  if (!std::isfinite(f_value) || !(f_value > 0.0) || n < 1) {
    throw Error(ErrorKind::InvalidParams, "fairness value must be > 0 and n >= 1");
  }
  require_finite_param(epsilon, "epsilon");
  if (epsilon == 0.0 || is_unit_epsilon(epsilon)) {
    throw Error(ErrorKind::InvalidParams, "epsilon must not be 0 or 1");
  }
  const double r = epsilon / (1.0 - epsilon);
  return 1.0 - f_value / std::pow(static_cast<double>(n), r);
}

// --- descriptors --------------------------------------------------------------

std::string_view to_string(MeasureKind kind) noexcept {
  switch (kind) {
    case MeasureKind::range: return "range";
    case MeasureKind::variance: return "variance";
    case MeasureKind::std_dev: return "std_dev";
    case MeasureKind::relative_mean_deviation: return "relative_mean_deviation";
    case MeasureKind::gini: return "gini";
    case MeasureKind::atkinson: return "atkinson";
    case MeasureKind::fairness_power: return "fairness_power";
    case MeasureKind::fairness_log: return "fairness_log";
  }
  return "unknown";
}

std::optional<MeasureKind> measure_kind_from_string(std::string_view name) {
  for (auto kind : {MeasureKind::range, MeasureKind::variance, MeasureKind::std_dev,
                    MeasureKind::relative_mean_deviation, MeasureKind::gini,
                    MeasureKind::atkinson, MeasureKind::fairness_power,
                    MeasureKind::fairness_log}) {
    if (name == to_string(kind)) return kind;
  }
  if (name == "std" || name == "stddev") return MeasureKind::std_dev;
  if (name == "rmd") return MeasureKind::relative_mean_deviation;
  return std::nullopt;
}

// Tags record invariance and transfer-principle metadata. The "temkin:" tags
// are catalogue annotations only.
MeasureDescriptor MeasureDescriptor::range() {
  return {MeasureKind::range, 0.0, {},
          {"scale_dependent", "pigou_dalton_weak", "temkin:maximin+BO"}};
}

MeasureDescriptor MeasureDescriptor::variance() {
  return {MeasureKind::variance, 0.0, {},
          {"scale_dependent", "pigou_dalton", "temkin:WAP+AVE"}};
}

MeasureDescriptor MeasureDescriptor::std_dev() {
  return {MeasureKind::std_dev, 0.0, {},
          {"scale_dependent", "pigou_dalton", "temkin:AP+AVE"}};
}

MeasureDescriptor MeasureDescriptor::relative_mean_deviation() {
  return {MeasureKind::relative_mean_deviation, 0.0, {},
          {"ratio_invariant", "pigou_dalton_weak"}};
}

MeasureDescriptor MeasureDescriptor::gini() {
  return {MeasureKind::gini, 0.0, {}, {"ratio_invariant", "bounded_01", "pigou_dalton"}};
}

MeasureDescriptor MeasureDescriptor::atkinson(double epsilon) {
  require_finite_param(epsilon, "epsilon");
  if (epsilon < 0.0) {
    throw Error(ErrorKind::InvalidParams, "atkinson requires epsilon >= 0");
  }
  return {MeasureKind::atkinson, epsilon, {},
          {"ratio_invariant", "bounded_01", "pigou_dalton"}};
}

MeasureDescriptor MeasureDescriptor::fairness(const FairnessParams& params) {
  params.validate();
  return {params.generator == FairnessGenerator::power ? MeasureKind::fairness_power
                                                       : MeasureKind::fairness_log,
          0.0, params, {"ratio_invariant"}};
}

bool MeasureDescriptor::has_tag(std::string_view tag) const {
  return tags.contains(std::string(tag));
}

double evaluate(const MeasureDescriptor& m, const UtilityProfile& p) {
  switch (m.kind) {
    case MeasureKind::range: return range_measure(p);
    case MeasureKind::variance: return variance_measure(p);
    case MeasureKind::std_dev: return std_dev_measure(p);
    case MeasureKind::relative_mean_deviation: return relative_mean_deviation(p);
    case MeasureKind::gini: return gini(p);
    case MeasureKind::atkinson: return atkinson(p, m.epsilon);
    case MeasureKind::fairness_power:
    case MeasureKind::fairness_log: return fairness_measure(p, m.params);
  }
  throw Error(ErrorKind::InvalidParams, "unknown measure");
}

}  // namespace welfare
