#include "welfare/json_io.hpp"

#include <string>

namespace welfare::json {

namespace {

[[noreturn]] void malformed(const std::string& what) {
  throw Error(ErrorKind::ParseError, what);
}

template <class T>
T field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) malformed(std::string("missing field '") + key + "'");
  try {
    return j.at(key).get<T>();
  } catch (const nlohmann::json::exception& e) {
    malformed(std::string("bad field '") + key + "': " + e.what());
  }
}

json values_json(std::span<const double> xs) { return json(std::vector<double>(xs.begin(), xs.end())); }

std::string generator_name(FairnessGenerator g) {
  return g == FairnessGenerator::power ? "power" : "log";
}

MeasureDescriptor measure_from_json(const json& j) {
  const auto name = field<std::string>(j, "measure");
  const auto kind = measure_kind_from_string(name);
  if (!kind) malformed("unknown measure '" + name + "'");
  switch (*kind) {
    case MeasureKind::range: return MeasureDescriptor::range();
    case MeasureKind::variance: return MeasureDescriptor::variance();
    case MeasureKind::std_dev: return MeasureDescriptor::std_dev();
    case MeasureKind::relative_mean_deviation: return MeasureDescriptor::relative_mean_deviation();
    case MeasureKind::gini: return MeasureDescriptor::gini();
    case MeasureKind::atkinson: return MeasureDescriptor::atkinson(field<double>(j, "epsilon"));
    case MeasureKind::fairness_power: {
      const auto& f = j.at("fairness");
      return MeasureDescriptor::fairness(FairnessParams::power(
          field<double>(f, "beta"), field<double>(f, "r"), field<double>(f, "rho")));
    }
    case MeasureKind::fairness_log:
      return MeasureDescriptor::fairness(FairnessParams::log(field<double>(j.at("fairness"), "r")));
  }
  malformed("unknown measure");
}

}  // namespace

json to_json(const UtilityProfile& p) { return values_json(p.values()); }

json to_json(const MeasureDescriptor& m) {
  json j{{"measure", m.name()}, {"tags", m.tags}};
  if (m.kind == MeasureKind::atkinson) j["epsilon"] = m.epsilon;
  if (m.kind == MeasureKind::fairness_power || m.kind == MeasureKind::fairness_log) {
    j["fairness"] = {{"generator", generator_name(m.params.generator)},
                     {"beta", m.params.beta},
                     {"r", m.params.r},
                     {"rho", m.params.rho}};
  }
  return j;
}

json to_json(const AggregateSpec& spec) {
  json j = to_json(spec.egal_measure);
  j["lambda"] = spec.penalty_weight;
  return j;
}

json to_json(const LorenzCurve& c) {
  json knots = json::array();
  for (const auto& k : c.knots()) knots.push_back({k.u, k.l});
  return knots;
}

json to_json(const AuditReport& r) {
  json violations = json::array();
  for (const auto& v : r.violations) {
    violations.push_back({{"sample", v.sample},
                          {"profile", v.profile},
                          {"index", v.index},
                          {"delta", v.delta},
                          {"before", v.before},
                          {"after", v.after}});
  }
  return {{"spec", to_json(r.spec)},
          {"seed", r.seed},
          {"samples", r.samples},
          {"triples_checked", r.triples_checked},
          {"violation_count", r.violation_count},
          {"sign_checks", r.sign_checks},
          {"sign_disagreements", r.sign_disagreements},
          {"passed", r.passed()},
          {"violations", violations}};
}

json to_json(const ReversalWitness& w) {
  return {{"profile_a", to_json(w.profile_a)},
          {"profile_b", to_json(w.profile_b)},
          {"scale", w.scale},
          {"before", to_string(w.before)},
          {"after", to_string(w.after)},
          {"values",
           {{"a", w.value_a}, {"b", w.value_b}, {"a_scaled", w.scaled_value_a},
            {"b_scaled", w.scaled_value_b}}}};
}

json to_json(const ScaleSweep& s) {
  json j{{"base_order", to_string(s.base_order)},
         {"grid_points", s.scales.size()},
         {"flipping_scales", s.flipping_scales},
         {"witness", nullptr}};
  if (!s.flipping_scales.empty()) {
    j["flip_interval"] = {s.flipping_scales.front(), s.flipping_scales.back()};
  }
  if (s.first) j["witness"] = to_json(*s.first);
  return j;
}

json to_json(const CollapseReport& r) {
  json rungs = json::array();
  for (const auto& rung : r.rungs) {
    rungs.push_back({{"lambda", rung.lambda},
                     {"w_a", rung.w_a},
                     {"w_b", rung.w_b},
                     {"order", to_string(rung.order)}});
  }
  return {{"k", r.k},
          {"lambda_max", r.lambda_max},
          {"initial_order", to_string(r.initial_order)},
          {"leximin_order", to_string(r.leximin_order)},
          {"crossover_lambda", r.crossover_lambda ? json(*r.crossover_lambda) : json(nullptr)},
          {"limit_a", r.limit_a},
          {"limit_b", r.limit_b},
          {"cross_size", r.cross_size},
          {"rungs", rungs}};
}

json to_json(const LevelHistogram& h) {
  return {{"levels", h.levels}, {"counts", h.counts}};
}

json to_json(const UlbdConstruction& c) {
  return {{"n_total", c.n_total},     {"m_levels", c.m_levels},
          {"k", c.k},                 {"dist_a", to_json(c.dist_a)},
          {"dist_b", to_json(c.dist_b)}, {"w_a", c.w_a},
          {"w_a_closed_form", c.w_a_closed_form}, {"w_b", c.w_b},
          {"total_a", c.total_a},     {"total_b", c.total_b},
          {"gini_a", c.gini_a},       {"gini_b", c.gini_b},
          {"anomaly", c.anomaly}};
}

json to_json(const ConsistencyReport& r) {
  json missing = json::array();
  for (const auto& [a, b] : r.missing_pairs) missing.push_back({a, b});
  return {{"reflexive_ok", r.reflexive_ok},
          {"complete_ok", r.complete_ok},
          {"transitive_ok", r.transitive_ok},
          {"cycles", r.cycles},
          {"cycles_truncated", r.cycles_truncated},
          {"missing_pairs", missing},
          {"transitivity_violations", r.transitivity_violations}};
}

json to_json(const std::vector<RankedEntry>& ranking) {
  json out = json::array();
  for (const auto& e : ranking) {
    out.push_back({{"rank", e.rank}, {"index", e.index}, {"label", e.label}, {"value", e.value}});
  }
  return out;
}

json to_json(const ThresholdAudit& a) {
  json verdicts = json::array();
  for (const auto& v : a.verdicts) {
    verdicts.push_back({{"permitted", v.permitted}, {"expected_deaths_delta", v.delta}});
  }
  json inversions = json::array();
  for (const auto& inv : a.inversions) {
    inversions.push_back({{"permitted", inv.permitted}, {"forbidden", inv.forbidden}});
  }
  return {{"cutoff", a.rule.cutoff},
          {"reading", to_string(a.rule.reading)},
          {"verdicts", verdicts},
          {"inversions", inversions}};
}

// --- input ----------------------------------------------------------------------

json parse_document(std::string_view text) {
  try {
    return json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    malformed(std::string("invalid JSON: ") + e.what());
  }
}

UtilityProfile profile_from_json(const json& j) {
  if (!j.is_array()) malformed("profile must be a JSON array of numbers");
  std::vector<double> values;
  for (const auto& v : j) {
    if (!v.is_number()) malformed("non-numeric profile entry " + v.dump());
    values.push_back(v.get<double>());
  }
  return UtilityProfile(std::move(values));
}

std::vector<UtilityProfile> profiles_from_json(const json& j) {
  if (!j.is_array() || j.empty()) malformed("expected a non-empty array of profiles");
  std::vector<UtilityProfile> out;
  for (const auto& p : j) {
    if (p.is_object()) {
      const auto label = p.contains("label") ? field<std::string>(p, "label") : std::string{};
      if (!p.contains("values")) malformed("labeled profile needs a 'values' array");
      out.push_back(profile_from_json(p.at("values")).with_label(label));
    } else {
      out.push_back(profile_from_json(p));
    }
  }
  return out;
}

RelationTable relation_table_from_json(const json& j) {
  const auto alternatives = field<std::vector<std::string>>(j, "alternatives");
  std::vector<RelationTable::Judgment> judgments;
  if (!j.contains("judgments") || !j.at("judgments").is_array()) {
    malformed("missing 'judgments' array");
  }
  for (const auto& pair : j.at("judgments")) {
    if (!pair.is_array() || pair.size() != 2 || !pair[0].is_string() || !pair[1].is_string()) {
      malformed("each judgment must be a [better, worse] label pair");
    }
    judgments.emplace_back(pair[0].get<std::string>(), pair[1].get<std::string>());
  }
  return RelationTable(alternatives, judgments);
}

std::vector<TrolleyScenario> scenarios_from_json(const json& j) {
  if (!j.is_array()) malformed("scenario batch must be a JSON array");
  std::vector<TrolleyScenario> out;
  for (const auto& s : j) {
    const int group = s.is_object() && s.contains("group_size") ? field<int>(s, "group_size") : 5;
    out.push_back(TrolleyScenario::make(group, field<double>(s, "p"), field<double>(s, "eps1"),
                                        field<double>(s, "q"), field<double>(s, "eps2")));
  }
  return out;
}

LorenzCurve lorenz_from_json(const json& j) {
  if (!j.is_array()) malformed("curve must be an array of [u, l] pairs");
  std::vector<LorenzKnot> knots;
  for (const auto& k : j) {
    if (!k.is_array() || k.size() != 2 || !k[0].is_number() || !k[1].is_number()) {
      malformed("knot must be a [u, l] number pair");
    }
    knots.push_back({k[0].get<double>(), k[1].get<double>()});
  }
  return LorenzCurve::from_knots(std::move(knots));
}

AuditReport audit_report_from_json(const json& j) {
  AuditReport r;
  const auto& spec = j.at("spec");
  r.spec = AggregateSpec::make(measure_from_json(spec), field<double>(spec, "lambda"));
  r.seed = field<std::uint64_t>(j, "seed");
  r.samples = field<std::size_t>(j, "samples");
  r.triples_checked = field<std::size_t>(j, "triples_checked");
  r.violation_count = field<std::size_t>(j, "violation_count");
  r.sign_checks = field<std::size_t>(j, "sign_checks");
  r.sign_disagreements = field<std::size_t>(j, "sign_disagreements");
  for (const auto& v : j.at("violations")) {
    r.violations.push_back({field<std::size_t>(v, "sample"),
                            field<std::vector<double>>(v, "profile"),
                            field<std::size_t>(v, "index"), field<double>(v, "delta"),
                            field<double>(v, "before"), field<double>(v, "after")});
  }
  return r;
}

}  // namespace welfare::json
