#include "cli.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <iomanip>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "welfare/json_io.hpp"

namespace welfare::cli {

namespace {

using Json = nlohmann::json;
namespace wj = welfare::json;

struct Options {
  // output
  std::string format = "table";
  bool as_json = false;
  std::string out_path;

  // measure selection
  std::string measure = "gini";
  std::optional<double> eps;
  std::optional<double> beta;
  std::optional<double> r;
  std::optional<double> rho;
  std::string generator;
  std::string params;

  // inputs
  std::string profile;
  std::string profiles;
  std::string file;
  std::string a;
  std::string b;
  std::string compare;
  std::string scenarios;

  double lambda = 1.0;
  std::optional<double> k;
  std::string rank_by = "util";

  // audit
  std::uint64_t seed = 0x5eed;
  std::size_t samples = 10'000;
  std::size_t min_n = 2;
  std::size_t max_n = 50;
  double min_value = 0.1;
  double max_value = 100.0;
  std::string sampling = "log_uniform";
  std::size_t max_reported = 32;

  // reversal
  double log10_min = -3.0;
  double log10_max = 3.0;
  std::size_t points = 121;
  std::vector<double> scales;
  std::optional<double> at;

  // collapse / ulbd
  std::int64_t lambda_max = 1024;
  std::int64_t n_total = 1000;
  std::int64_t m_levels = 100;

  // trolley
  double cutoff = 0.2;
  std::string reading = "total_risk";
};

struct Report {
  Json data;
  std::string table;
};

std::string num(double x) {
  std::ostringstream s;
  s << std::setprecision(6) << x;
  return s.str();
}

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return s;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::ParseError, "cannot read file '" + path + "'");
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

/// Inline text when given, otherwise the --file contents.
std::string input_text(const std::string& inline_text, const Options& o, const char* what) {
  if (!inline_text.empty()) return inline_text;
  if (!o.file.empty()) return read_file(o.file);
  throw Error(ErrorKind::ParseError, std::string("missing input: pass ") + what + " or --file");
}

UtilityProfile profile_arg(const std::string& text, const char* flag) {
  if (text.empty()) throw Error(ErrorKind::ParseError, std::string("missing ") + flag);
  return parse_profile(text);
}

class TextTable {
 public:
  explicit TextTable(std::vector<std::string> header) : rows_{std::move(header)} {}
  void add(std::vector<std::string> row) { rows_.push_back(std::move(row)); }

  std::string render() const {
    std::vector<std::size_t> width;
    for (const auto& row : rows_) {
      width.resize(std::max(width.size(), row.size()), 0);
      for (std::size_t c = 0; c < row.size(); ++c) width[c] = std::max(width[c], row[c].size());
    }
    std::ostringstream s;
    for (std::size_t i = 0; i < rows_.size(); ++i) {
      for (std::size_t c = 0; c < rows_[i].size(); ++c) {
        if (c) s << "  ";
        const bool last = c + 1 == rows_[i].size();
        s << std::left << std::setw(last ? 0 : static_cast<int>(width[c])) << rows_[i][c];
      }
      s << '\n';
      if (i == 0) {
        std::size_t total = 0;
        for (std::size_t w : width) total += w;
        s << std::string(total + 2 * (width.size() - 1), '-') << '\n';
      }
    }
    return s.str();
  }

 private:
  std::vector<std::vector<std::string>> rows_;
};

std::string kv(const std::string& key, const std::string& value) { return key + ": " + value + "\n"; }

std::string profile_text(const UtilityProfile& p) {
  std::string s = "(";
  for (std::size_t i = 0; i < p.size(); ++i) s += (i ? ", " : "") + num(p[i]);
  return s + ")";
}

// --- CSV -----------------------------------------------------------------------

std::string csv_cell(const Json& v) {
  std::string s = v.is_string() ? v.get<std::string>() : v.dump();
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string quoted = "\"";
  for (char c : s) quoted += c == '"' ? std::string("\"\"") : std::string(1, c);
  return quoted + "\"";
}

void flatten(const Json& v, const std::string& path, std::vector<std::pair<std::string, Json>>& out) {
  if (v.is_object()) {
    for (const auto& [key, child] : v.items()) flatten(child, path.empty() ? key : path + "." + key, out);
  } else if (v.is_array() && !v.empty() && (v.front().is_object() || v.front().is_array())) {
    for (std::size_t i = 0; i < v.size(); ++i) flatten(v[i], path + "." + std::to_string(i), out);
  } else {
    out.emplace_back(path, v);
  }
}

std::string to_csv(const Json& data) {
  std::ostringstream s;
  if (data.is_array() && !data.empty() && data.front().is_object()) {
    std::vector<std::string> keys;
    for (const auto& [key, _] : data.front().items()) keys.push_back(key);
    for (std::size_t c = 0; c < keys.size(); ++c) s << (c ? "," : "") << keys[c];
    s << '\n';
    for (const auto& row : data) {
      for (std::size_t c = 0; c < keys.size(); ++c) {
        s << (c ? "," : "") << (row.contains(keys[c]) ? csv_cell(row[keys[c]]) : "");
      }
      s << '\n';
    }
    return s.str();
  }
  std::vector<std::pair<std::string, Json>> cells;
  flatten(data, "", cells);
  s << "key,value\n";
  for (const auto& [key, value] : cells) s << csv_cell(key) << ',' << csv_cell(value) << '\n';
  return s.str();
}

// --- measure selection ------------------------------------------------------------

MeasureDescriptor build_measure(const Options& o, const std::string& raw_name) {
  auto eps = o.eps;
  auto beta = o.beta;
  auto r = o.r;
  auto rho = o.rho;
  auto generator = lower(o.generator);
  if (!o.params.empty()) {
    const Json p = wj::parse_document(o.params);
    if (!p.is_object()) throw Error(ErrorKind::ParseError, "--params must be a JSON object");
    auto take = [&](std::optional<double>& slot, std::initializer_list<const char*> keys) {
      for (const char* key : keys) {
        if (!slot && p.contains(key)) {
          if (!p[key].is_number()) throw Error(ErrorKind::ParseError, std::string("param '") + key + "' must be a number");
          slot = p[key].get<double>();
        }
      }
    };
    take(eps, {"eps", "epsilon"});
    take(beta, {"beta"});
    take(r, {"r"});
    take(rho, {"rho"});
    if (generator.empty() && p.contains("generator") && p["generator"].is_string()) {
      generator = lower(p["generator"].get<std::string>());
    }
  }

  std::string name = lower(raw_name);
  if (name == "fairness") name = "fairness_" + (generator.empty() ? std::string("power") : generator);
  const auto kind = measure_kind_from_string(name);
  if (!kind) throw Error(ErrorKind::InvalidParams, "unknown measure '" + raw_name + "'");
  switch (*kind) {
    case MeasureKind::range: return MeasureDescriptor::range();
    case MeasureKind::variance: return MeasureDescriptor::variance();
    case MeasureKind::std_dev: return MeasureDescriptor::std_dev();
    case MeasureKind::relative_mean_deviation: return MeasureDescriptor::relative_mean_deviation();
    case MeasureKind::gini: return MeasureDescriptor::gini();
    case MeasureKind::atkinson:
      if (!eps) throw Error(ErrorKind::InvalidParams, "atkinson needs --eps");
      return MeasureDescriptor::atkinson(*eps);
    case MeasureKind::fairness_power:
      if (eps && !beta && !r) {
        return MeasureDescriptor::fairness(FairnessParams::for_atkinson(*eps));
      }
      if (!beta || !r) throw Error(ErrorKind::InvalidParams, "power fairness needs --beta and --r (or --eps)");
      return MeasureDescriptor::fairness(FairnessParams::power(*beta, *r, rho));
    case MeasureKind::fairness_log:
      if (!r) throw Error(ErrorKind::InvalidParams, "log fairness needs --r");
      return MeasureDescriptor::fairness(FairnessParams::log(*r));
  }
  throw Error(ErrorKind::InvalidParams, "unknown measure '" + raw_name + "'");
}

MeasureDescriptor build_measure(const Options& o) { return build_measure(o, o.measure); }

AggregateSpec build_spec(const Options& o) { return AggregateSpec::make(build_measure(o), o.lambda); }

// --- commands --------------------------------------------------------------------

Report cmd_measure(const Options& o) {
  const auto p = parse_profile(input_text(o.profile, o, "--profile"));
  std::vector<MeasureDescriptor> measures;
  if (lower(o.measure) == "all") {
    measures = {MeasureDescriptor::range(), MeasureDescriptor::variance(),
                MeasureDescriptor::std_dev(), MeasureDescriptor::relative_mean_deviation(),
                MeasureDescriptor::gini()};
    if (o.eps) {
      measures.push_back(MeasureDescriptor::atkinson(*o.eps));
    }
  } else {
    measures.push_back(build_measure(o));
  }

  Json results = Json::array();
  TextTable table({"measure", "value"});
  for (const auto& m : measures) {
    const double v = evaluate(m, p);
    Json entry = wj::to_json(m);
    entry["value"] = v;
    results.push_back(entry);
    table.add({m.name(), num(v)});
  }
  Report rep;
  rep.data = {{"profile", wj::to_json(p)}, {"results", results}};
  rep.table = measures.size() == 1 ? num(results[0]["value"].get<double>()) + "\n" : table.render();
  return rep;
}

Report cmd_rank(const Options& o) {
  const auto profiles =
      wj::profiles_from_json(wj::parse_document(input_text(o.profiles, o, "--profiles")));
  const auto by = lower(o.rank_by);
  ProfileEvaluator fn;
  RankDirection direction = RankDirection::higher_is_better;
  Json criterion;
  if (by == "util") {
    fn = [](const UtilityProfile& p) { return f_util(p); };
    criterion = "util";
  } else if (by == "aggregate") {
    const auto spec = build_spec(o);
    fn = [spec](const UtilityProfile& p) { return f_aggregate(p, spec); };
    criterion = wj::to_json(spec);
  } else if (by == "measure") {
    const auto m = build_measure(o);
    fn = [m](const UtilityProfile& p) { return evaluate(m, p); };
    direction = RankDirection::lower_is_better;
    criterion = wj::to_json(m);
  } else {
    throw Error(ErrorKind::InvalidParams, "--by must be util, aggregate or measure");
  }
  const auto ranking = rank_by_function(profiles, fn, direction);

  Report rep;
  rep.data = {{"by", criterion},
              {"direction", direction == RankDirection::higher_is_better ? "higher_is_better"
                                                                          : "lower_is_better"},
              {"ranking", wj::to_json(ranking)}};
  TextTable table({"rank", "label", "value", "profile"});
  for (const auto& e : ranking) {
    table.add({std::to_string(e.rank), e.label, num(e.value), profile_text(profiles[e.index])});
  }
  rep.table = table.render();
  return rep;
}

Report cmd_lorenz(const Options& o) {
  const auto p = parse_profile(input_text(o.profile, o, "--profile"));
  const auto curve = lorenz_from_profile(p);
  Report rep;
  rep.data = {{"profile", wj::to_json(p)},
              {"knots", wj::to_json(curve)},
              {"integral", curve.integral()},
              {"gini", gini_from_lorenz(curve)}};
  TextTable table({"u", "L(u)"});
  for (const auto& knot : curve.knots()) table.add({num(knot.u), num(knot.l)});
  rep.table = table.render() + kv("integral", num(curve.integral())) +
              kv("gini", num(gini_from_lorenz(curve)));
  if (o.k) {
    const double value = lorenz_value(curve, RankWeightFn(*o.k));
    rep.data["value"] = value;
    rep.table += kv("value (k=" + num(*o.k) + ")", num(value));
  }
  if (!o.compare.empty()) {
    const auto other = lorenz_from_profile(parse_profile(o.compare));
    const auto cmp = lorenz_dominates(curve, other);
    rep.data["comparison"] = {{"knots", wj::to_json(other)},
                              {"order", std::string(to_string(cmp.order))},
                              {"max_gap", cmp.max_gap}};
    rep.table += kv("versus", std::string(to_string(cmp.order))) + kv("max gap", num(cmp.max_gap));
  }
  return rep;
}

Report cmd_aggregate(const Options& o) {
  const auto p = parse_profile(input_text(o.profile, o, "--profile"));
  const auto spec = build_spec(o);
  const double util = f_util(p);
  const double egal = evaluate(spec.egal_measure, p);
  const double total = f_aggregate(p, spec);
  Report rep;
  rep.data = {{"profile", wj::to_json(p)},
              {"spec", wj::to_json(spec)},
              {"f_util", util},
              {"f_egal", egal},
              {"f_aggregate", total}};
  rep.table = kv("f_util", num(util)) + kv("f_egal (" + spec.egal_measure.name() + ")", num(egal)) +
              kv("F (lambda=" + num(spec.penalty_weight) + ")", num(total));
  if (spec.egal_measure.kind == MeasureKind::gini && p.size() >= 2) {
    const double bound = gini_lambda_bound(static_cast<std::int64_t>(p.size()));
    rep.data["lambda_bound"] = bound;
    rep.table += kv("monotone for lambda <=", num(bound));
  }
  return rep;
}

Report cmd_audit(const Options& o) {
  const auto spec = build_spec(o);
  ProfileGenerator gen;
  gen.samples = o.samples;
  gen.min_n = o.min_n;
  gen.max_n = o.max_n;
  gen.min_value = o.min_value;
  gen.max_value = o.max_value;
  gen.seed = o.seed;
  const auto sampling = lower(o.sampling);
  if (sampling == "uniform") {
    gen.sampling = ValueSampling::uniform;
  } else if (sampling == "log_uniform") {
    gen.sampling = ValueSampling::log_uniform;
  } else {
    throw Error(ErrorKind::InvalidParams, "--sampling must be uniform or log_uniform");
  }
  const auto report = monotonicity_audit(spec, gen, o.max_reported);

  Report rep;
  rep.data = wj::to_json(report);
  rep.table = kv("measure", spec.egal_measure.name()) + kv("lambda", num(spec.penalty_weight)) +
              kv("seed", std::to_string(report.seed)) + kv("samples", std::to_string(report.samples)) +
              kv("bumps checked", std::to_string(report.triples_checked)) +
              kv("violations", std::to_string(report.violation_count));
  if (report.sign_checks) {
    rep.table += kv("derivative sign checks", std::to_string(report.sign_checks)) +
                 kv("sign disagreements", std::to_string(report.sign_disagreements));
  }
  rep.table += kv("result", report.passed() ? "monotone on every sample" : "violations found");
  if (!report.violations.empty()) {
    TextTable table({"sample", "n", "index", "delta", "before", "after"});
    for (const auto& v : report.violations) {
      table.add({std::to_string(v.sample), std::to_string(v.profile.size()), std::to_string(v.index),
                 num(v.delta), num(v.before), num(v.after)});
    }
    rep.table += "\n" + table.render();
  }
  return rep;
}

std::string witness_text(const ReversalWitness& w) {
  return kv("scale", num(w.scale)) +
         kv("F(a), F(b)", num(w.value_a) + ", " + num(w.value_b) + "  -> " + std::string(to_string(w.before))) +
         kv("F(ta), F(tb)",
            num(w.scaled_value_a) + ", " + num(w.scaled_value_b) + "  -> " + std::string(to_string(w.after)));
}

Report cmd_reversal(const Options& o) {
  const auto a = profile_arg(o.a, "--a");
  const auto b = profile_arg(o.b, "--b");
  const auto spec = build_spec(o);
  ScaleGrid grid;
  grid.log10_min = o.log10_min;
  grid.log10_max = o.log10_max;
  grid.points = o.points;
  grid.explicit_scales = o.scales;
  const auto sweep = sweep_scale_reversals(a, b, spec, grid);

  Report rep;
  rep.data = wj::to_json(sweep);
  rep.data["spec"] = wj::to_json(spec);
  rep.table = kv("aggregate", spec.egal_measure.name() + ", lambda=" + num(spec.penalty_weight)) +
              kv("order at t=1", std::string(to_string(sweep.base_order))) +
              kv("grid points", std::to_string(sweep.scales.size())) +
              kv("flipping points", std::to_string(sweep.flipping_scales.size()));
  if (sweep.first) {
    rep.table += kv("flip interval", "[" + num(sweep.flipping_scales.front()) + ", " +
                                         num(sweep.flipping_scales.back()) + "]") +
                 "smallest flipping scale\n" + witness_text(*sweep.first);
  } else {
    rep.table += "no reversal on the grid\n";
  }
  if (o.at) {
    const auto w = reversal_at(a, b, spec, *o.at);
    rep.data["at"] = w ? wj::to_json(*w) : Json(nullptr);
    rep.table += w ? "reversal at t=" + num(*o.at) + "\n" + witness_text(*w)
                   : "no reversal at t=" + num(*o.at) + "\n";
  }
  return rep;
}

Report cmd_collapse(const Options& o) {
  const auto a = profile_arg(o.a, "--a");
  const auto b = profile_arg(o.b, "--b");
  const auto report = demonstrate_irbd_collapse(a, b, DiscountFactor(o.k.value_or(0.9)), o.lambda_max);
  Report rep;
  rep.data = wj::to_json(report);
  TextTable table({"lambda", "w(a)", "w(b)", "order"});
  for (const auto& rung : report.rungs) {
    table.add({std::to_string(rung.lambda), num(rung.w_a), num(rung.w_b), std::string(to_string(rung.order))});
  }
  rep.table = table.render() + kv("leximin order", std::string(to_string(report.leximin_order))) +
              kv("crossover lambda",
                 report.crossover_lambda ? std::to_string(*report.crossover_lambda) : "none within ladder") +
              kv("limits", num(report.limit_a) + ", " + num(report.limit_b));
  if (report.cross_size) rep.table += "note: populations differ in size; values are unnormalized\n";
  return rep;
}

Report cmd_ulbd(const Options& o) {
  const DiscountFactor k(o.k.value_or(0.5));
  const auto c = build_ulbd_construction(o.n_total, o.m_levels, k);
  const auto threshold = anomaly_threshold_m(k);
  Report rep;
  rep.data = wj::to_json(c);
  rep.data["threshold_m"] = threshold;
  rep.data["limit_inequality_holds"] = ulbd_limit_inequality_holds(k, o.m_levels);
  TextTable table({"", "A", "B"});
  table.add({"w_ulbd", num(c.w_a), num(c.w_b)});
  table.add({"total", num(c.total_a), num(c.total_b)});
  table.add({"gini", num(c.gini_a), num(c.gini_b)});
  rep.table = kv("N, m, k", std::to_string(c.n_total) + ", " + std::to_string(c.m_levels) + ", " + num(c.k)) +
              table.render() + kv("closed form N/2 + 5Nk", num(c.w_a_closed_form)) +
              kv("anomaly", c.anomaly ? "yes" : "no") +
              kv("smallest m passing the limit inequality", std::to_string(threshold));
  return rep;
}

std::string cycle_text(const std::vector<std::string>& cycle) {
  std::string s;
  for (const auto& label : cycle) s += label + " > ";
  return s + cycle.front();
}

Report cmd_preorder(const Options& o) {
  const auto table = wj::relation_table_from_json(wj::parse_document(input_text("", o, "--table")));
  const auto report = check_preorder(table);
  Report rep;
  rep.data = wj::to_json(report);
  rep.data["alternatives"] = table.alternatives();
  rep.table = kv("reflexive", report.reflexive_ok ? "yes" : "no") +
              kv("complete", report.complete_ok ? "yes" : "no") +
              kv("transitive", report.transitive_ok ? "yes" : "no") +
              kv("strict cycles", std::to_string(report.cycles.size()) +
                                      (report.cycles_truncated ? " (truncated)" : ""));
  for (const auto& cycle : report.cycles) rep.table += "  " + cycle_text(cycle) + "\n";
  return rep;
}

Report cmd_trolley(const Options& o) {
  const auto scenarios = wj::scenarios_from_json(wj::parse_document(input_text(o.scenarios, o, "--scenarios")));
  ThresholdRule rule;
  rule.cutoff = o.cutoff;
  const auto reading = lower(o.reading);
  if (reading == "total_risk") {
    rule.reading = CutoffReading::total_risk;
  } else if (reading == "added_risk") {
    rule.reading = CutoffReading::added_risk;
  } else {
    throw Error(ErrorKind::InvalidParams, "--reading must be total_risk or added_risk");
  }
  const auto audit = threshold_rule_audit(rule, scenarios);

  Report rep;
  rep.data = wj::to_json(audit);
  Json cases = Json::array();
  TextTable table({"case", "intervene", "do_nothing", "delta", "permitted"});
  for (std::size_t i = 0; i < scenarios.size(); ++i) {
    const auto& s = scenarios[i];
    const double act = expected_deaths(s, Act::intervene);
    const double idle = expected_deaths(s, Act::do_nothing);
    cases.push_back({{"group_size", s.group_size}, {"p", s.p}, {"eps1", s.eps1}, {"q", s.q},
                     {"eps2", s.eps2}, {"intervene", act}, {"do_nothing", idle}});
    table.add({std::to_string(i), num(act), num(idle), num(audit.verdicts[i].delta),
               audit.verdicts[i].permitted ? "yes" : "no"});
  }
  rep.data["scenarios"] = cases;
  rep.table = kv("cutoff", num(rule.cutoff) + " on " + std::string(to_string(rule.reading))) + table.render() +
              kv("inversions", std::to_string(audit.inversions.size()));
  for (const auto& inv : audit.inversions) {
    rep.table += "  case " + std::to_string(inv.permitted) + " permitted while case " +
                 std::to_string(inv.forbidden) + " is forbidden despite more benefit and no more risk\n";
  }
  return rep;
}

// --- option wiring ----------------------------------------------------------------

void add_output(CLI::App* cmd, Options& o) {
  cmd->add_option("--format", o.format, "table, Json or csv")
      ->check(CLI::IsMember({"table", "json", "csv"}));
  cmd->add_flag("--json", o.as_json, "shorthand for --format json");
  cmd->add_option("--out", o.out_path, "write the report to this path");
}

void add_measure(CLI::App* cmd, Options& o, const std::string& default_name) {
  cmd->add_option("--measure", o.measure,
                  "range, variance, std_dev, relative_mean_deviation, gini, atkinson, fairness, "
                  "fairness_power, fairness_log")
      ->default_str(default_name);
  cmd->add_option("--eps", o.eps, "Atkinson inequality aversion");
  cmd->add_option("--beta", o.beta, "fairness generator exponent");
  cmd->add_option("--r", o.r, "fairness population exponent");
  cmd->add_option("--rho", o.rho, "fairness tie-in exponent (defaults to 1 - beta r)");
  cmd->add_option("--generator", o.generator, "fairness generator: power or log");
  cmd->add_option("--params", o.params, "measure parameters as a JSON object");
}

int emit(const Report& rep, const Options& o, std::ostream& out) {
  const std::string format = o.as_json ? "json" : o.format;
  std::string text;
  if (format == "json") {
    text = rep.data.dump(2) + "\n";
  } else if (format == "csv") {
    text = to_csv(rep.data);
  } else {
    text = rep.table;
  }
  if (o.out_path.empty()) {
    out << text;
    return kExitOk;
  }
  std::ofstream file(o.out_path, std::ios::binary);
  if (!file || !(file << text)) throw Error(ErrorKind::ParseError, "cannot write '" + o.out_path + "'");
  return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Inequality measures, welfare functions and counterexample searches", "welfare-lab"};
  app.require_subcommand(1);

  using Handler = Report (*)(const Options&);
  std::vector<std::pair<CLI::App*, Handler>> commands;

  auto* measure = app.add_subcommand("measure", "evaluate an inequality measure on a profile");
  add_measure(measure, o, "gini");
  measure->add_option("--profile", o.profile, "profile as a JSON array or CSV row");
  measure->add_option("--file", o.file, "read the profile from a file");
  commands.emplace_back(measure, cmd_measure);

  auto* rank = app.add_subcommand("rank", "rank profiles by total, aggregate or a measure");
  add_measure(rank, o, "gini");
  rank->add_option("--profiles", o.profiles, "JSON list of profiles");
  rank->add_option("--file", o.file, "read the profile list from a file");
  rank->add_option("--by", o.rank_by, "util, aggregate or measure");
  rank->add_option("--lambda", o.lambda, "penalty weight for --by aggregate");
  commands.emplace_back(rank, cmd_rank);

  auto* lorenz = app.add_subcommand("lorenz", "Lorenz curve knots and dominance");
  lorenz->add_option("--profile", o.profile, "profile as a JSON array or CSV row");
  lorenz->add_option("--file", o.file, "read the profile from a file");
  lorenz->add_option("--compare", o.compare, "second profile to test dominance against");
  lorenz->add_option("--k", o.k, "rank weight k for V(L) = k * integral of L");
  commands.emplace_back(lorenz, cmd_lorenz);

  auto* aggregate = app.add_subcommand("aggregate", "penalty-weighted aggregate welfare");
  add_measure(aggregate, o, "gini");
  aggregate->add_option("--profile", o.profile, "profile as a JSON array or CSV row");
  aggregate->add_option("--file", o.file, "read the profile from a file");
  aggregate->add_option("--lambda", o.lambda, "penalty weight");
  commands.emplace_back(aggregate, cmd_aggregate);

  auto* audit = app.add_subcommand("audit", "coordinate-bump monotonicity audit");
  add_measure(audit, o, "gini");
  audit->add_option("--lambda", o.lambda, "penalty weight");
  audit->add_option("--seed", o.seed, "generator seed");
  audit->add_option("--samples", o.samples, "number of random profiles");
  audit->add_option("--min-n", o.min_n, "smallest profile length");
  audit->add_option("--max-n", o.max_n, "largest profile length");
  audit->add_option("--min-value", o.min_value, "smallest utility");
  audit->add_option("--max-value", o.max_value, "largest utility");
  audit->add_option("--sampling", o.sampling, "uniform or log_uniform");
  audit->add_option("--max-reported", o.max_reported, "violations kept in the report");
  commands.emplace_back(audit, cmd_audit);

  auto* reversal = app.add_subcommand("reversal", "search for scale reversals of an aggregate");
  add_measure(reversal, o, "variance");
  reversal->add_option("--a", o.a, "first profile")->required();
  reversal->add_option("--b", o.b, "second profile")->required();
  reversal->add_option("--lambda", o.lambda, "penalty weight");
  reversal->add_option("--log10-min", o.log10_min, "grid start exponent");
  reversal->add_option("--log10-max", o.log10_max, "grid end exponent");
  reversal->add_option("--points", o.points, "grid size");
  reversal->add_option("--scales", o.scales, "explicit scales instead of the grid");
  reversal->add_option("--at", o.at, "also evaluate this fixed scale");
  commands.emplace_back(reversal, cmd_reversal);

  auto* collapse = app.add_subcommand("collapse", "IRBD replication collapse toward leximin");
  collapse->add_option("--a", o.a, "first profile")->required();
  collapse->add_option("--b", o.b, "second profile")->required();
  collapse->add_option("--k", o.k, "discount factor in (0, 1), default 0.9");
  collapse->add_option("--lambda-max", o.lambda_max, "largest replication factor");
  commands.emplace_back(collapse, cmd_collapse);

  auto* ulbd = app.add_subcommand("ulbd", "two-distribution ULBD construction");
  ulbd->add_option("--n", o.n_total, "population size N");
  ulbd->add_option("--m", o.m_levels, "number of levels in B");
  ulbd->add_option("--k", o.k, "discount factor in (0, 1), default 0.5");
  commands.emplace_back(ulbd, cmd_ulbd);

  auto* preorder = app.add_subcommand("preorder", "check a judgment table against the preorder axioms");
  preorder->add_option("--table,--file", o.file, "relation table JSON file")->required();
  commands.emplace_back(preorder, cmd_preorder);

  auto* trolley = app.add_subcommand("trolley", "expected deaths and threshold-rule audit");
  trolley->add_option("--scenarios", o.scenarios, "inline JSON scenario list");
  trolley->add_option("--file", o.file, "scenario batch file");
  trolley->add_option("--cutoff", o.cutoff, "risk cutoff in (0, 1)");
  trolley->add_option("--reading", o.reading, "total_risk (q + eps2) or added_risk (eps2)");
  commands.emplace_back(trolley, cmd_trolley);

  for (auto& [cmd, _] : commands) add_output(cmd, o);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(std::move(reversed));
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInput;
  }

  try {
    for (auto& [cmd, handler] : commands) {
      if (!cmd->parsed()) continue;
      // per-subcommand default; the option storage is shared
      const auto* opt = cmd->get_option_no_throw("--measure");
      if (opt != nullptr && opt->count() == 0) o.measure = opt->get_default_str();
      return emit(handler(o), o, out);
    }
    return kExitInput;
  } catch (const Error& e) {
    err << "error: " << to_string(e.kind()) << ": " << e.what() << '\n';
    return e.kind() == ErrorKind::InternalNumeric ? kExitNumeric : kExitInput;
  } catch (const std::exception& e) {
    err << "error: InternalNumeric: " << e.what() << '\n';
    return kExitNumeric;
  }
}

}  // namespace welfare::cli
