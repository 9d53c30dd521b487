#pragma once

// JSON schemas for every report and input file.

#include <string_view>
#include <vector>

#include <json.hpp>

#include "welfare/aggregate.hpp"
#include "welfare/choice_theory.hpp"
#include "welfare/lorenz.hpp"
#include "welfare/measures.hpp"
#include "welfare/preorder.hpp"
#include "welfare/search.hpp"

namespace welfare::json {

using nlohmann::json;

json to_json(const UtilityProfile& p);
json to_json(const MeasureDescriptor& m);
json to_json(const AggregateSpec& spec);
json to_json(const LorenzCurve& c);  // [[u, l], ...]
json to_json(const AuditReport& r);
json to_json(const ReversalWitness& w);
json to_json(const ScaleSweep& s);
json to_json(const CollapseReport& r);
json to_json(const LevelHistogram& h);
json to_json(const UlbdConstruction& c);
json to_json(const ConsistencyReport& r);
json to_json(const std::vector<RankedEntry>& ranking);
json to_json(const ThresholdAudit& a);

// Input schemas. All throw Error(ParseError) on malformed documents.
UtilityProfile profile_from_json(const json& j);
/// [[...], ...] or [{label, values: [...]}, ...]
std::vector<UtilityProfile> profiles_from_json(const json& j);
/// {alternatives: [...], judgments: [["B","A"], ...]}
RelationTable relation_table_from_json(const json& j);
/// [{group_size, p, eps1, q, eps2}, ...]; group_size defaults to 5
std::vector<TrolleyScenario> scenarios_from_json(const json& j);
LorenzCurve lorenz_from_json(const json& j);
AuditReport audit_report_from_json(const json& j);

json parse_document(std::string_view text);

}  // namespace welfare::json
