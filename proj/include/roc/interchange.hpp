#pragma once

#include <string>
#include <string_view>

#include <json.hpp>

#include "roc/alignment.hpp"
#include "roc/casebase.hpp"
#include "roc/goals.hpp"
#include "roc/net.hpp"

// JSON documents for reports and stored cases. Field order is fixed so the
// dumped text is stable.

namespace roc {

using Json = nlohmann::ordered_json;

Json to_json(const ProcessModel& model);
Json to_json(const GoalGraph& graph);
Json to_json(const AlignmentReport& report);
Json to_json(const ComponentMap& cmap);
Json to_json(const Scenario& s);

// Each throws ParseError when the document does not have the expected shape.
ProcessModel model_from_json(const Json& j);
GoalGraph goals_from_json(const Json& j);
AlignmentReport report_from_json(const Json& j);
ComponentMap components_from_json(const Json& j);
Scenario scenario_from_json(const Json& j);

// Two-space indented text with a trailing newline.
std::string dump(const Json& j);

// Throws ParseError with the line and column of malformed JSON text.
Json parse_json(std::string_view text, std::string_view file = "<input>");

AlignmentReport parse_report_json(std::string_view text, std::string_view file = "<input>");
Scenario parse_scenario_json(std::string_view text, std::string_view file = "<input>");

}  // namespace roc
