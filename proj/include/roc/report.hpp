#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "roc/alignment.hpp"
#include "roc/casebase.hpp"
#include "roc/goals.hpp"
#include "roc/net.hpp"

namespace roc {

enum class ReportFormat { kPlain, kStructured };

// Throws UnknownFormat.
ReportFormat parse_report_format(std::string_view name);

// Plain output is a fixed-layout table; with both models given it also
// shows each side's strategy. Structured output is the JSON document of the
// report's fields and ignores the models.
std::string render_report(const AlignmentReport& report, ReportFormat format,
                          const ProcessModel* as_is = nullptr, const ProcessModel* to_be = nullptr);

std::string render_components(const ComponentTable& table, ReportFormat format);
std::string render_fulfilment(const FulfilmentReport& report);
std::string render_support(const SupportReport& report, const GoalGraph& graph);
std::string render_trace(const TraceReport& report);
std::string render_hits(const std::vector<RetrievalHit>& hits);

// Space-padded columns; the last column is not padded.
std::string render_table(const std::vector<std::vector<std::string>>& rows);

}  // namespace roc
