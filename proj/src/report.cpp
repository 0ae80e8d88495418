#include "roc/report.hpp"

#include <algorithm>
#include <cstdio>

#include "roc/interchange.hpp"

namespace roc {

ReportFormat parse_report_format(std::string_view name) {
  if (name == "plain") return ReportFormat::kPlain;
  if (name == "structured") return ReportFormat::kStructured;
  throw UnknownFormat("unknown report format '" + std::string(name) + "' (expected plain or structured)");
}

std::string render_table(const std::vector<std::vector<std::string>>& rows) {
  std::vector<std::size_t> width;
  for (const auto& row : rows) {
    if (width.size() < row.size()) width.resize(row.size(), 0);
    for (std::size_t i = 0; i < row.size(); ++i) width[i] = std::max(width[i], row[i].size());
  }
  std::string out;
  for (const auto& row : rows) {
    std::string line;
    for (std::size_t i = 0; i < row.size(); ++i) {
      line += row[i];
      if (i + 1 < row.size()) line += std::string(width[i] - row[i].size() + 2, ' ');
    }
    while (!line.empty() && line.back() == ' ') line.pop_back();
    out += line + "\n";
  }
  return out;
}

namespace {

std::string or_none(const std::string& s) { return s.empty() ? "none" : s; }

}  // namespace

std::string render_report(const AlignmentReport& report, ReportFormat format, const ProcessModel* as_is,
                          const ProcessModel* to_be) {
  if (format == ReportFormat::kStructured) return dump(to_json(report));

  const bool strategies = as_is != nullptr && to_be != nullptr;
  std::string out;
  if (strategies) out += "alignment: " + as_is->name + " -> " + to_be->name + "\n\n";

  std::vector<std::vector<std::string>> rows;
  if (strategies) {
    rows.push_back({"as-is", "to-be", "match", "as-is strategy", "to-be strategy"});
  } else {
    rows.push_back({"as-is", "to-be", "match"});
  }
  for (const auto& m : report.matches) {
    std::vector<std::string> row{m.as_is.value_or("-"), m.to_be.value_or("-"), std::string(to_string(m.kind))};
    if (strategies) {
      const Fragment* a = m.as_is ? as_is->find_fragment(*m.as_is) : nullptr;
      const Fragment* b = m.to_be ? to_be->find_fragment(*m.to_be) : nullptr;
      row.push_back(a ? a->strategy.text : "-");
      row.push_back(b ? b->strategy.text : "-");
    }
    rows.push_back(std::move(row));
  }
  out += render_table(rows);

  std::size_t unchanged = count(report, MatchKind::kUnchanged);
  out += "\nmatches: " + std::to_string(report.matches.size()) + " (unchanged " + std::to_string(unchanged) +
         ", strategy-upgrade " + std::to_string(count(report, MatchKind::kStrategyUpgrade)) + ", added " +
         std::to_string(count(report, MatchKind::kAdded)) + ", removed " +
         std::to_string(count(report, MatchKind::kRemoved)) + ")\n";
  out += "gaps: " + std::to_string(report.matches.size() - unchanged) + "\n";

  if (!report.coverage.empty()) {
    out += "\ncoverage:\n";
    std::vector<std::vector<std::string>> cov;
    for (const auto& [problem, ids] : report.coverage) cov.push_back({"  " + problem, or_none(join(ids))});
    out += render_table(cov);
  }
  if (!report.category_summary.empty()) {
    out += "\ncategories:\n";
    std::vector<std::vector<std::string>> cats;
    for (const auto& [category, ids] : report.category_summary) cats.push_back({"  " + category, or_none(join(ids))});
    out += render_table(cats);
  }
  out += "\nuncovered: " + or_none(join(report.uncovered)) + "\n";
  return out;
}

std::string render_components(const ComponentTable& table, ReportFormat format) {
  if (format == ReportFormat::kStructured) {
    Json rows = Json::array();
    for (const auto& r : table.rows) {
      Json names = Json::array();
      for (const auto& c : r.components) names.push_back(c);
      rows.push_back({{"fragment", r.fragment}, {"components", std::move(names)}});
    }
    Json all = Json::array();
    for (const auto& c : table.all) all.push_back(c);
    return dump(Json{{"rows", std::move(rows)}, {"all", std::move(all)}});
  }
  std::vector<std::vector<std::string>> rows{{"fragment", "components"}};
  for (const auto& r : table.rows) rows.push_back({r.fragment, join(r.components)});
  rows.push_back({"All", join(table.all)});
  return render_table(rows);
}

std::string render_fulfilment(const FulfilmentReport& report) {
  std::string out;
  out += "exit reachable: " + std::string(report.exit_reachable ? "yes" : "no") + "\n";
  out += "dead fragments: " + or_none(join(report.dead_fragments)) + "\n";
  out += "explored markings: " + std::to_string(report.explored_markings) + "\n";
  out += "bound hit: " + std::string(report.bound_hit ? "yes" : "no") + "\n";
  return out;
}

std::string render_support(const SupportReport& report, const GoalGraph& graph) {
  std::vector<std::vector<std::string>> rows{{"goal", "status", "label"}};
  IdSet all = report.supported;
  all.insert(report.unsupported.begin(), report.unsupported.end());
  for (const auto& id : all) {
    const GoalNode* n = graph.find_node(id);
    rows.push_back({id, report.supported.contains(id) ? "supported" : "unsupported", n ? n->label : ""});
  }
  return render_table(rows) + "\nunsupported: " + or_none(join(report.unsupported)) + "\n";
}

std::string render_trace(const TraceReport& report) {
  std::string out;
  for (const auto& path : report.up) out += "up:   " + join(path, " -> ") + "\n";
  for (const auto& path : report.down) out += "down: " + join(path, " -> ") + "\n";
  return out;
}

std::string render_hits(const std::vector<RetrievalHit>& hits) {
  std::vector<std::vector<std::string>> rows{{"rank", "scenario", "score"}};
  for (std::size_t i = 0; i < hits.size(); ++i) {
    char score[32];
    std::snprintf(score, sizeof score, "%.6f", hits[i].score);
    rows.push_back({std::to_string(i + 1), hits[i].id, score});
  }
  return render_table(rows);
}

}  // namespace roc
