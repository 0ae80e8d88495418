#include "roc/interchange.hpp"

#include <algorithm>

#include "roc/dsl.hpp"

namespace roc {

namespace {

struct ShapeError {
  std::string expected;
  std::string found;
};

[[noreturn]] void shape_error(std::string expected, const Json& found) {
  std::string shown = found.dump();
  if (shown.size() > 40) shown = shown.substr(0, 40) + "...";
  throw ShapeError{std::move(expected), shown};
}

const Json& field(const Json& j, const char* name) {
  if (!j.is_object()) shape_error("object with field '" + std::string(name) + "'", j);
  auto it = j.find(name);
  if (it == j.end()) shape_error("field '" + std::string(name) + "'", j);
  return *it;
}

std::string text(const Json& j, const char* name) {
  const Json& v = field(j, name);
  if (!v.is_string()) shape_error("string field '" + std::string(name) + "'", v);
  return v.get<std::string>();
}

bool flag(const Json& j, const char* name) {
  const Json& v = field(j, name);
  if (!v.is_boolean()) shape_error("boolean field '" + std::string(name) + "'", v);
  return v.get<bool>();
}

const Json& array(const Json& j, const char* name) {
  const Json& v = field(j, name);
  if (!v.is_array()) shape_error("array field '" + std::string(name) + "'", v);
  return v;
}

const Json& object(const Json& j, const char* name) {
  const Json& v = field(j, name);
  if (!v.is_object()) shape_error("object field '" + std::string(name) + "'", v);
  return v;
}

std::string as_string(const Json& v) {
  if (!v.is_string()) shape_error("string", v);
  return v.get<std::string>();
}

template <typename Set>
Set string_set(const Json& v) {
  if (!v.is_array()) shape_error("array of strings", v);
  Set out;
  for (const auto& item : v) out.insert(as_string(item));
  return out;
}

template <typename Set>
Json set_json(const Set& s) {
  Json out = Json::array();
  for (const auto& item : s) out.push_back(item);
  return out;
}

template <typename Enum, std::size_t N>
Enum enum_value(const Json& j, const char* name, const Enum (&values)[N]) {
  std::string v = text(j, name);
  for (Enum e : values) {
    if (to_string(e) == v) return e;
  }
  shape_error("known value for '" + std::string(name) + "'", field(j, name));
}

constexpr PlaceRole kRoles[] = {PlaceRole::kStart, PlaceRole::kIntermediate, PlaceRole::kExit};
constexpr ModelKind kKinds[] = {ModelKind::kAsIs, ModelKind::kToBe};
constexpr NodeKind kNodeKinds[] = {NodeKind::kNeed, NodeKind::kGoal, NodeKind::kObjective,
                                   NodeKind::kRequirement};
constexpr GoalLevel kLevels[] = {GoalLevel::kUnspecified, GoalLevel::kStrategic, GoalLevel::kOperational};
constexpr Owner kOwners[] = {Owner::kEnterprise, Owner::kErp};
constexpr EdgeKind kEdgeKinds[] = {EdgeKind::kDerivesFrom, EdgeKind::kDecomposes, EdgeKind::kSupports,
                                   EdgeKind::kDeterminedBy, EdgeKind::kRealisedBy};

template <typename Fn>
auto converting(Fn&& fn) {
  try {
    return fn();
  } catch (const ShapeError& e) {
    throw ParseError({"<json>", 1, 1}, e.expected, e.found);
  }
}

ProcessModel model_from(const Json& j) {
  ProcessModel m;
  m.name = text(j, "name");
  m.kind = enum_value(j, "kind", kKinds);
  for (const auto& p : array(j, "places")) {
    m.places.push_back({text(p, "id"), text(p, "label"), enum_value(p, "role", kRoles)});
  }
  for (const auto& [place, n] : object(j, "marking").items()) {
    if (!n.is_number_unsigned() || n.get<std::uint64_t>() > 0xffffffffu) shape_error("token count", n);
    m.initial_marking.set(place, n.get<std::uint32_t>());
  }
  for (const auto& f : array(j, "fragments")) {
    Fragment frag;
    frag.id = text(f, "id");
    frag.sources = string_set<IdSet>(field(f, "sources"));
    frag.targets = string_set<IdSet>(field(f, "targets"));
    frag.strategy = {text(f, "strategy"), flag(f, "deficient")};
    frag.problems = string_set<IdSet>(field(f, "problems"));
    frag.resolves = string_set<IdSet>(field(f, "resolves"));
    m.fragments.push_back(std::move(frag));
  }
  return m;
}

GoalGraph goals_from(const Json& j) {
  GoalGraph g;
  for (const auto& s : array(j, "stakeholders")) {
    g.stakeholders.push_back({text(s, "id"), text(s, "name"), text(s, "category")});
  }
  for (const auto& n : array(j, "nodes")) {
    g.nodes.push_back({text(n, "id"), text(n, "label"), enum_value(n, "kind", kNodeKinds),
                       enum_value(n, "level", kLevels), enum_value(n, "owner", kOwners), flag(n, "change")});
  }
  for (const auto& e : array(j, "edges")) {
    GoalEdge edge;
    edge.from = text(e, "from");
    edge.kind = enum_value(e, "kind", kEdgeKinds);
    edge.to = text(e, "to");
    std::string d = text(e, "decomposition");
    if (d != "and" && d != "or") shape_error("'and' or 'or'", field(e, "decomposition"));
    edge.decomposition = d == "and" ? Decomposition::kAnd : Decomposition::kOr;
    edge.realisation = {text(e, "fragment"), text(e, "model")};
    g.edges.push_back(std::move(edge));
  }
  return g;
}

std::optional<std::string> optional_id(const Json& j, const char* name) {
  const Json& v = field(j, name);
  if (v.is_null()) return std::nullopt;
  return as_string(v);
}

AlignmentReport report_from(const Json& j) {
  AlignmentReport r;
  for (const auto& m : array(j, "matches")) {
    FragmentMatch match;
    match.as_is = optional_id(m, "as_is");
    match.to_be = optional_id(m, "to_be");
    auto kind = parse_match_kind(text(m, "kind"));
    if (!kind) shape_error("match kind", field(m, "kind"));
    match.kind = *kind;
    r.matches.push_back(std::move(match));
  }
  for (const auto& [problem, ids] : object(j, "coverage").items()) {
    r.coverage[problem] = string_set<IdSet>(ids);
  }
  r.uncovered = string_set<IdSet>(field(j, "uncovered"));
  for (const auto& [category, ids] : object(j, "category_summary").items()) {
    r.category_summary[category] = string_set<IdSet>(ids);
  }
  return r;
}

ComponentMap components_from(const Json& j) {
  ComponentMap c;
  for (const auto& [fragment, names] : object(j, "entries").items()) {
    c.entries[fragment] = string_set<std::set<std::string>>(names);
  }
  c.global = string_set<std::set<std::string>>(field(j, "global"));
  return c;
}

Scenario scenario_from(const Json& j) {
  Scenario s;
  s.id = text(j, "id");
  s.name = text(j, "name");
  for (const auto& [key, value] : object(j, "metadata").items()) s.metadata[key] = as_string(value);
  s.goals = goals_from(field(j, "goals"));
  s.as_is = model_from(field(j, "as_is"));
  s.to_be = model_from(field(j, "to_be"));
  for (const auto& [from, to] : object(j, "correspondence").items()) {
    s.correspondence.pairs[from] = as_string(to);
  }
  for (const auto& p : array(j, "problems")) {
    s.problems.push_back({text(p, "id"), text(p, "category"), text(p, "description")});
  }
  s.report = report_from(field(j, "report"));
  s.component_map = components_from(field(j, "component_map"));
  return s;
}

}  // namespace

Json to_json(const ProcessModel& model) {
  Json places = Json::array();
  for (const auto& p : model.places) {
    places.push_back({{"id", p.id}, {"label", p.label}, {"role", to_string(p.role)}});
  }
  Json marking = Json::object();
  for (const auto& [place, n] : model.initial_marking.tokens()) marking[place] = n;
  Json fragments = Json::array();
  for (const auto& f : model.fragments) {
    fragments.push_back({{"id", f.id},
                         {"sources", set_json(f.sources)},
                         {"targets", set_json(f.targets)},
                         {"strategy", f.strategy.text},
                         {"deficient", f.strategy.deficiency},
                         {"problems", set_json(f.problems)},
                         {"resolves", set_json(f.resolves)}});
  }
  return {{"name", model.name},
          {"kind", to_string(model.kind)},
          {"places", std::move(places)},
          {"marking", std::move(marking)},
          {"fragments", std::move(fragments)}};
}

Json to_json(const GoalGraph& graph) {
  Json stakeholders = Json::array();
  for (const auto& s : graph.stakeholders) {
    stakeholders.push_back({{"id", s.id}, {"name", s.name}, {"category", s.category}});
  }
  Json nodes = Json::array();
  for (const auto& n : graph.nodes) {
    nodes.push_back({{"id", n.id},
                     {"label", n.label},
                     {"kind", to_string(n.kind)},
                     {"level", to_string(n.level)},
                     {"owner", to_string(n.owner)},
                     {"change", n.change}});
  }
  Json edges = Json::array();
  for (const auto& e : graph.edges) {
    edges.push_back({{"from", e.from},
                     {"kind", to_string(e.kind)},
                     {"to", e.to},
                     {"decomposition", e.decomposition == Decomposition::kAnd ? "and" : "or"},
                     {"fragment", e.realisation.fragment},
                     {"model", e.realisation.model}});
  }
  return {{"stakeholders", std::move(stakeholders)}, {"nodes", std::move(nodes)}, {"edges", std::move(edges)}};
}

Json to_json(const AlignmentReport& report) {
  Json matches = Json::array();
  for (const auto& m : report.matches) {
    matches.push_back({{"as_is", m.as_is ? Json(*m.as_is) : Json(nullptr)},
                       {"to_be", m.to_be ? Json(*m.to_be) : Json(nullptr)},
                       {"kind", to_string(m.kind)}});
  }
  Json coverage = Json::object();
  for (const auto& [problem, ids] : report.coverage) coverage[problem] = set_json(ids);
  Json categories = Json::object();
  for (const auto& [category, ids] : report.category_summary) categories[category] = set_json(ids);
  return {{"matches", std::move(matches)},
          {"coverage", std::move(coverage)},
          {"uncovered", set_json(report.uncovered)},
          {"category_summary", std::move(categories)}};
}

Json to_json(const ComponentMap& cmap) {
  Json entries = Json::object();
  for (const auto& [fragment, names] : cmap.entries) entries[fragment] = set_json(names);
  return {{"entries", std::move(entries)}, {"global", set_json(cmap.global)}};
}

Json to_json(const Scenario& s) {
  Json metadata = Json::object();
  for (const auto& [k, v] : s.metadata) metadata[k] = v;
  Json corr = Json::object();
  for (const auto& [from, to] : s.correspondence.pairs) corr[from] = to;
  Json problems = Json::array();
  for (const auto& p : s.problems) {
    problems.push_back({{"id", p.id}, {"category", p.category}, {"description", p.description}});
  }
  return {{"id", s.id},
          {"name", s.name},
          {"metadata", std::move(metadata)},
          {"goals", to_json(s.goals)},
          {"as_is", to_json(s.as_is)},
          {"to_be", to_json(s.to_be)},
          {"correspondence", std::move(corr)},
          {"problems", std::move(problems)},
          {"report", to_json(s.report)},
          {"component_map", to_json(s.component_map)}};
}

ProcessModel model_from_json(const Json& j) {
  return converting([&] { return model_from(j); });
}
GoalGraph goals_from_json(const Json& j) {
  return converting([&] { return goals_from(j); });
}
AlignmentReport report_from_json(const Json& j) {
  return converting([&] { return report_from(j); });
}
ComponentMap components_from_json(const Json& j) {
  return converting([&] { return components_from(j); });
}
Scenario scenario_from_json(const Json& j) {
  return converting([&] { return scenario_from(j); });
}

std::string dump(const Json& j) {
  // Invalid UTF-8 in labels is replaced rather than rejected.
  return j.dump(2, ' ', false, Json::error_handler_t::replace) + "\n";
}

Json parse_json(std::string_view text, std::string_view file) {
  try {
    return Json::parse(text.begin(), text.end());
  } catch (const Json::parse_error& e) {
    std::size_t offset = e.byte == 0 ? 0 : std::min<std::size_t>(e.byte - 1, text.size());
    SourceSpan span{std::string(file), 1, 1};
    for (std::size_t i = 0; i < offset; ++i) {
      if (text[i] == '\n') {
        ++span.line;
        span.column = 1;
      } else {
        ++span.column;
      }
    }
    std::string found = offset < text.size() ? std::string("'") + text[offset] + "'" : "end of input";
    throw ParseError(span, "well-formed JSON", found);
  }
}

AlignmentReport parse_report_json(std::string_view text, std::string_view file) {
  Json j = parse_json(text, file);
  try {
    return report_from(j);
  } catch (const ShapeError& e) {
    throw ParseError({std::string(file), 1, 1}, e.expected, e.found);
  }
}

Scenario parse_scenario_json(std::string_view text, std::string_view file) {
  Json j = parse_json(text, file);
  try {
    return scenario_from(j);
  } catch (const ShapeError& e) {
    throw ParseError({std::string(file), 1, 1}, e.expected, e.found);
  }
}

}  // namespace roc
