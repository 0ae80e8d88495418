#include "roc/dot.hpp"

namespace roc {

namespace {

std::string dot_escape(std::string_view text) {
  std::string out;
  for (char c : text) {
    if (c == '"' || c == '\\') {
      out.push_back('\\');
      out.push_back(c);
    } else if (c == '\n') {
      out += "\\n";
    } else if (static_cast<unsigned char>(c) >= 0x20) {
      out.push_back(c);
    }
  }
  return out;
}

std::string dot_quote(std::string_view text) { return "\"" + dot_escape(text) + "\""; }

std::string place_node(const std::string& id) { return dot_quote("p:" + id); }
std::string fragment_node(const std::string& id) { return dot_quote("f:" + id); }

std::string_view node_shape(NodeKind kind) {
  switch (kind) {
    case NodeKind::kNeed:
      return "ellipse";
    case NodeKind::kGoal:
      return "box";
    case NodeKind::kObjective:
      return "hexagon";
    case NodeKind::kRequirement:
      return "note";
  }
  return "box";
}

}  // namespace

std::string export_dot(const ProcessModel& model) {
  std::string out = "digraph " + dot_quote(model.name) + " {\n  rankdir=LR;\n";
  for (const auto& p : model.places) {
    out += "  " + place_node(p.id) + " [shape=circle, label=" + dot_quote(p.id + ": " + p.label);
    if (p.role == PlaceRole::kExit) out += ", peripheries=2";
    out += "];\n";
  }
  for (const auto& f : model.fragments) {
    std::string label = "\"" + dot_escape(f.id) + "\\n" + dot_escape(f.strategy.text) + "\"";
    out += "  " + fragment_node(f.id) + " [shape=box, label=" + label;
    if (f.strategy.deficiency) out += ", style=dashed";
    out += "];\n";
  }
  for (const auto& f : model.fragments) {
    for (const auto& s : f.sources) out += "  " + place_node(s) + " -> " + fragment_node(f.id) + ";\n";
    for (const auto& t : f.targets) out += "  " + fragment_node(f.id) + " -> " + place_node(t) + ";\n";
  }
  return out + "}\n";
}

std::string export_dot(const GoalGraph& graph) {
  std::string out = "digraph \"goals\" {\n  rankdir=BT;\n";
  for (const auto& s : graph.stakeholders) {
    out += "  " + dot_quote("s:" + s.id) + " [shape=house, label=" + dot_quote(s.name) + "];\n";
  }
  for (const auto& n : graph.nodes) {
    std::string style = n.kind == NodeKind::kGoal ? "rounded" : "";
    if (n.owner == Owner::kErp) style += style.empty() ? "filled" : ",filled";
    if (n.change) style += style.empty() ? "dashed" : ",dashed";
    out += "  " + dot_quote("n:" + n.id) + " [shape=" + std::string(node_shape(n.kind)) +
           ", label=" + dot_quote(n.label);
    if (!style.empty()) out += ", style=" + dot_quote(style);
    out += "];\n";
  }
  IdSet refs;
  for (const auto& e : graph.edges) {
    if (e.kind == EdgeKind::kRealisedBy) refs.insert(to_string(e.realisation));
  }
  for (const auto& r : refs) out += "  " + dot_quote("r:" + r) + " [shape=plaintext, label=" + dot_quote(r) + "];\n";
  for (const auto& e : graph.edges) {
    std::string from = dot_quote("n:" + e.from);
    switch (e.kind) {
      case EdgeKind::kDerivesFrom:
        out += "  " + from + " -> " + dot_quote("n:" + e.to) + " [label=\"derives\"];\n";
        break;
      case EdgeKind::kDecomposes:
        out += "  " + from + " -> " + dot_quote("n:" + e.to) + " [label=" +
               (e.decomposition == Decomposition::kAnd ? "\"AND\"" : "\"OR\"") + "];\n";
        break;
      case EdgeKind::kSupports:
        out += "  " + from + " -> " + dot_quote("n:" + e.to) + " [label=\"supports\", style=dashed];\n";
        break;
      case EdgeKind::kDeterminedBy:
        out += "  " + from + " -> " + dot_quote("s:" + e.to) + " [label=\"determined by\", style=dotted];\n";
        break;
      case EdgeKind::kRealisedBy:
        out += "  " + from + " -> " + dot_quote("r:" + to_string(e.realisation)) +
               " [label=\"realised by\"];\n";
        break;
    }
  }
  return out + "}\n";
}

}  // namespace roc
