#include "roc/goals.hpp"

#include <algorithm>
#include <functional>
#include <map>

namespace roc {

std::string_view to_string(NodeKind kind) {
  switch (kind) {
    case NodeKind::kNeed:
      return "need";
    case NodeKind::kGoal:
      return "goal";
    case NodeKind::kObjective:
      return "objective";
    case NodeKind::kRequirement:
      return "requirement";
  }
  return "goal";
}

std::string_view to_string(GoalLevel level) {
  switch (level) {
    case GoalLevel::kStrategic:
      return "strategic";
    case GoalLevel::kOperational:
      return "operational";
    case GoalLevel::kUnspecified:
      break;
  }
  return "unspecified";
}

std::string_view to_string(Owner owner) { return owner == Owner::kErp ? "erp" : "enterprise"; }

std::string_view to_string(EdgeKind kind) {
  switch (kind) {
    case EdgeKind::kDerivesFrom:
      return "derives";
    case EdgeKind::kDecomposes:
      return "decomposes";
    case EdgeKind::kSupports:
      return "supports";
    case EdgeKind::kDeterminedBy:
      return "determinedby";
    case EdgeKind::kRealisedBy:
      return "realisedby";
  }
  return "derives";
}

bool RealisationRef::matches(const ProcessModel& m) const {
  if (!model.empty() && model != m.name) return false;
  return whole_model() || m.find_fragment(fragment) != nullptr;
}

std::string to_string(const RealisationRef& ref) {
  if (ref.whole_model()) return "model \"" + ref.model + "\"";
  if (ref.model.empty()) return ref.fragment;
  return ref.fragment + " of \"" + ref.model + "\"";
}

const GoalNode* GoalGraph::find_node(std::string_view id) const {
  auto it = std::find_if(nodes.begin(), nodes.end(), [&](const GoalNode& n) { return n.id == id; });
  return it == nodes.end() ? nullptr : &*it;
}

const Stakeholder* GoalGraph::find_stakeholder(std::string_view id) const {
  auto it = std::find_if(stakeholders.begin(), stakeholders.end(),
                         [&](const Stakeholder& s) { return s.id == id; });
  return it == stakeholders.end() ? nullptr : &*it;
}

namespace {

bool derives_allowed(NodeKind from, NodeKind to) {
  return (from == NodeKind::kGoal && to == NodeKind::kNeed) ||
         (from == NodeKind::kObjective && to == NodeKind::kNeed) ||
         (from == NodeKind::kRequirement && to == NodeKind::kObjective);
}

// Strongly connected components of the subgraph induced by one edge kind;
// returns the components that contain a cycle.
std::vector<IdSet> cyclic_components(const GoalGraph& g, EdgeKind kind) {
  std::map<std::string, IdSet, IdLess> adj;
  for (const auto& e : g.edges) {
    if (e.kind != kind || !g.find_node(e.from) || !g.find_node(e.to)) continue;
    adj[e.from].insert(e.to);
    adj[e.to];
  }

  std::map<std::string, int, IdLess> index, low;
  std::vector<std::string> stack;
  IdSet on_stack;
  int counter = 0;
  std::vector<IdSet> out;

  std::function<void(const std::string&)> strong = [&](const std::string& v) {
    index[v] = low[v] = counter++;
    stack.push_back(v);
    on_stack.insert(v);
    for (const auto& w : adj[v]) {
      if (!index.contains(w)) {
        strong(w);
        low[v] = std::min(low[v], low[w]);
      } else if (on_stack.contains(w)) {
        low[v] = std::min(low[v], index[w]);
      }
    }
    if (low[v] == index[v]) {
      IdSet component;
      std::string w;
      do {
        w = stack.back();
        stack.pop_back();
        on_stack.erase(w);
        component.insert(w);
      } while (w != v);
      bool cyclic = component.size() > 1 || adj[v].contains(v);
      if (cyclic) out.push_back(std::move(component));
    }
  };
  for (const auto& [v, _] : adj) {
    if (!index.contains(v)) strong(v);
  }
  std::sort(out.begin(), out.end(),
            [](const IdSet& a, const IdSet& b) { return IdLess{}(*a.begin(), *b.begin()); });
  return out;
}

}  // namespace

std::vector<Violation> validate_graph(const GoalGraph& g) {
  std::vector<Violation> out;
  auto report = [&](std::string code, std::string subject, std::string message) {
    out.push_back({std::move(code), std::move(subject), std::move(message)});
  };

  IdSet stakeholder_ids;
  for (const auto& s : g.stakeholders) {
    if (!is_valid_id(s.id)) report("InvalidId", s.id, "stakeholder id '" + s.id + "' is not an identifier");
    if (!stakeholder_ids.insert(s.id).second) {
      report("DuplicateStakeholder", s.id, "stakeholder " + s.id + " declared twice");
    }
  }
  IdSet node_ids;
  for (const auto& n : g.nodes) {
    if (!is_valid_id(n.id)) report("InvalidId", n.id, "node id '" + n.id + "' is not an identifier");
    if (!node_ids.insert(n.id).second) report("DuplicateNode", n.id, "node " + n.id + " declared twice");
    if (n.kind == NodeKind::kNeed && n.owner != Owner::kEnterprise) {
      report("NeedOwner", n.id, "need " + n.id + " must be owned by the enterprise");
    }
    if (n.change && n.kind != NodeKind::kGoal) {
      report("ChangeOnNonGoal", n.id, "only goals can be change goals; " + n.id + " is a " +
                                          std::string(to_string(n.kind)));
    }
  }

  for (const auto& e : g.edges) {
    const GoalNode* from = g.find_node(e.from);
    if (from == nullptr) {
      report("DanglingEdge", e.from, "edge starts at unknown node " + e.from);
      continue;
    }
    const std::string edge_text = e.from + " " + std::string(to_string(e.kind));
    switch (e.kind) {
      case EdgeKind::kDeterminedBy:
        if (!g.find_stakeholder(e.to)) {
          report("DanglingEdge", e.from, edge_text + " names unknown stakeholder " + e.to);
        }
        continue;
      case EdgeKind::kRealisedBy:
        if (from->kind != NodeKind::kGoal && from->kind != NodeKind::kObjective) {
          report("BadRealisedBySource", e.from,
                 "only goals and objectives are realised; " + e.from + " is a " +
                     std::string(to_string(from->kind)));
        }
        if (e.realisation.whole_model() && e.realisation.model.empty()) {
          report("DanglingEdge", e.from, edge_text + " names no fragment or model");
        }
        continue;
      default:
        break;
    }
    const GoalNode* to = g.find_node(e.to);
    if (to == nullptr) {
      report("DanglingEdge", e.from, edge_text + " " + e.to + " targets an unknown node");
      continue;
    }
    switch (e.kind) {
      case EdgeKind::kDerivesFrom:
        if (!derives_allowed(from->kind, to->kind)) {
          report("BadDerivesKinds", e.from,
                 std::string(to_string(from->kind)) + " " + e.from + " cannot derive from " +
                     std::string(to_string(to->kind)) + " " + e.to);
        }
        break;
      case EdgeKind::kSupports:
        if (from->owner != Owner::kErp || to->owner != Owner::kEnterprise) {
          report("BadSupportsDirection", e.from,
                 "supports must run from an ERP node to an enterprise node: " + e.from + " -> " + e.to);
        }
        break;
      case EdgeKind::kDecomposes:
        if (from->kind != to->kind) {
          report("BadDecomposeKinds", e.from,
                 e.from + " and " + e.to + " are of different kinds and cannot decompose");
        }
        break;
      default:
        break;
    }
  }

  for (const auto& comp : cyclic_components(g, EdgeKind::kDecomposes)) {
    report("DecompositionCycle", *comp.begin(), "decomposition cycle through " + join(comp));
  }
  for (const auto& comp : cyclic_components(g, EdgeKind::kDerivesFrom)) {
    report("DerivationCycle", *comp.begin(), "derivation cycle through " + join(comp));
  }
  return out;
}

IdSet leaves(const GoalGraph& g, NodeKind kind) {
  IdSet decomposed;
  for (const auto& e : g.edges) {
    if (e.kind != EdgeKind::kDecomposes) continue;
    const GoalNode* child = g.find_node(e.from);
    if (child && child->kind == kind) decomposed.insert(e.to);
  }
  IdSet out;
  for (const auto& n : g.nodes) {
    if (n.kind == kind && !decomposed.contains(n.id)) out.insert(n.id);
  }
  return out;
}

namespace {

using Successors = std::function<std::vector<std::string>(const std::string&)>;

void simple_paths(const std::string& cur, const Successors& next, std::vector<std::string>& path,
                  IdSet& on_path, std::vector<std::vector<std::string>>& out) {
  bool extended = false;
  for (const auto& n : next(cur)) {
    if (on_path.contains(n)) continue;
    extended = true;
    path.push_back(n);
    on_path.insert(n);
    simple_paths(n, next, path, on_path, out);
    on_path.erase(n);
    path.pop_back();
  }
  if (!extended) out.push_back(path);
}

std::vector<std::vector<std::string>> paths_from(const std::string& start, const Successors& next) {
  std::vector<std::vector<std::string>> out;
  std::vector<std::string> path{start};
  IdSet on_path{start};
  simple_paths(start, next, path, on_path, out);
  return out;
}

}  // namespace

TraceReport trace(const GoalGraph& g, std::string_view node) {
  if (!g.find_node(node)) throw UnknownNode("unknown goal node " + std::string(node));

  Successors upward = [&](const std::string& cur) {
    IdSet next;
    for (const auto& e : g.edges) {
      if (e.from == cur && (e.kind == EdgeKind::kDerivesFrom || e.kind == EdgeKind::kDecomposes) &&
          g.find_node(e.to)) {
        next.insert(e.to);
      }
    }
    return std::vector<std::string>(next.begin(), next.end());
  };

  // Realisation references are terminal: they never name a goal node, and
  // the quoting in their text keeps them distinct from node ids.
  Successors downward = [&](const std::string& cur) {
    IdSet nodes;
    std::vector<std::string> refs;
    if (!g.find_node(cur)) return std::vector<std::string>{};
    for (const auto& e : g.edges) {
      if (e.to == cur && (e.kind == EdgeKind::kDecomposes || e.kind == EdgeKind::kSupports) &&
          g.find_node(e.from)) {
        nodes.insert(e.from);
      }
      if (e.from == cur && e.kind == EdgeKind::kRealisedBy) refs.push_back(to_string(e.realisation));
    }
    std::sort(refs.begin(), refs.end(), IdLess{});
    refs.erase(std::unique(refs.begin(), refs.end()), refs.end());
    std::vector<std::string> out(nodes.begin(), nodes.end());
    out.insert(out.end(), refs.begin(), refs.end());
    return out;
  };

  TraceReport report;
  report.node = std::string(node);
  report.up = paths_from(report.node, upward);
  report.down = paths_from(report.node, downward);
  return report;
}

SupportReport support_check(const GoalGraph& g, std::span<const ProcessModel> to_be) {
  auto realised = [&](const std::string& id) {
    for (const auto& e : g.edges) {
      if (e.from != id || e.kind != EdgeKind::kRealisedBy) continue;
      for (const auto& m : to_be) {
        if (e.realisation.matches(m)) return true;
      }
    }
    return false;
  };

  // An ERP node counts as realised when it or any node decomposing it is.
  auto realised_subtree = [&](const std::string& root) {
    IdSet seen{root};
    std::vector<std::string> work{root};
    while (!work.empty()) {
      std::string cur = work.back();
      work.pop_back();
      if (realised(cur)) return true;
      for (const auto& e : g.edges) {
        if (e.kind == EdgeKind::kDecomposes && e.to == cur && seen.insert(e.from).second) {
          work.push_back(e.from);
        }
      }
    }
    return false;
  };

  SupportReport report;
  for (const auto& id : leaves(g, NodeKind::kGoal)) {
    const GoalNode* goal = g.find_node(id);
    if (goal->owner != Owner::kEnterprise) continue;
    bool ok = false;
    for (const auto& e : g.edges) {
      if (ok) break;
      if (e.kind != EdgeKind::kSupports || e.to != id) continue;
      const GoalNode* from = g.find_node(e.from);
      if (from && from->owner == Owner::kErp && realised_subtree(from->id)) ok = true;
    }
    (ok ? report.supported : report.unsupported).insert(id);
  }
  return report;
}

SupportReport support_check(const GoalGraph& g, const ProcessModel& to_be) {
  return support_check(g, std::span<const ProcessModel>(&to_be, 1));
}

}  // namespace roc
