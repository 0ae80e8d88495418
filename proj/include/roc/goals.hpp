#pragma once

#include <span>
#include <string>
#include <vector>

#include "roc/common.hpp"
#include "roc/net.hpp"

// Goal graphs: needs, goals, objectives and requirements with their
// stakeholders, traced down to the fragments that realise them.

namespace roc {

struct Stakeholder {
  std::string id;
  std::string name;
  std::string category;

  bool operator==(const Stakeholder&) const = default;
};

enum class NodeKind { kNeed, kGoal, kObjective, kRequirement };
enum class GoalLevel { kUnspecified, kStrategic, kOperational };
enum class Owner { kEnterprise, kErp };

struct GoalNode {
  std::string id;
  std::string label;
  NodeKind kind = NodeKind::kGoal;
  GoalLevel level = GoalLevel::kUnspecified;
  Owner owner = Owner::kEnterprise;
  bool change = false;

  bool operator==(const GoalNode&) const = default;
};

enum class EdgeKind { kDerivesFrom, kDecomposes, kSupports, kDeterminedBy, kRealisedBy };
enum class Decomposition { kAnd, kOr };

// Target of a RealisedBy edge. An empty fragment means the whole model; an
// empty model name matches any model.
struct RealisationRef {
  std::string fragment;
  std::string model;

  bool whole_model() const { return fragment.empty(); }
  bool matches(const ProcessModel& m) const;
  bool operator==(const RealisationRef&) const = default;
};

std::string to_string(const RealisationRef& ref);

// Edges point from the refined element to the more abstract one:
// goal -derives-> need, subgoal -decomposes-> goal, erp -supports-> enterprise.
// For DeterminedBy `to` is a stakeholder id; RealisedBy uses `realisation`.
struct GoalEdge {
  std::string from;
  EdgeKind kind = EdgeKind::kDerivesFrom;
  std::string to;
  Decomposition decomposition = Decomposition::kAnd;
  RealisationRef realisation;

  bool operator==(const GoalEdge&) const = default;
};

struct GoalGraph {
  std::vector<GoalNode> nodes;
  std::vector<GoalEdge> edges;
  std::vector<Stakeholder> stakeholders;

  const GoalNode* find_node(std::string_view id) const;
  const Stakeholder* find_stakeholder(std::string_view id) const;

  bool operator==(const GoalGraph&) const = default;
};

std::vector<Violation> validate_graph(const GoalGraph& g);

// Nodes of `kind` that are not further decomposed.
IdSet leaves(const GoalGraph& g, NodeKind kind);

struct TraceReport {
  std::string node;
  // Maximal simple paths starting at `node`. Upward paths follow DerivesFrom
  // and Decomposes towards root needs; downward paths follow sub-goals,
  // supporting ERP nodes and end at RealisedBy references.
  std::vector<std::vector<std::string>> up;
  std::vector<std::vector<std::string>> down;

  bool operator==(const TraceReport&) const = default;
};

// Throws UnknownNode.
TraceReport trace(const GoalGraph& g, std::string_view node);

struct SupportReport {
  IdSet supported;
  IdSet unsupported;

  bool operator==(const SupportReport&) const = default;
};

// An enterprise leaf goal is supported when some ERP node supports it and
// that node, or a sub-goal decomposing it, is realised by a fragment (or the
// whole model) of one of the given To-Be models.
SupportReport support_check(const GoalGraph& g, std::span<const ProcessModel> to_be);
SupportReport support_check(const GoalGraph& g, const ProcessModel& to_be);

std::string_view to_string(NodeKind kind);
std::string_view to_string(GoalLevel level);
std::string_view to_string(Owner owner);
std::string_view to_string(EdgeKind kind);

}  // namespace roc
