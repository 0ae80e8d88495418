#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "roc/common.hpp"

// Strategy-labeled place/transition nets. Transitions are process fragments
// written as <source states, target states, strategy>; arcs have weight 1.

namespace roc {

enum class PlaceRole { kStart, kIntermediate, kExit };

struct Place {
  std::string id;
  std::string label;
  PlaceRole role = PlaceRole::kIntermediate;

  bool operator==(const Place&) const = default;
};

struct StrategyLabel {
  std::string text;
  bool deficiency = false;

  // Default deficiency for a label without an explicit flag: the normalized
  // text starts with "not " or "manual".
  static bool default_deficiency(std::string_view text);

  // Case-insensitive comparison on normalized whitespace.
  bool equivalent(const StrategyLabel& other) const;

  bool operator==(const StrategyLabel&) const = default;
};

struct Fragment {
  std::string id;
  IdSet sources;
  IdSet targets;
  StrategyLabel strategy;
  IdSet problems;  // As-Is only
  IdSet resolves;  // To-Be only

  bool is_self_loop() const { return sources == targets; }
  bool operator==(const Fragment&) const = default;
};

class Marking {
 public:
  using Tokens = std::map<std::string, std::uint32_t, IdLess>;

  Marking() = default;
  Marking(std::initializer_list<std::pair<const std::string, std::uint32_t>> init);

  std::uint32_t at(std::string_view place) const;
  void set(const std::string& place, std::uint32_t count);
  const Tokens& tokens() const { return tokens_; }
  std::uint64_t total() const;
  bool empty() const { return tokens_.empty(); }

  bool operator==(const Marking&) const = default;
  bool operator<(const Marking& other) const { return tokens_ < other.tokens_; }

 private:
  Tokens tokens_;  // zero counts are never stored
};

std::string to_string(const Marking& m);

enum class ModelKind { kAsIs, kToBe };

struct ProcessModel {
  std::string name;
  ModelKind kind = ModelKind::kAsIs;
  std::vector<Place> places;
  std::vector<Fragment> fragments;
  Marking initial_marking;

  const Place* find_place(std::string_view id) const;
  const Fragment* find_fragment(std::string_view id) const;
  IdSet fragment_ids() const;

  bool operator==(const ProcessModel&) const = default;
};

struct RefinementTree {
  // Parent fragment id -> ordered child ids.
  std::map<std::string, std::vector<std::string>, IdLess> children;

  // Parents that never appear as a child.
  IdSet roots() const;

  bool operator==(const RefinementTree&) const = default;
};

struct FulfilmentReport {
  bool exit_reachable = false;
  IdSet dead_fragments;
  std::size_t explored_markings = 0;
  bool bound_hit = false;

  bool operator==(const FulfilmentReport&) const = default;
};

inline constexpr std::size_t kDefaultBound = 10000;

std::vector<Violation> validate_net(const ProcessModel& model);

IdSet enabled(const ProcessModel& model, const Marking& m);

// Throws UnknownFragment or NotEnabled.
Marking fire(const ProcessModel& model, const Marking& m, std::string_view fragment);

struct Exploration {
  std::vector<Marking> markings;  // breadth-first discovery order
  bool bound_hit = false;
};

// Breadth-first exploration from the initial marking, firing fragments in
// id order. At most `bound` distinct markings are kept; bound_hit is set when
// a further marking was discovered but not stored.
Exploration explore(const ProcessModel& model, std::size_t bound = kDefaultBound);

std::set<Marking> reachable(const ProcessModel& model, std::size_t bound = kDefaultBound);

FulfilmentReport check_fulfilment(const ProcessModel& model, std::size_t bound = kDefaultBound);

// `PF1 :<(start), (support material), manual strategy>`. A target set that is
// a single exit place labelled "exit" renders as a bare `exit`.
std::string triplet(const ProcessModel& model, std::string_view fragment);

std::vector<Violation> validate_refinement(const ProcessModel& model, const RefinementTree& tree);

std::string_view to_string(PlaceRole role);
std::string_view to_string(ModelKind kind);

}  // namespace roc
