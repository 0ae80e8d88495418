#pragma once

#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "roc/common.hpp"
#include "roc/net.hpp"

// Strategy-level comparison of an As-Is and a To-Be model.

namespace roc {

struct Problem {
  std::string id;
  std::string category;
  std::string description;

  bool operator==(const Problem&) const = default;
};

// As-Is place id -> To-Be place id. Must be injective.
struct PlaceCorrespondence {
  std::map<std::string, std::string, IdLess> pairs;

  bool operator==(const PlaceCorrespondence&) const = default;
};

// Maps every As-Is place to the To-Be place with the same id, when present.
PlaceCorrespondence identity_correspondence(const ProcessModel& as_is, const ProcessModel& to_be);

// Throws CorrespondenceError when the map is not injective or names places
// missing from either model.
void check_correspondence(const PlaceCorrespondence& corr, const ProcessModel& as_is,
                          const ProcessModel& to_be);

PlaceCorrespondence invert(const PlaceCorrespondence& corr);

enum class MatchKind { kUnchanged, kStrategyUpgrade, kAdded, kRemoved };

struct FragmentMatch {
  std::optional<std::string> as_is;
  std::optional<std::string> to_be;
  MatchKind kind = MatchKind::kUnchanged;

  bool operator==(const FragmentMatch&) const = default;
};

using CoverageMap = std::map<std::string, IdSet, IdLess>;

struct AlignmentReport {
  std::vector<FragmentMatch> matches;
  CoverageMap coverage;  // problem id -> resolving To-Be fragments
  IdSet uncovered;
  std::map<std::string, IdSet> category_summary;  // category -> resolving fragments

  bool operator==(const AlignmentReport&) const = default;
};

struct ComponentMap {
  std::map<std::string, std::set<std::string>, IdLess> entries;
  std::set<std::string> global;

  bool operator==(const ComponentMap&) const = default;
};

// Unchanged or StrategyUpgrade when the fragments' endpoints correspond under
// `corr`; nullopt otherwise.
std::optional<MatchKind> classify(const Fragment& as_is, const Fragment& to_be,
                                  const PlaceCorrespondence& corr);

// Fragments are paired by (sources, targets) under the correspondence.
// Within one endpoint group, pairs with equal strategies are taken first,
// then the remaining fragments are paired in id order; leftovers become
// Added or Removed. Throws ModelKindError and CorrespondenceError.
AlignmentReport align(const ProcessModel& as_is, const ProcessModel& to_be,
                      const PlaceCorrespondence& corr);

// As above, then folds in problem_coverage over the registry so that
// category_summary is populated and registry problems nobody resolves are
// reported as uncovered.
AlignmentReport align(const ProcessModel& as_is, const ProcessModel& to_be,
                      const PlaceCorrespondence& corr, std::span<const Problem> registry);

struct CoverageSummary {
  CoverageMap per_problem;
  std::map<std::string, IdSet> by_category;
  IdSet uncovered;

  bool operator==(const CoverageSummary&) const = default;
};

// Throws UnknownProblemId when the report mentions a problem absent from the
// registry.
CoverageSummary problem_coverage(const AlignmentReport& report, std::span<const Problem> registry);

struct ComponentRow {
  std::string fragment;
  std::set<std::string> components;

  bool operator==(const ComponentRow&) const = default;
};

struct ComponentTable {
  std::vector<ComponentRow> rows;  // one per To-Be fragment, id order
  std::set<std::string> all;

  bool operator==(const ComponentTable&) const = default;
};

// Throws UnknownFragment when the map keys a fragment the model lacks.
ComponentTable component_table(const ProcessModel& to_be, const ComponentMap& cmap);

std::size_t count(const AlignmentReport& report, MatchKind kind);
std::string_view to_string(MatchKind kind);
std::optional<MatchKind> parse_match_kind(std::string_view text);

}  // namespace roc
