#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "roc/alignment.hpp"
#include "roc/common.hpp"
#include "roc/goals.hpp"
#include "roc/net.hpp"

// Text formats, one per artifact kind:
//   .proc      process models           .goals     goal graphs
//   .problems  problem registries       .cmap      component maps
//   .corr      place correspondences    .refine    refinement trees
// `#` starts a comment running to the end of the line. Strings are double
// quoted with \" \\ \n \t \r and \xHH escapes.

namespace roc {

struct SourceSpan {
  std::string file;
  int line = 1;
  int column = 1;

  bool operator==(const SourceSpan&) const = default;
};

struct ParseError : Error {
  ParseError(SourceSpan span, std::string expected, std::string found);

  SourceSpan span;
  std::string expected;
  std::string found;
};

inline constexpr std::string_view kDefaultSource = "<input>";

// Checked parsers run the matching validator and throw ValidationError on
// the first finding. The *_unchecked variants only enforce syntax.
ProcessModel parse_process(std::string_view text, std::string_view file = kDefaultSource);
ProcessModel parse_process_unchecked(std::string_view text, std::string_view file = kDefaultSource);
GoalGraph parse_goals(std::string_view text, std::string_view file = kDefaultSource);
GoalGraph parse_goals_unchecked(std::string_view text, std::string_view file = kDefaultSource);

std::vector<Problem> parse_registry(std::string_view text, std::string_view file = kDefaultSource);
ComponentMap parse_components(std::string_view text, std::string_view file = kDefaultSource);
PlaceCorrespondence parse_correspondence(std::string_view text, std::string_view file = kDefaultSource);
RefinementTree parse_refinement(std::string_view text, std::string_view file = kDefaultSource);

std::string serialize(const ProcessModel& model);
std::string serialize(const GoalGraph& graph);
std::string serialize(std::span<const Problem> registry);
std::string serialize(const ComponentMap& cmap);
std::string serialize(const PlaceCorrespondence& corr);
std::string serialize(const RefinementTree& tree);

std::string quote(std::string_view text);

}  // namespace roc
