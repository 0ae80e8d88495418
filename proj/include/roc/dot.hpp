#pragma once

#include <string>

#include "roc/goals.hpp"
#include "roc/net.hpp"

namespace roc {

// Places become circles labelled "I0: label", fragments boxes labelled with
// id and strategy; deficient strategies are dashed.
std::string export_dot(const ProcessModel& model);

// Node shape follows the node kind; stakeholders are houses and realisation
// targets plain text.
std::string export_dot(const GoalGraph& graph);

}  // namespace roc
