#pragma once

#include <string_view>
#include <vector>

#include "goalgraph/errors.hpp"

namespace goalgraph {

// Lint for the goal-naming convention (PascalCase, leading past participle).
// Produces warnings only; convention violations must never reject a graph.
// Warning codes: "NotPascalCase", "NotPastParticiple".
std::vector<Warning> check_goal_name(std::string_view name);

bool is_identifier(std::string_view text);

}  // namespace goalgraph
