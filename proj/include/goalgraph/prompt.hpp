#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "goalgraph/errors.hpp"

namespace goalgraph {

inline constexpr std::string_view kSystemPrompt = "Output the next C++ line";

// The five text assets composing the code-completion prompt. The schema is
// an opaque blob; the other four are parseable GDL.
struct PromptAssets {
  std::string schema_text;
  std::string operations_text;
  std::string agent_text;
  std::string leaf_goals_text;
  std::string demonstration_text;

  // Reads schema.gdl.txt, operations.gdl, agent.gdl, leaf_goals.gdl and
  // demonstration.gdl from `dir`. Throws Error("ConfigError") on a missing
  // file.
  static PromptAssets load(const std::filesystem::path& dir);
};

struct PromptBundle {
  std::string system;
  std::string user;
  std::string goal_id;
};

// Assembles schema, operations, agent, leaf goals, demonstration and the
// partial statement `AchieveGoal <goal_id>(` into a two-message bundle.
// Sections are joined by a single blank line; an empty demonstration (the
// ablation toggle) is skipped. Throws Error("MalformedGoalId") when goal_id
// is not an identifier.
PromptBundle build_prompt(const PromptAssets& assets, std::string_view goal_id);

}  // namespace goalgraph
