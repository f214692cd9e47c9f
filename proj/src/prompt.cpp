#include "goalgraph/prompt.hpp"

#include <array>
#include <cctype>

#include "goalgraph/io.hpp"
#include "goalgraph/naming.hpp"

namespace goalgraph {
namespace {

std::string load_asset(const std::filesystem::path& dir, std::string_view name) {
  auto text = read_text_file(dir / name);
  if (!text)
    throw Error("ConfigError", "missing prompt asset: " + (dir / name).string());
  return *text;
}

std::string_view rtrim(std::string_view text) {
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back())))
    text.remove_suffix(1);
  return text;
}

std::string_view ltrim(std::string_view text) {
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front())))
    text.remove_prefix(1);
  return text;
}

}  // namespace

PromptAssets PromptAssets::load(const std::filesystem::path& dir) {
  PromptAssets assets;
  assets.schema_text = load_asset(dir, "schema.gdl.txt");
  assets.operations_text = load_asset(dir, "operations.gdl");
  assets.agent_text = load_asset(dir, "agent.gdl");
  assets.leaf_goals_text = load_asset(dir, "leaf_goals.gdl");
  assets.demonstration_text = load_asset(dir, "demonstration.gdl");
  return assets;
}

PromptBundle build_prompt(const PromptAssets& assets, std::string_view goal_id) {
  if (!is_identifier(goal_id))
    throw Error("MalformedGoalId", "goal id '" + std::string(goal_id) +
                                       "' is not a well-formed identifier");
  const std::array<std::string_view, 5> sections{
      assets.schema_text, assets.operations_text, assets.agent_text,
      assets.leaf_goals_text, assets.demonstration_text};

  PromptBundle bundle;
  bundle.system = std::string(kSystemPrompt);
  bundle.goal_id = std::string(goal_id);
  for (auto section : sections) {
    std::string_view body = ltrim(rtrim(section));
    if (body.empty()) continue;  // the demonstration is removable
    if (!bundle.user.empty()) bundle.user += "\n\n";
    bundle.user += body;
  }
  if (!bundle.user.empty()) bundle.user += "\n\n";
  bundle.user += "AchieveGoal " + bundle.goal_id + "(";
  return bundle;
}

}  // namespace goalgraph
