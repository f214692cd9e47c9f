#include "goalgraph/naming.hpp"

#include <array>
#include <cctype>
#include <string>

namespace goalgraph {
namespace {

bool ascii_alpha(char c) { return std::isalpha(static_cast<unsigned char>(c)) != 0; }
bool ascii_alnum(char c) { return std::isalnum(static_cast<unsigned char>(c)) != 0; }
bool ascii_upper(char c) { return std::isupper(static_cast<unsigned char>(c)) != 0; }
bool ascii_lower(char c) { return std::islower(static_cast<unsigned char>(c)) != 0; }

// Common irregular participles seen in household goal names; everything
// else must end in "ed" to count.
constexpr std::array<std::string_view, 28> kIrregularParticiples{
    "sat",    "slept", "took",  "went",   "drank",  "found", "got",
    "put",    "set",   "kept",  "left",   "lit",    "shut",  "hung",
    "worn",   "won",   "sent",  "felt",   "held",   "built", "bought",
    "brought", "caught", "taught", "thought", "made", "done", "lain",
};

bool is_past_participle(std::string_view word) {
  if (word.size() >= 3 && word.substr(word.size() - 2) == "ed") return true;
  for (auto irregular : kIrregularParticiples)
    if (word == irregular) return true;
  return false;
}

}  // namespace

bool is_identifier(std::string_view text) {
  if (text.empty()) return false;
  if (!ascii_alpha(text[0]) && text[0] != '_') return false;
  for (char c : text)
    if (!ascii_alnum(c) && c != '_') return false;
  return true;
}

std::vector<Warning> check_goal_name(std::string_view name) {
  std::vector<Warning> out;
  const std::string subject(name);

  bool pascal = !name.empty() && ascii_upper(name[0]);
  if (pascal)
    for (char c : name)
      if (!ascii_alnum(c)) pascal = false;
  if (!pascal)
    out.push_back({"NotPascalCase", subject,
                   "goal names are PascalCase, e.g. TurnedOnLightInBedRoom"});

  // First word: leading letter plus the following lowercase run.
  std::string word;
  if (!name.empty() && ascii_alpha(name[0])) {
    word.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(name[0]))));
    for (std::size_t i = 1; i < name.size() && ascii_lower(name[i]); ++i)
      word.push_back(name[i]);
  }
  if (word.empty() || !is_past_participle(word))
    out.push_back({"NotPastParticiple", subject,
                   "goal names start with a past participle, e.g. Opened, Sat, Slept"});
  return out;
}

}  // namespace goalgraph
