#include <algorithm>
#include <cctype>
#include <string>

#include "goalgraph/gdl.hpp"

namespace goalgraph {
namespace gdl {
namespace {

constexpr std::string_view kAnchorKeywords[] = {
    "AchieveGoal", "CeaseGoal", "MaintainGoal", "AvoidGoal",
    "SoftGoal",    "Operation", "Agent",        "list",
};

constexpr std::string_view kGoalHeads[] = {"AchieveGoal", "CeaseGoal", "MaintainGoal",
                                           "AvoidGoal", "SoftGoal"};

bool word_char(char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') ||
         c == '_';
}

// First whole-word occurrence, or npos.
std::size_t find_word(std::string_view text, std::string_view word) {
  for (std::size_t pos = text.find(word); pos != std::string_view::npos;
       pos = text.find(word, pos + 1)) {
    bool left_ok = pos == 0 || !word_char(text[pos - 1]);
    std::size_t after = pos + word.size();
    bool right_ok = after >= text.size() || !word_char(text[after]);
    if (left_ok && right_ok) return pos;
  }
  return std::string_view::npos;
}

// Unwraps the first ``` fenced block, dropping the info string line.
std::string_view unwrap_fence(std::string_view text) {
  std::size_t open = text.find("```");
  if (open == std::string_view::npos) return text;
  std::size_t body = text.find('\n', open + 3);
  if (body == std::string_view::npos) return text;
  ++body;
  std::size_t close = text.find("```", body);
  if (close == std::string_view::npos) return text.substr(body);
  return text.substr(body, close - body);
}

std::string_view trim(std::string_view text) {
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front())))
    text.remove_prefix(1);
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back())))
    text.remove_suffix(1);
  return text;
}

}  // namespace

std::string sanitize_response(std::string_view response) {
  const std::string normalized = normalize_quotes(response);
  std::string_view text = unwrap_fence(normalized);

  // Anchor at the earliest of: a declaration keyword, an opening brace, or a
  // quote that is followed by more structure (a continuation body starts
  // with the goal's display string).
  std::size_t anchor = std::string_view::npos;
  for (auto keyword : kAnchorKeywords)
    anchor = std::min(anchor, find_word(text, keyword));
  anchor = std::min(anchor, text.find('{'));
  std::size_t first_quote = text.find('"');
  if (first_quote != std::string_view::npos &&
      text.find_first_of("{(", first_quote) != std::string_view::npos)
    anchor = std::min(anchor, first_quote);
  if (anchor == std::string_view::npos)
    throw ParseError("NoCodeFound", "response contains no declaration-like region",
                     {0, response.size()});

  // Clip at the first statement end. Depth may go negative: a continuation
  // body legitimately closes the parenthesis opened by the prompt's partial
  // statement.
  int depth = 0;
  bool in_string = false;
  std::size_t end = text.size();
  for (std::size_t i = anchor; i < text.size(); ++i) {
    char c = text[i];
    if (in_string) {
      if (c == '\\' && i + 1 < text.size())
        ++i;
      else if (c == '"')
        in_string = false;
      continue;
    }
    if (c == '/' && i + 1 < text.size() && text[i + 1] == '/') {
      while (i < text.size() && text[i] != '\n') ++i;
      continue;
    }
    if (c == '"') {
      in_string = true;
    } else if (c == '(' || c == '{') {
      ++depth;
    } else if (c == ')' || c == '}') {
      --depth;
    } else if (c == ';' && depth <= 0) {
      end = i + 1;
      break;
    }
  }
  std::string_view snippet = trim(text.substr(anchor, end - anchor));
  if (snippet.empty())
    throw ParseError("NoCodeFound", "response contains no declaration-like region",
                     {0, response.size()});

  // Models sometimes restate the whole statement instead of continuing it;
  // drop the re-emitted `KIND SomeId (` head so the text again reads as a
  // continuation of the partial statement.
  try {
    auto tokens = tokenize(snippet);
    if (tokens.size() >= 3 && tokens[0].kind == TokenKind::Ident &&
        std::find(std::begin(kGoalHeads), std::end(kGoalHeads), tokens[0].text) !=
            std::end(kGoalHeads) &&
        tokens[1].kind == TokenKind::Ident && tokens[2].kind == TokenKind::Punct &&
        tokens[2].text == "(") {
      snippet = trim(snippet.substr(tokens[2].span.end));
    }
  } catch (const ParseError&) {
    // Tokenization trouble here is parse_completion's problem to report.
  }
  return std::string(snippet);
}

}  // namespace gdl
}  // namespace goalgraph
