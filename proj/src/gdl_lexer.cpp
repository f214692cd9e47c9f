#include <cctype>
#include <string>

#include "goalgraph/gdl.hpp"

namespace goalgraph {
namespace gdl {
namespace {

bool ident_start(char c) {
  return std::isalpha(static_cast<unsigned char>(c)) != 0 || c == '_';
}
bool ident_part(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) != 0 || c == '_';
}
bool punct_char(char c) {
  switch (c) {
    case '(': case ')': case '{': case '}':
    case '<': case '>': case ',': case ';': case '=':
      return true;
    default:
      return false;
  }
}

}  // namespace

std::string normalize_quotes(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  for (std::size_t i = 0; i < text.size();) {
    auto rest = text.substr(i);
    // U+201C..U+201F -> " ; U+2018..U+201B -> '
    if (rest.size() >= 3 && static_cast<unsigned char>(rest[0]) == 0xE2 &&
        static_cast<unsigned char>(rest[1]) == 0x80) {
      unsigned char third = static_cast<unsigned char>(rest[2]);
      if (third >= 0x9C && third <= 0x9F) {
        out.push_back('"');
        i += 3;
        continue;
      }
      if (third >= 0x98 && third <= 0x9B) {
        out.push_back('\'');
        i += 3;
        continue;
      }
    }
    out.push_back(text[i]);
    ++i;
  }
  return out;
}

std::vector<Token> tokenize(std::string_view text) {
  std::vector<Token> tokens;
  std::size_t i = 0;
  const std::size_t n = text.size();
  while (i < n) {
    char c = text[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    if (c == '/' && i + 1 < n && text[i + 1] == '/') {
      while (i < n && text[i] != '\n') ++i;
      continue;
    }
    if (c == '"') {
      std::size_t start = i;
      ++i;
      bool closed = false;
      while (i < n) {
        if (text[i] == '\\' && i + 1 < n) {
          i += 2;
          continue;
        }
        if (text[i] == '"') {
          ++i;
          closed = true;
          break;
        }
        ++i;
      }
      if (!closed)
        throw ParseError("UnterminatedString", "string literal never closes",
                         {start, n});
      tokens.push_back({TokenKind::String, std::string(text.substr(start, i - start)),
                        {start, i}});
      continue;
    }
    if (ident_start(c)) {
      std::size_t start = i;
      while (i < n && ident_part(text[i])) ++i;
      std::string word(text.substr(start, i - start));
      TokenKind kind =
          (word == "true" || word == "false") ? TokenKind::BoolLit : TokenKind::Ident;
      tokens.push_back({kind, std::move(word), {start, i}});
      continue;
    }
    if (punct_char(c)) {
      tokens.push_back({TokenKind::Punct, std::string(1, c), {i, i + 1}});
      ++i;
      continue;
    }
    throw ParseError("IllegalCharacter",
                     "unexpected character '" + std::string(1, c) + "'", {i, i + 1});
  }
  return tokens;
}

}  // namespace gdl
}  // namespace goalgraph
