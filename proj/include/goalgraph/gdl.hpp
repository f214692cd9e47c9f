#pragma once

#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "goalgraph/errors.hpp"
#include "goalgraph/model.hpp"

namespace goalgraph {
namespace gdl {

// ---------------------------------------------------------------------------
// Lexer
// ---------------------------------------------------------------------------

enum class TokenKind { Ident, String, Keyword, Punct, BoolLit };

struct Token {
  TokenKind kind;
  std::string text;  // verbatim slice, quotes included for strings
  Span span;         // byte offsets into the normalized input

  friend bool operator==(const Token&, const Token&) = default;
};

// Maps typographic (curly) quotes to straight ones. Run before tokenize;
// token spans refer to this normalized form.
std::string normalize_quotes(std::string_view text);

// Splits normalized text into tokens, skipping whitespace and // comments.
// Throws ParseError with code "UnterminatedString" or "IllegalCharacter".
std::vector<Token> tokenize(std::string_view text);

// ---------------------------------------------------------------------------
// Declaration sets
// ---------------------------------------------------------------------------

using Declaration = std::variant<OperationDecl, OperationListDecl, AgentDecl, Goal>;

DeclKind kind_of(const Declaration& d);
const std::string& id_of(const Declaration& d);

// Ordered declarations from one or more sources. Ids are unique per
// namespace (operations / operation lists / agents / goals); cross-namespace
// collisions are allowed.
struct DeclSet {
  std::vector<Declaration> decls;

  // Throws ParseError("DuplicateId") when the id already exists in the
  // declaration's namespace.
  void add(Declaration d);
  void merge(const DeclSet& other);

  bool contains(DeclKind kind, std::string_view id) const;

  // Builds the id-indexed graph. Agent operation lists are resolved here;
  // all other references stay symbolic for validate_graph to check.
  GoalGraph to_graph() const;

  friend bool operator==(const DeclSet& a, const DeclSet& b) { return a.decls == b.decls; }
};

// Parses a whole declaration file. Accepts COMPLETE_REFINEMENT /
// INCOMPLETE_REFINEMENT as well as true / false for the completeness slot,
// and tolerates trailing commas in brace lists. Unknown identifiers are kept
// symbolic: resolution is validate_graph's job.
DeclSet parse_declarations(std::string_view text);

// Canonical GDL text. parse_declarations(print_declarations(d)) is
// structurally equal to d.
std::string print_declarations(const DeclSet& d);
std::string print_declarations(const GoalGraph& g);

// ---------------------------------------------------------------------------
// LLM completion handling
// ---------------------------------------------------------------------------

// Reduces a raw chat response to the bare completion body: unwraps markdown
// fences, drops prose around the first balanced declaration-like region, and
// removes a re-emitted `AchieveGoal <Id>(` head so the text continues the
// partial statement. Throws ParseError("NoCodeFound") when nothing
// code-like remains.
std::string sanitize_response(std::string_view response);

struct ContinuationContext {
  std::string prefix;  // e.g. `AchieveGoal TurnedOnFloorLampInHomeOffice(`
  DeclSet base;        // declarations visible to the completion
};

// Parses prefix + sanitized completion as one goal declaration and merges it
// into the base. Fails closed: every subgoal/operation/agent id the new goal
// references must already be declared, otherwise UnresolvedReferenceError
// lists all unknown ids. A display string differing from the declared id is
// reported as a "NameMismatch" warning.
GoalGraph parse_completion(const ContinuationContext& ctx, std::string_view completion,
                           std::vector<Warning>* warnings = nullptr);

// Extracts the goal id from a partial statement head; throws ParseError
// when the prefix is not `KIND Ident (`.
std::string continuation_goal_id(std::string_view prefix);

}  // namespace gdl
}  // namespace goalgraph
