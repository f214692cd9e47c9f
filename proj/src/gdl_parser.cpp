#include <algorithm>
#include <cctype>
#include <string>
#include <utility>

#include "goalgraph/gdl.hpp"

namespace goalgraph {
namespace gdl {
namespace {

constexpr std::string_view kGoalKinds[] = {"AchieveGoal", "CeaseGoal", "MaintainGoal",
                                           "AvoidGoal", "SoftGoal"};

bool is_goal_kind_word(std::string_view word) {
  return std::find(std::begin(kGoalKinds), std::end(kGoalKinds), word) !=
         std::end(kGoalKinds);
}

GoalKind goal_kind_from_word(std::string_view word) {
  if (word == "AchieveGoal") return GoalKind::Achieve;
  if (word == "CeaseGoal") return GoalKind::Cease;
  if (word == "MaintainGoal") return GoalKind::Maintain;
  if (word == "AvoidGoal") return GoalKind::Avoid;
  return GoalKind::Soft;
}

const std::pair<std::string_view, SoftGoalSubtype> kSoftSubtypes[] = {
    {"IMPROVE", SoftGoalSubtype::Improve},
    {"INCREASE", SoftGoalSubtype::Increase},
    {"MAXIMIZE", SoftGoalSubtype::Maximize},
    {"REDUCE", SoftGoalSubtype::Reduce},
    {"MINIMIZE", SoftGoalSubtype::Minimize},
};

// Strips quotes and resolves \" and \\ escapes.
std::string unescape_string(std::string_view literal) {
  std::string out;
  if (literal.size() >= 2) literal = literal.substr(1, literal.size() - 2);
  for (std::size_t i = 0; i < literal.size(); ++i) {
    if (literal[i] == '\\' && i + 1 < literal.size() &&
        (literal[i + 1] == '"' || literal[i + 1] == '\\')) {
      out.push_back(literal[i + 1]);
      ++i;
    } else {
      out.push_back(literal[i]);
    }
  }
  return out;
}

class Parser {
 public:
  explicit Parser(std::vector<Token> tokens) : tokens_(std::move(tokens)) {}

  DeclSet parse_file() {
    DeclSet set;
    while (!at_end()) set.add(parse_decl());
    return set;
  }

 private:
  [[noreturn]] void fail(const std::string& expected) const {
    Span where = at_end() ? Span{end_offset(), end_offset()} : tokens_[pos_].span;
    std::string got = at_end() ? "end of input" : "'" + tokens_[pos_].text + "'";
    throw ParseError("SyntaxError", "expected " + expected + ", got " + got, where);
  }

  std::size_t end_offset() const {
    return tokens_.empty() ? 0 : tokens_.back().span.end;
  }

  bool at_end() const { return pos_ >= tokens_.size(); }

  const Token& peek() const { return tokens_[pos_]; }

  bool peek_punct(std::string_view p) const {
    return !at_end() && peek().kind == TokenKind::Punct && peek().text == p;
  }

  bool peek_ident(std::string_view word) const {
    return !at_end() && peek().kind == TokenKind::Ident && peek().text == word;
  }

  Token take() { return tokens_[pos_++]; }

  Token expect_punct(std::string_view p) {
    if (!peek_punct(p)) fail("'" + std::string(p) + "'");
    return take();
  }

  Token expect_ident() {
    if (at_end() || peek().kind != TokenKind::Ident) fail("identifier");
    return take();
  }

  Token expect_ident(std::string_view word) {
    if (!peek_ident(word)) fail("'" + std::string(word) + "'");
    return take();
  }

  Token expect_string() {
    if (at_end() || peek().kind != TokenKind::String) fail("string literal");
    return take();
  }

  Declaration parse_decl() {
    if (at_end() || peek().kind != TokenKind::Ident) fail("declaration");
    const Token& head = peek();
    if (head.text == "Operation") return parse_operation();
    if (head.text == "list") return parse_operation_list();
    if (head.text == "Agent") return parse_agent();
    if (is_goal_kind_word(head.text)) return parse_goal();
    fail("'Operation', 'list', 'Agent' or a goal keyword");
  }

  Declaration parse_operation() {
    Span begin = take().span;  // Operation
    OperationDecl op;
    op.id = expect_ident().text;
    expect_punct("(");
    op.display_name = unescape_string(expect_string().text);
    expect_punct(",");
    Token cat = expect_ident();
    if (cat.text == "ENVIRONMENT_OPERATION")
      op.category = OperationCategory::Environment;
    else if (cat.text == "SOFTWARE_TO_BE_OPERATION")
      op.category = OperationCategory::SoftwareToBe;
    else {
      --pos_;
      fail("'ENVIRONMENT_OPERATION' or 'SOFTWARE_TO_BE_OPERATION'");
    }
    expect_punct(")");
    Span end = expect_punct(";").span;
    op.span = {begin.begin, end.end};
    return op;
  }

  Declaration parse_operation_list() {
    Span begin = take().span;  // list
    expect_punct("<");
    expect_ident("Operation");
    expect_punct(">");
    OperationListDecl list;
    list.id = expect_ident().text;
    expect_punct("=");
    expect_punct("{");
    while (!peek_punct("}")) {
      list.members.push_back(expect_ident().text);
      if (peek_punct(",")) {
        take();
        continue;
      }
      break;
    }
    expect_punct("}");
    Span end = expect_punct(";").span;
    list.span = {begin.begin, end.end};
    return list;
  }

  Declaration parse_agent() {
    Span begin = take().span;  // Agent
    AgentDecl agent;
    agent.id = expect_ident().text;
    expect_punct("(");
    agent.display_name = unescape_string(expect_string().text);
    expect_punct(",");
    agent.performs_source = expect_ident().text;
    expect_punct(")");
    Span end = expect_punct(";").span;
    agent.span = {begin.begin, end.end};
    return agent;
  }

  Declaration parse_goal() {
    Token head = take();
    Goal goal;
    goal.kind = goal_kind_from_word(head.text);
    goal.id = expect_ident().text;
    expect_punct("(");
    if (!at_end() && peek().kind == TokenKind::Ident) {
      for (const auto& [word, subtype] : kSoftSubtypes) {
        if (peek().text == word) {
          goal.soft_subtype = subtype;
          take();
          expect_punct(",");
          break;
        }
      }
      if (!goal.soft_subtype) fail("string literal or soft-goal subtype");
    }
    goal.display_name = unescape_string(expect_string().text);
    expect_punct(",");
    goal.body = parse_body();
    expect_punct(")");
    Span end = expect_punct(";").span;
    goal.span = {head.span.begin, end.end};
    return goal;
  }

  std::variant<LeafBody, RefinedBody> parse_body() {
    expect_punct("{");
    if (peek_punct("}")) {
      take();
      return LeafBody{};
    }
    if (peek_ident("PerformanceLink")) {
      LeafBody leaf;
      while (true) {
        leaf.performs.push_back(parse_performance_link());
        if (peek_punct(",")) {
          take();
          if (peek_punct("}")) break;  // trailing comma
          continue;
        }
        break;
      }
      expect_punct("}");
      return leaf;
    }
    if (peek_ident("Refinement")) {
      RefinedBody refined;
      while (true) {
        refined.disjunctions.push_back(parse_refinement());
        if (peek_punct(",")) {
          take();
          if (peek_punct("}")) break;
          continue;
        }
        break;
      }
      expect_punct("}");
      return refined;
    }
    fail("'PerformanceLink' or 'Refinement'");
  }

  PerformanceLink parse_performance_link() {
    expect_ident("PerformanceLink");
    expect_punct("(");
    PerformanceLink link;
    link.agent = expect_ident().text;
    expect_punct(",");
    link.operation = expect_ident().text;
    expect_punct(")");
    return link;
  }

  Refinement parse_refinement() {
    expect_ident("Refinement");
    expect_punct("(");
    Refinement refinement;
    Token comb = expect_ident();
    if (comb.text == "AND_REFINEMENT")
      refinement.combinator = Combinator::And;
    else if (comb.text == "OR_REFINEMENT")
      refinement.combinator = Combinator::Or;
    else {
      --pos_;
      fail("'AND_REFINEMENT' or 'OR_REFINEMENT'");
    }
    expect_punct(",");
    if (!at_end() && peek().kind == TokenKind::BoolLit) {
      refinement.complete = take().text == "true";
    } else {
      Token completeness = expect_ident();
      if (completeness.text == "COMPLETE_REFINEMENT")
        refinement.complete = true;
      else if (completeness.text == "INCOMPLETE_REFINEMENT")
        refinement.complete = false;
      else {
        --pos_;
        fail("completeness flag");
      }
    }
    expect_punct(",");
    expect_punct("{");
    while (!peek_punct("}")) {
      refinement.subgoals.push_back(expect_ident().text);
      if (peek_punct(",")) {
        take();
        continue;
      }
      break;
    }
    expect_punct("}");
    expect_punct(")");
    return refinement;
  }

  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
};

Span span_of(const Declaration& d) {
  return std::visit([](const auto& decl) { return decl.span; }, d);
}

}  // namespace

DeclKind kind_of(const Declaration& d) {
  if (std::holds_alternative<OperationDecl>(d)) return DeclKind::Operation;
  if (std::holds_alternative<OperationListDecl>(d)) return DeclKind::OperationList;
  if (std::holds_alternative<AgentDecl>(d)) return DeclKind::Agent;
  return DeclKind::Goal;
}

const std::string& id_of(const Declaration& d) {
  return std::visit([](const auto& decl) -> const std::string& { return decl.id; }, d);
}

void DeclSet::add(Declaration d) {
  if (contains(kind_of(d), id_of(d)))
    throw ParseError("DuplicateId", "duplicate declaration of '" + id_of(d) + "'",
                     span_of(d));
  decls.push_back(std::move(d));
}

void DeclSet::merge(const DeclSet& other) {
  for (const auto& d : other.decls) add(d);
}

bool DeclSet::contains(DeclKind kind, std::string_view id) const {
  for (const auto& d : decls)
    if (kind_of(d) == kind && id_of(d) == id) return true;
  return false;
}

GoalGraph DeclSet::to_graph() const {
  GoalGraph g;
  for (const auto& d : decls) {
    std::visit(
        [&](const auto& decl) {
          using T = std::decay_t<decltype(decl)>;
          if constexpr (std::is_same_v<T, OperationDecl>)
            g.operations.emplace(decl.id, decl);
          else if constexpr (std::is_same_v<T, OperationListDecl>)
            g.operation_lists.emplace(decl.id, decl);
          else if constexpr (std::is_same_v<T, AgentDecl>)
            g.agents.emplace(decl.id, decl);
          else
            g.goals.emplace(decl.id, decl);
        },
        d);
    g.declaration_order.emplace_back(kind_of(d), id_of(d));
  }
  for (auto& [id, agent] : g.agents) {
    auto it = g.operation_lists.find(agent.performs_source);
    if (it != g.operation_lists.end()) agent.performs = it->second.members;
  }
  return g;
}

DeclSet parse_declarations(std::string_view text) {
  return Parser(tokenize(normalize_quotes(text))).parse_file();
}

std::string continuation_goal_id(std::string_view prefix) {
  auto tokens = tokenize(normalize_quotes(prefix));
  bool well_formed = tokens.size() == 3 && tokens[0].kind == TokenKind::Ident &&
                     is_goal_kind_word(tokens[0].text) &&
                     tokens[1].kind == TokenKind::Ident &&
                     tokens[2].kind == TokenKind::Punct && tokens[2].text == "(";
  if (!well_formed)
    throw ParseError("MalformedPrefix",
                     "continuation prefix must look like `AchieveGoal SomeId(`",
                     {0, prefix.size()});
  return tokens[1].text;
}

GoalGraph parse_completion(const ContinuationContext& ctx, std::string_view completion,
                           std::vector<Warning>* warnings) {
  continuation_goal_id(ctx.prefix);  // rejects malformed prefixes up front
  const std::string body = sanitize_response(completion);
  DeclSet parsed = parse_declarations(ctx.prefix + "\n" + body);
  if (parsed.decls.size() != 1 || kind_of(parsed.decls.front()) != DeclKind::Goal)
    throw ParseError("SyntaxError", "completion did not form a single goal declaration",
                     {0, completion.size()});
  Goal goal = std::get<Goal>(parsed.decls.front());

  // Display string and declared id normally agree up to leading-letter case
  // (ids are often lowerCamel with an UpperCamel display); anything else is
  // suspicious but tolerated.
  auto names_agree = [](std::string_view a, std::string_view b) {
    if (a.size() != b.size()) return false;
    if (a.empty()) return true;
    if (std::tolower(static_cast<unsigned char>(a[0])) !=
        std::tolower(static_cast<unsigned char>(b[0])))
      return false;
    return a.substr(1) == b.substr(1);
  };
  if (warnings && !names_agree(goal.display_name, goal.id))
    warnings->push_back({"NameMismatch", goal.id,
                         "display name \"" + goal.display_name +
                             "\" does not match declared id '" + goal.id + "'"});

  DeclSet merged = ctx.base;
  merged.add(goal);
  GoalGraph graph = merged.to_graph();

  std::vector<std::string> unknown;
  auto note_unknown = [&](const std::string& id) {
    if (std::find(unknown.begin(), unknown.end(), id) == unknown.end())
      unknown.push_back(id);
  };
  if (goal.is_leaf()) {
    for (const auto& link : goal.performs()) {
      if (!graph.find_agent(link.agent)) note_unknown(link.agent);
      if (!graph.find_operation(link.operation)) note_unknown(link.operation);
    }
  } else {
    for (const auto& refinement : goal.disjunctions())
      for (const auto& subgoal : refinement.subgoals)
        if (!graph.find_goal(subgoal)) note_unknown(subgoal);
  }
  if (!unknown.empty()) throw UnresolvedReferenceError(std::move(unknown));
  return graph;
}

}  // namespace gdl
}  // namespace goalgraph
