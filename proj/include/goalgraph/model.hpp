#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <variant>
#include <vector>

#include "goalgraph/errors.hpp"

namespace goalgraph {

// ---------------------------------------------------------------------------
// Declarations
// ---------------------------------------------------------------------------

enum class OperationCategory { Environment, SoftwareToBe };

struct OperationDecl {
  std::string id;
  std::string display_name;  // the step string emitted by lowering
  OperationCategory category = OperationCategory::Environment;
  Span span;

  friend bool operator==(const OperationDecl& a, const OperationDecl& b) {
    return a.id == b.id && a.display_name == b.display_name && a.category == b.category;
  }
};

// A named `list<Operation>` declaration. Kept so agents can be resolved and
// graphs printed back in the same shape they were written.
struct OperationListDecl {
  std::string id;
  std::vector<std::string> members;  // operation ids, source order
  Span span;

  friend bool operator==(const OperationListDecl& a, const OperationListDecl& b) {
    return a.id == b.id && a.members == b.members;
  }
};

struct AgentDecl {
  std::string id;
  std::string display_name;
  std::string performs_source;        // operation-list id as written
  std::vector<std::string> performs;  // resolved member operation ids
  Span span;

  friend bool operator==(const AgentDecl& a, const AgentDecl& b) {
    return a.id == b.id && a.display_name == b.display_name &&
           a.performs_source == b.performs_source;
  }
};

enum class GoalKind { Achieve, Cease, Maintain, Avoid, Soft };
enum class SoftGoalSubtype { Improve, Increase, Maximize, Reduce, Minimize };
enum class Combinator { And, Or };

// Inert schema members: declared by the modeling notation but given no
// behavior here (see GoalGraph notes below).
enum class VertexKind { Goal, Refinement, Obstacle, Agent, Operation };
enum class EdgeKind { Refinement, Responsibility, Performance };
enum class GoalCategory {
  Satisfaction,
  Information,
  StimulusResponse,
  Accuracy,
  QosSafety,
  QosSecurityConfidentiality,
  QosSecurityIntegrity,
  QosSecurityAvailability,
  QosPerformanceTime,
  QosPerformanceSpace,
};

struct PerformanceLink {
  std::string agent;
  std::string operation;

  friend bool operator==(const PerformanceLink&, const PerformanceLink&) = default;
};

// One disjunct of a goal: AND/OR combinator, completeness flag, ordered
// subgoal references. An OR refinement carries exactly one subgoal;
// alternatives are additional Refinement entries on the parent goal.
struct Refinement {
  Combinator combinator = Combinator::And;
  bool complete = true;
  std::vector<std::string> subgoals;

  friend bool operator==(const Refinement&, const Refinement&) = default;
};

struct LeafBody {
  std::vector<PerformanceLink> performs;

  friend bool operator==(const LeafBody&, const LeafBody&) = default;
};

struct RefinedBody {
  std::vector<Refinement> disjunctions;

  friend bool operator==(const RefinedBody&, const RefinedBody&) = default;
};

struct Goal {
  std::string id;
  std::string display_name;
  GoalKind kind = GoalKind::Achieve;
  std::optional<SoftGoalSubtype> soft_subtype;
  std::variant<LeafBody, RefinedBody> body;
  Span span;

  bool is_leaf() const { return std::holds_alternative<LeafBody>(body); }
  const std::vector<PerformanceLink>& performs() const {
    return std::get<LeafBody>(body).performs;
  }
  const std::vector<Refinement>& disjunctions() const {
    return std::get<RefinedBody>(body).disjunctions;
  }

  friend bool operator==(const Goal& a, const Goal& b) {
    return a.id == b.id && a.display_name == b.display_name && a.kind == b.kind &&
           a.soft_subtype == b.soft_subtype && a.body == b.body;
  }
};

enum class DeclKind { Operation, OperationList, Agent, Goal };

// ---------------------------------------------------------------------------
// GoalGraph
// ---------------------------------------------------------------------------

// Indexed declarations forming a refinement structure. References are stored
// as ids; resolution is checked by validate_graph, not on construction.
// Treat instances as immutable once built: every operation below is a pure
// function over a const graph and safe to call concurrently.
struct GoalGraph {
  std::unordered_map<std::string, OperationDecl> operations;
  std::unordered_map<std::string, OperationListDecl> operation_lists;
  std::unordered_map<std::string, AgentDecl> agents;
  std::unordered_map<std::string, Goal> goals;
  std::vector<std::pair<DeclKind, std::string>> declaration_order;

  const Goal* find_goal(std::string_view id) const;
  const OperationDecl* find_operation(std::string_view id) const;
  const AgentDecl* find_agent(std::string_view id) const;

  // Goal ids in source order; convenience for deterministic traversals.
  std::vector<std::string> goal_ids_in_order() const;
};

struct StepProgram {
  std::string task;
  std::vector<std::string> steps;

  friend bool operator==(const StepProgram&, const StepProgram&) = default;
};

// ---------------------------------------------------------------------------
// Validation
// ---------------------------------------------------------------------------

enum class ViolationKind {
  CycleDetected,
  EmptyRefinement,
  OrArityViolation,
  UnresolvedReference,
  OperationNotPerformable,
  EmptyLeaf,
};

std::string_view to_string(ViolationKind kind);

struct Violation {
  ViolationKind kind;
  std::string subject;           // offending goal/agent id (context)
  std::vector<std::string> ids;  // cycle members, unresolved id, (agent, op), ...
  std::string message;
};

struct ValidationReport {
  std::vector<Violation> violations;
  std::vector<Warning> warnings;
  // Topological order over goals, parents before subgoals; empty when a
  // cycle makes the sort impossible.
  std::vector<std::string> goal_order;

  bool ok() const { return violations.empty(); }
};

// Checks every structural invariant: reference resolution, acyclicity,
// refinement arity, leaf non-emptiness, agent/operation performability.
// Naming-convention findings are reported as warnings only.
ValidationReport validate_graph(const GoalGraph& g);

// ---------------------------------------------------------------------------
// Lowering
// ---------------------------------------------------------------------------

// Faithful replays the schema's generateSteps traversal: walk the root's
// disjunctions in order and emit each subgoal's first performance-link
// operation, failing on nested subgoals. Recursive descends depth-first
// left-to-right, taking the first disjunction of every refined goal, and
// emits one step per leaf; total on any valid graph.
enum class LoweringMode { Faithful, Recursive };

StepProgram lower_to_steps(const GoalGraph& g, std::string_view root_id,
                           LoweringMode mode = LoweringMode::Recursive);

inline constexpr std::size_t kDefaultVariantCap = 256;

// One program per combination of disjunction choices across the refined
// goals reachable from the root, in lexicographic order of choice indices.
// Requires the reachable structure to be a tree.
std::vector<StepProgram> enumerate_variants(const GoalGraph& g, std::string_view root_id,
                                            std::size_t cap = kDefaultVariantCap);

// Deterministic indented tree; renders unresolved references and cycles
// with inline markers instead of failing.
std::string render_tree(const GoalGraph& g, std::string_view root_id);

}  // namespace goalgraph
