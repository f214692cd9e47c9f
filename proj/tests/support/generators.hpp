// Random-input builders shared by the unit and acceptance suites.
#pragma once

#include <random>
#include <string>
#include <vector>

#include "goalgraph/gdl.hpp"
#include "goalgraph/model.hpp"

namespace testsupport {

using namespace goalgraph;

struct Rng {
  std::mt19937 engine;

  explicit Rng(unsigned seed) : engine(seed) {}

  int range(int lo, int hi) {  // inclusive bounds
    return std::uniform_int_distribution<int>(lo, hi)(engine);
  }

  bool chance(double p) { return std::bernoulli_distribution(p)(engine); }

  template <typename T>
  const T& pick(const std::vector<T>& pool) {
    return pool[static_cast<std::size_t>(range(0, static_cast<int>(pool.size()) - 1))];
  }

  std::string ident(const std::string& prefix, int n) {
    return prefix + std::to_string(n);
  }

  std::string display(int n) { return "Do thing " + std::to_string(n); }
};

// ---------------------------------------------------------------------------
// Direct graph construction
// ---------------------------------------------------------------------------

struct GraphBuilder {
  GoalGraph graph;

  void op(const std::string& id, const std::string& display) {
    graph.operations[id] = {id, display, OperationCategory::Environment, {}};
    graph.declaration_order.emplace_back(DeclKind::Operation, id);
  }

  void oplist(const std::string& id, std::vector<std::string> members) {
    graph.operation_lists[id] = {id, std::move(members), {}};
    graph.declaration_order.emplace_back(DeclKind::OperationList, id);
  }

  void agent(const std::string& id, const std::string& display,
             const std::string& list_id) {
    AgentDecl decl{id, display, list_id, {}, {}};
    auto it = graph.operation_lists.find(list_id);
    if (it != graph.operation_lists.end()) decl.performs = it->second.members;
    graph.agents[id] = std::move(decl);
    graph.declaration_order.emplace_back(DeclKind::Agent, id);
  }

  void leaf(const std::string& id, const std::string& display,
            std::vector<PerformanceLink> links) {
    Goal goal;
    goal.id = id;
    goal.display_name = display;
    goal.body = LeafBody{std::move(links)};
    graph.goals[id] = std::move(goal);
    graph.declaration_order.emplace_back(DeclKind::Goal, id);
  }

  void refined(const std::string& id, const std::string& display,
               std::vector<Refinement> disjunctions) {
    Goal goal;
    goal.id = id;
    goal.display_name = display;
    goal.body = RefinedBody{std::move(disjunctions)};
    graph.goals[id] = std::move(goal);
    graph.declaration_order.emplace_back(DeclKind::Goal, id);
  }
};

// ---------------------------------------------------------------------------
// Grammar-shaped declaration sets (structure only; references may dangle)
// ---------------------------------------------------------------------------

inline gdl::DeclSet random_decl_set(Rng& rng) {
  gdl::DeclSet set;
  int counter = 0;
  const int decls = rng.range(1, 8);
  for (int i = 0; i < decls; ++i) {
    switch (rng.range(0, 3)) {
      case 0: {
        OperationDecl op;
        op.id = rng.ident("op", counter++);
        op.display_name = rng.display(counter);
        op.category = rng.chance(0.8) ? OperationCategory::Environment
                                      : OperationCategory::SoftwareToBe;
        set.add(op);
        break;
      }
      case 1: {
        OperationListDecl list;
        list.id = rng.ident("ops", counter++);
        const int members = rng.range(1, 5);
        for (int m = 0; m < members; ++m)
          list.members.push_back(rng.ident("op", rng.range(0, 20)));
        set.add(list);
        break;
      }
      case 2: {
        AgentDecl agent;
        agent.id = rng.ident("agent", counter++);
        agent.display_name = "Agent " + std::to_string(counter);
        agent.performs_source = rng.ident("ops", rng.range(0, 20));
        set.add(agent);
        break;
      }
      default: {
        Goal goal;
        goal.id = rng.ident("goal", counter++);
        goal.display_name = "Achieved thing " + std::to_string(counter);
        switch (rng.range(0, 4)) {
          case 0: goal.kind = GoalKind::Achieve; break;
          case 1: goal.kind = GoalKind::Cease; break;
          case 2: goal.kind = GoalKind::Maintain; break;
          case 3: goal.kind = GoalKind::Avoid; break;
          default:
            goal.kind = GoalKind::Soft;
            goal.soft_subtype = static_cast<SoftGoalSubtype>(rng.range(0, 4));
            break;
        }
        if (rng.chance(0.5)) {
          LeafBody leaf;
          const int links = rng.range(1, 3);
          for (int l = 0; l < links; ++l)
            leaf.performs.push_back({rng.ident("agent", rng.range(0, 9)),
                                     rng.ident("op", rng.range(0, 20))});
          goal.body = std::move(leaf);
        } else {
          RefinedBody refined;
          const int disjunctions = rng.range(1, 3);
          for (int d = 0; d < disjunctions; ++d) {
            Refinement refinement;
            refinement.combinator = rng.chance(0.3) ? Combinator::Or : Combinator::And;
            refinement.complete = rng.chance(0.7);
            const int subgoals =
                refinement.combinator == Combinator::Or ? 1 : rng.range(1, 4);
            for (int s = 0; s < subgoals; ++s)
              refinement.subgoals.push_back(rng.ident("goal", rng.range(0, 30)));
            refined.disjunctions.push_back(std::move(refinement));
          }
          goal.body = std::move(refined);
        }
        set.add(goal);
        break;
      }
    }
  }
  return set;
}

// ---------------------------------------------------------------------------
// Valid graphs
// ---------------------------------------------------------------------------

struct ValidGraph {
  GoalGraph graph;
  std::string root;
};

// Layered DAG: every goal only refines into strictly earlier goals, links
// only use performable operations, so validate_graph accepts the result.
inline ValidGraph random_valid_graph(Rng& rng) {
  GraphBuilder b;
  const int op_count = rng.range(2, 6);
  std::vector<std::string> ops;
  for (int i = 0; i < op_count; ++i) {
    std::string id = rng.ident("op", i);
    b.op(id, "Do thing " + std::to_string(i));
    ops.push_back(id);
  }
  b.oplist("allOps", ops);
  b.agent("actor", "Actor", "allOps");

  std::vector<std::string> goals;
  const int leaf_count = rng.range(1, 4);
  for (int i = 0; i < leaf_count; ++i) {
    std::string id = rng.ident("leaf", i);
    std::vector<PerformanceLink> links;
    const int link_count = rng.range(1, 2);
    for (int l = 0; l < link_count; ++l) links.push_back({"actor", rng.pick(ops)});
    b.leaf(id, "Reached leaf " + std::to_string(i), std::move(links));
    goals.push_back(id);
  }
  const int refined_count = rng.range(1, 4);
  for (int i = 0; i < refined_count; ++i) {
    std::string id = rng.ident("node", i);
    std::vector<Refinement> disjunctions;
    const int disjunction_count = rng.chance(0.25) ? 2 : 1;
    for (int d = 0; d < disjunction_count; ++d) {
      Refinement refinement;
      refinement.combinator = rng.chance(0.2) ? Combinator::Or : Combinator::And;
      refinement.complete = rng.chance(0.7);
      const int subgoal_count =
          refinement.combinator == Combinator::Or ? 1 : rng.range(1, 3);
      for (int s = 0; s < subgoal_count; ++s)
        refinement.subgoals.push_back(rng.pick(goals));
      disjunctions.push_back(std::move(refinement));
    }
    b.refined(id, "Reached node " + std::to_string(i), std::move(disjunctions));
    goals.push_back(id);
  }
  return {std::move(b.graph), goals.back()};
}

// One refined root over leaf subgoals only: the shape the bit-compatible
// lowering mode is total on.
inline ValidGraph random_one_level_graph(Rng& rng) {
  GraphBuilder b;
  const int op_count = rng.range(2, 6);
  std::vector<std::string> ops;
  for (int i = 0; i < op_count; ++i) {
    std::string id = rng.ident("op", i);
    b.op(id, "Do thing " + std::to_string(i));
    ops.push_back(id);
  }
  b.oplist("allOps", ops);
  b.agent("actor", "Actor", "allOps");

  std::vector<std::string> leaves;
  const int leaf_count = rng.range(1, 5);
  for (int i = 0; i < leaf_count; ++i) {
    std::string id = rng.ident("leaf", i);
    b.leaf(id, "Reached leaf " + std::to_string(i), {{"actor", rng.pick(ops)}});
    leaves.push_back(id);
  }
  std::vector<Refinement> disjunctions;
  const int disjunction_count = rng.range(1, 2);
  for (int d = 0; d < disjunction_count; ++d) {
    Refinement refinement;
    refinement.complete = rng.chance(0.7);
    const int subgoal_count = rng.range(1, static_cast<int>(leaves.size()));
    for (int s = 0; s < subgoal_count; ++s)
      refinement.subgoals.push_back(rng.pick(leaves));
    disjunctions.push_back(std::move(refinement));
  }
  b.refined("root", "Reached root", std::move(disjunctions));
  return {std::move(b.graph), "root"};
}

// Tree-shaped graph (every goal has at most one parent) whose number of
// multi-disjunction goals stays under `max_choice_points`.
inline ValidGraph random_tree_graph(Rng& rng, int max_choice_points) {
  GraphBuilder b;
  const int op_count = rng.range(2, 5);
  std::vector<std::string> ops;
  for (int i = 0; i < op_count; ++i) {
    std::string id = rng.ident("op", i);
    b.op(id, "Do thing " + std::to_string(i));
    ops.push_back(id);
  }
  b.oplist("allOps", ops);
  b.agent("actor", "Actor", "allOps");

  int counter = 0;
  int choices_left = max_choice_points;

  // Children are created before parents so declaration order stays valid.
  auto subtree = [&](auto&& self, int depth) -> std::string {
    if (depth >= 3 || rng.chance(0.45)) {
      std::string id = rng.ident("leaf", counter++);
      b.leaf(id, "Reached leaf " + std::to_string(counter), {{"actor", rng.pick(ops)}});
      return id;
    }
    std::string id = rng.ident("node", counter++);
    int disjunction_count = 1;
    if (choices_left > 0 && rng.chance(0.6)) {
      disjunction_count = rng.range(2, 3);
      --choices_left;
    }
    std::vector<Refinement> disjunctions;
    for (int d = 0; d < disjunction_count; ++d) {
      Refinement refinement;
      // Alternatives are usually encoded as single-subgoal Or entries.
      refinement.combinator =
          (disjunction_count > 1 && rng.chance(0.7)) ? Combinator::Or : Combinator::And;
      const int subgoal_count =
          refinement.combinator == Combinator::Or ? 1 : rng.range(1, 2);
      for (int s = 0; s < subgoal_count; ++s)
        refinement.subgoals.push_back(self(self, depth + 1));
      disjunctions.push_back(std::move(refinement));
    }
    b.refined(id, "Reached node " + std::to_string(counter), std::move(disjunctions));
    return id;
  };
  std::string root = subtree(subtree, 0);
  return {std::move(b.graph), root};
}

// ---------------------------------------------------------------------------
// Violation injectors
// ---------------------------------------------------------------------------

inline GraphBuilder small_valid_base() {
  GraphBuilder b;
  b.op("opA", "Do A");
  b.op("opB", "Do B");
  b.oplist("allOps", {"opA", "opB"});
  b.agent("actor", "Actor", "allOps");
  b.leaf("leafA", "Reached A", {{"actor", "opA"}});
  b.leaf("leafB", "Reached B", {{"actor", "opB"}});
  return b;
}

inline GoalGraph graph_with_cycle(Rng& rng) {
  GraphBuilder b = small_valid_base();
  b.refined("g1", "Reached one", {{Combinator::And, true, {"g2", "leafA"}}});
  b.refined("g2", "Reached two", {{Combinator::And, true, {"g1"}}});
  if (rng.chance(0.5))
    b.refined("g3", "Reached three", {{Combinator::And, true, {"g3"}}});  // self loop
  return std::move(b.graph);
}

inline GoalGraph graph_with_empty_refinement(Rng& rng) {
  GraphBuilder b = small_valid_base();
  if (rng.chance(0.5))
    b.refined("bad", "Reached bad", {{Combinator::And, true, {}}});
  else
    b.refined("bad", "Reached bad", {});
  return std::move(b.graph);
}

inline GoalGraph graph_with_or_arity(Rng& rng) {
  GraphBuilder b = small_valid_base();
  std::vector<std::string> subgoals{"leafA", "leafB"};
  if (rng.chance(0.3)) subgoals.push_back("leafA");
  b.refined("bad", "Reached bad", {{Combinator::Or, true, std::move(subgoals)}});
  return std::move(b.graph);
}

inline GoalGraph graph_with_dangling_reference(Rng& rng) {
  GraphBuilder b = small_valid_base();
  switch (rng.range(0, 2)) {
    case 0:
      b.refined("bad", "Reached bad", {{Combinator::And, true, {"ghostGoal"}}});
      break;
    case 1:
      b.leaf("bad", "Reached bad", {{"actor", "ghostOp"}});
      break;
    default:
      b.leaf("bad", "Reached bad", {{"ghostAgent", "opA"}});
      break;
  }
  return std::move(b.graph);
}

inline GoalGraph graph_with_nonperformable(Rng&) {
  GraphBuilder b = small_valid_base();
  b.op("opExtra", "Do extra");  // declared but outside the agent's list
  b.leaf("bad", "Reached bad", {{"actor", "opExtra"}});
  return std::move(b.graph);
}

inline GoalGraph graph_with_empty_leaf(Rng&) {
  GraphBuilder b = small_valid_base();
  b.leaf("bad", "Reached bad", {});
  return std::move(b.graph);
}

}  // namespace testsupport
