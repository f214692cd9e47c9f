#include "goalgraph/model.hpp"

#include <algorithm>
#include <unordered_set>

#include "goalgraph/naming.hpp"

namespace goalgraph {

const Goal* GoalGraph::find_goal(std::string_view id) const {
  auto it = goals.find(std::string(id));
  return it == goals.end() ? nullptr : &it->second;
}

const OperationDecl* GoalGraph::find_operation(std::string_view id) const {
  auto it = operations.find(std::string(id));
  return it == operations.end() ? nullptr : &it->second;
}

const AgentDecl* GoalGraph::find_agent(std::string_view id) const {
  auto it = agents.find(std::string(id));
  return it == agents.end() ? nullptr : &it->second;
}

std::vector<std::string> GoalGraph::goal_ids_in_order() const {
  std::vector<std::string> out;
  for (const auto& [kind, id] : declaration_order)
    if (kind == DeclKind::Goal) out.push_back(id);
  return out;
}

std::string_view to_string(ViolationKind kind) {
  switch (kind) {
    case ViolationKind::CycleDetected: return "CycleDetected";
    case ViolationKind::EmptyRefinement: return "EmptyRefinement";
    case ViolationKind::OrArityViolation: return "OrArityViolation";
    case ViolationKind::UnresolvedReference: return "UnresolvedReference";
    case ViolationKind::OperationNotPerformable: return "OperationNotPerformable";
    case ViolationKind::EmptyLeaf: return "EmptyLeaf";
  }
  return "UnknownViolation";
}

// ---------------------------------------------------------------------------
// Validation
// ---------------------------------------------------------------------------

namespace {

enum class Color { White, Gray, Black };

// Depth-first search recording reverse post-order (= topological order once
// reversed) and the goal ids along any back edge.
struct CycleFinder {
  const GoalGraph& g;
  std::unordered_map<std::string, Color> color;
  std::vector<std::string> stack;      // current DFS path
  std::vector<std::string> postorder;  // finished goals
  std::vector<std::vector<std::string>> cycles;

  void visit(const std::string& id) {
    const Goal* goal = g.find_goal(id);
    color[id] = Color::Gray;
    stack.push_back(id);
    if (goal && !goal->is_leaf()) {
      for (const auto& refinement : goal->disjunctions()) {
        for (const auto& subgoal : refinement.subgoals) {
          if (!g.find_goal(subgoal)) continue;  // unresolved: reported elsewhere
          auto state = color.find(subgoal);
          if (state == color.end() || state->second == Color::White) {
            visit(subgoal);
          } else if (state->second == Color::Gray) {
            auto begin = std::find(stack.begin(), stack.end(), subgoal);
            cycles.emplace_back(begin, stack.end());
          }
        }
      }
    }
    stack.pop_back();
    color[id] = Color::Black;
    postorder.push_back(id);
  }
};

}  // namespace

ValidationReport validate_graph(const GoalGraph& g) {
  ValidationReport report;
  auto violate = [&](ViolationKind kind, std::string subject,
                     std::vector<std::string> ids, std::string message) {
    report.violations.push_back(
        {kind, std::move(subject), std::move(ids), std::move(message)});
  };

  for (const auto& [kind, id] : g.declaration_order) {
    switch (kind) {
      case DeclKind::Operation: {
        const OperationDecl& op = g.operations.at(id);
        if (op.display_name.empty())
          report.warnings.push_back(
              {"EmptyDisplayName", op.id, "operation has an empty display name"});
        break;
      }
      case DeclKind::OperationList: {
        const OperationListDecl& list = g.operation_lists.at(id);
        for (const auto& member : list.members)
          if (!g.find_operation(member))
            violate(ViolationKind::UnresolvedReference, list.id, {member},
                    "operation list '" + list.id + "' names unknown operation '" +
                        member + "'");
        break;
      }
      case DeclKind::Agent: {
        const AgentDecl& agent = g.agents.at(id);
        if (!agent.performs_source.empty() &&
            g.operation_lists.find(agent.performs_source) == g.operation_lists.end())
          violate(ViolationKind::UnresolvedReference, agent.id, {agent.performs_source},
                  "agent '" + agent.id + "' names unknown operation list '" +
                      agent.performs_source + "'");
        for (const auto& op : agent.performs)
          if (!g.find_operation(op))
            violate(ViolationKind::UnresolvedReference, agent.id, {op},
                    "agent '" + agent.id + "' performs unknown operation '" + op + "'");
        break;
      }
      case DeclKind::Goal: {
        const Goal& goal = g.goals.at(id);
        for (auto warning : check_goal_name(goal.display_name)) {
          warning.subject = goal.id;
          report.warnings.push_back(std::move(warning));
        }
        if (goal.is_leaf()) {
          if (goal.performs().empty())
            violate(ViolationKind::EmptyLeaf, goal.id, {},
                    "leaf goal '" + goal.id + "' has no performance links");
          for (const auto& link : goal.performs()) {
            const AgentDecl* agent = g.find_agent(link.agent);
            const OperationDecl* op = g.find_operation(link.operation);
            if (!agent)
              violate(ViolationKind::UnresolvedReference, goal.id, {link.agent},
                      "goal '" + goal.id + "' names unknown agent '" + link.agent + "'");
            if (!op)
              violate(ViolationKind::UnresolvedReference, goal.id, {link.operation},
                      "goal '" + goal.id + "' names unknown operation '" +
                          link.operation + "'");
            if (agent && op &&
                std::find(agent->performs.begin(), agent->performs.end(),
                          link.operation) == agent->performs.end())
              violate(ViolationKind::OperationNotPerformable, goal.id,
                      {link.agent, link.operation},
                      "agent '" + link.agent + "' does not perform operation '" +
                          link.operation + "'");
          }
        } else {
          if (goal.disjunctions().empty())
            violate(ViolationKind::EmptyRefinement, goal.id, {},
                    "goal '" + goal.id + "' has no refinements");
          for (const auto& refinement : goal.disjunctions()) {
            if (refinement.subgoals.empty())
              violate(ViolationKind::EmptyRefinement, goal.id, {},
                      "refinement subgoals is empty in goal '" + goal.id + "'");
            if (refinement.combinator == Combinator::Or &&
                refinement.subgoals.size() != 1)
              violate(ViolationKind::OrArityViolation, goal.id, refinement.subgoals,
                      "OR refinement in goal '" + goal.id + "' has " +
                          std::to_string(refinement.subgoals.size()) +
                          " subgoals, expected exactly 1");
            for (const auto& subgoal : refinement.subgoals)
              if (!g.find_goal(subgoal))
                violate(ViolationKind::UnresolvedReference, goal.id, {subgoal},
                        "goal '" + goal.id + "' refines into unknown goal '" + subgoal +
                            "'");
          }
        }
        break;
      }
    }
  }

  CycleFinder finder{g, {}, {}, {}, {}};
  for (const auto& id : g.goal_ids_in_order()) {
    auto state = finder.color.find(id);
    if (state == finder.color.end() || state->second == Color::White) finder.visit(id);
  }
  for (auto& cycle : finder.cycles) {
    std::string message = "refinement cycle:";
    for (const auto& id : cycle) message += " " + id;
    violate(ViolationKind::CycleDetected, cycle.empty() ? "" : cycle.front(),
            std::move(cycle), std::move(message));
  }
  if (finder.cycles.empty()) {
    report.goal_order.assign(finder.postorder.rbegin(), finder.postorder.rend());
  }
  return report;
}

// ---------------------------------------------------------------------------
// Lowering
// ---------------------------------------------------------------------------

namespace {

const Goal& require_goal(const GoalGraph& g, std::string_view id) {
  const Goal* goal = g.find_goal(id);
  if (!goal) throw UnresolvedReferenceError({std::string(id)});
  return *goal;
}

std::string first_link_step(const GoalGraph& g, const Goal& leaf) {
  const PerformanceLink& link = leaf.performs().front();
  const OperationDecl* op = g.find_operation(link.operation);
  if (!op) throw UnresolvedReferenceError({link.operation});
  return op->display_name;
}

void lower_faithful(const GoalGraph& g, const Goal& root, std::vector<std::string>& steps) {
  if (root.is_leaf()) return;  // the traversal only reads refinements
  for (const auto& refinement : root.disjunctions()) {
    for (const auto& subgoal_id : refinement.subgoals) {
      const Goal& subgoal = require_goal(g, subgoal_id);
      if (!subgoal.is_leaf() || subgoal.performs().empty())
        throw LoweringError("NonLeafSubgoal",
                            "subgoal '" + subgoal.id +
                                "' has no performance link to emit",
                            subgoal.id);
      steps.push_back(first_link_step(g, subgoal));
    }
  }
}

void lower_recursive(const GoalGraph& g, const Goal& goal,
                     std::vector<std::string>& steps) {
  if (goal.is_leaf()) {
    if (!goal.performs().empty()) steps.push_back(first_link_step(g, goal));
    return;
  }
  if (goal.disjunctions().empty()) return;
  for (const auto& subgoal_id : goal.disjunctions().front().subgoals)
    lower_recursive(g, require_goal(g, subgoal_id), steps);
}

}  // namespace

StepProgram lower_to_steps(const GoalGraph& g, std::string_view root_id,
                           LoweringMode mode) {
  const Goal& root = require_goal(g, root_id);
  StepProgram program;
  program.task = root.display_name;
  if (mode == LoweringMode::Faithful)
    lower_faithful(g, root, program.steps);
  else
    lower_recursive(g, root, program.steps);
  if (program.steps.empty())
    throw LoweringError("EmptyProgram",
                        "goal '" + root.id + "' lowers to zero steps", root.id);
  return program;
}

// ---------------------------------------------------------------------------
// Variant enumeration
// ---------------------------------------------------------------------------

namespace {

// Collects the reachable refined goals in depth-first pre-order (every
// disjunction explored) and rejects shared subgoals: variant enumeration is
// only defined on trees.
void collect_choice_points(const GoalGraph& g, const Goal& goal,
                           std::unordered_set<std::string>& seen,
                           std::vector<std::string>& choice_points) {
  if (!seen.insert(goal.id).second)
    throw LoweringError("SharedSubgoal",
                        "goal '" + goal.id + "' is reached by more than one parent",
                        goal.id);
  if (goal.is_leaf()) return;
  choice_points.push_back(goal.id);
  for (const auto& refinement : goal.disjunctions())
    for (const auto& subgoal_id : refinement.subgoals)
      collect_choice_points(g, require_goal(g, subgoal_id), seen, choice_points);
}

void lower_with_choices(const GoalGraph& g, const Goal& goal,
                        const std::unordered_map<std::string, std::size_t>& choice,
                        std::vector<std::string>& steps) {
  if (goal.is_leaf()) {
    if (!goal.performs().empty()) steps.push_back(first_link_step(g, goal));
    return;
  }
  if (goal.disjunctions().empty()) return;
  const Refinement& chosen = goal.disjunctions()[choice.at(goal.id)];
  for (const auto& subgoal_id : chosen.subgoals)
    lower_with_choices(g, require_goal(g, subgoal_id), choice, steps);
}

}  // namespace

std::vector<StepProgram> enumerate_variants(const GoalGraph& g, std::string_view root_id,
                                            std::size_t cap) {
  const Goal& root = require_goal(g, root_id);

  std::unordered_set<std::string> seen;
  std::vector<std::string> choice_points;
  collect_choice_points(g, root, seen, choice_points);

  std::size_t total = 1;
  for (const auto& id : choice_points) {
    std::size_t options = g.find_goal(id)->disjunctions().size();
    if (options == 0) options = 1;
    if (total > cap / options)  // total * options > cap, without overflow
      throw LoweringError("VariantCapExceeded",
                          "variant count exceeds cap of " + std::to_string(cap),
                          std::string(root_id));
    total *= options;
  }

  std::vector<std::size_t> indices(choice_points.size(), 0);
  std::vector<StepProgram> variants;
  while (true) {
    std::unordered_map<std::string, std::size_t> choice;
    for (std::size_t i = 0; i < choice_points.size(); ++i)
      choice[choice_points[i]] = indices[i];
    StepProgram program;
    program.task = root.display_name;
    lower_with_choices(g, root, choice, program.steps);
    variants.push_back(std::move(program));

    // Odometer increment, last choice point fastest: lexicographic order.
    std::size_t i = indices.size();
    while (i > 0) {
      --i;
      std::size_t options = g.find_goal(choice_points[i])->disjunctions().size();
      if (options == 0) options = 1;
      if (++indices[i] < options) break;
      indices[i] = 0;
      if (i == 0) return variants;
    }
    if (indices.empty()) return variants;
  }
}

// ---------------------------------------------------------------------------
// Tree rendering
// ---------------------------------------------------------------------------

namespace {

std::string_view kind_label(GoalKind kind) {
  switch (kind) {
    case GoalKind::Achieve: return "Achieve";
    case GoalKind::Cease: return "Cease";
    case GoalKind::Maintain: return "Maintain";
    case GoalKind::Avoid: return "Avoid";
    case GoalKind::Soft: return "Soft";
  }
  return "Achieve";
}

std::string_view subtype_label(SoftGoalSubtype subtype) {
  switch (subtype) {
    case SoftGoalSubtype::Improve: return "Improve";
    case SoftGoalSubtype::Increase: return "Increase";
    case SoftGoalSubtype::Maximize: return "Maximize";
    case SoftGoalSubtype::Reduce: return "Reduce";
    case SoftGoalSubtype::Minimize: return "Minimize";
  }
  return "Improve";
}

void render_goal(const GoalGraph& g, const std::string& id, int depth,
                 std::vector<std::string>& path, std::string& out) {
  const std::string indent(static_cast<std::size_t>(depth) * 2, ' ');
  const Goal* goal = g.find_goal(id);
  if (!goal) {
    out += indent + id + " <unresolved>\n";
    return;
  }
  std::string label = std::string(kind_label(goal->kind));
  if (goal->soft_subtype) label += "(" + std::string(subtype_label(*goal->soft_subtype)) + ")";
  label += "[" + goal->display_name + "]";
  if (std::find(path.begin(), path.end(), id) != path.end()) {
    out += indent + label + " <cycle>\n";
    return;
  }
  out += indent + label + "\n";
  path.push_back(id);
  if (goal->is_leaf()) {
    for (const auto& link : goal->performs()) {
      const AgentDecl* agent = g.find_agent(link.agent);
      const OperationDecl* op = g.find_operation(link.operation);
      std::string line = indent + "  performs <";
      line += agent ? agent->display_name : link.agent;
      line += ">::(";
      line += op ? op->display_name : link.operation;
      line += ")";
      if (!agent || !op) line += " <unresolved>";
      out += line + "\n";
    }
  } else {
    for (const auto& refinement : goal->disjunctions()) {
      out += indent + "  ";
      out += refinement.combinator == Combinator::And ? "AND" : "OR";
      out += refinement.complete ? "(complete)" : "(incomplete)";
      out += "\n";
      for (const auto& subgoal : refinement.subgoals)
        render_goal(g, subgoal, depth + 2, path, out);
    }
  }
  path.pop_back();
}

}  // namespace

std::string render_tree(const GoalGraph& g, std::string_view root_id) {
  std::string out;
  std::vector<std::string> path;
  render_goal(g, std::string(root_id), 0, path, out);
  return out;
}

}  // namespace goalgraph
