#include <string>

#include "goalgraph/gdl.hpp"

namespace goalgraph {
namespace gdl {
namespace {

std::string quote(std::string_view text) {
  std::string out = "\"";
  for (char c : text) {
    if (c == '"' || c == '\\') out.push_back('\\');
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

std::string_view kind_word(GoalKind kind) {
  switch (kind) {
    case GoalKind::Achieve: return "AchieveGoal";
    case GoalKind::Cease: return "CeaseGoal";
    case GoalKind::Maintain: return "MaintainGoal";
    case GoalKind::Avoid: return "AvoidGoal";
    case GoalKind::Soft: return "SoftGoal";
  }
  return "AchieveGoal";
}

std::string_view subtype_word(SoftGoalSubtype subtype) {
  switch (subtype) {
    case SoftGoalSubtype::Improve: return "IMPROVE";
    case SoftGoalSubtype::Increase: return "INCREASE";
    case SoftGoalSubtype::Maximize: return "MAXIMIZE";
    case SoftGoalSubtype::Reduce: return "REDUCE";
    case SoftGoalSubtype::Minimize: return "MINIMIZE";
  }
  return "IMPROVE";
}

void print_operation(std::string& out, const OperationDecl& op) {
  out += "Operation " + op.id + "(" + quote(op.display_name) + ", ";
  out += op.category == OperationCategory::Environment ? "ENVIRONMENT_OPERATION"
                                                       : "SOFTWARE_TO_BE_OPERATION";
  out += ");\n";
}

void print_operation_list(std::string& out, const OperationListDecl& list) {
  out += "list<Operation> " + list.id + " = {";
  for (std::size_t i = 0; i < list.members.size(); ++i) {
    out += i == 0 ? "\n" : ",\n";
    out += "    " + list.members[i];
  }
  out += "\n};\n";
}

void print_agent(std::string& out, const AgentDecl& agent) {
  out += "Agent " + agent.id + "(\n    " + quote(agent.display_name) + ",\n    " +
         agent.performs_source + ");\n";
}

void print_goal(std::string& out, const Goal& goal) {
  out += std::string(kind_word(goal.kind)) + " " + goal.id + "(\n";
  if (goal.soft_subtype) out += "    " + std::string(subtype_word(*goal.soft_subtype)) + ",\n";
  out += "    " + quote(goal.display_name) + ",\n";
  out += "    {";
  if (goal.is_leaf()) {
    const auto& links = goal.performs();
    for (std::size_t i = 0; i < links.size(); ++i) {
      out += i == 0 ? " " : ",\n      ";
      out += "PerformanceLink(" + links[i].agent + ", " + links[i].operation + ")";
    }
    out += " }";
  } else {
    const auto& refinements = goal.disjunctions();
    for (std::size_t i = 0; i < refinements.size(); ++i) {
      const Refinement& r = refinements[i];
      out += i == 0 ? " " : ",\n      ";
      out += "Refinement(\n          ";
      out += r.combinator == Combinator::And ? "AND_REFINEMENT" : "OR_REFINEMENT";
      out += ",\n          ";
      out += r.complete ? "COMPLETE_REFINEMENT" : "INCOMPLETE_REFINEMENT";
      out += ",\n          {";
      for (std::size_t j = 0; j < r.subgoals.size(); ++j) {
        out += j == 0 ? " " : ",\n            ";
        out += r.subgoals[j];
      }
      out += " })";
    }
    out += " }";
  }
  out += ");\n";
}

}  // namespace

std::string print_declarations(const DeclSet& d) {
  std::string out;
  for (const auto& decl : d.decls) {
    std::visit(
        [&](const auto& concrete) {
          using T = std::decay_t<decltype(concrete)>;
          if constexpr (std::is_same_v<T, OperationDecl>)
            print_operation(out, concrete);
          else if constexpr (std::is_same_v<T, OperationListDecl>)
            print_operation_list(out, concrete);
          else if constexpr (std::is_same_v<T, AgentDecl>)
            print_agent(out, concrete);
          else
            print_goal(out, concrete);
        },
        decl);
  }
  return out;
}

std::string print_declarations(const GoalGraph& g) {
  std::string out;
  for (const auto& [kind, id] : g.declaration_order) {
    switch (kind) {
      case DeclKind::Operation:
        print_operation(out, g.operations.at(id));
        break;
      case DeclKind::OperationList:
        print_operation_list(out, g.operation_lists.at(id));
        break;
      case DeclKind::Agent: {
        AgentDecl agent = g.agents.at(id);
        if (agent.performs_source.empty()) {
          agent.performs_source = agent.id + "Operations";
          OperationListDecl list{agent.performs_source, agent.performs, {}};
          print_operation_list(out, list);
        }
        print_agent(out, agent);
        break;
      }
      case DeclKind::Goal:
        print_goal(out, g.goals.at(id));
        break;
    }
  }
  return out;
}

}  // namespace gdl
}  // namespace goalgraph
