#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "goalgraph/errors.hpp"
#include "goalgraph/model.hpp"

namespace goalgraph {

std::size_t lcs_length(std::span<const std::string> a, std::span<const std::string> b);

// lcs_length(a, b) / max(|a|, |b|). Equals 1 iff the sequences are equal;
// 0 when exactly one side is empty. Both empty throws EvalError("BothEmpty").
double normalized_lcs(std::span<const std::string> a, std::span<const std::string> b);

struct ScoreRow {
  std::string task_id;
  std::string goal_id;
  double score = 0.0;
  int best_reference = -1;
  int best_candidate = -1;
  std::string error;  // non-empty for failed pipeline rows (scored 0)

  bool failed() const { return !error.empty(); }
};

// Max normalized LCS over all (candidate, reference) pairs, on
// canonicalized steps. Ties break to the lowest reference index, then the
// lowest candidate index. Throws EvalError("EmptyInputs") when either list
// is empty. task_id/goal_id are left for the caller to fill.
ScoreRow task_score(std::span<const StepProgram> candidates,
                    std::span<const StepProgram> references);

// 100 x mean score. Rows must be non-empty.
double aggregate(std::span<const ScoreRow> rows);

struct EvalReport {
  std::string model_id;
  std::vector<ScoreRow> rows;  // manifest order
  double aggregate_percent = 0.0;
};

struct AdmissibilityReport {
  struct Flag {
    std::size_t step_index;
    std::string step;
  };
  std::vector<Flag> flagged;  // steps matching no performable operation

  bool admissible() const { return flagged.empty(); }
};

// Flags every step whose canonical text matches no display name among the
// operations the agent performs. Report-only, never throws.
AdmissibilityReport admissibility_check(
    const StepProgram& program, const AgentDecl& agent,
    const std::unordered_map<std::string, OperationDecl>& operations);

struct DiffReport {
  std::vector<std::string> missing_steps;  // in reference, absent from candidate
  std::vector<std::string> added_steps;    // in candidate, absent from reference
};

// Partitions unmatched steps around one deterministic leftmost-match LCS
// alignment. |missing| = |ref| - LCS, |added| = |cand| - LCS.
DiffReport diff_report(const StepProgram& candidate, const StepProgram& reference);

}  // namespace goalgraph
