#include "goalgraph/eval.hpp"

#include <algorithm>
#include <unordered_set>

#include "goalgraph/corpus.hpp"

namespace goalgraph {

std::size_t lcs_length(std::span<const std::string> a, std::span<const std::string> b) {
  if (a.empty() || b.empty()) return 0;
  std::vector<std::size_t> prev(b.size() + 1, 0), cur(b.size() + 1, 0);
  for (std::size_t i = 1; i <= a.size(); ++i) {
    for (std::size_t j = 1; j <= b.size(); ++j) {
      cur[j] = a[i - 1] == b[j - 1] ? prev[j - 1] + 1 : std::max(prev[j], cur[j - 1]);
    }
    std::swap(prev, cur);
  }
  return prev[b.size()];
}

double normalized_lcs(std::span<const std::string> a, std::span<const std::string> b) {
  if (a.empty() && b.empty())
    throw EvalError("BothEmpty", "normalized LCS of two empty sequences is undefined");
  std::size_t longest = std::max(a.size(), b.size());
  return static_cast<double>(lcs_length(a, b)) / static_cast<double>(longest);
}

ScoreRow task_score(std::span<const StepProgram> candidates,
                    std::span<const StepProgram> references) {
  if (candidates.empty() || references.empty())
    throw EvalError("EmptyInputs", "task_score needs at least one candidate and one reference");

  std::vector<std::vector<std::string>> cand, refs;
  for (const auto& c : candidates) cand.push_back(canonical_steps(c));
  for (const auto& r : references) refs.push_back(canonical_steps(r));

  ScoreRow row;
  row.score = -1.0;
  for (std::size_t ri = 0; ri < refs.size(); ++ri) {
    for (std::size_t ci = 0; ci < cand.size(); ++ci) {
      double score = normalized_lcs(cand[ci], refs[ri]);
      if (score > row.score) {
        row.score = score;
        row.best_reference = static_cast<int>(ri);
        row.best_candidate = static_cast<int>(ci);
      }
    }
  }
  return row;
}

double aggregate(std::span<const ScoreRow> rows) {
  if (rows.empty()) throw EvalError("EmptyInputs", "aggregate needs at least one row");
  double sum = 0.0;
  for (const auto& row : rows) sum += row.score;
  return 100.0 * sum / static_cast<double>(rows.size());
}

AdmissibilityReport admissibility_check(
    const StepProgram& program, const AgentDecl& agent,
    const std::unordered_map<std::string, OperationDecl>& operations) {
  std::unordered_set<std::string> performable;
  for (const auto& op_id : agent.performs) {
    auto it = operations.find(op_id);
    if (it != operations.end()) performable.insert(canonicalize_step(it->second.display_name));
  }
  AdmissibilityReport report;
  for (std::size_t i = 0; i < program.steps.size(); ++i) {
    if (!performable.contains(canonicalize_step(program.steps[i])))
      report.flagged.push_back({i, program.steps[i]});
  }
  return report;
}

DiffReport diff_report(const StepProgram& candidate, const StepProgram& reference) {
  const std::vector<std::string> a = canonical_steps(candidate);
  const std::vector<std::string> b = canonical_steps(reference);

  // Suffix LCS table: L[i][j] = LCS of a[i..], b[j..]. Walking it forward
  // yields the leftmost-match alignment; ties prefer consuming a candidate
  // step first.
  std::vector<std::vector<std::size_t>> L(a.size() + 1,
                                          std::vector<std::size_t>(b.size() + 1, 0));
  for (std::size_t i = a.size(); i-- > 0;)
    for (std::size_t j = b.size(); j-- > 0;)
      L[i][j] = a[i] == b[j] ? L[i + 1][j + 1] + 1 : std::max(L[i + 1][j], L[i][j + 1]);

  DiffReport report;
  std::size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    if (a[i] == b[j] && L[i][j] == L[i + 1][j + 1] + 1) {
      ++i;
      ++j;
    } else if (L[i + 1][j] >= L[i][j + 1]) {
      report.added_steps.push_back(candidate.steps[i]);
      ++i;
    } else {
      report.missing_steps.push_back(reference.steps[j]);
      ++j;
    }
  }
  for (; i < a.size(); ++i) report.added_steps.push_back(candidate.steps[i]);
  for (; j < b.size(); ++j) report.missing_steps.push_back(reference.steps[j]);
  return report;
}

}  // namespace goalgraph
