#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "goalgraph/errors.hpp"
#include "goalgraph/model.hpp"

namespace goalgraph {

// Parses the step-program text format:
//   Task: <title>
//   Step <n>: <action>
// Steps are returned in textual order; odd numbering is a warning
// ("NonMonotoneStepNumbers"), not an error. Throws CorpusError with code
// "MissingTaskLine", "NoSteps" or "MalformedStepLine".
StepProgram parse_program_text(std::string_view text, std::vector<Warning>* warnings = nullptr);

// Inverse of parse_program_text; steps numbered 1..n, LF line endings.
std::string print_program_text(const StepProgram& program);

// Canonical step form used for comparison: trimmed, internal whitespace
// collapsed, ASCII case-folded. Idempotent.
std::string canonicalize_step(std::string_view step);

std::vector<std::string> canonical_steps(const StepProgram& program);

struct TaskRecord {
  std::string task_id;
  std::string task_title;
  std::string goal_id;
  std::vector<StepProgram> references;  // non-empty
};

struct ManifestEntry {
  std::string task_id;
  std::string task_title;
  std::string goal_id;
  std::vector<std::string> ref_globs;  // relative to the manifest directory
};

// Manifest syntax: `[task]` opens an entry, `key = value` lines fill it
// (keys: id, title, goal, refs; refs may repeat), `#` starts a comment.
// Throws CorpusError("ManifestError") on structural problems.
std::vector<ManifestEntry> parse_manifest(std::string_view text);

// Loads the manifest and every referenced program file, in manifest order.
// A glob that matches no file is a ManifestError; reference parse failures
// propagate with file context.
std::vector<TaskRecord> load_corpus(const std::filesystem::path& manifest_path);

}  // namespace goalgraph
