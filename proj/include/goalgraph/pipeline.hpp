#pragma once

#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>

#include "goalgraph/eval.hpp"
#include "goalgraph/gateway.hpp"
#include "goalgraph/model.hpp"

namespace goalgraph {

struct RunConfig {
  std::filesystem::path manifest_path;
  std::filesystem::path assets_dir;
  std::filesystem::path cassette_path;
  std::filesystem::path output_path;  // empty = don't write, caller formats
  GatewayMode mode = GatewayMode::Replay;
  ModelConfig model;
  LoweringMode lowering = LoweringMode::Recursive;
  bool use_variants = false;
  int samples = 1;
  int jobs = 4;
  std::string api_key;
  std::optional<std::filesystem::path> demonstration_override;
  bool drop_demonstration = false;
};

// Full per-task pipeline: build prompt -> complete -> parse completion ->
// validate -> lower (-> variants) -> score against references. Task
// failures become score-0 rows carrying the error; only manifest / assets /
// cassette / config problems throw. Rows come back in manifest order no
// matter how many worker threads ran.
EvalReport run_evaluation(const RunConfig& cfg);

// Tab-separated report: `task_id<TAB>goal_id<TAB>score[<TAB>error]` rows in
// manifest order, then `aggregate<TAB><percent>`. Scores print with 4
// decimals, the aggregate with 2; a leading `# model: <id>` comment names
// the column for merging. Byte-deterministic.
std::string format_report_tsv(const EvalReport& report);

EvalReport parse_report_tsv(std::string_view text, std::string_view fallback_model_id);

// Joins per-model reports on task_id into one markdown table (one score
// column per model, trailing aggregate row). Mismatched task sets raise
// Error("ReportMismatch") listing the difference.
std::string format_report_markdown(std::span<const EvalReport> reports);

}  // namespace goalgraph
