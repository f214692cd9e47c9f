#include "goalgraph/pipeline.hpp"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <set>
#include <thread>

#include "goalgraph/corpus.hpp"
#include "goalgraph/gdl.hpp"
#include "goalgraph/io.hpp"

namespace goalgraph {
namespace {

std::string format_score(double score) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.4f", score);
  return buf;
}

std::string format_percent(double percent) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2f", percent);
  return buf;
}

// Error text travels in a TSV column; keep it single-line and tab-free.
std::string flatten(std::string_view text) {
  std::string out(text);
  for (char& c : out)
    if (c == '\t' || c == '\n' || c == '\r') c = ' ';
  return out;
}

ScoreRow evaluate_task(const TaskRecord& task, const PromptAssets& assets,
                       const gdl::DeclSet& base, LlmClient& client,
                       const RunConfig& cfg) {
  ScoreRow row;
  row.task_id = task.task_id;
  row.goal_id = task.goal_id;
  try {
    PromptBundle bundle = build_prompt(assets, task.goal_id);
    gdl::ContinuationContext ctx{"AchieveGoal " + task.goal_id + "(", base};

    std::vector<StepProgram> candidates;
    for (int sample = 0; sample < std::max(1, cfg.samples); ++sample) {
      Completion completion = client.complete(bundle);
      GoalGraph graph = gdl::parse_completion(ctx, completion.text);
      ValidationReport validation = validate_graph(graph);
      if (!validation.ok())
        throw Error("ValidationFailed", validation.violations.front().message);
      if (cfg.use_variants) {
        for (auto& variant : enumerate_variants(graph, task.goal_id))
          candidates.push_back(std::move(variant));
      } else {
        candidates.push_back(lower_to_steps(graph, task.goal_id, cfg.lowering));
      }
    }
    for (auto& candidate : candidates) candidate.task = task.task_title;

    ScoreRow scored = task_score(candidates, task.references);
    row.score = scored.score;
    row.best_reference = scored.best_reference;
    row.best_candidate = scored.best_candidate;
  } catch (const Error& e) {
    row.score = 0.0;
    row.error = e.code() + ": " + e.what();
  }
  return row;
}

}  // namespace

EvalReport run_evaluation(const RunConfig& cfg) {
  std::vector<TaskRecord> tasks = load_corpus(cfg.manifest_path);

  PromptAssets assets = PromptAssets::load(cfg.assets_dir);
  if (cfg.demonstration_override) {
    auto text = read_text_file(*cfg.demonstration_override);
    if (!text)
      throw Error("ConfigError",
                  "cannot read demonstration: " + cfg.demonstration_override->string());
    assets.demonstration_text = *text;
  }
  if (cfg.drop_demonstration) assets.demonstration_text.clear();

  gdl::DeclSet base;
  base.merge(gdl::parse_declarations(assets.operations_text));
  base.merge(gdl::parse_declarations(assets.agent_text));
  base.merge(gdl::parse_declarations(assets.leaf_goals_text));

  LlmClient client(cfg.model, cfg.mode, cfg.cassette_path, cfg.api_key);

  std::vector<ScoreRow> rows(tasks.size());
  const int jobs = std::clamp(cfg.jobs, 1, 64);
  std::atomic<std::size_t> next{0};
  auto worker = [&]() {
    while (true) {
      std::size_t index = next.fetch_add(1);
      if (index >= tasks.size()) return;
      rows[index] = evaluate_task(tasks[index], assets, base, client, cfg);
    }
  };
  if (jobs == 1 || tasks.size() <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int i = 0; i < jobs; ++i) pool.emplace_back(worker);
    for (auto& thread : pool) thread.join();
  }

  EvalReport report;
  report.model_id = cfg.model.model_id;
  report.rows = std::move(rows);
  report.aggregate_percent = aggregate(report.rows);
  if (!cfg.output_path.empty())
    write_text_file(cfg.output_path, format_report_tsv(report));
  return report;
}

std::string format_report_tsv(const EvalReport& report) {
  std::string out = "# model: " + report.model_id + "\n";
  for (const auto& row : report.rows) {
    out += row.task_id + "\t" + row.goal_id + "\t" + format_score(row.score);
    if (!row.error.empty()) out += "\t" + flatten(row.error);
    out += "\n";
  }
  out += "aggregate\t" + format_percent(report.aggregate_percent) + "\n";
  return out;
}

EvalReport parse_report_tsv(std::string_view text, std::string_view fallback_model_id) {
  EvalReport report;
  report.model_id = std::string(fallback_model_id);
  std::size_t start = 0;
  bool saw_aggregate = false;
  while (start < text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    start = end + 1;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty()) continue;
    if (line.starts_with("# model: ")) {
      report.model_id = std::string(line.substr(9));
      continue;
    }
    if (line.starts_with("#")) continue;

    std::vector<std::string> fields;
    std::size_t field_start = 0;
    while (field_start <= line.size()) {
      std::size_t tab = line.find('\t', field_start);
      if (tab == std::string_view::npos) tab = line.size();
      fields.emplace_back(line.substr(field_start, tab - field_start));
      if (tab == line.size()) break;
      field_start = tab + 1;
    }
    try {
      if (fields.size() == 2 && fields[0] == "aggregate") {
        report.aggregate_percent = std::stod(fields[1]);
        saw_aggregate = true;
      } else if (fields.size() == 3 || fields.size() == 4) {
        ScoreRow row;
        row.task_id = fields[0];
        row.goal_id = fields[1];
        row.score = std::stod(fields[2]);
        if (fields.size() == 4) row.error = fields[3];
        report.rows.push_back(std::move(row));
      } else {
        throw Error("ReportParse", "unrecognized report line: " + std::string(line));
      }
    } catch (const std::invalid_argument&) {
      throw Error("ReportParse", "bad number in report line: " + std::string(line));
    }
  }
  if (report.rows.empty())
    throw Error("ReportParse", "report contains no score rows");
  if (!saw_aggregate) report.aggregate_percent = aggregate(report.rows);
  return report;
}

std::string format_report_markdown(std::span<const EvalReport> reports) {
  if (reports.empty()) throw Error("ReportMismatch", "no reports to merge");
  const EvalReport& first = reports.front();
  for (const EvalReport& other : reports) {
    std::set<std::string> a, b;
    for (const auto& row : first.rows) a.insert(row.task_id);
    for (const auto& row : other.rows) b.insert(row.task_id);
    if (a != b) {
      std::vector<std::string> difference;
      std::set_symmetric_difference(a.begin(), a.end(), b.begin(), b.end(),
                                    std::back_inserter(difference));
      std::string message = "reports cover different task sets:";
      for (const auto& id : difference) message += " " + id;
      throw Error("ReportMismatch", message);
    }
  }

  std::string out = "| Task | Goal |";
  std::string rule = "| --- | --- |";
  for (const EvalReport& report : reports) {
    out += " " + report.model_id + " |";
    rule += " --- |";
  }
  out += "\n" + rule + "\n";

  for (const auto& row : first.rows) {
    out += "| " + row.task_id + " | " + row.goal_id + " |";
    for (const EvalReport& report : reports) {
      auto it = std::find_if(report.rows.begin(), report.rows.end(),
                             [&](const ScoreRow& r) { return r.task_id == row.task_id; });
      out += " " + format_score(it->score) + " |";
    }
    out += "\n";
  }
  out += "| aggregate | |";
  for (const EvalReport& report : reports)
    out += " " + format_percent(report.aggregate_percent) + "% |";
  out += "\n";
  return out;
}

}  // namespace goalgraph
