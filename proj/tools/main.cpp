// goalgraph: validate and lower goal refinement graphs, build code-completion
// prompts, run the recorded-LLM evaluation pipeline, and merge score reports.
#include <cstdlib>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "goalgraph/corpus.hpp"
#include "goalgraph/gdl.hpp"
#include "goalgraph/io.hpp"
#include "goalgraph/pipeline.hpp"

namespace {

using namespace goalgraph;

constexpr int kExitOk = 0;
constexpr int kExitViolation = 1;
constexpr int kExitConfig = 2;

bool is_config_code(const std::string& code) {
  return code == "ConfigError" || code == "IoError" || code == "ManifestError" ||
         code == "CassetteParse" || code == "ReportParse" || code == "MissingTaskLine" ||
         code == "NoSteps" || code == "MalformedStepLine";
}

// Source files merged for `validate` / `lower`, with enough bookkeeping to
// turn a byte span back into file:line.
struct LoadedSources {
  gdl::DeclSet merged;
  // file path + normalized text per declaration id, keyed by (kind, id)
  std::map<std::pair<DeclKind, std::string>, std::pair<std::string, std::size_t>> origin;

  static std::size_t line_of(const std::string& text, std::size_t offset) {
    std::size_t line = 1;
    for (std::size_t i = 0; i < offset && i < text.size(); ++i)
      if (text[i] == '\n') ++line;
    return line;
  }
};

void emit_diagnostic(const std::string& severity, const std::string& code,
                     const std::string& subject, const std::vector<std::string>& ids,
                     const std::string& message, const std::string& file,
                     std::size_t line) {
  nlohmann::ordered_json diagnostic;
  diagnostic["severity"] = severity;
  diagnostic["code"] = code;
  if (!subject.empty()) diagnostic["subject"] = subject;
  if (!ids.empty()) diagnostic["ids"] = ids;
  diagnostic["message"] = message;
  if (!file.empty()) {
    diagnostic["file"] = file;
    diagnostic["line"] = line;
  }
  std::cerr << diagnostic.dump() << "\n";
}

// Parses every file into one declaration set. Returns nullopt after printing
// diagnostics (exit kExitViolation), throws Error("IoError") for unreadable
// files.
std::optional<LoadedSources> load_sources(const std::vector<std::string>& files) {
  LoadedSources sources;
  for (const auto& file : files) {
    auto text = read_text_file(file);
    if (!text) throw Error("IoError", "cannot read file: " + file);
    const std::string normalized = gdl::normalize_quotes(*text);
    try {
      gdl::DeclSet set = gdl::parse_declarations(normalized);
      for (const auto& decl : set.decls) {
        Span span = std::visit([](const auto& d) { return d.span; }, decl);
        sources.origin[{gdl::kind_of(decl), gdl::id_of(decl)}] = {
            file, LoadedSources::line_of(normalized, span.begin)};
      }
      sources.merged.merge(set);
    } catch (const ParseError& e) {
      emit_diagnostic("error", e.code(), "", {}, e.what(), file,
                      LoadedSources::line_of(normalized, e.span().begin));
      return std::nullopt;
    }
  }
  return sources;
}

int report_violations(const LoadedSources& sources, const ValidationReport& report) {
  for (const auto& violation : report.violations) {
    std::string file;
    std::size_t line = 0;
    for (auto kind : {DeclKind::Goal, DeclKind::Agent, DeclKind::OperationList,
                      DeclKind::Operation}) {
      auto it = sources.origin.find({kind, violation.subject});
      if (it != sources.origin.end()) {
        file = it->second.first;
        line = it->second.second;
        break;
      }
    }
    emit_diagnostic("error", std::string(to_string(violation.kind)), violation.subject,
                    violation.ids, violation.message, file, line);
  }
  for (const auto& warning : report.warnings)
    emit_diagnostic("warning", warning.code, warning.subject, {}, warning.message, "", 0);
  return report.ok() ? kExitOk : kExitViolation;
}

int cmd_validate(const std::vector<std::string>& files) {
  auto sources = load_sources(files);
  if (!sources) return kExitViolation;
  GoalGraph graph = sources->merged.to_graph();
  ValidationReport report = validate_graph(graph);
  int status = report_violations(*sources, report);
  if (report.ok())
    std::cout << "ok: " << graph.goals.size() << " goals, " << graph.operations.size()
              << " operations, " << graph.agents.size() << " agents, 0 violations\n";
  else
    std::cout << "invalid: " << report.violations.size() << " violation(s)\n";
  return status;
}

int cmd_lower(const std::vector<std::string>& files, const std::string& root,
              const std::string& mode_name, bool variants, std::size_t cap) {
  auto sources = load_sources(files);
  if (!sources) return kExitViolation;
  GoalGraph graph = sources->merged.to_graph();
  ValidationReport report = validate_graph(graph);
  if (!report.ok()) {
    report_violations(*sources, report);
    std::cout << "invalid: " << report.violations.size() << " violation(s)\n";
    return kExitViolation;
  }
  LoweringMode mode =
      mode_name == "faithful" ? LoweringMode::Faithful : LoweringMode::Recursive;
  if (variants) {
    std::vector<StepProgram> programs = enumerate_variants(graph, root, cap);
    for (std::size_t i = 0; i < programs.size(); ++i) {
      if (i > 0) std::cout << "\n";
      std::cout << print_program_text(programs[i]);
    }
  } else {
    std::cout << print_program_text(lower_to_steps(graph, root, mode));
  }
  return kExitOk;
}

int cmd_prompt(const std::string& assets_dir, const std::string& goal_id,
               const std::string& demo_file, bool no_demo, bool as_json) {
  PromptAssets assets = PromptAssets::load(assets_dir);
  if (!demo_file.empty()) {
    auto text = read_text_file(demo_file);
    if (!text) throw Error("ConfigError", "cannot read demonstration: " + demo_file);
    assets.demonstration_text = *text;
  }
  if (no_demo) assets.demonstration_text.clear();
  PromptBundle bundle = build_prompt(assets, goal_id);
  if (as_json) {
    nlohmann::ordered_json out;
    out["system"] = bundle.system;
    out["user"] = bundle.user;
    out["goal_id"] = bundle.goal_id;
    std::cout << out.dump(2) << "\n";
  } else {
    std::cout << bundle.user << "\n";
  }
  return kExitOk;
}

struct RunOptions {
  std::string manifest;
  std::string assets_dir = "assets";
  std::string model_id = "gpt-4-0125-preview";
  std::string mode_name = "replay";
  std::string cassette;
  std::string out;
  std::string endpoint;
  std::string demo_file;
  bool no_demo = false;
  bool variants = false;
  std::string lowering = "recursive";
  double temperature = 0.0;
  int samples = 1;
  int jobs = 4;
  int max_tokens = 1024;
  double timeout = 60.0;
};

int cmd_run(const RunOptions& options) {
  RunConfig cfg;
  cfg.manifest_path = options.manifest;
  cfg.assets_dir = options.assets_dir;
  cfg.cassette_path = options.cassette;
  cfg.output_path = options.out;
  auto mode = parse_gateway_mode(options.mode_name);
  if (!mode) throw Error("ConfigError", "unknown mode: " + options.mode_name);
  cfg.mode = *mode;
  cfg.model.model_id = options.model_id;
  cfg.model.temperature = options.temperature;
  cfg.model.max_output_tokens = options.max_tokens;
  cfg.model.timeout_seconds = options.timeout;
  if (!options.endpoint.empty()) cfg.model.endpoint = options.endpoint;
  cfg.lowering = options.lowering == "faithful" ? LoweringMode::Faithful
                                                : LoweringMode::Recursive;
  cfg.use_variants = options.variants;
  cfg.samples = options.samples;
  cfg.jobs = options.jobs;
  if (const char* key = std::getenv("GOALGRAPH_API_KEY")) cfg.api_key = key;
  if (!options.demo_file.empty()) cfg.demonstration_override = options.demo_file;
  cfg.drop_demonstration = options.no_demo;

  EvalReport report = run_evaluation(cfg);
  if (options.out.empty())
    std::cout << format_report_tsv(report);
  else
    std::cout << "aggregate " << report.aggregate_percent << " -> " << options.out
              << "\n";
  for (const auto& row : report.rows)
    if (row.failed())
      emit_diagnostic("warning", "TaskFailed", row.task_id, {}, row.error, "", 0);
  return kExitOk;
}

int cmd_report(const std::vector<std::string>& files, const std::string& out) {
  std::vector<EvalReport> reports;
  for (const auto& file : files) {
    auto text = read_text_file(file);
    if (!text) throw Error("IoError", "cannot read report: " + file);
    reports.push_back(parse_report_tsv(*text, std::filesystem::path(file).stem().string()));
  }
  std::string markdown = format_report_markdown(reports);
  if (out.empty())
    std::cout << markdown;
  else
    write_text_file(out, markdown);
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"goal refinement graph toolkit"};
  app.require_subcommand(1);

  std::vector<std::string> files;
  auto* validate = app.add_subcommand("validate", "parse and validate graph files");
  validate->add_option("files", files, "graph declaration files")->required();

  std::string root, lower_mode = "recursive";
  bool lower_variants = false;
  std::size_t cap = kDefaultVariantCap;
  auto* lower = app.add_subcommand("lower", "lower a root goal to a step program");
  lower->add_option("files", files, "graph declaration files")->required();
  lower->add_option("--root", root, "root goal id")->required();
  lower->add_option("--mode", lower_mode, "faithful|recursive")
      ->check(CLI::IsMember({"faithful", "recursive"}));
  lower->add_flag("--variants", lower_variants, "enumerate all disjunction choices");
  lower->add_option("--cap", cap, "variant count cap");

  std::string assets_dir = "assets", goal_id, demo_file;
  bool no_demo = false, prompt_json = false;
  auto* prompt = app.add_subcommand("prompt", "assemble the code-completion prompt");
  prompt->add_option("--assets", assets_dir, "prompt asset directory");
  prompt->add_option("--goal", goal_id, "goal id to complete")->required();
  prompt->add_option("--demo", demo_file, "demonstration override file");
  prompt->add_flag("--no-demo", no_demo, "drop the demonstration section");
  prompt->add_flag("--json", prompt_json, "emit the bundle as JSON");

  RunOptions run_options;
  auto* run = app.add_subcommand("run", "evaluate every manifest task end to end");
  run->add_option("--manifest", run_options.manifest, "task manifest")->required();
  run->add_option("--assets", run_options.assets_dir, "prompt asset directory");
  run->add_option("--model", run_options.model_id, "model identifier");
  run->add_option("--mode", run_options.mode_name, "live|record|replay")
      ->check(CLI::IsMember({"live", "record", "replay"}));
  run->add_option("--cassette", run_options.cassette, "request/response cassette");
  run->add_option("--out", run_options.out, "report output path");
  run->add_option("--endpoint", run_options.endpoint, "chat-completion endpoint URL");
  run->add_option("--demo", run_options.demo_file, "demonstration override file");
  run->add_flag("--no-demo", run_options.no_demo, "drop the demonstration section");
  run->add_flag("--variants", run_options.variants, "score all program variants");
  run->add_option("--lowering", run_options.lowering, "faithful|recursive")
      ->check(CLI::IsMember({"faithful", "recursive"}));
  run->add_option("--temperature", run_options.temperature, "sampling temperature");
  run->add_option("--samples", run_options.samples, "completions per task");
  run->add_option("--jobs", run_options.jobs, "parallel task evaluations");
  run->add_option("--max-tokens", run_options.max_tokens, "completion token limit");
  run->add_option("--timeout", run_options.timeout, "request timeout in seconds");

  std::string report_out;
  auto* report = app.add_subcommand("report", "merge score reports into markdown");
  report->add_option("files", files, "TSV report files")->required();
  report->add_option("--out", report_out, "markdown output path");

  CLI11_PARSE(app, argc, argv);

  try {
    if (validate->parsed()) return cmd_validate(files);
    if (lower->parsed())
      return cmd_lower(files, root, lower_mode, lower_variants, cap);
    if (prompt->parsed())
      return cmd_prompt(assets_dir, goal_id, demo_file, no_demo, prompt_json);
    if (run->parsed()) return cmd_run(run_options);
    if (report->parsed()) return cmd_report(files, report_out);
  } catch (const ParseError& e) {
    emit_diagnostic("error", e.code(), "", {}, e.what(), "", 0);
    return kExitViolation;
  } catch (const Error& e) {
    emit_diagnostic("error", e.code(), "", {}, e.what(), "", 0);
    return is_config_code(e.code()) ? kExitConfig : kExitViolation;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  }
  return kExitOk;
}
