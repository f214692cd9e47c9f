#include "goalgraph/corpus.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>

#include "goalgraph/io.hpp"
#include "goalgraph/naming.hpp"

namespace goalgraph {
namespace {

std::string_view trim(std::string_view text) {
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front())))
    text.remove_prefix(1);
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back())))
    text.remove_suffix(1);
  return text;
}

// Splits into lines on \n, tolerating \r\n input.
std::vector<std::string_view> split_lines(std::string_view text) {
  std::vector<std::string_view> lines;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    lines.push_back(line);
    if (end == text.size()) break;
    start = end + 1;
  }
  return lines;
}

}  // namespace

StepProgram parse_program_text(std::string_view text, std::vector<Warning>* warnings) {
  StepProgram program;
  std::vector<long> numbers;
  bool saw_task_line = false;
  int line_no = 0;
  for (std::string_view raw : split_lines(text)) {
    ++line_no;
    std::string_view line = trim(raw);
    if (line.empty()) continue;
    if (!saw_task_line) {
      if (!line.starts_with("Task:"))
        throw CorpusError("MissingTaskLine", "first line must be `Task: <title>`",
                          line_no);
      program.task = std::string(trim(line.substr(5)));
      saw_task_line = true;
      continue;
    }
    if (!line.starts_with("Step"))
      throw CorpusError("MalformedStepLine",
                        "expected `Step <n>: <action>`, got: " + std::string(line),
                        line_no);
    std::string_view rest = trim(line.substr(4));
    long number = 0;
    auto [ptr, ec] = std::from_chars(rest.data(), rest.data() + rest.size(), number);
    std::string_view after(ptr, static_cast<std::size_t>(rest.data() + rest.size() - ptr));
    after = trim(after);
    if (ec != std::errc{} || after.empty() || after.front() != ':')
      throw CorpusError("MalformedStepLine",
                        "expected `Step <n>: <action>`, got: " + std::string(line),
                        line_no);
    std::string_view action = trim(after.substr(1));
    if (action.empty())
      throw CorpusError("MalformedStepLine", "step has no action text", line_no);
    numbers.push_back(number);
    program.steps.emplace_back(action);
  }
  if (!saw_task_line)
    throw CorpusError("MissingTaskLine", "first line must be `Task: <title>`", 1);
  if (program.steps.empty()) throw CorpusError("NoSteps", "program has no steps", line_no);
  for (std::size_t i = 0; i < numbers.size(); ++i) {
    if (numbers[i] != static_cast<long>(i) + 1) {
      if (warnings)
        warnings->push_back({"NonMonotoneStepNumbers", program.task,
                             "step numbering is not 1..n; textual order kept"});
      break;
    }
  }
  return program;
}

std::string print_program_text(const StepProgram& program) {
  std::string out = "Task: " + program.task + "\n";
  for (std::size_t i = 0; i < program.steps.size(); ++i)
    out += "Step " + std::to_string(i + 1) + ": " + program.steps[i] + "\n";
  return out;
}

std::string canonicalize_step(std::string_view step) {
  std::string out;
  bool pending_space = false;
  for (char c : step) {
    if (std::isspace(static_cast<unsigned char>(c))) {
      pending_space = !out.empty();
      continue;
    }
    if (pending_space) {
      out.push_back(' ');
      pending_space = false;
    }
    out.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  }
  return out;
}

std::vector<std::string> canonical_steps(const StepProgram& program) {
  std::vector<std::string> out;
  out.reserve(program.steps.size());
  for (const auto& step : program.steps) out.push_back(canonicalize_step(step));
  return out;
}

// ---------------------------------------------------------------------------
// Manifest
// ---------------------------------------------------------------------------

std::vector<ManifestEntry> parse_manifest(std::string_view text) {
  std::vector<ManifestEntry> entries;
  bool in_entry = false;
  ManifestEntry current;
  int entry_line = 0;
  int line_no = 0;

  auto flush = [&]() {
    if (!in_entry) return;
    if (current.task_id.empty())
      throw CorpusError("ManifestError", "task entry is missing `id`", entry_line);
    if (current.task_title.empty())
      throw CorpusError("ManifestError", "task entry is missing `title`", entry_line);
    if (current.goal_id.empty())
      throw CorpusError("ManifestError", "task entry is missing `goal`", entry_line);
    if (current.ref_globs.empty())
      throw CorpusError("ManifestError", "task entry is missing `refs`", entry_line);
    if (!is_identifier(current.goal_id))
      throw CorpusError("ManifestError",
                        "goal id '" + current.goal_id + "' is not an identifier",
                        entry_line);
    for (const auto& e : entries)
      if (e.task_id == current.task_id)
        throw CorpusError("ManifestError", "duplicate task id '" + current.task_id + "'",
                          entry_line);
    entries.push_back(std::move(current));
    current = {};
  };

  for (std::string_view raw : split_lines(text)) {
    ++line_no;
    std::string_view line = trim(raw);
    if (line.empty() || line.front() == '#') continue;
    if (line == "[task]") {
      flush();
      in_entry = true;
      entry_line = line_no;
      continue;
    }
    std::size_t eq = line.find('=');
    if (eq == std::string_view::npos)
      throw CorpusError("ManifestError", "expected `key = value`: " + std::string(line),
                        line_no);
    if (!in_entry)
      throw CorpusError("ManifestError", "`key = value` outside a [task] entry", line_no);
    std::string_view key = trim(line.substr(0, eq));
    std::string_view value = trim(line.substr(eq + 1));
    if (value.empty())
      throw CorpusError("ManifestError", "empty value for key '" + std::string(key) + "'",
                        line_no);
    if (key == "id")
      current.task_id = std::string(value);
    else if (key == "title")
      current.task_title = std::string(value);
    else if (key == "goal")
      current.goal_id = std::string(value);
    else if (key == "refs")
      current.ref_globs.emplace_back(value);
    else
      throw CorpusError("ManifestError", "unknown key '" + std::string(key) + "'",
                        line_no);
  }
  flush();
  return entries;
}

namespace {

// Glob match supporting `*` (any run) and `?` (any one char).
bool glob_match(std::string_view pattern, std::string_view name) {
  std::size_t p = 0, n = 0, star = std::string_view::npos, star_n = 0;
  while (n < name.size()) {
    if (p < pattern.size() && (pattern[p] == name[n] || pattern[p] == '?')) {
      ++p;
      ++n;
    } else if (p < pattern.size() && pattern[p] == '*') {
      star = p++;
      star_n = n;
    } else if (star != std::string_view::npos) {
      p = star + 1;
      n = ++star_n;
    } else {
      return false;
    }
  }
  while (p < pattern.size() && pattern[p] == '*') ++p;
  return p == pattern.size();
}

// Expands one glob relative to `base`; only the final path component may
// contain wildcards. Results are sorted by filename.
std::vector<std::filesystem::path> expand_glob(const std::filesystem::path& base,
                                               const std::string& glob) {
  std::filesystem::path pattern_path(glob);
  std::string filename = pattern_path.filename().string();
  if (filename.find('*') == std::string::npos &&
      filename.find('?') == std::string::npos) {
    std::filesystem::path direct = base / pattern_path;
    if (std::filesystem::is_regular_file(direct)) return {direct};
    return {};
  }
  std::filesystem::path dir = base / pattern_path.parent_path();
  std::vector<std::filesystem::path> matches;
  std::error_code ec;
  for (const auto& entry : std::filesystem::directory_iterator(dir, ec)) {
    if (!entry.is_regular_file()) continue;
    if (glob_match(filename, entry.path().filename().string()))
      matches.push_back(entry.path());
  }
  std::sort(matches.begin(), matches.end());
  return matches;
}

}  // namespace

std::vector<TaskRecord> load_corpus(const std::filesystem::path& manifest_path) {
  auto text = read_text_file(manifest_path);
  if (!text)
    throw CorpusError("ManifestError", "cannot read manifest: " + manifest_path.string());
  std::vector<ManifestEntry> entries = parse_manifest(*text);
  const std::filesystem::path base = manifest_path.parent_path();

  std::vector<TaskRecord> records;
  records.reserve(entries.size());
  for (const auto& entry : entries) {
    TaskRecord record{entry.task_id, entry.task_title, entry.goal_id, {}};
    for (const auto& glob : entry.ref_globs) {
      std::vector<std::filesystem::path> files = expand_glob(base, glob);
      if (files.empty())
        throw CorpusError("ManifestError", "task '" + entry.task_id +
                                               "': no reference files match '" + glob +
                                               "'");
      for (const auto& file : files) {
        auto program_text = read_text_file(file);
        if (!program_text)
          throw CorpusError("ManifestError", "cannot read reference: " + file.string());
        try {
          record.references.push_back(parse_program_text(*program_text));
        } catch (const CorpusError& e) {
          throw CorpusError(e.code(), file.string() + ": " + e.what(), e.line());
        }
      }
    }
    records.push_back(std::move(record));
  }
  return records;
}

}  // namespace goalgraph
