// Development utility: builds a replay cassette from a directory of response
// files. Each `<GoalId>.txt` becomes one cassette entry whose key is the
// digest of the prompt the pipeline would send for that goal id.
//
//   seed_cassette <assets-dir> <responses-dir> <out-cassette> [model] [temperature]
#include <algorithm>
#include <filesystem>
#include <iostream>
#include <vector>

#include "goalgraph/gateway.hpp"
#include "goalgraph/io.hpp"
#include "goalgraph/prompt.hpp"

int main(int argc, char** argv) {
  using namespace goalgraph;
  if (argc < 4) {
    std::cerr << "usage: seed_cassette <assets-dir> <responses-dir> <out-cassette>"
                 " [model] [temperature]\n";
    return 2;
  }
  const std::filesystem::path assets_dir = argv[1];
  const std::filesystem::path responses_dir = argv[2];
  const std::filesystem::path out_path = argv[3];
  ModelConfig cfg;
  if (argc > 4) cfg.model_id = argv[4];
  if (argc > 5) cfg.temperature = std::stod(argv[5]);

  try {
    PromptAssets assets = PromptAssets::load(assets_dir);

    std::vector<std::filesystem::path> files;
    for (const auto& entry : std::filesystem::directory_iterator(responses_dir))
      if (entry.is_regular_file() && entry.path().extension() == ".txt")
        files.push_back(entry.path());
    std::sort(files.begin(), files.end());
    if (files.empty()) {
      std::cerr << "no .txt response files in " << responses_dir << "\n";
      return 2;
    }

    std::filesystem::remove(out_path);
    for (const auto& file : files) {
      const std::string goal_id = file.stem().string();
      auto response = read_text_file(file);
      if (!response) {
        std::cerr << "cannot read " << file << "\n";
        return 2;
      }
      // Editors append a trailing newline that a chat response would not have.
      std::string text = *response;
      if (!text.empty() && text.back() == '\n') text.pop_back();
      PromptBundle bundle = build_prompt(assets, goal_id);
      Cassette::append(out_path, CassetteEntry::make(cfg, bundle, text));
    }
    std::cout << "wrote " << files.size() << " entries to " << out_path << "\n";
  } catch (const Error& e) {
    std::cerr << e.code() << ": " << e.what() << "\n";
    return 2;
  }
  return 0;
}
