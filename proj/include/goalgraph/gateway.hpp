#pragma once

#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "goalgraph/errors.hpp"
#include "goalgraph/prompt.hpp"

namespace goalgraph {

struct ModelConfig {
  std::string model_id = "gpt-4-0125-preview";
  double temperature = 0.0;
  int max_output_tokens = 1024;
  std::string endpoint = "https://api.openai.com/v1/chat/completions";
  double timeout_seconds = 60.0;
  int retries = 4;  // attempts = retries + 1
  double retry_initial_backoff_seconds = 1.0;
};

// Stable content digest of (model_id, temperature, system, user); entry
// order and metadata never affect it.
std::string hash_request(const ModelConfig& cfg, const PromptBundle& bundle);

std::string sha256_hex(std::string_view data);

struct CassetteEntry {
  std::string key;
  std::string model;
  double temperature = 0.0;
  std::string system;
  std::string user;
  std::string response;
  std::string meta_json;  // optional provider metadata, verbatim

  static CassetteEntry make(const ModelConfig& cfg, const PromptBundle& bundle,
                            std::string response, std::string meta_json = {});
};

// Append-only, line-delimited JSON record of request/response pairs.
// Immutable once loaded; duplicate keys queue up in file order (consumed
// FIFO by replay, which is what multi-sample recording produces).
class Cassette {
 public:
  Cassette() = default;

  static Cassette load(const std::filesystem::path& path);
  static void append(const std::filesystem::path& path, const CassetteEntry& entry);

  const std::vector<std::string>* responses(const std::string& key) const;
  std::size_t size() const { return count_; }

 private:
  std::unordered_map<std::string, std::vector<std::string>> by_key_;
  std::size_t count_ = 0;
};

enum class GatewayMode { Live, Record, Replay };

std::string_view to_string(GatewayMode mode);
std::optional<GatewayMode> parse_gateway_mode(std::string_view text);

struct Completion {
  std::string text;
};

// Chat-completion client with deterministic record/replay. Replay answers
// from the cassette and performs no network I/O at all; Record calls the
// endpoint and appends the exchange; Live just calls. Safe to share across
// threads: cassette writes are serialized, replay reads hit an immutable
// index.
class LlmClient {
 public:
  LlmClient(ModelConfig cfg, GatewayMode mode, std::filesystem::path cassette_path = {},
            std::string api_key = {});
  ~LlmClient();

  LlmClient(const LlmClient&) = delete;
  LlmClient& operator=(const LlmClient&) = delete;

  // Throws GatewayError: "CassetteMiss" (replay key absent or exhausted),
  // "ProviderError" / "Timeout" (after retries), "ConfigError".
  Completion complete(const PromptBundle& bundle);

  GatewayMode mode() const { return mode_; }
  const ModelConfig& config() const { return cfg_; }

 private:
  Completion perform_live(const PromptBundle& bundle, std::string* meta_json);

  ModelConfig cfg_;
  GatewayMode mode_;
  std::filesystem::path cassette_path_;
  std::string api_key_;
  Cassette cassette_;
  std::mutex mu_;  // guards replay cursors and cassette appends
  std::unordered_map<std::string, std::size_t> replay_cursor_;
};

}  // namespace goalgraph
