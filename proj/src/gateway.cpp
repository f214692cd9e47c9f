#include "goalgraph/gateway.hpp"

#include <chrono>
#include <cmath>
#include <fstream>
#include <thread>

#include <openssl/evp.h>

#ifndef CPPHTTPLIB_OPENSSL_SUPPORT
#define CPPHTTPLIB_OPENSSL_SUPPORT
#endif
#include <httplib.h>
#include <json.hpp>

namespace goalgraph {
namespace {

// Length-prefixed framing keeps the digest unambiguous under concatenation.
void frame(std::string& out, std::string_view field) {
  out += std::to_string(field.size());
  out += ':';
  out += field;
  out += ';';
}

std::string temperature_text(double temperature) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.6f", temperature);
  return buf;
}

}  // namespace

std::string sha256_hex(std::string_view data) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int length = 0;
  EVP_Digest(data.data(), data.size(), digest, &length, EVP_sha256(), nullptr);
  static const char* hex = "0123456789abcdef";
  std::string out;
  out.reserve(length * 2);
  for (unsigned int i = 0; i < length; ++i) {
    out.push_back(hex[digest[i] >> 4]);
    out.push_back(hex[digest[i] & 0xF]);
  }
  return out;
}

std::string hash_request(const ModelConfig& cfg, const PromptBundle& bundle) {
  std::string material;
  frame(material, cfg.model_id);
  frame(material, temperature_text(cfg.temperature));
  frame(material, bundle.system);
  frame(material, bundle.user);
  return sha256_hex(material);
}

CassetteEntry CassetteEntry::make(const ModelConfig& cfg, const PromptBundle& bundle,
                                  std::string response, std::string meta_json) {
  CassetteEntry entry;
  entry.key = hash_request(cfg, bundle);
  entry.model = cfg.model_id;
  entry.temperature = cfg.temperature;
  entry.system = bundle.system;
  entry.user = bundle.user;
  entry.response = std::move(response);
  entry.meta_json = std::move(meta_json);
  return entry;
}

Cassette Cassette::load(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw GatewayError("ConfigError", "cannot read cassette: " + path.string());
  Cassette cassette;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    nlohmann::json entry = nlohmann::json::parse(line, nullptr, false);
    if (entry.is_discarded() || !entry.contains("key") || !entry.contains("response"))
      throw GatewayError("CassetteParse", "bad cassette line " + std::to_string(line_no) +
                                              " in " + path.string());
    cassette.by_key_[entry["key"].get<std::string>()].push_back(
        entry["response"].get<std::string>());
    ++cassette.count_;
  }
  return cassette;
}

void Cassette::append(const std::filesystem::path& path, const CassetteEntry& entry) {
  nlohmann::ordered_json record;
  record["key"] = entry.key;
  record["model"] = entry.model;
  record["temperature"] = entry.temperature;
  record["system"] = entry.system;
  record["user"] = entry.user;
  record["response"] = entry.response;
  if (!entry.meta_json.empty()) {
    nlohmann::json meta = nlohmann::json::parse(entry.meta_json, nullptr, false);
    if (!meta.is_discarded()) record["meta"] = meta;
  }
  std::ofstream out(path, std::ios::binary | std::ios::app);
  if (!out)
    throw GatewayError("ConfigError", "cannot append to cassette: " + path.string());
  out << record.dump() << "\n";
}

const std::vector<std::string>* Cassette::responses(const std::string& key) const {
  auto it = by_key_.find(key);
  return it == by_key_.end() ? nullptr : &it->second;
}

std::string_view to_string(GatewayMode mode) {
  switch (mode) {
    case GatewayMode::Live: return "live";
    case GatewayMode::Record: return "record";
    case GatewayMode::Replay: return "replay";
  }
  return "replay";
}

std::optional<GatewayMode> parse_gateway_mode(std::string_view text) {
  if (text == "live") return GatewayMode::Live;
  if (text == "record") return GatewayMode::Record;
  if (text == "replay") return GatewayMode::Replay;
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Client
// ---------------------------------------------------------------------------

LlmClient::LlmClient(ModelConfig cfg, GatewayMode mode,
                     std::filesystem::path cassette_path, std::string api_key)
    : cfg_(std::move(cfg)),
      mode_(mode),
      cassette_path_(std::move(cassette_path)),
      api_key_(std::move(api_key)) {
  if (cfg_.temperature < 0.0 || cfg_.temperature > 2.0)
    throw GatewayError("ConfigError", "temperature must be between 0 and 2");
  if (mode_ == GatewayMode::Replay) {
    if (cassette_path_.empty())
      throw GatewayError("ConfigError", "replay mode requires a cassette file");
    cassette_ = Cassette::load(cassette_path_);
  } else {
    if (api_key_.empty())
      throw GatewayError("ConfigError",
                         "live/record mode requires an API key (GOALGRAPH_API_KEY)");
    if (mode_ == GatewayMode::Record && cassette_path_.empty())
      throw GatewayError("ConfigError", "record mode requires a cassette file");
  }
}

LlmClient::~LlmClient() = default;

Completion LlmClient::complete(const PromptBundle& bundle) {
  const std::string key = hash_request(cfg_, bundle);
  if (mode_ == GatewayMode::Replay) {
    std::lock_guard<std::mutex> lock(mu_);
    const std::vector<std::string>* responses = cassette_.responses(key);
    if (!responses)
      throw GatewayError("CassetteMiss", "no recorded response for key " + key);
    std::size_t& cursor = replay_cursor_[key];
    if (cursor >= responses->size())
      throw GatewayError("CassetteMiss",
                         "recorded responses for key " + key + " are exhausted");
    return {(*responses)[cursor++]};
  }

  std::string meta_json;
  Completion completion = perform_live(bundle, &meta_json);
  if (mode_ == GatewayMode::Record) {
    std::lock_guard<std::mutex> lock(mu_);
    Cassette::append(cassette_path_,
                     CassetteEntry::make(cfg_, bundle, completion.text, meta_json));
  }
  return completion;
}

Completion LlmClient::perform_live(const PromptBundle& bundle, std::string* meta_json) {
  // Split the endpoint URL into client base and request path.
  const std::string& url = cfg_.endpoint;
  std::size_t scheme_end = url.find("://");
  if (scheme_end == std::string::npos)
    throw GatewayError("ConfigError", "endpoint is not a URL: " + url);
  std::size_t path_start = url.find('/', scheme_end + 3);
  std::string base = path_start == std::string::npos ? url : url.substr(0, path_start);
  std::string path = path_start == std::string::npos ? "/" : url.substr(path_start);

  nlohmann::ordered_json body;
  body["model"] = cfg_.model_id;
  body["temperature"] = cfg_.temperature;
  if (cfg_.max_output_tokens > 0) body["max_tokens"] = cfg_.max_output_tokens;
  body["messages"] = nlohmann::json::array({
      nlohmann::ordered_json{{"role", "system"}, {"content", bundle.system}},
      nlohmann::ordered_json{{"role", "user"}, {"content", bundle.user}},
  });
  const std::string payload = body.dump();

  httplib::Client client(base);
  client.set_connection_timeout(std::chrono::duration<double>(cfg_.timeout_seconds));
  client.set_read_timeout(std::chrono::duration<double>(cfg_.timeout_seconds));
  client.set_write_timeout(std::chrono::duration<double>(cfg_.timeout_seconds));
  httplib::Headers headers{{"Authorization", "Bearer " + api_key_}};

  const int attempts = cfg_.retries + 1;
  double backoff = cfg_.retry_initial_backoff_seconds;
  std::string failure = "request never attempted";
  bool timed_out = false;
  for (int attempt = 0; attempt < attempts; ++attempt) {
    if (attempt > 0) {
      std::this_thread::sleep_for(std::chrono::duration<double>(backoff));
      backoff *= 2.0;
    }
    httplib::Result result = client.Post(path, headers, payload, "application/json");
    if (!result) {
      timed_out = result.error() == httplib::Error::ConnectionTimeout ||
                  result.error() == httplib::Error::Read ||
                  result.error() == httplib::Error::Write;
      failure = "transport error: " + httplib::to_string(result.error());
      continue;  // transport problems are retryable
    }
    timed_out = false;
    const httplib::Response& response = result.value();
    if (response.status == 200) {
      nlohmann::json parsed = nlohmann::json::parse(response.body, nullptr, false);
      if (parsed.is_discarded() || !parsed.contains("choices") ||
          parsed["choices"].empty() ||
          !parsed["choices"][0].contains("message"))
        throw GatewayError("ProviderError",
                           "malformed completion response: " + response.body,
                           response.status);
      if (meta_json) {
        nlohmann::ordered_json meta;
        if (parsed.contains("model")) meta["model"] = parsed["model"];
        if (parsed.contains("usage")) meta["usage"] = parsed["usage"];
        *meta_json = meta.dump();
      }
      return {parsed["choices"][0]["message"]["content"].get<std::string>()};
    }
    failure = "status " + std::to_string(response.status) + ": " + response.body;
    bool retryable = response.status == 429 || response.status >= 500;
    if (!retryable)
      throw GatewayError("ProviderError", failure, response.status);
  }
  if (timed_out) throw GatewayError("Timeout", failure);
  throw GatewayError("ProviderError", failure);
}

}  // namespace goalgraph
