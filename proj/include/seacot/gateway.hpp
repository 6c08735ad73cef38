#pragma once

// Uniform completion interface over HTTP backends and the scripted mock,
// with bounded parallelism, retry with exponential backoff, and a persistent
// content-addressed response cache.

#include <atomic>
#include <chrono>
#include <filesystem>
#include <map>
#include <memory>
#include <optional>
#include <semaphore>
#include <shared_mutex>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "seacot/core.hpp"
#include "seacot/errors.hpp"
#include "seacot/serialization.hpp"

namespace seacot {

struct BackendConfig {
  // "openai" (/v1/completions), "openai-chat" (/v1/chat/completions) or "mock".
  std::string kind = "openai";
  std::string base_url;
  std::string model_name;
  // Name of the environment variable holding the bearer token; empty = no auth.
  std::string api_key_env;
  double timeout_s = 120.0;
  int max_retries = 3;
  int parallelism_limit = 4;
  int retry_base_delay_ms = 500;
  bool send_top_k = true;
  // Mock only: path to the script file.
  std::string script;
};

void to_json(json& j, const BackendConfig& v);
void from_json(const json& j, BackendConfig& v);

// Throws ConfigError for unusable configs, including an api_key_env that names
// an unset variable.
void validate(const BackendConfig& cfg);

struct Completion {
  std::string text;
  std::vector<TokenLogprob> token_logprobs;
  // Per position alternatives as reported by the backend (may be empty).
  std::vector<std::vector<TokenLogprob>> top_logprobs;
  std::string finish_reason;

  bool has_logprobs() const { return !token_logprobs.empty(); }
  double cumulative_logprob() const { return sum_logprobs(token_logprobs); }

  bool operator==(const Completion&) const = default;
};

void to_json(json& j, const Completion& v);
void from_json(const json& j, Completion& v);

ReasoningSample to_sample(const Completion& c);

struct CompletionRequest {
  std::string prompt;
  GenerationParams params;
  std::vector<std::string> stop;
  int logprobs = 5;
};

class Backend {
 public:
  virtual ~Backend() = default;
  // Returns up to params.n_samples completions in backend order. Must be safe
  // to call concurrently.
  virtual std::vector<Completion> generate(const CompletionRequest& request) = 0;
  virtual std::string model_name() const = 0;
};

// Content-addressed store of completions. Readers share, writers exclude.
// When backed by a file, every insert is appended as one JSON line.
class ResponseCache {
 public:
  ResponseCache() = default;
  explicit ResponseCache(std::filesystem::path file);

  std::optional<Completion> get(const std::string& key) const;
  void put(const std::string& key, const Completion& completion);
  std::size_t size() const;

 private:
  std::optional<std::filesystem::path> file_;
  mutable std::shared_mutex mutex_;
  std::unordered_map<std::string, std::string> entries_;
};

std::string cache_key(std::string_view model, const CompletionRequest& request, int sample_index);

struct GatewayOptions {
  int max_retries = 3;
  int parallelism_limit = 4;
  std::chrono::milliseconds retry_base_delay{500};
};

struct GatewayStats {
  std::size_t backend_calls = 0;
  std::size_t cache_hits = 0;
  std::size_t retries = 0;
};

// Thrown by sample_n when the backend returns fewer than N samples. Carries
// what was returned so the caller can top up or fail.
class PartialBatch : public Error {
 public:
  PartialBatch(std::size_t expected, std::vector<Completion> received);
  std::size_t expected() const { return expected_; }
  const std::vector<Completion>& received() const { return received_; }

 private:
  std::size_t expected_;
  std::vector<Completion> received_;
};

class Gateway {
 public:
  Gateway(std::shared_ptr<Backend> backend, GatewayOptions options, std::shared_ptr<ResponseCache> cache = nullptr);

  Gateway(const Gateway&) = delete;
  Gateway& operator=(const Gateway&) = delete;

  // Single completion; params.n_samples must be 1.
  Completion complete(std::string_view prompt, const GenerationParams& params,
                      const std::vector<std::string>& stop = {});

  // N independent samples, temperature > 0. Cached per sample index only when
  // params.seed is set.
  std::vector<Completion> sample_n(std::string_view prompt, const GenerationParams& params,
                                   const std::vector<std::string>& stop = {});

  // Greedy one-token continuation. The generated token is matched
  // case-insensitively (leading whitespace stripped) against each option;
  // the matched option receives exp(logprob), all others 0.
  std::map<std::string, double> choice_logprob(std::string_view prompt, const std::vector<std::string>& options);

  struct ChoiceResult {
    std::string matched;
    std::map<std::string, double> probabilities;
  };
  // As choice_logprob, also naming the matched option.
  ChoiceResult choose(std::string_view prompt, const std::vector<std::string>& options);

  std::string model_name() const { return backend_->model_name(); }
  GatewayStats stats() const;

 private:
  std::vector<Completion> call_backend(const CompletionRequest& request);

  std::shared_ptr<Backend> backend_;
  GatewayOptions options_;
  std::shared_ptr<ResponseCache> cache_;
  std::counting_semaphore<1024> slots_;
  std::atomic<std::size_t> backend_calls_{0};
  std::atomic<std::size_t> cache_hits_{0};
  std::atomic<std::size_t> retries_{0};
};

// Builds the backend named by cfg.kind. Relative mock script paths resolve
// against base_dir.
std::shared_ptr<Backend> make_backend(const BackendConfig& cfg, const std::filesystem::path& base_dir = {});
GatewayOptions gateway_options(const BackendConfig& cfg);

}  // namespace seacot
