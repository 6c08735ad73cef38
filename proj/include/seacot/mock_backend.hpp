#pragma once

// Deterministic scripted backend. A script is a JSON document:
//
//   {
//     "rules": [
//       {"contains": ["Premise:", "sunlight"], "responses": [{"text": "yes", "p": 0.8}]},
//       {"regex": "Q: Which .* grows", "cycle": true,
//        "responses": [{"text": "... answer is (B).", "logprob": -3.2}]}
//     ],
//     "default": [{"text": "The answer is (A)."}]
//   }
//
// The first rule whose conditions all hold for the prompt answers it. Sample i
// of a request is responses[i] (or responses[i % size] when "cycle" is set);
// non-cycling rules return fewer than n samples when the list is short.
// A response carries either explicit "tokens" ([[token, logprob], ...]), a
// single-token "logprob" or "p", or nothing (logprob 0). "no_logprobs": true
// omits logprobs; "error": "transport" | "rate_limited" | "malformed" raises.

#include <atomic>
#include <filesystem>
#include <mutex>
#include <optional>
#include <regex>
#include <string>
#include <vector>

#include "seacot/gateway.hpp"

namespace seacot {

struct MockResponse {
  std::string text;
  std::vector<TokenLogprob> tokens;
  std::string finish_reason = "stop";
  std::string error;
};

struct MockRule {
  std::vector<std::string> contains;
  std::string regex_source;
  std::optional<std::regex> regex;
  std::vector<MockResponse> responses;
  bool cycle = false;

  bool matches(std::string_view prompt) const;
};

class MockScript {
 public:
  static MockScript from_json(const json& doc);
  static MockScript load(const std::filesystem::path& path);

  const MockRule* match(std::string_view prompt) const;
  const std::vector<MockRule>& rules() const { return rules_; }

 private:
  std::vector<MockRule> rules_;
  std::optional<MockRule> default_;
};

class MockBackend : public Backend {
 public:
  MockBackend(MockScript script, std::string model_name = "mock");

  std::vector<Completion> generate(const CompletionRequest& request) override;
  std::string model_name() const override { return model_name_; }

  // Artificial per-call latency, used to observe concurrency.
  void set_latency(std::chrono::milliseconds latency) { latency_ = latency; }

  std::size_t calls() const { return calls_.load(); }
  std::size_t max_in_flight() const { return max_in_flight_.load(); }
  std::vector<std::string> prompts() const;

 private:
  MockScript script_;
  std::string model_name_;
  std::chrono::milliseconds latency_{0};
  std::atomic<std::size_t> calls_{0};
  std::atomic<std::size_t> in_flight_{0};
  std::atomic<std::size_t> max_in_flight_{0};
  mutable std::mutex log_mutex_;
  std::vector<std::string> prompt_log_;
};

}  // namespace seacot
