#pragma once

#include <string>
#include <vector>

#include "seacot/gateway.hpp"

namespace seacot {

// POSTs to {base_url}/v1/completions (or /v1/chat/completions for the
// "openai-chat" kind). A base_url that already ends in /v1 is not doubled.
class OpenAIBackend : public Backend {
 public:
  explicit OpenAIBackend(BackendConfig cfg);

  std::vector<Completion> generate(const CompletionRequest& request) override;
  std::string model_name() const override { return cfg_.model_name; }

  json build_body(const CompletionRequest& request) const;
  std::string endpoint_path() const;

 private:
  BackendConfig cfg_;
  std::string origin_;
  std::string prefix_;
};

// Response decoding, exposed for tests. Throws MalformedResponse.
std::vector<Completion> parse_completions_response(const json& body);
std::vector<Completion> parse_chat_response(const json& body);

}  // namespace seacot
