#include "seacot/openai_backend.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>

#include "httplib.h"

namespace seacot {

namespace {

// Splits "https://host:port/some/prefix" into origin and path prefix.
std::pair<std::string, std::string> split_url(const std::string& url) {
  const auto scheme_end = url.find("://");
  const auto host_begin = scheme_end == std::string::npos ? 0 : scheme_end + 3;
  const auto path_begin = url.find('/', host_begin);
  if (path_begin == std::string::npos) return {url, ""};
  std::string prefix = url.substr(path_begin);
  while (!prefix.empty() && prefix.back() == '/') prefix.pop_back();
  return {url.substr(0, path_begin), prefix};
}

void sort_by_index(std::vector<std::pair<int, Completion>>& indexed) {
  std::stable_sort(indexed.begin(), indexed.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
}

std::vector<Completion> strip_index(std::vector<std::pair<int, Completion>> indexed) {
  sort_by_index(indexed);
  std::vector<Completion> out;
  out.reserve(indexed.size());
  for (auto& [_, c] : indexed) out.push_back(std::move(c));
  return out;
}

}  // namespace

OpenAIBackend::OpenAIBackend(BackendConfig cfg) : cfg_(std::move(cfg)) {
  std::tie(origin_, prefix_) = split_url(cfg_.base_url);
}

std::string OpenAIBackend::endpoint_path() const {
  const std::string tail = cfg_.kind == "openai-chat" ? "/chat/completions" : "/completions";
  const bool has_v1 = prefix_.size() >= 3 && prefix_.compare(prefix_.size() - 3, 3, "/v1") == 0;
  return prefix_ + (has_v1 ? "" : "/v1") + tail;
}

json OpenAIBackend::build_body(const CompletionRequest& request) const {
  const auto& p = request.params;
  json body{{"model", cfg_.model_name}, {"max_tokens", p.max_tokens}, {"temperature", p.temperature}, {"n", p.n_samples}};
  if (cfg_.kind == "openai-chat") {
    body["messages"] = json::array({json{{"role", "user"}, {"content", request.prompt}}});
    body["logprobs"] = true;
    body["top_logprobs"] = request.logprobs;
  } else {
    body["prompt"] = request.prompt;
    body["logprobs"] = request.logprobs;
  }
  if (!request.stop.empty()) body["stop"] = request.stop;
  if (cfg_.send_top_k && !p.is_greedy()) body["top_k"] = p.top_k;
  if (p.seed) body["seed"] = *p.seed;
  return body;
}

std::vector<Completion> OpenAIBackend::generate(const CompletionRequest& request) {
  httplib::Client client(origin_);
  const auto timeout = std::chrono::duration<double>(cfg_.timeout_s);
  const auto secs = static_cast<time_t>(cfg_.timeout_s);
  const auto usecs = static_cast<time_t>((timeout.count() - static_cast<double>(secs)) * 1e6);
  client.set_connection_timeout(secs, usecs);
  client.set_read_timeout(secs, usecs);
  client.set_write_timeout(secs, usecs);

  httplib::Headers headers;
  if (!cfg_.api_key_env.empty()) {
    const char* key = std::getenv(cfg_.api_key_env.c_str());
    if (key == nullptr || *key == '\0') throw ConfigError("environment variable " + cfg_.api_key_env + " is not set");
    headers.emplace("Authorization", std::string("Bearer ") + key);
  }

  auto res = client.Post(endpoint_path(), headers, build_body(request).dump(), "application/json");
  if (!res) throw TransportError("POST " + cfg_.base_url + endpoint_path() + " failed: " + httplib::to_string(res.error()));
  if (res->status == 429) throw RateLimited("HTTP 429 from " + cfg_.base_url);
  if (res->status >= 500) throw TransportError("HTTP " + std::to_string(res->status) + " from " + cfg_.base_url);
  if (res->status != 200) throw RequestRejected(res->status, res->body);

  json body;
  try {
    body = json::parse(res->body);
  } catch (const json::parse_error& e) {
    throw MalformedResponse(std::string("response is not JSON: ") + e.what());
  }
  return cfg_.kind == "openai-chat" ? parse_chat_response(body) : parse_completions_response(body);
}

std::vector<Completion> parse_completions_response(const json& body) {
  try {
    std::vector<std::pair<int, Completion>> indexed;
    int position = 0;
    for (const auto& choice : body.at("choices")) {
      Completion c;
      c.text = choice.at("text").get<std::string>();
      if (auto fr = choice.find("finish_reason"); fr != choice.end() && fr->is_string()) c.finish_reason = *fr;
      if (auto lp = choice.find("logprobs"); lp != choice.end() && lp->is_object()) {
        const auto& tokens = lp->at("tokens");
        const auto& values = lp->at("token_logprobs");
        if (tokens.size() != values.size()) throw MalformedResponse("tokens and token_logprobs differ in length");
        bool complete = true;
        for (std::size_t i = 0; i < tokens.size(); ++i) {
          if (values[i].is_null()) {
            complete = false;
            break;
          }
          c.token_logprobs.push_back({tokens[i].get<std::string>(), values[i].get<double>()});
        }
        if (!complete) c.token_logprobs.clear();
        if (auto top = lp->find("top_logprobs"); top != lp->end() && top->is_array()) {
          for (const auto& position_map : *top) {
            std::vector<TokenLogprob> alts;
            if (position_map.is_object())
              for (const auto& [tok, v] : position_map.items()) alts.push_back({tok, v.get<double>()});
            std::sort(alts.begin(), alts.end(), [](const auto& a, const auto& b) { return a.logprob > b.logprob; });
            c.top_logprobs.push_back(std::move(alts));
          }
        }
      }
      indexed.emplace_back(choice.value("index", position), std::move(c));
      ++position;
    }
    return strip_index(std::move(indexed));
  } catch (const json::exception& e) {
    throw MalformedResponse(std::string("unexpected completions payload: ") + e.what());
  }
}

std::vector<Completion> parse_chat_response(const json& body) {
  try {
    std::vector<std::pair<int, Completion>> indexed;
    int position = 0;
    for (const auto& choice : body.at("choices")) {
      Completion c;
      const auto& content = choice.at("message").at("content");
      c.text = content.is_string() ? content.get<std::string>() : std::string{};
      if (auto fr = choice.find("finish_reason"); fr != choice.end() && fr->is_string()) c.finish_reason = *fr;
      if (auto lp = choice.find("logprobs"); lp != choice.end() && lp->is_object()) {
        if (auto items = lp->find("content"); items != lp->end() && items->is_array()) {
          for (const auto& item : *items) {
            c.token_logprobs.push_back({item.at("token").get<std::string>(), item.at("logprob").get<double>()});
            std::vector<TokenLogprob> alts;
            for (const auto& alt : item.value("top_logprobs", json::array()))
              alts.push_back({alt.at("token").get<std::string>(), alt.at("logprob").get<double>()});
            c.top_logprobs.push_back(std::move(alts));
          }
        }
      }
      indexed.emplace_back(choice.value("index", position), std::move(c));
      ++position;
    }
    return strip_index(std::move(indexed));
  } catch (const json::exception& e) {
    throw MalformedResponse(std::string("unexpected chat payload: ") + e.what());
  }
}

}  // namespace seacot
