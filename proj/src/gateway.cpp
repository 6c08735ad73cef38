#include "seacot/gateway.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <mutex>
#include <stdexcept>
#include <thread>

#include <spdlog/spdlog.h>

#include "seacot/hashing.hpp"
#include "seacot/mock_backend.hpp"
#include "seacot/openai_backend.hpp"

namespace seacot {

void to_json(json& j, const BackendConfig& v) {
  j = json{{"kind", v.kind},
           {"base_url", v.base_url},
           {"model_name", v.model_name},
           {"api_key_env", v.api_key_env},
           {"timeout_s", v.timeout_s},
           {"max_retries", v.max_retries},
           {"parallelism_limit", v.parallelism_limit},
           {"retry_base_delay_ms", v.retry_base_delay_ms},
           {"send_top_k", v.send_top_k}};
  if (!v.script.empty()) j["script"] = v.script;
}

void from_json(const json& j, BackendConfig& v) {
  BackendConfig d;
  v.kind = j.value("kind", d.kind);
  v.base_url = j.value("base_url", d.base_url);
  v.model_name = j.value("model_name", d.model_name);
  v.api_key_env = j.value("api_key_env", d.api_key_env);
  v.timeout_s = j.value("timeout_s", d.timeout_s);
  v.max_retries = j.value("max_retries", d.max_retries);
  v.parallelism_limit = j.value("parallelism_limit", d.parallelism_limit);
  v.retry_base_delay_ms = j.value("retry_base_delay_ms", d.retry_base_delay_ms);
  v.send_top_k = j.value("send_top_k", d.send_top_k);
  v.script = j.value("script", d.script);
}

void validate(const BackendConfig& cfg) {
  if (cfg.kind != "openai" && cfg.kind != "openai-chat" && cfg.kind != "mock")
    throw ConfigError("unknown backend kind '" + cfg.kind + "'");
  if (cfg.model_name.empty()) throw ConfigError("backend config is missing model_name");
  if (cfg.kind == "mock") {
    if (cfg.script.empty()) throw ConfigError("mock backend '" + cfg.model_name + "' has no script");
  } else if (cfg.base_url.empty()) {
    throw ConfigError("backend '" + cfg.model_name + "' is missing base_url");
  }
  if (cfg.parallelism_limit < 1 || cfg.parallelism_limit > 1024)
    throw ConfigError("parallelism_limit must be in [1, 1024]");
  if (cfg.max_retries < 0) throw ConfigError("max_retries must be non-negative");
  if (cfg.timeout_s <= 0) throw ConfigError("timeout_s must be positive");
  if (!cfg.api_key_env.empty()) {
    const char* value = std::getenv(cfg.api_key_env.c_str());
    if (value == nullptr || *value == '\0')
      throw ConfigError("environment variable " + cfg.api_key_env + " (api_key_env of backend '" + cfg.model_name +
                        "') is not set");
  }
}

void to_json(json& j, const Completion& v) {
  j = json{{"text", v.text}, {"token_logprobs", v.token_logprobs}, {"finish_reason", v.finish_reason}};
  if (!v.top_logprobs.empty()) j["top_logprobs"] = v.top_logprobs;
}

void from_json(const json& j, Completion& v) {
  j.at("text").get_to(v.text);
  v.token_logprobs = j.value("token_logprobs", std::vector<TokenLogprob>{});
  v.top_logprobs = j.value("top_logprobs", std::vector<std::vector<TokenLogprob>>{});
  v.finish_reason = j.value("finish_reason", std::string{});
}

ReasoningSample to_sample(const Completion& c) {
  ReasoningSample s;
  s.text = c.text;
  s.token_logprobs = c.token_logprobs;
  s.cumulative_logprob = c.cumulative_logprob();
  return s;
}

ResponseCache::ResponseCache(std::filesystem::path file) : file_(std::move(file)) {
  std::ifstream in(*file_);
  if (!in) return;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    try {
      auto entry = json::parse(line);
      entries_[entry.at("key").get<std::string>()] = entry.at("completion").dump();
    } catch (const json::exception&) {
      // A torn final line from an interrupted run; later entries re-fill it.
      spdlog::warn("skipping unreadable cache line in {}", file_->string());
    }
  }
}

std::optional<Completion> ResponseCache::get(const std::string& key) const {
  std::shared_lock lock(mutex_);
  auto it = entries_.find(key);
  if (it == entries_.end()) return std::nullopt;
  return json::parse(it->second).get<Completion>();
}

void ResponseCache::put(const std::string& key, const Completion& completion) {
  const std::string body = json(completion).dump();
  std::unique_lock lock(mutex_);
  if (!entries_.emplace(key, body).second) return;
  if (file_) {
    std::ofstream out(*file_, std::ios::app | std::ios::binary);
    out << "{\"key\":" << json(key).dump() << ",\"completion\":" << body << "}\n";
  }
}

std::size_t ResponseCache::size() const {
  std::shared_lock lock(mutex_);
  return entries_.size();
}

std::string cache_key(std::string_view model, const CompletionRequest& request, int sample_index) {
  json k{{"model", model},
         {"prompt", request.prompt},
         {"temperature", request.params.temperature},
         {"top_k", request.params.top_k},
         {"max_tokens", request.params.max_tokens},
         {"n", request.params.n_samples},
         {"stop", request.stop},
         {"logprobs", request.logprobs},
         {"sample_index", sample_index}};
  if (request.params.seed) k["seed"] = *request.params.seed;
  return sha256_hex(k.dump());
}

PartialBatch::PartialBatch(std::size_t expected, std::vector<Completion> received)
    : Error("backend returned " + std::to_string(received.size()) + " of " + std::to_string(expected) + " samples"),
      expected_(expected),
      received_(std::move(received)) {}

Gateway::Gateway(std::shared_ptr<Backend> backend, GatewayOptions options, std::shared_ptr<ResponseCache> cache)
    : backend_(std::move(backend)),
      options_(options),
      cache_(std::move(cache)),
      slots_(std::clamp(options.parallelism_limit, 1, 1024)) {
  if (!backend_) throw std::invalid_argument("Gateway requires a backend");
}

std::vector<Completion> Gateway::call_backend(const CompletionRequest& request) {
  for (int attempt = 0;; ++attempt) {
    try {
      slots_.acquire();
      struct Release {
        std::counting_semaphore<1024>& s;
        ~Release() { s.release(); }
      } release{slots_};
      ++backend_calls_;
      return backend_->generate(request);
    } catch (const TransportError& e) {
      if (attempt >= options_.max_retries) throw;
      ++retries_;
      const auto delay = options_.retry_base_delay * (1LL << std::min(attempt, 20));
      spdlog::debug("retrying after {} ({} ms): {}", attempt + 1, delay.count(), e.what());
      std::this_thread::sleep_for(delay);
    }
  }
}

Completion Gateway::complete(std::string_view prompt, const GenerationParams& params,
                             const std::vector<std::string>& stop) {
  if (params.n_samples != 1) throw std::invalid_argument("complete() requires n_samples = 1");
  CompletionRequest request{std::string(prompt), params, stop};
  const std::string key = cache_key(backend_->model_name(), request, 0);
  if (cache_) {
    if (auto hit = cache_->get(key)) {
      ++cache_hits_;
      return *hit;
    }
  }
  auto results = call_backend(request);
  if (results.empty()) throw MalformedResponse("backend returned no completions");
  if (cache_) cache_->put(key, results.front());
  return results.front();
}

std::vector<Completion> Gateway::sample_n(std::string_view prompt, const GenerationParams& params,
                                          const std::vector<std::string>& stop) {
  if (params.n_samples < 1) throw std::invalid_argument("sample_n() requires n_samples >= 1");
  if (params.temperature <= 0.0) throw std::invalid_argument("sample_n() requires temperature > 0");
  CompletionRequest request{std::string(prompt), params, stop};
  const auto n = static_cast<std::size_t>(params.n_samples);
  const bool cacheable = cache_ && params.seed.has_value();

  if (cacheable) {
    std::vector<Completion> hits;
    for (std::size_t i = 0; i < n; ++i) {
      auto hit = cache_->get(cache_key(backend_->model_name(), request, static_cast<int>(i)));
      if (!hit) break;
      hits.push_back(std::move(*hit));
    }
    if (hits.size() == n) {
      cache_hits_ += n;
      return hits;
    }
  }

  auto results = call_backend(request);
  if (results.size() > n) results.resize(n);
  if (cacheable) {
    for (std::size_t i = 0; i < results.size(); ++i)
      cache_->put(cache_key(backend_->model_name(), request, static_cast<int>(i)), results[i]);
  }
  if (results.size() < n) throw PartialBatch(n, std::move(results));
  return results;
}

namespace {

std::string normalize_option_token(std::string_view s) {
  std::size_t b = 0;
  while (b < s.size() && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  std::size_t e = s.size();
  while (e > b && (std::isspace(static_cast<unsigned char>(s[e - 1])) || std::ispunct(static_cast<unsigned char>(s[e - 1]))))
    --e;
  std::string out(s.substr(b, e - b));
  std::transform(out.begin(), out.end(), out.begin(), [](unsigned char c) { return std::tolower(c); });
  return out;
}

}  // namespace

std::map<std::string, double> Gateway::choice_logprob(std::string_view prompt, const std::vector<std::string>& options) {
  return choose(prompt, options).probabilities;
}

Gateway::ChoiceResult Gateway::choose(std::string_view prompt, const std::vector<std::string>& options) {
  if (options.empty()) throw std::invalid_argument("choice_logprob() requires at least one option");
  const Completion c = complete(prompt, GenerationParams::greedy(1));
  if (!c.has_logprobs()) throw MissingLogprobs("backend '" + model_name() + "' returned no token logprobs");

  const auto& first = c.token_logprobs.front();
  const std::string generated = normalize_option_token(first.token);
  ChoiceResult out;
  bool matched = false;
  for (const auto& option : options) {
    const bool hit = !matched && !generated.empty() && generated == normalize_option_token(option);
    out.probabilities[option] = hit ? std::exp(first.logprob) : 0.0;
    if (hit) {
      out.matched = option;
      matched = true;
    }
  }
  if (!matched) throw NoOptionMatched("generated token '" + first.token + "' matches no option");
  return out;
}

GatewayStats Gateway::stats() const { return {backend_calls_.load(), cache_hits_.load(), retries_.load()}; }

std::shared_ptr<Backend> make_backend(const BackendConfig& cfg, const std::filesystem::path& base_dir) {
  validate(cfg);
  if (cfg.kind == "mock") {
    std::filesystem::path script = cfg.script;
    if (script.is_relative() && !base_dir.empty()) script = base_dir / script;
    return std::make_shared<MockBackend>(MockScript::load(script), cfg.model_name);
  }
  return std::make_shared<OpenAIBackend>(cfg);
}

GatewayOptions gateway_options(const BackendConfig& cfg) {
  GatewayOptions o;
  o.max_retries = cfg.max_retries;
  o.parallelism_limit = cfg.parallelism_limit;
  o.retry_base_delay = std::chrono::milliseconds(cfg.retry_base_delay_ms);
  return o;
}

}  // namespace seacot
