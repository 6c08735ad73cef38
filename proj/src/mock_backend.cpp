#include "seacot/mock_backend.hpp"

#include <cmath>
#include <thread>

namespace seacot {

namespace {

MockResponse parse_response(const json& j) {
  MockResponse r;
  if (j.is_string()) {
    r.text = j.get<std::string>();
    r.tokens = {{r.text, 0.0}};
    return r;
  }
  r.text = j.value("text", std::string{});
  r.finish_reason = j.value("finish_reason", std::string("stop"));
  r.error = j.value("error", std::string{});
  if (j.value("no_logprobs", false)) return r;
  if (auto it = j.find("tokens"); it != j.end()) {
    r.tokens = it->get<std::vector<TokenLogprob>>();
  } else if (auto lp = j.find("logprob"); lp != j.end()) {
    r.tokens = {{r.text, lp->get<double>()}};
  } else if (auto p = j.find("p"); p != j.end()) {
    const double prob = p->get<double>();
    if (!(prob > 0.0 && prob <= 1.0)) throw ConfigError("mock response probability must be in (0, 1]");
    r.tokens = {{r.text, std::log(prob)}};
  } else {
    r.tokens = {{r.text, 0.0}};
  }
  return r;
}

MockRule parse_rule(const json& j) {
  MockRule rule;
  if (auto it = j.find("contains"); it != j.end()) {
    if (it->is_string())
      rule.contains.push_back(it->get<std::string>());
    else
      rule.contains = it->get<std::vector<std::string>>();
  }
  if (auto it = j.find("regex"); it != j.end()) {
    rule.regex_source = it->get<std::string>();
    try {
      rule.regex.emplace(rule.regex_source, std::regex::ECMAScript);
    } catch (const std::regex_error& e) {
      throw ConfigError("bad mock regex '" + rule.regex_source + "': " + e.what());
    }
  }
  rule.cycle = j.value("cycle", false);
  for (const auto& r : j.at("responses")) rule.responses.push_back(parse_response(r));
  if (rule.responses.empty()) throw ConfigError("mock rule has no responses");
  return rule;
}

}  // namespace

bool MockRule::matches(std::string_view prompt) const {
  for (const auto& needle : contains)
    if (prompt.find(needle) == std::string_view::npos) return false;
  if (regex && !std::regex_search(prompt.begin(), prompt.end(), *regex)) return false;
  return true;
}

MockScript MockScript::from_json(const json& doc) {
  MockScript script;
  try {
    for (const auto& r : doc.value("rules", json::array())) script.rules_.push_back(parse_rule(r));
    if (auto it = doc.find("default"); it != doc.end()) {
      MockRule fallback;
      fallback.cycle = true;
      for (const auto& r : *it) fallback.responses.push_back(parse_response(r));
      if (!fallback.responses.empty()) script.default_ = std::move(fallback);
    }
  } catch (const json::exception& e) {
    throw ConfigError(std::string("malformed mock script: ") + e.what());
  }
  return script;
}

MockScript MockScript::load(const std::filesystem::path& path) {
  try {
    return from_json(read_json_file(path));
  } catch (const ParseError& e) {
    throw ConfigError(std::string("cannot load mock script: ") + e.what());
  }
}

const MockRule* MockScript::match(std::string_view prompt) const {
  for (const auto& rule : rules_)
    if (rule.matches(prompt)) return &rule;
  return default_ ? &*default_ : nullptr;
}

MockBackend::MockBackend(MockScript script, std::string model_name)
    : script_(std::move(script)), model_name_(std::move(model_name)) {}

std::vector<std::string> MockBackend::prompts() const {
  std::lock_guard lock(log_mutex_);
  return prompt_log_;
}

std::vector<Completion> MockBackend::generate(const CompletionRequest& request) {
  ++calls_;
  const auto now = ++in_flight_;
  auto seen = max_in_flight_.load();
  while (now > seen && !max_in_flight_.compare_exchange_weak(seen, now)) {
  }
  struct Leave {
    std::atomic<std::size_t>& n;
    ~Leave() { --n; }
  } leave{in_flight_};
  {
    std::lock_guard lock(log_mutex_);
    prompt_log_.push_back(request.prompt);
  }
  if (latency_.count() > 0) std::this_thread::sleep_for(latency_);

  const MockRule* rule = script_.match(request.prompt);
  if (rule == nullptr) throw MalformedResponse("mock: no rule matches prompt");

  std::vector<Completion> out;
  const auto n = static_cast<std::size_t>(std::max(1, request.params.n_samples));
  for (std::size_t i = 0; i < n; ++i) {
    if (i >= rule->responses.size() && !rule->cycle) break;
    const auto& r = rule->responses[i % rule->responses.size()];
    if (r.error == "transport") throw TransportError("mock: scripted transport error");
    if (r.error == "rate_limited") throw RateLimited("mock: scripted rate limit");
    if (r.error == "malformed") throw MalformedResponse("mock: scripted malformed response");
    Completion c;
    c.text = r.text;
    c.token_logprobs = r.tokens;
    c.finish_reason = r.finish_reason;
    out.push_back(std::move(c));
  }
  return out;
}

}  // namespace seacot
