#include "seacot/sea_scorer.hpp"

#include <algorithm>
#include <cctype>
#include <stdexcept>
#include <unordered_set>

#include "seacot/hashing.hpp"

namespace seacot {

namespace {

const std::unordered_set<std::string_view>& stopword_set() {
  static const std::unordered_set<std::string_view> set(stopwords().begin(), stopwords().end());
  return set;
}

bool is_word_byte(unsigned char c) { return std::isalnum(c) || c >= 0x80; }

}  // namespace

std::string stopword_list_hash() {
  std::string joined;
  for (auto w : stopwords()) {
    joined += w;
    joined += '\n';
  }
  return sha256_hex(joined);
}

TokenSet normalize_tokens(std::string_view text) {
  TokenSet out;
  std::string word;
  auto flush = [&] {
    if (!word.empty() && !stopword_set().contains(word)) out.insert(word);
    word.clear();
  };
  for (unsigned char c : text) {
    if (is_word_byte(c)) {
      word.push_back(static_cast<char>(std::tolower(c)));
    } else {
      flush();
    }
  }
  flush();
  return out;
}

double iou(const TokenSet& a, const TokenSet& b) {
  if (a.empty() && b.empty()) return 0.0;
  std::size_t shared = 0;
  for (const auto& t : a) shared += b.count(t);
  const std::size_t united = a.size() + b.size() - shared;
  return static_cast<double>(shared) / static_cast<double>(united);
}

EntailmentPromptConfig EntailmentPromptConfig::from_exemplars(std::span<const NliExemplar> exemplars) {
  EntailmentPromptConfig cfg;
  for (const auto& ex : exemplars) {
    std::string verdict;
    if (ex.label == "entailment") {
      verdict = cfg.yes_token;
    } else if (ex.label == "contradiction") {
      verdict = cfg.no_token;
    } else {
      throw ConfigError("NLI exemplars must be entailment or contradiction, got '" + ex.label + "'");
    }
    cfg.few_shot_text += "Premise: " + ex.premise + "\nHypothesis: " + ex.hypothesis + "\nAnswer: " + verdict + "\n\n";
  }
  return cfg;
}

EntailmentPromptConfig EntailmentPromptConfig::load(const std::filesystem::path& path) {
  std::vector<NliExemplar> exemplars;
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open NLI exemplar file " + path.string());
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      const auto j = json::parse(line);
      exemplars.push_back({j.at("premise").get<std::string>(), j.at("hypothesis").get<std::string>(),
                           j.at("label").get<std::string>()});
    } catch (const json::exception& e) {
      throw ParseError(path.string(), lineno, e.what());
    }
  }
  return from_exemplars(exemplars);
}

std::string support_context(const QAInstance& instance, const Label& answer) {
  const Choice* c = instance.find_choice(answer);
  if (c == nullptr) throw std::invalid_argument("answer '" + answer + "' is not a label of " + instance.id);
  return instance.question + " " + c->text;
}

std::string entailment_prompt(std::string_view premise, std::string_view hypothesis, const EntailmentPromptConfig& cfg,
                              const TemplateLibrary& templates) {
  TemplateVars vars{{"premise", std::string(premise)}, {"hypothesis", std::string(hypothesis)}};
  if (!cfg.few_shot_text.empty()) vars["examples"] = cfg.few_shot_text;
  return templates.render("entailment", std::move(vars));
}

double entailment_score(std::string_view context, std::string_view reasoning, const EntailmentPromptConfig& cfg,
                        Gateway& gateway, const TemplateLibrary& templates) {
  const auto decision =
      gateway.choose(entailment_prompt(context, reasoning, cfg, templates), {cfg.yes_token, cfg.no_token});
  const double p = decision.probabilities.at(decision.matched);
  // Mass on the rest of the vocabulary is ignored, not renormalised.
  const double s_e = decision.matched == cfg.yes_token ? p : 1.0 - p;
  return std::clamp(s_e, 0.0, 1.0);
}

CandidateScore score_candidate(const QAInstance& instance, const Label& answer, std::string_view reasoning,
                               const EntailmentPromptConfig& cfg, Gateway& gateway, const TemplateLibrary& templates) {
  const std::string context = support_context(instance, answer);
  CandidateScore s;
  s.s_o = iou(normalize_tokens(reasoning), normalize_tokens(context));
  s.s_e = entailment_score(context, reasoning, cfg, gateway, templates);
  s.s_t = s.s_e + s.s_o;
  return s;
}

std::size_t select_best(std::span<const CandidateScore> candidates) {
  if (candidates.empty()) throw std::invalid_argument("select_best() needs at least one candidate");
  std::size_t best = 0;
  for (std::size_t i = 1; i < candidates.size(); ++i)
    if (candidates[i].s_t > candidates[best].s_t) best = i;
  return best;
}

}  // namespace seacot
