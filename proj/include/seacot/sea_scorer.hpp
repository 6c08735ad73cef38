#pragma once

// Self-entailment-alignment scoring: token overlap between a reasoning chain
// and its supporting context (question plus chosen answer text), plus the
// model's own entailment probability for the pair. The ranking score is the
// plain sum of the two.

#include <filesystem>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "seacot/core.hpp"
#include "seacot/gateway.hpp"
#include "seacot/templates.hpp"

namespace seacot {

using TokenSet = std::set<std::string>;

const std::vector<std::string_view>& stopwords();
std::string stopword_list_hash();

// Lowercases, splits on runs of non-alphanumeric ASCII (bytes >= 0x80 count
// as word characters), drops stopwords and empties.
TokenSet normalize_tokens(std::string_view text);

// |a ∩ b| / |a ∪ b|; 0 when both are empty.
double iou(const TokenSet& a, const TokenSet& b);

struct NliExemplar {
  std::string premise;
  std::string hypothesis;
  // "entailment" or "contradiction"
  std::string label;
};

struct EntailmentPromptConfig {
  // Rendered exemplar block spliced into the entailment template; empty means
  // the template library's own exemplars.
  std::string few_shot_text;
  std::string yes_token = "yes";
  std::string no_token = "no";

  // Neutral (or any other) labels are rejected with ConfigError.
  static EntailmentPromptConfig from_exemplars(std::span<const NliExemplar> exemplars);
  // JSON lines of {premise, hypothesis, label}.
  static EntailmentPromptConfig load(const std::filesystem::path& path);
};

struct CandidateScore {
  double s_e = 0.0;
  double s_o = 0.0;
  double s_t = 0.0;
};

// Question and the chosen answer's text joined by one space.
std::string support_context(const QAInstance& instance, const Label& answer);

std::string entailment_prompt(std::string_view premise, std::string_view hypothesis, const EntailmentPromptConfig& cfg,
                              const TemplateLibrary& templates);

// p(yes) when the model answers yes, 1 - p(no) when it answers no.
double entailment_score(std::string_view context, std::string_view reasoning, const EntailmentPromptConfig& cfg,
                        Gateway& gateway, const TemplateLibrary& templates);

CandidateScore score_candidate(const QAInstance& instance, const Label& answer, std::string_view reasoning,
                               const EntailmentPromptConfig& cfg, Gateway& gateway, const TemplateLibrary& templates);

// Argmax of s_t; ties go to the lowest index. Requires a non-empty span.
std::size_t select_best(std::span<const CandidateScore> candidates);

// Binds the judge gateway and prompt configuration for repeated scoring.
class SeaScorer {
 public:
  SeaScorer(Gateway& judge, EntailmentPromptConfig cfg, const TemplateLibrary& templates)
      : judge_(&judge), cfg_(std::move(cfg)), templates_(&templates) {}

  CandidateScore score(const QAInstance& instance, const Label& answer, std::string_view reasoning) const {
    return score_candidate(instance, answer, reasoning, cfg_, *judge_, *templates_);
  }

 private:
  Gateway* judge_;
  EntailmentPromptConfig cfg_;
  const TemplateLibrary* templates_;
};

}  // namespace seacot
