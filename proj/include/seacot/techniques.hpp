#pragma once

// The five prompting pipelines: CoT, self-consistency CoT, SEA-CoT, question
// decomposition and self-refine. Each produces a TechniqueOutput for one
// instance. A pipeline invocation is sequential; distinct instances may run
// concurrently over the same Pipelines object.

#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "seacot/answer.hpp"
#include "seacot/core.hpp"
#include "seacot/gateway.hpp"
#include "seacot/sea_scorer.hpp"
#include "seacot/templates.hpp"

namespace seacot {

struct PipelineConfig {
  GenerationParams greedy = GenerationParams::greedy(256);
  GenerationParams sampling = GenerationParams::sampling();
  int max_rounds = 3;
  // Few-shot exemplars per prompt; unset uses every exemplar in the template.
  std::optional<int> shots;
  // Zero-shot CoT: no exemplars, "Let's think step by step." appended.
  bool zero_shot = false;
  std::string stop_phrase = "Stop refining the answer.";
  int max_subquestions = 8;
};

struct VoteResult {
  // Labels sharing the top count, in label order.
  std::vector<Label> winners;
  std::map<Label, std::size_t> counts;
};

// Samples without a parsed answer are not counted. Throws NoParseableSamples.
VoteResult majority_vote(std::span<const ReasoningSample> samples);

// Breaks ties toward the winner owning the highest single-chain cumulative
// logprob; equal logprobs fall to the label whose chain was sampled first.
Label resolve_majority(std::span<const ReasoningSample> samples, const VoteResult& vote);

// Index of the chain with the highest cumulative logprob among `candidates`
// (first on ties).
std::size_t select_max_logprob(std::span<const ReasoningSample> samples, std::span<const std::size_t> candidates);

// Sub-questions from a numbered / bulleted list ("1. ...", "- ...",
// "Sub-question 2: ...").
std::vector<std::string> parse_subquestions(std::string_view text);

class Pipelines {
 public:
  Pipelines(Gateway& llm, const TemplateLibrary& templates, PipelineConfig cfg = {}, const SeaScorer* scorer = nullptr);

  TechniqueOutput run(Technique technique, const QAInstance& instance) const;

  TechniqueOutput run_cot(const QAInstance& instance) const;
  TechniqueOutput run_sc_cot(const QAInstance& instance) const;
  TechniqueOutput run_sea_cot(const QAInstance& instance) const;
  TechniqueOutput run_qd(const QAInstance& instance) const;
  TechniqueOutput run_self_refine(const QAInstance& instance) const;

  // Greedy answer step conditioned on a (possibly modified) explanation:
  // the QD conclusion step for QD, the explanation-to-answer prompt otherwise.
  std::optional<Label> answer_with_explanation(const QAInstance& instance, Technique technique,
                                               std::string_view explanation) const;

  std::string cot_prompt(const QAInstance& instance, std::string_view template_name = "cot") const;
  const PipelineConfig& config() const { return cfg_; }
  Gateway& gateway() const { return *llm_; }

 private:
  std::vector<ReasoningSample> sample_chains(const QAInstance& instance) const;
  TechniqueOutput choose_by_logprob(Technique technique, const QAInstance& instance,
                                    std::vector<ReasoningSample> samples, const Label& answer,
                                    const std::vector<std::size_t>& candidates) const;
  std::optional<int> shots_for(std::string_view name) const;
  std::string greedy_text(const std::string& prompt, std::string_view template_name) const;
  std::optional<Label> parse_answer_step(const QAInstance& instance, std::string_view completion) const;

  Gateway* llm_;
  const TemplateLibrary* templates_;
  PipelineConfig cfg_;
  const SeaScorer* scorer_;
};

}  // namespace seacot
