#pragma once

// Shared domain types. Everything here is an immutable-by-convention value
// type, safe to copy across threads.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace seacot {

using Label = std::string;

struct Choice {
  Label label;
  std::string text;

  bool operator==(const Choice&) const = default;
};

// One multiple-choice question. Labels are canonical: A..H for lettered sets,
// "yes"/"no" for binary sets.
struct QAInstance {
  std::string id;
  std::string question;
  std::vector<Choice> choices;
  Label gold;

  bool has_label(std::string_view label) const;
  const Choice* find_choice(std::string_view label) const;
  std::vector<Label> labels() const;
  bool is_binary() const;

  bool operator==(const QAInstance&) const = default;
};

struct GenerationParams {
  double temperature = 0.0;
  int top_k = 50;
  int max_tokens = 256;
  int n_samples = 1;
  std::optional<std::int64_t> seed;

  bool is_greedy() const { return temperature == 0.0; }

  static GenerationParams greedy(int max_tokens = 256);
  // Self-consistency sampling defaults: N=10, temperature 1.0, top-k 50.
  static GenerationParams sampling(int n_samples = 10, double temperature = 1.0, int top_k = 50,
                                   int max_tokens = 256);

  bool operator==(const GenerationParams&) const = default;
};

struct TokenLogprob {
  std::string token;
  double logprob = 0.0;

  bool operator==(const TokenLogprob&) const = default;
};

double sum_logprobs(std::span<const TokenLogprob> tokens);

struct ReasoningSample {
  std::string text;
  std::optional<Label> answer;
  std::vector<TokenLogprob> token_logprobs;
  double cumulative_logprob = 0.0;

  bool has_logprobs() const { return !token_logprobs.empty(); }

  bool operator==(const ReasoningSample&) const = default;
};

enum class Technique { CoT, SCCoT, SEACoT, QD, SR };

std::string_view to_string(Technique t);
std::optional<Technique> parse_technique(std::string_view name);
// Short file-system friendly slug ("cot", "sc-cot", ...).
std::string_view slug(Technique t);

// Per-candidate SEA scores recorded for audit.
struct CandidateTrace {
  std::size_t sample_index = 0;
  double s_e = 0.0;
  double s_o = 0.0;
  double s_t = 0.0;
  double cumulative_logprob = 0.0;

  bool operator==(const CandidateTrace&) const = default;
};

struct SubQA {
  std::string question;
  std::string answer;

  bool operator==(const SubQA&) const = default;
};

struct QDTrace {
  std::vector<SubQA> steps;
  Label final_answer;

  // "Sub-question 1: ...\nAnswer 1: ..." transcript used as the explanation.
  std::string format() const;
  // Sub-answers only, joined by newlines.
  std::string sub_answers() const;

  bool operator==(const QDTrace&) const = default;
};

struct SRRound {
  std::string output;
  std::string feedback;
  std::optional<std::string> refined_output;

  bool operator==(const SRRound&) const = default;
};

struct SRTrace {
  std::vector<SRRound> rounds;
  bool stopped_early = false;

  bool operator==(const SRTrace&) const = default;
};

struct TechniqueOutput {
  Technique technique = Technique::CoT;
  std::string instance_id;
  std::string explanation;
  Label answer;
  std::vector<ReasoningSample> samples;
  std::optional<std::size_t> chosen_sample;
  // "greedy", "max-logprob", "random", "sea", "pipeline"
  std::string selection_rule;
  std::optional<std::vector<CandidateTrace>> selection_trace;
  std::optional<QDTrace> qd_trace;
  std::optional<SRTrace> sr_trace;

  bool operator==(const TechniqueOutput&) const = default;
};

enum class PerturbationKind { Paraphrase, Mistake, Counterfactual };
enum class Validity { Pending, Accepted, Rejected };

std::string_view to_string(PerturbationKind k);
std::optional<PerturbationKind> parse_perturbation_kind(std::string_view name);
std::string_view to_string(Validity v);
std::optional<Validity> parse_validity(std::string_view name);

struct PerturbationRecord {
  PerturbationKind kind = PerturbationKind::Paraphrase;
  std::string instance_id;
  Technique technique = Technique::CoT;
  std::string original_expl;
  Label original_answer;
  Label gold;
  std::optional<std::string> modified_expl;
  std::optional<std::string> cf_question;
  std::optional<Label> cf_gold;
  std::optional<std::string> edit;
  // "modifier" or "diff"
  std::optional<std::string> edit_source;
  Validity valid = Validity::Pending;
  std::optional<std::string> reason;
  // Answer from the validator backend (modifier model) given the modified explanation.
  std::optional<Label> validator_answer;
  // Evaluated LLM's greedy answer given the modified explanation, or the
  // technique's answer on the counterfactual question.
  std::optional<Label> eval_answer;
  // e' for counterfactual records (sub-answers only for QD).
  std::optional<std::string> cf_explanation;

  bool operator==(const PerturbationRecord&) const = default;
};

struct PredictionRecord {
  std::string instance_id;
  bool correct_full = false;
  bool correct_input_only = false;
  bool correct_expl_only = false;

  bool operator==(const PredictionRecord&) const = default;
};

struct QualityCounts {
  std::size_t para = 0;
  std::size_t cf_assessable = 0;
  std::size_t mistake = 0;
  std::size_t las_n0 = 0;
  std::size_t las_n1 = 0;

  bool operator==(const QualityCounts&) const = default;
};

// Missing values mean the quality could not be computed (empty denominator).
struct QualityScores {
  std::optional<double> para_flip_pct;
  std::optional<double> cf_uf_pct;
  std::optional<double> mistake_flip_pct;
  std::optional<double> las;
  QualityCounts counts;

  bool operator==(const QualityScores&) const = default;
};

enum class ViolationKind { DuplicateId, EmptyId, EmptyQuestion, BadChoiceCount, DuplicateLabel, EmptyChoice, GoldNotInLabels };

struct Violation {
  std::size_t index = 0;
  std::string instance_id;
  ViolationKind kind = ViolationKind::EmptyQuestion;
  std::string message;
};

// Report-only; an empty result means the dataset is well formed.
std::vector<Violation> validate_dataset(std::span<const QAInstance> instances);

}  // namespace seacot
