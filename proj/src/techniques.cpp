#include "seacot/techniques.hpp"

#include <algorithm>
#include <functional>
#include <random>
#include <regex>

#include <spdlog/spdlog.h>

namespace seacot {

namespace {

constexpr const char* kZeroShotTrigger = " Let's think step by step.";

std::string lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(), [](unsigned char c) { return std::tolower(c); });
  return out;
}

TemplateVars instance_vars(const QAInstance& instance) {
  return {{"question", instance.question}, {"choices", format_choices(instance)}};
}

std::string first_line(std::string_view text) {
  const std::string t = trim(text);
  const auto nl = t.find('\n');
  return nl == std::string::npos ? t : trim(std::string_view(t).substr(0, nl));
}

}  // namespace

VoteResult majority_vote(std::span<const ReasoningSample> samples) {
  VoteResult vote;
  for (const auto& s : samples)
    if (s.answer) ++vote.counts[*s.answer];
  if (vote.counts.empty()) throw NoParseableSamples("none of " + std::to_string(samples.size()) + " samples has an answer");
  std::size_t top = 0;
  for (const auto& [_, n] : vote.counts) top = std::max(top, n);
  for (const auto& [label, n] : vote.counts)
    if (n == top) vote.winners.push_back(label);
  return vote;
}

Label resolve_majority(std::span<const ReasoningSample> samples, const VoteResult& vote) {
  if (vote.winners.size() == 1) return vote.winners.front();
  std::optional<std::size_t> best;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const auto& s = samples[i];
    if (!s.answer || std::find(vote.winners.begin(), vote.winners.end(), *s.answer) == vote.winners.end()) continue;
    if (!best || s.cumulative_logprob > samples[*best].cumulative_logprob) best = i;
  }
  return *samples[*best].answer;
}

std::size_t select_max_logprob(std::span<const ReasoningSample> samples, std::span<const std::size_t> candidates) {
  std::size_t best = candidates.front();
  for (auto i : candidates)
    if (samples[i].cumulative_logprob > samples[best].cumulative_logprob) best = i;
  return best;
}

std::vector<std::string> parse_subquestions(std::string_view text) {
  static const std::regex kItem(R"(^\s*(?:sub-?question\s*\d*\s*[:.)]|q\d+\s*[:.)]|\d+\s*[.):]|[-*•])\s*(.+?)\s*$)",
                                std::regex::icase);
  std::vector<std::string> out;
  std::string line;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto nl = text.find('\n', pos);
    line.assign(text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos));
    std::smatch m;
    if (std::regex_match(line, m, kItem) && !m[1].str().empty()) out.push_back(m[1].str());
    if (nl == std::string_view::npos) break;
    pos = nl + 1;
  }
  return out;
}

Pipelines::Pipelines(Gateway& llm, const TemplateLibrary& templates, PipelineConfig cfg, const SeaScorer* scorer)
    : llm_(&llm), templates_(&templates), cfg_(std::move(cfg)), scorer_(scorer) {}

TechniqueOutput Pipelines::run(Technique technique, const QAInstance& instance) const {
  switch (technique) {
    case Technique::CoT: return run_cot(instance);
    case Technique::SCCoT: return run_sc_cot(instance);
    case Technique::SEACoT: return run_sea_cot(instance);
    case Technique::QD: return run_qd(instance);
    case Technique::SR: return run_self_refine(instance);
  }
  throw std::invalid_argument("unknown technique");
}

std::string Pipelines::cot_prompt(const QAInstance& instance, std::string_view template_name) const {
  if (cfg_.zero_shot) return templates_->render(template_name, instance_vars(instance), 0) + kZeroShotTrigger;
  return templates_->render(template_name, instance_vars(instance), shots_for(template_name));
}

std::optional<int> Pipelines::shots_for(std::string_view name) const {
  if (!cfg_.shots) return std::nullopt;
  const int available = static_cast<int>(templates_->examples(name).size());
  return std::min(*cfg_.shots, available);
}

std::string Pipelines::greedy_text(const std::string& prompt, std::string_view template_name) const {
  return llm_->complete(prompt, cfg_.greedy, templates_->stop_sequences(template_name)).text;
}

std::optional<Label> Pipelines::parse_answer_step(const QAInstance& instance, std::string_view completion) const {
  if (auto l = extract_answer(completion, instance.choices)) return l;
  // The prompt ends mid-sentence ("So the answer is"); re-attach the stem.
  return extract_answer("The answer is " + trim(completion), instance.choices);
}

TechniqueOutput Pipelines::run_cot(const QAInstance& instance) const {
  const Completion c = llm_->complete(cot_prompt(instance), cfg_.greedy, templates_->stop_sequences("cot"));
  if (trim(c.text).empty()) throw UnparseableAnswer("empty completion for " + instance.id);
  ReasoningSample sample = to_sample(c);
  sample.answer = extract_answer(sample.text, instance.choices);
  if (!sample.answer) throw UnparseableAnswer("no answer in CoT completion for " + instance.id);

  TechniqueOutput out;
  out.technique = Technique::CoT;
  out.instance_id = instance.id;
  out.answer = *sample.answer;
  out.explanation = strip_answer_declaration(sample.text, instance.choices);
  out.samples.push_back(std::move(sample));
  out.chosen_sample = 0;
  out.selection_rule = "greedy";
  return out;
}

std::vector<ReasoningSample> Pipelines::sample_chains(const QAInstance& instance) const {
  std::vector<Completion> completions;
  const std::string prompt = cot_prompt(instance);
  try {
    completions = llm_->sample_n(prompt, cfg_.sampling, templates_->stop_sequences("cot"));
  } catch (const PartialBatch& partial) {
    if (partial.received().empty()) throw;
    spdlog::warn("{}: continuing with {} of {} samples", instance.id, partial.received().size(), partial.expected());
    completions = partial.received();
  }
  std::vector<ReasoningSample> samples;
  samples.reserve(completions.size());
  for (const auto& c : completions) {
    ReasoningSample s = to_sample(c);
    s.answer = extract_answer(s.text, instance.choices);
    samples.push_back(std::move(s));
  }
  return samples;
}

TechniqueOutput Pipelines::choose_by_logprob(Technique technique, const QAInstance& instance,
                                             std::vector<ReasoningSample> samples, const Label& answer,
                                             const std::vector<std::size_t>& candidates) const {
  const bool have_logprobs =
      std::all_of(candidates.begin(), candidates.end(), [&](std::size_t i) { return samples[i].has_logprobs(); });
  std::size_t chosen;
  TechniqueOutput out;
  if (have_logprobs) {
    chosen = select_max_logprob(samples, candidates);
    out.selection_rule = "max-logprob";
  } else {
    spdlog::warn("{}: backend returned no logprobs; picking a majority chain at random", instance.id);
    std::mt19937_64 rng(static_cast<std::uint64_t>(cfg_.sampling.seed.value_or(0)) ^ std::hash<std::string>{}(instance.id));
    std::uniform_int_distribution<std::size_t> pick(0, candidates.size() - 1);
    chosen = candidates[pick(rng)];
    out.selection_rule = "random";
  }
  out.technique = technique;
  out.instance_id = instance.id;
  out.answer = answer;
  out.explanation = strip_answer_declaration(samples[chosen].text, instance.choices);
  out.chosen_sample = chosen;
  out.samples = std::move(samples);
  return out;
}

namespace {

std::vector<std::size_t> supporting(std::span<const ReasoningSample> samples, const Label& answer) {
  std::vector<std::size_t> idx;
  for (std::size_t i = 0; i < samples.size(); ++i)
    if (samples[i].answer == answer) idx.push_back(i);
  return idx;
}

}  // namespace

TechniqueOutput Pipelines::run_sc_cot(const QAInstance& instance) const {
  auto samples = sample_chains(instance);
  const Label answer = resolve_majority(samples, majority_vote(samples));
  const auto candidates = supporting(samples, answer);
  return choose_by_logprob(Technique::SCCoT, instance, std::move(samples), answer, candidates);
}

TechniqueOutput Pipelines::run_sea_cot(const QAInstance& instance) const {
  if (scorer_ == nullptr) throw ConfigError("SEA-CoT needs an entailment scorer");
  auto samples = sample_chains(instance);
  const Label answer = resolve_majority(samples, majority_vote(samples));
  const auto candidates = supporting(samples, answer);
  if (candidates.size() == 1) {
    return choose_by_logprob(Technique::SEACoT, instance, std::move(samples), answer, candidates);
  }

  std::vector<CandidateScore> scores;
  std::vector<CandidateTrace> trace;
  for (auto i : candidates) {
    const auto s = scorer_->score(instance, answer, strip_answer_declaration(samples[i].text, instance.choices));
    scores.push_back(s);
    trace.push_back({i, s.s_e, s.s_o, s.s_t, samples[i].cumulative_logprob});
  }
  const std::size_t chosen = candidates[select_best(scores)];

  TechniqueOutput out;
  out.technique = Technique::SEACoT;
  out.instance_id = instance.id;
  out.answer = answer;
  out.explanation = strip_answer_declaration(samples[chosen].text, instance.choices);
  out.chosen_sample = chosen;
  out.selection_rule = "sea";
  out.selection_trace = std::move(trace);
  out.samples = std::move(samples);
  return out;
}

TechniqueOutput Pipelines::run_qd(const QAInstance& instance) const {
  const std::string decomposition =
      greedy_text(templates_->render("qd_decompose", instance_vars(instance), shots_for("qd_decompose")), "qd_decompose");
  auto subquestions = parse_subquestions(decomposition);
  if (subquestions.empty()) throw EmptyDecomposition("no sub-questions for " + instance.id);
  if (static_cast<int>(subquestions.size()) > cfg_.max_subquestions) subquestions.resize(cfg_.max_subquestions);

  QDTrace trace;
  for (const auto& sq : subquestions) {
    auto vars = instance_vars(instance);
    vars["context"] = trace.steps.empty() ? std::string{} : trace.format() + "\n";
    vars["subquestion"] = sq;
    const std::string answer = first_line(greedy_text(templates_->render("qd_subanswer", vars, shots_for("qd_subanswer")), "qd_subanswer"));
    trace.steps.push_back({sq, answer});
  }

  auto vars = instance_vars(instance);
  vars["context"] = trace.format();
  const Completion conclusion =
      llm_->complete(templates_->render("qd_conclude", vars, shots_for("qd_conclude")), cfg_.greedy, templates_->stop_sequences("qd_conclude"));
  const auto final_answer = parse_answer_step(instance, conclusion.text);
  if (!final_answer) throw UnparseableAnswer("no answer in QD conclusion for " + instance.id);
  trace.final_answer = *final_answer;

  ReasoningSample sample = to_sample(conclusion);
  sample.answer = final_answer;

  TechniqueOutput out;
  out.technique = Technique::QD;
  out.instance_id = instance.id;
  out.answer = *final_answer;
  out.explanation = trace.format();
  out.samples.push_back(std::move(sample));
  out.chosen_sample = 0;
  out.selection_rule = "pipeline";
  out.qd_trace = std::move(trace);
  return out;
}

TechniqueOutput Pipelines::run_self_refine(const QAInstance& instance) const {
  if (cfg_.max_rounds < 1) throw std::invalid_argument("max_rounds must be at least 1");
  const Completion init = llm_->complete(cot_prompt(instance, "sr_init"), cfg_.greedy, templates_->stop_sequences("sr_init"));

  TechniqueOutput out;
  out.technique = Technique::SR;
  out.instance_id = instance.id;
  out.selection_rule = "pipeline";
  auto record = [&](const Completion& c) {
    ReasoningSample s = to_sample(c);
    s.text = trim(s.text);
    s.answer = extract_answer(s.text, instance.choices);
    out.samples.push_back(std::move(s));
  };
  record(init);

  SRTrace trace;
  std::string output = trim(init.text);
  const std::string stop = lower(cfg_.stop_phrase);
  for (int round = 0; round < cfg_.max_rounds; ++round) {
    auto vars = instance_vars(instance);
    vars["output"] = output;
    const std::string feedback = trim(greedy_text(templates_->render("sr_feedback", vars, shots_for("sr_feedback")), "sr_feedback"));
    if (lower(feedback).find(stop) != std::string::npos) {
      trace.rounds.push_back({output, feedback, std::nullopt});
      trace.stopped_early = true;
      break;
    }
    vars["feedback"] = feedback;
    const Completion refined =
        llm_->complete(templates_->render("sr_refine", vars, shots_for("sr_refine")), cfg_.greedy, templates_->stop_sequences("sr_refine"));
    record(refined);
    trace.rounds.push_back({output, feedback, trim(refined.text)});
    output = trim(refined.text);
  }

  const auto answer = extract_answer(output, instance.choices);
  if (!answer) throw UnparseableAnswer("no answer in final refined output for " + instance.id);
  out.answer = *answer;
  out.explanation = strip_answer_declaration(output, instance.choices);
  out.chosen_sample = out.samples.size() - 1;
  out.sr_trace = std::move(trace);
  return out;
}

std::optional<Label> Pipelines::answer_with_explanation(const QAInstance& instance, Technique technique,
                                                        std::string_view explanation) const {
  auto vars = instance_vars(instance);
  std::string name;
  if (technique == Technique::QD) {
    name = "qd_conclude";
    vars["context"] = std::string(explanation);
  } else {
    name = "answer";
    vars["explanation"] = std::string(explanation);
  }
  const Completion c = llm_->complete(templates_->render(name, vars, shots_for(name)), cfg_.greedy, templates_->stop_sequences(name));
  return parse_answer_step(instance, c.text);
}

}  // namespace seacot
