#include "seacot/perturber.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <sstream>

#include <spdlog/spdlog.h>

#include "seacot/answer.hpp"
#include "seacot/sea_scorer.hpp"

namespace seacot {

void to_json(json& j, const ModifierConfig& v) {
  j = json{{"paraphrase_backend", v.paraphrase_backend},
           {"mistake_backend", v.mistake_backend},
           {"counterfactual_backend", v.counterfactual_backend},
           {"highlight_backend", v.highlight_backend},
           {"shots",
            {{"paraphrase", v.shots.paraphrase},
             {"mistakes", v.shots.mistakes},
             {"counterfactual", v.shots.counterfactual},
             {"edit_highlight", v.shots.edit_highlight}}},
           {"retry_budget", v.retry_budget}};
}

void from_json(const json& j, ModifierConfig& v) {
  j.at("paraphrase_backend").get_to(v.paraphrase_backend);
  j.at("mistake_backend").get_to(v.mistake_backend);
  j.at("counterfactual_backend").get_to(v.counterfactual_backend);
  v.highlight_backend = j.contains("highlight_backend") ? j.at("highlight_backend").get<BackendConfig>()
                                                        : v.paraphrase_backend;
  ShotCounts d;
  if (j.contains("shots")) {
    const auto& s = j.at("shots");
    v.shots.paraphrase = s.value("paraphrase", d.paraphrase);
    v.shots.mistakes = s.value("mistakes", d.mistakes);
    v.shots.counterfactual = s.value("counterfactual", d.counterfactual);
    v.shots.edit_highlight = s.value("edit_highlight", d.edit_highlight);
  }
  v.retry_budget = j.value("retry_budget", 2);
  if (v.retry_budget < 0) throw ConfigError("retry_budget must be non-negative");
}

namespace {

std::string fold(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(), [](unsigned char c) { return std::tolower(c); });
  return out;
}

std::string strip_punct(std::string_view w) {
  std::size_t b = 0, e = w.size();
  while (b < e && std::ispunct(static_cast<unsigned char>(w[b]))) ++b;
  while (e > b && std::ispunct(static_cast<unsigned char>(w[e - 1]))) --e;
  return std::string(w.substr(b, e - b));
}

std::string first_line(std::string_view text) {
  const std::string t = trim(text);
  return trim(std::string_view(t).substr(0, t.find('\n')));
}

// Exemplar count actually available, so a short override file degrades
// instead of failing every call.
std::optional<int> clamp_shots(const TemplateLibrary& t, std::string_view name, int shots) {
  const auto avail = static_cast<int>(t.examples(name).size());
  return std::min(shots, avail);
}

GenerationParams attempt_params(int attempt) {
  if (attempt == 0) return GenerationParams::greedy(256);
  GenerationParams p = GenerationParams::sampling(1, 1.0, 50, 256);
  p.seed = attempt;
  return p;
}

}  // namespace

std::string diff_edit_tokens(std::string_view original, std::string_view edited) {
  std::set<std::string> seen;
  {
    std::istringstream in{std::string(original)};
    std::string w;
    while (in >> w) seen.insert(fold(strip_punct(w)));
  }
  std::istringstream in{std::string(edited)};
  std::string w, out;
  while (in >> w) {
    const std::string bare = strip_punct(w);
    if (bare.empty() || seen.contains(fold(bare))) continue;
    if (!out.empty()) out += ' ';
    out += bare;
  }
  return out;
}

Perturber::Perturber(ModifierGateways gateways, const TemplateLibrary& templates, ShotCounts shots, int retry_budget)
    : gw_(gateways), templates_(&templates), shots_(shots), retry_budget_(retry_budget) {
  if (!gw_.paraphrase || !gw_.mistake || !gw_.counterfactual)
    throw std::invalid_argument("Perturber needs paraphrase, mistake and counterfactual gateways");
  if (!gw_.highlight) gw_.highlight = gw_.paraphrase;
}

std::string Perturber::rewrite(Gateway& gw, std::string_view template_name, const TemplateVars& vars, int shots,
                               std::string_view original) const {
  const std::string prompt = templates_->render(template_name, vars, clamp_shots(*templates_, template_name, shots));
  const auto stop = templates_->stop_sequences(template_name);
  const std::string before = trim(original);
  for (int attempt = 0; attempt <= retry_budget_; ++attempt) {
    const std::string text = trim(gw.complete(prompt, attempt_params(attempt), stop).text);
    if (!text.empty() && text != before) return text;
    spdlog::debug("{}: attempt {} returned {} output", template_name, attempt, text.empty() ? "empty" : "unchanged");
  }
  throw ModifierFailure(std::string(template_name) + ": no usable rewrite after " + std::to_string(retry_budget_ + 1) +
                        " attempts");
}

std::string Perturber::paraphrase(std::string_view explanation) const {
  return rewrite(*gw_.paraphrase, "paraphrase", {{"explanation", std::string(explanation)}}, shots_.paraphrase,
                 explanation);
}

std::string Perturber::insert_mistakes(std::string_view explanation) const {
  return rewrite(*gw_.mistake, "mistakes", {{"explanation", std::string(explanation)}}, shots_.mistakes, explanation);
}

QDTrace Perturber::perturb_qd(const QDTrace& trace, PerturbationKind kind) const {
  if (trace.steps.empty()) throw EmptyDecomposition("cannot perturb an empty decomposition");
  QDTrace out = trace;
  SubQA& last = out.steps.back();
  switch (kind) {
    case PerturbationKind::Paraphrase:
      last.question = paraphrase(last.question);
      last.answer = paraphrase(last.answer);
      break;
    case PerturbationKind::Mistake:
      last.answer = first_line(rewrite(*gw_.mistake, "mistakes_qd",
                                       {{"subquestion", last.question}, {"subanswer", last.answer}}, shots_.mistakes,
                                       last.answer));
      break;
    case PerturbationKind::Counterfactual:
      throw std::invalid_argument("counterfactuals edit the question, not the decomposition");
  }
  return out;
}

CounterfactualDraft Perturber::gen_counterfactual(const QAInstance& instance) const {
  const std::optional<int> shots = shots_.counterfactual;
  CounterfactualDraft draft;
  TemplateVars vars{{"question", instance.question},
                    {"choices", format_choices(instance)},
                    {"answer", format_answer(instance, instance.gold)}};

  if (instance.is_binary()) {
    for (const auto& l : instance.labels())
      if (l != instance.gold) draft.target = l;
  } else {
    const std::string prompt = templates_->render("cf_target", vars, clamp_shots(*templates_, "cf_target", *shots));
    const auto stop = templates_->stop_sequences("cf_target");
    std::optional<Label> picked;
    for (int attempt = 0; attempt <= retry_budget_ && !picked; ++attempt) {
      const std::string text = first_line(gw_.counterfactual->complete(prompt, attempt_params(attempt), stop).text);
      auto label = extract_answer("The answer is " + text, instance.choices);
      if (label && *label != instance.gold) picked = label;
    }
    if (!picked) throw DegenerateCounterfactual("no alternate answer for " + instance.id);
    draft.target = *picked;
  }
  if (draft.target.empty() || draft.target == instance.gold || !instance.has_label(draft.target))
    throw DegenerateCounterfactual("no alternate answer for " + instance.id);

  vars["target"] = format_answer(instance, draft.target);
  draft.question = first_line(rewrite(*gw_.counterfactual, "cf_edit", vars, *shots, instance.question));
  return draft;
}

EditHighlight Perturber::highlight_edits(std::string_view original, std::string_view edited) const {
  try {
    const std::string prompt =
        templates_->render("edit_highlight", {{"original", std::string(original)}, {"edited", std::string(edited)}},
                           clamp_shots(*templates_, "edit_highlight", shots_.edit_highlight));
    std::string c = first_line(gw_.highlight->complete(prompt, GenerationParams::greedy(64),
                                                       templates_->stop_sequences("edit_highlight"))
                                   .text);
    if (!c.empty()) return {std::move(c), "modifier"};
  } catch (const Error& e) {
    spdlog::debug("edit highlighting fell back to diff: {}", e.what());
  }
  return {diff_edit_tokens(original, edited), "diff"};
}

ValidationOutcome validate_perturbation(const PerturbationRecord& record, const QAInstance& instance,
                                        const Pipelines& validator) {
  ValidationOutcome out;
  auto reject = [&](std::string why) {
    out.validity = Validity::Rejected;
    out.reason = std::move(why);
    return out;
  };

  if (record.kind == PerturbationKind::Counterfactual) {
    if (!record.cf_question || trim(*record.cf_question).empty()) return reject("missing edited question");
    if (*record.cf_question == instance.question) return reject("edited question equals the original");
    if (!record.cf_gold || !instance.has_label(*record.cf_gold)) return reject("counterfactual answer not a label");
    if (*record.cf_gold == record.gold) return reject("counterfactual answer equals the original answer");
    if (!record.edit || normalize_tokens(*record.edit).empty()) return reject("edit has no content words");
    out.validity = Validity::Accepted;
    return out;
  }

  if (!record.modified_expl) return reject("missing modified explanation");
  out.answer = validator.answer_with_explanation(instance, record.technique, *record.modified_expl);
  if (!out.answer) return reject("validator answer unparseable");
  const bool same = *out.answer == record.original_answer;
  if (record.kind == PerturbationKind::Paraphrase && !same) return reject("paraphrase changed the validator answer");
  if (record.kind == PerturbationKind::Mistake && same) return reject("mistake left the validator answer unchanged");
  out.validity = Validity::Accepted;
  return out;
}

}  // namespace seacot
