#pragma once

// Explanation perturbations: paraphrase, mistake insertion and counterfactual
// question edits, produced by modifier backends and screened by a validator.

#include <optional>
#include <string>
#include <string_view>

#include "seacot/core.hpp"
#include "seacot/gateway.hpp"
#include "seacot/techniques.hpp"
#include "seacot/templates.hpp"

namespace seacot {

struct ShotCounts {
  int paraphrase = 0;
  int mistakes = 2;
  int counterfactual = 3;
  int edit_highlight = 0;
};

struct ModifierConfig {
  BackendConfig paraphrase_backend;
  BackendConfig mistake_backend;
  BackendConfig counterfactual_backend;
  // Falls back to paraphrase_backend when absent from the config file.
  BackendConfig highlight_backend;
  ShotCounts shots;
  // Extra attempts after a ModifierFailure.
  int retry_budget = 2;
};

void to_json(json& j, const ModifierConfig& v);
void from_json(const json& j, ModifierConfig& v);

struct ModifierGateways {
  Gateway* paraphrase = nullptr;
  Gateway* mistake = nullptr;
  Gateway* counterfactual = nullptr;
  Gateway* highlight = nullptr;
};

struct CounterfactualDraft {
  std::string question;  // x'
  Label target;          // y'
};

struct EditHighlight {
  std::string edit;    // c
  std::string source;  // "modifier" or "diff"
};

// Words of `edited` that do not occur in `original` (case-insensitive,
// punctuation-trimmed), joined by single spaces, in order of appearance.
std::string diff_edit_tokens(std::string_view original, std::string_view edited);

class Perturber {
 public:
  Perturber(ModifierGateways gateways, const TemplateLibrary& templates, ShotCounts shots = {}, int retry_budget = 2);

  std::string paraphrase(std::string_view explanation) const;
  std::string insert_mistakes(std::string_view explanation) const;
  // Targets the last sub-question/answer pair. Paraphrase rewrites both
  // fields, Mistake rewrites only the answer.
  QDTrace perturb_qd(const QDTrace& trace, PerturbationKind kind) const;

  // Two passes: pick the alternate answer y' (forced for yes/no sets), then
  // edit the question toward it.
  CounterfactualDraft gen_counterfactual(const QAInstance& instance) const;
  // Precondition: original != edited. Falls back to diff_edit_tokens when the
  // modifier fails or returns nothing.
  EditHighlight highlight_edits(std::string_view original, std::string_view edited) const;

 private:
  std::string rewrite(Gateway& gw, std::string_view template_name, const TemplateVars& vars, int shots,
                      std::string_view original) const;

  ModifierGateways gw_;
  const TemplateLibrary* templates_;
  ShotCounts shots_;
  int retry_budget_;
};

struct ValidationOutcome {
  Validity validity = Validity::Pending;
  std::optional<Label> answer;
  std::optional<std::string> reason;
};

// Re-runs the technique's answer step greedily on the modified explanation
// using `validator`. Paraphrases pass when the answer is preserved, mistakes
// when it changes. Counterfactual records are accepted when y' differs from
// y and the edit is non-empty. Never mutates its inputs.
ValidationOutcome validate_perturbation(const PerturbationRecord& record, const QAInstance& instance,
                                        const Pipelines& validator);

}  // namespace seacot
