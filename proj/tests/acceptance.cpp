// Acceptance checks: one PASS/FAIL/SKIP line per criterion. Exit status is
// non-zero when any gating criterion fails; the live smoke test never gates.

#include <chrono>
#include <cstdlib>
#include <functional>
#include <iostream>

#include <spdlog/spdlog.h>

#include "e2e.hpp"
#include "properties.hpp"
#include "seacot/perturber.hpp"

using namespace seacot;
using namespace seacot::testing;

namespace {

// Empty string means pass; anything else is the failure detail.
using Check = std::function<std::string()>;

struct Criterion {
  int number;
  std::string name;
  double budget_s;  // 0: no time limit
  Check check;
};

std::string or_empty(const std::optional<std::string>& s) { return s.value_or(""); }

std::string metric_oracles() { return or_empty(metric_fixture_counterexample()); }

std::string scorer_fuzz() { return or_empty(scorer_counterexample(1000, 1000)); }

std::string complement_commutes() { return or_empty(minmax_counterexample(1001, 1000)); }

std::string answer_invariance() {
  if (auto c = invariance_counterexample(1002, 100)) return *c;
  const auto forced = forced_divergence();
  if (forced.sc.answer != forced.sea.answer) return "forced scenario changed the answer";
  if (forced.sc.explanation == forced.sea.explanation) return "forced scenario explanations are equal";
  return "";
}

std::string mock_end_to_end() {
  for (const char* role : {"backends.json", "modifiers.json"}) {
    const auto doc = json::parse(slurp(e2e_dir() / role));
    for (const auto& [_, backend] : doc.items())
      if (backend.is_object() && backend.value("kind", "") != "mock") return std::string(role) + " is not all mock";
  }
  TempDir first("acc-e2e-1"), second("acc-e2e-2");
  for (const auto* dir : {&first, &second}) {
    Experiment e(e2e_config(dir->path()));
    e.run();
    for (const char* f : {"scores.json", "report.csv"})
      if (slurp(dir->path() / f) != slurp(e2e_dir() / "golden" / f))
        return std::string(f) + " differs from the golden file";
  }
  return "";
}

std::string entailment_complement() {
  const auto templates = TemplateLibrary::defaults("obqa");
  auto no = scripted(json::parse(R"({"default": [{"text": " no", "p": 0.7}]})"));
  auto yes = scripted(json::parse(R"({"default": [{"text": " yes", "p": 0.8}]})"));
  const double s_no = entailment_score("c", "r", EntailmentPromptConfig{}, *no.gateway, templates);
  const double s_yes = entailment_score("c", "r", EntailmentPromptConfig{}, *yes.gateway, templates);
  if (s_no != 1.0 - 0.7 || std::abs(s_no - 0.3) > 1e-15) return "no@0.7 gave " + std::to_string(s_no);
  if (std::abs(s_yes - 0.8) > 1e-15) return "yes@0.8 gave " + std::to_string(s_yes);
  return "";
}

std::string perturbation_filters() {
  auto llm = scripted(json::parse(R"({"rules": [
    {"contains": "A: kept\nSo the answer is", "responses": [" (B)."]},
    {"contains": "A: moved\nSo the answer is", "responses": [" (C)."]}
  ]})"));
  const auto templates = TemplateLibrary::defaults("obqa");
  const Pipelines validator(*llm.gateway, templates);
  const auto q = lettered("q", "Which?", {"a", "b", "c", "d"}, "B");
  struct Case {
    PerturbationKind kind;
    const char* expl;
    Validity want;
  };
  for (const auto& c : {Case{PerturbationKind::Paraphrase, "kept", Validity::Accepted},
                        Case{PerturbationKind::Paraphrase, "moved", Validity::Rejected},
                        Case{PerturbationKind::Mistake, "moved", Validity::Accepted},
                        Case{PerturbationKind::Mistake, "kept", Validity::Rejected}}) {
    PerturbationRecord r;
    r.kind = c.kind;
    r.instance_id = q.id;
    r.original_answer = "B";
    r.gold = "B";
    r.modified_expl = c.expl;
    if (validate_perturbation(r, q, validator).validity != c.want)
      return std::string(to_string(c.kind)) + "/" + c.expl + " misclassified";
  }
  return "";
}

// Returns nullopt to SKIP.
std::optional<std::string> live_smoke() {
  const char* path = std::getenv("SEACOT_LIVE_CONFIG");
  if (path == nullptr || *path == '\0') return std::nullopt;
  try {
    ExperimentConfig cfg;
    load_backend_config(path, cfg);
    Gateway gw(make_backend(cfg.evaluated, cfg.backend_dir), gateway_options(cfg.evaluated));
    const auto c = gw.complete("Q: Is water wet?\nA:", GenerationParams::greedy(16));
    if (trim(c.text).empty()) return "empty completion";
    return "";
  } catch (const std::exception& e) {
    return e.what();
  }
}

}  // namespace

int main() {
  spdlog::set_level(spdlog::level::off);
  const std::vector<Criterion> criteria = {
      {1, "metric oracles", 1.0, metric_oracles},
      {2, "scorer fuzz (1000 cases)", 5.0, scorer_fuzz},
      {3, "complement commutes with min-max (1000 vectors)", 0, complement_commutes},
      {4, "SEA-CoT answer invariance (100 scenarios)", 0, answer_invariance},
      {5, "mock end-to-end golden files, two runs", 30.0, mock_end_to_end},
      {6, "entailment complement", 0, entailment_complement},
      {7, "perturbation filters", 0, perturbation_filters},
  };

  bool ok = true;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    std::string detail;
    try {
      detail = c.check();
    } catch (const std::exception& e) {
      detail = std::string("exception: ") + e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (detail.empty() && c.budget_s > 0 && secs > c.budget_s)
      detail = "took " + std::to_string(secs) + " s, budget " + std::to_string(c.budget_s) + " s";
    ok = ok && detail.empty();
    std::cout << "AC" << c.number << " " << (detail.empty() ? "PASS" : "FAIL") << " " << c.name << " ("
              << std::to_string(secs).substr(0, 5) << " s)" << (detail.empty() ? "" : ": " + detail) << "\n";
  }

  std::cout << "AC8 SKIP trained student simulator (not built here; predictions.jsonl is the interface)\n";

  const auto live = live_smoke();
  if (!live)
    std::cout << "AC9 SKIP live backend smoke test (SEACOT_LIVE_CONFIG not set)\n";
  else
    std::cout << "AC9 " << (live->empty() ? "PASS" : "FAIL") << " live backend smoke test (non-gating)"
              << (live->empty() ? "" : ": " + *live) << "\n";

  return ok ? 0 : 1;
}
