#include "seacot/core.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <unordered_map>

#include <fmt/format.h>

namespace seacot {

bool QAInstance::has_label(std::string_view label) const { return find_choice(label) != nullptr; }

const Choice* QAInstance::find_choice(std::string_view label) const {
  auto it = std::find_if(choices.begin(), choices.end(), [&](const Choice& c) { return c.label == label; });
  return it == choices.end() ? nullptr : &*it;
}

std::vector<Label> QAInstance::labels() const {
  std::vector<Label> out;
  out.reserve(choices.size());
  for (const auto& c : choices) out.push_back(c.label);
  return out;
}

bool QAInstance::is_binary() const {
  return choices.size() == 2 && has_label("yes") && has_label("no");
}

GenerationParams GenerationParams::greedy(int max_tokens) {
  GenerationParams p;
  p.temperature = 0.0;
  p.n_samples = 1;
  p.max_tokens = max_tokens;
  return p;
}

GenerationParams GenerationParams::sampling(int n_samples, double temperature, int top_k, int max_tokens) {
  GenerationParams p;
  p.n_samples = n_samples;
  p.temperature = temperature;
  p.top_k = top_k;
  p.max_tokens = max_tokens;
  return p;
}

double sum_logprobs(std::span<const TokenLogprob> tokens) {
  return std::accumulate(tokens.begin(), tokens.end(), 0.0,
                         [](double acc, const TokenLogprob& t) { return acc + t.logprob; });
}

namespace {

struct TechniqueName {
  Technique technique;
  std::string_view display;
  std::string_view slug;
};

constexpr TechniqueName kTechniqueNames[] = {
    {Technique::CoT, "CoT", "cot"},
    {Technique::SCCoT, "SC-CoT", "sc-cot"},
    {Technique::SEACoT, "SEA-CoT", "sea-cot"},
    {Technique::QD, "QD", "qd"},
    {Technique::SR, "SR", "sr"},
};

std::string lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(), [](unsigned char c) { return std::tolower(c); });
  return out;
}

}  // namespace

std::string_view to_string(Technique t) {
  for (const auto& n : kTechniqueNames)
    if (n.technique == t) return n.display;
  return "?";
}

std::string_view slug(Technique t) {
  for (const auto& n : kTechniqueNames)
    if (n.technique == t) return n.slug;
  return "?";
}

std::optional<Technique> parse_technique(std::string_view name) {
  const std::string key = lower(name);
  for (const auto& n : kTechniqueNames) {
    if (key == n.slug || key == lower(n.display)) return n.technique;
  }
  if (key == "sccot") return Technique::SCCoT;
  if (key == "seacot") return Technique::SEACoT;
  if (key == "self-refine") return Technique::SR;
  return std::nullopt;
}

std::string_view to_string(PerturbationKind k) {
  switch (k) {
    case PerturbationKind::Paraphrase: return "paraphrase";
    case PerturbationKind::Mistake: return "mistake";
    case PerturbationKind::Counterfactual: return "counterfactual";
  }
  return "?";
}

std::optional<PerturbationKind> parse_perturbation_kind(std::string_view name) {
  const std::string key = lower(name);
  if (key == "paraphrase") return PerturbationKind::Paraphrase;
  if (key == "mistake") return PerturbationKind::Mistake;
  if (key == "counterfactual") return PerturbationKind::Counterfactual;
  return std::nullopt;
}

std::string_view to_string(Validity v) {
  switch (v) {
    case Validity::Pending: return "pending";
    case Validity::Accepted: return "accepted";
    case Validity::Rejected: return "rejected";
  }
  return "?";
}

std::optional<Validity> parse_validity(std::string_view name) {
  const std::string key = lower(name);
  if (key == "pending") return Validity::Pending;
  if (key == "accepted") return Validity::Accepted;
  if (key == "rejected") return Validity::Rejected;
  return std::nullopt;
}

std::string QDTrace::format() const {
  std::string out;
  for (std::size_t i = 0; i < steps.size(); ++i) {
    if (i) out += '\n';
    out += fmt::format("Sub-question {}: {}\nAnswer {}: {}", i + 1, steps[i].question, i + 1, steps[i].answer);
  }
  return out;
}

std::string QDTrace::sub_answers() const {
  std::string out;
  for (std::size_t i = 0; i < steps.size(); ++i) {
    if (i) out += '\n';
    out += steps[i].answer;
  }
  return out;
}

std::vector<Violation> validate_dataset(std::span<const QAInstance> instances) {
  std::vector<Violation> report;
  std::unordered_map<std::string, std::size_t> first_seen;

  auto flag = [&](std::size_t i, const QAInstance& q, ViolationKind kind, std::string msg) {
    report.push_back({i, q.id, kind, std::move(msg)});
  };

  for (std::size_t i = 0; i < instances.size(); ++i) {
    const auto& q = instances[i];
    if (q.id.empty()) {
      flag(i, q, ViolationKind::EmptyId, "empty instance id");
    } else if (auto [it, inserted] = first_seen.emplace(q.id, i); !inserted) {
      flag(i, q, ViolationKind::DuplicateId, fmt::format("duplicate id '{}' (first at index {})", q.id, it->second));
    }
    if (q.question.empty()) flag(i, q, ViolationKind::EmptyQuestion, "empty question");

    const auto n = q.choices.size();
    if (n != 2 && n != 4 && n != 8)
      flag(i, q, ViolationKind::BadChoiceCount, fmt::format("{} choices; expected 2, 4 or 8", n));

    std::set<Label> labels;
    for (const auto& c : q.choices) {
      if (c.label.empty() || c.text.empty())
        flag(i, q, ViolationKind::EmptyChoice, fmt::format("empty choice label or text ('{}')", c.label));
      if (!labels.insert(c.label).second)
        flag(i, q, ViolationKind::DuplicateLabel, fmt::format("duplicate choice label '{}'", c.label));
    }
    if (!labels.contains(q.gold))
      flag(i, q, ViolationKind::GoldNotInLabels, fmt::format("gold '{}' is not a choice label", q.gold));
  }
  return report;
}

}  // namespace seacot
