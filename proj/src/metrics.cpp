#include "seacot/metrics.hpp"

#include <algorithm>

namespace seacot {

double flip_rate(std::span<const FlipPair> pairs) {
  if (pairs.empty()) throw EmptyDenominator("flip_rate() over zero pairs");
  std::size_t flips = 0;
  for (const auto& p : pairs) flips += p.answer_before != p.answer_after;
  return 100.0 * static_cast<double>(flips) / static_cast<double>(pairs.size());
}

std::optional<bool> cf_unfaithful(const CFRecord& record) {
  if (!record.orig_correct || !record.cf_correct) return std::nullopt;
  for (const auto& t : record.edit_tokens)
    if (record.cf_expl_tokens.contains(t)) return false;
  return true;
}

double cf_uf_rate(std::span<const CFRecord> records) {
  std::size_t assessable = 0, unfaithful = 0;
  for (const auto& r : records) {
    if (auto uf = cf_unfaithful(r)) {
      ++assessable;
      unfaithful += *uf;
    }
  }
  if (assessable == 0) throw EmptyDenominator("no assessable counterfactual records");
  return 100.0 * static_cast<double>(unfaithful) / static_cast<double>(assessable);
}

LasResult las(std::span<const PredictionRecord> records) {
  if (records.empty()) throw EmptyDenominator("las() over zero records");
  long sum0 = 0, sum1 = 0;
  LasResult r;
  for (const auto& p : records) {
    const int diff = int(p.correct_full) - int(p.correct_input_only);
    if (p.correct_expl_only) {
      ++r.n1;
      sum1 += diff;
    } else {
      ++r.n0;
      sum0 += diff;
    }
  }
  if (r.n0 > 0) r.las0 = static_cast<double>(sum0) / static_cast<double>(r.n0);
  if (r.n1 > 0) r.las1 = static_cast<double>(sum1) / static_cast<double>(r.n1);
  if (r.n0 == 0)
    r.las = r.las1;
  else if (r.n1 == 0)
    r.las = r.las0;
  else
    r.las = 0.5 * (r.las0 + r.las1);
  return r;
}

std::vector<double> minmax(std::span<const double> values) {
  std::vector<double> out(values.size(), 0.5);
  if (values.empty()) return out;
  const auto [lo, hi] = std::minmax_element(values.begin(), values.end());
  const double min = *lo, max = *hi;
  if (max == min) return out;
  for (std::size_t i = 0; i < values.size(); ++i) out[i] = (values[i] - min) / (max - min);
  return out;
}

std::map<std::string, double> aggregate(const std::map<std::string, QualityScores>& per_technique) {
  if (per_technique.size() < 2)
    throw InsufficientTechniques("aggregate needs at least two techniques, got " +
                                 std::to_string(per_technique.size()));
  struct Quality {
    const char* name;
    std::optional<double> QualityScores::*field;
    bool lower_is_better;
  };
  static constexpr Quality kQualities[] = {
      {"Para", &QualityScores::para_flip_pct, true},
      {"CF-UF", &QualityScores::cf_uf_pct, true},
      {"Mistakes", &QualityScores::mistake_flip_pct, false},
      {"Simu", &QualityScores::las, false},
  };

  std::map<std::string, double> sums;
  for (const auto& q : kQualities) {
    std::vector<double> column;
    for (const auto& [name, scores] : per_technique) {
      const auto& v = scores.*(q.field);
      if (!v) throw MissingQuality(name, q.name);
      column.push_back(*v);
    }
    const auto scaled = minmax(column);
    std::size_t i = 0;
    for (const auto& [name, _] : per_technique) {
      const double s = scaled[i++];
      sums[name] += q.lower_is_better ? 1.0 - s : s;
    }
  }
  for (auto& [_, v] : sums) v /= 4.0;
  return sums;
}

QualityScores compute_scores(std::span<const PerturbationRecord> perturbations,
                             std::span<const PredictionRecord> predictions) {
  std::vector<FlipPair> para, mistake;
  std::vector<CFRecord> cf;
  for (const auto& r : perturbations) {
    if (r.valid != Validity::Accepted) continue;
    switch (r.kind) {
      case PerturbationKind::Paraphrase:
      case PerturbationKind::Mistake:
        if (!r.eval_answer) continue;
        (r.kind == PerturbationKind::Paraphrase ? para : mistake)
            .push_back({r.instance_id, r.original_answer, *r.eval_answer});
        break;
      case PerturbationKind::Counterfactual: {
        CFRecord c;
        c.instance_id = r.instance_id;
        c.orig_correct = r.original_answer == r.gold;
        c.cf_correct = r.eval_answer && r.cf_gold && *r.eval_answer == *r.cf_gold;
        if (r.cf_explanation) c.cf_expl_tokens = normalize_tokens(*r.cf_explanation);
        if (r.edit) c.edit_tokens = normalize_tokens(*r.edit);
        cf.push_back(std::move(c));
        break;
      }
    }
  }

  QualityScores s;
  s.counts.para = para.size();
  s.counts.mistake = mistake.size();
  if (!para.empty()) s.para_flip_pct = flip_rate(para);
  if (!mistake.empty()) s.mistake_flip_pct = flip_rate(mistake);
  for (const auto& c : cf) s.counts.cf_assessable += cf_unfaithful(c).has_value();
  if (s.counts.cf_assessable > 0) s.cf_uf_pct = cf_uf_rate(cf);
  if (!predictions.empty()) {
    const auto l = las(predictions);
    s.las = l.las;
    s.counts.las_n0 = l.n0;
    s.counts.las_n1 = l.n1;
  }
  return s;
}

}  // namespace seacot
