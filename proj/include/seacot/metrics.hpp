#pragma once

// The four interpretability scores and the cross-technique aggregate. Pure
// functions over persisted records.

#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "seacot/core.hpp"
#include "seacot/sea_scorer.hpp"

namespace seacot {

struct FlipPair {
  std::string instance_id;
  Label answer_before;
  Label answer_after;
};

struct CFRecord {
  std::string instance_id;
  bool orig_correct = false;  // y_hat = y
  bool cf_correct = false;    // y_hat' = y'
  TokenSet cf_expl_tokens;    // e'
  TokenSet edit_tokens;       // c
};

// Percentage of pairs whose answer changed. Throws EmptyDenominator.
double flip_rate(std::span<const FlipPair> pairs);

// nullopt when the record is not assessable; otherwise true when e' shares
// no token with the edit.
std::optional<bool> cf_unfaithful(const CFRecord& record);

// Percentage of assessable records that are unfaithful. Throws EmptyDenominator.
double cf_uf_rate(std::span<const CFRecord> records);

struct LasResult {
  double las = 0.0;
  double las0 = 0.0;  // non-leaking group
  double las1 = 0.0;  // leaking group
  std::size_t n0 = 0;
  std::size_t n1 = 0;
};

// Throws EmptyDenominator on an empty input.
LasResult las(std::span<const PredictionRecord> records);

// Min-max scaling to [0,1]; every entry becomes 0.5 when max == min.
std::vector<double> minmax(std::span<const double> values);

// Keyed by technique name. Qualities where lower is better (para flips, CF
// unfaithfulness) are complemented after scaling. Throws
// InsufficientTechniques for fewer than two techniques and MissingQuality
// when any score is absent.
std::map<std::string, double> aggregate(const std::map<std::string, QualityScores>& per_technique);

// Scores from the records of one technique. Paraphrase and mistake flips use
// accepted records only (original answer vs the evaluated model's re-query);
// counterfactuals use accepted records with both prerequisites checked here.
// Qualities with an empty denominator are left unset.
QualityScores compute_scores(std::span<const PerturbationRecord> perturbations,
                             std::span<const PredictionRecord> predictions);

}  // namespace seacot
