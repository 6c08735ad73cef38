#include "doctest.h"

#include <algorithm>

#include "properties.hpp"
#include "seacot/metrics.hpp"

using namespace seacot;
using namespace seacot::testing;

TEST_CASE("hand-built fixtures") {
  const auto counterexample = metric_fixture_counterexample();
  CHECK_MESSAGE(!counterexample, counterexample.value_or(""));
}

TEST_CASE("flip rate edges") {
  const std::vector<FlipPair> same = {{"a", "A", "A"}, {"b", "B", "B"}};
  const std::vector<FlipPair> all = {{"a", "A", "B"}, {"b", "B", "C"}};
  CHECK(flip_rate(same) == 0.0);
  CHECK(flip_rate(all) == 100.0);
  CHECK_THROWS_AS(flip_rate(std::span<const FlipPair>{}), EmptyDenominator);
}

TEST_CASE("counterfactual prerequisites") {
  CHECK(cf_unfaithful(cf_record(true, true, "amish people", "amish")) == false);
  CHECK(cf_unfaithful(cf_record(true, true, "horses", "amish")) == true);
  CHECK_FALSE(cf_unfaithful(cf_record(false, true, "horses", "amish")).has_value());
  CHECK_FALSE(cf_unfaithful(cf_record(true, false, "horses", "amish")).has_value());
  const std::vector<CFRecord> excluded = {cf_record(false, false, "x", "y")};
  CHECK_THROWS_AS(cf_uf_rate(excluded), EmptyDenominator);
  const std::vector<CFRecord> faithful = {cf_record(true, true, "a b", "b")};
  CHECK(cf_uf_rate(faithful) == 0.0);
}

TEST_CASE("LAS edge groups") {
  const std::vector<PredictionRecord> only_input_blind = {{"a", true, false, false}, {"b", true, false, false}};
  const auto l = las(only_input_blind);
  CHECK(l.las == 1.0);
  CHECK(l.las0 == 1.0);
  CHECK(l.n1 == 0);
  const std::vector<PredictionRecord> leaking = {{"a", true, false, true}};
  CHECK(las(leaking).las == 1.0);
  CHECK(las(leaking).n0 == 0);
  const std::vector<PredictionRecord> unchanged = {{"a", true, true, false}, {"b", false, false, true}};
  CHECK(las(unchanged).las == 0.0);
  CHECK_THROWS_AS(las(std::span<const PredictionRecord>{}), EmptyDenominator);
}

TEST_CASE("aggregate errors") {
  CHECK_THROWS_AS(aggregate({{"t1", qualities(1, 1, 1, 1)}}), InsufficientTechniques);
  auto missing = qualities(1, 1, 1, 1);
  missing.las.reset();
  try {
    aggregate({{"t1", qualities(1, 1, 1, 1)}, {"t2", missing}});
    FAIL("expected MissingQuality");
  } catch (const MissingQuality& e) {
    CHECK(std::string(e.what()).find("Simu") != std::string::npos);
  }
}

TEST_CASE("complement commutes with min-max on 1000 random vectors") {
  const auto counterexample = minmax_counterexample(3, 1000);
  CHECK_MESSAGE(!counterexample, counterexample.value_or(""));
}

TEST_CASE("min-max degenerate and empty inputs") {
  const std::vector<double> flat = {4, 4, 4};
  CHECK(minmax(flat) == std::vector<double>{0.5, 0.5, 0.5});
  CHECK(minmax(std::span<const double>{}).empty());
  const std::vector<double> v = {2, 6, 4};
  CHECK(minmax(v) == std::vector<double>{0.0, 1.0, 0.5});
}

TEST_CASE("LAS matches the oracle, is bounded and ignores order") {
  Gen g(21);
  for (int i = 0; i < 500; ++i) {
    std::vector<PredictionRecord> r(static_cast<std::size_t>(g.integer(1, 12)));
    for (auto& p : r) p = {g.word(), g.coin(), g.coin(), g.coin()};
    const auto l = las(r);
    const auto o = oracle_las(r);
    REQUIRE(std::abs(l.las - o.las) < 1e-12);
    REQUIRE(std::abs(l.las0 - o.las0) < 1e-12);
    REQUIRE(std::abs(l.las1 - o.las1) < 1e-12);
    REQUIRE(l.las >= -1.0);
    REQUIRE(l.las <= 1.0);
    std::shuffle(r.begin(), r.end(), g.rng());
    REQUIRE(std::abs(las(r).las - l.las) < 1e-12);
  }
}

TEST_CASE("CF-UF: monotone in shared tokens, blind to excluded records") {
  Gen g(8);
  for (int i = 0; i < 500; ++i) {
    std::vector<CFRecord> records;
    for (int k = 0; k < g.integer(1, 8); ++k)
      records.push_back(cf_record(g.coin(0.8), g.coin(0.8), g.sentence(6), g.sentence(3)));

    CFRecord r = records.front();
    const auto before = cf_unfaithful(r);
    r.cf_expl_tokens.insert("sharedtoken");
    r.edit_tokens.insert("sharedtoken");
    const auto after = cf_unfaithful(r);
    REQUIRE(before.has_value() == after.has_value());
    if (after) REQUIRE(*after == false);

    const bool assessable = std::any_of(records.begin(), records.end(), [](auto& c) { return cf_unfaithful(c).has_value(); });
    if (!assessable) continue;
    const double rate = cf_uf_rate(records);
    REQUIRE(rate >= 0.0);
    REQUIRE(rate <= 100.0);
    std::vector<CFRecord> kept;
    std::copy_if(records.begin(), records.end(), std::back_inserter(kept), [](auto& c) { return cf_unfaithful(c).has_value(); });
    REQUIRE(cf_uf_rate(kept) == rate);
  }
}

TEST_CASE("aggregates stay in [0, 1]") {
  Gen g(13);
  for (int i = 0; i < 300; ++i) {
    std::map<std::string, QualityScores> per;
    for (int k = 0; k < g.integer(2, 5); ++k)
      per["t" + std::to_string(k)] = qualities(g.real(0, 100), g.real(0, 100), g.real(0, 100), g.real(-1, 1));
    for (const auto& [_, v] : aggregate(per)) {
      REQUIRE(v >= 0.0);
      REQUIRE(v <= 1.0);
    }
  }
}

TEST_CASE("scores from records") {
  auto rec = [](PerturbationKind kind, Validity v, Label before, std::optional<Label> after) {
    PerturbationRecord r;
    r.kind = kind;
    r.valid = v;
    r.original_answer = std::move(before);
    r.gold = "A";
    r.eval_answer = std::move(after);
    return r;
  };
  std::vector<PerturbationRecord> recs = {
      rec(PerturbationKind::Paraphrase, Validity::Accepted, "A", "A"),
      rec(PerturbationKind::Paraphrase, Validity::Accepted, "A", "B"),
      rec(PerturbationKind::Paraphrase, Validity::Rejected, "A", "C"),
      rec(PerturbationKind::Paraphrase, Validity::Accepted, "A", std::nullopt),
      rec(PerturbationKind::Mistake, Validity::Accepted, "A", "B"),
  };
  auto cf = rec(PerturbationKind::Counterfactual, Validity::Accepted, "A", "C");
  cf.cf_gold = "C";
  cf.cf_explanation = "Iron filings move.";
  cf.edit = "filings";
  recs.push_back(cf);
  cf.cf_explanation = "Something else.";
  recs.push_back(cf);
  cf.original_answer = "B";  // wrong before the edit: excluded
  recs.push_back(cf);

  const std::vector<PredictionRecord> preds = {{"a", true, false, false}};
  const auto s = compute_scores(recs, preds);
  CHECK(s.para_flip_pct == 50.0);
  CHECK(s.counts.para == 2);
  CHECK(s.mistake_flip_pct == 100.0);
  CHECK(s.cf_uf_pct == 50.0);
  CHECK(s.counts.cf_assessable == 2);
  CHECK(s.las == 1.0);

  const auto none = compute_scores({}, {});
  CHECK_FALSE(none.para_flip_pct.has_value());
  CHECK_FALSE(none.las.has_value());
}
