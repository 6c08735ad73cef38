#include "doctest.h"

#include "e2e.hpp"
#include "properties.hpp"
#include "seacot/experiment.hpp"
#include "seacot/student.hpp"

using namespace seacot;
using namespace seacot::testing;

namespace {

std::size_t run_e2e(const std::filesystem::path& out) {
  Experiment e(e2e_config(out));
  e.run();
  return e.evaluated_stats().backend_calls;
}

template <typename T>
std::vector<T> records(const std::filesystem::path& p) {
  std::vector<T> out;
  std::ifstream in(p);
  std::string line;
  while (std::getline(in, line))
    if (!line.empty()) out.push_back(json::parse(line).get<T>());
  return out;
}

}  // namespace

TEST_CASE("mock run matches the golden files, twice") {
  TempDir a("e2e-a"), b("e2e-b");
  run_e2e(a.path());
  run_e2e(b.path());
  for (const char* f : {"scores.json", "report.csv"}) {
    CAPTURE(f);
    CHECK(slurp(a.path() / f) == slurp(e2e_dir() / "golden" / f));
  }
  for (const auto& f : e2e_artifacts()) {
    CAPTURE(f);
    CHECK(slurp(a.path() / f) == slurp(b.path() / f));
  }
}

TEST_CASE("mock run scores agree with the hand-worked scenario") {
  TempDir dir("e2e-hand");
  run_e2e(dir.path());
  const auto report = json::parse(slurp(dir.path() / "scores.json"));
  const auto& cot = report.at("techniques").at(0);
  const auto& sea = report.at("techniques").at(1);
  auto near = [](const json& v, double want) { return std::abs(v.get<double>() - want) < 1e-12; };

  // CoT, greedy chains. Paraphrases: q2 rejected, q3 flips C->D: 1 of 4.
  // Mistakes: q2 and q5 rejected, q1 and q4 flip: 2 of 3. Counterfactuals:
  // q1 faithful, q3 unfaithful, q2 misses y', q4 starts wrong: 1 of 2.
  // Student: leaking {q1: 1, q5: 0}, non-leaking {q2: 0, q3: 0, q4: 1}.
  CHECK(cot.at("technique") == "CoT");
  CHECK(near(cot.at("para_flip_pct"), 100.0 * 1 / 4));
  CHECK(near(cot.at("mistake_flip_pct"), 100.0 * 2 / 3));
  CHECK(near(cot.at("cf_uf_pct"), 100.0 * 1 / 2));
  CHECK(near(cot.at("las"), (1.0 / 2 + 1.0 / 3) / 2));
  CHECK(cot.at("counts").at("las_n1") == 2);

  // SEA-CoT picks q1 sample 3 and q3 sample 1. No paraphrase flips; every
  // accepted mistake flips; leaking {q1: 1, q3: 1, q5: 0}, non-leaking
  // {q2: 0, q4: 1}.
  CHECK(near(sea.at("para_flip_pct"), 0.0));
  CHECK(near(sea.at("mistake_flip_pct"), 100.0));
  CHECK(near(sea.at("cf_uf_pct"), 50.0));
  CHECK(near(sea.at("las"), (2.0 / 3 + 1.0 / 2) / 2));

  // Para [25, 0], CF-UF equal, Mistakes [66.7, 100], Simu [5/12, 7/12].
  CHECK(near(cot.at("aggregate"), (0 + 0.5 + 0 + 0) / 4));
  CHECK(near(sea.at("aggregate"), (1 + 0.5 + 1 + 1) / 4));
}

TEST_CASE("record details of the scenario") {
  TempDir dir("e2e-records");
  run_e2e(dir.path());
  const RunPaths paths{dir.path()};

  const auto outputs = records<TechniqueOutput>(paths.outputs(Technique::SEACoT));
  REQUIRE(outputs.size() == 5);
  CHECK(outputs[0].chosen_sample == 3u);
  CHECK(outputs[2].chosen_sample == 1u);
  CHECK(outputs[2].selection_trace->at(0).s_e == 1.0 - 0.7);

  const auto perts = records<PerturbationRecord>(paths.perturbations(Technique::CoT));
  CHECK(perts.size() == 15);
  auto find = [&](const std::string& id, PerturbationKind k) {
    return *std::find_if(perts.begin(), perts.end(), [&](auto& r) { return r.instance_id == id && r.kind == k; });
  };
  CHECK(find("q5", PerturbationKind::Mistake).valid == Validity::Rejected);
  CHECK(find("q5", PerturbationKind::Counterfactual).valid == Validity::Rejected);
  const auto q3cf = find("q3", PerturbationKind::Counterfactual);
  CHECK(q3cf.edit_source == "diff");
  CHECK(q3cf.edit == "above one hundred");
  CHECK(find("q1", PerturbationKind::Counterfactual).edit_source == "modifier");
  CHECK_FALSE(std::filesystem::exists(paths.failures(Technique::CoT)));
}

TEST_CASE("resuming after generation reproduces the run with fewer calls") {
  TempDir full("e2e-full"), part("e2e-part");
  const auto full_calls = run_e2e(full.path());

  {
    Experiment e(e2e_config(part.path()));
    e.generate();
  }
  // A torn line from an interrupted writer.
  std::ofstream(RunPaths{part.path()}.outputs(Technique::CoT), std::ios::app) << "{\"instance_id\": \"q";
  auto cfg = e2e_config(part.path());
  cfg.resume = true;
  Experiment resumed(cfg);
  resumed.run();
  CHECK(resumed.evaluated_stats().backend_calls < full_calls);
  for (const auto& f : e2e_artifacts()) {
    CAPTURE(f);
    CHECK(slurp(full.path() / f) == slurp(part.path() / f));
  }
}

TEST_CASE("scoring refuses changed templates") {
  TempDir out("e2e-drift"), templates("drift-templates");
  run_e2e(out.path());
  CHECK_NOTHROW(score_directory(out.path(), std::nullopt));
  std::ofstream(templates.path() / "paraphrase.txt") << "Say it differently: {explanation}\n";
  CHECK_THROWS_WITH_AS(score_directory(out.path(), templates.path()), doctest::Contains("template:paraphrase"),
                       DriftError);
}

TEST_CASE("torn JSONL tails are dropped") {
  TempDir dir("repair");
  const auto p = dir.path() / "x.jsonl";
  std::ofstream(p) << "{\"a\": 1}\n{\"b\": 2}\n{\"c\":";
  CHECK(repair_jsonl(p));
  CHECK(slurp(p) == "{\"a\": 1}\n{\"b\": 2}\n");
  CHECK_FALSE(repair_jsonl(p));
  CHECK_FALSE(repair_jsonl(dir.path() / "absent.jsonl"));
}

TEST_CASE("student simulation: LAS of scripted students") {
  const auto templates = TemplateLibrary::defaults("obqa");
  std::vector<QAInstance> qs;
  std::vector<TechniqueOutput> outs;
  for (int i = 0; i < 4; ++i) {
    qs.push_back(lettered("s" + std::to_string(i), "Question " + std::to_string(i) + "?", {"w", "x", "y", "z"}, "C"));
    TechniqueOutput o;
    o.instance_id = qs.back().id;
    o.answer = "C";
    o.explanation = "Because of reason " + std::to_string(i) + ".";
    outs.push_back(o);
  }

  // Right only with explanation and question together.
  auto helped = scripted(json::parse(R"({"rules": [
    {"regex": "Explanation: [^\n]*\nQ: ", "responses": [" (C)."]}
  ], "default": [" (A)."]})"));
  const auto p1 = simulate_student_prompted(outs, qs, *helped.gateway, templates);
  REQUIRE(p1.size() == 4);
  const auto l1 = las(p1);
  CHECK(l1.las0 == 1.0);
  CHECK(l1.las == 1.0);
  CHECK(l1.n1 == 0);

  // Answers from the question alone, ignoring the explanation.
  auto ignores = scripted(json::parse(R"({"rules": [
    {"contains": "Q: Question 0?", "responses": [" (C)."]},
    {"contains": "Q: Question 1?", "responses": [" (C)."]}
  ], "default": [" (B)."]})"));
  const auto p2 = simulate_student_prompted(outs, qs, *ignores.gateway, templates);
  CHECK(las(p2).las == 0.0);
  CHECK(p2[0].correct_input_only);
  CHECK_FALSE(p2[2].correct_full);

  // Backend failures count as wrong answers.
  auto broken = scripted(json::parse(R"({"default": [{"error": "malformed"}]})"));
  const auto p3 = simulate_one(qs[0], outs[0], *broken.gateway, templates);
  CHECK_FALSE(p3.correct_full);
  CHECK_FALSE(p3.correct_input_only);
  CHECK_FALSE(p3.correct_expl_only);
}

TEST_CASE("student prompts carry demonstrations in the same layout") {
  const auto templates = TemplateLibrary::defaults("obqa");
  const auto q = lettered("t", "Test question?", {"a1", "a2", "a3", "a4"}, "A");
  const std::vector<StudentDemo> demos = {{lettered("d", "Demo question?", {"b1", "b2", "b3", "b4"}, "B"), "Demo why."}};
  const auto both = student_prompt(q, "Test why.", StudentMode::Both, templates, demos);
  CHECK(both.find("Explanation: Demo why.\nQ: Demo question?\nAnswer Choices:\n(A) b1") != std::string::npos);
  CHECK(both.find("The answer is (B) b2.\n\n") != std::string::npos);
  CHECK(both.ends_with("Explanation: Test why.\nQ: Test question?\nAnswer Choices:\n(A) a1\n(B) a2\n(C) a3\n(D) a4\nThe answer is"));
  const auto input = student_prompt(q, "Test why.", StudentMode::Input, templates, demos);
  CHECK(input.find("why") == std::string::npos);
  const auto expl = student_prompt(q, "Test why.", StudentMode::Explanation, templates);
  CHECK(expl.find("Test question?") == std::string::npos);
}

TEST_CASE("config loading") {
  ExperimentConfig cfg;
  load_backend_config(e2e_dir() / "backends.json", cfg);
  CHECK(cfg.evaluated.model_name == "mock-eval");
  CHECK(cfg.student.model_name == "mock-student");
  CHECK(cfg.backend_dir == e2e_dir());

  TempDir dir("cfg");
  std::ofstream(dir.path() / "single.json") << R"({"kind": "mock", "model_name": "only", "script": "s.json"})";
  load_backend_config(dir.path() / "single.json", cfg);
  CHECK(cfg.student.model_name == "only");
  CHECK(cfg.evaluated.model_name == "only");

  std::ofstream(dir.path() / "bad.json") << "{not json";
  CHECK_THROWS_AS(load_backend_config(dir.path() / "bad.json", cfg), ConfigError);
}

TEST_CASE("a missing mock script fails at construction") {
  TempDir out("e2e-bad");
  auto cfg = e2e_config(out.path());
  cfg.evaluated.script = "no-such-script.json";
  CHECK_THROWS_AS(Experiment{cfg}, ConfigError);
}
