#pragma once

// Run orchestration: technique outputs, perturbations, student predictions
// and scores, persisted under one output directory:
//
//   <out>/manifest.json, cache.jsonl, scores.json, report.csv, report.md
//   <out>/<technique>/outputs.jsonl, perturbations.jsonl, predictions.jsonl,
//                     failures.jsonl, scores.json
//
// Instances are processed in chunks of the evaluated backend's parallelism
// limit and written in dataset order, so record files do not depend on
// scheduling.

#include <cstdint>
#include <filesystem>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "seacot/core.hpp"
#include "seacot/dataset.hpp"
#include "seacot/gateway.hpp"
#include "seacot/perturber.hpp"
#include "seacot/report.hpp"
#include "seacot/techniques.hpp"

namespace seacot {

struct ExperimentConfig {
  std::filesystem::path dataset_path;
  DatasetFormat format = DatasetFormat::OBQA;
  std::vector<Technique> techniques;

  BackendConfig evaluated;
  BackendConfig student;
  ModifierConfig modifier;
  // Relative mock script paths resolve against these.
  std::filesystem::path backend_dir;
  std::filesystem::path modifier_dir;

  std::optional<std::filesystem::path> templates_dir;
  std::optional<std::filesystem::path> nli_exemplars;
  std::optional<std::filesystem::path> train_dataset;
  int student_demos = 3;

  int n_samples = 10;
  int max_rounds = 3;
  std::optional<int> shots;
  std::int64_t seed = 0;

  std::filesystem::path out_dir;
  bool resume = false;
};

// {"evaluated": {...}, "student": {...}} or a single backend object used for
// both roles.
void load_backend_config(const std::filesystem::path& path, ExperimentConfig& cfg);
ModifierConfig load_modifier_config(const std::filesystem::path& path);

struct FailureRecord {
  std::string instance_id;
  std::string technique;
  std::string stage;
  std::string error;
  std::string message;
};

void to_json(json& j, const FailureRecord& v);
void from_json(const json& j, FailureRecord& v);

struct RunPaths {
  std::filesystem::path root;

  std::filesystem::path manifest() const { return root / "manifest.json"; }
  std::filesystem::path cache() const { return root / "cache.jsonl"; }
  std::filesystem::path technique_dir(Technique t) const { return root / std::string(slug(t)); }
  std::filesystem::path outputs(Technique t) const { return technique_dir(t) / "outputs.jsonl"; }
  std::filesystem::path perturbations(Technique t) const { return technique_dir(t) / "perturbations.jsonl"; }
  std::filesystem::path predictions(Technique t) const { return technique_dir(t) / "predictions.jsonl"; }
  std::filesystem::path failures(Technique t) const { return technique_dir(t) / "failures.jsonl"; }
  std::filesystem::path scores(Technique t) const { return technique_dir(t) / "scores.json"; }
};

// Drops a torn final line left by an interrupted writer. Returns true when
// the file was shortened.
bool repair_jsonl(const std::filesystem::path& path);

class Experiment {
 public:
  explicit Experiment(ExperimentConfig cfg);
  ~Experiment();

  void generate();
  void perturb();
  void simulate();
  // Per-technique and combined scores; writes the report files. Throws
  // DriftError when templates or the stopword list changed since generation.
  Report score();

  // Every phase in order.
  Report run();

  const std::vector<QAInstance>& instances() const { return instances_; }
  GatewayStats evaluated_stats() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
  std::vector<QAInstance> instances_;
};

// Per-technique scores.json from persisted records only, reading dataset,
// techniques and hashes from the manifest. Throws DriftError.
std::vector<std::pair<std::string, QualityScores>> score_directory(
    const std::filesystem::path& out_dir, const std::optional<std::filesystem::path>& templates_dir);

// scores.json, report.csv and report.md from the per-technique scores files.
Report report_directory(const std::filesystem::path& out_dir);

// Template and stopword hashes the manifest records.
json provenance_hashes(const TemplateLibrary& templates);

}  // namespace seacot
