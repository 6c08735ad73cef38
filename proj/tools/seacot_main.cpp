// seacot: run prompting pipelines, perturb their explanations and score them.

#include <iostream>

#include <CLI11.hpp>
#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include "seacot/dataset.hpp"
#include "seacot/errors.hpp"
#include "seacot/experiment.hpp"

namespace {

using namespace seacot;

struct Options {
  std::string dataset;
  std::string format = "obqa";
  std::vector<std::string> techniques;
  std::string backend_config;
  std::string modifier_config;
  std::string mock_script;
  std::string out_dir = "seacot-out";
  std::string templates;
  std::string train_dataset;
  std::string nli_exemplars;
  int n_samples = 10;
  int max_rounds = 3;
  int shots = -1;
  int student_demos = 3;
  std::int64_t seed = 0;
  bool resume = false;
  std::string log_level = "info";
};

DatasetFormat format_of(const Options& o) {
  auto f = parse_dataset_format(o.format);
  if (!f) throw ConfigError("unknown --format '" + o.format + "' (obqa, qasc, strategyqa)");
  return *f;
}

ExperimentConfig experiment_config(const Options& o) {
  ExperimentConfig cfg;
  if (o.dataset.empty()) throw ConfigError("--dataset is required");
  cfg.dataset_path = o.dataset;
  cfg.format = format_of(o);
  const std::vector<std::string> names =
      o.techniques.empty() ? std::vector<std::string>{"CoT", "SC-CoT", "SEA-CoT", "QD", "SR"} : o.techniques;
  for (const auto& n : names) {
    auto t = parse_technique(n);
    if (!t) throw ConfigError("unknown --technique '" + n + "'");
    if (std::find(cfg.techniques.begin(), cfg.techniques.end(), *t) == cfg.techniques.end()) cfg.techniques.push_back(*t);
  }

  if (!o.backend_config.empty()) {
    load_backend_config(o.backend_config, cfg);
  } else if (!o.mock_script.empty()) {
    cfg.evaluated.kind = "mock";
    cfg.evaluated.model_name = "mock";
    cfg.evaluated.script = std::filesystem::absolute(o.mock_script).string();
    cfg.student = cfg.evaluated;
  } else {
    throw ConfigError("pass --backend-config or --mock-script");
  }

  if (!o.modifier_config.empty()) {
    cfg.modifier = load_modifier_config(o.modifier_config);
    cfg.modifier_dir = std::filesystem::path(o.modifier_config).parent_path();
  } else {
    // Without a modifier config every modifier role uses the evaluated backend.
    cfg.modifier.paraphrase_backend = cfg.evaluated;
    cfg.modifier.mistake_backend = cfg.evaluated;
    cfg.modifier.counterfactual_backend = cfg.evaluated;
    cfg.modifier.highlight_backend = cfg.evaluated;
    cfg.modifier_dir = cfg.backend_dir;
  }

  if (!o.templates.empty()) cfg.templates_dir = o.templates;
  if (!o.train_dataset.empty()) cfg.train_dataset = o.train_dataset;
  if (!o.nli_exemplars.empty()) cfg.nli_exemplars = o.nli_exemplars;
  if (o.shots >= 0) cfg.shots = o.shots;
  cfg.student_demos = o.student_demos;
  cfg.n_samples = o.n_samples;
  cfg.max_rounds = o.max_rounds;
  cfg.seed = o.seed;
  cfg.out_dir = o.out_dir;
  cfg.resume = o.resume;
  return cfg;
}

void print_report(const Report& r) { std::cout << report_markdown(r); }

void add_run_options(CLI::App* cmd, Options& o) {
  cmd->add_option("--dataset", o.dataset, "Dataset file")->required();
  cmd->add_option("--format", o.format, "obqa, qasc or strategyqa")->capture_default_str();
  cmd->add_option("--technique", o.techniques, "CoT, SC-CoT, SEA-CoT, QD or SR (repeatable; default all)");
  cmd->add_option("--backend-config", o.backend_config, "Backend config JSON");
  cmd->add_option("--modifier-config", o.modifier_config, "Modifier config JSON");
  cmd->add_option("--mock-script", o.mock_script, "Use a scripted mock backend for every role");
  cmd->add_option("--n-samples", o.n_samples, "Sampled chains for SC-CoT / SEA-CoT")->capture_default_str();
  cmd->add_option("--max-rounds", o.max_rounds, "Self-refine rounds")->capture_default_str();
  cmd->add_option("--shots", o.shots, "Exemplars per reasoning prompt (default: all)");
  cmd->add_option("--seed", o.seed, "Sampling seed")->capture_default_str();
  cmd->add_option("--templates", o.templates, "Directory of template overrides");
  cmd->add_option("--train-dataset", o.train_dataset, "Training split for student demonstrations");
  cmd->add_option("--student-demos", o.student_demos, "Student demonstrations")->capture_default_str();
  cmd->add_option("--nli-exemplars", o.nli_exemplars, "JSONL of entailment exemplars");
  cmd->add_option("--out-dir", o.out_dir, "Output directory")->capture_default_str();
  cmd->add_flag("--resume", o.resume, "Continue a run in an existing output directory");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"seacot: chain-of-thought explanation quality harness"};
  app.require_subcommand(1);
  app.fallthrough();
  Options o;
  app.add_option("--log-level", o.log_level, "trace, debug, info, warn, error")->capture_default_str();

  auto* run = app.add_subcommand("run", "Generate, perturb, simulate and score");
  add_run_options(run, o);
  auto* perturb = app.add_subcommand("perturb", "Perturb and re-evaluate persisted outputs");
  add_run_options(perturb, o);
  auto* las = app.add_subcommand("las", "Prompted-student predictions for persisted outputs");
  add_run_options(las, o);
  auto* score = app.add_subcommand("score", "Per-technique scores from persisted records");
  score->add_option("--out-dir", o.out_dir, "Run directory")->required();
  score->add_option("--templates", o.templates, "Template directory to check for drift");
  auto* report = app.add_subcommand("report", "Report tables from per-technique scores");
  report->add_option("--out-dir", o.out_dir, "Run directory")->required();
  auto* validate_cmd = app.add_subcommand("validate", "Check a dataset file");
  validate_cmd->add_option("--dataset", o.dataset, "Dataset file")->required();
  validate_cmd->add_option("--format", o.format, "obqa, qasc or strategyqa")->capture_default_str();

  CLI11_PARSE(app, argc, argv);
  spdlog::set_default_logger(spdlog::stderr_color_mt("seacot"));
  spdlog::set_level(spdlog::level::from_str(o.log_level));

  try {
    if (run->parsed()) {
      if (std::filesystem::exists(std::filesystem::path(o.out_dir) / "manifest.json") && !o.resume)
        throw ConfigError(o.out_dir + " already holds a run; pass --resume to continue it");
      Experiment ex(experiment_config(o));
      print_report(ex.run());
      const auto s = ex.evaluated_stats();
      spdlog::info("evaluated backend: {} calls, {} cache hits, {} retries", s.backend_calls, s.cache_hits, s.retries);
    } else if (perturb->parsed()) {
      Experiment ex(experiment_config(o));
      ex.perturb();
    } else if (las->parsed()) {
      Experiment ex(experiment_config(o));
      ex.simulate();
    } else if (score->parsed()) {
      std::optional<std::filesystem::path> dir;
      if (!o.templates.empty()) dir = o.templates;
      for (const auto& [name, s] : score_directory(o.out_dir, dir))
        std::cout << name << ": " << scores_json(s).dump() << "\n";
    } else if (report->parsed()) {
      print_report(report_directory(o.out_dir));
    } else if (validate_cmd->parsed()) {
      const auto instances = load_dataset(o.dataset, format_of(o));
      std::cout << o.dataset << ": " << instances.size() << " instances, no violations\n";
    }
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
