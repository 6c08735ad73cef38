#include "seacot/experiment.hpp"

#include <algorithm>
#include <ctime>
#include <fstream>
#include <future>
#include <map>
#include <set>

#include <spdlog/spdlog.h>

#include "seacot/metrics.hpp"
#include "seacot/sea_scorer.hpp"
#include "seacot/serialization.hpp"
#include "seacot/student.hpp"

namespace seacot {

namespace {

json read_config(const std::filesystem::path& path) {
  try {
    return read_json_file(path);
  } catch (const ParseError& e) {
    throw ConfigError(std::string("cannot read config: ") + e.what());
  }
}

}  // namespace

void load_backend_config(const std::filesystem::path& path, ExperimentConfig& cfg) {
  const json doc = read_config(path);
  try {
    if (doc.contains("evaluated")) {
      cfg.evaluated = doc.at("evaluated").get<BackendConfig>();
      cfg.student = doc.contains("student") ? doc.at("student").get<BackendConfig>() : cfg.evaluated;
    } else {
      cfg.evaluated = doc.get<BackendConfig>();
      cfg.student = cfg.evaluated;
    }
  } catch (const json::exception& e) {
    throw ConfigError("bad backend config " + path.string() + ": " + e.what());
  }
  cfg.backend_dir = path.parent_path();
}

ModifierConfig load_modifier_config(const std::filesystem::path& path) {
  try {
    return read_config(path).get<ModifierConfig>();
  } catch (const json::exception& e) {
    throw ConfigError("bad modifier config " + path.string() + ": " + e.what());
  }
}

void to_json(json& j, const FailureRecord& v) {
  j = json{{"instance_id", v.instance_id},
           {"technique", v.technique},
           {"stage", v.stage},
           {"error", v.error},
           {"message", v.message}};
}

void from_json(const json& j, FailureRecord& v) {
  j.at("instance_id").get_to(v.instance_id);
  j.at("technique").get_to(v.technique);
  j.at("stage").get_to(v.stage);
  j.at("error").get_to(v.error);
  j.at("message").get_to(v.message);
}

bool repair_jsonl(const std::filesystem::path& path) {
  std::error_code ec;
  const auto size = std::filesystem::file_size(path, ec);
  if (ec || size == 0) return false;
  std::string content;
  {
    std::ifstream in(path, std::ios::binary);
    content.assign(std::istreambuf_iterator<char>(in), {});
  }
  if (content.back() == '\n') return false;
  const auto keep = content.rfind('\n');
  std::filesystem::resize_file(path, keep == std::string::npos ? 0 : keep + 1);
  spdlog::warn("dropped a torn record at the end of {}", path.string());
  return true;
}

json provenance_hashes(const TemplateLibrary& templates) {
  return json{{"templates", templates.hashes()}, {"stopwords", stopword_list_hash()}};
}

namespace {

std::string now_utc() {
  const std::time_t t = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::vector<std::string> drifted(const json& recorded, const json& current) {
  std::vector<std::string> out;
  if (recorded.value("stopwords", std::string{}) != current.value("stopwords", std::string{}))
    out.push_back("stopwords");
  std::map<std::string, std::string> a = recorded.value("templates", std::map<std::string, std::string>{});
  std::map<std::string, std::string> b = current.value("templates", std::map<std::string, std::string>{});
  std::set<std::string> names;
  for (const auto& [k, _] : a) names.insert(k);
  for (const auto& [k, _] : b) names.insert(k);
  for (const auto& n : names) {
    auto ia = a.find(n), ib = b.find(n);
    if (ia == a.end() || ib == b.end() || ia->second != ib->second) out.push_back("template:" + n);
  }
  return out;
}

TemplateLibrary make_templates(std::string_view dataset, const std::optional<std::filesystem::path>& dir) {
  return dir ? TemplateLibrary::load(dataset, *dir) : TemplateLibrary::defaults(dataset);
}

// Runs `work` over items in fixed-width chunks and hands each chunk's results
// to `sink` in input order.
template <typename Item, typename Work, typename Sink>
void for_each_chunk(const std::vector<Item>& items, std::size_t width, Work work, Sink sink) {
  using Result = std::invoke_result_t<Work, const Item&>;
  width = std::max<std::size_t>(width, 1);
  for (std::size_t begin = 0; begin < items.size(); begin += width) {
    const std::size_t end = std::min(items.size(), begin + width);
    std::vector<std::future<Result>> pending;
    for (std::size_t i = begin; i < end; ++i)
      pending.push_back(std::async(std::launch::async, work, std::cref(items[i])));
    std::vector<Result> results;
    for (auto& f : pending) results.push_back(f.get());
    sink(results);
  }
}

std::string error_kind(const std::exception& e) {
  if (dynamic_cast<const RateLimited*>(&e)) return "RateLimited";
  if (dynamic_cast<const TransportError*>(&e)) return "TransportError";
  if (dynamic_cast<const RequestRejected*>(&e)) return "RequestRejected";
  if (dynamic_cast<const MalformedResponse*>(&e)) return "MalformedResponse";
  if (dynamic_cast<const MissingLogprobs*>(&e)) return "MissingLogprobs";
  if (dynamic_cast<const NoOptionMatched*>(&e)) return "NoOptionMatched";
  if (dynamic_cast<const UnparseableAnswer*>(&e)) return "UnparseableAnswer";
  if (dynamic_cast<const NoParseableSamples*>(&e)) return "NoParseableSamples";
  if (dynamic_cast<const EmptyDecomposition*>(&e)) return "EmptyDecomposition";
  return "Error";
}

FailureRecord failure(const std::string& id, Technique t, std::string stage, const std::exception& e) {
  return {id, std::string(to_string(t)), std::move(stage), error_kind(e), e.what()};
}

template <typename T>
std::vector<T> read_records(const std::filesystem::path& path) {
  if (!std::filesystem::exists(path)) return {};
  repair_jsonl(path);
  return read_jsonl<T>(path);
}

}  // namespace

struct Experiment::Impl {
  ExperimentConfig cfg;
  RunPaths paths;
  TemplateLibrary templates;
  std::shared_ptr<ResponseCache> cache;
  std::map<std::string, std::unique_ptr<Gateway>> gateways;
  Gateway* evaluated = nullptr;
  Gateway* student = nullptr;
  ModifierGateways modifier;
  std::unique_ptr<SeaScorer> scorer;
  std::unique_ptr<Pipelines> pipelines;
  std::unique_ptr<Pipelines> paraphrase_validator;
  std::unique_ptr<Pipelines> mistake_validator;
  std::unique_ptr<Perturber> perturber;
  std::string created_at;

  Gateway* gateway_for(const BackendConfig& b, const std::filesystem::path& base) {
    const std::string key = json(b).dump() + "\n" + base.string();
    auto& slot = gateways[key];
    if (!slot) slot = std::make_unique<Gateway>(make_backend(b, base), gateway_options(b), cache);
    return slot.get();
  }

  PipelineConfig pipeline_config() const {
    PipelineConfig p;
    p.sampling.n_samples = cfg.n_samples;
    p.sampling.seed = cfg.seed;
    p.max_rounds = cfg.max_rounds;
    p.shots = cfg.shots;
    return p;
  }

  std::size_t width() const { return static_cast<std::size_t>(cfg.evaluated.parallelism_limit); }

  json manifest() const {
    json techniques = json::array();
    json records = json::object();
    for (auto t : cfg.techniques) {
      techniques.push_back(to_string(t));
      json files = json::object();
      for (auto [name, p] : {std::pair{"outputs", paths.outputs(t)}, {"perturbations", paths.perturbations(t)},
                             {"predictions", paths.predictions(t)}, {"failures", paths.failures(t)},
                             {"scores", paths.scores(t)}})
        if (std::filesystem::exists(p)) files[name] = std::filesystem::relative(p, paths.root).generic_string();
      records[std::string(slug(t))] = std::move(files);
    }
    json params{{"n_samples", cfg.n_samples},
                {"max_rounds", cfg.max_rounds},
                {"seed", cfg.seed},
                {"student_demos", cfg.student_demos},
                {"shots", cfg.shots ? json(*cfg.shots) : json(nullptr)},
                {"templates_dir", cfg.templates_dir ? json(cfg.templates_dir->string()) : json(nullptr)},
                {"train_dataset", cfg.train_dataset ? json(cfg.train_dataset->string()) : json(nullptr)},
                {"nli_exemplars", cfg.nli_exemplars ? json(cfg.nli_exemplars->string()) : json(nullptr)}};
    return json{{"dataset", {{"path", cfg.dataset_path.string()}, {"format", to_string(cfg.format)}}},
                {"techniques", std::move(techniques)},
                {"backends", {{"evaluated", cfg.evaluated}, {"student", cfg.student}, {"modifier", cfg.modifier}}},
                {"params", std::move(params)},
                {"hashes", provenance_hashes(templates)},
                {"created_at", created_at},
                {"updated_at", now_utc()},
                {"records", std::move(records)}};
  }

  void write_manifest() const { write_json_file(paths.manifest(), manifest()); }
};

Experiment::Experiment(ExperimentConfig cfg) : impl_(std::make_unique<Impl>()) {
  auto& m = *impl_;
  m.cfg = std::move(cfg);
  if (m.cfg.techniques.empty()) throw ConfigError("no techniques selected");
  if (m.cfg.n_samples < 1) throw ConfigError("--n-samples must be at least 1");
  if (m.cfg.max_rounds < 1) throw ConfigError("--max-rounds must be at least 1");
  validate(m.cfg.evaluated);
  validate(m.cfg.student);
  validate(m.cfg.modifier.paraphrase_backend);
  validate(m.cfg.modifier.mistake_backend);
  validate(m.cfg.modifier.counterfactual_backend);
  validate(m.cfg.modifier.highlight_backend);

  m.paths.root = m.cfg.out_dir;
  m.templates = make_templates(to_string(m.cfg.format), m.cfg.templates_dir);
  instances_ = load_dataset(m.cfg.dataset_path, m.cfg.format);

  std::filesystem::create_directories(m.paths.root);
  m.created_at = now_utc();
  if (std::filesystem::exists(m.paths.manifest())) {
    const json old = read_json_file(m.paths.manifest());
    const auto d = drifted(old.value("hashes", json::object()), provenance_hashes(m.templates));
    if (!d.empty()) throw DriftError(d);
    m.created_at = old.value("created_at", m.created_at);
  }
  for (auto t : m.cfg.techniques) std::filesystem::create_directories(m.paths.technique_dir(t));

  repair_jsonl(m.paths.cache());
  m.cache = std::make_shared<ResponseCache>(m.paths.cache());
  m.evaluated = m.gateway_for(m.cfg.evaluated, m.cfg.backend_dir);
  m.student = m.gateway_for(m.cfg.student, m.cfg.backend_dir);
  const auto& mc = m.cfg.modifier;
  m.modifier = {m.gateway_for(mc.paraphrase_backend, m.cfg.modifier_dir),
                m.gateway_for(mc.mistake_backend, m.cfg.modifier_dir),
                m.gateway_for(mc.counterfactual_backend, m.cfg.modifier_dir),
                m.gateway_for(mc.highlight_backend, m.cfg.modifier_dir)};

  EntailmentPromptConfig nli = m.cfg.nli_exemplars ? EntailmentPromptConfig::load(*m.cfg.nli_exemplars)
                                                   : EntailmentPromptConfig{};
  m.scorer = std::make_unique<SeaScorer>(*m.evaluated, std::move(nli), m.templates);
  const auto pc = m.pipeline_config();
  m.pipelines = std::make_unique<Pipelines>(*m.evaluated, m.templates, pc, m.scorer.get());
  m.paraphrase_validator = std::make_unique<Pipelines>(*m.modifier.paraphrase, m.templates, pc);
  m.mistake_validator = std::make_unique<Pipelines>(*m.modifier.mistake, m.templates, pc);
  m.perturber = std::make_unique<Perturber>(m.modifier, m.templates, mc.shots, mc.retry_budget);
  m.write_manifest();
}

Experiment::~Experiment() = default;

GatewayStats Experiment::evaluated_stats() const { return impl_->evaluated->stats(); }

void Experiment::generate() {
  auto& m = *impl_;
  for (auto t : m.cfg.techniques) {
    std::set<std::string> done;
    for (const auto& o : read_records<TechniqueOutput>(m.paths.outputs(t))) done.insert(o.instance_id);
    std::vector<QAInstance> todo;
    for (const auto& inst : instances_)
      if (!done.contains(inst.id)) todo.push_back(inst);
    spdlog::info("{}: generating {} outputs ({} already present)", to_string(t), todo.size(), done.size());

    using Result = std::pair<std::optional<TechniqueOutput>, std::optional<FailureRecord>>;
    for_each_chunk(todo, m.width(),
                   [&](const QAInstance& inst) -> Result {
                     try {
                       return {m.pipelines->run(t, inst), std::nullopt};
                     } catch (const ConfigError&) {
                       throw;
                     } catch (const Error& e) {
                       spdlog::warn("{} {}: {}", to_string(t), inst.id, e.what());
                       return {std::nullopt, failure(inst.id, t, "generate", e)};
                     }
                   },
                   [&](std::vector<Result>& results) {
                     std::vector<TechniqueOutput> outputs;
                     std::vector<FailureRecord> failures;
                     for (auto& [o, f] : results) {
                       if (o) outputs.push_back(std::move(*o));
                       if (f) failures.push_back(std::move(*f));
                     }
                     append_jsonl(m.paths.outputs(t), outputs);
                     append_jsonl(m.paths.failures(t), failures);
                   });
  }
  m.write_manifest();
}

namespace {

struct PerturbResult {
  std::vector<PerturbationRecord> records;
  std::vector<FailureRecord> failures;
};

}  // namespace

void Experiment::perturb() {
  auto& m = *impl_;
  std::map<std::string, const QAInstance*> by_id;
  for (const auto& i : instances_) by_id[i.id] = &i;
  constexpr PerturbationKind kKinds[] = {PerturbationKind::Paraphrase, PerturbationKind::Mistake,
                                         PerturbationKind::Counterfactual};

  for (auto t : m.cfg.techniques) {
    std::set<std::pair<std::string, PerturbationKind>> done;
    for (const auto& r : read_records<PerturbationRecord>(m.paths.perturbations(t))) done.insert({r.instance_id, r.kind});
    std::vector<TechniqueOutput> todo;
    for (auto& o : read_records<TechniqueOutput>(m.paths.outputs(t))) {
      if (!by_id.contains(o.instance_id)) continue;
      bool missing = false;
      for (auto k : kKinds) missing |= !done.contains({o.instance_id, k});
      if (missing) todo.push_back(std::move(o));
    }
    spdlog::info("{}: perturbing {} outputs", to_string(t), todo.size());

    auto work = [&](const TechniqueOutput& out) {
      const QAInstance& inst = *by_id.at(out.instance_id);
      PerturbResult res;
      for (auto kind : kKinds) {
        if (done.contains({out.instance_id, kind})) continue;
        PerturbationRecord r;
        r.kind = kind;
        r.instance_id = out.instance_id;
        r.technique = t;
        r.original_expl = out.explanation;
        r.original_answer = out.answer;
        r.gold = inst.gold;
        try {
          if (kind == PerturbationKind::Counterfactual) {
            const auto draft = m.perturber->gen_counterfactual(inst);
            r.cf_question = draft.question;
            r.cf_gold = draft.target;
            const auto hl = m.perturber->highlight_edits(inst.question, draft.question);
            r.edit = hl.edit;
            r.edit_source = hl.source;
            const auto v = validate_perturbation(r, inst, *m.pipelines);
            r.valid = v.validity;
            r.reason = v.reason;
            if (r.valid == Validity::Accepted) {
              QAInstance cf = inst;
              cf.question = draft.question;
              cf.gold = draft.target;
              try {
                const auto cf_out = m.pipelines->run(t, cf);
                r.eval_answer = cf_out.answer;
                r.cf_explanation =
                    (t == Technique::QD && cf_out.qd_trace) ? cf_out.qd_trace->sub_answers() : cf_out.explanation;
              } catch (const UnparseableAnswer& e) {
                r.reason = std::string("counterfactual run: ") + e.what();
              } catch (const NoParseableSamples& e) {
                r.reason = std::string("counterfactual run: ") + e.what();
              } catch (const EmptyDecomposition& e) {
                r.reason = std::string("counterfactual run: ") + e.what();
              }
            }
          } else {
            if (t == Technique::QD && out.qd_trace) {
              r.modified_expl = m.perturber->perturb_qd(*out.qd_trace, kind).format();
            } else {
              r.modified_expl = kind == PerturbationKind::Paraphrase ? m.perturber->paraphrase(out.explanation)
                                                                     : m.perturber->insert_mistakes(out.explanation);
            }
            const Pipelines& validator =
                kind == PerturbationKind::Paraphrase ? *m.paraphrase_validator : *m.mistake_validator;
            const auto v = validate_perturbation(r, inst, validator);
            r.valid = v.validity;
            r.reason = v.reason;
            r.validator_answer = v.answer;
            if (r.valid == Validity::Accepted) {
              r.eval_answer = m.pipelines->answer_with_explanation(inst, t, *r.modified_expl);
              if (!r.eval_answer) r.reason = "evaluated answer unparseable";
            }
          }
        } catch (const ModifierFailure& e) {
          r.valid = Validity::Rejected;
          r.reason = e.what();
        } catch (const DegenerateCounterfactual& e) {
          r.valid = Validity::Rejected;
          r.reason = e.what();
        } catch (const ConfigError&) {
          throw;
        } catch (const Error& e) {
          // Transport-level trouble: leave the kind unrecorded so a resumed
          // run retries it.
          spdlog::warn("{} {} {}: {}", to_string(t), out.instance_id, to_string(kind), e.what());
          res.failures.push_back(failure(out.instance_id, t, "perturb:" + std::string(to_string(kind)), e));
          continue;
        }
        res.records.push_back(std::move(r));
      }
      return res;
    };

    for_each_chunk(todo, m.width(), work, [&](std::vector<PerturbResult>& results) {
      std::vector<PerturbationRecord> records;
      std::vector<FailureRecord> failures;
      for (auto& r : results) {
        std::move(r.records.begin(), r.records.end(), std::back_inserter(records));
        std::move(r.failures.begin(), r.failures.end(), std::back_inserter(failures));
      }
      append_jsonl(m.paths.perturbations(t), records);
      append_jsonl(m.paths.failures(t), failures);
    });
  }
  m.write_manifest();
}

void Experiment::simulate() {
  auto& m = *impl_;
  std::map<std::string, const QAInstance*> by_id;
  for (const auto& i : instances_) by_id[i.id] = &i;
  std::vector<QAInstance> train;
  if (m.cfg.train_dataset) {
    train = load_dataset(*m.cfg.train_dataset, m.cfg.format);
    if (train.size() > static_cast<std::size_t>(std::max(0, m.cfg.student_demos)))
      train.resize(static_cast<std::size_t>(std::max(0, m.cfg.student_demos)));
  }

  for (auto t : m.cfg.techniques) {
    std::vector<StudentDemo> demos;
    for (const auto& inst : train) {
      try {
        demos.push_back({inst, m.pipelines->run(t, inst).explanation});
      } catch (const ConfigError&) {
        throw;
      } catch (const Error& e) {
        spdlog::warn("{}: no demo explanation for {}: {}", to_string(t), inst.id, e.what());
      }
    }

    std::set<std::string> done;
    for (const auto& p : read_records<PredictionRecord>(m.paths.predictions(t))) done.insert(p.instance_id);
    std::vector<TechniqueOutput> todo;
    for (auto& o : read_records<TechniqueOutput>(m.paths.outputs(t)))
      if (by_id.contains(o.instance_id) && !done.contains(o.instance_id)) todo.push_back(std::move(o));
    spdlog::info("{}: simulating {} student predictions", to_string(t), todo.size());

    for_each_chunk(
        todo, static_cast<std::size_t>(m.cfg.student.parallelism_limit),
        [&](const TechniqueOutput& o) {
          return simulate_one(*by_id.at(o.instance_id), o, *m.student, m.templates, demos);
        },
        [&](std::vector<PredictionRecord>& results) { append_jsonl(m.paths.predictions(t), results); });
  }
  m.write_manifest();
}

Report Experiment::score() {
  score_directory(impl_->cfg.out_dir, impl_->cfg.templates_dir);
  impl_->write_manifest();
  return report_directory(impl_->cfg.out_dir);
}

Report Experiment::run() {
  generate();
  perturb();
  simulate();
  return score();
}

namespace {

json load_manifest(const RunPaths& paths) {
  if (!std::filesystem::exists(paths.manifest())) throw ConfigError("no manifest.json in " + paths.root.string());
  return read_json_file(paths.manifest());
}

std::vector<Technique> manifest_techniques(const json& manifest) {
  std::vector<Technique> out;
  for (const auto& name : manifest.at("techniques")) {
    const auto t = parse_technique(name.get<std::string>());
    if (!t) throw ConfigError("unknown technique in manifest: " + name.get<std::string>());
    out.push_back(*t);
  }
  return out;
}

}  // namespace

std::vector<std::pair<std::string, QualityScores>> score_directory(
    const std::filesystem::path& out_dir, const std::optional<std::filesystem::path>& templates_dir) {
  RunPaths paths{out_dir};
  const json manifest = load_manifest(paths);
  const std::string dataset = manifest.at("dataset").at("format").get<std::string>();

  std::optional<std::filesystem::path> dir = templates_dir;
  if (!dir) {
    const auto& recorded = manifest.at("params").at("templates_dir");
    if (!recorded.is_null()) dir = recorded.get<std::string>();
  }
  const auto d = drifted(manifest.value("hashes", json::object()), provenance_hashes(make_templates(dataset, dir)));
  if (!d.empty()) throw DriftError(d);

  std::vector<std::pair<std::string, QualityScores>> rows;
  for (const auto t : manifest_techniques(manifest)) {
    const auto perturbations = read_records<PerturbationRecord>(paths.perturbations(t));
    const auto predictions = read_records<PredictionRecord>(paths.predictions(t));
    const QualityScores s = compute_scores(perturbations, predictions);
    json j = scores_json(s);
    j["technique"] = to_string(t);
    if (!predictions.empty()) {
      const auto l = las(predictions);
      j["las0"] = l.las0;
      j["las1"] = l.las1;
    }
    write_json_file(paths.scores(t), j);
    rows.emplace_back(std::string(to_string(t)), s);
  }
  return rows;
}

Report report_directory(const std::filesystem::path& out_dir) {
  RunPaths paths{out_dir};
  const json manifest = load_manifest(paths);
  std::vector<std::pair<std::string, QualityScores>> rows;
  for (const auto t : manifest_techniques(manifest)) {
    if (!std::filesystem::exists(paths.scores(t)))
      throw ConfigError("no scores for " + std::string(to_string(t)) + "; run the score step first");
    rows.emplace_back(std::string(to_string(t)), *scores_from_json(read_json_file(paths.scores(t))));
  }
  Report r = build_report(manifest.at("dataset").at("format").get<std::string>(), rows);
  write_report(r, out_dir);
  return r;
}

}  // namespace seacot
