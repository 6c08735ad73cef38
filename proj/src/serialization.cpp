#include "seacot/serialization.hpp"

namespace seacot {

namespace {

template <typename T>
void put_opt(json& j, const char* key, const std::optional<T>& v) {
  if (v) j[key] = *v;
}

template <typename T>
void get_opt(const json& j, const char* key, std::optional<T>& v) {
  if (auto it = j.find(key); it != j.end() && !it->is_null()) {
    v = it->get<T>();
  } else {
    v.reset();
  }
}

template <typename Enum, typename Parse>
Enum get_enum(const json& j, const char* key, Parse parse) {
  const auto name = j.at(key).get<std::string>();
  auto value = parse(name);
  if (!value) throw json::other_error::create(501, std::string("unknown ") + key + " '" + name + "'", &j);
  return *value;
}

}  // namespace

void to_json(json& j, const Choice& v) { j = json{{"label", v.label}, {"text", v.text}}; }
void from_json(const json& j, Choice& v) {
  j.at("label").get_to(v.label);
  j.at("text").get_to(v.text);
}

void to_json(json& j, const QAInstance& v) {
  j = json{{"id", v.id}, {"question", v.question}, {"choices", v.choices}, {"gold", v.gold}};
}
void from_json(const json& j, QAInstance& v) {
  j.at("id").get_to(v.id);
  j.at("question").get_to(v.question);
  j.at("choices").get_to(v.choices);
  j.at("gold").get_to(v.gold);
}

void to_json(json& j, const GenerationParams& v) {
  j = json{{"temperature", v.temperature}, {"top_k", v.top_k}, {"max_tokens", v.max_tokens}, {"n_samples", v.n_samples}};
  put_opt(j, "seed", v.seed);
}
void from_json(const json& j, GenerationParams& v) {
  v.temperature = j.value("temperature", 0.0);
  v.top_k = j.value("top_k", 50);
  v.max_tokens = j.value("max_tokens", 256);
  v.n_samples = j.value("n_samples", 1);
  get_opt(j, "seed", v.seed);
}

void to_json(json& j, const TokenLogprob& v) { j = json::array({v.token, v.logprob}); }
void from_json(const json& j, TokenLogprob& v) {
  if (j.is_array()) {
    j.at(0).get_to(v.token);
    j.at(1).get_to(v.logprob);
  } else {
    j.at("token").get_to(v.token);
    j.at("logprob").get_to(v.logprob);
  }
}

void to_json(json& j, const ReasoningSample& v) {
  j = json{{"text", v.text}, {"token_logprobs", v.token_logprobs}, {"cumulative_logprob", v.cumulative_logprob}};
  put_opt(j, "answer", v.answer);
}
void from_json(const json& j, ReasoningSample& v) {
  j.at("text").get_to(v.text);
  get_opt(j, "answer", v.answer);
  v.token_logprobs = j.value("token_logprobs", std::vector<TokenLogprob>{});
  v.cumulative_logprob = j.value("cumulative_logprob", 0.0);
}

void to_json(json& j, const CandidateTrace& v) {
  j = json{{"sample_index", v.sample_index},
           {"s_e", v.s_e},
           {"s_o", v.s_o},
           {"s_t", v.s_t},
           {"cumulative_logprob", v.cumulative_logprob}};
}
void from_json(const json& j, CandidateTrace& v) {
  j.at("sample_index").get_to(v.sample_index);
  j.at("s_e").get_to(v.s_e);
  j.at("s_o").get_to(v.s_o);
  j.at("s_t").get_to(v.s_t);
  v.cumulative_logprob = j.value("cumulative_logprob", 0.0);
}

void to_json(json& j, const SubQA& v) { j = json{{"question", v.question}, {"answer", v.answer}}; }
void from_json(const json& j, SubQA& v) {
  j.at("question").get_to(v.question);
  j.at("answer").get_to(v.answer);
}

void to_json(json& j, const QDTrace& v) { j = json{{"steps", v.steps}, {"final_answer", v.final_answer}}; }
void from_json(const json& j, QDTrace& v) {
  j.at("steps").get_to(v.steps);
  j.at("final_answer").get_to(v.final_answer);
}

void to_json(json& j, const SRRound& v) {
  j = json{{"output", v.output}, {"feedback", v.feedback}};
  put_opt(j, "refined_output", v.refined_output);
}
void from_json(const json& j, SRRound& v) {
  j.at("output").get_to(v.output);
  j.at("feedback").get_to(v.feedback);
  get_opt(j, "refined_output", v.refined_output);
}

void to_json(json& j, const SRTrace& v) { j = json{{"rounds", v.rounds}, {"stopped_early", v.stopped_early}}; }
void from_json(const json& j, SRTrace& v) {
  j.at("rounds").get_to(v.rounds);
  j.at("stopped_early").get_to(v.stopped_early);
}

void to_json(json& j, const TechniqueOutput& v) {
  j = json{{"technique", to_string(v.technique)},
           {"instance_id", v.instance_id},
           {"explanation", v.explanation},
           {"answer", v.answer},
           {"samples", v.samples},
           {"selection_rule", v.selection_rule}};
  put_opt(j, "chosen_sample", v.chosen_sample);
  put_opt(j, "selection_trace", v.selection_trace);
  put_opt(j, "qd_trace", v.qd_trace);
  put_opt(j, "sr_trace", v.sr_trace);
}
void from_json(const json& j, TechniqueOutput& v) {
  v.technique = get_enum<Technique>(j, "technique", [](std::string_view s) { return parse_technique(s); });
  j.at("instance_id").get_to(v.instance_id);
  j.at("explanation").get_to(v.explanation);
  j.at("answer").get_to(v.answer);
  v.samples = j.value("samples", std::vector<ReasoningSample>{});
  v.selection_rule = j.value("selection_rule", std::string{});
  get_opt(j, "chosen_sample", v.chosen_sample);
  get_opt(j, "selection_trace", v.selection_trace);
  get_opt(j, "qd_trace", v.qd_trace);
  get_opt(j, "sr_trace", v.sr_trace);
}

void to_json(json& j, const PerturbationRecord& v) {
  j = json{{"kind", to_string(v.kind)},
           {"instance_id", v.instance_id},
           {"technique", to_string(v.technique)},
           {"original_expl", v.original_expl},
           {"original_answer", v.original_answer},
           {"gold", v.gold},
           {"valid", to_string(v.valid)}};
  put_opt(j, "modified_expl", v.modified_expl);
  put_opt(j, "cf_question", v.cf_question);
  put_opt(j, "cf_gold", v.cf_gold);
  put_opt(j, "edit", v.edit);
  put_opt(j, "edit_source", v.edit_source);
  put_opt(j, "reason", v.reason);
  put_opt(j, "validator_answer", v.validator_answer);
  put_opt(j, "eval_answer", v.eval_answer);
  put_opt(j, "cf_explanation", v.cf_explanation);
}
void from_json(const json& j, PerturbationRecord& v) {
  v.kind = get_enum<PerturbationKind>(j, "kind", [](std::string_view s) { return parse_perturbation_kind(s); });
  j.at("instance_id").get_to(v.instance_id);
  v.technique = get_enum<Technique>(j, "technique", [](std::string_view s) { return parse_technique(s); });
  j.at("original_expl").get_to(v.original_expl);
  j.at("original_answer").get_to(v.original_answer);
  j.at("gold").get_to(v.gold);
  v.valid = get_enum<Validity>(j, "valid", [](std::string_view s) { return parse_validity(s); });
  get_opt(j, "modified_expl", v.modified_expl);
  get_opt(j, "cf_question", v.cf_question);
  get_opt(j, "cf_gold", v.cf_gold);
  get_opt(j, "edit", v.edit);
  get_opt(j, "edit_source", v.edit_source);
  get_opt(j, "reason", v.reason);
  get_opt(j, "validator_answer", v.validator_answer);
  get_opt(j, "eval_answer", v.eval_answer);
  get_opt(j, "cf_explanation", v.cf_explanation);
}

void to_json(json& j, const PredictionRecord& v) {
  j = json{{"instance_id", v.instance_id},
           {"correct_full", v.correct_full},
           {"correct_input_only", v.correct_input_only},
           {"correct_expl_only", v.correct_expl_only}};
}
void from_json(const json& j, PredictionRecord& v) {
  j.at("instance_id").get_to(v.instance_id);
  j.at("correct_full").get_to(v.correct_full);
  j.at("correct_input_only").get_to(v.correct_input_only);
  j.at("correct_expl_only").get_to(v.correct_expl_only);
}

void to_json(json& j, const QualityCounts& v) {
  j = json{{"para", v.para},
           {"cf_assessable", v.cf_assessable},
           {"mistake", v.mistake},
           {"las_n0", v.las_n0},
           {"las_n1", v.las_n1}};
}
void from_json(const json& j, QualityCounts& v) {
  v.para = j.value("para", std::size_t{0});
  v.cf_assessable = j.value("cf_assessable", std::size_t{0});
  v.mistake = j.value("mistake", std::size_t{0});
  v.las_n0 = j.value("las_n0", std::size_t{0});
  v.las_n1 = j.value("las_n1", std::size_t{0});
}

void to_json(json& j, const QualityScores& v) {
  j = json::object();
  put_opt(j, "para_flip_pct", v.para_flip_pct);
  put_opt(j, "cf_uf_pct", v.cf_uf_pct);
  put_opt(j, "mistake_flip_pct", v.mistake_flip_pct);
  put_opt(j, "las", v.las);
  j["counts"] = v.counts;
}
void from_json(const json& j, QualityScores& v) {
  get_opt(j, "para_flip_pct", v.para_flip_pct);
  get_opt(j, "cf_uf_pct", v.cf_uf_pct);
  get_opt(j, "mistake_flip_pct", v.mistake_flip_pct);
  get_opt(j, "las", v.las);
  v.counts = j.value("counts", QualityCounts{});
}

void write_json_file(const std::filesystem::path& path, const json& doc) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot write " + path.string());
  out << doc.dump(2) << '\n';
}

json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(path.string(), 0, "cannot open file");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw ParseError(path.string(), 0, e.what());
  }
}

}  // namespace seacot
