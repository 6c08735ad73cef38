#pragma once

// JSON mappings for the domain types plus line-delimited record helpers.
// Optional fields are omitted when empty and tolerated when absent.

#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "seacot/core.hpp"
#include "seacot/errors.hpp"

namespace seacot {

using json = nlohmann::json;

void to_json(json& j, const Choice& v);
void from_json(const json& j, Choice& v);
void to_json(json& j, const QAInstance& v);
void from_json(const json& j, QAInstance& v);
void to_json(json& j, const GenerationParams& v);
void from_json(const json& j, GenerationParams& v);
void to_json(json& j, const TokenLogprob& v);
void from_json(const json& j, TokenLogprob& v);
void to_json(json& j, const ReasoningSample& v);
void from_json(const json& j, ReasoningSample& v);
void to_json(json& j, const CandidateTrace& v);
void from_json(const json& j, CandidateTrace& v);
void to_json(json& j, const SubQA& v);
void from_json(const json& j, SubQA& v);
void to_json(json& j, const QDTrace& v);
void from_json(const json& j, QDTrace& v);
void to_json(json& j, const SRRound& v);
void from_json(const json& j, SRRound& v);
void to_json(json& j, const SRTrace& v);
void from_json(const json& j, SRTrace& v);
void to_json(json& j, const TechniqueOutput& v);
void from_json(const json& j, TechniqueOutput& v);
void to_json(json& j, const PerturbationRecord& v);
void from_json(const json& j, PerturbationRecord& v);
void to_json(json& j, const PredictionRecord& v);
void from_json(const json& j, PredictionRecord& v);
void to_json(json& j, const QualityCounts& v);
void from_json(const json& j, QualityCounts& v);
void to_json(json& j, const QualityScores& v);
void from_json(const json& j, QualityScores& v);

// Reads one JSON object per non-blank line. Parse and schema failures are
// reported as ParseError carrying the 1-based line number.
template <typename T>
std::vector<T> read_jsonl(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(path.string(), 0, "cannot open file");
  std::vector<T> out;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      out.push_back(json::parse(line).get<T>());
    } catch (const json::exception& e) {
      throw ParseError(path.string(), lineno, e.what());
    }
  }
  return out;
}

// Appends records and flushes; the file is only ever extended.
template <typename T>
void append_jsonl(const std::filesystem::path& path, const std::vector<T>& records) {
  if (records.empty()) return;
  std::ofstream out(path, std::ios::app | std::ios::binary);
  if (!out) throw Error("cannot open " + path.string() + " for appending");
  for (const auto& r : records) out << json(r).dump() << '\n';
  out.flush();
}

// Serialises a JSON document with a trailing newline and deterministic key order.
void write_json_file(const std::filesystem::path& path, const json& doc);
json read_json_file(const std::filesystem::path& path);

}  // namespace seacot
