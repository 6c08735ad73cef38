#include "seacot/dataset.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include <spdlog/spdlog.h>

#include "seacot/serialization.hpp"

namespace seacot {

std::optional<DatasetFormat> parse_dataset_format(std::string_view name) {
  if (name == "obqa") return DatasetFormat::OBQA;
  if (name == "qasc") return DatasetFormat::QASC;
  if (name == "strategyqa") return DatasetFormat::StrategyQA;
  return std::nullopt;
}

std::string_view to_string(DatasetFormat f) {
  switch (f) {
    case DatasetFormat::OBQA: return "obqa";
    case DatasetFormat::QASC: return "qasc";
    case DatasetFormat::StrategyQA: return "strategyqa";
  }
  return "?";
}

namespace {

std::string fallback_id(DatasetFormat f, std::size_t index) {
  return std::string(to_string(f)) + "-" + std::to_string(index);
}

QAInstance from_stem_row(const json& j, DatasetFormat f, std::size_t index) {
  QAInstance inst;
  inst.id = j.contains("id") ? j.at("id").get<std::string>() : fallback_id(f, index);
  const auto& q = j.at("question");
  inst.question = q.at("stem").get<std::string>();
  for (const auto& c : q.at("choices")) inst.choices.push_back({c.at("label").get<std::string>(), c.at("text").get<std::string>()});
  inst.gold = j.at("answerKey").get<std::string>();
  return inst;
}

QAInstance from_strategy_row(const json& j, std::size_t index) {
  QAInstance inst;
  inst.id = j.contains("qid") ? j.at("qid").get<std::string>() : fallback_id(DatasetFormat::StrategyQA, index);
  inst.question = j.at("question").get<std::string>();
  inst.choices = {{"yes", "yes"}, {"no", "no"}};
  inst.gold = j.at("answer").get<bool>() ? "yes" : "no";
  return inst;
}

QAInstance convert(const json& j, DatasetFormat f, std::size_t index) {
  return f == DatasetFormat::StrategyQA ? from_strategy_row(j, index) : from_stem_row(j, f, index);
}

}  // namespace

std::vector<QAInstance> load_dataset(const std::filesystem::path& path, DatasetFormat format) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError(path.string(), 0, "cannot open dataset file");
  std::stringstream buf;
  buf << in.rdbuf();
  const std::string content = buf.str();

  std::vector<QAInstance> out;
  const auto first = content.find_first_not_of(" \t\r\n");
  if (format == DatasetFormat::StrategyQA && first != std::string::npos && content[first] == '[') {
    json arr;
    try {
      arr = json::parse(content);
    } catch (const json::parse_error& e) {
      const auto line = 1 + std::count(content.begin(), content.begin() + std::min(e.byte, content.size()), '\n');
      throw ParseError(path.string(), static_cast<std::size_t>(line), e.what());
    }
    for (std::size_t i = 0; i < arr.size(); ++i) {
      try {
        out.push_back(convert(arr[i], format, i));
      } catch (const json::exception& e) {
        throw ParseError(path.string(), 0, "element " + std::to_string(i) + ": " + e.what());
      }
    }
  } else {
    std::istringstream lines(content);
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(lines, line)) {
      ++lineno;
      if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
      try {
        out.push_back(convert(json::parse(line), format, out.size()));
      } catch (const json::exception& e) {
        throw ParseError(path.string(), lineno, e.what());
      }
    }
  }

  const std::size_t expected = format == DatasetFormat::OBQA ? 4 : format == DatasetFormat::QASC ? 8 : 2;
  for (std::size_t i = 0; i < out.size(); ++i)
    if (out[i].choices.size() != expected)
      throw ValidationError(path.string() + ": row " + std::to_string(i) + " (" + out[i].id + ") has " +
                            std::to_string(out[i].choices.size()) + " choices, " + std::string(to_string(format)) +
                            " rows have " + std::to_string(expected));

  const auto violations = validate_dataset(out);
  if (!violations.empty()) {
    std::string msg = path.string() + ": " + std::to_string(violations.size()) + " validation error(s)";
    for (std::size_t i = 0; i < violations.size() && i < 5; ++i)
      msg += "\n  row " + std::to_string(violations[i].index) + " (" + violations[i].instance_id + "): " + violations[i].message;
    throw ValidationError(msg);
  }
  spdlog::info("loaded {} {} instances from {}", out.size(), to_string(format), path.string());
  return out;
}

}  // namespace seacot
