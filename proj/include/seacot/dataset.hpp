#pragma once

// Loaders for the OBQA / QASC question-stem JSONL layout and StrategyQA
// (JSON array or JSONL with boolean answers).

#include <filesystem>
#include <optional>
#include <string_view>
#include <vector>

#include "seacot/core.hpp"

namespace seacot {

enum class DatasetFormat { OBQA, QASC, StrategyQA };

std::optional<DatasetFormat> parse_dataset_format(std::string_view name);
std::string_view to_string(DatasetFormat f);

// Throws ParseError (with line number) on malformed rows and ValidationError
// when the canonicalized instances violate any dataset invariant.
std::vector<QAInstance> load_dataset(const std::filesystem::path& path, DatasetFormat format);

}  // namespace seacot
