#pragma once

// Per-dataset score table in machine-readable (JSON, CSV) and human-readable
// (Markdown) form. Numbers are printed in shortest round-trip form so the
// two renderings carry identical values.

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "seacot/core.hpp"
#include "seacot/serialization.hpp"

namespace seacot {

struct ReportRow {
  std::string technique;
  QualityScores scores;
  std::optional<double> aggregate;
};

struct Report {
  std::string dataset;
  std::vector<ReportRow> rows;
};

// Throws MissingQuality naming the column ("Para", "CF-UF", "Mistakes",
// "Simu"). The aggregate is filled when at least two techniques are present.
Report build_report(std::string dataset, const std::vector<std::pair<std::string, QualityScores>>& per_technique);

std::string format_number(double v);

json scores_json(const QualityScores& s);
std::optional<QualityScores> scores_from_json(const json& j);
json report_json(const Report& r);
std::string report_csv(const Report& r);
std::string report_markdown(const Report& r);

// Writes scores.json, report.csv and report.md into `dir`.
void write_report(const Report& r, const std::filesystem::path& dir);

}  // namespace seacot
