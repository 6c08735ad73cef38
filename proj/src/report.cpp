#include "seacot/report.hpp"

#include <charconv>
#include <fstream>

#include "seacot/metrics.hpp"

namespace seacot {

Report build_report(std::string dataset, const std::vector<std::pair<std::string, QualityScores>>& per_technique) {
  Report r;
  r.dataset = std::move(dataset);
  std::map<std::string, QualityScores> keyed;
  for (const auto& [name, s] : per_technique) {
    if (!s.para_flip_pct) throw MissingQuality(name, "Para");
    if (!s.cf_uf_pct) throw MissingQuality(name, "CF-UF");
    if (!s.mistake_flip_pct) throw MissingQuality(name, "Mistakes");
    if (!s.las) throw MissingQuality(name, "Simu");
    keyed[name] = s;
    r.rows.push_back({name, s, std::nullopt});
  }
  if (keyed.size() >= 2) {
    const auto agg = aggregate(keyed);
    for (auto& row : r.rows) row.aggregate = agg.at(row.technique);
  }
  return r;
}

std::string format_number(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

json scores_json(const QualityScores& s) {
  json j = json::object();
  auto put = [&](const char* k, const std::optional<double>& v) { j[k] = v ? json(*v) : json(nullptr); };
  put("para_flip_pct", s.para_flip_pct);
  put("cf_uf_pct", s.cf_uf_pct);
  put("mistake_flip_pct", s.mistake_flip_pct);
  put("las", s.las);
  j["counts"] = {{"para", s.counts.para},
                 {"cf_assessable", s.counts.cf_assessable},
                 {"mistake", s.counts.mistake},
                 {"las_n0", s.counts.las_n0},
                 {"las_n1", s.counts.las_n1}};
  return j;
}

std::optional<QualityScores> scores_from_json(const json& j) {
  if (!j.is_object()) return std::nullopt;
  QualityScores s;
  auto get = [&](const char* k) -> std::optional<double> {
    if (!j.contains(k) || j.at(k).is_null()) return std::nullopt;
    return j.at(k).get<double>();
  };
  s.para_flip_pct = get("para_flip_pct");
  s.cf_uf_pct = get("cf_uf_pct");
  s.mistake_flip_pct = get("mistake_flip_pct");
  s.las = get("las");
  if (j.contains("counts")) {
    const auto& c = j.at("counts");
    s.counts.para = c.value("para", std::size_t{0});
    s.counts.cf_assessable = c.value("cf_assessable", std::size_t{0});
    s.counts.mistake = c.value("mistake", std::size_t{0});
    s.counts.las_n0 = c.value("las_n0", std::size_t{0});
    s.counts.las_n1 = c.value("las_n1", std::size_t{0});
  }
  return s;
}

json report_json(const Report& r) {
  json techniques = json::array();
  for (const auto& row : r.rows) {
    json t = scores_json(row.scores);
    t["technique"] = row.technique;
    t["aggregate"] = row.aggregate ? json(*row.aggregate) : json(nullptr);
    techniques.push_back(std::move(t));
  }
  return json{{"dataset", r.dataset}, {"techniques", std::move(techniques)}};
}

namespace {

std::string cell(const std::optional<double>& v) { return v ? format_number(*v) : "n/a"; }

}  // namespace

std::string report_csv(const Report& r) {
  std::string out = "technique,Para↓,CF-UF↓,Mistakes↑,Simu↑,Aggregate↑\n";
  for (const auto& row : r.rows) {
    const auto& s = row.scores;
    out += row.technique + "," + cell(s.para_flip_pct) + "," + cell(s.cf_uf_pct) + "," + cell(s.mistake_flip_pct) +
           "," + cell(s.las) + "," + cell(row.aggregate) + "\n";
  }
  return out;
}

std::string report_markdown(const Report& r) {
  std::string out = "# " + r.dataset + "\n\n";
  out += "| Technique | Para↓ | CF-UF↓ | Mistakes↑ | Simu↑ | Aggregate↑ |\n";
  out += "|---|---|---|---|---|---|\n";
  for (const auto& row : r.rows) {
    const auto& s = row.scores;
    out += "| " + row.technique + " | " + cell(s.para_flip_pct) + " | " + cell(s.cf_uf_pct) + " | " +
           cell(s.mistake_flip_pct) + " | " + cell(s.las) + " | " + cell(row.aggregate) + " |\n";
  }
  out += "\nPara, CF-UF and Mistakes are percentages; Simu is LAS in [-1, 1]. Aggregate is the mean of the four "
         "qualities after min-max scaling across techniques, with Para and CF-UF complemented.\n\n";
  out += "| Technique | para n | cf assessable | mistake n | las n0 | las n1 |\n";
  out += "|---|---|---|---|---|---|\n";
  for (const auto& row : r.rows) {
    const auto& c = row.scores.counts;
    out += "| " + row.technique + " | " + std::to_string(c.para) + " | " + std::to_string(c.cf_assessable) + " | " +
           std::to_string(c.mistake) + " | " + std::to_string(c.las_n0) + " | " + std::to_string(c.las_n1) + " |\n";
  }
  return out;
}

void write_report(const Report& r, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  write_json_file(dir / "scores.json", report_json(r));
  std::ofstream(dir / "report.csv", std::ios::binary) << report_csv(r);
  std::ofstream(dir / "report.md", std::ios::binary) << report_markdown(r);
}

}  // namespace seacot
