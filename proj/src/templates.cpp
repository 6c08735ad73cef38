#include "seacot/templates.hpp"

#include <fstream>
#include <sstream>

#include "seacot/errors.hpp"
#include "seacot/hashing.hpp"

namespace seacot {

namespace {

bool is_slot_char(char c) { return (c >= 'a' && c <= 'z') || c == '_' || (c >= '0' && c <= '9'); }

std::string read_text(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  std::string text = ss.str();
  // Editors append a final newline; templates are trimmed of exactly one.
  if (!text.empty() && text.back() == '\n') text.pop_back();
  return text;
}

std::string unescape(std::string_view line) {
  std::string out;
  for (std::size_t i = 0; i < line.size(); ++i) {
    if (line[i] == '\\' && i + 1 < line.size()) {
      const char next = line[i + 1];
      if (next == 'n') {
        out += '\n';
        ++i;
        continue;
      }
      if (next == 't') {
        out += '\t';
        ++i;
        continue;
      }
      if (next == '\\') {
        out += '\\';
        ++i;
        continue;
      }
    }
    out += line[i];
  }
  return out;
}

}  // namespace

std::string render_template(std::string_view text, const TemplateVars& vars) {
  std::string out;
  out.reserve(text.size());
  std::size_t i = 0;
  while (i < text.size()) {
    if (text[i] == '{') {
      std::size_t j = i + 1;
      while (j < text.size() && is_slot_char(text[j])) ++j;
      if (j < text.size() && text[j] == '}' && j > i + 1) {
        const std::string_view name = text.substr(i + 1, j - i - 1);
        auto it = vars.find(name);
        if (it == vars.end()) throw ConfigError("template slot {" + std::string(name) + "} has no value");
        out += it->second;
        i = j + 1;
        continue;
      }
    }
    out += text[i++];
  }
  return out;
}

std::string format_choices(const QAInstance& instance) {
  if (instance.is_binary()) return "yes or no";
  std::string out;
  for (std::size_t i = 0; i < instance.choices.size(); ++i) {
    if (i) out += '\n';
    out += "(" + instance.choices[i].label + ") " + instance.choices[i].text;
  }
  return out;
}

std::string format_answer(const QAInstance& instance, const Label& label) {
  const Choice* c = instance.find_choice(label);
  if (instance.is_binary() || c == nullptr) return c ? c->text : label;
  return "(" + c->label + ") " + c->text;
}

TemplateLibrary TemplateLibrary::defaults(std::string_view dataset) {
  TemplateLibrary lib;
  for (const auto& [k, v] : default_template_entries(dataset == "strategyqa")) lib.entries_.emplace(k, v);
  return lib;
}

TemplateLibrary TemplateLibrary::load(std::string_view dataset, const std::filesystem::path& override_dir) {
  TemplateLibrary lib = defaults(dataset);
  if (!override_dir.empty()) lib.overlay_directory(override_dir, dataset);
  return lib;
}

void TemplateLibrary::overlay_directory(const std::filesystem::path& dir, std::string_view dataset) {
  namespace fs = std::filesystem;
  if (!fs::is_directory(dir)) throw ConfigError("template directory " + dir.string() + " does not exist");
  auto apply = [&](const fs::path& d) {
    if (!fs::is_directory(d)) return;
    for (const auto& entry : fs::directory_iterator(d)) {
      if (!entry.is_regular_file() || entry.path().extension() != ".txt") continue;
      entries_[entry.path().stem().string()] = read_text(entry.path());
    }
  };
  apply(dir);
  if (!dataset.empty()) apply(dir / std::string(dataset));
}

void TemplateLibrary::set(std::string name, std::string text) { entries_[std::move(name)] = std::move(text); }

bool TemplateLibrary::contains(std::string_view name) const { return entries_.find(name) != entries_.end(); }

const std::string& TemplateLibrary::get(std::string_view name) const {
  auto it = entries_.find(name);
  if (it == entries_.end()) throw ConfigError("no template named '" + std::string(name) + "'");
  return it->second;
}

std::vector<std::string> TemplateLibrary::examples(std::string_view name) const {
  std::vector<std::string> blocks;
  auto it = entries_.find(std::string(name) + ".examples");
  if (it == entries_.end() || it->second.empty()) return blocks;
  std::istringstream in(it->second);
  std::string line, block;
  auto flush = [&] {
    while (!block.empty() && block.back() == '\n') block.pop_back();
    if (!block.empty()) blocks.push_back(block);
    block.clear();
  };
  while (std::getline(in, line)) {
    if (line == "---") {
      flush();
      continue;
    }
    block += line;
    block += '\n';
  }
  flush();
  return blocks;
}

std::vector<std::string> TemplateLibrary::stop_sequences(std::string_view name) const {
  std::vector<std::string> out;
  auto it = entries_.find(std::string(name) + ".stop");
  if (it == entries_.end()) return out;
  std::istringstream in(it->second);
  std::string line;
  while (std::getline(in, line))
    if (!line.empty()) out.push_back(unescape(line));
  return out;
}

std::string TemplateLibrary::render(std::string_view name, TemplateVars vars, std::optional<int> shots) const {
  if (vars.find("examples") == vars.end()) {
    auto blocks = examples(name);
    std::size_t k = blocks.size();
    if (shots) {
      if (*shots < 0 || static_cast<std::size_t>(*shots) > blocks.size())
        throw ConfigError("template '" + std::string(name) + "' has " + std::to_string(blocks.size()) +
                          " exemplars, " + std::to_string(*shots) + " requested");
      k = static_cast<std::size_t>(*shots);
    }
    std::string joined;
    for (std::size_t i = 0; i < k; ++i) joined += blocks[i] + "\n\n";
    vars["examples"] = std::move(joined);
  }
  return render_template(get(name), vars);
}

std::map<std::string, std::string> TemplateLibrary::hashes() const {
  std::map<std::string, std::string> out;
  for (const auto& [k, v] : entries_) out[k] = sha256_hex(v);
  return out;
}

}  // namespace seacot
