#pragma once

// Prompt templates. A library maps names to text with {placeholder} slots.
// Two suffixed entries extend a template:
//   <name>.examples  exemplar blocks separated by a line containing only "---";
//                    spliced into the {examples} slot, first k blocks for k shots
//   <name>.stop      one stop sequence per line ("\n" escapes a newline)
// Defaults are compiled in; a directory overlay replaces entries by file name
// (<dir>/<name>.txt, then <dir>/<dataset>/<name>.txt).

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "seacot/core.hpp"

namespace seacot {

using TemplateVars = std::map<std::string, std::string, std::less<>>;

// Substitutes {name} slots. Unresolved slots raise ConfigError.
std::string render_template(std::string_view text, const TemplateVars& vars);

// "(A) text" lines for lettered sets; "yes or no" for binary sets.
std::string format_choices(const QAInstance& instance);
// "(B) text" for lettered labels, plain text for binary.
std::string format_answer(const QAInstance& instance, const Label& label);

class TemplateLibrary {
 public:
  // Compiled-in defaults; dataset selects binary (strategyqa) or lettered exemplars.
  static TemplateLibrary defaults(std::string_view dataset = "obqa");
  static TemplateLibrary load(std::string_view dataset, const std::filesystem::path& override_dir);

  void overlay_directory(const std::filesystem::path& dir, std::string_view dataset);
  void set(std::string name, std::string text);

  bool contains(std::string_view name) const;
  const std::string& get(std::string_view name) const;
  std::vector<std::string> examples(std::string_view name) const;
  std::vector<std::string> stop_sequences(std::string_view name) const;

  // Renders a template; fills {examples} from <name>.examples when the caller
  // does not supply it, using the first `shots` blocks (all when unset).
  std::string render(std::string_view name, TemplateVars vars, std::optional<int> shots = std::nullopt) const;

  // SHA-256 per entry, for drift detection.
  std::map<std::string, std::string> hashes() const;

 private:
  std::map<std::string, std::string, std::less<>> entries_;
};

// Raw compiled-in entries for a dataset family.
const std::map<std::string, std::string, std::less<>>& default_template_entries(bool binary);

}  // namespace seacot
