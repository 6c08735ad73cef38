#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>

#include "seacot/core.hpp"

namespace seacot {

struct AnswerMatch {
  Label label;
  // Offset of the declaration ("answer is ...") or of the bare final line.
  std::size_t begin = 0;
};

// Scans for answer declarations ("answer is (B)", "answer: B", "answer is
// yes", "answer is <choice text>") and returns the last one that names a
// valid label. Falls back to a bare label on the final non-empty line.
// Yes/no sets also accept true/false.
std::optional<AnswerMatch> find_answer(std::string_view text, std::span<const Choice> choices);

std::optional<Label> extract_answer(std::string_view text, std::span<const Choice> choices);

// Chain text preceding the sentence that declares the answer. Returns the
// whole (trimmed) text when nothing precedes the declaration.
std::string strip_answer_declaration(std::string_view text, std::span<const Choice> choices);

std::string trim(std::string_view s);

}  // namespace seacot
