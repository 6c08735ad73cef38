#include "seacot/answer.hpp"

#include <algorithm>
#include <cctype>

namespace seacot {

namespace {

bool is_space(char c) { return std::isspace(static_cast<unsigned char>(c)) != 0; }
bool is_alpha(char c) { return std::isalpha(static_cast<unsigned char>(c)) != 0; }
bool is_alnum(char c) { return std::isalnum(static_cast<unsigned char>(c)) != 0; }

std::string lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(), [](unsigned char c) { return std::tolower(c); });
  return out;
}

bool has(std::span<const Choice> choices, std::string_view label) {
  return std::any_of(choices.begin(), choices.end(), [&](const Choice& c) { return c.label == label; });
}

// Maps a bare token onto a label: exact label, parenthesised lowercase letter,
// or yes/no/true/false for binary sets.
std::optional<Label> token_to_label(std::string_view token, bool parenthesised, std::span<const Choice> choices) {
  if (token.empty()) return std::nullopt;
  if (has(choices, token)) return Label(token);
  const std::string lc = lower(token);
  if (parenthesised && lc.size() == 1) {
    const std::string up(1, static_cast<char>(std::toupper(static_cast<unsigned char>(lc[0]))));
    if (has(choices, up)) return up;
  }
  if ((lc == "yes" || lc == "true") && has(choices, "yes")) return Label("yes");
  if ((lc == "no" || lc == "false") && has(choices, "no")) return Label("no");
  return std::nullopt;
}

// Parses the phrase following a declaration keyword, starting at `pos`.
std::optional<Label> parse_phrase(std::string_view text, std::size_t pos, std::span<const Choice> choices) {
  auto skip = [&] {
    while (pos < text.size() && (is_space(text[pos]) || text[pos] == ':' || text[pos] == '*' || text[pos] == '"'))
      ++pos;
  };
  skip();
  if (pos >= text.size()) return std::nullopt;

  if (text[pos] == '(' || text[pos] == '[') {
    const char close = text[pos] == '(' ? ')' : ']';
    const auto end = text.find(close, pos + 1);
    if (end != std::string_view::npos && end - pos <= 16) {
      if (auto l = token_to_label(trim(text.substr(pos + 1, end - pos - 1)), true, choices)) return l;
    }
  }

  std::size_t end = pos;
  while (end < text.size() && is_alpha(text[end])) ++end;
  std::string_view word = text.substr(pos, end - pos);
  const std::string lw = lower(word);
  if (lw == "option" || lw == "choice") {
    const auto saved = pos;
    pos = end;
    skip();
    if (auto l = parse_phrase(text, pos, choices)) return l;
    pos = saved;
  }
  const bool word_ends = end >= text.size() || !is_alnum(text[end]);
  if (word_ends && !word.empty()) {
    // A lone lowercase letter is an article ("a lamp"), not a label.
    const bool lone_lower = word.size() == 1 && std::islower(static_cast<unsigned char>(word[0]));
    if (!lone_lower) {
      if (auto l = token_to_label(word, false, choices)) return l;
    }
  }

  // Verbatim choice text; the longest matching choice wins.
  const std::string rest = lower(text.substr(pos));
  const Choice* best = nullptr;
  for (const auto& c : choices) {
    const std::string ct = lower(trim(c.text));
    if (ct.empty() || rest.compare(0, ct.size(), ct) != 0) continue;
    if (rest.size() > ct.size() && is_alnum(rest[ct.size()])) continue;
    if (best == nullptr || ct.size() > best->text.size()) best = &c;
  }
  if (best) return best->label;
  return std::nullopt;
}

std::optional<AnswerMatch> find_final_line(std::string_view text, std::span<const Choice> choices) {
  std::size_t end = text.size();
  while (end > 0) {
    const auto nl = text.rfind('\n', end - 1);
    const std::size_t begin = nl == std::string_view::npos ? 0 : nl + 1;
    std::string line = trim(text.substr(begin, end - begin));
    if (!line.empty()) {
      while (!line.empty() && (line.back() == '.' || line.back() == '*' || line.back() == '!')) line.pop_back();
      std::size_t s = 0;
      while (s < line.size() && line[s] == '*') ++s;
      line = trim(std::string_view(line).substr(s));
      bool paren = false;
      if (line.size() >= 2 && line.front() == '(' && line.back() == ')') {
        line = trim(std::string_view(line).substr(1, line.size() - 2));
        paren = true;
      }
      if (auto l = token_to_label(line, paren, choices)) return AnswerMatch{*l, begin};
      return std::nullopt;
    }
    if (nl == std::string_view::npos) break;
    end = nl;
  }
  return std::nullopt;
}

}  // namespace

std::string trim(std::string_view s) {
  std::size_t b = 0, e = s.size();
  while (b < e && is_space(s[b])) ++b;
  while (e > b && is_space(s[e - 1])) --e;
  return std::string(s.substr(b, e - b));
}

std::optional<AnswerMatch> find_answer(std::string_view text, std::span<const Choice> choices) {
  const std::string lc = lower(text);
  std::optional<AnswerMatch> last;
  for (std::size_t at = lc.find("answer"); at != std::string::npos; at = lc.find("answer", at + 1)) {
    if (at > 0 && is_alpha(lc[at - 1])) continue;
    std::size_t p = at + 6;
    while (p < lc.size() && is_space(lc[p])) ++p;
    if (p < lc.size() && lc[p] == ':') {
      ++p;
    } else if (lc.compare(p, 2, "is") == 0 && (p + 2 >= lc.size() || !is_alpha(lc[p + 2]))) {
      p += 2;
    } else {
      continue;
    }
    if (auto label = parse_phrase(text, p, choices)) last = AnswerMatch{*label, at};
  }
  if (last) return last;
  return find_final_line(text, choices);
}

std::optional<Label> extract_answer(std::string_view text, std::span<const Choice> choices) {
  if (auto m = find_answer(text, choices)) return m->label;
  return std::nullopt;
}

std::string strip_answer_declaration(std::string_view text, std::span<const Choice> choices) {
  const auto m = find_answer(text, choices);
  if (!m) return trim(text);
  std::size_t cut = m->begin;
  while (cut > 0) {
    const char c = text[cut - 1];
    if (c == '.' || c == '!' || c == '?' || c == '\n') break;
    --cut;
  }
  std::string head = trim(text.substr(0, cut));
  return head.empty() ? trim(text) : head;
}

}  // namespace seacot
