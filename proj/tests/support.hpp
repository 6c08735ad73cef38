#pragma once

// Helpers shared by the unit tests and the acceptance binary: scripted
// gateways, reference implementations used as oracles, random generators.

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <filesystem>
#include <iterator>
#include <memory>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "seacot/core.hpp"
#include "seacot/gateway.hpp"
#include "seacot/mock_backend.hpp"
#include "seacot/sea_scorer.hpp"
#include "seacot/serialization.hpp"

namespace seacot::testing {

inline std::filesystem::path data_dir() { return SEACOT_TEST_DATA_DIR; }

struct Scripted {
  std::shared_ptr<MockBackend> backend;
  std::unique_ptr<Gateway> gateway;
};

inline Scripted scripted(const json& script, std::string model = "mock", int parallelism = 4,
                         std::shared_ptr<ResponseCache> cache = nullptr) {
  Scripted s;
  s.backend = std::make_shared<MockBackend>(MockScript::from_json(script), std::move(model));
  GatewayOptions o;
  o.parallelism_limit = parallelism;
  o.retry_base_delay = std::chrono::milliseconds(1);
  s.gateway = std::make_unique<Gateway>(s.backend, o, std::move(cache));
  return s;
}

// A fresh directory under the system temp dir, removed on destruction.
class TempDir {
 public:
  explicit TempDir(const std::string& tag) {
    std::random_device rd;
    path_ = std::filesystem::temp_directory_path() / ("seacot-" + tag + "-" + std::to_string(rd()));
    std::filesystem::remove_all(path_);
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;
  const std::filesystem::path& path() const { return path_; }

 private:
  std::filesystem::path path_;
};

inline QAInstance lettered(std::string id, std::string question, std::vector<std::string> texts, Label gold) {
  QAInstance q;
  q.id = std::move(id);
  q.question = std::move(question);
  for (std::size_t i = 0; i < texts.size(); ++i) q.choices.push_back({std::string(1, char('A' + i)), texts[i]});
  q.gold = std::move(gold);
  return q;
}

inline QAInstance yes_no(std::string id, std::string question, bool answer) {
  QAInstance q;
  q.id = std::move(id);
  q.question = std::move(question);
  q.choices = {{"yes", "yes"}, {"no", "no"}};
  q.gold = answer ? "yes" : "no";
  return q;
}

// --- oracles -------------------------------------------------------------

// Token normalisation written independently of the library: a character
// class scan over a lowercased copy, then stopword removal.
inline std::set<std::string> oracle_tokens(const std::string& text) {
  std::string low;
  for (unsigned char c : text) low.push_back(c < 0x80 ? static_cast<char>(std::tolower(c)) : static_cast<char>(c));
  std::set<std::string> stop(stopwords().begin(), stopwords().end());
  std::set<std::string> out;
  auto it = low.begin();
  while (it != low.end()) {
    auto word_char = [](char ch) {
      const auto u = static_cast<unsigned char>(ch);
      return (u >= 'a' && u <= 'z') || (u >= '0' && u <= '9') || u >= 0x80;
    };
    it = std::find_if(it, low.end(), word_char);
    auto end = std::find_if_not(it, low.end(), word_char);
    std::string w(it, end);
    if (!w.empty() && !stop.contains(w)) out.insert(w);
    it = end;
  }
  return out;
}

inline double oracle_iou(const std::set<std::string>& a, const std::set<std::string>& b) {
  std::vector<std::string> inter, uni;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(inter));
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(uni));
  return uni.empty() ? 0.0 : double(inter.size()) / double(uni.size());
}

// --- generators ----------------------------------------------------------

class Gen {
 public:
  explicit Gen(std::uint64_t seed) : rng_(seed) {}

  std::mt19937_64& rng() { return rng_; }
  int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }
  double real(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }
  bool coin(double p = 0.5) { return std::bernoulli_distribution(p)(rng_); }

  template <typename T>
  const T& pick(const std::vector<T>& v) {
    return v[static_cast<std::size_t>(integer(0, int(v.size()) - 1))];
  }

  // Words from a small vocabulary mixing stopwords, content words, digits,
  // punctuation, mixed case and a few UTF-8 words.
  std::string sentence(int max_words = 12) {
    static const std::vector<std::string> vocab = {
        "the",   "The",    "a",     "of",     "and",   "is",     "not",    "Plants", "sunlight", "water",
        "grow",  "magnet", "iron",  "steel",  "North", "42",     "3.14",   "it's",   "don't",    "café",
        "naïve", "river",  "fish",  "bees",   "honey", "yes",    "no",     "(B)",    "answer",   "food",
        "Food",  "FOOD",   "ice",   "melts",  "heat",  "vapor",  "cold",   "x",      "y2k",      "e-mail"};
    static const std::vector<std::string> punct = {" ", " ", " ", ", ", ". ", "; ", " - ", "! ", "\n", "\t"};
    std::string s;
    const int n = integer(0, max_words);
    for (int i = 0; i < n; ++i) {
      if (i) s += pick(punct);
      s += pick(vocab);
    }
    return s;
  }

  std::string word() {
    static const std::string letters = "abcdefghijklmnopqrstuvwxyz";
    std::string w;
    const int n = integer(1, 8);
    for (int i = 0; i < n; ++i) w.push_back(letters[static_cast<std::size_t>(integer(0, 25))]);
    return w;
  }

 private:
  std::mt19937_64 rng_;
};

}  // namespace seacot::testing
