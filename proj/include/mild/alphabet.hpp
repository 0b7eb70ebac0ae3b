#pragma once

#include <algorithm>
#include <compare>
#include <cstddef>
#include <initializer_list>
#include <numeric>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

namespace mild {

/// Finite weighted alphabet. Letters are addressed by index; the listing
/// order is the default base order. Weights are the grading map and must be
/// positive.
class Alphabet {
 public:
  Alphabet(std::vector<std::string> names, std::vector<int> weights)
      : names_(std::move(names)), weights_(std::move(weights)) {
    if (names_.empty()) throw std::invalid_argument("alphabet must be nonempty");
    if (weights_.empty()) weights_.assign(names_.size(), 1);
    if (weights_.size() != names_.size())
      throw std::invalid_argument("alphabet weight count does not match letter count");
    std::unordered_set<std::string> seen;
    for (const auto& n : names_) {
      if (n.empty()) throw std::invalid_argument("empty letter name");
      if (!seen.insert(n).second) throw std::invalid_argument("duplicate letter name: " + n);
    }
    for (int w : weights_)
      if (w < 1) throw std::invalid_argument("letter weights must be >= 1");
  }

  explicit Alphabet(std::vector<std::string> names) : Alphabet(std::move(names), {}) {}

  /// d letters named x1..xd, unit weights.
  static Alphabet standard(int d) {
    if (d < 1) throw std::invalid_argument("alphabet size must be >= 1");
    std::vector<std::string> names;
    names.reserve(d);
    for (int i = 1; i <= d; ++i) names.push_back("x" + std::to_string(i));
    return Alphabet(std::move(names));
  }

  int size() const { return static_cast<int>(names_.size()); }
  const std::string& name(int i) const { return names_.at(i); }
  int weight(int i) const { return weights_.at(i); }
  const std::vector<int>& weights() const { return weights_; }

  int index_of(std::string_view name) const {
    for (std::size_t i = 0; i < names_.size(); ++i)
      if (names_[i] == name) return static_cast<int>(i);
    return -1;
  }

  bool unit_weights() const {
    return std::all_of(weights_.begin(), weights_.end(), [](int w) { return w == 1; });
  }

 private:
  std::vector<std::string> names_;
  std::vector<int> weights_;
};

/// A word over an alphabet: a sequence of letter indices. The empty word is
/// the monoid unit.
struct Word {
  std::vector<int> letters;

  Word() = default;
  Word(std::initializer_list<int> ls) : letters(ls) {}
  explicit Word(std::vector<int> ls) : letters(std::move(ls)) {}

  int length() const { return static_cast<int>(letters.size()); }
  bool empty() const { return letters.empty(); }
  int operator[](int i) const { return letters[i]; }

  Word prefix(int len) const { return Word(std::vector<int>(letters.begin(), letters.begin() + len)); }
  Word suffix(int len) const { return Word(std::vector<int>(letters.end() - len, letters.end())); }
  Word factor(int start, int len) const {
    return Word(std::vector<int>(letters.begin() + start, letters.begin() + start + len));
  }
  Word concat(const Word& other) const {
    std::vector<int> ls = letters;
    ls.insert(ls.end(), other.letters.begin(), other.letters.end());
    return Word(std::move(ls));
  }

  // Container ordering only (used for map keys); word comparisons in the
  // ordered-monoid sense go through OrderSpec.
  auto operator<=>(const Word&) const = default;
};

inline void check_letters(const Word& w, int alphabet_size) {
  for (int a : w.letters)
    if (a < 0 || a >= alphabet_size) throw std::invalid_argument("word letter out of alphabet range");
}

inline int tau_degree(const Word& w, const std::vector<int>& weights) {
  int s = 0;
  for (int a : w.letters) s += weights.at(a);
  return s;
}

inline int tau_degree(const Word& w, const Alphabet& alphabet) { return tau_degree(w, alphabet.weights()); }

inline std::string format_word(const Word& w, const Alphabet& alphabet, const char* sep = "") {
  if (w.empty()) return "1";
  std::string out;
  for (int i = 0; i < w.length(); ++i) {
    if (i) out += sep;
    out += alphabet.name(w[i]);
  }
  return out;
}

/// d^n, guarded; dense per-degree tables index words by this rank.
inline std::size_t words_of_length(int d, int n, std::size_t guard = (std::size_t{1} << 26)) {
  std::size_t total = 1;
  for (int i = 0; i < n; ++i) {
    total *= static_cast<std::size_t>(d);
    if (total > guard) throw std::length_error("word table exceeds memory guard");
  }
  return total;
}

inline std::size_t word_rank(const Word& w, int d) {
  std::size_t r = 0;
  for (int a : w.letters) r = r * d + static_cast<std::size_t>(a);
  return r;
}

inline Word word_unrank(int length, std::size_t rank, int d) {
  std::vector<int> ls(length);
  for (int i = length - 1; i >= 0; --i) {
    ls[i] = static_cast<int>(rank % d);
    rank /= d;
  }
  return Word(std::move(ls));
}

}  // namespace mild
