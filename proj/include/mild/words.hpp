#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "mild/alphabet.hpp"
#include "mild/linalg.hpp"
#include "mild/order.hpp"

namespace mild {

/// Integer combination of words of a common length. Coefficients stay in Z;
/// reduction mod p happens where the sum is consumed.
struct FormalSum {
  std::map<Word, long long> terms;

  void add(const Word& w, long long c) {
    if (c == 0) return;
    if (!terms.empty() && terms.begin()->first.length() != w.length())
      throw std::invalid_argument("formal sum must be length-homogeneous");
    auto it = terms.find(w);
    if (it == terms.end()) {
      terms.emplace(w, c);
    } else {
      it->second += c;
      if (it->second == 0) terms.erase(it);
    }
  }

  bool zero() const { return terms.empty(); }

  /// Common length of the supported words; -1 for the zero sum.
  int degree() const { return terms.empty() ? -1 : terms.begin()->first.length(); }

  FormalSum& operator+=(const FormalSum& o) {
    for (const auto& [w, c] : o.terms) add(w, c);
    return *this;
  }

  long long coefficient(const Word& w) const {
    auto it = terms.find(w);
    return it == terms.end() ? 0 : it->second;
  }

  long long total() const {
    long long t = 0;
    for (const auto& [w, c] : terms) t += c;
    return t;
  }

  bool operator==(const FormalSum&) const = default;
};

/// Sum over all interleavings of u and v that preserve their internal
/// orders; total multiplicity is binomial(|u|+|v|, |u|).
inline FormalSum shuffle(const Word& u, const Word& v) {
  if (u.empty() || v.empty()) throw std::invalid_argument("shuffle of an empty word");
  int s = u.length(), t = v.length(), n = s + t;
  if (n > 28) throw std::length_error("shuffle degree too large");
  FormalSum out;
  // Positions of u's letters as a sorted subset of {0..n-1}.
  std::vector<int> pick(s);
  for (int i = 0; i < s; ++i) pick[i] = i;
  while (true) {
    std::vector<int> ls(n, -1);
    for (int i = 0; i < s; ++i) ls[pick[i]] = u[i];
    int vi = 0;
    for (int i = 0; i < n; ++i)
      if (ls[i] < 0) ls[i] = v[vi++];
    out.add(Word(ls), 1);
    // next combination
    int i = s - 1;
    while (i >= 0 && pick[i] == n - s + i) --i;
    if (i < 0) break;
    ++pick[i];
    for (int j = i + 1; j < s; ++j) pick[j] = pick[j - 1] + 1;
  }
  return out;
}

struct CombFreeViolation {
  enum class Kind { MiddleFactor, PrefixSuffix };
  Kind kind;
  int i = 0, j = 0;
  Word factor;

  std::string describe(const Alphabet& alphabet) const {
    if (kind == Kind::MiddleFactor)
      return "word " + std::to_string(i + 1) + " is a middle factor of word " + std::to_string(j + 1) +
             " (" + format_word(factor, alphabet) + ")";
    return "proper left factor " + format_word(factor, alphabet) + " of word " + std::to_string(i + 1) +
           " is a proper right factor of word " + std::to_string(j + 1);
  }
};

inline bool is_middle_factor(const Word& w, const Word& big) {
  int n = w.length(), m = big.length();
  if (n > m) return false;
  for (int start = 0; start + n <= m; ++start) {
    bool ok = true;
    for (int i = 0; i < n; ++i)
      if (big[start + i] != w[i]) {
        ok = false;
        break;
      }
    if (ok) return true;
  }
  return false;
}

/// Anick's condition: (1) no entry is a middle factor of another (equality
/// of distinct entries counts), and (2) no proper left factor of any entry
/// is a proper right factor of any entry, the same entry included.
inline std::optional<CombFreeViolation> combinatorial_freeness_violation(const std::vector<Word>& words) {
  for (const auto& w : words)
    if (w.empty()) throw std::invalid_argument("combinatorial freeness of an empty word");
  int m = static_cast<int>(words.size());
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      if (i == j) continue;
      if (is_middle_factor(words[i], words[j]))
        return CombFreeViolation{CombFreeViolation::Kind::MiddleFactor, i, j, words[i]};
    }
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j)
      for (int len = 1; len < words[i].length() && len < words[j].length(); ++len)
        if (words[i].prefix(len) == words[j].suffix(len))
          return CombFreeViolation{CombFreeViolation::Kind::PrefixSuffix, i, j, words[i].prefix(len)};
  return std::nullopt;
}

inline bool is_combinatorially_free(const std::vector<Word>& words) {
  return !combinatorial_freeness_violation(words).has_value();
}

struct LyndonCoordinates {
  std::vector<Word> basis;       // Lyndon words of the degree, ascending
  std::vector<unsigned> coords;  // residues mod p, aligned with basis
};

/// Coordinates of the class of a homogeneous sum in the degree-n word space
/// modulo all shuffle products, over the Lyndon-word basis. Only valid for
/// n < p, where the Lyndon cosets are known to form a basis.
inline LyndonCoordinates lyndon_reduce(const FormalSum& s, unsigned p, const Alphabet& alphabet,
                                       const OrderSpec& order) {
  require_prime(p);
  if (s.zero()) throw std::invalid_argument("lyndon_reduce of the zero sum: degree is undetermined");
  int n = s.degree();
  if (n >= static_cast<int>(p))
    throw std::domain_error("lyndon_reduce requires degree < p (Lyndon basis not guaranteed)");
  int d = alphabet.size();
  for (const auto& [w, c] : s.terms) check_letters(w, d);

  std::size_t cols = words_of_length(d, n);
  RowSpan span(p, cols);
  Word u, v;
  for (int a = 1; a < n; ++a) {
    std::size_t ucount = words_of_length(d, a), vcount = words_of_length(d, n - a);
    for (std::size_t ur = 0; ur < ucount; ++ur) {
      u = word_unrank(a, ur, d);
      for (std::size_t vr = 0; vr < vcount; ++vr) {
        v = word_unrank(n - a, vr, d);
        FormalSum sh = shuffle(u, v);
        std::vector<std::uint32_t> row(cols, 0);
        for (const auto& [w, c] : sh.terms) row[word_rank(w, d)] = fp_norm(c, p);
        span.insert(std::move(row));
      }
    }
  }

  std::vector<Word> basis = lyndon_words(alphabet, n, order);
  // Residuals of the Lyndon unit vectors and of s, then one small solve.
  std::vector<std::vector<std::uint32_t>> residuals;
  for (const auto& L : basis) {
    std::vector<std::uint32_t> e(cols, 0);
    e[word_rank(L, d)] = 1;
    span.reduce(e);
    residuals.push_back(std::move(e));
  }
  std::vector<std::uint32_t> target(cols, 0);
  for (const auto& [w, c] : s.terms) target[word_rank(w, d)] = fp_norm(c, p);
  span.reduce(target);

  FpMatrix m(p, static_cast<int>(cols), static_cast<int>(basis.size()));
  for (std::size_t j = 0; j < basis.size(); ++j)
    for (std::size_t r = 0; r < cols; ++r) m.at(static_cast<int>(r), static_cast<int>(j)) = residuals[j][r];
  std::vector<unsigned> rhs(target.begin(), target.end());
  auto x = solve(m, rhs);
  if (!x) throw std::logic_error("Lyndon classes failed to span the shuffle quotient");
  return LyndonCoordinates{std::move(basis), std::move(*x)};
}

}  // namespace mild
