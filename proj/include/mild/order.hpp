#pragma once

#include <algorithm>
#include <cstdint>
#include <memory>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include "mild/alphabet.hpp"

namespace mild {

enum class Cmp { Less, Equal, Greater };

inline Cmp cmp_of(long long a, long long b) {
  if (a < b) return Cmp::Less;
  if (a > b) return Cmp::Greater;
  return Cmp::Equal;
}

inline Cmp reverse(Cmp c) {
  switch (c) {
    case Cmp::Less: return Cmp::Greater;
    case Cmp::Greater: return Cmp::Less;
    default: return Cmp::Equal;
  }
}

/// sigma^*(w) = sum of sigma over the letters of w.
inline long long sigma_star(const std::vector<std::uint8_t>& sigma, const Word& w) {
  long long s = 0;
  for (int a : w.letters) s += sigma.at(a);
  return s;
}

/// sigma^#(w) = sum_i sigma(a_i) * (tau(a_1) + ... + tau(a_i)); 0 on the
/// empty word.
inline long long sigma_sharp(const std::vector<std::uint8_t>& sigma, const std::vector<int>& tau,
                             const Word& w) {
  long long s = 0;
  long long prefix = 0;
  for (int a : w.letters) {
    prefix += tau.at(a);
    if (sigma.at(a)) s += prefix;
  }
  return s;
}

/// Total orders on the free monoid.
///
/// Variants: dictionary lexicographic, length-lexicographic, the g-order
/// built from a weight map and a stack of 0/1 letter maps (compared as the
/// tuple (tau*, sigma_s*, sigma_s#, ..., sigma_1*, sigma_1#, lex)), and the
/// opposite of any order. LengthLex and GOrder make the free monoid an
/// ordered monoid; dictionary Lex does not (prefix extensions break
/// right-multiplication), but it is the order Lyndon words are defined
/// against and is compatible with concatenation within a fixed degree.
class OrderSpec {
 public:
  enum class Kind { Lex, LengthLex, GOrder, Opposite };

  static OrderSpec lex(int alphabet_size, std::vector<int> base_order = {}) {
    return OrderSpec(Kind::Lex, alphabet_size, std::move(base_order), {}, {});
  }

  static OrderSpec length_lex(int alphabet_size, std::vector<int> base_order = {}) {
    return OrderSpec(Kind::LengthLex, alphabet_size, std::move(base_order), {}, {});
  }

  /// tau must be positive everywhere; sigmas are listed sigma_1..sigma_s and
  /// compared highest index first.
  static OrderSpec g_order(std::vector<int> tau, std::vector<std::vector<std::uint8_t>> sigmas,
                           std::vector<int> base_order = {}) {
    if (tau.empty()) throw std::invalid_argument("g-order needs a nonempty weight map");
    for (int t : tau)
      if (t < 1) throw std::invalid_argument("g-order weights must be >= 1");
    int d = static_cast<int>(tau.size());
    for (const auto& s : sigmas) {
      if (static_cast<int>(s.size()) != d) throw std::invalid_argument("sigma map size mismatch");
      for (auto v : s)
        if (v > 1) throw std::invalid_argument("sigma maps must be 0/1 valued");
    }
    return OrderSpec(Kind::GOrder, d, std::move(base_order), std::move(tau), std::move(sigmas));
  }

  static OrderSpec opposite(OrderSpec inner) {
    OrderSpec o(Kind::Opposite, inner.alphabet_size(), {}, {}, {});
    o.inner_ = std::make_shared<OrderSpec>(std::move(inner));
    return o;
  }

  Kind kind() const { return kind_; }
  int alphabet_size() const { return d_; }
  const OrderSpec& inner() const { return *inner_; }

  Cmp compare(const Word& w, const Word& u) const {
    check_letters(w, d_);
    check_letters(u, d_);
    return compare_unchecked(w, u);
  }

  bool less(const Word& w, const Word& u) const { return compare(w, u) == Cmp::Less; }
  bool leq(const Word& w, const Word& u) const { return compare(w, u) != Cmp::Greater; }

  template <typename It>
  It max_element(It first, It last) const {
    return std::max_element(first, last, [this](const Word& a, const Word& b) { return less(a, b); });
  }

  std::string describe(const Alphabet& alphabet) const {
    switch (kind_) {
      case Kind::Lex: return "lex:" + base_string(alphabet);
      case Kind::LengthLex: return "lenlex:" + base_string(alphabet);
      case Kind::GOrder: {
        std::string s = "gorder:tau=";
        for (std::size_t i = 0; i < tau_.size(); ++i) s += (i ? "," : "") + std::to_string(tau_[i]);
        for (std::size_t j = 0; j < sigmas_.size(); ++j) {
          s += ";sigma" + std::to_string(j + 1) + "=";
          bool first = true;
          for (int a = 0; a < d_; ++a)
            if (sigmas_[j][a]) {
              if (!first) s += ",";
              s += alphabet.name(a);
              first = false;
            }
        }
        s += ";base=" + base_string(alphabet);
        return s;
      }
      case Kind::Opposite: return "op:" + inner_->describe(alphabet);
    }
    return "?";
  }

 private:
  OrderSpec(Kind k, int d, std::vector<int> base, std::vector<int> tau,
            std::vector<std::vector<std::uint8_t>> sigmas)
      : kind_(k), d_(d), tau_(std::move(tau)), sigmas_(std::move(sigmas)) {
    if (d_ < 1) throw std::invalid_argument("order needs a nonempty alphabet");
    if (base.empty()) {
      rank_.resize(d_);
      std::iota(rank_.begin(), rank_.end(), 0);
    } else {
      if (static_cast<int>(base.size()) != d_)
        throw std::invalid_argument("base order must list every letter exactly once");
      rank_.assign(d_, -1);
      for (int pos = 0; pos < d_; ++pos) {
        int a = base[pos];
        if (a < 0 || a >= d_ || rank_[a] != -1)
          throw std::invalid_argument("base order is not a permutation of the alphabet");
        rank_[a] = pos;
      }
    }
  }

  Cmp compare_unchecked(const Word& w, const Word& u) const {
    switch (kind_) {
      case Kind::Opposite: {
        return reverse(inner_->compare_unchecked(w, u));
      }
      case Kind::Lex: return lex_compare(w, u);
      case Kind::LengthLex: {
        if (w.length() != u.length()) return cmp_of(w.length(), u.length());
        return lex_compare(w, u);
      }
      case Kind::GOrder: {
        long long tw = 0, tu = 0;
        for (int a : w.letters) tw += tau_[a];
        for (int a : u.letters) tu += tau_[a];
        if (tw != tu) return cmp_of(tw, tu);
        for (std::size_t j = sigmas_.size(); j-- > 0;) {
          const auto& sg = sigmas_[j];
          long long sw = sigma_star(sg, w), su = sigma_star(sg, u);
          if (sw != su) return cmp_of(sw, su);
          long long hw = sigma_sharp(sg, tau_, w), hu = sigma_sharp(sg, tau_, u);
          if (hw != hu) return cmp_of(hw, hu);
        }
        return lex_compare(w, u);
      }
    }
    return Cmp::Equal;
  }

  // Dictionary order: a proper prefix precedes its extensions.
  Cmp lex_compare(const Word& w, const Word& u) const {
    int n = std::min(w.length(), u.length());
    for (int i = 0; i < n; ++i) {
      int rw = rank_[w[i]], ru = rank_[u[i]];
      if (rw != ru) return cmp_of(rw, ru);
    }
    return cmp_of(w.length(), u.length());
  }

  std::string base_string(const Alphabet& alphabet) const {
    std::vector<int> by_rank(d_);
    for (int a = 0; a < d_; ++a) by_rank[rank_[a]] = a;
    std::string s;
    for (int pos = 0; pos < d_; ++pos) {
      if (pos) s += "<";
      s += alphabet.name(by_rank[pos]);
    }
    return s;
  }

  Kind kind_;
  int d_;
  std::vector<int> rank_;  // rank_[letter] = position in the base order
  std::vector<int> tau_;
  std::vector<std::vector<std::uint8_t>> sigmas_;
  std::shared_ptr<const OrderSpec> inner_;
};

/// True iff w is nonempty and strictly below each of its nonempty proper
/// right factors.
inline bool is_lyndon(const OrderSpec& order, const Word& w) {
  if (w.empty()) return false;
  for (int len = 1; len < w.length(); ++len)
    if (order.compare(w, w.suffix(len)) != Cmp::Less) return false;
  return true;
}

namespace detail {

// Duval's generation, valid for the dictionary order. Positions 0..d-1 are
// ranks in the base order; the caller maps them back to letters.
inline std::vector<std::vector<int>> duval_position_words(int d, int n) {
  std::vector<std::vector<int>> out;
  std::vector<int> t{-1};
  while (!t.empty()) {
    ++t.back();
    if (static_cast<int>(t.size()) == n) out.push_back(t);
    int m = static_cast<int>(t.size());
    while (static_cast<int>(t.size()) < n) t.push_back(t[t.size() - m]);
    while (!t.empty() && t.back() == d - 1) t.pop_back();
  }
  return out;
}

}  // namespace detail

/// All Lyndon words of length n, ascending in the given order. Lex orders
/// use Duval's algorithm; other orders fall back to filtering through the
/// definition.
inline std::vector<Word> lyndon_words(const Alphabet& alphabet, int n, const OrderSpec& order) {
  if (n < 1) throw std::invalid_argument("lyndon_words needs n >= 1");
  int d = alphabet.size();
  if (order.alphabet_size() != d) throw std::invalid_argument("order/alphabet size mismatch");
  std::vector<Word> out;
  if (order.kind() == OrderSpec::Kind::Lex) {
    // recover the letter listed at each rank
    std::vector<Word> probe;
    std::vector<int> letter_at_rank(d);
    {
      std::vector<std::pair<Word, int>> singles;
      for (int a = 0; a < d; ++a) singles.emplace_back(Word{a}, a);
      std::sort(singles.begin(), singles.end(), [&](const auto& x, const auto& y) {
        return order.less(x.first, y.first);
      });
      for (int pos = 0; pos < d; ++pos) letter_at_rank[pos] = singles[pos].second;
    }
    for (const auto& pw : detail::duval_position_words(d, n)) {
      std::vector<int> ls(pw.size());
      for (std::size_t i = 0; i < pw.size(); ++i) ls[i] = letter_at_rank[pw[i]];
      out.emplace_back(std::move(ls));
    }
    return out;
  }
  std::size_t total = words_of_length(d, n);
  for (std::size_t r = 0; r < total; ++r) {
    Word w = word_unrank(n, r, d);
    if (is_lyndon(order, w)) out.push_back(std::move(w));
  }
  std::sort(out.begin(), out.end(), [&](const Word& a, const Word& b) { return order.less(a, b); });
  return out;
}

}  // namespace mild
