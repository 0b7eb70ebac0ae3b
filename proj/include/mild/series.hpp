#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "mild/alphabet.hpp"
#include "mild/fp.hpp"
#include "mild/linalg.hpp"

namespace mild {

struct Syllable {
  int letter = 0;
  long long exponent = 1;
  bool operator==(const Syllable&) const = default;
};

/// Element of the free group as a syllable list; adjacent syllables may
/// repeat a letter, no normalization is implied.
struct GroupElement {
  std::vector<Syllable> syllables;

  GroupElement() = default;
  explicit GroupElement(std::vector<Syllable> s) : syllables(std::move(s)) { validate(); }

  static GroupElement generator(int letter, long long e = 1) {
    return GroupElement({Syllable{letter, e}});
  }

  static GroupElement identity() { return GroupElement(); }

  void validate() const {
    for (const auto& s : syllables)
      if (s.exponent == 0) throw std::invalid_argument("zero exponent syllable");
  }

  bool empty() const { return syllables.empty(); }

  GroupElement inverse() const {
    std::vector<Syllable> out;
    out.reserve(syllables.size());
    for (auto it = syllables.rbegin(); it != syllables.rend(); ++it)
      out.push_back(Syllable{it->letter, -it->exponent});
    return GroupElement(std::move(out));
  }

  GroupElement operator*(const GroupElement& o) const {
    std::vector<Syllable> out = syllables;
    out.insert(out.end(), o.syllables.begin(), o.syllables.end());
    return GroupElement(std::move(out));
  }

  /// k-fold concatenation; negative k uses the inverse, k = 0 is the
  /// identity.
  GroupElement pow(long long k) const {
    if (k == 0) return GroupElement();
    GroupElement base = k > 0 ? *this : inverse();
    if (k < 0) k = -k;
    std::vector<Syllable> out;
    out.reserve(base.syllables.size() * static_cast<std::size_t>(k));
    for (long long i = 0; i < k; ++i)
      out.insert(out.end(), base.syllables.begin(), base.syllables.end());
    GroupElement g;
    g.syllables = std::move(out);
    return g;
  }

  /// Free reduction: merge same-letter neighbours, drop vanishing
  /// exponents.
  GroupElement freely_reduced() const {
    std::vector<Syllable> stack;
    for (const auto& s : syllables) {
      if (!stack.empty() && stack.back().letter == s.letter) {
        stack.back().exponent += s.exponent;
        if (stack.back().exponent == 0) stack.pop_back();
      } else {
        stack.push_back(s);
      }
    }
    GroupElement g;
    g.syllables = std::move(stack);
    return g;
  }

  bool reduces_to_identity() const { return freely_reduced().empty(); }

  bool operator==(const GroupElement&) const = default;
};

/// Magnus expansion truncated at a length cap: coefficients in F_p indexed
/// densely per degree by base-d rank.
class TruncatedSeries {
 public:
  TruncatedSeries(unsigned p, int alphabet_size, int cap) : p_(p), d_(alphabet_size), cap_(cap) {
    require_prime(p);
    if (alphabet_size < 1) throw std::invalid_argument("series needs a nonempty alphabet");
    if (cap < 0) throw std::invalid_argument("negative truncation cap");
    c_.resize(cap + 1);
    for (int n = 0; n <= cap; ++n) c_[n].assign(words_of_length(d_, n), 0);
  }

  static TruncatedSeries one(unsigned p, int alphabet_size, int cap) {
    TruncatedSeries s(p, alphabet_size, cap);
    s.c_[0][0] = 1;
    return s;
  }

  unsigned prime() const { return p_; }
  int alphabet_size() const { return d_; }
  int cap() const { return cap_; }

  unsigned coefficient(const Word& w) const {
    check_letters(w, d_);
    if (w.length() > cap_)
      throw std::out_of_range("coefficient of a word longer than the truncation cap");
    return c_[w.length()][word_rank(w, d_)];
  }

  unsigned constant_term() const { return c_[0][0]; }

  const std::vector<std::uint32_t>& degree_data(int n) const { return c_.at(n); }
  std::vector<std::uint32_t>& degree_data(int n) { return c_.at(n); }

  /// Least degree 1..cap with a nonzero coefficient; 0 when all vanish.
  int lowest_positive_degree() const {
    for (int n = 1; n <= cap_; ++n)
      for (auto v : c_[n])
        if (v) return n;
    return 0;
  }

  bool is_one() const {
    if (c_[0][0] != 1) return false;
    return lowest_positive_degree() == 0;
  }

  /// Multiply in place by sum_k coeff[k] x^k for a single letter x.
  void mul_single_letter(int letter, const std::vector<unsigned>& coeff) {
    if (letter < 0 || letter >= d_) throw std::invalid_argument("letter out of range");
    std::vector<std::vector<std::uint32_t>> out(cap_ + 1);
    for (int n = 0; n <= cap_; ++n) out[n].assign(c_[n].size(), 0);
    std::size_t dpow = 1;   // d^k
    std::size_t rep = 0;    // rank of x^k
    for (int k = 0; k <= cap_; ++k) {
      if (k > 0) {
        rep = rep * d_ + static_cast<std::size_t>(letter);
        dpow *= d_;
      }
      std::uint64_t ck = (k < static_cast<int>(coeff.size())) ? coeff[k] % p_ : 0;
      if (ck == 0) continue;
      for (int n = k; n <= cap_; ++n) {
        const auto& src = c_[n - k];
        auto& dst = out[n];
        for (std::size_t r = 0; r < src.size(); ++r) {
          if (src[r] == 0) continue;
          std::size_t idx = r * dpow + rep;
          dst[idx] = static_cast<std::uint32_t>((dst[idx] + ck * src[r]) % p_);
        }
      }
    }
    c_ = std::move(out);
  }

  /// Degree-capped convolution; mismatched caps truncate to the smaller.
  TruncatedSeries operator*(const TruncatedSeries& o) const {
    if (p_ != o.p_ || d_ != o.d_) throw std::invalid_argument("series context mismatch");
    int cap = std::min(cap_, o.cap_);
    TruncatedSeries out(p_, d_, cap);
    for (int n = 0; n <= cap; ++n) {
      auto& dst = out.c_[n];
      for (int k = 0; k <= n; ++k) {
        const auto& lhs = c_[k];
        const auto& rhs = o.c_[n - k];
        std::size_t rcount = rhs.size();
        for (std::size_t i = 0; i < lhs.size(); ++i) {
          std::uint64_t li = lhs[i];
          if (li == 0) continue;
          std::size_t base = i * rcount;
          for (std::size_t j = 0; j < rcount; ++j) {
            if (rhs[j] == 0) continue;
            dst[base + j] = static_cast<std::uint32_t>((dst[base + j] + li * rhs[j]) % p_);
          }
        }
      }
    }
    return out;
  }

  bool operator==(const TruncatedSeries& o) const {
    return p_ == o.p_ && d_ == o.d_ && cap_ == o.cap_ && c_ == o.c_;
  }

  template <typename Fn>
  void for_each_nonzero(Fn&& fn) const {
    for (int n = 0; n <= cap_; ++n)
      for (std::size_t r = 0; r < c_[n].size(); ++r)
        if (c_[n][r]) fn(word_unrank(n, r, d_), c_[n][r]);
  }

 private:
  unsigned p_;
  int d_, cap_;
  std::vector<std::vector<std::uint32_t>> c_;
};

namespace detail {

// Coefficients of (1+x)^e truncated at cap, via inversion of 1+x for
// negative e and binary powering in both cases.
inline std::vector<unsigned> one_plus_x_power(long long e, unsigned p, int cap) {
  auto mul = [&](const std::vector<unsigned>& a, const std::vector<unsigned>& b) {
    std::vector<unsigned> out(cap + 1, 0);
    for (int i = 0; i <= cap; ++i) {
      if (a[i] == 0) continue;
      for (int j = 0; i + j <= cap; ++j)
        out[i + j] = static_cast<unsigned>((out[i + j] + std::uint64_t(a[i]) * b[j]) % p);
    }
    return out;
  };
  std::vector<unsigned> base(cap + 1, 0);
  if (e >= 0) {
    base[0] = 1 % p;
    if (cap >= 1) base[1] = 1 % p;
  } else {
    // (1+x)^{-1} = 1 - x + x^2 - ...
    for (int k = 0; k <= cap; ++k) base[k] = (k % 2 == 0) ? 1 % p : (p - 1) % p;
  }
  std::uint64_t n = e >= 0 ? static_cast<std::uint64_t>(e) : static_cast<std::uint64_t>(-e);
  std::vector<unsigned> acc(cap + 1, 0);
  acc[0] = 1 % p;
  while (n) {
    if (n & 1) acc = mul(acc, base);
    base = mul(base, base);
    n >>= 1;
  }
  return acc;
}

}  // namespace detail

/// Standard Magnus expansion of a group element: each generator maps to
/// 1 + x, truncated beyond length cap.
inline TruncatedSeries expand(const GroupElement& g, unsigned p, int alphabet_size, int cap) {
  if (cap < 1) throw std::invalid_argument("expansion cap must be >= 1");
  g.validate();
  TruncatedSeries s = TruncatedSeries::one(p, alphabet_size, cap);
  for (const auto& syl : g.syllables) {
    if (syl.letter < 0 || syl.letter >= alphabet_size)
      throw std::invalid_argument("syllable letter out of alphabet range");
    s.mul_single_letter(syl.letter, detail::one_plus_x_power(syl.exponent, p, cap));
  }
  return s;
}

struct ZassenhausDegree {
  enum class Kind { Degree, BeyondCap, Identity };
  Kind kind;
  int degree = 0;  // valid for Kind::Degree

  bool operator==(const ZassenhausDegree&) const = default;

  std::string to_string() const {
    switch (kind) {
      case Kind::Degree: return "Degree(" + std::to_string(degree) + ")";
      case Kind::BeyondCap: return "BeyondCap";
      case Kind::Identity: return "Identity";
    }
    return "?";
  }
};

/// Least word length with a nonzero Magnus coefficient. Identity is claimed
/// only when the syllable word freely reduces to empty; otherwise vanishing
/// up to the cap is reported as BeyondCap.
inline ZassenhausDegree zassenhaus_degree(const GroupElement& g, unsigned p, int alphabet_size,
                                          int cap) {
  if (g.reduces_to_identity()) return {ZassenhausDegree::Kind::Identity, 0};
  TruncatedSeries s = expand(g, p, alphabet_size, cap);
  int n = s.lowest_positive_degree();
  if (n == 0) return {ZassenhausDegree::Kind::BeyondCap, 0};
  return {ZassenhausDegree::Kind::Degree, n};
}

/// Unipotent upper-triangular matrix over F_p.
struct UnitriangularMatrix {
  unsigned p = 2;
  int size = 1;
  std::vector<std::uint32_t> e;

  UnitriangularMatrix(unsigned prime, int n) : p(prime), size(n), e(std::size_t(n) * n, 0) {
    for (int i = 0; i < n; ++i) at(i, i) = 1;
  }

  std::uint32_t& at(int i, int j) { return e[std::size_t(i) * size + j]; }
  std::uint32_t at(int i, int j) const { return e[std::size_t(i) * size + j]; }

  bool is_unitriangular() const {
    for (int i = 0; i < size; ++i) {
      if (at(i, i) != 1) return false;
      for (int j = 0; j < i; ++j)
        if (at(i, j) != 0) return false;
    }
    return true;
  }

  UnitriangularMatrix operator*(const UnitriangularMatrix& o) const {
    if (p != o.p || size != o.size) throw std::invalid_argument("matrix context mismatch");
    UnitriangularMatrix out(p, size);
    for (int i = 0; i < size; ++i)
      for (int j = 0; j < size; ++j) {
        std::uint64_t acc = 0;
        for (int k = i; k <= j; ++k) acc += std::uint64_t(at(i, k)) * o.at(k, j);
        out.at(i, j) = static_cast<std::uint32_t>(acc % p);
      }
    return out;
  }

  bool operator==(const UnitriangularMatrix&) const = default;
};

/// Magnus representation of g along w: entry (i,j) is the coefficient of
/// the factor a_i..a_{j-1} of w, with unit diagonal.
inline UnitriangularMatrix rho(const TruncatedSeries& s, const Word& w) {
  if (w.length() > s.cap()) throw std::out_of_range("rho word exceeds the series cap");
  int n = w.length();
  UnitriangularMatrix m(s.prime(), n + 1);
  for (int i = 0; i < n + 1; ++i)
    for (int j = i + 1; j < n + 1; ++j) m.at(i, j) = s.coefficient(w.factor(i, j - i));
  return m;
}

inline UnitriangularMatrix rho(const GroupElement& g, const Word& w, unsigned p, int alphabet_size,
                               int cap) {
  return rho(expand(g, p, alphabet_size, cap), w);
}

}  // namespace mild
