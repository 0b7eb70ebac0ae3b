#pragma once

#include <cctype>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "mild/alphabet.hpp"
#include "mild/linalg.hpp"
#include "mild/series.hpp"

namespace mild {

struct ParseError : std::runtime_error {
  std::size_t position;
  ParseError(std::size_t pos, const std::string& msg)
      : std::runtime_error("parse error at position " + std::to_string(pos) + ": " + msg),
        position(pos) {}
};

namespace detail {

// Recursive-descent parser for relator expressions:
//   expr   := factor+            ('*' optional between factors)
//   factor := atom ['^' int]
//   atom   := name | '[' expr ',' expr ']' | '(' expr ')'
// with the commutator convention [a,b] = a^-1 b^-1 a b.
class RelatorParser {
 public:
  RelatorParser(std::string_view text, const Alphabet& alphabet) : text_(text), alphabet_(alphabet) {}

  GroupElement parse() {
    GroupElement g = expr();
    skip_ws();
    if (pos_ != text_.size()) fail("unexpected trailing input");
    return g;
  }

 private:
  GroupElement expr() {
    GroupElement g = factor();
    while (true) {
      skip_ws();
      if (pos_ == text_.size()) break;
      char c = text_[pos_];
      if (c == '*') {
        ++pos_;
        g = g * factor();
      } else if (c == ',' || c == ']' || c == ')') {
        break;
      } else {
        g = g * factor();
      }
    }
    return g;
  }

  GroupElement factor() {
    GroupElement g = atom();
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == '^') {
      ++pos_;
      std::size_t at = pos_;
      long long e = integer();
      if (e == 0) throw ParseError(at, "zero exponent");
      if (g.syllables.size() == 1) {
        g.syllables[0].exponent *= e;
      } else {
        g = g.pow(e);
      }
    }
    return g;
  }

  GroupElement atom() {
    skip_ws();
    if (pos_ == text_.size()) fail("expected a generator, '[' or '('");
    char c = text_[pos_];
    if (c == '[') {
      ++pos_;
      GroupElement a = expr();
      expect(',');
      GroupElement b = expr();
      expect(']');
      return a.inverse() * b.inverse() * a * b;
    }
    if (c == '(') {
      ++pos_;
      GroupElement a = expr();
      expect(')');
      return a;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = pos_;
      while (pos_ < text_.size() && (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
        ++pos_;
      std::string name(text_.substr(start, pos_ - start));
      int idx = alphabet_.index_of(name);
      if (idx < 0) throw ParseError(start, "unknown generator '" + name + "'");
      return GroupElement::generator(idx);
    }
    fail(std::string("unexpected character '") + c + "'");
    return {};
  }

  long long integer() {
    skip_ws();
    std::size_t start = pos_;
    bool neg = false;
    if (pos_ < text_.size() && (text_[pos_] == '-' || text_[pos_] == '+')) {
      neg = text_[pos_] == '-';
      ++pos_;
    }
    if (pos_ == text_.size() || !std::isdigit(static_cast<unsigned char>(text_[pos_])))
      throw ParseError(start, "expected an integer exponent");
    long long v = 0;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      v = v * 10 + (text_[pos_] - '0');
      if (v > (1LL << 40)) throw ParseError(start, "exponent too large");
      ++pos_;
    }
    return neg ? -v : v;
  }

  void expect(char c) {
    skip_ws();
    if (pos_ == text_.size() || text_[pos_] != c)
      fail(std::string("expected '") + c + "'");
    ++pos_;
  }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  [[noreturn]] void fail(const std::string& msg) { throw ParseError(pos_, msg); }

  std::string_view text_;
  const Alphabet& alphabet_;
  std::size_t pos_ = 0;
};

}  // namespace detail

inline GroupElement parse_relator(std::string_view text, const Alphabet& alphabet) {
  return detail::RelatorParser(text, alphabet).parse();
}

inline std::string unparse(const GroupElement& g, const Alphabet& alphabet) {
  if (g.empty()) return "1";
  std::string out;
  for (std::size_t i = 0; i < g.syllables.size(); ++i) {
    if (i) out += "*";
    out += alphabet.name(g.syllables[i].letter);
    if (g.syllables[i].exponent != 1) out += "^" + std::to_string(g.syllables[i].exponent);
  }
  return out;
}

/// Finitely presented pro-p group data: prime, weighted alphabet, relators,
/// and a truncation cap. Relator expansions are cached at the cap.
class Presentation {
 public:
  Presentation(unsigned p, Alphabet alphabet, std::vector<GroupElement> relators,
               std::optional<int> cap = std::nullopt)
      : p_(p), alphabet_(std::move(alphabet)), relators_(std::move(relators)) {
    require_prime(p);
    if (relators_.empty()) throw std::invalid_argument("presentation needs at least one relator");
    for (const auto& r : relators_) {
      r.validate();
      for (const auto& s : r.syllables)
        if (s.letter < 0 || s.letter >= alphabet_.size())
          throw std::invalid_argument("relator uses a letter outside the alphabet");
      if (r.reduces_to_identity()) throw std::invalid_argument("identity relator");
    }
    cap_ = cap ? *cap : default_cap();
    if (cap_ < 1) throw std::invalid_argument("truncation cap must be >= 1");
    words_of_length(alphabet_.size(), cap_, kCapGuard);  // reject oversized tables up front
    for (const auto& r : relators_) series_.push_back(expand(r, p_, alphabet_.size(), cap_));
  }

  unsigned prime() const { return p_; }
  const Alphabet& alphabet() const { return alphabet_; }
  int cap() const { return cap_; }
  int relator_count() const { return static_cast<int>(relators_.size()); }
  const std::vector<GroupElement>& relators() const { return relators_; }
  const GroupElement& relator(int j) const { return relators_.at(j); }
  const TruncatedSeries& series(int j) const { return series_.at(j); }

  unsigned epsilon(int j, const Word& w) const { return series_.at(j).coefficient(w); }

  Presentation with_relators(std::vector<GroupElement> relators) const {
    return Presentation(p_, alphabet_, std::move(relators), cap_);
  }

 private:
  static constexpr std::size_t kCapGuard = std::size_t{1} << 22;

  // Entry degree + 4, found by growing a trial cap; clamped by the table
  // guard but never below the largest relator degree seen.
  int default_cap() const {
    int d = alphabet_.size();
    int max_cap = 1;
    while (max_cap < 24) {
      try {
        words_of_length(d, max_cap + 1, kCapGuard);
      } catch (const std::length_error&) {
        break;
      }
      ++max_cap;
    }
    std::vector<int> degree(relators_.size(), 0);
    int found = 0;
    for (int trial = 2; trial <= max_cap; trial = std::min(trial + 2, max_cap)) {
      for (std::size_t j = 0; j < relators_.size(); ++j) {
        if (degree[j]) continue;
        TruncatedSeries s = expand(relators_[j], p_, d, trial);
        if (int n = s.lowest_positive_degree(); n > 0) {
          degree[j] = n;
          ++found;
        }
      }
      if (found == static_cast<int>(relators_.size()) || trial == max_cap) break;
    }
    if (found < static_cast<int>(relators_.size()))
      throw std::runtime_error("relator degree exceeds the truncation guard; pass an explicit cap");
    int entry = *std::min_element(degree.begin(), degree.end());
    int deepest = *std::max_element(degree.begin(), degree.end());
    return std::max(deepest, std::min(entry + 4, max_cap));
  }

  unsigned p_;
  Alphabet alphabet_;
  std::vector<GroupElement> relators_;
  int cap_ = 0;
  std::vector<TruncatedSeries> series_;
};

struct EntryDegree {
  int degree = 0;
  bool uniform = false;
};

/// Minimum Zassenhaus degree over the relators; errors if some relator has
/// no visible degree at the cap.
inline EntryDegree entry_degree(const Presentation& pres) {
  int min_deg = 0, max_deg = 0;
  for (int j = 0; j < pres.relator_count(); ++j) {
    int n = pres.series(j).lowest_positive_degree();
    if (n == 0)
      throw std::runtime_error("relator " + std::to_string(j + 1) +
                               " vanishes up to the cap (degree beyond truncation)");
    if (j == 0) {
      min_deg = max_deg = n;
    } else {
      min_deg = std::min(min_deg, n);
      max_deg = std::max(max_deg, n);
    }
  }
  return {min_deg, min_deg == max_deg};
}

struct MinimalityReport {
  bool degree1_ok = false;
  int bad_relator = -1;   // when degree1_ok is false
  int bad_generator = -1;
  bool independence_checked = false;
  bool independent = false;

  bool certified() const { return degree1_ok && independence_checked && independent; }

  std::string summary() const {
    if (!degree1_ok)
      return "not minimal: relator " + std::to_string(bad_relator + 1) +
             " has a nonzero coefficient on generator " + std::to_string(bad_generator + 1);
    if (certified()) return "minimality certified";
    if (independence_checked && !independent)
      return "degree-1 test passed, independence failed: not certified";
    return "degree-1 test passed, independence not certified";
  }
};

/// Frattini-quotient test plus, for a uniform entry degree, linear
/// independence of the initial forms. Independence is a sufficient
/// certificate only; truncation cannot refute minimality.
inline MinimalityReport validate_minimal(const Presentation& pres) {
  MinimalityReport rep;
  int d = pres.alphabet().size();
  for (int j = 0; j < pres.relator_count(); ++j)
    for (int a = 0; a < d; ++a)
      if (pres.epsilon(j, Word{a}) != 0) {
        rep.bad_relator = j;
        rep.bad_generator = a;
        return rep;
      }
  rep.degree1_ok = true;
  EntryDegree entry = entry_degree(pres);
  if (!entry.uniform) return rep;
  rep.independence_checked = true;
  std::size_t cols = words_of_length(d, entry.degree);
  RowSpan span(pres.prime(), cols);
  int rank = 0;
  for (int j = 0; j < pres.relator_count(); ++j) {
    std::vector<std::uint32_t> row(pres.series(j).degree_data(entry.degree));
    if (span.insert(std::move(row))) ++rank;
  }
  rep.independent = rank == pres.relator_count();
  return rep;
}

/// A word is compatible when every nonempty proper contiguous factor of it
/// has vanishing coefficient on every relator. Checking the relators
/// suffices: the corner subgroup is central, so conjugates land there
/// automatically.
inline bool is_compatible(const Presentation& pres, const Word& w) {
  check_letters(w, pres.alphabet().size());
  if (w.length() > pres.cap()) throw std::out_of_range("compatibility check beyond the cap");
  int n = w.length();
  for (int j = 0; j < pres.relator_count(); ++j) {
    const TruncatedSeries& s = pres.series(j);
    // len < n: the full word itself is the corner entry, not constrained
    for (int len = 1; len < n; ++len)
      for (int start = 0; start + len <= n; ++start)
        if (s.coefficient(w.factor(start, len)) != 0) return false;
  }
  return true;
}

/// All compatible words of length n, in lexicographic (listing) order.
inline std::vector<Word> compatible_words(const Presentation& pres, int n) {
  if (n < 1 || n > pres.cap()) throw std::out_of_range("compatible_words degree out of range");
  int d = pres.alphabet().size();
  std::size_t total = words_of_length(d, n);
  std::vector<Word> out;
  for (std::size_t r = 0; r < total; ++r) {
    Word w = word_unrank(n, r, d);
    if (is_compatible(pres, w)) out.push_back(std::move(w));
  }
  return out;
}

/// Koch-type data: r_j = x_j^{p a_j} * prod_{k != j} [x_j, x_k]^{a_jk},
/// with coefficients in [0, p). Indices are 1-based to match the usual
/// notation; entry 0 of the tables is unused.
struct KochData {
  unsigned p = 3;
  int d = 0, m = 0;
  std::vector<unsigned> a;                 // size m+1
  std::vector<std::vector<unsigned>> ajk;  // (m+1) x (d+1)

  void validate() const {
    require_prime(p);
    if (d < 1 || m < 1 || m > d) throw std::invalid_argument("Koch data needs 1 <= m <= d");
    if (static_cast<int>(a.size()) != m + 1) throw std::invalid_argument("Koch a-table size mismatch");
    if (static_cast<int>(ajk.size()) != m + 1) throw std::invalid_argument("Koch ajk-table size mismatch");
    for (int j = 1; j <= m; ++j) {
      if (a[j] >= p) throw std::invalid_argument("Koch a_j out of [0,p)");
      if (static_cast<int>(ajk[j].size()) != d + 1)
        throw std::invalid_argument("Koch ajk-table row size mismatch");
      for (int k = 1; k <= d; ++k) {
        if (ajk[j][k] >= p) throw std::invalid_argument("Koch a_jk out of [0,p)");
        if (k == j && ajk[j][k] != 0) throw std::invalid_argument("Koch a_jj must be 0");
      }
    }
  }

  static KochData zero(unsigned p, int d, int m) {
    KochData k;
    k.p = p;
    k.d = d;
    k.m = m;
    k.a.assign(m + 1, 0);
    k.ajk.assign(m + 1, std::vector<unsigned>(d + 1, 0));
    return k;
  }
};

inline Presentation koch_presentation(const KochData& data, std::optional<int> cap = std::nullopt) {
  data.validate();
  Alphabet alphabet = Alphabet::standard(data.d);
  std::vector<GroupElement> relators;
  for (int j = 1; j <= data.m; ++j) {
    GroupElement r;
    if (data.a[j] != 0)
      r = r * GroupElement::generator(j - 1, static_cast<long long>(data.p) * data.a[j]);
    for (int k = 1; k <= data.d; ++k) {
      if (k == j || data.ajk[j][k] == 0) continue;
      GroupElement xj = GroupElement::generator(j - 1);
      GroupElement xk = GroupElement::generator(k - 1);
      GroupElement comm = xj.inverse() * xk.inverse() * xj * xk;
      r = r * comm.pow(data.ajk[j][k]);
    }
    if (r.empty())
      throw std::invalid_argument("Koch relator " + std::to_string(j) + " is the identity");
    relators.push_back(std::move(r));
  }
  return Presentation(data.p, std::move(alphabet), std::move(relators), cap);
}

/// Unoriented loop-free graph over named vertices; edges are stored with
/// i < j and deduplicated.
struct Graph {
  std::vector<std::string> vertices;
  std::vector<std::pair<int, int>> edges;

  Graph(std::vector<std::string> vs, std::vector<std::pair<int, int>> es) : vertices(std::move(vs)) {
    if (vertices.empty()) throw std::invalid_argument("graph needs at least one vertex");
    std::vector<std::vector<bool>> seen(vertices.size(), std::vector<bool>(vertices.size(), false));
    for (auto [i, j] : es) {
      if (i < 0 || j < 0 || i >= static_cast<int>(vertices.size()) || j >= static_cast<int>(vertices.size()))
        throw std::invalid_argument("edge endpoint out of range");
      if (i == j) throw std::invalid_argument("graph has a loop");
      if (i > j) std::swap(i, j);
      if (seen[i][j]) continue;
      seen[i][j] = true;
      edges.emplace_back(i, j);
    }
  }

  static Graph cycle(int n) {
    std::vector<std::string> vs;
    for (int i = 1; i <= n; ++i) vs.push_back("x" + std::to_string(i));
    std::vector<std::pair<int, int>> es;
    for (int i = 0; i < n; ++i) es.emplace_back(i, (i + 1) % n);
    return Graph(std::move(vs), std::move(es));
  }

  static Graph path(int n) {
    std::vector<std::string> vs;
    for (int i = 1; i <= n; ++i) vs.push_back("x" + std::to_string(i));
    std::vector<std::pair<int, int>> es;
    for (int i = 0; i + 1 < n; ++i) es.emplace_back(i, i + 1);
    return Graph(std::move(vs), std::move(es));
  }
};

/// One commutator relator [x_i, x_k] per edge, i < k in listing order.
inline Presentation raag_presentation(const Graph& graph, unsigned p,
                                      std::optional<int> cap = std::nullopt) {
  if (graph.edges.empty()) throw std::invalid_argument("RAAG presentation needs at least one edge");
  Alphabet alphabet(graph.vertices);
  std::vector<GroupElement> relators;
  for (auto [i, k] : graph.edges) {
    GroupElement xi = GroupElement::generator(i);
    GroupElement xk = GroupElement::generator(k);
    relators.push_back(xi.inverse() * xk.inverse() * xi * xk);
  }
  return Presentation(p, std::move(alphabet), std::move(relators), cap);
}

}  // namespace mild
