#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "mild/fp.hpp"

namespace mild {

/// Dense matrix over F_p, entries reduced mod p.
struct FpMatrix {
  unsigned p = 2;
  int rows = 0, cols = 0;
  std::vector<std::uint32_t> a;  // row-major

  FpMatrix() = default;
  FpMatrix(unsigned prime, int r, int c) : p(prime), rows(r), cols(c), a(std::size_t(r) * c, 0) {
    require_prime(prime);
    if (r < 0 || c < 0) throw std::invalid_argument("negative matrix dimension");
  }

  std::uint32_t& at(int r, int c) { return a[std::size_t(r) * cols + c]; }
  std::uint32_t at(int r, int c) const { return a[std::size_t(r) * cols + c]; }

  static FpMatrix identity(unsigned prime, int n) {
    FpMatrix m(prime, n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
  }

  bool operator==(const FpMatrix& o) const {
    return p == o.p && rows == o.rows && cols == o.cols && a == o.a;
  }
};

/// Elementary row operation. Scale factors are always in [1, p), so the log
/// can be mirrored onto group elements as exponents.
struct RowOp {
  enum class Kind { Swap, Scale, AddMultiple };
  Kind kind;
  int s = 0;        // target row
  int t = 0;        // other row (Swap, AddMultiple)
  unsigned k = 0;   // scale factor (Scale, AddMultiple)
};

using OpLog = std::vector<RowOp>;

inline void apply_row_op(FpMatrix& m, const RowOp& op) {
  switch (op.kind) {
    case RowOp::Kind::Swap:
      for (int c = 0; c < m.cols; ++c) std::swap(m.at(op.s, c), m.at(op.t, c));
      break;
    case RowOp::Kind::Scale:
      if (op.k == 0 || op.k >= m.p) throw std::invalid_argument("scale factor out of [1,p)");
      for (int c = 0; c < m.cols; ++c) m.at(op.s, c) = fp_mul(m.at(op.s, c), op.k, m.p);
      break;
    case RowOp::Kind::AddMultiple:
      if (op.s == op.t) throw std::invalid_argument("AddMultiple needs distinct rows");
      if (op.k == 0 || op.k >= m.p) throw std::invalid_argument("multiple out of [1,p)");
      for (int c = 0; c < m.cols; ++c)
        m.at(op.s, c) = fp_add(m.at(op.s, c), fp_mul(op.k, m.at(op.t, c), m.p), m.p);
      break;
  }
}

inline FpMatrix apply_row_ops(FpMatrix m, const OpLog& log) {
  for (const auto& op : log) apply_row_op(m, op);
  return m;
}

struct Echelon {
  FpMatrix mat;
  OpLog log;
  int rank = 0;
};

/// Row echelon form with unit pivots: pivot columns strictly increase and
/// entries below each pivot are zero. Pivot choice is the first nonzero
/// entry in column order, which keeps the log deterministic. Replaying the
/// log on the input reproduces the output exactly.
inline Echelon row_reduce(const FpMatrix& input) {
  Echelon res;
  res.mat = input;
  FpMatrix& m = res.mat;
  int r = 0;
  for (int c = 0; c < m.cols && r < m.rows; ++c) {
    int pivot = -1;
    for (int i = r; i < m.rows; ++i)
      if (m.at(i, c) != 0) {
        pivot = i;
        break;
      }
    if (pivot < 0) continue;
    if (pivot != r) {
      RowOp op{RowOp::Kind::Swap, r, pivot, 0};
      apply_row_op(m, op);
      res.log.push_back(op);
    }
    if (m.at(r, c) != 1) {
      RowOp op{RowOp::Kind::Scale, r, 0, fp_inv(m.at(r, c), m.p)};
      apply_row_op(m, op);
      res.log.push_back(op);
    }
    for (int i = r + 1; i < m.rows; ++i) {
      std::uint32_t v = m.at(i, c);
      if (v == 0) continue;
      RowOp op{RowOp::Kind::AddMultiple, i, r, m.p - v};
      apply_row_op(m, op);
      res.log.push_back(op);
    }
    ++r;
  }
  res.rank = r;
  return res;
}

inline int rank(const FpMatrix& m) { return row_reduce(m).rank; }

/// Determinant via elimination, tracking swaps and the pivots before
/// normalization.
inline unsigned determinant(const FpMatrix& input) {
  if (input.rows != input.cols) throw std::invalid_argument("determinant of a non-square matrix");
  FpMatrix m = input;
  unsigned det = 1 % m.p;
  for (int c = 0; c < m.cols; ++c) {
    int pivot = -1;
    for (int i = c; i < m.rows; ++i)
      if (m.at(i, c) != 0) {
        pivot = i;
        break;
      }
    if (pivot < 0) return 0;
    if (pivot != c) {
      for (int j = 0; j < m.cols; ++j) std::swap(m.at(c, j), m.at(pivot, j));
      det = fp_neg(det, m.p);
    }
    unsigned pv = m.at(c, c);
    det = fp_mul(det, pv, m.p);
    unsigned inv = fp_inv(pv, m.p);
    for (int i = c + 1; i < m.rows; ++i) {
      unsigned v = m.at(i, c);
      if (v == 0) continue;
      unsigned f = fp_mul(v, inv, m.p);
      for (int j = c; j < m.cols; ++j)
        m.at(i, j) = fp_sub(m.at(i, j), fp_mul(f, m.at(c, j), m.p), m.p);
    }
  }
  return det;
}

/// A nonzero combination of the rows evaluating to zero, or empty when the
/// rows are independent. Found by eliminating [M | I].
inline std::vector<unsigned> left_nullspace_vector(const FpMatrix& input) {
  FpMatrix aug(input.p, input.rows, input.cols + input.rows);
  for (int i = 0; i < input.rows; ++i) {
    for (int j = 0; j < input.cols; ++j) aug.at(i, j) = input.at(i, j);
    aug.at(i, input.cols + i) = 1;
  }
  int r = 0;
  for (int c = 0; c < input.cols && r < aug.rows; ++c) {
    int pivot = -1;
    for (int i = r; i < aug.rows; ++i)
      if (aug.at(i, c) != 0) {
        pivot = i;
        break;
      }
    if (pivot < 0) continue;
    if (pivot != r)
      for (int j = 0; j < aug.cols; ++j) std::swap(aug.at(r, j), aug.at(pivot, j));
    unsigned inv = fp_inv(aug.at(r, c), aug.p);
    for (int i = r + 1; i < aug.rows; ++i) {
      unsigned v = aug.at(i, c);
      if (v == 0) continue;
      unsigned f = fp_mul(v, inv, aug.p);
      for (int j = 0; j < aug.cols; ++j)
        aug.at(i, j) = fp_sub(aug.at(i, j), fp_mul(f, aug.at(r, j), aug.p), aug.p);
    }
    ++r;
  }
  if (r >= input.rows) return {};
  std::vector<unsigned> combo(input.rows);
  for (int i = 0; i < input.rows; ++i) combo[i] = aug.at(r, input.cols + i);
  return combo;
}

/// Solve M x = b; nullopt when inconsistent. Free variables are set to 0.
inline std::optional<std::vector<unsigned>> solve(const FpMatrix& m, const std::vector<unsigned>& b) {
  if (static_cast<int>(b.size()) != m.rows) throw std::invalid_argument("rhs size mismatch");
  FpMatrix aug(m.p, m.rows, m.cols + 1);
  for (int i = 0; i < m.rows; ++i) {
    for (int j = 0; j < m.cols; ++j) aug.at(i, j) = m.at(i, j);
    aug.at(i, m.cols) = b[i] % m.p;
  }
  Echelon e = row_reduce(aug);
  std::vector<int> pivot_col;
  for (int i = 0; i < e.rank; ++i) {
    int c = 0;
    while (c < aug.cols && e.mat.at(i, c) == 0) ++c;
    if (c == m.cols) return std::nullopt;  // 0 = nonzero rhs
    pivot_col.push_back(c);
  }
  std::vector<unsigned> x(m.cols, 0);
  for (int i = e.rank - 1; i >= 0; --i) {
    unsigned v = e.mat.at(i, m.cols);
    for (int j = pivot_col[i] + 1; j < m.cols; ++j)
      v = fp_sub(v, fp_mul(e.mat.at(i, j), x[j], m.p), m.p);
    x[pivot_col[i]] = v;  // pivots are normalized to 1
  }
  return x;
}

/// Incremental echelon basis: feed rows one at a time, query the rank.
/// Backbone of the brute-force graded dimension counts.
class RowSpan {
 public:
  RowSpan(unsigned prime, std::size_t cols) : p_(prime), cols_(cols), row_of_pivot_(cols, -1) {
    require_prime(prime);
  }

  std::size_t cols() const { return cols_; }
  int rank() const { return static_cast<int>(rows_.size()); }

  // Reduce v against the basis in place; v becomes its residual.
  void reduce(std::vector<std::uint32_t>& v) const {
    for (std::size_t c = 0; c < cols_; ++c) {
      if (v[c] == 0) continue;
      int r = row_of_pivot_[c];
      if (r < 0) continue;
      std::uint64_t f = p_ - v[c];  // pivot rows are normalized
      const auto& base = rows_[r];
      for (std::size_t j = c; j < cols_; ++j) v[j] = static_cast<std::uint32_t>((v[j] + f * base[j]) % p_);
    }
  }

  // Returns true when v enlarges the span.
  bool insert(std::vector<std::uint32_t> v) {
    reduce(v);
    std::size_t c = 0;
    while (c < cols_ && v[c] == 0) ++c;
    if (c == cols_) return false;
    unsigned inv = fp_inv(v[c], p_);
    for (std::size_t j = c; j < cols_; ++j) v[j] = fp_mul(v[j], inv, p_);
    row_of_pivot_[c] = static_cast<int>(rows_.size());
    rows_.push_back(std::move(v));
    return true;
  }

  bool contains(std::vector<std::uint32_t> v) const {
    reduce(v);
    for (auto x : v)
      if (x) return false;
    return true;
  }

 private:
  unsigned p_;
  std::size_t cols_;
  std::vector<std::vector<std::uint32_t>> rows_;
  std::vector<int> row_of_pivot_;
};

}  // namespace mild
