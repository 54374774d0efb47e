#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "ccx/prime_field.hpp"

namespace ccx {

/* Dense matrix over F_p, row-major. Deterministic elimination throughout:
 * pivots are always the first nonzero entry scanning rows top-down, columns
 * left-to-right, so every basis this file produces is canonical. */
class FpMatrix {
 public:
  FpMatrix() : p_(2), r_(0), c_(0) {}
  FpMatrix(uint32_t p, size_t rows, size_t cols) : p_(p), r_(rows), c_(cols), a_(rows * cols, 0) {}

  static FpMatrix identity(uint32_t p, size_t n) {
    FpMatrix m(p, n, n);
    for (size_t i = 0; i < n; ++i) m.at(i, i) = 1 % p;
    return m;
  }

  uint32_t p() const { return p_; }
  size_t rows() const { return r_; }
  size_t cols() const { return c_; }

  uint32_t& at(size_t i, size_t j) { return a_[i * c_ + j]; }
  uint32_t at(size_t i, size_t j) const { return a_[i * c_ + j]; }

  void set_int(size_t i, size_t j, int64_t v) { at(i, j) = fp_norm(v, p_); }

  bool operator==(const FpMatrix& o) const {
    return p_ == o.p_ && r_ == o.r_ && c_ == o.c_ && a_ == o.a_;
  }

  bool is_zero() const {
    for (uint32_t v : a_)
      if (v) return false;
    return true;
  }

  FpMatrix mul(const FpMatrix& o) const {
    check(o.r_ == c_ && o.p_ == p_, "mul: shape or modulus mismatch");
    FpMatrix m(p_, r_, o.c_);
    for (size_t i = 0; i < r_; ++i)
      for (size_t k = 0; k < c_; ++k) {
        uint64_t v = at(i, k);
        if (!v) continue;
        for (size_t j = 0; j < o.c_; ++j) {
          uint64_t s = m.at(i, j) + v * o.at(k, j) % p_;
          m.at(i, j) = static_cast<uint32_t>(s >= p_ ? s - p_ : s);
        }
      }
    return m;
  }

  std::vector<uint32_t> mul_vec(const std::vector<uint32_t>& x) const {
    check(x.size() == c_, "mul_vec: size mismatch");
    std::vector<uint32_t> y(r_, 0);
    for (size_t i = 0; i < r_; ++i) {
      uint64_t acc = 0;
      for (size_t j = 0; j < c_; ++j) acc = (acc + static_cast<uint64_t>(at(i, j)) * x[j]) % p_;
      y[i] = static_cast<uint32_t>(acc);
    }
    return y;
  }

  FpMatrix add(const FpMatrix& o) const {
    check(o.r_ == r_ && o.c_ == c_ && o.p_ == p_, "add: shape or modulus mismatch");
    FpMatrix m(p_, r_, c_);
    for (size_t i = 0; i < a_.size(); ++i) m.a_[i] = fp_add(a_[i], o.a_[i], p_);
    return m;
  }

  FpMatrix sub(const FpMatrix& o) const {
    check(o.r_ == r_ && o.c_ == c_ && o.p_ == p_, "sub: shape or modulus mismatch");
    FpMatrix m(p_, r_, c_);
    for (size_t i = 0; i < a_.size(); ++i) m.a_[i] = fp_sub(a_[i], o.a_[i], p_);
    return m;
  }

  FpMatrix scale(uint32_t s) const {
    FpMatrix m(p_, r_, c_);
    for (size_t i = 0; i < a_.size(); ++i) m.a_[i] = fp_mul(a_[i], s, p_);
    return m;
  }

  FpMatrix transpose() const {
    FpMatrix m(p_, c_, r_);
    for (size_t i = 0; i < r_; ++i)
      for (size_t j = 0; j < c_; ++j) m.at(j, i) = at(i, j);
    return m;
  }

  FpMatrix hstack(const FpMatrix& o) const {
    check(o.r_ == r_ && o.p_ == p_, "hstack: row or modulus mismatch");
    FpMatrix m(p_, r_, c_ + o.c_);
    for (size_t i = 0; i < r_; ++i) {
      for (size_t j = 0; j < c_; ++j) m.at(i, j) = at(i, j);
      for (size_t j = 0; j < o.c_; ++j) m.at(i, c_ + j) = o.at(i, j);
    }
    return m;
  }

  FpMatrix vstack(const FpMatrix& o) const {
    check(o.c_ == c_ && o.p_ == p_, "vstack: col or modulus mismatch");
    FpMatrix m(p_, r_ + o.r_, c_);
    for (size_t i = 0; i < r_; ++i)
      for (size_t j = 0; j < c_; ++j) m.at(i, j) = at(i, j);
    for (size_t i = 0; i < o.r_; ++i)
      for (size_t j = 0; j < c_; ++j) m.at(r_ + i, j) = o.at(i, j);
    return m;
  }

  std::vector<uint32_t> col(size_t j) const {
    std::vector<uint32_t> v(r_);
    for (size_t i = 0; i < r_; ++i) v[i] = at(i, j);
    return v;
  }

  FpMatrix select_cols(const std::vector<size_t>& js) const {
    FpMatrix m(p_, r_, js.size());
    for (size_t i = 0; i < r_; ++i)
      for (size_t k = 0; k < js.size(); ++k) m.at(i, k) = at(i, js[k]);
    return m;
  }

  static FpMatrix from_cols(uint32_t p, size_t rows, const std::vector<std::vector<uint32_t>>& cols) {
    FpMatrix m(p, rows, cols.size());
    for (size_t j = 0; j < cols.size(); ++j) {
      check(cols[j].size() == rows, "from_cols: column length mismatch");
      for (size_t i = 0; i < rows; ++i) m.at(i, j) = cols[j][i] % p;
    }
    return m;
  }

  /* As a single vector, row-major. Used to treat maps as vectors in spaces of maps. */
  const std::vector<uint32_t>& flat() const { return a_; }

  static FpMatrix from_flat(uint32_t p, size_t rows, size_t cols, std::vector<uint32_t> data) {
    check(data.size() == rows * cols, "from_flat: size mismatch");
    FpMatrix m(p, rows, cols);
    m.a_ = std::move(data);
    return m;
  }

 private:
  static void check(bool ok, const char* msg) {
    if (!ok) throw std::logic_error(msg);
  }
  uint32_t p_;
  size_t r_, c_;
  std::vector<uint32_t> a_;
};

struct RrefResult {
  FpMatrix m;
  std::vector<size_t> pivots;  // pivot column per pivot row, ascending
};

inline RrefResult rref(FpMatrix m) {
  const uint32_t p = m.p();
  std::vector<size_t> pivots;
  size_t row = 0;
  for (size_t col = 0; col < m.cols() && row < m.rows(); ++col) {
    size_t sel = row;
    while (sel < m.rows() && m.at(sel, col) == 0) ++sel;
    if (sel == m.rows()) continue;
    if (sel != row)
      for (size_t j = 0; j < m.cols(); ++j) std::swap(m.at(sel, j), m.at(row, j));
    uint32_t inv = fp_inv(m.at(row, col), p);
    for (size_t j = 0; j < m.cols(); ++j) m.at(row, j) = fp_mul(m.at(row, j), inv, p);
    for (size_t i = 0; i < m.rows(); ++i) {
      if (i == row) continue;
      uint32_t f = m.at(i, col);
      if (!f) continue;
      for (size_t j = 0; j < m.cols(); ++j)
        m.at(i, j) = fp_sub(m.at(i, j), fp_mul(f, m.at(row, j), p), p);
    }
    pivots.push_back(col);
    ++row;
  }
  return {std::move(m), std::move(pivots)};
}

inline size_t rank(const FpMatrix& m) { return rref(m).pivots.size(); }

/* One solution of A x = b with free variables set to 0; nullopt if inconsistent. */
inline std::optional<std::vector<uint32_t>> solve_linear(const FpMatrix& A,
                                                         const std::vector<uint32_t>& b) {
  FpMatrix bm(A.p(), A.rows(), 1);
  for (size_t i = 0; i < A.rows(); ++i) bm.at(i, 0) = b[i] % A.p();
  RrefResult r = rref(A.hstack(bm));
  std::vector<uint32_t> x(A.cols(), 0);
  for (size_t k = 0; k < r.pivots.size(); ++k) {
    if (r.pivots[k] == A.cols()) return std::nullopt;  // pivot in the augmented column
    x[r.pivots[k]] = r.m.at(k, A.cols());
  }
  return x;
}

/* One solution of A X = B columnwise; nullopt if any column is inconsistent. */
inline std::optional<FpMatrix> solve_matrix(const FpMatrix& A, const FpMatrix& B) {
  RrefResult r = rref(A.hstack(B));
  FpMatrix X(A.p(), A.cols(), B.cols());
  for (size_t k = 0; k < r.pivots.size(); ++k) {
    if (r.pivots[k] >= A.cols()) return std::nullopt;
    for (size_t j = 0; j < B.cols(); ++j) X.at(r.pivots[k], j) = r.m.at(k, A.cols() + j);
  }
  return X;
}

/* Columns form the canonical kernel basis: one vector per free column, with 1
 * in the free position and back-substituted pivot entries. */
inline FpMatrix kernel_basis(const FpMatrix& A) {
  RrefResult r = rref(A);
  std::vector<bool> is_pivot(A.cols(), false);
  for (size_t c : r.pivots) is_pivot[c] = true;
  std::vector<std::vector<uint32_t>> cols;
  for (size_t j = 0; j < A.cols(); ++j) {
    if (is_pivot[j]) continue;
    std::vector<uint32_t> v(A.cols(), 0);
    v[j] = 1 % A.p();
    for (size_t k = 0; k < r.pivots.size(); ++k) v[r.pivots[k]] = fp_neg(r.m.at(k, j), A.p());
    cols.push_back(std::move(v));
  }
  return FpMatrix::from_cols(A.p(), A.cols(), cols);
}

inline std::optional<FpMatrix> inverse(const FpMatrix& A) {
  if (A.rows() != A.cols()) return std::nullopt;
  RrefResult r = rref(A.hstack(FpMatrix::identity(A.p(), A.rows())));
  if (r.pivots.size() != A.rows()) return std::nullopt;
  for (size_t k = 0; k < r.pivots.size(); ++k)
    if (r.pivots[k] != k) return std::nullopt;
  FpMatrix inv(A.p(), A.rows(), A.rows());
  for (size_t i = 0; i < A.rows(); ++i)
    for (size_t j = 0; j < A.rows(); ++j) inv.at(i, j) = r.m.at(i, A.cols() + j);
  return inv;
}

inline bool is_invertible(const FpMatrix& A) {
  return A.rows() == A.cols() && rank(A) == A.rows();
}

/* Canonical basis of the column space: the input columns sitting at pivot
 * positions of the rref. */
inline FpMatrix column_space_basis(const FpMatrix& A) {
  RrefResult r = rref(A);
  return A.select_cols(r.pivots);
}

/* Reduced row echelon rows: canonical key for a row space (and so for a
 * subspace given by spanning columns, via transpose). */
inline FpMatrix row_space_canonical(const FpMatrix& A) {
  RrefResult r = rref(A);
  FpMatrix out(A.p(), r.pivots.size(), A.cols());
  for (size_t i = 0; i < r.pivots.size(); ++i)
    for (size_t j = 0; j < A.cols(); ++j) out.at(i, j) = r.m.at(i, j);
  return out;
}

/* Does v lie in the column space of A? */
inline bool in_column_space(const FpMatrix& A, const std::vector<uint32_t>& v) {
  return solve_linear(A, v).has_value();
}

}  // namespace ccx
