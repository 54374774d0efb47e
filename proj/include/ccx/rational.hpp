#pragma once

#include <cstdint>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <vector>

namespace ccx {

/* Exact rationals on 64-bit parts with overflow checks. The integer data in
 * this project (Cartan matrices, K0 classes, point counts) is tiny, so any
 * overflow signals a logic error rather than a size problem. */
struct Rat {
  long long n = 0;
  long long d = 1;

  Rat() = default;
  Rat(long long v) : n(v), d(1) {}
  Rat(long long num, long long den) : n(num), d(den) { normalize(); }

  static long long checked(__int128 v) {
    if (v > INT64_MAX / 4 || v < INT64_MIN / 4) throw std::overflow_error("Rat: overflow");
    return static_cast<long long>(v);
  }

  void normalize() {
    if (d == 0) throw std::domain_error("Rat: zero denominator");
    if (d < 0) { n = -n; d = -d; }
    long long g = std::gcd(n < 0 ? -n : n, d);
    if (g > 1) { n /= g; d /= g; }
  }

  Rat operator+(const Rat& o) const {
    return Rat(checked(static_cast<__int128>(n) * o.d + static_cast<__int128>(o.n) * d),
               checked(static_cast<__int128>(d) * o.d));
  }
  Rat operator-(const Rat& o) const {
    return Rat(checked(static_cast<__int128>(n) * o.d - static_cast<__int128>(o.n) * d),
               checked(static_cast<__int128>(d) * o.d));
  }
  Rat operator*(const Rat& o) const {
    return Rat(checked(static_cast<__int128>(n) * o.n), checked(static_cast<__int128>(d) * o.d));
  }
  Rat operator/(const Rat& o) const {
    if (o.n == 0) throw std::domain_error("Rat: divide by zero");
    return Rat(checked(static_cast<__int128>(n) * o.d), checked(static_cast<__int128>(d) * o.n));
  }
  Rat operator-() const { return Rat(-n, d); }
  bool operator==(const Rat& o) const { return n == o.n && d == o.d; }
  bool is_zero() const { return n == 0; }
  bool is_integer() const { return d == 1; }
  long long as_integer() const {
    if (d != 1) throw std::domain_error("Rat: not an integer");
    return n;
  }
};

using RatMatrix = std::vector<std::vector<Rat>>;

inline RatMatrix rat_identity(size_t n) {
  RatMatrix m(n, std::vector<Rat>(n, Rat(0)));
  for (size_t i = 0; i < n; ++i) m[i][i] = Rat(1);
  return m;
}

/* Gauss-Jordan over Q; returns pivot columns. */
inline std::vector<size_t> rat_rref(RatMatrix& m) {
  std::vector<size_t> pivots;
  if (m.empty()) return pivots;
  size_t rows = m.size(), cols = m[0].size(), row = 0;
  for (size_t col = 0; col < cols && row < rows; ++col) {
    size_t sel = row;
    while (sel < rows && m[sel][col].is_zero()) ++sel;
    if (sel == rows) continue;
    std::swap(m[sel], m[row]);
    Rat inv = Rat(1) / m[row][col];
    for (size_t j = 0; j < cols; ++j) m[row][j] = m[row][j] * inv;
    for (size_t i = 0; i < rows; ++i) {
      if (i == row || m[i][col].is_zero()) continue;
      Rat f = m[i][col];
      for (size_t j = 0; j < cols; ++j) m[i][j] = m[i][j] - f * m[row][j];
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

inline std::optional<RatMatrix> rat_inverse(const RatMatrix& a) {
  size_t n = a.size();
  RatMatrix aug(n, std::vector<Rat>(2 * n, Rat(0)));
  for (size_t i = 0; i < n; ++i) {
    if (a[i].size() != n) throw std::logic_error("rat_inverse: not square");
    for (size_t j = 0; j < n; ++j) aug[i][j] = a[i][j];
    aug[i][n + i] = Rat(1);
  }
  std::vector<size_t> piv = rat_rref(aug);
  if (piv.size() != n) return std::nullopt;
  RatMatrix inv(n, std::vector<Rat>(n));
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) inv[i][j] = aug[i][n + j];
  return inv;
}

/* Solve A X = B exactly. Returns nullopt when inconsistent; when the system is
 * underdetermined the free variables are 0. `unique` reports full column rank. */
struct RatSolve {
  RatMatrix x;
  bool unique;
};
inline std::optional<RatSolve> rat_solve(const RatMatrix& A, const RatMatrix& B) {
  size_t rows = A.size();
  size_t cols = rows ? A[0].size() : 0;
  size_t bcols = B.empty() ? 0 : B[0].size();
  RatMatrix aug(rows, std::vector<Rat>(cols + bcols, Rat(0)));
  for (size_t i = 0; i < rows; ++i) {
    for (size_t j = 0; j < cols; ++j) aug[i][j] = A[i][j];
    for (size_t j = 0; j < bcols; ++j) aug[i][cols + j] = B[i][j];
  }
  std::vector<size_t> piv = rat_rref(aug);
  RatMatrix X(cols, std::vector<Rat>(bcols, Rat(0)));
  size_t main_pivots = 0;
  for (size_t k = 0; k < piv.size(); ++k) {
    if (piv[k] >= cols) return std::nullopt;
    ++main_pivots;
    for (size_t j = 0; j < bcols; ++j) X[piv[k]][j] = aug[k][cols + j];
  }
  return RatSolve{std::move(X), main_pivots == cols};
}

/* Lagrange interpolation through (x_i, y_i); coefficients ordered by ascending
 * power. Points must have distinct x. */
inline std::vector<Rat> lagrange_interpolate(const std::vector<std::pair<long long, long long>>& pts) {
  size_t n = pts.size();
  std::vector<Rat> acc(n, Rat(0));
  for (size_t i = 0; i < n; ++i) {
    std::vector<Rat> numer{Rat(1)};  // product of (x - x_j), ascending coefficients
    Rat denom(1);
    for (size_t j = 0; j < n; ++j) {
      if (j == i) continue;
      denom = denom * Rat(pts[i].first - pts[j].first);
      std::vector<Rat> next(numer.size() + 1, Rat(0));
      for (size_t k = 0; k < numer.size(); ++k) {
        next[k + 1] = next[k + 1] + numer[k];
        next[k] = next[k] - numer[k] * Rat(pts[j].first);
      }
      numer = std::move(next);
    }
    Rat scale = Rat(pts[i].second) / denom;
    for (size_t k = 0; k < numer.size(); ++k) acc[k] = acc[k] + numer[k] * scale;
  }
  while (acc.size() > 1 && acc.back().is_zero()) acc.pop_back();
  return acc;
}

inline Rat rat_poly_eval(const std::vector<Rat>& coeffs, Rat x) {
  Rat r(0);
  for (size_t k = coeffs.size(); k-- > 0;) r = r * x + coeffs[k];
  return r;
}

}  // namespace ccx
