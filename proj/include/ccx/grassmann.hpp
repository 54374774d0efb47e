#pragma once

#include <map>
#include <stdexcept>
#include <utility>
#include <vector>

#include "ccx/module.hpp"
#include "ccx/rational.hpp"

namespace ccx {

/* ---- submodule enumeration ------------------------------------------------ */

/* Submodule counts of a module, grouped by dimension vector.  Invariant
 * subspaces split along the idempotent blocks, so the candidates are products
 * of per-block row echelon bases, filtered by invariance under every algebra
 * basis element.  No radical is involved, which keeps the routine exact at
 * every prime. */
struct SubmoduleCounts {
  std::map<std::vector<size_t>, long long> by_class;
  long long total = 0;
};

namespace detail {

/* All reduced echelon row bases of subspaces of F_p^d, every dimension. */
inline std::vector<FpMatrix> all_echelon_bases(uint32_t p, size_t d) {
  std::vector<FpMatrix> out;
  for (uint64_t mask = 0; mask < (uint64_t(1) << d); ++mask) {
    std::vector<size_t> piv;
    for (size_t j = 0; j < d; ++j)
      if (mask >> j & 1) piv.push_back(j);
    size_t k = piv.size();
    std::vector<std::pair<size_t, size_t>> free_at;
    for (size_t i = 0; i < k; ++i)
      for (size_t j = piv[i] + 1; j < d; ++j)
        if (!(mask >> j & 1)) free_at.push_back({i, j});
    uint64_t total = 1;
    for (size_t i = 0; i < free_at.size(); ++i) {
      total *= p;
      if (total > (uint64_t(1) << 40))
        throw std::runtime_error("all_echelon_bases: too many subspaces to enumerate");
    }
    for (uint64_t code = 0; code < total; ++code) {
      FpMatrix m(p, k, d);
      for (size_t i = 0; i < k; ++i) m.at(i, piv[i]) = 1 % p;
      uint64_t c = code;
      for (auto [i, j] : free_at) {
        m.at(i, j) = uint32_t(c % p);
        c /= p;
      }
      out.push_back(std::move(m));
    }
  }
  return out;
}

}  // namespace detail

inline SubmoduleCounts enumerate_submodules(const Module& M, size_t dim_cap = 8) {
  if (M.dim() > dim_cap)
    throw std::runtime_error("enumerate_submodules: ambient dimension exceeds the cap");
  uint32_t p = M.p();
  size_t nb = M.A->nblocks();
  std::vector<std::vector<size_t>> coords(nb);
  for (size_t i = 0; i < M.dim(); ++i) coords[M.block[i]].push_back(i);

  std::vector<std::vector<FpMatrix>> choices;
  uint64_t candidates = 1;
  for (size_t v = 0; v < nb; ++v) {
    choices.push_back(detail::all_echelon_bases(p, coords[v].size()));
    candidates *= choices.back().size();
    if (candidates > (uint64_t(1) << 22))
      throw std::runtime_error("enumerate_submodules: candidate count exceeds the budget");
  }

  SubmoduleCounts out;
  std::vector<size_t> pick(nb, 0);
  while (true) {
    // assemble the block pieces into ambient coordinates
    size_t k = 0;
    for (size_t v = 0; v < nb; ++v) k += choices[v][pick[v]].rows();
    FpMatrix rows(p, k, M.dim());
    std::vector<size_t> cls(nb, 0);
    size_t at = 0;
    for (size_t v = 0; v < nb; ++v) {
      const FpMatrix& piece = choices[v][pick[v]];
      cls[v] = piece.rows();
      for (size_t i = 0; i < piece.rows(); ++i, ++at)
        for (size_t j = 0; j < piece.cols(); ++j) rows.at(at, coords[v][j]) = piece.at(i, j);
    }
    bool invariant = true;
    size_t base = rank(rows);
    for (size_t g = 0; g < M.A->dim() && invariant; ++g) {
      FpMatrix image = rows.mul(M.act[g].transpose());
      invariant = rank(rows.vstack(image)) == base;
    }
    if (invariant) {
      out.by_class[cls] += 1;
      out.total += 1;
    }
    size_t v = 0;
    while (v < nb && ++pick[v] == choices[v].size()) pick[v++] = 0;
    if (v == nb) break;
  }
  return out;
}

/* ---- Euler characteristics from point counts ------------------------------ */

/* Exact Euler characteristic of a variety from its point counts over several
 * finite fields: interpolate a polynomial through the first degree_bound + 1
 * counts, demand that it reproduces every remaining count and has integer
 * coefficients, and evaluate at one. */
struct EulerChar {
  long long chi = 0;
  std::vector<Rat> coeffs;  // ascending
};

inline EulerChar euler_char_from_counts(const std::vector<std::pair<long long, long long>>& pts,
                                        size_t degree_bound) {
  if (pts.size() < degree_bound + 1)
    throw std::runtime_error("euler_char_from_counts: not enough counting fields for the degree");
  std::vector<std::pair<long long, long long>> head(pts.begin(), pts.begin() + degree_bound + 1);
  EulerChar out;
  out.coeffs = lagrange_interpolate(head);
  for (const Rat& c : out.coeffs)
    if (c.d != 1)
      throw std::runtime_error("euler_char_from_counts: interpolation is not integral");
  for (const auto& [x, y] : pts) {
    Rat val(0);
    Rat xp(1);
    for (const Rat& c : out.coeffs) {
      val = val + c * xp;
      xp = xp * Rat(x);
    }
    if (!(val == Rat(y)))
      throw std::runtime_error("euler_char_from_counts: counts are not polynomial at the given degree");
  }
  Rat chi(0);
  for (auto it = out.coeffs.rbegin(); it != out.coeffs.rend(); ++it) chi = chi + *it;
  out.chi = chi.n;
  return out;
}

/* Degree bound for the locus of submodules with a fixed dimension vector
 * inside a module with the given block dimensions: the ambient product of
 * ordinary Grassmannians has dimension sum e_v (d_v - e_v). */
inline size_t grassmann_degree_bound(const std::vector<size_t>& ambient,
                                     const std::vector<size_t>& cls) {
  if (ambient.size() != cls.size())
    throw std::logic_error("grassmann_degree_bound: block arity mismatch");
  size_t d = 0;
  for (size_t v = 0; v < ambient.size(); ++v) {
    if (cls[v] > ambient[v]) throw std::logic_error("grassmann_degree_bound: class exceeds ambient");
    d += cls[v] * (ambient[v] - cls[v]);
  }
  return d;
}

}  // namespace ccx
