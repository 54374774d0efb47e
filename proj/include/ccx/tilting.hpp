#pragma once

#include <memory>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "ccx/algebra.hpp"
#include "ccx/frobenius.hpp"
#include "ccx/homology.hpp"
#include "ccx/k0.hpp"
#include "ccx/module.hpp"
#include "ccx/rational.hpp"

namespace ccx {

/* ---- endomorphism algebras ------------------------------------------------ */

/* Opposite endomorphism algebra of a finite list of modules, with a matrix
 * representative kept for every basis element.  Basis element k stands for a
 * map T_{from[k]} -> T_{to[k]}.  Products compose representatives the other
 * way around (x*y is y followed by x), so as an algebra element it has
 * src = to[k] and tgt = from[k], and on Hom functors it sends component
 * to[k] into component from[k] by precomposition. */
struct EndAlgebra {
  std::shared_ptr<const Algebra> alg;
  std::vector<FpMatrix> map;           // representative of basis element k
  std::vector<size_t> from, to;
  std::vector<std::vector<size_t>> at;  // at[u*m + v] = basis indices of Hom(T_u, T_v)

  size_t pairs() const { return at.size(); }
  std::vector<FpMatrix> block_basis(size_t u, size_t v, size_t m) const {
    std::vector<FpMatrix> b;
    for (size_t k : at[u * m + v]) b.push_back(map[k]);
    return b;
  }
};

namespace detail {

/* Greedy selection of a basis containing `seed` as its first element.  The
 * candidates are known to span; the seed must lie in their span. */
inline std::vector<FpMatrix> basis_with_seed(const FpMatrix& seed,
                                             const std::vector<FpMatrix>& candidates) {
  std::vector<FpMatrix> chosen;
  if (candidates.empty()) throw std::logic_error("basis_with_seed: empty hom block on the diagonal");
  uint32_t p = seed.p();
  size_t fl = seed.rows() * seed.cols();
  FpMatrix rows(p, 0, fl);
  auto push = [&](const FpMatrix& f) {
    FpMatrix one(p, 1, fl);
    auto v = f.flat();
    for (size_t i = 0; i < fl; ++i) one.at(0, i) = v[i];
    FpMatrix next = rows.vstack(one);
    if (rank(next) > rows.rows()) {
      rows = row_space_canonical(next);
      chosen.push_back(f);
      return true;
    }
    return false;
  };
  if (!push(seed)) throw std::logic_error("basis_with_seed: zero seed");
  for (const auto& f : candidates) push(f);
  if (chosen.size() != candidates.size())
    throw std::logic_error("basis_with_seed: seed escapes the span of the block");
  return chosen;
}

}  // namespace detail

/* End(T)^op for a list of modules over one algebra.  Identity maps are forced
 * to be literal basis elements so the block idempotents exist on the nose. */
inline EndAlgebra endomorphism_algebra(const std::vector<Module>& T,
                                       const std::vector<std::string>& names) {
  if (T.empty() || T.size() != names.size())
    throw std::runtime_error("endomorphism_algebra: summand/name mismatch");
  size_t m = T.size();
  uint32_t p = T[0].p();
  EndAlgebra E;
  E.at.assign(m * m, {});

  Algebra A;
  A.p = p;
  A.block_names = names;
  A.graded = false;
  A.idem.assign(m, 0);

  for (size_t u = 0; u < m; ++u)
    for (size_t v = 0; v < m; ++v) {
      auto H = hom_space(T[u], T[v]);
      std::vector<FpMatrix> chosen;
      if (u == v)
        chosen = detail::basis_with_seed(FpMatrix::identity(p, T[u].dim()), H);
      else
        chosen = H;
      for (size_t k = 0; k < chosen.size(); ++k) {
        size_t idx = A.names.size();
        if (u == v && k == 0) {
          A.names.push_back("id:" + names[u]);
          A.idem[u] = idx;
        } else {
          A.names.push_back(names[u] + ">" + names[v] + ":" + std::to_string(k));
        }
        A.src.push_back(v);
        A.tgt.push_back(u);
        A.deg.push_back(-1);
        E.map.push_back(chosen[k]);
        E.from.push_back(u);
        E.to.push_back(v);
        E.at[u * m + v].push_back(idx);
      }
    }

  size_t d = A.names.size();
  A.word.assign(d, {});
  A.mult.assign(d, std::vector<std::vector<uint32_t>>(d, std::vector<uint32_t>(d, 0)));
  for (size_t i = 0; i < d; ++i)
    for (size_t j = 0; j < d; ++j) {
      if (E.to[i] != E.from[j]) continue;  // src(x_i) != tgt(x_j)
      size_t bu = E.from[i], bv = E.to[j];
      auto basis = E.block_basis(bu, bv, m);
      auto c = matrix_coords(basis, E.map[j].mul(E.map[i]), p);
      for (size_t l = 0; l < c.size(); ++l) A.mult[i][j][E.at[bu * m + bv][l]] = c[l];
    }

  validate_algebra(A);
  E.alg = std::make_shared<const Algebra>(std::move(A));
  return E;
}

/* Stable variant: Hom spaces modulo maps factoring through projectives.  The
 * kept representatives are honest module maps; products are computed on
 * representatives and re-expressed through stable coordinates, which is
 * well defined because the factoring maps form an ideal. */
inline EndAlgebra stable_endomorphism_algebra(const std::vector<Module>& T,
                                              const std::vector<std::string>& names) {
  if (T.empty() || T.size() != names.size())
    throw std::runtime_error("stable_endomorphism_algebra: summand/name mismatch");
  size_t m = T.size();
  uint32_t p = T[0].p();
  std::vector<StableHom> sh(m * m);
  for (size_t u = 0; u < m; ++u)
    for (size_t v = 0; v < m; ++v) sh[u * m + v] = stable_hom(T[u], T[v]);

  EndAlgebra E;
  E.at.assign(m * m, {});
  Algebra A;
  A.p = p;
  A.block_names = names;
  A.graded = false;
  A.idem.assign(m, 0);

  // chosen coordinate vectors per element, and per block the basis matrix
  std::vector<std::vector<uint32_t>> cvec;
  std::vector<FpMatrix> bmat(m * m, FpMatrix(p, 0, 0));
  for (size_t u = 0; u < m; ++u)
    for (size_t v = 0; v < m; ++v) {
      const StableHom& s = sh[u * m + v];
      std::vector<std::vector<uint32_t>> vecs;
      std::vector<FpMatrix> reps;
      if (u == v) {
        FpMatrix id = FpMatrix::identity(p, T[u].dim());
        auto c0 = s.coords(id);
        bool nz = false;
        for (uint32_t x : c0) nz = nz || x;
        if (!nz)
          throw std::runtime_error("stable_endomorphism_algebra: summand " + names[u] +
                                   " vanishes stably");
        vecs.push_back(c0);
        reps.push_back(id);
        FpMatrix rows(p, 1, s.dim);
        for (size_t i = 0; i < s.dim; ++i) rows.at(0, i) = c0[i];
        rows = row_space_canonical(rows);
        for (size_t k = 0; k < s.dim && vecs.size() < s.dim; ++k) {
          FpMatrix one(p, 1, s.dim);
          one.at(0, k) = 1 % p;
          FpMatrix next = rows.vstack(one);
          if (rank(next) > rows.rows()) {
            rows = row_space_canonical(next);
            std::vector<uint32_t> e(s.dim, 0);
            e[k] = 1 % p;
            vecs.push_back(e);
            reps.push_back(s.reps[k]);
          }
        }
        if (vecs.size() != s.dim)
          throw std::logic_error("stable_endomorphism_algebra: diagonal basis incomplete");
      } else {
        for (size_t k = 0; k < s.dim; ++k) {
          std::vector<uint32_t> e(s.dim, 0);
          e[k] = 1 % p;
          vecs.push_back(e);
          reps.push_back(s.reps[k]);
        }
      }
      FpMatrix bm(p, s.dim, s.dim);
      for (size_t k = 0; k < vecs.size(); ++k)
        for (size_t i = 0; i < s.dim; ++i) bm.at(i, k) = vecs[k][i];
      bmat[u * m + v] = bm;
      for (size_t k = 0; k < vecs.size(); ++k) {
        size_t idx = A.names.size();
        if (u == v && k == 0) {
          A.names.push_back("id:" + names[u]);
          A.idem[u] = idx;
        } else {
          A.names.push_back(names[u] + ">" + names[v] + ":" + std::to_string(k));
        }
        A.src.push_back(v);
        A.tgt.push_back(u);
        A.deg.push_back(-1);
        E.map.push_back(reps[k]);
        E.from.push_back(u);
        E.to.push_back(v);
        E.at[u * m + v].push_back(idx);
        cvec.push_back(vecs[k]);
      }
    }

  size_t d = A.names.size();
  A.word.assign(d, {});
  A.mult.assign(d, std::vector<std::vector<uint32_t>>(d, std::vector<uint32_t>(d, 0)));
  for (size_t i = 0; i < d; ++i)
    for (size_t j = 0; j < d; ++j) {
      if (E.to[i] != E.from[j]) continue;
      size_t bu = E.from[i], bv = E.to[j];
      const StableHom& s = sh[bu * m + bv];
      auto q = s.coords(E.map[j].mul(E.map[i]));
      if (s.dim == 0) continue;
      FpMatrix col(p, s.dim, 1);
      for (size_t i2 = 0; i2 < s.dim; ++i2) col.at(i2, 0) = q[i2];
      auto x = solve_matrix(bmat[bu * m + bv], col);
      if (!x) throw std::logic_error("stable_endomorphism_algebra: product escapes the block basis");
      for (size_t l = 0; l < s.dim; ++l) A.mult[i][j][E.at[bu * m + bv][l]] = x->at(l, 0);
    }

  validate_algebra(A);
  E.alg = std::make_shared<const Algebra>(std::move(A));
  return E;
}

/* ---- tilting data --------------------------------------------------------- */

/* A fixed decomposition T = T_1 + ... + T_n of a rigid generator: pairwise
 * nonisomorphic indecomposables, the nonprojective ones listed first, with
 * every indecomposable projective present.  B is the opposite endomorphism
 * algebra, C its quotient by the maps factoring through projectives (blocks
 * only for the r nonprojective summands). */
struct TiltingData {
  std::shared_ptr<const Algebra> L;
  std::vector<Module> T;
  std::vector<std::string> names;
  size_t r = 0;
  EndAlgebra B;
  EndAlgebra C;
  std::vector<size_t> proj_at_vertex;  // vertex v -> summand index isomorphic to P_v
};

/* `certify` runs the indecomposability certificates, which need the field to
 * be large; counting instances over tiny primes pass false and inherit the
 * guarantee from the primary instance of the same data. */
inline TiltingData make_tilting(std::shared_ptr<const Algebra> L, std::vector<Module> T,
                                std::vector<std::string> names, bool certify = true) {
  if (T.empty() || T.size() != names.size())
    throw std::runtime_error("make_tilting: summand/name mismatch");
  TiltingData t;
  t.L = L;

  std::vector<bool> proj(T.size());
  for (size_t i = 0; i < T.size(); ++i) {
    if (certify && !is_indecomposable_certified(T[i]))
      throw std::runtime_error("make_tilting: summand " + names[i] + " is decomposable or zero");
    proj[i] = is_projective(T[i]);
  }
  for (size_t i = 0; i + 1 < T.size(); ++i)
    if (proj[i] && !proj[i + 1])
      throw std::runtime_error("make_tilting: nonprojective summand " + names[i + 1] +
                               " listed after a projective one");
  for (size_t i = 0; i < T.size(); ++i)
    for (size_t j = i + 1; j < T.size(); ++j)
      if (indecomposables_isomorphic(T[i], T[j]))
        throw std::runtime_error("make_tilting: summands " + names[i] + " and " + names[j] +
                                 " are isomorphic");

  t.r = 0;
  while (t.r < T.size() && !proj[t.r]) ++t.r;
  if (t.r == 0) throw std::runtime_error("make_tilting: every summand is projective");

  t.proj_at_vertex.assign(L->nblocks(), T.size());
  for (size_t v = 0; v < L->nblocks(); ++v) {
    Module P = projective_module(L, v);
    for (size_t i = t.r; i < T.size(); ++i)
      if (indecomposables_isomorphic(T[i], P)) {
        t.proj_at_vertex[v] = i;
        break;
      }
    if (t.proj_at_vertex[v] == T.size())
      throw std::runtime_error("make_tilting: projective cover of " + L->block_names[v] +
                               " missing from the summands");
  }

  t.B = endomorphism_algebra(T, names);
  std::vector<Module> np(T.begin(), T.begin() + t.r);
  std::vector<std::string> npn(names.begin(), names.begin() + t.r);
  t.C = stable_endomorphism_algebra(np, npn);
  t.T = std::move(T);
  t.names = std::move(names);
  return t;
}

/* Rigidity of the family plus maximality against a catalog: a catalog module
 * outside the summands that extends the family without creating extensions
 * disproves maximality. */
struct TiltingVerdict {
  bool ok = false;
  std::string detail;
};

inline TiltingVerdict verify_cluster_tilting(const std::vector<Module>& T,
                                             const std::vector<std::string>& names,
                                             const std::vector<Module>& catalog,
                                             const std::vector<std::string>& catalog_names) {
  for (size_t i = 0; i < T.size(); ++i)
    for (size_t j = 0; j < T.size(); ++j)
      if (ext1(T[i], T[j]).dim != 0)
        return {false, "ext1(" + names[i] + ", " + names[j] + ") is nonzero"};
  for (size_t k = 0; k < catalog.size(); ++k) {
    const Module& X = catalog[k];
    if (X.dim() == 0) continue;
    bool summand = false;
    for (const auto& Ti : T) summand = summand || indecomposables_isomorphic(X, Ti);
    if (summand) continue;
    if (ext1(X, X).dim != 0) continue;
    bool clash = false;
    for (const auto& Ti : T)
      if (ext1(Ti, X).dim != 0 || ext1(X, Ti).dim != 0) {
        clash = true;
        break;
      }
    if (!clash)
      return {false, "the family stays rigid after adding " +
                         (k < catalog_names.size() ? catalog_names[k] : "a catalog module")};
  }
  return {true, ""};
}

/* ---- Hom functors --------------------------------------------------------- */

/* F(X) = Hom(T, X) as a module over B: component u is Hom(T_u, X) and a basis
 * element with representative f: T_a -> T_b acts by precomposition, sending
 * component b into component a. */
struct FunctorModule {
  Module M;
  std::vector<std::vector<FpMatrix>> basis;
  std::vector<size_t> offset;  // offset[u] of component u; offset.back() = dim
};

inline FunctorModule f_module(const TiltingData& t, const Module& X) {
  size_t m = t.T.size();
  uint32_t p = X.p();
  FunctorModule F;
  F.basis.resize(m);
  F.offset.assign(m + 1, 0);
  for (size_t u = 0; u < m; ++u) {
    F.basis[u] = hom_space(t.T[u], X);
    F.offset[u + 1] = F.offset[u] + F.basis[u].size();
  }
  size_t D = F.offset[m];
  std::vector<size_t> block(D);
  for (size_t u = 0; u < m; ++u)
    for (size_t l = F.offset[u]; l < F.offset[u + 1]; ++l) block[l] = u;

  const Algebra& B = *t.B.alg;
  std::vector<FpMatrix> act(B.dim(), FpMatrix(p, D, D));
  for (size_t k = 0; k < B.dim(); ++k) {
    size_t a = t.B.from[k], b = t.B.to[k];
    for (size_t l = 0; l < F.basis[b].size(); ++l) {
      auto c = matrix_coords(F.basis[a], F.basis[b][l].mul(t.B.map[k]), p);
      for (size_t i = 0; i < c.size(); ++i) act[k].at(F.offset[a] + i, F.offset[b] + l) = c[i];
    }
  }
  F.M = module_from_action(t.B.alg, std::move(block), std::move(act));
  return F;
}

/* Matrix of F(g) for g: X -> Y, in the coordinates of f_module(X), f_module(Y). */
inline FpMatrix f_map(const TiltingData& t, const FunctorModule& FX, const FunctorModule& FY,
                      const FpMatrix& g) {
  uint32_t p = g.p();
  FpMatrix out(p, FY.offset.back(), FX.offset.back());
  for (size_t u = 0; u < t.T.size(); ++u)
    for (size_t l = 0; l < FX.basis[u].size(); ++l) {
      auto c = matrix_coords(FY.basis[u], g.mul(FX.basis[u][l]), p);
      for (size_t i = 0; i < c.size(); ++i) out.at(FY.offset[u] + i, FX.offset[u] + l) = c[i];
    }
  return out;
}

/* G(X) = Hom(T, X) modulo maps factoring through projectives, as a module
 * over the stable algebra C.  Only the nonprojective summands contribute. */
struct StableFunctorModule {
  Module M;
  std::vector<StableHom> sh;
  std::vector<size_t> offset;
};

inline StableFunctorModule g_module(const TiltingData& t, const Module& X) {
  size_t rr = t.r;
  uint32_t p = X.p();
  StableFunctorModule H;
  H.sh.resize(rr);
  H.offset.assign(rr + 1, 0);
  for (size_t u = 0; u < rr; ++u) {
    H.sh[u] = stable_hom(t.T[u], X);
    H.offset[u + 1] = H.offset[u] + H.sh[u].dim;
  }
  size_t D = H.offset[rr];
  std::vector<size_t> block(D);
  for (size_t u = 0; u < rr; ++u)
    for (size_t l = H.offset[u]; l < H.offset[u + 1]; ++l) block[l] = u;

  const Algebra& C = *t.C.alg;
  std::vector<FpMatrix> act(C.dim(), FpMatrix(p, D, D));
  for (size_t k = 0; k < C.dim(); ++k) {
    size_t a = t.C.from[k], b = t.C.to[k];
    for (size_t l = 0; l < H.sh[b].dim; ++l) {
      auto c = H.sh[a].coords(H.sh[b].reps[l].mul(t.C.map[k]));
      for (size_t i = 0; i < c.size(); ++i) act[k].at(H.offset[a] + i, H.offset[b] + l) = c[i];
    }
  }
  H.M = module_from_action(t.C.alg, std::move(block), std::move(act));
  return H;
}

inline FpMatrix g_map(const TiltingData& t, const StableFunctorModule& HX,
                      const StableFunctorModule& HY, const FpMatrix& g) {
  uint32_t p = g.p();
  FpMatrix out(p, HY.offset.back(), HX.offset.back());
  for (size_t u = 0; u < t.r; ++u)
    for (size_t l = 0; l < HX.sh[u].dim; ++l) {
      auto c = HY.sh[u].coords(g.mul(HX.sh[u].reps[l]));
      for (size_t i = 0; i < c.size(); ++i) out.at(HY.offset[u] + i, HX.offset[u] + l) = c[i];
    }
  return out;
}

/* Ext^1(T, X) as a module over the stable algebra: component u is
 * ext1(T_u, X) in its canonical class coordinates, and a representative
 * f: T_a -> T_b acts by pullback through the induced map of syzygies. */
struct ExtFunctorModule {
  Module M;
  std::vector<Ext1> comp;
  std::vector<size_t> offset;
};

inline ExtFunctorModule ext_module(const TiltingData& t, const Module& X) {
  size_t rr = t.r;
  uint32_t p = X.p();
  ExtFunctorModule E;
  E.offset.assign(rr + 1, 0);
  for (size_t u = 0; u < rr; ++u) {
    E.comp.push_back(ext1(t.T[u], X));
    E.offset[u + 1] = E.offset[u] + E.comp[u].dim;
  }
  size_t D = E.offset[rr];
  std::vector<size_t> block(D);
  for (size_t u = 0; u < rr; ++u)
    for (size_t l = E.offset[u]; l < E.offset[u + 1]; ++l) block[l] = u;

  const Algebra& C = *t.C.alg;
  std::vector<FpMatrix> act(C.dim(), FpMatrix(p, D, D));
  for (size_t k = 0; k < C.dim(); ++k) {
    size_t a = t.C.from[k], b = t.C.to[k];
    if (E.comp[b].dim == 0) continue;
    const CoverResult& ca = E.comp[a].cover;
    const CoverResult& cb = E.comp[b].cover;
    // lift f through the covers, inside Hom(P_a, P_b)
    auto H = hom_space(ca.P, cb.P);
    size_t fl = t.T[b].dim() * ca.P.dim();
    FpMatrix cols(p, fl, H.size());
    for (size_t k2 = 0; k2 < H.size(); ++k2) {
      auto v = cb.surj.mul(H[k2]).flat();
      for (size_t i = 0; i < fl; ++i) cols.at(i, k2) = v[i];
    }
    auto sol = solve_linear(cols, t.C.map[k].mul(ca.surj).flat());
    if (!sol) throw std::logic_error("ext_module: cover lift missing");
    FpMatrix L(p, cb.P.dim(), ca.P.dim());
    for (size_t k2 = 0; k2 < H.size(); ++k2)
      if ((*sol)[k2]) L = L.add(H[k2].scale((*sol)[k2]));
    auto ft = solve_matrix(cb.syzygy.incl, L.mul(ca.syzygy.incl));
    if (!ft) throw std::logic_error("ext_module: syzygy map escapes the syzygy");
    for (size_t l = 0; l < E.comp[b].dim; ++l) {
      auto c = ext_class_coords(E.comp[a], E.comp[b].reps[l].mul(*ft));
      for (size_t i = 0; i < c.size(); ++i) act[k].at(E.offset[a] + i, E.offset[b] + l) = c[i];
    }
  }
  E.M = module_from_action(t.C.alg, std::move(block), std::move(act));
  return E;
}

/* ---- minimal approximations ----------------------------------------------- */

/* A minimal approximation by summands of T: for the right version the map is
 * a deflation T0 ->> X with kernel in add T, for the left version an inflation
 * X >-> T0 with cokernel in add T.  mult0/mult1 count summand copies. */
struct Approximation {
  Module T0;
  std::vector<size_t> mult0;
  FpMatrix map;
  Module other;
  std::vector<size_t> mult1;
  SES ses;
};

namespace detail {

inline std::vector<size_t> match_summands(const TiltingData& t, const Module& X,
                                          const char* who) {
  std::vector<size_t> mult(t.T.size(), 0);
  for (const Module& piece : decompose(X)) {
    bool found = false;
    for (size_t i = 0; i < t.T.size(); ++i)
      if (indecomposables_isomorphic(piece, t.T[i])) {
        mult[i] += 1;
        found = true;
        break;
      }
    if (!found)
      throw std::runtime_error(std::string(who) + ": a summand escapes the tilting family");
  }
  return mult;
}

}  // namespace detail

inline Approximation minimal_right_approx(const TiltingData& t, const Module& X) {
  uint32_t p = X.p();
  FunctorModule F = f_module(t, X);
  Subspace rad = module_radical_subspace(F.M);
  auto piv = subspace_pivots(rad);
  std::vector<bool> is_piv(F.M.dim(), false);
  for (size_t c : piv) is_piv[c] = true;

  Approximation a;
  a.mult0.assign(t.T.size(), 0);
  std::vector<Module> parts;
  std::vector<FpMatrix> gens;
  for (size_t c = 0; c < F.M.dim(); ++c) {
    if (is_piv[c]) continue;
    size_t u = F.M.block[c];
    a.mult0[u] += 1;
    parts.push_back(t.T[u]);
    gens.push_back(F.basis[u][c - F.offset[u]]);
  }
  SumDecomp s = direct_sum(t.L, parts);
  FpMatrix f(p, X.dim(), s.M.dim());
  for (size_t i = 0; i < gens.size(); ++i) {
    size_t off = s.offset[i];
    for (size_t r0 = 0; r0 < gens[i].rows(); ++r0)
      for (size_t c0 = 0; c0 < gens[i].cols(); ++c0) f.at(r0, off + c0) = gens[i].at(r0, c0);
  }
  if (rank(f) != X.dim())
    throw std::runtime_error("minimal_right_approx: approximation is not a deflation");
  SubmoduleResult K = sub_module(s.M, kernel_basis(f).transpose());
  a.T0 = s.M;
  a.map = f;
  a.other = K.sub;
  a.mult1 = detail::match_summands(t, K.sub, "minimal_right_approx");
  a.ses = SES{K.sub, s.M, X, K.incl, f};
  validate_ses(a.ses);
  return a;
}

inline Approximation minimal_left_approx(const TiltingData& t, const Module& X) {
  uint32_t p = X.p();
  size_t m = t.T.size();
  std::vector<std::vector<FpMatrix>> basis(m);
  std::vector<size_t> offset(m + 1, 0);
  for (size_t u = 0; u < m; ++u) {
    basis[u] = hom_space(X, t.T[u]);
    offset[u + 1] = offset[u] + basis[u].size();
  }
  size_t D = offset[m];

  // radical times Hom(X, T): radical rows of B are homogeneous per hom block,
  // and a row with representative R: T_u -> T_v sends Hom(X, T_u) into
  // Hom(X, T_v) by postcomposition
  Subspace radB = radical_basis(*t.B.alg);
  std::vector<std::vector<uint32_t>> rows;
  for (size_t rr = 0; rr < radB.rows(); ++rr) {
    size_t u = m, v = m;
    FpMatrix R(p, 0, 0);
    for (size_t k = 0; k < t.B.alg->dim(); ++k) {
      if (!radB.at(rr, k)) continue;
      if (u == m) {
        u = t.B.from[k];
        v = t.B.to[k];
        R = FpMatrix(p, t.T[v].dim(), t.T[u].dim());
      } else if (t.B.from[k] != u || t.B.to[k] != v) {
        throw std::logic_error("minimal_left_approx: radical row crosses hom blocks");
      }
      R = R.add(t.B.map[k].scale(radB.at(rr, k)));
    }
    if (u == m) continue;
    for (const auto& psi : basis[u]) {
      auto c = matrix_coords(basis[v], R.mul(psi), p);
      std::vector<uint32_t> row(D, 0);
      for (size_t i = 0; i < c.size(); ++i) row[offset[v] + i] = c[i];
      rows.push_back(std::move(row));
    }
  }
  FpMatrix radG(p, rows.size(), D);
  for (size_t i = 0; i < rows.size(); ++i)
    for (size_t j = 0; j < D; ++j) radG.at(i, j) = rows[i][j];
  radG = row_space_canonical(radG);
  auto piv = subspace_pivots(radG);
  std::vector<bool> is_piv(D, false);
  for (size_t c : piv) is_piv[c] = true;

  Approximation a;
  a.mult0.assign(m, 0);
  std::vector<Module> parts;
  std::vector<FpMatrix> gens;
  std::vector<size_t> gen_block;
  for (size_t c = 0; c < D; ++c) {
    if (is_piv[c]) continue;
    size_t u = 0;
    while (offset[u + 1] <= c) ++u;
    a.mult0[u] += 1;
    parts.push_back(t.T[u]);
    gens.push_back(basis[u][c - offset[u]]);
    gen_block.push_back(u);
  }
  SumDecomp s = direct_sum(t.L, parts);
  FpMatrix g(p, s.M.dim(), X.dim());
  for (size_t i = 0; i < gens.size(); ++i) {
    size_t off = s.offset[i];
    for (size_t r0 = 0; r0 < gens[i].rows(); ++r0)
      for (size_t c0 = 0; c0 < gens[i].cols(); ++c0) g.at(off + r0, c0) = gens[i].at(r0, c0);
  }
  if (rank(g) != X.dim())
    throw std::runtime_error("minimal_left_approx: approximation is not an inflation");
  QuotientResult Q = quotient_module(s.M, g.transpose());
  a.T0 = s.M;
  a.map = g;
  a.other = Q.quot;
  a.mult1 = detail::match_summands(t, Q.quot, "minimal_left_approx");
  a.ses = SES{X, s.M, Q.quot, g, Q.proj};
  validate_ses(a.ses);
  return a;
}

/* ---- index, theta, phi ---------------------------------------------------- */

inline K0Vector index_vector(const TiltingData& t, const Module& X) {
  Approximation a = minimal_right_approx(t, X);
  K0Vector k(t.T.size());
  for (size_t i = 0; i < t.T.size(); ++i)
    k[i] = (long long)a.mult0[i] - (long long)a.mult1[i];
  return k;
}

inline K0Vector op_index_vector(const TiltingData& t, const Module& X) {
  Approximation a = minimal_left_approx(t, X);
  K0Vector k(t.T.size());
  for (size_t i = 0; i < t.T.size(); ++i)
    k[i] = (long long)a.mult0[i] - (long long)a.mult1[i];
  return k;
}

inline K0Vector stable_index_vector(const TiltingData& t, const Module& X) {
  return index_vector(t, X).prefix(t.r);
}

/* Index of the syzygy, corrected by the cover, plus the index of the module
 * itself.  A second computation through the left approximation of the syzygy
 * must agree; the comparison runs every time. */
inline K0Vector theta_vector(const TiltingData& t, const Module& X) {
  K0Vector zero(t.T.size());
  if (X.dim() == 0) return zero;
  CoverResult c = projective_cover(X);
  const Module& Om = c.syzygy.sub;
  K0Vector pcls(t.T.size());
  for (size_t v = 0; v < t.L->nblocks(); ++v)
    pcls[t.proj_at_vertex[v]] += (long long)c.mult[v];
  K0Vector om = index_vector(t, Om);
  K0Vector first = om - pcls + index_vector(t, X);
  K0Vector second = om - op_index_vector(t, Om);
  if (!(first == second)) throw std::logic_error("theta_vector: the two computations disagree");
  return first;
}

/* Linear map sending the class of G(X) to theta(X), solved over the whole
 * catalog at once.  Failure of the solve means theta does not descend to
 * classes; a non-spanning catalog leaves the map underdetermined.  Both are
 * reported as errors. */
struct PhiResult {
  std::vector<std::vector<long long>> mat;  // n rows, r columns
  size_t n = 0, r = 0;

  K0Vector apply(const std::vector<size_t>& cls) const {
    if (cls.size() != r) throw std::logic_error("phi: class arity mismatch");
    K0Vector out(n);
    for (size_t i = 0; i < n; ++i)
      for (size_t j = 0; j < r; ++j) out[i] += mat[i][j] * (long long)cls[j];
    return out;
  }
  K0Vector apply(const K0Vector& cls) const {
    if (cls.size() != r) throw std::logic_error("phi: class arity mismatch");
    K0Vector out(n);
    for (size_t i = 0; i < n; ++i)
      for (size_t j = 0; j < r; ++j) out[i] += mat[i][j] * cls[j];
    return out;
  }
};

inline PhiResult phi_matrix(const TiltingData& t, const std::vector<Module>& catalog) {
  size_t n = t.T.size(), r = t.r;
  RatMatrix H, TH;
  for (const Module& X : catalog) {
    auto cls = g_module(t, X).M.dims_by_block();
    auto th = theta_vector(t, X);
    std::vector<Rat> hrow, trow;
    for (size_t j = 0; j < r; ++j) hrow.push_back(Rat((long long)cls[j]));
    for (size_t i = 0; i < n; ++i) trow.push_back(Rat(th[i]));
    H.push_back(std::move(hrow));
    TH.push_back(std::move(trow));
  }
  auto sol = rat_solve(H, TH);
  if (!sol) throw std::runtime_error("phi_matrix: theta does not descend to classes over the catalog");
  if (!sol->unique)
    throw std::runtime_error("phi_matrix: catalog classes do not span; the map is underdetermined");
  PhiResult out;
  out.n = n;
  out.r = r;
  out.mat.assign(n, std::vector<long long>(r, 0));
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < r; ++j) {
      const Rat& q = sol->x[j][i];
      if (q.d != 1) throw std::runtime_error("phi_matrix: the solved map is not integral");
      out.mat[i][j] = q.n;
    }
  return out;
}

/* ---- additivity of the index over conflations ----------------------------- */

struct IndexAdditivity {
  K0Vector lhs;  // ind(sub) - ind(mid) + ind(quot)
  K0Vector rhs;  // phi applied to the cokernel class of G(surj)
  bool ok = false;
  bool f_epi = false;  // Hom(T, mid) -> Hom(T, quot) already surjective
};

inline IndexAdditivity check_index_additivity(const TiltingData& t, const PhiResult& phi,
                                              const SES& s) {
  validate_ses(s);
  IndexAdditivity out;
  out.lhs = index_vector(t, s.sub) - index_vector(t, s.mid) + index_vector(t, s.quot);
  StableFunctorModule HB = g_module(t, s.mid), HC = g_module(t, s.quot);
  FpMatrix Hg = g_map(t, HB, HC, s.surj);
  QuotientResult Q = quotient_module(HC.M, Hg.transpose());
  out.rhs = phi.apply(Q.quot.dims_by_block());
  out.ok = out.lhs == out.rhs;
  FunctorModule FB = f_module(t, s.mid), FC = f_module(t, s.quot);
  out.f_epi = rank(f_map(t, FB, FC, s.surj)) == FC.offset.back();
  return out;
}

}  // namespace ccx
