#pragma once

#include <random>
#include <stdexcept>
#include <vector>

#include "ccx/module.hpp"

namespace ccx {

/* ---- short exact sequences ---------------------------------------------- */

struct SES {
  Module sub, mid, quot;
  FpMatrix inj;   // mid dim x sub dim
  FpMatrix surj;  // quot dim x mid dim
};

inline void validate_ses(const SES& s) {
  if (!is_module_map(s.sub, s.mid, s.inj) || !is_module_map(s.mid, s.quot, s.surj))
    throw std::runtime_error("ses: maps fail to intertwine");
  if (rank(s.inj) != s.sub.dim()) throw std::runtime_error("ses: first map is not injective");
  if (rank(s.surj) != s.quot.dim()) throw std::runtime_error("ses: second map is not surjective");
  if (!s.surj.mul(s.inj).is_zero()) throw std::runtime_error("ses: composite is nonzero");
  if (s.mid.dim() != s.sub.dim() + s.quot.dim())
    throw std::runtime_error("ses: middle dimension off, image cannot equal kernel");
}

inline SES split_ses(std::shared_ptr<const Algebra> A, const Module& sub, const Module& quot) {
  SumDecomp d = direct_sum(A, {sub, quot});
  SES s{sub, d.M, quot, d.incl(0), d.proj(1)};
  validate_ses(s);
  return s;
}

/* The cover conflation 0 -> syzygy -> P -> M -> 0. */
inline SES cover_ses(const Module& M) {
  CoverResult c = projective_cover(M);
  SES s{c.syzygy.sub, c.P, M, c.syzygy.incl, c.surj};
  validate_ses(s);
  return s;
}

/* Base change of a conflation along h: Z' -> quot.  The middle is the fiber
 * product, the sub term is carried over unchanged. */
inline SES ses_pullback(const SES& s, const Module& Zp, const FpMatrix& h) {
  if (!is_module_map(Zp, s.quot, h)) throw std::runtime_error("ses_pullback: map fails to intertwine");
  auto A = s.mid.A;
  SumDecomp D = direct_sum(A, {s.mid, Zp});
  FpMatrix g_minus_h = s.surj.mul(D.proj(0)).sub(h.mul(D.proj(1)));
  SubmoduleResult fib = sub_module(D.M, kernel_basis(g_minus_h).transpose());
  auto f = solve_matrix(fib.incl, D.incl(0).mul(s.inj));
  if (!f) throw std::logic_error("ses_pullback: sub term misses the fiber product");
  FpMatrix g = D.proj(1).mul(fib.incl);
  SES out{s.sub, fib.sub, Zp, std::move(*f), std::move(g)};
  validate_ses(out);
  return out;
}

/* Cobase change of a conflation along h: sub -> A'. */
inline SES ses_pushout(const SES& s, const Module& Ap, const FpMatrix& h) {
  if (!is_module_map(s.sub, Ap, h)) throw std::runtime_error("ses_pushout: map fails to intertwine");
  auto A = s.mid.A;
  uint32_t p = s.mid.p();
  SumDecomp D = direct_sum(A, {Ap, s.mid});
  FpMatrix graph(p, s.sub.dim(), D.M.dim());
  for (size_t k = 0; k < s.sub.dim(); ++k) {
    for (size_t i = 0; i < Ap.dim(); ++i) graph.at(k, i) = h.at(i, k);
    for (size_t i = 0; i < s.mid.dim(); ++i)
      graph.at(k, Ap.dim() + i) = fp_neg(s.inj.at(i, k), p);
  }
  QuotientResult Q = quotient_module(D.M, graph);
  FpMatrix f = Q.proj.mul(D.incl(0));
  // the projection to quot kills the graph rows, so it descends
  FpMatrix toC(p, s.quot.dim(), D.M.dim());
  for (size_t i = 0; i < s.quot.dim(); ++i)
    for (size_t j = 0; j < s.mid.dim(); ++j) toC.at(i, Ap.dim() + j) = s.surj.at(i, j);
  FpMatrix g = toC.mul(Q.section);
  SES out{Ap, Q.quot, s.quot, std::move(f), std::move(g)};
  validate_ses(out);
  return out;
}

/* ---- Ext^1 --------------------------------------------------------------- */

/* Coordinates of a matrix inside the span of a basis of matrices. */
inline std::vector<uint32_t> matrix_coords(const std::vector<FpMatrix>& basis, const FpMatrix& f,
                                           uint32_t p) {
  size_t fl = f.rows() * f.cols();
  FpMatrix cols(p, fl, basis.size());
  for (size_t k = 0; k < basis.size(); ++k) {
    auto v = basis[k].flat();
    for (size_t i = 0; i < fl; ++i) cols.at(i, k) = v[i];
  }
  auto sol = solve_linear(cols, f.flat());
  if (!sol) throw std::logic_error("matrix_coords: matrix escapes the span");
  return *sol;
}

/* Ext^1(M, N): classes of short exact sequences 0 -> N -> E -> M -> 0,
 * computed as coker(Hom(P0, N) -> Hom(OmegaM, N)).  Representatives are the
 * Hom(OmegaM, N) basis elements sitting at the cokernel's free coordinates. */
struct Ext1 {
  Module M, N;
  CoverResult cover;               // projective cover data of M
  std::vector<FpMatrix> hom1;      // basis of Hom(OmegaM, N)
  Subspace image;                  // factoring image, canonical rows in hom1 coords
  std::vector<size_t> image_pivots;
  std::vector<size_t> rep_coords;  // free coordinates, one per class generator
  size_t dim = 0;
  std::vector<FpMatrix> reps;      // cocycle matrices N.dim x OmegaM.dim
};

inline Ext1 ext1(const Module& M, const Module& N) {
  if (M.A.get() != N.A.get()) throw std::runtime_error("ext1: algebra mismatch");
  if (M.dim() == 0) {
    CoverResult trivial{zero_module(M.A), FpMatrix(M.p(), 0, 0),
                        SubmoduleResult{zero_module(M.A), FpMatrix(M.p(), 0, 0)},
                        std::vector<size_t>(M.A->nblocks(), 0)};
    return Ext1{M, N, std::move(trivial), {}, FpMatrix(M.p(), 0, 0), {}, {}, 0, {}};
  }
  Ext1 e{M, N, projective_cover(M), {}, FpMatrix(M.p(), 0, 0), {}, {}, 0, {}};
  const Module& Om = e.cover.syzygy.sub;
  e.hom1 = hom_space(Om, N);
  auto hom0 = hom_space(e.cover.P, N);
  // image of restriction along OmegaM -> P0 in hom1 coordinates
  FpMatrix img(M.p(), hom0.size(), e.hom1.size());
  for (size_t k = 0; k < hom0.size(); ++k) {
    auto c = e.hom1.empty() ? std::vector<uint32_t>{}
                            : matrix_coords(e.hom1, hom0[k].mul(e.cover.syzygy.incl), M.p());
    for (size_t j = 0; j < e.hom1.size(); ++j) img.at(k, j) = c[j];
  }
  e.image = row_space_canonical(img);
  e.image_pivots = subspace_pivots(e.image);
  std::vector<bool> is_piv(e.hom1.size(), false);
  for (size_t c : e.image_pivots) is_piv[c] = true;
  for (size_t j = 0; j < e.hom1.size(); ++j)
    if (!is_piv[j]) {
      e.rep_coords.push_back(j);
      e.reps.push_back(e.hom1[j]);
    }
  e.dim = e.rep_coords.size();
  return e;
}

/* Class of a cocycle eta in the canonical cokernel coordinates. */
inline std::vector<uint32_t> ext_class_coords(const Ext1& e, const FpMatrix& eta) {
  if (e.hom1.empty()) return std::vector<uint32_t>(e.dim, 0);
  auto c = matrix_coords(e.hom1, eta, e.M.p());
  c = reduce_mod_subspace(e.image, std::move(c), e.image_pivots);
  std::vector<uint32_t> out;
  for (size_t j : e.rep_coords) out.push_back(c[j]);
  return out;
}

inline bool ext_class_is_zero(const Ext1& e, const FpMatrix& eta) {
  for (uint32_t c : ext_class_coords(e, eta))
    if (c) return false;
  return true;
}

/* Pushout of 0 -> OmegaM -> P0 -> M -> 0 along eta: OmegaM -> N.  Returns the
 * short exact sequence 0 -> N -> E -> M -> 0 with class eta.  Split classes
 * are rejected. */
inline SES extension_middle(const Ext1& e, const FpMatrix& eta) {
  if (!is_module_map(e.cover.syzygy.sub, e.N, eta))
    throw std::runtime_error("extension_middle: cocycle fails to intertwine");
  if (ext_class_is_zero(e, eta)) throw std::runtime_error("extension_middle: split class rejected");
  SES cover{e.cover.syzygy.sub, e.cover.P, e.M, e.cover.syzygy.incl, e.cover.surj};
  return ses_pushout(cover, e.N, eta);
}

/* Recover the class of a short exact sequence 0 -> N -> B -> M -> 0 in the
 * coordinates of ext1(M, N): lift the cover of M through the surjection and
 * restrict to the syzygy.  The lift is solved inside Hom(P0, B); projectivity
 * guarantees one exists. */
inline std::vector<uint32_t> ses_ext_class(const Ext1& e, const SES& s) {
  uint32_t p = e.M.p();
  auto H = hom_space(e.cover.P, s.mid);
  size_t fl = e.M.dim() * e.cover.P.dim();
  FpMatrix cols(p, fl, H.size());
  for (size_t k = 0; k < H.size(); ++k) {
    auto v = s.surj.mul(H[k]).flat();
    for (size_t i = 0; i < fl; ++i) cols.at(i, k) = v[i];
  }
  auto c = solve_linear(cols, e.cover.surj.flat());
  if (!c) throw std::logic_error("ses_ext_class: cover fails to lift through the surjection");
  FpMatrix h(p, s.mid.dim(), e.cover.P.dim());
  for (size_t k = 0; k < H.size(); ++k)
    if ((*c)[k]) h = h.add(H[k].scale((*c)[k]));
  FpMatrix hi = h.mul(e.cover.syzygy.incl);
  auto eta = solve_matrix(s.inj, hi);  // unique: the first map is injective
  if (!eta) throw std::logic_error("ses_ext_class: restriction misses the submodule");
  return ext_class_coords(e, *eta);
}

/* ---- resolutions, higher Ext, Euler forms -------------------------------- */

struct Resolution {
  std::vector<Module> P;        // P[0..len]
  std::vector<FpMatrix> diff;   // diff[i]: P[i-1].dim x P[i].dim for i >= 1
  std::vector<std::vector<size_t>> mult;  // projective multiplicities per step
};

inline Resolution resolution(const Module& M, size_t len) {
  Resolution r;
  Module X = M;
  FpMatrix inklast(M.p(), 0, 0);
  for (size_t i = 0; i <= len; ++i) {
    if (X.dim() == 0) {
      Module Z = zero_module(M.A);
      if (i > 0) r.diff.push_back(FpMatrix(M.p(), r.P.back().dim(), 0));
      r.P.push_back(Z);
      r.mult.push_back(std::vector<size_t>(M.A->nblocks(), 0));
      X = Z;
      continue;
    }
    CoverResult c = projective_cover(X);
    if (i > 0) r.diff.push_back(inklast.mul(c.surj));
    r.P.push_back(c.P);
    r.mult.push_back(c.mult);
    inklast = c.syzygy.incl;
    X = c.syzygy.sub;
  }
  return r;
}

/* dim Ext^i(M, N) for i = 0..k via the Hom complex of a minimal resolution. */
inline std::vector<size_t> resolve_and_ext_dims(const Module& M, const Module& N, size_t k = 3) {
  if (M.dim() == 0) return std::vector<size_t>(k + 1, 0);
  Resolution r = resolution(M, k + 1);
  std::vector<std::vector<FpMatrix>> homs;
  for (size_t i = 0; i <= k + 1; ++i) homs.push_back(hom_space(r.P[i], N));
  // induced maps between hom coordinate spaces
  std::vector<FpMatrix> D;  // D[i]: homs[i-1] -> homs[i]
  for (size_t i = 1; i <= k + 1; ++i) {
    FpMatrix d(M.p(), homs[i].size(), homs[i - 1].size());
    for (size_t j = 0; j < homs[i - 1].size(); ++j) {
      FpMatrix comp = homs[i - 1][j].mul(r.diff[i - 1]);
      if (!homs[i].empty()) {
        auto c = matrix_coords(homs[i], comp, M.p());
        for (size_t a = 0; a < homs[i].size(); ++a) d.at(a, j) = c[a];
      } else if (!comp.is_zero()) {
        throw std::logic_error("resolve_and_ext_dims: nonzero composite escapes an empty hom space");
      }
    }
    D.push_back(std::move(d));
  }
  std::vector<size_t> dims(k + 1);
  for (size_t i = 0; i <= k; ++i) {
    size_t hi = homs[i].size();
    size_t rank_in = (i == 0) ? 0 : rank(D[i - 1]);
    size_t rank_out = rank(D[i]);
    dims[i] = hi - rank_out - rank_in;
  }
  // the complex kernel at step 0 is Hom(M, N) itself
  if (dims[0] != hom_space(M, N).size())
    throw std::logic_error("resolve_and_ext_dims: hom dimension cross-check failed");
  return dims;
}

inline long long euler_form_1(const Module& M, const Module& N) {
  return static_cast<long long>(hom_space(M, N).size()) - static_cast<long long>(ext1(M, N).dim);
}

inline long long euler_form_a(const Module& M, const Module& N) {
  return euler_form_1(M, N) - euler_form_1(N, M);
}

/* Alternating sum of Ext dimensions truncated at homological degree three. */
inline long long euler_form_3(const Module& M, const Module& N) {
  auto d = resolve_and_ext_dims(M, N, 3);
  return static_cast<long long>(d[0]) - static_cast<long long>(d[1]) + static_cast<long long>(d[2]) -
         static_cast<long long>(d[3]);
}

/* ---- decomposition ------------------------------------------------------- */

/* Exact indecomposability certificate.  The kernel of the trace form on
 * End(M) contains the radical; once certified nilpotent it equals it.  The
 * semisimple quotient is a division ring exactly when it is commutative with
 * a one-dimensional Frobenius-fixed subspace. */
inline bool is_indecomposable_certified(const Module& M) {
  if (M.dim() == 0) return false;
  uint32_t p = M.p();
  auto E = hom_space(M, M);
  size_t n = E.size();
  if (n == 1) return true;
  FpMatrix gram(p, n, n);
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) {
      FpMatrix prod = E[i].mul(E[j]);
      uint32_t tr = 0;
      for (size_t d = 0; d < M.dim(); ++d) tr = fp_add(tr, prod.at(d, d), p);
      gram.at(i, j) = tr;
    }
  Subspace J = row_space_canonical(kernel_basis(gram).transpose());
  auto jpiv = subspace_pivots(J);
  // nilpotency certificate for the trace-form kernel
  {
    std::vector<FpMatrix> layer;
    for (size_t r = 0; r < J.rows(); ++r) {
      FpMatrix m(p, M.dim(), M.dim());
      for (size_t j = 0; j < n; ++j)
        if (J.at(r, j)) m = m.add(E[j].scale(J.at(r, j)));
      layer.push_back(std::move(m));
    }
    std::vector<FpMatrix> gen = layer;
    for (size_t step = 0; step <= n && !layer.empty(); ++step) {
      std::vector<FpMatrix> next;
      FpMatrix rows(p, layer.size() * gen.size(), M.dim() * M.dim());
      size_t rr = 0;
      for (const auto& x : layer)
        for (const auto& g : gen) {
          auto v = x.mul(g).flat();
          for (size_t c = 0; c < v.size(); ++c) rows.at(rr, c) = v[c];
          ++rr;
        }
      Subspace sp = row_space_canonical(rows);
      if (step == n && sp.rows() != 0)
        throw std::runtime_error("decompose: endomorphism radical uncertified");
      if (sp.rows() == 0) break;
      layer.clear();
      for (size_t r2 = 0; r2 < sp.rows(); ++r2) {
        FpMatrix m(p, M.dim(), M.dim());
        for (size_t i = 0; i < M.dim(); ++i)
          for (size_t j = 0; j < M.dim(); ++j) m.at(i, j) = sp.at(r2, i * M.dim() + j);
        layer.push_back(std::move(m));
      }
    }
  }
  // semisimple quotient coordinates: the free positions of J
  std::vector<bool> jp(n, false);
  for (size_t c : jpiv) jp[c] = true;
  std::vector<size_t> sc;
  for (size_t j = 0; j < n; ++j)
    if (!jp[j]) sc.push_back(j);
  size_t m = sc.size();
  // commutative?
  for (size_t a = 0; a < m; ++a)
    for (size_t b = a + 1; b < m; ++b) {
      FpMatrix comm = E[sc[a]].mul(E[sc[b]]).sub(E[sc[b]].mul(E[sc[a]]));
      auto c = matrix_coords(E, comm, p);
      c = reduce_mod_subspace(J, std::move(c), jpiv);
      for (uint32_t x : c)
        if (x) return false;  // matrix block of size >= 2 upstairs
    }
  // Frobenius fixed points on the (commutative) semisimple quotient
  FpMatrix frob(p, m, m);
  for (size_t a = 0; a < m; ++a) {
    FpMatrix pw = FpMatrix::identity(p, M.dim());
    FpMatrix base = E[sc[a]];
    uint32_t exp = p;
    while (exp) {
      if (exp & 1) pw = pw.mul(base);
      base = base.mul(base);
      exp >>= 1;
    }
    auto c = matrix_coords(E, pw, p);
    c = reduce_mod_subspace(J, std::move(c), jpiv);
    for (size_t b = 0; b < m; ++b) frob.at(b, a) = c[sc[b]];
  }
  FpMatrix fminus = frob.sub(FpMatrix::identity(p, m));
  size_t t = m - rank(fminus);
  return t == 1;
}

struct IdempotentSplit {
  SubmoduleResult image, kernel;
  FpMatrix proj_image, proj_kernel;  // coordinates of e m resp. (1-e) m
};

inline IdempotentSplit split_by_idempotent(const Module& M, const FpMatrix& e) {
  uint32_t p = M.p();
  if (!(e.mul(e) == e)) throw std::logic_error("split_by_idempotent: not idempotent");
  SubmoduleResult im = sub_module(M, e.transpose());
  SubmoduleResult ker = sub_module(M, kernel_basis(e).transpose());
  if (im.sub.dim() + ker.sub.dim() != M.dim())
    throw std::logic_error("split_by_idempotent: dimensions fail to add");
  auto pi = solve_matrix(im.incl, e);
  FpMatrix one_minus = FpMatrix::identity(p, M.dim()).sub(e);
  auto pk = solve_matrix(ker.incl, one_minus);
  if (!pi || !pk) throw std::logic_error("split_by_idempotent: projection solve failed");
  return IdempotentSplit{std::move(im), std::move(ker), std::move(*pi), std::move(*pk)};
}

namespace detail {

inline bool fitting_split(const Module& M, const FpMatrix& phi, std::vector<Module>& out,
                          uint64_t seed);

inline void decompose_rec(const Module& M, std::vector<Module>& out, uint64_t seed) {
  if (M.dim() == 0) return;
  if (is_indecomposable_certified(M)) {
    out.push_back(M);
    return;
  }
  auto E = hom_space(M, M);
  // deterministic sweep first, then seeded random draws
  for (const auto& f : E)
    if (fitting_split(M, f, out, seed)) return;
  std::mt19937_64 rng(seed);
  for (int draw = 0; draw < 32; ++draw) {
    FpMatrix phi(M.p(), M.dim(), M.dim());
    for (const auto& f : E) phi = phi.add(f.scale(static_cast<uint32_t>(rng() % M.p())));
    if (fitting_split(M, phi, out, seed + 1)) return;
  }
  throw std::runtime_error("decompose: splitting failed within retry budget (field too small)");
}

/* Fitting decomposition along an eigenvalue of phi; true when M split. */
inline bool fitting_split(const Module& M, const FpMatrix& phi, std::vector<Module>& out,
                          uint64_t seed) {
  uint32_t p = M.p();
  for (uint32_t lam = 0; lam < p; ++lam) {
    FpMatrix psi = phi.sub(FpMatrix::identity(p, M.dim()).scale(lam));
    if (rank(psi) == M.dim()) continue;
    FpMatrix pw = FpMatrix::identity(p, M.dim());
    for (size_t i = 0; i < M.dim(); ++i) pw = pw.mul(psi);
    SubmoduleResult K = sub_module(M, kernel_basis(pw).transpose());
    SubmoduleResult I = sub_module(M, pw.transpose());
    if (K.sub.dim() == 0 || I.sub.dim() == 0) continue;
    if (K.sub.dim() + I.sub.dim() != M.dim())
      throw std::logic_error("decompose: fitting parts fail to add up");
    decompose_rec(K.sub, out, seed);
    decompose_rec(I.sub, out, seed);
    return true;
  }
  return false;
}

}  // namespace detail

/* Indecomposable summands, sorted by dimension then block dimensions. */
inline std::vector<Module> decompose(const Module& M, uint64_t seed = 0) {
  std::vector<Module> out;
  detail::decompose_rec(M, out, seed);
  std::stable_sort(out.begin(), out.end(), [](const Module& x, const Module& y) {
    if (x.dim() != y.dim()) return x.dim() < y.dim();
    return x.dims_by_block() < y.dims_by_block();
  });
  return out;
}

/* Isomorphism test for indecomposables: some pair of hom basis elements
 * composes to an automorphism exactly when the modules are isomorphic. */
inline bool indecomposables_isomorphic(const Module& X, const Module& Y) {
  if (X.dim() != Y.dim() || X.dims_by_block() != Y.dims_by_block()) return false;
  if (X.dim() == 0) return true;
  auto F = hom_space(X, Y);
  auto G = hom_space(Y, X);
  for (const auto& g : G)
    for (const auto& f : F)
      if (is_invertible(g.mul(f))) return true;
  return false;
}

inline bool is_isomorphic(const Module& M, const Module& N, uint64_t seed = 0) {
  if (M.A.get() != N.A.get()) throw std::runtime_error("is_isomorphic: algebra mismatch");
  if (M.dim() != N.dim() || M.dims_by_block() != N.dims_by_block()) return false;
  if (M.dim() == 0) return true;
  auto dm = decompose(M, seed);
  auto dn = decompose(N, seed);
  if (dm.size() != dn.size()) return false;
  std::vector<bool> used(dn.size(), false);
  for (const auto& x : dm) {
    bool matched = false;
    for (size_t j = 0; j < dn.size(); ++j) {
      if (used[j]) continue;
      if (indecomposables_isomorphic(x, dn[j])) {
        used[j] = true;
        matched = true;
        break;
      }
    }
    if (!matched) return false;
  }
  return true;
}

/* ---- projective summand stripping ---------------------------------------- */

/* Valid over any prime: only invertibility scans and idempotent splits are
 * used, never a radical computation. */
struct StripResult {
  Module core;
  FpMatrix incl;  // original dim x core dim
  FpMatrix proj;  // core dim x original dim, proj * incl = id
  std::vector<size_t> stripped;  // projective multiplicities removed, per vertex
};

inline StripResult strip_projective_summands(const Module& M0) {
  Module M = M0;
  uint32_t p = M.p();
  FpMatrix incl = FpMatrix::identity(p, M.dim());
  FpMatrix proj = FpMatrix::identity(p, M.dim());
  std::vector<size_t> stripped(M.A->nblocks(), 0);
  bool progress = true;
  while (progress && M.dim() > 0) {
    progress = false;
    for (size_t v = 0; v < M.A->nblocks() && !progress; ++v) {
      Module Pv = projective_module(M.A, v);
      auto F = hom_space(Pv, M);
      auto G = hom_space(M, Pv);
      for (const auto& g : G) {
        for (const auto& f : F) {
          FpMatrix c = g.mul(f);
          if (!is_invertible(c)) continue;
          FpMatrix e = f.mul(*inverse(c)).mul(g);
          IdempotentSplit sp = split_by_idempotent(M, e);
          stripped[v] += 1;
          incl = incl.mul(sp.kernel.incl);
          proj = sp.proj_kernel.mul(proj);
          M = sp.kernel.sub;
          progress = true;
          break;
        }
        if (progress) break;
      }
    }
  }
  return StripResult{std::move(M), std::move(incl), std::move(proj), std::move(stripped)};
}

}  // namespace ccx
