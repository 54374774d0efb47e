#pragma once

#include <algorithm>
#include <memory>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include "ccx/algebra.hpp"
#include "ccx/matrix.hpp"

namespace ccx {

/* Finite-dimensional left module, given by one action matrix per algebra
 * basis element.  Every coordinate lives in a single idempotent block. */
struct Module {
  std::shared_ptr<const Algebra> A;
  std::vector<size_t> block;    // block[i] = vertex of coordinate i
  std::vector<FpMatrix> act;    // act[b] for each algebra basis element b

  size_t dim() const { return block.size(); }
  uint32_t p() const { return A->p; }

  std::vector<size_t> dims_by_block() const {
    std::vector<size_t> d(A->nblocks(), 0);
    for (size_t b : block) d[b] += 1;
    return d;
  }

  /* Action of a dense algebra element. */
  FpMatrix act_of(const std::vector<uint32_t>& x) const {
    FpMatrix m(p(), dim(), dim());
    for (size_t b = 0; b < A->dim(); ++b)
      if (x[b]) m = m.add(act[b].scale(x[b]));
    return m;
  }
};

inline void validate_module(const Module& M) {
  const Algebra& A = *M.A;
  size_t d = M.dim();
  if (M.act.size() != A.dim()) throw std::runtime_error("module: one action matrix per basis element required");
  for (const auto& m : M.act)
    if (m.rows() != d || m.cols() != d) throw std::runtime_error("module: action matrix shape mismatch");
  for (size_t i = 0; i < d; ++i)
    if (M.block[i] >= A.nblocks()) throw std::runtime_error("module: coordinate outside blocks");
  // idempotents act as block projections
  for (size_t v = 0; v < A.nblocks(); ++v) {
    const FpMatrix& e = M.act[A.idem[v]];
    for (size_t i = 0; i < d; ++i)
      for (size_t j = 0; j < d; ++j) {
        uint32_t want = (i == j && M.block[i] == v) ? 1 % A.p : 0;
        if (e.at(i, j) != want) throw std::runtime_error("module: idempotent is not the block projection");
      }
  }
  // structure constants respected on all basis pairs
  for (size_t i = 0; i < A.dim(); ++i)
    for (size_t j = 0; j < A.dim(); ++j) {
      FpMatrix lhs = M.act[i].mul(M.act[j]);
      FpMatrix rhs(A.p, d, d);
      for (size_t k = 0; k < A.dim(); ++k)
        if (A.mult[i][j][k]) rhs = rhs.add(M.act[k].scale(A.mult[i][j][k]));
      if (!(lhs == rhs)) throw std::runtime_error("module: action violates structure constants");
    }
}

inline Module module_from_action(std::shared_ptr<const Algebra> A, std::vector<size_t> block,
                                 std::vector<FpMatrix> act) {
  Module M{std::move(A), std::move(block), std::move(act)};
  validate_module(M);
  return M;
}

inline Module zero_module(std::shared_ptr<const Algebra> A) {
  uint32_t p = A->p;
  size_t n = A->dim();
  return Module{std::move(A), {}, std::vector<FpMatrix>(n, FpMatrix(p, 0, 0))};
}

/* Module over a quiver-presented algebra from one matrix per arrow.  The
 * matrix of arrow a: u -> v has shape d_v x d_u.  Coordinates are laid out
 * block-major in vertex order.  Missing relations are caught by validation:
 * composite basis paths act by the corresponding matrix products. */
inline Module module_from_arrow_actions(std::shared_ptr<const Algebra> Aptr,
                                        const std::vector<size_t>& dims,
                                        const std::vector<FpMatrix>& arrow_act) {
  const Algebra& A = *Aptr;
  if (!A.quiver) throw std::runtime_error("module: algebra has no quiver presentation");
  const Quiver& q = *A.quiver;
  if (dims.size() != q.nv()) throw std::runtime_error("module: dimension vector arity mismatch");
  if (arrow_act.size() != q.arrows.size()) throw std::runtime_error("module: one matrix per arrow required");

  std::vector<size_t> offset(q.nv() + 1, 0);
  for (size_t v = 0; v < q.nv(); ++v) offset[v + 1] = offset[v] + dims[v];
  size_t d = offset.back();
  std::vector<size_t> block(d);
  for (size_t v = 0; v < q.nv(); ++v)
    for (size_t i = offset[v]; i < offset[v + 1]; ++i) block[i] = v;

  // embed each arrow matrix into full coordinates
  std::vector<FpMatrix> embedded;
  for (size_t a = 0; a < q.arrows.size(); ++a) {
    const Arrow& ar = q.arrows[a];
    const FpMatrix& m = arrow_act[a];
    if (m.rows() != dims[ar.to] || m.cols() != dims[ar.from])
      throw std::runtime_error("module: arrow matrix shape mismatch for " + ar.name);
    FpMatrix e(A.p, d, d);
    for (size_t i = 0; i < m.rows(); ++i)
      for (size_t j = 0; j < m.cols(); ++j) e.at(offset[ar.to] + i, offset[ar.from] + j) = m.at(i, j);
    embedded.push_back(std::move(e));
  }

  std::vector<FpMatrix> act;
  for (size_t b = 0; b < A.dim(); ++b) {
    if (A.deg[b] == 0) {
      FpMatrix e(A.p, d, d);
      size_t v = A.src[b];
      for (size_t i = offset[v]; i < offset[v + 1]; ++i) e.at(i, i) = 1 % A.p;
      act.push_back(std::move(e));
    } else {
      FpMatrix m = FpMatrix::identity(A.p, d);
      for (uint32_t a : A.word[b]) m = m.mul(embedded[a]);
      act.push_back(std::move(m));
    }
  }
  return module_from_action(std::move(Aptr), std::move(block), std::move(act));
}

struct SumDecomp {
  Module M;
  std::vector<size_t> offset;  // offset[i] = first coordinate of piece i; offset.back() = dim

  FpMatrix incl(size_t i) const {
    size_t di = offset[i + 1] - offset[i];
    FpMatrix m(M.p(), M.dim(), di);
    for (size_t k = 0; k < di; ++k) m.at(offset[i] + k, k) = 1 % M.p();
    return m;
  }
  FpMatrix proj(size_t i) const {
    size_t di = offset[i + 1] - offset[i];
    FpMatrix m(M.p(), di, M.dim());
    for (size_t k = 0; k < di; ++k) m.at(k, offset[i] + k) = 1 % M.p();
    return m;
  }
};

inline SumDecomp direct_sum(std::shared_ptr<const Algebra> A, const std::vector<Module>& parts) {
  for (const auto& P : parts)
    if (P.A.get() != A.get()) throw std::runtime_error("direct_sum: algebra mismatch");
  std::vector<size_t> offset{0};
  for (const auto& P : parts) offset.push_back(offset.back() + P.dim());
  size_t d = offset.back();
  std::vector<size_t> block(d);
  std::vector<FpMatrix> act(A->dim(), FpMatrix(A->p, d, d));
  for (size_t i = 0; i < parts.size(); ++i) {
    for (size_t k = 0; k < parts[i].dim(); ++k) block[offset[i] + k] = parts[i].block[k];
    for (size_t b = 0; b < A->dim(); ++b)
      for (size_t r = 0; r < parts[i].dim(); ++r)
        for (size_t c = 0; c < parts[i].dim(); ++c)
          act[b].at(offset[i] + r, offset[i] + c) = parts[i].act[b].at(r, c);
  }
  return SumDecomp{Module{std::move(A), std::move(block), std::move(act)}, std::move(offset)};
}

inline bool is_module_map(const Module& M, const Module& N, const FpMatrix& f) {
  if (f.rows() != N.dim() || f.cols() != M.dim()) return false;
  for (size_t b = 0; b < M.A->dim(); ++b)
    if (!(f.mul(M.act[b]) == N.act[b].mul(f))) return false;
  return true;
}

/* Basis of Hom(M, N), each element an N.dim x M.dim matrix.  Intertwining is
 * solved against algebra generators: idempotents and arrows when the algebra
 * is path-presented, every basis element otherwise. */
inline std::vector<FpMatrix> hom_space(const Module& M, const Module& N) {
  if (M.A.get() != N.A.get()) throw std::runtime_error("hom_space: algebra mismatch");
  const Algebra& A = *M.A;
  size_t dm = M.dim(), dn = N.dim();
  if (dm == 0 || dn == 0) return {};
  std::vector<size_t> gens;
  for (size_t b = 0; b < A.dim(); ++b) {
    if (A.graded && A.deg[b] > 1) continue;
    gens.push_back(b);
  }
  size_t unknowns = dn * dm;
  FpMatrix eq(A.p, gens.size() * unknowns, unknowns);
  size_t row = 0;
  for (size_t g : gens) {
    // act_N(g) f - f act_M(g) = 0, entry (a, b)
    for (size_t a = 0; a < dn; ++a)
      for (size_t bb = 0; bb < dm; ++bb) {
        for (size_t i = 0; i < dn; ++i) {
          uint32_t c = N.act[g].at(a, i);
          if (c) eq.at(row, i * dm + bb) = fp_add(eq.at(row, i * dm + bb), c, A.p);
        }
        for (size_t j = 0; j < dm; ++j) {
          uint32_t c = M.act[g].at(j, bb);
          if (c) eq.at(row, a * dm + j) = fp_sub(eq.at(row, a * dm + j), c, A.p);
        }
        ++row;
      }
  }
  FpMatrix ker = kernel_basis(eq);
  std::vector<FpMatrix> basis;
  for (size_t k = 0; k < ker.cols(); ++k) {
    FpMatrix f(A.p, dn, dm);
    for (size_t i = 0; i < dn; ++i)
      for (size_t j = 0; j < dm; ++j) f.at(i, j) = ker.at(i * dm + j, k);
    basis.push_back(std::move(f));
  }
  return basis;
}

/* ---- submodules and quotients ------------------------------------------ */

/* Canonicalize a spanning set into block-homogeneous rref rows: a submodule
 * always splits across the idempotent blocks. */
inline Subspace block_canonical_subspace(const Module& M, const FpMatrix& rows) {
  std::vector<std::vector<uint32_t>> split;
  for (size_t r = 0; r < rows.rows(); ++r)
    for (size_t v = 0; v < M.A->nblocks(); ++v) {
      std::vector<uint32_t> piece(M.dim(), 0);
      bool nonzero = false;
      for (size_t j = 0; j < M.dim(); ++j)
        if (M.block[j] == v && rows.at(r, j)) {
          piece[j] = rows.at(r, j);
          nonzero = true;
        }
      if (nonzero) split.push_back(std::move(piece));
    }
  FpMatrix m(M.p(), split.size(), M.dim());
  for (size_t i = 0; i < split.size(); ++i)
    for (size_t j = 0; j < M.dim(); ++j) m.at(i, j) = split[i][j];
  return row_space_canonical(m);
}

/* Reduce v modulo canonical rref rows: zeroes the pivot coordinates. */
inline std::vector<uint32_t> reduce_mod_subspace(const Subspace& U, std::vector<uint32_t> v,
                                                 const std::vector<size_t>& pivots) {
  for (size_t k = 0; k < pivots.size(); ++k) {
    uint32_t c = v[pivots[k]];
    if (!c) continue;
    for (size_t j = 0; j < U.cols(); ++j) v[j] = fp_sub(v[j], fp_mul(c, U.at(k, j), U.p()), U.p());
  }
  return v;
}

inline std::vector<size_t> subspace_pivots(const Subspace& U) {
  std::vector<size_t> piv;
  for (size_t i = 0; i < U.rows(); ++i) {
    size_t j = 0;
    while (j < U.cols() && U.at(i, j) == 0) ++j;
    piv.push_back(j);
  }
  return piv;
}

struct SubmoduleResult {
  Module sub;
  FpMatrix incl;  // ambient dim x sub dim
};

inline SubmoduleResult sub_module(const Module& M, const FpMatrix& spanning_rows) {
  Subspace U = block_canonical_subspace(M, spanning_rows);
  auto piv = subspace_pivots(U);
  size_t k = U.rows();
  std::vector<size_t> block(k);
  for (size_t i = 0; i < k; ++i) block[i] = M.block[piv[i]];

  std::vector<FpMatrix> act;
  for (size_t b = 0; b < M.A->dim(); ++b) {
    FpMatrix m(M.p(), k, k);
    for (size_t l = 0; l < k; ++l) {
      std::vector<uint32_t> row(M.dim());
      for (size_t j = 0; j < M.dim(); ++j) row[j] = U.at(l, j);
      auto w = M.act[b].mul_vec(row);
      // coordinates against rref rows, then the residue must vanish
      for (size_t i = 0; i < k; ++i) m.at(i, l) = w[piv[i]];
      auto resid = reduce_mod_subspace(U, w, piv);
      for (uint32_t c : resid)
        if (c) throw std::runtime_error("sub_module: subspace is not action-invariant");
    }
    act.push_back(std::move(m));
  }
  FpMatrix incl(M.p(), M.dim(), k);
  for (size_t i = 0; i < k; ++i)
    for (size_t j = 0; j < M.dim(); ++j) incl.at(j, i) = U.at(i, j);
  Module S{M.A, std::move(block), std::move(act)};
  validate_module(S);
  return SubmoduleResult{std::move(S), std::move(incl)};
}

struct QuotientResult {
  Module quot;
  FpMatrix proj;     // quot dim x ambient dim
  FpMatrix section;  // ambient dim x quot dim, proj * section = id (linear only)
};

inline QuotientResult quotient_module(const Module& M, const FpMatrix& spanning_rows) {
  Subspace U = block_canonical_subspace(M, spanning_rows);
  auto piv = subspace_pivots(U);
  std::vector<bool> is_piv(M.dim(), false);
  for (size_t c : piv) is_piv[c] = true;
  std::vector<size_t> coords;
  for (size_t j = 0; j < M.dim(); ++j)
    if (!is_piv[j]) coords.push_back(j);
  size_t k = coords.size();

  std::vector<size_t> block(k);
  for (size_t i = 0; i < k; ++i) block[i] = M.block[coords[i]];

  FpMatrix proj(M.p(), k, M.dim());
  for (size_t j = 0; j < M.dim(); ++j) {
    std::vector<uint32_t> e(M.dim(), 0);
    e[j] = 1 % M.p();
    auto r = reduce_mod_subspace(U, e, piv);
    for (size_t i = 0; i < k; ++i) proj.at(i, j) = r[coords[i]];
  }

  std::vector<FpMatrix> act;
  for (size_t b = 0; b < M.A->dim(); ++b) {
    FpMatrix m(M.p(), k, k);
    for (size_t l = 0; l < k; ++l) {
      std::vector<uint32_t> e(M.dim(), 0);
      e[coords[l]] = 1 % M.p();
      auto w = reduce_mod_subspace(U, M.act[b].mul_vec(e), piv);
      for (size_t i = 0; i < k; ++i) m.at(i, l) = w[coords[i]];
    }
    act.push_back(std::move(m));
  }
  Module Q{M.A, std::move(block), std::move(act)};
  validate_module(Q);
  // sanity: proj is a module map onto Q
  if (!is_module_map(M, Q, proj)) throw std::logic_error("quotient_module: projection fails to intertwine");
  FpMatrix section(M.p(), M.dim(), k);
  for (size_t i = 0; i < k; ++i) section.at(coords[i], i) = 1 % M.p();
  return QuotientResult{std::move(Q), std::move(proj), std::move(section)};
}

/* ---- projectives, radicals, covers -------------------------------------- */

inline Module projective_module(std::shared_ptr<const Algebra> Aptr, size_t v) {
  const Algebra& A = *Aptr;
  std::vector<size_t> coords;  // algebra basis elements with source v
  for (size_t b = 0; b < A.dim(); ++b)
    if (A.src[b] == v) coords.push_back(b);
  size_t d = coords.size();
  std::vector<size_t> block(d);
  for (size_t i = 0; i < d; ++i) block[i] = A.tgt[coords[i]];
  std::vector<size_t> pos(A.dim(), SIZE_MAX);
  for (size_t i = 0; i < d; ++i) pos[coords[i]] = i;

  std::vector<FpMatrix> act;
  for (size_t b = 0; b < A.dim(); ++b) {
    FpMatrix m(A.p, d, d);
    for (size_t j = 0; j < d; ++j) {
      const auto& prod = A.mult[b][coords[j]];
      for (size_t kk = 0; kk < A.dim(); ++kk)
        if (prod[kk]) m.at(pos[kk], j) = prod[kk];
    }
    act.push_back(std::move(m));
  }
  Module P{std::move(Aptr), std::move(block), std::move(act)};
  validate_module(P);
  return P;
}

/* Coordinate of the generator e_v inside projective_module(A, v). */
inline size_t projective_generator_coord(const Algebra& A, size_t v) {
  size_t i = 0;
  for (size_t b = 0; b < A.dim(); ++b) {
    if (b == A.idem[v]) return i;
    if (A.src[b] == v) ++i;
  }
  throw std::logic_error("projective_generator_coord: idempotent missing");
}

inline Subspace module_radical_subspace(const Module& M) {
  auto J = radical_basis(*M.A);
  std::vector<std::vector<uint32_t>> rows;
  for (size_t r = 0; r < J.rows(); ++r) {
    std::vector<uint32_t> x(M.A->dim());
    for (size_t j = 0; j < M.A->dim(); ++j) x[j] = J.at(r, j);
    FpMatrix a = M.act_of(x);
    for (size_t i = 0; i < M.dim(); ++i) {
      std::vector<uint32_t> e(M.dim(), 0);
      e[i] = 1 % M.p();
      rows.push_back(a.mul_vec(e));
    }
  }
  FpMatrix m(M.p(), rows.size(), M.dim());
  for (size_t i = 0; i < rows.size(); ++i)
    for (size_t j = 0; j < M.dim(); ++j) m.at(i, j) = rows[i][j];
  return block_canonical_subspace(M, m);
}

inline Subspace socle_subspace(const Module& M) {
  auto J = radical_basis(*M.A);
  if (M.dim() == 0) return FpMatrix(M.p(), 0, 0);
  std::vector<FpMatrix> stack;
  for (size_t r = 0; r < J.rows(); ++r) {
    std::vector<uint32_t> x(M.A->dim());
    for (size_t j = 0; j < M.A->dim(); ++j) x[j] = J.at(r, j);
    stack.push_back(M.act_of(x));
  }
  if (stack.empty()) return block_canonical_subspace(M, FpMatrix::identity(M.p(), M.dim()));
  FpMatrix big(M.p(), 0, M.dim());
  for (const auto& s : stack) big = big.vstack(s);
  return block_canonical_subspace(M, kernel_basis(big).transpose());
}

struct CoverResult {
  Module P;
  FpMatrix surj;              // M dim x P dim
  SubmoduleResult syzygy;     // kernel inside P
  std::vector<size_t> mult;   // copies of each projective
};

inline CoverResult projective_cover(const Module& M) {
  if (M.dim() == 0) throw std::runtime_error("projective_cover: zero module");
  const auto& A = M.A;
  Subspace rad = module_radical_subspace(M);
  auto piv = subspace_pivots(rad);
  std::vector<bool> is_piv(M.dim(), false);
  for (size_t c : piv) is_piv[c] = true;

  std::vector<size_t> mult(A->nblocks(), 0);
  std::vector<Module> parts;
  std::vector<size_t> lifts;  // ambient coordinate generating each copy
  for (size_t v = 0; v < A->nblocks(); ++v)
    for (size_t j = 0; j < M.dim(); ++j)
      if (!is_piv[j] && M.block[j] == v) {
        mult[v] += 1;
        parts.push_back(projective_module(A, v));
        lifts.push_back(j);
      }
  SumDecomp sum = direct_sum(A, parts);

  FpMatrix surj(M.p(), M.dim(), sum.M.dim());
  {
    size_t col = 0;
    size_t piece = 0;
    for (size_t v = 0; v < A->nblocks(); ++v)
      for (size_t j = 0; j < M.dim(); ++j) {
        if (is_piv[j] || M.block[j] != v) continue;
        // generator of this copy goes to e_j; basis path b goes to act(b) e_j
        const Module& Pv = parts[piece];
        (void)Pv;
        size_t cidx = 0;
        for (size_t b = 0; b < A->dim(); ++b) {
          if (A->src[b] != v) continue;
          std::vector<uint32_t> e(M.dim(), 0);
          e[j] = 1 % M.p();
          auto w = M.act[b].mul_vec(e);
          for (size_t i = 0; i < M.dim(); ++i) surj.at(i, col + cidx) = w[i];
          ++cidx;
        }
        col += parts[piece].dim();
        ++piece;
      }
  }
  if (!is_module_map(sum.M, M, surj)) throw std::logic_error("projective_cover: lift is not a module map");
  if (rank(surj) != M.dim()) throw std::logic_error("projective_cover: cover fails to surject");

  SubmoduleResult ker = sub_module(sum.M, kernel_basis(surj).transpose());
  return CoverResult{std::move(sum.M), std::move(surj), std::move(ker), std::move(mult)};
}

inline bool is_projective(const Module& M) {
  if (M.dim() == 0) return true;
  return projective_cover(M).P.dim() == M.dim();
}

inline Module simple_module(std::shared_ptr<const Algebra> A, size_t v) {
  Module P = projective_module(A, v);
  auto rad = module_radical_subspace(P);
  auto Q = quotient_module(P, rad);
  return Q.quot;
}

}  // namespace ccx
