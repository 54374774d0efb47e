#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "ccx/matrix.hpp"
#include "ccx/quiver.hpp"
#include "ccx/rational.hpp"

namespace ccx {

/* Finite-dimensional associative algebra over F_p with a fixed basis that is
 * adapted to the idempotent blocks: basis element i spans a one-dimensional
 * piece of e_{tgt[i]} A e_{src[i]}.  Products of basis elements are stored as
 * dense coefficient vectors.  When the algebra comes from a quiver with
 * relations, deg[i] is the path length and the arrow ideal is the radical. */
struct Algebra {
  uint32_t p = 0;
  std::vector<std::string> block_names;
  std::optional<Quiver> quiver;
  std::vector<std::string> names;
  std::vector<size_t> src, tgt;
  std::vector<int> deg;                 // path length, or -1 when not graded
  std::vector<size_t> idem;             // idem[v] = basis index of e_v
  std::vector<std::vector<uint32_t>> word;  // arrow ids in algebra order; empty off the path case
  std::vector<std::vector<std::vector<uint32_t>>> mult;  // mult[i][j] = dense product
  bool graded = false;

  size_t dim() const { return names.size(); }
  size_t nblocks() const { return block_names.size(); }

  std::vector<uint32_t> zero_elt() const { return std::vector<uint32_t>(dim(), 0); }

  std::vector<uint32_t> unit() const {
    auto u = zero_elt();
    for (size_t v = 0; v < nblocks(); ++v) u[idem[v]] = 1 % p;
    return u;
  }

  std::vector<uint32_t> mul(const std::vector<uint32_t>& x, const std::vector<uint32_t>& y) const {
    auto r = zero_elt();
    for (size_t i = 0; i < dim(); ++i) {
      if (!x[i]) continue;
      for (size_t j = 0; j < dim(); ++j) {
        if (!y[j]) continue;
        uint32_t c = fp_mul(x[i], y[j], p);
        const auto& prod = mult[i][j];
        for (size_t k = 0; k < dim(); ++k)
          if (prod[k]) r[k] = fp_add(r[k], fp_mul(c, prod[k], p), p);
      }
    }
    return r;
  }

  /* Matrix of left multiplication by x acting on the algebra, columns indexed
   * by the basis. */
  FpMatrix left_mult_matrix(const std::vector<uint32_t>& x) const {
    FpMatrix m(p, dim(), dim());
    for (size_t j = 0; j < dim(); ++j) {
      auto basis_j = zero_elt();
      basis_j[j] = 1 % p;
      auto col = mul(x, basis_j);
      for (size_t i = 0; i < dim(); ++i) m.at(i, j) = col[i];
    }
    return m;
  }
};

inline void validate_algebra(const Algebra& A) {
  size_t d = A.dim();
  if (A.src.size() != d || A.tgt.size() != d || A.deg.size() != d || A.mult.size() != d)
    throw std::runtime_error("algebra: ragged basis data");
  if (A.idem.size() != A.nblocks()) throw std::runtime_error("algebra: idempotent count mismatch");
  for (size_t v = 0; v < A.nblocks(); ++v) {
    size_t e = A.idem[v];
    if (A.src[e] != v || A.tgt[e] != v) throw std::runtime_error("algebra: idempotent off-block");
  }
  for (size_t i = 0; i < d; ++i) {
    if (A.src[i] >= A.nblocks() || A.tgt[i] >= A.nblocks())
      throw std::runtime_error("algebra: basis element outside blocks");
    for (size_t j = 0; j < d; ++j) {
      if (A.mult[i][j].size() != d) throw std::runtime_error("algebra: ragged product");
      if (A.src[i] != A.tgt[j]) {
        for (uint32_t c : A.mult[i][j])
          if (c) throw std::runtime_error("algebra: nonzero product across mismatched blocks");
        continue;
      }
      for (size_t k = 0; k < d; ++k) {
        if (!A.mult[i][j][k]) continue;
        if (A.src[k] != A.src[j] || A.tgt[k] != A.tgt[i])
          throw std::runtime_error("algebra: product lands in wrong block");
      }
    }
  }
  // unit laws
  auto one = A.unit();
  for (size_t j = 0; j < d; ++j) {
    auto bj = A.zero_elt();
    bj[j] = 1 % A.p;
    if (A.mul(one, bj) != bj || A.mul(bj, one) != bj)
      throw std::runtime_error("algebra: unit law fails");
  }
  // associativity on basis triples
  for (size_t i = 0; i < d; ++i) {
    auto bi = A.zero_elt();
    bi[i] = 1 % A.p;
    for (size_t j = 0; j < d; ++j) {
      if (A.src[i] != A.tgt[j]) continue;
      auto bj = A.zero_elt();
      bj[j] = 1 % A.p;
      auto ij = A.mul(bi, bj);
      for (size_t k = 0; k < d; ++k) {
        if (A.src[j] != A.tgt[k]) continue;
        auto bk = A.zero_elt();
        bk[k] = 1 % A.p;
        if (A.mul(ij, bk) != A.mul(bi, A.mul(bj, bk)))
          throw std::runtime_error("algebra: associativity fails");
      }
    }
  }
}

namespace detail {

/* Composite path in algebra order: word[0] acts last, word.back() acts first.
 * Trivial paths are not represented as words; they are handled separately. */
struct Word {
  std::vector<uint32_t> arrows;
  bool operator<(const Word& o) const { return arrows < o.arrows; }
  bool operator==(const Word& o) const { return arrows == o.arrows; }
};

inline size_t word_src(const Quiver& q, const Word& w) { return q.arrows[w.arrows.back()].from; }
inline size_t word_tgt(const Quiver& q, const Word& w) { return q.arrows[w.arrows.front()].to; }

}  // namespace detail

/* Quotient of the path algebra of q by the two-sided ideal the relations
 * generate, over F_p.  Relations must be admissible: every term is a
 * composable path of length at least two, and all terms of one relation share
 * their endpoints.  The basis is found by linear elimination degree by degree;
 * longer paths are eliminated in favor of shorter ones.  Stops once the ideal
 * visibly stabilizes, errors out if path length maxlen is reached first. */
inline Algebra build_algebra(const Quiver& q, const std::vector<Relation>& relations, uint32_t p,
                             size_t maxlen = 32) {
  using detail::Word;
  q.validate();
  if (!is_prime_u32(p)) throw std::runtime_error("build_algebra: modulus must be prime");

  struct Rel {
    std::vector<std::pair<uint32_t, Word>> terms;
    size_t s = 0, t = 0, mindeg = 0, maxdeg = 0;
  };
  std::vector<Rel> rels;
  for (const auto& r : relations) {
    Rel rel;
    bool first = true;
    for (const auto& term : r) {
      if (term.path.size() < 2)
        throw std::runtime_error("build_algebra: non-admissible relation (term of length < 2)");
      Word w;
      for (const auto& an : term.path) w.arrows.push_back(static_cast<uint32_t>(q.arrow_index(an)));
      for (size_t i = 0; i + 1 < w.arrows.size(); ++i)
        if (q.arrows[w.arrows[i]].from != q.arrows[w.arrows[i + 1]].to)
          throw std::runtime_error("build_algebra: relation term is not a composable path");
      uint32_t c = fp_norm(term.coeff, p);
      if (!c) continue;
      size_t ws = detail::word_src(q, w), wt = detail::word_tgt(q, w);
      if (first) {
        rel.s = ws;
        rel.t = wt;
        rel.mindeg = rel.maxdeg = w.arrows.size();
        first = false;
      } else {
        if (ws != rel.s || wt != rel.t)
          throw std::runtime_error("build_algebra: relation mixes endpoints");
        rel.mindeg = std::min(rel.mindeg, w.arrows.size());
        rel.maxdeg = std::max(rel.maxdeg, w.arrows.size());
      }
      rel.terms.push_back({c, w});
    }
    if (!rel.terms.empty()) rels.push_back(std::move(rel));
  }
  size_t spread = 0;
  for (const auto& r : rels) spread = std::max(spread, r.maxdeg - r.mindeg);

  // words_by_len[d] = all composable words of length d, in generation order
  std::vector<std::vector<Word>> words_by_len(1);  // length 0 handled separately
  std::vector<Word> len1;
  for (uint32_t a = 0; a < q.arrows.size(); ++a) len1.push_back(Word{{a}});
  words_by_len.push_back(len1);
  size_t total_words = q.arrows.size();

  auto extend_words = [&](size_t upto) {
    while (words_by_len.size() <= upto) {
      size_t d = words_by_len.size();
      std::vector<Word> next;
      for (const auto& w : words_by_len[d - 1])
        for (uint32_t a = 0; a < q.arrows.size(); ++a)
          if (q.arrows[a].from == detail::word_tgt(q, w)) {
            Word nw;
            nw.arrows.push_back(a);
            nw.arrows.insert(nw.arrows.end(), w.arrows.begin(), w.arrows.end());
            next.push_back(std::move(nw));
          }
      total_words += next.size();
      if (total_words > 200000) throw std::runtime_error("build_algebra: path growth bound exceeded");
      words_by_len.push_back(std::move(next));
    }
  };

  // One elimination pass over all words of length <= L.  Returns the basis
  // words and the normal form of every eliminated word.
  struct Pass {
    std::vector<Word> basis_words;                 // length >= 2 survivors
    std::map<Word, std::vector<std::pair<uint32_t, Word>>> nf;  // pivot word -> expansion
  };
  auto run_pass = [&](size_t L) -> Pass {
    extend_words(L);
    // column order: longest first, then generation order
    std::vector<Word> cols;
    for (size_t d = L; d >= 2; --d)
      for (const auto& w : words_by_len[d]) cols.push_back(w);
    std::map<Word, size_t> col_of;
    for (size_t i = 0; i < cols.size(); ++i) col_of[cols[i]] = i;

    // rows: u * R * v over words u, v (including trivial) with all terms of
    // length <= L
    std::vector<std::vector<uint32_t>> rows;
    for (const auto& rel : rels) {
      for (size_t lu = 0; lu + rel.maxdeg <= L; ++lu) {
        std::vector<Word> us;
        if (lu == 0)
          us.push_back(Word{});  // trivial path at rel.t
        else
          for (const auto& u : words_by_len[lu])
            if (detail::word_src(q, u) == rel.t) us.push_back(u);
        for (size_t lv = 0; lu + rel.maxdeg + lv <= L; ++lv) {
          std::vector<Word> vs;
          if (lv == 0)
            vs.push_back(Word{});
          else
            for (const auto& v : words_by_len[lv])
              if (detail::word_tgt(q, v) == rel.s) vs.push_back(v);
          for (const auto& u : us)
            for (const auto& v : vs) {
              std::vector<uint32_t> row(cols.size(), 0);
              for (const auto& [c, w] : rel.terms) {
                Word inst;
                inst.arrows = u.arrows;
                inst.arrows.insert(inst.arrows.end(), w.arrows.begin(), w.arrows.end());
                inst.arrows.insert(inst.arrows.end(), v.arrows.begin(), v.arrows.end());
                row[col_of.at(inst)] = fp_add(row[col_of.at(inst)], c, p);
              }
              rows.push_back(std::move(row));
            }
        }
      }
    }

    FpMatrix m(p, rows.size(), cols.size());
    for (size_t i = 0; i < rows.size(); ++i)
      for (size_t j = 0; j < cols.size(); ++j) m.at(i, j) = rows[i][j];
    auto rr = rref(m);

    Pass out;
    std::vector<bool> is_pivot(cols.size(), false);
    for (size_t r = 0; r < rr.pivots.size(); ++r) {
      size_t pc = rr.pivots[r];
      is_pivot[pc] = true;
      std::vector<std::pair<uint32_t, Word>> expansion;
      for (size_t j = pc + 1; j < cols.size(); ++j) {
        uint32_t c = rr.m.at(r, j);
        if (c) expansion.push_back({fp_neg(c, p), cols[j]});
      }
      out.nf[cols[pc]] = std::move(expansion);
    }
    for (size_t j = 0; j < cols.size(); ++j)
      if (!is_pivot[j]) out.basis_words.push_back(cols[j]);
    return out;
  };

  // grow L until the surviving basis is unchanged on a window that clears the
  // inhomogeneity spread of the relations
  Pass stable;
  bool done = false;
  size_t L = 2;
  std::vector<Word> prev_basis;
  bool have_prev = false;
  for (; L <= maxlen; ++L) {
    Pass pass = run_pass(L);
    size_t m = 1;
    for (const auto& w : pass.basis_words) m = std::max(m, w.arrows.size());
    bool unchanged = have_prev && pass.basis_words == prev_basis;
    prev_basis = pass.basis_words;
    have_prev = true;
    if (unchanged && L >= m + spread + 1) {
      // confirmation pass further out; guards against late collapses from
      // inhomogeneous relations
      size_t Lc = std::min(maxlen, L + spread + 2);
      Pass confirm = run_pass(Lc);
      if (confirm.basis_words == pass.basis_words) {
        stable = std::move(confirm);
        done = true;
        break;
      }
      pass = std::move(confirm);
      prev_basis = pass.basis_words;
      L = Lc;
    }
  }
  if (!done) throw std::runtime_error("build_algebra: quotient does not stabilize below length bound");

  // products of two basis words can be up to twice the longest basis word, so
  // rerun the elimination far enough out to read their normal forms
  size_t mlen = 1;
  for (const auto& w : stable.basis_words) mlen = std::max(mlen, w.arrows.size());
  size_t Lf = std::max(2 * mlen, size_t(2)) + spread;
  if (Lf > maxlen) throw std::runtime_error("build_algebra: length bound too small for products");
  Pass fin = run_pass(Lf);
  if (fin.basis_words != stable.basis_words)
    throw std::runtime_error("build_algebra: quotient does not stabilize below length bound");

  Algebra A;
  A.p = p;
  A.block_names = q.vertex_names;
  A.quiver = q;
  A.graded = true;
  size_t nv = q.nv();
  for (size_t v = 0; v < nv; ++v) {
    A.names.push_back("e" + q.vertex_names[v]);
    A.src.push_back(v);
    A.tgt.push_back(v);
    A.deg.push_back(0);
    A.word.push_back({});
    A.idem.push_back(v);
  }
  auto word_name = [&](const Word& w) {
    std::string s;
    for (size_t i = 0; i < w.arrows.size(); ++i) {
      if (i) s += "*";
      s += q.arrows[w.arrows[i]].name;
    }
    return s;
  };
  std::map<Word, size_t> index_of;
  for (uint32_t a = 0; a < q.arrows.size(); ++a) {
    index_of[Word{{a}}] = A.names.size();
    A.names.push_back(q.arrows[a].name);
    A.src.push_back(q.arrows[a].from);
    A.tgt.push_back(q.arrows[a].to);
    A.deg.push_back(1);
    A.word.push_back({a});
  }
  // stable.basis_words is ordered longest-first; store degree-ascending
  {
    auto ws = fin.basis_words;
    std::stable_sort(ws.begin(), ws.end(), [](const Word& x, const Word& y) {
      return x.arrows.size() < y.arrows.size();
    });
    for (const auto& w : ws) {
      index_of[w] = A.names.size();
      A.names.push_back(word_name(w));
      A.src.push_back(detail::word_src(q, w));
      A.tgt.push_back(detail::word_tgt(q, w));
      A.deg.push_back(static_cast<int>(w.arrows.size()));
      A.word.push_back(w.arrows);
    }
  }

  size_t dim = A.names.size();
  // normal form of an arbitrary enumerated word as a dense vector
  auto nf_dense = [&](const Word& w) {
    std::vector<uint32_t> out(dim, 0);
    auto it = index_of.find(w);
    if (it != index_of.end()) {
      out[it->second] = 1 % p;
      return out;
    }
    auto nf = fin.nf.find(w);
    if (nf == fin.nf.end()) throw std::logic_error("build_algebra: word escapes elimination range");
    for (const auto& [c, bw] : nf->second) {
      auto jt = index_of.find(bw);
      if (jt == index_of.end()) throw std::logic_error("build_algebra: normal form not over basis");
      out[jt->second] = fp_add(out[jt->second], c, p);
    }
    return out;
  };

  std::vector<Word> word_at(dim);
  for (const auto& [w, k] : index_of) word_at[k] = w;

  A.mult.assign(dim, std::vector<std::vector<uint32_t>>(dim, std::vector<uint32_t>(dim, 0)));
  for (size_t i = 0; i < dim; ++i)
    for (size_t j = 0; j < dim; ++j) {
      if (A.src[i] != A.tgt[j]) continue;  // product is zero across blocks
      if (A.deg[i] == 0) {
        A.mult[i][j][j] = 1 % p;
        continue;
      }
      if (A.deg[j] == 0) {
        A.mult[i][j][i] = 1 % p;
        continue;
      }
      Word w;
      w.arrows = word_at[i].arrows;
      w.arrows.insert(w.arrows.end(), word_at[j].arrows.begin(), word_at[j].arrows.end());
      A.mult[i][j] = nf_dense(w);
    }

  validate_algebra(A);
  return A;
}

/* Integer Cartan matrix: C[i][j] = dim e_i A e_j. */
inline std::vector<std::vector<long long>> cartan_matrix(const Algebra& A) {
  std::vector<std::vector<long long>> C(A.nblocks(), std::vector<long long>(A.nblocks(), 0));
  for (size_t b = 0; b < A.dim(); ++b) C[A.tgt[b]][A.src[b]] += 1;
  return C;
}

/* Euler form matrix (C^{-1})^T for an algebra of finite global dimension;
 * entries are checked to be integers. */
inline std::vector<std::vector<long long>> euler_matrix(const Algebra& A) {
  auto C = cartan_matrix(A);
  size_t n = C.size();
  RatMatrix M(n, std::vector<Rat>(n));
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) M[i][j] = Rat(C[i][j]);
  auto inv = rat_inverse(M);
  if (!inv) throw std::runtime_error("euler_matrix: Cartan matrix is singular");
  std::vector<std::vector<long long>> E(n, std::vector<long long>(n));
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) {
      Rat v = (*inv)[j][i];
      if (v.d != 1) throw std::runtime_error("euler_matrix: inverse Cartan is not integral");
      E[i][j] = v.n;
    }
  return E;
}

/* Basis of a subspace of the algebra, as rows of coefficients. */
using Subspace = FpMatrix;

inline Subspace subspace_from_rows(const Algebra& A, const std::vector<std::vector<uint32_t>>& rows) {
  FpMatrix m(A.p, rows.size(), A.dim());
  for (size_t i = 0; i < rows.size(); ++i)
    for (size_t j = 0; j < A.dim(); ++j) m.at(i, j) = rows[i][j];
  return row_space_canonical(m);
}

/* Span of all products u*v with u in U, v in V. */
inline Subspace subspace_product(const Algebra& A, const Subspace& U, const Subspace& V) {
  std::vector<std::vector<uint32_t>> rows;
  for (size_t i = 0; i < U.rows(); ++i)
    for (size_t j = 0; j < V.rows(); ++j) {
      std::vector<uint32_t> u(A.dim()), v(A.dim());
      for (size_t k = 0; k < A.dim(); ++k) {
        u[k] = U.at(i, k);
        v[k] = V.at(j, k);
      }
      rows.push_back(A.mul(u, v));
    }
  if (rows.empty()) return FpMatrix(A.p, 0, A.dim());
  return subspace_from_rows(A, rows);
}

/* Jacobson radical.  Path-length graded algebras use the arrow ideal, which
 * is exact over any prime.  Otherwise the kernel of the trace form is taken
 * and certified: it always contains the radical, and once it is checked to be
 * nilpotent it equals the radical.  Failure to certify is an error rather
 * than a silent wrong answer. */
inline Subspace radical_basis(const Algebra& A) {
  if (A.graded) {
    std::vector<std::vector<uint32_t>> rows;
    for (size_t b = 0; b < A.dim(); ++b)
      if (A.deg[b] >= 1) {
        std::vector<uint32_t> r(A.dim(), 0);
        r[b] = 1 % A.p;
        rows.push_back(std::move(r));
      }
    if (rows.empty()) return FpMatrix(A.p, 0, A.dim());
    return subspace_from_rows(A, rows);
  }
  size_t d = A.dim();
  std::vector<FpMatrix> L;
  for (size_t b = 0; b < d; ++b) {
    auto e = A.zero_elt();
    e[b] = 1 % A.p;
    L.push_back(A.left_mult_matrix(e));
  }
  FpMatrix gram(A.p, d, d);
  for (size_t i = 0; i < d; ++i)
    for (size_t j = 0; j < d; ++j) {
      auto prod = L[i].mul(L[j]);
      uint32_t tr = 0;
      for (size_t k = 0; k < d; ++k) tr = fp_add(tr, prod.at(k, k), A.p);
      gram.at(i, j) = tr;
    }
  Subspace J = row_space_canonical(kernel_basis(gram).transpose());
  // nilpotency certificate
  Subspace power = J;
  for (size_t step = 0; step <= d; ++step) {
    if (power.rows() == 0) return J;
    power = subspace_product(A, power, J);
  }
  throw std::runtime_error("radical_basis: trace-form kernel is not nilpotent; radical uncertified");
}

/* Bases of rad, rad^2, ... down to the first zero (the zero is listed). */
inline std::vector<Subspace> radical_filtration(const Algebra& A) {
  auto J = radical_basis(A);
  std::vector<Subspace> out;
  Subspace power = J;
  while (true) {
    bool done = power.rows() == 0;
    out.push_back(power);
    if (done) break;
    power = subspace_product(A, power, J);
  }
  return out;
}

/* Dimensions along the radical filtration. */
inline std::vector<size_t> radical_series(const Algebra& A) {
  std::vector<size_t> dims;
  for (const auto& s : radical_filtration(A)) dims.push_back(s.rows());
  return dims;
}

}  // namespace ccx
