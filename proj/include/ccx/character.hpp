#pragma once

#include <algorithm>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "ccx/grassmann.hpp"
#include "ccx/laurent.hpp"
#include "ccx/tilting.hpp"

namespace ccx {

/* ---- setup ----------------------------------------------------------------- */

/* Everything the characters need: a primary instance over a large field, a
 * catalog of the indecomposables with the summands of T among them, and a
 * parallel instance of the same data over each small counting field.  Point
 * counts of submodule loci come from the counting instances; the exponents
 * come from the primary one. */
struct CharacterSetup {
  TiltingData t;
  std::vector<Module> catalog;
  std::vector<std::string> catalog_names;
  std::vector<TiltingData> counting;
  std::vector<std::vector<Module>> counting_catalog;
  PhiResult phi;
  std::vector<std::vector<long long>> form3;  // truncated Euler form on simples over B
  std::vector<std::vector<long long>> forma;  // antisymmetrized form on simples over C
  size_t dim_cap = 8;
};

inline CharacterSetup make_character_setup(TiltingData t, std::vector<Module> catalog,
                                           std::vector<std::string> catalog_names,
                                           std::vector<TiltingData> counting,
                                           std::vector<std::vector<Module>> counting_catalog,
                                           size_t dim_cap = 8) {
  if (catalog.size() != catalog_names.size())
    throw std::runtime_error("make_character_setup: catalog name arity mismatch");
  if (counting.size() != counting_catalog.size())
    throw std::runtime_error("make_character_setup: counting instance arity mismatch");
  for (const auto& cc : counting_catalog)
    if (cc.size() != catalog.size())
      throw std::runtime_error("make_character_setup: counting catalog size mismatch");
  CharacterSetup s;
  s.phi = phi_matrix(t, catalog);
  size_t n = t.T.size(), r = t.r;
  s.form3.assign(n, std::vector<long long>(n, 0));
  for (size_t u = 0; u < n; ++u)
    for (size_t i = 0; i < n; ++i)
      s.form3[u][i] = euler_form_3(simple_module(t.B.alg, u), simple_module(t.B.alg, i));
  s.forma.assign(r, std::vector<long long>(r, 0));
  for (size_t u = 0; u < r; ++u)
    for (size_t i = 0; i < r; ++i)
      s.forma[u][i] = euler_form_a(simple_module(t.C.alg, u), simple_module(t.C.alg, i));
  s.t = std::move(t);
  s.catalog = std::move(catalog);
  s.catalog_names = std::move(catalog_names);
  s.counting = std::move(counting);
  s.counting_catalog = std::move(counting_catalog);
  s.dim_cap = dim_cap;
  return s;
}

/* ---- catalog bookkeeping --------------------------------------------------- */

/* A direct sum written as a sorted multiset of catalog indices; the one form
 * that re-instantiates verbatim over every counting field. */
using Pieces = std::vector<size_t>;

inline Pieces decompose_to_catalog(const CharacterSetup& s, const Module& M) {
  Pieces out;
  for (const Module& piece : decompose(M)) {
    bool found = false;
    for (size_t i = 0; i < s.catalog.size() && !found; ++i)
      if (indecomposables_isomorphic(piece, s.catalog[i])) {
        out.push_back(i);
        found = true;
      }
    if (!found) throw std::runtime_error("decompose_to_catalog: a summand is missing from the catalog");
  }
  std::sort(out.begin(), out.end());
  return out;
}

/* instance 0 is the primary field, instance k >= 1 the k-th counting field */
inline Module assemble_pieces(const CharacterSetup& s, const Pieces& ps, size_t instance) {
  const TiltingData& t = instance == 0 ? s.t : s.counting[instance - 1];
  const std::vector<Module>& cat = instance == 0 ? s.catalog : s.counting_catalog[instance - 1];
  std::vector<Module> parts;
  for (size_t i : ps) parts.push_back(cat.at(i));
  return direct_sum(t.L, parts).M;
}

/* ---- Euler characteristics of submodule loci ------------------------------- */

enum class CharacterKind { X, Fu, Palu };

namespace detail {

inline Module character_ambient(const TiltingData& t, const Module& M, CharacterKind kind) {
  switch (kind) {
    case CharacterKind::X:
      return g_module(t, suspend(M)).M;
    case CharacterKind::Fu:
      return ext_module(t, M).M;
    default:
      return g_module(t, M).M;
  }
}

/* chi of every submodule class of the ambient attached to the pieces.  The
 * ambient must look the same over every counting field; point counts are
 * interpolated per class. */
inline std::map<std::vector<size_t>, long long> chi_by_class(const CharacterSetup& s,
                                                             const Pieces& ps,
                                                             CharacterKind kind) {
  Module amb0 = character_ambient(s.t, assemble_pieces(s, ps, 0), kind);
  auto dims0 = amb0.dims_by_block();

  std::vector<std::pair<long long, SubmoduleCounts>> counts;
  for (size_t k = 0; k < s.counting.size(); ++k) {
    Module amb = character_ambient(s.counting[k], assemble_pieces(s, ps, k + 1), kind);
    if (amb.dims_by_block() != dims0)
      throw std::runtime_error("chi_by_class: a counting instance disagrees with the primary ambient");
    counts.push_back({(long long)s.counting[k].L->p, enumerate_submodules(amb, s.dim_cap)});
  }

  std::map<std::vector<size_t>, long long> chi;
  std::map<std::vector<size_t>, bool> keys;
  for (const auto& [q, c] : counts)
    for (const auto& [cls, cnt] : c.by_class) keys[cls] = true;
  for (const auto& [cls, unused] : keys) {
    std::vector<std::pair<long long, long long>> pts;
    for (const auto& [q, c] : counts) {
      auto it = c.by_class.find(cls);
      pts.push_back({q, it == c.by_class.end() ? 0 : it->second});
    }
    long long val = euler_char_from_counts(pts, grassmann_degree_bound(dims0, cls)).chi;
    if (val) chi[cls] = val;
  }
  return chi;
}

inline std::vector<int> to_int_vector(const K0Vector& v) {
  std::vector<int> out(v.size());
  for (size_t i = 0; i < v.size(); ++i) out[i] = (int)v[i];
  return out;
}

}  // namespace detail

/* ---- the three characters --------------------------------------------------- */

/* Index monomial times the generating Laurent sum over submodule classes of
 * the suspended stable image; exponents of a class come from phi. */
inline LaurentPoly x_character(const CharacterSetup& s, const Pieces& ps) {
  size_t n = s.t.T.size();
  Module M = assemble_pieces(s, ps, 0);
  LaurentPoly base = LaurentPoly::monomial((int)n, 1, detail::to_int_vector(index_vector(s.t, M)));
  LaurentPoly sum = LaurentPoly::zero((int)n);
  for (const auto& [cls, chi] : detail::chi_by_class(s, ps, CharacterKind::X)) {
    K0Vector e = -s.phi.apply(cls);
    sum = sum + LaurentPoly::monomial((int)n, chi, detail::to_int_vector(e));
  }
  return base * sum;
}

/* Same shape with homological exponents: the base uses the truncated Euler
 * form against the class of Hom(T, M), the classes live in Ext^1(T, M). */
inline LaurentPoly fu_character(const CharacterSetup& s, const Pieces& ps) {
  size_t n = s.t.T.size();
  Module M = assemble_pieces(s, ps, 0);
  auto fm = f_module(s.t, M).M.dims_by_block();
  std::vector<int> base_e(n, 0);
  for (size_t i = 0; i < n; ++i) {
    long long v = 0;
    for (size_t u = 0; u < n; ++u) v += (long long)fm[u] * s.form3[u][i];
    base_e[i] = (int)v;
  }
  LaurentPoly base = LaurentPoly::monomial((int)n, 1, base_e);
  LaurentPoly sum = LaurentPoly::zero((int)n);
  for (const auto& [cls, chi] : detail::chi_by_class(s, ps, CharacterKind::Fu)) {
    std::vector<int> e(n, 0);
    for (size_t i = 0; i < n; ++i) {
      long long v = 0;
      for (size_t u = 0; u < s.t.r; ++u) v += (long long)cls[u] * s.form3[u][i];
      e[i] = (int)-v;
    }
    sum = sum + LaurentPoly::monomial((int)n, chi, e);
  }
  return base * sum;
}

/* Character with respect to the shifted object, in the r stable variables.
 * A piece isomorphic to a shifted summand contributes its variable; any other
 * piece goes through the coindex monomial and the stable submodule sum. */
inline LaurentPoly palu_character(const CharacterSetup& s, const Pieces& ps) {
  size_t r = s.t.r;
  if (ps.size() == 1) {
    Module M = assemble_pieces(s, ps, 0);
    for (size_t i = 0; i < r; ++i)
      if (is_isomorphic(M, suspend(s.t.T[i]))) return LaurentPoly::variable((int)r, (int)i);
  }
  Module M = assemble_pieces(s, ps, 0);
  LaurentPoly base = LaurentPoly::monomial(
      (int)r, 1, detail::to_int_vector(stable_index_vector(s.t, desuspend(M))));
  LaurentPoly sum = LaurentPoly::zero((int)r);
  for (const auto& [cls, chi] : detail::chi_by_class(s, ps, CharacterKind::Palu)) {
    std::vector<int> e(r, 0);
    for (size_t i = 0; i < r; ++i) {
      long long v = 0;
      for (size_t u = 0; u < r; ++u) v += s.forma[i][u] * (long long)cls[u];
      e[i] = (int)v;
    }
    sum = sum + LaurentPoly::monomial((int)r, chi, e);
  }
  return base * sum;
}

inline LaurentPoly x_character(const CharacterSetup& s, const Module& M) {
  return x_character(s, decompose_to_catalog(s, M));
}
inline LaurentPoly fu_character(const CharacterSetup& s, const Module& M) {
  return fu_character(s, decompose_to_catalog(s, M));
}
inline LaurentPoly palu_character(const CharacterSetup& s, const Module& M) {
  return palu_character(s, decompose_to_catalog(s, M));
}

/* ---- theorem-shaped checks --------------------------------------------------- */

/* One-dimensional extension spaces in both directions: the product of the
 * characters equals the sum of the characters of the two middles. */
struct MultiplicationCheck {
  bool ok = false;
  LaurentPoly lhs, rhs;
  Pieces mid_a, mid_b;
};

inline MultiplicationCheck check_multiplication(const CharacterSetup& s, const Module& M,
                                                const Module& N) {
  Ext1 mn = ext1(M, N);
  Ext1 nm = ext1(N, M);
  if (mn.dim != 1 || nm.dim != 1)
    throw std::runtime_error("check_multiplication: the extension spaces are not one-dimensional");
  MultiplicationCheck out;
  out.mid_a = decompose_to_catalog(s, extension_middle(mn, mn.reps[0]).mid);
  out.mid_b = decompose_to_catalog(s, extension_middle(nm, nm.reps[0]).mid);
  out.lhs = x_character(s, M) * x_character(s, N);
  out.rhs = x_character(s, out.mid_a) + x_character(s, out.mid_b);
  out.ok = out.lhs == out.rhs;
  return out;
}

/* Setting the projective variables to one turns the x-character of M into the
 * shifted-object character of the suspension of M. */
struct SpecializationCheck {
  bool ok = false;
  LaurentPoly lhs, rhs;
};

inline SpecializationCheck check_specialization(const CharacterSetup& s, const Module& M) {
  SpecializationCheck out;
  out.lhs = x_character(s, M).keep_prefix((int)s.t.r);
  out.rhs = palu_character(s, suspend(M));
  out.ok = out.lhs == out.rhs;
  return out;
}

/* The two n-variable characters agree exactly when phi matches the truncated
 * Euler form on the nonprojective blocks; both sides of that equivalence are
 * checked. */
struct CharacterEquality {
  bool condition = false;  // phi[i][u] == form3[u][i] for u < r
  bool characters_equal = false;
  bool ok = false;
};

inline CharacterEquality check_character_equality(const CharacterSetup& s) {
  CharacterEquality out;
  out.condition = true;
  for (size_t u = 0; u < s.t.r && out.condition; ++u)
    for (size_t i = 0; i < s.t.T.size() && out.condition; ++i)
      out.condition = s.phi.mat[i][u] == s.form3[u][i];
  out.characters_equal = true;
  for (size_t i = 0; i < s.catalog.size() && out.characters_equal; ++i) {
    Pieces ps{i};
    out.characters_equal = x_character(s, ps) == fu_character(s, ps);
  }
  out.ok = out.condition == out.characters_equal;
  return out;
}

}  // namespace ccx
