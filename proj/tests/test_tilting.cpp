#include <catch2/catch_amalgamated.hpp>

#include "ccx/tilting.hpp"

using namespace ccx;
using LL = std::vector<std::vector<long long>>;

namespace {

std::shared_ptr<const Algebra> lambda(uint32_t p = 101) {
  Quiver q;
  q.vertex_names = {"1", "2"};
  q.arrows = {{"a", 0, 1}, {"b", 1, 0}};
  std::vector<Relation> rel{{{1, {"b", "a"}}}, {{1, {"a", "b"}}}};
  return std::make_shared<Algebra>(build_algebra(q, rel, p));
}

FpMatrix mat(uint32_t p, size_t r, size_t c, std::vector<uint32_t> entries) {
  return FpMatrix::from_flat(p, r, c, std::move(entries));
}

/* Summands of the rigid generator: the first simple, then both projectives. */
struct Fix {
  std::shared_ptr<const Algebra> A;
  Module S1, P1, P2, S2;
  TiltingData t;
  Fix()
      : A(lambda()),
        S1(module_from_arrow_actions(A, {1, 0}, {mat(101, 0, 1, {}), mat(101, 1, 0, {})})),
        P1(module_from_arrow_actions(A, {1, 1}, {mat(101, 1, 1, {1}), mat(101, 1, 1, {0})})),
        P2(module_from_arrow_actions(A, {1, 1}, {mat(101, 1, 1, {0}), mat(101, 1, 1, {1})})),
        S2(module_from_arrow_actions(A, {0, 1}, {mat(101, 1, 0, {}), mat(101, 0, 1, {})})),
        t(make_tilting(A, {S1, P1, P2}, {"T1", "T2", "T3"})) {}

  std::vector<Module> catalog() const { return {S1, S2, P1, P2}; }
};

K0Vector k0(std::vector<long long> v) { return K0Vector(std::move(v)); }

}  // namespace

TEST_CASE("opposite endomorphism algebra of the rigid generator") {
  Fix f;
  const Algebra& B = *f.t.B.alg;
  CHECK(B.dim() == 7);
  CHECK(B.nblocks() == 3);
  CHECK_FALSE(B.graded);

  // hom block dimensions, row u = source summand
  size_t want[3][3] = {{1, 0, 1}, {1, 1, 1}, {0, 1, 1}};
  for (size_t u = 0; u < 3; ++u)
    for (size_t v = 0; v < 3; ++v) CHECK(f.t.B.at[u * 3 + v].size() == want[u][v]);

  CHECK(cartan_matrix(B) == LL{{1, 0, 1}, {1, 1, 1}, {0, 1, 1}});
  CHECK(euler_matrix(B) == LL{{0, -1, 1}, {1, 1, -1}, {-1, 0, 1}});
  CHECK(radical_series(B) == std::vector<size_t>{4, 1, 0});

  // the cover map T2 -> T1 composed with the socle map T1 -> T3 is the only
  // nonzero product of radical basis elements
  size_t q = f.t.B.at[1 * 3 + 0][0];
  size_t io = f.t.B.at[0 * 3 + 2][0];
  size_t iq = f.t.B.at[1 * 3 + 2][0];
  bool hit = false;
  for (size_t k = 0; k < B.dim(); ++k) {
    uint32_t c = B.mult[q][io][k];
    if (k == iq)
      hit = c != 0;
    else
      CHECK(c == 0);
  }
  CHECK(hit);
  for (uint32_t c : B.mult[io][q]) CHECK(c == 0);
}

TEST_CASE("hom functor realizes the Yoneda correspondence") {
  Fix f;
  for (size_t i = 0; i < 3; ++i)
    CHECK(is_isomorphic(f_module(f.t, f.t.T[i]).M, projective_module(f.t.B.alg, i)));
  FunctorModule FS2 = f_module(f.t, f.S2);
  CHECK(FS2.M.dims_by_block() == std::vector<size_t>{0, 0, 1});
  CHECK(is_isomorphic(FS2.M, simple_module(f.t.B.alg, 2)));
}

TEST_CASE("stable endomorphism algebra and stable hom functor") {
  Fix f;
  const Algebra& C = *f.t.C.alg;
  CHECK(C.dim() == 1);
  CHECK(C.nblocks() == 1);
  CHECK(f.t.r == 1);

  CHECK(g_module(f.t, f.S1).M.dims_by_block() == std::vector<size_t>{1});
  CHECK(g_module(f.t, f.S2).M.dim() == 0);
  CHECK(g_module(f.t, f.P1).M.dim() == 0);
  CHECK(g_module(f.t, f.P2).M.dim() == 0);
  CHECK(is_isomorphic(g_module(f.t, f.S1).M, projective_module(f.t.C.alg, 0)));
}

TEST_CASE("ext functor module matches the suspended stable hom") {
  Fix f;
  ExtFunctorModule E = ext_module(f.t, f.S2);
  CHECK(E.M.dims_by_block() == std::vector<size_t>{1});
  CHECK(is_isomorphic(E.M, g_module(f.t, suspend(f.S2)).M));
  CHECK(ext_module(f.t, f.S1).M.dim() == 0);
  CHECK(ext_module(f.t, f.P1).M.dim() == 0);
}

TEST_CASE("minimal approximations by the rigid generator") {
  Fix f;
  Approximation r = minimal_right_approx(f.t, f.S2);
  CHECK(r.mult0 == std::vector<size_t>{0, 0, 1});
  CHECK(r.mult1 == std::vector<size_t>{1, 0, 0});
  CHECK(is_isomorphic(r.other, f.S1));

  Approximation l = minimal_left_approx(f.t, f.S2);
  CHECK(l.mult0 == std::vector<size_t>{0, 1, 0});
  CHECK(l.mult1 == std::vector<size_t>{1, 0, 0});
  CHECK(is_isomorphic(l.other, f.S1));

  // a summand approximates itself
  Approximation rs = minimal_right_approx(f.t, f.S1);
  CHECK(rs.mult0 == std::vector<size_t>{1, 0, 0});
  CHECK(rs.mult1 == std::vector<size_t>{0, 0, 0});

  // the zero module has the empty approximation
  Approximation rz = minimal_right_approx(f.t, zero_module(f.A));
  CHECK(rz.T0.dim() == 0);
}

TEST_CASE("index vectors") {
  Fix f;
  CHECK(index_vector(f.t, f.S2) == k0({-1, 0, 1}));
  CHECK(op_index_vector(f.t, f.S2) == k0({-1, 1, 0}));
  CHECK(index_vector(f.t, f.S1) == k0({1, 0, 0}));
  CHECK(index_vector(f.t, f.P1) == k0({0, 1, 0}));
  CHECK(index_vector(f.t, f.P2) == k0({0, 0, 1}));

  // additive over direct sums
  Module MM = direct_sum(f.A, {f.S1, f.S2}).M;
  CHECK(index_vector(f.t, MM) == k0({0, 0, 1}));

  CHECK(stable_index_vector(f.t, f.S2) == k0({-1}));
  CHECK(stable_index_vector(f.t, f.S1) == k0({1}));
}

TEST_CASE("theta through two independent computations") {
  Fix f;
  CHECK(theta_vector(f.t, f.S1) == k0({0, -1, 1}));
  CHECK(theta_vector(f.t, f.S2) == k0({0, 0, 0}));
  CHECK(theta_vector(f.t, f.P1).is_zero());
  CHECK(theta_vector(f.t, f.P2).is_zero());
  CHECK(theta_vector(f.t, zero_module(f.A)).is_zero());
}

TEST_CASE("phi solved over the catalog") {
  Fix f;
  PhiResult phi = phi_matrix(f.t, f.catalog());
  CHECK(phi.mat == LL{{0}, {-1}, {1}});
  CHECK(phi.apply(std::vector<size_t>{1}) == k0({0, -1, 1}));

  // without the nonprojective module the classes cannot span
  CHECK_THROWS(phi_matrix(f.t, {f.S2, f.P1, f.P2}));
}

TEST_CASE("index additivity over conflations") {
  Fix f;
  PhiResult phi = phi_matrix(f.t, f.catalog());

  IndexAdditivity c = check_index_additivity(f.t, phi, cover_ses(f.S1));
  CHECK(c.ok);
  CHECK_FALSE(c.f_epi);
  CHECK(c.lhs == k0({0, -1, 1}));

  IndexAdditivity s = check_index_additivity(f.t, phi, split_ses(f.A, f.S1, f.S2));
  CHECK(s.ok);
  CHECK(s.f_epi);
  CHECK(s.lhs.is_zero());

  Ext1 e = ext1(f.S1, f.S2);
  REQUIRE(e.dim == 1);
  IndexAdditivity m = check_index_additivity(f.t, phi, extension_middle(e, e.reps[0]));
  CHECK(m.ok);
  CHECK(m.lhs == k0({0, -1, 1}));

  // the hom functor surjective on a conflation forces an additive index
  IndexAdditivity h = check_index_additivity(f.t, phi, hull_ses(f.S2));
  CHECK(h.ok);
  if (h.f_epi) CHECK(h.lhs.is_zero());
}

TEST_CASE("stable index against the suspension") {
  Fix f;
  PhiResult phi = phi_matrix(f.t, f.catalog());
  for (const Module* M : {&f.S1, &f.S2}) {
    auto cls = g_module(f.t, *M).M.dims_by_block();
    K0Vector lhs(f.t.r);
    for (size_t i = 0; i < f.t.r; ++i)
      for (size_t j = 0; j < f.t.r; ++j) lhs[i] += phi.mat[i][j] * (long long)cls[j];
    K0Vector rhs =
        stable_index_vector(f.t, desuspend(*M)) + stable_index_vector(f.t, *M);
    CHECK(lhs == rhs);
  }
}

TEST_CASE("rigid generator recognition") {
  Fix f;
  auto names = std::vector<std::string>{"T1", "T2", "T3"};
  auto cnames = std::vector<std::string>{"1", "2", "P1", "P2"};
  TiltingVerdict ok = verify_cluster_tilting({f.S1, f.P1, f.P2}, names, f.catalog(), cnames);
  CHECK(ok.ok);

  // projectives alone stay rigid after adding the first simple
  TiltingVerdict small = verify_cluster_tilting({f.P1, f.P2}, {"T1", "T2"}, f.catalog(), cnames);
  CHECK_FALSE(small.ok);
  CHECK(small.detail.find("1") != std::string::npos);

  // both simples together are not rigid
  TiltingVerdict big = verify_cluster_tilting({f.S1, f.S2, f.P1, f.P2},
                                              {"T1", "T2", "T3", "T4"}, f.catalog(), cnames);
  CHECK_FALSE(big.ok);
}

TEST_CASE("tilting data construction rejects bad input") {
  Fix f;
  // nonprojective listed after a projective
  CHECK_THROWS(make_tilting(f.A, {f.P1, f.S1, f.P2}, {"T1", "T2", "T3"}));
  // a projective is missing
  CHECK_THROWS(make_tilting(f.A, {f.S1, f.P1}, {"T1", "T2"}));
  // decomposable summand
  Module MM = direct_sum(f.A, {f.S1, f.S2}).M;
  CHECK_THROWS(make_tilting(f.A, {MM, f.P1, f.P2}, {"T1", "T2", "T3"}));
  // repeated summand
  CHECK_THROWS(make_tilting(f.A, {f.S1, f.S1, f.P1, f.P2}, {"T1", "T2", "T3", "T4"}));
  // nothing nonprojective
  CHECK_THROWS(make_tilting(f.A, {f.P1, f.P2}, {"T1", "T2"}));
}

TEST_CASE("endomorphism algebra of the projectives recovers the base") {
  Fix f;
  EndAlgebra E = endomorphism_algebra({f.P1, f.P2}, {"P1", "P2"});
  CHECK(E.alg->dim() == 4);
  CHECK(cartan_matrix(*E.alg) == LL{{1, 1}, {1, 1}});
  CHECK(radical_series(*E.alg) == std::vector<size_t>{2, 0});
}
