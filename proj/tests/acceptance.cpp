/* Acceptance gate: one line per criterion, nonzero exit if any fails. */

#include <sys/wait.h>

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "ccx/verify.hpp"

using namespace ccx;

namespace {

struct Failure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void require(bool ok, const std::string& why) {
  if (!ok) throw Failure(why);
}

std::string fixture_dir(const char* name) {
  return std::string(CCX_FIXTURE_ROOT) + "/" + name;
}

const Fixture& a2() {
  static Fixture f = [] {
    RunConfig cfg;
    cfg.dir = fixture_dir("a2_preprojective");
    return load_fixture(cfg);
  }();
  return f;
}

const Fixture& a3() {
  static Fixture f = [] {
    RunConfig cfg;
    cfg.dir = fixture_dir("a3_preprojective");
    return load_fixture(cfg);
  }();
  return f;
}

K0Vector k0(std::vector<long long> entries) {
  K0Vector v(entries.size());
  for (size_t i = 0; i < entries.size(); ++i) v[i] = entries[i];
  return v;
}

int run_cli(const std::string& args, std::string& out) {
  std::string cmd = std::string(CCX_CLI_PATH) + " " + args + " 2>/dev/null";
  FILE* p = popen(cmd.c_str(), "r");
  require(p != nullptr, "cannot spawn the tool");
  char buf[4096];
  size_t got;
  out.clear();
  while ((got = fread(buf, 1, sizeof buf, p)) > 0) out.append(buf, got);
  int st = pclose(p);
  require(WIFEXITED(st), "tool did not exit normally");
  return WEXITSTATUS(st);
}

/* 1: structure constants of the bundled category, fresh load included. */
void golden_values() {
  RunConfig cfg;
  cfg.dir = fixture_dir("a2_preprojective");
  Fixture f = load_fixture(cfg);
  const CharacterSetup& s = f.setup;
  const TiltingData& t = s.t;

  using Mat = std::vector<std::vector<long long>>;
  Mat cartan = cartan_matrix(*t.B.alg);
  require(cartan == Mat{{1, 0, 1}, {1, 1, 1}, {0, 1, 1}}, "Cartan matrix mismatch");
  Mat euler = euler_matrix(*t.B.alg);
  require(euler == Mat{{0, -1, 1}, {1, 1, -1}, {-1, 0, 1}}, "Euler matrix mismatch");
  require(s.form3[0][1] == -1, "truncated pairing (1,2) is not -1");
  require(s.form3[0][2] == 1, "truncated pairing (1,3) is not 1");

  size_t one = f.catalog_index("T1"), two = f.catalog_index("M");
  require(theta_vector(t, s.catalog[one]) == k0({0, -1, 1}), "theta of the first simple mismatch");
  require(index_vector(t, s.catalog[two]) == k0({-1, 0, 1}), "index of the second simple mismatch");
  require(op_index_vector(t, s.catalog[two]) == k0({-1, 1, 0}),
          "opposite index of the second simple mismatch");
}

/* 2: exact character values, with the nonrigid one double-checked by the
 * exchange relation x(S1) * x(S2) = x2 + x3. */
void character_values() {
  const Fixture& f = a2();
  const CharacterSetup& s = f.setup;
  for (size_t i = 0; i < 3; ++i)
    require(x_character(s, Pieces{f.tilt_pieces[i]}) == LaurentPoly::variable(3, (int)i),
            "unit character mismatch at " + s.t.names[i]);
  size_t m = f.catalog_index("M");
  LaurentPoly xm = x_character(s, Pieces{m});
  require(xm.str() == "x1^-1*x2 + x1^-1*x3", "nonrigid character is " + xm.str());
  LaurentPoly lhs = x_character(s, Pieces{f.catalog_index("T1")}) * xm;
  require(lhs == LaurentPoly::variable(3, 1) + LaurentPoly::variable(3, 2),
          "exchange relation cross-check failed");
  for (size_t i = 0; i < s.catalog.size(); ++i)
    require(fu_character(s, Pieces{i}) == x_character(s, Pieces{i}),
            "homological character differs at " + s.catalog_names[i]);
}

/* 3: every unordered catalog pair with one-dimensional extensions. */
void multiplication_suite() {
  const CharacterSetup& s = a2().setup;
  size_t found = 0;
  for (size_t i = 0; i < s.catalog.size(); ++i)
    for (size_t j = i + 1; j < s.catalog.size(); ++j) {
      if (ext1(s.catalog[i], s.catalog[j]).dim != 1) continue;
      if (ext1(s.catalog[j], s.catalog[i]).dim != 1) continue;
      ++found;
      MultiplicationCheck mc = check_multiplication(s, s.catalog[i], s.catalog[j]);
      require(mc.ok, "product " + mc.lhs.str() + " vs middle sum " + mc.rhs.str());
    }
  require(found == 1, "expected exactly one one-dimensional pair, saw " + std::to_string(found));
}

/* 4: the overdetermined descent system is consistent and the index is
 * additive on every generated conflation. */
void descent_suite() {
  const Fixture& f = a2();
  const CharacterSetup& s = f.setup;
  PhiResult phi = phi_matrix(s.t, s.catalog);
  require(phi.mat == s.phi.mat, "descent matrix is not reproducible");
  for (size_t i = 0; i < s.catalog.size(); ++i)
    require(theta_vector(s.t, s.catalog[i]) ==
                phi.apply(g_module(s.t, s.catalog[i]).M.dims_by_block()),
            "descent fails at " + s.catalog_names[i]);
  auto confs = detail::verification_conflations(s);
  require(confs.size() >= 6, "too few conflations: " + std::to_string(confs.size()));
  for (const auto& [label, ses] : confs) {
    IndexAdditivity ia = check_index_additivity(s.t, s.phi, ses);
    require(ia.ok, label + ": " + ia.lhs.str(s.t.names) + " vs " + ia.rhs.str(s.t.names));
  }
}

/* 5: all three characters coincide once the non-stable variables are set
 * to one, on every indecomposable. */
void specialization_suite() {
  const CharacterSetup& s = a2().setup;
  int r = (int)s.t.r;
  for (size_t i = 0; i < s.catalog.size(); ++i) {
    LaurentPoly a = x_character(s, Pieces{i}).keep_prefix(r);
    LaurentPoly b = fu_character(s, Pieces{i}).keep_prefix(r);
    LaurentPoly c = palu_character(s, suspend(s.catalog[i]));
    require(a == c, s.catalog_names[i] + ": " + a.str() + " vs " + c.str());
    require(b == c, s.catalog_names[i] + " (homological): " + b.str() + " vs " + c.str());
  }
}

/* 6: the point-count oracle. One copy of the stable simple carries a single
 * submodule of class (1); two copies carry q + 1 of them, and the
 * interpolation must hit chi = 2 with every surplus count reproduced. */
void grassmannian_oracle() {
  const Fixture& f = a2();
  const CharacterSetup& s = f.setup;
  std::vector<std::pair<long long, long long>> one_pts, two_pts;
  for (size_t u = 0; u < s.counting.size(); ++u) {
    long long q = f.cfg.counting_primes[u];
    Module S = simple_module(s.counting[u].C.alg, 0);
    auto single = enumerate_submodules(S, s.dim_cap).by_class;
    require(single.at({1}) == 1, "single copy count is not 1 at q = " + std::to_string(q));
    Module SS = direct_sum(s.counting[u].C.alg, {S, S}).M;
    auto doubled = enumerate_submodules(SS, s.dim_cap).by_class;
    require(doubled.at({1}) == q + 1,
            "pair count at q = " + std::to_string(q) + " is " + std::to_string(doubled.at({1})));
    one_pts.push_back({q, single.at({1})});
    two_pts.push_back({q, doubled.at({1})});
  }
  EulerChar e1 = euler_char_from_counts(one_pts, grassmann_degree_bound({1}, {1}));
  require(e1.chi == 1, "single-copy Euler characteristic is " + std::to_string(e1.chi));
  EulerChar e2 = euler_char_from_counts(two_pts, grassmann_degree_bound({2}, {1}));
  require(e2.chi == 2, "pair Euler characteristic is " + std::to_string(e2.chi));
}

/* 7: randomized and exhaustive structural suites over both fixtures. */
void structural_suites() {
  const Fixture& f = a2();
  const CharacterSetup& s = f.setup;
  std::mt19937_64 rng(f.cfg.seed);
  std::uniform_int_distribution<size_t> npieces(1, 3), pick(0, s.catalog.size() - 1);
  auto random_module = [&] {
    std::vector<Module> parts;
    size_t k = npieces(rng);
    for (size_t i = 0; i < k; ++i) parts.push_back(s.catalog[pick(rng)]);
    return direct_sum(s.t.L, parts).M;
  };
  for (int trial = 0; trial < 200; ++trial) {
    Module M = random_module(), N = random_module();
    Module sum = direct_sum(s.t.L, {M, N}).M;
    require(index_vector(s.t, sum) == index_vector(s.t, M) + index_vector(s.t, N),
            "index not additive on a random pair at trial " + std::to_string(trial));
    require(op_index_vector(s.t, sum) == op_index_vector(s.t, M) + op_index_vector(s.t, N),
            "opposite index not additive on a random pair at trial " + std::to_string(trial));
  }

  for (const Fixture* fp : {&a2(), &a3()}) {
    const CharacterSetup& cs = fp->setup;
    for (size_t i = 0; i < cs.catalog.size(); ++i) theta_vector(cs.t, cs.catalog[i]);
    for (size_t i = 0; i < cs.t.T.size(); ++i)
      for (size_t j = 0; j < cs.t.T.size(); ++j)
        require(stable_hom(cs.t.T[i], suspend(cs.t.T[j])).dim == 0,
                "stable maps into a shifted summand at (" + cs.t.names[i] + ", " +
                    cs.t.names[j] + ")");
    for (size_t i = 0; i < cs.catalog.size(); ++i)
      for (size_t j = i; j < cs.catalog.size(); ++j)
        require(ext1(cs.catalog[i], cs.catalog[j]).dim == ext1(cs.catalog[j], cs.catalog[i]).dim,
                "extension asymmetry at (" + cs.catalog_names[i] + ", " + cs.catalog_names[j] + ")");
    for (size_t k = 2; k <= 3; ++k)
      for (size_t i = 0; i < cs.catalog.size(); ++i)
        for (size_t j = 0; j < cs.catalog.size(); ++j)
          require(higher_ext_check(cs.catalog[i], cs.catalog[j], k),
                  "degree " + std::to_string(k) + " extension shift fails at (" +
                      cs.catalog_names[i] + ", " + cs.catalog_names[j] + ")");
  }
}

/* 8: byte-identical reports across runs and prime-independent integer
 * output, both through the installed tool. */
void determinism() {
  std::string dir = fixture_dir("a2_preprojective");
  std::string base = "--fixture " + dir + " ";

  std::string r1, r2;
  require(run_cli(base + "--seed 0 --prime 101 verify --all", r1) == 0, "verification run failed");
  require(run_cli(base + "--seed 0 --prime 101 verify --all", r2) == 0, "verification rerun failed");
  require(!r1.empty() && r1 == r2, "reports differ between identical runs");

  std::string j1, j2;
  require(run_cli(base + "--json --seed 0 verify --all", j1) == 0, "machine report failed");
  require(run_cli(base + "--json --seed 0 verify --all", j2) == 0, "machine report rerun failed");
  require(!j1.empty() && j1 == j2, "machine reports differ between identical runs");

  const char* cmds[] = {"character M",  "character M --formula fu", "character M --formula palu",
                        "character T1", "index M",                  "theta T1",
                        "phi",          "catalog"};
  for (const char* cmd : cmds) {
    std::string low, high;
    require(run_cli(base + "--prime 101 " + cmd, low) == 0,
            std::string("command failed at 101: ") + cmd);
    require(run_cli(base + "--prime 211 " + cmd, high) == 0,
            std::string("command failed at 211: ") + cmd);
    require(!low.empty() && low == high, std::string("output differs across primes: ") + cmd);
  }
}

struct Criterion {
  const char* label;
  double budget_s;  // 0: no wall-clock bound
  std::function<void()> body;
};

}  // namespace

int main() {
  std::vector<Criterion> criteria = {
      {"golden structure constants", 5.0, golden_values},
      {"exact character values", 0.0, character_values},
      {"multiplication suite", 1.0, multiplication_suite},
      {"descent and conflation additivity", 1.0, descent_suite},
      {"specialization agreement", 1.0, specialization_suite},
      {"point-count oracle", 0.0, grassmannian_oracle},
      {"randomized structural suites", 30.0, structural_suites},
      {"determinism and prime independence", 0.0, determinism},
  };

  bool all = true;
  for (size_t i = 0; i < criteria.size(); ++i) {
    auto t0 = std::chrono::steady_clock::now();
    std::string err;
    try {
      criteria[i].body();
    } catch (const std::exception& e) {
      err = e.what();
    }
    double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (err.empty() && criteria[i].budget_s > 0 && dt > criteria[i].budget_s)
      err = "took " + std::to_string(dt) + " s, budget " + std::to_string(criteria[i].budget_s);
    if (err.empty()) {
      std::printf("PASS %zu %s (%.2f s)\n", i + 1, criteria[i].label, dt);
    } else {
      std::printf("FAIL %zu %s: %s\n", i + 1, criteria[i].label, err.c_str());
      all = false;
    }
  }
  std::printf("%s\n", all ? "acceptance: all criteria pass" : "acceptance: FAIL");
  return all ? 0 : 1;
}
