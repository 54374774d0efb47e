#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "ccx/fixture.hpp"

using namespace ccx;
namespace fs = std::filesystem;

namespace {

const std::string root = CCX_FIXTURE_ROOT;

void write_file(const fs::path& p, const std::string& text) {
  fs::create_directories(p.parent_path());
  std::ofstream out(p);
  out << text;
}

/* Scratch fixture directory with the bundled content, for targeted edits. */
fs::path scratch_copy(const std::string& tag) {
  fs::path dst = fs::temp_directory_path() / ("ccx_fixture_" + tag);
  fs::remove_all(dst);
  fs::create_directories(dst);
  fs::copy(root + "/a2_preprojective", dst, fs::copy_options::recursive);
  return dst;
}

}  // namespace

TEST_CASE("bundled fixture loads with the expected shape") {
  Fixture f = load_fixture({root + "/a2_preprojective"});
  CHECK(f.cfg.prime == 101);
  CHECK(f.setup.t.r == 1);
  CHECK(f.setup.t.T.size() == 3);
  CHECK(f.setup.catalog_names == std::vector<std::string>{"T1", "T2", "T3", "M"});
  CHECK(f.tilt_pieces == std::vector<size_t>{0, 1, 2});
  CHECK(f.setup.phi.mat == std::vector<std::vector<long long>>{{0}, {-1}, {1}});
  CHECK(f.catalog_index("M") == 3);
  CHECK_THROWS_AS(f.catalog_index("nope"), FixtureError);

  // characters come out in fixture order
  CHECK(x_character(f.setup, Pieces{3}).str() == "x1^-1*x2 + x1^-1*x3");
  CHECK(x_character(f.setup, Pieces{0}) == LaurentPoly::variable(3, 0));
}

TEST_CASE("fixture loads at an alternative prime") {
  RunConfig cfg{root + "/a2_preprojective"};
  cfg.prime = 211;
  Fixture f = load_fixture(cfg);
  CHECK(f.setup.t.L->p == 211);
  CHECK(f.setup.phi.mat == std::vector<std::vector<long long>>{{0}, {-1}, {1}});
  CHECK(x_character(f.setup, Pieces{3}).str() == "x1^-1*x2 + x1^-1*x3");
}

TEST_CASE("module files reject malformed matrices") {
  auto A = load_algebra_file(root + "/a2_preprojective/algebra.json");
  fs::path dir = fs::temp_directory_path() / "ccx_fixture_modules";
  fs::remove_all(dir);

  write_file(dir / "bad_shape.json", R"({"name":"X","dims":{"1":1,"2":1},"action":{"a":[[1],[2]]}})");
  CHECK_THROWS_WITH(load_module_file((dir / "bad_shape.json").string(), A),
                    Catch::Matchers::ContainsSubstring("rows"));

  write_file(dir / "bad_vertex.json", R"({"name":"X","dims":{"7":1}})");
  CHECK_THROWS_AS(load_module_file((dir / "bad_vertex.json").string(), A), FixtureError);

  write_file(dir / "bad_arrow.json", R"({"name":"X","dims":{"1":1},"action":{"z":[[1]]}})");
  CHECK_THROWS_AS(load_module_file((dir / "bad_arrow.json").string(), A), FixtureError);

  // negative entries reduce into the field
  write_file(dir / "neg.json", R"({"name":"X","dims":{"1":1,"2":1},"action":{"a":[[-1]]}})");
  NamedModule nm = load_module_file((dir / "neg.json").string(), A);
  size_t k = 0;
  while (A->names[k] != "a") ++k;
  CHECK(nm.M.act[k].at(1, 0) == 100);
}

TEST_CASE("hereditary algebra is rejected as not self-injective") {
  fs::path dir = fs::temp_directory_path() / "ccx_fixture_hereditary";
  fs::remove_all(dir);
  write_file(dir / "algebra.json", R"({
    "vertices": ["1", "2"],
    "arrows": [{"name": "a", "from": "1", "to": "2"}],
    "relations": [],
    "prime": 101
  })");
  write_file(dir / "modules/S1.json", R"({"name":"S1","dims":{"1":1}})");
  write_file(dir / "modules/P1.json", R"({"name":"P1","dims":{"1":1,"2":1},"action":{"a":[[1]]}})");
  write_file(dir / "modules/S2.json", R"({"name":"S2","dims":{"2":1}})");
  write_file(dir / "category.json", R"({
    "algebra": "algebra.json",
    "modules": ["modules/S1.json", "modules/P1.json", "modules/S2.json"],
    "tilting": ["S1", "P1", "S2"]
  })");
  CHECK_THROWS_WITH(load_fixture({dir.string()}),
                    Catch::Matchers::ContainsSubstring("not self-injective"));
}

TEST_CASE("incomplete tilting lists are rejected") {
  fs::path dir = scratch_copy("short_tilting");
  write_file(dir / "category.json", R"({
    "algebra": "algebra.json",
    "modules": ["modules/T1.json", "modules/T2.json", "modules/T3.json", "modules/M.json"],
    "tilting": ["T2", "T3"]
  })");
  CHECK_THROWS_WITH(load_fixture({dir.string()}),
                    Catch::Matchers::ContainsSubstring("generator rejected"));

  write_file(dir / "category.json", R"({
    "algebra": "algebra.json",
    "modules": ["modules/T1.json", "modules/T2.json", "modules/T3.json", "modules/M.json"],
    "tilting": ["T1", "T2", "Q"]
  })");
  CHECK_THROWS_WITH(load_fixture({dir.string()}),
                    Catch::Matchers::ContainsSubstring("not in the catalog"));
}

TEST_CASE("corrupted action matrices are rejected") {
  fs::path dir = scratch_copy("corrupt");
  // making both arrows act invertibly violates the vanishing of the loops
  write_file(dir / "modules/T2.json",
             R"({"name":"T2","dims":{"1":1,"2":1},"action":{"a":[[1]],"b":[[1]]}})");
  CHECK_THROWS_AS(load_fixture({dir.string()}), FixtureError);

  // zeroing the action leaves a decomposable catalog entry
  fs::path dir2 = scratch_copy("decomposable");
  write_file(dir2 / "modules/T2.json", R"({"name":"T2","dims":{"1":1,"2":1},"action":{}})");
  CHECK_THROWS_WITH(load_fixture({dir2.string()}),
                    Catch::Matchers::ContainsSubstring("not indecomposable"));
}

TEST_CASE("missing files and bad schemas are rejected") {
  CHECK_THROWS_AS(load_fixture({"/nonexistent/dir"}), FixtureError);

  fs::path dir = scratch_copy("no_algebra");
  fs::remove(dir / "algebra.json");
  CHECK_THROWS_AS(load_fixture({dir.string()}), FixtureError);

  fs::path dir2 = scratch_copy("bad_json");
  write_file(dir2 / "category.json", "{not json");
  CHECK_THROWS_AS(load_fixture({dir2.string()}), FixtureError);

  fs::path dir3 = scratch_copy("no_tilting_key");
  write_file(dir3 / "category.json", R"({
    "algebra": "algebra.json",
    "modules": ["modules/T1.json"]
  })");
  CHECK_THROWS_AS(load_fixture({dir3.string()}), FixtureError);
}

TEST_CASE("degenerate prime configurations are rejected") {
  RunConfig cfg{root + "/a2_preprojective"};
  cfg.counting_primes = {2, 3, 101};
  CHECK_THROWS_WITH(load_fixture(cfg), Catch::Matchers::ContainsSubstring("differ from the main"));

  RunConfig cfg2{root + "/a2_preprojective"};
  cfg2.counting_primes = {2, 3, 3};
  CHECK_THROWS_WITH(load_fixture(cfg2), Catch::Matchers::ContainsSubstring("repeat"));

  RunConfig cfg3{root + "/a2_preprojective"};
  cfg3.counting_primes = {2, 3, 4};
  CHECK_THROWS_WITH(load_fixture(cfg3), Catch::Matchers::ContainsSubstring("not prime"));
}
