#pragma once

#include <algorithm>
#include <fstream>
#include <memory>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "ccx/character.hpp"
#include "ccx/frobenius.hpp"
#include "ccx/tilting.hpp"

namespace ccx {

/* Problems with fixture files or their mathematical validity.  The CLI maps
 * these to its schema-error exit code. */
struct FixtureError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  std::string dir;
  uint32_t prime = 0;  // 0 takes the prime recorded in the algebra file
  std::vector<uint32_t> counting_primes{2, 3, 5, 7, 11};
  size_t enum_cap = 8;
  uint64_t seed = 0;
  bool machine = false;  // JSON output instead of text
};

namespace detail {

inline nlohmann::json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw FixtureError("cannot open " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const std::exception& e) {
    throw FixtureError(path + ": " + std::string(e.what()));
  }
  return j;
}

inline uint32_t reduce_mod(long long x, uint32_t p) {
  long long r = x % (long long)p;
  if (r < 0) r += p;
  return (uint32_t)r;
}

}  // namespace detail

/* Algebra file: named vertices, arrows with endpoints, relations as lists of
 * coeff/path terms with arrow names in application order (rightmost acts
 * first), and the default prime. */
inline std::shared_ptr<const Algebra> load_algebra_file(const std::string& path,
                                                        uint32_t prime = 0) {
  nlohmann::json j = detail::read_json_file(path);
  try {
    Quiver q;
    for (const auto& v : j.at("vertices")) q.vertex_names.push_back(v.get<std::string>());
    for (const auto& a : j.at("arrows"))
      q.arrows.push_back({a.at("name").get<std::string>(),
                          q.vertex_index(a.at("from").get<std::string>()),
                          q.vertex_index(a.at("to").get<std::string>())});
    std::vector<Relation> rels;
    if (j.contains("relations"))
      for (const auto& r : j.at("relations")) {
        Relation rel;
        for (const auto& t : r) {
          RelationTerm term;
          term.coeff = t.at("coeff").get<long long>();
          for (const auto& s : t.at("path")) term.path.push_back(s.get<std::string>());
          rel.push_back(std::move(term));
        }
        rels.push_back(std::move(rel));
      }
    uint32_t p = prime ? prime : j.at("prime").get<uint32_t>();
    return std::make_shared<Algebra>(build_algebra(q, rels, p));
  } catch (const FixtureError&) {
    throw;
  } catch (const std::exception& e) {
    throw FixtureError(path + ": " + std::string(e.what()));
  }
}

struct NamedModule {
  std::string name;
  Module M;
};

/* Module file: per-vertex dimensions (absent vertices are zero) and one
 * matrix per arrow keyed by arrow name, shape d_to x d_from, absent arrows
 * acting by zero.  Entries are integers reduced mod p at load. */
inline NamedModule load_module_file(const std::string& path,
                                    std::shared_ptr<const Algebra> A) {
  nlohmann::json j = detail::read_json_file(path);
  const Quiver& q = *A->quiver;
  uint32_t p = A->p;
  try {
    std::string name = j.at("name").get<std::string>();
    std::vector<size_t> dims(q.nv(), 0);
    for (const auto& [key, val] : j.at("dims").items())
      dims[q.vertex_index(key)] = val.get<size_t>();
    std::vector<FpMatrix> act;
    for (const auto& ar : q.arrows) act.push_back(FpMatrix(p, dims[ar.to], dims[ar.from]));
    if (j.contains("action"))
      for (const auto& [key, rows] : j.at("action").items()) {
        size_t a = q.arrow_index(key);
        size_t nr = q.arrows[a].to, nc = q.arrows[a].from;
        if (rows.size() != dims[nr])
          throw FixtureError(path + ": matrix for arrow " + key + " has " +
                             std::to_string(rows.size()) + " rows, expected " +
                             std::to_string(dims[nr]));
        FpMatrix m(p, dims[nr], dims[nc]);
        for (size_t i = 0; i < dims[nr]; ++i) {
          if (rows[i].size() != dims[nc])
            throw FixtureError(path + ": matrix for arrow " + key + " has a row of length " +
                               std::to_string(rows[i].size()) + ", expected " +
                               std::to_string(dims[nc]));
          for (size_t c = 0; c < dims[nc]; ++c)
            m.at(i, c) = detail::reduce_mod(rows[i][c].get<long long>(), p);
        }
        act[a] = std::move(m);
      }
    return NamedModule{std::move(name), module_from_arrow_actions(A, dims, act)};
  } catch (const FixtureError&) {
    throw;
  } catch (const std::exception& e) {
    throw FixtureError(path + ": " + std::string(e.what()));
  }
}

/* A loaded and fully validated fixture: the character setup plus the catalog
 * positions of the chosen summands. */
struct Fixture {
  RunConfig cfg;
  CharacterSetup setup;
  std::vector<size_t> tilt_pieces;  // catalog index of each summand, in order

  size_t catalog_index(const std::string& name) const {
    for (size_t i = 0; i < setup.catalog_names.size(); ++i)
      if (setup.catalog_names[i] == name) return i;
    throw FixtureError("unknown module " + name);
  }
};

namespace detail {

struct InstanceData {
  std::shared_ptr<const Algebra> A;
  std::vector<Module> catalog;
  std::vector<std::string> names;
  TiltingData t;
};

}  // namespace detail

/* Category file: the algebra, the indecomposable catalog, and which catalog
 * entries form the rigid generator.  Loading validates everything the engine
 * relies on: self-injectivity, symmetric extension spaces, the generator
 * being cluster-tilting, and catalog indecomposability. */
inline Fixture load_fixture(RunConfig cfg) {
  nlohmann::json cat = detail::read_json_file(cfg.dir + "/category.json");
  std::string alg_path;
  std::vector<std::string> module_paths, tilt_names;
  try {
    alg_path = cat.at("algebra").get<std::string>();
    for (const auto& m : cat.at("modules")) module_paths.push_back(m.get<std::string>());
    for (const auto& t : cat.at("tilting")) tilt_names.push_back(t.get<std::string>());
  } catch (const std::exception& e) {
    throw FixtureError(cfg.dir + "/category.json: " + std::string(e.what()));
  }
  if (module_paths.empty()) throw FixtureError("category lists no modules");
  if (tilt_names.empty()) throw FixtureError("category lists no tilting summands");

  for (uint32_t q : cfg.counting_primes) {
    if (!is_prime_u32(q)) throw FixtureError("counting modulus " + std::to_string(q) + " is not prime");
    if (std::count(cfg.counting_primes.begin(), cfg.counting_primes.end(), q) != 1)
      throw FixtureError("counting primes repeat " + std::to_string(q));
  }

  auto load_raw = [&](uint32_t prime) -> detail::InstanceData {
    detail::InstanceData d;
    d.A = load_algebra_file(cfg.dir + "/" + alg_path, prime);
    for (const auto& mp : module_paths) {
      NamedModule nm = load_module_file(cfg.dir + "/" + mp, d.A);
      for (const auto& seen : d.names)
        if (seen == nm.name) throw FixtureError("duplicate module name " + nm.name);
      d.names.push_back(std::move(nm.name));
      d.catalog.push_back(std::move(nm.M));
    }
    return d;
  };
  auto pick_tilting = [&](const detail::InstanceData& d) -> std::vector<Module> {
    std::vector<Module> T;
    for (const auto& tn : tilt_names) {
      auto it = std::find(d.names.begin(), d.names.end(), tn);
      if (it == d.names.end()) throw FixtureError("tilting summand " + tn + " is not in the catalog");
      T.push_back(d.catalog[it - d.names.begin()]);
    }
    return T;
  };

  detail::InstanceData main = load_raw(cfg.prime);
  uint32_t p = main.A->p;
  for (uint32_t q : cfg.counting_primes)
    if (q == p) throw FixtureError("counting primes must differ from the main prime");

  SelfInjectivity si = check_self_injective(main.A);
  if (!si.ok) throw FixtureError("algebra is not self-injective: " + si.reason);

  for (size_t i = 0; i < main.catalog.size(); ++i)
    if (!is_indecomposable_certified(main.catalog[i]))
      throw FixtureError("catalog entry " + main.names[i] + " is not indecomposable");

  for (size_t i = 0; i < main.catalog.size(); ++i)
    for (size_t j = i; j < main.catalog.size(); ++j) {
      size_t ij = ext1(main.catalog[i], main.catalog[j]).dim;
      size_t ji = ext1(main.catalog[j], main.catalog[i]).dim;
      if (ij != ji)
        throw FixtureError("extension spaces are asymmetric for (" + main.names[i] + ", " +
                           main.names[j] + "): dimensions " + std::to_string(ij) + " and " +
                           std::to_string(ji));
    }

  try {
    main.t = make_tilting(main.A, pick_tilting(main), tilt_names, true);
  } catch (const FixtureError&) {
    throw;
  } catch (const std::exception& e) {
    throw FixtureError("generator rejected: " + std::string(e.what()));
  }

  TiltingVerdict tv = verify_cluster_tilting(main.t.T, main.t.names, main.catalog, main.names);
  if (!tv.ok) throw FixtureError("generator is not cluster-tilting: " + tv.detail);

  std::vector<TiltingData> counting;
  std::vector<std::vector<Module>> counting_catalog;
  for (uint32_t q : cfg.counting_primes) {
    detail::InstanceData inst = load_raw(q);
    try {
      inst.t = make_tilting(inst.A, pick_tilting(inst), tilt_names, false);
    } catch (const FixtureError&) {
      throw;
    } catch (const std::exception& e) {
      throw FixtureError("generator rejected: " + std::string(e.what()));
    }
    counting.push_back(std::move(inst.t));
    counting_catalog.push_back(std::move(inst.catalog));
  }

  Fixture f;
  f.cfg = std::move(cfg);
  f.cfg.prime = p;
  for (const auto& tn : tilt_names) {
    auto it = std::find(main.names.begin(), main.names.end(), tn);
    f.tilt_pieces.push_back(it - main.names.begin());
  }
  try {
    f.setup = make_character_setup(std::move(main.t), std::move(main.catalog),
                                   std::move(main.names), std::move(counting),
                                   std::move(counting_catalog), f.cfg.enum_cap);
  } catch (const std::exception& e) {
    throw FixtureError("index map rejected: " + std::string(e.what()));
  }
  return f;
}

}  // namespace ccx
