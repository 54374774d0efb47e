#include <iostream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "ccx/verify.hpp"

using namespace ccx;
using nlohmann::ordered_json;

namespace {

std::vector<std::string> stable_labels(const TiltingData& t) {
  return {t.names.begin(), t.names.begin() + (long)t.r};
}

int cmd_character(const Fixture& f, const std::string& name, const std::string& formula) {
  size_t i = f.catalog_index(name);
  LaurentPoly val = formula == "fu"     ? fu_character(f.setup, Pieces{i})
                    : formula == "palu" ? palu_character(f.setup, Pieces{i})
                                        : x_character(f.setup, Pieces{i});
  if (f.cfg.machine) {
    ordered_json j;
    j["module"] = name;
    j["formula"] = formula;
    j["character"] = val.str();
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << val.str() << "\n";
  }
  return 0;
}

int cmd_index(const Fixture& f, const std::string& name) {
  K0Vector v = index_vector(f.setup.t, f.setup.catalog[f.catalog_index(name)]);
  if (f.cfg.machine) {
    ordered_json j;
    j["module"] = name;
    j["index"] = v.str(f.setup.t.names);
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << v.str(f.setup.t.names) << "\n";
  }
  return 0;
}

int cmd_theta(const Fixture& f, const std::string& name) {
  K0Vector v = theta_vector(f.setup.t, f.setup.catalog[f.catalog_index(name)]);
  if (f.cfg.machine) {
    ordered_json j;
    j["module"] = name;
    j["theta"] = v.str(f.setup.t.names);
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << v.str(f.setup.t.names) << "\n";
  }
  return 0;
}

int cmd_phi(const Fixture& f) {
  const PhiResult& phi = f.setup.phi;
  const TiltingData& t = f.setup.t;
  if (f.cfg.machine) {
    ordered_json j;
    j["rows"] = t.names;
    j["cols"] = stable_labels(t);
    j["matrix"] = phi.mat;
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << "columns:";
    for (const std::string& c : stable_labels(t)) std::cout << " [" << c << "]";
    std::cout << "\n";
    for (size_t i = 0; i < phi.n; ++i) {
      std::cout << "[" << t.names[i] << "]:";
      for (size_t j = 0; j < phi.r; ++j) std::cout << " " << phi.mat[i][j];
      std::cout << "\n";
    }
  }
  return 0;
}

int cmd_catalog(const Fixture& f) {
  const auto& s = f.setup;
  const auto& blocks = s.t.L->block_names;
  auto in_generator = [&](size_t i) {
    for (size_t p : f.tilt_pieces)
      if (p == i) return true;
    return false;
  };
  if (f.cfg.machine) {
    ordered_json j = ordered_json::array();
    for (size_t i = 0; i < s.catalog.size(); ++i) {
      ordered_json e;
      e["name"] = s.catalog_names[i];
      ordered_json dims;
      auto d = s.catalog[i].dims_by_block();
      for (size_t v = 0; v < blocks.size(); ++v) dims[blocks[v]] = d[v];
      e["dims"] = std::move(dims);
      e["total"] = s.catalog[i].dim();
      e["generator"] = in_generator(i);
      j.push_back(std::move(e));
    }
    std::cout << j.dump(2) << "\n";
  } else {
    for (size_t i = 0; i < s.catalog.size(); ++i) {
      std::cout << s.catalog_names[i] << "  dims";
      auto d = s.catalog[i].dims_by_block();
      for (size_t v = 0; v < blocks.size(); ++v)
        std::cout << " " << blocks[v] << ":" << d[v];
      std::cout << "  total " << s.catalog[i].dim();
      if (in_generator(i)) std::cout << "  generator";
      std::cout << "\n";
    }
  }
  return 0;
}

int cmd_verify(const Fixture& f, VerifySelection sel) {
  VerifyReport rep = run_verify(f, sel);
  if (f.cfg.machine)
    std::cout << report_json(rep).dump(2) << "\n";
  else
    std::cout << report_text(rep);
  return rep.ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact cluster characters over self-injective bound quiver algebras"};
  app.require_subcommand(1);

  RunConfig cfg;
  app.add_option("--fixture", cfg.dir, "fixture directory")->required();
  app.add_option("--prime", cfg.prime, "working prime (0 takes the fixture's)");
  app.add_option("--primes", cfg.counting_primes, "point-count primes, comma separated")
      ->delimiter(',');
  app.add_option("--enum-cap", cfg.enum_cap, "submodule enumeration dimension cap");
  app.add_option("--seed", cfg.seed, "seed echoed into reports");
  app.add_flag("--json", cfg.machine, "machine-readable output");

  std::string char_module, formula = "x";
  auto* character = app.add_subcommand("character", "evaluate a cluster character");
  character->add_option("module", char_module, "catalog module name")->required();
  character->add_option("--formula", formula, "x, fu, or palu")
      ->check(CLI::IsMember({"x", "fu", "palu"}));

  std::string index_module;
  auto* index = app.add_subcommand("index", "index of a catalog module");
  index->add_option("module", index_module, "catalog module name")->required();

  std::string theta_module;
  auto* theta = app.add_subcommand("theta", "projective-presentation class of a catalog module");
  theta->add_option("module", theta_module, "catalog module name")->required();

  auto* phi = app.add_subcommand("phi", "print the descent matrix");

  bool v_mult = false, v_tt = false, v_spec = false, v_all = false;
  auto* verify = app.add_subcommand("verify", "run invariant suites");
  verify->add_flag("--multiplication", v_mult, "exchange products against extension middles");
  verify->add_flag("--condition-tt", v_tt, "character equality against the index-form condition");
  verify->add_flag("--specialize", v_spec, "specialization onto the stable variables");
  verify->add_flag("--all", v_all, "every suite (the default)");

  auto* catalog = app.add_subcommand("catalog", "list the fixture catalog");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  if (v_mult + v_tt + v_spec + v_all > 1) {
    std::cerr << "error: choose at most one verify suite\n";
    return 2;
  }

  try {
    Fixture f = load_fixture(cfg);
    if (*character) return cmd_character(f, char_module, formula);
    if (*index) return cmd_index(f, index_module);
    if (*theta) return cmd_theta(f, theta_module);
    if (*phi) return cmd_phi(f);
    if (*catalog) return cmd_catalog(f);
    VerifySelection sel = v_mult   ? VerifySelection::Multiplication
                          : v_tt   ? VerifySelection::ConditionTT
                          : v_spec ? VerifySelection::Specialize
                                   : VerifySelection::All;
    return cmd_verify(f, sel);
  } catch (const FixtureError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
