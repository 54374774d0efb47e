#pragma once

#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "ccx/character.hpp"
#include "ccx/fixture.hpp"

namespace ccx {

struct CheckResult {
  std::string name;
  bool ok = true;
  size_t cases = 0;
  std::string detail;  // first counterexample when not ok

  CheckResult() = default;
  explicit CheckResult(std::string n) : name(std::move(n)) {}
  CheckResult(std::string n, bool o, size_t c, std::string d)
      : name(std::move(n)), ok(o), cases(c), detail(std::move(d)) {}
};

struct VerifyReport {
  std::string fixture;
  uint32_t prime = 0;
  std::vector<uint32_t> counting_primes;
  size_t enum_cap = 0;
  uint64_t seed = 0;
  std::vector<CheckResult> checks;
  bool ok = true;
};

enum class VerifySelection { All, Multiplication, ConditionTT, Specialize };

namespace detail {

struct LabeledSES {
  std::string label;
  SES s;
};

/* Deterministic conflation stock: covers, hulls, both minimal approximation
 * conflations, split sums, and one middle per nonvanishing extension pair. */
inline std::vector<LabeledSES> verification_conflations(const CharacterSetup& s) {
  std::vector<LabeledSES> out;
  const auto& names = s.catalog_names;
  for (size_t i = 0; i < s.catalog.size(); ++i) {
    const Module& M = s.catalog[i];
    out.push_back({"cover " + names[i], cover_ses(M)});
    out.push_back({"hull " + names[i], hull_ses(M)});
    out.push_back({"right-approx " + names[i], minimal_right_approx(s.t, M).ses});
    out.push_back({"left-approx " + names[i], minimal_left_approx(s.t, M).ses});
  }
  for (size_t i = 0; i < s.catalog.size(); ++i)
    for (size_t j = i; j < s.catalog.size(); ++j) {
      if (i != j)
        out.push_back({"split " + names[i] + "+" + names[j],
                       split_ses(s.t.L, s.catalog[i], s.catalog[j])});
      Ext1 e = ext1(s.catalog[i], s.catalog[j]);
      if (e.dim > 0)
        out.push_back({"extension " + names[i] + "," + names[j],
                       extension_middle(e, e.reps[0])});
    }
  return out;
}

}  // namespace detail

/* Every suite below states a theorem about the loaded category; a failing
 * case is reported with the offending objects and both sides. */
inline VerifyReport run_verify(const Fixture& f, VerifySelection sel = VerifySelection::All) {
  const CharacterSetup& s = f.setup;
  const TiltingData& t = s.t;
  size_t n = t.T.size(), r = t.r, m = s.catalog.size();
  const auto& names = s.catalog_names;

  VerifyReport rep;
  rep.fixture = f.cfg.dir;
  rep.prime = f.cfg.prime;
  rep.counting_primes = f.cfg.counting_primes;
  rep.enum_cap = f.cfg.enum_cap;
  rep.seed = f.cfg.seed;

  auto add = [&](CheckResult c) {
    rep.ok = rep.ok && c.ok;
    rep.checks.push_back(std::move(c));
  };
  auto fail = [](CheckResult& c, std::string d) {
    if (c.ok) {
      c.ok = false;
      c.detail = std::move(d);
    }
  };
  bool all = sel == VerifySelection::All;

  std::vector<LaurentPoly> xs;
  if (all)
    for (size_t i = 0; i < m; ++i) xs.push_back(x_character(s, Pieces{i}));

  if (all) {
    {
      CheckResult c{"index-additivity-sums"};
      for (size_t i = 0; i < m; ++i)
        for (size_t j = i + 1; j < m; ++j) {
          Module sum = direct_sum(t.L, {s.catalog[i], s.catalog[j]}).M;
          ++c.cases;
          if (!(index_vector(t, sum) == index_vector(t, s.catalog[i]) + index_vector(t, s.catalog[j])))
            fail(c, "(" + names[i] + ", " + names[j] + "): index of the sum differs from the sum of indices");
          if (!(op_index_vector(t, sum) ==
                op_index_vector(t, s.catalog[i]) + op_index_vector(t, s.catalog[j])))
            fail(c, "(" + names[i] + ", " + names[j] + "): opposite index of the sum differs from the sum");
        }
      add(std::move(c));
    }
    {
      CheckResult c{"approx-class-identity"};
      for (size_t i = 0; i < m; ++i) {
        ++c.cases;
        try {
          minimal_right_approx(t, s.catalog[i]);
          minimal_left_approx(t, s.catalog[i]);
        } catch (const std::exception& e) {
          fail(c, names[i] + ": " + e.what());
        }
      }
      add(std::move(c));
    }
    {
      CheckResult c{"stable-hom-vanishing"};
      for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) {
          ++c.cases;
          size_t d = stable_hom(t.T[i], suspend(t.T[j])).dim;
          if (d)
            fail(c, "(" + t.names[i] + ", shifted " + t.names[j] + "): stable maps of dimension " +
                        std::to_string(d));
        }
      add(std::move(c));
    }
    {
      CheckResult c{"theta-two-routes"};
      for (size_t i = 0; i < m; ++i) {
        ++c.cases;
        try {
          theta_vector(t, s.catalog[i]);
        } catch (const std::exception& e) {
          fail(c, names[i] + ": " + e.what());
        }
      }
      add(std::move(c));
    }
    {
      CheckResult c{"phi-descent"};
      for (size_t i = 0; i < m; ++i) {
        ++c.cases;
        K0Vector th = theta_vector(t, s.catalog[i]);
        K0Vector im = s.phi.apply(g_module(t, s.catalog[i]).M.dims_by_block());
        if (!(th == im))
          fail(c, names[i] + ": theta " + th.str(t.names) + " vs image class " + im.str(t.names));
      }
      add(std::move(c));
    }
    {
      CheckResult epi{"epi-index-sum"};
      CheckResult ses{"ses-index-additivity"};
      for (const auto& [label, conf] : detail::verification_conflations(s)) {
        IndexAdditivity ia = check_index_additivity(t, s.phi, conf);
        ++ses.cases;
        if (!ia.ok)
          fail(ses, label + ": alternating sum " + ia.lhs.str(t.names) + " vs " + ia.rhs.str(t.names));
        if (ia.f_epi) {
          ++epi.cases;
          if (!ia.lhs.is_zero())
            fail(epi, label + ": hom image is onto yet the alternating sum is " + ia.lhs.str(t.names));
        }
      }
      add(std::move(epi));
      add(std::move(ses));
    }
    {
      CheckResult c{"stable-index-identity"};
      for (size_t i = 0; i < m; ++i) {
        ++c.cases;
        K0Vector lhs = s.phi.apply(g_module(t, s.catalog[i]).M.dims_by_block()).prefix(r);
        K0Vector rhs = stable_index_vector(t, desuspend(s.catalog[i])) +
                       stable_index_vector(t, s.catalog[i]);
        if (!(lhs == rhs))
          fail(c, names[i] + ": " + lhs.str(std::vector<std::string>(t.names.begin(), t.names.begin() + r)) +
                      " vs " + rhs.str(std::vector<std::string>(t.names.begin(), t.names.begin() + r)));
      }
      add(std::move(c));
    }
    {
      CheckResult c{"char-units"};
      for (size_t i = 0; i < n; ++i) {
        ++c.cases;
        if (!(xs[f.tilt_pieces[i]] == LaurentPoly::variable((int)n, (int)i)))
          fail(c, t.names[i] + ": character is " + xs[f.tilt_pieces[i]].str());
      }
      add(std::move(c));
    }
    {
      CheckResult c{"char-multiplicative"};
      for (size_t i = 0; i < m; ++i)
        for (size_t j = i + 1; j < m; ++j) {
          ++c.cases;
          LaurentPoly sum = x_character(s, Pieces{i, j});
          if (!(sum == xs[i] * xs[j]))
            fail(c, "(" + names[i] + ", " + names[j] + "): " + sum.str() + " vs " +
                        (xs[i] * xs[j]).str());
        }
      add(std::move(c));
    }
  }

  if (all || sel == VerifySelection::Multiplication) {
    CheckResult c{"multiplication-formula"};
    for (size_t i = 0; i < m; ++i)
      for (size_t j = i + 1; j < m; ++j) {
        if (ext1(s.catalog[i], s.catalog[j]).dim != 1) continue;
        if (ext1(s.catalog[j], s.catalog[i]).dim != 1) continue;
        ++c.cases;
        MultiplicationCheck mc = check_multiplication(s, s.catalog[i], s.catalog[j]);
        if (!mc.ok)
          fail(c, "(" + names[i] + ", " + names[j] + "): product " + mc.lhs.str() +
                      " vs middle sum " + mc.rhs.str());
      }
    add(std::move(c));
  }

  if (all || sel == VerifySelection::Specialize) {
    CheckResult c{"specialization"};
    for (size_t i = 0; i < m; ++i) {
      ++c.cases;
      LaurentPoly a = x_character(s, Pieces{i}).keep_prefix((int)r);
      LaurentPoly b = fu_character(s, Pieces{i}).keep_prefix((int)r);
      LaurentPoly p = palu_character(s, suspend(s.catalog[i]));
      if (!(a == p))
        fail(c, names[i] + ": specialized character " + a.str() + " vs shifted-object value " + p.str());
      if (!(b == p))
        fail(c, names[i] + ": specialized homological character " + b.str() +
                    " vs shifted-object value " + p.str());
    }
    add(std::move(c));
  }

  if (all || sel == VerifySelection::ConditionTT) {
    CheckResult c{"character-equality-condition"};
    CharacterEquality e = check_character_equality(s);
    c.cases = m;
    if (!e.ok)
      fail(c, std::string("index map matches the form: ") + (e.condition ? "yes" : "no") +
                  ", characters agree: " + (e.characters_equal ? "yes" : "no"));
    add(std::move(c));
  }

  if (all) {
    {
      CheckResult c{"ext-symmetry"};
      for (size_t i = 0; i < m; ++i)
        for (size_t j = i; j < m; ++j) {
          ++c.cases;
          size_t ij = ext1(s.catalog[i], s.catalog[j]).dim;
          size_t ji = ext1(s.catalog[j], s.catalog[i]).dim;
          if (ij != ji)
            fail(c, "(" + names[i] + ", " + names[j] + "): dimensions " + std::to_string(ij) +
                        " and " + std::to_string(ji));
        }
      add(std::move(c));
    }
    {
      CheckResult c{"higher-ext-shift"};
      for (size_t k = 2; k <= 3; ++k)
        for (size_t i = 0; i < m; ++i)
          for (size_t j = 0; j < m; ++j) {
            ++c.cases;
            if (!higher_ext_check(s.catalog[i], s.catalog[j], k))
              fail(c, "degree " + std::to_string(k) + " at (" + names[i] + ", " + names[j] + ")");
          }
      add(std::move(c));
    }
    {
      CheckResult c{"g-sigma-vs-ext1"};
      for (size_t i = 0; i < m; ++i) {
        ++c.cases;
        Module g = g_module(t, suspend(s.catalog[i])).M;
        Module e = ext_module(t, s.catalog[i]).M;
        if (g.dims_by_block() != e.dims_by_block()) {
          fail(c, names[i] + ": component dimensions differ");
          continue;
        }
        if (enumerate_submodules(g, s.dim_cap).by_class != enumerate_submodules(e, s.dim_cap).by_class)
          fail(c, names[i] + ": submodule lattices differ");
      }
      add(std::move(c));
    }
    {
      CheckResult c{"fu-prefix-identity"};
      for (size_t i = 0; i < m; ++i) {
        ++c.cases;
        K0Vector ind = index_vector(t, s.catalog[i]);
        auto fm = f_module(t, s.catalog[i]).M.dims_by_block();
        for (size_t k = 0; k < n; ++k) {
          long long v = 0;
          for (size_t u = 0; u < n; ++u) v += (long long)fm[u] * s.form3[u][k];
          if (ind[k] != v)
            fail(c, names[i] + " at " + t.names[k] + ": index entry " + std::to_string(ind[k]) +
                        " vs pairing " + std::to_string(v));
        }
      }
      add(std::move(c));
    }
  }

  return rep;
}

inline std::string report_text(const VerifyReport& r) {
  std::ostringstream out;
  out << "fixture: " << r.fixture << "\n";
  out << "prime: " << r.prime << "\n";
  out << "counting primes:";
  for (uint32_t q : r.counting_primes) out << " " << q;
  out << "\n";
  out << "enum cap: " << r.enum_cap << "\n";
  out << "seed: " << r.seed << "\n";
  for (const CheckResult& c : r.checks) {
    if (c.ok)
      out << "ok   " << c.name << " (" << c.cases << " cases)\n";
    else
      out << "FAIL " << c.name << " (" << c.cases << " cases): " << c.detail << "\n";
  }
  out << "verdict: " << (r.ok ? "ok" : "FAIL") << "\n";
  return out.str();
}

inline nlohmann::ordered_json report_json(const VerifyReport& r) {
  nlohmann::ordered_json j;
  j["fixture"] = r.fixture;
  j["prime"] = r.prime;
  j["counting_primes"] = r.counting_primes;
  j["enum_cap"] = r.enum_cap;
  j["seed"] = r.seed;
  j["checks"] = nlohmann::ordered_json::array();
  for (const CheckResult& c : r.checks) {
    nlohmann::ordered_json jc;
    jc["name"] = c.name;
    jc["ok"] = c.ok;
    jc["cases"] = c.cases;
    jc["detail"] = c.detail;
    j["checks"].push_back(std::move(jc));
  }
  j["ok"] = r.ok;
  return j;
}

}  // namespace ccx
