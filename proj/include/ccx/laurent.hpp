#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace ccx {

/* Laurent polynomial in n commuting variables with integer coefficients.
 * Terms are kept in descending lexicographic order of exponent vectors, which
 * fixes the printed form. */
class LaurentPoly {
 public:
  explicit LaurentPoly(int nvars = 0) : nvars_(nvars) {}

  static LaurentPoly zero(int nvars) { return LaurentPoly(nvars); }

  static LaurentPoly constant(int nvars, long long c) {
    LaurentPoly r(nvars);
    if (c) r.t_[std::vector<int>(nvars, 0)] = c;
    return r;
  }

  static LaurentPoly one(int nvars) { return constant(nvars, 1); }

  static LaurentPoly monomial(int nvars, long long c, std::vector<int> exps) {
    if (static_cast<int>(exps.size()) != nvars)
      throw std::logic_error("LaurentPoly: exponent arity mismatch");
    LaurentPoly r(nvars);
    if (c) r.t_[std::move(exps)] = c;
    return r;
  }

  static LaurentPoly variable(int nvars, int i, int power = 1) {
    std::vector<int> e(nvars, 0);
    e[i] = power;
    return monomial(nvars, 1, std::move(e));
  }

  int nvars() const { return nvars_; }
  bool is_zero() const { return t_.empty(); }
  size_t term_count() const { return t_.size(); }

  LaurentPoly operator+(const LaurentPoly& o) const {
    require_arity(o);
    LaurentPoly r = *this;
    for (const auto& [e, c] : o.t_) r.bump(e, c);
    return r;
  }

  LaurentPoly operator-(const LaurentPoly& o) const {
    require_arity(o);
    LaurentPoly r = *this;
    for (const auto& [e, c] : o.t_) r.bump(e, -c);
    return r;
  }

  LaurentPoly operator*(const LaurentPoly& o) const {
    require_arity(o);
    LaurentPoly r(nvars_);
    for (const auto& [e1, c1] : t_)
      for (const auto& [e2, c2] : o.t_) {
        std::vector<int> e(nvars_);
        for (int i = 0; i < nvars_; ++i) e[i] = e1[i] + e2[i];
        r.bump(e, c1 * c2);
      }
    return r;
  }

  LaurentPoly scaled(long long s) const {
    LaurentPoly r(nvars_);
    if (s)
      for (const auto& [e, c] : t_) r.t_[e] = c * s;
    return r;
  }

  bool operator==(const LaurentPoly& o) const { return nvars_ == o.nvars_ && t_ == o.t_; }

  /* Set the variables whose flag is true to 1; the survivors keep their
   * relative order and are renumbered consecutively from x1. */
  LaurentPoly set_ones(const std::vector<bool>& fix) const {
    if (static_cast<int>(fix.size()) != nvars_)
      throw std::logic_error("LaurentPoly::set_ones: arity mismatch");
    int kept = 0;
    for (bool f : fix) kept += f ? 0 : 1;
    LaurentPoly r(kept);
    for (const auto& [e, c] : t_) {
      std::vector<int> pe;
      pe.reserve(kept);
      for (int i = 0; i < nvars_; ++i)
        if (!fix[i]) pe.push_back(e[i]);
      r.bump(pe, c);
    }
    return r;
  }

  /* Keep only the first `keep` variables, setting the rest to 1. */
  LaurentPoly keep_prefix(int keep) const {
    std::vector<bool> fix(nvars_, true);
    for (int i = 0; i < keep; ++i) fix[i] = false;
    return set_ones(fix);
  }

  /* Canonical text: terms joined by " + " / " - ", each "c*x<i>^<e>" with unit
   * coefficients and unit exponents omitted, factors by ascending variable. */
  std::string str() const {
    if (t_.empty()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [e, c] : t_) {
      long long mag = c < 0 ? -c : c;
      if (first) {
        if (c < 0) out += "-";
        first = false;
      } else {
        out += c < 0 ? " - " : " + ";
      }
      std::string factors;
      for (int i = 0; i < nvars_; ++i) {
        if (!e[i]) continue;
        if (!factors.empty()) factors += "*";
        factors += "x" + std::to_string(i + 1);
        if (e[i] != 1) factors += "^" + std::to_string(e[i]);
      }
      if (factors.empty()) {
        out += std::to_string(mag);
      } else if (mag == 1) {
        out += factors;
      } else {
        out += std::to_string(mag) + "*" + factors;
      }
    }
    return out;
  }

 private:
  void require_arity(const LaurentPoly& o) const {
    if (nvars_ != o.nvars_) throw std::logic_error("LaurentPoly: arity mismatch");
  }
  void bump(const std::vector<int>& e, long long c) {
    if (!c) return;
    auto it = t_.find(e);
    if (it == t_.end()) {
      t_[e] = c;
    } else {
      it->second += c;
      if (it->second == 0) t_.erase(it);
    }
  }

  int nvars_;
  std::map<std::vector<int>, long long, std::greater<std::vector<int>>> t_;
};

}  // namespace ccx
