#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace ccx {

/* Element of the split Grothendieck group of add T, written in the basis of
 * the chosen summands [T1..Tn]. */
struct K0Vector {
  std::vector<long long> c;

  K0Vector() = default;
  explicit K0Vector(size_t n) : c(n, 0) {}
  explicit K0Vector(std::vector<long long> v) : c(std::move(v)) {}

  size_t size() const { return c.size(); }
  long long operator[](size_t i) const { return c[i]; }
  long long& operator[](size_t i) { return c[i]; }

  K0Vector operator+(const K0Vector& o) const {
    require(o);
    K0Vector r = *this;
    for (size_t i = 0; i < c.size(); ++i) r.c[i] += o.c[i];
    return r;
  }
  K0Vector operator-(const K0Vector& o) const {
    require(o);
    K0Vector r = *this;
    for (size_t i = 0; i < c.size(); ++i) r.c[i] -= o.c[i];
    return r;
  }
  K0Vector operator-() const {
    K0Vector r = *this;
    for (auto& v : r.c) v = -v;
    return r;
  }
  bool operator==(const K0Vector& o) const { return c == o.c; }
  bool is_zero() const {
    for (long long v : c)
      if (v) return false;
    return true;
  }

  K0Vector prefix(size_t k) const {
    K0Vector r(k);
    for (size_t i = 0; i < k && i < c.size(); ++i) r.c[i] = c[i];
    return r;
  }

  std::string str(const std::vector<std::string>& labels) const {
    if (labels.size() != c.size()) throw std::logic_error("K0Vector: label arity mismatch");
    std::string out;
    for (size_t i = 0; i < c.size(); ++i) {
      if (!c[i]) continue;
      if (!out.empty()) out += " + ";
      out += std::to_string(c[i]) + "*[" + labels[i] + "]";
    }
    return out.empty() ? "0" : out;
  }

 private:
  void require(const K0Vector& o) const {
    if (c.size() != o.c.size()) throw std::logic_error("K0Vector: size mismatch");
  }
};

}  // namespace ccx
