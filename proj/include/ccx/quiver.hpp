#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace ccx {

struct Arrow {
  std::string name;
  size_t from = 0;
  size_t to = 0;
};

struct Quiver {
  std::vector<std::string> vertex_names;
  std::vector<Arrow> arrows;

  size_t nv() const { return vertex_names.size(); }

  size_t vertex_index(const std::string& name) const {
    for (size_t i = 0; i < vertex_names.size(); ++i)
      if (vertex_names[i] == name) return i;
    throw std::runtime_error("quiver: unknown vertex " + name);
  }

  size_t arrow_index(const std::string& name) const {
    for (size_t i = 0; i < arrows.size(); ++i)
      if (arrows[i].name == name) return i;
    throw std::runtime_error("quiver: unknown arrow " + name);
  }

  void validate() const {
    if (vertex_names.empty()) throw std::runtime_error("quiver: no vertices");
    for (size_t i = 0; i < vertex_names.size(); ++i)
      for (size_t j = i + 1; j < vertex_names.size(); ++j)
        if (vertex_names[i] == vertex_names[j])
          throw std::runtime_error("quiver: duplicate vertex name " + vertex_names[i]);
    for (const auto& a : arrows) {
      if (a.from >= nv() || a.to >= nv())
        throw std::runtime_error("quiver: arrow " + a.name + " has bad endpoint");
      if (a.name.empty()) throw std::runtime_error("quiver: unnamed arrow");
    }
    for (size_t i = 0; i < arrows.size(); ++i)
      for (size_t j = i + 1; j < arrows.size(); ++j)
        if (arrows[i].name == arrows[j].name)
          throw std::runtime_error("quiver: duplicate arrow name " + arrows[i].name);
  }
};

/* One summand of a relation: coeff times a composite path.  Arrow names are
 * listed in algebra order, i.e. ["b","a"] is the product b*a, "apply a, then
 * b".  The rightmost arrow acts first. */
struct RelationTerm {
  long long coeff = 1;
  std::vector<std::string> path;
};

using Relation = std::vector<RelationTerm>;

}  // namespace ccx
