#pragma once

#include "skewtilt/field.hpp"

#include <algorithm>
#include <map>
#include <string>
#include <vector>

namespace skewtilt {

struct Arrow {
  std::string name;
  int source = 0;
  int target = 0;
};

/// Finite quiver: named vertices and arrows. Loops and parallel arrows are
/// allowed.
struct Quiver {
  std::vector<std::string> vertices;
  std::vector<Arrow> arrows;

  int vertex_index(const std::string& name) const {
    for (std::size_t i = 0; i < vertices.size(); ++i)
      if (vertices[i] == name) return static_cast<int>(i);
    throw Error(ErrorCode::InvalidInput, "unknown vertex '" + name + "'");
  }
  int arrow_index(const std::string& name) const {
    for (std::size_t i = 0; i < arrows.size(); ++i)
      if (arrows[i].name == name) return static_cast<int>(i);
    throw Error(ErrorCode::InvalidInput, "unknown arrow '" + name + "'");
  }

  void add_vertex(const std::string& name) { vertices.push_back(name); }
  void add_arrow(const std::string& name, const std::string& from, const std::string& to) {
    arrows.push_back(Arrow{name, vertex_index(from), vertex_index(to)});
  }

  void validate_names() const {
    std::map<std::string, int> seen;
    for (const auto& v : vertices)
      if (++seen[v] > 1) throw Error(ErrorCode::InvalidInput, "duplicate vertex name '" + v + "'");
    seen.clear();
    for (const auto& a : arrows) {
      if (++seen[a.name] > 1) throw Error(ErrorCode::InvalidInput, "duplicate arrow name '" + a.name + "'");
      if (a.source < 0 || a.source >= (int)vertices.size() || a.target < 0 || a.target >= (int)vertices.size())
        throw Error(ErrorCode::InvalidInput, "arrow '" + a.name + "' has undeclared endpoint");
    }
  }

  bool is_acyclic() const {
    std::vector<int> indeg(vertices.size(), 0);
    for (const auto& a : arrows) indeg[a.target]++;
    std::vector<int> queue;
    for (std::size_t v = 0; v < vertices.size(); ++v)
      if (indeg[v] == 0) queue.push_back((int)v);
    std::size_t done = 0;
    while (!queue.empty()) {
      int v = queue.back();
      queue.pop_back();
      ++done;
      for (const auto& a : arrows)
        if (a.source == v && --indeg[a.target] == 0) queue.push_back(a.target);
    }
    return done == vertices.size();
  }

  bool is_connected() const {
    if (vertices.empty()) return true;
    std::vector<bool> seen(vertices.size(), false);
    std::vector<int> stack{0};
    seen[0] = true;
    while (!stack.empty()) {
      int v = stack.back();
      stack.pop_back();
      for (const auto& a : arrows) {
        if (a.source == v && !seen[a.target]) { seen[a.target] = true; stack.push_back(a.target); }
        if (a.target == v && !seen[a.source]) { seen[a.source] = true; stack.push_back(a.source); }
      }
    }
    return std::all_of(seen.begin(), seen.end(), [](bool b) { return b; });
  }

  Quiver opposite() const {
    Quiver q;
    q.vertices = vertices;
    for (const auto& a : arrows) q.arrows.push_back(Arrow{a.name, a.target, a.source});
    return q;
  }
};

/// Path in diagrammatic order: the first-traversed arrow comes first, so a
/// path [a, b] runs source(a) -> target(a) = source(b) -> target(b).
/// Trivial paths carry their vertex and an empty arrow list.
struct Path {
  int vertex = 0;  // source vertex (also target for trivial paths)
  std::vector<int> arrows;

  static Path trivial(int v) { return Path{v, {}}; }

  int source() const { return vertex; }
  int target(const Quiver& q) const { return arrows.empty() ? vertex : q.arrows[arrows.back()].target; }
  std::size_t length() const { return arrows.size(); }
  bool is_trivial() const { return arrows.empty(); }

  bool composable_with(const Path& next, const Quiver& q) const { return target(q) == next.source(); }

  /// Diagrammatic concatenation: this path first, then `next`.
  Path then(const Path& next, const Quiver& q) const {
    if (!composable_with(next, q)) throw Error(ErrorCode::Internal, "non-composable path concatenation");
    Path p{vertex, arrows};
    p.arrows.insert(p.arrows.end(), next.arrows.begin(), next.arrows.end());
    return p;
  }

  bool well_formed(const Quiver& q) const {
    if (vertex < 0 || vertex >= (int)q.vertices.size()) return false;
    int at = vertex;
    for (int idx : arrows) {
      if (idx < 0 || idx >= (int)q.arrows.size()) return false;
      if (q.arrows[idx].source != at) return false;
      at = q.arrows[idx].target;
    }
    return true;
  }

  bool operator==(const Path& o) const { return vertex == o.vertex && arrows == o.arrows; }
  bool operator!=(const Path& o) const { return !(*this == o); }

  /// Length-lexicographic order; arrow order is declaration order.
  static int compare(const Path& a, const Path& b) {
    if (a.arrows.size() != b.arrows.size()) return a.arrows.size() < b.arrows.size() ? -1 : 1;
    if (a.arrows.empty()) {
      if (a.vertex != b.vertex) return a.vertex < b.vertex ? -1 : 1;
      return 0;
    }
    if (a.arrows != b.arrows) return a.arrows < b.arrows ? -1 : 1;
    return 0;
  }
  bool operator<(const Path& o) const { return compare(*this, o) < 0; }

  std::string to_string(const Quiver& q) const {
    if (arrows.empty()) return "e_" + q.vertices[vertex];
    std::string s;
    for (std::size_t i = 0; i < arrows.size(); ++i) {
      if (i) s += "*";
      s += q.arrows[arrows[i]].name;
    }
    return s;
  }
};

/// Scalar combination of paths sharing source and target.
struct Relation {
  struct Term {
    Scalar coef;
    Path path;
  };
  std::vector<Term> terms;
};

struct Diagnostics {
  struct Item {
    bool ok = true;
    std::string what;
  };
  std::vector<Item> items;
  bool all_ok() const {
    return std::all_of(items.begin(), items.end(), [](const Item& i) { return i.ok; });
  }
  void add(bool ok, const std::string& what) { items.push_back({ok, what}); }
  std::string first_failure() const {
    for (const auto& i : items)
      if (!i.ok) return i.what;
    return "";
  }
};

/// Structural checks for admissible relation data: endpoint homogeneity,
/// path well-formedness, length >= 2.
inline Diagnostics validate_relations(const Quiver& q, const std::vector<Relation>& rels) {
  Diagnostics d;
  q.validate_names();
  for (std::size_t i = 0; i < rels.size(); ++i) {
    const Relation& r = rels[i];
    std::string tag = "relation #" + std::to_string(i);
    if (r.terms.empty()) {
      d.add(false, tag + ": empty relation");
      continue;
    }
    bool ok = true;
    for (const auto& t : r.terms) {
      if (!t.path.well_formed(q)) {
        d.add(false, tag + ": term path is not a path of the quiver");
        ok = false;
        break;
      }
      if (t.path.length() < 2) {
        d.add(false, tag + ": term '" + t.path.to_string(q) + "' has length < 2 (ideal not admissible)");
        ok = false;
        break;
      }
      if (t.coef.is_zero()) {
        d.add(false, tag + ": zero coefficient term");
        ok = false;
        break;
      }
    }
    if (!ok) continue;
    int src = r.terms[0].path.source();
    int tgt = r.terms[0].path.target(q);
    for (const auto& t : r.terms) {
      if (t.path.source() != src || t.path.target(q) != tgt) {
        d.add(false, tag + ": terms mix endpoints (not endpoint-homogeneous)");
        ok = false;
        break;
      }
    }
    if (ok) d.add(true, tag + ": ok");
  }
  return d;
}

}  // namespace skewtilt
