#pragma once

#include "skewtilt/action.hpp"
#include "skewtilt/rep.hpp"

namespace skewtilt::demo {

/// The bundled demo instance: a five-vertex bound quiver algebra with two
/// zero relations, carrying a Z/2 swap action. Shipped as the built-in test
/// vector for the end-to-end pipeline.
inline BoundQuiverAlgebra demo_algebra(const FieldSpec& f = FieldSpec::rationals()) {
  Quiver q;
  q.add_vertex("1");
  q.add_vertex("1'");
  q.add_vertex("2");
  q.add_vertex("3");
  q.add_vertex("3'");
  q.add_arrow("alpha", "1", "2");
  q.add_arrow("alpha'", "1'", "2");
  q.add_arrow("beta", "2", "3");
  q.add_arrow("beta'", "2", "3'");
  auto path = [&](std::initializer_list<const char*> arrows) {
    Path p;
    bool first = true;
    for (const char* a : arrows) {
      int idx = q.arrow_index(a);
      if (first) p.vertex = q.arrows[idx].source;
      first = false;
      p.arrows.push_back(idx);
    }
    return p;
  };
  std::vector<Relation> rels;
  rels.push_back(Relation{{{Scalar::one(f), path({"alpha", "beta"})}}});
  rels.push_back(Relation{{{Scalar::one(f), path({"alpha'", "beta'"})}}});
  return complete_rewriting(f, q, rels);
}

/// Z/2 action switching 1 <-> 1', 3 <-> 3', alpha <-> alpha', beta <-> beta'
/// and fixing the vertex 2.
inline AlgebraAction demo_action(const BoundQuiverAlgebra& alg) {
  const Quiver& q = alg.quiver();
  AlgebraAction act;
  act.group = FiniteGroup::cyclic(2);
  std::vector<int> vid(q.vertices.size()), aid(q.arrows.size());
  for (std::size_t i = 0; i < vid.size(); ++i) vid[i] = (int)i;
  for (std::size_t i = 0; i < aid.size(); ++i) aid[i] = (int)i;
  std::vector<int> vswap = vid, aswap = aid;
  auto swap_v = [&](const char* a, const char* b) {
    std::swap(vswap[q.vertex_index(a)], vswap[q.vertex_index(b)]);
  };
  auto swap_a = [&](const char* a, const char* b) {
    std::swap(aswap[q.arrow_index(a)], aswap[q.arrow_index(b)]);
  };
  swap_v("1", "1'");
  swap_v("3", "3'");
  swap_a("alpha", "alpha'");
  swap_a("beta", "beta'");
  act.vertex_perm = {vid, vswap};
  act.arrow_perm = {aid, aswap};
  std::vector<Scalar> ones(q.arrows.size(), Scalar::one(alg.field()));
  act.arrow_scalar = {ones, ones};
  return act;
}

/// Expected basic form of the skew construction: 1 -> 2 -> 3 and 1 -> 2' -> 3
/// with the two composites identified.
inline BoundQuiverAlgebra target_commutative_square(const FieldSpec& f = FieldSpec::rationals()) {
  Quiver q;
  q.add_vertex("1");
  q.add_vertex("2");
  q.add_vertex("2'");
  q.add_vertex("3");
  q.add_arrow("gamma", "1", "2");
  q.add_arrow("gamma'", "1", "2'");
  q.add_arrow("delta", "2", "3");
  q.add_arrow("delta'", "2'", "3");
  Path gd;
  gd.vertex = 0;
  gd.arrows = {q.arrow_index("gamma"), q.arrow_index("delta")};
  Path gd2;
  gd2.vertex = 0;
  gd2.arrows = {q.arrow_index("gamma'"), q.arrow_index("delta'")};
  std::vector<Relation> rels;
  rels.push_back(Relation{{{Scalar::one(f), gd}, {-Scalar::one(f), gd2}}});
  return complete_rewriting(f, q, rels);
}

/// Expected basic form of the skewed section algebra: the four-vertex star
/// with three arrows out of the source.
inline BoundQuiverAlgebra target_star(const FieldSpec& f = FieldSpec::rationals()) {
  Quiver q;
  q.add_vertex("1");
  q.add_vertex("2");
  q.add_vertex("3");
  q.add_vertex("3'");
  q.add_arrow("a", "1", "3");
  q.add_arrow("b", "1", "2");
  q.add_arrow("c", "1", "3'");
  return complete_rewriting(f, q, {});
}

inline BoundQuiverAlgebra a2_algebra(const FieldSpec& f = FieldSpec::rationals()) {
  Quiver q;
  q.add_vertex("1");
  q.add_vertex("2");
  q.add_arrow("a", "1", "2");
  return complete_rewriting(f, q, {});
}

inline BoundQuiverAlgebra a3_algebra(const FieldSpec& f = FieldSpec::rationals()) {
  Quiver q;
  q.add_vertex("1");
  q.add_vertex("2");
  q.add_vertex("3");
  q.add_arrow("a", "1", "2");
  q.add_arrow("b", "2", "3");
  return complete_rewriting(f, q, {});
}

}  // namespace skewtilt::demo
