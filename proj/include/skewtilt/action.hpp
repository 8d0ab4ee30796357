#pragma once

#include "skewtilt/structure_algebra.hpp"

#include <vector>

namespace skewtilt {

/// Finite group acting on a bound quiver algebra by quiver automorphisms
/// with nonzero scalar twists on arrows.
struct AlgebraAction {
  FiniteGroup group;
  // per element g: vertex_perm[g][v] = image vertex, arrow_perm[g][a] = image
  // arrow, arrow_scalar[g][a] = twist, so g(a) = arrow_scalar[g][a] * arrow_perm[g][a].
  std::vector<std::vector<int>> vertex_perm;
  std::vector<std::vector<int>> arrow_perm;
  std::vector<std::vector<Scalar>> arrow_scalar;

  static AlgebraAction trivial(const BoundQuiverAlgebra& alg) {
    AlgebraAction a;
    a.group = FiniteGroup::trivial();
    std::vector<int> vid(alg.num_vertices()), aid(alg.quiver().arrows.size());
    for (std::size_t i = 0; i < vid.size(); ++i) vid[i] = (int)i;
    for (std::size_t i = 0; i < aid.size(); ++i) aid[i] = (int)i;
    a.vertex_perm = {vid};
    a.arrow_perm = {aid};
    a.arrow_scalar = {std::vector<Scalar>(aid.size(), Scalar::one(alg.field()))};
    return a;
  }

  /// Image of a path under the element g, as a scalar multiple of a path.
  std::pair<Scalar, Path> apply_to_path(const BoundQuiverAlgebra& alg, int g, const Path& p) const {
    Scalar c = Scalar::one(alg.field());
    Path out;
    out.vertex = vertex_perm[g][p.source()];
    for (int a : p.arrows) {
      c *= arrow_scalar[g][a];
      out.arrows.push_back(arrow_perm[g][a]);
    }
    return {c, out};
  }

  PathComb apply_to_comb(const BoundQuiverAlgebra& alg, int g, const PathComb& x) const {
    PathComb out;
    for (const auto& [p, c] : x.terms) {
      auto [s, q] = apply_to_path(alg, g, p);
      out.add(q, c * s);
    }
    return out;
  }
};

/// Checks the action axioms: each element acts as a quiver automorphism, the
/// assignment is table-compatible, the identity acts trivially, the relation
/// ideal is preserved, and char k does not divide |G|.
inline Diagnostics validate_action(const BoundQuiverAlgebra& alg, const AlgebraAction& act) {
  Diagnostics d;
  act.group.validate();
  const Quiver& q = alg.quiver();
  int n = act.group.order();
  if ((int)act.vertex_perm.size() != n || (int)act.arrow_perm.size() != n || (int)act.arrow_scalar.size() != n)
    throw Error(ErrorCode::InvalidInput, "action data size does not match group order");

  if (!alg.field().is_rationals() && alg.field().p != 0 && n % alg.field().p == 0)
    d.add(false, std::string("BadCharacteristic: characteristic ") + std::to_string(alg.field().p) +
                     " divides |G| = " + std::to_string(n));
  else
    d.add(true, "characteristic does not divide |G|");

  for (int g = 0; g < n; ++g) {
    bool autom = true;
    std::vector<int> vseen(q.vertices.size(), 0), aseen(q.arrows.size(), 0);
    for (std::size_t v = 0; v < q.vertices.size(); ++v) {
      int w = act.vertex_perm[g][v];
      if (w < 0 || w >= (int)q.vertices.size() || ++vseen[w] > 1) autom = false;
    }
    for (std::size_t a = 0; a < q.arrows.size(); ++a) {
      int b = act.arrow_perm[g][a];
      if (b < 0 || b >= (int)q.arrows.size() || ++aseen[b] > 1) { autom = false; continue; }
      if (act.arrow_scalar[g][a].is_zero()) autom = false;
      if (q.arrows[b].source != act.vertex_perm[g][q.arrows[a].source] ||
          q.arrows[b].target != act.vertex_perm[g][q.arrows[a].target])
        autom = false;
    }
    d.add(autom, autom ? ("element " + act.group.elements[g] + " is a quiver automorphism")
                       : ("NotAutomorphism: element " + act.group.elements[g] +
                          " does not act by a quiver automorphism"));
  }

  // identity acts trivially
  {
    bool ok = true;
    for (std::size_t v = 0; v < q.vertices.size(); ++v)
      if (act.vertex_perm[0][v] != (int)v) ok = false;
    for (std::size_t a = 0; a < q.arrows.size(); ++a)
      if (act.arrow_perm[0][a] != (int)a || !act.arrow_scalar[0][a].is_one()) ok = false;
    d.add(ok, ok ? "identity acts trivially" : "NotHomomorphism: identity does not act trivially");
  }

  // table compatibility: (gh)(x) = g(h(x)) on vertices and arrows with scalars
  {
    bool ok = true;
    for (int g = 0; g < n && ok; ++g)
      for (int h = 0; h < n && ok; ++h) {
        int gh = act.group.mul(g, h);
        for (std::size_t v = 0; v < q.vertices.size(); ++v)
          if (act.vertex_perm[gh][v] != act.vertex_perm[g][act.vertex_perm[h][v]]) { ok = false; break; }
        for (std::size_t a = 0; a < q.arrows.size() && ok; ++a) {
          int ha = act.arrow_perm[h][a];
          if (act.arrow_perm[gh][a] != act.arrow_perm[g][ha]) { ok = false; break; }
          if (act.arrow_scalar[gh][a] != act.arrow_scalar[g][ha] * act.arrow_scalar[h][a]) { ok = false; break; }
        }
      }
    d.add(ok, ok ? "assignment is a group homomorphism" : "NotHomomorphism: table compatibility fails");
  }

  // relations ideal preserved
  for (int g = 0; g < n; ++g) {
    bool ok = true;
    std::string bad;
    for (const auto& rel : alg.relations()) {
      PathComb x;
      for (const auto& t : rel.terms) x.add(t.path, t.coef);
      PathComb img = act.apply_to_comb(alg, g, x);
      if (!alg.is_ideal_member(img)) {
        ok = false;
        bad = "image of a relation under " + act.group.elements[g] + " leaves the ideal";
        break;
      }
    }
    d.add(ok, ok ? ("relations preserved by " + act.group.elements[g]) : ("RelationsNotPreserved: " + bad));
  }
  return d;
}

inline void require_valid_action(const BoundQuiverAlgebra& alg, const AlgebraAction& act) {
  Diagnostics d = validate_action(alg, act);
  if (d.all_ok()) return;
  std::string msg = d.first_failure();
  ErrorCode code = ErrorCode::InvalidInput;
  if (msg.rfind("NotAutomorphism", 0) == 0) code = ErrorCode::NotAutomorphism;
  else if (msg.rfind("NotHomomorphism", 0) == 0) code = ErrorCode::NotHomomorphism;
  else if (msg.rfind("RelationsNotPreserved", 0) == 0) code = ErrorCode::RelationsNotPreserved;
  else if (msg.rfind("BadCharacteristic", 0) == 0) code = ErrorCode::BadCharacteristic;
  throw Error(code, msg);
}

/// The induced linear action on the structure algebra of the path basis.
inline LinearGroupAction linear_action_on_basis(const BoundQuiverAlgebra& alg, const AlgebraAction& act) {
  LinearGroupAction la;
  la.group = act.group;
  for (int g = 0; g < act.group.order(); ++g) {
    Matrix m(alg.field(), alg.dim(), alg.dim());
    for (std::size_t j = 0; j < alg.dim(); ++j) {
      auto [c, p] = act.apply_to_path(alg, g, alg.basis()[j]);
      PathComb x;
      x.add(p, c);
      auto e = alg.to_elem(x);
      for (const auto& [k, v] : e) m.at(k, j) = v;
    }
    la.matrices.push_back(std::move(m));
  }
  return la;
}

/// Skew group algebra A[G] of a bound quiver algebra, with basis {p.sigma}
/// and provenance recording J(A)A[G] as the radical.
inline StructureAlgebra skew_group_algebra(const BoundQuiverAlgebra& alg, const AlgebraAction& act) {
  require_valid_action(alg, act);
  StructureAlgebra base = from_bound_quiver(alg);
  LinearGroupAction la = linear_action_on_basis(alg, act);
  return skew_structure_algebra(base, la);
}

}  // namespace skewtilt
