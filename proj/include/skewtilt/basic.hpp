#pragma once

#include "skewtilt/idempotents.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

namespace skewtilt {

/// Morita-basic presentation of a structure algebra: the bound quiver
/// algebra on one idempotent per iso-class, with the realizing data.
struct BasicPresentation {
  BoundQuiverAlgebra algebra;
  std::vector<int> multiplicities;               // per new vertex (= iso class)
  IdempotentData idems;
  std::vector<std::vector<Scalar>> vertex_idem;  // chosen idempotent per class
  std::vector<std::vector<Scalar>> arrow_rep;    // element of the ambient algebra per new arrow
};

inline BasicPresentation basic_presentation(const StructureAlgebra& sa) {
  const FieldSpec& f = sa.field();
  BasicPresentation out;
  out.idems = lift_idempotents(sa);
  int nclass = (int)out.idems.class_rep.size();
  out.multiplicities.assign(nclass, 0);
  for (int c : out.idems.class_of) out.multiplicities[c]++;
  for (int c = 0; c < nclass; ++c) out.vertex_idem.push_back(out.idems.idempotents[out.idems.class_rep[c]]);

  auto jb = radical_basis(sa);
  int nilp = radical_nilpotency(sa, jb);
  std::vector<std::vector<Scalar>> j2;
  {
    std::vector<std::vector<Scalar>> rows;
    for (const auto& a : jb)
      for (const auto& b : jb) rows.push_back(sa.multiply(a, b));
    j2 = detail::span_basis(f, rows, sa.dim());
  }

  Quiver q;
  for (int c = 0; c < nclass; ++c) q.add_vertex("v" + std::to_string(c));
  int arrow_counter = 0;
  for (int c = 0; c < nclass; ++c) {
    for (int c2 = 0; c2 < nclass; ++c2) {
      std::vector<std::vector<Scalar>> w1rows, w2rows;
      for (const auto& j : jb) w1rows.push_back(sa.multiply(sa.multiply(out.vertex_idem[c], j), out.vertex_idem[c2]));
      for (const auto& j : j2) w2rows.push_back(sa.multiply(sa.multiply(out.vertex_idem[c], j), out.vertex_idem[c2]));
      auto w1 = detail::span_basis(f, w1rows, sa.dim());
      auto w2 = detail::span_basis(f, w2rows, sa.dim());
      std::vector<std::vector<Scalar>> span = w2;
      for (const auto& v : w1) {
        std::vector<Scalar> tmp;
        if (detail::coords_over(f, span, v, tmp)) continue;
        span.push_back(v);
        q.arrows.push_back(Arrow{"a" + std::to_string(arrow_counter++), c, c2});
        out.arrow_rep.push_back(v);
      }
    }
  }

  // FGLM-style enumeration: evaluate paths of the new quiver in sa and read
  // off the reduced Groebner basis of the kernel.
  std::vector<Path> basis_paths;
  std::vector<std::vector<Scalar>> images;
  std::vector<RewriteRule> rules;
  std::vector<Path> frontier;
  auto eval_path = [&](const Path& p) {
    std::vector<Scalar> x = out.vertex_idem[p.source()];
    for (int a : p.arrows) x = sa.multiply(x, out.arrow_rep[a]);
    return x;
  };
  for (int c = 0; c < nclass; ++c) {
    Path t = Path::trivial(c);
    basis_paths.push_back(t);
    images.push_back(out.vertex_idem[c]);
    frontier.push_back(t);
  }
  while (!frontier.empty()) {
    std::vector<Path> next;
    for (const auto& p : frontier) {
      int at = p.target(q);
      for (int a = 0; a < (int)q.arrows.size(); ++a) {
        if (q.arrows[a].source != at) continue;
        Path ext = p;
        ext.arrows.push_back(a);
        if ((int)ext.arrows.size() > nilp + 2)
          throw Error(ErrorCode::PresentationDegreeOverflow, "presentation enumeration escaped the nilpotency bound");
        bool reducible = false;
        for (const auto& rule : rules) {
          std::size_t fl = rule.lead.arrows.size();
          if (fl > ext.arrows.size()) continue;
          bool match = true;
          for (std::size_t k = 0; k < fl; ++k)
            if (ext.arrows[ext.arrows.size() - fl + k] != rule.lead.arrows[k]) { match = false; break; }
          if (match) { reducible = true; break; }
        }
        if (reducible) continue;
        auto img = eval_path(ext);
        std::vector<Scalar> coords;
        if (detail::coords_over(f, images, img, coords)) {
          RewriteRule r;
          r.lead = ext;
          for (std::size_t i = 0; i < coords.size(); ++i)
            if (!coords[i].is_zero()) r.rhs.add(basis_paths[i], coords[i]);
          rules.push_back(std::move(r));
        } else {
          basis_paths.push_back(ext);
          images.push_back(img);
          next.push_back(ext);
        }
      }
    }
    frontier = std::move(next);
  }

  // sanity: basis size must match dim eps sa eps
  {
    std::vector<std::vector<Scalar>> rows;
    std::vector<Scalar> eps(sa.dim(), Scalar::zero(f));
    for (const auto& e : out.vertex_idem)
      for (std::size_t k = 0; k < sa.dim(); ++k) eps[k] += e[k];
    for (std::size_t b = 0; b < sa.dim(); ++b) rows.push_back(sa.multiply(sa.multiply(eps, sa.basis_vector(b)), eps));
    auto full = detail::span_basis(f, rows, sa.dim());
    if (full.size() != basis_paths.size())
      throw Error(ErrorCode::Internal, "basic presentation basis does not match corner dimension");
  }

  std::vector<Relation> full_rels;
  for (const auto& r : rules) {
    Relation rel;
    rel.terms.push_back({Scalar::one(f), r.lead});
    for (const auto& [p, c] : r.rhs.terms) rel.terms.push_back({-c, p});
    full_rels.push_back(std::move(rel));
  }
  BoundQuiverAlgebra full_alg = complete_rewriting(f, q, full_rels, nilp + 3);
  if (full_alg.dim() != basis_paths.size())
    throw Error(ErrorCode::Internal, "rewriting completion disagrees with enumerated basis");
  auto minimal = minimal_relations(full_alg);
  BoundQuiverAlgebra alg = complete_rewriting(f, q, minimal, nilp + 3);
  if (alg.dim() != full_alg.dim())
    throw Error(ErrorCode::Internal, "minimal relations changed the quotient dimension");
  out.algebra = std::move(alg);
  return out;
}

// ---------------------------------------------------------------------------
// algebra isomorphism search

struct IsoWitness {
  std::vector<int> vertex_map;                    // vertex of A -> vertex of B
  std::vector<std::pair<int, Scalar>> arrow_map;  // arrow of A -> (arrow of B, scalar)
};

namespace detail {

inline bool verify_iso(const BoundQuiverAlgebra& A, const BoundQuiverAlgebra& B, const IsoWitness& w) {
  if (A.dim() != B.dim()) return false;
  const FieldSpec& f = A.field();
  auto map_path = [&](const Path& p) {
    Path out;
    out.vertex = w.vertex_map[p.source()];
    Scalar c = Scalar::one(f);
    for (int a : p.arrows) {
      out.arrows.push_back(w.arrow_map[a].first);
      c *= w.arrow_map[a].second;
    }
    return std::pair<Scalar, Path>{c, out};
  };
  for (const auto& rel : A.relations()) {
    PathComb img;
    for (const auto& t : rel.terms) {
      auto [c, p] = map_path(t.path);
      if (!p.well_formed(B.quiver())) return false;
      img.add(p, c * t.coef);
    }
    if (!B.is_ideal_member(img)) return false;
  }
  // bijectivity on the quotient
  Matrix m(f, B.dim(), A.dim());
  for (std::size_t j = 0; j < A.dim(); ++j) {
    auto [c, p] = map_path(A.basis()[j]);
    if (!p.well_formed(B.quiver())) return false;
    PathComb pc;
    pc.add(p, c);
    auto e = B.to_elem(pc);
    for (const auto& [k, v] : e) m.at(k, j) = v;
  }
  return is_invertible(m);
}

}  // namespace detail

/// Searches for an algebra isomorphism: vertex bijections preserving arrow
/// counts (backtracking), then arrow bijections with scalar coefficients
/// solved from the relations. The search covers maps sending arrows to
/// scalar multiples of arrows; candidates are verified honestly before being
/// returned.
inline std::optional<IsoWitness> iso_test(const BoundQuiverAlgebra& A, const BoundQuiverAlgebra& B,
                                          long budget = 200000) {
  if (A.field() != B.field()) return std::nullopt;
  if (A.dim() != B.dim()) return std::nullopt;
  int n = A.num_vertices();
  if (n != B.num_vertices()) return std::nullopt;
  const Quiver& qa = A.quiver();
  const Quiver& qb = B.quiver();
  if (qa.arrows.size() != qb.arrows.size()) return std::nullopt;
  const FieldSpec& f = A.field();

  auto counts = [&](const Quiver& q) {
    std::vector<std::vector<int>> c(q.vertices.size(), std::vector<int>(q.vertices.size(), 0));
    for (const auto& a : q.arrows) c[a.source][a.target]++;
    return c;
  };
  auto ca = counts(qa), cb = counts(qb);

  std::vector<int> perm(n, -1);
  std::vector<bool> used(n, false);
  long nodes = 0;

  std::optional<IsoWitness> found;

  std::function<bool(int)> place = [&](int v) -> bool {
    if (++nodes > budget) throw Error(ErrorCode::SearchBudgetExceeded, "iso_test vertex search budget exceeded");
    if (v == n) {
      // arrows per pair
      std::vector<std::vector<int>> arrows_a(n * n), arrows_b(n * n);
      for (int a = 0; a < (int)qa.arrows.size(); ++a)
        arrows_a[qa.arrows[a].source * n + qa.arrows[a].target].push_back(a);
      for (int b = 0; b < (int)qb.arrows.size(); ++b)
        arrows_b[qb.arrows[b].source * n + qb.arrows[b].target].push_back(b);
      // enumerate products of per-pair bijections
      std::vector<std::pair<std::vector<int>, std::vector<int>>> pairs;  // (arrows in A, arrows in B)
      for (int v1 = 0; v1 < n; ++v1)
        for (int v2 = 0; v2 < n; ++v2) {
          auto& aa = arrows_a[v1 * n + v2];
          auto& bb = arrows_b[perm[v1] * n + perm[v2]];
          if (aa.size() != bb.size()) return false;  // cannot happen (counts checked)
          if (!aa.empty()) pairs.push_back({aa, bb});
        }
      // iterate over bijection tuples
      std::vector<std::vector<int>> perms_per_pair;
      for (auto& [aa, bb] : pairs) {
        std::vector<int> idx(aa.size());
        for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = (int)i;
        perms_per_pair.push_back(idx);
      }
      auto advance = [&]() -> bool {
        for (std::size_t p = 0; p < perms_per_pair.size(); ++p) {
          if (std::next_permutation(perms_per_pair[p].begin(), perms_per_pair[p].end())) return true;
          // reset and carry
          std::sort(perms_per_pair[p].begin(), perms_per_pair[p].end());
        }
        return false;
      };
      while (true) {
        if (++nodes > budget) throw Error(ErrorCode::SearchBudgetExceeded, "iso_test arrow search budget exceeded");
        std::vector<int> arrow_to(qa.arrows.size(), -1);
        for (std::size_t p = 0; p < pairs.size(); ++p)
          for (std::size_t i = 0; i < pairs[p].first.size(); ++i)
            arrow_to[pairs[p].first[i]] = pairs[p].second[perms_per_pair[p][i]];

        // scalar solving: try all-ones, then propagate two-term ratio constraints
        auto try_scalars = [&](std::vector<Scalar> s) -> bool {
          IsoWitness w;
          w.vertex_map = perm;
          for (std::size_t a = 0; a < arrow_to.size(); ++a) w.arrow_map.push_back({arrow_to[a], s[a]});
          if (detail::verify_iso(A, B, w)) {
            found = w;
            return true;
          }
          return false;
        };
        std::vector<Scalar> ones(qa.arrows.size(), Scalar::one(f));
        if (try_scalars(ones)) return true;

        // ratio propagation for two-term relations
        {
          std::vector<Scalar> s(qa.arrows.size(), Scalar::one(f));
          std::vector<bool> assigned(qa.arrows.size(), false);
          bool progress = true, feasible = true;
          auto image_reduced = [&](const Path& p) {
            Path ip;
            ip.vertex = perm[p.source()];
            for (int a : p.arrows) ip.arrows.push_back(arrow_to[a]);
            PathComb pc;
            pc.add(ip, Scalar::one(f));
            return B.reduce(pc);
          };
          std::vector<std::tuple<std::map<int, int>, Scalar>> constraints;  // exponents, constant
          for (const auto& rel : A.relations()) {
            if (rel.terms.size() != 2) continue;
            auto r1 = image_reduced(rel.terms[0].path);
            auto r2 = image_reduced(rel.terms[1].path);
            if (r1.is_zero() && r2.is_zero()) continue;
            if (r1.is_zero() || r2.is_zero()) { feasible = false; break; }
            // need c1 mu1 r1 + c2 mu2 r2 = 0 with r1 = lam r2
            Scalar lam = Scalar::zero(f);
            bool parallel = true;
            for (const auto& [p, c] : r1.terms) {
              auto it = r2.terms.find(p);
              if (it == r2.terms.end()) { parallel = false; break; }
              Scalar ratio = c / it->second;
              if (lam.is_zero()) lam = ratio;
              else if (lam != ratio) { parallel = false; break; }
            }
            if (!parallel || r1.terms.size() != r2.terms.size()) { feasible = false; break; }
            // mu1/mu2 = -c2/(c1 lam)
            std::map<int, int> expo;
            for (int a : rel.terms[0].path.arrows) expo[a]++;
            for (int a : rel.terms[1].path.arrows) expo[a]--;
            Scalar cst = -(rel.terms[1].coef) / (rel.terms[0].coef * lam);
            constraints.push_back({expo, cst});
          }
          while (feasible && progress) {
            progress = false;
            for (auto& [expo, cst] : constraints) {
              int unknown = -1, coeff = 0, known_count = 0;
              Scalar prod = Scalar::one(f);
              for (auto& [a, e] : expo) {
                if (e == 0) continue;
                if (assigned[a]) {
                  for (int i = 0; i < std::abs(e); ++i) prod = e > 0 ? prod * s[a] : prod / s[a];
                  ++known_count;
                } else if (unknown == -1) {
                  unknown = a;
                  coeff = e;
                } else {
                  unknown = -2;  // more than one unknown
                }
              }
              if (unknown == -1) {
                if (prod != cst) { feasible = false; break; }
              } else if (unknown >= 0 && (coeff == 1 || coeff == -1)) {
                Scalar val = coeff == 1 ? cst / prod : prod / cst;
                s[unknown] = val;
                assigned[unknown] = true;
                progress = true;
              }
            }
          }
          if (feasible) {
            if (try_scalars(s)) return true;
          }
        }
        if (!advance()) break;
      }
      return false;
    }
    for (int w = 0; w < n; ++w) {
      if (used[w]) continue;
      bool ok = true;
      for (int u = 0; u < v && ok; ++u) {
        if (ca[u][v] != cb[perm[u]][w] || ca[v][u] != cb[w][perm[u]]) ok = false;
      }
      if (ca[v][v] != cb[w][w]) ok = false;
      if (!ok) continue;
      perm[v] = w;
      used[w] = true;
      if (place(v + 1)) return true;
      used[w] = false;
      perm[v] = -1;
    }
    return false;
  };
  place(0);
  return found;
}

}  // namespace skewtilt
