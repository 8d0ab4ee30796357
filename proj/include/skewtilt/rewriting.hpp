#pragma once

#include "skewtilt/linalg.hpp"
#include "skewtilt/quiver.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace skewtilt {

/// Sparse scalar combination of paths.
struct PathComb {
  std::map<Path, Scalar> terms;

  bool is_zero() const { return terms.empty(); }

  void add(const Path& p, const Scalar& c) {
    if (c.is_zero()) return;
    auto it = terms.find(p);
    if (it == terms.end()) {
      terms.emplace(p, c);
    } else {
      it->second += c;
      if (it->second.is_zero()) terms.erase(it);
    }
  }

  void add_scaled(const PathComb& o, const Scalar& c) {
    for (const auto& [p, v] : o.terms) add(p, v * c);
  }

  const Path& leading_path() const {
    if (terms.empty()) throw Error(ErrorCode::Internal, "leading term of zero");
    return terms.rbegin()->first;
  }
  const Scalar& leading_coef() const { return terms.rbegin()->second; }
};

/// Rewriting rule: leading path -> strictly smaller combination.
struct RewriteRule {
  Path lead;
  PathComb rhs;
};

namespace detail {

/// Finds the first occurrence of `factor` as a contiguous arrow subsequence
/// of `p`; returns the offset or -1.
inline int find_factor(const Path& p, const Path& factor) {
  if (factor.arrows.size() > p.arrows.size()) return -1;
  for (std::size_t off = 0; off + factor.arrows.size() <= p.arrows.size(); ++off) {
    bool match = true;
    for (std::size_t k = 0; k < factor.arrows.size(); ++k) {
      if (p.arrows[off + k] != factor.arrows[k]) { match = false; break; }
    }
    if (match) return static_cast<int>(off);
  }
  return -1;
}

inline Path subpath(const Quiver& q, const Path& p, std::size_t from, std::size_t len) {
  Path s;
  if (len == 0) {
    s.vertex = from == 0 ? p.source() : q.arrows[p.arrows[from - 1]].target;
  } else {
    s.vertex = q.arrows[p.arrows[from]].source;
    s.arrows.assign(p.arrows.begin() + from, p.arrows.begin() + from + len);
  }
  return s;
}

}  // namespace detail

/// Bound quiver algebra kQ/I presented by a confluent rewriting system
/// under length-lexicographic order, together with its normal-form basis.
class BoundQuiverAlgebra {
 public:
  using Elem = std::map<int, Scalar>;  // sparse vector over the path basis

  BoundQuiverAlgebra() = default;

  const FieldSpec& field() const { return field_; }
  const Quiver& quiver() const { return quiver_; }
  const std::vector<Relation>& relations() const { return relations_; }
  const std::vector<RewriteRule>& rules() const { return rules_; }
  const std::vector<Path>& basis() const { return basis_; }
  std::size_t dim() const { return basis_.size(); }
  int nilpotency_degree() const { return nilpotency_; }
  int num_vertices() const { return static_cast<int>(quiver_.vertices.size()); }

  bool relations_empty() const { return rules_.empty(); }

  int basis_index(const Path& p) const {
    auto it = basis_index_.find(p);
    if (it == basis_index_.end()) throw Error(ErrorCode::Internal, "path is not a normal form");
    return it->second;
  }
  bool is_basis_path(const Path& p) const { return basis_index_.count(p) > 0; }

  int trivial_index(int v) const { return trivial_index_[v]; }
  int arrow_basis_index(int a) const { return arrow_index_[a]; }

  /// Number of basis paths v -> w.
  int sandwich_dim(int v, int w) const { return sandwich_[v][w]; }

  PathComb reduce(PathComb x) const {
    bool changed = true;
    while (changed) {
      changed = false;
      for (auto it = x.terms.rbegin(); it != x.terms.rend(); ++it) {
        const Path p = it->first;
        for (const auto& rule : rules_) {
          int off = detail::find_factor(p, rule.lead);
          if (off < 0) continue;
          Scalar c = it->second;
          Path left = detail::subpath(quiver_, p, 0, off);
          Path right = detail::subpath(quiver_, p, off + rule.lead.arrows.size(),
                                       p.arrows.size() - off - rule.lead.arrows.size());
          x.add(p, -c);
          for (const auto& [rp, rc] : rule.rhs.terms) {
            Path glued = left.then(rp, quiver_).then(right, quiver_);
            x.add(glued, rc * c);
          }
          changed = true;
          break;
        }
        if (changed) break;
      }
    }
    return x;
  }

  bool is_ideal_member(const PathComb& x) const { return reduce(x).is_zero(); }

  Elem to_elem(const PathComb& x) const {
    PathComb nf = reduce(x);
    Elem e;
    for (const auto& [p, c] : nf.terms) e[basis_index(p)] = c;
    return e;
  }

  Elem unit() const {
    Elem e;
    for (int v = 0; v < num_vertices(); ++v) e[trivial_index_[v]] = Scalar::one(field_);
    return e;
  }

  Elem multiply(const Elem& x, const Elem& y) const {
    PathComb prod;
    for (const auto& [i, ci] : x) {
      const Path& p = basis_[i];
      for (const auto& [j, cj] : y) {
        const Path& q = basis_[j];
        if (!p.composable_with(q, quiver_)) continue;
        prod.add(p.then(q, quiver_), ci * cj);
      }
    }
    return to_elem(prod);
  }

  /// Reverses all arrows and all relation paths. Involutive on the nose.
  BoundQuiverAlgebra opposite(std::optional<int> degree_cap = std::nullopt) const;

  friend BoundQuiverAlgebra complete_rewriting(const FieldSpec& field, const Quiver& q,
                                               const std::vector<Relation>& rels,
                                               std::optional<int> degree_cap);

 private:
  FieldSpec field_;
  Quiver quiver_;
  std::vector<Relation> relations_;
  std::vector<RewriteRule> rules_;
  std::vector<Path> basis_;
  std::map<Path, int> basis_index_;
  std::vector<int> trivial_index_;
  std::vector<int> arrow_index_;
  std::vector<std::vector<int>> sandwich_;
  int nilpotency_ = 1;
};

inline int default_degree_cap(const Quiver& q, const std::vector<Relation>& rels) {
  int cap = static_cast<int>(q.vertices.size());
  for (const auto& r : rels) {
    std::size_t len = 0;
    for (const auto& t : r.terms) len = std::max(len, t.path.length());
    cap += static_cast<int>(len);
  }
  return cap;
}

/// Completes the relations to a confluent rewriting system (length-lex order)
/// and computes the finite normal-form basis. Throws CapExceeded when
/// completion escapes the degree cap, NotAdmissibleAtCap when irreducible
/// paths survive at the cap (the quotient is not visibly finite dimensional).
inline BoundQuiverAlgebra complete_rewriting(const FieldSpec& field, const Quiver& q,
                                             const std::vector<Relation>& rels,
                                             std::optional<int> degree_cap = std::nullopt) {
  Diagnostics diag = validate_relations(q, rels);
  if (!diag.all_ok()) throw Error(ErrorCode::MalformedRelation, diag.first_failure());

  int cap = degree_cap.value_or(default_degree_cap(q, rels));

  BoundQuiverAlgebra alg;
  alg.field_ = field;
  alg.quiver_ = q;
  alg.relations_ = rels;

  auto reduce_with = [&](std::vector<RewriteRule>& rules, PathComb x) {
    bool changed = true;
    while (changed) {
      changed = false;
      for (auto it = x.terms.rbegin(); it != x.terms.rend() && !changed; ++it) {
        const Path p = it->first;
        const Scalar c = it->second;
        for (const auto& rule : rules) {
          int off = detail::find_factor(p, rule.lead);
          if (off < 0) continue;
          Path left = detail::subpath(q, p, 0, off);
          Path right = detail::subpath(q, p, off + rule.lead.arrows.size(),
                                       p.arrows.size() - off - rule.lead.arrows.size());
          x.add(p, -c);
          for (const auto& [rp, rc] : rule.rhs.terms) x.add(left.then(rp, q).then(right, q), rc * c);
          changed = true;
          break;
        }
      }
    }
    return x;
  };

  auto make_rule = [&](PathComb x) -> RewriteRule {
    Scalar lc = x.leading_coef();
    Path lead = x.leading_path();
    RewriteRule r;
    r.lead = lead;
    x.add(lead, -lc);
    Scalar inv = -(lc.inverse());
    for (auto& [p, c] : x.terms) r.rhs.add(p, c * inv);
    return r;
  };

  std::vector<RewriteRule> rules;
  std::vector<PathComb> pending;
  for (const auto& r : rels) {
    PathComb x;
    for (const auto& t : r.terms) x.add(t.path, t.coef);
    pending.push_back(std::move(x));
  }

  auto interreduce = [&]() {
    bool again = true;
    while (again) {
      again = false;
      for (std::size_t i = 0; i < rules.size(); ++i) {
        RewriteRule r = rules[i];
        std::vector<RewriteRule> others;
        for (std::size_t j = 0; j < rules.size(); ++j)
          if (j != i) others.push_back(rules[j]);
        PathComb full;
        full.add(r.lead, Scalar::one(field));
        full.add_scaled(r.rhs, -Scalar::one(field));
        PathComb red = reduce_with(others, full);
        if (red.is_zero()) {
          rules.erase(rules.begin() + i);
          again = true;
          break;
        }
        RewriteRule nr = make_rule(red);
        bool lead_changed = !(nr.lead == r.lead);
        rules[i] = nr;
        if (lead_changed) { again = true; break; }
      }
    }
  };

  std::size_t guard = 0;
  while (!pending.empty()) {
    if (++guard > 20000) throw Error(ErrorCode::CapExceeded, "rewriting completion did not settle");
    PathComb x = reduce_with(rules, pending.back());
    pending.pop_back();
    if (x.is_zero()) continue;
    if ((int)x.leading_path().length() > cap)
      throw Error(ErrorCode::CapExceeded, "completion produced a rule beyond the degree cap");
    RewriteRule nr = make_rule(std::move(x));
    // overlaps of the new rule with everything (including itself)
    rules.push_back(nr);
    interreduce();
    std::vector<PathComb> sps;
    for (const auto& r1 : rules) {
      for (const auto& r2 : rules) {
        const auto& a = r1.lead.arrows;
        const auto& b = r2.lead.arrows;
        // suffix of r1.lead == prefix of r2.lead, proper overlap
        for (std::size_t ol = 1; ol < a.size() && ol < b.size(); ++ol) {
          bool match = true;
          for (std::size_t k = 0; k < ol; ++k)
            if (a[a.size() - ol + k] != b[k]) { match = false; break; }
          if (!match) continue;
          Path u = detail::subpath(q, r1.lead, 0, a.size() - ol);
          Path v = detail::subpath(q, r2.lead, ol, b.size() - ol);
          PathComb s;
          for (const auto& [rp, rc] : r1.rhs.terms) s.add(rp.then(v, q), rc);
          for (const auto& [rp, rc] : r2.rhs.terms) s.add(u.then(rp, q), -rc);
          PathComb red = reduce_with(rules, s);
          if (!red.is_zero()) sps.push_back(std::move(red));
        }
      }
    }
    for (auto& s : sps) pending.push_back(std::move(s));
  }

  alg.rules_ = rules;

  // Normal-form basis by breadth-first extension.
  alg.trivial_index_.assign(q.vertices.size(), -1);
  alg.arrow_index_.assign(q.arrows.size(), -1);
  std::vector<Path> frontier;
  for (int v = 0; v < (int)q.vertices.size(); ++v) {
    Path t = Path::trivial(v);
    alg.trivial_index_[v] = (int)alg.basis_.size();
    alg.basis_.push_back(t);
    frontier.push_back(t);
  }
  std::size_t max_lead = 0;
  for (const auto& r : rules) max_lead = std::max(max_lead, r.lead.arrows.size());
  while (!frontier.empty()) {
    std::vector<Path> next;
    for (const auto& p : frontier) {
      int at = p.target(q);
      for (int a = 0; a < (int)q.arrows.size(); ++a) {
        if (q.arrows[a].source != at) continue;
        Path ext = p;
        ext.arrows.push_back(a);
        // a new factor must be a suffix of ext
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
        if ((int)ext.arrows.size() >= cap)
          throw Error(ErrorCode::NotAdmissibleAtCap,
                      "irreducible path of length " + std::to_string(ext.arrows.size()) +
                          " at the degree cap; quotient not finite dimensional at this cap");
        if (ext.arrows.size() == 1) alg.arrow_index_[ext.arrows[0]] = (int)alg.basis_.size();
        alg.basis_.push_back(ext);
        next.push_back(ext);
      }
    }
    frontier = std::move(next);
  }
  std::sort(alg.basis_.begin(), alg.basis_.end());
  for (int a = 0; a < (int)q.arrows.size(); ++a) alg.arrow_index_[a] = -1;
  for (int i = 0; i < (int)alg.basis_.size(); ++i) {
    alg.basis_index_[alg.basis_[i]] = i;
    if (alg.basis_[i].is_trivial()) alg.trivial_index_[alg.basis_[i].vertex] = i;
    if (alg.basis_[i].length() == 1) alg.arrow_index_[alg.basis_[i].arrows[0]] = i;
  }

  int maxlen = 0;
  alg.sandwich_.assign(q.vertices.size(), std::vector<int>(q.vertices.size(), 0));
  for (const auto& p : alg.basis_) {
    maxlen = std::max<int>(maxlen, (int)p.length());
    alg.sandwich_[p.source()][p.target(q)]++;
  }
  alg.nilpotency_ = maxlen + 1;
  return alg;
}

inline BoundQuiverAlgebra BoundQuiverAlgebra::opposite(std::optional<int> degree_cap) const {
  Quiver oq = quiver_.opposite();
  std::vector<Relation> orels;
  for (const auto& r : relations_) {
    Relation nr;
    for (const auto& t : r.terms) {
      Path p;
      p.arrows.assign(t.path.arrows.rbegin(), t.path.arrows.rend());
      p.vertex = t.path.target(quiver_);
      nr.terms.push_back({t.coef, p});
    }
    orels.push_back(std::move(nr));
  }
  return complete_rewriting(field_, oq, orels, degree_cap);
}

/// Selects a minimal generating subset of the two-sided ideal of the rules,
/// degreewise, by Nakayama: images must span ker/(J ker + ker J).
inline std::vector<Relation> minimal_relations(const BoundQuiverAlgebra& alg) {
  const Quiver& q = alg.quiver();
  const FieldSpec& f = alg.field();
  const auto& rules = alg.rules();
  if (rules.empty()) return {};
  std::size_t bound = 0;
  for (const auto& r : rules) bound = std::max(bound, r.lead.arrows.size());

  // Path space of length <= bound.
  std::vector<Path> paths;
  std::map<Path, int> pindex;
  {
    std::vector<Path> frontier;
    for (int v = 0; v < (int)q.vertices.size(); ++v) frontier.push_back(Path::trivial(v));
    std::vector<Path> all = frontier;
    for (std::size_t len = 1; len <= bound; ++len) {
      std::vector<Path> next;
      for (const auto& p : frontier) {
        int at = p.target(q);
        for (int a = 0; a < (int)q.arrows.size(); ++a)
          if (q.arrows[a].source == at) {
            Path e = p;
            e.arrows.push_back(a);
            next.push_back(e);
          }
      }
      all.insert(all.end(), next.begin(), next.end());
      frontier = std::move(next);
    }
    paths = std::move(all);
    std::sort(paths.begin(), paths.end());
    for (int i = 0; i < (int)paths.size(); ++i) pindex[paths[i]] = i;
  }

  auto to_vec = [&](const PathComb& x, bool& fits) {
    std::vector<Scalar> v(paths.size(), Scalar::zero(f));
    fits = true;
    for (const auto& [p, c] : x.terms) {
      auto it = pindex.find(p);
      if (it == pindex.end()) { fits = false; return v; }
      v[it->second] = c;
    }
    return v;
  };

  auto rule_comb = [&](const RewriteRule& r) {
    PathComb x;
    x.add(r.lead, Scalar::one(f));
    x.add_scaled(r.rhs, -Scalar::one(f));
    return x;
  };

  // Span of p*g*q with len(p)+len(q) >= 1, kept within the window.
  std::vector<std::vector<Scalar>> decomposable;
  for (const auto& g : rules) {
    PathComb gc = rule_comb(g);
    for (const auto& p : paths) {
      for (const auto& qq : paths) {
        if (p.length() + qq.length() == 0) continue;
        PathComb prod;
        bool ok = true;
        for (const auto& [gp, gcoef] : gc.terms) {
          if (!p.composable_with(gp, q) || gp.target(q) != qq.source()) { ok = false; break; }
          Path glued = p.then(gp, q).then(qq, q);
          if (glued.length() > bound) { ok = false; break; }
          prod.add(glued, gcoef);
        }
        if (!ok || prod.is_zero()) continue;
        bool fits = true;
        auto v = to_vec(prod, fits);
        if (fits) decomposable.push_back(std::move(v));
      }
    }
  }

  std::vector<std::vector<Scalar>> span = decomposable;
  std::vector<Relation> chosen;
  std::vector<const RewriteRule*> order;
  for (const auto& r : rules) order.push_back(&r);
  std::sort(order.begin(), order.end(), [](const RewriteRule* a, const RewriteRule* b) {
    return Path::compare(a->lead, b->lead) < 0;
  });
  for (const RewriteRule* r : order) {
    bool fits = true;
    auto v = to_vec(rule_comb(*r), fits);
    Matrix m = from_rows(f, span, paths.size());
    std::size_t rk = span.empty() ? 0 : rank(m);
    span.push_back(v);
    Matrix m2 = from_rows(f, span, paths.size());
    if (rank(m2) == rk) {
      span.pop_back();
      continue;  // redundant generator
    }
    Relation rel;
    rel.terms.push_back({Scalar::one(f), r->lead});
    for (const auto& [p, c] : r->rhs.terms) rel.terms.push_back({-c, p});
    chosen.push_back(std::move(rel));
  }
  return chosen;
}

}  // namespace skewtilt
