#pragma once

#include "skewtilt/action.hpp"
#include "skewtilt/idempotents.hpp"

#include <memory>
#include <numeric>
#include <optional>
#include <utility>
#include <vector>

namespace skewtilt {

using AlgebraPtr = std::shared_ptr<const BoundQuiverAlgebra>;

/// Finite-dimensional representation: a space per vertex, a matrix per arrow
/// (columns indexed by the source space, rows by the target space).
struct Representation {
  AlgebraPtr alg;
  std::vector<int> dims;
  std::vector<Matrix> arrow_mats;

  const FieldSpec& field() const { return alg->field(); }
  const Quiver& quiver() const { return alg->quiver(); }

  int total_dim() const { return std::accumulate(dims.begin(), dims.end(), 0); }
  bool is_zero() const { return total_dim() == 0; }

  static Representation zero(const AlgebraPtr& alg) {
    Representation r;
    r.alg = alg;
    r.dims.assign(alg->num_vertices(), 0);
    for (const auto& a : alg->quiver().arrows)
      r.arrow_mats.push_back(Matrix(alg->field(), 0, 0));
    (void)alg;
    return r;
  }

  static Representation make(const AlgebraPtr& alg, std::vector<int> dims) {
    Representation r;
    r.alg = alg;
    r.dims = std::move(dims);
    for (const auto& a : alg->quiver().arrows)
      r.arrow_mats.push_back(Matrix(alg->field(), r.dims[a.target], r.dims[a.source]));
    return r;
  }

  Matrix eval_path(const Path& p) const {
    Matrix m = Matrix::identity(field(), dims[p.source()]);
    for (int a : p.arrows) m = arrow_mats[a] * m;
    return m;
  }

  /// Every relation must evaluate to the zero matrix.
  bool satisfies_relations() const {
    for (const auto& rel : alg->relations()) {
      int s = rel.terms[0].path.source();
      int t = rel.terms[0].path.target(quiver());
      Matrix sum(field(), dims[t], dims[s]);
      for (const auto& term : rel.terms) sum = sum + eval_path(term.path) * term.coef;
      if (!sum.is_zero()) return false;
    }
    return true;
  }

  std::vector<int> dim_vector() const { return dims; }
};

inline Representation direct_sum(const Representation& a, const Representation& b) {
  Matrix::require(a.alg.get() == b.alg.get(), "direct sum over different algebras");
  Representation r = Representation::make(a.alg, {});
  r.dims.clear();
  for (int v = 0; v < a.alg->num_vertices(); ++v) r.dims.push_back(a.dims[v] + b.dims[v]);
  r.arrow_mats.clear();
  const FieldSpec& f = a.field();
  for (std::size_t ai = 0; ai < a.arrow_mats.size(); ++ai) {
    const Arrow& ar = a.quiver().arrows[ai];
    Matrix m(f, r.dims[ar.target], r.dims[ar.source]);
    for (std::size_t i = 0; i < a.arrow_mats[ai].rows(); ++i)
      for (std::size_t j = 0; j < a.arrow_mats[ai].cols(); ++j) m.at(i, j) = a.arrow_mats[ai].at(i, j);
    for (std::size_t i = 0; i < b.arrow_mats[ai].rows(); ++i)
      for (std::size_t j = 0; j < b.arrow_mats[ai].cols(); ++j)
        m.at(a.dims[ar.target] + i, a.dims[ar.source] + j) = b.arrow_mats[ai].at(i, j);
    r.arrow_mats.push_back(std::move(m));
  }
  return r;
}

/// Morphism of representations: one matrix per vertex.
using Hom = std::vector<Matrix>;

inline bool hom_is_zero(const Hom& h) {
  for (const auto& m : h)
    if (!m.is_zero()) return false;
  return true;
}

inline Hom hom_compose(const Representation& /*via*/, const Hom& second, const Hom& first) {
  Hom out;
  for (std::size_t v = 0; v < first.size(); ++v) out.push_back(second[v] * first[v]);
  return out;
}

inline Hom hom_add(const Hom& a, const Hom& b) {
  Hom out;
  for (std::size_t v = 0; v < a.size(); ++v) out.push_back(a[v] + b[v]);
  return out;
}

inline Hom hom_scale(const Hom& a, const Scalar& c) {
  Hom out;
  for (const auto& m : a) out.push_back(m * c);
  return out;
}

inline bool hom_is_invertible(const Hom& h) {
  for (const auto& m : h)
    if (!is_invertible(m)) return false;
  return true;
}

inline Hom hom_inverse(const Hom& h) {
  Hom out;
  for (const auto& m : h) out.push_back(inverse(m));
  return out;
}

inline Hom identity_hom(const Representation& m) {
  Hom h;
  for (int v = 0; v < m.alg->num_vertices(); ++v) h.push_back(Matrix::identity(m.field(), m.dims[v]));
  return h;
}

inline bool hom_intertwines(const Representation& m, const Representation& n, const Hom& h) {
  for (std::size_t a = 0; a < m.quiver().arrows.size(); ++a) {
    const Arrow& ar = m.quiver().arrows[a];
    if (!(h[ar.target] * m.arrow_mats[a] - n.arrow_mats[a] * h[ar.source]).is_zero()) return false;
  }
  return true;
}

/// Canonical basis of Hom(M, N), in kernel-basis order of the intertwining
/// system. Unknowns are ordered by vertex, then row-major.
inline std::vector<Hom> hom_space(const Representation& m, const Representation& n) {
  Matrix::require(m.alg.get() == n.alg.get(), "hom over different algebras");
  const FieldSpec& f = m.field();
  int nv = m.alg->num_vertices();
  std::vector<int> offset(nv + 1, 0);
  for (int v = 0; v < nv; ++v) offset[v + 1] = offset[v] + n.dims[v] * m.dims[v];
  int unknowns = offset[nv];
  if (unknowns == 0) return {};

  std::vector<std::vector<Scalar>> rows;
  for (std::size_t a = 0; a < m.quiver().arrows.size(); ++a) {
    const Arrow& ar = m.quiver().arrows[a];
    int s = ar.source, t = ar.target;
    // h_t * M_a - N_a * h_s = 0 : equations indexed by (i < n.dims[t], j < m.dims[s])
    for (int i = 0; i < n.dims[t]; ++i) {
      for (int j = 0; j < m.dims[s]; ++j) {
        std::vector<Scalar> row(unknowns, Scalar::zero(f));
        for (int k = 0; k < m.dims[t]; ++k)
          row[offset[t] + i * m.dims[t] + k] += m.arrow_mats[a].at(k, j);
        for (int k = 0; k < n.dims[s]; ++k)
          row[offset[s] + k * m.dims[s] + j] -= n.arrow_mats[a].at(i, k);
        rows.push_back(std::move(row));
      }
    }
  }
  std::vector<std::vector<Scalar>> sols;
  if (rows.empty()) {
    sols.resize(unknowns);
    for (int i = 0; i < unknowns; ++i) {
      sols[i].assign(unknowns, Scalar::zero(f));
      sols[i][i] = Scalar::one(f);
    }
  } else {
    sols = kernel_basis(from_rows(f, rows, unknowns));
  }
  std::vector<Hom> basis;
  for (const auto& sol : sols) {
    Hom h;
    for (int v = 0; v < nv; ++v) {
      Matrix mat(f, n.dims[v], m.dims[v]);
      for (int i = 0; i < n.dims[v]; ++i)
        for (int j = 0; j < m.dims[v]; ++j) mat.at(i, j) = sol[offset[v] + i * m.dims[v] + j];
      h.push_back(std::move(mat));
    }
    basis.push_back(std::move(h));
  }
  return basis;
}

inline std::size_t hom_dim(const Representation& m, const Representation& n) { return hom_space(m, n).size(); }

/// Coordinates of h over the canonical hom basis.
inline std::vector<Scalar> hom_coordinates(const std::vector<Hom>& basis, const Hom& h, const FieldSpec& f) {
  std::size_t width = 0;
  for (const auto& m : h) width += m.rows() * m.cols();
  auto flatten = [&](const Hom& x) {
    std::vector<Scalar> v;
    v.reserve(width);
    for (const auto& m : x)
      for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) v.push_back(m.at(i, j));
    return v;
  };
  std::vector<std::vector<Scalar>> rows;
  for (const auto& b : basis) rows.push_back(flatten(b));
  std::vector<Scalar> out;
  if (!detail::coords_over(f, rows, flatten(h), out))
    throw Error(ErrorCode::Internal, "hom not in span of basis");
  return out;
}

// ---------------------------------------------------------------------------
// projectives, injectives, simples

struct ProjectiveRep {
  Representation rep;
  int vertex;
  std::vector<std::vector<int>> path_basis;  // per vertex: algebra basis indices of paths vertex -> w
};

/// P_v: the span of paths out of v, graded by target; arrows append.
inline ProjectiveRep projective(const AlgebraPtr& alg, int v) {
  ProjectiveRep pr;
  pr.vertex = v;
  pr.path_basis.assign(alg->num_vertices(), {});
  const Quiver& q = alg->quiver();
  for (std::size_t i = 0; i < alg->basis().size(); ++i) {
    const Path& p = alg->basis()[i];
    if (p.source() == v) pr.path_basis[p.target(q)].push_back((int)i);
  }
  Representation r;
  r.alg = alg;
  for (int w = 0; w < alg->num_vertices(); ++w) r.dims.push_back((int)pr.path_basis[w].size());
  const FieldSpec& f = alg->field();
  for (std::size_t a = 0; a < q.arrows.size(); ++a) {
    const Arrow& ar = q.arrows[a];
    Matrix m(f, r.dims[ar.target], r.dims[ar.source]);
    for (std::size_t j = 0; j < pr.path_basis[ar.source].size(); ++j) {
      BoundQuiverAlgebra::Elem x{{pr.path_basis[ar.source][j], Scalar::one(f)}};
      BoundQuiverAlgebra::Elem arr{{alg->arrow_basis_index((int)a), Scalar::one(f)}};
      auto prod = alg->multiply(x, arr);
      for (const auto& [k, c] : prod) {
        // locate k inside path_basis[ar.target]
        for (std::size_t i = 0; i < pr.path_basis[ar.target].size(); ++i)
          if (pr.path_basis[ar.target][i] == k) m.at(i, j) = c;
      }
    }
    r.arrow_mats.push_back(std::move(m));
  }
  pr.rep = std::move(r);
  return pr;
}

inline Representation simple(const AlgebraPtr& alg, int v) {
  Representation r = Representation::zero(alg);
  r.dims[v] = 1;
  const Quiver& q = alg->quiver();
  for (std::size_t a = 0; a < q.arrows.size(); ++a)
    r.arrow_mats[a] = Matrix(alg->field(), r.dims[q.arrows[a].target], r.dims[q.arrows[a].source]);
  return r;
}

/// Duality D = Hom_k(-, k): a representation of the opposite algebra with
/// transposed arrow matrices.
inline Representation dual(const Representation& m, const AlgebraPtr& op) {
  Representation r;
  r.alg = op;
  r.dims = m.dims;
  const Quiver& q = m.quiver();
  r.arrow_mats.assign(q.arrows.size(), Matrix());
  for (std::size_t a = 0; a < q.arrows.size(); ++a) {
    int oa = op->quiver().arrow_index(q.arrows[a].name);
    r.arrow_mats[oa] = m.arrow_mats[a].transpose();
  }
  return r;
}

inline Representation injective(const AlgebraPtr& alg, const AlgebraPtr& op, int v) {
  return dual(projective(op, v).rep, alg);
}

// ---------------------------------------------------------------------------
// radical, top, covers, syzygies

/// Per-vertex basis of rad M = sum of arrow images.
inline std::vector<std::vector<std::vector<Scalar>>> radical_subspaces(const Representation& m) {
  const FieldSpec& f = m.field();
  std::vector<std::vector<std::vector<Scalar>>> rad(m.alg->num_vertices());
  for (int w = 0; w < m.alg->num_vertices(); ++w) {
    std::vector<std::vector<Scalar>> rows;
    for (std::size_t a = 0; a < m.quiver().arrows.size(); ++a) {
      if (m.quiver().arrows[a].target != w) continue;
      const Matrix& mat = m.arrow_mats[a];
      for (std::size_t j = 0; j < mat.cols(); ++j) {
        std::vector<Scalar> col(m.dims[w], Scalar::zero(f));
        for (int i = 0; i < m.dims[w]; ++i) col[i] = mat.at(i, j);
        rows.push_back(std::move(col));
      }
    }
    rad[w] = detail::span_basis(f, rows, m.dims[w]);
  }
  return rad;
}

struct CoverData {
  Representation proj;             // direct sum of indecomposable projectives
  std::vector<int> summands;       // vertex of each summand, in order
  std::vector<int> summand_offset; // offset of each summand's block at its vertex grading (per vertex handled below)
  Hom map;                         // surjection proj -> M
  // generator positions: for summand s at vertex v = summands[s], the
  // generator is basis vector gen_index[s] of proj at vertex v.
  std::vector<int> gen_index;
  std::vector<ProjectiveRep> pieces;
};

/// Projective cover from top(M): one projective summand per chosen top basis
/// vector, with deterministic lifts (complement coordinates of rad M).
inline CoverData projective_cover(const Representation& m) {
  const FieldSpec& f = m.field();
  auto rad = radical_subspaces(m);
  CoverData cd;
  std::vector<std::pair<int, std::vector<Scalar>>> gens;  // (vertex, lift vector)
  for (int v = 0; v < m.alg->num_vertices(); ++v) {
    Matrix radm = from_rows(f, rad[v], m.dims[v]);
    for (auto c : complement_coords(radm)) {
      std::vector<Scalar> lift(m.dims[v], Scalar::zero(f));
      lift[c] = Scalar::one(f);
      gens.push_back({v, std::move(lift)});
    }
  }
  // assemble the direct sum
  Representation big = Representation::zero(m.alg);
  std::vector<std::vector<int>> starts;  // per summand: start offset per vertex
  for (const auto& [v, lift] : gens) {
    ProjectiveRep p = projective(m.alg, v);
    std::vector<int> st(m.alg->num_vertices());
    for (int w = 0; w < m.alg->num_vertices(); ++w) st[w] = big.dims[w];
    starts.push_back(st);
    big = big.is_zero() && cd.pieces.empty() ? p.rep : direct_sum(big, p.rep);
    cd.pieces.push_back(std::move(p));
    cd.summands.push_back(v);
  }
  if (gens.empty()) big = Representation::zero(m.alg);
  cd.proj = big;
  // the map: on summand s with generator at vertex v_s and lift x_s, a path
  // basis element p: v_s -> w maps to eval_path(m, p)(x_s).
  Hom h;
  for (int w = 0; w < m.alg->num_vertices(); ++w) h.push_back(Matrix(f, m.dims[w], big.dims[w]));
  for (std::size_t s = 0; s < gens.size(); ++s) {
    const auto& [v, lift] = gens[s];
    const ProjectiveRep& piece = cd.pieces[s];
    for (int w = 0; w < m.alg->num_vertices(); ++w) {
      for (std::size_t j = 0; j < piece.path_basis[w].size(); ++j) {
        const Path& p = m.alg->basis()[piece.path_basis[w][j]];
        Matrix pm = m.eval_path(p);
        for (int i = 0; i < m.dims[w]; ++i) {
          Scalar acc = Scalar::zero(f);
          for (int k = 0; k < m.dims[v]; ++k) acc += pm.at(i, k) * lift[k];
          h[w].at(i, starts[s][w] + (int)j) = acc;
        }
      }
    }
  }
  cd.map = std::move(h);
  // surjectivity check
  for (int w = 0; w < m.alg->num_vertices(); ++w)
    if ((int)rank(cd.map[w]) != m.dims[w]) throw Error(ErrorCode::Internal, "projective cover not surjective");
  return cd;
}

struct SubRep {
  Representation rep;
  Hom inclusion;
};

/// Kernel of a morphism as a subrepresentation with inclusion.
inline SubRep kernel_subrep(const Representation& src, const Representation& /*tgt*/, const Hom& h) {
  const FieldSpec& f = src.field();
  SubRep out;
  out.rep.alg = src.alg;
  std::vector<std::vector<std::vector<Scalar>>> kb(src.alg->num_vertices());
  for (int v = 0; v < src.alg->num_vertices(); ++v) {
    kb[v] = kernel_basis(h[v]);
    out.rep.dims.push_back((int)kb[v].size());
  }
  for (std::size_t a = 0; a < src.quiver().arrows.size(); ++a) {
    const Arrow& ar = src.quiver().arrows[a];
    Matrix m(f, out.rep.dims[ar.target], out.rep.dims[ar.source]);
    // image of each kernel basis vector under the arrow, in kernel coords
    Matrix tgt_basis(f, src.dims[ar.target], out.rep.dims[ar.target]);
    for (int j = 0; j < out.rep.dims[ar.target]; ++j)
      for (int i = 0; i < src.dims[ar.target]; ++i) tgt_basis.at(i, j) = kb[ar.target][j][i];
    for (int j = 0; j < out.rep.dims[ar.source]; ++j) {
      std::vector<Scalar> img(src.dims[ar.target], Scalar::zero(f));
      for (int i = 0; i < src.dims[ar.target]; ++i) {
        Scalar acc = Scalar::zero(f);
        for (int k = 0; k < src.dims[ar.source]; ++k) acc += src.arrow_mats[a].at(i, k) * kb[ar.source][j][k];
        img[i] = acc;
      }
      std::vector<Scalar> coords;
      if (!solve(tgt_basis, img, coords)) throw Error(ErrorCode::Internal, "kernel is not a subrepresentation");
      for (int i = 0; i < out.rep.dims[ar.target]; ++i) m.at(i, j) = coords[i];
    }
    out.rep.arrow_mats.push_back(std::move(m));
  }
  Hom inc;
  for (int v = 0; v < src.alg->num_vertices(); ++v) {
    Matrix m(f, src.dims[v], out.rep.dims[v]);
    for (int j = 0; j < out.rep.dims[v]; ++j)
      for (int i = 0; i < src.dims[v]; ++i) m.at(i, j) = kb[v][j][i];
    inc.push_back(std::move(m));
  }
  out.inclusion = std::move(inc);
  return out;
}

inline SubRep syzygy(const Representation& m) {
  CoverData cd = projective_cover(m);
  return kernel_subrep(cd.proj, m, cd.map);
}

inline bool is_projective(const Representation& m) {
  if (m.is_zero()) return true;
  CoverData cd = projective_cover(m);
  return cd.proj.total_dim() == m.total_dim();
}

inline int proj_dimension(const Representation& m, int cap = 32) {
  Representation cur = m;
  int pd = 0;
  while (!is_projective(cur)) {
    cur = syzygy(cur).rep;
    ++pd;
    if (pd > cap) throw Error(ErrorCode::CapExceeded, "projective dimension exceeds cap");
  }
  return pd;
}

/// dim Ext^1(M, N) with representative morphisms from Hom(Omega M, N).
struct Ext1Result {
  int dim = 0;
  std::vector<Hom> representatives;  // classes represented in Hom(syzygy, N)
  Representation syz;
};

inline Ext1Result ext1(const Representation& m, const Representation& n) {
  Ext1Result out;
  if (m.is_zero() || n.is_zero()) { out.syz = Representation::zero(m.alg); return out; }
  CoverData cd = projective_cover(m);
  SubRep om = kernel_subrep(cd.proj, m, cd.map);
  out.syz = om.rep;
  auto hom_om_n = hom_space(om.rep, n);
  if (hom_om_n.empty()) return out;
  auto hom_p_n = hom_space(cd.proj, n);
  // restrictions of Hom(P0, N) along the inclusion
  std::vector<Hom> restricted;
  for (const auto& h : hom_p_n) {
    Hom r;
    for (int v = 0; v < m.alg->num_vertices(); ++v) r.push_back(h[v] * om.inclusion[v]);
    restricted.push_back(std::move(r));
  }
  const FieldSpec& f = m.field();
  auto flatten = [&](const Hom& x) {
    std::vector<Scalar> v;
    for (const auto& mat : x)
      for (std::size_t i = 0; i < mat.rows(); ++i)
        for (std::size_t j = 0; j < mat.cols(); ++j) v.push_back(mat.at(i, j));
    return v;
  };
  std::size_t width = flatten(hom_om_n[0]).size();
  std::vector<std::vector<Scalar>> sub_rows;
  for (const auto& h : restricted) sub_rows.push_back(flatten(h));
  auto sub_basis = detail::span_basis(f, sub_rows, width);
  std::vector<std::vector<Scalar>> span = sub_basis;
  for (const auto& h : hom_om_n) {
    auto v = flatten(h);
    std::vector<Scalar> tmp;
    if (detail::coords_over(f, span, v, tmp)) continue;
    span.push_back(v);
    out.representatives.push_back(h);
  }
  out.dim = (int)out.representatives.size();
  return out;
}

// ---------------------------------------------------------------------------
// transpose and the Auslander-Reiten translation

namespace detail {

struct ProjMap {
  std::vector<int> src_vertices, tgt_vertices;
  // entries[i][j] in e_{tgt i} A e_{src j}: paths tgt_i -> src_j
  std::vector<std::vector<BoundQuiverAlgebra::Elem>> entries;
};

/// Reads the path-combination entries off an explicit map between direct
/// sums of projectives.
inline ProjMap extract_proj_map(const AlgebraPtr& alg, const CoverData& p1, const CoverData& p0, const Hom& d) {
  ProjMap pm;
  pm.src_vertices = p1.summands;
  pm.tgt_vertices = p0.summands;
  const FieldSpec& f = alg->field();
  // offsets of summand blocks per vertex, in target
  int nv = alg->num_vertices();
  std::vector<std::vector<int>> tstart(p0.summands.size(), std::vector<int>(nv, 0));
  {
    std::vector<int> acc(nv, 0);
    for (std::size_t s = 0; s < p0.summands.size(); ++s) {
      for (int w = 0; w < nv; ++w) {
        tstart[s][w] = acc[w];
        acc[w] += (int)p0.pieces[s].path_basis[w].size();
      }
    }
  }
  std::vector<std::vector<int>> sstart(p1.summands.size(), std::vector<int>(nv, 0));
  {
    std::vector<int> acc(nv, 0);
    for (std::size_t s = 0; s < p1.summands.size(); ++s) {
      for (int w = 0; w < nv; ++w) {
        sstart[s][w] = acc[w];
        acc[w] += (int)p1.pieces[s].path_basis[w].size();
      }
    }
  }
  pm.entries.assign(p0.summands.size(), std::vector<BoundQuiverAlgebra::Elem>(p1.summands.size()));
  for (std::size_t j = 0; j < p1.summands.size(); ++j) {
    int vj = p1.summands[j];
    // the generator of summand j sits at vertex vj, local index of trivial path
    int gen_local = -1;
    for (std::size_t k = 0; k < p1.pieces[j].path_basis[vj].size(); ++k)
      if (alg->basis()[p1.pieces[j].path_basis[vj][k]].is_trivial()) gen_local = (int)k;
    if (gen_local < 0) throw Error(ErrorCode::Internal, "projective summand without generator");
    int gen_col = sstart[j][vj] + gen_local;
    for (std::size_t i = 0; i < p0.summands.size(); ++i) {
      BoundQuiverAlgebra::Elem e;
      for (std::size_t k = 0; k < p0.pieces[i].path_basis[vj].size(); ++k) {
        Scalar c = d[vj].at(tstart[i][vj] + k, gen_col);
        if (!c.is_zero()) e[p0.pieces[i].path_basis[vj][k]] = c;
      }
      pm.entries[i][j] = std::move(e);
      (void)f;
    }
  }
  return pm;
}

/// Realizes a path-combination matrix as an explicit morphism between the
/// corresponding direct sums of projectives over `alg`.
inline std::pair<CoverData, std::pair<CoverData, Hom>> realize_proj_map(const AlgebraPtr& alg, const ProjMap& pm) {
  const FieldSpec& f = alg->field();
  auto build = [&](const std::vector<int>& verts) {
    CoverData cd;
    Representation big = Representation::zero(alg);
    for (int v : verts) {
      ProjectiveRep p = projective(alg, v);
      big = (cd.pieces.empty()) ? p.rep : direct_sum(big, p.rep);
      cd.pieces.push_back(std::move(p));
      cd.summands.push_back(v);
    }
    cd.proj = big;
    return cd;
  };
  CoverData src = build(pm.src_vertices);
  CoverData tgt = build(pm.tgt_vertices);
  int nv = alg->num_vertices();
  auto starts = [&](const CoverData& cd) {
    std::vector<std::vector<int>> st(cd.summands.size(), std::vector<int>(nv, 0));
    std::vector<int> acc(nv, 0);
    for (std::size_t s = 0; s < cd.summands.size(); ++s)
      for (int w = 0; w < nv; ++w) {
        st[s][w] = acc[w];
        acc[w] += (int)cd.pieces[s].path_basis[w].size();
      }
    return st;
  };
  auto sstart = starts(src), tstart = starts(tgt);
  Hom h;
  for (int w = 0; w < nv; ++w) h.push_back(Matrix(f, tgt.proj.dims[w], src.proj.dims[w]));
  for (std::size_t j = 0; j < pm.src_vertices.size(); ++j) {
    for (int w = 0; w < nv; ++w) {
      for (std::size_t jj = 0; jj < src.pieces[j].path_basis[w].size(); ++jj) {
        int pidx = src.pieces[j].path_basis[w][jj];
        BoundQuiverAlgebra::Elem pelem{{pidx, Scalar::one(f)}};
        for (std::size_t i = 0; i < pm.tgt_vertices.size(); ++i) {
          // entry * path (entry in e_{tgt} A e_{src j}, path from src j to w)
          auto prod = alg->multiply(pm.entries[i][j], pelem);
          for (const auto& [k, c] : prod) {
            const auto& tb = tgt.pieces[i].path_basis[w];
            for (std::size_t t = 0; t < tb.size(); ++t)
              if (tb[t] == k) h[w].at(tstart[i][w] + t, sstart[j][w] + jj) = c;
          }
        }
      }
    }
  }
  return {src, {tgt, h}};
}

inline BoundQuiverAlgebra::Elem reverse_elem(const AlgebraPtr& alg, const AlgebraPtr& op,
                                             const BoundQuiverAlgebra::Elem& e) {
  BoundQuiverAlgebra::Elem out;
  const Quiver& q = alg->quiver();
  for (const auto& [idx, c] : e) {
    const Path& p = alg->basis()[idx];
    Path rp;
    rp.vertex = p.target(q);
    for (auto it = p.arrows.rbegin(); it != p.arrows.rend(); ++it)
      rp.arrows.push_back(op->quiver().arrow_index(q.arrows[*it].name));
    PathComb pc;
    pc.add(rp, c);
    auto oe = op->to_elem(pc);
    for (const auto& [k, v] : oe) {
      out[k] += v;
      if (out[k].is_zero()) out.erase(k);
    }
  }
  return out;
}

/// Cokernel of a morphism as a quotient representation.
inline Representation cokernel(const Representation& src, const Representation& tgt, const Hom& h) {
  const FieldSpec& f = tgt.field();
  int nv = tgt.alg->num_vertices();
  Representation out;
  out.alg = tgt.alg;
  std::vector<std::vector<std::size_t>> comp(nv);
  std::vector<Matrix> im_rref(nv, Matrix());
  std::vector<std::vector<std::size_t>> pivots(nv);
  for (int v = 0; v < nv; ++v) {
    std::vector<std::vector<Scalar>> rows;
    for (std::size_t j = 0; j < h[v].cols(); ++j) {
      std::vector<Scalar> col(tgt.dims[v], Scalar::zero(f));
      for (int i = 0; i < tgt.dims[v]; ++i) col[i] = h[v].at(i, j);
      rows.push_back(std::move(col));
    }
    Matrix mr = from_rows(f, rows, tgt.dims[v]);
    RrefResult rr = rref(mr);
    im_rref[v] = rr.matrix;
    pivots[v] = rr.pivot_cols;
    std::vector<bool> isp(tgt.dims[v], false);
    for (auto c : rr.pivot_cols) isp[c] = true;
    for (int c = 0; c < tgt.dims[v]; ++c)
      if (!isp[c]) comp[v].push_back(c);
    out.dims.push_back((int)comp[v].size());
  }
  auto project = [&](int v, std::vector<Scalar> x) {
    for (std::size_t i = 0; i < pivots[v].size(); ++i) {
      Scalar c = x[pivots[v][i]];
      if (c.is_zero()) continue;
      for (int k = 0; k < tgt.dims[v]; ++k) x[k] -= c * im_rref[v].at(i, k);
    }
    std::vector<Scalar> out2;
    for (auto c : comp[v]) out2.push_back(x[c]);
    return out2;
  };
  for (std::size_t a = 0; a < tgt.quiver().arrows.size(); ++a) {
    const Arrow& ar = tgt.quiver().arrows[a];
    Matrix m(f, out.dims[ar.target], out.dims[ar.source]);
    for (std::size_t j = 0; j < comp[ar.source].size(); ++j) {
      std::vector<Scalar> x(tgt.dims[ar.source], Scalar::zero(f));
      x[comp[ar.source][j]] = Scalar::one(f);
      std::vector<Scalar> img(tgt.dims[ar.target], Scalar::zero(f));
      for (int i = 0; i < tgt.dims[ar.target]; ++i) {
        Scalar acc = Scalar::zero(f);
        for (int k = 0; k < tgt.dims[ar.source]; ++k) acc += tgt.arrow_mats[a].at(i, k) * x[k];
        img[i] = acc;
      }
      auto pr = project(ar.target, img);
      for (int i = 0; i < out.dims[ar.target]; ++i) m.at(i, j) = pr[i];
    }
    out.arrow_mats.push_back(std::move(m));
  }
  return out;
}

}  // namespace detail

/// Transpose Tr M over the opposite algebra, from a minimal projective
/// presentation.
inline Representation transpose_tr(const Representation& m, const AlgebraPtr& op) {
  if (m.is_zero()) return Representation::zero(op);
  CoverData p0 = projective_cover(m);
  SubRep om = kernel_subrep(p0.proj, m, p0.map);
  if (om.rep.is_zero()) return Representation::zero(op);  // projective module
  CoverData p1cover = projective_cover(om.rep);
  // d = inclusion o cover-map : P1 -> P0
  Hom d;
  for (int v = 0; v < m.alg->num_vertices(); ++v) d.push_back(om.inclusion[v] * p1cover.map[v]);
  detail::ProjMap pm = detail::extract_proj_map(m.alg, p1cover, p0, d);
  // transposed map over op: sources/targets swap, entries reversed
  detail::ProjMap pmt;
  pmt.src_vertices = pm.tgt_vertices;
  pmt.tgt_vertices = pm.src_vertices;
  pmt.entries.assign(pm.src_vertices.size(), std::vector<BoundQuiverAlgebra::Elem>(pm.tgt_vertices.size()));
  for (std::size_t i = 0; i < pm.tgt_vertices.size(); ++i)
    for (std::size_t j = 0; j < pm.src_vertices.size(); ++j)
      pmt.entries[j][i] = detail::reverse_elem(m.alg, op, pm.entries[i][j]);
  auto realized = detail::realize_proj_map(op, pmt);
  return detail::cokernel(realized.first.proj, realized.second.first.proj, realized.second.second);
}

/// Tests whether P_v is a direct summand of M (no decomposition needed):
/// nonzero pairing Hom(P_v, M) x Hom(M, P_v) -> top coefficient of End(P_v).
inline bool has_projective_summand_at(const Representation& m, int v) {
  auto pv = projective(m.alg, v);
  if (m.dims[v] == 0) return false;
  auto fs = hom_space(pv.rep, m);
  if (fs.empty()) return false;
  auto gs = hom_space(m, pv.rep);
  if (gs.empty()) return false;
  // generator coordinate of e_v inside P_v at vertex v
  int gen_local = -1;
  for (std::size_t k = 0; k < pv.path_basis[v].size(); ++k)
    if (m.alg->basis()[pv.path_basis[v][k]].is_trivial()) gen_local = (int)k;
  for (const auto& f : fs)
    for (const auto& g : gs) {
      Matrix comp = g[v] * f[v];
      if (!comp.at(gen_local, gen_local).is_zero()) return true;
    }
  return false;
}

inline bool has_projective_summand(const Representation& m) {
  for (int v = 0; v < m.alg->num_vertices(); ++v)
    if (has_projective_summand_at(m, v)) return true;
  return false;
}

inline bool has_injective_summand(const Representation& m, const AlgebraPtr& op) {
  Representation dm = dual(m, op);
  return has_projective_summand(dm);
}

/// Auslander-Reiten translate D Tr from a minimal presentation.
inline Representation tau(const Representation& m) {
  if (has_projective_summand(m))
    throw Error(ErrorCode::HasProjectiveSummand, "tau of a module with a projective direct summand");
  AlgebraPtr op = std::make_shared<BoundQuiverAlgebra>(m.alg->opposite());
  Representation tr = transpose_tr(m, op);
  return dual(tr, m.alg);
}

inline Representation tau_inverse(const Representation& m) {
  AlgebraPtr op = std::make_shared<BoundQuiverAlgebra>(m.alg->opposite());
  if (has_injective_summand(m, op))
    throw Error(ErrorCode::HasInjectiveSummand, "tau^{-1} of a module with an injective direct summand");
  Representation dm = dual(m, op);
  return transpose_tr(dm, m.alg);
}

// ---------------------------------------------------------------------------
// twists

/// ^g M: vertex spaces permuted by g^{-1}, arrow matrices relocated and
/// scaled by the inverse element's twist. twist(M, identity) == M on the nose.
inline Representation twist(const Representation& m, int g, const AlgebraAction& act) {
  int ginv = act.group.inverse(g);
  Representation r;
  r.alg = m.alg;
  r.dims.assign(m.dims.size(), 0);
  for (std::size_t v = 0; v < m.dims.size(); ++v) r.dims[v] = m.dims[act.vertex_perm[ginv][v]];
  r.arrow_mats.assign(m.arrow_mats.size(), Matrix());
  for (std::size_t a = 0; a < m.arrow_mats.size(); ++a) {
    int ia = act.arrow_perm[ginv][a];
    r.arrow_mats[a] = m.arrow_mats[ia] * act.arrow_scalar[ginv][a];
  }
  return r;
}

// ---------------------------------------------------------------------------
// module isomorphism search

/// Deterministic search for an invertible morphism M -> N. Tries basis
/// elements, then greedy rank improvement, then bounded-coefficient sums.
inline std::optional<Hom> find_iso(const Representation& m, const Representation& n) {
  if (m.dims != n.dims) return std::nullopt;
  if (m.total_dim() == 0) return Hom{};
  auto basis = hom_space(m, n);
  if (basis.empty()) return std::nullopt;
  auto rank_sum = [&](const Hom& h) {
    std::size_t s = 0;
    for (const auto& mat : h) s += rank(mat);
    return s;
  };
  std::size_t full = 0;
  for (int d : m.dims) full += d;
  for (const auto& h : basis)
    if (hom_is_invertible(h)) return h;
  // greedy improvement
  Hom cur = basis[0];
  std::size_t cr = rank_sum(cur);
  const FieldSpec& f = m.field();
  std::vector<Scalar> coeffs{Scalar::one(f), -Scalar::one(f), Scalar(f, 2), Scalar(f, 3)};
  bool improved = true;
  while (cr < full && improved) {
    improved = false;
    for (const auto& h : basis) {
      for (const auto& c : coeffs) {
        Hom cand = hom_add(cur, hom_scale(h, c));
        std::size_t r = rank_sum(cand);
        if (r > cr) {
          cur = cand;
          cr = r;
          improved = true;
          break;
        }
      }
      if (improved) break;
    }
  }
  if (cr == full && hom_is_invertible(cur)) return cur;
  // bounded exhaustive fallback over small coefficient tuples
  std::vector<Scalar> pool;
  if (f.is_rationals()) {
    for (int c = -2; c <= 2; ++c) pool.push_back(Scalar(f, c));
  } else {
    for (std::int64_t c = 0; c < f.p; ++c) pool.push_back(Scalar(f, c));
  }
  std::size_t k = basis.size();
  double total = 1;
  for (std::size_t i = 0; i < k; ++i) {
    total *= pool.size();
    if (total > 200000) return std::nullopt;  // search budget
  }
  std::vector<std::size_t> idx(k, 0);
  while (true) {
    Hom cand;
    bool nonzero = false;
    for (std::size_t i = 0; i < k; ++i)
      if (!pool[idx[i]].is_zero()) nonzero = true;
    if (nonzero) {
      cand = hom_scale(basis[0], pool[idx[0]]);
      for (std::size_t i = 1; i < k; ++i) cand = hom_add(cand, hom_scale(basis[i], pool[idx[i]]));
      if (hom_is_invertible(cand)) return cand;
    }
    std::size_t pos = 0;
    while (pos < k && ++idx[pos] == pool.size()) {
      idx[pos] = 0;
      ++pos;
    }
    if (pos == k) break;
  }
  return std::nullopt;
}

inline bool is_isomorphic(const Representation& m, const Representation& n) {
  return find_iso(m, n).has_value();
}

}  // namespace skewtilt
