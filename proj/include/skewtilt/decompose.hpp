#pragma once

#include "skewtilt/basic.hpp"
#include "skewtilt/rep.hpp"

#include <optional>
#include <vector>

namespace skewtilt {

/// End(M) as a structure algebra with composition product: x*y applies y
/// first. Hom(X, Y) then embeds as e_Y End e_X, which makes the basic quiver
/// of End(A) come out as the quiver of A.
inline StructureAlgebra endo_algebra(const Representation& m, std::vector<Hom>* basis_out = nullptr) {
  auto basis = hom_space(m, m);
  const FieldSpec& f = m.field();
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < basis.size(); ++i) labels.push_back("f" + std::to_string(i));
  StructureAlgebra sa(f, labels);
  for (std::size_t i = 0; i < basis.size(); ++i)
    for (std::size_t j = 0; j < basis.size(); ++j) {
      Hom comp = hom_compose(m, basis[i], basis[j]);  // x*y = x o y (apply y first)
      auto coords = hom_coordinates(basis, comp, f);
      std::vector<std::pair<int, Scalar>> terms;
      for (std::size_t k = 0; k < coords.size(); ++k)
        if (!coords[k].is_zero()) terms.push_back({(int)k, coords[k]});
      sa.set_product(i, j, std::move(terms));
    }
  if (m.total_dim() == 0) {
    sa.set_unit({});
  } else {
    sa.set_unit(hom_coordinates(basis, identity_hom(m), f));
  }
  sa.set_provenance(StructureAlgebra::Provenance::Endo);
  if (basis_out) *basis_out = std::move(basis);
  return sa;
}

/// Image of an endomorphism as a subrepresentation.
inline SubRep image_subrep(const Representation& m, const Hom& h) {
  const FieldSpec& f = m.field();
  SubRep out;
  out.rep.alg = m.alg;
  std::vector<std::vector<std::vector<Scalar>>> ib(m.alg->num_vertices());
  for (int v = 0; v < m.alg->num_vertices(); ++v) {
    std::vector<std::vector<Scalar>> cols;
    for (std::size_t j = 0; j < h[v].cols(); ++j) {
      std::vector<Scalar> col(m.dims[v], Scalar::zero(f));
      for (int i = 0; i < m.dims[v]; ++i) col[i] = h[v].at(i, j);
      cols.push_back(std::move(col));
    }
    ib[v] = detail::span_basis(f, cols, m.dims[v]);
    out.rep.dims.push_back((int)ib[v].size());
  }
  for (std::size_t a = 0; a < m.quiver().arrows.size(); ++a) {
    const Arrow& ar = m.quiver().arrows[a];
    Matrix mat(f, out.rep.dims[ar.target], out.rep.dims[ar.source]);
    Matrix tgt_basis(f, m.dims[ar.target], out.rep.dims[ar.target]);
    for (int j = 0; j < out.rep.dims[ar.target]; ++j)
      for (int i = 0; i < m.dims[ar.target]; ++i) tgt_basis.at(i, j) = ib[ar.target][j][i];
    for (int j = 0; j < out.rep.dims[ar.source]; ++j) {
      std::vector<Scalar> img(m.dims[ar.target], Scalar::zero(f));
      for (int i = 0; i < m.dims[ar.target]; ++i) {
        Scalar acc = Scalar::zero(f);
        for (int k = 0; k < m.dims[ar.source]; ++k) acc += m.arrow_mats[a].at(i, k) * ib[ar.source][j][k];
        img[i] = acc;
      }
      std::vector<Scalar> coords;
      if (!solve(tgt_basis, img, coords)) throw Error(ErrorCode::Internal, "image is not a subrepresentation");
      for (int i = 0; i < out.rep.dims[ar.target]; ++i) mat.at(i, j) = coords[i];
    }
    out.rep.arrow_mats.push_back(std::move(mat));
  }
  Hom inc;
  for (int v = 0; v < m.alg->num_vertices(); ++v) {
    Matrix mat(f, m.dims[v], out.rep.dims[v]);
    for (int j = 0; j < out.rep.dims[v]; ++j)
      for (int i = 0; i < m.dims[v]; ++i) mat.at(i, j) = ib[v][j][i];
    inc.push_back(std::move(mat));
  }
  out.inclusion = std::move(inc);
  return out;
}

struct Decomposition {
  std::vector<Representation> summands;  // indecomposables, deterministic order
  std::vector<Hom> inclusions;           // into the original module
  std::vector<int> class_index;          // iso class per summand
  std::vector<std::pair<Representation, int>> grouped;  // representative + multiplicity

  Representation sum(const AlgebraPtr& alg) const {
    Representation d = Representation::zero(alg);
    for (std::size_t i = 0; i < summands.size(); ++i)
      d = i == 0 ? summands[i] : direct_sum(d, summands[i]);
    return d;
  }
  Hom witness(const Representation& m) const {
    // stacked inclusions: direct sum -> M
    const FieldSpec& f = m.field();
    Hom h;
    for (int v = 0; v < m.alg->num_vertices(); ++v) {
      int total = 0;
      for (const auto& s : summands) total += s.dims[v];
      Matrix mat(f, m.dims[v], total);
      int off = 0;
      for (std::size_t s = 0; s < summands.size(); ++s) {
        for (std::size_t j = 0; j < inclusions[s][v].cols(); ++j)
          for (std::size_t i = 0; i < inclusions[s][v].rows(); ++i) mat.at(i, off + j) = inclusions[s][v].at(i, j);
        off += summands[s].dims[v];
      }
      h.push_back(std::move(mat));
    }
    return h;
  }
};

namespace detail {

inline Hom compose_inclusion(const Hom& outer, const Hom& inner) {
  Hom h;
  for (std::size_t v = 0; v < outer.size(); ++v) h.push_back(outer[v] * inner[v]);
  return h;
}

/// Recursive Fitting splitting; certifies indecomposability by End dim 1 or,
/// over Q, by primitive idempotents of End(M).
inline void split_into(const Representation& m, const Hom& into_parent,
                       std::vector<Representation>& out, std::vector<Hom>& incs) {
  if (m.total_dim() == 0) return;
  std::vector<Hom> ebasis;
  StructureAlgebra endo = endo_algebra(m, &ebasis);
  if (endo.dim() == 1) {
    out.push_back(m);
    incs.push_back(into_parent);
    return;
  }
  const FieldSpec& f = m.field();
  int dtot = m.total_dim();
  auto try_fitting = [&](const Hom& h) -> bool {
    // h^dtot, then ker/im splitting when proper
    Hom p = h;
    for (int i = 1; i < dtot; ++i) p = hom_compose(m, p, h);
    SubRep ker = kernel_subrep(m, m, p);
    if (ker.rep.total_dim() == 0 || ker.rep.total_dim() == m.total_dim()) return false;
    SubRep im = image_subrep(m, p);
    if (ker.rep.total_dim() + im.rep.total_dim() != m.total_dim()) return false;
    split_into(ker.rep, compose_inclusion(into_parent, ker.inclusion), out, incs);
    split_into(im.rep, compose_inclusion(into_parent, im.inclusion), out, incs);
    return true;
  };
  // candidates: basis endos and eigen-shifted basis endos, then pairwise sums
  for (std::size_t i = 0; i < ebasis.size(); ++i) {
    if (try_fitting(ebasis[i])) return;
    auto mp = detail::min_poly(endo, endo.unit(), endo.basis_vector(i));
    auto [roots, split] = detail::poly_roots(f, mp);
    for (const auto& lam : roots) {
      Hom shifted = hom_add(ebasis[i], hom_scale(identity_hom(m), -lam));
      if (try_fitting(shifted)) return;
    }
  }
  for (std::size_t i = 0; i < ebasis.size(); ++i)
    for (std::size_t j = i + 1; j < ebasis.size(); ++j) {
      Hom s = hom_add(ebasis[i], ebasis[j]);
      if (try_fitting(s)) return;
      auto coords = hom_coordinates(ebasis, s, f);
      // eigen-shifts of the sum
      std::vector<Scalar> vec(endo.dim(), Scalar::zero(f));
      for (std::size_t k = 0; k < coords.size(); ++k) vec[k] = coords[k];
      auto mp = detail::min_poly(endo, endo.unit(), vec);
      auto [roots, split] = detail::poly_roots(f, mp);
      for (const auto& lam : roots) {
        Hom shifted = hom_add(s, hom_scale(identity_hom(m), -lam));
        if (try_fitting(shifted)) return;
      }
    }
  // idempotent route (complete over Q)
  if (f.is_rationals()) {
    IdempotentData idem = lift_idempotents(endo);
    if (idem.idempotents.size() == 1) {
      out.push_back(m);
      incs.push_back(into_parent);
      return;
    }
    for (const auto& e : idem.idempotents) {
      Hom eh = hom_scale(ebasis[0], e[0]);
      for (std::size_t k = 1; k < ebasis.size(); ++k) eh = hom_add(eh, hom_scale(ebasis[k], e[k]));
      SubRep im = image_subrep(m, eh);
      split_into(im.rep, compose_inclusion(into_parent, im.inclusion), out, incs);
    }
    return;
  }
  throw Error(ErrorCode::NonSplitEndo,
              "could not certify a direct-sum decomposition over " + f.to_string() +
                  " (endomorphism ring did not split by Fitting search)");
}

}  // namespace detail

/// Krull-Schmidt decomposition with constructed witness; summands ordered by
/// dimension vector, then discovery order.
inline Decomposition decompose(const Representation& m) {
  Decomposition d;
  std::vector<Representation> parts;
  std::vector<Hom> incs;
  detail::split_into(m, identity_hom(m), parts, incs);
  // deterministic order: by dim vector lexicographically, stable on discovery
  std::vector<std::size_t> order(parts.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return parts[a].dims < parts[b].dims;
  });
  for (auto i : order) {
    d.summands.push_back(parts[i]);
    d.inclusions.push_back(incs[i]);
  }
  d.class_index.assign(d.summands.size(), -1);
  for (std::size_t i = 0; i < d.summands.size(); ++i) {
    if (d.class_index[i] != -1) continue;
    int c = (int)d.grouped.size();
    d.class_index[i] = c;
    int mult = 1;
    for (std::size_t j = i + 1; j < d.summands.size(); ++j) {
      if (d.class_index[j] != -1) continue;
      if (d.summands[i].dims == d.summands[j].dims && is_isomorphic(d.summands[i], d.summands[j])) {
        d.class_index[j] = c;
        ++mult;
      }
    }
    d.grouped.push_back({d.summands[i], mult});
  }
  // witness sanity: the stacked inclusion is invertible
  if (m.total_dim() > 0) {
    Hom w = d.witness(m);
    for (const auto& mat : w)
      if (!is_invertible(mat)) throw Error(ErrorCode::Internal, "decomposition witness is not invertible");
  }
  return d;
}

/// Hereditary test: the radical of every indecomposable projective is
/// projective.
inline bool is_hereditary(const AlgebraPtr& alg) {
  for (int v = 0; v < alg->num_vertices(); ++v) {
    Representation pv = projective(alg, v).rep;
    SubRep rad = syzygy(simple(alg, v));
    // rad P_v = syzygy of S_v
    if (!is_projective(rad.rep)) return false;
    (void)pv;
  }
  return true;
}

}  // namespace skewtilt
