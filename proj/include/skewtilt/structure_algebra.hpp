#pragma once

#include "skewtilt/group.hpp"
#include "skewtilt/rewriting.hpp"

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace skewtilt {

class StructureAlgebra;

/// Linear action of a finite group on a StructureAlgebra: one invertible
/// basis matrix per element, each an algebra automorphism.
struct LinearGroupAction {
  FiniteGroup group;
  std::vector<Matrix> matrices;  // column convention: image coords = M * coords
};

/// Finite-dimensional associative algebra by structure constants.
/// Products of endomorphism algebras use composition order (x*y applies y
/// first); this keeps End(A) isomorphic to A for the regular module.
class StructureAlgebra {
 public:
  enum class Provenance { None, BoundQuiver, Skew, Endo };

  StructureAlgebra() = default;

  StructureAlgebra(const FieldSpec& f, std::vector<std::string> labels)
      : field_(f), labels_(std::move(labels)) {
    products_.assign(dim() * dim(), {});
    unit_.assign(dim(), Scalar::zero(f));
  }

  const FieldSpec& field() const { return field_; }
  std::size_t dim() const { return labels_.size(); }
  const std::vector<std::string>& labels() const { return labels_; }
  const std::vector<Scalar>& unit() const { return unit_; }

  void set_unit(std::vector<Scalar> u) { unit_ = std::move(u); }
  void set_product(std::size_t i, std::size_t j, std::vector<std::pair<int, Scalar>> terms) {
    products_[i * dim() + j] = std::move(terms);
  }

  Provenance provenance() const { return provenance_; }
  void set_provenance(Provenance p) { provenance_ = p; }

  /// Indices of a radical basis recorded at construction time when the
  /// provenance makes the radical structurally known.
  const std::optional<std::vector<int>>& structural_radical() const { return structural_radical_; }
  void set_structural_radical(std::vector<int> idx) { structural_radical_ = std::move(idx); }

  const std::vector<std::pair<int, Scalar>>& basis_product(std::size_t i, std::size_t j) const {
    return products_[i * dim() + j];
  }

  std::vector<Scalar> multiply(const std::vector<Scalar>& x, const std::vector<Scalar>& y) const {
    std::vector<Scalar> out(dim(), Scalar::zero(field_));
    for (std::size_t i = 0; i < dim(); ++i) {
      if (x[i].is_zero()) continue;
      for (std::size_t j = 0; j < dim(); ++j) {
        if (y[j].is_zero()) continue;
        Scalar c = x[i] * y[j];
        for (const auto& [k, v] : basis_product(i, j)) out[k] += c * v;
      }
    }
    return out;
  }

  std::vector<Scalar> basis_vector(std::size_t i) const {
    std::vector<Scalar> v(dim(), Scalar::zero(field_));
    v[i] = Scalar::one(field_);
    return v;
  }

  /// Left multiplication operator L_x (column convention: L_x * v = coords of x*v).
  Matrix left_mult(const std::vector<Scalar>& x) const {
    Matrix m(field_, dim(), dim());
    for (std::size_t j = 0; j < dim(); ++j) {
      auto col = multiply(x, basis_vector(j));
      for (std::size_t i = 0; i < dim(); ++i) m.at(i, j) = col[i];
    }
    return m;
  }
  Matrix right_mult(const std::vector<Scalar>& x) const {
    Matrix m(field_, dim(), dim());
    for (std::size_t j = 0; j < dim(); ++j) {
      auto col = multiply(basis_vector(j), x);
      for (std::size_t i = 0; i < dim(); ++i) m.at(i, j) = col[i];
    }
    return m;
  }

  bool is_associative_on_basis() const {
    for (std::size_t i = 0; i < dim(); ++i)
      for (std::size_t j = 0; j < dim(); ++j)
        for (std::size_t k = 0; k < dim(); ++k) {
          auto lhs = multiply(multiply(basis_vector(i), basis_vector(j)), basis_vector(k));
          auto rhs = multiply(basis_vector(i), multiply(basis_vector(j), basis_vector(k)));
          if (lhs != rhs) return false;
        }
    return true;
  }

  bool unit_acts_as_identity() const {
    for (std::size_t i = 0; i < dim(); ++i) {
      if (multiply(unit_, basis_vector(i)) != basis_vector(i)) return false;
      if (multiply(basis_vector(i), unit_) != basis_vector(i)) return false;
    }
    return true;
  }

 private:
  FieldSpec field_;
  std::vector<std::string> labels_;
  std::vector<std::vector<std::pair<int, Scalar>>> products_;
  std::vector<Scalar> unit_;
  Provenance provenance_ = Provenance::None;
  std::optional<std::vector<int>> structural_radical_;
};

/// Structure constants of a bound quiver algebra on its path basis.
inline StructureAlgebra from_bound_quiver(const BoundQuiverAlgebra& alg) {
  std::vector<std::string> labels;
  for (const auto& p : alg.basis()) labels.push_back(p.to_string(alg.quiver()));
  StructureAlgebra sa(alg.field(), std::move(labels));
  for (std::size_t i = 0; i < alg.dim(); ++i) {
    for (std::size_t j = 0; j < alg.dim(); ++j) {
      BoundQuiverAlgebra::Elem x{{(int)i, Scalar::one(alg.field())}};
      BoundQuiverAlgebra::Elem y{{(int)j, Scalar::one(alg.field())}};
      auto prod = alg.multiply(x, y);
      std::vector<std::pair<int, Scalar>> terms(prod.begin(), prod.end());
      sa.set_product(i, j, std::move(terms));
    }
  }
  std::vector<Scalar> unit(alg.dim(), Scalar::zero(alg.field()));
  for (int v = 0; v < alg.num_vertices(); ++v) unit[alg.trivial_index(v)] = Scalar::one(alg.field());
  sa.set_unit(std::move(unit));
  sa.set_provenance(StructureAlgebra::Provenance::BoundQuiver);
  std::vector<int> rad;
  for (std::size_t i = 0; i < alg.dim(); ++i)
    if (alg.basis()[i].length() >= 1) rad.push_back((int)i);
  sa.set_structural_radical(std::move(rad));
  return sa;
}

/// Jacobson radical basis. Uses the provenance-recorded basis when present
/// (arrow ideal; J(A)A[G] for skew algebras); otherwise the trace-form
/// criterion, which is valid over Q only.
inline std::vector<std::vector<Scalar>> radical_basis(const StructureAlgebra& sa) {
  if (sa.structural_radical()) {
    std::vector<std::vector<Scalar>> out;
    for (int i : *sa.structural_radical()) out.push_back(sa.basis_vector(i));
    return out;
  }
  if (!sa.field().is_rationals())
    throw Error(ErrorCode::UnsupportedCharacteristic,
                "radical over GF(p) requires structural provenance (bound quiver or skew)");
  std::size_t n = sa.dim();
  std::vector<Matrix> lmult;
  for (std::size_t i = 0; i < n; ++i) lmult.push_back(sa.left_mult(sa.basis_vector(i)));
  Matrix gram(sa.field(), n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      Scalar tr = Scalar::zero(sa.field());
      for (std::size_t k = 0; k < n; ++k)
        for (std::size_t l = 0; l < n; ++l) tr += lmult[i].at(k, l) * lmult[j].at(l, k);
      gram.at(i, j) = tr;
    }
  auto null_vectors = kernel_basis(gram);
  return null_vectors;
}

/// Skew group algebra of a structure algebra under a linear action:
/// basis pairs (b_i, sigma), product (x sigma)(y tau) = x sigma(y) sigma tau.
inline StructureAlgebra skew_structure_algebra(const StructureAlgebra& base, const LinearGroupAction& act) {
  const FieldSpec& f = base.field();
  int n = act.group.order();
  std::size_t d = base.dim();
  std::vector<std::string> labels;
  for (int g = 0; g < n; ++g)
    for (std::size_t i = 0; i < d; ++i)
      labels.push_back(base.labels()[i] + "." + act.group.elements[g]);
  StructureAlgebra sa(f, std::move(labels));
  auto flat = [&](int g, std::size_t i) { return (std::size_t)g * d + i; };
  for (int g = 0; g < n; ++g) {
    for (std::size_t i = 0; i < d; ++i) {
      for (int h = 0; h < n; ++h) {
        for (std::size_t j = 0; j < d; ++j) {
          // (b_i g)(b_j h) = b_i * g(b_j) * (gh)
          std::vector<Scalar> gy(d, Scalar::zero(f));
          for (std::size_t r = 0; r < d; ++r) gy[r] = act.matrices[g].at(r, j);
          auto prod = base.multiply(base.basis_vector(i), gy);
          int gh = act.group.mul(g, h);
          std::vector<std::pair<int, Scalar>> terms;
          for (std::size_t r = 0; r < d; ++r)
            if (!prod[r].is_zero()) terms.push_back({(int)flat(gh, r), prod[r]});
          sa.set_product(flat(g, i), flat(h, j), std::move(terms));
        }
      }
    }
  }
  std::vector<Scalar> unit(sa.dim(), Scalar::zero(f));
  for (std::size_t i = 0; i < d; ++i) unit[flat(0, i)] = base.unit()[i];
  sa.set_unit(std::move(unit));
  sa.set_provenance(StructureAlgebra::Provenance::Skew);
  if (base.structural_radical()) {
    std::vector<int> rad;
    for (int g = 0; g < n; ++g)
      for (int i : *base.structural_radical()) rad.push_back((int)flat(g, i));
    sa.set_structural_radical(std::move(rad));
  }
  return sa;
}

inline StructureAlgebra opposite_structure_algebra(const StructureAlgebra& sa) {
  StructureAlgebra op(sa.field(), sa.labels());
  for (std::size_t i = 0; i < sa.dim(); ++i)
    for (std::size_t j = 0; j < sa.dim(); ++j) {
      auto terms = sa.basis_product(j, i);
      op.set_product(i, j, std::move(terms));
    }
  op.set_unit(sa.unit());
  if (sa.structural_radical()) op.set_structural_radical(*sa.structural_radical());
  op.set_provenance(sa.provenance());
  return op;
}

}  // namespace skewtilt
