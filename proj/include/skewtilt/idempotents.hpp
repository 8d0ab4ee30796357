#pragma once

#include "skewtilt/structure_algebra.hpp"

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

namespace skewtilt {

namespace detail {

inline Matrix rows_matrix(const FieldSpec& f, const std::vector<std::vector<Scalar>>& rows, std::size_t width) {
  return from_rows(f, rows, width);
}

/// Coordinates of v over the given spanning rows (first solution); false if
/// v is outside the span.
inline bool coords_over(const FieldSpec& f, const std::vector<std::vector<Scalar>>& rows,
                        const std::vector<Scalar>& v, std::vector<Scalar>& out) {
  if (rows.empty()) {
    for (const auto& s : v)
      if (!s.is_zero()) return false;
    out.clear();
    return true;
  }
  Matrix m(f, v.size(), rows.size());
  for (std::size_t j = 0; j < rows.size(); ++j)
    for (std::size_t i = 0; i < v.size(); ++i) m.at(i, j) = rows[j][i];
  return solve(m, v, out);
}

inline bool in_span(const FieldSpec& f, const std::vector<std::vector<Scalar>>& rows, const std::vector<Scalar>& v) {
  std::vector<Scalar> tmp;
  return coords_over(f, rows, v, tmp);
}

inline std::vector<std::vector<Scalar>> span_basis(const FieldSpec& f,
                                                   const std::vector<std::vector<Scalar>>& rows,
                                                   std::size_t width) {
  if (rows.empty()) return {};
  return row_space_basis(rows_matrix(f, rows, width));
}

/// Rescales a vector so powers do not blow up: over Q to coprime integer
/// entries with positive leading sign, over GF(p) to leading entry 1.
/// Scaling is harmless wherever only the line through the vector matters.
inline std::vector<Scalar> normalize_vector(const FieldSpec& f, std::vector<Scalar> v) {
  if (f.is_rationals()) {
    BigInt den = 1, num = 0;
    for (const auto& s : v) {
      if (s.is_zero()) continue;
      den = boost::multiprecision::lcm(den, boost::multiprecision::denominator(s.rational()));
      num = boost::multiprecision::gcd(num, boost::multiprecision::numerator(s.rational()));
    }
    if (num == 0) return v;
    Scalar scale = Scalar::from_rational(f, BigRat(den, num < 0 ? BigInt(-num) : num));
    for (auto& s : v) s *= scale;
    for (const auto& s : v) {
      if (s.is_zero()) continue;
      if (boost::multiprecision::numerator(s.rational()) < 0)
        for (auto& t : v) t = -t;
      break;
    }
    return v;
  }
  for (const auto& s : v) {
    if (s.is_zero()) continue;
    Scalar inv = s.inverse();
    for (auto& t : v) t *= inv;
    break;
  }
  return v;
}

/// Monic minimal polynomial of x inside the span of its powers, computed with
/// the supplied unit. Returns coefficients c_0..c_d with x^d = -(sum c_i x^i)
/// ... stored as monic poly p(t) = t^d + c_{d-1} t^{d-1} + ... + c_0.
inline std::vector<Scalar> min_poly(const StructureAlgebra& sa, const std::vector<Scalar>& unit,
                                    const std::vector<Scalar>& x) {
  const FieldSpec& f = sa.field();
  std::vector<std::vector<Scalar>> powers{unit};
  std::vector<Scalar> cur = unit;
  for (std::size_t d = 1; d <= sa.dim() + 1; ++d) {
    cur = sa.multiply(cur, x);
    std::vector<Scalar> coef;
    if (coords_over(f, powers, cur, coef)) {
      std::vector<Scalar> monic(d, Scalar::zero(f));
      for (std::size_t i = 0; i < coef.size(); ++i) monic[i] = -coef[i];
      return monic;  // t^d + sum monic[i] t^i with monic holding low coeffs
    }
    powers.push_back(cur);
  }
  throw Error(ErrorCode::Internal, "minimal polynomial not found");
}

/// All roots of the monic polynomial (low coefficients in `low`, degree =
/// low.size()) lying in the field, with the fully-split flag.
inline std::pair<std::vector<Scalar>, bool> poly_roots(const FieldSpec& f, std::vector<Scalar> low) {
  std::vector<Scalar> roots;
  auto eval = [&](const std::vector<Scalar>& coeffs, const Scalar& t) {
    Scalar v = Scalar::one(f);
    Scalar acc = Scalar::zero(f);
    for (const auto& c : coeffs) {
      acc += c * v;
      v *= t;
    }
    acc += v;  // monic top term
    return acc;
  };
  auto deflate = [&](std::vector<Scalar>& coeffs, const Scalar& r) {
    // divide monic poly by (t - r): synthetic division
    std::size_t d = coeffs.size();
    std::vector<Scalar> q(d >= 1 ? d - 1 : 0, Scalar::zero(f));
    Scalar carry = Scalar::one(f);  // leading coefficient
    for (std::size_t i = d; i-- > 0;) {
      if (i > 0) q[i - 1] = carry;
      carry = coeffs[i] + carry * r;
    }
    coeffs = q;
  };
  while (!low.empty()) {
    bool found = false;
    if (f.is_rationals()) {
      // rational root candidates p/q from the integer-cleared polynomial
      BigInt lead_den = 1;
      for (const auto& c : low) lead_den = boost::multiprecision::lcm(lead_den, boost::multiprecision::denominator(c.rational()));
      std::vector<BigInt> ints;
      for (const auto& c : low) ints.push_back(boost::multiprecision::numerator(c.rational()) * (lead_den / boost::multiprecision::denominator(c.rational())));
      BigInt a0 = ints.empty() ? BigInt(0) : ints[0];
      BigInt ad = lead_den;  // top coefficient after clearing
      if (a0 == 0) {
        Scalar r = Scalar::zero(f);
        roots.push_back(r);
        deflate(low, r);
        continue;
      }
      auto divisors = [](BigInt n) {
        if (n < 0) n = -n;
        std::vector<BigInt> ds;
        for (BigInt d = 1; d * d <= n; ++d)
          if (n % d == 0) {
            ds.push_back(d);
            ds.push_back(n / d);
          }
        std::sort(ds.begin(), ds.end());
        ds.erase(std::unique(ds.begin(), ds.end()), ds.end());
        return ds;
      };
      for (const BigInt& p : divisors(a0)) {
        for (const BigInt& q : divisors(ad)) {
          for (int sign = 0; sign < 2 && !found; ++sign) {
            BigRat cand(sign ? -p : p, q);
            Scalar r = Scalar::from_rational(f, cand);
            if (eval(low, r).is_zero()) {
              roots.push_back(r);
              deflate(low, r);
              found = true;
            }
          }
          if (found) break;
        }
        if (found) break;
      }
    } else {
      for (std::int64_t c = 0; c < f.p && !found; ++c) {
        Scalar r(f, c);
        if (eval(low, r).is_zero()) {
          roots.push_back(r);
          deflate(low, r);
          found = true;
        }
      }
    }
    if (!found) return {roots, false};
  }
  return {roots, true};
}

}  // namespace detail

/// Complete set of primitive orthogonal idempotents with iso-class data and
/// two-sided witnesses realizing the isomorphisms of projectives.
struct IdempotentData {
  std::vector<std::vector<Scalar>> idempotents;
  std::vector<int> class_of;
  std::vector<int> class_rep;  // index into idempotents per class
  // For idempotent i with rep r: u[i] in e_r A e_i, v[i] in e_i A e_r,
  // u[i] v[i] = e_r and v[i] u[i] = e_i.
  std::vector<std::vector<Scalar>> witness_u, witness_v;
};

/// Primitive orthogonal idempotents of a split semisimple structure algebra.
/// Throws NonSplitQuotient when a simple factor is not a full matrix algebra
/// over the base field.
inline std::vector<std::vector<Scalar>> semisimple_primitive_idempotents(const StructureAlgebra& S) {
  const FieldSpec& f = S.field();
  auto nonsplit = [&](const std::string& why) {
    std::string hint;
    if (!f.is_rationals()) hint = "; a larger GF(p) with the needed roots of unity may split it";
    return Error(ErrorCode::NonSplitQuotient, "semisimple quotient does not split over " + f.to_string() + ": " + why + hint);
  };

  // Center of S: z with b z = z b for every basis element b.
  std::vector<std::vector<Scalar>> center;
  {
    std::size_t n = S.dim();
    std::vector<std::vector<Scalar>> rows;
    for (std::size_t b = 0; b < n; ++b) {
      Matrix l = S.left_mult(S.basis_vector(b));
      Matrix r = S.right_mult(S.basis_vector(b));
      Matrix d = l - r;
      for (std::size_t i = 0; i < n; ++i) rows.push_back(d.row(i));
    }
    Matrix big = from_rows(f, rows, n);
    for (auto& v : kernel_basis(big)) center.push_back(detail::normalize_vector(f, v));
  }

  // Split the center into one-dimensional components.
  std::vector<std::vector<Scalar>> comps{S.unit()};
  auto comp_dim = [&](const std::vector<Scalar>& eps) {
    std::vector<std::vector<Scalar>> rows;
    for (const auto& z : center) rows.push_back(S.multiply(eps, z));
    return detail::span_basis(f, rows, S.dim()).size();
  };
  bool progress = true;
  while (progress) {
    progress = false;
    for (std::size_t ci = 0; ci < comps.size(); ++ci) {
      if (comp_dim(comps[ci]) <= 1) continue;
      const std::vector<Scalar> eps = comps[ci];
      for (const auto& z : center) {
        std::vector<Scalar> y = detail::normalize_vector(f, S.multiply(eps, z));
        auto mp = detail::min_poly(S, eps, y);
        if (mp.size() <= 1) continue;
        auto [roots, split] = detail::poly_roots(f, mp);
        if (!split) throw nonsplit("a central element has an irreducible factor of degree >= 2");
        // Lagrange idempotents for the distinct roots.
        std::vector<std::vector<Scalar>> pieces;
        for (const auto& lam : roots) {
          std::vector<Scalar> e = eps;
          Scalar denom = Scalar::one(f);
          for (const auto& mu : roots) {
            if (mu == lam) continue;
            // e <- e*(y - mu eps), computed as e*y - mu*e
            std::vector<Scalar> ey = S.multiply(e, y);
            for (std::size_t k = 0; k < ey.size(); ++k) ey[k] = ey[k] - mu * e[k];
            e = ey;
            denom *= (lam - mu);
          }
          Scalar inv = denom.inverse();
          for (auto& c : e) c *= inv;
          pieces.push_back(std::move(e));
        }
        if (pieces.size() >= 2) {
          comps.erase(comps.begin() + ci);
          for (auto& p : pieces) comps.push_back(std::move(p));
          progress = true;
        }
        break;
      }
      if (progress) break;
    }
  }
  for (const auto& eps : comps)
    if (comp_dim(eps) != 1) throw nonsplit("center did not split into one-dimensional components");

  // Inside each block, peel primitive idempotents via minimal right ideals.
  std::vector<std::vector<Scalar>> prims;
  for (const auto& eps : comps) {
    // block basis
    std::vector<std::vector<Scalar>> brows;
    for (std::size_t b = 0; b < S.dim(); ++b)
      brows.push_back(S.multiply(S.multiply(eps, S.basis_vector(b)), eps));
    auto block = detail::span_basis(f, brows, S.dim());
    std::size_t bd = block.size();
    std::size_t n = 0;
    while (n * n < bd) ++n;
    if (n * n != bd) throw nonsplit("a simple block has non-square dimension " + std::to_string(bd));

    std::vector<Scalar> unit_c = eps;
    std::vector<std::vector<Scalar>> corner = block;  // current corner algebra f S f
    std::vector<Scalar> corner_unit = unit_c;
    std::size_t remaining = n;
    while (remaining > 0) {
      if (remaining == 1) {
        prims.push_back(corner_unit);
        break;
      }
      // find a minimal right ideal of the corner
      std::vector<std::vector<Scalar>> R = corner;
      std::size_t target = detail::span_basis(f, corner, S.dim()).size() / remaining;  // = dim of simple module
      auto right_ideal = [&](const std::vector<Scalar>& x) {
        std::vector<std::vector<Scalar>> rows;
        for (const auto& b : corner) rows.push_back(S.multiply(x, b));
        return detail::span_basis(f, rows, S.dim());
      };
      bool stuck = false;
      while (R.size() > target && !stuck) {
        stuck = true;
        for (auto& r : R) r = detail::normalize_vector(f, r);
        std::vector<std::vector<Scalar>> candidates = R;
        for (std::size_t i = 0; i < R.size() && candidates.size() < 200; ++i)
          for (std::size_t j = i + 1; j < R.size() && candidates.size() < 200; ++j) {
            std::vector<Scalar> s = R[i], d2 = R[i];
            for (std::size_t k = 0; k < s.size(); ++k) {
              s[k] += R[j][k];
              d2[k] -= R[j][k];
            }
            candidates.push_back(s);
            candidates.push_back(d2);
          }
        if (R.size() == corner.size()) {
          // top level: include root shifts b - lambda * unit
          for (const auto& b0 : R) {
            auto b = detail::normalize_vector(f, b0);
            auto mp = detail::min_poly(S, corner_unit, b);
            auto [roots, split] = detail::poly_roots(f, mp);
            for (const auto& lam : roots) {
              std::vector<Scalar> sh = b;
              for (std::size_t k = 0; k < sh.size(); ++k) sh[k] -= lam * corner_unit[k];
              candidates.push_back(sh);
            }
          }
        }
        for (const auto& c : candidates) {
          bool zero = std::all_of(c.begin(), c.end(), [](const Scalar& s) { return s.is_zero(); });
          if (zero) continue;
          auto I = right_ideal(c);
          if (!I.empty() && I.size() < R.size()) {
            R = I;
            stuck = false;
            break;
          }
        }
      }
      if (R.size() != target) throw nonsplit("no minimal right ideal found in a simple block");
      // left identity e of R: e in R with e*y = y for all y in R-basis
      std::size_t m = R.size();
      std::vector<std::vector<Scalar>> rows;  // unknown coeffs over R-basis
      std::vector<Scalar> rhs;
      Matrix sys(f, m * S.dim(), m);
      for (std::size_t yi = 0; yi < m; ++yi) {
        for (std::size_t bi = 0; bi < m; ++bi) {
          auto prod = S.multiply(R[bi], R[yi]);
          for (std::size_t k = 0; k < S.dim(); ++k) sys.at(yi * S.dim() + k, bi) = prod[k];
        }
      }
      std::vector<Scalar> b;
      for (std::size_t yi = 0; yi < m; ++yi)
        for (std::size_t k = 0; k < S.dim(); ++k) b.push_back(R[yi][k]);
      std::vector<Scalar> sol;
      if (!solve(sys, b, sol)) throw nonsplit("minimal right ideal has no idempotent generator");
      std::vector<Scalar> e(S.dim(), Scalar::zero(f));
      for (std::size_t bi = 0; bi < m; ++bi)
        for (std::size_t k = 0; k < S.dim(); ++k) e[k] += sol[bi] * R[bi][k];
      prims.push_back(e);
      // corner <- (f - e) corner (f - e)
      std::vector<Scalar> fminus = corner_unit;
      for (std::size_t k = 0; k < fminus.size(); ++k) fminus[k] -= e[k];
      std::vector<std::vector<Scalar>> crows;
      for (const auto& bb : corner) crows.push_back(S.multiply(S.multiply(fminus, bb), fminus));
      corner = detail::span_basis(f, crows, S.dim());
      corner_unit = fminus;
      --remaining;
    }
  }
  return prims;
}

struct SemisimpleQuotient {
  std::vector<std::vector<Scalar>> jbasis;     // radical basis (ambient coords)
  std::vector<std::size_t> comp_coords;        // coordinates spanning a complement
  StructureAlgebra S;                          // quotient structure constants
  // reduce ambient vector mod J, then restrict to complement coords
  Matrix jr;  // rref of radical rows
  std::vector<std::size_t> jpivots;

  std::vector<Scalar> reduce_mod_j(const StructureAlgebra& amb, std::vector<Scalar> v) const {
    for (std::size_t i = 0; i < jpivots.size(); ++i) {
      Scalar c = v[jpivots[i]];
      if (c.is_zero()) continue;
      for (std::size_t k = 0; k < v.size(); ++k) v[k] -= c * jr.at(i, k);
    }
    return v;
  }
  std::vector<Scalar> to_s(const StructureAlgebra& amb, const std::vector<Scalar>& v) const {
    auto r = reduce_mod_j(amb, v);
    std::vector<Scalar> out;
    for (auto c : comp_coords) out.push_back(r[c]);
    return out;
  }
  std::vector<Scalar> from_s(const StructureAlgebra& amb, const std::vector<Scalar>& sv) const {
    std::vector<Scalar> out(amb.dim(), Scalar::zero(amb.field()));
    for (std::size_t i = 0; i < comp_coords.size(); ++i) out[comp_coords[i]] = sv[i];
    return out;
  }
};

inline SemisimpleQuotient semisimple_quotient(const StructureAlgebra& sa) {
  SemisimpleQuotient q;
  q.jbasis = radical_basis(sa);
  const FieldSpec& f = sa.field();
  if (q.jbasis.empty()) {
    q.jr = Matrix(f, 0, sa.dim());
  } else {
    auto r = rref(from_rows(f, q.jbasis, sa.dim()));
    q.jr = r.matrix;
    q.jpivots = r.pivot_cols;
    q.jbasis = row_space_basis(from_rows(f, q.jbasis, sa.dim()));
  }
  std::vector<bool> pivot(sa.dim(), false);
  for (auto c : q.jpivots) pivot[c] = true;
  for (std::size_t c = 0; c < sa.dim(); ++c)
    if (!pivot[c]) q.comp_coords.push_back(c);

  std::vector<std::string> labels;
  for (auto c : q.comp_coords) labels.push_back(sa.labels()[c]);
  StructureAlgebra S(f, labels);
  for (std::size_t i = 0; i < q.comp_coords.size(); ++i)
    for (std::size_t j = 0; j < q.comp_coords.size(); ++j) {
      auto prod = sa.multiply(sa.basis_vector(q.comp_coords[i]), sa.basis_vector(q.comp_coords[j]));
      auto sv = q.to_s(sa, prod);
      std::vector<std::pair<int, Scalar>> terms;
      for (std::size_t k = 0; k < sv.size(); ++k)
        if (!sv[k].is_zero()) terms.push_back({(int)k, sv[k]});
      S.set_product(i, j, std::move(terms));
    }
  S.set_unit(q.to_s(sa, sa.unit()));
  q.S = std::move(S);
  return q;
}

/// Nilpotency degree of the radical: least N with J^N = 0.
inline int radical_nilpotency(const StructureAlgebra& sa, const std::vector<std::vector<Scalar>>& jbasis) {
  const FieldSpec& f = sa.field();
  std::vector<std::vector<Scalar>> power = jbasis;
  int n = 1;
  while (!power.empty()) {
    ++n;
    std::vector<std::vector<Scalar>> rows;
    for (const auto& a : power)
      for (const auto& b : jbasis) rows.push_back(sa.multiply(a, b));
    power = detail::span_basis(f, rows, sa.dim());
    if (n > (int)sa.dim() + 2) throw Error(ErrorCode::Internal, "radical is not nilpotent");
  }
  return n;
}

/// Lifts the complete list of primitive orthogonal idempotents of sa/J to sa
/// by Newton iteration e <- 3e^2 - 2e^3 in successive corners.
inline IdempotentData lift_idempotents(const StructureAlgebra& sa) {
  const FieldSpec& f = sa.field();
  SemisimpleQuotient q = semisimple_quotient(sa);
  auto prims_s = semisimple_primitive_idempotents(q.S);

  IdempotentData out;
  std::vector<Scalar> lifted_sum(sa.dim(), Scalar::zero(f));
  for (const auto& es : prims_s) {
    std::vector<Scalar> x = q.from_s(sa, es);
    // corner-correct against previously lifted idempotents
    std::vector<Scalar> one_minus = sa.unit();
    for (std::size_t k = 0; k < sa.dim(); ++k) one_minus[k] -= lifted_sum[k];
    x = sa.multiply(sa.multiply(one_minus, x), one_minus);
    int guard = 0;
    while (sa.multiply(x, x) != x) {
      auto x2 = sa.multiply(x, x);
      auto x3 = sa.multiply(x2, x);
      for (std::size_t k = 0; k < sa.dim(); ++k) {
        x[k] = x2[k] * Scalar(f, 3) - x3[k] * Scalar(f, 2);
      }
      if (++guard > 64) throw Error(ErrorCode::Internal, "idempotent lifting did not converge");
    }
    for (std::size_t k = 0; k < sa.dim(); ++k) lifted_sum[k] += x[k];
    out.idempotents.push_back(std::move(x));
  }
  if (lifted_sum != sa.unit()) throw Error(ErrorCode::Internal, "lifted idempotents do not sum to 1");

  // iso classes: block membership of images in S (same block <=> isomorphic
  // projectives), witnesses constructed afterwards by lifting matrix units.
  std::vector<std::vector<Scalar>> s_images;
  for (const auto& e : out.idempotents) s_images.push_back(q.to_s(sa, e));

  auto same_block = [&](const std::vector<Scalar>& a, const std::vector<Scalar>& b) {
    // e, f primitive in split S: same block iff e S f != 0
    for (std::size_t k = 0; k < q.S.dim(); ++k) {
      auto prod = q.S.multiply(q.S.multiply(a, q.S.basis_vector(k)), b);
      if (!std::all_of(prod.begin(), prod.end(), [](const Scalar& s) { return s.is_zero(); })) return true;
    }
    return false;
  };

  out.class_of.assign(out.idempotents.size(), -1);
  for (std::size_t i = 0; i < out.idempotents.size(); ++i) {
    if (out.class_of[i] != -1) continue;
    int c = (int)out.class_rep.size();
    out.class_of[i] = c;
    out.class_rep.push_back((int)i);
    for (std::size_t j = i + 1; j < out.idempotents.size(); ++j)
      if (out.class_of[j] == -1 && same_block(s_images[i], s_images[j])) out.class_of[j] = c;
  }

  // witnesses
  out.witness_u.resize(out.idempotents.size());
  out.witness_v.resize(out.idempotents.size());
  int nilp = radical_nilpotency(sa, q.jbasis);
  for (std::size_t i = 0; i < out.idempotents.size(); ++i) {
    int r = out.class_rep[out.class_of[i]];
    const auto& er = out.idempotents[r];
    const auto& ei = out.idempotents[i];
    if ((int)i == r) {
      out.witness_u[i] = er;
      out.witness_v[i] = er;
      continue;
    }
    // find ubar in S with er * ubar * ei nonzero: search basis sandwich
    std::vector<Scalar> u0;
    for (std::size_t k = 0; k < sa.dim(); ++k) {
      auto cand = sa.multiply(sa.multiply(er, sa.basis_vector(k)), ei);
      auto scand = q.to_s(sa, cand);
      if (!std::all_of(scand.begin(), scand.end(), [](const Scalar& s) { return s.is_zero(); })) {
        u0 = cand;
        break;
      }
    }
    if (u0.empty()) throw Error(ErrorCode::Internal, "no sandwich witness for isomorphic idempotents");
    // solve vbar in ei S er with ubar vbar = er mod J; then correct
    // v0 unknown over sandwich basis of ei A er
    std::vector<std::vector<Scalar>> sand;
    for (std::size_t k = 0; k < sa.dim(); ++k) sand.push_back(sa.multiply(sa.multiply(ei, sa.basis_vector(k)), er));
    sand = detail::span_basis(f, sand, sa.dim());
    Matrix sys(f, sa.dim(), sand.size());
    for (std::size_t j = 0; j < sand.size(); ++j) {
      auto prod = sa.multiply(u0, sand[j]);
      // want = er mod J: impose reduce_mod_j(prod) = reduce_mod_j(er)
      auto red = q.reduce_mod_j(sa, prod);
      for (std::size_t k = 0; k < sa.dim(); ++k) sys.at(k, j) = red[k];
    }
    std::vector<Scalar> rhs = q.reduce_mod_j(sa, er);
    std::vector<Scalar> sol;
    if (!solve(sys, rhs, sol)) throw Error(ErrorCode::Internal, "matrix unit lift failed");
    std::vector<Scalar> v0(sa.dim(), Scalar::zero(f));
    for (std::size_t j = 0; j < sand.size(); ++j)
      for (std::size_t k = 0; k < sa.dim(); ++k) v0[k] += sol[j] * sand[j][k];
    // u0 v0 = er - j with j nilpotent in the corner; v = v0 (er - j)^{-1}
    auto uv = sa.multiply(u0, v0);
    std::vector<Scalar> jneg = er;
    for (std::size_t k = 0; k < sa.dim(); ++k) jneg[k] -= uv[k];  // jneg = er - u0 v0
    // inverse of (er - jneg') where uv = er - jneg: geometric series
    std::vector<Scalar> inv = er, term = er;
    for (int s = 1; s <= nilp + 1; ++s) {
      term = sa.multiply(term, jneg);
      bool zero = std::all_of(term.begin(), term.end(), [](const Scalar& x) { return x.is_zero(); });
      if (zero) break;
      for (std::size_t k = 0; k < sa.dim(); ++k) inv[k] += term[k];
    }
    auto v = sa.multiply(v0, inv);
    if (sa.multiply(u0, v) != er) throw Error(ErrorCode::Internal, "witness correction failed (uv)");
    auto vu = sa.multiply(v, u0);
    if (vu != ei) throw Error(ErrorCode::Internal, "witness correction failed (vu)");
    out.witness_u[i] = u0;
    out.witness_v[i] = v;
  }
  return out;
}

}  // namespace skewtilt
