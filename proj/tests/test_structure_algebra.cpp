#include "skewtilt/action.hpp"
#include "skewtilt/basic.hpp"
#include "skewtilt/demo.hpp"

#include <catch2/catch_amalgamated.hpp>

using namespace skewtilt;

namespace {

StructureAlgebra upper_triangular_2x2(const FieldSpec& f) {
  // basis: e11, e12, e22 of upper triangular matrices
  StructureAlgebra sa(f, {"e11", "e12", "e22"});
  auto one = Scalar::one(f);
  sa.set_product(0, 0, {{0, one}});
  sa.set_product(0, 1, {{1, one}});
  sa.set_product(1, 2, {{1, one}});
  sa.set_product(2, 2, {{2, one}});
  sa.set_unit({one, Scalar::zero(f), one});
  return sa;
}

StructureAlgebra k_times_k(const FieldSpec& f) {
  StructureAlgebra sa(f, {"u", "v"});
  auto one = Scalar::one(f);
  sa.set_product(0, 0, {{0, one}});
  sa.set_product(1, 1, {{1, one}});
  sa.set_unit({one, one});
  return sa;
}

StructureAlgebra mat2(const FieldSpec& f) {
  // full 2x2 matrix algebra, basis e11,e12,e21,e22
  StructureAlgebra sa(f, {"e11", "e12", "e21", "e22"});
  auto one = Scalar::one(f);
  auto idx = [](int i, int j) { return (i - 1) * 2 + (j - 1); };
  for (int i = 1; i <= 2; ++i)
    for (int j = 1; j <= 2; ++j)
      for (int k = 1; k <= 2; ++k)
        for (int l = 1; l <= 2; ++l) {
          if (j == k) sa.set_product(idx(i, j), idx(k, l), {{idx(i, l), one}});
        }
  sa.set_unit({one, Scalar::zero(f), Scalar::zero(f), one});
  return sa;
}

}  // namespace

TEST_CASE("structure constants from the demo bound quiver algebra") {
  auto alg = demo::demo_algebra();
  auto sa = from_bound_quiver(alg);
  CHECK(sa.dim() == 11);
  CHECK(sa.is_associative_on_basis());
  CHECK(sa.unit_acts_as_identity());
}

TEST_CASE("one-vertex and A2 structure algebras") {
  FieldSpec f = FieldSpec::rationals();
  Quiver q;
  q.add_vertex("v");
  auto kalg = complete_rewriting(f, q, {});
  CHECK(from_bound_quiver(kalg).dim() == 1);
  CHECK(from_bound_quiver(demo::a2_algebra()).dim() == 3);
}

TEST_CASE("radical: trace criterion over Q and structural provenance") {
  FieldSpec f = FieldSpec::rationals();
  SECTION("upper triangular 2x2 has radical of dimension 1") {
    auto sa = upper_triangular_2x2(f);
    CHECK(radical_basis(sa).size() == 1);
  }
  SECTION("k x k is semisimple") {
    CHECK(radical_basis(k_times_k(f)).empty());
  }
  SECTION("bound quiver provenance: arrow ideal") {
    auto sa = from_bound_quiver(demo::demo_algebra());
    CHECK(radical_basis(sa).size() == 6);  // 4 arrows + 2 surviving length-2 paths
  }
  SECTION("radical is a nilpotent ideal") {
    auto sa = from_bound_quiver(demo::demo_algebra());
    auto jb = radical_basis(sa);
    for (const auto& x : jb)
      for (const auto& y : jb) {
        auto p = sa.multiply(x, y);
        std::vector<Scalar> coords;
        CHECK(detail::coords_over(f, jb, p, coords));
      }
    CHECK(radical_nilpotency(sa, jb) <= (int)sa.dim());
  }
  SECTION("GF(p) without provenance is refused") {
    auto sa = mat2(FieldSpec::gf(5));
    CHECK_THROWS_AS(radical_basis(sa), Error);
  }
}

TEST_CASE("semisimple quotient of the demo algebra") {
  auto sa = from_bound_quiver(demo::demo_algebra());
  auto q = semisimple_quotient(sa);
  CHECK(q.S.dim() == 5);
  CHECK(q.S.is_associative_on_basis());
  CHECK(q.S.unit_acts_as_identity());
}

TEST_CASE("idempotent lifting on split examples") {
  FieldSpec f = FieldSpec::rationals();
  SECTION("k x k") {
    auto idem = lift_idempotents(k_times_k(f));
    CHECK(idem.idempotents.size() == 2);
    CHECK(idem.class_rep.size() == 2);
  }
  SECTION("full 2x2 matrix algebra: two idempotents, one class") {
    auto idem = lift_idempotents(mat2(f));
    CHECK(idem.idempotents.size() == 2);
    CHECK(idem.class_rep.size() == 1);
  }
  SECTION("orthogonality and completeness invariants") {
    auto sa = from_bound_quiver(demo::demo_algebra());
    auto idem = lift_idempotents(sa);
    CHECK(idem.idempotents.size() == 5);
    std::vector<Scalar> sum(sa.dim(), Scalar::zero(f));
    for (std::size_t i = 0; i < idem.idempotents.size(); ++i) {
      for (std::size_t j = 0; j < idem.idempotents.size(); ++j) {
        auto p = sa.multiply(idem.idempotents[i], idem.idempotents[j]);
        if (i == j) CHECK(p == idem.idempotents[i]);
        else CHECK(std::all_of(p.begin(), p.end(), [](const Scalar& s) { return s.is_zero(); }));
      }
      for (std::size_t k = 0; k < sa.dim(); ++k) sum[k] += idem.idempotents[i][k];
    }
    CHECK(sum == sa.unit());
  }
}

TEST_CASE("basic presentation of a basic algebra reproduces it") {
  auto alg = demo::demo_algebra();
  auto sa = from_bound_quiver(alg);
  auto bp = basic_presentation(sa);
  CHECK(bp.algebra.dim() == 11);
  CHECK(bp.multiplicities == std::vector<int>(5, 1));
  auto w = iso_test(bp.algebra, alg);
  REQUIRE(w.has_value());
}

TEST_CASE("basic presentation of the full matrix algebra") {
  auto bp = basic_presentation(mat2(FieldSpec::rationals()));
  CHECK(bp.algebra.dim() == 1);
  CHECK(bp.algebra.num_vertices() == 1);
  CHECK(bp.algebra.quiver().arrows.empty());
  CHECK(bp.multiplicities == std::vector<int>{2});
}

TEST_CASE("dimension bookkeeping of the Morita data") {
  auto sa = from_bound_quiver(demo::a2_algebra());
  auto bp = basic_presentation(sa);
  const FieldSpec& f = sa.field();
  int total = 0;
  for (std::size_t c1 = 0; c1 < bp.vertex_idem.size(); ++c1)
    for (std::size_t c2 = 0; c2 < bp.vertex_idem.size(); ++c2) {
      std::vector<std::vector<Scalar>> rows;
      for (std::size_t b = 0; b < sa.dim(); ++b)
        rows.push_back(sa.multiply(sa.multiply(bp.vertex_idem[c1], sa.basis_vector(b)), bp.vertex_idem[c2]));
      total += bp.multiplicities[c1] * bp.multiplicities[c2] * (int)detail::span_basis(f, rows, sa.dim()).size();
    }
  CHECK(total == (int)sa.dim());
}

TEST_CASE("iso_test basics") {
  auto alg = demo::demo_algebra();
  SECTION("identity iso") {
    auto w = iso_test(alg, alg);
    REQUIRE(w.has_value());
  }
  SECTION("A2 versus reversed A2") {
    auto a2 = demo::a2_algebra();
    auto w = iso_test(a2, a2.opposite());
    REQUIRE(w.has_value());
  }
  SECTION("different dimensions fail fast") {
    CHECK_FALSE(iso_test(alg, demo::a2_algebra()).has_value());
  }
  SECTION("square vs star are not isomorphic") {
    CHECK_FALSE(iso_test(demo::target_commutative_square(), demo::target_star()).has_value());
  }
}

TEST_CASE("basic round trip is stable") {
  auto sa = from_bound_quiver(demo::target_commutative_square());
  auto bp = basic_presentation(sa);
  auto bp2 = basic_presentation(from_bound_quiver(bp.algebra));
  auto w = iso_test(bp2.algebra, bp.algebra);
  REQUIRE(w.has_value());
}
