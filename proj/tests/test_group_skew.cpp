#include "skewtilt/action.hpp"
#include "skewtilt/basic.hpp"
#include "skewtilt/demo.hpp"

#include <catch2/catch_amalgamated.hpp>

using namespace skewtilt;

TEST_CASE("group table validation") {
  FiniteGroup::cyclic(4).validate();
  FiniteGroup::klein_four().validate();
  CHECK(FiniteGroup::cyclic(4).cyclic_generator() != -1);
  CHECK(FiniteGroup::klein_four().cyclic_generator() == -1);
  FiniteGroup bad = FiniteGroup::cyclic(2);
  bad.table[1][1] = 1;  // breaks inverses
  CHECK_THROWS_AS(bad.validate(), Error);
}

TEST_CASE("demo action validates") {
  auto alg = demo::demo_algebra();
  auto act = demo::demo_action(alg);
  auto d = validate_action(alg, act);
  CHECK(d.all_ok());
}

TEST_CASE("trivial action validates on any algebra") {
  auto alg = demo::a2_algebra();
  auto act = AlgebraAction::trivial(alg);
  CHECK(validate_action(alg, act).all_ok());
}

TEST_CASE("swap action fails when the relations are not symmetric") {
  // same quiver and swap maps, but relations {alpha beta, alpha beta'}
  FieldSpec f = FieldSpec::rationals();
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
  Path ab{0, {0, 2}};
  Path ab2{0, {0, 3}};
  std::vector<Relation> rels{Relation{{{Scalar::one(f), ab}}}, Relation{{{Scalar::one(f), ab2}}}};
  auto alg = complete_rewriting(f, q, rels);
  auto act = demo::demo_action(demo::demo_algebra());  // same permutation data
  auto d = validate_action(alg, act);
  CHECK_FALSE(d.all_ok());
  CHECK_THROWS_AS(require_valid_action(alg, act), Error);
}

TEST_CASE("characteristic dividing the group order is rejected") {
  auto alg = demo::demo_algebra(FieldSpec::gf(2));
  auto act = demo::demo_action(alg);
  auto d = validate_action(alg, act);
  CHECK_FALSE(d.all_ok());
}

TEST_CASE("skew group algebra dimensions and sample products") {
  auto alg = demo::demo_algebra();
  auto act = demo::demo_action(alg);
  auto skew = skew_group_algebra(alg, act);
  CHECK(skew.dim() == 22);
  CHECK(skew.is_associative_on_basis());
  CHECK(skew.unit_acts_as_identity());
  CHECK(radical_basis(skew).size() == 12);

  // basis layout: (g, path) flattened as g*dimA + path index
  const FieldSpec& f = alg.field();
  auto unit_at = [&](int g, int pathidx) {
    std::vector<Scalar> v(skew.dim(), Scalar::zero(f));
    v[g * alg.dim() + pathidx] = Scalar::one(f);
    return v;
  };
  const Quiver& q = alg.quiver();
  int e2 = alg.trivial_index(q.vertex_index("2"));
  // (e2 sigma)(e2 sigma) = e2 sigma^2 = e2 . 1
  auto p = skew.multiply(unit_at(1, e2), unit_at(1, e2));
  CHECK(p == unit_at(0, e2));

  // (alpha sigma)(beta sigma) = alpha sigma(beta) sigma^2 = alpha beta' . 1 != 0
  int ia = alg.arrow_basis_index(q.arrow_index("alpha"));
  int ib = alg.arrow_basis_index(q.arrow_index("beta"));
  auto prod = skew.multiply(unit_at(1, ia), unit_at(1, ib));
  // alpha*beta' is the unique length-2 basis path starting at vertex 1
  int iab2 = -1;
  for (std::size_t i = 0; i < alg.basis().size(); ++i)
    if (alg.basis()[i].length() == 2 && alg.basis()[i].source() == q.vertex_index("1")) iab2 = (int)i;
  REQUIRE(iab2 >= 0);
  CHECK(prod == unit_at(0, iab2));
}

TEST_CASE("demo skew algebra: idempotents, classes, and the basic form") {
  auto alg = demo::demo_algebra();
  auto act = demo::demo_action(alg);
  auto skew = skew_group_algebra(alg, act);

  auto idem = lift_idempotents(skew);
  CHECK(idem.idempotents.size() == 6);
  CHECK(idem.class_rep.size() == 4);

  auto bp = basic_presentation(skew);
  CHECK(bp.algebra.num_vertices() == 4);
  CHECK(bp.algebra.quiver().arrows.size() == 4);
  CHECK(bp.algebra.relations().size() == 1);
  CHECK(bp.algebra.dim() == 9);

  auto target = demo::target_commutative_square();
  auto w = iso_test(bp.algebra, target);
  REQUIRE(w.has_value());
}

TEST_CASE("trivial group skew returns the algebra itself") {
  auto alg = demo::demo_algebra();
  auto act = AlgebraAction::trivial(alg);
  auto skew = skew_group_algebra(alg, act);
  CHECK(skew.dim() == alg.dim());
  auto bp = basic_presentation(skew);
  auto w = iso_test(bp.algebra, alg);
  REQUIRE(w.has_value());
}

TEST_CASE("skew with GF(5) coefficients") {
  auto alg = demo::demo_algebra(FieldSpec::gf(5));
  auto act = demo::demo_action(alg);
  auto skew = skew_group_algebra(alg, act);
  CHECK(skew.dim() == 22);
  CHECK(radical_basis(skew).size() == 12);
  auto bp = basic_presentation(skew);
  CHECK(bp.algebra.num_vertices() == 4);
  auto w = iso_test(bp.algebra, demo::target_commutative_square(FieldSpec::gf(5)));
  REQUIRE(w.has_value());
}

TEST_CASE("nonsplit quotient is reported with a prime suggestion") {
  // Z/3 acting trivially on k over Q: k[Z/3] has a quadratic factor
  FieldSpec f = FieldSpec::rationals();
  Quiver q;
  q.add_vertex("v");
  auto alg = complete_rewriting(f, q, {});
  AlgebraAction act = AlgebraAction::trivial(alg);
  act.group = FiniteGroup::cyclic(3);
  act.vertex_perm = {act.vertex_perm[0], act.vertex_perm[0], act.vertex_perm[0]};
  act.arrow_perm = {act.arrow_perm[0], act.arrow_perm[0], act.arrow_perm[0]};
  act.arrow_scalar = {act.arrow_scalar[0], act.arrow_scalar[0], act.arrow_scalar[0]};
  auto skew = skew_group_algebra(alg, act);
  CHECK(skew.dim() == 3);
  try {
    basic_presentation(skew);
    FAIL("expected NonSplitQuotient");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NonSplitQuotient);
  }
  CHECK(suggest_prime_with_roots(3) == 7);
}
