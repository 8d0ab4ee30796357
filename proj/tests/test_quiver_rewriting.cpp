#include "skewtilt/demo.hpp"
#include "skewtilt/rewriting.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <random>

using namespace skewtilt;

TEST_CASE("path validation catches malformed relations") {
  FieldSpec f = FieldSpec::rationals();
  Quiver q;
  q.add_vertex("1");
  q.add_vertex("2");
  q.add_vertex("3");
  q.add_arrow("a", "1", "2");
  q.add_arrow("b", "2", "3");

  Path a{0, {0}};
  Path ab{0, {0, 1}};
  Path b{1, {1}};

  SECTION("length one path") {
    Relation r{{{Scalar::one(f), a}}};
    auto d = validate_relations(q, {r});
    CHECK_FALSE(d.all_ok());
    CHECK_THROWS_AS(complete_rewriting(f, q, {r}), Error);
  }
  SECTION("mixed endpoints") {
    Quiver q2 = q;
    q2.add_arrow("c", "1", "3");
    Path c{0, {2}};
    Path cb{0, {2, 1}};  // not composable; instead use ab vs c... build a 2-term with distinct endpoints
    Relation r{{{Scalar::one(f), ab}, {Scalar::one(f), Path{1, {1}}}}};
    auto d = validate_relations(q, {r});
    CHECK_FALSE(d.all_ok());
    (void)c;
    (void)cb;
  }
  SECTION("valid demo relations") {
    auto alg = demo::demo_algebra();
    auto d = validate_relations(alg.quiver(), alg.relations());
    CHECK(d.all_ok());
  }
}

TEST_CASE("demo algebra has the expected 11-dimensional path basis") {
  auto alg = demo::demo_algebra();
  CHECK(alg.dim() == 11);
  int trivial = 0, len1 = 0, len2 = 0;
  for (const auto& p : alg.basis()) {
    if (p.length() == 0) ++trivial;
    if (p.length() == 1) ++len1;
    if (p.length() == 2) ++len2;
  }
  CHECK(trivial == 5);
  CHECK(len1 == 4);
  CHECK(len2 == 2);  // alpha*beta' and alpha'*beta survive
  CHECK(alg.opposite().dim() == 11);
}

TEST_CASE("small path algebras") {
  FieldSpec f = FieldSpec::rationals();
  CHECK(demo::a2_algebra().dim() == 3);

  Quiver loopq;
  loopq.add_vertex("v");
  loopq.add_arrow("x", "v", "v");
  Path xx{0, {0, 0}};
  Relation nil{{{Scalar::one(f), xx}}};
  auto alg = complete_rewriting(f, loopq, {nil});
  CHECK(alg.dim() == 2);

  CHECK_THROWS_AS(complete_rewriting(f, loopq, {}), Error);  // infinite dimensional at cap
}

TEST_CASE("multiplication in the demo algebra") {
  auto alg = demo::demo_algebra();
  const Quiver& q = alg.quiver();
  FieldSpec f = alg.field();
  auto elem_path = [&](std::initializer_list<const char*> names) {
    Path p;
    bool first = true;
    for (const char* nm : names) {
      int idx = q.arrow_index(nm);
      if (first) p.vertex = q.arrows[idx].source;
      first = false;
      p.arrows.push_back(idx);
    }
    PathComb pc;
    pc.add(p, Scalar::one(f));
    return alg.to_elem(pc);
  };
  auto ev = [&](const char* v) {
    BoundQuiverAlgebra::Elem e;
    e[alg.trivial_index(q.vertex_index(v))] = Scalar::one(f);
    return e;
  };
  // e_v e_v = e_v
  CHECK(alg.multiply(ev("2"), ev("2")) == ev("2"));
  // alpha * beta = 0 (relation)
  CHECK(alg.multiply(elem_path({"alpha"}), elem_path({"beta"})).empty());
  // alpha * beta' is a basis path
  auto prod = alg.multiply(elem_path({"alpha"}), elem_path({"beta'"}));
  REQUIRE(prod.size() == 1);
  CHECK(prod.begin()->second.is_one());
  CHECK(alg.basis()[prod.begin()->first].length() == 2);
}

TEST_CASE("trivial paths are orthogonal idempotents summing to one") {
  auto alg = demo::demo_algebra();
  auto unit = alg.unit();
  CHECK(alg.multiply(unit, unit) == unit);
  for (int v = 0; v < alg.num_vertices(); ++v) {
    BoundQuiverAlgebra::Elem ev{{alg.trivial_index(v), Scalar::one(alg.field())}};
    for (int w = 0; w < alg.num_vertices(); ++w) {
      BoundQuiverAlgebra::Elem ew{{alg.trivial_index(w), Scalar::one(alg.field())}};
      auto p = alg.multiply(ev, ew);
      if (v == w) CHECK(p == ev);
      else CHECK(p.empty());
    }
  }
}

TEST_CASE("associativity on all basis triples (desk scale)") {
  for (const BoundQuiverAlgebra& alg : {demo::a2_algebra(), demo::demo_algebra()}) {
    std::size_t n = alg.dim();
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        for (std::size_t k = 0; k < n; ++k) {
          BoundQuiverAlgebra::Elem a{{(int)i, Scalar::one(alg.field())}};
          BoundQuiverAlgebra::Elem b{{(int)j, Scalar::one(alg.field())}};
          BoundQuiverAlgebra::Elem c{{(int)k, Scalar::one(alg.field())}};
          CHECK(alg.multiply(alg.multiply(a, b), c) == alg.multiply(a, alg.multiply(b, c)));
        }
  }
}

TEST_CASE("sandwich dimension bookkeeping") {
  auto alg = demo::demo_algebra();
  int total = 0;
  for (int v = 0; v < alg.num_vertices(); ++v)
    for (int w = 0; w < alg.num_vertices(); ++w) total += alg.sandwich_dim(v, w);
  CHECK(total == (int)alg.dim());
}

TEST_CASE("opposite is an involution") {
  auto alg = demo::demo_algebra();
  auto opop = alg.opposite().opposite();
  CHECK(opop.dim() == alg.dim());
  CHECK(opop.quiver().vertices == alg.quiver().vertices);
  REQUIRE(opop.quiver().arrows.size() == alg.quiver().arrows.size());
  for (std::size_t a = 0; a < alg.quiver().arrows.size(); ++a) {
    CHECK(opop.quiver().arrows[a].name == alg.quiver().arrows[a].name);
    CHECK(opop.quiver().arrows[a].source == alg.quiver().arrows[a].source);
    CHECK(opop.quiver().arrows[a].target == alg.quiver().arrows[a].target);
  }
  CHECK(opop.basis() == alg.basis());

  auto a2 = demo::a2_algebra();
  auto a2op = a2.opposite();
  CHECK(a2op.quiver().arrows[0].source == 1);
  CHECK(a2op.quiver().arrows[0].target == 0);
}

TEST_CASE("rewriting confluence: random products reduce consistently") {
  std::mt19937 rng(7);
  auto alg = demo::demo_algebra();
  // multiply random basis elements in two association orders
  for (int iter = 0; iter < 200; ++iter) {
    int i = rng() % alg.dim(), j = rng() % alg.dim(), k = rng() % alg.dim();
    BoundQuiverAlgebra::Elem a{{i, Scalar::one(alg.field())}};
    BoundQuiverAlgebra::Elem b{{j, Scalar::one(alg.field())}};
    BoundQuiverAlgebra::Elem c{{k, Scalar::one(alg.field())}};
    CHECK(alg.multiply(alg.multiply(a, b), c) == alg.multiply(a, alg.multiply(b, c)));
  }
}
