#include "skewtilt/linalg.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <random>

using namespace skewtilt;

namespace {

Matrix make(const FieldSpec& f, std::size_t r, std::size_t c, std::vector<int> vals) {
  Matrix m(f, r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) m.at(i, j) = Scalar(f, vals[i * c + j]);
  return m;
}

}  // namespace

TEST_CASE("scalar arithmetic over Q stays reduced") {
  FieldSpec q = FieldSpec::rationals();
  Scalar a = parse_scalar(q, "2/4");
  CHECK(a.to_string() == "1/2");
  Scalar b = parse_scalar(q, "-3/6");
  CHECK((a + b).is_zero());
  CHECK((a * Scalar(q, 4)).to_string() == "2");
  CHECK(parse_scalar(q, "7").inverse().to_string() == "1/7");
}

TEST_CASE("scalar arithmetic over GF(p)") {
  FieldSpec f = FieldSpec::gf(5);
  Scalar a(f, 3), b(f, 4);
  CHECK((a * b).residue() == 2);
  CHECK((a + b).residue() == 2);
  CHECK(a.inverse().residue() == 2);
  CHECK(parse_scalar(f, "3 mod 5") == a);
  CHECK_THROWS_AS(FieldSpec::gf(6), Error);
}

TEST_CASE("rref identity and dependent rows") {
  FieldSpec q = FieldSpec::rationals();
  Matrix id = Matrix::identity(q, 2);
  auto r = rref(id);
  CHECK(r.matrix == id);
  CHECK(r.rank == 2);

  Matrix m = make(q, 2, 2, {1, 2, 2, 4});
  auto r2 = rref(m);
  CHECK(r2.rank == 1);
  CHECK(r2.matrix.at(0, 0) == Scalar(q, 1));
  CHECK(r2.matrix.at(0, 1) == Scalar(q, 2));
  CHECK(r2.matrix.at(1, 0).is_zero());
  CHECK(r2.matrix.at(1, 1).is_zero());
}

TEST_CASE("rref over GF(2): entry 2 vanishes") {
  FieldSpec f = FieldSpec::gf(2);
  Matrix m = make(f, 2, 2, {1, 1, 1, 2});
  auto r = rref(m);
  CHECK(r.rank == 2);
}

TEST_CASE("solve conventions") {
  FieldSpec q = FieldSpec::rationals();
  Matrix id = Matrix::identity(q, 3);
  std::vector<Scalar> b{Scalar(q, 1), Scalar(q, 2), Scalar(q, 3)};
  std::vector<Scalar> x;
  REQUIRE(solve(id, b, x));
  CHECK(x == b);

  Matrix m = make(q, 1, 2, {1, 1});
  std::vector<Scalar> b2{Scalar(q, 2)};
  REQUIRE(solve(m, b2, x));
  CHECK(x[0] == Scalar(q, 2));
  CHECK(x[1].is_zero());

  Matrix m2 = make(q, 2, 1, {1, 1});
  std::vector<Scalar> b3{Scalar(q, 1), Scalar(q, 2)};
  CHECK_FALSE(solve(m2, b3, x));
}

TEST_CASE("kernel basis canonical form") {
  FieldSpec q = FieldSpec::rationals();
  CHECK(kernel_basis(Matrix::identity(q, 3)).empty());

  Matrix z(q, 2, 2);
  auto k = kernel_basis(z);
  REQUIRE(k.size() == 2);
  CHECK(k[0][0] == Scalar(q, 1));
  CHECK(k[1][1] == Scalar(q, 1));

  Matrix m = make(q, 1, 2, {1, 2});
  auto k2 = kernel_basis(m);
  REQUIRE(k2.size() == 1);
  CHECK(k2[0][0] == Scalar(q, -2));
  CHECK(k2[0][1] == Scalar(q, 1));
}

TEST_CASE("randomized properties: solve, kernel, rank-nullity, idempotent rref") {
  std::mt19937 rng(20240517);
  for (int field_case = 0; field_case < 2; ++field_case) {
    FieldSpec f = field_case == 0 ? FieldSpec::rationals() : FieldSpec::gf(5);
    for (int iter = 0; iter < 40; ++iter) {
      std::size_t r = 1 + rng() % 4, c = 1 + rng() % 4;
      Matrix m(f, r, c);
      for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < c; ++j) m.at(i, j) = Scalar(f, (int)(rng() % 7) - 3);

      auto rr = rref(m);
      CHECK(rref(rr.matrix).matrix == rr.matrix);
      auto kb = kernel_basis(m);
      CHECK(rr.rank + kb.size() == c);
      for (const auto& v : kb) {
        for (std::size_t i = 0; i < r; ++i) {
          Scalar acc = Scalar::zero(f);
          for (std::size_t j = 0; j < c; ++j) acc += m.at(i, j) * v[j];
          CHECK(acc.is_zero());
        }
      }
      std::vector<Scalar> b(r, Scalar::zero(f));
      for (std::size_t i = 0; i < r; ++i) b[i] = Scalar(f, (int)(rng() % 5) - 2);
      std::vector<Scalar> x;
      if (solve(m, b, x)) {
        for (std::size_t i = 0; i < r; ++i) {
          Scalar acc = Scalar::zero(f);
          for (std::size_t j = 0; j < c; ++j) acc += m.at(i, j) * x[j];
          CHECK(acc == b[i]);
        }
      }
    }
  }
}

TEST_CASE("nth roots") {
  FieldSpec q = FieldSpec::rationals();
  Scalar out;
  CHECK(parse_scalar(q, "4/9").nth_root(2, out));
  CHECK(out.to_string() == "2/3");
  CHECK_FALSE(parse_scalar(q, "2").nth_root(2, out));
  FieldSpec f5 = FieldSpec::gf(5);
  CHECK(Scalar(f5, 4).nth_root(2, out));
  CHECK((out * out).residue() == 4);
}
