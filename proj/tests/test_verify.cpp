#include <cmath>
#include <numbers>

#include <doctest.h>

#include "axdecomp/verify.hpp"
#include "test_util.hpp"

using namespace axdecomp;
using doctest::Approx;

namespace {

constexpr double kPi = std::numbers::pi;

Vector unit(std::size_t n, std::size_t i) {
  Vector e(n, 0.0);
  e[i] = 1.0;
  return e;
}

}  // namespace

TEST_CASE("recompose multiplies factors in application order") {
  const Space e2(2);
  Decomposition d;
  CHECK(max_abs(recompose(e2, d) - Matrix::identity(2)) == Approx(0.0));

  // Scale by 2, then rotate by pi/2: the product is 2 R.
  d.factors = {Factor{Scalar{2.0}},
               Factor{Rotational{unit(2, 0), unit(2, 1), kPi / 2}}};
  const Matrix m = recompose(e2, d);
  CHECK(m(0, 0) == Approx(0.0).scale(1.0));
  CHECK(m(1, 0) == Approx(2.0));
  CHECK(m(0, 1) == Approx(-2.0));
}

TEST_CASE("check_decomposition accepts honest certificates") {
  std::mt19937_64 rng(61);
  for (int trial = 0; trial < 15; ++trial) {
    const std::size_t n = 2 + rng() % 4;
    const Space space(n, testutil::random_spd(n, rng));

    const Instance orth = generate(space, GenKind::orthogonal, rng());
    const CheckReport r1 = check_decomposition(
        space, *orth.matrix, decompose_orthogonal(space, *orth.matrix),
        Claim::orthogonal);
    CHECK(r1.passed);
    CHECK(r1.violations.empty());

    const Instance inv = generate(space, GenKind::invertible, rng());
    CHECK(check_decomposition(space, *inv.matrix,
                              decompose_invertible(space, *inv.matrix),
                              Claim::invertible)
              .passed);
  }
}

TEST_CASE("check_decomposition flags a tampered factor") {
  const Space e3(3);
  std::mt19937_64 rng(67);
  const Instance inst = generate(e3, GenKind::orthogonal, rng());
  Decomposition d = decompose_orthogonal(e3, *inst.matrix);

  REQUIRE(!d.factors.empty());
  for (Factor& f : d.factors) {
    if (auto* rot = std::get_if<Rotational>(&f)) {
      rot->theta += 1e-3;
      break;
    }
    if (auto* refl = std::get_if<Reflectional>(&f)) {
      refl->negated[0] += 0.1;
      break;
    }
  }
  const CheckReport r =
      check_decomposition(e3, *inst.matrix, d, Claim::orthogonal);
  CHECK_FALSE(r.passed);
  CHECK(!r.violations.empty());
}

TEST_CASE("check_decomposition flags structural violations") {
  const Space e3(3);
  const Matrix t = Matrix::identity(3);

  // A scalar factor has no place in an orthogonal certificate.
  Decomposition d;
  d.factors = {Factor{Scalar{1.0}}};
  CHECK_FALSE(check_decomposition(e3, t, d, Claim::orthogonal).passed);

  // Too many planar factors for the claim.
  d.factors = {Factor{Rotational{unit(3, 0), unit(3, 1), 0.0}},
               Factor{Rotational{unit(3, 0), unit(3, 1), 0.0}},
               Factor{Rotational{unit(3, 0), unit(3, 1), 0.0}},
               Factor{Scalar{1.0}}};
  CHECK_FALSE(check_decomposition(e3, t, d, Claim::conformal).passed);

  // Mismatched reflection parity: det T = 1 with one reflection.
  Matrix flip = Matrix::identity(3);
  flip(0, 0) = -1;
  d.factors = {Factor{Reflectional{unit(3, 0)}}};
  CHECK(check_decomposition(e3, flip, d, Claim::orthogonal).passed);
  CHECK_FALSE(check_decomposition(e3, t, d, Claim::orthogonal).passed);
}

TEST_CASE("generators are deterministic per seed") {
  const Space e4(4);
  for (GenKind kind : {GenKind::invertible, GenKind::orthogonal,
                       GenKind::conformal, GenKind::equimodular_basis,
                       GenKind::axonal_witness}) {
    const Instance a = generate(e4, kind, 12345);
    const Instance b = generate(e4, kind, 12345);
    if (a.matrix) CHECK(max_abs(*a.matrix - *b.matrix) == Approx(0.0));
    if (a.basis)
      CHECK(max_abs(a.basis->column_matrix() - b.basis->column_matrix()) ==
            Approx(0.0));
    const Instance c = generate(e4, kind, 12346);
    if (a.matrix) CHECK(max_abs(*a.matrix - *c.matrix) > 0.0);
  }
}

TEST_CASE("generated instances satisfy their advertised class") {
  std::mt19937_64 rng(71);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t n = 1 + rng() % 6;
    const Space space(n, testutil::random_spd(n, rng));

    const Instance inv = generate(space, GenKind::invertible, rng());
    CHECK(std::fabs(det(*inv.matrix)) > 1e-12);

    const Instance orth = generate(space, GenKind::orthogonal, rng());
    CHECK(is_orthogonal(space, *orth.matrix));

    const Instance conf = generate(space, GenKind::conformal, rng());
    const auto lambda = conformal_lambda(space, *conf.matrix);
    REQUIRE(lambda.has_value());
    CHECK(std::sqrt(*lambda) == Approx(std::fabs(conf.scalar)).epsilon(1e-8));

    const Instance eq = generate(space, GenKind::equimodular_basis, rng());
    CHECK(is_equimodular(space, *eq.basis));

    if (n >= 2) {
      const Instance ax = generate(space, GenKind::axonal_witness, rng());
      CHECK(is_axonal_witness(space, *ax.matrix, *ax.basis));
    }
  }
}

TEST_CASE("small-dimension oracle: plane rotation and reflection") {
  const Space e2(2);

  const Matrix rot = materialize(e2, Rotational{unit(2, 0), unit(2, 1), 0.7});
  Decomposition d = oracle_small_dim(e2, rot);
  REQUIRE(d.factors.size() == 1);
  CHECK(std::fabs(std::get<Rotational>(d.factors[0]).theta) == Approx(0.7));

  Matrix flip = Matrix::identity(2);
  flip(1, 1) = -1;
  d = oracle_small_dim(e2, flip);
  REQUIRE(d.factors.size() == 1);
  const auto& refl = std::get<Reflectional>(d.factors[0]);
  CHECK(std::fabs(refl.negated[1]) == Approx(1.0));
  CHECK(refl.negated[0] == Approx(0.0).scale(1.0));
}

TEST_CASE("small-dimension oracle: rotation about a 3-D axis") {
  const Space e3(3);
  // Rotation by 2pi/3 about (1,1,1)/sqrt3 cycles the coordinate axes.
  Matrix cycle(3);
  cycle(1, 0) = 1;
  cycle(2, 1) = 1;
  cycle(0, 2) = 1;
  const Decomposition d = oracle_small_dim(e3, cycle);
  CHECK(max_abs(recompose(e3, d) - cycle) <= 1e-10);
  REQUIRE(d.factors.size() == 1);
  const auto& rot = std::get<Rotational>(d.factors[0]);
  CHECK(std::fabs(rot.theta) == Approx(2 * kPi / 3));
}

TEST_CASE("small-dimension oracle: improper 3-D operator") {
  const Space e3(3);
  Matrix t(3);
  t(1, 0) = 1;  // swap e1,e2 (det -1), fix e3
  t(0, 1) = 1;
  t(2, 2) = 1;
  const Decomposition d = oracle_small_dim(e3, t);
  CHECK(max_abs(recompose(e3, d) - t) <= 1e-10);
  std::size_t reflections = 0;
  for (const Factor& f : d.factors)
    if (std::holds_alternative<Reflectional>(f)) ++reflections;
  CHECK(reflections == 1);
}

TEST_CASE("oracle agrees with the recursive path on random input") {
  std::mt19937_64 rng(73);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t n = 2 + rng() % 2;
    const Space space(n, testutil::random_spd(n, rng));
    const Instance inst = generate(space, GenKind::orthogonal, rng());
    const Matrix& t = *inst.matrix;

    const Matrix via_oracle = recompose(space, oracle_small_dim(space, t));
    const Matrix via_recursion =
        recompose(space, decompose_orthogonal(space, t));
    CHECK(max_abs(via_oracle - via_recursion) <= 1e-8);
    CHECK(max_abs(via_oracle - t) <= 1e-8);
  }
}
