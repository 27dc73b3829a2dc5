#include <algorithm>
#include <cmath>
#include <numbers>

#include <doctest.h>

#include "axdecomp/basis_axis.hpp"
#include "test_util.hpp"

using namespace axdecomp;
using doctest::Approx;

namespace {

constexpr double kPi = std::numbers::pi;

Basis standard_basis(std::size_t n) {
  std::vector<Vector> vecs;
  for (std::size_t i = 0; i < n; ++i) {
    Vector e(n, 0.0);
    e[i] = 1.0;
    vecs.push_back(std::move(e));
  }
  return Basis(std::move(vecs));
}

Basis well_conditioned_random_basis(const Space& space, std::mt19937_64& rng) {
  for (;;) {
    const Matrix a = testutil::random_entries(space.dim(), rng);
    try {
      Basis b(
          [&] {
            std::vector<Vector> cols;
            for (std::size_t j = 0; j < space.dim(); ++j)
              cols.push_back(a.column(j));
            return cols;
          }(),
          space.tol());
      if (rank(a) == space.dim() &&
          frobenius(inverse(a)) * frobenius(a) < 1e6)
        return b;
    } catch (const degenerate_basis_error&) {
    } catch (const singular_error&) {
    }
  }
}

}  // namespace

TEST_CASE("equimodular predicate") {
  const Space e3(3);
  auto delta = equimodular_delta(e3, standard_basis(3));
  REQUIRE(delta.has_value());
  CHECK(*delta == Approx(1.0));

  const Space e2(2);
  CHECK_FALSE(is_equimodular(e2, Basis({{1, 0}, {1, 1}})));

  delta = equimodular_delta(e2, Basis({{2, 0}, {0, 2}}));
  REQUIRE(delta.has_value());
  CHECK(*delta == Approx(2.0));
}

TEST_CASE("axial vector of the standard basis") {
  for (std::size_t n : {2u, 3u, 5u, 8u}) {
    const Space space(n);
    const AxialCertificate cert = axial_vector(space, standard_basis(n));
    for (std::size_t i = 0; i < n; ++i)
      CHECK(cert.axial[i] == Approx(1.0));
    CHECK(cert.vertex_angle ==
          Approx(std::acos(1.0 / std::sqrt(static_cast<double>(n)))));
  }
}

TEST_CASE("axial vector satisfies the defining relation for a skewed basis") {
  // For B = {(1,0),(1,1)} the relation forces <v1,a> * sqrt2 = <v2,a>,
  // i.e. a is proportional to (1, sqrt2 - 1).
  const Space e2(2);
  const Basis b({{1, 0}, {1, 1}});
  const AxialCertificate cert = axial_vector(e2, b);

  const Vector& a = cert.axial;
  const double lhs = e2.inner(b[0], a) * e2.norm(b[1]);
  const double rhs = e2.inner(b[1], a) * e2.norm(b[0]);
  CHECK(lhs == Approx(rhs).epsilon(1e-12));

  const double ratio = a[1] / a[0];
  CHECK(ratio == Approx(std::sqrt(2.0) - 1.0));
}

TEST_CASE("one-dimensional axial vector") {
  const Space e1(1);
  const AxialCertificate cert = axial_vector(e1, Basis(std::vector<Vector>{{-3.0}}));
  CHECK(cert.axial[0] < 0.0);
  CHECK(cert.omega == Approx(1.0));
  CHECK(cert.vertex_angle == Approx(0.0));
}

TEST_CASE("omega orientation: all normalized inner products positive") {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t n = 2 + rng() % 7;
    const Space space(n, testutil::random_spd(n, rng));
    const Basis b = well_conditioned_random_basis(space, rng);
    const AxialCertificate cert = axial_vector(space, b);
    for (std::size_t i = 0; i < n; ++i)
      CHECK(space.inner(b[i], cert.axial) > 0.0);
  }
}

TEST_CASE("axis of the standard plane basis") {
  const Space e2(2);
  const Line axis = axis_of(e2, standard_basis(2));
  CHECK(std::fabs(axis.direction[0]) == Approx(1.0 / std::sqrt(2.0)));
  CHECK(axis.direction[0] == Approx(axis.direction[1]));
}

TEST_CASE("axis is invariant under rescaling and reordering") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> scale(0.2, 5.0);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t n = 1 + rng() % 8;
    const Space space(n, testutil::random_spd(n, rng));
    const Basis b = well_conditioned_random_basis(space, rng);
    const Line axis = axis_of(space, b);

    std::vector<Vector> rescaled = b.vectors();
    for (Vector& v : rescaled) {
      const double s = scale(rng);
      for (double& c : v) c *= s;
    }
    std::shuffle(rescaled.begin(), rescaled.end(), rng);
    const Line axis2 = axis_of(space, Basis(std::move(rescaled), space.tol()));
    CHECK(lines_equal(space, axis, axis2));
  }
}

TEST_CASE("line equality is up to sign") {
  const Space e2(2);
  const Line e1{{1, 0}};
  const Line neg_e1{{-1, 0}};
  const Line e2dir{{0, 1}};
  CHECK(lines_equal(e2, e1, neg_e1));
  CHECK_FALSE(lines_equal(e2, e1, e2dir));

  Vector nearly{1.0, 1e-12};
  const double nn = e2.norm(nearly);
  for (double& c : nearly) c /= nn;
  CHECK(lines_equal(e2, e1, Line{nearly}));
}

TEST_CASE("cone membership") {
  const Space e3(3);
  const Cone quarter{{0, 0, 1}, kPi / 4};
  CHECK(cone_contains(e3, Cone{{0, 0, 1}, kPi / 2}, {1, 1, 0}));
  CHECK(cone_contains(e3, quarter, {1, 0, 1}));
  CHECK_FALSE(cone_contains(e3, Cone{{0, 0, 1}, 0.0}, {1, 0, 1}));
  CHECK_THROWS_AS(cone_contains(e3, quarter, {0, 0, 0}), precondition_error);
}

TEST_CASE("associated cone of the standard basis") {
  const Space e3(3);
  const Cone c = associated_cone(e3, standard_basis(3));
  CHECK(c.vertex_angle == Approx(std::acos(1.0 / std::sqrt(3.0))));
  for (std::size_t i = 0; i < 3; ++i)
    CHECK(c.axis_dir[i] == Approx(1.0 / std::sqrt(3.0)));
}

TEST_CASE("every normalized basis vector lies on the associated cone") {
  std::mt19937_64 rng(9);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t n = 2 + rng() % 7;
    const Space space(n, testutil::random_spd(n, rng));
    const Basis b = well_conditioned_random_basis(space, rng);
    const Cone c = associated_cone(space, b);
    for (const Vector& v : b.vectors()) CHECK(cone_contains(space, c, v));
  }
}

TEST_CASE("cone equality handles the axis sign flip") {
  const Space e3(3);
  const Cone c1{{0, 0, 1}, kPi / 4};
  CHECK(cones_equal(e3, c1, c1));
  CHECK_FALSE(cones_equal(e3, c1, Cone{{0, 0, 1}, kPi / 3}));

  // Flipping the axis and replacing theta by pi - theta describes the
  // same point set; spot-check with a member.
  const Cone flipped{{0, 0, -1}, 3 * kPi / 4};
  CHECK(cones_equal(e3, c1, flipped));
  CHECK(cone_contains(e3, c1, {1, 0, 1}));
  CHECK(cone_contains(e3, flipped, {1, 0, 1}));
}

TEST_CASE("axial existence across dimensions 1..10") {
  std::mt19937_64 rng(21);
  for (std::size_t n = 1; n <= 10; ++n) {
    const Space space(n);
    for (int trial = 0; trial < 20; ++trial) {
      const Basis b = well_conditioned_random_basis(space, rng);
      const AxialCertificate cert = axial_vector(space, b);
      for (std::size_t i = 0; i < n; ++i) {
        Vector u = b[i];
        const double nu = space.norm(u);
        for (double& c : u) c /= nu;
        CHECK(std::fabs(space.angle(u, cert.axial) - cert.vertex_angle) <=
              1e-8);
      }
      if (n >= 2) {
        CHECK(cert.vertex_angle > 1e-8);
        CHECK(std::fabs(cert.vertex_angle - kPi / 2) > 1e-8);
        CHECK(kPi - cert.vertex_angle > 1e-8);
      }
    }
  }
}

TEST_CASE("dependent input is rejected") {
  CHECK_THROWS_AS(Basis({{1, 0}, {2, 0}}), degenerate_basis_error);
  CHECK_THROWS_AS(Basis({{1, 1}, {1, 1}}), degenerate_basis_error);
}
