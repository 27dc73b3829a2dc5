#include "axdecomp/basis_axis.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace axdecomp {

Basis::Basis(std::vector<Vector> vectors, const Tolerance& tol)
    : vectors_(std::move(vectors)) {
  if (vectors_.empty()) throw degenerate_basis_error("empty basis");
  const std::size_t n = vectors_.size();
  for (const Vector& v : vectors_)
    if (v.size() != n)
      throw dimension_error("basis vector length does not match count");
  if (rank(column_matrix(), tol) != n)
    throw degenerate_basis_error("basis vectors are linearly dependent");
}

Matrix Basis::column_matrix() const {
  const std::size_t n = vectors_.size();
  Matrix m(n);
  for (std::size_t j = 0; j < n; ++j) m.set_column(j, vectors_[j]);
  return m;
}

Basis apply(const Matrix& m, const Basis& b, const Tolerance& tol) {
  std::vector<Vector> out;
  out.reserve(b.size());
  for (const Vector& v : b.vectors()) out.push_back(m * v);
  return Basis(std::move(out), tol);
}

std::optional<double> equimodular_delta(const Space& space, const Basis& b) {
  double lo = 0.0, hi = 0.0, sum = 0.0;
  for (std::size_t i = 0; i < b.size(); ++i) {
    const double ni = space.norm(b[i]);
    lo = (i == 0) ? ni : std::min(lo, ni);
    hi = std::max(hi, ni);
    sum += ni;
  }
  if (hi - lo > space.tol().rel * hi) return std::nullopt;
  return sum / static_cast<double>(b.size());
}

bool is_equimodular(const Space& space, const Basis& b) {
  return equimodular_delta(space, b).has_value();
}

AxialCertificate axial_vector(const Space& space, const Basis& b) {
  const std::size_t n = b.size();
  if (n != space.dim()) throw dimension_error("basis does not match space");

  std::vector<Vector> u(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double ni = space.norm(b[i]);
    if (ni <= space.tol().abs)
      throw degenerate_basis_error("zero vector in basis");
    u[i] = b[i];
    for (double& c : u[i]) c /= ni;
  }

  Matrix gram(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) gram(i, j) = space.inner(u[i], u[j]);

  Vector omega(n, 1.0);
  Vector x;
  try {
    x = solve(gram, omega, space.tol());
  } catch (const singular_error&) {
    throw degenerate_basis_error("gram system singular: basis numerically dependent");
  }

  AxialCertificate cert;
  cert.axial.assign(n, 0.0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k) cert.axial[k] += x[i] * u[i][k];
  cert.omega = 1.0;
  cert.vertex_angle = space.angle(u[0], cert.axial);
  return cert;
}

Line axis_of(const Space& space, const Basis& b) {
  AxialCertificate cert = axial_vector(space, b);
  const double na = space.norm(cert.axial);
  for (double& c : cert.axial) c /= na;
  return Line{std::move(cert.axial)};
}

bool lines_equal(const Space& space, const Line& l1, const Line& l2) {
  return std::fabs(space.inner(l1.direction, l2.direction)) >=
         1.0 - space.tol().rel;
}

bool cone_contains(const Space& space, const Cone& c, const Vector& x) {
  const double nx = space.norm(x);
  if (nx <= space.tol().abs)
    throw precondition_error("cone membership of the zero vector is undefined");
  const double lhs = space.inner(x, c.axis_dir);
  const double rhs = nx * std::cos(c.vertex_angle);
  return std::fabs(lhs - rhs) <= space.tol().rel * nx + space.tol().abs;
}

Cone associated_cone(const Space& space, const Basis& b) {
  AxialCertificate cert = axial_vector(space, b);
  const double na = space.norm(cert.axial);
  Vector dir = cert.axial;
  for (double& c : dir) c /= na;
  // Cross-check the common angle against every basis vector.
  for (std::size_t i = 0; i < b.size(); ++i) {
    const double ai = space.angle(b[i], dir);
    if (std::fabs(ai - cert.vertex_angle) > 1e-7)
      throw internal_error("associated_cone: common-angle check failed");
  }
  return Cone{std::move(dir), cert.vertex_angle};
}

bool cones_equal(const Space& space, const Cone& c1, const Cone& c2) {
  if (!lines_equal(space, Line{c1.axis_dir}, Line{c2.axis_dir})) return false;
  const double angle_tol =
      std::max(space.tol().abs, 1e2 * space.tol().rel);
  const bool same_dir = space.inner(c1.axis_dir, c2.axis_dir) > 0.0;
  if (same_dir) return std::fabs(c1.vertex_angle - c2.vertex_angle) <= angle_tol;
  return std::fabs(c1.vertex_angle - (std::numbers::pi - c2.vertex_angle)) <=
         angle_tol;
}

}  // namespace axdecomp
