#include "axdecomp/operators.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace axdecomp {

namespace {

constexpr double kPi = std::numbers::pi;

Matrix rank_one_update(Matrix m, double coeff, const Vector& left,
                       const Vector& g_right) {
  const std::size_t n = m.dim();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m(i, j) += coeff * left[i] * g_right[j];
  return m;
}

Vector metric_image(const Space& space, const Vector& x) {
  return space.gram() * x;
}

void check_unit(const Space& space, const Vector& v, const char* what) {
  if (std::fabs(space.inner(v, v) - 1.0) > 1e-6)
    throw precondition_error(std::string(what) + " is not a unit vector");
}

double det_tolerance(const Space& space) { return 1e3 * space.tol().rel; }

}  // namespace

Matrix materialize(const Space& space, const Factor& f) {
  const std::size_t n = space.dim();
  return std::visit(
      [&](const auto& factor) -> Matrix {
        using T = std::decay_t<decltype(factor)>;
        if constexpr (std::is_same_v<T, Rotational>) {
          const double c = std::cos(factor.theta);
          const double s = std::sin(factor.theta);
          if (c == 1.0 && s == 0.0) return Matrix::identity(n);
          const Vector& u = factor.plane_u;
          const Vector& v = factor.plane_v;
          if (u.size() != n || v.size() != n)
            throw dimension_error("rotational plane does not match space");
          check_unit(space, u, "plane_u");
          check_unit(space, v, "plane_v");
          if (std::fabs(space.inner(u, v)) > 1e-6)
            throw precondition_error("rotational plane pair is not orthogonal");
          const Vector gu = metric_image(space, u);
          const Vector gv = metric_image(space, v);
          Matrix m = Matrix::identity(n);
          m = rank_one_update(std::move(m), c - 1.0, u, gu);
          m = rank_one_update(std::move(m), c - 1.0, v, gv);
          m = rank_one_update(std::move(m), s, v, gu);
          m = rank_one_update(std::move(m), -s, u, gv);
          return m;
        } else if constexpr (std::is_same_v<T, Reflectional>) {
          if (factor.negated.size() != n)
            throw dimension_error("reflection line does not match space");
          check_unit(space, factor.negated, "negated");
          const Vector gw = metric_image(space, factor.negated);
          return rank_one_update(Matrix::identity(n), -2.0, factor.negated, gw);
        } else if constexpr (std::is_same_v<T, Scalar>) {
          if (factor.c == 0.0) throw precondition_error("scalar factor is zero");
          return factor.c * Matrix::identity(n);
        } else if constexpr (std::is_same_v<T, DiagonalInBasis>) {
          if (factor.entries.size() != n)
            throw dimension_error("diagonal entries do not match space");
          for (double e : factor.entries)
            if (e == 0.0)
              throw precondition_error("diagonal factor has a zero entry");
          const Matrix b = factor.basis.column_matrix();
          Matrix scaled = b;
          for (std::size_t j = 0; j < n; ++j)
            for (std::size_t i = 0; i < n; ++i)
              scaled(i, j) *= factor.entries[j];
          return scaled * inverse(b, space.tol());
        } else if constexpr (std::is_same_v<T, Shear>) {
          const AxialCertificate cert = axial_vector(space, factor.basis);
          const double target = cert.vertex_angle - factor.delta;
          const Basis image =
              rotate_basis_toward_axis(space, factor.basis, target);
          return image.column_matrix() *
                 inverse(factor.basis.column_matrix(), space.tol());
        } else {
          static_assert(std::is_same_v<T, GeneralAxonal>);
          if (factor.matrix.dim() != n)
            throw dimension_error("axonal matrix does not match space");
          return factor.matrix;
        }
      },
      f);
}

bool is_orthogonal(const Space& space, const Matrix& m) {
  if (m.dim() != space.dim()) throw dimension_error("matrix does not match space");
  const Matrix lhs = transpose(m) * space.gram() * m;
  return max_abs(lhs - space.gram()) <=
         space.tol().rel * std::max(max_abs(space.gram()), 1.0);
}

std::optional<double> conformal_lambda(const Space& space, const Matrix& m) {
  const std::vector<Vector> onb = orthonormal_basis(space);
  const double lambda = space.inner(m * onb[0], m * onb[0]);
  if (lambda <= space.tol().abs) return std::nullopt;
  const Matrix lhs = transpose(m) * space.gram() * m;
  const Matrix scaled = lambda * space.gram();
  if (max_abs(lhs - scaled) >
      space.tol().rel * lambda * std::max(max_abs(space.gram()), 1.0))
    return std::nullopt;
  return lambda;
}

namespace {

std::size_t displacement_rank(const Space& space, const Matrix& m) {
  const Matrix d = m - Matrix::identity(m.dim());
  const double scale = std::max(1.0, max_abs(m));
  return rank_abs(d, space.tol().rank_tol * scale);
}

}  // namespace

bool is_rotational(const Space& space, const Matrix& m) {
  if (!is_orthogonal(space, m)) return false;
  if (std::fabs(det(m) - 1.0) > det_tolerance(space)) return false;
  return displacement_rank(space, m) <= 2;
}

bool is_reflectional(const Space& space, const Matrix& m) {
  if (!is_orthogonal(space, m)) return false;
  if (std::fabs(det(m) + 1.0) > det_tolerance(space)) return false;
  return displacement_rank(space, m) == 1;
}

bool is_axonal_witness(const Space& space, const Matrix& m, const Basis& b) {
  if (!is_equimodular(space, b)) return false;
  try {
    const Basis image = apply(m, b, space.tol());
    if (!is_equimodular(space, image)) return false;
    return lines_equal(space, axis_of(space, b), axis_of(space, image));
  } catch (const degenerate_basis_error&) {
    return false;  // singular m collapses the basis
  }
}

Basis rotate_basis_toward_axis(const Space& space, const Basis& b, double phi) {
  const std::size_t n = space.dim();
  if (n < 2)
    throw precondition_error("rotate_basis_toward_axis requires dimension >= 2");
  if (!is_equimodular(space, b))
    throw precondition_error("rotate_basis_toward_axis requires an equimodular basis");
  const double guard = std::max(space.tol().rel, 1e-12);
  if (std::fabs(phi) <= guard || std::fabs(phi - kPi / 2.0) <= guard ||
      std::fabs(phi - kPi) <= guard || phi < 0.0 || phi > kPi)
    throw precondition_error("target angle must lie in (0, pi) excluding pi/2");

  const AxialCertificate cert = axial_vector(space, b);
  Vector axis = cert.axial;
  const double na = space.norm(axis);
  for (double& c : axis) c /= na;

  std::vector<Vector> rotated;
  rotated.reserve(n);
  for (const Vector& bi : b.vectors()) {
    const double len = space.norm(bi);
    const double c0 = space.inner(bi, axis) / len;
    Vector w(n);
    for (std::size_t k = 0; k < n; ++k) w[k] = bi[k] / len - c0 * axis[k];
    const double s0 = space.norm(w);
    if (s0 <= 1e3 * space.tol().abs)
      throw internal_error("basis vector parallel to its axis");
    Vector v(n);
    const double cp = std::cos(phi);
    const double sp = std::sin(phi);
    for (std::size_t k = 0; k < n; ++k)
      v[k] = len * (cp * axis[k] + sp * w[k] / s0);
    rotated.push_back(std::move(v));
  }
  return Basis(std::move(rotated), space.tol());
}

Shear shear_of_basis(const Space& space, const Basis& b, double delta) {
  const AxialCertificate cert = axial_vector(space, b);
  const double target = cert.vertex_angle - delta;
  const double guard = std::max(space.tol().rel, 1e-12);
  if (target <= guard || target >= kPi - guard ||
      std::fabs(target - kPi / 2.0) <= guard)
    throw precondition_error(
        "shear delta drives the vertex angle outside (0, pi) \\ {pi/2}");
  // The image stays a basis by the rotated-basis proposition; building it
  // here surfaces numerical degeneracy early.
  rotate_basis_toward_axis(space, b, target);
  return Shear{b, delta};
}

Vector orthogonal_complement_vector(const Space& space, const Vector& d) {
  std::vector<Vector> candidates{d};
  for (const Vector& e : orthonormal_basis(space)) candidates.push_back(e);
  const std::vector<Vector> frame = gram_schmidt(space, candidates, 1e-10);
  if (frame.size() < 2)
    throw internal_error("no orthogonal complement direction found");
  return frame[1];
}

Rotational extract_rotational(const Space& space, const Matrix& m) {
  const std::size_t n = m.dim();
  const Matrix d = m - Matrix::identity(n);
  const double scale = std::max(1.0, max_abs(m));

  std::vector<std::size_t> cols(n);
  for (std::size_t j = 0; j < n; ++j) cols[j] = j;
  std::sort(cols.begin(), cols.end(), [&](std::size_t a, std::size_t b) {
    return space.norm(d.column(a)) > space.norm(d.column(b));
  });

  if (space.norm(d.column(cols[0])) <= 1e-9 * scale) {
    // Identity. Any plane works; record one for a well-formed payload.
    const std::vector<Vector> onb = orthonormal_basis(space);
    Vector u = onb[0];
    Vector v = n >= 2 ? onb[1] : onb[0];
    return Rotational{std::move(u), std::move(v), 0.0};
  }

  std::vector<Vector> candidates;
  for (std::size_t j : cols) candidates.push_back(d.column(j));
  std::vector<Vector> plane = gram_schmidt(space, candidates, 1e-7);
  Vector e1 = plane[0];
  Vector e2 = plane.size() >= 2 ? plane[1]
                                : orthogonal_complement_vector(space, e1);
  const Vector me1 = m * e1;
  const double theta = std::atan2(space.inner(e2, me1), space.inner(e1, me1));
  return Rotational{std::move(e1), std::move(e2), theta};
}

Reflectional extract_reflectional(const Space& space, const Matrix& m) {
  const std::size_t n = m.dim();
  const Matrix d = m - Matrix::identity(n);
  std::size_t best = 0;
  for (std::size_t j = 1; j < n; ++j)
    if (space.norm(d.column(j)) > space.norm(d.column(best))) best = j;
  Vector p = d.column(best);
  const double np = space.norm(p);
  if (np <= space.tol().abs)
    throw precondition_error("matrix has no reflected direction");
  for (double& c : p) c /= np;
  return Reflectional{std::move(p)};
}

}  // namespace axdecomp
