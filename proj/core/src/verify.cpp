#include "axdecomp/verify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>

namespace axdecomp {

namespace {

constexpr double kPi = std::numbers::pi;

void flag(CheckReport& report, const std::string& invariant, double measured,
          double threshold) {
  report.violations.push_back(Violation{invariant, measured, threshold});
  report.passed = false;
}

double inf_norm(const Matrix& a) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.dim(); ++i) {
    double row = 0.0;
    for (std::size_t j = 0; j < a.dim(); ++j) row += std::fabs(a(i, j));
    m = std::max(m, row);
  }
  return m;
}

double condition_estimate(const Matrix& a, const Tolerance& tol) {
  try {
    return inf_norm(a) * inf_norm(inverse(a, tol));
  } catch (const singular_error&) {
    return std::numeric_limits<double>::infinity();
  }
}

Vector g_normalized(const Space& space, Vector v) {
  const double n = space.norm(v);
  for (double& c : v) c /= n;
  return v;
}

}  // namespace

Matrix recompose(const Space& space, const Decomposition& d) {
  Matrix product = Matrix::identity(space.dim());
  for (const Factor& f : d.factors) product = materialize(space, f) * product;
  return product;
}

CheckReport check_decomposition(const Space& space, const Matrix& t,
                                const Decomposition& d, Claim claim) {
  CheckReport report;
  const std::size_t n = space.dim();

  try {
    const Matrix product = recompose(space, d);
    report.residual =
        frobenius(product - t) / std::max(frobenius(t), 1e-300);
    if (report.residual > kAcceptTol)
      flag(report, "recomposition-residual", report.residual, kAcceptTol);
  } catch (const error& e) {
    flag(report, std::string("recompose-failed: ") + e.what(), 0.0, 0.0);
    return report;
  }

  std::size_t rotational = 0, reflectional = 0, scalars = 0, diagonals = 0,
              axonals = 0, shears = 0;
  double factor_det_product = 1.0;
  std::size_t last_reflection_pos = 0, pos = 0;

  for (const Factor& f : d.factors) {
    const Matrix m = materialize(space, f);
    factor_det_product *= det(m);
    if (std::holds_alternative<Rotational>(f)) {
      ++rotational;
      if (!is_rotational(space, m))
        flag(report, "factor-not-rotational", max_abs(m - Matrix::identity(n)),
             0.0);
    } else if (std::holds_alternative<Reflectional>(f)) {
      ++reflectional;
      last_reflection_pos = pos;
      if (!is_reflectional(space, m))
        flag(report, "factor-not-reflectional", 0.0, 0.0);
    } else if (const auto* s = std::get_if<Scalar>(&f)) {
      ++scalars;
      if (s->c == 0.0) flag(report, "scalar-zero", 0.0, 0.0);
    } else if (const auto* diag = std::get_if<DiagonalInBasis>(&f)) {
      ++diagonals;
      double min_entry = std::numeric_limits<double>::infinity();
      for (double e : diag->entries) min_entry = std::min(min_entry, std::fabs(e));
      if (min_entry <= space.tol().abs)
        flag(report, "diagonal-entry-zero", min_entry, space.tol().abs);
    } else if (const auto* ax = std::get_if<GeneralAxonal>(&f)) {
      ++axonals;
      if (!is_axonal_witness(space, ax->matrix, ax->witness_in))
        flag(report, "axonal-witness-fails", 0.0, 0.0);
      else {
        const Matrix img = apply(ax->matrix, ax->witness_in).column_matrix();
        const double err =
            frobenius(img - ax->witness_out.column_matrix()) /
            std::max(frobenius(ax->witness_out.column_matrix()), 1e-300);
        if (err > kAcceptTol)
          flag(report, "axonal-witness-image-mismatch", err, kAcceptTol);
      }
    } else if (const auto* sh = std::get_if<Shear>(&f)) {
      ++shears;
      if (!is_axonal_witness(space, m, sh->basis))
        flag(report, "shear-not-axonal", 0.0, 0.0);
    }
    ++pos;
  }

  const double det_t = det(t);
  const double det_err = std::fabs(factor_det_product - det_t);
  if (det_err > 1e-6 * std::max(1.0, std::fabs(det_t)))
    flag(report, "determinant-bookkeeping", det_err,
         1e-6 * std::max(1.0, std::fabs(det_t)));

  const std::size_t planar = rotational + reflectional;
  const std::size_t planar_bound = n >= 2 ? n - 1 : 1;

  switch (claim) {
    case Claim::orthogonal:
      if (scalars + diagonals + axonals + shears > 0)
        flag(report, "orthogonal-claim-nonplanar-factor",
             static_cast<double>(scalars + diagonals + axonals + shears), 0.0);
      if (planar > planar_bound)
        flag(report, "planar-factor-count", static_cast<double>(planar),
             static_cast<double>(planar_bound));
      if (reflectional > 1)
        flag(report, "reflection-count", static_cast<double>(reflectional), 1.0);
      if ((reflectional == 1) != (det_t < 0.0))
        flag(report, "reflection-parity", static_cast<double>(reflectional),
             det_t < 0.0 ? 1.0 : 0.0);
      break;
    case Claim::conformal:
      if (diagonals + axonals + shears > 0)
        flag(report, "conformal-claim-structural",
             static_cast<double>(diagonals + axonals + shears), 0.0);
      if (n >= 2 && scalars != 1)
        flag(report, "conformal-scalar-count", static_cast<double>(scalars), 1.0);
      if (scalars == 1 && !std::holds_alternative<Scalar>(d.factors.back()))
        flag(report, "conformal-scalar-not-last", 0.0, 0.0);
      if (planar > planar_bound)
        flag(report, "planar-factor-count", static_cast<double>(planar),
             static_cast<double>(planar_bound));
      if (reflectional > 1)
        flag(report, "reflection-count", static_cast<double>(reflectional), 1.0);
      break;
    case Claim::invertible:
      if (d.factors.size() != 3 || rotational != 1 || axonals != 1 ||
          diagonals != 1)
        flag(report, "invertible-claim-structure",
             static_cast<double>(d.factors.size()), 3.0);
      else {
        if (!std::holds_alternative<Rotational>(d.factors[0]) ||
            !std::holds_alternative<GeneralAxonal>(d.factors[1]) ||
            !std::holds_alternative<DiagonalInBasis>(d.factors[2]))
          flag(report, "invertible-claim-order", 0.0, 0.0);
        const auto& diag = std::get<DiagonalInBasis>(d.factors[2]);
        for (double e : diag.entries)
          if (e <= 0.0) flag(report, "diagonal-entry-not-positive", e, 0.0);
      }
      break;
  }
  (void)last_reflection_pos;
  return report;
}

namespace {

Matrix random_matrix(const Space& space, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  Matrix a(space.dim());
  for (double& v : a.data()) v = unit(rng);
  return a;
}

Matrix random_orthogonal(const Space& space, std::mt19937_64& rng) {
  const std::size_t n = space.dim();
  // An operator with M^T G M = G maps one G-orthonormal basis onto
  // another: M = Q E^{-1} with E the reference G-orthonormal frame and Q
  // a random one.
  Matrix frame(n);
  {
    const std::vector<Vector> e = orthonormal_basis(space);
    for (std::size_t j = 0; j < n; ++j) frame.set_column(j, e[j]);
  }
  const Matrix frame_inv = inverse(frame, space.tol());
  for (;;) {
    const Matrix a = random_matrix(space, rng);
    std::vector<Vector> cols;
    for (std::size_t j = 0; j < n; ++j) cols.push_back(a.column(j));
    const std::vector<Vector> q = gram_schmidt(space, cols, 1e-6);
    if (q.size() != n) continue;
    Matrix out(n);
    for (std::size_t j = 0; j < n; ++j) out.set_column(j, q[j]);
    if (rng() & 1) {
      for (std::size_t i = 0; i < n; ++i) out(i, 0) = -out(i, 0);
    }
    return out * frame_inv;
  }
}

Basis random_equimodular(const Space& space, std::mt19937_64& rng) {
  const std::size_t n = space.dim();
  std::uniform_real_distribution<double> log_delta(-0.7, 0.7);
  for (;;) {
    const Matrix a = random_matrix(space, rng);
    if (condition_estimate(a, space.tol()) > 1e4) continue;
    const double delta = std::exp(log_delta(rng));
    std::vector<Vector> vecs;
    bool ok = true;
    for (std::size_t j = 0; j < n; ++j) {
      Vector c = a.column(j);
      const double nc = space.norm(c);
      if (nc <= 1e-6) {
        ok = false;
        break;
      }
      for (double& x : c) x *= delta / nc;
      vecs.push_back(std::move(c));
    }
    if (!ok) continue;
    try {
      return Basis(std::move(vecs), space.tol());
    } catch (const degenerate_basis_error&) {
      continue;
    }
  }
}

}  // namespace

Instance generate(const Space& space, GenKind kind, std::uint64_t seed) {
  std::mt19937_64 rng(seed * 0x9E3779B97F4A7C15ULL +
                      static_cast<std::uint64_t>(kind) + 1);
  Instance out;
  switch (kind) {
    case GenKind::invertible: {
      for (;;) {
        Matrix a = random_matrix(space, rng);
        if (condition_estimate(a, space.tol()) < 1e6) {
          out.matrix = std::move(a);
          break;
        }
      }
      break;
    }
    case GenKind::orthogonal:
      out.matrix = random_orthogonal(space, rng);
      break;
    case GenKind::conformal: {
      std::uniform_real_distribution<double> log_c(-1.5, 1.5);
      out.scalar = std::exp(log_c(rng));
      out.matrix = out.scalar * random_orthogonal(space, rng);
      break;
    }
    case GenKind::equimodular_basis: {
      Basis b = random_equimodular(space, rng);
      out.matrix = b.column_matrix();
      out.basis = std::move(b);
      break;
    }
    case GenKind::axonal_witness: {
      if (space.dim() < 2)
        throw precondition_error("axonal witness generation needs dimension >= 2");
      std::uniform_real_distribution<double> angle(0.12, kPi / 2.0 - 0.12);
      std::uniform_real_distribution<double> log_c(-0.7, 0.7);
      for (;;) {
        Basis b = random_equimodular(space, rng);
        const AxialCertificate cert = axial_vector(space, b);
        if (cert.vertex_angle < 0.1 || cert.vertex_angle > kPi / 2.0 - 0.05)
          continue;
        const double phi = angle(rng);
        Basis rotated = [&]() -> Basis {
          return rotate_basis_toward_axis(space, b, phi);
        }();
        double scale = 1.0;
        if (rng() & 1) {
          scale = std::exp(log_c(rng));
          if (rng() & 1) scale = -scale;
        }
        Matrix image = rotated.column_matrix();
        for (double& v : image.data()) v *= scale;
        Matrix m = image * inverse(b.column_matrix(), space.tol());
        if (!is_axonal_witness(space, m, b)) continue;
        out.matrix = std::move(m);
        out.basis = std::move(b);
        break;
      }
      break;
    }
  }
  return out;
}

namespace {

Rotational rotation_about_axis_3d(const Space& space, const Matrix& t) {
  const Matrix d = t - Matrix::identity(3);
  Vector axis = g_normalized(space, null_vector(d, space.tol()));
  const Vector p = orthogonal_complement_vector(space, axis);
  std::vector<Vector> candidates{axis, p};
  for (const Vector& e : orthonormal_basis(space)) candidates.push_back(e);
  const std::vector<Vector> frame = gram_schmidt(space, candidates, 1e-10);
  if (frame.size() != 3)
    throw internal_error("oracle: could not complete the rotation frame");
  const Vector& q = frame[2];
  const Vector tp = t * p;
  const double theta = std::atan2(space.inner(q, tp), space.inner(p, tp));
  return Rotational{p, q, theta};
}

}  // namespace

Decomposition oracle_small_dim(const Space& space, const Matrix& t) {
  const std::size_t n = space.dim();
  if (n != 2 && n != 3)
    throw precondition_error("oracle_small_dim handles dimensions 2 and 3 only");
  if (!is_orthogonal(space, t))
    throw precondition_error("oracle_small_dim requires an orthogonal operator");

  std::vector<Factor> factors;
  if (n == 2) {
    if (det(t) > 0.0)
      factors.emplace_back(extract_rotational(space, t));
    else
      factors.emplace_back(extract_reflectional(space, t));
  } else {
    if (det(t) > 0.0) {
      factors.emplace_back(rotation_about_axis_3d(space, t));
    } else {
      const Matrix sum = t + Matrix::identity(3);
      Vector p = g_normalized(space, null_vector(sum, space.tol()));
      const Reflectional f{p};
      const Matrix rot_part = t * materialize(space, f);
      factors.emplace_back(f);
      factors.emplace_back(rotation_about_axis_3d(space, rot_part));
    }
  }

  Decomposition d{std::move(factors), 0.0};
  const Matrix product = recompose(space, d);
  d.residual = frobenius(product - t) / std::max(frobenius(t), 1e-300);
  if (d.residual > 1e-10)
    throw internal_error("oracle decomposition residual exceeds 1e-10");
  return d;
}

}  // namespace axdecomp
