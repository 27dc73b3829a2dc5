#include "axdecomp/decompose.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "axdecomp/verify.hpp"

namespace axdecomp {

namespace {

constexpr double kPi = std::numbers::pi;

Vector normalized(const Space& space, Vector v) {
  const double n = space.norm(v);
  if (n <= space.tol().abs) throw internal_error("normalizing a zero vector");
  for (double& c : v) c /= n;
  return v;
}

double relative_residual(const Space& space, const Matrix& t,
                         const std::vector<Factor>& factors) {
  const Matrix product = recompose(space, Decomposition{factors, 0.0});
  return frobenius(product - t) / std::max(frobenius(t), 1e-300);
}

Decomposition finish(const Space& space, const Matrix& t,
                     std::vector<Factor> factors) {
  Decomposition d{std::move(factors), 0.0};
  d.residual = relative_residual(space, t, d.factors);
  if (d.residual > kAcceptTol)
    throw internal_error("decomposition residual exceeds acceptance tolerance");
  return d;
}

Rotational identity_rotation(const Space& space) {
  const std::vector<Vector> onb = orthonormal_basis(space);
  Vector u = onb[0];
  Vector v = space.dim() >= 2 ? onb[1] : onb[0];
  return Rotational{std::move(u), std::move(v), 0.0};
}

/// Rotation mapping the ray of d1 onto the ray of d2 (both unit). Unlike
/// rotation_between_lines this respects orientation, which keeps the
/// conformal recursion's axial vector fixed with a + sign.
Rotational rotation_aligning_rays(const Space& space, const Vector& d1,
                                  const Vector& d2) {
  const double c = std::clamp(space.inner(d1, d2), -1.0, 1.0);
  Vector w(d1.size());
  for (std::size_t i = 0; i < w.size(); ++i) w[i] = d2[i] - c * d1[i];
  const double s = space.norm(w);
  if (s <= 1e-15) {
    if (c > 0.0) return identity_rotation(space);
    return Rotational{d1, orthogonal_complement_vector(space, d1), kPi};
  }
  const double theta = std::acos(c);
  if (theta < 1e-12) return identity_rotation(space);
  for (double& x : w) x /= s;
  return Rotational{d1, std::move(w), theta};
}

bool is_planar(const Factor& f) {
  return std::holds_alternative<Rotational>(f) ||
         std::holds_alternative<Reflectional>(f);
}

bool is_identity_rotation(const Factor& f) {
  const auto* r = std::get_if<Rotational>(&f);
  if (r == nullptr) return false;
  const double wrapped = std::remainder(r->theta, 2.0 * kPi);
  return std::fabs(wrapped) <= 1e-12;
}

std::size_t planar_count(const std::vector<Factor>& fs) {
  return static_cast<std::size_t>(
      std::count_if(fs.begin(), fs.end(), is_planar));
}

/// Factors whose product is -I: disjoint pi-rotations plus one
/// reflection when the dimension is odd.
std::vector<Factor> negation_factors(const Space& space) {
  const std::vector<Vector> onb = orthonormal_basis(space);
  std::vector<Factor> out;
  std::size_t i = 0;
  for (; i + 1 < onb.size(); i += 2)
    out.push_back(Rotational{onb[i], onb[i + 1], kPi});
  if (i < onb.size()) out.push_back(Reflectional{onb[i]});
  return out;
}

void pad_planar(const Space& space, std::vector<Factor>& fs,
                std::size_t target) {
  while (planar_count(fs) < target)
    fs.insert(fs.begin(), Factor{identity_rotation(space)});
}

Vector lift(const std::vector<Vector>& frame, const Vector& sub_coords) {
  Vector out(frame[0].size(), 0.0);
  for (std::size_t k = 0; k < sub_coords.size(); ++k)
    for (std::size_t i = 0; i < out.size(); ++i)
      out[i] += sub_coords[k] * frame[k][i];
  return out;
}

Factor lift_factor(const std::vector<Vector>& frame, const Factor& f) {
  if (const auto* r = std::get_if<Rotational>(&f))
    return Rotational{lift(frame, r->plane_u), lift(frame, r->plane_v),
                      r->theta};
  if (const auto* r = std::get_if<Reflectional>(&f))
    return Reflectional{lift(frame, r->negated)};
  throw internal_error("only planar factors may be lifted");
}

Decomposition decompose_conformal_impl(const Space& space, const Matrix& t,
                                       double lambda);

}  // namespace

Rotational rotation_between_lines(const Space& space, const Line& l1,
                                  const Line& l2) {
  const Vector& d1 = l1.direction;
  Vector d2 = l2.direction;
  if (lines_equal(space, l1, l2)) return identity_rotation(space);
  if (space.inner(d1, d2) < 0.0)
    for (double& c : d2) c = -c;
  const double c = std::clamp(space.inner(d1, d2), -1.0, 1.0);
  const double theta = std::acos(c);
  if (theta < 1e-12) return identity_rotation(space);
  Vector w(d2.size());
  for (std::size_t i = 0; i < w.size(); ++i) w[i] = d2[i] - c * d1[i];
  const double s = space.norm(w);
  for (double& x : w) x /= s;
  return Rotational{d1, std::move(w), theta};
}

Decomposition decompose_invertible(const Space& space, const Matrix& t) {
  const std::size_t n = space.dim();
  if (t.dim() != n) throw dimension_error("operator does not match space");
  const double floor = space.tol().rank_tol * std::max(max_abs(t), space.tol().abs);
  lu_factor(t, floor);  // singular_error for singular input

  const std::vector<Vector> u = orthonormal_basis(space);
  std::vector<Vector> v(n), w(n);
  Vector lengths(n);
  for (std::size_t i = 0; i < n; ++i) {
    v[i] = t * u[i];
    lengths[i] = space.norm(v[i]);
    w[i] = v[i];
    for (double& c : w[i]) c /= lengths[i];
  }
  const Basis basis_u(u, space.tol());
  const Basis basis_w(w, space.tol());

  const Rotational r = rotation_between_lines(
      space, axis_of(space, basis_u), axis_of(space, basis_w));
  const Matrix rm = materialize(space, r);

  std::vector<Vector> ru(n);
  for (std::size_t i = 0; i < n; ++i) ru[i] = rm * u[i];
  Basis basis_ru(ru, space.tol());

  const Matrix a =
      basis_w.column_matrix() * inverse(basis_ru.column_matrix(), space.tol());

  std::vector<Factor> factors;
  factors.emplace_back(r);
  factors.emplace_back(
      GeneralAxonal{a, std::move(basis_ru), basis_w});
  factors.emplace_back(DiagonalInBasis{basis_w, std::move(lengths)});
  return finish(space, t, std::move(factors));
}

namespace {

Decomposition decompose_conformal_impl(const Space& space, const Matrix& t,
                                       double lambda) {
  const std::size_t n = space.dim();
  const double c = std::sqrt(lambda);

  if (n == 1) return finish(space, t, {Scalar{t(0, 0)}});

  if (n == 2) {
    const Matrix q = (1.0 / c) * t;
    std::vector<Factor> factors;
    if (std::fabs(det(q) - 1.0) <= 1e-6)
      factors.emplace_back(extract_rotational(space, q));
    else
      factors.emplace_back(extract_reflectional(space, q));
    factors.emplace_back(Scalar{c});
    return finish(space, t, std::move(factors));
  }

  // The constructive route: T = c * A1 * R1 with R1 carrying the axis of
  // the orthonormal start basis onto the axis of its image, and A1
  // orthogonal and axis-fixing.
  const std::vector<Vector> u = orthonormal_basis(space);
  std::vector<Vector> w(n);
  for (std::size_t i = 0; i < n; ++i) {
    w[i] = t * u[i];
    const double len = space.norm(w[i]);
    for (double& x : w[i]) x /= len;
  }
  const Basis basis_u(u, space.tol());
  const Basis basis_w(w, space.tol());

  const Vector alpha1 =
      normalized(space, axial_vector(space, basis_u).axial);
  const Vector alpha2 =
      normalized(space, axial_vector(space, basis_w).axial);

  const Rotational r1 = rotation_aligning_rays(space, alpha1, alpha2);
  const Matrix r1m = materialize(space, r1);
  const Matrix r1inv =
      materialize(space, Rotational{r1.plane_u, r1.plane_v, -r1.theta});

  Matrix a1 = (1.0 / c) * (t * r1inv);
  if (!is_orthogonal(space, a1))
    throw internal_error("conformal recursion: A1 is not orthogonal");

  const Vector gamma = normalized(space, r1m * alpha1);
  const Vector a1_gamma = a1 * gamma;
  const double sign = space.inner(gamma, a1_gamma) >= 0.0 ? 1.0 : -1.0;
  {
    Vector diff(n);
    for (std::size_t i = 0; i < n; ++i) diff[i] = a1_gamma[i] - sign * gamma[i];
    if (space.norm(diff) > 1e-8)
      throw internal_error("conformal recursion: A1 does not fix the axis");
  }

  std::vector<Factor> factors;
  factors.emplace_back(r1);
  if (sign < 0.0) {
    // The ray-aligned R1 makes this branch unreachable in exact
    // arithmetic; kept as a safety net for numerical edge cases.
    const Reflectional f{gamma};
    factors.emplace_back(f);
    a1 = a1 * materialize(space, f);
  }

  // G-orthonormal frame starting with the fixed axis; the tail spans its
  // orthogonal complement.
  std::vector<Vector> candidates{gamma};
  for (const Vector& e : orthonormal_basis(space)) candidates.push_back(e);
  const std::vector<Vector> frame = gram_schmidt(space, candidates, 1e-10);
  if (frame.size() != n)
    throw internal_error("conformal recursion: complement frame incomplete");
  const std::vector<Vector> q(frame.begin() + 1, frame.end());

  Matrix t2(n - 1);
  for (std::size_t k = 0; k + 1 < n; ++k)
    for (std::size_t l = 0; l + 1 < n; ++l)
      t2(k, l) = space.inner(q[k], a1 * q[l]);

  const Space sub(n - 1, space.tol());
  const Decomposition inner = decompose_orthogonal(sub, t2);
  for (const Factor& f : inner.factors)
    factors.push_back(lift_factor(q, f));

  factors.emplace_back(Scalar{c});

  Decomposition d = canonicalize(space, Decomposition{std::move(factors), 0.0});
  pad_planar(space, d.factors, n - 1);
  // Keep the scalar explicit even when c == 1.
  if (!std::holds_alternative<Scalar>(d.factors.back()))
    d.factors.emplace_back(Scalar{c});
  return finish(space, t, std::move(d.factors));
}

}  // namespace

Decomposition decompose_conformal(const Space& space, const Matrix& t) {
  const std::optional<double> lambda = conformal_lambda(space, t);
  if (!lambda)
    throw precondition_error("operator is not conformal");
  return decompose_conformal_impl(space, t, *lambda);
}

Decomposition decompose_orthogonal(const Space& space, const Matrix& t) {
  const std::size_t n = space.dim();
  if (!is_orthogonal(space, t))
    throw precondition_error("operator is not orthogonal");

  std::vector<Factor> factors;
  if (n == 1) {
    if (t(0, 0) < 0.0) factors.emplace_back(extract_reflectional(space, t));
    return finish(space, t, std::move(factors));
  }

  if (is_rotational(space, t)) {
    Rotational r = extract_rotational(space, t);
    if (!is_identity_rotation(Factor{r})) factors.emplace_back(std::move(r));
  } else if (is_reflectional(space, t)) {
    factors.emplace_back(extract_reflectional(space, t));
  } else {
    Decomposition conf = decompose_conformal_impl(space, t, 1.0);
    factors = std::move(conf.factors);
    const Scalar trailing = std::get<Scalar>(factors.back());
    factors.pop_back();
    if (std::fabs(trailing.c - 1.0) <= 1e-6) {
      // dropped
    } else if (std::fabs(trailing.c + 1.0) <= 1e-6) {
      for (Factor& f : negation_factors(space)) factors.push_back(std::move(f));
      Decomposition canon =
          canonicalize(space, Decomposition{std::move(factors), 0.0});
      factors = std::move(canon.factors);
    } else {
      throw internal_error("orthogonal input produced a non-unit scalar");
    }
  }
  pad_planar(space, factors, n - 1);
  return finish(space, t, std::move(factors));
}

Decomposition canonicalize(const Space& space, const Decomposition& d) {
  const std::size_t n = space.dim();
  std::vector<Factor> fs;
  double scalar_total = 1.0;
  for (const Factor& f : d.factors) {
    if (const auto* s = std::get_if<Scalar>(&f)) {
      scalar_total *= s->c;
    } else if (is_planar(f)) {
      fs.push_back(f);
    } else {
      throw precondition_error(
          "canonicalize accepts rotational, reflectional and scalar factors only");
    }
  }
  if (std::fabs(scalar_total + 1.0) <= 1e-12) {
    for (Factor& f : negation_factors(space)) fs.push_back(std::move(f));
    scalar_total = 1.0;
  }

  bool changed = true;
  std::size_t guard = 0;
  while (changed && guard++ < 10 * (fs.size() + 1) * (fs.size() + 1)) {
    changed = false;
    for (std::size_t i = 0; i + 1 < fs.size(); ++i) {
      const auto* refl = std::get_if<Reflectional>(&fs[i]);
      if (refl == nullptr) continue;
      if (const auto* next_refl = std::get_if<Reflectional>(&fs[i + 1])) {
        // Two planar reflections compose to a planar rotation in the
        // span of their lines (identity when the lines coincide).
        const Matrix product = materialize(space, fs[i + 1]) *
                               materialize(space, fs[i]);
        if (max_abs(product - Matrix::identity(n)) <= 1e-9) {
          fs.erase(fs.begin() + static_cast<std::ptrdiff_t>(i),
                   fs.begin() + static_cast<std::ptrdiff_t>(i) + 2);
        } else {
          const Rotational merged = extract_rotational(space, product);
          fs[i] = merged;
          fs.erase(fs.begin() + static_cast<std::ptrdiff_t>(i) + 1);
        }
        changed = true;
        break;
      }
      if (std::holds_alternative<Rotational>(fs[i + 1])) {
        // R o F = (R F R^{-1}) o R, and conjugating a planar reflection
        // by a rotation reflects across the rotated line.
        const Matrix r = materialize(space, fs[i + 1]);
        Reflectional moved{normalized(space, r * refl->negated)};
        fs[i] = fs[i + 1];
        fs[i + 1] = std::move(moved);
        changed = true;
        break;
      }
    }
  }

  std::erase_if(fs, is_identity_rotation);

  std::size_t refl_count = 0;
  for (std::size_t i = 0; i < fs.size(); ++i)
    if (std::holds_alternative<Reflectional>(fs[i])) {
      ++refl_count;
      if (i + 1 != fs.size())
        throw precondition_error(
            "canonicalize: reflection could not be moved to the last position");
    }
  if (refl_count > 1)
    throw precondition_error("canonicalize: more than one reflection remains");

  if (std::fabs(scalar_total - 1.0) > 1e-12)
    fs.emplace_back(Scalar{scalar_total});
  return Decomposition{std::move(fs), d.residual};
}

AxonalShearSplit factor_axonal_shear(const Space& space, const Matrix& a,
                                     const Basis& b) {
  if (!is_axonal_witness(space, a, b))
    throw precondition_error("operator is not an axonal witness for the basis");

  const AxialCertificate cert_in = axial_vector(space, b);
  const Vector axis_in = normalized(space, cert_in.axial);
  const Basis image = apply(a, b, space.tol());
  const AxialCertificate cert_out = axial_vector(space, image);
  const Vector axis_out = normalized(space, cert_out.axial);

  // Match the image cone as a point set: an orientation flip of the
  // shared axis swaps theta for pi - theta.
  const bool same_orientation = space.inner(axis_in, axis_out) > 0.0;
  const double target = same_orientation
                            ? cert_out.vertex_angle
                            : kPi - cert_out.vertex_angle;
  const double delta = cert_in.vertex_angle - target;

  const Shear shear = shear_of_basis(space, b, delta);
  const Matrix shear_m = materialize(space, shear);
  const Basis sheared = apply(shear_m, b, space.tol());

  const Matrix residual_map =
      image.column_matrix() * inverse(sheared.column_matrix(), space.tol());

  if (!cones_equal(space, associated_cone(space, sheared),
                   associated_cone(space, image)))
    throw internal_error("shear factorization: cones do not match");

  const Matrix recomposed = residual_map * shear_m;
  if (frobenius(recomposed - a) > kAcceptTol * std::max(frobenius(a), 1.0))
    throw internal_error("shear factorization: recomposition residual too large");

  return AxonalShearSplit{GeneralAxonal{residual_map, sheared, image}, shear};
}

}  // namespace axdecomp
