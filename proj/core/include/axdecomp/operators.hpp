#pragma once

#include <optional>
#include <variant>

#include "axdecomp/basis_axis.hpp"
#include "axdecomp/space.hpp"
#include "axdecomp/types.hpp"

namespace axdecomp {

/// Planar rotation by theta in the oriented G-orthonormal plane
/// (plane_u, plane_v); identity on the G-orthogonal complement.
struct Rotational {
  Vector plane_u;
  Vector plane_v;
  double theta = 0.0;
};

/// Planar reflection: -1 on span{negated}, +1 on its G-orthogonal
/// complement.
struct Reflectional {
  Vector negated;
};

struct Scalar {
  double c = 1.0;
};

/// Acts as diag(entries) in the stored basis coordinates.
struct DiagonalInBasis {
  Basis basis;
  Vector entries;
};

/// Rotates each vector of the stored equimodular basis by delta within
/// the plane it spans with the basis axis; extended linearly.
struct Shear {
  Basis basis;
  double delta = 0.0;
};

/// Axonal operator kept as its matrix plus the equimodular witness pair
/// it maps one onto the other.
struct GeneralAxonal {
  Matrix matrix;
  Basis witness_in;
  Basis witness_out;
};

using Factor =
    std::variant<Rotational, Reflectional, Scalar, DiagonalInBasis, Shear,
                 GeneralAxonal>;

/// Coordinate matrix of a factor. Throws precondition_error on a
/// malformed payload.
Matrix materialize(const Space& space, const Factor& f);

/// M^T G M = G within tolerance.
bool is_orthogonal(const Space& space, const Matrix& m);

/// Conformality certificate lambda > 0 with M^T G M = lambda G, or
/// nullopt when the identity fails.
std::optional<double> conformal_lambda(const Space& space, const Matrix& m);

/// Planar rotation test: orthogonal, rank(M - I) <= 2, det = 1. The
/// identity counts as rotational.
bool is_rotational(const Space& space, const Matrix& m);

/// Planar reflection test: orthogonal, rank(M - I) = 1, det = -1.
bool is_reflectional(const Space& space, const Matrix& m);

/// Axonal witness test: B and M.B both equimodular with a common axis.
bool is_axonal_witness(const Space& space, const Matrix& m, const Basis& b);

/// Rotates each basis vector within the plane it spans with the basis
/// axis so that the common angle becomes phi, preserving norms. Requires
/// n >= 2, an equimodular basis and phi outside {0, pi/2, pi}.
Basis rotate_basis_toward_axis(const Space& space, const Basis& b, double phi);

/// Shear factor rotating the basis by delta toward its axis; the target
/// vertex angle must stay inside (0, pi) excluding pi/2.
Shear shear_of_basis(const Space& space, const Basis& b, double delta);

// ---- helpers shared with decompose ----

/// Extracts a Rotational factor from a matrix already known to pass
/// is_rotational.
Rotational extract_rotational(const Space& space, const Matrix& m);

/// Extracts a Reflectional factor from a matrix already known to pass
/// is_reflectional.
Reflectional extract_reflectional(const Space& space, const Matrix& m);

/// Some unit vector G-orthogonal to d (n >= 2).
Vector orthogonal_complement_vector(const Space& space, const Vector& d);

}  // namespace axdecomp
