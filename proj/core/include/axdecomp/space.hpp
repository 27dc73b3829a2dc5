#pragma once

#include <cstddef>
#include <vector>

#include "axdecomp/types.hpp"

namespace axdecomp {

/// Real inner-product space of dimension n with metric <x,y> = x^T G y,
/// G symmetric positive definite. Every other module works relative to
/// one Space.
class Space {
 public:
  /// Throws precondition_error if gram is not symmetric SPD.
  Space(std::size_t dim, Matrix gram, Tolerance tol = {});

  /// Euclidean space (G = I).
  explicit Space(std::size_t dim, Tolerance tol = {});

  std::size_t dim() const { return dim_; }
  const Matrix& gram() const { return gram_; }
  const Tolerance& tol() const { return tol_; }

  double inner(const Vector& x, const Vector& y) const;
  double norm(const Vector& x) const;

  /// Angle in [0, pi]; the cosine is clamped before acos. Throws
  /// precondition_error on a zero vector.
  double angle(const Vector& x, const Vector& y) const;

 private:
  std::size_t dim_;
  Matrix gram_;
  Tolerance tol_;
};

/// LU with partial pivoting. Throws singular_error when a pivot falls
/// below pivot_floor.
struct LuFactors {
  Matrix lu;
  std::vector<std::size_t> perm;
  double sign = 1.0;
};
LuFactors lu_factor(const Matrix& a, double pivot_floor);
Vector lu_solve(const LuFactors& f, const Vector& b);

/// Direct dense solve of A x = b. Singular A (relative to tol.rank_tol)
/// raises singular_error.
Vector solve(const Matrix& a, const Vector& b, const Tolerance& tol = {});
Matrix inverse(const Matrix& a, const Tolerance& tol = {});

/// Determinant as the signed product of LU pivots; near-zero for
/// singular input, never throws.
double det(const Matrix& a);

/// Pivot count under row-echelon reduction with partial pivoting,
/// thresholded at tol.rank_tol * max|A|.
std::size_t rank(const Matrix& a, const Tolerance& tol = {});

/// Same reduction with an explicit absolute pivot threshold.
std::size_t rank_abs(const Matrix& a, double threshold);

/// A unit vector in the (approximate) null space of a. Intended for
/// matrices that are singular by construction.
Vector null_vector(const Matrix& a, const Tolerance& tol = {});

/// G-orthonormal basis obtained by Gram-Schmidt on the standard
/// coordinate vectors.
std::vector<Vector> orthonormal_basis(const Space& space);

/// G-orthonormalizes `candidates` in order, keeping vectors whose
/// residual exceeds drop_tol. Seeded entries come first.
std::vector<Vector> gram_schmidt(const Space& space,
                                 const std::vector<Vector>& candidates,
                                 double drop_tol = 1e-8);

}  // namespace axdecomp
