#pragma once

#include <optional>
#include <vector>

#include "axdecomp/space.hpp"
#include "axdecomp/types.hpp"

namespace axdecomp {

/// Ordered list of n linearly independent vectors. Construction rejects
/// numerically dependent input.
class Basis {
 public:
  explicit Basis(std::vector<Vector> vectors, const Tolerance& tol = {});

  const std::vector<Vector>& vectors() const { return vectors_; }
  std::size_t size() const { return vectors_.size(); }
  const Vector& operator[](std::size_t i) const { return vectors_[i]; }

  /// Matrix whose columns are the basis vectors.
  Matrix column_matrix() const;

 private:
  std::vector<Vector> vectors_;
};

/// Image basis {M b_i}.
Basis apply(const Matrix& m, const Basis& b, const Tolerance& tol = {});

/// Certificate for an axial vector: <u_i, axial> = omega for every
/// normalized basis vector u_i, all making the common vertex angle.
struct AxialCertificate {
  Vector axial;
  double omega = 1.0;
  double vertex_angle = 0.0;
};

/// 1-dimensional span, stored by a unit direction; equality is up to sign.
struct Line {
  Vector direction;
};

/// Cone around axis_dir of the given vertex angle:
/// { x : <x, axis_dir> = |x| cos(vertex_angle) }.
struct Cone {
  Vector axis_dir;
  double vertex_angle = 0.0;
};

/// Common norm of the basis vectors when they all agree within
/// tolerance, nullopt otherwise.
std::optional<double> equimodular_delta(const Space& space, const Basis& b);

bool is_equimodular(const Space& space, const Basis& b);

/// Axial vector of an arbitrary basis via the Gram system of the
/// normalized vectors: solve A x = (1,...,1) with A_ij = <u_i, u_j>,
/// then axial = sum x_i u_i. The omega = +1 convention orients the
/// result so that <u_i, axial> > 0 for every i.
AxialCertificate axial_vector(const Space& space, const Basis& b);

/// Span of the axial vector; unique per basis up to sign.
Line axis_of(const Space& space, const Basis& b);

bool lines_equal(const Space& space, const Line& l1, const Line& l2);

/// Throws precondition_error on a zero vector x.
bool cone_contains(const Space& space, const Cone& c, const Vector& x);

/// Cone whose axis is the basis axis (omega = +1 orientation) and whose
/// vertex angle is the common angle; every normalized basis vector lies
/// on it.
Cone associated_cone(const Space& space, const Basis& b);

/// Set equality of cones: equal axes and equal angles, allowing the
/// (direction, theta) vs (-direction, pi - theta) representation of the
/// same point set.
bool cones_equal(const Space& space, const Cone& c1, const Cone& c2);

}  // namespace axdecomp
