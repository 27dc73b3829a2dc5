#pragma once

#include <vector>

#include "axdecomp/operators.hpp"
#include "axdecomp/space.hpp"

namespace axdecomp {

/// Relative Frobenius residual accepted at construction of any
/// decomposition. Looser than the solver tolerance because residuals
/// accumulate across O(n) factor products.
inline constexpr double kAcceptTol = 1e-8;

/// Ordered factor list in application order: [F1, ..., Fk] represents
/// T = Fk o ... o F1 (F1 applied first), plus the relative Frobenius
/// residual of recomposition against the input.
struct Decomposition {
  std::vector<Factor> factors;
  double residual = 0.0;
};

/// Rotational factor carrying span(L1) onto span(L2) through the acute
/// principal angle; identity when the lines already agree.
Rotational rotation_between_lines(const Space& space, const Line& l1,
                                  const Line& l2);

/// T = D o A o R with R rotational, A axonal (stored with its witness
/// bases) and D diagonal in the normalized image basis with positive
/// entries. Throws singular_error for singular T.
Decomposition decompose_invertible(const Space& space, const Matrix& t);

/// Conformal T as planar rotations, at most one planar reflection, and a
/// trailing scalar: exactly n-1 planar factors plus one Scalar for
/// n >= 2, a single Scalar for n = 1. Throws precondition_error when T
/// is not conformal.
Decomposition decompose_conformal(const Space& space, const Matrix& t);

/// Orthogonal T as planar rotations plus at most one planar reflection
/// (present exactly when det T = -1); no scalar or diagonal factors.
Decomposition decompose_orthogonal(const Space& space, const Matrix& t);

/// Normal form for lists of Rotational/Reflectional/Scalar factors:
/// merges reflection pairs, moves a surviving reflection past commuting
/// rotations toward the end, folds Scalar{+-1}, and drops identity
/// rotations. The factor product is preserved.
Decomposition canonicalize(const Space& space, const Decomposition& d);

/// Split of an axonal operator into a cone-preserving axonal part and an
/// n-shear: a = cone_preserving o shear.
struct AxonalShearSplit {
  GeneralAxonal cone_preserving;
  Shear shear;
};
AxonalShearSplit factor_axonal_shear(const Space& space, const Matrix& a,
                                     const Basis& b);

}  // namespace axdecomp
