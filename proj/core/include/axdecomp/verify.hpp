#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "axdecomp/decompose.hpp"

namespace axdecomp {

struct Violation {
  std::string invariant;
  double measured = 0.0;
  double threshold = 0.0;
};

struct CheckReport {
  bool passed = true;
  double residual = 0.0;
  std::vector<Violation> violations;
};

enum class Claim { invertible, conformal, orthogonal };

/// Product of the materialized factors in the stored application-order
/// convention; the identity for an empty list.
Matrix recompose(const Space& space, const Decomposition& d);

/// Certificate check: residual, per-factor classifiers, factor-count
/// bound, determinant bookkeeping and the claim's structural rules. All
/// failures are reported, never thrown.
CheckReport check_decomposition(const Space& space, const Matrix& t,
                                const Decomposition& d, Claim claim);

enum class GenKind {
  invertible,
  orthogonal,
  conformal,
  equimodular_basis,
  axonal_witness,
};

/// Seeded random instance. `matrix` is filled for the operator kinds,
/// `basis` for equimodular_basis and axonal_witness (the witness basis),
/// `scalar` carries the conformal scale factor.
struct Instance {
  std::optional<Matrix> matrix;
  std::optional<Basis> basis;
  double scalar = 0.0;
};

/// Deterministic per (kind, seed); generated operators are gated on a
/// condition-number estimate so default tolerances stay meaningful.
Instance generate(const Space& space, GenKind kind, std::uint64_t seed);

/// Closed-form orthogonal decomposition for dimensions 2 and 3,
/// independent of the recursive path: angle/reflection-line extraction
/// in 2-D, the classical rotation-axis construction in 3-D.
Decomposition oracle_small_dim(const Space& space, const Matrix& t);

}  // namespace axdecomp
