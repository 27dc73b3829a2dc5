#pragma once

#include <optional>

#include <nlohmann/json_fwd.hpp>

#include "axdecomp/decompose.hpp"
#include "axdecomp/verify.hpp"

namespace axdecomp {

/// Malformed JSON document or factor encoding.
class parse_error : public error {
 public:
  using error::error;
};

/// Single-document JSON input: dimension, optional Gram matrix (default
/// identity) and one payload of matrix / basis (rows) / decomposition.
struct Document {
  std::size_t dim = 0;
  Matrix gram;
  std::optional<Matrix> matrix;
  std::optional<std::vector<Vector>> basis_rows;
  std::optional<Decomposition> decomposition;

  Space make_space(const Tolerance& tol) const;
  Basis make_basis(const Tolerance& tol) const;
};

Document parse_document(const nlohmann::json& j);

nlohmann::json matrix_to_json(const Matrix& m);
Matrix matrix_from_json(const nlohmann::json& j);

nlohmann::json vector_to_json(const Vector& v);
Vector vector_from_json(const nlohmann::json& j);

nlohmann::json factor_to_json(const Factor& f);
Factor factor_from_json(const nlohmann::json& j, const Tolerance& tol);

nlohmann::json decomposition_to_json(const Decomposition& d);
Decomposition decomposition_from_json(const nlohmann::json& j,
                                      const Tolerance& tol);

nlohmann::json report_to_json(const CheckReport& r);

}  // namespace axdecomp
