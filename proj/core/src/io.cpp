#include "axdecomp/io.hpp"

#include <nlohmann/json.hpp>

namespace axdecomp {

using nlohmann::json;

namespace {

std::vector<Vector> rows_from_json(const json& j) {
  if (!j.is_array() || j.empty())
    throw parse_error("expected a non-empty array of rows");
  std::vector<Vector> rows;
  for (const json& row : j) rows.push_back(vector_from_json(row));
  return rows;
}

json rows_to_json(const std::vector<Vector>& rows) {
  json out = json::array();
  for (const Vector& r : rows) out.push_back(vector_to_json(r));
  return out;
}

Basis basis_from_rows(const std::vector<Vector>& rows, const Tolerance& tol) {
  try {
    return Basis(rows, tol);
  } catch (const dimension_error& e) {
    throw parse_error(e.what());
  }
}

json basis_to_json(const Basis& b) { return rows_to_json(b.vectors()); }

}  // namespace

json vector_to_json(const Vector& v) {
  json out = json::array();
  for (double x : v) out.push_back(x);
  return out;
}

Vector vector_from_json(const json& j) {
  if (!j.is_array()) throw parse_error("expected a numeric array");
  Vector v;
  for (const json& x : j) {
    if (!x.is_number()) throw parse_error("expected a numeric array");
    v.push_back(x.get<double>());
  }
  return v;
}

json matrix_to_json(const Matrix& m) {
  json out = json::array();
  for (std::size_t i = 0; i < m.dim(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < m.dim(); ++j) row.push_back(m(i, j));
    out.push_back(std::move(row));
  }
  return out;
}

Matrix matrix_from_json(const json& j) {
  const std::vector<Vector> rows = rows_from_json(j);
  const std::size_t n = rows.size();
  Matrix m(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (rows[i].size() != n) throw parse_error("matrix is not square");
    for (std::size_t k = 0; k < n; ++k) m(i, k) = rows[i][k];
  }
  return m;
}

json factor_to_json(const Factor& f) {
  json out;
  if (const auto* r = std::get_if<Rotational>(&f)) {
    out["kind"] = "rotational";
    out["plane_u"] = vector_to_json(r->plane_u);
    out["plane_v"] = vector_to_json(r->plane_v);
    out["theta"] = r->theta;
  } else if (const auto* r = std::get_if<Reflectional>(&f)) {
    out["kind"] = "reflectional";
    out["negated"] = vector_to_json(r->negated);
  } else if (const auto* s = std::get_if<Scalar>(&f)) {
    out["kind"] = "scalar";
    out["c"] = s->c;
  } else if (const auto* d = std::get_if<DiagonalInBasis>(&f)) {
    out["kind"] = "diagonal_in_basis";
    out["basis"] = basis_to_json(d->basis);
    out["entries"] = vector_to_json(d->entries);
  } else if (const auto* sh = std::get_if<Shear>(&f)) {
    out["kind"] = "shear";
    out["basis"] = basis_to_json(sh->basis);
    out["delta"] = sh->delta;
  } else if (const auto* a = std::get_if<GeneralAxonal>(&f)) {
    out["kind"] = "general_axonal";
    out["matrix"] = matrix_to_json(a->matrix);
    out["witness_in"] = basis_to_json(a->witness_in);
    out["witness_out"] = basis_to_json(a->witness_out);
  }
  return out;
}

Factor factor_from_json(const json& j, const Tolerance& tol) {
  if (!j.is_object() || !j.contains("kind") || !j["kind"].is_string())
    throw parse_error("factor requires a \"kind\" tag");
  const std::string kind = j["kind"].get<std::string>();
  try {
    if (kind == "rotational")
      return Rotational{vector_from_json(j.at("plane_u")),
                        vector_from_json(j.at("plane_v")),
                        j.at("theta").get<double>()};
    if (kind == "reflectional")
      return Reflectional{vector_from_json(j.at("negated"))};
    if (kind == "scalar") return Scalar{j.at("c").get<double>()};
    if (kind == "diagonal_in_basis")
      return DiagonalInBasis{
          basis_from_rows(rows_from_json(j.at("basis")), tol),
          vector_from_json(j.at("entries"))};
    if (kind == "shear")
      return Shear{basis_from_rows(rows_from_json(j.at("basis")), tol),
                   j.at("delta").get<double>()};
    if (kind == "general_axonal")
      return GeneralAxonal{
          matrix_from_json(j.at("matrix")),
          basis_from_rows(rows_from_json(j.at("witness_in")), tol),
          basis_from_rows(rows_from_json(j.at("witness_out")), tol)};
  } catch (const json::exception& e) {
    throw parse_error(std::string("malformed factor: ") + e.what());
  }
  throw parse_error("unknown factor kind: " + kind);
}

json decomposition_to_json(const Decomposition& d) {
  json out;
  out["convention"] = "apply-left-to-right";
  json factors = json::array();
  for (const Factor& f : d.factors) factors.push_back(factor_to_json(f));
  out["factors"] = std::move(factors);
  out["residual"] = d.residual;
  return out;
}

Decomposition decomposition_from_json(const json& j, const Tolerance& tol) {
  if (!j.is_object() || !j.contains("factors"))
    throw parse_error("decomposition requires a \"factors\" list");
  if (j.contains("convention") &&
      j["convention"].get<std::string>() != "apply-left-to-right")
    throw parse_error("unsupported composition convention");
  Decomposition d;
  for (const json& f : j["factors"]) d.factors.push_back(factor_from_json(f, tol));
  d.residual = j.value("residual", 0.0);
  return d;
}

json report_to_json(const CheckReport& r) {
  json out;
  out["passed"] = r.passed;
  out["residual"] = r.residual;
  json violations = json::array();
  for (const Violation& v : r.violations) {
    json entry;
    entry["invariant"] = v.invariant;
    entry["measured"] = v.measured;
    entry["threshold"] = v.threshold;
    violations.push_back(std::move(entry));
  }
  out["violations"] = std::move(violations);
  return out;
}

Document parse_document(const json& j) {
  if (!j.is_object()) throw parse_error("document must be a JSON object");
  Document doc;
  if (!j.contains("dim") || !j["dim"].is_number_integer() ||
      j["dim"].get<long long>() < 1)
    throw parse_error("document requires a positive integer \"dim\"");
  doc.dim = j["dim"].get<std::size_t>();

  doc.gram = j.contains("gram") ? matrix_from_json(j["gram"])
                                : Matrix::identity(doc.dim);
  if (doc.gram.dim() != doc.dim)
    throw parse_error("gram shape does not match dim");

  if (j.contains("matrix")) {
    doc.matrix = matrix_from_json(j["matrix"]);
    if (doc.matrix->dim() != doc.dim)
      throw parse_error("matrix shape does not match dim");
  }
  if (j.contains("basis")) {
    std::vector<Vector> rows = rows_from_json(j["basis"]);
    if (rows.size() != doc.dim)
      throw parse_error("basis shape does not match dim");
    for (const Vector& r : rows)
      if (r.size() != doc.dim) throw parse_error("basis shape does not match dim");
    doc.basis_rows = std::move(rows);
  }
  if (j.contains("decomposition"))
    doc.decomposition = decomposition_from_json(j["decomposition"], Tolerance{});
  if (!doc.matrix && !doc.basis_rows && !doc.decomposition)
    throw parse_error(
        "document requires one of \"matrix\", \"basis\" or \"decomposition\"");
  return doc;
}

Space Document::make_space(const Tolerance& tol) const {
  return Space(dim, gram, tol);
}

Basis Document::make_basis(const Tolerance& tol) const {
  if (!basis_rows) throw parse_error("document has no \"basis\" field");
  return Basis(*basis_rows, tol);
}

}  // namespace axdecomp
