#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "axdecomp/io.hpp"

using nlohmann::json;

namespace {

// Exit-code contract: 0 pass, 1 verification fail, 2 parse/usage,
// 3 degenerate input, 4 precondition fail.
constexpr int kExitOk = 0;
constexpr int kExitVerifyFail = 1;
constexpr int kExitParse = 2;
constexpr int kExitDegenerate = 3;
constexpr int kExitPrecondition = 4;

std::string read_input(const std::string& path) {
  if (path == "-") {
    std::ostringstream ss;
    ss << std::cin.rdbuf();
    return ss.str();
  }
  std::ifstream in(path);
  if (!in) throw axdecomp::parse_error("cannot open input file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

axdecomp::Document load_document(const std::string& path) {
  json j;
  try {
    j = json::parse(read_input(path));
  } catch (const json::parse_error& e) {
    throw axdecomp::parse_error(std::string("invalid JSON: ") + e.what());
  }
  return axdecomp::parse_document(j);
}

void emit_error(const char* category, const std::exception& e) {
  json diag;
  diag["error"] = category;
  diag["message"] = e.what();
  std::cerr << diag.dump() << "\n";
}

int run_axis(const std::string& input, const axdecomp::Tolerance& tol) {
  const axdecomp::Document doc = load_document(input);
  const axdecomp::Space space = doc.make_space(tol);
  const axdecomp::Basis basis = doc.make_basis(tol);
  const axdecomp::AxialCertificate cert = axdecomp::axial_vector(space, basis);
  const axdecomp::Line axis = axdecomp::axis_of(space, basis);
  json out;
  out["axial"] = axdecomp::vector_to_json(cert.axial);
  out["vertex_angle"] = cert.vertex_angle;
  out["axis_dir"] = axdecomp::vector_to_json(axis.direction);
  std::cout << out.dump() << "\n";
  return kExitOk;
}

int run_decompose(const std::string& input, const std::string& mode,
                  const axdecomp::Tolerance& tol) {
  const axdecomp::Document doc = load_document(input);
  const axdecomp::Space space = doc.make_space(tol);
  if (!doc.matrix)
    throw axdecomp::parse_error("decompose requires a \"matrix\" document");
  axdecomp::Decomposition d;
  if (mode == "invertible")
    d = axdecomp::decompose_invertible(space, *doc.matrix);
  else if (mode == "conformal")
    d = axdecomp::decompose_conformal(space, *doc.matrix);
  else
    d = axdecomp::decompose_orthogonal(space, *doc.matrix);
  std::cout << axdecomp::decomposition_to_json(d).dump() << "\n";
  return kExitOk;
}

int run_verify(const std::string& input, const std::string& claim,
               const axdecomp::Tolerance& tol) {
  const axdecomp::Document doc = load_document(input);
  const axdecomp::Space space = doc.make_space(tol);
  if (!doc.matrix || !doc.decomposition)
    throw axdecomp::parse_error(
        "verify requires both \"matrix\" and \"decomposition\"");
  axdecomp::Claim c = axdecomp::Claim::invertible;
  if (claim == "conformal") c = axdecomp::Claim::conformal;
  if (claim == "orthogonal") c = axdecomp::Claim::orthogonal;
  const axdecomp::CheckReport report =
      axdecomp::check_decomposition(space, *doc.matrix, *doc.decomposition, c);
  std::cout << axdecomp::report_to_json(report).dump() << "\n";
  return report.passed ? kExitOk : kExitVerifyFail;
}

int run_generate(const std::string& kind, std::size_t dim, std::uint64_t seed,
                 const std::string& gram_file, const axdecomp::Tolerance& tol) {
  axdecomp::Matrix gram = axdecomp::Matrix::identity(dim);
  if (!gram_file.empty()) {
    json j;
    try {
      j = json::parse(read_input(gram_file));
    } catch (const json::parse_error& e) {
      throw axdecomp::parse_error(std::string("invalid gram JSON: ") + e.what());
    }
    gram = axdecomp::matrix_from_json(j.is_object() ? j.at("gram") : j);
    if (gram.dim() != dim)
      throw axdecomp::parse_error("gram shape does not match --dim");
  }
  const axdecomp::Space space(dim, gram, tol);

  axdecomp::GenKind k;
  if (kind == "invertible") k = axdecomp::GenKind::invertible;
  else if (kind == "orthogonal") k = axdecomp::GenKind::orthogonal;
  else if (kind == "conformal") k = axdecomp::GenKind::conformal;
  else if (kind == "equimodular_basis") k = axdecomp::GenKind::equimodular_basis;
  else k = axdecomp::GenKind::axonal_witness;

  const axdecomp::Instance inst = axdecomp::generate(space, k, seed);
  json out;
  out["dim"] = dim;
  if (!gram_file.empty()) out["gram"] = axdecomp::matrix_to_json(gram);
  if (inst.matrix && k != axdecomp::GenKind::equimodular_basis)
    out["matrix"] = axdecomp::matrix_to_json(*inst.matrix);
  if (inst.basis) {
    json rows = json::array();
    for (const axdecomp::Vector& v : inst.basis->vectors())
      rows.push_back(axdecomp::vector_to_json(v));
    out["basis"] = std::move(rows);
  }
  std::cout << out.dump() << "\n";
  return kExitOk;
}

int run_classify(const std::string& input, const axdecomp::Tolerance& tol) {
  const axdecomp::Document doc = load_document(input);
  const axdecomp::Space space = doc.make_space(tol);
  if (!doc.matrix)
    throw axdecomp::parse_error("classify requires a \"matrix\" document");
  const axdecomp::Matrix& m = *doc.matrix;
  json out;
  out["orthogonal"] = axdecomp::is_orthogonal(space, m);
  out["rotational"] = axdecomp::is_rotational(space, m);
  out["reflectional"] = axdecomp::is_reflectional(space, m);
  if (const auto lambda = axdecomp::conformal_lambda(space, m))
    out["conformal"] = json{{"lambda", *lambda}};
  else
    out["conformal"] = false;
  out["det"] = axdecomp::det(m);
  out["invertible"] = axdecomp::rank(m, tol) == space.dim();
  std::cout << out.dump() << "\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Axis-based operator decomposition toolkit"};
  app.require_subcommand(1);

  double tolerance = 1e-9;
  app.add_option("--tolerance", tolerance,
                 "Relative tolerance; scales all internal thresholds")
      ->envname("AXDECOMP_TOLERANCE")
      ->check(CLI::PositiveNumber);

  std::string input = "-";
  std::string mode = "invertible";
  std::string claim = "invertible";
  std::string kind = "orthogonal";
  std::string gram_file;
  std::size_t dim = 2;
  std::uint64_t seed = 0;

  CLI::App* axis = app.add_subcommand("axis", "Axial vector and axis of a basis");
  axis->add_option("input", input, "JSON document or - for stdin");

  CLI::App* dec = app.add_subcommand("decompose", "Factor an operator");
  dec->add_option("--mode", mode, "invertible|conformal|orthogonal")
      ->check(CLI::IsMember({"invertible", "conformal", "orthogonal"}));
  dec->add_option("input", input, "JSON document or - for stdin");

  CLI::App* ver = app.add_subcommand("verify", "Check a decomposition certificate");
  ver->add_option("--claim", claim, "invertible|conformal|orthogonal")
      ->check(CLI::IsMember({"invertible", "conformal", "orthogonal"}));
  ver->add_option("input", input, "JSON document or - for stdin");

  CLI::App* gen = app.add_subcommand("generate", "Seeded random instances");
  gen->add_option("--kind", kind, "instance kind")
      ->check(CLI::IsMember({"invertible", "orthogonal", "conformal",
                             "equimodular_basis", "axonal_witness"}));
  gen->add_option("--dim", dim, "dimension")->check(CLI::Range(std::size_t{1}, std::size_t{64}));
  gen->add_option("--seed", seed, "PRNG seed");
  gen->add_option("--gram-file", gram_file, "JSON file with a Gram matrix");

  CLI::App* cls = app.add_subcommand("classify", "Operator predicates");
  cls->add_option("input", input, "JSON document or - for stdin");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitParse;
  }

  const axdecomp::Tolerance tol = axdecomp::Tolerance::from_rel(tolerance);

  try {
    if (axis->parsed()) return run_axis(input, tol);
    if (dec->parsed()) return run_decompose(input, mode, tol);
    if (ver->parsed()) return run_verify(input, claim, tol);
    if (gen->parsed()) return run_generate(kind, dim, seed, gram_file, tol);
    if (cls->parsed()) return run_classify(input, tol);
  } catch (const axdecomp::parse_error& e) {
    emit_error("parse", e);
    return kExitParse;
  } catch (const axdecomp::degenerate_basis_error& e) {
    emit_error("degenerate", e);
    return kExitDegenerate;
  } catch (const axdecomp::singular_error& e) {
    emit_error("precondition", e);
    return kExitPrecondition;
  } catch (const axdecomp::precondition_error& e) {
    emit_error("precondition", e);
    return kExitPrecondition;
  } catch (const axdecomp::dimension_error& e) {
    emit_error("parse", e);
    return kExitParse;
  } catch (const axdecomp::error& e) {
    emit_error("internal", e);
    return kExitPrecondition;
  }
  return kExitParse;
}
