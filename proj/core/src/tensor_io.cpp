#include "kricci/tensor_io.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "json_util.hpp"

namespace kricci {

using nlohmann::json;

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  out << text;
}

LoadedTensor parse_tensor(const std::string& json_text) {
  const std::string origin = "tensor";
  const json j = detail::parse_json(json_text, origin);
  const int n = detail::require<int>(j, "n", origin);
  if (n < 1) throw ParseError("tensor: n must be >= 1");
  if (!j.contains("entries") || !j["entries"].is_array()) {
    throw ParseError("tensor: missing 'entries' array");
  }
  const json& e = j["entries"];
  const std::size_t expected = static_cast<std::size_t>(n) * n * n * n;
  if (e.size() != expected) {
    throw ParseError("tensor: expected " + std::to_string(expected) +
                     " entries, found " + std::to_string(e.size()));
  }
  std::vector<Complex> data;
  data.reserve(expected);
  for (const auto& z : e) data.push_back(detail::complex_from_json(z, origin));
  const Tensor4 raw(n, std::move(data));
  LoadedTensor out;
  out.pre_projection_violation = validate_symmetries(raw, 0.0).max_violation;
  out.form = symmetrize(raw);
  return out;
}

LoadedTensor load_tensor(const std::string& path) {
  try {
    return parse_tensor(read_text_file(path));
  } catch (const ParseError& e) {
    throw ParseError(path + ": " + e.what());
  }
}

std::string tensor_to_json(const Tensor4& t) {
  json j;
  j["n"] = t.dim();
  json entries = json::array();
  for (const auto& z : t.data()) entries.push_back(detail::complex_to_json(z));
  j["entries"] = std::move(entries);
  return j.dump();
}

std::string tensor_to_json(const BihermitianForm& s) {
  return tensor_to_json(s.tensor());
}

void save_tensor(const std::string& path, const BihermitianForm& s) {
  write_text_file(path, tensor_to_json(s) + "\n");
}

HermitianForm parse_hermitian(const std::string& json_text) {
  const std::string origin = "hermitian form";
  const json j = detail::parse_json(json_text, origin);
  const int n = detail::require<int>(j, "n", origin);
  if (n < 1) throw ParseError(origin + ": n must be >= 1");
  if (!j.contains("entries") || !j["entries"].is_array() ||
      j["entries"].size() != static_cast<std::size_t>(n) * n) {
    throw ParseError(origin + ": expected n^2 entries");
  }
  Matrix m(n, n);
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k)
      m(i, k) = detail::complex_from_json(j["entries"][i * n + k], origin);
  try {
    return HermitianForm::from_entries(m, 1e-10);
  } catch (const DomainError& e) {
    throw ParseError(origin + ": " + e.what());
  }
}

HermitianForm load_hermitian(const std::string& path) {
  return parse_hermitian(read_text_file(path));
}

std::string hermitian_to_json(const HermitianForm& a) {
  json j;
  j["n"] = a.dim();
  json entries = json::array();
  for (int i = 0; i < a.dim(); ++i)
    for (int k = 0; k < a.dim(); ++k)
      entries.push_back(detail::complex_to_json(a(i, k)));
  j["entries"] = std::move(entries);
  return j.dump();
}

namespace {

json vector_to_json(const Vector& v) {
  json a = json::array();
  for (int i = 0; i < v.size(); ++i) a.push_back(detail::complex_to_json(v(i)));
  return a;
}

Vector vector_from_json(const json& a, const std::string& origin) {
  if (!a.is_array()) throw ParseError(origin + ": expected vector");
  Vector v(static_cast<int>(a.size()));
  for (std::size_t i = 0; i < a.size(); ++i)
    v(static_cast<int>(i)) = detail::complex_from_json(a[i], origin);
  return v;
}

}  // namespace

std::string certificate_to_json(const Certificate& c) {
  json j;
  j["status"] = to_string(c.status);
  j["direction"] = to_string(c.direction);
  j["k"] = c.k;
  j["bound"] = c.bound;
  j["tol"] = c.tol;
  j["extremal_value"] = c.extremal_value;
  j["witness"] = vector_to_json(c.witness);
  json cols = json::array();
  for (int a = 0; a < c.subspace_witness.k(); ++a)
    cols.push_back(vector_to_json(c.subspace_witness.columns().col(a)));
  j["subspace_witness"] = std::move(cols);
  j["n_starts"] = c.n_starts;
  j["n_converged"] = c.n_converged;
  j["n_iterations"] = c.n_iterations;
  return j.dump(2);
}

Certificate certificate_from_json(const std::string& json_text,
                                  const HermitianForm& metric) {
  const std::string origin = "certificate";
  const json j = detail::parse_json(json_text, origin);
  Certificate c;
  try {
    c.status = status_from_string(detail::require<std::string>(j, "status", origin));
    c.direction =
        direction_from_string(detail::require<std::string>(j, "direction", origin));
  } catch (const DomainError& e) {
    throw ParseError(origin + ": " + e.what());
  }
  c.k = detail::require<int>(j, "k", origin);
  c.bound = detail::require<double>(j, "bound", origin);
  c.tol = detail::value_or<double>(j, "tol", 0.0, origin);
  c.extremal_value = detail::require<double>(j, "extremal_value", origin);
  c.witness = vector_from_json(j.at("witness"), origin);
  const json& cols = j.at("subspace_witness");
  Matrix m(c.witness.size(), static_cast<int>(cols.size()));
  for (std::size_t a = 0; a < cols.size(); ++a)
    m.col(static_cast<int>(a)) = vector_from_json(cols[a], origin);
  c.subspace_witness = SubspaceBasis(std::move(m), metric, 1e-9);
  c.n_starts = detail::value_or<int>(j, "n_starts", 0, origin);
  c.n_converged = detail::value_or<int>(j, "n_converged", 0, origin);
  c.n_iterations = detail::value_or<int>(j, "n_iterations", 0, origin);
  return c;
}

}  // namespace kricci
