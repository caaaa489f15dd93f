#include "kricci/field_io.hpp"

#include <algorithm>

#include "json_util.hpp"
#include "kricci/tensor_io.hpp"

namespace kricci {

using nlohmann::json;

namespace {

json header(const PeriodicGrid& g, const char* kind) {
  json j;
  j["n"] = g.n();
  j["N"] = g.N();
  j["kind"] = kind;
  return j;
}

PeriodicGrid read_header(const json& j, const std::string& kind,
                         const std::string& origin) {
  const std::string found = detail::require<std::string>(j, "kind", origin);
  if (found != kind) {
    throw ParseError(origin + ": expected kind '" + kind + "', found '" + found + "'");
  }
  const int n = detail::require<int>(j, "n", origin);
  const int N = detail::require<int>(j, "N", origin);
  try {
    return PeriodicGrid(n, N);
  } catch (const DomainError& e) {
    throw ParseError(origin + ": " + e.what());
  }
}

const json& values_of(const json& j, std::size_t expected,
                      const std::string& origin) {
  if (!j.contains("values") || !j["values"].is_array()) {
    throw ParseError(origin + ": missing 'values' array");
  }
  const json& v = j["values"];
  if (v.size() != expected) {
    throw ParseError(origin + ": expected " + std::to_string(expected) +
                     " values, found " + std::to_string(v.size()));
  }
  return v;
}

}  // namespace

std::string field_to_json(const ScalarField& f) {
  json j = header(f.grid(), "scalar");
  j["values"] = f.values();
  return j.dump();
}

std::string field_to_json(const HermitianField& f) {
  json j = header(f.grid(), "hermitian");
  json v = json::array();
  for (const Complex& z : f.data()) v.push_back(detail::complex_to_json(z));
  j["values"] = std::move(v);
  return j.dump();
}

std::string field_to_json(const CurvatureField& f) {
  json j = header(f.grid(), "curvature");
  json v = json::array();
  for (const Complex& z : f.data()) v.push_back(detail::complex_to_json(z));
  j["values"] = std::move(v);
  return j.dump();
}

ScalarField parse_scalar_field(const std::string& json_text) {
  const std::string origin = "scalar field";
  const json j = detail::parse_json(json_text, origin);
  const PeriodicGrid g = read_header(j, "scalar", origin);
  const json& v = values_of(j, g.size(), origin);
  std::vector<double> values(g.size());
  for (std::size_t p = 0; p < g.size(); ++p) {
    if (!v[p].is_number()) throw ParseError(origin + ": non-numeric value");
    values[p] = v[p].get<double>();
  }
  ScalarField f(g, std::move(values));
  if (!f.all_finite()) throw ParseError(origin + ": non-finite value");
  return f;
}

HermitianField parse_hermitian_field(const std::string& json_text) {
  const std::string origin = "hermitian field";
  const json j = detail::parse_json(json_text, origin);
  const PeriodicGrid g = read_header(j, "hermitian", origin);
  const int n = g.n();
  const json& v = values_of(j, g.size() * n * n, origin);
  HermitianField f(g);
  for (std::size_t p = 0; p < g.size(); ++p) {
    for (int a = 0; a < n; ++a) {
      for (int b = a; b < n; ++b) {
        const Complex z = detail::complex_from_json(v[(p * n + a) * n + b], origin);
        const Complex w = detail::complex_from_json(v[(p * n + b) * n + a], origin);
        if (std::abs(z - std::conj(w)) > 1e-10 * std::max(1.0, std::abs(z))) {
          throw ParseError(origin + ": entries are not Hermitian at point " +
                           std::to_string(p));
        }
        f.set(p, a, b, 0.5 * (z + std::conj(w)));
      }
    }
  }
  return f;
}

CurvatureField parse_curvature_field(const std::string& json_text) {
  const std::string origin = "curvature field";
  const json j = detail::parse_json(json_text, origin);
  const PeriodicGrid g = read_header(j, "curvature", origin);
  const int n = g.n();
  const std::size_t block = static_cast<std::size_t>(n * n * n * n);
  const json& v = values_of(j, g.size() * block, origin);
  CurvatureField f(g);
  double violation = 0.0;
  for (std::size_t p = 0; p < g.size(); ++p) {
    std::vector<Complex> t(block);
    for (std::size_t q = 0; q < block; ++q)
      t[q] = detail::complex_from_json(v[p * block + q], origin);
    const Tensor4 raw(n, std::move(t));
    violation = std::max(violation, validate_symmetries(raw, 0.0).max_violation);
    f.assign(p, symmetrize(raw));
  }
  f.raw_symmetry_violation = violation;
  return f;
}

void save_field(const std::string& path, const ScalarField& f) {
  write_text_file(path, field_to_json(f) + "\n");
}
void save_field(const std::string& path, const HermitianField& f) {
  write_text_file(path, field_to_json(f) + "\n");
}
void save_field(const std::string& path, const CurvatureField& f) {
  write_text_file(path, field_to_json(f) + "\n");
}

ScalarField load_scalar_field(const std::string& path) {
  return parse_scalar_field(read_text_file(path));
}
HermitianField load_hermitian_field(const std::string& path) {
  return parse_hermitian_field(read_text_file(path));
}
CurvatureField load_curvature_field(const std::string& path) {
  return parse_curvature_field(read_text_file(path));
}

}  // namespace kricci
