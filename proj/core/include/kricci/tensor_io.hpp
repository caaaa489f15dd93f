#pragma once

#include <string>

#include "kricci/bihermitian.hpp"
#include "kricci/certify.hpp"

namespace kricci {

/// Tensor file: {"n": n, "entries": [[re, im], ...]} with n^4 pairs in
/// row-major (i, j, k, l) order.
struct LoadedTensor {
  BihermitianForm form;
  /// Symmetry violation of the file contents before projection.
  double pre_projection_violation = 0.0;
};

LoadedTensor parse_tensor(const std::string& json_text);
LoadedTensor load_tensor(const std::string& path);
std::string tensor_to_json(const Tensor4& t);
std::string tensor_to_json(const BihermitianForm& s);
void save_tensor(const std::string& path, const BihermitianForm& s);

/// Hermitian forms use {"n": n, "entries": [[re, im], ...]} with n^2 pairs.
HermitianForm parse_hermitian(const std::string& json_text);
HermitianForm load_hermitian(const std::string& path);
std::string hermitian_to_json(const HermitianForm& a);

std::string certificate_to_json(const Certificate& c);
/// The subspace witness is re-validated against `metric`.
Certificate certificate_from_json(const std::string& json_text,
                                  const HermitianForm& metric);

/// Reads a whole file; ParseError if it cannot be opened.
std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

}  // namespace kricci
