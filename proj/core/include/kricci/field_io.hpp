#pragma once

#include <string>

#include "kricci/grid.hpp"

namespace kricci {

// Field files are JSON: {"n": n, "N": N, "kind": kind, "values": [...]} with
// points in grid order (x_1 slowest).
//   kind "scalar":    one number per point.
//   kind "hermitian": n^2 [re, im] pairs per point, row-major (i, j).
//   kind "curvature": n^4 [re, im] pairs per point, row-major (i, j, k, l).

std::string field_to_json(const ScalarField& f);
std::string field_to_json(const HermitianField& f);
std::string field_to_json(const CurvatureField& f);

ScalarField parse_scalar_field(const std::string& json_text);
HermitianField parse_hermitian_field(const std::string& json_text);
/// Entries are projected onto the bihermitian class; the violation before
/// projection is recorded on the field.
CurvatureField parse_curvature_field(const std::string& json_text);

void save_field(const std::string& path, const ScalarField& f);
void save_field(const std::string& path, const HermitianField& f);
void save_field(const std::string& path, const CurvatureField& f);
ScalarField load_scalar_field(const std::string& path);
HermitianField load_hermitian_field(const std::string& path);
CurvatureField load_curvature_field(const std::string& path);

}  // namespace kricci
