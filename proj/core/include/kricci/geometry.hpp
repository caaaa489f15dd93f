#pragma once

#include <array>
#include <vector>

#include "kricci/differential.hpp"
#include "kricci/grid.hpp"

namespace kricci {

/// a * cos(2 pi (m . x) + phase) with m the integer wave vector over the real
/// axes (x_1, y_1, x_2, y_2).
struct FourierMode {
  double amplitude = 0.0;
  std::array<int, 4> wave{};
  double phase = 0.0;
};

/// Sum of Fourier modes sampled on the grid.
ScalarField fourier_field(const PeriodicGrid& grid,
                          const std::vector<FourierMode>& modes);

/// Smallest eigenvalue over the grid and where it occurs.
struct PositivityReport {
  double margin = 0.0;
  std::size_t worst_point = 0;
};

PositivityReport positivity_report(const HermitianField& g);
double positivity_margin(const HermitianField& g);

/// DegeneracyError (with worst point and margin) unless every eigenvalue of g
/// exceeds `floor`.
void require_positive(const HermitianField& g, const char* context,
                      double floor = 0.0);

/// g = h0 + i ddbar phi; DegeneracyError if the result is not positive.
HermitianField metric_from_potential(const HermitianField& h0,
                                     const ScalarField& phi,
                                     Discretization d = Discretization::fd2);

ScalarField log_det(const HermitianField& g);

/// tr_g a = g^{i conj j} a_{i conj j}.
ScalarField trace_wrt(const HermitianField& a, const HermitianField& g);

/// g^{i conj j} d_i d_{conj j} f.
ScalarField laplacian(const ScalarField& f, const HermitianField& g,
                      Discretization d = Discretization::fd2);

/// Ric_{i conj j} = -d_i d_{conj j} log det g.
HermitianField ricci_field(const HermitianField& g,
                           Discretization d = Discretization::fd2);

/// R_{i conj j k conj l} = -d_k d_{conj l} g_{i conj j}
///                         + g^{p conj q} d_k g_{i conj q} d_{conj l} g_{p conj j},
/// projected onto the bihermitian symmetry class pointwise.  The violation
/// before projection is kept in `raw_symmetry_violation`.
CurvatureField curvature_field(const HermitianField& g,
                               Discretization d = Discretization::fd2);

/// Ricci form obtained as the g-trace g^{i conj j} R_{i conj j k conj l}.
HermitianField curvature_trace(const CurvatureField& r, const HermitianField& g);

/// Scalar curvature tr_g Ric(g).
ScalarField scalar_curvature(const HermitianField& g,
                             Discretization d = Discretization::fd2);

struct RicciPotential {
  /// f = -log det g, mean zero, so that Ric(g) = i ddbar f.
  ScalarField f;
  /// max |ddbar f - Ric(g)| with Ric(g) taken as the trace of the curvature
  /// tensor, a discretization independent of f.
  double residual = 0.0;
  /// Same against ricci_field, which shares the stencil of f (round-off only).
  double residual_same_stencil = 0.0;
};

RicciPotential ricci_potential(const HermitianField& g,
                               Discretization d = Discretization::fd2);

/// max over points and entries of |a - b|.
double max_distance(const HermitianField& a, const HermitianField& b);

}  // namespace kricci
