#include "kricci/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "kricci/errors.hpp"

namespace kricci {

ScalarField fourier_field(const PeriodicGrid& grid,
                          const std::vector<FourierMode>& modes) {
  ScalarField out(grid);
  for (const FourierMode& m : modes) {
    for (int a = grid.axes(); a < 4; ++a) {
      if (m.wave[a] != 0) {
        throw DomainError("fourier_field: wave vector has components beyond the grid axes");
      }
    }
    for (std::size_t p = 0; p < grid.size(); ++p) {
      double arg = m.phase;
      for (int a = 0; a < grid.axes(); ++a) {
        arg += 2.0 * std::numbers::pi * m.wave[a] * grid.position(p, a);
      }
      out[p] += m.amplitude * std::cos(arg);
    }
  }
  return out;
}

PositivityReport positivity_report(const HermitianField& g) {
  PositivityReport r;
  r.margin = std::numeric_limits<double>::infinity();
  for (std::size_t p = 0; p < g.size(); ++p) {
    const double lo = pointwise::eig_range(g, p)[0];
    if (lo < r.margin || std::isnan(lo)) {
      r.margin = lo;
      r.worst_point = p;
      if (std::isnan(lo)) break;
    }
  }
  return r;
}

double positivity_margin(const HermitianField& g) {
  return positivity_report(g).margin;
}

void require_positive(const HermitianField& g, const char* context,
                      double floor) {
  const PositivityReport r = positivity_report(g);
  if (!(r.margin > floor)) {
    throw DegeneracyError(std::string(context) +
                              ": metric not positive definite (margin " +
                              std::to_string(r.margin) + " at point " +
                              std::to_string(r.worst_point) + ")",
                          r.worst_point, r.margin);
  }
}

HermitianField metric_from_potential(const HermitianField& h0,
                                     const ScalarField& phi,
                                     Discretization d) {
  if (!(h0.grid() == phi.grid())) {
    throw DomainError("metric_from_potential: grid mismatch");
  }
  HermitianField g = h0 + dbar_hessian(phi, d);
  require_positive(g, "metric_from_potential");
  return g;
}

ScalarField log_det(const HermitianField& g) {
  require_positive(g, "log_det");
  ScalarField out(g.grid());
  for (std::size_t p = 0; p < g.size(); ++p) out[p] = std::log(pointwise::det(g, p));
  return out;
}

ScalarField trace_wrt(const HermitianField& a, const HermitianField& g) {
  if (!(a.grid() == g.grid())) throw DomainError("trace_wrt: grid mismatch");
  const int n = g.n();
  ScalarField out(g.grid());
  Complex inv[2][2];
  for (std::size_t p = 0; p < g.size(); ++p) {
    pointwise::inverse(g, p, inv);
    Complex acc = 0.0;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) acc += inv[i][j] * a(p, i, j);
    out[p] = acc.real();
  }
  return out;
}

ScalarField laplacian(const ScalarField& f, const HermitianField& g,
                      Discretization d) {
  return trace_wrt(dbar_hessian(f, d), g);
}

HermitianField ricci_field(const HermitianField& g, Discretization d) {
  return -1.0 * dbar_hessian(log_det(g), d);
}

CurvatureField curvature_field(const HermitianField& g, Discretization d) {
  require_positive(g, "curvature_field");
  const PeriodicGrid& grid = g.grid();
  const int n = g.n();
  const std::size_t np = grid.size();

  // Component derivatives, indexed [(i * n + j) * n + k].
  std::vector<ComplexValues> dg(n * n * n), dbg(n * n * n), ddg(n * n * n * n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const ComplexValues gij = g.component(i, j);
      for (int k = 0; k < n; ++k) {
        dg[(i * n + j) * n + k] = partial_holo(gij, grid, k, d);
        dbg[(i * n + j) * n + k] = partial_antiholo(gij, grid, k, d);
        for (int l = 0; l < n; ++l)
          ddg[((i * n + j) * n + k) * n + l] = ddbar(gij, grid, k, l, d);
      }
    }
  }

  CurvatureField out(grid);
  double violation = 0.0;
  Complex inv[2][2];
  for (std::size_t p = 0; p < np; ++p) {
    pointwise::inverse(g, p, inv);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k)
          for (int l = 0; l < n; ++l) {
            Complex v = -ddg[((i * n + j) * n + k) * n + l][p];
            for (int a = 0; a < n; ++a)
              for (int b = 0; b < n; ++b)
                v += inv[a][b] * dg[(i * n + b) * n + k][p] *
                     dbg[(a * n + j) * n + l][p];
            out.raw(p, i, j, k, l) = v;
          }
    const Tensor4 raw = out.raw_at(p);
    violation = std::max(violation, validate_symmetries(raw, 0.0).max_violation);
    out.assign(p, symmetrize(raw));
  }
  out.raw_symmetry_violation = violation;
  return out;
}

HermitianField curvature_trace(const CurvatureField& r,
                               const HermitianField& g) {
  if (!(r.grid() == g.grid())) throw DomainError("curvature_trace: grid mismatch");
  const int n = g.n();
  HermitianField out(g.grid());
  Complex inv[2][2];
  for (std::size_t p = 0; p < g.size(); ++p) {
    pointwise::inverse(g, p, inv);
    for (int k = 0; k < n; ++k)
      for (int l = k; l < n; ++l) {
        Complex acc = 0.0;
        for (int i = 0; i < n; ++i)
          for (int j = 0; j < n; ++j) acc += inv[i][j] * r(p, i, j, k, l);
        out.set(p, k, l, acc);
      }
  }
  return out;
}

ScalarField scalar_curvature(const HermitianField& g, Discretization d) {
  return trace_wrt(ricci_field(g, d), g);
}

double max_distance(const HermitianField& a, const HermitianField& b) {
  if (!(a.grid() == b.grid())) throw DomainError("max_distance: grid mismatch");
  double m = 0.0;
  for (std::size_t q = 0; q < a.data().size(); ++q)
    m = std::max(m, std::abs(a.data()[q] - b.data()[q]));
  return m;
}

RicciPotential ricci_potential(const HermitianField& g, Discretization d) {
  RicciPotential out;
  out.f = (-1.0 * log_det(g)).normalized();
  const HermitianField hess = dbar_hessian(out.f, d);
  out.residual = max_distance(hess, curvature_trace(curvature_field(g, d), g));
  out.residual_same_stencil = max_distance(hess, ricci_field(g, d));
  return out;
}

}  // namespace kricci
