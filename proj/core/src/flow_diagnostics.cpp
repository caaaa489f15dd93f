#include "kricci/flow_diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "kricci/errors.hpp"
#include "kricci/royden.hpp"

namespace kricci {

namespace {

double sup_abs(const ScalarField& f) { return f.max_abs(); }

ScalarField log_field(const ScalarField& f) {
  ScalarField out = f;
  for (double& v : out.values()) v = std::log(v);
  return out;
}

// w = t phi_dot - phi - n t.
ScalarField w_field(const FlowState& s, int n) {
  ScalarField w = s.t * s.phi_dot;
  w -= s.phi;
  w += -n * s.t;
  return w;
}

// (d_t - Lap_g) f at the middle snapshot.
ScalarField heat_operator(const ScalarField& f0, const ScalarField& f1,
                          const ScalarField& f2, const FlowState& prev,
                          const FlowState& cur, const FlowState& next,
                          const FlowModel& model) {
  ScalarField out = centred_time_derivative(f0, prev.t, f1, cur.t, f2, next.t);
  out -= laplacian(f1, cur.g, model.config().discretization);
  return out;
}

PointwiseCheck finish(ScalarField lhs, ScalarField rhs) {
  PointwiseCheck c;
  c.margin = rhs - lhs;
  c.min_margin = c.margin.min();
  c.max_abs_margin = c.margin.max_abs();
  c.lhs = std::move(lhs);
  c.rhs = std::move(rhs);
  return c;
}

}  // namespace

ScalarField centred_time_derivative(const ScalarField& f0, double t0,
                                    const ScalarField& f1, double t1,
                                    const ScalarField& f2, double t2) {
  const double h0 = t1 - t0;
  const double h1 = t2 - t1;
  if (!(h0 > 0.0 && h1 > 0.0)) {
    throw DomainError("centred_time_derivative: times must increase");
  }
  const double denom = h0 * h1 * (h0 + h1);
  const double a = h0 * h0 / denom;
  const double b = (h1 * h1 - h0 * h0) / denom;
  const double c = -h1 * h1 / denom;
  ScalarField out(f1.grid());
  for (std::size_t p = 0; p < out.size(); ++p) {
    out[p] = a * f2[p] + b * f1[p] + c * f0[p];
  }
  return out;
}

ScalarField scalar_plus_tr_eta(const FlowModel& model, const FlowState& s) {
  const HermitianField ric = ricci_field(s.g, model.config().discretization);
  return trace_wrt(ric + model.eta(), s.g);
}

ScalarBoundCheck check_scalar_bound(const FlowState& s, const FlowModel& model) {
  const int n = model.n();
  const double sigma = model.sigma();
  ScalarBoundCheck r;
  r.lhs_min = scalar_plus_tr_eta(model, s).min();
  const bool infinite = std::isinf(sigma);
  r.bound = infinite ? 0.0 : -n / (s.t + sigma);
  r.margin = r.lhs_min - r.bound;
  r.sup_phidot = s.phi_dot.max();
  r.phidot_bound = infinite ? 0.0 : n * std::log((s.t + sigma) / sigma);
  r.phidot_margin = r.phidot_bound - r.sup_phidot;
  return r;
}

PotentialIdentityResiduals check_potential_identities(
    const std::vector<FlowState>& trajectory, const FlowModel& model) {
  if (trajectory.size() < 3) {
    throw DomainError("check_potential_identities: need at least 3 snapshots");
  }
  const int n = model.n();
  const HermitianField slope = model.ric_h() + model.eta();
  PotentialIdentityResiduals r;
  for (std::size_t i = 1; i + 1 < trajectory.size(); ++i) {
    const FlowState& a = trajectory[i - 1];
    const FlowState& b = trajectory[i];
    const FlowState& c = trajectory[i + 1];

    ScalarField e1 = heat_operator(a.phi_dot, b.phi_dot, c.phi_dot, a, b, c, model);
    e1 += trace_wrt(slope, b.g);
    r.res1 = std::max(r.res1, sup_abs(e1));

    ScalarField e2 = heat_operator(w_field(a, n), w_field(b, n), w_field(c, n),
                                   a, b, c, model);
    e2 += b.lambda_field;
    r.res2 = std::max(r.res2, sup_abs(e2));
  }
  return r;
}

PointwiseCheck check_schwarz(const FlowState& prev, const FlowState& cur,
                             const FlowState& next, const FlowModel& model) {
  const ScalarField lhs =
      heat_operator(log_field(prev.lambda_field), log_field(cur.lambda_field),
                    log_field(next.lambda_field), prev, cur, next, model);
  const int n = model.n();
  const HermitianField& h = model.h();
  const HermitianField& eta = model.eta();
  const CurvatureField& r = model.curvature_h();
  ScalarField rhs(model.grid());
  Complex inv[2][2];
  for (std::size_t p = 0; p < rhs.size(); ++p) {
    pointwise::inverse(cur.g, p, inv);
    Complex acc = 0.0;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k)
          for (int l = 0; l < n; ++l) {
            acc += inv[i][j] * inv[k][l] * r(p, i, j, k, l);
            acc += inv[i][l] * inv[k][j] * h(p, i, j) * eta(p, k, l);
          }
    rhs[p] = acc.real() / cur.lambda_field[p];
  }
  return finish(lhs, std::move(rhs));
}

std::vector<double> schwarz_margins(const std::vector<FlowState>& trajectory,
                                    const FlowModel& model) {
  std::vector<double> out(trajectory.size(),
                          std::numeric_limits<double>::quiet_NaN());
  for (std::size_t i = 1; i + 1 < trajectory.size(); ++i) {
    out[i] = check_schwarz(trajectory[i - 1], trajectory[i], trajectory[i + 1],
                           model)
                 .min_margin;
  }
  return out;
}

TraceHypotheses certify_trace_hypotheses(const FlowModel& model, double tol) {
  const FlowConfig& c = model.config();
  if (c.twist.c != 0.0) {
    throw PreconditionError(
        "trace estimate: twist must be i ddbar u (omega_h coefficient is " +
        std::to_string(c.twist.c) + ")");
  }
  const Discretization d = c.discretization;
  const int n = model.n();
  const HermitianField& h = model.h();
  const HermitianField rho = model.ric_h() + dbar_hessian(c.phi_twist, d);

  TraceHypotheses out;
  out.lambda_max = -std::numeric_limits<double>::infinity();
  for (std::size_t p = 0; p < h.size(); ++p) {
    const HermitianForm hp = h.at(p);
    const HermitianForm rp = rho.at(p);
    const BihermitianForm sp = model.curvature_h().at(p);
    double lambda;
    if (n == 1) {
      // Unit X = e / sqrt(h): alpha rho / h + beta R / h^2.
      const double h11 = hp(0, 0).real();
      lambda = c.alpha * rp(0, 0).real() / h11 +
               c.beta * sp(0, 0, 0, 0).real() / (h11 * h11);
    } else {
      const BihermitianForm combined = c.beta * sp + c.alpha * symmetric_product(hp, rp);
      lambda = combined.max_abs() == 0.0
                   ? 0.0
                   : mixed_hypothesis_lambda(sp, hp, rp, c.alpha, c.beta, p);
    }
    out.lambda_max = std::max(out.lambda_max, lambda);
  }
  if (out.lambda_max > tol) {
    throw PreconditionError("trace estimate: curvature hypothesis fails (lambda = " +
                            std::to_string(out.lambda_max) + " > 0)");
  }

  const ScalarField v = (2.0 * c.beta / c.alpha) * c.twist.u;
  HermitianField gap = c.mu * h;
  gap += dbar_hessian(v, d);
  gap -= rho;
  out.contra_margin = positivity_margin(gap);
  if (!(out.contra_margin > 0.0)) {
    throw PreconditionError(
        "trace estimate: rho < mu h + i ddbar v fails (margin " +
        std::to_string(out.contra_margin) + ")");
  }
  return out;
}

ScalarField trace_comparison_potential(const FlowState& s,
                                       const FlowModel& model) {
  const FlowConfig& c = model.config();
  const int n = model.n();
  const double ab = c.alpha / c.beta;
  const double B = c.alpha * c.mu * (n - 1) / (2.0 * n * c.beta);
  // v = (2 beta / alpha) u, so (alpha / 2 beta) v = u.
  ScalarField q = -B * w_field(s, n);
  q -= c.twist.u;
  ScalarField tail = s.phi_dot;
  tail += c.phi_twist;
  tail -= c.twist.u;
  q += ab * tail;
  return q;
}

PointwiseCheck check_trace_evolution(const FlowState& prev,
                                     const FlowState& cur,
                                     const FlowState& next,
                                     const FlowModel& model) {
  certify_trace_hypotheses(model);
  const ScalarField lhs =
      heat_operator(log_field(prev.lambda_field), log_field(cur.lambda_field),
                    log_field(next.lambda_field), prev, cur, next, model);
  const ScalarField rhs = heat_operator(trace_comparison_potential(prev, model),
                                        trace_comparison_potential(cur, model),
                                        trace_comparison_potential(next, model),
                                        prev, cur, next, model);
  return finish(lhs, rhs);
}

TelescopedBound check_telescoped_bound(const FlowState& initial,
                                       const FlowState& final_state,
                                       const FlowModel& model) {
  auto sup_gap = [&](const FlowState& s) {
    ScalarField f = log_field(s.lambda_field);
    f -= trace_comparison_potential(s, model);
    return f.max();
  };
  TelescopedBound b;
  b.sup_initial = sup_gap(initial);
  b.sup_final = sup_gap(final_state);
  b.margin = b.sup_initial - b.sup_final;
  return b;
}

MonotoneQuantities monotone_quantities(const FlowState& s,
                                       const FlowModel& model) {
  if (!(s.t > 0.0)) throw DomainError("monotone_quantities: requires t > 0");
  const FlowConfig& c = model.config();
  const int n = model.n();
  const double ab = c.alpha / c.beta;
  MonotoneQuantities m;
  m.F = log_field(s.lambda_field);
  m.F += (1.0 + ab) * c.twist.u;
  ScalarField tail = s.phi_dot;
  tail += c.phi_twist;
  m.F += -ab * tail;
  m.G = m.F;
  m.G += (1.0 + c.alpha * n / c.beta) * std::log(s.t);
  m.sup_G = m.G.max();
  return m;
}

}  // namespace kricci
