#pragma once

#include <vector>

#include "kricci/flow.hpp"

namespace kricci {

/// d/dt at the middle of three samples (t0 < t1 < t2), second order on
/// non-uniform spacing.
ScalarField centred_time_derivative(const ScalarField& f0, double t0,
                                    const ScalarField& f1, double t1,
                                    const ScalarField& f2, double t2);

/// S(g) + tr_g eta.
ScalarField scalar_plus_tr_eta(const FlowModel& model, const FlowState& s);

/// S(g) + tr_g eta >= -n / (t + sigma) and sup phi_dot <= n log((t + sigma) / sigma).
struct ScalarBoundCheck {
  double lhs_min = 0.0;
  double bound = 0.0;
  /// lhs_min - bound.
  double margin = 0.0;
  double sup_phidot = 0.0;
  double phidot_bound = 0.0;
  /// phidot_bound - sup_phidot.
  double phidot_margin = 0.0;
};

ScalarBoundCheck check_scalar_bound(const FlowState& s, const FlowModel& model);

/// Max-norm residuals of
///   (d_t - Lap_g) phi_dot = -tr_g(Ric(h) + eta)
///   (d_t - Lap_g) w       = -tr_g h,   w = t phi_dot - phi - n t
/// over every interior snapshot.
struct PotentialIdentityResiduals {
  double res1 = 0.0;
  double res2 = 0.0;
};

/// DomainError with fewer than 3 snapshots.
PotentialIdentityResiduals check_potential_identities(
    const std::vector<FlowState>& trajectory, const FlowModel& model);

/// Pointwise comparison of (d_t - Lap_g) log Lambda with
/// (1/Lambda) g^{i conj j} g^{k conj l} R_{i conj j k conj l}(h)
///   + (1/Lambda) g^{i conj l} g^{k conj j} h_{i conj j} eta_{k conj l}.
struct PointwiseCheck {
  ScalarField lhs;
  ScalarField rhs;
  /// rhs - lhs.
  ScalarField margin;
  double min_margin = 0.0;
  double max_abs_margin = 0.0;
};

PointwiseCheck check_schwarz(const FlowState& prev, const FlowState& cur,
                             const FlowState& next, const FlowModel& model);

/// Schwarz margins at every interior snapshot; NaN at the two ends.
std::vector<double> schwarz_margins(const std::vector<FlowState>& trajectory,
                                    const FlowModel& model);

/// Hypotheses of the trace estimate, computed on the background:
/// lambda = max over grid and h-unit X of
///   alpha |X|^2 rho(X, conj X) + beta R(h)(X, conj X, X, conj X),
/// rho = Ric(h) + i ddbar phi_twist, and the smallest eigenvalue of
/// mu h + i ddbar v - rho with v = (2 beta / alpha) u.
struct TraceHypotheses {
  double lambda_max = 0.0;
  double contra_margin = 0.0;
};

/// PreconditionError naming the failing hypothesis when the twist has an
/// omega_h part, lambda_max > tol, or contra_margin <= 0.
TraceHypotheses certify_trace_hypotheses(const FlowModel& model,
                                         double tol = 1e-10);

/// Q = -B w - (alpha / 2 beta) v + (alpha / beta)(phi_dot + phi_twist - u),
/// B = alpha mu (n - 1) / (2 n beta).
ScalarField trace_comparison_potential(const FlowState& s,
                                       const FlowModel& model);

/// (d_t - Lap_g) log Lambda <= (d_t - Lap_g) Q, pointwise at `cur`.
/// Certifies the hypotheses first.
PointwiseCheck check_trace_evolution(const FlowState& prev,
                                     const FlowState& cur,
                                     const FlowState& next,
                                     const FlowModel& model);

/// Maximum-principle consequence of the trace estimate:
/// sup (log Lambda - Q)(t) <= sup (log Lambda - Q)(0).
struct TelescopedBound {
  double sup_initial = 0.0;
  double sup_final = 0.0;
  /// sup_initial - sup_final.
  double margin = 0.0;
};

TelescopedBound check_telescoped_bound(const FlowState& initial,
                                       const FlowState& final_state,
                                       const FlowModel& model);

/// F = log Lambda + (1 + alpha/beta) u - (alpha/beta)(phi_dot + phi_twist),
/// G = F + (1 + alpha n / beta) log t.  DomainError at t <= 0.
struct MonotoneQuantities {
  ScalarField F;
  ScalarField G;
  double sup_G = 0.0;
};

MonotoneQuantities monotone_quantities(const FlowState& s,
                                       const FlowModel& model);

}  // namespace kricci
