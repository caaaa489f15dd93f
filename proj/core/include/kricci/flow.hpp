#pragma once

#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "kricci/differential.hpp"
#include "kricci/geometry.hpp"
#include "kricci/grid.hpp"

namespace kricci {

/// eta = c * omega_h + i ddbar u.
struct TwistSpec {
  double c = 0.0;
  ScalarField u;
};

struct FlowConfig {
  PeriodicGrid grid;
  /// h = identity + i ddbar psi.
  ScalarField background_potential;
  TwistSpec twist;
  /// Initial flow potential; zero unless set.
  ScalarField phi0;
  double dt_initial = 1e-3;
  double cfl_safety = 0.5;
  double t_end = 1.0;
  double positivity_floor = 1e-3;
  /// Record diagnostics and keep a snapshot every this many accepted steps.
  int diagnostics_every = 1;
  int max_halvings = 10;
  double alpha = 1.0;
  double beta = 1.0;
  double mu = 1.0;
  /// Twist function of the curvature hypothesis.
  ScalarField phi_twist;
  /// 0 selects the sharpest admissible value computed from the initial data.
  double sigma_init = 0.0;
  Discretization discretization = Discretization::fd2;

  /// Fills unset fields with zero fields on `grid`.
  static FlowConfig on_grid(const PeriodicGrid& grid);
  /// DomainError on an invalid combination.
  void validate() const;
};

/// Quantities fixed for the whole run.
class FlowModel {
 public:
  explicit FlowModel(FlowConfig config);

  const FlowConfig& config() const { return config_; }
  const PeriodicGrid& grid() const { return config_.grid; }
  int n() const { return config_.grid.n(); }

  const HermitianField& h() const { return h_; }
  const HermitianField& ric_h() const { return ric_h_; }
  const HermitianField& eta() const { return eta_; }
  const CurvatureField& curvature_h() const { return curv_h_; }
  const ScalarField& log_det_h() const { return log_det_h_; }

  /// inf over the grid of S(h) + tr_h eta.
  double initial_scalar_inf() const { return initial_inf_; }
  /// sigma used by the volume bound; +infinity when the initial infimum is
  /// non-negative (the bound is then 0).
  double sigma() const { return sigma_; }

  /// h - t Ric(h) - t eta + i ddbar phi (not checked for positivity).
  HermitianField metric(const ScalarField& phi, double t) const;
  /// log det g / det h; DegeneracyError when g is not positive.
  ScalarField rhs(const ScalarField& phi, double t) const;
  ScalarField rhs_from_metric(const HermitianField& g) const;

 private:
  FlowConfig config_;
  HermitianField h_;
  HermitianField ric_h_;
  HermitianField eta_;
  HermitianField base_slope_;  // Ric(h) + eta
  CurvatureField curv_h_;
  ScalarField log_det_h_;
  double initial_inf_ = 0.0;
  double sigma_ = 0.0;
};

/// log det(h - t Ric(h) - t eta + i ddbar phi) / det h.
ScalarField flow_rhs(const ScalarField& phi, double t, const FlowConfig& config);

struct FlowState {
  double t = 0.0;
  long step = 0;
  ScalarField phi;
  ScalarField phi_dot;
  HermitianField g;
  /// Lambda = tr_g h.
  ScalarField lambda_field;
};

struct DiagnosticRecord {
  double t = 0.0;
  double sup_phidot = 0.0;
  double inf_scalar_plus_tr_eta = 0.0;
  double bound_volume_upper = 0.0;
  double positivity_margin = 0.0;
  double sup_G = 0.0;
  double horizon_estimate = std::numeric_limits<double>::quiet_NaN();
  /// Filled after the run; NaN where no centred time difference exists.
  double schwarz_min_margin = std::numeric_limits<double>::quiet_NaN();
};

enum class FlowStatus { completed, horizon_reached };
std::string to_string(FlowStatus s);

struct FlowResult {
  std::vector<FlowState> trajectory;
  std::vector<DiagnosticRecord> history;
  FlowStatus status = FlowStatus::completed;
  std::string reason;
  long steps = 0;
  long halvings = 0;
  double sigma = 0.0;
};

/// State at time t with phi, phi_dot, g and Lambda filled from the model.
FlowState make_state(const FlowModel& model, ScalarField phi, double t,
                     long step = 0);

/// Largest explicit step allowed by the parabolic stability bound at g.
double stable_dt(const FlowModel& model, const HermitianField& g);

/// One RK2 (midpoint) step of size dt.  Throws DegeneracyError when an
/// intermediate or final metric is not positive.
FlowState rk2_step(const FlowModel& model, const FlowState& s, double dt);

/// Accepted step: dt = min(dt_initial, stable_dt, time to t_stop), halved
/// and retried on positivity failure up to max_halvings times.
/// Rethrows the last DegeneracyError when retries are exhausted.
FlowState step(const FlowModel& model, const FlowState& s, double t_stop,
               long* halvings = nullptr);

/// Integrates to t_end or until the positivity margin drops below the floor.
/// Deterministic for a fixed config.
FlowResult run(const FlowConfig& config);
FlowResult run(const FlowModel& model);

/// Linear fit of the positivity margin over the last 10 records, extrapolated
/// to zero.  +infinity if the margin is not decreasing or the zero lies
/// beyond 10 * max(1, t_last); NaN with fewer than 10 records.
double horizon_estimate(const std::vector<DiagnosticRecord>& history);

/// max |g - (h - t Ric(h) - t eta + i ddbar phi)|.
double reconstruction_residual(const FlowModel& model, const FlowState& s);

}  // namespace kricci
