#include "kricci/flow.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "kricci/errors.hpp"
#include "kricci/flow_diagnostics.hpp"

namespace kricci {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

void fill_if_unset(ScalarField& f, const PeriodicGrid& grid, const char* name) {
  if (f.size() == 0) {
    f = ScalarField(grid);
  } else if (!(f.grid() == grid)) {
    throw DomainError(std::string("FlowConfig: field '") + name +
                      "' lives on a different grid");
  }
}

void push_record(const FlowModel& model, const FlowState& s,
                 std::vector<DiagnosticRecord>& history) {
  DiagnosticRecord r;
  r.t = s.t;
  const ScalarBoundCheck sb = check_scalar_bound(s, model);
  r.sup_phidot = sb.sup_phidot;
  r.inf_scalar_plus_tr_eta = sb.lhs_min;
  r.bound_volume_upper = sb.bound;
  r.positivity_margin = positivity_margin(s.g);
  r.sup_G = s.t > 0.0 ? monotone_quantities(s, model).sup_G : -kInf;
  history.push_back(r);
  history.back().horizon_estimate = horizon_estimate(history);
}

}  // namespace

std::string to_string(FlowStatus s) {
  return s == FlowStatus::completed ? "completed" : "horizon_reached";
}

FlowConfig FlowConfig::on_grid(const PeriodicGrid& grid) {
  FlowConfig c;
  c.grid = grid;
  c.background_potential = ScalarField(grid);
  c.twist.u = ScalarField(grid);
  c.phi0 = ScalarField(grid);
  c.phi_twist = ScalarField(grid);
  return c;
}

void FlowConfig::validate() const {
  if (grid.size() == 0) throw DomainError("FlowConfig: grid not set");
  if (!(t_end > 0.0)) throw DomainError("FlowConfig: t_end must be positive");
  if (!(positivity_floor > 0.0)) {
    throw DomainError("FlowConfig: positivity_floor must be positive");
  }
  if (!(dt_initial > 0.0)) throw DomainError("FlowConfig: dt must be positive");
  if (!(cfl_safety > 0.0 && cfl_safety < 1.0)) {
    throw DomainError("FlowConfig: cfl_safety must lie in (0, 1)");
  }
  if (diagnostics_every < 1) {
    throw DomainError("FlowConfig: diagnostics_every must be >= 1");
  }
  if (max_halvings < 0) throw DomainError("FlowConfig: max_halvings must be >= 0");
  if (!(alpha > 0.0 && beta > 0.0)) {
    throw DomainError("FlowConfig: alpha and beta must be positive");
  }
  if (!(sigma_init >= 0.0)) throw DomainError("FlowConfig: sigma must be >= 0");
  if (!std::isfinite(twist.c)) throw DomainError("FlowConfig: twist c not finite");
}

FlowModel::FlowModel(FlowConfig config) : config_(std::move(config)) {
  config_.validate();
  const PeriodicGrid& grid = config_.grid;
  fill_if_unset(config_.background_potential, grid, "background_potential");
  fill_if_unset(config_.twist.u, grid, "u");
  fill_if_unset(config_.phi0, grid, "phi0");
  fill_if_unset(config_.phi_twist, grid, "phi_twist");
  const Discretization d = config_.discretization;

  h_ = HermitianField::identity(grid) +
       dbar_hessian(config_.background_potential, d);
  require_positive(h_, "background metric");
  ric_h_ = ricci_field(h_, d);
  eta_ = config_.twist.c * h_ + dbar_hessian(config_.twist.u, d);
  base_slope_ = ric_h_ + eta_;
  curv_h_ = curvature_field(h_, d);
  log_det_h_ = log_det(h_);

  initial_inf_ = trace_wrt(base_slope_, h_).min();
  const double sharpest = initial_inf_ < 0.0 ? n() / (-initial_inf_) : kInf;
  if (config_.sigma_init > 0.0) {
    if (config_.sigma_init > sharpest * (1.0 + 1e-12)) {
      throw DomainError("FlowConfig: sigma " + std::to_string(config_.sigma_init) +
                        " is not admissible (largest admissible " +
                        std::to_string(sharpest) + ")");
    }
    sigma_ = config_.sigma_init;
  } else {
    sigma_ = sharpest;
  }
}

HermitianField FlowModel::metric(const ScalarField& phi, double t) const {
  HermitianField g = h_;
  g -= t * base_slope_;
  g += dbar_hessian(phi, config_.discretization);
  return g;
}

ScalarField FlowModel::rhs_from_metric(const HermitianField& g) const {
  require_positive(g, "flow_rhs");
  ScalarField out(grid());
  for (std::size_t p = 0; p < out.size(); ++p) {
    out[p] = std::log(pointwise::det(g, p)) - log_det_h_[p];
  }
  return out;
}

ScalarField FlowModel::rhs(const ScalarField& phi, double t) const {
  return rhs_from_metric(metric(phi, t));
}

ScalarField flow_rhs(const ScalarField& phi, double t, const FlowConfig& config) {
  return FlowModel(config).rhs(phi, t);
}

FlowState make_state(const FlowModel& model, ScalarField phi, double t,
                     long step) {
  FlowState s;
  s.t = t;
  s.step = step;
  s.g = model.metric(phi, t);
  s.phi_dot = model.rhs_from_metric(s.g);
  s.phi = std::move(phi);
  s.lambda_field = trace_wrt(model.h(), s.g);
  return s;
}

double stable_dt(const FlowModel& model, const HermitianField& g) {
  const double dx = model.grid().spacing();
  const double lo = positivity_margin(g);
  if (!(lo > 0.0)) return 0.0;
  return model.config().cfl_safety * dx * dx * lo / model.n();
}

FlowState rk2_step(const FlowModel& model, const FlowState& s, double dt) {
  ScalarField mid = s.phi;
  for (std::size_t p = 0; p < mid.size(); ++p) mid[p] += 0.5 * dt * s.phi_dot[p];
  const ScalarField k2 = model.rhs(mid, s.t + 0.5 * dt);
  ScalarField next = s.phi;
  for (std::size_t p = 0; p < next.size(); ++p) next[p] += dt * k2[p];
  return make_state(model, std::move(next), s.t + dt, s.step + 1);
}

FlowState step(const FlowModel& model, const FlowState& s, double t_stop,
               long* halvings) {
  const FlowConfig& c = model.config();
  const double remaining = t_stop - s.t;
  double dt = std::min(c.dt_initial, stable_dt(model, s.g));
  // Absorb a remainder that is round-off sized relative to the step.
  bool to_stop = remaining - dt <= 1e-6 * dt;
  if (to_stop) dt = remaining;
  if (!(dt > 0.0)) {
    throw DegeneracyError("step: no admissible time step at t = " +
                              std::to_string(s.t),
                          positivity_report(s.g).worst_point,
                          positivity_margin(s.g));
  }
  for (int attempt = 0;; ++attempt) {
    try {
      FlowState out = rk2_step(model, s, dt);
      if (to_stop) out.t = t_stop;
      return out;
    } catch (const DegeneracyError&) {
      if (attempt >= c.max_halvings) throw;
      dt *= 0.5;
      to_stop = false;
      if (halvings != nullptr) ++*halvings;
    }
  }
}

double horizon_estimate(const std::vector<DiagnosticRecord>& history) {
  constexpr std::size_t kWindow = 10;
  if (history.size() < kWindow) return kNaN;
  const std::size_t start = history.size() - kWindow;
  double mt = 0.0, mm = 0.0;
  for (std::size_t i = start; i < history.size(); ++i) {
    mt += history[i].t;
    mm += history[i].positivity_margin;
  }
  mt /= kWindow;
  mm /= kWindow;
  double stt = 0.0, stm = 0.0;
  for (std::size_t i = start; i < history.size(); ++i) {
    const double dt = history[i].t - mt;
    stt += dt * dt;
    stm += dt * (history[i].positivity_margin - mm);
  }
  if (!(stt > 0.0)) return kNaN;
  const double slope = stm / stt;
  if (!(slope < 0.0)) return kInf;
  const double t_zero = mt - mm / slope;
  const double t_last = history.back().t;
  if (t_zero > 10.0 * std::max(1.0, t_last)) return kInf;
  return t_zero;
}

double reconstruction_residual(const FlowModel& model, const FlowState& s) {
  return max_distance(s.g, model.metric(s.phi, s.t));
}

FlowResult run(const FlowConfig& config) { return run(FlowModel(config)); }

FlowResult run(const FlowModel& model) {
  const FlowConfig& c = model.config();
  FlowResult out;
  out.sigma = model.sigma();

  FlowState state = make_state(model, c.phi0, 0.0);
  push_record(model, state, out.history);
  out.trajectory.push_back(state);

  const double t_end = c.t_end;
  while (state.t < t_end * (1.0 - 1e-14)) {
    FlowState next;
    try {
      next = step(model, state, t_end, &out.halvings);
    } catch (const DegeneracyError& e) {
      out.status = FlowStatus::horizon_reached;
      out.reason = std::string("step failed after ") +
                   std::to_string(c.max_halvings) + " halvings: " + e.what();
      break;
    }
    state = std::move(next);
    ++out.steps;
    const double margin = positivity_margin(state.g);
    const bool below_floor = margin < c.positivity_floor;
    const bool at_end = !(state.t < t_end * (1.0 - 1e-14));
    if (state.step % c.diagnostics_every == 0 || below_floor || at_end) {
      push_record(model, state, out.history);
      out.trajectory.push_back(state);
    }
    if (below_floor) {
      out.status = FlowStatus::horizon_reached;
      out.reason = "positivity margin " + std::to_string(margin) +
                   " below floor at t = " + std::to_string(state.t);
      break;
    }
  }

  const std::vector<double> sm = schwarz_margins(out.trajectory, model);
  for (std::size_t i = 0; i < sm.size(); ++i) out.history[i].schwarz_min_margin = sm[i];
  return out;
}

}  // namespace kricci
