#pragma once

#include <string>

#include "kricci/flow.hpp"

namespace kricci {

/// Pass thresholds for the end-of-run checks; a check passes when its
/// margin is >= -tolerance (residuals: <= tolerance).
struct FlowTolerances {
  double volume_upper = 1e-4;
  double identities = 1e-4;
  double schwarz = 1e-4;
  double trace_evolution = 1e-4;
  double reconstruction = 1e-10;
};

struct FlowRunSpec {
  FlowConfig config;
  FlowTolerances tolerances;
  bool check_trace_evolution = false;
};

/// Flow config JSON.  Scalar fields (background, twist.u, phi0, phi_twist)
/// are given as a list of Fourier modes
///   [{"amplitude": a, "wave": [m_x1, m_y1, ...], "phase": p}, ...],
/// inline as a scalar field object, or by reference {"file": path}.
/// Relative paths resolve against `base_dir`.  ParseError (with line and
/// column for syntax errors) on malformed input.
FlowRunSpec parse_flow_config(const std::string& json_text,
                              const std::string& base_dir = ".");
FlowRunSpec load_flow_config(const std::string& path);

/// Columns: t, sup_phidot, inf_scalar_plus_tr_eta, bound_volume_upper,
/// positivity_margin, sup_G, schwarz_min_margin.
std::string history_csv(const std::vector<DiagnosticRecord>& history);

struct CheckOutcome {
  bool enabled = false;
  double value = 0.0;
  double tolerance = 0.0;
  bool pass = true;
};

struct FlowReport {
  FlowStatus status = FlowStatus::completed;
  std::string reason;
  long steps = 0;
  long halvings = 0;
  double t_final = 0.0;
  double sigma = 0.0;
  double horizon_estimate = 0.0;
  double final_sup_phidot = 0.0;
  double final_positivity_margin = 0.0;
  /// Smallest margins over the recorded history.
  CheckOutcome volume_upper;
  CheckOutcome phidot_bound;
  CheckOutcome reconstruction;
  CheckOutcome identity_phidot;
  CheckOutcome identity_w;
  CheckOutcome schwarz;
  CheckOutcome trace_evolution;
  CheckOutcome telescoped;
  std::string trace_hypotheses_error;
  FlowTolerances tolerances;
  bool pass = true;
};

/// Evaluates every enabled check on a finished run.
FlowReport summarize_run(const FlowModel& model, const FlowResult& result,
                         const FlowTolerances& tol, bool trace_evolution);

std::string report_to_json(const FlowReport& r);

}  // namespace kricci
