#include "kricci/flow_io.hpp"

#include <cmath>
#include <filesystem>
#include <iomanip>
#include <limits>
#include <sstream>

#include "json_util.hpp"
#include "kricci/field_io.hpp"
#include "kricci/flow_diagnostics.hpp"
#include "kricci/tensor_io.hpp"

namespace kricci {

using nlohmann::json;

namespace {

const std::string kOrigin = "flow config";

std::vector<FourierMode> parse_modes(const json& a) {
  std::vector<FourierMode> modes;
  for (const json& m : a) {
    if (!m.is_object()) throw ParseError(kOrigin + ": Fourier mode must be an object");
    FourierMode f;
    f.amplitude = detail::require<double>(m, "amplitude", kOrigin);
    f.phase = detail::value_or<double>(m, "phase", 0.0, kOrigin);
    const std::vector<int> wave =
        detail::require<std::vector<int>>(m, "wave", kOrigin);
    if (wave.size() > 4) throw ParseError(kOrigin + ": wave vector too long");
    for (std::size_t i = 0; i < wave.size(); ++i) f.wave[i] = wave[i];
    modes.push_back(f);
  }
  return modes;
}

ScalarField parse_scalar(const json& j, const char* key,
                         const PeriodicGrid& grid, const std::string& base_dir) {
  if (!j.contains(key) || j[key].is_null()) return ScalarField(grid);
  const json& v = j[key];
  ScalarField f;
  try {
    if (v.is_array()) {
      f = fourier_field(grid, parse_modes(v));
    } else if (v.is_object() && v.contains("file")) {
      std::filesystem::path path = detail::require<std::string>(v, "file", kOrigin);
      if (path.is_relative()) path = std::filesystem::path(base_dir) / path;
      f = load_scalar_field(path.string());
    } else if (v.is_object()) {
      f = parse_scalar_field(v.dump());
    } else {
      throw ParseError(kOrigin + ": '" + key +
                       "' must be a mode list, a field object or {\"file\": ...}");
    }
  } catch (const DomainError& e) {
    throw ParseError(kOrigin + ": '" + key + "': " + e.what());
  }
  if (!(f.grid() == grid)) {
    throw ParseError(kOrigin + ": field '" + key + "' does not match the grid");
  }
  return f;
}

json number_or_null(double v) {
  if (std::isfinite(v)) return v;
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return nullptr;
}

json outcome_json(const CheckOutcome& c) {
  json j;
  j["enabled"] = c.enabled;
  if (c.enabled) {
    j["value"] = number_or_null(c.value);
    j["tolerance"] = c.tolerance;
    j["pass"] = c.pass;
  }
  return j;
}

CheckOutcome margin_check(double margin, double tol) {
  CheckOutcome c;
  c.enabled = true;
  c.value = margin;
  c.tolerance = tol;
  c.pass = margin >= -tol;
  return c;
}

CheckOutcome residual_check(double residual, double tol) {
  CheckOutcome c;
  c.enabled = true;
  c.value = residual;
  c.tolerance = tol;
  c.pass = residual <= tol;
  return c;
}

}  // namespace

FlowRunSpec parse_flow_config(const std::string& json_text,
                              const std::string& base_dir) {
  const json j = detail::parse_json(json_text, kOrigin);
  if (!j.is_object()) throw ParseError(kOrigin + ": top level must be an object");
  PeriodicGrid grid;
  try {
    grid = PeriodicGrid(detail::require<int>(j, "n", kOrigin),
                        detail::require<int>(j, "N", kOrigin));
  } catch (const DomainError& e) {
    throw ParseError(kOrigin + ": " + e.what());
  }
  FlowRunSpec spec;
  FlowConfig& c = spec.config;
  c = FlowConfig::on_grid(grid);
  c.background_potential = parse_scalar(j, "background", grid, base_dir);
  c.phi0 = parse_scalar(j, "phi0", grid, base_dir);
  c.phi_twist = parse_scalar(j, "phi_twist", grid, base_dir);
  if (j.contains("twist")) {
    const json& t = j["twist"];
    if (!t.is_object()) throw ParseError(kOrigin + ": 'twist' must be an object");
    c.twist.c = detail::value_or<double>(t, "c", 0.0, kOrigin);
    c.twist.u = parse_scalar(t, "u", grid, base_dir);
  }
  c.dt_initial = detail::value_or<double>(j, "dt", c.dt_initial, kOrigin);
  c.cfl_safety = detail::value_or<double>(j, "cfl", c.cfl_safety, kOrigin);
  c.t_end = detail::value_or<double>(j, "t_end", c.t_end, kOrigin);
  c.positivity_floor =
      detail::value_or<double>(j, "positivity_floor", c.positivity_floor, kOrigin);
  c.diagnostics_every =
      detail::value_or<int>(j, "diagnostics_every", c.diagnostics_every, kOrigin);
  c.max_halvings = detail::value_or<int>(j, "max_halvings", c.max_halvings, kOrigin);
  c.alpha = detail::value_or<double>(j, "alpha", c.alpha, kOrigin);
  c.beta = detail::value_or<double>(j, "beta", c.beta, kOrigin);
  c.mu = detail::value_or<double>(j, "mu", c.mu, kOrigin);
  c.sigma_init = detail::value_or<double>(j, "sigma", c.sigma_init, kOrigin);
  try {
    c.discretization = discretization_from_string(
        detail::value_or<std::string>(j, "discretization", "fd2", kOrigin));
    c.validate();
  } catch (const DomainError& e) {
    throw ParseError(kOrigin + ": " + e.what());
  }

  if (j.contains("tolerances")) {
    const json& t = j["tolerances"];
    FlowTolerances& tol = spec.tolerances;
    tol.volume_upper = detail::value_or<double>(t, "volume_upper", tol.volume_upper, kOrigin);
    tol.identities = detail::value_or<double>(t, "identities", tol.identities, kOrigin);
    tol.schwarz = detail::value_or<double>(t, "schwarz", tol.schwarz, kOrigin);
    tol.trace_evolution =
        detail::value_or<double>(t, "trace_evolution", tol.trace_evolution, kOrigin);
    tol.reconstruction =
        detail::value_or<double>(t, "reconstruction", tol.reconstruction, kOrigin);
  }
  spec.check_trace_evolution =
      detail::value_or<bool>(j, "check_trace_evolution", false, kOrigin);
  return spec;
}

FlowRunSpec load_flow_config(const std::string& path) {
  const std::filesystem::path p(path);
  const std::string dir = p.has_parent_path() ? p.parent_path().string() : ".";
  try {
    return parse_flow_config(read_text_file(path), dir);
  } catch (const ParseError& e) {
    throw ParseError(path + ": " + e.what());
  }
}

std::string history_csv(const std::vector<DiagnosticRecord>& history) {
  std::ostringstream out;
  out << std::setprecision(17);
  out << "t,sup_phidot,inf_scalar_plus_tr_eta,bound_volume_upper,"
         "positivity_margin,sup_G,schwarz_min_margin\n";
  for (const DiagnosticRecord& r : history) {
    out << r.t << ',' << r.sup_phidot << ',' << r.inf_scalar_plus_tr_eta << ','
        << r.bound_volume_upper << ',' << r.positivity_margin << ',' << r.sup_G
        << ',' << r.schwarz_min_margin << '\n';
  }
  return out.str();
}

FlowReport summarize_run(const FlowModel& model, const FlowResult& result,
                         const FlowTolerances& tol, bool trace_evolution) {
  FlowReport r;
  r.tolerances = tol;
  r.status = result.status;
  r.reason = result.reason;
  r.steps = result.steps;
  r.halvings = result.halvings;
  r.sigma = result.sigma;
  const FlowState& last = result.trajectory.back();
  r.t_final = last.t;
  r.horizon_estimate = horizon_estimate(result.history);
  r.final_sup_phidot = last.phi_dot.max();
  r.final_positivity_margin = positivity_margin(last.g);

  double vol = std::numeric_limits<double>::infinity();
  double phid = std::numeric_limits<double>::infinity();
  double recon = 0.0;
  for (const FlowState& s : result.trajectory) {
    const ScalarBoundCheck b = check_scalar_bound(s, model);
    vol = std::min(vol, b.margin);
    phid = std::min(phid, b.phidot_margin);
    recon = std::max(recon, reconstruction_residual(model, s));
  }
  r.volume_upper = margin_check(vol, tol.volume_upper);
  r.phidot_bound = margin_check(phid, tol.volume_upper);
  r.reconstruction = residual_check(recon, tol.reconstruction);

  if (result.trajectory.size() >= 3) {
    const PotentialIdentityResiduals id =
        check_potential_identities(result.trajectory, model);
    r.identity_phidot = residual_check(id.res1, tol.identities);
    r.identity_w = residual_check(id.res2, tol.identities);
    double sch = std::numeric_limits<double>::infinity();
    for (const DiagnosticRecord& d : result.history) {
      if (!std::isnan(d.schwarz_min_margin)) sch = std::min(sch, d.schwarz_min_margin);
    }
    r.schwarz = margin_check(sch, tol.schwarz);

    if (trace_evolution) {
      try {
        certify_trace_hypotheses(model);
        double te = std::numeric_limits<double>::infinity();
        const auto& tr = result.trajectory;
        for (std::size_t i = 1; i + 1 < tr.size(); ++i) {
          te = std::min(te, check_trace_evolution(tr[i - 1], tr[i], tr[i + 1], model)
                                .min_margin);
        }
        r.trace_evolution = margin_check(te, tol.trace_evolution);
        r.telescoped = margin_check(
            check_telescoped_bound(tr.front(), tr.back(), model).margin,
            tol.trace_evolution);
      } catch (const PreconditionError& e) {
        r.trace_hypotheses_error = e.what();
        r.trace_evolution.enabled = true;
        r.trace_evolution.pass = false;
      }
    }
  }

  for (const CheckOutcome* c :
       {&r.volume_upper, &r.phidot_bound, &r.reconstruction, &r.identity_phidot,
        &r.identity_w, &r.schwarz, &r.trace_evolution, &r.telescoped}) {
    if (c->enabled && !c->pass) r.pass = false;
  }
  return r;
}

std::string report_to_json(const FlowReport& r) {
  json j;
  j["status"] = to_string(r.status);
  j["reason"] = r.reason;
  j["steps"] = r.steps;
  j["halvings"] = r.halvings;
  j["t_final"] = r.t_final;
  j["sigma"] = number_or_null(r.sigma);
  j["horizon_estimate"] = number_or_null(r.horizon_estimate);
  j["final_sup_phidot"] = r.final_sup_phidot;
  j["final_positivity_margin"] = r.final_positivity_margin;
  json checks;
  checks["volume_upper"] = outcome_json(r.volume_upper);
  checks["phidot_bound"] = outcome_json(r.phidot_bound);
  checks["reconstruction"] = outcome_json(r.reconstruction);
  checks["identity_phidot"] = outcome_json(r.identity_phidot);
  checks["identity_w"] = outcome_json(r.identity_w);
  checks["schwarz"] = outcome_json(r.schwarz);
  checks["trace_evolution"] = outcome_json(r.trace_evolution);
  checks["telescoped"] = outcome_json(r.telescoped);
  if (!r.trace_hypotheses_error.empty()) {
    checks["trace_evolution"]["error"] = r.trace_hypotheses_error;
  }
  j["checks"] = std::move(checks);
  j["tolerances"] = {{"volume_upper", r.tolerances.volume_upper},
                     {"identities", r.tolerances.identities},
                     {"schwarz", r.tolerances.schwarz},
                     {"trace_evolution", r.tolerances.trace_evolution},
                     {"reconstruction", r.tolerances.reconstruction}};
  j["pass"] = r.pass;
  return j.dump(2);
}

}  // namespace kricci
