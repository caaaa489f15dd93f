#include <gtest/gtest.h>

#include <cmath>

#include "kricci/errors.hpp"
#include "kricci/flow.hpp"
#include "kricci/flow_diagnostics.hpp"
#include "oracles.hpp"

namespace {

using namespace kricci;

FlowConfig homogeneous(int n, int N, double c, double dt, double t_end) {
  FlowConfig cfg = FlowConfig::on_grid(PeriodicGrid(n, N));
  cfg.twist.c = c;
  cfg.dt_initial = dt;
  cfg.t_end = t_end;
  return cfg;
}

FlowConfig exact_twist(int N, double eps, double t_end) {
  FlowConfig cfg = FlowConfig::on_grid(PeriodicGrid(1, N));
  cfg.twist.u = fourier_field(cfg.grid, {{eps, {1, 0, 0, 0}, 0.0}, {eps, {0, 1, 0, 0}, 0.4}});
  cfg.dt_initial = 1e-3;
  cfg.t_end = t_end;
  return cfg;
}

TEST(CentredDerivative, ExactOnQuadraticsWithUnevenSpacing) {
  const PeriodicGrid grid(1, 8);
  auto f = [&](double t) { return ScalarField(grid, 2.0 - 3.0 * t + 5.0 * t * t); };
  const double t0 = 0.1, t1 = 0.13, t2 = 0.2;
  const ScalarField d = centred_time_derivative(f(t0), t0, f(t1), t1, f(t2), t2);
  for (double v : d.values()) EXPECT_NEAR(v, -3.0 + 10.0 * t1, 1e-11);
}

TEST(ScalarBound, FlatHasZeroLhs) {
  const FlowModel model(FlowConfig::on_grid(PeriodicGrid(1, 8)));
  const FlowState s = make_state(model, ScalarField(model.grid()), 0.5);
  const ScalarBoundCheck b = check_scalar_bound(s, model);
  EXPECT_EQ(b.lhs_min, 0.0);
  EXPECT_GE(b.margin, 0.0);
  EXPECT_GE(b.phidot_margin, 0.0);
}

TEST(ScalarBound, NegativeHomogeneousTwistIsSharp) {
  const double c = -1.0;
  const FlowModel model(homogeneous(1, 8, c, 1e-3, 1.0));
  EXPECT_NEAR(model.sigma(), 1.0, 1e-14);
  const FlowResult r = run(model);
  for (const FlowState& s : r.trajectory) {
    const ScalarBoundCheck b = check_scalar_bound(s, model);
    EXPECT_NEAR(b.lhs_min, c / (1.0 - c * s.t), 1e-12);
    EXPECT_NEAR(b.margin, 0.0, 1e-12);
    EXPECT_NEAR(b.phidot_margin, 0.0, 1e-12);
  }
  const ScalarBoundCheck end = check_scalar_bound(r.trajectory.back(), model);
  EXPECT_NEAR(end.sup_phidot, std::log(2.0), 1e-12);
  EXPECT_NEAR(end.lhs_min, -0.5, 1e-12);
}

TEST(PotentialIdentities, TooFewSnapshotsThrows) {
  const FlowModel model(FlowConfig::on_grid(PeriodicGrid(1, 8)));
  const FlowState s = make_state(model, ScalarField(model.grid()), 0.0);
  EXPECT_THROW(check_potential_identities({s, s}, model), DomainError);
}

TEST(PotentialIdentities, FlatStationaryIsExact) {
  FlowConfig cfg = FlowConfig::on_grid(PeriodicGrid(2, 8));
  cfg.dt_initial = 0.01;
  cfg.t_end = 0.1;
  const FlowModel model(cfg);
  const FlowResult r = run(model);
  const PotentialIdentityResiduals id = check_potential_identities(r.trajectory, model);
  EXPECT_LE(id.res1, 1e-12);
  EXPECT_LE(id.res2, 1e-12);
}

TEST(PotentialIdentities, HomogeneousSecondOrder) {
  auto residuals = [](double dt) {
    const FlowModel model(homogeneous(1, 8, 0.5, dt, 0.5));
    return check_potential_identities(run(model).trajectory, model);
  };
  const PotentialIdentityResiduals a = residuals(2e-3);
  const PotentialIdentityResiduals b = residuals(1e-3);
  EXPECT_LE(a.res1, 1e-5);
  EXPECT_LE(a.res2, 1e-5);
  EXPECT_GE(a.res1 / b.res1, 4.0 * 0.8);
  EXPECT_LE(a.res1 / b.res1, 4.0 * 1.2);
}

TEST(Schwarz, HomogeneousIsEquality) {
  const double c = 0.5;
  const FlowModel model(homogeneous(2, 8, c, 1e-3, 0.5));
  const FlowResult r = run(model);
  const std::size_t i = r.trajectory.size() / 2;
  const PointwiseCheck p =
      check_schwarz(r.trajectory[i - 1], r.trajectory[i], r.trajectory[i + 1], model);
  const double t = r.trajectory[i].t;
  for (double v : p.rhs.values()) EXPECT_NEAR(v, c / (1.0 - c * t), 1e-12);
  EXPECT_LE(p.max_abs_margin, 1e-6);
}

TEST(Schwarz, FlatStationaryIsZero) {
  FlowConfig cfg = FlowConfig::on_grid(PeriodicGrid(1, 8));
  cfg.dt_initial = 0.01;
  cfg.t_end = 0.05;
  const FlowModel model(cfg);
  const FlowResult r = run(model);
  const std::vector<double> m = schwarz_margins(r.trajectory, model);
  ASSERT_EQ(m.size(), r.trajectory.size());
  EXPECT_TRUE(std::isnan(m.front()));
  EXPECT_TRUE(std::isnan(m.back()));
  for (std::size_t i = 1; i + 1 < m.size(); ++i) EXPECT_EQ(m[i], 0.0);
}

TEST(TraceHypotheses, OmegaPartIsRejected) {
  const FlowModel model(homogeneous(1, 8, 0.5, 1e-3, 1.0));
  EXPECT_THROW(certify_trace_hypotheses(model), PreconditionError);
}

TEST(TraceHypotheses, ContraMarginCanFail) {
  FlowConfig cfg = exact_twist(16, 0.01, 1.0);
  cfg.mu = 0.01;
  EXPECT_THROW(certify_trace_hypotheses(FlowModel(cfg)), PreconditionError);
}

TEST(TraceHypotheses, FlatWithExactTwistHolds) {
  const FlowModel model(exact_twist(16, 0.01, 1.0));
  const TraceHypotheses th = certify_trace_hypotheses(model);
  EXPECT_NEAR(th.lambda_max, 0.0, 1e-12);
  EXPECT_GT(th.contra_margin, 0.0);
}

TEST(TraceEvolution, HoldsAlongExactTwistRun) {
  // The margin error is dominated by the centred time difference across
  // snapshots, so snapshots are kept every other step.
  FlowConfig cfg = exact_twist(16, 0.01, 0.1);
  cfg.diagnostics_every = 2;
  const FlowModel model(cfg);
  const FlowResult r = run(model);
  for (std::size_t i = 1; i + 1 < r.trajectory.size(); ++i) {
    const PointwiseCheck p =
        check_trace_evolution(r.trajectory[i - 1], r.trajectory[i], r.trajectory[i + 1], model);
    EXPECT_GE(p.min_margin, -5e-5);
  }
  const TelescopedBound tb = check_telescoped_bound(r.trajectory.front(), r.trajectory.back(), model);
  EXPECT_GE(tb.margin, -1e-4);
  EXPECT_NEAR(tb.margin, tb.sup_initial - tb.sup_final, 1e-15);
}

TEST(TraceEvolution, FlatStationaryIsZero) {
  FlowConfig cfg = FlowConfig::on_grid(PeriodicGrid(1, 8));
  cfg.dt_initial = 0.01;
  cfg.t_end = 0.05;
  const FlowModel model(cfg);
  const FlowResult r = run(model);
  const PointwiseCheck p =
      check_trace_evolution(r.trajectory[0], r.trajectory[1], r.trajectory[2], model);
  EXPECT_LE(p.max_abs_margin, 1e-12);
}

TEST(Monotone, FlatStationaryG) {
  const FlowModel model(FlowConfig::on_grid(PeriodicGrid(2, 8)));
  for (double t : {1.0, 0.5}) {
    const MonotoneQuantities m = monotone_quantities(make_state(model, ScalarField(model.grid()), t), model);
    EXPECT_NEAR(m.sup_G, std::log(2.0) + 3.0 * std::log(t), 1e-14);
  }
  const FlowModel model1(FlowConfig::on_grid(PeriodicGrid(1, 8)));
  const MonotoneQuantities m1 =
      monotone_quantities(make_state(model1, ScalarField(model1.grid()), 0.25), model1);
  EXPECT_NEAR(m1.sup_G, 2.0 * std::log(0.25), 1e-14);
}

TEST(Monotone, GDivergesAtZero) {
  const FlowModel model(FlowConfig::on_grid(PeriodicGrid(1, 8)));
  double prev = 0.0;
  for (double t : {1e-2, 1e-4, 1e-8}) {
    const double g =
        monotone_quantities(make_state(model, ScalarField(model.grid()), t), model).sup_G;
    EXPECT_LT(g, prev);
    prev = g;
  }
  EXPECT_THROW(monotone_quantities(make_state(model, ScalarField(model.grid()), 0.0), model),
               DomainError);
}

TEST(Monotone, HomogeneousF) {
  const double c = 0.5;
  const int n = 2;
  const FlowModel model(homogeneous(n, 8, c, 1e-3, 1.0));
  const double t = 0.6;
  const MonotoneQuantities m =
      monotone_quantities(make_state(model, ScalarField(model.grid(), -0.1), t), model);
  const double expected = std::log(n / (1.0 - c * t)) - n * std::log(1.0 - c * t);
  for (double v : m.F.values()) EXPECT_NEAR(v, expected, 1e-12);
}

}  // namespace
