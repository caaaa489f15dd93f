#include <gtest/gtest.h>

#include <algorithm>
#include <filesystem>
#include <string>

#include "kricci/errors.hpp"
#include "kricci/field_io.hpp"
#include "kricci/flow_io.hpp"
#include "kricci/geometry.hpp"
#include "kricci/royden.hpp"
#include "kricci/suites.hpp"
#include "kricci/tensor_io.hpp"
#include "oracles.hpp"

namespace {

using namespace kricci;
namespace fs = std::filesystem;

fs::path scratch_dir(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("kricci_test_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

TEST(TensorIo, RoundTripIsExact) {
  Rng rng(70);
  const BihermitianForm s = random_bihermitian(3, rng);
  const LoadedTensor t = parse_tensor(tensor_to_json(s));
  EXPECT_LE((t.form - s).max_abs(), 1e-15);
  EXPECT_LE(t.pre_projection_violation, 1e-15);
}

TEST(TensorIo, AsymmetricInputIsProjectedAndReported) {
  Rng rng(71);
  const LoadedTensor t = parse_tensor(tensor_to_json(random_tensor(2, rng)));
  EXPECT_GT(t.pre_projection_violation, 1e-3);
  EXPECT_TRUE(validate_symmetries(t.form.tensor(), 1e-14).ok);
}

TEST(TensorIo, HermitianRoundTrip) {
  Rng rng(72);
  const HermitianForm h = random_metric(3, rng);
  EXPECT_EQ(parse_hermitian(hermitian_to_json(h)).entries(), h.entries());
}

TEST(TensorIo, MalformedInputThrowsParseError) {
  EXPECT_THROW(parse_tensor("{\"n\": 2, \"entries\": [[1, 0]"), ParseError);
  EXPECT_THROW(parse_tensor("{\"n\": 2, \"entries\": [[1, 0]]}"), ParseError);
  EXPECT_THROW(parse_tensor("[1, 2, 3]"), ParseError);
  EXPECT_THROW(read_text_file("/nonexistent/kricci/file.json"), ParseError);
}

TEST(TensorIo, CertificateRoundTrip) {
  Rng rng(73);
  const BihermitianForm s = random_bihermitian(3, rng);
  const HermitianForm h = random_metric(3, rng);
  const Certificate c = certify_k_ricci(s, h, 2, 0.0, Direction::upper);
  const Certificate d = certificate_from_json(certificate_to_json(c), h);
  EXPECT_EQ(d.status, c.status);
  EXPECT_EQ(d.k, c.k);
  EXPECT_EQ(d.extremal_value, c.extremal_value);
  EXPECT_NEAR(reevaluate(d, s, h), reevaluate(c, s, h), 1e-12);
}

TEST(FieldIo, RoundTrips) {
  const PeriodicGrid grid(2, 8);
  const ScalarField f = fourier_field(grid, {{0.01, {1, 0, 1, 0}, 0.2}});
  EXPECT_EQ(parse_scalar_field(field_to_json(f)).values(), f.values());
  const HermitianField g = metric_from_potential(HermitianField::identity(grid), f);
  EXPECT_EQ(max_distance(parse_hermitian_field(field_to_json(g)), g), 0.0);
  const CurvatureField r = curvature_field(g);
  const CurvatureField r2 = parse_curvature_field(field_to_json(r));
  double d = 0.0;
  for (std::size_t i = 0; i < r.data().size(); ++i)
    d = std::max(d, std::abs(r2.data()[i] - r.data()[i]));
  EXPECT_LE(d, 1e-15);
}

TEST(FieldIo, FileRoundTrip) {
  const fs::path dir = scratch_dir("field");
  const PeriodicGrid grid(1, 16);
  const ScalarField f = fourier_field(grid, {{0.3, {0, 1, 0, 0}, 1.0}});
  save_field((dir / "f.json").string(), f);
  EXPECT_EQ(load_scalar_field((dir / "f.json").string()).values(), f.values());
  fs::remove_all(dir);
}

TEST(FieldIo, WrongKindOrSizeThrows) {
  const PeriodicGrid grid(1, 8);
  const std::string scalar = field_to_json(ScalarField(grid));
  EXPECT_THROW(parse_hermitian_field(scalar), ParseError);
  EXPECT_THROW(parse_scalar_field("{\"n\": 1, \"N\": 8, \"kind\": \"scalar\", \"values\": [1, 2]}"),
               ParseError);
}

TEST(FlowIo, ParsesModesAndTolerances) {
  const FlowRunSpec spec = parse_flow_config(R"({
    "n": 1, "N": 16, "dt": 0.002, "t_end": 0.5,
    "twist": {"c": 0.25, "u": [{"amplitude": 0.01, "wave": [0, 1], "phase": 0.5}]},
    "tolerances": {"schwarz": 0.001}
  })");
  EXPECT_EQ(spec.config.grid, PeriodicGrid(1, 16));
  EXPECT_EQ(spec.config.dt_initial, 0.002);
  EXPECT_EQ(spec.config.twist.c, 0.25);
  EXPECT_NEAR(spec.config.twist.u.max(), 0.01, 1e-3);
  EXPECT_EQ(spec.tolerances.schwarz, 0.001);
}

TEST(FlowIo, SyntaxErrorReportsLine) {
  try {
    parse_flow_config("{\n  \"n\": 1,\n  \"N\": 16,,\n}");
    FAIL() << "no ParseError";
  } catch (const ParseError& e) {
    EXPECT_NE(std::string(e.what()).find("line 3"), std::string::npos) << e.what();
  }
}

TEST(FlowIo, InvalidValuesThrowParseError) {
  EXPECT_THROW(parse_flow_config(R"({"n": 3, "N": 16})"), ParseError);
  EXPECT_THROW(parse_flow_config(R"({"n": 1, "N": 16, "t_end": -1})"), ParseError);
}

TEST(FlowIo, ReportAndHistory) {
  FlowConfig cfg = FlowConfig::on_grid(PeriodicGrid(1, 8));
  cfg.dt_initial = 0.01;
  cfg.t_end = 0.1;
  const FlowModel model(cfg);
  const FlowResult r = run(model);
  const FlowReport rep = summarize_run(model, r, {}, false);
  EXPECT_TRUE(rep.pass);
  EXPECT_EQ(rep.t_final, 0.1);
  const std::string csv = history_csv(r.history);
  EXPECT_EQ(csv.rfind("t,sup_phidot", 0), 0u);
  EXPECT_EQ(static_cast<std::size_t>(std::count(csv.begin(), csv.end(), '\n')),
            r.history.size() + 1);
  EXPECT_NE(report_to_json(rep).find("\"status\""), std::string::npos);
}

TEST(Suites, AllPassWithDefaults) {
  for (const std::string& name : suite_names()) {
    SuiteConfig c;
    c.suite = name;
    c.count = 3;
    c.seed = 5;
    c.samples = 20000;
    const SuiteReport r = run_suite(c);
    EXPECT_TRUE(r.pass()) << name;
    EXPECT_FALSE(r.cases.empty()) << name;
    EXPECT_EQ(r.tolerance, default_tolerance(name));
  }
}

TEST(Suites, Deterministic) {
  SuiteConfig c;
  c.suite = "interpolation";
  c.count = 3;
  c.seed = 9;
  const SuiteReport a = run_suite(c);
  const SuiteReport b = run_suite(c);
  ASSERT_EQ(a.cases.size(), b.cases.size());
  for (std::size_t i = 0; i < a.cases.size(); ++i) {
    EXPECT_EQ(a.cases[i].case_id, b.cases[i].case_id);
    EXPECT_EQ(a.cases[i].margin, b.cases[i].margin);
  }
}

TEST(Suites, EmptyInstancesGiveEmptyReport) {
  SuiteConfig c;
  c.suite = "royden";
  c.instances = std::vector<BihermitianForm>{};
  const SuiteReport r = run_suite(c);
  EXPECT_TRUE(r.cases.empty());
  EXPECT_TRUE(r.pass());
}

TEST(Suites, UnknownSuiteOrDimensionThrows) {
  SuiteConfig c;
  c.suite = "nope";
  EXPECT_THROW(run_suite(c), DomainError);
  c.suite = "royden";
  c.n_values = {kRoydenMaxDim + 1};
  EXPECT_THROW(run_suite(c), DomainError);
}

TEST(Suites, ModelFormViolationFailsWithTightTolerance) {
  SuiteConfig c;
  c.suite = "rigidity-model";
  c.count = 1;
  c.tol = -1.0;
  const SuiteReport r = run_suite(c);
  EXPECT_FALSE(r.pass());
  EXPECT_TRUE(r.tolerance_overridden);
}

TEST(Gen, InstancesRecertifyAndLoad) {
  const fs::path dir = scratch_dir("gen");
  GenConfig g;
  g.n = 3;
  g.count = 2;
  g.seed = 4;
  g.k = 2;
  g.bound = -1.5;
  g.out_dir = dir.string();
  const GenManifest m = run_gen(g);
  ASSERT_EQ(m.entries.size(), 2u);
  const std::vector<BihermitianForm> forms =
      load_manifest_instances((dir / "manifest.json").string());
  ASSERT_EQ(forms.size(), 2u);
  const HermitianForm id = HermitianForm::identity(3);
  for (const BihermitianForm& s : forms) {
    CertifyOptions opts;
    opts.seed = 31;
    EXPECT_EQ(certify_k_ricci(s, id, 2, -1.5, Direction::upper, opts).status,
              CertStatus::satisfied);
  }
  const std::string first = read_text_file((dir / "instance_0000.json").string());
  run_gen(g);
  EXPECT_EQ(read_text_file((dir / "instance_0000.json").string()), first);
  fs::remove_all(dir);
}

TEST(Gen, ZeroCountWritesEmptyManifest) {
  const fs::path dir = scratch_dir("gen0");
  GenConfig g;
  g.count = 0;
  g.out_dir = dir.string();
  EXPECT_TRUE(run_gen(g).entries.empty());
  EXPECT_TRUE(load_manifest_instances((dir / "manifest.json").string()).empty());
  fs::remove_all(dir);
}

}  // namespace
