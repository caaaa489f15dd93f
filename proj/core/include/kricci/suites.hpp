#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "kricci/bihermitian.hpp"
#include "kricci/certify.hpp"

namespace kricci {

/// Suites: royden, interpolation, mixed-trace, ric-scalar, berger,
/// rigidity-model.
const std::vector<std::string>& suite_names();

/// Tolerance used when the run does not override it.
double default_tolerance(const std::string& suite);

struct SuiteConfig {
  std::string suite;
  std::vector<int> n_values;  // empty: suite default
  std::vector<int> k_values;  // empty: suite default
  int count = 20;
  std::uint64_t seed = 0;
  std::optional<double> tol;
  /// Target sigma for the constrained suites and the model form.
  std::vector<double> sigmas{0.5, 1.0, 2.0};
  /// Monte Carlo samples per berger case.
  std::uint64_t samples = 100000;
  /// Instances from a gen manifest replace the random stream when set
  /// (an empty list yields an empty report).  Loaded forms are paired with
  /// the identity metric.  rigidity-model always uses the model form.
  std::optional<std::vector<BihermitianForm>> instances;
  CertifyOptions certify;
};

/// pass <=> margin >= -tolerance.
struct CaseRecord {
  std::string case_id;
  std::string lemma;
  double lhs = 0.0;
  double rhs = 0.0;
  double margin = 0.0;
  bool pass = false;
  std::string note;
};

struct SuiteReport {
  std::string suite;
  std::uint64_t seed = 0;
  double tolerance = 0.0;
  bool tolerance_overridden = false;
  std::vector<CaseRecord> cases;
  int pass_count = 0;
  double worst_margin = 0.0;
  double wall_time_s = 0.0;

  bool pass() const { return pass_count == static_cast<int>(cases.size()); }
  std::string to_json() const;
};

/// DomainError for an unknown suite or out-of-range n / k.
SuiteReport run_suite(const SuiteConfig& config);

struct GenConfig {
  int n = 2;
  int count = 1;
  std::uint64_t seed = 0;
  /// Ric_k <= bound constraint; requires n <= 6.
  std::optional<int> k;
  std::optional<double> bound;
  std::string out_dir = ".";
  CertifyOptions certify;
};

struct GenEntry {
  std::string file;
  double shift = 0.0;
  int attempts = 0;
  double extremal_value = 0.0;
};

struct GenManifest {
  int n = 0;
  std::uint64_t seed = 0;
  std::optional<int> k;
  std::optional<double> bound;
  std::vector<GenEntry> entries;
  std::string to_json() const;
};

/// Writes instance_XXXX.json files and manifest.json into out_dir.
/// NumericError when a constraint cannot be reached.
GenManifest run_gen(const GenConfig& config);

/// Loads every tensor listed in a manifest (paths relative to it).
std::vector<BihermitianForm> load_manifest_instances(const std::string& path);

}  // namespace kricci
