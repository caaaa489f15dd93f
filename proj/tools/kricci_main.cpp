// kricci: batch front end for instance generation, lemma suites,
// certification and flow runs.
//
// Exit codes: 0 all checks within tolerance, 1 a check failed,
// 2 bad input or usage, 3 numerical or resource failure.

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "kricci/certify.hpp"
#include "kricci/errors.hpp"
#include "kricci/flow.hpp"
#include "kricci/flow_io.hpp"
#include "kricci/suites.hpp"
#include "kricci/tensor_io.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitCheckFailed = 1;
constexpr int kExitInput = 2;
constexpr int kExitNumeric = 3;

struct Common {
  std::uint64_t seed = 0;
  std::string n_list;
  std::string k_list;
  int count = -1;
  std::optional<double> tol;
  std::string out;
  std::string discretization;
};

std::vector<int> parse_int_list(const std::string& text, const char* flag) {
  std::vector<int> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    if (item.empty()) continue;
    std::size_t used = 0;
    int v = 0;
    try {
      v = std::stoi(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != item.size()) {
      throw kricci::ParseError(std::string(flag) + ": '" + item + "' is not an integer");
    }
    out.push_back(v);
  }
  return out;
}

std::vector<double> parse_double_list(const std::string& text, const char* flag) {
  std::vector<double> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    if (item.empty()) continue;
    std::size_t used = 0;
    double v = 0;
    try {
      v = std::stod(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != item.size()) {
      throw kricci::ParseError(std::string(flag) + ": '" + item + "' is not a number");
    }
    out.push_back(v);
  }
  return out;
}

// Appends one compact JSON line per run, so earlier runs are never rewritten.
void append_run_log(const std::string& out_dir, json entry) {
  if (out_dir.empty()) return;
  fs::create_directories(out_dir);
  std::ofstream log(fs::path(out_dir) / "runs.jsonl", std::ios::app);
  if (!log) throw kricci::ResourceError("cannot append to " + out_dir + "/runs.jsonl");
  log << entry.dump() << '\n';
}

std::string fmt(double v) {
  std::ostringstream s;
  s << std::setprecision(6) << std::scientific << v;
  return s.str();
}

int cmd_gen(const Common& c, const std::optional<double>& bound) {
  kricci::GenConfig g;
  const std::vector<int> ns = parse_int_list(c.n_list.empty() ? "2" : c.n_list, "--n");
  if (ns.size() != 1) throw kricci::ParseError("gen: --n takes a single dimension");
  g.n = ns.front();
  g.count = c.count < 0 ? 1 : c.count;
  g.seed = c.seed;
  if (!c.k_list.empty()) {
    const std::vector<int> ks = parse_int_list(c.k_list, "--k");
    if (ks.size() != 1) throw kricci::ParseError("gen: --k takes a single value");
    g.k = ks.front();
  }
  g.bound = bound;
  g.out_dir = c.out.empty() ? "." : c.out;
  const kricci::GenManifest m = kricci::run_gen(g);
  std::cout << "wrote " << m.entries.size() << " instance(s) to " << g.out_dir
            << "/manifest.json\n";
  return kExitOk;
}

int cmd_verify(const Common& c, const std::string& suite,
               const std::string& instances, std::uint64_t samples,
               const std::string& sigmas, bool quiet) {
  kricci::SuiteConfig cfg;
  cfg.suite = suite;
  cfg.seed = c.seed;
  cfg.tol = c.tol;
  cfg.n_values = parse_int_list(c.n_list, "--n");
  cfg.k_values = parse_int_list(c.k_list, "--k");
  if (c.count >= 0) cfg.count = c.count;
  if (samples > 0) cfg.samples = samples;
  if (!sigmas.empty()) cfg.sigmas = parse_double_list(sigmas, "--sigma");
  if (!instances.empty()) cfg.instances = kricci::load_manifest_instances(instances);

  const kricci::SuiteReport r = kricci::run_suite(cfg);
  for (const kricci::CaseRecord& rec : r.cases) {
    if (!rec.pass) {
      std::cerr << "FAIL case=" << rec.case_id << " lemma=" << rec.lemma
                << " lhs=" << fmt(rec.lhs) << " rhs=" << fmt(rec.rhs)
                << " margin=" << fmt(rec.margin) << " tol=" << fmt(r.tolerance);
      if (!rec.note.empty()) std::cerr << " note=\"" << rec.note << '"';
      std::cerr << '\n';
    }
  }
  if (!c.out.empty()) {
    fs::create_directories(c.out);
    kricci::write_text_file((fs::path(c.out) / (suite + "_report.json")).string(),
                            r.to_json() + "\n");
    json entry = json::parse(r.to_json());
    entry["command"] = "verify";
    entry.erase("cases");
    append_run_log(c.out, std::move(entry));
  } else if (!quiet) {
    std::cout << r.to_json() << '\n';
  }
  std::cout << suite << ": " << r.pass_count << "/" << r.cases.size()
            << " pass, worst margin " << fmt(r.worst_margin) << ", tol "
            << fmt(r.tolerance) << (r.tolerance_overridden ? " (override)" : "")
            << ", " << std::fixed << std::setprecision(3) << r.wall_time_s << " s\n";
  return r.pass() ? kExitOk : kExitCheckFailed;
}

int cmd_certify(const Common& c, const std::string& tensor_path,
                const std::string& metric_path, const std::optional<double>& bound,
                const std::string& direction) {
  const kricci::LoadedTensor t = kricci::load_tensor(tensor_path);
  const int n = t.form.dim();
  const kricci::HermitianForm h = metric_path.empty()
                                      ? kricci::HermitianForm::identity(n)
                                      : kricci::load_hermitian(metric_path);
  const std::vector<int> ks = parse_int_list(c.k_list.empty() ? "1" : c.k_list, "--k");
  if (ks.size() != 1) throw kricci::ParseError("certify: --k takes a single value");
  kricci::CertifyOptions opts;
  opts.seed = c.seed;
  if (c.tol) opts.tol = *c.tol;
  const kricci::Direction dir = kricci::direction_from_string(direction);
  const kricci::Certificate cert =
      bound ? kricci::certify_k_ricci(t.form, h, ks.front(), *bound, dir, opts)
            : kricci::extremal_k_ricci(t.form, h, ks.front(), dir, opts);
  const std::string text = kricci::certificate_to_json(cert);
  if (!c.out.empty()) {
    kricci::write_text_file(c.out, text + "\n");
  } else {
    std::cout << text << '\n';
  }
  std::cerr << "status " << kricci::to_string(cert.status) << ", extremal "
            << fmt(cert.extremal_value) << '\n';
  if (!bound) return cert.status == kricci::CertStatus::inconclusive ? kExitCheckFailed : kExitOk;
  return cert.status == kricci::CertStatus::satisfied ? kExitOk : kExitCheckFailed;
}

int cmd_flow(const Common& c, const std::string& config_path) {
  kricci::FlowRunSpec spec = kricci::load_flow_config(config_path);
  if (!c.discretization.empty()) {
    spec.config.discretization = kricci::discretization_from_string(c.discretization);
  }
  if (c.tol) {
    kricci::FlowTolerances& t = spec.tolerances;
    t.volume_upper = t.identities = t.schwarz = t.trace_evolution = *c.tol;
  }
  const kricci::FlowModel model(spec.config);
  const kricci::FlowResult result = kricci::run(model);
  const kricci::FlowReport report = kricci::summarize_run(
      model, result, spec.tolerances, spec.check_trace_evolution);

  const std::string out_dir = c.out.empty() ? "." : c.out;
  fs::create_directories(out_dir);
  kricci::write_text_file((fs::path(out_dir) / "history.csv").string(),
                          kricci::history_csv(result.history));
  const std::string report_text = kricci::report_to_json(report);
  kricci::write_text_file((fs::path(out_dir) / "report.json").string(), report_text + "\n");
  json entry = json::parse(report_text);
  entry["command"] = "flow";
  entry["config"] = config_path;
  append_run_log(out_dir, std::move(entry));

  std::cout << "flow: " << kricci::to_string(report.status) << " at t = "
            << report.t_final << " after " << report.steps << " steps";
  if (std::isfinite(report.horizon_estimate)) {
    std::cout << ", horizon estimate " << report.horizon_estimate;
  }
  std::cout << (report.pass ? ", all checks pass\n" : ", CHECK FAILED\n");
  if (!report.pass) {
    std::cerr << "FAIL flow report: " << (fs::path(out_dir) / "report.json").string() << '\n';
  }
  return report.pass ? kExitOk : kExitCheckFailed;
}

// Summarizes a runs.jsonl log (or a directory holding one).
int cmd_report(const std::string& path) {
  fs::path p(path.empty() ? "." : path);
  if (fs::is_directory(p)) p /= "runs.jsonl";
  std::ifstream in(p);
  if (!in) throw kricci::ParseError("report: cannot open " + p.string());
  std::string line;
  int lineno = 0;
  int failed = 0;
  int total = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    json e;
    try {
      e = json::parse(line);
    } catch (const json::parse_error& err) {
      throw kricci::ParseError(p.string() + ": line " + std::to_string(lineno) + ": " +
                               err.what());
    }
    ++total;
    const std::string cmd = e.value("command", "?");
    bool pass = false;
    if (e.contains("pass")) pass = e["pass"].get<bool>();
    if (e.contains("summary")) pass = e["summary"].value("pass", false);
    if (!pass) ++failed;
    std::cout << std::setw(4) << total << "  " << std::setw(6) << cmd << "  ";
    if (cmd == "verify") {
      const json& s = e["summary"];
      std::cout << e.value("suite", "?") << " seed " << e.value("seed", 0ULL) << ": "
                << s.value("pass_count", 0) << "/" << s.value("cases", 0) << " pass";
    } else {
      std::cout << e.value("config", "?") << ": " << e.value("status", "?");
    }
    std::cout << (pass ? "  PASS\n" : "  FAIL\n");
  }
  std::cout << total - failed << "/" << total << " runs pass\n";
  return failed == 0 ? kExitOk : kExitCheckFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Curvature algebra and twisted Kahler-Ricci flow workbench"};
  app.require_subcommand(1);
  Common c;
  double tol_value = 0.0;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--seed", c.seed, "RNG seed");
    sub->add_option("--n", c.n_list, "Dimension(s), comma separated");
    sub->add_option("--k", c.k_list, "k value(s), comma separated");
    sub->add_option("--count", c.count, "Instances per (n, k)");
    sub->add_option("--tol", tol_value, "Override the pass tolerance");
    sub->add_option("--out", c.out, "Output directory (certify: output file)");
    sub->add_option("--discretization", c.discretization, "fd2 or spectral")
        ->check(CLI::IsMember({"fd2", "spectral"}));
  };

  CLI::App* gen = app.add_subcommand("gen", "Generate random bihermitian forms");
  add_common(gen);
  double gen_bound = 0.0;
  gen->add_option("--bound", gen_bound, "Ric_k upper bound (needs --k)");

  CLI::App* verify = app.add_subcommand("verify", "Run a lemma suite");
  add_common(verify);
  std::string suite;
  std::string instances;
  std::uint64_t samples = 0;
  std::string sigmas;
  bool quiet = false;
  verify->add_option("suite", suite, "Suite name")
      ->required()
      ->check(CLI::IsMember(kricci::suite_names()));
  verify->add_option("--instances", instances, "Manifest written by gen");
  verify->add_option("--samples", samples, "Monte Carlo samples (berger)");
  verify->add_option("--sigma", sigmas, "Comma separated sigma values");
  verify->add_flag("--quiet", quiet, "Print only the summary line");

  CLI::App* certify = app.add_subcommand("certify", "Certify a k-Ricci bound");
  add_common(certify);
  std::string tensor_path;
  std::string metric_path;
  double cert_bound = 0.0;
  std::string direction = "upper";
  certify->add_option("tensor", tensor_path, "Tensor JSON file")->required();
  certify->add_option("--metric", metric_path, "Hermitian metric JSON (default identity)");
  certify->add_option("--bound", cert_bound, "Bound to certify (default: report the extreme)");
  certify->add_option("--direction", direction, "upper or lower")
      ->check(CLI::IsMember({"upper", "lower"}));

  CLI::App* flow = app.add_subcommand("flow", "Run a twisted Kahler-Ricci flow");
  add_common(flow);
  std::string config_path;
  flow->add_option("config", config_path, "Flow config JSON")->required();

  CLI::App* report = app.add_subcommand("report", "Summarize logged runs");
  std::string report_path;
  report->add_option("path", report_path, "runs.jsonl or its directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kExitOk : kExitInput;
  }

  auto given = [](CLI::App* sub, const char* name) { return sub->count(name) > 0; };
  try {
    CLI::App* active = app.get_subcommands().front();
    if (active != report && given(active, "--tol")) c.tol = tol_value;
    if (*gen) {
      return cmd_gen(c, given(gen, "--bound") ? std::optional<double>(gen_bound)
                                              : std::nullopt);
    }
    if (*verify) return cmd_verify(c, suite, instances, samples, sigmas, quiet);
    if (*certify) {
      return cmd_certify(c, tensor_path, metric_path,
                         given(certify, "--bound") ? std::optional<double>(cert_bound)
                                                   : std::nullopt,
                         direction);
    }
    if (*flow) return cmd_flow(c, config_path);
    return cmd_report(report_path);
  } catch (const kricci::ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInput;
  } catch (const kricci::DomainError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInput;
  } catch (const kricci::PreconditionError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitCheckFailed;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitNumeric;
  }
}
