#include "kricci/suites.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <map>
#include <random>

#include "json_util.hpp"
#include "kricci/curvature.hpp"
#include "kricci/errors.hpp"
#include "kricci/random_forms.hpp"
#include "kricci/royden.hpp"
#include "kricci/tensor_io.hpp"

namespace kricci {

using nlohmann::json;

namespace {

// One unit of work: builds its own records from a private RNG.
struct CaseTask {
  std::string id;
  std::function<std::vector<CaseRecord>(Rng&)> body;
};

Rng case_rng(std::uint64_t seed, const std::string& suite, std::size_t index) {
  std::uint32_t tag = 0;
  for (char ch : suite) tag = tag * 131u + static_cast<unsigned char>(ch);
  std::seed_seq seq{static_cast<std::uint32_t>(seed),
                    static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(index), tag};
  return Rng(seq);
}

CaseRecord make_record(const std::string& id, const std::string& lemma,
                       double lhs, double rhs, double margin,
                       const std::string& note = {}) {
  CaseRecord r;
  r.case_id = id;
  r.lemma = lemma;
  r.lhs = lhs;
  r.rhs = rhs;
  r.margin = margin;
  r.note = note;
  return r;
}

// Record for an equality: margin is minus the absolute gap.
CaseRecord equality(const std::string& id, const std::string& lemma,
                    double lhs, double rhs) {
  return make_record(id, lemma, lhs, rhs, -std::abs(lhs - rhs));
}

// Record for lhs <= rhs.
CaseRecord inequality(const std::string& id, const std::string& lemma,
                      double lhs, double rhs) {
  return make_record(id, lemma, lhs, rhs, rhs - lhs);
}

std::vector<int> or_default(const std::vector<int>& v, std::vector<int> d) {
  return v.empty() ? d : v;
}

void check_n(int n, int max_n, const std::string& suite) {
  if (n < 1 || n > max_n) {
    throw DomainError(suite + ": n = " + std::to_string(n) + " outside [1, " +
                      std::to_string(max_n) + "]");
  }
}

std::string case_name(const std::string& prefix, int n, int k, std::size_t i) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%s-n%d-k%d-%04zu", prefix.c_str(), n, k, i);
  return buf;
}

// sigma for which Ric_k <= -(k+1) sigma is certified on (s, h), with the
// certifier's tolerance absorbed.
struct Hypothesis {
  double sigma = 0.0;
  bool certified = false;
  std::string note;
};

Hypothesis certified_sigma(const BihermitianForm& s, const HermitianForm& h,
                           int k, const CertifyOptions& opts) {
  const Certificate c = extremal_k_ricci(s, h, k, Direction::upper, opts);
  Hypothesis hyp;
  hyp.certified = c.status != CertStatus::inconclusive;
  hyp.sigma = -(c.extremal_value + opts.tol) / (k + 1);
  if (!hyp.certified) hyp.note = "certification inconclusive";
  return hyp;
}

// Instance source: loaded forms (h = identity) or a fresh random stream.
struct Instance {
  BihermitianForm s;
  HermitianForm h;
  bool constrained = false;  // Ric_k <= -(k+1) sigma holds by construction
  double sigma = 0.0;
};

std::vector<CaseTask> royden_tasks(const SuiteConfig& c) {
  std::vector<CaseTask> tasks;
  auto body = [](const std::string& id, const BihermitianForm& s,
                 const HermitianForm& h, const HermitianForm& g) {
    const RoydenSums b = royden_sum_bruteforce(s, h, g);
    const double cf = royden_closed_form(s, h, g);
    const double res = royden_identity_check(s, h, g);
    return std::vector<CaseRecord>{
        make_record(id, "royden-identity", b.quartic_sum, cf, -res)};
  };
  if (c.instances) {
    for (std::size_t i = 0; i < c.instances->size(); ++i) {
      const BihermitianForm s = (*c.instances)[i];
      check_n(s.dim(), kRoydenMaxDim, "royden");
      const std::string id = case_name("royden", s.dim(), 0, i);
      tasks.push_back({id, [=](Rng& rng) {
                         const int n = s.dim();
                         return body(id, s, HermitianForm::identity(n),
                                     random_metric(n, rng));
                       }});
    }
    return tasks;
  }
  for (int n : or_default(c.n_values, {1, 2, 3, 4})) {
    check_n(n, kRoydenMaxDim, "royden");
    for (int i = 0; i < c.count; ++i) {
      const std::string id = case_name("royden", n, 0, i);
      tasks.push_back({id, [=](Rng& rng) {
                         const BihermitianForm s = random_bihermitian(n, rng);
                         const HermitianForm h = random_metric(n, rng);
                         return body(id, s, h, random_metric(n, rng));
                       }});
    }
  }
  return tasks;
}

// Draws (s, h) for the constrained suites.
Instance constrained_instance(const SuiteConfig& c, int n, int k, double sigma,
                              Rng& rng) {
  Instance in;
  in.h = random_metric(n, rng);
  const ConstrainedForm cf =
      generate_ric_k_upper(n, k, -(k + 1) * sigma, in.h, rng, c.certify);
  in.s = cf.form;
  in.constrained = true;
  in.sigma = sigma;
  return in;
}

std::vector<CaseTask> constrained_tasks(
    const SuiteConfig& c, const std::string& suite, int min_k,
    std::function<std::vector<CaseRecord>(const std::string&, const Instance&,
                                          int, Rng&)>
        check) {
  std::vector<CaseTask> tasks;
  if (c.instances) {
    for (std::size_t i = 0; i < c.instances->size(); ++i) {
      const BihermitianForm s = (*c.instances)[i];
      const int n = s.dim();
      for (int k : or_default(c.k_values, {std::min(2, n)})) {
        if (k < min_k || k > n) continue;
        const std::string id = case_name(suite, n, k, i);
        tasks.push_back({id, [=, &c](Rng& rng) {
                           Instance in;
                           in.s = s;
                           in.h = HermitianForm::identity(n);
                           const Hypothesis hyp = certified_sigma(s, in.h, k, c.certify);
                           if (!hyp.certified) {
                             CaseRecord r = make_record(id, suite, 0, 0, -INFINITY, hyp.note);
                             return std::vector<CaseRecord>{r};
                           }
                           in.sigma = hyp.sigma;
                           return check(id, in, k, rng);
                         }});
      }
    }
    return tasks;
  }
  for (int n : or_default(c.n_values, {2, 3})) {
    check_n(n, 6, suite);
    for (int k : or_default(c.k_values, {std::min(2, n)})) {
      if (k < min_k || k > n) {
        throw DomainError(suite + ": k = " + std::to_string(k) + " invalid for n = " +
                          std::to_string(n));
      }
      for (int i = 0; i < c.count; ++i) {
        const double sigma = c.sigmas[i % c.sigmas.size()];
        const std::string id = case_name(suite, n, k, i);
        tasks.push_back({id, [=, &c](Rng& rng) {
                           return check(id, constrained_instance(c, n, k, sigma, rng),
                                        k, rng);
                         }});
      }
    }
  }
  return tasks;
}

std::vector<CaseTask> interpolation_tasks(const SuiteConfig& c) {
  return constrained_tasks(
      c, "interpolation", 1,
      [](const std::string& id, const Instance& in, int k, Rng& rng) {
        const Vector x = random_unit_vector(in.h, rng);
        const InterpolationResult r = interpolation_check(in.s, in.h, k, in.sigma, x);
        return std::vector<CaseRecord>{
            inequality(id, "k-ricci-interpolation", r.lhs, r.rhs)};
      });
}

std::vector<CaseTask> ric_scalar_tasks(const SuiteConfig& c) {
  return constrained_tasks(
      c, "ric-scalar", 2,
      [](const std::string& id, const Instance& in, int k, Rng&) {
        const HermitianForm d = ric_scalar_matrix(in.s, in.h, k, in.sigma);
        const double top = d.eigenvalues_wrt(in.h).maxCoeff();
        return std::vector<CaseRecord>{inequality(id, "ric-scalar-matrix", top, 0.0)};
      });
}

std::vector<CaseTask> mixed_trace_tasks(const SuiteConfig& c) {
  std::vector<CaseTask> tasks;
  auto body = [&c](const std::string& id, const BihermitianForm& s,
                   const HermitianForm& h, Rng& rng) {
    const int n = s.dim();
    const HermitianForm g = random_metric(n, rng);
    const HermitianForm rho = random_hermitian(n, rng);
    CurvatureParams p;
    p.alpha = std::uniform_real_distribution<double>(0.5, 2.0)(rng);
    p.beta = std::uniform_real_distribution<double>(0.5, 2.0)(rng);
    // Smallest lambda making the pointwise hypothesis true, plus the
    // certifier tolerance.
    p.lambda = mixed_hypothesis_lambda(s, h, rho, p.alpha, p.beta, rng()) +
               c.certify.tol;
    const MixedTraceBounds b = mixed_trace_bounds(s, h, g, rho, p);
    return std::vector<CaseRecord>{
        inequality(id + "/lhs-rhs1", "mixed-trace", b.lhs, b.rhs1),
        inequality(id + "/rhs1-rhs2", "mixed-trace", b.rhs1, b.rhs2)};
  };
  if (c.instances) {
    for (std::size_t i = 0; i < c.instances->size(); ++i) {
      const BihermitianForm s = (*c.instances)[i];
      const std::string id = case_name("mixed-trace", s.dim(), 1, i);
      tasks.push_back({id, [=](Rng& rng) {
                         return body(id, s, HermitianForm::identity(s.dim()), rng);
                       }});
    }
    return tasks;
  }
  for (int n : or_default(c.n_values, {2, 3})) {
    check_n(n, kRoydenMaxDim, "mixed-trace");
    for (int i = 0; i < c.count; ++i) {
      const std::string id = case_name("mixed-trace", n, 1, i);
      tasks.push_back({id, [=](Rng& rng) {
                         const BihermitianForm s = random_bihermitian(n, rng);
                         return body(id, s, random_metric(n, rng), rng);
                       }});
    }
  }
  return tasks;
}

std::vector<CaseTask> berger_tasks(const SuiteConfig& c) {
  std::vector<CaseTask> tasks;
  auto body = [&c](const std::string& id, const BihermitianForm& s,
                   const HermitianForm& h, Rng& rng) {
    const BergerResult b = berger_check(s, h, c.samples, rng());
    const double gap = std::abs(b.scalar_value - b.scaled_average);
    return std::vector<CaseRecord>{make_record(
        id, "berger-average", b.scaled_average, b.scalar_value,
        3.0 * b.std_error - gap,
        "std_error " + std::to_string(b.std_error))};
  };
  if (c.instances) {
    for (std::size_t i = 0; i < c.instances->size(); ++i) {
      const BihermitianForm s = (*c.instances)[i];
      const std::string id = case_name("berger", s.dim(), 1, i);
      tasks.push_back({id, [=](Rng& rng) {
                         return body(id, s, HermitianForm::identity(s.dim()), rng);
                       }});
    }
    return tasks;
  }
  for (int n : or_default(c.n_values, {2, 3})) {
    check_n(n, 8, "berger");
    for (int i = 0; i < c.count; ++i) {
      const std::string id = case_name("berger", n, 1, i);
      tasks.push_back({id, [=](Rng& rng) {
                         const BihermitianForm s = random_bihermitian(n, rng);
                         return body(id, s, random_metric(n, rng), rng);
                       }});
    }
  }
  return tasks;
}

std::vector<CaseTask> rigidity_tasks(const SuiteConfig& c) {
  std::vector<CaseTask> tasks;
  for (int n : or_default(c.n_values, {2, 3, 4})) {
    check_n(n, 8, "rigidity-model");
    for (std::size_t si = 0; si < c.sigmas.size(); ++si) {
      const double sigma = c.sigmas[si];
      const std::string id = case_name("rigidity-model", n, 0, si);
      tasks.push_back({id, [=](Rng& rng) {
        std::vector<CaseRecord> out;
        const HermitianForm h = random_metric(n, rng);
        const BihermitianForm s = -sigma * b_form(h);
        const Vector x = random_unit_vector(h, rng);
        out.push_back(equality(id + "/H", "model-hsc", hsc(s, h, x), -2.0 * sigma));
        const HermitianForm ric = ricci_trace(s, h);
        double ric_gap = 0.0;
        for (int i = 0; i < n; ++i)
          for (int j = 0; j < n; ++j)
            ric_gap = std::max(ric_gap, std::abs(ric(i, j) + (n + 1) * sigma * h(i, j)));
        out.push_back(make_record(id + "/Ric", "model-ricci", ric.quadratic(x),
                                  -(n + 1) * sigma, -ric_gap));
        out.push_back(equality(id + "/Scal", "model-scalar", scalar(s, h),
                               -n * (n + 1.0) * sigma));
        for (int k = 1; k <= n; ++k) {
          const std::string kk = "/k" + std::to_string(k);
          for (Extreme w : {Extreme::max, Extreme::min}) {
            const double v = k_ricci_extreme_at(s, h, k, x, w).value;
            out.push_back(equality(id + kk + (w == Extreme::max ? "/Ric_k-max" : "/Ric_k-min"),
                                   "model-k-ricci", v, -(k + 1.0) * sigma));
          }
          const InterpolationResult ir = interpolation_check(s, h, k, sigma, x);
          out.push_back(equality(id + kk + "/interpolation", "k-ricci-interpolation",
                                 ir.lhs, ir.rhs));
          if (k > 1) {
            const HermitianForm d = ric_scalar_matrix(s, h, k, sigma);
            const RealVector ev = d.eigenvalues_wrt(h);
            const double worst = std::max(std::abs(ev.minCoeff()), std::abs(ev.maxCoeff()));
            out.push_back(make_record(id + kk + "/ric-scalar", "ric-scalar-matrix",
                                      d.quadratic(x), 0.0, -worst));
          }
        }
        return out;
      }});
    }
  }
  return tasks;
}

json number_or_string(double v) {
  if (std::isfinite(v)) return v;
  if (std::isnan(v)) return "nan";
  return v > 0 ? "inf" : "-inf";
}

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{
      "royden", "interpolation", "mixed-trace", "ric-scalar", "berger",
      "rigidity-model"};
  return names;
}

double default_tolerance(const std::string& suite) {
  static const std::map<std::string, double> tol{
      {"royden", 1e-10},     {"interpolation", 1e-8}, {"mixed-trace", 1e-9},
      {"ric-scalar", 1e-8},  {"berger", 0.0},         {"rigidity-model", 1e-12}};
  const auto it = tol.find(suite);
  if (it == tol.end()) throw DomainError("unknown suite '" + suite + "'");
  return it->second;
}

SuiteReport run_suite(const SuiteConfig& config) {
  const auto start = std::chrono::steady_clock::now();
  SuiteReport report;
  report.suite = config.suite;
  report.seed = config.seed;
  report.tolerance = default_tolerance(config.suite);
  if (config.tol) {
    report.tolerance = *config.tol;
    report.tolerance_overridden = true;
  }
  if (config.count < 0) throw DomainError("count must be >= 0");
  if (config.sigmas.empty()) throw DomainError("at least one sigma is required");

  std::vector<CaseTask> tasks;
  const std::string& s = config.suite;
  if (s == "royden") tasks = royden_tasks(config);
  else if (s == "interpolation") tasks = interpolation_tasks(config);
  else if (s == "mixed-trace") tasks = mixed_trace_tasks(config);
  else if (s == "ric-scalar") tasks = ric_scalar_tasks(config);
  else if (s == "berger") tasks = berger_tasks(config);
  else tasks = rigidity_tasks(config);

  std::vector<std::vector<CaseRecord>> results(tasks.size());
  std::vector<std::string> errors(tasks.size());
#pragma omp parallel for schedule(dynamic)
  for (long i = 0; i < static_cast<long>(tasks.size()); ++i) {
    Rng rng = case_rng(config.seed, config.suite, static_cast<std::size_t>(i));
    try {
      results[i] = tasks[i].body(rng);
    } catch (const std::exception& e) {
      errors[i] = e.what();
    }
  }

  report.worst_margin = INFINITY;
  for (std::size_t i = 0; i < tasks.size(); ++i) {
    if (!errors[i].empty()) {
      results[i] = {make_record(tasks[i].id, config.suite, NAN, NAN, -INFINITY,
                                "error: " + errors[i])};
    }
    for (CaseRecord& r : results[i]) {
      r.pass = r.margin >= -report.tolerance;
      if (r.pass) ++report.pass_count;
      report.worst_margin = std::min(report.worst_margin, r.margin);
      report.cases.push_back(std::move(r));
    }
  }
  if (report.cases.empty()) report.worst_margin = 0.0;
  report.wall_time_s =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return report;
}

std::string SuiteReport::to_json() const {
  json j;
  j["suite"] = suite;
  j["seed"] = seed;
  j["tolerance"] = tolerance;
  j["tolerance_overridden"] = tolerance_overridden;
  json cs = json::array();
  for (const CaseRecord& r : cases) {
    json c;
    c["case_id"] = r.case_id;
    c["lemma"] = r.lemma;
    c["lhs"] = number_or_string(r.lhs);
    c["rhs"] = number_or_string(r.rhs);
    c["margin"] = number_or_string(r.margin);
    c["pass"] = r.pass;
    if (!r.note.empty()) c["note"] = r.note;
    cs.push_back(std::move(c));
  }
  j["cases"] = std::move(cs);
  j["summary"] = {{"cases", cases.size()},
                  {"pass_count", pass_count},
                  {"worst_margin", number_or_string(worst_margin)},
                  {"wall_time_s", wall_time_s},
                  {"pass", pass()}};
  return j.dump(2);
}

std::string GenManifest::to_json() const {
  json j;
  j["n"] = n;
  j["seed"] = seed;
  if (k && bound) {
    j["constraint"] = {{"type", "ric_k_upper"}, {"k", *k}, {"bound", *bound}};
  } else {
    j["constraint"] = {{"type", "none"}};
  }
  j["metric"] = "identity";
  json es = json::array();
  for (const GenEntry& e : entries) {
    json x;
    x["file"] = e.file;
    if (k && bound) {
      x["shift"] = e.shift;
      x["attempts"] = e.attempts;
      x["extremal_value"] = e.extremal_value;
    }
    es.push_back(std::move(x));
  }
  j["instances"] = std::move(es);
  return j.dump(2);
}

GenManifest run_gen(const GenConfig& c) {
  if (c.n < 1) throw DomainError("gen: n must be >= 1");
  if (c.count < 0) throw DomainError("gen: count must be >= 0");
  if (c.k.has_value() != c.bound.has_value()) {
    throw DomainError("gen: a constraint needs both k and bound");
  }
  if (c.k && (c.n > 6 || *c.k < 1 || *c.k > c.n)) {
    throw DomainError("gen: constrained generation needs n <= 6 and 1 <= k <= n");
  }
  std::filesystem::create_directories(c.out_dir);
  GenManifest m;
  m.n = c.n;
  m.seed = c.seed;
  m.k = c.k;
  m.bound = c.bound;
  const HermitianForm h = HermitianForm::identity(c.n);
  for (int i = 0; i < c.count; ++i) {
    Rng rng = case_rng(c.seed, "gen", static_cast<std::size_t>(i));
    GenEntry e;
    char name[32];
    std::snprintf(name, sizeof name, "instance_%04d.json", i);
    e.file = name;
    BihermitianForm s;
    if (c.k) {
      const ConstrainedForm cf = generate_ric_k_upper(c.n, *c.k, *c.bound, h, rng, c.certify);
      s = cf.form;
      e.shift = cf.shift;
      e.attempts = cf.attempts;
      e.extremal_value = cf.certificate.extremal_value;
    } else {
      s = random_bihermitian(c.n, rng);
    }
    save_tensor((std::filesystem::path(c.out_dir) / name).string(), s);
    m.entries.push_back(e);
  }
  write_text_file((std::filesystem::path(c.out_dir) / "manifest.json").string(),
                  m.to_json() + "\n");
  return m;
}

std::vector<BihermitianForm> load_manifest_instances(const std::string& path) {
  const std::string origin = "manifest";
  const json j = detail::parse_json(read_text_file(path), origin);
  if (!j.contains("instances") || !j["instances"].is_array()) {
    throw ParseError(origin + ": missing 'instances' array");
  }
  const std::filesystem::path dir = std::filesystem::path(path).parent_path();
  std::vector<BihermitianForm> out;
  for (const json& e : j["instances"]) {
    const std::string file = detail::require<std::string>(e, "file", origin);
    out.push_back(load_tensor((dir / file).string()).form);
  }
  return out;
}

}  // namespace kricci
