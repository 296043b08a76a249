// Copyright 2026 The rfkit Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "rfkit/experiment.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>

#include "json_io.hpp"
#include "rfkit/distributions.hpp"
#include "rfkit/errors.hpp"
#include "rfkit/multivariate.hpp"
#include "rfkit/stats.hpp"

namespace rfkit {

namespace {

using nlohmann::json;
using Clock = std::chrono::steady_clock;

constexpr int kReportSchemaVersion = 1;

double elapsed_ms(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

struct LongRow {
  std::string dataset;
  std::string kernel;
  std::string scheme;
  std::size_t p = 0;
  std::string norm;
  double value = 0.0;
  double time_ms = 0.0;
  std::uint64_t seed = 0;
};

// Accumulates records so a failure can still flush what was produced.
struct ReportBuilder {
  json records = json::array();
  json summary = json::object();
  std::vector<LongRow> rows;
  std::vector<std::string> notes;

  void add_row(LongRow row) { rows.push_back(std::move(row)); }
};

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string render_csv(const std::vector<LongRow>& rows) {
  std::ostringstream os;
  os << "dataset,kernel,scheme,p,norm,value,time_ms,seed\n";
  for (const LongRow& r : rows) {
    os << r.dataset << "," << r.kernel << "," << r.scheme << "," << r.p << "," << r.norm << ","
       << format_double(r.value) << "," << format_double(r.time_ms) << "," << r.seed << "\n";
  }
  return os.str();
}

json config_to_json(const ExperimentConfig& c) {
  json j;
  j["command"] = std::string(command_name(c.command));
  j["kernel"] = c.kernel;
  j["alpha"] = c.alpha;
  j["nu"] = c.nu;
  j["shape_source"] = c.shape_source == ShapeSource::kIdentity      ? "identity"
                      : c.shape_source == ShapeSource::kDiagonalFile ? "diagonal"
                                                                      : "full";
  j["shape_path"] = c.shape_path;
  json schemes = json::array();
  for (Scheme s : c.schemes) schemes.push_back(std::string(scheme_name(s)));
  j["schemes"] = schemes;
  j["p_grid"] = c.p_grid;
  j["seed"] = c.seed;
  j["lambdas"] = c.lambdas;
  j["train_fraction"] = c.train_fraction;
  j["subsample_cap"] = c.subsample_cap;
  json norms = json::array();
  for (NormKind n : c.norms) norms.push_back(std::string(norm_name(n)));
  j["norms"] = norms;
  j["out"] = c.out;
  j["data"] = {{"csv_path", c.data.csv_path},
               {"label_col", c.data.label_col},
               {"task", std::string(task_name(c.data.task))},
               {"recipe", c.data.recipe},
               {"synthetic_n", c.data.synthetic_n},
               {"synthetic_d", c.data.synthetic_d},
               {"synthetic_classes", c.data.synthetic_classes},
               {"synthetic_noise", c.data.synthetic_noise}};
  j["repeats"] = c.repeats;
  j["include_build"] = c.include_build;
  j["ece_bins"] = c.ece_bins;
  j["mapping"] = std::string(mapping_name(c.mapping));
  j["logistic"] = {{"gradient_tolerance", c.logistic.gradient_tolerance},
                   {"max_iterations", c.logistic.max_iterations},
                   {"initial_step", c.logistic.initial_step},
                   {"armijo", c.logistic.armijo}};
  j["exact_baseline"] = c.exact_baseline;
  j["distribution"] = c.distribution;
  j["dist_params"] = c.dist_params;
  j["draws"] = c.draws;
  j["ks_level"] = c.ks_level;
  j["features_csv"] = c.features_csv;
  return j;
}

DataSet load_data(const ExperimentConfig& c) {
  DataSet ds;
  if (c.data.csv_path.empty()) {
    if (c.data.task == Task::kClassification) {
      ds = make_synthetic_classification(c.data.synthetic_n, c.data.synthetic_d,
                                         c.data.synthetic_classes, c.data.synthetic_noise, c.seed);
    } else {
      ds = make_synthetic_regression(c.data.synthetic_n, c.data.synthetic_d,
                                     c.data.synthetic_noise, c.seed);
    }
  } else {
    ds = load_csv(c.data.csv_path, CsvOptions{c.data.label_col, c.data.task, ','});
  }
  ds = preprocess(std::move(ds), c.data.recipe);
  return subsample(ds, c.subsample_cap, c.seed);
}

// ORF needs p to be a multiple of d; round up and note it.
std::size_t effective_p(std::size_t p, Scheme scheme, std::size_t d, ReportBuilder& rb) {
  if (scheme != Scheme::kOrf || p % d == 0) return p;
  const std::size_t rounded = round_up_to_multiple(p, d);
  rb.notes.push_back("orf: p=" + std::to_string(p) + " rounded up to " + std::to_string(rounded) +
                     " (multiple of d=" + std::to_string(d) + ")");
  return rounded;
}

json data_summary(const DataSet& ds) {
  return {{"name", ds.name},
          {"n", ds.size()},
          {"d", ds.dim()},
          {"task", std::string(task_name(ds.task))},
          {"preprocessing", ds.record.steps}};
}

void run_approx(const ExperimentConfig& c, ReportBuilder& rb) {
  const DataSet ds = load_data(c);
  const KernelSpec spec = make_kernel(c, ds.dim());
  rb.summary["data"] = data_summary(ds);
  NormSelection sel{false, false, false};
  for (NormKind n : c.norms) {
    if (n == NormKind::kFrobenius) sel.frobenius = true;
    if (n == NormKind::kOperator) sel.op = true;
    if (n == NormKind::kNuclear) sel.nuclear = true;
  }
  auto t0 = Clock::now();
  const Matrix exact = kernel_matrix(spec, ds.x);
  const double exact_ms = elapsed_ms(t0);
  rb.summary["exact_ms"] = exact_ms;

  json slopes = json::object();
  for (Scheme scheme : c.schemes) {
    std::vector<double> ps;
    std::vector<double> frob;
    for (std::size_t p_req : c.p_grid) {
      const std::size_t p = effective_p(p_req, scheme, ds.dim(), rb);
      const SeedRecord seed{c.seed, p};
      const ErrorReport r = measure_error(spec, ds.x, exact, scheme, p, seed, sel);
      const double time_ms = r.build_ms + r.featurize_ms + r.gram_ms;
      json rec{{"kernel", r.kernel},
               {"scheme", std::string(scheme_name(scheme))},
               {"p", p},
               {"n", r.n},
               {"seed", seed.seed},
               {"stream_id", seed.stream_id},
               {"time_ms", time_ms},
               {"build_ms", r.build_ms},
               {"featurize_ms", r.featurize_ms},
               {"gram_ms", r.gram_ms},
               {"exact_ms", exact_ms}};
      rec["rel_frobenius"] = sel.frobenius ? json(r.rel_frobenius) : json(nullptr);
      rec["rel_operator"] = sel.op ? json(r.rel_operator) : json(nullptr);
      rec["rel_nuclear"] = sel.nuclear ? json(r.rel_nuclear) : json(nullptr);
      rec["metric"] = nullptr;
      rb.records.push_back(rec);
      const std::pair<bool, std::pair<const char*, double>> entries[] = {
          {sel.frobenius, {"frobenius", r.rel_frobenius}},
          {sel.op, {"operator", r.rel_operator}},
          {sel.nuclear, {"nuclear", r.rel_nuclear}}};
      for (const auto& [on, kv] : entries) {
        if (on) rb.add_row({ds.name, r.kernel, std::string(scheme_name(scheme)), p, kv.first,
                            kv.second, time_ms, seed.seed});
      }
      if (sel.frobenius) {
        ps.push_back(static_cast<double>(p));
        frob.push_back(r.rel_frobenius);
      }
    }
    if (ps.size() >= 2) slopes[std::string(scheme_name(scheme))] = log_log_slope(ps, frob);
  }
  rb.summary["frobenius_loglog_slope"] = slopes;
}

void run_bench(const ExperimentConfig& c, ReportBuilder& rb) {
  const DataSet ds = load_data(c);
  const KernelSpec spec = make_kernel(c, ds.dim());
  rb.summary["data"] = data_summary(ds);
  for (Scheme scheme : c.schemes) {
    std::vector<std::size_t> grid;
    for (std::size_t p : c.p_grid) grid.push_back(effective_p(p, scheme, ds.dim(), rb));
    BenchOptions opts;
    opts.repeats = c.repeats;
    opts.include_build = c.include_build;
    opts.seed = SeedRecord{c.seed, 0};
    const SpeedupTable t = bench_speedup(spec, ds.x, grid, scheme, opts);
    rb.summary["threads"] = t.threads;
    for (const SpeedupRow& row : t.rows) {
      rb.records.push_back({{"kernel", t.kernel},
                            {"scheme", std::string(scheme_name(scheme))},
                            {"p", row.p},
                            {"n", t.n},
                            {"seed", c.seed},
                            {"rel_frobenius", row.rel_frobenius},
                            {"rel_operator", nullptr},
                            {"rel_nuclear", nullptr},
                            {"metric", nullptr},
                            {"time_ms", row.feature_ms},
                            {"exact_ms", row.exact_ms},
                            {"build_ms", row.build_ms},
                            {"speedup_ms_ratio", row.speedup},
                            {"repeats", t.repeats},
                            {"threads", t.threads},
                            {"includes_build", t.includes_build}});
      rb.add_row({ds.name, t.kernel, std::string(scheme_name(scheme)), row.p, "frobenius",
                  row.rel_frobenius, row.feature_ms, c.seed});
    }
  }
}

json metrics_json(const Metrics& m) {
  json j{{"task", std::string(task_name(m.task))}, {"n", m.n}};
  if (m.accuracy) j["accuracy"] = *m.accuracy;
  if (m.ece) j["ece"] = *m.ece;
  if (m.r2) j["r2"] = *m.r2;
  return j;
}

void add_metric_rows(ReportBuilder& rb, const std::string& dataset, const std::string& kernel,
                     const std::string& scheme, std::size_t p, const Metrics& m, double time_ms,
                     std::uint64_t seed) {
  if (m.accuracy) rb.add_row({dataset, kernel, scheme, p, "accuracy", *m.accuracy, time_ms, seed});
  if (m.ece) rb.add_row({dataset, kernel, scheme, p, "ece", *m.ece, time_ms, seed});
  if (m.r2) rb.add_row({dataset, kernel, scheme, p, "r2", *m.r2, time_ms, seed});
}

json learner_record(const std::string& kernel, const std::string& scheme, std::size_t p,
                    std::uint64_t seed, double lambda, const std::string& loss, const Metrics& m,
                    double time_ms) {
  const double primary = m.accuracy ? *m.accuracy : (m.r2 ? *m.r2 : 0.0);
  return {{"kernel", kernel},
          {"scheme", scheme},
          {"p", p},
          {"seed", seed},
          {"lambda", lambda},
          {"loss", loss},
          {"rel_frobenius", nullptr},
          {"rel_operator", nullptr},
          {"rel_nuclear", nullptr},
          {"metric", primary},
          {"metric_name", m.accuracy ? "accuracy" : "r2"},
          {"metrics", metrics_json(m)},
          {"time_ms", time_ms}};
}

void run_learners(const ExperimentConfig& c, ReportBuilder& rb, bool logistic) {
  const DataSet ds = load_data(c);
  if (logistic && ds.task != Task::kClassification) {
    throw ParameterError("klr needs a classification dataset");
  }
  const KernelSpec spec = make_kernel(c, ds.dim());
  rb.summary["data"] = data_summary(ds);
  const TrainTestSplit split = split_train_test(ds, c.train_fraction, c.seed);
  const Task task = ds.task;
  const int classes =
      task == Task::kClassification
          ? std::max(infer_class_count(split.train.labels), infer_class_count(split.test.labels))
          : 1;
  const Matrix y_train = task == Task::kClassification
                             ? one_hot(split.train.labels, classes)
                             : Matrix(split.train.targets);
  EvalOptions eval;
  eval.ece_bins = c.ece_bins;
  eval.mapping = c.mapping;
  const std::string kernel = spec.describe();

  for (double lambda : c.lambdas) {
    if (c.exact_baseline) {
      const auto t0 = Clock::now();
      const ExactKernelModel model = fit_krr_exact(spec, split.train.x, y_train, lambda);
      const Metrics m = evaluate(model, split.test.x, split.test.eval_targets(), task, eval);
      const double ms = elapsed_ms(t0);
      rb.records.push_back(learner_record(kernel, "exact", 0, c.seed, lambda, "squared", m, ms));
      add_metric_rows(rb, ds.name, kernel, "exact", 0, m, ms, c.seed);
    }
    for (Scheme scheme : c.schemes) {
      for (std::size_t p_req : c.p_grid) {
        const std::size_t p = effective_p(p_req, scheme, ds.dim(), rb);
        const SeedRecord seed{c.seed, p};
        const auto t0 = Clock::now();
        const FeatureOperator op = build_operator(spec, scheme, p, seed);
        const FeatureMatrix phi_train = featurize(op, split.train.x);
        const FeatureMatrix phi_test = featurize(op, split.test.x);
        const double feat_ms = elapsed_ms(t0);
        const std::string sname(scheme_name(scheme));

        auto t1 = Clock::now();
        const LinearModel ridge = fit_ridge_features(phi_train, y_train, lambda);
        const Metrics mr = evaluate_scores(predict_scores(ridge, phi_test), Loss::kSquared,
                                           split.test.eval_targets(), task, eval);
        const double ridge_ms = feat_ms + elapsed_ms(t1);
        json rec = learner_record(kernel, sname, p, c.seed, lambda, "squared", mr, ridge_ms);
        rec["normal_equation_residual"] = normal_equation_residual(phi_train, y_train, ridge.theta, lambda);
        rb.records.push_back(rec);
        add_metric_rows(rb, ds.name, kernel, sname + "-ls", p, mr, ridge_ms, c.seed);

        if (logistic) {
          t1 = Clock::now();
          const LogisticFit fit =
              fit_logistic_features(phi_train, split.train.labels, classes, lambda, c.logistic);
          const Metrics ml = evaluate_scores(predict_scores(fit.model, phi_test), Loss::kLogistic,
                                             split.test.eval_targets(), task, eval);
          const double log_ms = feat_ms + elapsed_ms(t1);
          json lrec = learner_record(kernel, sname, p, c.seed, lambda, "logistic", ml, log_ms);
          lrec["converged"] = fit.status.converged;
          lrec["iterations"] = fit.status.iterations;
          lrec["gradient_norm"] = fit.status.gradient_norm;
          if (!fit.status.converged) {
            rb.notes.push_back("logistic fit for " + sname + " p=" + std::to_string(p) +
                               " stopped before the gradient tolerance (gradient norm " +
                               format_double(fit.status.gradient_norm) + ")");
          }
          rb.records.push_back(lrec);
          add_metric_rows(rb, ds.name, kernel, sname + "-logistic", p, ml, log_ms, c.seed);
        }
      }
    }
  }
}

struct SampleCheck {
  std::vector<double> draws;
  std::function<double(double)> cdf;  // empty when no analytic CDF applies
  std::string reference;
};

double param(const ExperimentConfig& c, std::size_t i, const char* name) {
  if (i >= c.dist_params.size()) {
    throw ParameterError("distribution '" + c.distribution + "' needs parameter " + name);
  }
  return c.dist_params[i];
}

void run_sample(const ExperimentConfig& c, ReportBuilder& rb) {
  RngStream rng(c.seed, 0);
  SampleCheck s;
  s.draws.reserve(c.draws);
  const std::string& dist = c.distribution;
  if (dist == "chi") {
    const double k = param(c, 0, "k");
    for (std::size_t i = 0; i < c.draws; ++i) s.draws.push_back(sample_chi(k, rng));
    s.cdf = [k](double x) { return chi_cdf(k, x); };
    s.reference = "chi(k) CDF";
  } else if (dist == "betaprime") {
    const double a = param(c, 0, "a"), b = param(c, 1, "b");
    for (std::size_t i = 0; i < c.draws; ++i) s.draws.push_back(sample_betaprime(a, b, rng));
    s.cdf = [a, b](double x) { return betaprime_cdf(a, b, x); };
    s.reference = "beta-prime CDF";
  } else if (dist == "gbp") {
    const GbpParams g{param(c, 0, "alpha"), param(c, 1, "beta"), param(c, 2, "p"), param(c, 3, "q")};
    for (std::size_t i = 0; i < c.draws; ++i) s.draws.push_back(sample_gbp(g, rng));
    s.cdf = [g](double x) { return gbp_cdf(g, x); };
    s.reference = "GBP CDF";
  } else if (dist == "stable") {
    const StableParams sp{param(c, 0, "alpha"), param(c, 1, "beta"), param(c, 2, "sigma")};
    sp.validate();
    for (std::size_t i = 0; i < c.draws; ++i) s.draws.push_back(sample_stable_cms(sp, rng));
    if (sp.alpha == 1.0 && sp.beta == 0.0) {
      s.cdf = [sp](double x) { return cauchy_cdf(sp.sigma, x); };
      s.reference = "Cauchy CDF";
    } else if (sp.alpha == 2.0) {
      s.cdf = [sp](double x) { return normal_cdf(x / (std::sqrt(2.0) * sp.sigma)); };
      s.reference = "Normal(0, 2 sigma^2) CDF";
    }
    json cf = json::array();
    for (int k = -5; k <= 5; ++k) {
      if (k == 0) continue;
      const double t = static_cast<double>(k);
      std::complex<double> acc{0.0, 0.0};
      for (double x : s.draws) acc += std::exp(std::complex<double>(0.0, t * x));
      acc /= static_cast<double>(s.draws.size());
      cf.push_back({{"t", t}, {"abs_deviation", std::abs(acc - stable_charfn(sp, t))}});
    }
    rb.summary["charfn_check"] = cf;
  } else if (dist == "mv_cauchy_norm" || dist == "mv_t_norm") {
    const auto d = static_cast<std::size_t>(param(c, 0, "d"));
    const double nu = dist == "mv_t_norm" ? param(c, 1, "nu") : 0.5;
    const ShapeMatrix shape = ShapeMatrix::identity(d);
    for (std::size_t i = 0; i < c.draws; ++i) {
      s.draws.push_back(dist == "mv_t_norm" ? sample_mv_t(nu, shape, rng).norm()
                                            : sample_mv_cauchy(shape, rng).norm());
    }
    const GbpParams g{0.5 * static_cast<double>(d), nu, 2.0, std::sqrt(2.0 * nu)};
    s.cdf = [g](double x) { return gbp_cdf(g, x); };
    s.reference = "GBP(d/2, nu, 2, sqrt(2 nu)) CDF";
  } else {
    throw ParameterError("unknown distribution '" + dist +
                         "' (chi|betaprime|gbp|stable|mv_cauchy_norm|mv_t_norm)");
  }
  json rec{{"distribution", dist},
           {"params", c.dist_params},
           {"draws", s.draws.size()},
           {"seed", c.seed},
           {"mean", mean(s.draws)},
           {"median", median(s.draws)},
           {"q99", quantile(s.draws, 0.99)},
           {"kernel", nullptr},
           {"scheme", nullptr},
           {"p", nullptr},
           {"rel_frobenius", nullptr},
           {"rel_operator", nullptr},
           {"rel_nuclear", nullptr},
           {"time_ms", nullptr}};
  if (s.cdf) {
    const KsResult ks = ks_one_sample(s.draws, s.cdf);
    rec["ks_statistic"] = ks.statistic;
    rec["ks_p_value"] = ks.p_value;
    rec["ks_reference"] = s.reference;
    rec["ks_pass"] = ks.passes(c.ks_level);
    rec["metric"] = ks.p_value;
    rb.add_row({"samples", dist, "", 0, "ks_p_value", ks.p_value, 0.0, c.seed});
  } else {
    rec["metric"] = nullptr;
  }
  rb.records.push_back(rec);
}

void run_features(const ExperimentConfig& c, ReportBuilder& rb) {
  const DataSet ds = load_data(c);
  const KernelSpec spec = make_kernel(c, ds.dim());
  rb.summary["data"] = data_summary(ds);
  for (Scheme scheme : c.schemes) {
    for (std::size_t p_req : c.p_grid) {
      const std::size_t p = effective_p(p_req, scheme, ds.dim(), rb);
      const SeedRecord seed{c.seed, p};
      const auto t0 = Clock::now();
      const FeatureOperator op = build_operator(spec, scheme, p, seed);
      const double ms = elapsed_ms(t0);
      json rec{{"kernel", spec.describe()},
               {"scheme", std::string(scheme_name(scheme))},
               {"p", p},
               {"seed", seed.seed},
               {"stream_id", seed.stream_id},
               {"rel_frobenius", nullptr},
               {"rel_operator", nullptr},
               {"rel_nuclear", nullptr},
               {"metric", nullptr},
               {"time_ms", ms},
               {"operator", detail::operator_to_json(op)}};
      rb.records.push_back(rec);
      if (!c.out.empty()) {
        write_file_atomic(c.out + "." + std::string(scheme_name(scheme)) + ".p" +
                              std::to_string(p) + ".operator.json",
                          serialize_operator(op));
      }
      if (!c.features_csv.empty()) {
        const FeatureMatrix phi = featurize(op, ds.x);
        std::ostringstream os;
        for (Eigen::Index i = 0; i < phi.phi.rows(); ++i) {
          for (Eigen::Index j = 0; j < phi.phi.cols(); ++j) {
            os << (j ? "," : "") << format_double(phi.phi(i, j));
          }
          os << "\n";
        }
        write_file_atomic(c.features_csv, os.str());
      }
    }
  }
}

}  // namespace

std::string_view command_name(Command command) noexcept {
  switch (command) {
    case Command::kSample: return "sample";
    case Command::kFeatures: return "features";
    case Command::kApprox: return "approx";
    case Command::kBench: return "bench";
    case Command::kKrr: return "krr";
    case Command::kKlr: return "klr";
  }
  return "unknown";
}

KernelSpec make_kernel(const ExperimentConfig& config, std::size_t dim) {
  const KernelFamily family = parse_family(config.kernel);
  if (family == KernelFamily::kL1Laplacian) return KernelSpec::l1_laplacian(dim);
  ShapeMatrix shape = load_shape_matrix(config.shape_source, config.shape_path, dim);
  switch (family) {
    case KernelFamily::kGaussian: return KernelSpec::gaussian(shape);
    case KernelFamily::kLaplacian: return KernelSpec::laplacian(shape);
    case KernelFamily::kExpPower: return KernelSpec::exp_power(config.alpha, shape);
    case KernelFamily::kMatern: return KernelSpec::matern(config.nu, shape);
    case KernelFamily::kL1Laplacian: break;
  }
  return KernelSpec::l1_laplacian(dim);
}

void write_file_atomic(const std::string& path, const std::string& contents) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream os(tmp, std::ios::binary | std::ios::trunc);
    if (!os) throw IoError("cannot open " + tmp + " for writing");
    os << contents;
    if (!os) throw IoError("failed writing " + tmp);
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) throw IoError("cannot rename " + tmp + " to " + path + ": " + ec.message());
}

ExperimentReport run_experiment(const ExperimentConfig& config) {
  ReportBuilder rb;
  json doc;
  doc["schema"] = "rfkit.report";
  doc["schema_version"] = kReportSchemaVersion;
  doc["command"] = std::string(command_name(config.command));
  doc["config"] = config_to_json(config);
  doc["seeds"] = {{"seed", config.seed}, {"stream_ids", "p for feature operators"}};

  ExperimentReport report;
  auto finish = [&](bool ok, const std::string& error, const std::string& error_class) {
    doc["status"] = ok ? "ok" : "failed";
    if (!ok) {
      doc["error"] = error;
      doc["error_class"] = error_class;
    }
    doc["records"] = rb.records;
    doc["summary"] = rb.summary;
    doc["notes"] = rb.notes;
    report.ok = ok;
    report.json = doc.dump(2);
    report.csv = render_csv(rb.rows);
    report.notes = rb.notes;
    if (!config.out.empty()) {
      write_file_atomic(config.out + ".json", report.json);
      write_file_atomic(config.out + ".csv", report.csv);
    }
  };

  try {
    switch (config.command) {
      case Command::kSample: run_sample(config, rb); break;
      case Command::kFeatures: run_features(config, rb); break;
      case Command::kApprox: run_approx(config, rb); break;
      case Command::kBench: run_bench(config, rb); break;
      case Command::kKrr: run_learners(config, rb, false); break;
      case Command::kKlr: run_learners(config, rb, true); break;
    }
  } catch (const Error& e) {
    finish(false, e.what(), error_class_name(e.error_class()));
    throw;
  }
  finish(true, "", "");
  return report;
}

}  // namespace rfkit
