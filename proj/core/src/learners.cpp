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

#include "rfkit/learners.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <functional>

#include <Eigen/Cholesky>

#include "json_io.hpp"
#include "rfkit/errors.hpp"

namespace rfkit {

namespace {

constexpr Eigen::Index kCgPanelRows = 256;
constexpr double kMinRcond = 1e-14;

void check_labels(const std::vector<int>& labels, int classes) {
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (labels[i] < 0 || labels[i] >= classes) {
      throw ParameterError("label " + std::to_string(labels[i]) + " at row " + std::to_string(i) +
                           " is outside [0, " + std::to_string(classes) + ")");
    }
  }
}

// (K + lambda I) V computed panel by panel without storing K.
Matrix kernel_matvec(const KernelSpec& spec, const RowMatrix& x, const Matrix& v, double lambda) {
  const Eigen::Index n = x.rows();
  Matrix out(n, v.cols());
  for (Eigen::Index begin = 0; begin < n; begin += kCgPanelRows) {
    const Eigen::Index rows = std::min(kCgPanelRows, n - begin);
    const RowMatrix panel_x = x.middleRows(begin, rows);
    out.middleRows(begin, rows) = kernel_matrix(spec, panel_x, x) * v;
  }
  out += lambda * v;
  return out;
}

Matrix solve_krr_cg(const KernelSpec& spec, const RowMatrix& x, const Matrix& y, double lambda,
                    const KrrOptions& options) {
  Matrix a = Matrix::Zero(y.rows(), y.cols());
  Matrix r = y;
  Matrix p = r;
  Vector rs = r.colwise().squaredNorm().transpose();
  const Vector target = (options.cg_tolerance * y.colwise().norm()).transpose();
  for (std::size_t it = 0; it < options.cg_max_iterations; ++it) {
    if ((rs.cwiseSqrt().array() <= target.array()).all()) return a;
    const Matrix ap = kernel_matvec(spec, x, p, lambda);
    for (Eigen::Index c = 0; c < y.cols(); ++c) {
      if (std::sqrt(rs[c]) <= target[c]) continue;
      const double step = rs[c] / p.col(c).dot(ap.col(c));
      a.col(c) += step * p.col(c);
      r.col(c) -= step * ap.col(c);
      const double rs_new = r.col(c).squaredNorm();
      p.col(c) = r.col(c) + (rs_new / rs[c]) * p.col(c);
      rs[c] = rs_new;
    }
  }
  if ((rs.cwiseSqrt().array() <= target.array()).all()) return a;
  throw NumericalError("conjugate gradient did not converge for the kernel system; increase "
                       "lambda or the iteration limit");
}

}  // namespace

std::string_view task_name(Task task) noexcept {
  return task == Task::kClassification ? "classification" : "regression";
}

std::string_view mapping_name(ProbabilityMapping mapping) noexcept {
  return mapping == ProbabilityMapping::kSoftmax ? "softmax" : "clip_renormalize";
}

Task parse_task(std::string_view name) {
  if (name == "classification") return Task::kClassification;
  if (name == "regression") return Task::kRegression;
  throw ParameterError("unknown task '" + std::string(name) + "' (classification|regression)");
}

ProbabilityMapping parse_mapping(std::string_view name) {
  if (name == "softmax") return ProbabilityMapping::kSoftmax;
  if (name == "clip_renormalize" || name == "clip") return ProbabilityMapping::kClipRenormalize;
  throw ParameterError("unknown probability mapping '" + std::string(name) + "'");
}

int infer_class_count(const std::vector<int>& labels) {
  int top = -1;
  for (int l : labels) {
    if (l < 0) throw ParameterError("class labels must be non-negative integers");
    top = std::max(top, l);
  }
  return top + 1;
}

Matrix one_hot(const std::vector<int>& labels, int classes) {
  check_labels(labels, classes);
  Matrix y = Matrix::Zero(static_cast<Eigen::Index>(labels.size()), classes);
  for (std::size_t i = 0; i < labels.size(); ++i) y(static_cast<Eigen::Index>(i), labels[i]) = 1.0;
  return y;
}

ExactKernelModel fit_krr_exact(const KernelSpec& spec, const RowMatrix& x, const Matrix& y,
                               double lambda, const KrrOptions& options) {
  if (!(lambda >= 0.0)) throw ParameterError("ridge lambda must be >= 0");
  if (x.rows() != y.rows()) {
    throw DimensionError("X has " + std::to_string(x.rows()) + " rows but Y has " +
                         std::to_string(y.rows()));
  }
  ExactKernelModel model{Matrix(), x, spec, lambda};
  if (static_cast<std::size_t>(x.rows()) > options.direct_cap) {
    model.alphas = solve_krr_cg(spec, x, y, lambda, options);
    return model;
  }
  Matrix k = kernel_matrix(spec, x);
  k.diagonal().array() += lambda;
  Eigen::LLT<Matrix> llt(k);
  if (llt.info() != Eigen::Success || llt.rcond() < kMinRcond) {
    throw NumericalError(lambda == 0.0
                             ? "kernel matrix is numerically singular at lambda = 0; use lambda > 0"
                             : "K + lambda I is numerically singular");
  }
  model.alphas = llt.solve(y);
  return model;
}

LinearModel fit_ridge_features(const FeatureMatrix& phi, const Matrix& y, double lambda) {
  if (!(lambda >= 0.0)) throw ParameterError("ridge lambda must be >= 0");
  const RowMatrix& f = phi.phi;
  if (f.rows() != y.rows()) {
    throw DimensionError("feature matrix has " + std::to_string(f.rows()) + " rows but Y has " +
                         std::to_string(y.rows()));
  }
  LinearModel model;
  model.lambda = lambda;
  model.loss = Loss::kSquared;
  model.operator_id = phi.operator_id;
  const bool primal = f.cols() <= f.rows();
  Matrix a;
  if (primal) {
    a = Matrix::Zero(f.cols(), f.cols());
    a.selfadjointView<Eigen::Lower>().rankUpdate(f.transpose());
  } else {
    a = Matrix::Zero(f.rows(), f.rows());
    a.selfadjointView<Eigen::Lower>().rankUpdate(f);
  }
  a.diagonal().array() += lambda;
  Eigen::LLT<Matrix, Eigen::Lower> llt(a);
  if (llt.info() != Eigen::Success || llt.rcond() < kMinRcond) {
    throw NumericalError(lambda == 0.0
                             ? "feature system is rank-deficient at lambda = 0; use lambda > 0"
                             : "regularized feature system is numerically singular");
  }
  model.theta = primal ? Matrix(llt.solve(f.transpose() * y)) : Matrix(f.transpose() * llt.solve(y));
  return model;
}

double normal_equation_residual(const FeatureMatrix& phi, const Matrix& y, const Matrix& theta,
                                double lambda) {
  const RowMatrix& f = phi.phi;
  const Matrix rhs = f.transpose() * y;
  const Matrix res = f.transpose() * (f * theta - y) + lambda * theta;
  return res.norm() / std::max(1.0, rhs.norm());
}

Matrix softmax_rows(const Matrix& scores) {
  Matrix out = scores;
  for (Eigen::Index i = 0; i < out.rows(); ++i) {
    const double top = out.row(i).maxCoeff();
    out.row(i) = (out.row(i).array() - top).exp();
    out.row(i) /= out.row(i).sum();
  }
  return out;
}

Matrix clip_renormalize_rows(const Matrix& scores) {
  Matrix out = scores.cwiseMax(0.0).cwiseMin(1.0);
  for (Eigen::Index i = 0; i < out.rows(); ++i) {
    const double s = out.row(i).sum();
    if (s > 0.0) {
      out.row(i) /= s;
    } else {
      out.row(i).setConstant(1.0 / static_cast<double>(out.cols()));
    }
  }
  return out;
}

namespace {

// Returns mean cross-entropy; fills probabilities.
double cross_entropy(const Matrix& scores, const std::vector<int>& labels, Matrix* probs) {
  double total = 0.0;
  if (probs) probs->resize(scores.rows(), scores.cols());
  for (Eigen::Index i = 0; i < scores.rows(); ++i) {
    const double top = scores.row(i).maxCoeff();
    const double lse = top + std::log((scores.row(i).array() - top).exp().sum());
    total += lse - scores(i, labels[static_cast<std::size_t>(i)]);
    if (probs) probs->row(i) = (scores.row(i).array() - lse).exp();
  }
  return total / static_cast<double>(scores.rows());
}

}  // namespace

double logistic_objective(const FeatureMatrix& phi, const std::vector<int>& labels,
                          const Matrix& theta, double lambda) {
  const Matrix scores = phi.phi * theta;
  return cross_entropy(scores, labels, nullptr) + 0.5 * lambda * theta.squaredNorm();
}

Matrix logistic_gradient(const FeatureMatrix& phi, const std::vector<int>& labels,
                         const Matrix& theta, double lambda) {
  const Matrix scores = phi.phi * theta;
  Matrix probs;
  cross_entropy(scores, labels, &probs);
  for (std::size_t i = 0; i < labels.size(); ++i) probs(static_cast<Eigen::Index>(i), labels[i]) -= 1.0;
  return phi.phi.transpose() * probs / static_cast<double>(labels.size()) + lambda * theta;
}

LogisticFit fit_logistic_features(const FeatureMatrix& phi, const std::vector<int>& labels,
                                  int classes, double lambda, const LogisticOptions& opts) {
  if (!(lambda >= 0.0)) throw ParameterError("ridge lambda must be >= 0");
  if (classes < 2) throw ParameterError("logistic regression needs at least two classes");
  if (static_cast<std::size_t>(phi.phi.rows()) != labels.size() || labels.empty()) {
    throw DimensionError("feature matrix and label vector sizes differ");
  }
  check_labels(labels, classes);
  const RowMatrix& f = phi.phi;
  const double inv_n = 1.0 / static_cast<double>(labels.size());

  LogisticFit fit;
  fit.model.loss = Loss::kLogistic;
  fit.model.lambda = lambda;
  fit.model.operator_id = phi.operator_id;
  Matrix theta = Matrix::Zero(f.cols(), classes);
  Matrix scores = Matrix::Zero(f.rows(), classes);
  Matrix probs;
  double objective = cross_entropy(scores, labels, &probs);
  fit.status.objective_history.push_back(objective);
  double step = opts.initial_step;
  Matrix prev_theta;
  Matrix prev_grad;

  for (std::size_t it = 0;; ++it) {
    for (std::size_t i = 0; i < labels.size(); ++i) probs(static_cast<Eigen::Index>(i), labels[i]) -= 1.0;
    const Matrix grad = f.transpose() * probs * inv_n + lambda * theta;
    const double grad_sq = grad.squaredNorm();
    fit.status.gradient_norm = std::sqrt(grad_sq);
    fit.status.iterations = it;
    if (fit.status.gradient_norm < opts.gradient_tolerance) {
      fit.status.converged = true;
      break;
    }
    if (it >= opts.max_iterations) break;

    // Scores are linear in theta, so each trial step costs O(n C).
    const Matrix grad_scores = f * grad;
    const double theta_sq = theta.squaredNorm();
    const double theta_dot_grad = (theta.array() * grad.array()).sum();
    // Barzilai-Borwein trial step, falling back to doubling the last one.
    double trial = step * 2.0;
    if (it > 0) {
      const double sy = ((theta - prev_theta).array() * (grad - prev_grad).array()).sum();
      const double ss = (theta - prev_theta).squaredNorm();
      if (sy > 0.0) trial = ss / sy;
    }
    step = std::min(trial, 1e6);
    Matrix trial_scores;
    Matrix trial_probs;
    double trial_obj = 0.0;
    for (;;) {
      trial_scores = scores - step * grad_scores;
      const double reg = theta_sq - 2.0 * step * theta_dot_grad + step * step * grad_sq;
      trial_obj = cross_entropy(trial_scores, labels, &trial_probs) + 0.5 * lambda * reg;
      if (trial_obj <= objective - opts.armijo * step * grad_sq) break;
      step *= 0.5;
      if (step < 1e-20) break;
    }
    if (!(trial_obj <= objective)) break;  // no further decrease available
    prev_theta = theta;
    prev_grad = grad;
    theta -= step * grad;
    scores = std::move(trial_scores);
    probs = std::move(trial_probs);
    objective = trial_obj;
    fit.status.objective_history.push_back(objective);
  }
  fit.model.theta = std::move(theta);
  return fit;
}

Matrix predict_scores(const LinearModel& model, const FeatureMatrix& phi) {
  if (phi.phi.cols() != model.theta.rows()) {
    throw DimensionError("feature width " + std::to_string(phi.phi.cols()) +
                         " does not match model width " + std::to_string(model.theta.rows()));
  }
  return phi.phi * model.theta;
}

Matrix predict_scores(const ExactKernelModel& model, const RowMatrix& x) {
  return kernel_matrix(model.spec, x, model.train_x) * model.alphas;
}

Matrix class_probabilities(const Matrix& scores, Loss loss, ProbabilityMapping mapping) {
  if (loss == Loss::kLogistic || mapping == ProbabilityMapping::kSoftmax) return softmax_rows(scores);
  return clip_renormalize_rows(scores);
}

double expected_calibration_error(const Matrix& probabilities, const std::vector<int>& labels,
                                  std::size_t bins) {
  if (bins == 0) throw ParameterError("ECE needs at least one bin");
  if (static_cast<std::size_t>(probabilities.rows()) != labels.size() || labels.empty()) {
    throw DimensionError("probability rows and labels differ in count");
  }
  std::vector<double> conf_sum(bins, 0.0);
  std::vector<double> correct(bins, 0.0);
  std::vector<std::size_t> count(bins, 0);
  for (Eigen::Index i = 0; i < probabilities.rows(); ++i) {
    Eigen::Index arg = 0;
    const double conf = probabilities.row(i).maxCoeff(&arg);
    auto b = static_cast<std::ptrdiff_t>(std::ceil(conf * static_cast<double>(bins))) - 1;
    b = std::clamp<std::ptrdiff_t>(b, 0, static_cast<std::ptrdiff_t>(bins) - 1);
    const auto bi = static_cast<std::size_t>(b);
    conf_sum[bi] += conf;
    correct[bi] += arg == labels[static_cast<std::size_t>(i)] ? 1.0 : 0.0;
    ++count[bi];
  }
  const double n = static_cast<double>(labels.size());
  double ece = 0.0;
  for (std::size_t b = 0; b < bins; ++b) {
    if (count[b] == 0) continue;
    const double c = static_cast<double>(count[b]);
    ece += (c / n) * std::abs(correct[b] / c - conf_sum[b] / c);
  }
  return ece;
}

double accuracy(const Matrix& scores, const std::vector<int>& labels) {
  if (static_cast<std::size_t>(scores.rows()) != labels.size() || labels.empty()) {
    throw DimensionError("score rows and labels differ in count");
  }
  std::size_t hits = 0;
  for (Eigen::Index i = 0; i < scores.rows(); ++i) {
    Eigen::Index arg = 0;
    scores.row(i).maxCoeff(&arg);
    if (arg == labels[static_cast<std::size_t>(i)]) ++hits;
  }
  return static_cast<double>(hits) / static_cast<double>(labels.size());
}

double r_squared(const Vector& predictions, const Vector& targets) {
  if (predictions.size() != targets.size() || targets.size() == 0) {
    throw DimensionError("prediction and target lengths differ");
  }
  const double mu = targets.mean();
  const double sst = (targets.array() - mu).square().sum();
  if (!(sst > 0.0)) throw DomainError("R^2 is undefined for constant targets");
  const double sse = (predictions - targets).squaredNorm();
  return 1.0 - sse / sst;
}

Metrics evaluate_scores(const Matrix& scores, Loss loss, const EvalTargets& y_test, Task task,
                        const EvalOptions& options) {
  Metrics m;
  m.task = task;
  m.n = static_cast<std::size_t>(scores.rows());
  if (task == Task::kClassification) {
    m.accuracy = accuracy(scores, y_test.labels);
    m.ece = expected_calibration_error(class_probabilities(scores, loss, options.mapping),
                                       y_test.labels, options.ece_bins);
  } else {
    if (scores.cols() != 1) throw DimensionError("regression models must have a single output");
    m.r2 = r_squared(scores.col(0), y_test.targets);
  }
  return m;
}

Metrics evaluate(const LinearModel& model, const FeatureOperator& op, const RowMatrix& x_test,
                 const EvalTargets& y_test, Task task, const EvalOptions& options) {
  return evaluate_scores(predict_scores(model, featurize(op, x_test)), model.loss, y_test, task,
                         options);
}

Metrics evaluate(const ExactKernelModel& model, const RowMatrix& x_test, const EvalTargets& y_test,
                 Task task, const EvalOptions& options) {
  return evaluate_scores(predict_scores(model, x_test), Loss::kSquared, y_test, task, options);
}

// ---- model files ----------------------------------------------------------

namespace {

constexpr char kMagic[8] = {'R', 'F', 'K', 'M', 'O', 'D', 'E', 'L'};
constexpr std::uint32_t kModelVersion = 1;

static_assert(std::endian::native == std::endian::little,
              "model files store little-endian doubles");

void write_u64(std::ostream& os, std::uint64_t v) { os.write(reinterpret_cast<const char*>(&v), 8); }
void write_u32(std::ostream& os, std::uint32_t v) { os.write(reinterpret_cast<const char*>(&v), 4); }

std::uint64_t read_u64(std::istream& is) {
  std::uint64_t v = 0;
  is.read(reinterpret_cast<char*>(&v), 8);
  return v;
}
std::uint32_t read_u32(std::istream& is) {
  std::uint32_t v = 0;
  is.read(reinterpret_cast<char*>(&v), 4);
  return v;
}

template <typename Mat>
void write_matrix(std::ostream& os, const Mat& m) {
  // Column-major payload for Matrix, row-major for RowMatrix; the header
  // records the shape and the reader uses the same storage order.
  os.write(reinterpret_cast<const char*>(m.data()),
           static_cast<std::streamsize>(sizeof(double) * static_cast<std::size_t>(m.size())));
}

template <typename Mat>
void read_matrix(std::istream& is, Mat& m, Eigen::Index rows, Eigen::Index cols) {
  m.resize(rows, cols);
  is.read(reinterpret_cast<char*>(m.data()),
          static_cast<std::streamsize>(sizeof(double) * static_cast<std::size_t>(m.size())));
}

void write_file(const std::string& path, const nlohmann::json& header,
                const std::function<void(std::ostream&)>& payload) {
  std::ofstream os(path, std::ios::binary | std::ios::trunc);
  if (!os) throw IoError("cannot open model file for writing: " + path);
  os.write(kMagic, sizeof(kMagic));
  write_u32(os, kModelVersion);
  const std::string text = header.dump();
  write_u64(os, text.size());
  os.write(text.data(), static_cast<std::streamsize>(text.size()));
  payload(os);
  if (!os) throw IoError("failed writing model file: " + path);
}

nlohmann::json read_header(std::istream& is, const std::string& path) {
  char magic[sizeof(kMagic)] = {};
  is.read(magic, sizeof(magic));
  if (!is || std::memcmp(magic, kMagic, sizeof(kMagic)) != 0) {
    throw ParseError("not an rfkit model file: " + path);
  }
  const std::uint32_t version = read_u32(is);
  if (version != kModelVersion) {
    throw ParseError("unsupported model file version " + std::to_string(version));
  }
  const std::uint64_t len = read_u64(is);
  if (!is || len > (1u << 30)) throw ParseError("corrupt model header in " + path);
  std::string text(len, '\0');
  is.read(text.data(), static_cast<std::streamsize>(len));
  try {
    return nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("corrupt model header: ") + e.what());
  }
}

}  // namespace

void save_linear_model(const std::string& path, const LinearModel& model, const FeatureOperator& op) {
  if (static_cast<std::size_t>(model.theta.rows()) != op.feature_dim()) {
    throw DimensionError("model width does not match the feature operator");
  }
  nlohmann::json header;
  header["kind"] = "linear";
  header["operator"] = detail::operator_to_json(op);
  header["lambda"] = model.lambda;
  header["loss"] = model.loss == Loss::kLogistic ? "logistic" : "squared";
  header["rows"] = model.theta.rows();
  header["cols"] = model.theta.cols();
  write_file(path, header, [&](std::ostream& os) { write_matrix(os, model.theta); });
}

LoadedLinearModel load_linear_model(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw IoError("cannot open model file: " + path);
  const nlohmann::json header = read_header(is, path);
  try {
    if (header.at("kind").get<std::string>() != "linear") throw ParseError("not a linear model file");
    FeatureOperator op = detail::operator_from_json(header.at("operator"));
    LinearModel model;
    model.lambda = header.at("lambda").get<double>();
    model.loss = header.at("loss").get<std::string>() == "logistic" ? Loss::kLogistic : Loss::kSquared;
    model.operator_id = op.id();
    read_matrix(is, model.theta, header.at("rows").get<Eigen::Index>(),
                header.at("cols").get<Eigen::Index>());
    if (!is) throw ParseError("truncated model payload in " + path);
    return {std::move(model), std::move(op)};
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("corrupt model header: ") + e.what());
  }
}

void save_exact_model(const std::string& path, const ExactKernelModel& model) {
  nlohmann::json header;
  header["kind"] = "exact";
  header["kernel"] = detail::kernel_to_json(model.spec);
  header["lambda"] = model.lambda;
  header["n"] = model.train_x.rows();
  header["d"] = model.train_x.cols();
  header["outputs"] = model.alphas.cols();
  write_file(path, header, [&](std::ostream& os) {
    write_matrix(os, model.train_x);
    write_matrix(os, model.alphas);
  });
}

ExactKernelModel load_exact_model(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw IoError("cannot open model file: " + path);
  const nlohmann::json header = read_header(is, path);
  try {
    if (header.at("kind").get<std::string>() != "exact") throw ParseError("not an exact model file");
    ExactKernelModel model{Matrix(), RowMatrix(), detail::kernel_from_json(header.at("kernel")),
                           header.at("lambda").get<double>()};
    const auto n = header.at("n").get<Eigen::Index>();
    read_matrix(is, model.train_x, n, header.at("d").get<Eigen::Index>());
    read_matrix(is, model.alphas, n, header.at("outputs").get<Eigen::Index>());
    if (!is) throw ParseError("truncated model payload in " + path);
    return model;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("corrupt model header: ") + e.what());
  }
}

}  // namespace rfkit
