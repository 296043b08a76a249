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

#ifndef RFKIT_LEARNERS_HPP_
#define RFKIT_LEARNERS_HPP_

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "rfkit/feature_maps.hpp"
#include "rfkit/kernels.hpp"
#include "rfkit/types.hpp"

namespace rfkit {

enum class Task { kClassification, kRegression };
enum class Loss { kSquared, kLogistic };

// How squared-loss scores become class probabilities for calibration metrics.
enum class ProbabilityMapping {
  kClipRenormalize,  // clip to [0, 1] then divide by the row sum
  kSoftmax,
};

std::string_view task_name(Task task) noexcept;
Task parse_task(std::string_view name);
std::string_view mapping_name(ProbabilityMapping mapping) noexcept;
ProbabilityMapping parse_mapping(std::string_view name);

/// Linear model in random-feature space: scores = Phi theta, one column per
/// output (class, or a single regression target).
struct LinearModel {
  Matrix theta;
  double lambda = 0.0;
  Loss loss = Loss::kSquared;
  std::string operator_id;
};

/// Exact kernel expansion f(x) = sum_i alpha_i K(x, x_i).
struct ExactKernelModel {
  Matrix alphas;
  RowMatrix train_x;
  KernelSpec spec;
  double lambda = 0.0;
};

Matrix one_hot(const std::vector<int>& labels, int classes);
int infer_class_count(const std::vector<int>& labels);

struct KrrOptions {
  // Above this many training points the solver switches to matrix-free CG.
  std::size_t direct_cap = 20000;
  double cg_tolerance = 1e-10;
  std::size_t cg_max_iterations = 5000;
};

// Solves (K + lambda I) A = Y.
ExactKernelModel fit_krr_exact(const KernelSpec& spec, const RowMatrix& x, const Matrix& y,
                               double lambda, const KrrOptions& options = {});

// theta = (Phi^T Phi + lambda I)^-1 Phi^T Y. When 2p exceeds n the equivalent
// dual system (Phi Phi^T + lambda I) is factored instead.
LinearModel fit_ridge_features(const FeatureMatrix& phi, const Matrix& y, double lambda);

// ||Phi^T (Phi theta - Y) + lambda theta||_F / max(1, ||Phi^T Y||_F).
double normal_equation_residual(const FeatureMatrix& phi, const Matrix& y, const Matrix& theta,
                                double lambda);

struct LogisticOptions {
  double gradient_tolerance = 1e-6;
  std::size_t max_iterations = 5000;
  double initial_step = 1.0;
  double armijo = 1e-4;
};

struct LogisticStatus {
  bool converged = false;
  std::size_t iterations = 0;
  double gradient_norm = 0.0;
  std::vector<double> objective_history;  // one entry per accepted step, plus the start
};

struct LogisticFit {
  LinearModel model;
  LogisticStatus status;
};

// Mean softmax cross-entropy + (lambda / 2) ||theta||_F^2.
double logistic_objective(const FeatureMatrix& phi, const std::vector<int>& labels,
                          const Matrix& theta, double lambda);
Matrix logistic_gradient(const FeatureMatrix& phi, const std::vector<int>& labels,
                         const Matrix& theta, double lambda);

// Full-batch gradient descent: Barzilai-Borwein trial steps with Armijo
// backtracking, so the objective never increases between accepted steps.
LogisticFit fit_logistic_features(const FeatureMatrix& phi, const std::vector<int>& labels,
                                  int classes, double lambda, const LogisticOptions& opts = {});

Matrix softmax_rows(const Matrix& scores);
Matrix clip_renormalize_rows(const Matrix& scores);

Matrix predict_scores(const LinearModel& model, const FeatureMatrix& phi);
Matrix predict_scores(const ExactKernelModel& model, const RowMatrix& x);

// Row probabilities for a model's scores: softmax for logistic models, the
// chosen mapping for squared-loss models.
Matrix class_probabilities(const Matrix& scores, Loss loss, ProbabilityMapping mapping);

/// Equal-width confidence bins (k/B, (k+1)/B] on the max-class probability;
/// ECE = sum_b (|b| / n) |accuracy_b - confidence_b|.
double expected_calibration_error(const Matrix& probabilities, const std::vector<int>& labels,
                                  std::size_t bins = 15);

double accuracy(const Matrix& scores, const std::vector<int>& labels);
double r_squared(const Vector& predictions, const Vector& targets);

struct Metrics {
  Task task = Task::kClassification;
  std::size_t n = 0;
  std::optional<double> accuracy;
  std::optional<double> ece;
  std::optional<double> r2;
};

struct EvalTargets {
  std::vector<int> labels;  // classification
  Vector targets;           // regression
};

struct EvalOptions {
  std::size_t ece_bins = 15;
  ProbabilityMapping mapping = ProbabilityMapping::kClipRenormalize;
};

Metrics evaluate(const LinearModel& model, const FeatureOperator& op, const RowMatrix& x_test,
                 const EvalTargets& y_test, Task task, const EvalOptions& options = {});
Metrics evaluate(const ExactKernelModel& model, const RowMatrix& x_test, const EvalTargets& y_test,
                 Task task, const EvalOptions& options = {});
Metrics evaluate_scores(const Matrix& scores, Loss loss, const EvalTargets& y_test, Task task,
                        const EvalOptions& options = {});

// Versioned binary model files: magic, version, JSON header (operator seed
// record or kernel spec, lambda, loss, shape), then little-endian doubles.
void save_linear_model(const std::string& path, const LinearModel& model,
                       const FeatureOperator& op);
struct LoadedLinearModel {
  LinearModel model;
  FeatureOperator op;
};
LoadedLinearModel load_linear_model(const std::string& path);

void save_exact_model(const std::string& path, const ExactKernelModel& model);
ExactKernelModel load_exact_model(const std::string& path);

}  // namespace rfkit

#endif  // RFKIT_LEARNERS_HPP_
