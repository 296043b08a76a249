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

#ifndef RFKIT_EXPERIMENT_HPP_
#define RFKIT_EXPERIMENT_HPP_

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "rfkit/dataset.hpp"
#include "rfkit/feature_maps.hpp"
#include "rfkit/harness.hpp"
#include "rfkit/learners.hpp"

namespace rfkit {

enum class Command { kSample, kFeatures, kApprox, kBench, kKrr, kKlr };

std::string_view command_name(Command command) noexcept;

struct DataSource {
  std::string csv_path;  // empty: synthetic data
  std::string label_col;
  Task task = Task::kClassification;
  std::string recipe = "none";
  std::size_t synthetic_n = 1000;
  std::size_t synthetic_d = 16;
  int synthetic_classes = 10;
  double synthetic_noise = 0.1;
};

struct ExperimentConfig {
  Command command = Command::kApprox;

  std::string kernel = "laplacian";
  double alpha = 1.0;  // exp_power only
  double nu = 1.5;     // matern only
  ShapeSource shape_source = ShapeSource::kIdentity;
  std::string shape_path;

  std::vector<Scheme> schemes{Scheme::kRff};
  std::vector<std::size_t> p_grid{1024};
  std::uint64_t seed = 0;
  std::vector<double> lambdas{1e-3};
  double train_fraction = 0.8;
  std::size_t subsample_cap = 10000;
  std::vector<NormKind> norms{NormKind::kFrobenius, NormKind::kOperator, NormKind::kNuclear};
  std::string out;  // writes <out>.json and <out>.csv when non-empty

  DataSource data;

  // bench
  std::size_t repeats = 3;
  bool include_build = false;

  // krr / klr
  std::size_t ece_bins = 15;
  ProbabilityMapping mapping = ProbabilityMapping::kClipRenormalize;
  LogisticOptions logistic;
  bool exact_baseline = true;

  // sample
  std::string distribution = "chi";
  std::vector<double> dist_params{3.0};
  std::size_t draws = 100000;
  double ks_level = 0.01;

  // features: optional CSV of the feature matrix for the loaded data
  std::string features_csv;
};

struct ExperimentReport {
  bool ok = true;
  std::string json;  // schema "rfkit.report"
  std::string csv;   // long format: dataset,kernel,scheme,p,norm,value,time_ms,seed
  std::vector<std::string> notes;
};

// Runs one experiment. Reports embed the full configuration and seeds; two
// runs with the same config differ only in *_ms timing fields. On error the
// partial report (status "failed") is still written, then the error is
// rethrown.
ExperimentReport run_experiment(const ExperimentConfig& config);

KernelSpec make_kernel(const ExperimentConfig& config, std::size_t dim);

// Writes via a temporary file and rename.
void write_file_atomic(const std::string& path, const std::string& contents);

}  // namespace rfkit

#endif  // RFKIT_EXPERIMENT_HPP_
