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

#ifndef RFKIT_DATASET_HPP_
#define RFKIT_DATASET_HPP_

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "rfkit/learners.hpp"
#include "rfkit/multivariate.hpp"
#include "rfkit/types.hpp"

namespace rfkit {

struct PreprocessRecord {
  bool log_target = false;
  bool centered = false;
  bool standard_scaled = false;
  bool unit_norm = false;
  std::vector<std::string> steps;  // in application order
};

struct DataSet {
  std::string name;
  RowMatrix x;
  std::vector<int> labels;  // classification
  Vector targets;           // regression
  Task task = Task::kClassification;
  PreprocessRecord record;

  std::size_t size() const noexcept { return static_cast<std::size_t>(x.rows()); }
  std::size_t dim() const noexcept { return static_cast<std::size_t>(x.cols()); }
  EvalTargets eval_targets() const { return {labels, targets}; }
};

struct CsvOptions {
  // Column name, or a zero-based index when the string is all digits. "-1"
  // or empty selects the last column.
  std::string label_col;
  Task task = Task::kClassification;
  char delimiter = ',';
};

// Header row required; every cell numeric and finite. Errors name the
// 1-based line number and the column.
DataSet load_csv(const std::string& path, const CsvOptions& options);

enum class PreprocessStep { kLogTarget, kCenter, kStandardScale, kUnitNorm };

// Steps from a '+'-joined recipe such as "center+unit-norm",
// "standard-scale+unit-norm" or "log-target+unit-norm"; "none" is empty.
// Returned in application order: log-target, center or standard-scale,
// unit-norm.
std::vector<PreprocessStep> parse_recipe(const std::string& recipe);
DataSet preprocess(DataSet ds, const std::vector<PreprocessStep>& steps);
DataSet preprocess(DataSet ds, const std::string& recipe);

// Rows in a seeded random order.
std::vector<std::size_t> seeded_permutation(std::size_t n, std::uint64_t seed);
DataSet take_rows(const DataSet& ds, const std::vector<std::size_t>& rows);
// Deterministic shuffle, then the first `cap` rows (all rows if cap == 0).
DataSet subsample(const DataSet& ds, std::size_t cap, std::uint64_t seed);

struct TrainTestSplit {
  DataSet train;
  DataSet test;
};
TrainTestSplit split_train_test(const DataSet& ds, double train_fraction, std::uint64_t seed);

// Points uniform on the unit sphere in R^d.
RowMatrix sphere_points(std::size_t n, std::size_t d, std::uint64_t seed);

// Smooth multi-class problem on the unit sphere: label = argmax_c of a
// random smooth score plus Gumbel-like label noise scaled by `noise`.
DataSet make_synthetic_classification(std::size_t n, std::size_t d, int classes, double noise,
                                      std::uint64_t seed);
// y = smooth function of x plus Gaussian noise.
DataSet make_synthetic_regression(std::size_t n, std::size_t d, double noise, std::uint64_t seed);

enum class ShapeSource { kIdentity, kDiagonalFile, kFullFile };
// Whitespace- or comma-separated numbers: d values for a diagonal file, d
// rows of d values for a full matrix.
ShapeMatrix load_shape_matrix(ShapeSource source, const std::string& path, std::size_t dim);

}  // namespace rfkit

#endif  // RFKIT_DATASET_HPP_
