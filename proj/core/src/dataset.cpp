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

#include "rfkit/dataset.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>

#include "rfkit/errors.hpp"
#include "rfkit/rng.hpp"

namespace rfkit {

namespace {

std::vector<std::string> split_line(const std::string& line, char delim) {
  std::vector<std::string> cells;
  std::string cell;
  std::istringstream is(line);
  while (std::getline(is, cell, delim)) cells.push_back(cell);
  if (!line.empty() && line.back() == delim) cells.emplace_back();
  return cells;
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

bool all_digits(const std::string& s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; });
}

// Parses a full cell as a double; returns false on trailing garbage.
bool parse_double(const std::string& cell, double& out) {
  const std::string t = trim(cell);
  if (t.empty()) return false;
  const char* first = t.data();
  if (*first == '+') ++first;
  const auto res = std::from_chars(first, t.data() + t.size(), out);
  return res.ec == std::errc() && res.ptr == t.data() + t.size();
}

std::vector<double> read_numbers(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw IoError("cannot open matrix file: " + path);
  std::vector<double> values;
  std::string token;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(is, line)) {
    ++line_no;
    std::replace(line.begin(), line.end(), ',', ' ');
    std::istringstream ls(line);
    while (ls >> token) {
      double v = 0.0;
      if (!parse_double(token, v) || !std::isfinite(v)) {
        throw ParseError(path + ": line " + std::to_string(line_no) + ": invalid number '" + token + "'");
      }
      values.push_back(v);
    }
  }
  return values;
}

}  // namespace

DataSet load_csv(const std::string& path, const CsvOptions& options) {
  std::ifstream is(path);
  if (!is) throw IoError("cannot open CSV file: " + path);
  std::string line;
  if (!std::getline(is, line)) throw ParseError(path + ": file is empty (header row required)");
  std::vector<std::string> header = split_line(line, options.delimiter);
  for (auto& h : header) h = trim(h);
  const std::size_t cols = header.size();
  if (cols < 2) throw ParseError(path + ": need at least one feature column and a label column");

  std::size_t label_idx = cols - 1;
  if (!options.label_col.empty() && options.label_col != "-1") {
    if (all_digits(options.label_col)) {
      label_idx = std::stoul(options.label_col);
      if (label_idx >= cols) {
        throw ParseError(path + ": label column index " + options.label_col + " out of range");
      }
    } else {
      const auto it = std::find(header.begin(), header.end(), options.label_col);
      if (it == header.end()) {
        throw ParseError(path + ": no column named '" + options.label_col + "'");
      }
      label_idx = static_cast<std::size_t>(it - header.begin());
    }
  }

  std::vector<double> features;
  std::vector<double> labels;
  std::size_t line_no = 1;
  std::size_t rows = 0;
  while (std::getline(is, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    const std::vector<std::string> cells = split_line(line, options.delimiter);
    if (cells.size() != cols) {
      throw ParseError(path + ": line " + std::to_string(line_no) + ": expected " + std::to_string(cols) +
                       " columns, found " + std::to_string(cells.size()));
    }
    for (std::size_t c = 0; c < cols; ++c) {
      double v = 0.0;
      if (!parse_double(cells[c], v)) {
        throw ParseError(path + ": line " + std::to_string(line_no) + ": column '" + header[c] +
                         "' is not numeric ('" + trim(cells[c]) + "')");
      }
      if (!std::isfinite(v)) {
        throw ParseError(path + ": line " + std::to_string(line_no) + ": column '" + header[c] +
                         "' holds a non-finite value (row " + std::to_string(rows + 1) + ")");
      }
      if (c == label_idx) {
        if (options.task == Task::kClassification && (v != std::floor(v) || v < 0.0)) {
          throw ParseError(path + ": line " + std::to_string(line_no) + ": schema error: label '" +
                           trim(cells[c]) + "' is not a non-negative integer class id");
        }
        labels.push_back(v);
      } else {
        features.push_back(v);
      }
    }
    ++rows;
  }
  if (rows == 0) throw ParseError(path + ": no data rows");

  DataSet ds;
  ds.name = path;
  ds.task = options.task;
  const auto d = static_cast<Eigen::Index>(cols - 1);
  ds.x = Eigen::Map<RowMatrix>(features.data(), static_cast<Eigen::Index>(rows), d);
  if (options.task == Task::kClassification) {
    ds.labels.assign(labels.size(), 0);
    for (std::size_t i = 0; i < labels.size(); ++i) ds.labels[i] = static_cast<int>(labels[i]);
  } else {
    ds.targets = Eigen::Map<Vector>(labels.data(), static_cast<Eigen::Index>(labels.size()));
  }
  return ds;
}

std::vector<PreprocessStep> parse_recipe(const std::string& recipe) {
  std::vector<PreprocessStep> steps;
  if (recipe.empty() || recipe == "none") return steps;
  bool log_target = false, center = false, scale = false, unit = false;
  std::istringstream is(recipe);
  std::string part;
  while (std::getline(is, part, '+')) {
    part = trim(part);
    if (part == "log-target") log_target = true;
    else if (part == "center") center = true;
    else if (part == "standard-scale") scale = true;
    else if (part == "unit-norm") unit = true;
    else throw ParameterError("unknown preprocessing step '" + part + "'");
  }
  if (center && scale) {
    throw ParameterError("'center' and 'standard-scale' are alternatives; pick one");
  }
  if (log_target) steps.push_back(PreprocessStep::kLogTarget);
  if (center) steps.push_back(PreprocessStep::kCenter);
  if (scale) steps.push_back(PreprocessStep::kStandardScale);
  if (unit) steps.push_back(PreprocessStep::kUnitNorm);
  return steps;
}

DataSet preprocess(DataSet ds, const std::vector<PreprocessStep>& steps) {
  for (PreprocessStep step : steps) {
    switch (step) {
      case PreprocessStep::kLogTarget: {
        if (ds.task != Task::kRegression) {
          throw ParameterError("log-target applies to regression targets only");
        }
        for (Eigen::Index i = 0; i < ds.targets.size(); ++i) {
          if (!(ds.targets[i] > 0.0)) {
            throw DomainError("log-target: target at row " + std::to_string(i) +
                              " is not positive (" + std::to_string(ds.targets[i]) + ")");
          }
        }
        ds.targets = ds.targets.array().log().matrix();
        ds.record.log_target = true;
        ds.record.steps.push_back("log-target");
        break;
      }
      case PreprocessStep::kCenter:
        ds.x.rowwise() -= ds.x.colwise().mean();
        ds.record.centered = true;
        ds.record.steps.push_back("center");
        break;
      case PreprocessStep::kStandardScale: {
        ds.x.rowwise() -= ds.x.colwise().mean();
        const double denom = std::max<double>(1.0, static_cast<double>(ds.x.rows()));
        for (Eigen::Index c = 0; c < ds.x.cols(); ++c) {
          const double sd = std::sqrt(ds.x.col(c).squaredNorm() / denom);
          if (sd > 0.0) ds.x.col(c) /= sd;
        }
        ds.record.standard_scaled = true;
        ds.record.steps.push_back("standard-scale");
        break;
      }
      case PreprocessStep::kUnitNorm: {
        std::vector<Eigen::Index> zero_rows;
        for (Eigen::Index i = 0; i < ds.x.rows(); ++i) {
          if (!(ds.x.row(i).norm() > 0.0)) zero_rows.push_back(i);
        }
        if (!zero_rows.empty()) {
          std::ostringstream os;
          os << "unit-norm: " << zero_rows.size() << " row(s) have zero norm:";
          for (std::size_t k = 0; k < std::min<std::size_t>(zero_rows.size(), 20); ++k) {
            os << " " << zero_rows[k];
          }
          if (zero_rows.size() > 20) os << " ...";
          throw DomainError(os.str());
        }
        ds.x.rowwise().normalize();
        ds.record.unit_norm = true;
        ds.record.steps.push_back("unit-norm");
        break;
      }
    }
  }
  return ds;
}

DataSet preprocess(DataSet ds, const std::string& recipe) {
  return preprocess(std::move(ds), parse_recipe(recipe));
}

std::vector<std::size_t> seeded_permutation(std::size_t n, std::uint64_t seed) {
  std::vector<std::size_t> idx(n);
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  RngStream rng(seed, 0x5eed5u);
  // Fisher-Yates with our own uniform draws (std::shuffle is not portable).
  for (std::size_t i = n; i > 1; --i) {
    const auto j = static_cast<std::size_t>(rng.next_u64() % i);
    std::swap(idx[i - 1], idx[j]);
  }
  return idx;
}

DataSet take_rows(const DataSet& ds, const std::vector<std::size_t>& rows) {
  DataSet out;
  out.name = ds.name;
  out.task = ds.task;
  out.record = ds.record;
  out.x.resize(static_cast<Eigen::Index>(rows.size()), ds.x.cols());
  if (ds.task == Task::kClassification) out.labels.resize(rows.size());
  else out.targets.resize(static_cast<Eigen::Index>(rows.size()));
  for (std::size_t k = 0; k < rows.size(); ++k) {
    const auto src = static_cast<Eigen::Index>(rows[k]);
    const auto dst = static_cast<Eigen::Index>(k);
    out.x.row(dst) = ds.x.row(src);
    if (ds.task == Task::kClassification) out.labels[k] = ds.labels[rows[k]];
    else out.targets[dst] = ds.targets[src];
  }
  return out;
}

DataSet subsample(const DataSet& ds, std::size_t cap, std::uint64_t seed) {
  if (cap == 0 || cap >= ds.size()) return ds;
  std::vector<std::size_t> idx = seeded_permutation(ds.size(), seed);
  idx.resize(cap);
  return take_rows(ds, idx);
}

TrainTestSplit split_train_test(const DataSet& ds, double train_fraction, std::uint64_t seed) {
  if (!(train_fraction > 0.0 && train_fraction < 1.0)) {
    throw ParameterError("train fraction must lie in (0, 1)");
  }
  const std::vector<std::size_t> idx = seeded_permutation(ds.size(), seed ^ 0x7e57ULL);
  const auto n_train = static_cast<std::size_t>(std::llround(train_fraction * static_cast<double>(ds.size())));
  if (n_train == 0 || n_train >= ds.size()) {
    throw ParameterError("train/test split leaves an empty side");
  }
  return {take_rows(ds, {idx.begin(), idx.begin() + static_cast<std::ptrdiff_t>(n_train)}),
          take_rows(ds, {idx.begin() + static_cast<std::ptrdiff_t>(n_train), idx.end()})};
}

RowMatrix sphere_points(std::size_t n, std::size_t d, std::uint64_t seed) {
  RngStream rng(seed, 0xda7aULL);
  RowMatrix x(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(d));
  for (Eigen::Index i = 0; i < x.rows(); ++i) {
    do {
      for (Eigen::Index j = 0; j < x.cols(); ++j) x(i, j) = rng.normal();
    } while (x.row(i).norm() == 0.0);
    x.row(i).normalize();
  }
  return x;
}

namespace {

// A random smooth function: sum of k cosines with frequencies of norm ~2.
struct SmoothField {
  RowMatrix freq;
  Vector phase;
  Vector amp;

  SmoothField(std::size_t terms, std::size_t d, RngStream& rng)
      : freq(static_cast<Eigen::Index>(terms), static_cast<Eigen::Index>(d)),
        phase(static_cast<Eigen::Index>(terms)),
        amp(static_cast<Eigen::Index>(terms)) {
    for (Eigen::Index k = 0; k < freq.rows(); ++k) {
      for (Eigen::Index j = 0; j < freq.cols(); ++j) freq(k, j) = rng.normal();
      freq.row(k) *= 2.5 / std::sqrt(static_cast<double>(d)) ;
      phase[k] = 2.0 * 3.141592653589793 * rng.uniform();
      amp[k] = rng.normal();
    }
  }

  double operator()(const Eigen::Ref<const Eigen::RowVectorXd>& x) const {
    double acc = 0.0;
    for (Eigen::Index k = 0; k < freq.rows(); ++k) acc += amp[k] * std::cos(freq.row(k).dot(x) + phase[k]);
    return acc;
  }
};

}  // namespace

DataSet make_synthetic_classification(std::size_t n, std::size_t d, int classes, double noise,
                                      std::uint64_t seed) {
  if (classes < 2) throw ParameterError("synthetic classification needs >= 2 classes");
  DataSet ds;
  ds.name = "synthetic_classification";
  ds.task = Task::kClassification;
  ds.x = sphere_points(n, d, seed);
  RngStream field_rng(seed, 0xf1e1dULL);
  std::vector<SmoothField> fields;
  for (int c = 0; c < classes; ++c) fields.emplace_back(8, d, field_rng);
  RngStream noise_rng(seed, 0x9015eULL);
  ds.labels.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    int best = 0;
    double best_score = -1e300;
    for (int c = 0; c < classes; ++c) {
      const double s = fields[static_cast<std::size_t>(c)](ds.x.row(static_cast<Eigen::Index>(i))) +
                       noise * noise_rng.normal();
      if (s > best_score) {
        best_score = s;
        best = c;
      }
    }
    ds.labels[i] = best;
  }
  return ds;
}

DataSet make_synthetic_regression(std::size_t n, std::size_t d, double noise, std::uint64_t seed) {
  DataSet ds;
  ds.name = "synthetic_regression";
  ds.task = Task::kRegression;
  ds.x = sphere_points(n, d, seed);
  RngStream field_rng(seed, 0xf1e1dULL);
  const SmoothField field(12, d, field_rng);
  RngStream noise_rng(seed, 0x9015eULL);
  ds.targets.resize(static_cast<Eigen::Index>(n));
  for (Eigen::Index i = 0; i < ds.targets.size(); ++i) {
    ds.targets[i] = field(ds.x.row(i)) + noise * noise_rng.normal();
  }
  return ds;
}

ShapeMatrix load_shape_matrix(ShapeSource source, const std::string& path, std::size_t dim) {
  if (source == ShapeSource::kIdentity) return ShapeMatrix::identity(dim);
  const std::vector<double> values = read_numbers(path);
  if (source == ShapeSource::kDiagonalFile) {
    if (values.size() != dim) {
      throw ParseError(path + ": expected " + std::to_string(dim) + " diagonal entries, found " +
                       std::to_string(values.size()));
    }
    return ShapeMatrix::diagonal(Eigen::Map<const Vector>(values.data(), static_cast<Eigen::Index>(dim)));
  }
  if (values.size() != dim * dim) {
    throw ParseError(path + ": expected a " + std::to_string(dim) + "x" + std::to_string(dim) +
                     " matrix, found " + std::to_string(values.size()) + " numbers");
  }
  return ShapeMatrix(Eigen::Map<const RowMatrix>(values.data(), static_cast<Eigen::Index>(dim),
                                                 static_cast<Eigen::Index>(dim)));
}

}  // namespace rfkit
