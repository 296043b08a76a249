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

#include "rfkit/feature_maps.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "json_io.hpp"
#include "rfkit/distributions.hpp"
#include "rfkit/errors.hpp"
#include "rfkit/multivariate.hpp"
#include "rfkit/rng.hpp"

namespace rfkit {

namespace {

constexpr int kOperatorFormatVersion = 1;
constexpr const char* kLayoutTag = "interleaved_cos_sin";

void check_p(std::size_t p) {
  if (p == 0) throw ParameterError("feature count p must be at least 1");
}

}  // namespace

std::string_view scheme_name(Scheme scheme) noexcept {
  return scheme == Scheme::kRff ? "rff" : "orf";
}

Scheme parse_scheme(std::string_view name) {
  if (name == "rff") return Scheme::kRff;
  if (name == "orf") return Scheme::kOrf;
  throw ParameterError("unknown feature scheme '" + std::string(name) + "' (expected rff|orf)");
}

std::string FeatureOperator::id() const {
  std::ostringstream os;
  os << scheme_name(scheme_) << ":" << kernel_.describe() << ":p=" << p_ << ":seed=" << seed_.seed
     << ":stream=" << seed_.stream_id;
  return os.str();
}

Vector psi(const Vector& u) {
  const Eigen::Index p = u.size();
  Vector out(2 * p);
  const double scale = 1.0 / std::sqrt(static_cast<double>(p));
  for (Eigen::Index i = 0; i < p; ++i) {
    out[2 * i] = scale * std::cos(u[i]);
    out[2 * i + 1] = scale * std::sin(u[i]);
  }
  return out;
}

std::size_t round_up_to_multiple(std::size_t p, std::size_t d) {
  if (d == 0) throw ParameterError("dimension must be positive");
  return ((p + d - 1) / d) * d;
}

FeatureOperator build_rff(const KernelSpec& kernel, std::size_t p, SeedRecord seed) {
  check_p(p);
  FeatureOperator op(Scheme::kRff, kernel, p, seed);
  RngStream rng(seed.seed, seed.stream_id);
  const ShapeMatrix& shape = kernel.shape();
  const auto d = static_cast<Eigen::Index>(kernel.dim());
  op.projection_.resize(static_cast<Eigen::Index>(p), d);

  // Each row shares one scalar multiplier across its d coordinates, so the
  // entries within a row are dependent.
  for (Eigen::Index i = 0; i < static_cast<Eigen::Index>(p); ++i) {
    switch (kernel.family()) {
      case KernelFamily::kGaussian:
        op.projection_.row(i) = sample_mvn(shape, rng).transpose();
        break;
      case KernelFamily::kL1Laplacian:
        for (Eigen::Index j = 0; j < d; ++j) {
          op.projection_(i, j) = std::tan(std::numbers::pi * (rng.uniform_open() - 0.5));
        }
        break;
      case KernelFamily::kLaplacian:
        op.projection_.row(i) = sample_mv_cauchy(shape, rng).transpose();
        break;
      case KernelFamily::kExpPower:
        if (kernel.alpha() == 2.0) {
          // exp(-||D||_M^2) is the Gaussian profile for shape 2M.
          op.projection_.row(i) = std::numbers::sqrt2 * sample_mvn(shape, rng).transpose();
        } else {
          const Vector u = sample_mvn(shape, rng);
          const double s = sample_stable_cms(exp_power_mixing_law(kernel.alpha()), rng);
          op.projection_.row(i) = std::sqrt(s) * u.transpose();
        }
        break;
      case KernelFamily::kMatern: {
        const Vector u = sample_mvn(shape, rng);
        const double tau = sample_chi(2.0 * kernel.nu(), rng);
        op.projection_.row(i) = (std::sqrt(2.0 * kernel.nu()) / tau) * u.transpose();
        break;
      }
    }
  }
  return op;
}

FeatureOperator build_orf(const KernelSpec& kernel, std::size_t p, SeedRecord seed) {
  check_p(p);
  if (!kernel.is_radial()) {
    throw ParameterError("orthogonal features need a rotation-invariant kernel; " +
                         kernel.describe() + " is not");
  }
  const std::size_t d = kernel.dim();
  if (p % d != 0) {
    throw ParameterError("orthogonal features need p to be a multiple of d (p = " +
                         std::to_string(p) + ", d = " + std::to_string(d) +
                         "); round p up to " + std::to_string(round_up_to_multiple(p, d)));
  }
  FeatureOperator op(Scheme::kOrf, kernel, p, seed);
  const RngStream root(seed.seed, seed.stream_id);
  RngStream rotation_rng = root.split(1);
  RngStream radial_rng = root.split(2);

  op.rotation_ = sample_haar_blocks(p, d, rotation_rng).q;
  op.radial_.resize(static_cast<Eigen::Index>(p));
  const double half_d = 0.5 * static_cast<double>(d);
  for (Eigen::Index i = 0; i < op.radial_.size(); ++i) {
    double s = 0.0;
    switch (kernel.family()) {
      case KernelFamily::kGaussian:
        s = sample_chi(static_cast<double>(d), radial_rng);
        break;
      case KernelFamily::kLaplacian:
        s = sample_gbp(GbpParams{half_d, 0.5, 2.0, 1.0}, radial_rng);
        break;
      case KernelFamily::kExpPower:
        if (kernel.alpha() == 2.0) {
          s = std::numbers::sqrt2 * sample_chi(static_cast<double>(d), radial_rng);
        } else {
          const double q = sample_chi(static_cast<double>(d), radial_rng);
          const double omega = sample_stable_cms(exp_power_mixing_law(kernel.alpha()), radial_rng);
          s = q * std::sqrt(omega);
        }
        break;
      case KernelFamily::kMatern: {
        const double nu = kernel.nu();
        s = sample_gbp(GbpParams{half_d, nu, 2.0, std::sqrt(2.0 * nu)}, radial_rng);
        break;
      }
      case KernelFamily::kL1Laplacian:
        break;
    }
    op.radial_[i] = s;
  }
  op.projection_ = op.radial_.asDiagonal() * op.rotation_;
  if (!kernel.shape().is_identity()) op.projection_ = op.projection_ * kernel.shape().sqrt();
  return op;
}

FeatureOperator build_operator(const KernelSpec& kernel, Scheme scheme, std::size_t p,
                               SeedRecord seed) {
  return scheme == Scheme::kRff ? build_rff(kernel, p, seed) : build_orf(kernel, p, seed);
}

FeatureMatrix featurize(const FeatureOperator& op, const RowMatrix& x) {
  if (static_cast<std::size_t>(x.cols()) != op.dim()) {
    throw DimensionError("input has dimension " + std::to_string(x.cols()) +
                         ", operator expects " + std::to_string(op.dim()));
  }
  const Eigen::Index n = x.rows();
  const auto p = static_cast<Eigen::Index>(op.p());
  const RowMatrix u = x * op.projection().transpose();
  FeatureMatrix out;
  out.operator_id = op.id();
  out.phi.resize(n, 2 * p);
  const double scale = 1.0 / std::sqrt(static_cast<double>(p));
#if defined(RFKIT_HAVE_OPENMP)
#pragma omp parallel for
#endif
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index k = 0; k < p; ++k) {
      out.phi(i, 2 * k) = scale * std::cos(u(i, k));
      out.phi(i, 2 * k + 1) = scale * std::sin(u(i, k));
    }
  }
  return out;
}

Matrix gram_approx(const FeatureMatrix& phi) {
  const Eigen::Index n = phi.phi.rows();
  Matrix g = Matrix::Zero(n, n);
  g.selfadjointView<Eigen::Lower>().rankUpdate(phi.phi);
  for (Eigen::Index j = 0; j < n; ++j) {
    for (Eigen::Index i = 0; i < j; ++i) g(i, j) = g(j, i);
  }
  return g;
}

Matrix gram_approx(const FeatureMatrix& a, const FeatureMatrix& b) {
  if (a.phi.cols() != b.phi.cols()) {
    throw DimensionError("feature matrices have different widths");
  }
  return a.phi * b.phi.transpose();
}

namespace detail {

nlohmann::json kernel_to_json(const KernelSpec& spec) {
  nlohmann::json j;
  j["family"] = std::string(family_name(spec.family()));
  if (spec.family() == KernelFamily::kExpPower) j["alpha"] = spec.alpha();
  if (spec.family() == KernelFamily::kMatern) j["nu"] = spec.nu();
  j["dim"] = spec.dim();
  if (spec.shape().is_identity()) {
    j["shape"] = "identity";
  } else {
    const Matrix& m = spec.shape().matrix();
    nlohmann::json rows = nlohmann::json::array();
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
      nlohmann::json row = nlohmann::json::array();
      for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
      rows.push_back(row);
    }
    j["shape"] = rows;
  }
  return j;
}

KernelSpec kernel_from_json(const nlohmann::json& j) {
  try {
    const KernelFamily family = parse_family(j.at("family").get<std::string>());
    const auto dim = j.at("dim").get<std::size_t>();
    const nlohmann::json& shape_json = j.at("shape");
    Matrix m;
    if (shape_json.is_string()) {
      m = Matrix::Identity(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
    } else {
      m.resize(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
      for (std::size_t r = 0; r < dim; ++r) {
        for (std::size_t c = 0; c < dim; ++c) {
          m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) =
              shape_json.at(r).at(c).get<double>();
        }
      }
    }
    ShapeMatrix shape(m);
    switch (family) {
      case KernelFamily::kGaussian: return KernelSpec::gaussian(shape);
      case KernelFamily::kL1Laplacian: return KernelSpec::l1_laplacian(dim);
      case KernelFamily::kLaplacian: return KernelSpec::laplacian(shape);
      case KernelFamily::kExpPower: return KernelSpec::exp_power(j.at("alpha").get<double>(), shape);
      case KernelFamily::kMatern: return KernelSpec::matern(j.at("nu").get<double>(), shape);
    }
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("malformed kernel record: ") + e.what());
  }
  throw ParseError("malformed kernel record");
}

nlohmann::json operator_to_json(const FeatureOperator& op) {
  nlohmann::json j;
  j["format"] = "rfkit.feature_operator";
  j["version"] = kOperatorFormatVersion;
  j["scheme"] = std::string(scheme_name(op.scheme()));
  j["kernel"] = kernel_to_json(op.kernel());
  j["p"] = op.p();
  j["seed"] = op.seed_record().seed;
  j["stream_id"] = op.seed_record().stream_id;
  j["layout"] = kLayoutTag;
  return j;
}

FeatureOperator operator_from_json(const nlohmann::json& j) {
  try {
    if (j.at("format").get<std::string>() != "rfkit.feature_operator") {
      throw ParseError("not a feature operator record");
    }
    if (j.at("version").get<int>() != kOperatorFormatVersion) {
      throw ParseError("unsupported feature operator version " +
                       std::to_string(j.at("version").get<int>()));
    }
    if (j.at("layout").get<std::string>() != kLayoutTag) {
      throw ParseError("unsupported feature layout " + j.at("layout").get<std::string>());
    }
    const SeedRecord seed{j.at("seed").get<std::uint64_t>(), j.at("stream_id").get<std::uint64_t>()};
    return build_operator(kernel_from_json(j.at("kernel")),
                          parse_scheme(j.at("scheme").get<std::string>()),
                          j.at("p").get<std::size_t>(), seed);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("malformed feature operator record: ") + e.what());
  }
}

}  // namespace detail

std::string serialize_operator(const FeatureOperator& op) {
  return detail::operator_to_json(op).dump(2);
}

FeatureOperator deserialize_operator(std::string_view text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("feature operator record is not valid JSON: ") + e.what());
  }
  return detail::operator_from_json(j);
}

}  // namespace rfkit
