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

#include <CLI11.hpp>

#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include "rfkit/errors.hpp"
#include "rfkit/experiment.hpp"

namespace {

using rfkit::Command;
using rfkit::ExperimentConfig;

struct RawOptions {
  std::vector<std::string> schemes{"rff"};
  std::vector<std::string> norms{"frobenius", "operator", "nuclear"};
  std::string task = "classification";
  std::string mapping = "clip";
  std::string shape_diag;
  std::string shape_full;
};

void add_common(CLI::App* sub, ExperimentConfig& c, RawOptions& raw) {
  sub->add_option("--kernel", c.kernel, "gaussian|l1_laplacian|laplacian|exp_power|matern")
      ->capture_default_str();
  sub->add_option("--alpha", c.alpha, "exp_power exponent in (0,2]")->capture_default_str();
  sub->add_option("--nu", c.nu, "matern smoothness")->capture_default_str();
  sub->add_option("--scheme", raw.schemes, "rff and/or orf")->delimiter(',')->capture_default_str();
  sub->add_option("--p", c.p_grid, "number of random features (comma list for a grid)")
      ->delimiter(',')
      ->capture_default_str();
  sub->add_option("--seed", c.seed, "root seed")->capture_default_str();
  sub->add_option("--lambda", c.lambdas, "ridge / logistic regularization (comma list)")
      ->delimiter(',')
      ->capture_default_str();
  sub->add_option("--norms", raw.norms, "frobenius,operator,nuclear")
      ->delimiter(',')
      ->capture_default_str();
  sub->add_option("--out", c.out, "report prefix: writes <out>.json and <out>.csv");
  sub->add_option("--csv", c.data.csv_path, "input CSV (header row); synthetic data if omitted");
  sub->add_option("--label-col", c.data.label_col, "label / target column name");
  sub->add_option("--task", raw.task, "classification|regression")->capture_default_str();
  sub->add_option("--recipe", c.data.recipe,
                  "none|center|unit-norm|center+unit-norm|standard-scale+unit-norm|log-target")
      ->capture_default_str();
  sub->add_option("--n", c.data.synthetic_n, "synthetic sample count")->capture_default_str();
  sub->add_option("--d", c.data.synthetic_d, "synthetic dimension")->capture_default_str();
  sub->add_option("--classes", c.data.synthetic_classes, "synthetic class count")
      ->capture_default_str();
  sub->add_option("--noise", c.data.synthetic_noise, "synthetic label noise")->capture_default_str();
  sub->add_option("--subsample", c.subsample_cap, "row cap after seeded shuffle")
      ->capture_default_str();
  sub->add_option("--train-fraction", c.train_fraction)->capture_default_str();
  auto* diag = sub->add_option("--shape-diag", raw.shape_diag, "file with diagonal of M");
  sub->add_option("--shape-full", raw.shape_full, "file with full SPD matrix M")->excludes(diag);
}

int run(int argc, char** argv) {
  CLI::App app{"rfkit: random Fourier and orthogonal random features"};
  app.require_subcommand(1);
  ExperimentConfig config;
  RawOptions raw;

  struct Sub {
    const char* name;
    const char* help;
    Command command;
  };
  const Sub subs[] = {
      {"sample", "draw from a distribution and KS-check it", Command::kSample},
      {"features", "build and serialize feature operators", Command::kFeatures},
      {"approx", "Gram approximation error sweep", Command::kApprox},
      {"bench", "exact vs featurized Gram timing", Command::kBench},
      {"krr", "kernel ridge regression: exact vs random features", Command::kKrr},
      {"klr", "classification with squared and logistic loss", Command::kKlr},
  };
  std::vector<std::pair<CLI::App*, Command>> registered;
  for (const Sub& s : subs) {
    CLI::App* sub = app.add_subcommand(s.name, s.help);
    add_common(sub, config, raw);
    registered.emplace_back(sub, s.command);
    switch (s.command) {
      case Command::kSample:
        sub->add_option("--dist", config.distribution,
                        "chi|betaprime|gbp|stable|mv_cauchy_norm|mv_t_norm")
            ->capture_default_str();
        sub->add_option("--params", config.dist_params, "distribution parameters (comma list)")
            ->delimiter(',');
        sub->add_option("--draws", config.draws)->capture_default_str();
        sub->add_option("--ks-level", config.ks_level)->capture_default_str();
        break;
      case Command::kFeatures:
        sub->add_option("--features-csv", config.features_csv, "write the feature matrix here");
        break;
      case Command::kBench:
        sub->add_option("--repeats", config.repeats)->capture_default_str();
        sub->add_flag("--include-build", config.include_build,
                      "count operator construction in feature time");
        break;
      case Command::kKrr:
      case Command::kKlr:
        sub->add_option("--ece-bins", config.ece_bins)->capture_default_str();
        sub->add_option("--mapping", raw.mapping, "squared-loss probabilities: clip|softmax")
            ->capture_default_str();
        sub->add_option("--max-iter", config.logistic.max_iterations)->capture_default_str();
        sub->add_option("--grad-tol", config.logistic.gradient_tolerance)->capture_default_str();
        sub->add_flag("!--no-exact", config.exact_baseline, "skip the exact kernel baseline");
        break;
      case Command::kApprox:
        break;
    }
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : static_cast<int>(rfkit::ErrorClass::kParameter);
  }

  for (const auto& [sub, command] : registered) {
    if (sub->parsed()) config.command = command;
  }
  if (config.command == Command::kKrr && raw.task == "classification" &&
      !registered[4].first->get_option("--task")->count()) {
    raw.task = "regression";
  }

  try {
    config.schemes.clear();
    for (const std::string& s : raw.schemes) config.schemes.push_back(rfkit::parse_scheme(s));
    config.norms.clear();
    for (const std::string& n : raw.norms) config.norms.push_back(rfkit::parse_norm(n));
    config.data.task = rfkit::parse_task(raw.task);
    config.mapping = rfkit::parse_mapping(raw.mapping);
    if (!raw.shape_diag.empty()) {
      config.shape_source = rfkit::ShapeSource::kDiagonalFile;
      config.shape_path = raw.shape_diag;
    } else if (!raw.shape_full.empty()) {
      config.shape_source = rfkit::ShapeSource::kFullFile;
      config.shape_path = raw.shape_full;
    }
    const rfkit::ExperimentReport report = rfkit::run_experiment(config);
    for (const std::string& note : report.notes) std::cerr << "note: " << note << "\n";
    if (config.out.empty()) {
      std::cout << report.json << "\n";
    } else {
      std::cerr << "wrote " << config.out << ".json and " << config.out << ".csv\n";
    }
    return 0;
  } catch (const rfkit::Error& e) {
    std::cerr << "error [" << rfkit::error_class_name(e.error_class()) << "]: " << e.what() << "\n";
    return e.exit_code();
  } catch (const std::exception& e) {
    std::cerr << "error [internal]: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace

int main(int argc, char** argv) { return run(argc, argv); }
