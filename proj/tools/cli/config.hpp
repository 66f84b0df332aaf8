// Copyright 2026 The gpnn Authors.
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


#ifndef GPNN_TOOLS_CONFIG_HPP_
#define GPNN_TOOLS_CONFIG_HPP_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "gpnn/data.hpp"
#include "gpnn/model.hpp"
#include "gpnn/simulate.hpp"

namespace gpnn::cli {

// Dataset, model and protocol settings for fit / evaluate. Field names are
// the command-line flag names and the JSON config keys.
struct ExperimentConfig {
  std::string dataset;
  std::string recipe;
  std::string recipes_file;
  std::string target_column = "-1";
  std::vector<std::string> drop_columns;
  bool header = true;
  std::string delimiter = ",";

  std::string kernel = "rbf";
  std::size_t m = kDefaultNeighbours;
  std::size_t subset_size = 3000;
  std::size_t block_size = 300;
  double learning_rate = 0.1;
  std::size_t iterations = 100;
  double init_lengthscale = 1.0;
  double init_noise_var = 0.1;
  double init_signal_var = 0.9;
  std::size_t calibration_size = kDefaultCalibrationSize;
  bool calibrate = true;
  std::size_t leaf_size = kDefaultLeafSize;

  double train_fraction = 7.0 / 9.0;
  std::vector<std::uint64_t> seeds{0};
  std::string output_dir = "gpnn_out";
};

struct SimulateConfig {
  std::vector<std::size_t> n{1000};
  std::size_t n_star = 1000;
  std::size_t m = 100;
  std::size_t d = 20;
  std::string kernel = "rbf";
  double lengthscale = 1.0;
  double noise_var = 0.1;
  double signal_var = 0.9;
  std::string noise = "gaussian";
  // Assumed models are the Cartesian product of these lists; empty lists
  // fall back to the generating value.
  std::vector<std::string> kernel_hat;
  std::vector<double> lengthscale_hat;
  std::vector<double> noise_var_hat;
  std::vector<double> signal_var_hat;
  std::uint64_t seed = 0;
  std::optional<std::uint64_t> design_seed;
  bool oracle = false;
  bool plot_data = false;
  std::string output_dir = "gpnn_sim";
};

// JSON round trip. Unknown keys are rejected.
ExperimentConfig load_experiment_config(const std::string& path);
SimulateConfig load_simulate_config(const std::string& path);
std::string to_json(const ExperimentConfig& cfg);
std::string to_json(const SimulateConfig& cfg);

// Checks value ranges; throws InvalidArgument.
void validate(const ExperimentConfig& cfg);

// Resolves the recipe (if named) and the explicit column options.
CsvOptions csv_options(const ExperimentConfig& cfg);
FitConfig fit_config(const ExperimentConfig& cfg, std::uint64_t seed);
std::vector<SimConfig> sim_configs(const SimulateConfig& cfg);  // one per n

}  // namespace gpnn::cli

#endif  // GPNN_TOOLS_CONFIG_HPP_
