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


#include "cli/config.hpp"

#include <fstream>
#include <set>

#include "gpnn/error.hpp"
#include "json.hpp"

namespace gpnn::cli {
namespace {

using nlohmann::json;

json read_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open config file " + path);
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw DataError(path + ": " + e.what());
  }
}

class Reader {
 public:
  Reader(const json& j, std::string path) : j_(j), path_(std::move(path)) {
    if (!j_.is_object()) throw DataError(path_ + ": config must be a JSON object");
  }

  template <typename T>
  void get(const char* key, T& field) {
    known_.insert(key);
    auto it = j_.find(key);
    if (it == j_.end()) return;
    try {
      field = it->template get<T>();
    } catch (const json::exception& e) {
      throw DataError(path_ + ": bad value for '" + key + "': " + e.what());
    }
  }

  void get(const char* key, std::optional<std::uint64_t>& field) {
    known_.insert(key);
    auto it = j_.find(key);
    if (it == j_.end() || it->is_null()) return;
    std::uint64_t v = 0;
    get(key, v);
    field = v;
  }

  void reject_unknown() const {
    for (auto it = j_.begin(); it != j_.end(); ++it) {
      if (!known_.count(it.key())) throw DataError(path_ + ": unknown config key '" + it.key() + "'");
    }
  }

 private:
  const json& j_;
  std::string path_;
  std::set<std::string> known_;
};

}  // namespace

ExperimentConfig load_experiment_config(const std::string& path) {
  const json j = read_json(path);
  ExperimentConfig c;
  Reader r(j, path);
  r.get("dataset", c.dataset);
  r.get("recipe", c.recipe);
  r.get("recipes_file", c.recipes_file);
  r.get("target_column", c.target_column);
  r.get("drop_columns", c.drop_columns);
  r.get("header", c.header);
  r.get("delimiter", c.delimiter);
  r.get("kernel", c.kernel);
  r.get("m", c.m);
  r.get("subset_size", c.subset_size);
  r.get("block_size", c.block_size);
  r.get("learning_rate", c.learning_rate);
  r.get("iterations", c.iterations);
  r.get("init_lengthscale", c.init_lengthscale);
  r.get("init_noise_var", c.init_noise_var);
  r.get("init_signal_var", c.init_signal_var);
  r.get("calibration_size", c.calibration_size);
  r.get("calibrate", c.calibrate);
  r.get("leaf_size", c.leaf_size);
  r.get("train_fraction", c.train_fraction);
  r.get("seeds", c.seeds);
  r.get("output_dir", c.output_dir);
  r.reject_unknown();
  return c;
}

SimulateConfig load_simulate_config(const std::string& path) {
  const json j = read_json(path);
  SimulateConfig c;
  Reader r(j, path);
  r.get("n", c.n);
  r.get("n_star", c.n_star);
  r.get("m", c.m);
  r.get("d", c.d);
  r.get("kernel", c.kernel);
  r.get("lengthscale", c.lengthscale);
  r.get("noise_var", c.noise_var);
  r.get("signal_var", c.signal_var);
  r.get("noise", c.noise);
  r.get("kernel_hat", c.kernel_hat);
  r.get("lengthscale_hat", c.lengthscale_hat);
  r.get("noise_var_hat", c.noise_var_hat);
  r.get("signal_var_hat", c.signal_var_hat);
  r.get("seed", c.seed);
  r.get("design_seed", c.design_seed);
  r.get("oracle", c.oracle);
  r.get("plot_data", c.plot_data);
  r.get("output_dir", c.output_dir);
  r.reject_unknown();
  return c;
}

std::string to_json(const ExperimentConfig& c) {
  json j;
  j["dataset"] = c.dataset;
  j["recipe"] = c.recipe;
  j["recipes_file"] = c.recipes_file;
  j["target_column"] = c.target_column;
  j["drop_columns"] = c.drop_columns;
  j["header"] = c.header;
  j["delimiter"] = c.delimiter;
  j["kernel"] = c.kernel;
  j["m"] = c.m;
  j["subset_size"] = c.subset_size;
  j["block_size"] = c.block_size;
  j["learning_rate"] = c.learning_rate;
  j["iterations"] = c.iterations;
  j["init_lengthscale"] = c.init_lengthscale;
  j["init_noise_var"] = c.init_noise_var;
  j["init_signal_var"] = c.init_signal_var;
  j["calibration_size"] = c.calibration_size;
  j["calibrate"] = c.calibrate;
  j["leaf_size"] = c.leaf_size;
  j["train_fraction"] = c.train_fraction;
  j["seeds"] = c.seeds;
  j["output_dir"] = c.output_dir;
  return j.dump(2) + "\n";
}

std::string to_json(const SimulateConfig& c) {
  json j;
  j["n"] = c.n;
  j["n_star"] = c.n_star;
  j["m"] = c.m;
  j["d"] = c.d;
  j["kernel"] = c.kernel;
  j["lengthscale"] = c.lengthscale;
  j["noise_var"] = c.noise_var;
  j["signal_var"] = c.signal_var;
  j["noise"] = c.noise;
  j["kernel_hat"] = c.kernel_hat;
  j["lengthscale_hat"] = c.lengthscale_hat;
  j["noise_var_hat"] = c.noise_var_hat;
  j["signal_var_hat"] = c.signal_var_hat;
  j["seed"] = c.seed;
  j["design_seed"] = c.design_seed ? json(*c.design_seed) : json(nullptr);
  j["oracle"] = c.oracle;
  j["plot_data"] = c.plot_data;
  j["output_dir"] = c.output_dir;
  return j.dump(2) + "\n";
}

void validate(const ExperimentConfig& c) {
  if (c.dataset.empty()) throw InvalidArgument("dataset is required");
  if (!(c.train_fraction > 0.0 && c.train_fraction <= 1.0)) {
    throw InvalidArgument("train_fraction must be in (0, 1]");
  }
  if (c.seeds.empty()) throw InvalidArgument("seeds must not be empty");
  if (c.m == 0) throw InvalidArgument("m must be >= 1");
  if (c.delimiter.size() != 1) throw InvalidArgument("delimiter must be a single character");
  parse_kernel_family(c.kernel);
  fit_config(c, 0).train.validate();
}

CsvOptions csv_options(const ExperimentConfig& c) {
  CsvOptions options;
  if (!c.recipe.empty()) {
    if (c.recipes_file.empty()) throw InvalidArgument("recipe '" + c.recipe + "' needs recipes_file");
    const auto recipes = load_recipes(c.recipes_file);
    auto it = recipes.find(c.recipe);
    if (it == recipes.end()) {
      throw InvalidArgument("recipe '" + c.recipe + "' not found in " + c.recipes_file);
    }
    options = it->second.options;
    options.drop_columns.insert(options.drop_columns.end(), c.drop_columns.begin(),
                                c.drop_columns.end());
    return options;
  }
  options.target_column = c.target_column;
  options.drop_columns = c.drop_columns;
  options.has_header = c.header;
  if (c.delimiter.size() != 1) throw InvalidArgument("delimiter must be a single character");
  options.delimiter = c.delimiter[0];
  return options;
}

FitConfig fit_config(const ExperimentConfig& c, std::uint64_t seed) {
  FitConfig f;
  f.train.subset_size = c.subset_size;
  f.train.block_size = c.block_size;
  f.train.learning_rate = c.learning_rate;
  f.train.iterations = c.iterations;
  f.train.init_theta = Theta{c.init_lengthscale, c.init_noise_var, c.init_signal_var};
  f.train.seed = seed;
  f.kernel = parse_kernel_family(c.kernel);
  f.m = c.m;
  f.calibration_size = c.calibration_size;
  f.calibrate = c.calibrate;
  f.seed = seed;
  f.leaf_size = c.leaf_size;
  return f;
}

std::vector<SimConfig> sim_configs(const SimulateConfig& c) {
  const KernelFamily gen_kernel = parse_kernel_family(c.kernel);
  const Theta gen{c.lengthscale, c.noise_var, c.signal_var};

  std::vector<KernelFamily> kernels;
  for (const auto& k : c.kernel_hat) kernels.push_back(parse_kernel_family(k));
  if (kernels.empty()) kernels.push_back(gen_kernel);
  const auto or_default = [](const std::vector<double>& v, double d) {
    return v.empty() ? std::vector<double>{d} : v;
  };
  const auto ls = or_default(c.lengthscale_hat, gen.lengthscale);
  const auto nv = or_default(c.noise_var_hat, gen.noise_var);
  const auto sv = or_default(c.signal_var_hat, gen.signal_var);

  std::vector<AssumedModel> assumed;
  for (KernelFamily k : kernels) {
    for (double l : ls) {
      for (double a : nv) {
        for (double b : sv) assumed.push_back(AssumedModel{k, Theta{l, a, b}});
      }
    }
  }

  if (c.n.empty()) throw InvalidArgument("n must list at least one training size");
  std::vector<SimConfig> out;
  for (std::size_t n : c.n) {
    SimConfig s;
    s.n = n;
    s.n_star = c.n_star;
    s.m = c.m;
    s.d = c.d;
    s.gen_kernel = gen_kernel;
    s.gen_theta = gen;
    s.noise = parse_noise_law(c.noise);
    s.assumed = assumed;
    s.seed = c.seed;
    s.design_seed = c.design_seed;
    s.validate();
    out.push_back(std::move(s));
  }
  return out;
}

}  // namespace gpnn::cli
