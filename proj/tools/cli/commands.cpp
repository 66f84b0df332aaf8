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


#include "cli/commands.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "cli/config.hpp"
#include "gpnn/error.hpp"
#include "gpnn/metrics.hpp"
#include "gpnn/model.hpp"
#include "gpnn/parallel.hpp"
#include "gpnn/simulate.hpp"

namespace gpnn::cli {
namespace {

namespace fs = std::filesystem;

std::string sig3(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.3g", v);
  return buf;
}

std::string full(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void write_file(const fs::path& path, const std::string& content) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream f(path, std::ios::trunc);
  if (!f) throw Error("cannot write " + path.string());
  f << content;
  if (!f) throw Error("write failed for " + path.string());
}

// Pulls "--config <path>" / "--config=<path>" out ahead of the real parse so
// the file can supply defaults that explicit flags then override.
std::string find_config(int argc, const char* const* argv) {
  for (int i = 1; i < argc; ++i) {
    const std::string a = argv[i];
    if (a == "--config" && i + 1 < argc) return argv[i + 1];
    if (a.rfind("--config=", 0) == 0) return a.substr(9);
  }
  return {};
}

std::string find_subcommand(int argc, const char* const* argv) {
  for (int i = 1; i < argc; ++i) {
    const std::string a = argv[i];
    if (a == "fit" || a == "predict" || a == "evaluate" || a == "simulate" || a == "whiten") {
      return a;
    }
  }
  return {};
}

void add_dataset_flags(CLI::App* app, ExperimentConfig& c) {
  app->add_option("--dataset", c.dataset, "CSV file");
  app->add_option("--recipe", c.recipe, "Named ingestion recipe");
  app->add_option("--recipes_file", c.recipes_file, "JSON recipe file");
  app->add_option("--target_column", c.target_column, "Target column name or index");
  app->add_option("--drop_columns", c.drop_columns, "Columns to drop")->delimiter(',');
  app->add_flag("--header,!--no-header", c.header, "First row holds column names");
  app->add_option("--delimiter", c.delimiter);
}

void add_experiment_flags(CLI::App* app, ExperimentConfig& c) {
  add_dataset_flags(app, c);
  app->add_option("--kernel", c.kernel, "rbf, exponential or matern32");
  app->add_option("--m", c.m, "Number of neighbours");
  app->add_option("--subset_size", c.subset_size);
  app->add_option("--block_size", c.block_size);
  app->add_option("--learning_rate", c.learning_rate);
  app->add_option("--iterations", c.iterations);
  app->add_option("--init_lengthscale", c.init_lengthscale);
  app->add_option("--init_noise_var", c.init_noise_var);
  app->add_option("--init_signal_var", c.init_signal_var);
  app->add_option("--calibration_size", c.calibration_size);
  app->add_flag("--calibrate,!--no-calibrate", c.calibrate);
  app->add_option("--leaf_size", c.leaf_size);
  app->add_option("--train_fraction", c.train_fraction);
  app->add_option("--seeds", c.seeds)->delimiter(',');
  app->add_option("--output_dir", c.output_dir);
}

Dataset load_dataset(const ExperimentConfig& c, std::ostream& err) {
  Dataset data = load_csv(c.dataset, csv_options(c));
  if (data.dropped_rows() > 0) {
    err << c.dataset << ": dropped " << data.dropped_rows() << " rows (" << data.null_rows
        << " with missing values, " << data.unparseable_rows << " unparseable)\n";
  }
  for (const auto& w : data.warnings) err << "warning: " << w << "\n";
  return data;
}

// Metrics on the whitened target scale.
MetricsReport score(const GpnnModel& model, const Dataset& test) {
  if (test.dim() != model.dim()) {
    throw DimensionMismatch("test data features", model.dim(), test.dim());
  }
  if (test.y.size() != test.x.rows()) throw DataError("test data has no target column");
  const auto preds = model.predict_batch(test.x, OutputScale::kNormalized);
  const Vector y = model.whitening().apply_y(test.y);
  return evaluate(preds, as_span(y));
}

std::string timing_report(const FitTimings& t) {
  std::ostringstream s;
  s << "whitening_s = " << sig3(t.whitening_s) << "\n"
    << "estimation_s = " << sig3(t.estimation_s) << "\n"
    << "index_build_s = " << sig3(t.index_build_s) << "\n"
    << "calibration_s = " << sig3(t.calibration_s) << "\n"
    << "total_s = " << sig3(t.total()) << "\n";
  return s.str();
}

std::string training_report(const FitResult& r) {
  const GpnnModel& m = r.model;
  std::ostringstream s;
  s << "kernel = " << to_string(m.kernel()) << "\n"
    << "n = " << m.size() << "\n"
    << "d = " << m.dim() << "\n"
    << "m = " << m.m() << "\n"
    << "subset_size = " << r.training.subset_size << "\n"
    << "block_size = " << r.training.block_size << "\n"
    << "initial_loss = " << full(r.training.initial_loss) << "\n"
    << "best_loss = " << full(r.training.best_loss) << "\n"
    << "best_iteration = " << r.training.best_iteration << "\n"
    << "lengthscale_hat = " << full(m.theta_hat().lengthscale) << "\n"
    << "noise_var_hat = " << full(m.theta_hat().noise_var) << "\n"
    << "signal_var_hat = " << full(m.theta_hat().signal_var) << "\n"
    << "alpha = " << full(m.alpha()) << "\n"
    << "calibration_points = " << r.calibration_rows.size() << "\n"
    << "lengthscale = " << full(m.theta().lengthscale) << "\n"
    << "noise_var = " << full(m.theta().noise_var) << "\n"
    << "signal_var = " << full(m.theta().signal_var) << "\n";
  return s.str();
}

std::pair<Dataset, Dataset> split_for(const Dataset& data, double fraction, std::uint64_t seed) {
  if (fraction >= 1.0) return {data, Dataset{}};
  return split(data, fraction, seed);
}

int cmd_fit(const ExperimentConfig& c, std::ostream& out, std::ostream& err) {
  validate(c);
  const fs::path dir = c.output_dir;
  const std::uint64_t seed = c.seeds.front();
  const Dataset data = load_dataset(c, err);
  const auto [train, test] = split_for(data, c.train_fraction, seed);

  FitResult result = fit(train, fit_config(c, seed));
  fs::create_directories(dir);
  save_model(result.model, (dir / "model.gpnn").string());
  write_file(dir / "timing.txt", timing_report(result.timings));
  write_file(dir / "training.txt", training_report(result));
  write_file(dir / "config.json", to_json(c));

  out << "model: " << (dir / "model.gpnn").string() << "\n" << timing_report(result.timings);
  if (test.size() > 0) {
    const MetricsReport report = score(result.model, test);
    write_file(dir / "metrics.txt", report.to_key_value());
    write_file(dir / "metrics.csv", MetricsReport::csv_header() + "\n" + report.to_csv_row() + "\n");
    out << report.to_key_value();
  }
  return 0;
}

std::string aggregate_line(const char* name, const Aggregate& a) {
  // sd is left empty when it is undefined (a single run).
  return std::string(name) + "_mean = " + full(a.mean) + "\n" + name +
         "_sd = " + (a.count < 2 ? std::string() : full(a.sd)) + "\n";
}

int cmd_evaluate(const ExperimentConfig& c, const std::string& model_path,
                 const std::string& test_path, std::ostream& out, std::ostream& err) {
  const fs::path dir = c.output_dir;
  if (!model_path.empty()) {
    if (test_path.empty()) throw InvalidArgument("--model needs --test");
    const GpnnModel model = load_model(model_path);
    ExperimentConfig tc = c;
    tc.dataset = test_path;
    const MetricsReport report = score(model, load_dataset(tc, err));
    write_file(dir / "metrics.txt", report.to_key_value());
    write_file(dir / "metrics.csv", MetricsReport::csv_header() + "\n" + report.to_csv_row() + "\n");
    out << report.to_key_value();
    return 0;
  }

  validate(c);
  if (c.train_fraction >= 1.0) throw InvalidArgument("evaluate needs train_fraction < 1");
  const Dataset data = load_dataset(c, err);
  std::vector<MetricsReport> runs;
  std::string csv = "seed," + MetricsReport::csv_header() + "\n";
  for (std::uint64_t seed : c.seeds) {
    const auto [train, test] = split(data, c.train_fraction, seed);
    const FitResult result = fit(train, fit_config(c, seed));
    const MetricsReport report = score(result.model, test);
    runs.push_back(report);
    write_file(dir / ("metrics_seed" + std::to_string(seed) + ".txt"), report.to_key_value());
    write_file(dir / ("timing_seed" + std::to_string(seed) + ".txt"), timing_report(result.timings));
    csv += std::to_string(seed) + "," + report.to_csv_row() + "\n";
    out << "seed " << seed << ": rmse=" << full(report.rmse) << " nll=" << full(report.nll)
        << " cal=" << full(report.cal) << "\n";
  }
  const AggregateReport agg = aggregate(runs);
  const std::string summary = "runs = " + std::to_string(runs.size()) + "\n" +
                              aggregate_line("mse", agg.mse) + aggregate_line("rmse", agg.rmse) +
                              aggregate_line("nll", agg.nll) + aggregate_line("cal", agg.cal);
  write_file(dir / "metrics.csv", csv);
  write_file(dir / "summary.txt", summary);
  write_file(dir / "config.json", to_json(c));
  out << summary;
  return 0;
}

int cmd_predict(const std::string& model_path, const std::string& input,
                const ExperimentConfig& c, const std::string& output, const std::string& scale,
                std::ostream& out, std::ostream& err) {
  const GpnnModel model = load_model(model_path);
  OutputScale s = OutputScale::kRaw;
  if (scale == "normalized") {
    s = OutputScale::kNormalized;
  } else if (scale != "raw") {
    throw InvalidArgument("scale must be raw or normalized");
  }
  ExperimentConfig ic = c;
  ic.dataset = input;
  const Dataset data = load_dataset(ic, err);
  if (data.dim() != model.dim()) throw DimensionMismatch("input features", model.dim(), data.dim());
  const auto preds = model.predict_batch(data.x, s);
  std::string csv = "id,mean,variance\n";
  for (std::size_t i = 0; i < preds.size(); ++i) {
    csv += std::to_string(i) + "," + full(preds[i].mean) + "," + full(preds[i].variance) + "\n";
  }
  const fs::path path = output.empty() ? fs::path(c.output_dir) / "predictions.csv" : fs::path(output);
  write_file(path, csv);
  out << "wrote " << preds.size() << " predictions to " << path.string() << "\n";
  return 0;
}

std::string matrix_json(const Matrix& a) {
  std::string s = "[";
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    s += i ? ", [" : "[";
    for (Eigen::Index k = 0; k < a.cols(); ++k) s += (k ? ", " : "") + full(a(i, k));
    s += "]";
  }
  return s + "]";
}

std::string transform_json(const WhiteningTransform& t) {
  std::string mu = "[";
  for (Eigen::Index i = 0; i < t.mu_x().size(); ++i) mu += (i ? ", " : "") + full(t.mu_x()(i));
  mu += "]";
  return "{\n  \"mu_y\": " + full(t.mu_y()) + ",\n  \"sigma_y\": " + full(t.sigma_y()) +
         ",\n  \"mu_x\": " + mu + ",\n  \"factor\": " + matrix_json(t.factor()) +
         ",\n  \"factor_inverse\": " + matrix_json(t.factor_inverse()) +
         ",\n  \"ridge_applied\": " + (t.ridge_applied() ? "true" : "false") + "\n}\n";
}

Dataset whitened_copy(const WhiteningTransform& t, const Dataset& data) {
  Dataset w = data;
  w.x = t.apply_x(data.x);
  w.y = t.apply_y(data.y);
  return w;
}

int cmd_whiten(const ExperimentConfig& c, const std::string& test_path, std::ostream& out,
               std::ostream& err) {
  if (c.dataset.empty()) throw InvalidArgument("dataset is required");
  const fs::path dir = c.output_dir;
  const Dataset train = load_dataset(c, err);
  const WhiteningTransform t = fit_whitening(train);
  fs::create_directories(dir);
  save_csv((dir / "train_whitened.csv").string(), whitened_copy(t, train));
  write_file(dir / "transform.json", transform_json(t));
  if (!test_path.empty()) {
    ExperimentConfig tc = c;
    tc.dataset = test_path;
    save_csv((dir / "test_whitened.csv").string(), whitened_copy(t, load_dataset(tc, err)));
  }
  if (t.ridge_applied()) err << "note: near-singular input covariance; ridge applied\n";
  out << "whitened " << train.size() << " rows into " << dir.string() << "\n";
  return 0;
}

struct SweepRows {
  std::string csv;
  // metric -> gnuplot blocks, one per assumed model
  std::map<std::string, std::map<std::size_t, std::string>> plot;
};

void append_sweep(SweepRows& rows, const char* algorithm, const SimConfig& sim,
                  const SweepResult& result) {
  for (std::size_t a = 0; a < result.entries.size(); ++a) {
    const SweepEntry& e = result.entries[a];
    const LimitingMetrics lim =
        theorem1_limits(sim.gen_theta.noise_var, e.assumed.theta.noise_var, e.m);
    const std::string prefix = std::string(algorithm) + "," + std::to_string(e.n) + "," +
                               std::to_string(e.m) + "," +
                               std::string(to_string(e.assumed.kernel)) + "," +
                               full(e.assumed.theta.lengthscale) + "," +
                               full(e.assumed.theta.noise_var) + "," +
                               full(e.assumed.theta.signal_var) + ",";
    const std::string limits = "," + full(lim.mse) + "," + full(lim.cal) + "," + full(lim.nll);
    const struct {
      const char* name;
      double value;
      double se;
      double limit;
    } metrics[] = {{"mse", e.report.mse, e.errors.mse, lim.mse},
                   {"nll", e.report.nll, e.errors.nll, lim.nll},
                   {"cal", e.report.cal, e.errors.cal, lim.cal}};
    for (const auto& m : metrics) {
      rows.csv += prefix + m.name + "," + full(m.value) + "," + full(m.se) + limits + "\n";
      std::string& block = rows.plot[std::string(m.name) + "_" + algorithm][a];
      if (block.empty()) {
        block = "# kernel_hat=" + std::string(to_string(e.assumed.kernel)) +
                " lengthscale_hat=" + full(e.assumed.theta.lengthscale) +
                " noise_var_hat=" + full(e.assumed.theta.noise_var) +
                " signal_var_hat=" + full(e.assumed.theta.signal_var) +
                "\n# n value stderr limit\n";
      }
      block += std::to_string(e.n) + " " + full(m.value) + " " + full(m.se) + " " +
               full(m.limit) + "\n";
    }
  }
}

int cmd_simulate(const SimulateConfig& c, std::ostream& out) {
  const std::vector<SimConfig> sims = sim_configs(c);
  if (c.oracle) {
    for (const SimConfig& s : sims) {
      if (s.n > kOracleMaxN) {
        throw InvalidArgument("--oracle requires every n <= " + std::to_string(kOracleMaxN));
      }
    }
  }
  SweepRows rows;
  rows.csv =
      "algorithm,n,m,kernel_hat,lengthscale_hat,noise_var_hat,signal_var_hat,metric,value,"
      "stderr,mse_lim,cal_lim,nll_lim\n";
  for (const SimConfig& s : sims) {
    append_sweep(rows, "alg1", s, run_algorithm1(s));
    if (c.oracle) append_sweep(rows, "alg1b", s, run_algorithm1b_oracle(s));
    out << "n = " << s.n << " done\n";
  }
  const fs::path dir = c.output_dir;
  write_file(dir / "sweep.csv", rows.csv);
  write_file(dir / "config.json", to_json(c));
  if (c.plot_data) {
    for (const auto& [name, blocks] : rows.plot) {
      std::string body;
      for (const auto& [index, block] : blocks) body += block + "\n\n";
      write_file(dir / (name + ".dat"), body);
    }
  }
  out << "wrote " << (dir / "sweep.csv").string() << "\n";
  return 0;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  const std::string sub = find_subcommand(argc, argv);
  const std::string config_path = find_config(argc, argv);
  ExperimentConfig exp;
  SimulateConfig sim;
  try {
    if (!config_path.empty()) {
      if (sub == "simulate") {
        sim = load_simulate_config(config_path);
      } else {
        exp = load_experiment_config(config_path);
      }
    }
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }

  CLI::App app{"Nearest-neighbour Gaussian process regression"};
  app.require_subcommand(1);
  std::size_t threads = 0;
  app.add_option("--threads", threads, "Worker thread cap (default: GPNN_THREADS or all cores)");
  std::string config_flag;
  std::string model_path;
  std::string test_path;
  std::string input_path;
  std::string output_path;
  std::string scale = "raw";

  CLI::App* fit_cmd = app.add_subcommand("fit", "Fit a model and write it with a timing report");
  fit_cmd->add_option("--config", config_flag, "JSON config file");
  add_experiment_flags(fit_cmd, exp);

  CLI::App* eval_cmd =
      app.add_subcommand("evaluate", "Per-seed split/fit/score, or score a saved model");
  eval_cmd->add_option("--config", config_flag, "JSON config file");
  eval_cmd->add_option("--model", model_path, "Saved model (skips fitting)");
  eval_cmd->add_option("--test", test_path, "Labelled CSV scored against --model");
  add_experiment_flags(eval_cmd, exp);

  CLI::App* predict_cmd = app.add_subcommand("predict", "Write id,mean,variance for each input row");
  predict_cmd->add_option("--config", config_flag, "JSON config file");
  predict_cmd->add_option("--model", model_path, "Saved model")->required();
  predict_cmd->add_option("--input", input_path, "CSV of query points")->required();
  predict_cmd->add_option("--output", output_path, "Output CSV");
  predict_cmd->add_option("--scale", scale, "raw or normalized");
  // Query files usually carry no target; name one to have it skipped.
  ExperimentConfig pexp = exp;
  pexp.target_column.clear();
  add_dataset_flags(predict_cmd, pexp);
  predict_cmd->add_option("--output_dir", pexp.output_dir);

  CLI::App* whiten_cmd = app.add_subcommand("whiten", "Fit and apply the prewhitening transform");
  whiten_cmd->add_option("--config", config_flag, "JSON config file");
  whiten_cmd->add_option("--test", test_path, "CSV transformed with the training fit");
  add_dataset_flags(whiten_cmd, exp);
  whiten_cmd->add_option("--output_dir", exp.output_dir);

  CLI::App* sim_cmd = app.add_subcommand("simulate", "Monte-Carlo sweep of GPnn limit behaviour");
  sim_cmd->add_option("--config", config_flag, "JSON config file");
  sim_cmd->add_option("--n", sim.n, "Training sizes")->delimiter(',');
  sim_cmd->add_option("--n_star", sim.n_star);
  sim_cmd->add_option("--m", sim.m);
  sim_cmd->add_option("--d", sim.d);
  sim_cmd->add_option("--kernel", sim.kernel);
  sim_cmd->add_option("--lengthscale", sim.lengthscale);
  sim_cmd->add_option("--noise_var", sim.noise_var);
  sim_cmd->add_option("--signal_var", sim.signal_var);
  sim_cmd->add_option("--noise", sim.noise, "gaussian or laplace");
  sim_cmd->add_option("--kernel_hat", sim.kernel_hat)->delimiter(',');
  sim_cmd->add_option("--lengthscale_hat", sim.lengthscale_hat)->delimiter(',');
  sim_cmd->add_option("--noise_var_hat", sim.noise_var_hat)->delimiter(',');
  sim_cmd->add_option("--signal_var_hat", sim.signal_var_hat)->delimiter(',');
  sim_cmd->add_option("--seed", sim.seed);
  sim_cmd->add_option("--design_seed", sim.design_seed);
  sim_cmd->add_flag("--oracle,!--no-oracle", sim.oracle, "Also run the full-joint sampler");
  sim_cmd->add_flag("--plot_data,!--no-plot_data", sim.plot_data, "Write gnuplot .dat files");
  sim_cmd->add_option("--output_dir", sim.output_dir);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? 0 : 2;
  }

  try {
    if (threads > 0) set_max_threads(threads);
    if (fit_cmd->parsed()) return cmd_fit(exp, out, err);
    if (eval_cmd->parsed()) return cmd_evaluate(exp, model_path, test_path, out, err);
    if (predict_cmd->parsed()) {
      return cmd_predict(model_path, input_path, pexp, output_path, scale, out, err);
    }
    if (whiten_cmd->parsed()) return cmd_whiten(exp, test_path, out, err);
    if (sim_cmd->parsed()) return cmd_simulate(sim, out);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}

}  // namespace gpnn::cli
