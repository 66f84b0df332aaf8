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

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace gpnn {
namespace {

namespace fs = std::filesystem;

const std::string kTiny = std::string(GPNN_TEST_DATA_DIR) + "/tiny_regression.csv";

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome run_cli(std::vector<std::string> args) {
  args.insert(args.begin(), "gpnn");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
  std::ifstream f(p);
  std::stringstream s;
  s << f.rdbuf();
  return s.str();
}

std::size_t count_lines(const std::string& s) {
  std::size_t n = 0;
  for (char c : s) n += c == '\n';
  return n;
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("gpnn_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }
  std::string at(const std::string& name) const { return (dir_ / name).string(); }
  fs::path dir_;
};

const std::vector<std::string> kQuickFit = {"--m",          "10", "--subset_size", "60",
                                            "--block_size", "20", "--iterations",  "10",
                                            "--calibration_size", "30"};

std::vector<std::string> with(std::vector<std::string> head, const std::vector<std::string>& tail) {
  head.insert(head.end(), tail.begin(), tail.end());
  return head;
}

TEST_F(CliTest, FitWritesModelAndReports) {
  const auto r = run_cli(with({"fit", "--dataset", kTiny, "--target_column", "y", "--output_dir",
                               at("fit")},
                              kQuickFit));
  ASSERT_EQ(r.code, 0) << r.err;
  for (const char* f : {"model.gpnn", "model.gpnn.meta", "timing.txt", "training.txt",
                        "config.json", "metrics.txt", "metrics.csv"}) {
    EXPECT_TRUE(fs::exists(dir_ / "fit" / f)) << f;
  }
  const std::string timing = slurp(dir_ / "fit" / "timing.txt");
  for (const char* key : {"whitening_s", "estimation_s", "index_build_s", "calibration_s",
                          "total_s"}) {
    EXPECT_NE(timing.find(key), std::string::npos) << key;
  }
}

TEST_F(CliTest, PredictAfterFit) {
  ASSERT_EQ(run_cli(with({"fit", "--dataset", kTiny, "--target_column", "y", "--train_fraction",
                          "1", "--output_dir", at("fit")},
                         kQuickFit))
                .code,
            0);
  const auto r = run_cli({"predict", "--model", at("fit/model.gpnn"), "--input", kTiny,
                          "--target_column", "y", "--output", at("pred.csv")});
  ASSERT_EQ(r.code, 0) << r.err;
  const std::string pred = slurp(at("pred.csv"));
  EXPECT_EQ(pred.rfind("id,mean,variance\n", 0), 0u);
  EXPECT_EQ(count_lines(pred), 101u);
}

TEST_F(CliTest, EvaluateAcrossSeeds) {
  const auto r = run_cli(with({"evaluate", "--dataset", kTiny, "--target_column", "y", "--seeds",
                               "0,1,2", "--output_dir", at("eval")},
                              kQuickFit));
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_TRUE(fs::exists(dir_ / "eval" / "metrics_seed2.txt"));
  EXPECT_TRUE(fs::exists(dir_ / "eval" / "summary.txt"));
  EXPECT_EQ(count_lines(slurp(dir_ / "eval" / "metrics.csv")), 4u);
}

TEST_F(CliTest, WhitenWritesTransform) {
  const auto r = run_cli({"whiten", "--dataset", kTiny, "--target_column", "y", "--output_dir",
                          at("w")});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_TRUE(fs::exists(dir_ / "w" / "train_whitened.csv"));
  EXPECT_TRUE(fs::exists(dir_ / "w" / "transform.json"));
}

TEST_F(CliTest, SimulateWritesSweep) {
  const auto r = run_cli({"simulate", "--n", "200,400", "--n_star", "50", "--m", "5", "--d", "2",
                          "--lengthscale", "0.5", "--noise_var", "0.1", "--signal_var", "0.9",
                          "--noise_var_hat", "0.1,0.2", "--oracle", "--plot_data",
                          "--output_dir", at("sim")});
  ASSERT_EQ(r.code, 0) << r.err;
  const std::string sweep = slurp(dir_ / "sim" / "sweep.csv");
  // 2 sizes x 2 assumed models x 3 metrics x 2 algorithms, plus the header.
  EXPECT_EQ(count_lines(sweep), 25u);
  EXPECT_TRUE(fs::exists(dir_ / "sim" / "mse_alg1.dat"));
}

TEST_F(CliTest, ConfigFileAndOverride) {
  std::ofstream(at("c.json")) << R"({"dataset": ")" << kTiny
                              << R"(", "target_column": "y", "m": 10, "subset_size": 60,
      "block_size": 20, "iterations": 5, "calibration_size": 30, "seeds": [4]})";
  const auto r = run_cli({"evaluate", "--config", at("c.json"), "--m", "8", "--output_dir",
                          at("cfg")});
  ASSERT_EQ(r.code, 0) << r.err;
  const std::string echoed = slurp(dir_ / "cfg" / "config.json");
  EXPECT_NE(echoed.find("\"m\": 8"), std::string::npos) << echoed;
}

TEST_F(CliTest, UsageErrors) {
  EXPECT_EQ(run_cli({}).code, 2);
  EXPECT_EQ(run_cli({"fit", "--no-such-flag"}).code, 2);
  EXPECT_EQ(run_cli({"predict", "--input", kTiny}).code, 2);
  std::ofstream(at("bad.json")) << R"({"dataset": "x", "mystery": 1})";
  EXPECT_NE(run_cli({"fit", "--config", at("bad.json")}).code, 0);
}

TEST_F(CliTest, RuntimeErrors) {
  EXPECT_EQ(run_cli({"fit", "--dataset", at("missing.csv"), "--output_dir", at("x")}).code, 1);
  std::ofstream(at("junk.gpnn")) << "not a model";
  EXPECT_EQ(run_cli({"predict", "--model", at("junk.gpnn"), "--input", kTiny, "--output",
                     at("p.csv")})
                .code,
            1);
}

}  // namespace
}  // namespace gpnn
