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


#include "gpnn/simulate.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <string>

#include "gpnn/error.hpp"
#include "gpnn/gp.hpp"
#include "gpnn/linalg.hpp"
#include "gpnn/nn_index.hpp"
#include "gpnn/parallel.hpp"

namespace gpnn {
namespace {

std::string lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

// The neighbour rows followed by the query as the last row.
PointSet stack_with_query(const PointSet& source, const std::vector<std::size_t>& rows,
                          Point query) {
  const auto d = source.cols();
  PointSet out(static_cast<Eigen::Index>(rows.size()) + 1, d);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    out.row(static_cast<Eigen::Index>(i)) = source.row(static_cast<Eigen::Index>(rows[i]));
  }
  for (Eigen::Index k = 0; k < d; ++k) out(out.rows() - 1, k) = query[static_cast<std::size_t>(k)];
  return out;
}

Neighbourhood split_last(PointSet points, Vector values) {
  const Eigen::Index m = points.rows() - 1;
  Neighbourhood nb;
  nb.query = points.row(m).transpose();
  nb.target = values(m);
  nb.neighbours = points.topRows(m);
  nb.targets = values.head(m);
  return nb;
}

}  // namespace

NoiseLaw parse_noise_law(std::string_view name) {
  const std::string s = lower(name);
  if (s == "gaussian" || s == "normal") return NoiseLaw::kGaussian;
  if (s == "laplace" || s == "laplacian") return NoiseLaw::kLaplace;
  throw InvalidArgument("unknown noise law '" + std::string(name) +
                        "' (expected gaussian or laplace)");
}

std::string_view to_string(NoiseLaw law) {
  return law == NoiseLaw::kGaussian ? "gaussian" : "laplace";
}

void SimConfig::validate() const {
  if (n == 0 || n_star == 0 || m == 0 || d == 0) {
    throw InvalidArgument("simulation sizes n, n_star, m, d must be positive");
  }
  if (n < m + 1) {
    throw InvalidArgument("simulation requires n >= m + 1 (n=" + std::to_string(n) +
                          ", m=" + std::to_string(m) + ")");
  }
  gen_theta.validate();
  for (const AssumedModel& a : assumed) a.theta.validate();
}

std::vector<AssumedModel> SimConfig::assumed_or_generating() const {
  if (!assumed.empty()) return assumed;
  return {AssumedModel{gen_kernel, gen_theta}};
}

Vector sample_mvn(const Matrix& cov, RandomStream& rng) {
  if (cov.rows() != cov.cols()) throw InvalidArgument("sample_mvn: covariance must be square");
  const CholeskyFactor factor = cholesky(cov);
  Vector z(cov.rows());
  for (Eigen::Index i = 0; i < z.size(); ++i) z(i) = rng.normal();
  return factor.llt().matrixL() * z;
}

PointSet sample_design(std::size_t count, std::size_t d, RandomStream& rng) {
  PointSet x(static_cast<Eigen::Index>(count), static_cast<Eigen::Index>(d));
  const double scale = 1.0 / std::sqrt(static_cast<double>(d));
  for (Eigen::Index i = 0; i < x.rows(); ++i) {
    for (Eigen::Index k = 0; k < x.cols(); ++k) x(i, k) = scale * rng.normal();
  }
  return x;
}

Vector sample_observations(const PointSet& points, KernelFamily kernel, const Theta& theta,
                           NoiseLaw noise, RandomStream& rng) {
  if (noise == NoiseLaw::kGaussian) return sample_mvn(gram(theta, kernel, points), rng);
  Matrix latent_cov = theta.signal_var * correlation_matrix(kernel, theta.lengthscale, points);
  Vector y = sample_mvn(latent_cov, rng);
  const double scale = std::sqrt(theta.noise_var / 2.0);
  for (Eigen::Index i = 0; i < y.size(); ++i) y(i) += rng.laplace(scale);
  return y;
}

std::vector<Neighbourhood> simulate_neighbourhoods(const SimConfig& cfg) {
  cfg.validate();
  RandomStream design_rng(cfg.design_seed.value_or(cfg.seed), StreamPurpose::kDesign);
  RandomStream test_rng(cfg.seed, StreamPurpose::kTestDesign);
  const NeighbourIndex index(sample_design(cfg.n, cfg.d, design_rng));
  const PointSet queries = sample_design(cfg.n_star, cfg.d, test_rng);

  std::vector<Neighbourhood> out(cfg.n_star);
  parallel_for(cfg.n_star, [&](std::size_t begin, std::size_t end) {
    for (std::size_t j = begin; j < end; ++j) {
      const Point query = row_of(queries, static_cast<Eigen::Index>(j));
      const Neighbours nn = index.query(query, cfg.m);
      PointSet points = stack_with_query(index.points(), nn.indices, query);
      RandomStream rng(cfg.seed, StreamPurpose::kSample, j);
      Vector values = sample_observations(points, cfg.gen_kernel, cfg.gen_theta, cfg.noise, rng);
      out[j] = split_last(std::move(points), std::move(values));
    }
  });
  return out;
}

std::vector<Neighbourhood> simulate_neighbourhoods_full(const SimConfig& cfg) {
  cfg.validate();
  if (cfg.n > kOracleMaxN) {
    throw InvalidArgument("full-joint simulation is limited to n <= " +
                          std::to_string(kOracleMaxN));
  }
  RandomStream design_rng(cfg.design_seed.value_or(cfg.seed), StreamPurpose::kDesign);
  RandomStream test_rng(cfg.seed, StreamPurpose::kTestDesign);
  const NeighbourIndex index(sample_design(cfg.n, cfg.d, design_rng));
  const PointSet queries = sample_design(cfg.n_star, cfg.d, test_rng);
  std::vector<std::size_t> all(cfg.n);
  for (std::size_t i = 0; i < cfg.n; ++i) all[i] = i;

  std::vector<Neighbourhood> out(cfg.n_star);
  parallel_for(cfg.n_star, [&](std::size_t begin, std::size_t end) {
    for (std::size_t j = begin; j < end; ++j) {
      const Point query = row_of(queries, static_cast<Eigen::Index>(j));
      const PointSet joint = stack_with_query(index.points(), all, query);
      RandomStream rng(cfg.seed, StreamPurpose::kSample, j);
      const Vector values =
          sample_observations(joint, cfg.gen_kernel, cfg.gen_theta, cfg.noise, rng);

      const Neighbours nn = index.query(query, cfg.m);
      PointSet points = stack_with_query(index.points(), nn.indices, query);
      Vector picked(points.rows());
      for (std::size_t i = 0; i < nn.indices.size(); ++i) {
        picked(static_cast<Eigen::Index>(i)) = values(static_cast<Eigen::Index>(nn.indices[i]));
      }
      picked(picked.size() - 1) = values(static_cast<Eigen::Index>(cfg.n));
      out[j] = split_last(std::move(points), std::move(picked));
    }
  });
  return out;
}

SweepResult evaluate_neighbourhoods(const SimConfig& cfg,
                                    const std::vector<Neighbourhood>& neighbourhoods) {
  if (neighbourhoods.empty()) throw InvalidArgument("no neighbourhoods to evaluate");
  std::vector<double> targets(neighbourhoods.size());
  for (std::size_t j = 0; j < neighbourhoods.size(); ++j) targets[j] = neighbourhoods[j].target;

  SweepResult result;
  for (const AssumedModel& assumed : cfg.assumed_or_generating()) {
    std::vector<PredictiveDistribution> preds(neighbourhoods.size());
    parallel_for(neighbourhoods.size(), [&](std::size_t begin, std::size_t end) {
      for (std::size_t j = begin; j < end; ++j) {
        const Neighbourhood& nb = neighbourhoods[j];
        preds[j] = predictive(assumed.theta, assumed.kernel, nb.neighbours, as_span(nb.targets),
                              as_span(nb.query));
      }
    });
    const MetricsWithErrors metrics = evaluate_with_errors(preds, targets);
    result.entries.push_back(SweepEntry{cfg.n, cfg.m, assumed, metrics.report, metrics.errors});
  }
  return result;
}

SweepResult run_algorithm1(const SimConfig& cfg) {
  return evaluate_neighbourhoods(cfg, simulate_neighbourhoods(cfg));
}

SweepResult run_algorithm1b_oracle(const SimConfig& cfg) {
  return evaluate_neighbourhoods(cfg, simulate_neighbourhoods_full(cfg));
}

Dataset gen_gp_dataset(std::size_t n, std::size_t d, KernelFamily kernel, const Theta& theta,
                       std::size_t block_size, RandomStream& rng) {
  if (n == 0 || d == 0 || block_size == 0) {
    throw InvalidArgument("gen_gp_dataset: n, d and block_size must be positive");
  }
  theta.validate();
  Dataset data;
  data.x = sample_design(n, d, rng);
  data.y.resize(static_cast<Eigen::Index>(n));
  for (std::size_t begin = 0; begin < n; begin += block_size) {
    const std::size_t end = std::min(n, begin + block_size);
    const auto b = static_cast<Eigen::Index>(begin);
    const auto len = static_cast<Eigen::Index>(end - begin);
    const PointSet block = data.x.middleRows(b, len);
    data.y.segment(b, len) = sample_observations(block, kernel, theta, NoiseLaw::kGaussian, rng);
  }
  for (std::size_t k = 0; k < d; ++k) data.feature_names.push_back("x" + std::to_string(k));
  data.target_name = "y";
  data.provenance = "gp blocks of " + std::to_string(block_size) + ", kernel " +
                    std::string(to_string(kernel));
  return data;
}

}  // namespace gpnn
