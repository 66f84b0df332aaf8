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

#include "gpnn/data.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <limits>
#include <numeric>
#include <sstream>

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>
#include "json.hpp"

#include "gpnn/error.hpp"
#include "gpnn/random.hpp"

namespace gpnn {
namespace {

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  s = s.substr(first, last - first + 1);
  if (s.size() >= 2 && s.front() == '"' && s.back() == '"') s = s.substr(1, s.size() - 2);
  return std::string(s);
}

std::vector<std::string> split_line(const std::string& line, char delimiter) {
  std::vector<std::string> cells;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = line.find(delimiter, start);
    if (pos == std::string::npos) {
      cells.push_back(trim(std::string_view(line).substr(start)));
      break;
    }
    cells.push_back(trim(std::string_view(line).substr(start, pos - start)));
    start = pos + 1;
  }
  return cells;
}

bool is_null_cell(const std::string& cell) {
  if (cell.empty() || cell == "?") return true;
  std::string lower(cell);
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return lower == "na" || lower == "nan" || lower == "null" || lower == "none";
}

std::optional<double> parse_number(const std::string& cell) {
  double value = 0.0;
  const char* begin = cell.data();
  const char* end = begin + cell.size();
  if (begin != end && *begin == '+') ++begin;
  const auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc() || ptr != end || !std::isfinite(value)) return std::nullopt;
  return value;
}

std::size_t resolve_column(const std::string& ref, const std::vector<std::string>& names,
                           const std::string& path) {
  if (auto it = std::find(names.begin(), names.end(), ref); it != names.end()) {
    return static_cast<std::size_t>(it - names.begin());
  }
  long long position = 0;
  const auto [ptr, ec] = std::from_chars(ref.data(), ref.data() + ref.size(), position);
  if (ec == std::errc() && ptr == ref.data() + ref.size()) {
    const auto count = static_cast<long long>(names.size());
    if (position < 0) position += count;
    if (position >= 0 && position < count) return static_cast<std::size_t>(position);
  }
  throw DataError(path + ": column '" + ref + "' not found");
}

}  // namespace

std::map<std::string, DatasetRecipe> load_recipes(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open recipe file " + path);
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::exception& e) {
    throw DataError(path + ": invalid recipe JSON: " + e.what());
  }
  std::map<std::string, DatasetRecipe> recipes;
  for (const auto& [name, entry] : doc.items()) {
    DatasetRecipe recipe;
    recipe.name = name;
    try {
      recipe.options.target_column = entry.value("target", std::string("-1"));
      recipe.options.drop_columns = entry.value("drop", std::vector<std::string>{});
      recipe.options.has_header = entry.value("header", true);
      const std::string delimiter = entry.value("delimiter", std::string(","));
      if (delimiter.size() != 1) throw DataError("delimiter must be a single character");
      recipe.options.delimiter = delimiter[0];
      recipe.note = entry.value("note", std::string());
    } catch (const nlohmann::json::exception& e) {
      throw DataError(path + ": recipe '" + name + "': " + e.what());
    }
    recipes.emplace(name, std::move(recipe));
  }
  return recipes;
}

Dataset load_csv(const std::string& path, const CsvOptions& options) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open " + path);

  std::string line;
  std::vector<std::string> names;
  std::vector<std::vector<std::string>> first_row;
  if (options.has_header) {
    if (!std::getline(in, line)) throw DataError(path + ": empty file");
    names = split_line(line, options.delimiter);
  } else {
    while (std::getline(in, line)) {
      if (trim(line).empty()) continue;
      first_row.push_back(split_line(line, options.delimiter));
      break;
    }
    if (first_row.empty()) throw DataError(path + ": empty file");
    for (std::size_t i = 0; i < first_row[0].size(); ++i) names.push_back(std::to_string(i));
  }

  const bool has_target = !options.target_column.empty();
  const std::size_t target =
      has_target ? resolve_column(options.target_column, names, path) : names.size();
  std::vector<bool> dropped(names.size(), false);
  for (const auto& ref : options.drop_columns) dropped[resolve_column(ref, names, path)] = true;
  if (has_target && dropped[target]) {
    throw DataError(path + ": target column is also listed in drop_columns");
  }

  Dataset data;
  data.provenance = path;
  if (has_target) data.target_name = names[target];
  std::vector<std::size_t> feature_cols;
  for (std::size_t c = 0; c < names.size(); ++c) {
    if (c != target && !dropped[c]) {
      feature_cols.push_back(c);
      data.feature_names.push_back(names[c]);
    }
  }

  std::vector<double> xs;
  std::vector<double> ys;
  std::size_t rows = 0;
  std::size_t line_number = options.has_header ? 1 : 0;
  auto consume = [&](const std::vector<std::string>& cells) {
    if (cells.size() != names.size()) {
      ++data.unparseable_rows;
      data.warnings.push_back(path + ":" + std::to_string(line_number) + ": expected " +
                              std::to_string(names.size()) + " cells, found " +
                              std::to_string(cells.size()) + "; row dropped");
      return;
    }
    std::vector<double> row;
    row.reserve(feature_cols.size() + 1);
    bool has_null = false;
    for (std::size_t c : feature_cols) {
      if (is_null_cell(cells[c])) {
        has_null = true;
        continue;
      }
      if (auto v = parse_number(cells[c])) {
        row.push_back(*v);
      } else {
        ++data.unparseable_rows;
        data.warnings.push_back(path + ":" + std::to_string(line_number) + ": unparseable cell '" +
                                cells[c] + "' in column '" + names[c] + "'; row dropped");
        return;
      }
    }
    if (has_null || (has_target && is_null_cell(cells[target]))) {
      ++data.null_rows;
      return;
    }
    if (has_target) {
      const auto y = parse_number(cells[target]);
      if (!y) {
        ++data.unparseable_rows;
        data.warnings.push_back(path + ":" + std::to_string(line_number) +
                                ": unparseable target '" + cells[target] + "'; row dropped");
        return;
      }
      ys.push_back(*y);
    }
    ++rows;
    xs.insert(xs.end(), row.begin(), row.end());
  };

  for (const auto& cells : first_row) {
    ++line_number;
    consume(cells);
  }
  while (std::getline(in, line)) {
    ++line_number;
    if (trim(line).empty()) continue;
    consume(split_line(line, options.delimiter));
  }

  if (rows == 0) throw DataError(path + ": no usable rows");
  const auto n = static_cast<Eigen::Index>(rows);
  const auto d = static_cast<Eigen::Index>(feature_cols.size());
  if (d == 0) throw DataError(path + ": no feature columns remain");
  data.x = Eigen::Map<const PointSet>(xs.data(), n, d);
  if (has_target) data.y = Eigen::Map<const Vector>(ys.data(), n);
  return data;
}

void save_csv(const std::string& path, const Dataset& data) {
  std::ofstream out(path);
  if (!out) throw DataError("cannot write " + path);
  out << std::setprecision(17);
  for (const auto& name : data.feature_names) out << name << ',';
  out << (data.target_name.empty() ? "y" : data.target_name) << '\n';
  for (Eigen::Index i = 0; i < data.x.rows(); ++i) {
    for (Eigen::Index k = 0; k < data.x.cols(); ++k) out << data.x(i, k) << ',';
    out << data.y[i] << '\n';
  }
  if (!out) throw DataError("write failed for " + path);
}

Dataset select_rows(const Dataset& data, std::span<const std::size_t> rows) {
  Dataset out;
  out.feature_names = data.feature_names;
  out.target_name = data.target_name;
  out.provenance = data.provenance;
  out.x.resize(static_cast<Eigen::Index>(rows.size()), data.x.cols());
  out.y.resize(static_cast<Eigen::Index>(rows.size()));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    out.x.row(static_cast<Eigen::Index>(i)) = data.x.row(static_cast<Eigen::Index>(rows[i]));
    out.y[static_cast<Eigen::Index>(i)] = data.y[static_cast<Eigen::Index>(rows[i])];
  }
  return out;
}

WhiteningTransform::WhiteningTransform(double mu_y, double sigma_y, Vector mu_x, Matrix factor,
                                       bool ridge_applied)
    : mu_y_(mu_y),
      sigma_y_(sigma_y),
      mu_x_(std::move(mu_x)),
      factor_(std::move(factor)),
      ridge_applied_(ridge_applied) {
  const auto d = mu_x_.size();
  factor_inv_ = factor_.triangularView<Eigen::Lower>().solve(Matrix::Identity(d, d));
}

WhiteningTransform WhiteningTransform::identity(std::size_t dim) {
  // M = sqrt(1/d) I makes the 1/sqrt(d) factor cancel.
  const auto d = static_cast<Eigen::Index>(dim);
  WhiteningTransform t(0.0, 1.0, Vector::Zero(d), Matrix::Identity(d, d), false);
  t.factor_ = Matrix::Identity(d, d) / std::sqrt(static_cast<double>(dim));
  t.factor_inv_ = Matrix::Identity(d, d) * std::sqrt(static_cast<double>(dim));
  return t;
}

WhiteningTransform WhiteningTransform::from_parts(double mu_y, double sigma_y, Vector mu_x,
                                                  Matrix factor, Matrix factor_inverse,
                                                  bool ridge_applied) {
  WhiteningTransform t;
  t.mu_y_ = mu_y;
  t.sigma_y_ = sigma_y;
  t.mu_x_ = std::move(mu_x);
  t.factor_ = std::move(factor);
  t.factor_inv_ = std::move(factor_inverse);
  t.ridge_applied_ = ridge_applied;
  return t;
}

void WhiteningTransform::apply_point(Point x, std::span<double> out) const {
  const std::size_t d = dim();
  if (x.size() != d) throw DimensionMismatch("whitening", d, x.size());
  const double scale = 1.0 / std::sqrt(static_cast<double>(d));
  // Lower-triangular product, one fixed summation order per output element.
  for (std::size_t i = 0; i < d; ++i) {
    double sum = 0.0;
    for (std::size_t k = 0; k <= i; ++k) {
      sum += factor_inv_(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k)) *
             (x[k] - mu_x_[static_cast<Eigen::Index>(k)]);
    }
    out[i] = scale * sum;
  }
}

PointSet WhiteningTransform::apply_x(const PointSet& x) const {
  if (static_cast<std::size_t>(x.cols()) != dim()) {
    throw DimensionMismatch("whitening", dim(), static_cast<std::size_t>(x.cols()));
  }
  PointSet out(x.rows(), x.cols());
  for (Eigen::Index i = 0; i < x.rows(); ++i) {
    apply_point(row_of(x, i), {out.data() + i * out.cols(), dim()});
  }
  return out;
}

Vector WhiteningTransform::apply_y(const Vector& y) const {
  return ((y.array() - mu_y_) / sigma_y_).matrix();
}

PointSet WhiteningTransform::invert_x(const PointSet& whitened) const {
  if (static_cast<std::size_t>(whitened.cols()) != dim()) {
    throw DimensionMismatch("whitening inverse", dim(), static_cast<std::size_t>(whitened.cols()));
  }
  const double scale = std::sqrt(static_cast<double>(dim()));
  PointSet out = (scale * whitened) * factor_.transpose();
  out.rowwise() += mu_x_.transpose();
  return out;
}

bool WhiteningTransform::operator==(const WhiteningTransform& o) const {
  return mu_y_ == o.mu_y_ && sigma_y_ == o.sigma_y_ && mu_x_ == o.mu_x_ && factor_ == o.factor_ &&
         factor_inv_ == o.factor_inv_ && ridge_applied_ == o.ridge_applied_;
}

WhiteningTransform fit_whitening(const Dataset& train) {
  const std::size_t n = train.size();
  const std::size_t d = train.dim();
  if (n < d + 1) {
    throw DataError("fit_whitening: need at least d + 1 = " + std::to_string(d + 1) +
                    " training rows, got " + std::to_string(n));
  }
  const double inv_n = 1.0 / static_cast<double>(n);

  const double mu_y = train.y.sum() * inv_n;
  const double var_y = (train.y.array() - mu_y).square().sum() * inv_n;
  if (!(var_y > 0.0)) throw DataError("fit_whitening: training targets are constant");

  const Vector mu_x = train.x.colwise().sum().transpose() * inv_n;
  const PointSet centred = train.x.rowwise() - mu_x.transpose();
  Matrix cov = (centred.transpose() * centred) * inv_n;

  const double mean_var = cov.trace() / static_cast<double>(d);
  auto factorise = [](const Matrix& m) -> std::optional<Matrix> {
    Eigen::LLT<Matrix> llt(m);
    if (llt.info() != Eigen::Success) return std::nullopt;
    Matrix l = llt.matrixL();
    if (!l.allFinite()) return std::nullopt;
    return l;
  };

  bool ridge = false;
  std::optional<Matrix> factor = factorise(cov);
  if (factor) {
    const double min_pivot = factor->diagonal().array().square().minCoeff();
    if (!(min_pivot > 1e-12 * mean_var)) factor.reset();
  }
  if (!factor) {
    ridge = true;
    cov.diagonal().array() += 1e-8 * mean_var;
    factor = mean_var > 0.0 ? factorise(cov) : std::nullopt;
  }
  if (!factor) {
    std::ostringstream msg;
    msg << "fit_whitening: input covariance is singular; degenerate directions:";
    Eigen::SelfAdjointEigenSolver<Matrix> eig(cov);
    for (Eigen::Index j = 0; j < eig.eigenvalues().size(); ++j) {
      if (eig.eigenvalues()[j] > 1e-12 * std::max(mean_var, 1e-300)) continue;
      Eigen::Index top = 0;
      eig.eigenvectors().col(j).cwiseAbs().maxCoeff(&top);
      const auto t = static_cast<std::size_t>(top);
      msg << " [eigenvalue " << eig.eigenvalues()[j] << ", dominated by '"
          << (t < train.feature_names.size() ? train.feature_names[t] : std::to_string(t)) << "']";
    }
    throw DataError(msg.str());
  }
  return WhiteningTransform(mu_y, std::sqrt(var_y), mu_x, *factor, ridge);
}

WhitenedData apply_whitening(const WhiteningTransform& transform, const PointSet& x,
                             const std::optional<Vector>& y) {
  WhitenedData out;
  out.x = transform.apply_x(x);
  if (y) out.y = transform.apply_y(*y);
  return out;
}

SplitIndices split_indices(std::size_t n, double train_fraction, std::uint64_t seed) {
  if (!(train_fraction > 0.0 && train_fraction < 1.0)) {
    throw InvalidArgument("split: train_fraction must lie in (0, 1)");
  }
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), std::size_t{0});
  RandomStream rng(seed, StreamPurpose::kSplit);
  for (std::size_t i = n; i > 1; --i) {
    std::swap(perm[i - 1], perm[static_cast<std::size_t>(rng.below(i))]);
  }
  auto n_train = static_cast<std::size_t>(std::llround(train_fraction * static_cast<double>(n)));
  if (n >= 2) n_train = std::clamp<std::size_t>(n_train, 1, n - 1);
  SplitIndices out;
  out.train.assign(perm.begin(), perm.begin() + static_cast<std::ptrdiff_t>(n_train));
  out.test.assign(perm.begin() + static_cast<std::ptrdiff_t>(n_train), perm.end());
  return out;
}

std::pair<Dataset, Dataset> split(const Dataset& data, double train_fraction, std::uint64_t seed) {
  const SplitIndices idx = split_indices(data.size(), train_fraction, seed);
  return {select_rows(data, idx.train), select_rows(data, idx.test)};
}

}  // namespace gpnn
