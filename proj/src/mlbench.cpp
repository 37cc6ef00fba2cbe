// Copyright 2026 The chainvault Authors
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

#include "chainvault/mlbench.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <limits>
#include <map>
#include <set>

#include "chainvault/csv.hpp"
#include "chainvault/hash.hpp"

namespace chainvault {

namespace {

struct Column {
  bool categorical = false;
  std::vector<std::string> categories;  // sorted; [0] is the dropped baseline
};

// Householder QR on a column-major copy of [A | b]. `parallel` only changes
// how the per-column updates are scheduled.
std::vector<double> householder_solve(std::span<const double> a, std::size_t rows,
                                      std::size_t cols, std::span<const double> b,
                                      bool parallel) {
  if (a.size() != rows * cols || b.size() != rows) {
    fail(Errc::kInvalidArgument, "least squares: dimension mismatch");
  }
  if (rows < cols || cols == 0) {
    fail(Errc::kInsufficientRows, "least squares needs rows >= cols >= 1");
  }
  const std::size_t m = rows;
  const std::size_t width = cols + 1;  // last column holds b
  std::vector<double> w(m * width);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < cols; ++j) w[j * m + i] = a[i * cols + j];
    w[cols * m + i] = b[i];
  }
  auto col = [&](std::size_t j) { return w.data() + j * m; };

  std::vector<double> diag(cols);
  double max_diag = 0.0;
  std::vector<double> v(m);
  for (std::size_t k = 0; k < cols; ++k) {
    double* ck = col(k);
    double norm2 = 0.0;
    for (std::size_t i = k; i < m; ++i) norm2 += ck[i] * ck[i];
    double norm = std::sqrt(norm2);
    max_diag = std::max(max_diag, norm);
    double tol = static_cast<double>(std::max(m, cols)) *
                 std::numeric_limits<double>::epsilon() * max_diag;
    if (norm == 0.0 || norm <= tol) {
      fail(Errc::kRankDeficient, "design matrix is rank deficient at column " +
                                     std::to_string(k));
    }
    double alpha = ck[k] > 0 ? -norm : norm;
    for (std::size_t i = k; i < m; ++i) v[i] = ck[i];
    v[k] -= alpha;
    double vnorm2 = 0.0;
    for (std::size_t i = k; i < m; ++i) vnorm2 += v[i] * v[i];
    diag[k] = alpha;

    auto reflect = [&](std::size_t j) {
      double* cj = col(j);
      double s = 0.0;
      for (std::size_t i = k; i < m; ++i) s += v[i] * cj[i];
      double f = 2.0 * s / vnorm2;
      for (std::size_t i = k; i < m; ++i) cj[i] -= f * v[i];
    };
    auto first = static_cast<std::int64_t>(k + 1);
    auto last = static_cast<std::int64_t>(width);
    // Below ~64k flops per sweep the team start-up costs more than it saves.
    if (parallel && (m - k) * (width - k) >= (1u << 16)) {
#pragma omp parallel for schedule(static)
      for (std::int64_t j = first; j < last; ++j) reflect(static_cast<std::size_t>(j));
    } else {
      for (std::int64_t j = first; j < last; ++j) reflect(static_cast<std::size_t>(j));
    }
  }

  // Back substitution on R x = (Q^T b)[0..cols).
  const double* qtb = col(cols);
  std::vector<double> x(cols);
  for (std::size_t kk = cols; kk-- > 0;) {
    double s = qtb[kk];
    for (std::size_t j = kk + 1; j < cols; ++j) s -= col(j)[kk] * x[j];
    x[kk] = s / diag[kk];
  }
  return x;
}

// splitmix64; small, portable and fully specified.
class SplitMix {
 public:
  explicit SplitMix(std::uint64_t seed) : state_(seed) {}
  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
  std::uint64_t below(std::uint64_t n) { return next() % n; }
  double normal() {
    double u1 = uniform();
    double u2 = uniform();
    if (u1 < 1e-300) u1 = 1e-300;
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586 * u2);
  }

 private:
  std::uint64_t state_;
};

std::string fixed(double v, int decimals) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", decimals, v);
  return buf;
}

}  // namespace

Dataset ingest_csv(ByteView csv, std::string_view target_column, const SchemaConfig& schema) {
  auto table = parse_csv(to_string(csv));
  auto target_it = std::find(table.header.begin(), table.header.end(), target_column);
  if (target_it == table.header.end()) {
    fail(Errc::kMissingTarget, "target column '" + std::string(target_column) + "' not in header");
  }
  const auto target_idx = static_cast<std::size_t>(target_it - table.header.begin());
  const std::set<std::string> forced(schema.categorical.begin(), schema.categorical.end());

  std::vector<Column> columns(table.header.size());
  for (std::size_t c = 0; c < table.header.size(); ++c) {
    auto& column = columns[c];
    bool all_numeric = true;
    for (std::size_t r = 0; r < table.rows.size(); ++r) {
      const auto& cell = table.rows[r][c];
      if (cell.empty()) {
        fail(Errc::kUnparsableCsv, "missing value in column '" + table.header[c] +
                                       "' on line " + std::to_string(table.lines[r]));
      }
      if (all_numeric && !parse_number(cell)) all_numeric = false;
    }
    if (c == target_idx) {
      if (!all_numeric) {
        fail(Errc::kNonNumericTarget, "target column '" + table.header[c] + "' is not numeric");
      }
      continue;
    }
    column.categorical = forced.contains(table.header[c]) ||
                         (!all_numeric && schema.infer_categorical);
    if (!all_numeric && !column.categorical) {
      fail(Errc::kUnparsableCsv, "column '" + table.header[c] + "' is not numeric");
    }
    if (column.categorical) {
      std::set<std::string> cats;
      for (const auto& row : table.rows) cats.insert(row[c]);
      column.categories.assign(cats.begin(), cats.end());
    }
  }

  Dataset out;
  out.target_name = std::string(target_column);
  for (std::size_t c = 0; c < table.header.size(); ++c) {
    if (c == target_idx) continue;
    if (!columns[c].categorical) {
      out.column_names.push_back(table.header[c]);
      continue;
    }
    for (std::size_t k = 1; k < columns[c].categories.size(); ++k) {
      out.column_names.push_back(table.header[c] + "=" + columns[c].categories[k]);
    }
  }
  out.n_rows = table.rows.size();
  out.n_cols = out.column_names.size();
  out.features.reserve(out.n_rows * out.n_cols);
  out.target.reserve(out.n_rows);
  for (const auto& row : table.rows) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c == target_idx) continue;
      const auto& column = columns[c];
      if (!column.categorical) {
        out.features.push_back(*parse_number(row[c]));
        continue;
      }
      for (std::size_t k = 1; k < column.categories.size(); ++k) {
        out.features.push_back(row[c] == column.categories[k] ? 1.0 : 0.0);
      }
    }
    out.target.push_back(*parse_number(row[target_idx]));
  }
  return out;
}

RegressionModel train_ols(const Dataset& data) {
  const std::size_t cols = data.n_cols + 1;
  if (data.n_rows <= data.n_cols) {
    fail(Errc::kInsufficientRows, "need more than " + std::to_string(data.n_cols) +
                                      " rows, have " + std::to_string(data.n_rows));
  }
  std::vector<double> design(data.n_rows * cols);
  for (std::size_t r = 0; r < data.n_rows; ++r) {
    design[r * cols] = 1.0;
    for (std::size_t c = 0; c < data.n_cols; ++c) design[r * cols + c + 1] = data.at(r, c);
  }
  auto x = solve_least_squares(design, data.n_rows, cols, data.target);

  RegressionModel model;
  model.target_name = data.target_name;
  model.intercept = x[0];
  model.coefficients.assign(x.begin() + 1, x.end());
  double sse = 0.0;
  for (std::size_t r = 0; r < data.n_rows; ++r) {
    double resid = data.target[r] - model.predict({data.features.data() + r * data.n_cols,
                                                   data.n_cols});
    sse += resid * resid;
  }
  model.train_mse = sse / static_cast<double>(data.n_rows);
  return model;
}

std::vector<double> solve_least_squares(std::span<const double> a, std::size_t rows,
                                        std::size_t cols, std::span<const double> b) {
  return householder_solve(a, rows, cols, b, /*parallel=*/true);
}

namespace serial {
std::vector<double> solve_least_squares(std::span<const double> a, std::size_t rows,
                                        std::size_t cols, std::span<const double> b) {
  return householder_solve(a, rows, cols, b, /*parallel=*/false);
}
}  // namespace serial

double RegressionModel::predict(std::span<const double> features) const {
  double y = intercept;
  for (std::size_t i = 0; i < coefficients.size(); ++i) y += coefficients[i] * features[i];
  return y;
}

Bytes RegressionModel::serialize() const {
  auto finite = [](double v) { return std::isfinite(v); };
  if (!std::all_of(coefficients.begin(), coefficients.end(), finite) || !finite(intercept) ||
      !finite(train_mse)) {
    fail(Errc::kNonFiniteCoefficient, "model contains a non-finite value");
  }
  ByteWriter w;
  w.raw(kModelMagic).u32(static_cast<std::uint32_t>(target_name.size())).raw(target_name);
  w.u32(static_cast<std::uint32_t>(coefficients.size()));
  for (double c : coefficients) w.f64(c);
  w.f64(intercept).f64(train_mse);
  return std::move(w).take();
}

Digest RegressionModel::model_hash() const { return sha256(serialize()); }

RegressionModel RegressionModel::parse(ByteView artifact) {
  ByteReader r(artifact, Errc::kMalformedModel);
  if (to_string(r.raw(4)) != kModelMagic) fail(Errc::kMalformedModel, "bad model magic");
  RegressionModel m;
  m.target_name = to_string(r.raw(r.u32()));
  auto count = r.u32();
  if (count > r.remaining() / 8) fail(Errc::kMalformedModel, "coefficient count exceeds file");
  for (std::uint32_t i = 0; i < count; ++i) m.coefficients.push_back(r.f64());
  m.intercept = r.f64();
  m.train_mse = r.f64();
  if (!r.done()) fail(Errc::kMalformedModel, "trailing bytes after model");
  return m;
}

std::string generate_medical_csv(std::size_t rows, std::uint64_t seed) {
  static const char* kRegions[] = {"northeast", "northwest", "southeast", "southwest"};
  static const double kRegionShift[] = {0.0, -350.0, -1000.0, -900.0};
  SplitMix rng(seed);
  std::string out = "age,sex,bmi,children,smoker,region,charges\n";
  for (std::size_t i = 0; i < rows; ++i) {
    int age = 18 + static_cast<int>(rng.below(47));
    bool male = rng.below(2) == 1;
    double bmi = std::clamp(30.66 + 6.1 * rng.normal(), 15.96, 53.13);
    int children = static_cast<int>(std::min<std::uint64_t>(rng.below(8), 5) % 6);
    if (children > 3 && rng.below(2) == 0) children -= 3;
    bool smoker = rng.uniform() < 0.205;
    auto region = rng.below(4);
    double charges = -11900.0 + 257.0 * age + 332.0 * bmi + 475.0 * children +
                     23850.0 * (smoker ? 1 : 0) - 130.0 * (male ? 1 : 0) +
                     kRegionShift[region] + 4000.0 * rng.normal();
    charges = std::max(charges, 1121.8739);
    out += std::to_string(age) + "," + (male ? "male" : "female") + "," + fixed(bmi, 3) + "," +
           std::to_string(children) + "," + (smoker ? "yes" : "no") + "," + kRegions[region] +
           "," + fixed(charges, 5) + "\n";
  }
  return out;
}

nlohmann::json TrainReport::to_json() const {
  return {{"train_mse", train_mse},
          {"n_rows", n_rows},
          {"n_features", n_features},
          {"model_hash", model_hash.hex()},
          {"wall_time_ms", wall_time_ms}};
}

}  // namespace chainvault
