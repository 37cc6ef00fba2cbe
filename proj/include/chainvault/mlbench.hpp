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

#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "chainvault/bytes.hpp"

namespace chainvault {

struct SchemaConfig {
  // Columns forced to categorical even when every value parses as a number.
  std::vector<std::string> categorical;
  // Treat any column containing a non-numeric value as categorical.
  bool infer_categorical = true;
};

// Numeric design data after one-hot encoding. Categorical columns expand to
// one indicator per category except the lexicographically first, named
// "<column>=<category>" and placed where the source column was.
struct Dataset {
  std::vector<std::string> column_names;
  std::string target_name;
  std::size_t n_rows = 0;
  std::size_t n_cols = 0;
  std::vector<double> features;  // row-major n_rows x n_cols
  std::vector<double> target;

  double at(std::size_t row, std::size_t col) const { return features[row * n_cols + col]; }
};

Dataset ingest_csv(ByteView csv, std::string_view target_column,
                   const SchemaConfig& schema = {});

inline constexpr std::string_view kModelMagic = "CVM1";

struct RegressionModel {
  std::vector<double> coefficients;
  double intercept = 0.0;
  std::string target_name;
  double train_mse = 0.0;

  // "CVM1" || target name (u32 BE length + bytes) || coefficient count (u32
  // BE) || coefficients || intercept || train_mse, reals as big-endian
  // binary64. Throws kNonFiniteCoefficient.
  Bytes serialize() const;
  Digest model_hash() const;
  static RegressionModel parse(ByteView artifact);

  double predict(std::span<const double> features) const;

  bool operator==(const RegressionModel&) const = default;
};

// Ordinary least squares with an intercept, solved by Householder QR.
// Throws kInsufficientRows when n_rows <= n_cols and kRankDeficient when the
// design matrix lacks full column rank.
RegressionModel train_ols(const Dataset& data);

// Dense least squares min ||A x - b|| for row-major A (rows x cols, rows >=
// cols). The Householder updates of the trailing columns run in parallel;
// each column's arithmetic is sequential, so the result is bit-identical to
// serial::solve_least_squares.
std::vector<double> solve_least_squares(std::span<const double> a, std::size_t rows,
                                        std::size_t cols, std::span<const double> b);

namespace serial {
std::vector<double> solve_least_squares(std::span<const double> a, std::size_t rows,
                                        std::size_t cols, std::span<const double> b);
}  // namespace serial

// Synthetic stand-in for the medical cost data: columns age, sex, bmi,
// children, smoker, region, charges. Deterministic for a given seed.
inline constexpr std::size_t kMedicalRows = 1338;
std::string generate_medical_csv(std::size_t rows, std::uint64_t seed);

struct TrainReport {
  double train_mse = 0.0;
  std::size_t n_rows = 0;
  std::size_t n_features = 0;
  Digest model_hash;
  double wall_time_ms = 0.0;

  nlohmann::json to_json() const;
};

}  // namespace chainvault
