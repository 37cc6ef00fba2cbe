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

#include "chainvault/verifier.hpp"

#include <random>

#include "chainvault/csv.hpp"
#include "chainvault/hash.hpp"

namespace chainvault {

namespace {

RecordLocation known(std::string_view name, auto&& lookup) {
  try {
    return lookup();
  } catch (const Error& e) {
    if (e.code() == Errc::kNotFound || e.code() == Errc::kUnknownDataset) {
      fail(Errc::kUnknownDataset, "unknown dataset '" + std::string(name) + "'");
    }
    throw;
  }
}

// Picks a numeric cell in a data row; nullopt when the row has none.
std::optional<std::size_t> pick_numeric(const std::vector<std::string>& row,
                                        std::mt19937_64& rng) {
  std::vector<std::size_t> numeric;
  for (std::size_t c = 0; c < row.size(); ++c) {
    if (parse_number(row[c])) numeric.push_back(c);
  }
  if (numeric.empty()) return std::nullopt;
  return numeric[rng() % numeric.size()];
}

// Rewrites a numeric cell to a different value of similar magnitude.
std::string poison_value(const std::string& cell, std::mt19937_64& rng) {
  double v = *parse_number(cell);
  double delta = 1.0 + static_cast<double>(rng() % 1000) / 100.0;
  double scale = std::abs(v) > 1.0 ? std::abs(v) * 0.05 : 1.0;
  bool integral = cell.find_first_of(".eE") == std::string::npos;
  for (int attempt = 0;; ++attempt) {
    double poisoned = v + delta * scale * (attempt + 1);
    auto text = integral ? std::to_string(static_cast<long long>(std::llround(poisoned)))
                         : format_number(poisoned);
    if (text != cell) return text;
  }
}

CsvTable parse_rows(ByteView file) {
  CsvTable table;
  try {
    table = parse_csv(to_string(file));
  } catch (const Error& e) {
    fail(Errc::kUnparsableCsv, std::string("input is not CSV: ") + e.what());
  }
  if (table.rows.empty()) fail(Errc::kUnparsableCsv, "CSV has no data rows");
  return table;
}

}  // namespace

RecordLocation StateChainReader::lookup(std::string_view name) const {
  return known(name, [&] { return lookup_by_name(state_, name); });
}

RecordLocation VaultChainReader::lookup(std::string_view name) const {
  return known(name, [&] { return vault_.dataset(name); });
}

nlohmann::json FileVerdict::to_json() const {
  return {{"name", name},
          {"block_id", block_id},
          {"expected_hash", expected.hex()},
          {"actual_hash", actual.hex()},
          {"verdict", verified() ? "Verified" : "Mismatch"}};
}

FileVerdict verify_file(ByteView file, std::string_view dataset_name, const ChainReader& chain) {
  auto loc = chain.lookup(dataset_name);
  return {std::string(dataset_name), loc.block_id, loc.record.dataset_hash, sha256(file)};
}

std::string_view compromise_name(Compromise c) {
  switch (c) {
    case Compromise::kNone: return "none";
    case Compromise::kDataset: return "dataset";
    case Compromise::kAlgorithm: return "algorithm";
    case Compromise::kBoth: return "both";
  }
  return "unknown";
}

Compromise ExperimentVerdict::which() const {
  bool data_bad = expected_dataset != actual_dataset;
  bool algo_bad = expected_algorithm != actual_algorithm;
  if (data_bad && algo_bad) return Compromise::kBoth;
  if (data_bad) return Compromise::kDataset;
  if (algo_bad) return Compromise::kAlgorithm;
  return Compromise::kNone;
}

nlohmann::json ExperimentVerdict::to_json() const {
  nlohmann::json doc = {{"name", name},
                        {"block_id", block_id},
                        {"expected_hash", expected_dataset.hex()},
                        {"actual_hash", actual_dataset.hex()},
                        {"expected_algorithm_hash", expected_algorithm.hex()},
                        {"actual_algorithm_hash", actual_algorithm.hex()},
                        {"verdict", clean() ? "Clean" : "Compromised"}};
  if (!clean()) doc["compromised"] = std::string(compromise_name(which()));
  return doc;
}

ExperimentVerdict verify_experiment(ByteView dataset, ByteView model,
                                    std::string_view dataset_name, const ChainReader& chain) {
  auto loc = chain.lookup(dataset_name);
  if (loc.record.algorithm_hash.is_zero()) {
    fail(Errc::kNoAlgorithmRegistered,
         "no algorithm hash registered for '" + std::string(dataset_name) + "'");
  }
  ExperimentVerdict v;
  v.name = std::string(dataset_name);
  v.block_id = loc.block_id;
  v.expected_dataset = loc.record.dataset_hash;
  v.actual_dataset = sha256(dataset);
  v.expected_algorithm = loc.record.algorithm_hash;
  v.actual_algorithm = sha256(model);
  return v;
}

std::string_view tamper_mode_name(TamperMode mode) {
  switch (mode) {
    case TamperMode::kBitflip: return "bitflip";
    case TamperMode::kRowPoison: return "row-poison";
    case TamperMode::kRowAppend: return "row-append";
    case TamperMode::kTruncate: return "truncate";
  }
  return "unknown";
}

TamperMode parse_tamper_mode(std::string_view name) {
  for (auto mode : kAllTamperModes) {
    if (tamper_mode_name(mode) == name) return mode;
  }
  fail(Errc::kInvalidArgument, "unknown tamper mode '" + std::string(name) + "'");
}

bool is_row_mode(TamperMode mode) {
  return mode == TamperMode::kRowPoison || mode == TamperMode::kRowAppend;
}

Bytes tamper(ByteView file, TamperMode mode, std::uint64_t seed) {
  // mt19937_64's output sequence is fixed by the standard, so results are
  // reproducible across platforms; only modulo reduction is used on top.
  std::mt19937_64 rng(seed);
  switch (mode) {
    case TamperMode::kBitflip: {
      if (file.empty()) fail(Errc::kInvalidArgument, "cannot bit-flip an empty file");
      Bytes out(file.begin(), file.end());
      auto bit = rng() % (out.size() * 8);
      out[bit / 8] ^= static_cast<std::uint8_t>(1u << (bit % 8));
      return out;
    }
    case TamperMode::kTruncate: {
      if (file.empty()) fail(Errc::kInvalidArgument, "cannot truncate an empty file");
      auto drop = 1 + rng() % file.size();
      return Bytes(file.begin(), file.end() - static_cast<std::ptrdiff_t>(drop));
    }
    case TamperMode::kRowPoison: {
      auto table = parse_rows(file);
      std::vector<std::size_t> candidates;
      for (std::size_t r = 0; r < table.rows.size(); ++r) {
        for (const auto& cell : table.rows[r]) {
          if (parse_number(cell)) {
            candidates.push_back(r);
            break;
          }
        }
      }
      if (candidates.empty()) fail(Errc::kUnparsableCsv, "CSV has no numeric cell to poison");
      auto& row = table.rows[candidates[rng() % candidates.size()]];
      auto c = *pick_numeric(row, rng);
      row[c] = poison_value(row[c], rng);
      auto text = format_csv(table);
      return Bytes(text.begin(), text.end());
    }
    case TamperMode::kRowAppend: {
      auto table = parse_rows(file);
      auto row = table.rows[rng() % table.rows.size()];
      if (auto c = pick_numeric(row, rng)) row[*c] = poison_value(row[*c], rng);
      table.rows.push_back(std::move(row));
      table.trailing_newline = true;
      auto text = format_csv(table);
      return Bytes(text.begin(), text.end());
    }
  }
  fail(Errc::kInvalidArgument, "unknown tamper mode");
}

}  // namespace chainvault
