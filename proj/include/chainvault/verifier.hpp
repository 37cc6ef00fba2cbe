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

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include <json.hpp>

#include "chainvault/bytes.hpp"
#include "chainvault/ledger.hpp"
#include "chainvault/vault_api.hpp"

namespace chainvault {

// Read-only view of registered records. Throws kUnknownDataset for names
// that are not on chain.
class ChainReader {
 public:
  virtual ~ChainReader() = default;
  virtual RecordLocation lookup(std::string_view name) const = 0;
};

class StateChainReader final : public ChainReader {
 public:
  explicit StateChainReader(const ChainState& state) : state_(state) {}
  RecordLocation lookup(std::string_view name) const override;

 private:
  const ChainState& state_;
};

class VaultChainReader final : public ChainReader {
 public:
  explicit VaultChainReader(VaultApi& vault) : vault_(vault) {}
  RecordLocation lookup(std::string_view name) const override;

 private:
  VaultApi& vault_;
};

struct FileVerdict {
  std::string name;
  std::uint64_t block_id = 0;
  Digest expected;
  Digest actual;

  bool verified() const { return expected == actual; }
  // {name, block_id, expected_hash, actual_hash, verdict}
  nlohmann::json to_json() const;
};

FileVerdict verify_file(ByteView file, std::string_view dataset_name,
                        const ChainReader& chain);

enum class Compromise { kNone, kDataset, kAlgorithm, kBoth };
std::string_view compromise_name(Compromise c);

struct ExperimentVerdict {
  std::string name;
  std::uint64_t block_id = 0;
  Digest expected_dataset;
  Digest actual_dataset;
  Digest expected_algorithm;
  Digest actual_algorithm;

  Compromise which() const;
  bool clean() const { return which() == Compromise::kNone; }
  nlohmann::json to_json() const;
};

// Throws kNoAlgorithmRegistered when the record's algorithm hash is zero.
ExperimentVerdict verify_experiment(ByteView dataset, ByteView model,
                                    std::string_view dataset_name,
                                    const ChainReader& chain);

enum class TamperMode { kBitflip, kRowPoison, kRowAppend, kTruncate };
inline constexpr TamperMode kAllTamperModes[] = {
    TamperMode::kBitflip, TamperMode::kRowPoison, TamperMode::kRowAppend,
    TamperMode::kTruncate};

std::string_view tamper_mode_name(TamperMode mode);
// Accepts bitflip, row-poison, row-append, truncate.
TamperMode parse_tamper_mode(std::string_view name);
bool is_row_mode(TamperMode mode);

// Deterministic mutation for a given seed; the output always differs from
// the input.
//   bitflip     flips one bit
//   row-poison  rewrites one numeric cell of one data row
//   row-append  appends a copy of an existing data row with one numeric
//               cell nudged
//   truncate    drops 1..n trailing bytes
// Row modes need a CSV with a header and at least one data row
// (kUnparsableCsv otherwise); bitflip and truncate need non-empty input.
Bytes tamper(ByteView file, TamperMode mode, std::uint64_t seed);

}  // namespace chainvault
