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
#include <filesystem>
#include <map>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <string>
#include <string_view>
#include <vector>

#include "chainvault/bytes.hpp"
#include "chainvault/signing.hpp"

namespace chainvault {

inline constexpr std::size_t kMaxDatasetNameBytes = 256;
inline constexpr std::string_view kBlockMagic = "CVB1";

struct DatasetRecord {
  std::string dataset_name;
  Digest dataset_hash;
  // All zeros when no algorithm artifact was registered.
  Digest algorithm_hash;
  Digest manifest_hash;

  // name length (u32 BE) || name || dataset_hash || algorithm_hash || manifest_hash
  Bytes canonical() const;

  bool operator==(const DatasetRecord&) const = default;
};

struct Block {
  std::uint64_t height = 0;
  std::uint64_t timestamp = 0;
  Digest prev_hash;
  std::vector<DatasetRecord> records;
  Digest payload_digest;
  Digest block_hash;
  Signature admin_signature{};

  // Block file layout: "CVB1" || height || timestamp || prev_hash ||
  // record count (u32 BE) || canonical records || admin_signature.
  // payload_digest and block_hash are not stored; parse() recomputes them.
  Bytes serialize() const;
  static Block parse(ByteView file);

  bool operator==(const Block&) const = default;
};

Digest compute_payload_digest(const std::vector<DatasetRecord>& records);
// SHA-256(height BE || timestamp BE || prev_hash || payload_digest)
Digest compute_block_hash(std::uint64_t height, std::uint64_t timestamp,
                          const Digest& prev_hash, const Digest& payload_digest);

// Builds and signs a block without checking it against any chain.
Block seal_block(std::uint64_t height, const Digest& prev_hash,
                 std::uint64_t timestamp, std::vector<DatasetRecord> records,
                 const SigningKey& admin_key);

// Throws kInvalidArgument for an empty or oversized name.
void check_dataset_name(std::string_view name);

struct RecordLocation {
  std::uint64_t block_id = 0;
  DatasetRecord record;
};

struct ChainState {
  explicit ChainState(const PublicKey& admin) : admin_public_key(admin) {}

  std::vector<Block> blocks;
  PublicKey admin_public_key;
  std::map<std::string, std::uint64_t, std::less<>> name_index;

  bool empty() const { return blocks.empty(); }
};

// Checks that `block` is a valid successor of the current head: height,
// linkage, hashes, admin signature, timestamp order and name uniqueness.
// Throws kNotAdmin, kDuplicateName, kClockRegression or kChainConflict.
void check_successor(const ChainState& state, const Block& block);

// Pushes a block that passed check_successor and updates the name index.
void push_block(ChainState& state, Block block);

Block make_block(const ChainState& state, std::vector<DatasetRecord> records,
                 const SigningKey& admin_key, std::uint64_t now);

struct AppendResult {
  ChainState state;
  std::uint64_t block_id;
};
// Value-semantics append: `state` is left untouched on error.
AppendResult append_block(const ChainState& state,
                          std::vector<DatasetRecord> records,
                          const SigningKey& admin_key, std::uint64_t now);

struct Validation {
  bool valid = true;
  std::uint64_t first_bad_height = 0;
  std::string reason;

  static Validation ok() { return {}; }
  static Validation bad(std::uint64_t height, std::string why) {
    return {false, height, std::move(why)};
  }
};

Validation validate_chain(const ChainState& state);

const Block& get_block(const ChainState& state, std::uint64_t block_id);
RecordLocation lookup_by_name(const ChainState& state, std::string_view name);

// One canonical block file per height plus a HEAD pointer. A block file is
// written and synced before HEAD moves, so a crash in between leaves the old
// head in force.
class ChainStore {
 public:
  explicit ChainStore(std::filesystem::path dir);

  const std::filesystem::path& dir() const { return dir_; }
  std::filesystem::path block_path(std::uint64_t height) const;

  // Throws kCorruptBlock if any committed block cannot be parsed or the head
  // hash disagrees. Use validate() to inspect a damaged store instead.
  ChainState load(const PublicKey& admin) const;
  void commit(const Block& block);
  // Parses and validates every committed block file; unparseable files count
  // as invalid at their height.
  Validation validate(const PublicKey& admin) const;
  std::uint64_t committed_count() const;

 private:
  std::filesystem::path dir_;
};

// Thread-safe ledger: a single serialized writer and any number of readers.
// When backed by a ChainStore, every append is durable before it is visible.
class Ledger {
 public:
  explicit Ledger(const PublicKey& admin);
  Ledger(const PublicKey& admin, std::filesystem::path store_dir);

  std::uint64_t append(std::vector<DatasetRecord> records,
                       const SigningKey& admin_key, std::uint64_t now);
  std::uint64_t append_signed(const Block& block);

  ChainState snapshot() const;
  std::optional<Block> head() const;
  Block block(std::uint64_t block_id) const;
  std::vector<Block> blocks() const;
  RecordLocation lookup(std::string_view name) const;
  std::uint64_t size() const;
  const PublicKey& admin_public_key() const { return admin_; }

 private:
  std::uint64_t commit_locked(Block block);

  PublicKey admin_;
  std::optional<ChainStore> store_;
  mutable std::shared_mutex mu_;
  ChainState state_;
};

}  // namespace chainvault
