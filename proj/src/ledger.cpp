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

#include "chainvault/ledger.hpp"

#include <cstring>
#include <set>
#include <sstream>

#include "chainvault/hash.hpp"
#include "fsutil.hpp"

namespace chainvault {

namespace fs = std::filesystem;

namespace {

struct Problem {
  Errc code;
  std::string reason;
};

// Shared rule set for append-time checks and full-chain validation. `prev` is
// null for the genesis position.
std::optional<Problem> successor_problem(const Block* prev, std::uint64_t expected_height,
                                         const Block& block, const PublicKey& admin,
                                         const std::map<std::string, std::uint64_t,
                                                        std::less<>>& names) {
  if (block.height != expected_height) {
    return Problem{Errc::kChainConflict, "height mismatch"};
  }
  auto expected_prev = prev ? prev->block_hash : Digest::zero();
  if (block.prev_hash != expected_prev) {
    return Problem{Errc::kChainConflict, "prev-hash linkage broken"};
  }
  if (block.payload_digest != compute_payload_digest(block.records)) {
    return Problem{Errc::kChainConflict, "payload-digest mismatch"};
  }
  if (block.block_hash != compute_block_hash(block.height, block.timestamp,
                                             block.prev_hash, block.payload_digest)) {
    return Problem{Errc::kChainConflict, "block-hash mismatch"};
  }
  if (!verify_signature(admin, block.block_hash.view(), block.admin_signature)) {
    return Problem{Errc::kNotAdmin, "signature failure"};
  }
  if (prev && block.timestamp < prev->timestamp) {
    return Problem{Errc::kClockRegression, "timestamp regression"};
  }
  if (block.records.empty()) {
    return Problem{Errc::kInvalidArgument, "block has no records"};
  }
  std::set<std::string_view> seen;
  for (const auto& rec : block.records) {
    if (rec.dataset_name.empty() || rec.dataset_name.size() > kMaxDatasetNameBytes) {
      return Problem{Errc::kInvalidArgument, "invalid dataset name"};
    }
    if (names.contains(rec.dataset_name) || !seen.insert(rec.dataset_name).second) {
      return Problem{Errc::kDuplicateName,
                     "duplicate dataset name '" + rec.dataset_name + "'"};
    }
  }
  return std::nullopt;
}

std::string block_file_name(std::uint64_t height) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%010llu.cvb", static_cast<unsigned long long>(height));
  return buf;
}

struct Head {
  std::uint64_t count = 0;
  Digest hash;
};

std::optional<Head> read_head(const fs::path& dir) {
  auto path = dir / "HEAD";
  if (!fs::exists(path)) return std::nullopt;
  auto raw = detail::read_file(path);
  std::istringstream in(to_string(raw));
  Head head;
  std::string hash;
  if (!(in >> head.count >> hash)) fail(Errc::kCorruptBlock, "unreadable HEAD file");
  try {
    head.hash = Digest::from_hex(hash);
  } catch (const Error&) {
    fail(Errc::kCorruptBlock, "unreadable HEAD file");
  }
  return head;
}

}  // namespace

Bytes DatasetRecord::canonical() const {
  ByteWriter w;
  w.u32(static_cast<std::uint32_t>(dataset_name.size()))
      .raw(dataset_name)
      .digest(dataset_hash)
      .digest(algorithm_hash)
      .digest(manifest_hash);
  return std::move(w).take();
}

Digest compute_payload_digest(const std::vector<DatasetRecord>& records) {
  Sha256 h;
  for (const auto& rec : records) h.update(rec.canonical());
  return h.finish();
}

Digest compute_block_hash(std::uint64_t height, std::uint64_t timestamp,
                          const Digest& prev_hash, const Digest& payload_digest) {
  ByteWriter w;
  w.u64(height).u64(timestamp).digest(prev_hash).digest(payload_digest);
  return sha256(w.bytes());
}

Bytes Block::serialize() const {
  ByteWriter w;
  w.raw(kBlockMagic).u64(height).u64(timestamp).digest(prev_hash);
  w.u32(static_cast<std::uint32_t>(records.size()));
  for (const auto& rec : records) w.raw(rec.canonical());
  w.raw(admin_signature);
  return std::move(w).take();
}

Block Block::parse(ByteView file) {
  ByteReader r(file, Errc::kCorruptBlock);
  if (to_string(r.raw(4)) != kBlockMagic) fail(Errc::kCorruptBlock, "bad block magic");
  Block b;
  b.height = r.u64();
  b.timestamp = r.u64();
  b.prev_hash = r.digest();
  auto count = r.u32();
  // Each record needs at least 4 + 96 bytes; reject absurd counts up front.
  if (count > r.remaining() / 100) fail(Errc::kCorruptBlock, "record count exceeds file");
  b.records.reserve(count);
  for (std::uint32_t i = 0; i < count; ++i) {
    DatasetRecord rec;
    auto len = r.u32();
    if (len > kMaxDatasetNameBytes) fail(Errc::kCorruptBlock, "dataset name too long");
    rec.dataset_name = to_string(r.raw(len));
    rec.dataset_hash = r.digest();
    rec.algorithm_hash = r.digest();
    rec.manifest_hash = r.digest();
    b.records.push_back(std::move(rec));
  }
  auto sig = r.raw(64);
  std::memcpy(b.admin_signature.data(), sig.data(), 64);
  if (!r.done()) fail(Errc::kCorruptBlock, "trailing bytes after block");
  b.payload_digest = compute_payload_digest(b.records);
  b.block_hash = compute_block_hash(b.height, b.timestamp, b.prev_hash, b.payload_digest);
  return b;
}

Block seal_block(std::uint64_t height, const Digest& prev_hash, std::uint64_t timestamp,
                 std::vector<DatasetRecord> records, const SigningKey& admin_key) {
  Block b;
  b.height = height;
  b.timestamp = timestamp;
  b.prev_hash = prev_hash;
  b.records = std::move(records);
  b.payload_digest = compute_payload_digest(b.records);
  b.block_hash = compute_block_hash(b.height, b.timestamp, b.prev_hash, b.payload_digest);
  b.admin_signature = admin_key.sign(b.block_hash.view());
  return b;
}

void check_dataset_name(std::string_view name) {
  if (name.empty() || name.size() > kMaxDatasetNameBytes) {
    fail(Errc::kInvalidArgument, "dataset name must be 1..256 bytes");
  }
}

void check_successor(const ChainState& state, const Block& block) {
  const Block* prev = state.blocks.empty() ? nullptr : &state.blocks.back();
  if (auto p = successor_problem(prev, state.blocks.size(), block,
                                 state.admin_public_key, state.name_index)) {
    fail(p->code, "block " + std::to_string(block.height) + ": " + p->reason);
  }
}

void push_block(ChainState& state, Block block) {
  for (const auto& rec : block.records) {
    state.name_index.emplace(rec.dataset_name, block.height);
  }
  state.blocks.push_back(std::move(block));
}

Block make_block(const ChainState& state, std::vector<DatasetRecord> records,
                 const SigningKey& admin_key, std::uint64_t now) {
  if (admin_key.public_key() != state.admin_public_key) {
    fail(Errc::kNotAdmin, "signing key is not the chain's admin key");
  }
  if (records.empty()) fail(Errc::kInvalidArgument, "a block needs at least one record");
  for (const auto& rec : records) check_dataset_name(rec.dataset_name);
  if (!state.blocks.empty() && now < state.blocks.back().timestamp) {
    fail(Errc::kClockRegression, "timestamp " + std::to_string(now) +
                                     " precedes head timestamp " +
                                     std::to_string(state.blocks.back().timestamp));
  }
  auto prev = state.blocks.empty() ? Digest::zero() : state.blocks.back().block_hash;
  auto block = seal_block(state.blocks.size(), prev, now, std::move(records), admin_key);
  check_successor(state, block);
  return block;
}

AppendResult append_block(const ChainState& state, std::vector<DatasetRecord> records,
                          const SigningKey& admin_key, std::uint64_t now) {
  auto block = make_block(state, std::move(records), admin_key, now);
  AppendResult out{state, block.height};
  push_block(out.state, std::move(block));
  return out;
}

Validation validate_chain(const ChainState& state) {
  std::map<std::string, std::uint64_t, std::less<>> names;
  for (std::size_t i = 0; i < state.blocks.size(); ++i) {
    const auto& block = state.blocks[i];
    const Block* prev = i == 0 ? nullptr : &state.blocks[i - 1];
    if (auto p = successor_problem(prev, i, block, state.admin_public_key, names)) {
      return Validation::bad(i, p->reason);
    }
    for (const auto& rec : block.records) names.emplace(rec.dataset_name, i);
  }
  return Validation::ok();
}

const Block& get_block(const ChainState& state, std::uint64_t block_id) {
  if (block_id >= state.blocks.size()) {
    fail(Errc::kNotFound, "no block with id " + std::to_string(block_id));
  }
  return state.blocks[block_id];
}

RecordLocation lookup_by_name(const ChainState& state, std::string_view name) {
  auto it = state.name_index.find(name);
  if (it == state.name_index.end()) {
    fail(Errc::kNotFound, "dataset '" + std::string(name) + "' is not on chain");
  }
  for (const auto& rec : state.blocks.at(it->second).records) {
    if (rec.dataset_name == name) return {it->second, rec};
  }
  fail(Errc::kCorruptBlock, "name index points at a block without the record");
}

ChainStore::ChainStore(fs::path dir) : dir_(std::move(dir)) {
  std::error_code ec;
  fs::create_directories(dir_ / "blocks", ec);
  if (ec) fail(Errc::kStorageFailure, "cannot create " + dir_.string() + ": " + ec.message());
}

fs::path ChainStore::block_path(std::uint64_t height) const {
  return dir_ / "blocks" / block_file_name(height);
}

std::uint64_t ChainStore::committed_count() const {
  auto head = read_head(dir_);
  return head ? head->count : 0;
}

ChainState ChainStore::load(const PublicKey& admin) const {
  ChainState state(admin);
  auto head = read_head(dir_);
  if (!head) return state;
  for (std::uint64_t i = 0; i < head->count; ++i) {
    push_block(state, Block::parse(detail::read_file(block_path(i))));
  }
  if (head->count > 0 && state.blocks.back().block_hash != head->hash) {
    fail(Errc::kCorruptBlock, "HEAD hash does not match the last block");
  }
  if (auto v = validate_chain(state); !v.valid) {
    fail(Errc::kCorruptBlock, "stored chain invalid at height " +
                                  std::to_string(v.first_bad_height) + ": " + v.reason);
  }
  return state;
}

Validation ChainStore::validate(const PublicKey& admin) const {
  ChainState state(admin);
  std::optional<Head> head;
  try {
    head = read_head(dir_);
  } catch (const Error& e) {
    return Validation::bad(0, e.what());
  }
  if (!head) return Validation::ok();
  for (std::uint64_t i = 0; i < head->count; ++i) {
    try {
      push_block(state, Block::parse(detail::read_file(block_path(i))));
    } catch (const Error& e) {
      auto partial = validate_chain(state);
      if (!partial.valid) return partial;
      return Validation::bad(i, std::string("unparseable block file: ") + e.what());
    }
  }
  auto v = validate_chain(state);
  if (!v.valid) return v;
  if (head->count > 0 && state.blocks.back().block_hash != head->hash) {
    return Validation::bad(head->count - 1, "HEAD hash mismatch");
  }
  return v;
}

void ChainStore::commit(const Block& block) {
  if (block.height != committed_count()) {
    fail(Errc::kChainConflict, "commit out of order");
  }
  // A stale file above HEAD can exist after a crash; it is overwritten here.
  detail::write_file_durable(block_path(block.height), block.serialize());
  std::string head = std::to_string(block.height + 1) + " " + block.block_hash.hex() + "\n";
  detail::write_file_durable(dir_ / "HEAD", as_bytes(head));
}

Ledger::Ledger(const PublicKey& admin) : admin_(admin), state_(admin) {}

Ledger::Ledger(const PublicKey& admin, fs::path store_dir)
    : admin_(admin), store_(std::in_place, std::move(store_dir)), state_(admin) {
  state_ = store_->load(admin);
}

std::uint64_t Ledger::commit_locked(Block block) {
  check_successor(state_, block);
  if (store_) store_->commit(block);
  auto id = block.height;
  push_block(state_, std::move(block));
  return id;
}

std::uint64_t Ledger::append(std::vector<DatasetRecord> records,
                             const SigningKey& admin_key, std::uint64_t now) {
  std::unique_lock lock(mu_);
  return commit_locked(make_block(state_, std::move(records), admin_key, now));
}

std::uint64_t Ledger::append_signed(const Block& block) {
  std::unique_lock lock(mu_);
  return commit_locked(block);
}

ChainState Ledger::snapshot() const {
  std::shared_lock lock(mu_);
  return state_;
}

std::optional<Block> Ledger::head() const {
  std::shared_lock lock(mu_);
  if (state_.blocks.empty()) return std::nullopt;
  return state_.blocks.back();
}

Block Ledger::block(std::uint64_t block_id) const {
  std::shared_lock lock(mu_);
  return get_block(state_, block_id);
}

std::vector<Block> Ledger::blocks() const {
  std::shared_lock lock(mu_);
  return state_.blocks;
}

RecordLocation Ledger::lookup(std::string_view name) const {
  std::shared_lock lock(mu_);
  return lookup_by_name(state_, name);
}

std::uint64_t Ledger::size() const {
  std::shared_lock lock(mu_);
  return state_.blocks.size();
}

}  // namespace chainvault
