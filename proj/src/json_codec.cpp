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

#include "chainvault/json_codec.hpp"

#include <cstring>

namespace chainvault {

using nlohmann::json;

namespace {

template <std::size_t N>
std::array<std::uint8_t, N> fixed_hex(const json& doc, const char* key) {
  auto raw = from_hex(doc.at(key).get<std::string>());
  if (raw.size() != N) {
    fail(Errc::kInvalidArgument, std::string("'") + key + "' has the wrong length");
  }
  std::array<std::uint8_t, N> out;
  std::memcpy(out.data(), raw.data(), N);
  return out;
}

Digest digest_field(const json& doc, const char* key) {
  return Digest::from_hex(doc.at(key).get<std::string>());
}

// nlohmann throws its own exception types on missing keys or type mismatch.
template <class Fn>
auto guarded(Fn&& fn) {
  try {
    return fn();
  } catch (const json::exception& e) {
    fail(Errc::kInvalidArgument, std::string("malformed JSON document: ") + e.what());
  }
}

}  // namespace

json to_json(const DatasetRecord& r) {
  return {{"dataset_name", r.dataset_name},
          {"dataset_hash", r.dataset_hash.hex()},
          {"algorithm_hash", r.algorithm_hash.hex()},
          {"manifest_hash", r.manifest_hash.hex()}};
}

json to_json(const Block& b) {
  json records = json::array();
  for (const auto& r : b.records) records.push_back(to_json(r));
  return {{"height", b.height},
          {"timestamp", b.timestamp},
          {"prev_hash", b.prev_hash.hex()},
          {"payload_digest", b.payload_digest.hex()},
          {"block_hash", b.block_hash.hex()},
          {"admin_signature", to_hex(b.admin_signature)},
          {"records", std::move(records)}};
}

json to_json(const RecordLocation& loc) {
  return {{"block_id", loc.block_id},
          {"dataset_name", loc.record.dataset_name},
          {"dataset_hash", loc.record.dataset_hash.hex()},
          {"algorithm_hash", loc.record.algorithm_hash.hex()},
          {"manifest_hash", loc.record.manifest_hash.hex()}};
}

json to_json(const AccessGrant& g) {
  return {{"user_public_key", public_key_hex(g.user_public_key)},
          {"dataset_name", g.dataset_name},
          {"granted_at", g.granted_at},
          {"revoked", g.revoked}};
}

json to_json(const GrantIssue& issue) {
  return {{"grant", to_json(issue.grant)},
          {"block_id", issue.block_id},
          {"dataset_hash", issue.dataset_hash.hex()}};
}

DatasetRecord record_from_json(const json& doc) {
  return guarded([&] {
    DatasetRecord r;
    r.dataset_name = doc.at("dataset_name").get<std::string>();
    r.dataset_hash = digest_field(doc, "dataset_hash");
    r.algorithm_hash = digest_field(doc, "algorithm_hash");
    r.manifest_hash = digest_field(doc, "manifest_hash");
    return r;
  });
}

Block block_from_json(const json& doc) {
  auto b = guarded([&] {
    Block b;
    b.height = doc.at("height").get<std::uint64_t>();
    b.timestamp = doc.at("timestamp").get<std::uint64_t>();
    b.prev_hash = digest_field(doc, "prev_hash");
    b.payload_digest = digest_field(doc, "payload_digest");
    b.block_hash = digest_field(doc, "block_hash");
    b.admin_signature = fixed_hex<64>(doc, "admin_signature");
    for (const auto& r : doc.at("records")) b.records.push_back(record_from_json(r));
    return b;
  });
  if (b.payload_digest != compute_payload_digest(b.records) ||
      b.block_hash != compute_block_hash(b.height, b.timestamp, b.prev_hash,
                                         b.payload_digest)) {
    fail(Errc::kCorruptBlock, "block JSON hashes disagree with its contents");
  }
  return b;
}

RecordLocation location_from_json(const json& doc) {
  return guarded([&] {
    RecordLocation loc;
    loc.block_id = doc.at("block_id").get<std::uint64_t>();
    loc.record = record_from_json(doc);
    return loc;
  });
}

GrantIssue grant_issue_from_json(const json& doc) {
  return guarded([&] {
    GrantIssue issue;
    const auto& g = doc.at("grant");
    issue.grant.user_public_key = public_key_from_hex(g.at("user_public_key").get<std::string>());
    issue.grant.dataset_name = g.at("dataset_name").get<std::string>();
    issue.grant.granted_at = g.at("granted_at").get<std::uint64_t>();
    issue.grant.revoked = g.at("revoked").get<bool>();
    issue.block_id = doc.at("block_id").get<std::uint64_t>();
    issue.dataset_hash = digest_field(doc, "dataset_hash");
    return issue;
  });
}

}  // namespace chainvault
