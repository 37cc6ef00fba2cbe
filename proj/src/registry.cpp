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

#include "chainvault/registry.hpp"

#include <iostream>
#include <mutex>

#include <json.hpp>

#include "fsutil.hpp"

namespace chainvault {

using nlohmann::json;

GrantTable::GrantTable(std::filesystem::path file) : file_(std::move(file)) {
  if (!std::filesystem::exists(*file_)) return;
  auto raw = detail::read_file(*file_);
  json doc = json::parse(raw.begin(), raw.end(), nullptr, false);
  if (doc.is_discarded() || !doc.is_array()) {
    fail(Errc::kStorageFailure, "grant file " + file_->string() + " is malformed");
  }
  for (const auto& g : doc) {
    AccessGrant grant;
    grant.user_public_key = public_key_from_hex(g.at("user_public_key").get<std::string>());
    grant.dataset_name = g.at("dataset_name").get<std::string>();
    grant.granted_at = g.at("granted_at").get<std::uint64_t>();
    grant.revoked = g.at("revoked").get<bool>();
    grants_[{grant.dataset_name, grant.user_public_key}] = grant;
  }
}

void GrantTable::save_locked() const {
  if (!file_) return;
  json doc = json::array();
  for (const auto& [key, g] : grants_) {
    doc.push_back({{"dataset_name", g.dataset_name},
                   {"granted_at", g.granted_at},
                   {"revoked", g.revoked},
                   {"user_public_key", public_key_hex(g.user_public_key)}});
  }
  detail::write_file_durable(*file_, as_bytes(doc.dump(1)));
}

AccessGrant GrantTable::grant(std::string_view dataset, const PublicKey& user,
                              std::uint64_t now) {
  std::unique_lock lock(mu_);
  auto& g = grants_[{std::string(dataset), user}];
  g = AccessGrant{user, std::string(dataset), now, false};
  save_locked();
  return g;
}

AccessGrant GrantTable::revoke(std::string_view dataset, const PublicKey& user) {
  std::unique_lock lock(mu_);
  auto it = grants_.find({std::string(dataset), user});
  if (it == grants_.end()) {
    fail(Errc::kNotFound, "no grant for this user on '" + std::string(dataset) + "'");
  }
  it->second.revoked = true;
  save_locked();
  return it->second;
}

bool GrantTable::is_authorized(std::string_view dataset, const PublicKey& user) const {
  std::shared_lock lock(mu_);
  auto it = grants_.find({std::string(dataset), user});
  return it != grants_.end() && !it->second.revoked;
}

std::vector<AccessGrant> GrantTable::list() const {
  std::shared_lock lock(mu_);
  std::vector<AccessGrant> out;
  for (const auto& [key, g] : grants_) out.push_back(g);
  return out;
}

std::vector<std::string> block_log_lines(const Block& block) {
  std::vector<std::string> out;
  for (const auto& rec : block.records) {
    out.push_back("BLOCK height=" + std::to_string(block.height) +
                  " name=" + rec.dataset_name +
                  " dataset_hash=" + rec.dataset_hash.hex() +
                  " algo_hash=" + rec.algorithm_hash.hex() +
                  " ts=" + std::to_string(block.timestamp));
  }
  return out;
}

LogSink default_log_sink() {
  return [](std::string_view line) { std::clog << line << '\n'; };
}

Registry::Registry(Ledger& ledger, GrantTable& grants, LogSink log)
    : ledger_(ledger), grants_(grants), log_(std::move(log)) {}

std::uint64_t Registry::register_dataset(std::string_view name,
                                         const Digest& dataset_hash,
                                         const Digest& algorithm_hash,
                                         const Digest& manifest_hash,
                                         const SigningKey& admin_key,
                                         std::uint64_t now) {
  require_admin(admin_key.public_key());
  std::vector<DatasetRecord> records{
      {std::string(name), dataset_hash, algorithm_hash, manifest_hash}};
  auto id = ledger_.append(std::move(records), admin_key, now);
  if (log_) {
    for (const auto& line : block_log_lines(ledger_.block(id))) log_(line);
  }
  return id;
}

std::uint64_t Registry::register_block(const Block& block) {
  if (block.records.size() != 1) {
    fail(Errc::kInvalidArgument, "registration blocks carry exactly one record");
  }
  auto id = ledger_.append_signed(block);
  if (log_) {
    for (const auto& line : block_log_lines(block)) log_(line);
  }
  return id;
}

void Registry::require_admin(const PublicKey& caller) const {
  if (caller != ledger_.admin_public_key()) {
    fail(Errc::kNotAdmin, "caller is not the chain admin");
  }
}

GrantIssue Registry::grant_access(std::string_view name, const PublicKey& user,
                                  const SigningKey& admin_key, std::uint64_t now) {
  return grant_access_as(admin_key.public_key(), name, user, now);
}

AccessGrant Registry::revoke_access(std::string_view name, const PublicKey& user,
                                    const SigningKey& admin_key) {
  return revoke_access_as(admin_key.public_key(), name, user);
}

GrantIssue Registry::grant_access_as(const PublicKey& caller, std::string_view name,
                                     const PublicKey& user, std::uint64_t now) {
  require_admin(caller);
  auto loc = query_hash(name);
  auto grant = grants_.grant(name, user, now);
  return {grant, loc.block_id, loc.record.dataset_hash};
}

AccessGrant Registry::revoke_access_as(const PublicKey& caller, std::string_view name,
                                       const PublicKey& user) {
  require_admin(caller);
  query_hash(name);
  return grants_.revoke(name, user);
}

RecordLocation Registry::query_hash(std::string_view name) const {
  try {
    return ledger_.lookup(name);
  } catch (const Error& e) {
    if (e.code() == Errc::kNotFound) {
      fail(Errc::kUnknownDataset, "unknown dataset '" + std::string(name) + "'");
    }
    throw;
  }
}

bool Registry::is_authorized(std::string_view name, const PublicKey& user) const {
  return grants_.is_authorized(name, user);
}

}  // namespace chainvault
