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
#include <functional>
#include <map>
#include <optional>
#include <shared_mutex>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "chainvault/ledger.hpp"
#include "chainvault/signing.hpp"

namespace chainvault {

struct AccessGrant {
  PublicKey user_public_key{};
  std::string dataset_name;
  std::uint64_t granted_at = 0;
  bool revoked = false;

  bool operator==(const AccessGrant&) const = default;
};

// What a user receives on approval: the registration block id and the
// dataset hash to check the download against.
struct GrantIssue {
  AccessGrant grant;
  std::uint64_t block_id = 0;
  Digest dataset_hash;
};

// Off-chain grant state. At most one grant per (user, dataset); revoking
// keeps the entry with revoked=true so re-granting is an explicit act.
class GrantTable {
 public:
  GrantTable() = default;
  // Persists to a JSON file after every change.
  explicit GrantTable(std::filesystem::path file);

  AccessGrant grant(std::string_view dataset, const PublicKey& user, std::uint64_t now);
  AccessGrant revoke(std::string_view dataset, const PublicKey& user);
  bool is_authorized(std::string_view dataset, const PublicKey& user) const;
  std::vector<AccessGrant> list() const;

 private:
  void save_locked() const;

  std::optional<std::filesystem::path> file_;
  mutable std::shared_mutex mu_;
  std::map<std::pair<std::string, PublicKey>, AccessGrant> grants_;
};

// `BLOCK height=<h> name=<name> dataset_hash=<hex> algo_hash=<hex> ts=<unix>`,
// one line per record.
std::vector<std::string> block_log_lines(const Block& block);

using LogSink = std::function<void(std::string_view)>;
// Writes to std::clog.
LogSink default_log_sink();

// Contract-style application layer: one dataset record per block, admin-only
// writes, public hash queries answered straight from the chain.
class Registry {
 public:
  Registry(Ledger& ledger, GrantTable& grants, LogSink log = default_log_sink());

  std::uint64_t register_dataset(std::string_view name, const Digest& dataset_hash,
                                 const Digest& algorithm_hash,
                                 const Digest& manifest_hash,
                                 const SigningKey& admin_key, std::uint64_t now);
  // Path used when the admin signed the block elsewhere (e.g. over HTTP).
  std::uint64_t register_block(const Block& block);

  GrantIssue grant_access(std::string_view name, const PublicKey& user,
                          const SigningKey& admin_key, std::uint64_t now);
  AccessGrant revoke_access(std::string_view name, const PublicKey& user,
                            const SigningKey& admin_key);
  // Variants for callers that already authenticated the admin by request
  // signature; `caller` must still be the admin key.
  GrantIssue grant_access_as(const PublicKey& caller, std::string_view name,
                             const PublicKey& user, std::uint64_t now);
  AccessGrant revoke_access_as(const PublicKey& caller, std::string_view name,
                               const PublicKey& user);

  // Public and unauthenticated. Throws kUnknownDataset.
  RecordLocation query_hash(std::string_view name) const;
  bool is_authorized(std::string_view name, const PublicKey& user) const;

  Ledger& ledger() { return ledger_; }
  const Ledger& ledger() const { return ledger_; }
  GrantTable& grants() { return grants_; }

 private:
  void require_admin(const PublicKey& caller) const;

  Ledger& ledger_;
  GrantTable& grants_;
  LogSink log_;
};

}  // namespace chainvault
