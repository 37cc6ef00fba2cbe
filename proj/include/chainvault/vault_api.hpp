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
#include <vector>

#include "chainvault/ledger.hpp"
#include "chainvault/registry.hpp"
#include "chainvault/signing.hpp"
#include "chainvault/vaultstore.hpp"

namespace chainvault {

// Client-side view of a vault. Implementations sign each request with the
// key they are handed, so callers never build credentials themselves.
class VaultApi {
 public:
  virtual ~VaultApi() = default;

  virtual Digest put_fragment(std::string_view dataset, std::uint64_t index,
                              ByteView blob, const SigningKey& admin) = 0;
  virtual Bytes get_fragment(std::string_view dataset, std::uint64_t index,
                             const SigningKey& user) = 0;
  virtual void put_manifest(std::string_view dataset, std::string_view manifest_json,
                            const SigningKey& admin) = 0;
  virtual std::string get_manifest(std::string_view dataset, const SigningKey& user) = 0;
  virtual std::uint64_t append_block(const Block& block, const SigningKey& admin) = 0;
  virtual GrantIssue update_grant(std::string_view dataset, const PublicKey& user,
                                  bool revoke, const SigningKey& admin) = 0;

  virtual std::vector<Block> blocks() = 0;
  virtual Block block(std::uint64_t id) = 0;
  virtual std::optional<Block> head() = 0;
  virtual RecordLocation dataset(std::string_view name) = 0;
};

// Canonical request body for grant updates; shared by both transports.
std::string grant_body(const PublicKey& user, bool revoke);

// In-process transport: calls VaultService directly with the same signed
// credentials an HTTP client would send.
class LocalVault final : public VaultApi {
 public:
  LocalVault(VaultService& service, Clock clock = system_clock());

  Digest put_fragment(std::string_view dataset, std::uint64_t index, ByteView blob,
                      const SigningKey& admin) override;
  Bytes get_fragment(std::string_view dataset, std::uint64_t index,
                     const SigningKey& user) override;
  void put_manifest(std::string_view dataset, std::string_view manifest_json,
                    const SigningKey& admin) override;
  std::string get_manifest(std::string_view dataset, const SigningKey& user) override;
  std::uint64_t append_block(const Block& block, const SigningKey& admin) override;
  GrantIssue update_grant(std::string_view dataset, const PublicKey& user, bool revoke,
                          const SigningKey& admin) override;

  std::vector<Block> blocks() override;
  Block block(std::uint64_t id) override;
  std::optional<Block> head() override;
  RecordLocation dataset(std::string_view name) override;

 private:
  VaultService& service_;
  Clock clock_;
};

}  // namespace chainvault
