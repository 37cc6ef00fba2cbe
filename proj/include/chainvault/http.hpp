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

#include <memory>
#include <string>
#include <thread>

#include "chainvault/vault_api.hpp"
#include "chainvault/vaultstore.hpp"

namespace chainvault {

// HTTP front end for a VaultService.
//
//   PUT  /v1/fragments/{name}/{index}  admin-signed, body = CVF1 blob
//   GET  /v1/fragments/{name}/{index}  user-signed
//   PUT  /v1/manifests/{name}          admin-signed, body = canonical JSON
//   GET  /v1/manifests/{name}          user-signed
//   POST /v1/grants/{name}             admin-signed, body = grant_body()
//   GET  /v1/chain/blocks              public
//   GET  /v1/chain/blocks/{id}         public
//   GET  /v1/chain/head                public
//   POST /v1/chain/blocks              admin-signed, body = CVB1 block file
//   GET  /v1/datasets/{name}           public
//
// Signed requests carry X-Chainvault-Key (public key hex),
// X-Chainvault-Timestamp and X-Chainvault-Signature (hex). Errors come back
// as {"error": "<code>", "message": "..."} with 400/401/404/409/500.
class HttpServer {
 public:
  explicit HttpServer(VaultService& service);
  ~HttpServer();
  HttpServer(const HttpServer&) = delete;
  HttpServer& operator=(const HttpServer&) = delete;

  // Binds and serves on a background thread. Port 0 picks a free port.
  int start(const std::string& host, int port);
  // Binds and serves on the calling thread until stop().
  void listen(const std::string& host, int port);
  void stop();

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

inline constexpr const char* kKeyHeader = "X-Chainvault-Key";
inline constexpr const char* kTimestampHeader = "X-Chainvault-Timestamp";
inline constexpr const char* kSignatureHeader = "X-Chainvault-Signature";

int http_status(Errc code);

// VaultApi over HTTP. Server errors are rethrown as chainvault::Error with
// the original code, so callers cannot tell the transports apart.
class HttpVault final : public VaultApi {
 public:
  explicit HttpVault(const std::string& base_url, Clock clock = system_clock());
  ~HttpVault() override;

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
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace chainvault
