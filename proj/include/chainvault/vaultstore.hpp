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
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <string>
#include <string_view>
#include <vector>

#include "chainvault/bytes.hpp"
#include "chainvault/ledger.hpp"
#include "chainvault/registry.hpp"
#include "chainvault/signing.hpp"

namespace chainvault {

// Dataset names used as storage keys and URL segments: 1..256 chars from
// [A-Za-z0-9._@+-], not starting with '.'. Throws kInvalidArgument.
void check_object_name(std::string_view name);

// Storage boundary for encrypted fragments and their manifests. Objects are
// immutable: a second put to the same key fails with kAlreadyExists. Every get
// re-verifies the digest recorded at put time and fails with kCorruptObject
// rather than returning bytes that disagree with it.
class ObjectStore {
 public:
  virtual ~ObjectStore() = default;

  virtual Digest put(std::string_view dataset, std::uint64_t index, ByteView blob) = 0;
  virtual Bytes get(std::string_view dataset, std::uint64_t index) const = 0;
  virtual void put_manifest(std::string_view dataset, ByteView manifest_json) = 0;
  virtual Bytes get_manifest(std::string_view dataset) const = 0;
  virtual std::vector<std::uint64_t> list(std::string_view dataset) const = 0;
};

// <root>/<dataset>/<index>.cvf with a <index>.cvf.sha256 sidecar holding the
// digest; the manifest lives next to them as manifest.json.
class FsObjectStore final : public ObjectStore {
 public:
  explicit FsObjectStore(std::filesystem::path root);

  Digest put(std::string_view dataset, std::uint64_t index, ByteView blob) override;
  Bytes get(std::string_view dataset, std::uint64_t index) const override;
  void put_manifest(std::string_view dataset, ByteView manifest_json) override;
  Bytes get_manifest(std::string_view dataset) const override;
  std::vector<std::uint64_t> list(std::string_view dataset) const override;

  std::filesystem::path object_path(std::string_view dataset, std::uint64_t index) const;
  std::filesystem::path manifest_path(std::string_view dataset) const;
  const std::filesystem::path& root() const { return root_; }

 private:
  Digest put_file(const std::filesystem::path& path, ByteView data);
  Bytes get_file(const std::filesystem::path& path) const;

  std::filesystem::path root_;
  std::mutex write_mu_;
};

class MemoryObjectStore final : public ObjectStore {
 public:
  Digest put(std::string_view dataset, std::uint64_t index, ByteView blob) override;
  Bytes get(std::string_view dataset, std::uint64_t index) const override;
  void put_manifest(std::string_view dataset, ByteView manifest_json) override;
  Bytes get_manifest(std::string_view dataset) const override;
  std::vector<std::uint64_t> list(std::string_view dataset) const override;

  // Test hook: flips one bit of a stored object without touching its digest.
  void corrupt(std::string_view dataset, std::uint64_t index, std::size_t bit);

 private:
  struct Entry {
    Bytes data;
    Digest digest;
  };
  // index -1 (max) is the manifest
  using Key = std::pair<std::string, std::uint64_t>;
  Digest put_entry(Key key, ByteView data);
  Bytes get_entry(const Key& key) const;

  mutable std::shared_mutex mu_;
  std::map<Key, Entry> objects_;
};

inline constexpr std::int64_t kRequestWindowSeconds = 300;

// Ed25519 request credential. The signature covers
// canonical_request(method, path, timestamp, SHA-256(body)).
struct RequestAuth {
  PublicKey key{};
  std::int64_t timestamp = 0;
  Signature signature{};
};

// "<METHOD>\n<path>\n<timestamp>\n<hex body digest>"
std::string canonical_request(std::string_view method, std::string_view path,
                              std::int64_t timestamp, const Digest& body_digest);
RequestAuth sign_request(const SigningKey& key, std::string_view method,
                         std::string_view path, ByteView body, std::int64_t timestamp);

using Clock = std::function<std::int64_t()>;
Clock system_clock();

namespace paths {
std::string fragment(std::string_view dataset, std::uint64_t index);
std::string manifest(std::string_view dataset);
std::string grants(std::string_view dataset);
inline constexpr std::string_view kBlocks = "/v1/chain/blocks";
}  // namespace paths

// The "private cloud": admin-only writes, grant-gated fragment reads, public
// chain reads. Both the HTTP server and LocalVault call into this class, so
// the two paths enforce the same rules.
class VaultService {
 public:
  VaultService(Registry& registry, ObjectStore& store, Clock clock = system_clock());

  Digest put_fragment(std::string_view dataset, std::uint64_t index, ByteView blob,
                      const RequestAuth& auth);
  Bytes get_fragment(std::string_view dataset, std::uint64_t index,
                     const RequestAuth& auth) const;
  void put_manifest(std::string_view dataset, ByteView manifest_json,
                    const RequestAuth& auth);
  Bytes get_manifest(std::string_view dataset, const RequestAuth& auth) const;
  // Body is the serialized CVB1 block, already signed by the admin.
  std::uint64_t append_block(ByteView block_file, const RequestAuth& auth);
  // Body: {"action":"grant"|"revoke","user_public_key":"<hex>"}
  GrantIssue update_grant(std::string_view dataset, ByteView body,
                          const RequestAuth& auth);

  // Public reads; no credentials.
  std::vector<Block> blocks() const;
  Block block(std::uint64_t id) const;
  std::optional<Block> head() const;
  RecordLocation dataset(std::string_view name) const;

  const PublicKey& admin_public_key() const;

 private:
  void authenticate(std::string_view method, std::string_view path, ByteView body,
                    const RequestAuth& auth) const;
  void require_admin(std::string_view method, std::string_view path, ByteView body,
                     const RequestAuth& auth) const;
  void require_reader(std::string_view dataset, std::string_view method,
                      std::string_view path, const RequestAuth& auth) const;

  Registry& registry_;
  ObjectStore& store_;
  Clock clock_;
};

}  // namespace chainvault
