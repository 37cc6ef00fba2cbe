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

#include "chainvault/vaultstore.hpp"

#include <algorithm>
#include <chrono>
#include <cstring>
#include <limits>

#include <json.hpp>

#include "chainvault/fragmenter.hpp"
#include "chainvault/hash.hpp"
#include "fsutil.hpp"

namespace chainvault {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr std::uint64_t kManifestSlot = std::numeric_limits<std::uint64_t>::max();

[[noreturn]] void deny(const std::string& why) { fail(Errc::kAccessDenied, why); }

Digest read_sidecar(const fs::path& path) {
  Bytes raw;
  try {
    raw = detail::read_file(path);
  } catch (const Error&) {
    fail(Errc::kCorruptObject, "digest record missing for " + path.string());
  }
  auto text = to_string(raw);
  while (!text.empty() && (text.back() == '\n' || text.back() == '\r')) text.pop_back();
  try {
    return Digest::from_hex(text);
  } catch (const Error&) {
    fail(Errc::kCorruptObject, "digest record unreadable for " + path.string());
  }
}

fs::path sidecar(const fs::path& object) {
  auto p = object;
  p += ".sha256";
  return p;
}

}  // namespace

void check_object_name(std::string_view name) {
  if (name.empty() || name.size() > kMaxDatasetNameBytes || name.front() == '.') {
    fail(Errc::kInvalidArgument, "invalid dataset name '" + std::string(name) + "'");
  }
  for (char c : name) {
    bool ok = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') ||
              c == '.' || c == '_' || c == '@' || c == '+' || c == '-';
    if (!ok) {
      fail(Errc::kInvalidArgument, "invalid character in dataset name '" +
                                       std::string(name) + "'");
    }
  }
}

// ---- FsObjectStore ----

FsObjectStore::FsObjectStore(fs::path root) : root_(std::move(root)) {
  std::error_code ec;
  fs::create_directories(root_, ec);
  if (ec) fail(Errc::kStorageFailure, "cannot create " + root_.string() + ": " + ec.message());
}

fs::path FsObjectStore::object_path(std::string_view dataset, std::uint64_t index) const {
  check_object_name(dataset);
  return root_ / std::string(dataset) / (std::to_string(index) + ".cvf");
}

fs::path FsObjectStore::manifest_path(std::string_view dataset) const {
  check_object_name(dataset);
  return root_ / std::string(dataset) / "manifest.json";
}

Digest FsObjectStore::put_file(const fs::path& path, ByteView data) {
  std::lock_guard lock(write_mu_);
  if (fs::exists(path)) fail(Errc::kAlreadyExists, path.string() + " already exists");
  std::error_code ec;
  fs::create_directories(path.parent_path(), ec);
  if (ec) fail(Errc::kStorageFailure, "cannot create " + path.parent_path().string());
  auto digest = sha256(data);
  // Digest first: an object only becomes visible once its digest is durable.
  detail::write_file_durable(sidecar(path), as_bytes(digest.hex() + "\n"));
  detail::write_file_durable(path, data, /*exclusive=*/true);
  return digest;
}

Bytes FsObjectStore::get_file(const fs::path& path) const {
  if (!fs::exists(path)) fail(Errc::kNotFound, "no object at " + path.string());
  auto data = detail::read_file(path);
  if (sha256(data) != read_sidecar(sidecar(path))) {
    fail(Errc::kCorruptObject, "stored object " + path.string() + " fails its digest check");
  }
  return data;
}

Digest FsObjectStore::put(std::string_view dataset, std::uint64_t index, ByteView blob) {
  return put_file(object_path(dataset, index), blob);
}

Bytes FsObjectStore::get(std::string_view dataset, std::uint64_t index) const {
  return get_file(object_path(dataset, index));
}

void FsObjectStore::put_manifest(std::string_view dataset, ByteView manifest_json) {
  put_file(manifest_path(dataset), manifest_json);
}

Bytes FsObjectStore::get_manifest(std::string_view dataset) const {
  return get_file(manifest_path(dataset));
}

std::vector<std::uint64_t> FsObjectStore::list(std::string_view dataset) const {
  check_object_name(dataset);
  std::vector<std::uint64_t> out;
  auto dir = root_ / std::string(dataset);
  std::error_code ec;
  for (const auto& entry : fs::directory_iterator(dir, ec)) {
    auto name = entry.path().filename().string();
    if (entry.path().extension() != ".cvf") continue;
    try {
      out.push_back(std::stoull(name.substr(0, name.size() - 4)));
    } catch (const std::exception&) {
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

// ---- MemoryObjectStore ----

Digest MemoryObjectStore::put_entry(Key key, ByteView data) {
  std::unique_lock lock(mu_);
  if (objects_.contains(key)) fail(Errc::kAlreadyExists, "object already exists");
  auto digest = sha256(data);
  objects_.emplace(std::move(key), Entry{Bytes(data.begin(), data.end()), digest});
  return digest;
}

Bytes MemoryObjectStore::get_entry(const Key& key) const {
  std::shared_lock lock(mu_);
  auto it = objects_.find(key);
  if (it == objects_.end()) fail(Errc::kNotFound, "no such object");
  if (sha256(it->second.data) != it->second.digest) {
    fail(Errc::kCorruptObject, "stored object fails its digest check");
  }
  return it->second.data;
}

Digest MemoryObjectStore::put(std::string_view dataset, std::uint64_t index, ByteView blob) {
  check_object_name(dataset);
  return put_entry({std::string(dataset), index}, blob);
}

Bytes MemoryObjectStore::get(std::string_view dataset, std::uint64_t index) const {
  check_object_name(dataset);
  return get_entry({std::string(dataset), index});
}

void MemoryObjectStore::put_manifest(std::string_view dataset, ByteView manifest_json) {
  check_object_name(dataset);
  put_entry({std::string(dataset), kManifestSlot}, manifest_json);
}

Bytes MemoryObjectStore::get_manifest(std::string_view dataset) const {
  check_object_name(dataset);
  return get_entry({std::string(dataset), kManifestSlot});
}

std::vector<std::uint64_t> MemoryObjectStore::list(std::string_view dataset) const {
  std::shared_lock lock(mu_);
  std::vector<std::uint64_t> out;
  for (const auto& [key, entry] : objects_) {
    if (key.first == dataset && key.second != kManifestSlot) out.push_back(key.second);
  }
  return out;
}

void MemoryObjectStore::corrupt(std::string_view dataset, std::uint64_t index,
                                std::size_t bit) {
  std::unique_lock lock(mu_);
  auto& data = objects_.at({std::string(dataset), index}).data;
  data.at(bit / 8) ^= static_cast<std::uint8_t>(1u << (bit % 8));
}

// ---- request signing ----

std::string canonical_request(std::string_view method, std::string_view path,
                              std::int64_t timestamp, const Digest& body_digest) {
  std::string out;
  out.append(method).append("\n").append(path).append("\n");
  out.append(std::to_string(timestamp)).append("\n").append(body_digest.hex());
  return out;
}

RequestAuth sign_request(const SigningKey& key, std::string_view method,
                         std::string_view path, ByteView body, std::int64_t timestamp) {
  RequestAuth auth;
  auth.key = key.public_key();
  auth.timestamp = timestamp;
  auth.signature =
      key.sign(as_bytes(canonical_request(method, path, timestamp, sha256(body))));
  return auth;
}

Clock system_clock() {
  return [] {
    return static_cast<std::int64_t>(std::chrono::duration_cast<std::chrono::seconds>(
                                         std::chrono::system_clock::now().time_since_epoch())
                                         .count());
  };
}

namespace paths {

std::string fragment(std::string_view dataset, std::uint64_t index) {
  return "/v1/fragments/" + std::string(dataset) + "/" + std::to_string(index);
}

std::string manifest(std::string_view dataset) {
  return "/v1/manifests/" + std::string(dataset);
}

std::string grants(std::string_view dataset) {
  return "/v1/grants/" + std::string(dataset);
}

}  // namespace paths

// ---- VaultService ----

VaultService::VaultService(Registry& registry, ObjectStore& store, Clock clock)
    : registry_(registry), store_(store), clock_(std::move(clock)) {}

const PublicKey& VaultService::admin_public_key() const {
  return registry_.ledger().admin_public_key();
}

void VaultService::authenticate(std::string_view method, std::string_view path,
                                ByteView body, const RequestAuth& auth) const {
  auto now = clock_();
  auto skew = now > auth.timestamp ? now - auth.timestamp : auth.timestamp - now;
  if (skew > kRequestWindowSeconds) deny("request timestamp outside the allowed window");
  auto message = canonical_request(method, path, auth.timestamp, sha256(body));
  if (!verify_signature(auth.key, as_bytes(message), auth.signature)) {
    deny("request signature does not verify");
  }
}

void VaultService::require_admin(std::string_view method, std::string_view path,
                                 ByteView body, const RequestAuth& auth) const {
  if (auth.key != admin_public_key()) deny("admin credential required");
  authenticate(method, path, body, auth);
}

void VaultService::require_reader(std::string_view dataset, std::string_view method,
                                  std::string_view path, const RequestAuth& auth) const {
  authenticate(method, path, {}, auth);
  if (auth.key == admin_public_key()) return;
  if (!registry_.is_authorized(dataset, auth.key)) {
    deny("no active grant for this key on '" + std::string(dataset) + "'");
  }
}

Digest VaultService::put_fragment(std::string_view dataset, std::uint64_t index,
                                  ByteView blob, const RequestAuth& auth) {
  check_object_name(dataset);
  require_admin("PUT", paths::fragment(dataset, index), blob, auth);
  return store_.put(dataset, index, blob);
}

Bytes VaultService::get_fragment(std::string_view dataset, std::uint64_t index,
                                 const RequestAuth& auth) const {
  check_object_name(dataset);
  require_reader(dataset, "GET", paths::fragment(dataset, index), auth);
  return store_.get(dataset, index);
}

void VaultService::put_manifest(std::string_view dataset, ByteView manifest_json,
                                const RequestAuth& auth) {
  check_object_name(dataset);
  require_admin("PUT", paths::manifest(dataset), manifest_json, auth);
  Manifest::from_json(to_string(manifest_json));
  store_.put_manifest(dataset, manifest_json);
}

Bytes VaultService::get_manifest(std::string_view dataset, const RequestAuth& auth) const {
  check_object_name(dataset);
  require_reader(dataset, "GET", paths::manifest(dataset), auth);
  return store_.get_manifest(dataset);
}

std::uint64_t VaultService::append_block(ByteView block_file, const RequestAuth& auth) {
  require_admin("POST", paths::kBlocks, block_file, auth);
  auto block = Block::parse(block_file);
  for (const auto& rec : block.records) check_object_name(rec.dataset_name);
  return registry_.register_block(block);
}

GrantIssue VaultService::update_grant(std::string_view dataset, ByteView body,
                                      const RequestAuth& auth) {
  check_object_name(dataset);
  require_admin("POST", paths::grants(dataset), body, auth);
  json doc = json::parse(body.begin(), body.end(), nullptr, false);
  if (doc.is_discarded() || !doc.is_object() || !doc.contains("action") ||
      !doc.contains("user_public_key") || !doc["action"].is_string() ||
      !doc["user_public_key"].is_string()) {
    fail(Errc::kInvalidArgument, "grant body must carry action and user_public_key");
  }
  auto user = public_key_from_hex(doc["user_public_key"].get<std::string>());
  auto action = doc["action"].get<std::string>();
  if (action == "grant") {
    return registry_.grant_access_as(auth.key, dataset, user, static_cast<std::uint64_t>(clock_()));
  }
  if (action == "revoke") {
    auto grant = registry_.revoke_access_as(auth.key, dataset, user);
    auto loc = registry_.query_hash(dataset);
    return {grant, loc.block_id, loc.record.dataset_hash};
  }
  fail(Errc::kInvalidArgument, "unknown grant action '" + action + "'");
}

std::vector<Block> VaultService::blocks() const { return registry_.ledger().blocks(); }

Block VaultService::block(std::uint64_t id) const { return registry_.ledger().block(id); }

std::optional<Block> VaultService::head() const { return registry_.ledger().head(); }

RecordLocation VaultService::dataset(std::string_view name) const {
  return registry_.query_hash(name);
}

}  // namespace chainvault
