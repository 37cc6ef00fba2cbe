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

#include "chainvault/vault_api.hpp"

#include <json.hpp>

namespace chainvault {

std::string grant_body(const PublicKey& user, bool revoke) {
  nlohmann::json doc = {{"action", revoke ? "revoke" : "grant"},
                        {"user_public_key", public_key_hex(user)}};
  return doc.dump();
}

LocalVault::LocalVault(VaultService& service, Clock clock)
    : service_(service), clock_(std::move(clock)) {}

Digest LocalVault::put_fragment(std::string_view dataset, std::uint64_t index,
                                ByteView blob, const SigningKey& admin) {
  auto auth = sign_request(admin, "PUT", paths::fragment(dataset, index), blob, clock_());
  return service_.put_fragment(dataset, index, blob, auth);
}

Bytes LocalVault::get_fragment(std::string_view dataset, std::uint64_t index,
                               const SigningKey& user) {
  auto auth = sign_request(user, "GET", paths::fragment(dataset, index), {}, clock_());
  return service_.get_fragment(dataset, index, auth);
}

void LocalVault::put_manifest(std::string_view dataset, std::string_view manifest_json,
                              const SigningKey& admin) {
  auto body = as_bytes(manifest_json);
  auto auth = sign_request(admin, "PUT", paths::manifest(dataset), body, clock_());
  service_.put_manifest(dataset, body, auth);
}

std::string LocalVault::get_manifest(std::string_view dataset, const SigningKey& user) {
  auto auth = sign_request(user, "GET", paths::manifest(dataset), {}, clock_());
  return to_string(service_.get_manifest(dataset, auth));
}

std::uint64_t LocalVault::append_block(const Block& block, const SigningKey& admin) {
  auto body = block.serialize();
  auto auth = sign_request(admin, "POST", paths::kBlocks, body, clock_());
  return service_.append_block(body, auth);
}

GrantIssue LocalVault::update_grant(std::string_view dataset, const PublicKey& user,
                                    bool revoke, const SigningKey& admin) {
  auto body = grant_body(user, revoke);
  auto auth = sign_request(admin, "POST", paths::grants(dataset), as_bytes(body), clock_());
  return service_.update_grant(dataset, as_bytes(body), auth);
}

std::vector<Block> LocalVault::blocks() { return service_.blocks(); }

Block LocalVault::block(std::uint64_t id) { return service_.block(id); }

std::optional<Block> LocalVault::head() { return service_.head(); }

RecordLocation LocalVault::dataset(std::string_view name) { return service_.dataset(name); }

}  // namespace chainvault
