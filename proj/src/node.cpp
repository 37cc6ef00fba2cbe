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

#include "chainvault/node.hpp"

#include <json.hpp>

#include "fsutil.hpp"

namespace chainvault {

namespace fs = std::filesystem;

VaultNode::VaultNode(const fs::path& root, const PublicKey& admin, Clock clock, LogSink log)
    : root_(root),
      ledger(admin, root / "chain"),
      grants(root / "grants.json"),
      registry(ledger, grants, std::move(log)),
      store(root / "store"),
      service(registry, store, std::move(clock)) {}

PublicKey VaultNode::read_admin(const fs::path& root) {
  auto path = root / "config.json";
  if (!fs::exists(path)) {
    fail(Errc::kNotFound, root.string() + " is not an initialized vault root");
  }
  auto raw = detail::read_file(path);
  auto doc = nlohmann::json::parse(raw.begin(), raw.end(), nullptr, false);
  if (doc.is_discarded() || !doc.is_object() || !doc.contains("admin_public_key") ||
      !doc["admin_public_key"].is_string()) {
    fail(Errc::kStorageFailure, path.string() + " is malformed");
  }
  return public_key_from_hex(doc["admin_public_key"].get<std::string>());
}

VaultNode VaultNode::open(const fs::path& root, Clock clock, LogSink log) {
  return VaultNode(root, read_admin(root), std::move(clock), std::move(log));
}

void VaultNode::init(const fs::path& root, const PublicKey& admin) {
  if (fs::exists(root / "config.json")) {
    if (read_admin(root) != admin) {
      fail(Errc::kAlreadyExists, root.string() + " is already initialized with another admin key");
    }
    return;
  }
  std::error_code ec;
  for (auto sub : {"chain/blocks", "store"}) {
    fs::create_directories(root / sub, ec);
    if (ec) fail(Errc::kStorageFailure, "cannot create " + (root / sub).string());
  }
  nlohmann::json doc = {{"admin_public_key", public_key_hex(admin)}};
  detail::write_file_durable(root / "config.json", as_bytes(doc.dump(2) + "\n"));
}

}  // namespace chainvault
