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

#include <filesystem>

#include "chainvault/ledger.hpp"
#include "chainvault/registry.hpp"
#include "chainvault/vaultstore.hpp"

namespace chainvault {

// On-disk layout of a vault root:
//   config.json   {"admin_public_key": "<hex>"}
//   chain/        blocks/*.cvb + HEAD
//   store/        <dataset>/<index>.cvf (+ .sha256), manifest.json
//   grants.json
class VaultNode {
 public:
  VaultNode(const std::filesystem::path& root, const PublicKey& admin, Clock clock,
            LogSink log = default_log_sink());
  // Reads the admin key from config.json. Throws kNotFound if the root was
  // never initialized.
  static VaultNode open(const std::filesystem::path& root, Clock clock,
                        LogSink log = default_log_sink());
  // Creates the directory tree and config.json; refuses to re-key an existing
  // root (kAlreadyExists) unless the admin key is the same.
  static void init(const std::filesystem::path& root, const PublicKey& admin);
  static PublicKey read_admin(const std::filesystem::path& root);

  const std::filesystem::path& root() const { return root_; }

  std::filesystem::path root_;
  Ledger ledger;
  GrantTable grants;
  Registry registry;
  FsObjectStore store;
  VaultService service;
};

}  // namespace chainvault
