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
#include <string>
#include <string_view>
#include <vector>

#include "chainvault/cryptobox.hpp"
#include "chainvault/fragmenter.hpp"
#include "chainvault/ledger.hpp"
#include "chainvault/vault_api.hpp"

namespace chainvault {

struct IngestResult {
  Manifest manifest;
  Digest manifest_hash;
  std::vector<Digest> blob_digests;
};

// Admin side of the storage flow: fragment, seal every fragment under
// `key`, upload blobs and the manifest. Nothing is put on chain here.
IngestResult ingest_dataset(VaultApi& vault, std::string_view name, ByteView data,
                            std::uint64_t fragment_size, const DataKey& key,
                            const SigningKey& admin, NonceSource& nonces,
                            std::string original_name = {});

// Builds a one-record block on top of the vault's current head, signs it
// with the admin key and submits it. Returns the block id.
std::uint64_t register_record(VaultApi& vault, DatasetRecord record,
                              const SigningKey& admin, std::uint64_t now);

// User side: download the manifest, check it against the manifest hash on
// chain, download every fragment, decrypt and reassemble.
Bytes fetch_dataset(VaultApi& vault, std::string_view name, const SigningKey& user,
                    const DataKey& key);

}  // namespace chainvault
