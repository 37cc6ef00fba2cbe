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

#include "chainvault/workflow.hpp"

namespace chainvault {

IngestResult ingest_dataset(VaultApi& vault, std::string_view name, ByteView data,
                            std::uint64_t fragment_size, const DataKey& key,
                            const SigningKey& admin, NonceSource& nonces,
                            std::string original_name) {
  check_dataset_name(name);
  auto set = fragment(data, fragment_size, std::move(original_name));
  NonceLedger used;
  auto blobs = seal_fragments(set.fragments, set.manifest, name, key, nonces, used);

  IngestResult out;
  out.blob_digests.reserve(blobs.size());
  for (std::size_t i = 0; i < blobs.size(); ++i) {
    out.blob_digests.push_back(vault.put_fragment(name, i, blobs[i], admin));
  }
  vault.put_manifest(name, set.manifest.canonical_json(), admin);
  out.manifest_hash = set.manifest.manifest_hash();
  out.manifest = std::move(set.manifest);
  return out;
}

std::uint64_t register_record(VaultApi& vault, DatasetRecord record, const SigningKey& admin,
                              std::uint64_t now) {
  auto head = vault.head();
  auto height = head ? head->height + 1 : 0;
  auto prev = head ? head->block_hash : Digest::zero();
  auto block = seal_block(height, prev, now, {std::move(record)}, admin);
  return vault.append_block(block, admin);
}

Bytes fetch_dataset(VaultApi& vault, std::string_view name, const SigningKey& user,
                    const DataKey& key) {
  auto manifest_json = vault.get_manifest(name, user);
  auto manifest = Manifest::from_json(manifest_json);
  auto on_chain = vault.dataset(name);
  if (manifest.manifest_hash() != on_chain.record.manifest_hash) {
    fail(Errc::kDigestMismatch, "manifest for '" + std::string(name) +
                                    "' does not match the manifest hash on chain");
  }
  std::vector<Bytes> blobs;
  blobs.reserve(manifest.fragments.size());
  for (const auto& entry : manifest.fragments) {
    blobs.push_back(vault.get_fragment(name, entry.index, user));
  }
  auto fragments = open_fragments(blobs, manifest, name, key);
  return defragment(fragments, manifest);
}

}  // namespace chainvault
