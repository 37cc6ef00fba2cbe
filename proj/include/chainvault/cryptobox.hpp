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

#include <array>
#include <atomic>
#include <cstdint>
#include <mutex>
#include <set>
#include <shared_mutex>
#include <span>
#include <string_view>
#include <vector>

#include "chainvault/bytes.hpp"
#include "chainvault/fragmenter.hpp"

namespace chainvault {

using Tag = std::array<std::uint8_t, 16>;

inline constexpr std::string_view kFragmentMagic = "CVF1";
inline constexpr std::size_t kFragmentHeaderSize = 4 + 8 + 12 + 16;

// AES-256 data key. key_id is the first 8 bytes of SHA-256(key).
class DataKey {
 public:
  static DataKey generate();
  static DataKey from_bytes(ByteView raw);

  const std::array<std::uint8_t, 32>& bytes() const { return key_; }
  const std::array<std::uint8_t, 8>& key_id() const { return id_; }

  bool operator==(const DataKey&) const = default;

 private:
  explicit DataKey(const std::array<std::uint8_t, 32>& key);

  std::array<std::uint8_t, 32> key_;
  std::array<std::uint8_t, 8> id_;
};

struct EncryptedFragment {
  std::uint64_t index = 0;
  Nonce nonce{};
  Tag tag{};
  Bytes ciphertext;

  // "CVF1" || index (u64 BE) || nonce || tag || ciphertext
  Bytes serialize() const;
  static EncryptedFragment parse(ByteView blob);

  bool operator==(const EncryptedFragment&) const = default;
};

// Additional authenticated data binding a fragment to its dataset and slot:
// name length (u32 BE) || name || index (u64 BE).
Bytes fragment_aad(std::string_view dataset_name, std::uint64_t index);

class NonceSource {
 public:
  virtual ~NonceSource() = default;
  virtual Nonce next(std::uint64_t index) = 0;
};

class RandomNonceSource final : public NonceSource {
 public:
  Nonce next(std::uint64_t index) override;
};

// nonce = SHA-256(seed || index)[0..12). Reproducible runs only; a given index
// must be sealed at most once per seed.
class SeededNonceSource final : public NonceSource {
 public:
  explicit SeededNonceSource(std::uint64_t seed) : seed_(seed) {}
  Nonce next(std::uint64_t index) override;

 private:
  std::uint64_t seed_;
};

// Per-dataset record of nonces already used under one key. Claims are
// serialized; lookups run concurrently.
class NonceLedger {
 public:
  // Throws kNonceReuse when the nonce was claimed before.
  void claim(const Nonce& nonce);
  bool contains(const Nonce& nonce) const;
  std::size_t size() const;

 private:
  mutable std::shared_mutex mu_;
  std::set<Nonce> used_;
};

EncryptedFragment encrypt_fragment(const Fragment& frag, const DataKey& key,
                                   ByteView aad, const Nonce& nonce,
                                   NonceLedger& ledger);
EncryptedFragment encrypt_fragment(const Fragment& frag, const DataKey& key,
                                   ByteView aad, NonceSource& nonces,
                                   NonceLedger& ledger);

// Throws kAuthFailure if anything about the input was altered. No plaintext is
// returned on failure.
Fragment decrypt_fragment(const EncryptedFragment& efrag, const DataKey& key,
                          ByteView aad);

// Seals every fragment of a dataset and records nonce and cipher_digest in the
// manifest entries. Returns the serialized blobs in index order.
std::vector<Bytes> seal_fragments(std::span<const Fragment> fragments,
                                  Manifest& manifest,
                                  std::string_view dataset_name,
                                  const DataKey& key, NonceSource& nonces,
                                  NonceLedger& ledger);

// Inverse of seal_fragments: checks each blob against its cipher_digest,
// then authenticates and decrypts it.
std::vector<Fragment> open_fragments(std::span<const Bytes> blobs,
                                     const Manifest& manifest,
                                     std::string_view dataset_name,
                                     const DataKey& key);

namespace serial {
std::vector<Bytes> seal_fragments(std::span<const Fragment> fragments,
                                  Manifest& manifest,
                                  std::string_view dataset_name,
                                  const DataKey& key, NonceSource& nonces,
                                  NonceLedger& ledger);
std::vector<Fragment> open_fragments(std::span<const Bytes> blobs,
                                     const Manifest& manifest,
                                     std::string_view dataset_name,
                                     const DataKey& key);
}  // namespace serial

}  // namespace chainvault
