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
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "chainvault/bytes.hpp"

namespace chainvault {

inline constexpr std::uint64_t kDefaultFragmentSize = 4ull << 20;
inline constexpr int kManifestFormatVersion = 1;

using Nonce = std::array<std::uint8_t, 12>;

struct Fragment {
  std::uint64_t index = 0;
  Bytes payload;

  std::uint64_t size() const { return payload.size(); }
};

struct FragmentEntry {
  std::uint64_t index = 0;
  std::uint64_t size = 0;
  Digest plain_digest;
  // Both filled in by the cryptobox once the fragment is sealed.
  Digest cipher_digest;
  Nonce nonce{};

  bool operator==(const FragmentEntry&) const = default;
};

struct Manifest {
  int format_version = kManifestFormatVersion;
  std::string original_name;
  std::uint64_t total_size = 0;
  std::uint64_t fragment_size = 0;
  Digest dataset_digest;
  std::vector<FragmentEntry> fragments;

  // Keys sorted, no whitespace, digests and nonces lowercase hex. This exact
  // string is what manifest_hash() covers.
  std::string canonical_json() const;
  static Manifest from_json(std::string_view text);
  Digest manifest_hash() const;

  // Structural invariants: contiguous indices, size law, fragment_size bound.
  // Throws kMalformedManifest.
  void check() const;

  bool operator==(const Manifest&) const = default;
};

struct FragmentSet {
  std::vector<Fragment> fragments;
  Manifest manifest;
};

// Fixed-size split. Fragment digests are computed in parallel.
FragmentSet fragment(ByteView data, std::uint64_t fragment_size,
                     std::string original_name = {});

// Reassembles by manifest index; input order is irrelevant. Verifies each
// fragment's digest and the whole-file digest.
Bytes defragment(std::span<const Fragment> fragments, const Manifest& manifest);

namespace serial {
// Single-threaded reference versions kept for equivalence tests and benches.
FragmentSet fragment(ByteView data, std::uint64_t fragment_size,
                     std::string original_name = {});
Bytes defragment(std::span<const Fragment> fragments, const Manifest& manifest);
}  // namespace serial

}  // namespace chainvault
