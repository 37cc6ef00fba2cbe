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

#include "chainvault/bytes.hpp"

namespace chainvault {

using PublicKey = std::array<std::uint8_t, 32>;
using Signature = std::array<std::uint8_t, 64>;

std::string public_key_hex(const PublicKey& key);
PublicKey public_key_from_hex(std::string_view hex);

// Ed25519 keypair held as its 32-byte seed. Used for the admin key that signs
// blocks and authorizes writes, and for user keys that sign download requests.
class SigningKey {
 public:
  explicit SigningKey(const std::array<std::uint8_t, 32>& seed);

  static SigningKey generate();
  static SigningKey from_bytes(ByteView seed);

  const std::array<std::uint8_t, 32>& seed() const { return seed_; }
  const PublicKey& public_key() const { return public_; }

  Signature sign(ByteView message) const;

 private:
  std::array<std::uint8_t, 32> seed_;
  PublicKey public_;
};

bool verify_signature(const PublicKey& key, ByteView message,
                      const Signature& signature);

}  // namespace chainvault
