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

#include "chainvault/signing.hpp"

#include <openssl/evp.h>

#include <cstring>
#include <memory>

#include "chainvault/hash.hpp"

namespace chainvault {

namespace {

struct PkeyDeleter {
  void operator()(EVP_PKEY* p) const { EVP_PKEY_free(p); }
};
struct MdCtxDeleter {
  void operator()(EVP_MD_CTX* p) const { EVP_MD_CTX_free(p); }
};
using PkeyPtr = std::unique_ptr<EVP_PKEY, PkeyDeleter>;
using MdCtxPtr = std::unique_ptr<EVP_MD_CTX, MdCtxDeleter>;

PkeyPtr private_pkey(const std::array<std::uint8_t, 32>& seed) {
  PkeyPtr key(EVP_PKEY_new_raw_private_key(EVP_PKEY_ED25519, nullptr,
                                           seed.data(), seed.size()));
  if (!key) fail(Errc::kCryptoFailure, "cannot load Ed25519 private key");
  return key;
}

}  // namespace

std::string public_key_hex(const PublicKey& key) { return to_hex(key); }

PublicKey public_key_from_hex(std::string_view hex) {
  auto raw = from_hex(hex);
  if (raw.size() != 32) fail(Errc::kInvalidArgument, "public key must be 32 bytes");
  PublicKey key;
  std::memcpy(key.data(), raw.data(), 32);
  return key;
}

SigningKey::SigningKey(const std::array<std::uint8_t, 32>& seed) : seed_(seed) {
  auto key = private_pkey(seed_);
  std::size_t len = public_.size();
  if (EVP_PKEY_get_raw_public_key(key.get(), public_.data(), &len) != 1 ||
      len != 32) {
    fail(Errc::kCryptoFailure, "cannot derive Ed25519 public key");
  }
}

SigningKey SigningKey::generate() {
  std::array<std::uint8_t, 32> seed;
  secure_random(seed);
  return SigningKey(seed);
}

SigningKey SigningKey::from_bytes(ByteView seed) {
  if (seed.size() != 32) fail(Errc::kInvalidArgument, "Ed25519 seed must be 32 bytes");
  std::array<std::uint8_t, 32> s;
  std::memcpy(s.data(), seed.data(), 32);
  return SigningKey(s);
}

Signature SigningKey::sign(ByteView message) const {
  auto key = private_pkey(seed_);
  MdCtxPtr ctx(EVP_MD_CTX_new());
  Signature sig;
  std::size_t len = sig.size();
  if (!ctx ||
      EVP_DigestSignInit(ctx.get(), nullptr, nullptr, nullptr, key.get()) != 1 ||
      EVP_DigestSign(ctx.get(), sig.data(), &len, message.data(),
                     message.size()) != 1 ||
      len != sig.size()) {
    fail(Errc::kCryptoFailure, "Ed25519 signing failed");
  }
  return sig;
}

bool verify_signature(const PublicKey& key, ByteView message,
                      const Signature& signature) {
  PkeyPtr pkey(EVP_PKEY_new_raw_public_key(EVP_PKEY_ED25519, nullptr, key.data(),
                                           key.size()));
  if (!pkey) return false;
  MdCtxPtr ctx(EVP_MD_CTX_new());
  if (!ctx ||
      EVP_DigestVerifyInit(ctx.get(), nullptr, nullptr, nullptr, pkey.get()) != 1) {
    return false;
  }
  return EVP_DigestVerify(ctx.get(), signature.data(), signature.size(),
                          message.data(), message.size()) == 1;
}

}  // namespace chainvault
