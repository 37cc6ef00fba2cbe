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

#include "chainvault/cryptobox.hpp"

#include <openssl/evp.h>

#include <cstring>
#include <memory>

#include "chainvault/hash.hpp"
#include "parallel.hpp"

namespace chainvault {

namespace {

struct CipherCtxDeleter {
  void operator()(EVP_CIPHER_CTX* p) const { EVP_CIPHER_CTX_free(p); }
};
using CipherCtx = std::unique_ptr<EVP_CIPHER_CTX, CipherCtxDeleter>;

CipherCtx new_ctx() {
  CipherCtx ctx(EVP_CIPHER_CTX_new());
  if (!ctx) fail(Errc::kCryptoFailure, "cannot allocate cipher context");
  return ctx;
}

// OpenSSL wants int lengths; fragments beyond 2 GiB are not supported.
int checked_len(std::size_t n) {
  if (n > static_cast<std::size_t>(INT32_MAX)) {
    fail(Errc::kInvalidArgument, "fragment too large for AES-GCM call");
  }
  return static_cast<int>(n);
}

void gcm_seal(const DataKey& key, const Nonce& nonce, ByteView aad,
              ByteView plaintext, Bytes& ciphertext, Tag& tag) {
  auto ctx = new_ctx();
  ciphertext.resize(plaintext.size());
  int len = 0;
  bool ok =
      EVP_EncryptInit_ex(ctx.get(), EVP_aes_256_gcm(), nullptr, nullptr, nullptr) == 1 &&
      EVP_CIPHER_CTX_ctrl(ctx.get(), EVP_CTRL_GCM_SET_IVLEN, 12, nullptr) == 1 &&
      EVP_EncryptInit_ex(ctx.get(), nullptr, nullptr, key.bytes().data(),
                         nonce.data()) == 1;
  if (ok && !aad.empty()) {
    ok = EVP_EncryptUpdate(ctx.get(), nullptr, &len, aad.data(),
                           checked_len(aad.size())) == 1;
  }
  if (ok && !plaintext.empty()) {
    ok = EVP_EncryptUpdate(ctx.get(), ciphertext.data(), &len, plaintext.data(),
                           checked_len(plaintext.size())) == 1;
  }
  ok = ok && EVP_EncryptFinal_ex(ctx.get(), ciphertext.data() + plaintext.size(),
                                 &len) == 1 &&
       EVP_CIPHER_CTX_ctrl(ctx.get(), EVP_CTRL_GCM_GET_TAG, 16, tag.data()) == 1;
  if (!ok) fail(Errc::kCryptoFailure, "AES-256-GCM encryption failed");
}

bool gcm_open(const DataKey& key, const Nonce& nonce, ByteView aad,
              ByteView ciphertext, const Tag& tag, Bytes& plaintext) {
  auto ctx = new_ctx();
  plaintext.resize(ciphertext.size());
  Tag tag_copy = tag;
  int len = 0;
  bool ok =
      EVP_DecryptInit_ex(ctx.get(), EVP_aes_256_gcm(), nullptr, nullptr, nullptr) == 1 &&
      EVP_CIPHER_CTX_ctrl(ctx.get(), EVP_CTRL_GCM_SET_IVLEN, 12, nullptr) == 1 &&
      EVP_DecryptInit_ex(ctx.get(), nullptr, nullptr, key.bytes().data(),
                         nonce.data()) == 1;
  if (ok && !aad.empty()) {
    ok = EVP_DecryptUpdate(ctx.get(), nullptr, &len, aad.data(),
                           checked_len(aad.size())) == 1;
  }
  if (ok && !ciphertext.empty()) {
    ok = EVP_DecryptUpdate(ctx.get(), plaintext.data(), &len, ciphertext.data(),
                           checked_len(ciphertext.size())) == 1;
  }
  ok = ok &&
       EVP_CIPHER_CTX_ctrl(ctx.get(), EVP_CTRL_GCM_SET_TAG, 16, tag_copy.data()) == 1 &&
       EVP_DecryptFinal_ex(ctx.get(), plaintext.data() + ciphertext.size(), &len) == 1;
  if (!ok) {
    std::fill(plaintext.begin(), plaintext.end(), 0);
    plaintext.clear();
  }
  return ok;
}

void check_alignment(std::span<const Fragment> fragments, const Manifest& manifest) {
  if (fragments.size() != manifest.fragments.size()) {
    fail(Errc::kInvalidArgument, "fragment count does not match manifest");
  }
  for (std::size_t i = 0; i < fragments.size(); ++i) {
    if (fragments[i].index != i || fragments[i].size() != manifest.fragments[i].size) {
      fail(Errc::kInvalidArgument,
           "fragment " + std::to_string(i) + " does not match its manifest entry");
    }
  }
}

std::vector<Nonce> draw_nonces(std::size_t n, NonceSource& nonces, NonceLedger& ledger) {
  std::vector<Nonce> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    out[i] = nonces.next(i);
    ledger.claim(out[i]);
  }
  return out;
}

Bytes seal_one(const Fragment& frag, FragmentEntry& entry, std::string_view name,
               const DataKey& key, const Nonce& nonce) {
  EncryptedFragment efrag;
  efrag.index = frag.index;
  efrag.nonce = nonce;
  gcm_seal(key, nonce, fragment_aad(name, frag.index), frag.payload,
           efrag.ciphertext, efrag.tag);
  auto blob = efrag.serialize();
  entry.nonce = nonce;
  entry.cipher_digest = sha256(blob);
  return blob;
}

Fragment open_one(const Bytes& blob, const FragmentEntry& entry,
                  std::string_view name, const DataKey& key) {
  if (sha256(blob) != entry.cipher_digest) {
    throw FragmentError(Errc::kDigestMismatch, entry.index,
                        "fragment index " + std::to_string(entry.index) +
                            " cipher digest mismatch");
  }
  auto efrag = EncryptedFragment::parse(blob);
  if (efrag.index != entry.index || efrag.nonce != entry.nonce) {
    fail(Errc::kAuthFailure,
         "fragment index " + std::to_string(entry.index) + " header disagrees with manifest");
  }
  return decrypt_fragment(efrag, key, fragment_aad(name, entry.index));
}

void check_blob_count(std::span<const Bytes> blobs, const Manifest& manifest) {
  manifest.check();
  if (blobs.size() != manifest.fragments.size()) {
    fail(Errc::kInvalidArgument, "blob count does not match manifest");
  }
}

}  // namespace

DataKey::DataKey(const std::array<std::uint8_t, 32>& key) : key_(key) {
  auto digest = sha256(ByteView(key_));
  std::memcpy(id_.data(), digest.bytes.data(), id_.size());
}

DataKey DataKey::generate() {
  std::array<std::uint8_t, 32> key;
  secure_random(key);
  return DataKey(key);
}

DataKey DataKey::from_bytes(ByteView raw) {
  if (raw.size() != 32) fail(Errc::kInvalidArgument, "AES-256 key must be 32 bytes");
  std::array<std::uint8_t, 32> key;
  std::memcpy(key.data(), raw.data(), 32);
  return DataKey(key);
}

Bytes EncryptedFragment::serialize() const {
  ByteWriter w;
  w.raw(kFragmentMagic).u64(index).raw(nonce).raw(tag).raw(ciphertext);
  return std::move(w).take();
}

EncryptedFragment EncryptedFragment::parse(ByteView blob) {
  ByteReader r(blob, Errc::kMalformedBlob);
  if (to_string(r.raw(4)) != kFragmentMagic) {
    fail(Errc::kMalformedBlob, "bad fragment blob magic");
  }
  EncryptedFragment out;
  out.index = r.u64();
  auto nonce = r.raw(12);
  std::memcpy(out.nonce.data(), nonce.data(), 12);
  auto tag = r.raw(16);
  std::memcpy(out.tag.data(), tag.data(), 16);
  auto ct = r.raw(r.remaining());
  out.ciphertext.assign(ct.begin(), ct.end());
  return out;
}

Bytes fragment_aad(std::string_view dataset_name, std::uint64_t index) {
  ByteWriter w;
  w.u32(static_cast<std::uint32_t>(dataset_name.size())).raw(dataset_name).u64(index);
  return std::move(w).take();
}

Nonce RandomNonceSource::next(std::uint64_t) {
  Nonce n;
  secure_random(n);
  return n;
}

Nonce SeededNonceSource::next(std::uint64_t index) {
  ByteWriter w;
  w.raw("chainvault-nonce").u64(seed_).u64(index);
  auto d = sha256(w.bytes());
  Nonce n;
  std::memcpy(n.data(), d.bytes.data(), n.size());
  return n;
}

void NonceLedger::claim(const Nonce& nonce) {
  std::unique_lock lock(mu_);
  if (!used_.insert(nonce).second) {
    fail(Errc::kNonceReuse, "nonce " + to_hex(nonce) + " already used under this key");
  }
}

bool NonceLedger::contains(const Nonce& nonce) const {
  std::shared_lock lock(mu_);
  return used_.contains(nonce);
}

std::size_t NonceLedger::size() const {
  std::shared_lock lock(mu_);
  return used_.size();
}

EncryptedFragment encrypt_fragment(const Fragment& frag, const DataKey& key,
                                   ByteView aad, const Nonce& nonce,
                                   NonceLedger& ledger) {
  ledger.claim(nonce);
  EncryptedFragment out;
  out.index = frag.index;
  out.nonce = nonce;
  gcm_seal(key, nonce, aad, frag.payload, out.ciphertext, out.tag);
  return out;
}

EncryptedFragment encrypt_fragment(const Fragment& frag, const DataKey& key,
                                   ByteView aad, NonceSource& nonces,
                                   NonceLedger& ledger) {
  return encrypt_fragment(frag, key, aad, nonces.next(frag.index), ledger);
}

Fragment decrypt_fragment(const EncryptedFragment& efrag, const DataKey& key,
                          ByteView aad) {
  Fragment out;
  out.index = efrag.index;
  if (!gcm_open(key, efrag.nonce, aad, efrag.ciphertext, efrag.tag, out.payload)) {
    fail(Errc::kAuthFailure,
         "fragment index " + std::to_string(efrag.index) + " failed authentication");
  }
  return out;
}

std::vector<Bytes> seal_fragments(std::span<const Fragment> fragments,
                                  Manifest& manifest, std::string_view dataset_name,
                                  const DataKey& key, NonceSource& nonces,
                                  NonceLedger& ledger) {
  check_alignment(fragments, manifest);
  auto drawn = draw_nonces(fragments.size(), nonces, ledger);
  std::vector<Bytes> blobs(fragments.size());
  detail::parallel_for(static_cast<std::int64_t>(fragments.size()), [&](std::int64_t i) {
    blobs[i] = seal_one(fragments[i], manifest.fragments[i], dataset_name, key, drawn[i]);
  });
  return blobs;
}

std::vector<Fragment> open_fragments(std::span<const Bytes> blobs,
                                     const Manifest& manifest,
                                     std::string_view dataset_name, const DataKey& key) {
  check_blob_count(blobs, manifest);
  std::vector<Fragment> out(blobs.size());
  detail::parallel_for(static_cast<std::int64_t>(blobs.size()), [&](std::int64_t i) {
    out[i] = open_one(blobs[i], manifest.fragments[i], dataset_name, key);
  });
  return out;
}

namespace serial {

std::vector<Bytes> seal_fragments(std::span<const Fragment> fragments,
                                  Manifest& manifest, std::string_view dataset_name,
                                  const DataKey& key, NonceSource& nonces,
                                  NonceLedger& ledger) {
  check_alignment(fragments, manifest);
  auto drawn = draw_nonces(fragments.size(), nonces, ledger);
  std::vector<Bytes> blobs;
  blobs.reserve(fragments.size());
  for (std::size_t i = 0; i < fragments.size(); ++i) {
    blobs.push_back(seal_one(fragments[i], manifest.fragments[i], dataset_name, key, drawn[i]));
  }
  return blobs;
}

std::vector<Fragment> open_fragments(std::span<const Bytes> blobs,
                                     const Manifest& manifest,
                                     std::string_view dataset_name, const DataKey& key) {
  check_blob_count(blobs, manifest);
  std::vector<Fragment> out;
  out.reserve(blobs.size());
  for (std::size_t i = 0; i < blobs.size(); ++i) {
    out.push_back(open_one(blobs[i], manifest.fragments[i], dataset_name, key));
  }
  return out;
}

}  // namespace serial

}  // namespace chainvault
