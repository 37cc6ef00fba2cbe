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

#include "chainvault/fragmenter.hpp"

#include <algorithm>
#include <cstring>

#include <json.hpp>

#include "chainvault/hash.hpp"
#include "parallel.hpp"

namespace chainvault {

using nlohmann::json;

namespace {

std::uint64_t fragment_count(std::uint64_t total, std::uint64_t fragment_size) {
  return total == 0 ? 0 : (total - 1) / fragment_size + 1;
}

[[noreturn]] void bad_manifest(const std::string& what) {
  fail(Errc::kMalformedManifest, "manifest: " + what);
}

const json& field(const json& obj, const char* key) {
  auto it = obj.find(key);
  if (it == obj.end()) bad_manifest(std::string("missing field '") + key + "'");
  return *it;
}

std::uint64_t uint_field(const json& obj, const char* key) {
  const auto& v = field(obj, key);
  if (!v.is_number_unsigned()) bad_manifest(std::string("'") + key + "' must be unsigned");
  return v.get<std::uint64_t>();
}

Bytes hex_field(const json& obj, const char* key, std::size_t expected) {
  const auto& v = field(obj, key);
  if (!v.is_string()) bad_manifest(std::string("'") + key + "' must be a hex string");
  const auto& text = v.get_ref<const std::string&>();
  if (text.size() != expected * 2 ||
      std::any_of(text.begin(), text.end(), [](char c) {
        return !((c >= '0' && c <= '9') || (c >= 'a' && c <= 'f'));
      })) {
    bad_manifest(std::string("'") + key + "' must be lowercase hex of " +
                 std::to_string(expected) + " bytes");
  }
  return from_hex(text);
}

FragmentSet make_skeleton(ByteView data, std::uint64_t fragment_size,
                          std::string original_name) {
  if (fragment_size == 0) fail(Errc::kInvalidArgument, "fragment_size must be >= 1");
  FragmentSet out;
  auto n = fragment_count(data.size(), fragment_size);
  out.fragments.resize(n);
  out.manifest.original_name = std::move(original_name);
  out.manifest.total_size = data.size();
  out.manifest.fragment_size = fragment_size;
  out.manifest.fragments.resize(n);
  return out;
}

void fill_fragment(ByteView data, std::uint64_t fragment_size, std::uint64_t i,
                   FragmentSet& out) {
  auto begin = i * fragment_size;
  auto len = std::min<std::uint64_t>(fragment_size, data.size() - begin);
  auto& frag = out.fragments[i];
  frag.index = i;
  frag.payload.assign(data.begin() + begin, data.begin() + begin + len);
  auto& entry = out.manifest.fragments[i];
  entry.index = i;
  entry.size = len;
  entry.plain_digest = sha256(frag.payload);
}

// Checks that the supplied fragments cover the manifest exactly once and
// returns them ordered by index.
std::vector<const Fragment*> order_fragments(std::span<const Fragment> fragments,
                                             const Manifest& manifest) {
  manifest.check();
  std::vector<const Fragment*> slots(manifest.fragments.size(), nullptr);
  for (const auto& frag : fragments) {
    if (frag.index >= slots.size()) {
      fail(Errc::kInvalidArgument,
           "fragment index " + std::to_string(frag.index) + " not in manifest");
    }
    if (slots[frag.index] != nullptr) {
      fail(Errc::kInvalidArgument,
           "fragment index " + std::to_string(frag.index) + " supplied twice");
    }
    slots[frag.index] = &frag;
  }
  for (std::size_t i = 0; i < slots.size(); ++i) {
    if (slots[i] == nullptr) {
      throw FragmentError(Errc::kMissingFragment, i,
                          "fragment index " + std::to_string(i) + " is missing");
    }
  }
  return slots;
}

void check_fragment(const Fragment& frag, const FragmentEntry& entry) {
  if (frag.size() != entry.size) {
    throw FragmentError(Errc::kSizeMismatch, entry.index,
                        "fragment index " + std::to_string(entry.index) +
                            " has size " + std::to_string(frag.size()) +
                            ", manifest says " + std::to_string(entry.size));
  }
  if (sha256(frag.payload) != entry.plain_digest) {
    throw FragmentError(Errc::kDigestMismatch, entry.index,
                        "fragment index " + std::to_string(entry.index) +
                            " plain digest mismatch");
  }
}

void check_whole(const Bytes& out, const Manifest& manifest) {
  if (sha256(out) != manifest.dataset_digest) {
    fail(Errc::kDigestMismatch, "reassembled dataset digest mismatch");
  }
}

}  // namespace

std::string Manifest::canonical_json() const {
  json frags = json::array();
  for (const auto& e : fragments) {
    frags.push_back({{"cipher_digest", e.cipher_digest.hex()},
                     {"index", e.index},
                     {"nonce", to_hex(e.nonce)},
                     {"plain_digest", e.plain_digest.hex()},
                     {"size", e.size}});
  }
  json doc = {{"dataset_digest", dataset_digest.hex()},
              {"format_version", format_version},
              {"fragment_size", fragment_size},
              {"fragments", std::move(frags)},
              {"original_name", original_name},
              {"total_size", total_size}};
  // nlohmann's default object type is an ordered std::map, so keys come out
  // sorted and dump() without indent emits no whitespace.
  return doc.dump();
}

Manifest Manifest::from_json(std::string_view text) {
  json doc = json::parse(text.begin(), text.end(), nullptr, false);
  if (doc.is_discarded() || !doc.is_object()) bad_manifest("not a JSON object");
  Manifest m;
  const auto& version = field(doc, "format_version");
  if (!version.is_number_integer()) bad_manifest("'format_version' must be an integer");
  m.format_version = version.get<int>();
  const auto& name = field(doc, "original_name");
  if (!name.is_string()) bad_manifest("'original_name' must be a string");
  m.original_name = name.get<std::string>();
  m.total_size = uint_field(doc, "total_size");
  m.fragment_size = uint_field(doc, "fragment_size");
  m.dataset_digest = Digest::from_bytes(hex_field(doc, "dataset_digest", 32));
  const auto& frags = field(doc, "fragments");
  if (!frags.is_array()) bad_manifest("'fragments' must be an array");
  for (const auto& f : frags) {
    if (!f.is_object()) bad_manifest("fragment entry must be an object");
    FragmentEntry e;
    e.index = uint_field(f, "index");
    e.size = uint_field(f, "size");
    e.plain_digest = Digest::from_bytes(hex_field(f, "plain_digest", 32));
    e.cipher_digest = Digest::from_bytes(hex_field(f, "cipher_digest", 32));
    auto nonce = hex_field(f, "nonce", 12);
    std::memcpy(e.nonce.data(), nonce.data(), e.nonce.size());
    m.fragments.push_back(e);
  }
  m.check();
  return m;
}

Digest Manifest::manifest_hash() const { return sha256(canonical_json()); }

void Manifest::check() const {
  if (format_version != kManifestFormatVersion) {
    bad_manifest("unsupported format_version " + std::to_string(format_version));
  }
  if (fragment_size == 0) bad_manifest("fragment_size must be >= 1");
  auto n = fragment_count(total_size, fragment_size);
  if (fragments.size() != n) {
    bad_manifest("expected " + std::to_string(n) + " fragments, found " +
                 std::to_string(fragments.size()));
  }
  std::uint64_t sum = 0;
  for (std::size_t i = 0; i < fragments.size(); ++i) {
    const auto& e = fragments[i];
    if (e.index != i) bad_manifest("fragment indices must be 0..n-1 in order");
    bool last = i + 1 == fragments.size();
    if (last ? (e.size == 0 || e.size > fragment_size) : e.size != fragment_size) {
      bad_manifest("fragment " + std::to_string(i) + " has invalid size");
    }
    sum += e.size;
  }
  if (sum != total_size) bad_manifest("fragment sizes do not sum to total_size");
}

FragmentSet fragment(ByteView data, std::uint64_t fragment_size,
                     std::string original_name) {
  auto out = make_skeleton(data, fragment_size, std::move(original_name));
  auto n = static_cast<std::int64_t>(out.fragments.size());
  detail::parallel_for(n, [&](std::int64_t i) {
    fill_fragment(data, fragment_size, static_cast<std::uint64_t>(i), out);
  });
  out.manifest.dataset_digest = sha256(data);
  return out;
}

Bytes defragment(std::span<const Fragment> fragments, const Manifest& manifest) {
  auto slots = order_fragments(fragments, manifest);
  auto n = static_cast<std::int64_t>(slots.size());
  detail::parallel_for(n, [&](std::int64_t i) {
    check_fragment(*slots[i], manifest.fragments[i]);
  });
  Bytes out(manifest.total_size);
  detail::parallel_for(n, [&](std::int64_t i) {
    const auto& payload = slots[i]->payload;
    std::memcpy(out.data() + i * manifest.fragment_size, payload.data(),
                payload.size());
  });
  check_whole(out, manifest);
  return out;
}

namespace serial {

FragmentSet fragment(ByteView data, std::uint64_t fragment_size,
                     std::string original_name) {
  auto out = make_skeleton(data, fragment_size, std::move(original_name));
  for (std::uint64_t i = 0; i < out.fragments.size(); ++i) {
    fill_fragment(data, fragment_size, i, out);
  }
  out.manifest.dataset_digest = sha256(data);
  return out;
}

Bytes defragment(std::span<const Fragment> fragments, const Manifest& manifest) {
  auto slots = order_fragments(fragments, manifest);
  Bytes out;
  out.reserve(manifest.total_size);
  for (std::size_t i = 0; i < slots.size(); ++i) {
    check_fragment(*slots[i], manifest.fragments[i]);
    out.insert(out.end(), slots[i]->payload.begin(), slots[i]->payload.end());
  }
  check_whole(out, manifest);
  return out;
}

}  // namespace serial

}  // namespace chainvault
