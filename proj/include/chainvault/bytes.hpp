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

#include "chainvault/error.hpp"

namespace chainvault {

using Bytes = std::vector<std::uint8_t>;
using ByteView = std::span<const std::uint8_t>;

// 32-byte SHA-256 value. Kept as a distinct type so digests never get mixed
// up with arbitrary byte buffers in signatures.
struct Digest {
  std::array<std::uint8_t, 32> bytes{};

  static Digest zero() { return {}; }
  bool is_zero() const;
  std::string hex() const;
  static Digest from_hex(std::string_view hex);
  static Digest from_bytes(ByteView raw);

  ByteView view() const { return {bytes.data(), bytes.size()}; }
  auto operator<=>(const Digest&) const = default;
};

std::string to_hex(ByteView data);
// Accepts upper or lower case; throws kInvalidArgument on odd length or
// non-hex characters.
Bytes from_hex(std::string_view hex);

inline ByteView as_bytes(std::string_view s) {
  return {reinterpret_cast<const std::uint8_t*>(s.data()), s.size()};
}
inline std::string to_string(ByteView b) {
  return {reinterpret_cast<const char*>(b.data()), b.size()};
}

// Big-endian append-only encoder for the canonical binary layouts.
class ByteWriter {
 public:
  ByteWriter& u32(std::uint32_t v);
  ByteWriter& u64(std::uint64_t v);
  ByteWriter& f64(double v);
  ByteWriter& raw(ByteView data);
  ByteWriter& raw(std::string_view data) { return raw(as_bytes(data)); }
  ByteWriter& digest(const Digest& d) { return raw(d.view()); }

  const Bytes& bytes() const& { return buf_; }
  Bytes take() && { return std::move(buf_); }

 private:
  Bytes buf_;
};

// Bounds-checked decoder; a read past the end throws with the code given at
// construction so callers get a domain-specific failure.
class ByteReader {
 public:
  ByteReader(ByteView data, Errc on_truncation);

  std::uint32_t u32();
  std::uint64_t u64();
  double f64();
  ByteView raw(std::size_t n);
  Digest digest();
  std::size_t remaining() const { return data_.size() - pos_; }
  bool done() const { return pos_ == data_.size(); }

 private:
  void need(std::size_t n) const;

  ByteView data_;
  std::size_t pos_ = 0;
  Errc on_truncation_;
};

}  // namespace chainvault
