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

#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <filesystem>
#include <fstream>
#include <random>

#include "chainvault/fragmenter.hpp"
#include "chainvault/hash.hpp"
#include "chainvault/mlbench.hpp"
#include "support/test_support.hpp"

using namespace chainvault;
using chainvault::testing::flip_bit;
using chainvault::testing::random_bytes;

namespace {

std::vector<std::uint64_t> sizes_of(const FragmentSet& set) {
  std::vector<std::uint64_t> out;
  for (const auto& f : set.fragments) out.push_back(f.size());
  return out;
}

}  // namespace

TEST_CASE("ten bytes in fours make three fragments") {
  Bytes data(10);
  std::iota(data.begin(), data.end(), 0);
  auto set = fragment(data, 4);
  CHECK(sizes_of(set) == std::vector<std::uint64_t>{4, 4, 2});
  CHECK(set.manifest.total_size == 10);
  CHECK(set.manifest.fragment_size == 4);
  CHECK(set.manifest.dataset_digest == sha256(data));
  for (std::size_t i = 0; i < 3; ++i) {
    CHECK(set.fragments[i].index == i);
    CHECK(set.manifest.fragments[i].plain_digest == sha256(set.fragments[i].payload));
  }
}

TEST_CASE("empty input yields zero fragments") {
  auto set = fragment({}, 4);
  CHECK(set.fragments.empty());
  CHECK(set.manifest.total_size == 0);
  CHECK(set.manifest.dataset_digest == sha256(ByteView{}));
  CHECK(defragment(set.fragments, set.manifest).empty());
}

TEST_CASE("zero fragment size is rejected") {
  Bytes data{1, 2, 3};
  CHECK_THROWS_AS(fragment(data, 0), Error);
  try {
    fragment(data, 0);
  } catch (const Error& e) {
    CHECK(e.code() == Errc::kInvalidArgument);
  }
}

TEST_CASE("synthetic medical CSV fragments into ceil(size / 16 KiB) pieces") {
  chainvault::testing::TempDir dir;
  auto path = dir / "medcost.csv";
  auto csv = generate_medical_csv(kMedicalRows, 1338);
  std::ofstream(path, std::ios::binary) << csv;
  // Oracle: stat the file on disk, independent of the fragmenter.
  auto file_size = std::filesystem::file_size(path);
  auto expected = (file_size + 16383) / 16384;
  CHECK(file_size > 40000);
  auto set = fragment(as_bytes(csv), 16384);
  CHECK(set.fragments.size() == expected);
  CHECK(defragment(set.fragments, set.manifest) == Bytes(csv.begin(), csv.end()));
}

TEST_CASE("reassembly is driven by indices, not input order") {
  std::mt19937_64 rng(7);
  auto data = random_bytes(rng, 1000);
  auto set = fragment(data, 64);
  std::reverse(set.fragments.begin(), set.fragments.end());
  CHECK(defragment(set.fragments, set.manifest) == data);
  std::shuffle(set.fragments.begin(), set.fragments.end(), rng);
  CHECK(defragment(set.fragments, set.manifest) == data);
}

TEST_CASE("every single-bit flip of a 64-byte input is caught at its fragment") {
  std::mt19937_64 rng(64);
  auto data = random_bytes(rng, 64);
  auto clean = fragment(data, 16);
  for (std::size_t bit = 0; bit < 64 * 8; ++bit) {
    auto set = clean;
    auto target = bit / (16 * 8);
    flip_bit(set.fragments[target].payload, bit % (16 * 8));
    try {
      defragment(set.fragments, set.manifest);
      FAIL("bit " << bit << " went undetected");
    } catch (const FragmentError& e) {
      CHECK(e.code() == Errc::kDigestMismatch);
      CHECK(e.index() == target);
    }
  }
}

TEST_CASE("missing, duplicate and resized fragments are reported") {
  std::mt19937_64 rng(3);
  auto data = random_bytes(rng, 100);
  auto set = fragment(data, 30);

  SUBCASE("missing") {
    auto frags = set.fragments;
    frags.erase(frags.begin() + 2);
    try {
      defragment(frags, set.manifest);
      FAIL("expected MissingFragment");
    } catch (const FragmentError& e) {
      CHECK(e.code() == Errc::kMissingFragment);
      CHECK(e.index() == 2);
    }
  }
  SUBCASE("duplicate") {
    auto frags = set.fragments;
    frags.push_back(frags[1]);
    CHECK_THROWS_AS(defragment(frags, set.manifest), Error);
  }
  SUBCASE("size") {
    auto frags = set.fragments;
    frags[1].payload.pop_back();
    try {
      defragment(frags, set.manifest);
      FAIL("expected SizeMismatch");
    } catch (const FragmentError& e) {
      CHECK(e.code() == Errc::kSizeMismatch);
      CHECK(e.index() == 1);
    }
  }
}

TEST_CASE("roundtrip property over random sizes and fragment sizes") {
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 30; ++trial) {
    auto len = static_cast<std::size_t>(rng() % (1 << 20));
    if (trial == 0) len = 0;
    auto data = random_bytes(rng, len);
    for (std::uint64_t fs : {std::uint64_t{7}, std::uint64_t{4096},
                             std::uint64_t{std::max<std::size_t>(len, 1)},
                             std::uint64_t{len + 1}}) {
      auto set = fragment(data, fs);
      REQUIRE(defragment(set.fragments, set.manifest) == data);
      CHECK(set.manifest.dataset_digest == sha256(data));
    }
  }
  // fragment_size 1 on a smaller input keeps the fragment count sane.
  auto small = random_bytes(rng, 3000);
  auto set = fragment(small, 1);
  CHECK(set.fragments.size() == 3000);
  CHECK(defragment(set.fragments, set.manifest) == small);
}

TEST_CASE("manifest canonical JSON is sorted, compact and lowercase hex") {
  Bytes data{'a', 'b', 'c', 'd', 'e'};
  auto m = fragment(data, 4, "abc.txt").manifest;
  m.fragments[0].nonce[0] = 0xAB;
  auto text = m.canonical_json();
  CHECK(text.find(' ') == std::string::npos);
  CHECK(text.find('\n') == std::string::npos);
  CHECK(text.rfind("{\"dataset_digest\":\"", 0) == 0);
  CHECK(text.find("\"fragments\":[{\"cipher_digest\":") != std::string::npos);
  CHECK(text.find("ab0000") != std::string::npos);
  CHECK(text.find_first_of("ABCDEF") == std::string::npos);
  // Layout pinned independently: digest of "abcde" and key order.
  CHECK(text.find("\"format_version\":1,\"fragment_size\":4,\"fragments\":") !=
        std::string::npos);
  CHECK(text.find("\"original_name\":\"abc.txt\",\"total_size\":5}") != std::string::npos);
  CHECK(m.manifest_hash() == sha256(text));
  CHECK(Manifest::from_json(text) == m);
}

TEST_CASE("malformed manifests are rejected") {
  Bytes data(10, 1);
  auto m = fragment(data, 4).manifest;
  auto expect_bad = [](const std::string& text) {
    try {
      Manifest::from_json(text);
      FAIL("accepted " << text);
    } catch (const Error& e) {
      CHECK(e.code() == Errc::kMalformedManifest);
    }
  };
  expect_bad("not json");
  expect_bad("[]");
  auto good = m.canonical_json();
  auto swap = [&](std::string from, std::string to) {
    auto s = good;
    s.replace(s.find(from), from.size(), to);
    return s;
  };
  expect_bad(swap("\"total_size\":10", "\"total_size\":11"));
  expect_bad(swap("\"format_version\":1", "\"format_version\":2"));
  expect_bad(swap("\"index\":1", "\"index\":2"));
  expect_bad(swap(m.dataset_digest.hex(), m.dataset_digest.hex().substr(2)));
}

TEST_CASE("serial reference agrees with the parallel kernel") {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 10; ++trial) {
    auto data = random_bytes(rng, rng() % 200000);
    auto fs = 1 + rng() % 9000;
    auto par = fragment(data, fs, "x");
    auto ser = serial::fragment(data, fs, "x");
    CHECK(par.manifest == ser.manifest);
    CHECK(serial::defragment(par.fragments, par.manifest) == data);
    CHECK(defragment(ser.fragments, ser.manifest) == data);
  }
}
