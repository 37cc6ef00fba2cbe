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

#include <random>

#include "chainvault/error.hpp"
#include "chainvault/hash.hpp"
#include "chainvault/registry.hpp"
#include "support/test_support.hpp"

using namespace chainvault;
using chainvault::testing::key_from_byte;
using chainvault::testing::sequential_key;
using chainvault::testing::TempDir;

namespace {

constexpr std::uint64_t kT0 = 1700000000;

Digest h(std::string_view s) { return sha256(s); }

struct Fixture {
  SigningKey admin = sequential_key();
  Ledger ledger{admin.public_key()};
  GrantTable grants;
  std::vector<std::string> log;
  Registry registry{ledger, grants, [this](std::string_view l) { log.emplace_back(l); }};
};

template <typename Fn>
Errc code_of(Fn&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an error");
  return Errc::kInvalidArgument;
}

}  // namespace

TEST_CASE("registration returns sequential block ids and logs one line per record") {
  Fixture f;
  CHECK(f.registry.register_dataset("medcost-v1", h("dataset"), Digest::zero(), h("m"),
                                    f.admin, kT0) == 0);
  CHECK(f.registry.register_dataset("medcost-v1@ols", h("dataset"), h("model"), h("mm"),
                                    f.admin, kT0 + 5) == 1);
  REQUIRE(f.log.size() == 2);
  CHECK(f.log[0] == "BLOCK height=0 name=medcost-v1 dataset_hash=" + h("dataset").hex() +
                        " algo_hash=" + Digest::zero().hex() + " ts=1700000000");
  CHECK(f.log[1].rfind("BLOCK height=1 name=medcost-v1@ols ", 0) == 0);

  auto loc = f.registry.query_hash("medcost-v1@ols");
  CHECK(loc.block_id == 1);
  CHECK(loc.record.algorithm_hash == h("model"));
  CHECK(code_of([&] {
          f.registry.register_dataset("medcost-v1", h("x"), h("y"), h("z"), f.admin, kT0 + 9);
        }) == Errc::kDuplicateName);
  CHECK(f.ledger.size() == 2);
  CHECK(f.log.size() == 2);
}

TEST_CASE("unknown datasets and non-admin callers") {
  Fixture f;
  auto user = key_from_byte(9);
  CHECK(code_of([&] { f.registry.query_hash("nope"); }) == Errc::kUnknownDataset);
  CHECK(code_of([&] {
          f.registry.register_dataset("d", h("d"), h("a"), h("m"), user, kT0);
        }) == Errc::kNotAdmin);
  f.registry.register_dataset("d", h("d"), h("a"), h("m"), f.admin, kT0);
  CHECK(code_of([&] { f.registry.grant_access("d", user.public_key(), user, kT0); }) ==
        Errc::kNotAdmin);
  CHECK(code_of([&] { f.registry.grant_access("zz", user.public_key(), f.admin, kT0); }) ==
        Errc::kUnknownDataset);
  CHECK(code_of([&] { f.registry.revoke_access("d", user.public_key(), f.admin); }) ==
        Errc::kNotFound);
}

TEST_CASE("grant then revoke") {
  Fixture f;
  auto user = key_from_byte(9);
  auto other = key_from_byte(10);
  f.registry.register_dataset("d", h("d"), h("a"), h("m"), f.admin, kT0);
  f.registry.register_dataset("e", h("e"), h("a"), h("m"), f.admin, kT0);
  CHECK_FALSE(f.registry.is_authorized("d", user.public_key()));

  auto issue = f.registry.grant_access("d", user.public_key(), f.admin, kT0 + 3);
  CHECK(issue.block_id == 0);
  CHECK(issue.dataset_hash == h("d"));
  CHECK(issue.grant.granted_at == kT0 + 3);
  CHECK(f.registry.is_authorized("d", user.public_key()));
  CHECK_FALSE(f.registry.is_authorized("e", user.public_key()));
  CHECK_FALSE(f.registry.is_authorized("d", other.public_key()));

  auto revoked = f.registry.revoke_access("d", user.public_key(), f.admin);
  CHECK(revoked.revoked);
  CHECK_FALSE(f.registry.is_authorized("d", user.public_key()));
  // Re-granting restores access.
  f.registry.grant_access("d", user.public_key(), f.admin, kT0 + 4);
  CHECK(f.registry.is_authorized("d", user.public_key()));
}

TEST_CASE("grant table persists across reloads") {
  TempDir dir;
  auto user = key_from_byte(3);
  {
    GrantTable t(dir / "grants.json");
    t.grant("a", user.public_key(), 11);
    t.grant("b", user.public_key(), 12);
    t.revoke("b", user.public_key());
  }
  GrantTable t(dir / "grants.json");
  CHECK(t.is_authorized("a", user.public_key()));
  CHECK_FALSE(t.is_authorized("b", user.public_key()));
  REQUIRE(t.list().size() == 2);
  CHECK(t.list()[0].granted_at == 11);
}

TEST_CASE("replaying the same registrations reproduces the chain") {
  std::mt19937_64 rng(17);
  std::vector<std::pair<std::string, std::uint64_t>> ops;
  std::uint64_t t = kT0;
  for (int i = 0; i < 30; ++i) {
    t += rng() % 5;
    ops.emplace_back("ds" + std::to_string(rng() % 20), t);
  }
  auto run = [&] {
    Fixture f;
    std::vector<std::string> outcomes;
    for (const auto& [name, ts] : ops) {
      try {
        auto id = f.registry.register_dataset(name, h(name), Digest::zero(), h(name + "m"),
                                              f.admin, ts);
        outcomes.push_back("ok " + std::to_string(id));
      } catch (const Error& e) {
        outcomes.push_back(std::string(errc_name(e.code())));
      }
    }
    return std::make_pair(outcomes, f.ledger.blocks());
  };
  auto [o1, b1] = run();
  auto [o2, b2] = run();
  CHECK(o1 == o2);
  CHECK(b1 == b2);
  CHECK(std::count(o1.begin(), o1.end(), "DuplicateName") > 0);
}
