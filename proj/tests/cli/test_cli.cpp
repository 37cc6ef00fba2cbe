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

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <fstream>
#include <map>

#include <json.hpp>

#include "chainvault/hash.hpp"
#include "chainvault/mlbench.hpp"
#include "chainvault/node.hpp"
#include "chainvault/workflow.hpp"
#include "support/test_support.hpp"

#ifndef CHAINVAULT_CLI_PATH
#error "CHAINVAULT_CLI_PATH must point at the chainvault binary"
#endif

using namespace chainvault;
using chainvault::testing::TempDir;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

constexpr std::int64_t kNow = 1700000000;

struct Run {
  int code = -1;
  std::string out;
  json doc;
};

Run cli(const fs::path& cwd, const std::string& args) {
  std::string cmd = "cd '" + cwd.string() + "' && CHAINVAULT_ROOT=root CHAINVAULT_ADMIN_KEY=admin.key " +
                    CHAINVAULT_CLI_PATH + " --now " + std::to_string(kNow) + " " + args +
                    " 2>stderr.txt";
  Run run;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::array<char, 4096> buf;
  std::size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) run.out.append(buf.data(), n);
  int status = pclose(pipe);
  run.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  run.doc = json::parse(run.out, nullptr, false);
  return run;
}

void write_bytes(const fs::path& p, ByteView data) {
  std::ofstream out(p, std::ios::binary);
  out.write(reinterpret_cast<const char*>(data.data()), static_cast<std::streamsize>(data.size()));
}

Bytes read_bytes(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return Bytes((std::istreambuf_iterator<char>(in)), {});
}

std::map<std::string, Bytes> snapshot(const fs::path& root) {
  std::map<std::string, Bytes> files;
  for (const auto& entry : fs::recursive_directory_iterator(root)) {
    if (entry.is_regular_file()) {
      files[fs::relative(entry.path(), root).string()] = read_bytes(entry.path());
    }
  }
  return files;
}

std::array<std::uint8_t, 32> filled(std::uint8_t v) {
  std::array<std::uint8_t, 32> a;
  a.fill(v);
  return a;
}

}  // namespace

TEST_CASE("CLI flow matches the library flow byte for byte") {
  TempDir dir;
  auto cwd = dir.path();
  auto admin = chainvault::testing::sequential_key();
  auto user = SigningKey(filled(5));
  auto key = DataKey::from_bytes(filled(0x42));
  write_bytes(cwd / "admin.key", admin.seed());
  write_bytes(cwd / "user.key", user.seed());
  write_bytes(cwd / "data.key", key.bytes());
  write_bytes(cwd / "user.key.pub", as_bytes(public_key_hex(user.public_key()) + "\n"));

  REQUIRE(cli(cwd, "init").code == 0);
  REQUIRE(cli(cwd, "ml generate --rows 300 --seed 3 --out med.csv").code == 0);
  auto ingest = cli(cwd, "ingest med.csv --name medcost-v1 --fragment-size 4096 "
                         "--key-file data.key --nonce-seed 9");
  REQUIRE(ingest.code == 0);
  auto reg = cli(cwd, "register --name medcost-v1 --manifest med.csv.manifest.json");
  REQUIRE(reg.code == 0);
  auto train = cli(cwd, "ml train med.csv --target charges --out-model model.cvm");
  REQUIRE(train.code == 0);
  REQUIRE(cli(cwd, "ingest model.cvm --name medcost-v1@ols --key-file data.key --nonce-seed 10")
              .code == 0);
  auto reg2 = cli(cwd, "register --name medcost-v1@ols --manifest model.cvm.manifest.json "
                       "--algo-file model.cvm --trained-on medcost-v1");
  REQUIRE(reg2.code == 0);
  REQUIRE(cli(cwd, "grant --name medcost-v1 --user-pubkey user.key.pub").code == 0);
  auto fetched = cli(cwd, "fetch --name medcost-v1 --user-key user.key --key-file data.key "
                          "--out fetched.csv");
  REQUIRE(fetched.code == 0);

  // The same operations through the library.
  TempDir lib_dir;
  auto lib_root = lib_dir.path() / "root";
  VaultNode::init(lib_root, admin.public_key());
  Clock clock = [] { return kNow; };
  VaultNode node(lib_root, admin.public_key(), clock, [](std::string_view) {});
  LocalVault vault(node.service, clock);
  auto csv = generate_medical_csv(300, 3);
  Bytes data(csv.begin(), csv.end());
  SeededNonceSource n9(9), n10(10);
  auto lib_ingest = ingest_dataset(vault, "medcost-v1", data, 4096, key, admin, n9, "med.csv");
  auto id0 = register_record(vault, {"medcost-v1", sha256(data), Digest::zero(),
                                     lib_ingest.manifest_hash},
                             admin, kNow);
  auto model = train_ols(ingest_csv(data, "charges")).serialize();
  auto model_ingest = ingest_dataset(vault, "medcost-v1@ols", model, kDefaultFragmentSize, key,
                                     admin, n10, "model.cvm");
  auto id1 = register_record(vault, {"medcost-v1@ols", sha256(data), sha256(model),
                                     model_ingest.manifest_hash},
                             admin, kNow);
  vault.update_grant("medcost-v1", user.public_key(), false, admin);

  CHECK(read_bytes(cwd / "med.csv") == data);
  CHECK(read_bytes(cwd / "model.cvm") == model);
  CHECK(read_bytes(cwd / "fetched.csv") == data);
  CHECK(ingest.doc["manifest_hash"] == lib_ingest.manifest_hash.hex());
  CHECK(reg.doc["block_id"] == id0);
  CHECK(reg2.doc["block_id"] == id1);
  CHECK(reg2.doc["block_hash"] == node.ledger.block(1).block_hash.hex());
  CHECK(train.doc["model_hash"] == sha256(model).hex());
  CHECK(fetched.doc["sha256"] == sha256(data).hex());

  auto cli_files = snapshot(cwd / "root");
  auto lib_files = snapshot(lib_root);
  CHECK(cli_files.size() == lib_files.size());
  for (const auto& [path, bytes] : lib_files) {
    INFO(path);
    REQUIRE(cli_files.count(path) == 1);
    CHECK(cli_files[path] == bytes);
  }
}

TEST_CASE("CLI exit codes: verified, mismatch after tamper, no grant, usage") {
  TempDir dir;
  auto cwd = dir.path();
  REQUIRE(cli(cwd, "keygen --role admin --out admin.key").code == 0);
  REQUIRE(cli(cwd, "keygen --role user --out user.key").code == 0);
  auto data_key = cli(cwd, "keygen --role data --out data.key");
  REQUIRE(data_key.code == 0);
  CHECK(data_key.doc["key_id"].get<std::string>().size() == 16);
  CHECK(fs::file_size(cwd / "data.key") == 32);
  CHECK((fs::status(cwd / "data.key").permissions() & fs::perms::group_read) == fs::perms::none);
  CHECK(cli(cwd, "keygen --role data --out data.key").code != 0);

  REQUIRE(cli(cwd, "init").code == 0);
  REQUIRE(cli(cwd, "ml generate --rows 100 --seed 1 --out data.csv").code == 0);
  REQUIRE(cli(cwd, "ingest data.csv --name medcost-v1 --key-file data.key").code == 0);
  REQUIRE(cli(cwd, "register --name medcost-v1 --manifest data.csv.manifest.json").code == 0);

  auto clean = cli(cwd, "verify data.csv --name medcost-v1");
  CHECK(clean.code == 0);
  CHECK(clean.doc["verdict"] == "Verified");

  auto tampered = cli(cwd, "tamper data.csv --mode bitflip --seed 7");
  CHECK(tampered.code == 0);
  CHECK(tampered.doc["sha256_before"] != tampered.doc["sha256_after"]);
  auto bad = cli(cwd, "verify data.csv --name medcost-v1");
  CHECK(bad.code == 1);
  CHECK(bad.doc["verdict"] == "Mismatch");

  auto denied = cli(cwd, "fetch --name medcost-v1 --user-key user.key --key-file data.key "
                         "--out out.csv");
  CHECK(denied.code == 3);
  auto err = json::parse(read_bytes(cwd / "stderr.txt"));
  CHECK(err["error"] == "AccessDenied");
  CHECK_FALSE(fs::exists(cwd / "out.csv"));

  CHECK(cli(cwd, "verify").code == 2);
  CHECK(cli(cwd, "tamper data.csv --mode shred --seed 1").code == 2);
  CHECK(cli(cwd, "verify data.csv --name ghost").code == 4);
  CHECK(cli(cwd, "verify-experiment --name medcost-v1 --dataset data.csv --model data.csv").code ==
        4);

  auto log = cli(cwd, "chain log");
  CHECK(log.code == 0);
  CHECK(log.doc.size() == 1);
  auto valid = cli(cwd, "chain validate");
  CHECK(valid.code == 0);
  CHECK(valid.doc["valid"] == true);
}
