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

#include <csignal>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <string>

#include <sys/stat.h>

#include <CLI11.hpp>
#include <json.hpp>

#include "chainvault/cryptobox.hpp"
#include "chainvault/csv.hpp"
#include "chainvault/hash.hpp"
#include "chainvault/http.hpp"
#include "chainvault/json_codec.hpp"
#include "chainvault/mlbench.hpp"
#include "chainvault/node.hpp"
#include "chainvault/verifier.hpp"
#include "chainvault/workflow.hpp"

namespace cv = chainvault;
namespace fs = std::filesystem;
using nlohmann::json;

namespace {

enum Exit { kOk = 0, kMismatch = 1, kUsage = 2, kAccess = 3, kOther = 4 };

int exit_code_for(cv::Errc code) {
  switch (code) {
    case cv::Errc::kAccessDenied:
    case cv::Errc::kNotAdmin:
      return kAccess;
    case cv::Errc::kDigestMismatch:
    case cv::Errc::kAuthFailure:
    case cv::Errc::kCorruptObject:
    case cv::Errc::kCorruptBlock:
    case cv::Errc::kMissingFragment:
    case cv::Errc::kSizeMismatch:
      return kMismatch;
    case cv::Errc::kInvalidArgument:
      return kUsage;
    default:
      return kOther;
  }
}

void print_error(std::string_view kind, std::string_view message) {
  std::cerr << json{{"error", kind}, {"message", message}}.dump() << std::endl;
}

void emit(const json& doc) { std::cout << doc.dump(2) << std::endl; }

cv::Bytes read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) cv::fail(cv::Errc::kNotFound, "cannot open " + path.string());
  return cv::Bytes((std::istreambuf_iterator<char>(in)), {});
}

void write_file(const fs::path& path, cv::ByteView data, bool private_file = false) {
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) cv::fail(cv::Errc::kStorageFailure, "cannot write " + path.string());
    out.write(reinterpret_cast<const char*>(data.data()),
              static_cast<std::streamsize>(data.size()));
    if (!out) cv::fail(cv::Errc::kStorageFailure, "short write to " + path.string());
  }
  if (private_file) ::chmod(tmp.c_str(), 0600);
  fs::rename(tmp, path);
}

std::string trim(std::string s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.pop_back();
  return s;
}

// Private keys are only ever read from files.
std::array<std::uint8_t, 32> read_secret(const std::string& path, std::string_view what) {
  if (path.empty()) cv::fail(cv::Errc::kInvalidArgument, std::string(what) + " file is required");
  auto raw = read_file(path);
  if (raw.size() != 32) {
    cv::fail(cv::Errc::kInvalidArgument, path + " is not a 32-byte key file");
  }
  std::array<std::uint8_t, 32> out;
  std::copy(raw.begin(), raw.end(), out.begin());
  return out;
}

cv::SigningKey signing_key(const std::string& path, std::string_view what) {
  return cv::SigningKey(read_secret(path, what));
}

cv::DataKey data_key(const std::string& path) {
  auto raw = read_secret(path, "data key");
  return cv::DataKey::from_bytes(raw);
}

// Hex string, a .pub sidecar, or a private key file whose sidecar exists.
cv::PublicKey public_key_arg(const std::string& arg) {
  if (arg.size() == 64 && arg.find_first_not_of("0123456789abcdefABCDEF") == std::string::npos) {
    return cv::public_key_from_hex(arg);
  }
  fs::path path(arg);
  if (fs::exists(path) && fs::file_size(path) == 32 && fs::exists(arg + ".pub")) {
    path = arg + ".pub";
  }
  return cv::public_key_from_hex(trim(cv::to_string(read_file(path))));
}

struct Globals {
  std::string root;
  std::string server;
  std::string admin_key;
  std::optional<std::int64_t> now;

  cv::Clock clock() const {
    if (now) return [t = *now] { return t; };
    return cv::system_clock();
  }
  std::uint64_t timestamp() const { return static_cast<std::uint64_t>(clock()()); }
  cv::SigningKey admin() const { return signing_key(admin_key, "admin key"); }
  fs::path root_path() const {
    if (root.empty()) cv::fail(cv::Errc::kInvalidArgument, "--root or CHAINVAULT_ROOT is required");
    return root;
  }
};

// Either an in-process vault over --root or an HTTP client for --server.
class Backend {
 public:
  explicit Backend(const Globals& g) {
    if (!g.server.empty()) {
      http_ = std::make_unique<cv::HttpVault>(g.server, g.clock());
      return;
    }
    auto root = g.root_path();
    node_.emplace(root, cv::VaultNode::read_admin(root), g.clock(), [](std::string_view) {});
    local_ = std::make_unique<cv::LocalVault>(node_->service, g.clock());
  }
  cv::VaultApi& vault() { return http_ ? static_cast<cv::VaultApi&>(*http_) : *local_; }

 private:
  std::optional<cv::VaultNode> node_;
  std::unique_ptr<cv::LocalVault> local_;
  std::unique_ptr<cv::HttpVault> http_;
};

int run_serve(const Globals& g, const std::string& listen) {
  auto colon = listen.rfind(':');
  if (colon == std::string::npos) cv::fail(cv::Errc::kInvalidArgument, "--listen wants host:port");
  auto host = listen.substr(0, colon);
  int port = 0;
  try {
    port = std::stoi(listen.substr(colon + 1));
  } catch (const std::exception&) {
    cv::fail(cv::Errc::kInvalidArgument, "bad port in --listen");
  }

  // Block the stop signals before any thread exists so sigwait sees them.
  sigset_t stop_signals;
  sigemptyset(&stop_signals);
  sigaddset(&stop_signals, SIGINT);
  sigaddset(&stop_signals, SIGTERM);
  pthread_sigmask(SIG_BLOCK, &stop_signals, nullptr);

  cv::VaultNode node(g.root_path(), cv::VaultNode::read_admin(g.root_path()), g.clock());
  cv::HttpServer server(node.service);
  int bound = server.start(host, port);
  emit({{"listening", host + ":" + std::to_string(bound)}, {"root", g.root}});
  int sig = 0;
  sigwait(&stop_signals, &sig);
  server.stop();
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"chainvault: encrypted dataset vault with a signed hash chain"};
  app.require_subcommand(1);
  app.fallthrough();

  Globals g;
  std::int64_t now_value = 0;
  app.add_option("--root", g.root, "vault root directory")->envname("CHAINVAULT_ROOT");
  app.add_option("--server", g.server, "talk to a running server, e.g. http://127.0.0.1:8080");
  app.add_option("--admin-key", g.admin_key, "admin private key file")
      ->envname("CHAINVAULT_ADMIN_KEY");
  auto* now_opt = app.add_option("--now", now_value, "fixed unix time for timestamps");

  // init
  auto* init = app.add_subcommand("init", "create a vault root");
  std::string admin_pub;
  init->add_option("--admin-pubkey", admin_pub, "admin public key (hex or .pub file)");

  // keygen
  auto* keygen = app.add_subcommand("keygen", "generate a key file");
  std::string role, key_out;
  bool force = false;
  keygen->add_option("--role", role)->required()->check(CLI::IsMember({"admin", "user", "data"}));
  keygen->add_option("--out", key_out, "key file to write")->required();
  keygen->add_flag("--force", force, "overwrite an existing key file");

  // ingest
  auto* ingest = app.add_subcommand("ingest", "fragment, encrypt and upload a file");
  std::string ingest_file, name, key_file, manifest_out;
  std::uint64_t fragment_size = cv::kDefaultFragmentSize;
  std::optional<std::uint64_t> nonce_seed;
  ingest->add_option("file", ingest_file)->required()->check(CLI::ExistingFile);
  ingest->add_option("--name", name)->required();
  ingest->add_option("--fragment-size", fragment_size);
  ingest->add_option("--key-file", key_file, "data key file")->required();
  ingest->add_option("--manifest-out", manifest_out, "where to write the manifest");
  ingest->add_option("--nonce-seed", nonce_seed, "derive nonces from a seed (reproducible runs)");

  // register
  auto* reg = app.add_subcommand("register", "anchor a dataset on the chain");
  std::string manifest_file, algo_file, trained_on;
  reg->add_option("--name", name)->required();
  reg->add_option("--manifest", manifest_file)->required()->check(CLI::ExistingFile);
  reg->add_option("--algo-file", algo_file, "model or algorithm artifact")
      ->check(CLI::ExistingFile);
  reg->add_option("--trained-on", trained_on,
                  "take the dataset hash from this on-chain record");

  // grant / revoke
  std::string user_pub;
  auto* grant = app.add_subcommand("grant", "allow a user to fetch a dataset");
  auto* revoke = app.add_subcommand("revoke", "withdraw a grant");
  for (auto* cmd : {grant, revoke}) {
    cmd->add_option("--name", name)->required();
    cmd->add_option("--user-pubkey", user_pub, "hex or .pub file")->required();
  }

  // fetch
  auto* fetch = app.add_subcommand("fetch", "download, decrypt and reassemble a dataset");
  std::string user_key, out_file;
  fetch->add_option("--name", name)->required();
  fetch->add_option("--user-key", user_key, "user private key file")->required();
  fetch->add_option("--key-file", key_file, "data key file")->required();
  fetch->add_option("--out", out_file)->required();

  // verify
  auto* verify = app.add_subcommand("verify", "compare a file with its on-chain hash");
  std::string verify_file;
  verify->add_option("file", verify_file)->required()->check(CLI::ExistingFile);
  verify->add_option("--name", name)->required();

  auto* vexp = app.add_subcommand("verify-experiment", "check a dataset and model pair");
  std::string dataset_file, model_file;
  vexp->add_option("--name", name)->required();
  vexp->add_option("--dataset", dataset_file)->required()->check(CLI::ExistingFile);
  vexp->add_option("--model", model_file)->required()->check(CLI::ExistingFile);

  // chain
  auto* chain = app.add_subcommand("chain", "inspect the chain");
  chain->require_subcommand(1);
  auto* chain_log = chain->add_subcommand("log", "print every block");
  auto* chain_validate = chain->add_subcommand("validate", "check the whole chain");
  chain_validate->add_option("--admin-pubkey", admin_pub, "expected admin key (server mode)");

  // ml
  auto* ml = app.add_subcommand("ml", "regression benchmark");
  ml->require_subcommand(1);
  auto* ml_train = ml->add_subcommand("train", "fit OLS and write the model artifact");
  std::string csv_file, target = "charges", model_out;
  std::vector<std::string> categorical;
  ml_train->add_option("csv", csv_file)->required()->check(CLI::ExistingFile);
  ml_train->add_option("--target", target);
  ml_train->add_option("--out-model", model_out)->required();
  ml_train->add_option("--categorical", categorical, "force a column to be categorical");
  auto* ml_gen = ml->add_subcommand("generate", "write the synthetic medical-cost CSV");
  std::size_t rows = cv::kMedicalRows;
  std::uint64_t gen_seed = 1;
  ml_gen->add_option("--rows", rows);
  ml_gen->add_option("--seed", gen_seed);
  ml_gen->add_option("--out", out_file)->required();

  // tamper
  auto* tamper = app.add_subcommand("tamper", "corrupt a file for testing (in place)");
  std::string tamper_file, mode;
  std::uint64_t seed = 0;
  tamper->add_option("file", tamper_file)->required()->check(CLI::ExistingFile);
  tamper->add_option("--mode", mode)
      ->required()
      ->check(CLI::IsMember({"bitflip", "row-poison", "row-append", "truncate"}));
  tamper->add_option("--seed", seed)->required();
  tamper->add_option("--out", out_file, "write here instead of in place");

  // serve
  auto* serve = app.add_subcommand("serve", "run the HTTP vault service");
  std::string listen = "127.0.0.1:8080";
  serve->add_option("--listen", listen);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    print_error("Usage", e.what());
    return kUsage;
  }
  if (*now_opt) g.now = now_value;

  try {
    if (*init) {
      auto admin = admin_pub.empty() ? g.admin().public_key() : public_key_arg(admin_pub);
      cv::VaultNode::init(g.root_path(), admin);
      emit({{"root", g.root}, {"admin_public_key", cv::public_key_hex(admin)}});
      return kOk;
    }

    if (*keygen) {
      if (fs::exists(key_out) && !force) {
        cv::fail(cv::Errc::kAlreadyExists, key_out + " exists; pass --force to overwrite");
      }
      json doc = {{"role", role}, {"path", key_out}};
      std::string pub;
      if (role == "data") {
        auto key = cv::DataKey::generate();
        write_file(key_out, key.bytes(), true);
        pub = cv::to_hex(key.key_id());
        doc["key_id"] = pub;
      } else {
        auto key = cv::SigningKey::generate();
        write_file(key_out, key.seed(), true);
        pub = cv::public_key_hex(key.public_key());
        doc["public_key"] = pub;
      }
      write_file(key_out + ".pub", cv::as_bytes(pub + "\n"));
      emit(doc);
      return kOk;
    }

    if (*ingest) {
      Backend backend(g);
      auto data = read_file(ingest_file);
      auto key = data_key(key_file);
      std::unique_ptr<cv::NonceSource> nonces;
      if (nonce_seed) {
        nonces = std::make_unique<cv::SeededNonceSource>(*nonce_seed);
      } else {
        nonces = std::make_unique<cv::RandomNonceSource>();
      }
      auto result = cv::ingest_dataset(backend.vault(), name, data, fragment_size, key,
                                       g.admin(), *nonces,
                                       fs::path(ingest_file).filename().string());
      if (manifest_out.empty()) manifest_out = ingest_file + ".manifest.json";
      write_file(manifest_out, cv::as_bytes(result.manifest.canonical_json()));
      emit({{"name", name},
            {"fragments", result.manifest.fragments.size()},
            {"total_size", result.manifest.total_size},
            {"dataset_hash", result.manifest.dataset_digest.hex()},
            {"manifest_hash", result.manifest_hash.hex()},
            {"manifest", manifest_out}});
      return kOk;
    }

    if (*reg) {
      Backend backend(g);
      auto manifest = cv::Manifest::from_json(cv::to_string(read_file(manifest_file)));
      cv::DatasetRecord record{name, manifest.dataset_digest, cv::Digest::zero(),
                               manifest.manifest_hash()};
      if (!algo_file.empty()) record.algorithm_hash = cv::sha256(read_file(algo_file));
      if (!trained_on.empty()) {
        record.dataset_hash = backend.vault().dataset(trained_on).record.dataset_hash;
      }
      auto id = cv::register_record(backend.vault(), record, g.admin(), g.timestamp());
      auto block = backend.vault().block(id);
      auto doc = cv::to_json(cv::RecordLocation{id, record});
      doc["block_hash"] = block.block_hash.hex();
      emit(doc);
      return kOk;
    }

    if (*grant || *revoke) {
      Backend backend(g);
      auto issue = backend.vault().update_grant(name, public_key_arg(user_pub), bool(*revoke),
                                                g.admin());
      emit(cv::to_json(issue));
      return kOk;
    }

    if (*fetch) {
      Backend backend(g);
      auto data = cv::fetch_dataset(backend.vault(), name, signing_key(user_key, "user key"),
                                    data_key(key_file));
      write_file(out_file, data);
      emit({{"name", name},
            {"out", out_file},
            {"bytes", data.size()},
            {"sha256", cv::sha256(data).hex()}});
      return kOk;
    }

    if (*verify) {
      Backend backend(g);
      cv::VaultChainReader chain_reader(backend.vault());
      auto verdict = cv::verify_file(read_file(verify_file), name, chain_reader);
      emit(verdict.to_json());
      return verdict.verified() ? kOk : kMismatch;
    }

    if (*vexp) {
      Backend backend(g);
      cv::VaultChainReader chain_reader(backend.vault());
      auto verdict = cv::verify_experiment(read_file(dataset_file), read_file(model_file), name,
                                           chain_reader);
      emit(verdict.to_json());
      return verdict.clean() ? kOk : kMismatch;
    }

    if (*chain_log) {
      Backend backend(g);
      json out = json::array();
      for (const auto& b : backend.vault().blocks()) out.push_back(cv::to_json(b));
      emit(out);
      return kOk;
    }

    if (*chain_validate) {
      cv::Validation v;
      std::size_t count = 0;
      if (g.server.empty()) {
        auto root = g.root_path();
        cv::ChainStore store(root / "chain");
        v = store.validate(cv::VaultNode::read_admin(root));
        count = store.committed_count();
      } else {
        if (admin_pub.empty()) cv::fail(cv::Errc::kInvalidArgument, "--admin-pubkey is required");
        cv::HttpVault remote(g.server, g.clock());
        cv::ChainState state(public_key_arg(admin_pub));
        state.blocks = remote.blocks();
        count = state.blocks.size();
        v = cv::validate_chain(state);
      }
      json doc = {{"valid", v.valid}, {"blocks", count}};
      if (!v.valid) {
        doc["first_bad_height"] = v.first_bad_height;
        doc["reason"] = v.reason;
      }
      emit(doc);
      return v.valid ? kOk : kMismatch;
    }

    if (*ml_train) {
      auto start = std::chrono::steady_clock::now();
      cv::SchemaConfig schema;
      schema.categorical = categorical;
      auto dataset = cv::ingest_csv(read_file(csv_file), target, schema);
      auto model = cv::train_ols(dataset);
      auto artifact = model.serialize();
      write_file(model_out, artifact);
      cv::TrainReport report;
      report.train_mse = model.train_mse;
      report.n_rows = dataset.n_rows;
      report.n_features = dataset.n_cols;
      report.model_hash = cv::sha256(artifact);
      report.wall_time_ms = std::chrono::duration<double, std::milli>(
                                std::chrono::steady_clock::now() - start)
                                .count();
      auto doc = report.to_json();
      doc["out_model"] = model_out;
      doc["features"] = dataset.column_names;
      emit(doc);
      return kOk;
    }

    if (*ml_gen) {
      auto csv = cv::generate_medical_csv(rows, gen_seed);
      write_file(out_file, cv::as_bytes(csv));
      emit({{"out", out_file}, {"rows", rows}, {"sha256", cv::sha256(csv).hex()}});
      return kOk;
    }

    if (*tamper) {
      auto before = read_file(tamper_file);
      auto after = cv::tamper(before, cv::parse_tamper_mode(mode), seed);
      auto dest = out_file.empty() ? tamper_file : out_file;
      write_file(dest, after);
      emit({{"file", dest},
            {"mode", mode},
            {"seed", seed},
            {"sha256_before", cv::sha256(before).hex()},
            {"sha256_after", cv::sha256(after).hex()}});
      return kOk;
    }

    if (*serve) return run_serve(g, listen);
  } catch (const cv::Error& e) {
    print_error(cv::errc_name(e.code()), e.what());
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    print_error("Internal", e.what());
    return kOther;
  }
  return kUsage;
}
