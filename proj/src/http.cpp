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

#include "chainvault/http.hpp"

#include <cstring>

#include <httplib.h>
#include <json.hpp>

#include "chainvault/json_codec.hpp"

namespace chainvault {

using nlohmann::json;

namespace {

constexpr std::size_t kMaxBody = std::size_t{1} << 30;
constexpr const char* kJson = "application/json";
constexpr const char* kOctets = "application/octet-stream";

RequestAuth auth_from_headers(const httplib::Request& req) {
  // Anything missing or malformed is an unauthenticated request.
  try {
    if (!req.has_header(kKeyHeader) || !req.has_header(kTimestampHeader) ||
        !req.has_header(kSignatureHeader)) {
      fail(Errc::kAccessDenied, "missing request signature headers");
    }
    RequestAuth auth;
    auth.key = public_key_from_hex(req.get_header_value(kKeyHeader));
    auth.timestamp = std::stoll(req.get_header_value(kTimestampHeader));
    auto sig = from_hex(req.get_header_value(kSignatureHeader));
    if (sig.size() != auth.signature.size()) fail(Errc::kAccessDenied, "bad signature length");
    std::memcpy(auth.signature.data(), sig.data(), sig.size());
    return auth;
  } catch (const Error& e) {
    fail(Errc::kAccessDenied, e.what());
  } catch (const std::exception&) {
    fail(Errc::kAccessDenied, "malformed request signature headers");
  }
}

std::uint64_t parse_index(const std::string& text) {
  try {
    std::size_t used = 0;
    auto v = std::stoull(text, &used);
    if (used != text.size()) throw std::invalid_argument(text);
    return v;
  } catch (const std::exception&) {
    fail(Errc::kInvalidArgument, "bad numeric path segment '" + text + "'");
  }
}

void send_error(httplib::Response& res, Errc code, const std::string& message) {
  res.status = http_status(code);
  json doc = {{"error", std::string(errc_name(code))}, {"message", message}};
  res.set_content(doc.dump(), kJson);
}

template <class Fn>
httplib::Server::Handler guarded(Fn fn) {
  return [fn](const httplib::Request& req, httplib::Response& res) {
    try {
      fn(req, res);
    } catch (const Error& e) {
      send_error(res, e.code(), e.what());
    } catch (const std::exception& e) {
      send_error(res, Errc::kStorageFailure, e.what());
    }
  };
}

ByteView body_view(const httplib::Request& req) { return as_bytes(req.body); }

httplib::Headers signed_headers(const RequestAuth& auth) {
  return {{kKeyHeader, public_key_hex(auth.key)},
          {kTimestampHeader, std::to_string(auth.timestamp)},
          {kSignatureHeader, to_hex(auth.signature)}};
}

}  // namespace

int http_status(Errc code) {
  switch (code) {
    case Errc::kAccessDenied:
    case Errc::kNotAdmin:
      return 401;
    case Errc::kNotFound:
    case Errc::kUnknownDataset:
      return 404;
    case Errc::kAlreadyExists:
    case Errc::kDuplicateName:
    case Errc::kClockRegression:
    case Errc::kChainConflict:
      return 409;
    case Errc::kInvalidArgument:
    case Errc::kMalformedManifest:
    case Errc::kMalformedBlob:
    case Errc::kCorruptBlock:
      return 400;
    default:
      return 500;
  }
}

struct HttpServer::Impl {
  explicit Impl(VaultService& s) : service(s) {}

  VaultService& service;
  httplib::Server server;
  std::thread thread;
};

HttpServer::HttpServer(VaultService& service) : impl_(std::make_unique<Impl>(service)) {
  auto& svr = impl_->server;
  auto& vault = impl_->service;
  svr.set_payload_max_length(kMaxBody);

  svr.Put(R"(/v1/fragments/([^/]+)/([^/]+))",
          guarded([&vault](const httplib::Request& req, httplib::Response& res) {
            auto digest = vault.put_fragment(req.matches[1].str(),
                                             parse_index(req.matches[2].str()),
                                             body_view(req), auth_from_headers(req));
            res.status = 201;
            res.set_content(json{{"digest", digest.hex()}}.dump(), kJson);
          }));
  svr.Get(R"(/v1/fragments/([^/]+)/([^/]+))",
          guarded([&vault](const httplib::Request& req, httplib::Response& res) {
            auto blob = vault.get_fragment(req.matches[1].str(),
                                           parse_index(req.matches[2].str()),
                                           auth_from_headers(req));
            res.set_content(to_string(blob), kOctets);
          }));
  svr.Put(R"(/v1/manifests/([^/]+))",
          guarded([&vault](const httplib::Request& req, httplib::Response& res) {
            vault.put_manifest(req.matches[1].str(), body_view(req), auth_from_headers(req));
            res.status = 201;
            res.set_content("{}", kJson);
          }));
  svr.Get(R"(/v1/manifests/([^/]+))",
          guarded([&vault](const httplib::Request& req, httplib::Response& res) {
            auto doc = vault.get_manifest(req.matches[1].str(), auth_from_headers(req));
            res.set_content(to_string(doc), kJson);
          }));
  svr.Post(R"(/v1/grants/([^/]+))",
           guarded([&vault](const httplib::Request& req, httplib::Response& res) {
             auto issue = vault.update_grant(req.matches[1].str(), body_view(req),
                                             auth_from_headers(req));
             res.set_content(to_json(issue).dump(), kJson);
           }));
  svr.Get("/v1/chain/blocks",
          guarded([&vault](const httplib::Request&, httplib::Response& res) {
            json out = json::array();
            for (const auto& b : vault.blocks()) out.push_back(to_json(b));
            res.set_content(out.dump(), kJson);
          }));
  svr.Get(R"(/v1/chain/blocks/([^/]+))",
          guarded([&vault](const httplib::Request& req, httplib::Response& res) {
            auto b = vault.block(parse_index(req.matches[1].str()));
            res.set_content(to_json(b).dump(), kJson);
          }));
  svr.Get("/v1/chain/head",
          guarded([&vault](const httplib::Request&, httplib::Response& res) {
            auto head = vault.head();
            res.set_content(head ? to_json(*head).dump() : "null", kJson);
          }));
  svr.Post("/v1/chain/blocks",
           guarded([&vault](const httplib::Request& req, httplib::Response& res) {
             auto id = vault.append_block(body_view(req), auth_from_headers(req));
             res.status = 201;
             res.set_content(json{{"block_id", id}}.dump(), kJson);
           }));
  svr.Get(R"(/v1/datasets/([^/]+))",
          guarded([&vault](const httplib::Request& req, httplib::Response& res) {
            res.set_content(to_json(vault.dataset(req.matches[1].str())).dump(), kJson);
          }));
}

HttpServer::~HttpServer() { stop(); }

int HttpServer::start(const std::string& host, int port) {
  auto& svr = impl_->server;
  int bound = port == 0 ? svr.bind_to_any_port(host) : (svr.bind_to_port(host, port) ? port : -1);
  if (bound < 0) {
    fail(Errc::kTransportFailure, "cannot bind " + host + ":" + std::to_string(port));
  }
  impl_->thread = std::thread([&svr] { svr.listen_after_bind(); });
  svr.wait_until_ready();
  return bound;
}

void HttpServer::listen(const std::string& host, int port) {
  if (!impl_->server.listen(host, port)) {
    fail(Errc::kTransportFailure, "cannot listen on " + host + ":" + std::to_string(port));
  }
}

void HttpServer::stop() {
  impl_->server.stop();
  if (impl_->thread.joinable()) impl_->thread.join();
}

// ---- client ----

struct HttpVault::Impl {
  Impl(const std::string& url, Clock c) : client(url), clock(std::move(c)) {
    client.set_connection_timeout(5);
    client.set_read_timeout(60);
    client.set_write_timeout(60);
  }

  httplib::Response check(const httplib::Result& result) {
    if (!result) {
      fail(Errc::kTransportFailure, "HTTP request failed: " + httplib::to_string(result.error()));
    }
    const auto& res = *result;
    if (res.status >= 200 && res.status < 300) return res;
    json doc = json::parse(res.body, nullptr, false);
    if (doc.is_object() && doc.contains("error") && doc["error"].is_string()) {
      auto code = errc_from_name(doc["error"].get<std::string>());
      auto msg = doc.value("message", std::string());
      if (code) fail(*code, msg);
    }
    fail(Errc::kTransportFailure, "HTTP " + std::to_string(res.status) + ": " + res.body);
  }

  json get_json(const std::string& path) {
    auto res = check(client.Get(path));
    return json::parse(res.body);
  }

  httplib::Client client;
  Clock clock;
};

HttpVault::HttpVault(const std::string& base_url, Clock clock)
    : impl_(std::make_unique<Impl>(base_url, std::move(clock))) {}

HttpVault::~HttpVault() = default;

Digest HttpVault::put_fragment(std::string_view dataset, std::uint64_t index, ByteView blob,
                               const SigningKey& admin) {
  auto path = paths::fragment(dataset, index);
  auto auth = sign_request(admin, "PUT", path, blob, impl_->clock());
  auto res = impl_->check(impl_->client.Put(
      path, signed_headers(auth), reinterpret_cast<const char*>(blob.data()), blob.size(),
      kOctets));
  return Digest::from_hex(json::parse(res.body).at("digest").get<std::string>());
}

Bytes HttpVault::get_fragment(std::string_view dataset, std::uint64_t index,
                              const SigningKey& user) {
  auto path = paths::fragment(dataset, index);
  auto auth = sign_request(user, "GET", path, {}, impl_->clock());
  auto res = impl_->check(impl_->client.Get(path, signed_headers(auth)));
  auto view = as_bytes(res.body);
  return Bytes(view.begin(), view.end());
}

void HttpVault::put_manifest(std::string_view dataset, std::string_view manifest_json,
                             const SigningKey& admin) {
  auto path = paths::manifest(dataset);
  auto auth = sign_request(admin, "PUT", path, as_bytes(manifest_json), impl_->clock());
  impl_->check(impl_->client.Put(path, signed_headers(auth), manifest_json.data(),
                                 manifest_json.size(), kJson));
}

std::string HttpVault::get_manifest(std::string_view dataset, const SigningKey& user) {
  auto path = paths::manifest(dataset);
  auto auth = sign_request(user, "GET", path, {}, impl_->clock());
  return impl_->check(impl_->client.Get(path, signed_headers(auth))).body;
}

std::uint64_t HttpVault::append_block(const Block& block, const SigningKey& admin) {
  auto body = block.serialize();
  auto path = std::string(paths::kBlocks);
  auto auth = sign_request(admin, "POST", path, body, impl_->clock());
  auto res = impl_->check(impl_->client.Post(
      path, signed_headers(auth), reinterpret_cast<const char*>(body.data()), body.size(),
      kOctets));
  return json::parse(res.body).at("block_id").get<std::uint64_t>();
}

GrantIssue HttpVault::update_grant(std::string_view dataset, const PublicKey& user,
                                   bool revoke, const SigningKey& admin) {
  auto path = paths::grants(dataset);
  auto body = grant_body(user, revoke);
  auto auth = sign_request(admin, "POST", path, as_bytes(body), impl_->clock());
  auto res = impl_->check(
      impl_->client.Post(path, signed_headers(auth), body.data(), body.size(), kJson));
  return grant_issue_from_json(json::parse(res.body));
}

std::vector<Block> HttpVault::blocks() {
  std::vector<Block> out;
  for (const auto& b : impl_->get_json(std::string(paths::kBlocks))) {
    out.push_back(block_from_json(b));
  }
  return out;
}

Block HttpVault::block(std::uint64_t id) {
  return block_from_json(impl_->get_json(std::string(paths::kBlocks) + "/" + std::to_string(id)));
}

std::optional<Block> HttpVault::head() {
  auto doc = impl_->get_json("/v1/chain/head");
  if (doc.is_null()) return std::nullopt;
  return block_from_json(doc);
}

RecordLocation HttpVault::dataset(std::string_view name) {
  return location_from_json(impl_->get_json("/v1/datasets/" + std::string(name)));
}

}  // namespace chainvault
