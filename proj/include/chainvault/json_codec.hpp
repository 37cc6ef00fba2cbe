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

#include <json.hpp>

#include "chainvault/ledger.hpp"
#include "chainvault/registry.hpp"

namespace chainvault {

// JSON views of chain objects, hashes and signatures as lowercase hex. Used
// by the HTTP API and the CLI output.
nlohmann::json to_json(const DatasetRecord& record);
nlohmann::json to_json(const Block& block);
nlohmann::json to_json(const RecordLocation& location);
nlohmann::json to_json(const AccessGrant& grant);
nlohmann::json to_json(const GrantIssue& issue);

DatasetRecord record_from_json(const nlohmann::json& doc);
// Rebuilds a block and checks the stored payload_digest and block_hash agree
// with recomputation; throws kCorruptBlock otherwise.
Block block_from_json(const nlohmann::json& doc);
RecordLocation location_from_json(const nlohmann::json& doc);
GrantIssue grant_issue_from_json(const nlohmann::json& doc);

}  // namespace chainvault
