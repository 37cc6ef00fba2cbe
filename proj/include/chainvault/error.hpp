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

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace chainvault {

// Every failure surfaced by the library carries one of these codes. The CLI
// and the HTTP layer map codes to exit statuses and response codes.
enum class Errc {
  kInvalidArgument,
  // fragmenter
  kMissingFragment,
  kDigestMismatch,
  kSizeMismatch,
  kMalformedManifest,
  // cryptobox
  kAuthFailure,
  kNonceReuse,
  kRandomnessUnavailable,
  kMalformedBlob,
  kCryptoFailure,
  // ledger / registry
  kNotAdmin,
  kDuplicateName,
  kClockRegression,
  kNotFound,
  kUnknownDataset,
  kCorruptBlock,
  kChainConflict,
  // vaultstore
  kAccessDenied,
  kAlreadyExists,
  kStorageFailure,
  kCorruptObject,
  kTransportFailure,
  // verifier
  kNoAlgorithmRegistered,
  kUnparsableCsv,
  // mlbench
  kMissingTarget,
  kRaggedRows,
  kNonNumericTarget,
  kInsufficientRows,
  kRankDeficient,
  kNonFiniteCoefficient,
  kMalformedModel,
};

std::string_view errc_name(Errc code);
std::optional<Errc> errc_from_name(std::string_view name);

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  Errc code() const { return code_; }

 private:
  Errc code_;
};

// Errors tied to one fragment (MissingFragment, DigestMismatch, SizeMismatch)
// also report which index failed.
class FragmentError : public Error {
 public:
  FragmentError(Errc code, std::uint64_t index, const std::string& message)
      : Error(code, message), index_(index) {}

  std::uint64_t index() const { return index_; }

 private:
  std::uint64_t index_;
};

[[noreturn]] inline void fail(Errc code, const std::string& message) {
  throw Error(code, message);
}

}  // namespace chainvault
