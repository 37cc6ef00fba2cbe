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

#include "chainvault/error.hpp"

namespace chainvault {

std::string_view errc_name(Errc code) {
  switch (code) {
    case Errc::kInvalidArgument: return "InvalidArgument";
    case Errc::kMissingFragment: return "MissingFragment";
    case Errc::kDigestMismatch: return "DigestMismatch";
    case Errc::kSizeMismatch: return "SizeMismatch";
    case Errc::kMalformedManifest: return "MalformedManifest";
    case Errc::kAuthFailure: return "AuthFailure";
    case Errc::kNonceReuse: return "NonceReuse";
    case Errc::kRandomnessUnavailable: return "RandomnessUnavailable";
    case Errc::kMalformedBlob: return "MalformedBlob";
    case Errc::kCryptoFailure: return "CryptoFailure";
    case Errc::kNotAdmin: return "NotAdmin";
    case Errc::kDuplicateName: return "DuplicateName";
    case Errc::kClockRegression: return "ClockRegression";
    case Errc::kNotFound: return "NotFound";
    case Errc::kUnknownDataset: return "UnknownDataset";
    case Errc::kCorruptBlock: return "CorruptBlock";
    case Errc::kChainConflict: return "ChainConflict";
    case Errc::kAccessDenied: return "AccessDenied";
    case Errc::kAlreadyExists: return "AlreadyExists";
    case Errc::kStorageFailure: return "StorageFailure";
    case Errc::kCorruptObject: return "CorruptObject";
    case Errc::kTransportFailure: return "TransportFailure";
    case Errc::kNoAlgorithmRegistered: return "NoAlgorithmRegistered";
    case Errc::kUnparsableCsv: return "UnparsableCsv";
    case Errc::kMissingTarget: return "MissingTarget";
    case Errc::kRaggedRows: return "RaggedRows";
    case Errc::kNonNumericTarget: return "NonNumericTarget";
    case Errc::kInsufficientRows: return "InsufficientRows";
    case Errc::kRankDeficient: return "RankDeficient";
    case Errc::kNonFiniteCoefficient: return "NonFiniteCoefficient";
    case Errc::kMalformedModel: return "MalformedModel";
  }
  return "Unknown";
}

std::optional<Errc> errc_from_name(std::string_view name) {
  for (int i = 0; i <= static_cast<int>(Errc::kMalformedModel); ++i) {
    auto code = static_cast<Errc>(i);
    if (errc_name(code) == name) return code;
  }
  return std::nullopt;
}

}  // namespace chainvault
