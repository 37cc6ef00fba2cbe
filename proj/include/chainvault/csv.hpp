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

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace chainvault {

// RFC 4180 subset: comma separator, optional double-quoted fields with ""
// escapes, LF or CRLF line ends. The first record is the header.
struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
  // 1-based source line of each data row.
  std::vector<std::size_t> lines;
  bool trailing_newline = true;
};

// Throws kUnparsableCsv (no header, bad quoting) or kRaggedRows (names the
// offending line).
CsvTable parse_csv(std::string_view text);
std::string format_csv(const CsvTable& table);

// Full-string decimal parse; nullopt for anything else.
std::optional<double> parse_number(std::string_view cell);
// Shortest round-trip representation.
std::string format_number(double value);

}  // namespace chainvault
