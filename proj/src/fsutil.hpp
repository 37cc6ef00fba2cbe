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

#include <filesystem>

#include "chainvault/bytes.hpp"

namespace chainvault::detail {

Bytes read_file(const std::filesystem::path& path);

// Writes to a sibling temp file, fsyncs it, then moves it into place and
// fsyncs the directory. With `exclusive`, an existing target is never
// replaced and kAlreadyExists is thrown instead.
void write_file_durable(const std::filesystem::path& path, ByteView data,
                        bool exclusive = false);

}  // namespace chainvault::detail
