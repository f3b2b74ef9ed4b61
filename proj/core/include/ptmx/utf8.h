// Copyright 2026 The ptmx Authors.
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

#ifndef PTMX_UTF8_H_
#define PTMX_UTF8_H_

#include <cstddef>
#include <string_view>
#include <vector>

namespace ptmx::utf8 {

// Byte offset of every Unicode scalar value in `text`, plus a final entry equal
// to text.size(). Throws ValidationError on malformed UTF-8.
std::vector<std::size_t> ScalarOffsets(std::string_view text);

// Number of scalar values. Throws on malformed UTF-8.
std::size_t Length(std::string_view text);

bool IsValid(std::string_view text);

// Converts a byte offset that falls on a scalar boundary to a scalar index.
// `offsets` is the result of ScalarOffsets for the same text.
std::size_t ScalarIndexOf(const std::vector<std::size_t> &offsets,
                          std::size_t byte_offset);

}  // namespace ptmx::utf8

#endif  // PTMX_UTF8_H_
