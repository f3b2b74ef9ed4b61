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

#include "ptmx/utf8.h"

#include <algorithm>
#include <cstdint>

#include "ptmx/errors.h"

namespace ptmx::utf8 {
namespace {

// Length of the sequence starting at `i`, or 0 if malformed.
std::size_t SequenceLength(std::string_view text, std::size_t i) {
  auto byte = [&](std::size_t k) {
    return static_cast<unsigned char>(text[k]);
  };
  unsigned char c = byte(i);
  std::size_t n;
  std::uint32_t cp;
  if (c < 0x80) return 1;
  if ((c & 0xE0) == 0xC0) {
    n = 2;
    cp = c & 0x1F;
  } else if ((c & 0xF0) == 0xE0) {
    n = 3;
    cp = c & 0x0F;
  } else if ((c & 0xF8) == 0xF0) {
    n = 4;
    cp = c & 0x07;
  } else {
    return 0;
  }
  if (i + n > text.size()) return 0;
  for (std::size_t k = 1; k < n; ++k) {
    if ((byte(i + k) & 0xC0) != 0x80) return 0;
    cp = (cp << 6) | (byte(i + k) & 0x3F);
  }
  // Reject overlong forms, surrogates and values past U+10FFFF.
  static constexpr std::uint32_t kMin[5] = {0, 0, 0x80, 0x800, 0x10000};
  if (cp < kMin[n] || cp > 0x10FFFF || (cp >= 0xD800 && cp <= 0xDFFF)) {
    return 0;
  }
  return n;
}

}  // namespace

std::vector<std::size_t> ScalarOffsets(std::string_view text) {
  std::vector<std::size_t> offsets;
  offsets.reserve(text.size() + 1);
  std::size_t i = 0;
  while (i < text.size()) {
    std::size_t n = SequenceLength(text, i);
    if (n == 0) {
      throw ValidationError("malformed UTF-8 at byte " + std::to_string(i));
    }
    offsets.push_back(i);
    i += n;
  }
  offsets.push_back(text.size());
  return offsets;
}

std::size_t Length(std::string_view text) {
  return ScalarOffsets(text).size() - 1;
}

bool IsValid(std::string_view text) {
  std::size_t i = 0;
  while (i < text.size()) {
    std::size_t n = SequenceLength(text, i);
    if (n == 0) return false;
    i += n;
  }
  return true;
}

std::size_t ScalarIndexOf(const std::vector<std::size_t> &offsets,
                          std::size_t byte_offset) {
  auto it = std::lower_bound(offsets.begin(), offsets.end(), byte_offset);
  if (it == offsets.end() || *it != byte_offset) {
    throw ValidationError("byte offset " + std::to_string(byte_offset) +
                          " is not on a scalar boundary");
  }
  return static_cast<std::size_t>(it - offsets.begin());
}

}  // namespace ptmx::utf8
