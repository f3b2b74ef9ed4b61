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

#ifndef PTMX_TEXT_H_
#define PTMX_TEXT_H_

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace ptmx {

// Byte-level helpers. Bytes >= 0x80 (UTF-8 continuation/lead bytes) count as
// word characters so an identifier glued to a non-ASCII letter is never split.
bool IsWordByte(unsigned char c);
bool IsAsciiAlnum(unsigned char c);

std::string AsciiLower(std::string_view s);

// Byte offset of the first case-insensitive (ASCII) match of `needle` at or
// after `from`, or npos.
std::size_t FindIgnoreCase(std::string_view haystack, std::string_view needle,
                           std::size_t from = 0);

bool ContainsIgnoreCase(std::string_view haystack, std::string_view needle);

// A maximal run of word bytes.
struct Token {
  std::size_t begin;  // byte offset
  std::size_t end;    // byte offset, exclusive
};

std::vector<Token> WordTokens(std::string_view text);

// True if `word` occurs in `text` delimited by non-word bytes on both sides.
bool ContainsWholeWord(std::string_view text, std::string_view word);

// Lowercase ASCII-alphanumeric unigrams; everything else separates tokens.
std::vector<std::string> LowerUnigrams(std::string_view text);

// Whitespace-delimited tokens.
std::vector<std::string_view> SplitWhitespace(std::string_view text);

std::vector<std::string_view> SplitOn(std::string_view s, char sep);

bool IsDigits(std::string_view s);

// Orders decimal-digit strings numerically (shorter first), other strings
// lexicographically after that rule.
bool NumericStringLess(std::string_view a, std::string_view b);

// Shortest round-trip decimal form of a double.
std::string FormatDouble(double value);

// Fixed-point rendering with `digits` decimals.
std::string FormatFixed(double value, int digits);

}  // namespace ptmx

#endif  // PTMX_TEXT_H_
