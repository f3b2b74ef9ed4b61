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

#ifndef PTMX_HASHING_H_
#define PTMX_HASHING_H_

#include <cstdint>
#include <random>
#include <string>
#include <string_view>
#include <vector>

namespace ptmx {

// Platform-stable hashes; std::hash is not stable across implementations and
// these values end up in output files.
std::uint64_t Fnv1a64(std::string_view data,
                      std::uint64_t basis = 0xcbf29ce484222325ULL);
std::uint64_t Mix64(std::uint64_t x);

std::string Hex64(std::uint64_t value);

// Uniform integer in [0, bound) from a 64-bit engine, by rejection. Unlike
// std::uniform_int_distribution the result is identical on every platform.
std::uint64_t UniformBelow(std::mt19937_64 &rng, std::uint64_t bound);

// Fisher-Yates shuffle built on UniformBelow.
template <typename T>
void StableShuffle(std::vector<T> &items, std::mt19937_64 &rng) {
  for (std::size_t i = items.size(); i > 1; --i) {
    std::size_t j = static_cast<std::size_t>(UniformBelow(rng, i));
    std::swap(items[i - 1], items[j]);
  }
}

}  // namespace ptmx

#endif  // PTMX_HASHING_H_
