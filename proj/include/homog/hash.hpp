// Copyright 2026 The homog Authors
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

namespace homog {

// splitmix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Counter-based hash: a pure function of its arguments, so the value for
/// (seed, i, j) never depends on what else was computed before.
constexpr std::uint64_t keyed_hash(std::uint64_t seed, std::uint64_t i, std::uint64_t j,
                                   std::uint64_t salt) {
  std::uint64_t h = mix64(seed ^ mix64(salt));
  h = mix64(h ^ i);
  return mix64(h ^ (j * 0xd6e8feb86659fd93ULL));
}

}  // namespace homog
