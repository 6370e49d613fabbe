// Copyright 2026 The pcrank Authors.
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

#ifndef PCRANK_TYPES_H_
#define PCRANK_TYPES_H_

#include <cstdint>
#include <initializer_list>
#include <map>
#include <optional>
#include <random>
#include <string>

namespace pcrank {

using ItemId = std::string;

// Every random decision in the library draws from an explicitly passed
// stream of this type.
using Rng = std::mt19937_64;

// Scores keyed by item id. Ordered so iteration is deterministic.
using ScoreMap = std::map<ItemId, double>;

// One rateable text or object.
struct Item {
  ItemId id;
  std::optional<double> latent;  // hidden severity, known in simulation
  std::string text;
  std::optional<double> label;  // gold label, if the dataset carries one
};

// Derives an independent stream from a base seed and any number of
// discriminators (cell index, distribution index, ...).
inline Rng DeriveRng(std::uint64_t seed,
                     std::initializer_list<std::uint64_t> salt = {}) {
  std::seed_seq::result_type words[16];
  std::size_t n = 0;
  words[n++] = static_cast<std::uint32_t>(seed);
  words[n++] = static_cast<std::uint32_t>(seed >> 32);
  for (std::uint64_t s : salt) {
    if (n + 2 > 16) break;
    words[n++] = static_cast<std::uint32_t>(s);
    words[n++] = static_cast<std::uint32_t>(s >> 32);
  }
  std::seed_seq seq(words, words + n);
  return Rng(seq);
}

}  // namespace pcrank

#endif  // PCRANK_TYPES_H_
