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

// Per-round pairing and listwise grouping of the active pool.

#ifndef PCRANK_MATCHMAKING_H_
#define PCRANK_MATCHMAKING_H_

#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "pcrank/types.h"

namespace pcrank {

enum class Matchmaking { kRandom, kSimilarity };

struct Pairing {
  int round = 0;
  std::vector<std::pair<ItemId, ItemId>> pairs;
  std::optional<ItemId> bye;
};

struct ListGrouping {
  int round = 0;
  std::vector<std::vector<ItemId>> groups;
  int group_size = 0;
  int overlap = 0;
};

// Uniformly random perfect matching; with an odd pool one uniformly chosen
// item sits out. Throws InsufficientPool for fewer than two items.
Pairing PairRandom(std::span<const ItemId> active, Rng& rng);

// Pairs rank-adjacent items after sorting by score (descending, ties by
// ascending id): (1st, 2nd), (3rd, 4th), ... The lowest-ranked leftover of
// an odd pool gets the bye. Ids are unique, so the order is total and no
// randomness is involved.
Pairing PairSimilarity(const ScoreMap& scores);

// Descending score order with ascending-id tie-break.
std::vector<ItemId> SimilarityOrder(const ScoreMap& scores);

// Slides a window of `group_size` over the ordered pool with stride
// group_size - overlap. A trailing group of a single item is merged into
// the previous group so no item misses a round.
//
// Throws InvalidArgument for group_size < 2 or overlap outside
// [0, group_size), and InsufficientPool when the pool is smaller than
// group_size.
ListGrouping GroupListwise(const ScoreMap& scores, int group_size, int overlap,
                           Matchmaking mode, Rng& rng);

}  // namespace pcrank

#endif  // PCRANK_MATCHMAKING_H_
