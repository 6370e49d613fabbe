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

#include "pcrank/matchmaking.h"

#include <algorithm>
#include <cmath>
#include <string>

#include "pcrank/errors.h"

namespace pcrank {

namespace {

Pairing PairInOrder(const std::vector<ItemId>& order) {
  Pairing p;
  p.pairs.reserve(order.size() / 2);
  for (std::size_t i = 0; i + 1 < order.size(); i += 2) {
    p.pairs.emplace_back(order[i], order[i + 1]);
  }
  if (order.size() % 2 == 1) p.bye = order.back();
  return p;
}

}  // namespace

Pairing PairRandom(std::span<const ItemId> active, Rng& rng) {
  if (active.size() < 2) {
    throw InsufficientPool("pairing needs at least two active items");
  }
  std::vector<ItemId> order(active.begin(), active.end());
  std::shuffle(order.begin(), order.end(), rng);
  return PairInOrder(order);
}

std::vector<ItemId> SimilarityOrder(const ScoreMap& scores) {
  std::vector<std::pair<ItemId, double>> ranked(scores.begin(), scores.end());
  for (const auto& [id, s] : ranked) {
    if (!std::isfinite(s)) {
      throw InvalidArgument("score of '" + id + "' is not finite");
    }
  }
  // ScoreMap iterates in ascending id order, so a stable sort on score alone
  // realizes the id tie-break.
  std::stable_sort(ranked.begin(), ranked.end(),
                   [](const auto& a, const auto& b) {
                     return a.second > b.second;
                   });
  std::vector<ItemId> order;
  order.reserve(ranked.size());
  for (auto& [id, s] : ranked) order.push_back(std::move(id));
  return order;
}

Pairing PairSimilarity(const ScoreMap& scores) {
  if (scores.size() < 2) {
    throw InsufficientPool("pairing needs at least two active items");
  }
  return PairInOrder(SimilarityOrder(scores));
}

ListGrouping GroupListwise(const ScoreMap& scores, int group_size, int overlap,
                           Matchmaking mode, Rng& rng) {
  if (group_size < 2) throw InvalidArgument("group size must be >= 2");
  if (overlap < 0 || overlap >= group_size) {
    throw InvalidArgument("overlap must lie in [0, group size)");
  }
  if (scores.size() < static_cast<std::size_t>(group_size)) {
    throw InsufficientPool("fewer active items than the group size");
  }

  std::vector<ItemId> order;
  if (mode == Matchmaking::kSimilarity) {
    order = SimilarityOrder(scores);
  } else {
    order.reserve(scores.size());
    for (const auto& [id, s] : scores) order.push_back(id);
    std::shuffle(order.begin(), order.end(), rng);
  }

  ListGrouping out;
  out.group_size = group_size;
  out.overlap = overlap;
  const std::size_t n = order.size();
  const std::size_t k = static_cast<std::size_t>(group_size);
  const std::size_t stride = k - static_cast<std::size_t>(overlap);
  for (std::size_t start = 0;; start += stride) {
    const std::size_t end = std::min(start + k, n);
    if (end - start < 2) {
      // Only the items past the previous window are new.
      auto& last = out.groups.back();
      const std::size_t prev_end = start - stride + k;
      for (std::size_t i = prev_end; i < end; ++i) last.push_back(order[i]);
      break;
    }
    out.groups.emplace_back(order.begin() + start, order.begin() + end);
    if (end == n) break;
  }
  return out;
}

}  // namespace pcrank
