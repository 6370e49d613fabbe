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

// Comparison campaigns: rounds of matchmaking, judging and online Elo
// updates, with optional streak pruning, tail pruning, or listwise ranking
// in place of pairwise matches.

#ifndef PCRANK_STRATEGY_H_
#define PCRANK_STRATEGY_H_

#include <chrono>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "pcrank/errors.h"
#include "pcrank/judge.h"
#include "pcrank/match_log.h"
#include "pcrank/matchmaking.h"
#include "pcrank/rating.h"
#include "pcrank/types.h"

namespace pcrank {

enum class Strategy { kFullPairwise, kStreakPrune, kTailPrune, kListwise };

std::string_view ToString(Strategy s);
Strategy ParseStrategy(std::string_view s);
std::string_view ToString(Matchmaking m);
Matchmaking ParseMatchmaking(std::string_view s);

// Prune an item once its current run of consecutive wins (or losses) is at
// least `prune_rounds` long and covers at least `d` distinct opponents.
struct StreakParams {
  int prune_rounds = 3;
  int d = 2;
};

// After `w` warm-up rounds, drop floor(prune_perc * active) items from each
// end of the Elo order before every further round.
struct TailParams {
  int w = 8;
  double prune_perc = 0.2;
};

struct ListwiseParams {
  int k = 10;
  int ol = 0;
};

using StrategyParams =
    std::variant<std::monostate, StreakParams, TailParams, ListwiseParams>;

struct CampaignConfig {
  Strategy strategy = Strategy::kFullPairwise;
  int rounds = 24;
  Matchmaking matchmaking = Matchmaking::kSimilarity;
  EloParams rating_online;
  int judgments_per_match = 1;
  StrategyParams strategy_params;
  std::uint64_t rng_seed = 0;
};

// Throws ConfigError describing the first violated constraint.
void Validate(const CampaignConfig& config);

// Short human-readable parameter summary, e.g. "rounds=3;k=10;ol=0".
std::string DescribeParams(const CampaignConfig& config);

// JSON mirror of CampaignConfig:
//
//   {"strategy": "listwise", "rounds": 3, "matchmaking": "similarity",
//    "rating_online": {"k_factor": 32, "initial_rating": 1500},
//    "judgments_per_match": 1,
//    "strategy_params": {"k": 10, "ol": 0},
//    "rng_seed": 7}
//
// strategy_params holds {"prune_rounds", "d"} for streak_prune,
// {"w", "prune_perc"} for tail_prune, {"k", "ol"} for listwise and is
// omitted (or {}) for full_pairwise. Omitted fields take the defaults above.
CampaignConfig ParseCampaignConfig(std::string_view json_text);
CampaignConfig ReadCampaignConfigFile(const std::string& path);
std::string ToJson(const CampaignConfig& config);

enum class CallKind { kPairwise, kListwise };

// Cost-equivalent calls of one judge call: 1 for a pairwise decision,
// group_size / 2 for a listwise ranking.
double CostOf(CallKind kind, std::optional<int> group_size = std::nullopt);

struct JudgeCall {
  int round = 0;
  CallKind kind = CallKind::kPairwise;
  int group_size = 2;
};

struct CostLedger {
  long long pairwise_calls = 0;
  long long listwise_calls = 0;
  double cost_equivalent_calls = 0.0;

  void Charge(CallKind kind, int group_size);
};

CostLedger RecomputeLedger(std::span<const JudgeCall> calls);

// Live state of a campaign, exposed for the pruning rules.
class CampaignState {
 public:
  CampaignState(std::span<const ItemId> ids, EloParams elo);

  // Applies the Elo update and extends or resets both items' streaks.
  void RecordOutcome(const ItemId& winner, const ItemId& loser);
  void Deactivate(const ItemId& id, int round);

  const std::vector<ItemId>& active() const { return active_; }
  ScoreMap ActiveScores() const;
  const EloTable& elo() const { return elo_; }

  struct Streak {
    int sign = 0;  // +1 winning, -1 losing, 0 no matches yet
    int length = 0;
    std::vector<ItemId> opponents;  // in the current streak, in order
  };
  const Streak& streak(const ItemId& id) const { return streaks_.at(id); }

  // Round after which each item left the active pool.
  const std::map<ItemId, int>& pruned_after() const { return pruned_after_; }

 private:
  std::vector<ItemId> active_;  // sorted
  EloTable elo_;
  std::map<ItemId, Streak> streaks_;
  std::map<ItemId, int> pruned_after_;
};

// Removes and returns (in id order) every active item whose current streak
// has length >= prune_rounds and spans >= d distinct opponents. Byes do
// not touch streaks.
std::vector<ItemId> ApplyStreakPruning(CampaignState& state,
                                       const StreakParams& params, int round);

// Called before matchmaking of `round`. No-op while round <= w; afterwards
// removes floor(prune_perc * active) items from the top of the Elo order
// and as many from the bottom, never leaving fewer than two active items.
std::vector<ItemId> ApplyTailPruning(CampaignState& state,
                                     const TailParams& params, int round);

// Implied pairwise records of a ranking (most severe first): for each i
// before j one record with winner i, i.e. n(n-1)/2 records. Throws
// InvalidJudgment on duplicate ids.
std::vector<MatchRecord> ExpandListwise(std::span<const ItemId> ranking,
                                        int round, const std::string& judge_id,
                                        std::optional<int> source_group = {});

struct RetryPolicy {
  int max_retries = 3;
  std::chrono::milliseconds initial_backoff{200};
  double multiplier = 2.0;
};

struct CampaignResult {
  std::vector<MatchRecord> log;
  std::vector<JudgeCall> calls;
  CostLedger ledger;
  ScoreMap elo;  // final ratings of every item, pruned or not
  std::map<ItemId, int> pruned_after;
  int rounds_played = 0;
};

// Thrown when the judge keeps failing. Carries everything recorded up to
// the failing match.
class CampaignAborted : public Error {
 public:
  CampaignAborted(const std::string& what, CampaignResult partial)
      : Error(what), partial_(std::move(partial)) {}
  const CampaignResult& partial() const { return partial_; }

 private:
  CampaignResult partial_;
};

// Runs `config.rounds` rounds over `items`. Matchmaking randomness comes
// from config.rng_seed; the judge owns its own randomness. Within a round
// judge calls may run concurrently (up to judge.max_in_flight()), but Elo
// updates are applied in pair/group order so results do not depend on
// scheduling. Items need unique ids.
CampaignResult RunCampaign(std::span<const Item> items,
                           const CampaignConfig& config, Judge& judge,
                           const RetryPolicy& retry = {});

}  // namespace pcrank

#endif  // PCRANK_STRATEGY_H_
