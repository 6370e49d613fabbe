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

// Synthetic latent-severity datasets and the simulation sweep.

#ifndef PCRANK_SIMLAB_H_
#define PCRANK_SIMLAB_H_

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "pcrank/evalkit.h"
#include "pcrank/judge.h"
#include "pcrank/rating.h"
#include "pcrank/strategy.h"
#include "pcrank/types.h"

namespace pcrank {

inline constexpr double kLatentMin = 1.0;
inline constexpr double kLatentMax = 1000.0;

// linear:  uniform on [1, 1000]
// normal:  N(500, 150^2), clipped to [1, 1000]
// bimodal: equal mixture of N(300, 80^2) and N(700, 80^2), clipped
enum class Distribution { kLinear, kBimodal, kNormal };

std::string_view ToString(Distribution d);
Distribution ParseDistribution(std::string_view s);

// Human-readable parameters of a distribution, for run metadata.
std::string DescribeDistribution(Distribution d);

struct LatentDataset {
  std::vector<Item> items;  // ids "item0000", "item0001", ...
  Distribution distribution = Distribution::kLinear;
  std::uint64_t seed = 0;
};

// Throws InvalidArgument for n < 2.
LatentDataset GenDataset(Distribution distribution, int n, std::uint64_t seed);

// Picks t_bias distinct items uniformly and gives each a shift of
// +delta_bias or -delta_bias with equal probability.
AnnotatorBias AssignBias(std::span<const Item> items, int t_bias,
                         double delta_bias, std::uint64_t seed);

struct SweepGrid {
  std::vector<Distribution> distributions;
  std::vector<int> t_bias_levels;
  double delta_bias = 200.0;
  std::vector<CampaignConfig> strategy_configs;  // rng_seed is ignored
  std::vector<std::uint64_t> seeds;
  int n = 1000;
  // Judge noise: p_max with tau calibrated to p_target at delta_ref.
  double p_max = 0.99;
  double p_target = 0.8;
  double delta_ref = 90.0;
  BtFitConfig bt;
  ScoreAlphaConfig score_alpha;
};

// Throws ConfigError for empty axes or invalid members.
void Validate(const SweepGrid& grid);

// JSON form:
//
//   {"distributions": ["linear", "bimodal", "normal"],
//    "t_bias_levels": [0, 50, 200], "delta_bias": 200,
//    "seeds": [1, 2, 3], "n": 1000,
//    "noise": {"p_max": 0.99, "p_target": 0.8, "delta_ref": 90},
//    "bt": {"lambda": 1e-6, "max_iterations": 10000, "tolerance": 1e-8},
//    "alpha": 0.4,
//    "strategy_configs": [<campaign config>, ...]}
SweepGrid ParseSweepGrid(std::string_view json_text);
SweepGrid ReadSweepGridFile(const std::string& path);

struct SweepResult {
  Distribution distribution = Distribution::kLinear;
  int t_bias = 0;
  std::size_t config_index = 0;
  Strategy strategy = Strategy::kFullPairwise;
  std::string params;
  Matchmaking matchmaking = Matchmaking::kSimilarity;
  RatingKind rating = RatingKind::kElo;
  std::uint64_t seed = 0;
  double spearman_rho = 0;
  double cost_equivalent_calls = 0;
  long long pairwise_count = 0;  // direct plus implied comparisons
  double score_alpha = 0;
  bool failed = false;
  std::string error;
};

// Per-configuration means over every (distribution, t_bias, seed) cell.
struct ConfigSummary {
  std::size_t config_index = 0;
  Strategy strategy = Strategy::kFullPairwise;
  std::string params;
  Matchmaking matchmaking = Matchmaking::kSimilarity;
  RatingKind rating = RatingKind::kElo;
  int runs = 0;
  double mean_rho = 0;
  double mean_cost = 0;
  double mean_pairwise_count = 0;
  double score_alpha = 0;
};

struct SweepOptions {
  int jobs = 1;
  // Called after each finished cell with (done, total). May be invoked from
  // worker threads, one call at a time.
  std::function<void(std::size_t, std::size_t)> progress;
};

// Runs every (distribution x t_bias x config x seed) cell: generate the
// dataset, assign annotator bias, run the campaign with a simulated judge,
// fit Bradley-Terry over the log, and score Elo and BT against the latent
// order. Emits two rows per cell (Elo, then BT). A campaign that aborts
// yields failed rows and the sweep carries on.
//
// Every cell derives its randomness from its seed and coordinates, so the
// output does not depend on `jobs` or scheduling. score_alpha is
// normalized over all successful rows.
std::vector<SweepResult> RunSweep(const SweepGrid& grid,
                                  const SweepOptions& options = {});

// Aggregates rows per (config, rating) and scores the aggregates with
// score_alpha; sorted best first (ties by config index, then Elo before BT).
std::vector<ConfigSummary> SummarizeSweep(std::span<const SweepResult> rows,
                                          const ScoreAlphaConfig& config = {});

// CSV columns: distribution,t_bias,strategy,params,matchmaking,rating,seed,
// spearman_rho,cost_equivalent_calls,pairwise_count,score_alpha,status
void WriteSweepCsv(std::ostream& out, std::span<const SweepResult> rows);
// CSV columns: rank,strategy,params,matchmaking,rating,runs,mean_rho,
// mean_cost,mean_pairwise_count,score_alpha
void WriteRankingCsv(std::ostream& out, std::span<const ConfigSummary> rows);

}  // namespace pcrank

#endif  // PCRANK_SIMLAB_H_
