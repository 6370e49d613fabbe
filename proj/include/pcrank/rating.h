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

// Online Elo and offline Bradley-Terry estimation of item scores.

#ifndef PCRANK_RATING_H_
#define PCRANK_RATING_H_

#include <functional>
#include <map>
#include <set>
#include <utility>
#include <vector>

#include "pcrank/types.h"

namespace pcrank {

inline constexpr double kDefaultKFactor = 32.0;
inline constexpr double kDefaultInitialRating = 1500.0;

struct EloParams {
  double k_factor = kDefaultKFactor;
  double initial_rating = kDefaultInitialRating;
};

// Probability that an item rated `r1` beats one rated `r2`:
// 1 / (1 + 10^((r2 - r1) / 400)).
double EloExpected(double r1, double r2);

// Ratings after the item rated `winner` beats the one rated `loser`. The
// winner gains k * (1 - E_winner) and the loser gives up the same amount.
std::pair<double, double> EloUpdate(double winner, double loser, double k);

// Per-item Elo ratings, updated match by match in arrival order.
class EloTable {
 public:
  explicit EloTable(EloParams params = {});

  // Registers `id` at the initial rating. No-op if already present.
  void Add(const ItemId& id);
  void RecordWin(const ItemId& winner, const ItemId& loser);

  double Rating(const ItemId& id) const;
  const ScoreMap& ratings() const { return ratings_; }
  const EloParams& params() const { return params_; }

 private:
  EloParams params_;
  ScoreMap ratings_;
};

// Aggregated wins W_ij (times i beat j). Items can be registered without
// matches so that a ridge-regularized fit still scores them.
class WinMatrix {
 public:
  void AddItem(const ItemId& id);
  void AddWin(const ItemId& winner, const ItemId& loser, int count = 1);

  int Wins(const ItemId& i, const ItemId& j) const;
  // m_ij = W_ij + W_ji.
  int Matches(const ItemId& i, const ItemId& j) const;
  // Total number of decisive outcomes aggregated.
  long long Total() const { return total_; }

  const std::set<ItemId>& items() const { return items_; }
  const std::map<std::pair<ItemId, ItemId>, int>& wins() const {
    return wins_;
  }

 private:
  std::set<ItemId> items_;
  std::map<std::pair<ItemId, ItemId>, int> wins_;
  long long total_ = 0;
};

struct BtFitConfig {
  double lambda = 1e-6;  // ridge stabilizer for sparse comparison graphs
  int max_iterations = 10000;
  double tolerance = 1e-8;  // max |theta change| per sweep
};

struct BtScores {
  ScoreMap theta;  // log pi, centred to mean zero
  ScoreMap pi;     // geometric mean one
  int iterations_used = 0;
  bool converged = false;
  double final_log_likelihood = 0.0;
  // Items left out of the fit: those without any match when lambda == 0.
  std::vector<ItemId> excluded;
};

// Called with (sweep index, log-likelihood) once for the uniform start
// (sweep 0) and after every renormalized MM sweep.
using BtSweepObserver = std::function<void(int, double)>;

// Maximum-likelihood Bradley-Terry fit by minorization-maximization:
//
//   pi_i <- (W_i + lambda) / (sum_{j != i} m_ij / (pi_i + pi_j) + lambda)
//
// applied to all items simultaneously from pi = 1, followed by rescaling
// the geometric mean of pi to one. Items are processed in sorted id order.
//
// With lambda == 0 an item that never won (or never lost) has no finite
// MLE; its pi is floored at the smallest normal double and the fit reports
// converged == false once the iteration cap is hit.
//
// Throws InsufficientData when fewer than two items take part or no match
// has been recorded.
BtScores BtFit(const WinMatrix& wins, const BtFitConfig& config = {},
               const BtSweepObserver& observer = {});

// sum_{i<j} [W_ij log pi_i + W_ji log pi_j - m_ij log(pi_i + pi_j)].
// Every item appearing in `wins` with a match must have a positive entry in
// `pi`.
double BtLogLikelihood(const WinMatrix& wins, const ScoreMap& pi);

}  // namespace pcrank

#endif  // PCRANK_RATING_H_
