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

// Rank and linear correlation, threshold detection, classification
// metrics, and the cost/effectiveness trade-off score.

#ifndef PCRANK_EVALKIT_H_
#define PCRANK_EVALKIT_H_

#include <map>
#include <span>
#include <string_view>
#include <vector>

#include "pcrank/rating.h"
#include "pcrank/types.h"

namespace pcrank {

// Spearman correlation with average ranks for ties. Both maps need the same
// keys (at least two); throws UndefinedCorrelation if either is constant.
double SpearmanRho(const ScoreMap& scores, const ScoreMap& reference);

// Product-moment correlation; same preconditions as SpearmanRho.
double PearsonR(const ScoreMap& scores, const ScoreMap& labels);

// Ranks 1..n with ties sharing their average rank, in input order.
std::vector<double> AverageRanks(std::span<const double> values);

enum class RatingKind { kElo, kBt };
enum class Label { kUnbiased, kBiased };

std::string_view ToString(RatingKind kind);
RatingKind ParseRatingKind(std::string_view s);

// Elo: biased iff score > elo_start. BT: biased iff theta > 0. Equality is
// unbiased.
std::map<ItemId, Label> DetectBinary(const ScoreMap& scores, RatingKind kind,
                                     double elo_start = kDefaultInitialRating);

struct MetricReport {
  double recall = 0;     // on the biased class
  double accuracy = 0;
  double precision = 0;  // on the biased class
  double macro_f1 = 0;   // mean F1 over {biased, unbiased}
  int true_positive = 0;
  int false_positive = 0;
  int false_negative = 0;
  int true_negative = 0;
};

// Computed over the ids present in both maps; throws InvalidArgument if
// there are none. Undefined ratios (no predicted or no actual positives)
// count as 0.
MetricReport ClassificationMetrics(const std::map<ItemId, Label>& predicted,
                                   const std::map<ItemId, Label>& gold);

struct ScoreAlphaConfig {
  double alpha = 0.4;
};

struct RhoCost {
  double rho;
  double cost;
};

// alpha * e + (1 - alpha) * (1 - c) per result, with e and c the min-max
// normalized rho and cost over `results`. An axis with no spread
// normalizes to 0. Needs at least two results.
std::vector<double> ScoreAlpha(std::span<const RhoCost> results,
                               const ScoreAlphaConfig& config = {});

}  // namespace pcrank

#endif  // PCRANK_EVALKIT_H_
