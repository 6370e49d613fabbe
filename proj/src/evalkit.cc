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

#include "pcrank/evalkit.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "pcrank/errors.h"

namespace pcrank {

namespace {

// Aligns two maps on their (identical) key sets.
void Align(const ScoreMap& a, const ScoreMap& b, std::vector<double>& xs,
           std::vector<double>& ys) {
  if (a.size() != b.size()) {
    throw InvalidArgument("score maps cover different items");
  }
  if (a.size() < 2) throw InvalidArgument("correlation needs >= 2 items");
  xs.reserve(a.size());
  ys.reserve(b.size());
  auto ia = a.begin();
  auto ib = b.begin();
  for (; ia != a.end(); ++ia, ++ib) {
    if (ia->first != ib->first) {
      throw InvalidArgument("score maps cover different items");
    }
    if (!std::isfinite(ia->second) || !std::isfinite(ib->second)) {
      throw InvalidArgument("non-finite score for '" + ia->first + "'");
    }
    xs.push_back(ia->second);
    ys.push_back(ib->second);
  }
}

double Correlation(std::span<const double> xs, std::span<const double> ys) {
  const double n = static_cast<double>(xs.size());
  const double mx = std::accumulate(xs.begin(), xs.end(), 0.0) / n;
  const double my = std::accumulate(ys.begin(), ys.end(), 0.0) / n;
  double sxy = 0, sxx = 0, syy = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double dx = xs[i] - mx;
    const double dy = ys[i] - my;
    sxy += dx * dy;
    sxx += dx * dx;
    syy += dy * dy;
  }
  if (sxx == 0 || syy == 0) {
    throw UndefinedCorrelation("correlation of a constant vector");
  }
  return std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
}

double SafeRatio(double num, double den) { return den == 0 ? 0.0 : num / den; }

double F1(double precision, double recall) {
  return SafeRatio(2 * precision * recall, precision + recall);
}

}  // namespace

std::vector<double> AverageRanks(std::span<const double> values) {
  std::vector<std::size_t> idx(values.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
    return values[a] < values[b];
  });
  std::vector<double> ranks(values.size());
  for (std::size_t i = 0; i < idx.size();) {
    std::size_t j = i;
    while (j + 1 < idx.size() && values[idx[j + 1]] == values[idx[i]]) ++j;
    const double avg = (static_cast<double>(i + j) / 2.0) + 1.0;
    for (std::size_t t = i; t <= j; ++t) ranks[idx[t]] = avg;
    i = j + 1;
  }
  return ranks;
}

double SpearmanRho(const ScoreMap& scores, const ScoreMap& reference) {
  std::vector<double> xs, ys;
  Align(scores, reference, xs, ys);
  const auto rx = AverageRanks(xs);
  const auto ry = AverageRanks(ys);
  return Correlation(rx, ry);
}

double PearsonR(const ScoreMap& scores, const ScoreMap& labels) {
  std::vector<double> xs, ys;
  Align(scores, labels, xs, ys);
  return Correlation(xs, ys);
}

std::string_view ToString(RatingKind kind) {
  return kind == RatingKind::kElo ? "elo" : "bt";
}

RatingKind ParseRatingKind(std::string_view s) {
  if (s == "elo") return RatingKind::kElo;
  if (s == "bt") return RatingKind::kBt;
  throw InvalidArgument("unknown rating kind '" + std::string(s) + "'");
}

std::map<ItemId, Label> DetectBinary(const ScoreMap& scores, RatingKind kind,
                                     double elo_start) {
  const double pivot = kind == RatingKind::kElo ? elo_start : 0.0;
  std::map<ItemId, Label> out;
  for (const auto& [id, score] : scores) {
    out.emplace_hint(out.end(), id,
                     score > pivot ? Label::kBiased : Label::kUnbiased);
  }
  return out;
}

MetricReport ClassificationMetrics(const std::map<ItemId, Label>& predicted,
                                   const std::map<ItemId, Label>& gold) {
  MetricReport r;
  int n = 0;
  for (const auto& [id, pred] : predicted) {
    auto it = gold.find(id);
    if (it == gold.end()) continue;
    ++n;
    const bool p = pred == Label::kBiased;
    const bool g = it->second == Label::kBiased;
    if (p && g) ++r.true_positive;
    if (p && !g) ++r.false_positive;
    if (!p && g) ++r.false_negative;
    if (!p && !g) ++r.true_negative;
  }
  if (n == 0) throw InvalidArgument("predicted and gold labels share no item");
  const double tp = r.true_positive, fp = r.false_positive;
  const double fn = r.false_negative, tn = r.true_negative;
  r.precision = SafeRatio(tp, tp + fp);
  r.recall = SafeRatio(tp, tp + fn);
  r.accuracy = (tp + tn) / n;
  const double f1_biased = F1(r.precision, r.recall);
  const double f1_unbiased = F1(SafeRatio(tn, tn + fn), SafeRatio(tn, tn + fp));
  r.macro_f1 = (f1_biased + f1_unbiased) / 2.0;
  return r;
}

std::vector<double> ScoreAlpha(std::span<const RhoCost> results,
                               const ScoreAlphaConfig& config) {
  if (!(config.alpha >= 0 && config.alpha <= 1)) {
    throw InvalidArgument("alpha must lie in [0, 1]");
  }
  if (results.size() < 2) {
    throw InvalidArgument("score_alpha needs at least two results");
  }
  auto [rho_lo, rho_hi] = std::minmax_element(
      results.begin(), results.end(),
      [](const RhoCost& a, const RhoCost& b) { return a.rho < b.rho; });
  auto [cost_lo, cost_hi] = std::minmax_element(
      results.begin(), results.end(),
      [](const RhoCost& a, const RhoCost& b) { return a.cost < b.cost; });
  const double rho_min = rho_lo->rho, rho_span = rho_hi->rho - rho_lo->rho;
  const double cost_min = cost_lo->cost,
               cost_span = cost_hi->cost - cost_lo->cost;
  std::vector<double> out;
  out.reserve(results.size());
  for (const RhoCost& r : results) {
    const double e = rho_span > 0 ? (r.rho - rho_min) / rho_span : 0.0;
    const double c = cost_span > 0 ? (r.cost - cost_min) / cost_span : 0.0;
    out.push_back(config.alpha * e + (1.0 - config.alpha) * (1.0 - c));
  }
  return out;
}

}  // namespace pcrank
