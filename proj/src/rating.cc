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

#include "pcrank/rating.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <unordered_map>

#include "pcrank/errors.h"

namespace pcrank {

namespace {

void RequireFinite(double x, const char* what) {
  if (!std::isfinite(x)) {
    throw InvalidArgument(std::string(what) + " must be finite");
  }
}

// Dense view of a WinMatrix over the fitted items.
struct Edge {
  int i;
  int j;
  double wins_ij;
  double wins_ji;
};

struct IndexedWins {
  std::vector<ItemId> ids;
  std::vector<Edge> edges;
  std::vector<double> total_wins;  // W_i
};

double LogLikelihood(const IndexedWins& g, const std::vector<double>& pi) {
  double ll = 0.0;
  for (const Edge& e : g.edges) {
    const double pi_i = pi[e.i];
    const double pi_j = pi[e.j];
    const double m = e.wins_ij + e.wins_ji;
    if (e.wins_ij > 0) ll += e.wins_ij * std::log(pi_i);
    if (e.wins_ji > 0) ll += e.wins_ji * std::log(pi_j);
    ll -= m * std::log(pi_i + pi_j);
  }
  return ll;
}

}  // namespace

double EloExpected(double r1, double r2) {
  RequireFinite(r1, "rating");
  RequireFinite(r2, "rating");
  return 1.0 / (1.0 + std::pow(10.0, (r2 - r1) / 400.0));
}

std::pair<double, double> EloUpdate(double winner, double loser, double k) {
  RequireFinite(k, "k factor");
  if (k <= 0) throw InvalidArgument("k factor must be positive");
  const double gain = k * (1.0 - EloExpected(winner, loser));
  return {winner + gain, loser - gain};
}

EloTable::EloTable(EloParams params) : params_(params) {
  RequireFinite(params_.k_factor, "k factor");
  RequireFinite(params_.initial_rating, "initial rating");
  if (params_.k_factor <= 0) throw InvalidArgument("k factor must be positive");
}

void EloTable::Add(const ItemId& id) {
  ratings_.try_emplace(id, params_.initial_rating);
}

void EloTable::RecordWin(const ItemId& winner, const ItemId& loser) {
  if (winner == loser) throw InvalidArgument("an item cannot beat itself");
  Add(winner);
  Add(loser);
  double& w = ratings_.at(winner);
  double& l = ratings_.at(loser);
  std::tie(w, l) = EloUpdate(w, l, params_.k_factor);
}

double EloTable::Rating(const ItemId& id) const {
  auto it = ratings_.find(id);
  if (it == ratings_.end()) throw InvalidArgument("unknown item '" + id + "'");
  return it->second;
}

void WinMatrix::AddItem(const ItemId& id) { items_.insert(id); }

void WinMatrix::AddWin(const ItemId& winner, const ItemId& loser, int count) {
  if (winner == loser) throw InvalidArgument("win matrix diagonal must be 0");
  if (count < 0) throw InvalidArgument("win count must be nonnegative");
  items_.insert(winner);
  items_.insert(loser);
  if (count == 0) return;
  wins_[{winner, loser}] += count;
  total_ += count;
}

int WinMatrix::Wins(const ItemId& i, const ItemId& j) const {
  auto it = wins_.find({i, j});
  return it == wins_.end() ? 0 : it->second;
}

int WinMatrix::Matches(const ItemId& i, const ItemId& j) const {
  return Wins(i, j) + Wins(j, i);
}

BtScores BtFit(const WinMatrix& wins, const BtFitConfig& config,
               const BtSweepObserver& observer) {
  if (!(config.lambda >= 0) || !std::isfinite(config.lambda)) {
    throw InvalidArgument("lambda must be finite and >= 0");
  }
  if (!(config.tolerance > 0)) throw InvalidArgument("tolerance must be > 0");
  if (config.max_iterations < 1) {
    throw InvalidArgument("max_iterations must be positive");
  }
  if (wins.Total() == 0) throw InsufficientData("no comparisons to fit");

  BtScores out;
  IndexedWins g;

  std::set<ItemId> matched;
  for (const auto& [key, count] : wins.wins()) {
    matched.insert(key.first);
    matched.insert(key.second);
  }
  for (const ItemId& id : wins.items()) {
    if (config.lambda > 0 || matched.count(id)) {
      g.ids.push_back(id);
    } else {
      out.excluded.push_back(id);
    }
  }
  if (g.ids.size() < 2) throw InsufficientData("need at least two items");

  std::unordered_map<ItemId, int> index;
  for (std::size_t k = 0; k < g.ids.size(); ++k) {
    index.emplace(g.ids[k], static_cast<int>(k));
  }
  g.total_wins.assign(g.ids.size(), 0.0);
  // wins() is ordered by (winner, loser); fold both orientations into one
  // edge keyed by the smaller index.
  std::map<std::pair<int, int>, std::size_t> edge_of;
  for (const auto& [key, count] : wins.wins()) {
    const int a = index.at(key.first);
    const int b = index.at(key.second);
    g.total_wins[a] += count;
    const auto ekey = std::minmax(a, b);
    auto [it, fresh] = edge_of.try_emplace(ekey, g.edges.size());
    if (fresh) g.edges.push_back({ekey.first, ekey.second, 0.0, 0.0});
    Edge& e = g.edges[it->second];
    (a == e.i ? e.wins_ij : e.wins_ji) += count;
  }

  const std::size_t n = g.ids.size();
  const double lambda = config.lambda;
  const double floor_pi = std::numeric_limits<double>::min();
  std::vector<double> pi(n, 1.0);
  std::vector<double> theta(n, 0.0);
  std::vector<double> denom(n);
  std::vector<double> next_theta(n);

  if (observer) observer(0, LogLikelihood(g, pi));

  int sweep = 0;
  while (sweep < config.max_iterations) {
    ++sweep;
    std::fill(denom.begin(), denom.end(), lambda);
    for (const Edge& e : g.edges) {
      const double share = (e.wins_ij + e.wins_ji) / (pi[e.i] + pi[e.j]);
      denom[e.i] += share;
      denom[e.j] += share;
    }
    double log_sum = 0.0;
    bool degenerate = false;
    for (std::size_t i = 0; i < n; ++i) {
      pi[i] = (g.total_wins[i] + lambda) / denom[i];
      // A winless item with no prior has no finite maximizer.
      if (pi[i] < floor_pi) {
        pi[i] = floor_pi;
        degenerate = true;
      }
      next_theta[i] = std::log(pi[i]);
      log_sum += next_theta[i];
    }
    const double log_mean = log_sum / static_cast<double>(n);
    const double scale = std::exp(-log_mean);
    double max_change = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      next_theta[i] -= log_mean;
      pi[i] = std::max(pi[i] * scale, floor_pi);
      max_change = std::max(max_change, std::abs(next_theta[i] - theta[i]));
    }
    theta.swap(next_theta);
    if (observer) observer(sweep, LogLikelihood(g, pi));
    if (max_change < config.tolerance && !degenerate) {
      out.converged = true;
      break;
    }
  }

  out.iterations_used = sweep;
  out.final_log_likelihood = LogLikelihood(g, pi);
  for (std::size_t i = 0; i < n; ++i) {
    out.theta.emplace(g.ids[i], theta[i]);
    out.pi.emplace(g.ids[i], pi[i]);
  }
  return out;
}

double BtLogLikelihood(const WinMatrix& wins, const ScoreMap& pi) {
  auto lookup = [&](const ItemId& id) {
    auto it = pi.find(id);
    if (it == pi.end()) {
      throw InvalidArgument("no ability given for item '" + id + "'");
    }
    if (!(it->second > 0) || !std::isfinite(it->second)) {
      throw InvalidArgument("ability of '" + id + "' must be positive");
    }
    return it->second;
  };
  for (const auto& [id, value] : pi) {
    if (!(value > 0)) {
      throw InvalidArgument("ability of '" + id + "' must be positive");
    }
  }
  double ll = 0.0;
  for (const auto& [key, count] : wins.wins()) {
    // Each directed count contributes W_ij log pi_i - W_ij log(pi_i + pi_j),
    // which sums to the per-pair term.
    const double pi_i = lookup(key.first);
    const double pi_j = lookup(key.second);
    ll += count * (std::log(pi_i) - std::log(pi_i + pi_j));
  }
  return ll;
}

}  // namespace pcrank
