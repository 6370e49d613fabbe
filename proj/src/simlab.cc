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

#include "pcrank/simlab.h"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <map>
#include <mutex>
#include <ostream>
#include <thread>
#include <tuple>

#include "config_json.h"
#include "pcrank/csv.h"
#include "pcrank/errors.h"
#include "pcrank/match_log.h"

namespace pcrank {

namespace {

constexpr double kNormalMean = 500.0;
constexpr double kNormalSd = 150.0;
constexpr double kBimodalLow = 300.0;
constexpr double kBimodalHigh = 700.0;
constexpr double kBimodalSd = 80.0;

std::string IdFor(int index, int n) {
  int width = 4;
  for (int v = n - 1; v >= 10000; v /= 10) ++width;
  std::string digits = std::to_string(index);
  return "item" + std::string(width - std::min<int>(width, digits.size()), '0') +
         digits;
}

double Clip(double x) { return std::clamp(x, kLatentMin, kLatentMax); }

ScoreMap Latents(std::span<const Item> items) {
  ScoreMap out;
  for (const Item& item : items) out.emplace(item.id, *item.latent);
  return out;
}

ScoreMap Restrict(const ScoreMap& m, const ScoreMap& keys) {
  ScoreMap out;
  for (const auto& [id, v] : keys) {
    auto it = m.find(id);
    if (it != m.end()) out.emplace_hint(out.end(), id, it->second);
  }
  return out;
}

struct Cell {
  std::size_t dist_index;
  std::size_t bias_index;
  std::size_t config_index;
  std::size_t seed_index;
};

void RunCell(const SweepGrid& grid, const Cell& cell, SweepResult* elo_row,
             SweepResult* bt_row) {
  const Distribution dist = grid.distributions[cell.dist_index];
  const int t_bias = grid.t_bias_levels[cell.bias_index];
  const std::uint64_t seed = grid.seeds[cell.seed_index];
  CampaignConfig config = grid.strategy_configs[cell.config_index];

  for (SweepResult* row : {elo_row, bt_row}) {
    row->distribution = dist;
    row->t_bias = t_bias;
    row->config_index = cell.config_index;
    row->strategy = config.strategy;
    row->params = DescribeParams(config);
    row->matchmaking = config.matchmaking;
    row->seed = seed;
  }
  elo_row->rating = RatingKind::kElo;
  bt_row->rating = RatingKind::kBt;

  // Dataset and bias depend only on (seed, distribution[, t_bias]) so every
  // configuration faces the same items and the same annotator.
  const auto dist_salt = static_cast<std::uint64_t>(dist);
  const LatentDataset data = GenDataset(
      dist, grid.n, DeriveRng(seed, {1, dist_salt})());
  const AnnotatorBias bias =
      AssignBias(data.items, t_bias, grid.delta_bias,
                 DeriveRng(seed, {2, dist_salt,
                                  static_cast<std::uint64_t>(t_bias)})());
  const std::initializer_list<std::uint64_t> cell_salt = {
      3, dist_salt, static_cast<std::uint64_t>(t_bias), cell.config_index};
  config.rng_seed = DeriveRng(seed, cell_salt)();
  SimulatedJudge judge(
      NoiseModel::Calibrated(grid.p_max, grid.p_target, grid.delta_ref), bias,
      DeriveRng(seed, {4, dist_salt, static_cast<std::uint64_t>(t_bias),
                       cell.config_index}));

  try {
    const CampaignResult run = RunCampaign(data.items, config, judge);
    const ScoreMap latents = Latents(data.items);
    WinMatrix wins = ToWinMatrix(run.log);
    for (const Item& item : data.items) wins.AddItem(item.id);
    const BtScores bt = BtFit(wins, grid.bt);

    for (SweepResult* row : {elo_row, bt_row}) {
      row->cost_equivalent_calls = run.ledger.cost_equivalent_calls;
      row->pairwise_count = static_cast<long long>(run.log.size());
    }
    elo_row->spearman_rho = SpearmanRho(run.elo, latents);
    bt_row->spearman_rho = SpearmanRho(bt.theta, Restrict(latents, bt.theta));
  } catch (const Error& e) {
    for (SweepResult* row : {elo_row, bt_row}) {
      row->failed = true;
      row->error = e.what();
      row->spearman_rho = std::nan("");
    }
  }
}

}  // namespace

std::string_view ToString(Distribution d) {
  switch (d) {
    case Distribution::kLinear:
      return "linear";
    case Distribution::kBimodal:
      return "bimodal";
    case Distribution::kNormal:
      return "normal";
  }
  return "?";
}

Distribution ParseDistribution(std::string_view s) {
  if (s == "linear") return Distribution::kLinear;
  if (s == "bimodal") return Distribution::kBimodal;
  if (s == "normal") return Distribution::kNormal;
  throw ConfigError("unknown distribution '" + std::string(s) + "'");
}

std::string DescribeDistribution(Distribution d) {
  switch (d) {
    case Distribution::kLinear:
      return "uniform[1,1000]";
    case Distribution::kBimodal:
      return "0.5*N(300,80^2)+0.5*N(700,80^2) clipped to [1,1000]";
    case Distribution::kNormal:
      return "N(500,150^2) clipped to [1,1000]";
  }
  return "?";
}

LatentDataset GenDataset(Distribution distribution, int n,
                         std::uint64_t seed) {
  if (n < 2) throw InvalidArgument("dataset needs at least two items");
  LatentDataset data;
  data.distribution = distribution;
  data.seed = seed;
  data.items.reserve(n);
  Rng rng = DeriveRng(seed);
  std::uniform_real_distribution<double> uniform(kLatentMin, kLatentMax);
  std::normal_distribution<double> normal(kNormalMean, kNormalSd);
  std::normal_distribution<double> low(kBimodalLow, kBimodalSd);
  std::normal_distribution<double> high(kBimodalHigh, kBimodalSd);
  std::bernoulli_distribution coin(0.5);
  for (int i = 0; i < n; ++i) {
    double x = 0;
    switch (distribution) {
      case Distribution::kLinear:
        x = uniform(rng);
        break;
      case Distribution::kNormal:
        x = Clip(normal(rng));
        break;
      case Distribution::kBimodal:
        x = Clip(coin(rng) ? high(rng) : low(rng));
        break;
    }
    data.items.push_back(Item{IdFor(i, n), x, {}, {}});
  }
  return data;
}

AnnotatorBias AssignBias(std::span<const Item> items, int t_bias,
                         double delta_bias, std::uint64_t seed) {
  if (t_bias < 0) throw InvalidArgument("t_bias must be >= 0");
  if (static_cast<std::size_t>(t_bias) > items.size()) {
    throw InvalidArgument("t_bias exceeds the number of items");
  }
  Rng rng = DeriveRng(seed);
  std::vector<ItemId> ids;
  ids.reserve(items.size());
  for (const Item& item : items) ids.push_back(item.id);
  std::vector<ItemId> chosen;
  chosen.reserve(t_bias);
  std::sample(ids.begin(), ids.end(), std::back_inserter(chosen), t_bias, rng);
  std::bernoulli_distribution coin(0.5);
  std::map<ItemId, double> shifts;
  for (const ItemId& id : chosen) {
    shifts.emplace(id, coin(rng) ? delta_bias : -delta_bias);
  }
  if (shifts.size() != chosen.size()) {
    throw InvalidArgument("item ids must be unique");
  }
  return AnnotatorBias(std::move(shifts), delta_bias);
}

void Validate(const SweepGrid& grid) {
  if (grid.distributions.empty()) throw ConfigError("no distributions");
  if (grid.t_bias_levels.empty()) throw ConfigError("no t_bias levels");
  if (grid.strategy_configs.empty()) throw ConfigError("no strategy configs");
  if (grid.seeds.empty()) throw ConfigError("no seeds");
  if (grid.n < 2) throw ConfigError("n must be >= 2");
  for (int t : grid.t_bias_levels) {
    if (t < 0 || t > grid.n) throw ConfigError("t_bias must lie in [0, n]");
  }
  if (!(grid.delta_bias >= 0)) throw ConfigError("delta_bias must be >= 0");
  for (const CampaignConfig& c : grid.strategy_configs) Validate(c);
  try {
    NoiseModel::Calibrated(grid.p_max, grid.p_target, grid.delta_ref);
  } catch (const InvalidArgument& e) {
    throw ConfigError(std::string("noise: ") + e.what());
  }
  if (!(grid.bt.lambda >= 0) || !(grid.bt.tolerance > 0) ||
      grid.bt.max_iterations < 1) {
    throw ConfigError("invalid bt settings");
  }
  if (!(grid.score_alpha.alpha >= 0 && grid.score_alpha.alpha <= 1)) {
    throw ConfigError("alpha must lie in [0, 1]");
  }
}

SweepGrid ParseSweepGrid(std::string_view json_text) {
  using internal::Get;
  const nlohmann::json j = internal::ParseJsonText(json_text, "sweep grid");
  internal::RequireKeys(j, "grid",
                        {"distributions", "t_bias_levels", "delta_bias",
                         "seeds", "n", "noise", "bt", "alpha",
                         "strategy_configs"});
  SweepGrid g;
  try {
    for (const auto& d : j.at("distributions")) {
      g.distributions.push_back(ParseDistribution(d.get<std::string>()));
    }
    g.t_bias_levels = j.at("t_bias_levels").get<std::vector<int>>();
    g.seeds = j.at("seeds").get<std::vector<std::uint64_t>>();
    for (const auto& c : j.at("strategy_configs")) {
      g.strategy_configs.push_back(internal::CampaignConfigFromJson(c));
    }
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("grid: ") + e.what());
  }
  g.delta_bias = Get<double>(j, "delta_bias", g.delta_bias, "grid");
  g.n = Get<int>(j, "n", g.n, "grid");
  if (auto it = j.find("noise"); it != j.end()) {
    internal::RequireKeys(*it, "noise", {"p_max", "p_target", "delta_ref"});
    g.p_max = Get<double>(*it, "p_max", g.p_max, "noise");
    g.p_target = Get<double>(*it, "p_target", g.p_target, "noise");
    g.delta_ref = Get<double>(*it, "delta_ref", g.delta_ref, "noise");
  }
  if (auto it = j.find("bt"); it != j.end()) {
    internal::RequireKeys(*it, "bt", {"lambda", "max_iterations", "tolerance"});
    g.bt.lambda = Get<double>(*it, "lambda", g.bt.lambda, "bt");
    g.bt.max_iterations =
        Get<int>(*it, "max_iterations", g.bt.max_iterations, "bt");
    g.bt.tolerance = Get<double>(*it, "tolerance", g.bt.tolerance, "bt");
  }
  g.score_alpha.alpha = Get<double>(j, "alpha", g.score_alpha.alpha, "grid");
  Validate(g);
  return g;
}

SweepGrid ReadSweepGridFile(const std::string& path) {
  return ParseSweepGrid(internal::ReadTextFile(path));
}

std::vector<SweepResult> RunSweep(const SweepGrid& grid,
                                  const SweepOptions& options) {
  Validate(grid);
  std::vector<Cell> cells;
  for (std::size_t d = 0; d < grid.distributions.size(); ++d) {
    for (std::size_t b = 0; b < grid.t_bias_levels.size(); ++b) {
      for (std::size_t c = 0; c < grid.strategy_configs.size(); ++c) {
        for (std::size_t s = 0; s < grid.seeds.size(); ++s) {
          cells.push_back({d, b, c, s});
        }
      }
    }
  }
  std::vector<SweepResult> rows(2 * cells.size());
  std::atomic<std::size_t> next{0};
  std::atomic<std::size_t> done{0};
  std::mutex progress_mu;
  auto worker = [&] {
    for (std::size_t i = next++; i < cells.size(); i = next++) {
      RunCell(grid, cells[i], &rows[2 * i], &rows[2 * i + 1]);
      const std::size_t finished = ++done;
      if (options.progress) {
        std::lock_guard<std::mutex> lock(progress_mu);
        options.progress(finished, cells.size());
      }
    }
  };
  const int jobs = std::max(1, options.jobs);
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < jobs; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }

  std::vector<RhoCost> ok;
  for (const SweepResult& r : rows) {
    if (!r.failed) ok.push_back({r.spearman_rho, r.cost_equivalent_calls});
  }
  if (ok.size() >= 2) {
    const std::vector<double> scores = ScoreAlpha(ok, grid.score_alpha);
    std::size_t k = 0;
    for (SweepResult& r : rows) {
      r.score_alpha = r.failed ? std::nan("") : scores[k++];
    }
  }
  return rows;
}

std::vector<ConfigSummary> SummarizeSweep(std::span<const SweepResult> rows,
                                          const ScoreAlphaConfig& config) {
  std::map<std::pair<std::size_t, RatingKind>, ConfigSummary> groups;
  for (const SweepResult& r : rows) {
    if (r.failed) continue;
    ConfigSummary& s = groups[{r.config_index, r.rating}];
    s.config_index = r.config_index;
    s.strategy = r.strategy;
    s.params = r.params;
    s.matchmaking = r.matchmaking;
    s.rating = r.rating;
    ++s.runs;
    s.mean_rho += r.spearman_rho;
    s.mean_cost += r.cost_equivalent_calls;
    s.mean_pairwise_count += static_cast<double>(r.pairwise_count);
  }
  std::vector<ConfigSummary> out;
  for (auto& [key, s] : groups) {
    s.mean_rho /= s.runs;
    s.mean_cost /= s.runs;
    s.mean_pairwise_count /= s.runs;
    out.push_back(s);
  }
  if (out.size() >= 2) {
    std::vector<RhoCost> rc;
    for (const ConfigSummary& s : out) rc.push_back({s.mean_rho, s.mean_cost});
    const auto scores = ScoreAlpha(rc, config);
    for (std::size_t i = 0; i < out.size(); ++i) out[i].score_alpha = scores[i];
  } else if (out.size() == 1) {
    out[0].score_alpha = 1.0;
  }
  std::stable_sort(out.begin(), out.end(),
                   [](const ConfigSummary& a, const ConfigSummary& b) {
                     return a.score_alpha > b.score_alpha;
                   });
  return out;
}

void WriteSweepCsv(std::ostream& out, std::span<const SweepResult> rows) {
  out << "distribution,t_bias,strategy,params,matchmaking,rating,seed,"
         "spearman_rho,cost_equivalent_calls,pairwise_count,score_alpha,"
         "status\n";
  for (const SweepResult& r : rows) {
    out << ToString(r.distribution) << ',' << r.t_bias << ','
        << ToString(r.strategy) << ',' << CsvEscape(r.params) << ','
        << ToString(r.matchmaking) << ',' << ToString(r.rating) << ','
        << r.seed << ',' << FormatDouble(r.spearman_rho) << ','
        << FormatDouble(r.cost_equivalent_calls) << ',' << r.pairwise_count
        << ',' << FormatDouble(r.score_alpha) << ','
        << (r.failed ? CsvEscape("failed: " + r.error) : std::string("ok"))
        << '\n';
  }
}

void WriteRankingCsv(std::ostream& out, std::span<const ConfigSummary> rows) {
  out << "rank,strategy,params,matchmaking,rating,runs,mean_rho,mean_cost,"
         "mean_pairwise_count,score_alpha\n";
  int rank = 0;
  for (const ConfigSummary& s : rows) {
    out << ++rank << ',' << ToString(s.strategy) << ',' << CsvEscape(s.params)
        << ',' << ToString(s.matchmaking) << ',' << ToString(s.rating) << ','
        << s.runs << ',' << FormatDouble(s.mean_rho) << ','
        << FormatDouble(s.mean_cost) << ','
        << FormatDouble(s.mean_pairwise_count) << ','
        << FormatDouble(s.score_alpha) << '\n';
  }
}

}  // namespace pcrank
