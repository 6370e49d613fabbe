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

#include <cmath>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "pcrank/errors.h"

namespace pcrank {
namespace {

TEST_CASE("linear dataset") {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const LatentDataset d = GenDataset(Distribution::kLinear, 1000, seed);
    REQUIRE(d.items.size() == 1000);
    double sum = 0;
    for (const Item& it : d.items) {
      REQUIRE(it.latent);
      CHECK(*it.latent >= kLatentMin);
      CHECK(*it.latent <= kLatentMax);
      sum += *it.latent;
    }
    // Mean of 1000 uniforms on [1, 1000] has sd ~9.1; 25 is ~2.7 sd.
    CHECK(std::abs(sum / 1000 - 500.5) <= 25);
  }
}

TEST_CASE("normal and bimodal datasets") {
  const LatentDataset n = GenDataset(Distribution::kNormal, 5000, 3);
  int inside = 0;
  double sum = 0;
  for (const Item& it : n.items) {
    inside += *it.latent > kLatentMin && *it.latent < kLatentMax;
    sum += *it.latent;
  }
  CHECK(inside >= 0.99 * 5000);
  CHECK(std::abs(sum / 5000 - 500) < 10);

  const LatentDataset b = GenDataset(Distribution::kBimodal, 5000, 3);
  int low = 0, mid = 0, high = 0;
  for (const Item& it : b.items) {
    const double x = *it.latent;
    CHECK(x >= kLatentMin);
    CHECK(x <= kLatentMax);
    if (x < 400) ++low;
    else if (x < 600) ++mid;
    else ++high;
  }
  // Each mode holds about half the mass, the valley between them little.
  CHECK(std::abs(low - 2500) < 400);
  CHECK(std::abs(high - 2500) < 400);
  CHECK(mid < low / 2);
}

TEST_CASE("dataset determinism, ids and errors") {
  const auto a = GenDataset(Distribution::kNormal, 50, 9);
  const auto b = GenDataset(Distribution::kNormal, 50, 9);
  const auto c = GenDataset(Distribution::kNormal, 50, 10);
  bool same = true, differs = false;
  for (std::size_t i = 0; i < 50; ++i) {
    same &= a.items[i].latent == b.items[i].latent;
    differs |= a.items[i].latent != c.items[i].latent;
  }
  CHECK(same);
  CHECK(differs);
  CHECK(a.items[0].id == "item0000");
  CHECK(a.items[49].id == "item0049");
  CHECK(GenDataset(Distribution::kLinear, 2, 1).items.size() == 2);
  CHECK_THROWS_AS(GenDataset(Distribution::kLinear, 1, 1), InvalidArgument);
  CHECK_THROWS_AS(ParseDistribution("uniform"), ConfigError);
  CHECK(ParseDistribution("bimodal") == Distribution::kBimodal);
}

TEST_CASE("assign bias") {
  const auto d = GenDataset(Distribution::kLinear, 1000, 1);
  CHECK(AssignBias(d.items, 0, 200, 1).shifts().empty());
  const AnnotatorBias b = AssignBias(d.items, 200, 200, 1);
  CHECK(b.t_bias() == 200);
  int plus = 0;
  for (const auto& [id, shift] : b.shifts()) {
    CHECK(std::abs(shift) == 200);
    plus += shift > 0;
  }
  CHECK(plus > 60);
  CHECK(plus < 140);
  CHECK(AssignBias(d.items, 1000, 200, 2).t_bias() == 1000);
  CHECK_THROWS_AS(AssignBias(d.items, 1001, 200, 1), InvalidArgument);
  CHECK_THROWS_AS(AssignBias(d.items, -1, 200, 1), InvalidArgument);
  CHECK(AssignBias(d.items, 50, 200, 7).shifts() ==
        AssignBias(d.items, 50, 200, 7).shifts());
}

SweepGrid SmallGrid() {
  SweepGrid g;
  g.distributions = {Distribution::kLinear, Distribution::kNormal};
  g.t_bias_levels = {0, 10};
  g.seeds = {1, 2};
  g.n = 60;
  CampaignConfig pw;
  pw.rounds = 6;
  CampaignConfig lw;
  lw.strategy = Strategy::kListwise;
  lw.rounds = 2;
  lw.strategy_params = ListwiseParams{5, 0};
  g.strategy_configs = {pw, lw};
  return g;
}

std::string SweepCsv(const std::vector<SweepResult>& rows) {
  std::ostringstream out;
  WriteSweepCsv(out, rows);
  return out.str();
}

TEST_CASE("sweep row counts and contents") {
  const SweepGrid g = SmallGrid();
  const auto rows = RunSweep(g);
  CHECK(rows.size() == 2 * 2 * 2 * 2 * 2);
  for (std::size_t i = 0; i < rows.size(); i += 2) {
    CHECK(rows[i].rating == RatingKind::kElo);
    CHECK(rows[i + 1].rating == RatingKind::kBt);
    CHECK_FALSE(rows[i].failed);
    CHECK(rows[i].cost_equivalent_calls == rows[i + 1].cost_equivalent_calls);
    CHECK(rows[i].spearman_rho > 0.3);
  }
  SweepGrid one = g;
  one.distributions = {Distribution::kLinear};
  one.t_bias_levels = {0};
  one.seeds = {1};
  one.strategy_configs.resize(1);
  CHECK(RunSweep(one).size() == 2);
}

TEST_CASE("sweep is independent of job count") {
  const SweepGrid g = SmallGrid();
  SweepOptions serial, parallel;
  parallel.jobs = 4;
  std::size_t calls = 0;
  serial.progress = [&](std::size_t done, std::size_t total) {
    ++calls;
    CHECK(done <= total);
  };
  const std::string a = SweepCsv(RunSweep(g, serial));
  const std::string b = SweepCsv(RunSweep(g, parallel));
  CHECK(a == b);
  CHECK(calls == 2 * 2 * 2 * 2);
}

TEST_CASE("sweep csv layout") {
  SweepGrid g = SmallGrid();
  g.seeds = {1};
  g.distributions = {Distribution::kLinear};
  g.t_bias_levels = {0};
  const auto rows = RunSweep(g);
  const std::string csv = SweepCsv(rows);
  CHECK(csv.rfind(
            "distribution,t_bias,strategy,params,matchmaking,rating,seed,"
            "spearman_rho,cost_equivalent_calls,pairwise_count,score_alpha,"
            "status\n",
            0) == 0);
  CHECK(csv.find("listwise,rounds=2;k=5;ol=0,similarity,bt,1,") !=
        std::string::npos);
}

TEST_CASE("summaries are ranked by score alpha") {
  const auto rows = RunSweep(SmallGrid());
  const auto summary = SummarizeSweep(rows);
  REQUIRE(summary.size() == 4);
  for (std::size_t i = 1; i < summary.size(); ++i) {
    CHECK(summary[i - 1].score_alpha >= summary[i].score_alpha);
  }
  for (const auto& s : summary) CHECK(s.runs == 8);
  std::ostringstream out;
  WriteRankingCsv(out, summary);
  CHECK(out.str().rfind("rank,strategy,params,matchmaking,rating,runs,", 0) ==
        0);
}

TEST_CASE("grid json") {
  const SweepGrid g = ParseSweepGrid(R"({
    "distributions": ["linear", "normal"], "t_bias_levels": [0, 50],
    "delta_bias": 150, "seeds": [4, 5], "n": 200,
    "noise": {"p_max": 0.95, "p_target": 0.75, "delta_ref": 80},
    "bt": {"lambda": 1e-5, "max_iterations": 500, "tolerance": 1e-7},
    "alpha": 0.3,
    "strategy_configs": [{"strategy": "full_pairwise", "rounds": 4}]})");
  CHECK(g.distributions.size() == 2);
  CHECK(g.delta_bias == 150);
  CHECK(g.n == 200);
  CHECK(g.p_max == 0.95);
  CHECK(g.bt.max_iterations == 500);
  CHECK(g.score_alpha.alpha == 0.3);
  CHECK(g.strategy_configs.at(0).rounds == 4);

  CHECK_THROWS_AS(ParseSweepGrid(R"({"distributions": []})"), ConfigError);
  CHECK_THROWS_AS(ParseSweepGrid(R"({"distributions": ["linear"],
      "t_bias_levels": [0], "seeds": [1], "strategy_configs": [],
      "n": 100})"),
                  ConfigError);
  CHECK_THROWS_AS(ParseSweepGrid(R"({"colour": 1})"), ConfigError);
  CHECK_THROWS_AS(ParseSweepGrid("[1,2"), ConfigError);
  CHECK_THROWS_AS(ReadSweepGridFile("/nonexistent.json"), IoError);
}

TEST_CASE("the shipped grid parses") {
  const SweepGrid g = ReadSweepGridFile(PCRANK_SOURCE_DIR
                                        "/configs/reference_grid.json");
  CHECK(g.distributions.size() == 3);
  CHECK(g.t_bias_levels == std::vector<int>{0, 50, 200});
  CHECK(g.seeds.size() >= 10);
  CHECK(g.n == 1000);
}

}  // namespace
}  // namespace pcrank
