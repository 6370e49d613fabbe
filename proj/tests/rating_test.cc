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

#include <cmath>
#include <limits>
#include <random>
#include <string>
#include <vector>

#include "bt_oracle.h"
#include "doctest.h"
#include "pcrank/errors.h"

namespace pcrank {
namespace {

using doctest::Approx;

TEST_CASE("elo expected score") {
  CHECK(EloExpected(1500, 1500) == 0.5);
  CHECK(EloExpected(1900, 1500) == Approx(10.0 / 11).epsilon(1e-12));
  CHECK(EloExpected(1500, 1900) == Approx(1.0 / 11).epsilon(1e-12));
  for (double r : {-3000.0, 0.0, 1234.5, 1e6}) CHECK(EloExpected(r, r) == 0.5);
  Rng rng(5);
  std::uniform_real_distribution<double> u(0, 3000);
  for (int t = 0; t < 100; ++t) {
    const double a = u(rng), b = u(rng);
    CHECK(EloExpected(a, b) + EloExpected(b, a) == Approx(1.0).epsilon(1e-14));
  }
  CHECK_THROWS_AS(EloExpected(NAN, 1500), InvalidArgument);
  CHECK_THROWS_AS(EloExpected(1500, INFINITY), InvalidArgument);
}

TEST_CASE("elo update") {
  const auto [w, l] = EloUpdate(1500, 1500, 32);
  CHECK(w == 1516);
  CHECK(l == 1484);
  const auto [w2, l2] = EloUpdate(1900, 1500, 32);
  CHECK(w2 == Approx(1900 + 32.0 / 11).epsilon(1e-12));
  CHECK(l2 == Approx(1500 - 32.0 / 11).epsilon(1e-12));
  CHECK_THROWS_AS(EloUpdate(1500, 1500, 0), InvalidArgument);
  CHECK_THROWS_AS(EloUpdate(1500, NAN, 32), InvalidArgument);
}

TEST_CASE("elo updates conserve the rating sum") {
  Rng rng(11);
  std::uniform_real_distribution<double> u(500, 2500);
  for (int t = 0; t < 1000; ++t) {
    const double a = u(rng), b = u(rng);
    const auto [na, nb] = EloUpdate(a, b, 32);
    CHECK(std::abs((na + nb) - (a + b)) < 1e-9);
    CHECK(na > a);
    CHECK(nb < b);
  }
}

TEST_CASE("elo table") {
  EloTable table;
  table.Add("a");
  table.Add("b");
  table.Add("a");  // no-op
  CHECK(table.ratings().size() == 2);
  table.RecordWin("a", "b");
  CHECK(table.Rating("a") == 1516);
  CHECK(table.Rating("b") == 1484);
  CHECK_THROWS(table.Rating("zzz"));
}

TEST_CASE("win matrix bookkeeping") {
  WinMatrix w;
  w.AddWin("a", "b");
  w.AddWin("a", "b", 2);
  w.AddWin("b", "a");
  w.AddItem("c");
  CHECK(w.Wins("a", "b") == 3);
  CHECK(w.Wins("b", "a") == 1);
  CHECK(w.Matches("a", "b") == 4);
  CHECK(w.Matches("a", "c") == 0);
  CHECK(w.Total() == 4);
  CHECK(w.items().size() == 3);
  CHECK_THROWS_AS(w.AddWin("a", "a"), InvalidArgument);
}

ScoreMap FitTheta(const WinMatrix& w, double lambda) {
  BtFitConfig c;
  c.lambda = lambda;
  c.max_iterations = 100000;
  c.tolerance = 1e-12;
  return BtFit(w, c).theta;
}

TEST_CASE("bt symmetric pair") {
  WinMatrix w;
  w.AddWin("a", "b");
  w.AddWin("b", "a");
  const ScoreMap t = FitTheta(w, 0);
  CHECK(std::abs(t.at("a")) < 1e-9);
  CHECK(std::abs(t.at("b")) < 1e-9);
}

TEST_CASE("bt 3:1 pair has gap ln 3") {
  WinMatrix w;
  w.AddWin("a", "b", 3);
  w.AddWin("b", "a", 1);
  const ScoreMap t = FitTheta(w, 0);
  CHECK(t.at("a") - t.at("b") == Approx(std::log(3.0)).epsilon(1e-9));
  CHECK(t.at("a") == Approx(0.5 * std::log(3.0)).epsilon(1e-9));
}

TEST_CASE("bt cycle is flat") {
  WinMatrix w;
  w.AddWin("a", "b");
  w.AddWin("b", "c");
  w.AddWin("c", "a");
  for (const auto& [id, theta] : FitTheta(w, 0)) {
    CHECK(std::abs(theta) < 1e-9);
  }
}

TEST_CASE("bt normalization invariants") {
  Rng rng(3);
  std::uniform_int_distribution<int> count(0, 4);
  WinMatrix w;
  for (int i = 0; i < 8; ++i) {
    for (int j = 0; j < 8; ++j) {
      if (i == j) continue;
      const int c = count(rng);
      if (c) w.AddWin("i" + std::to_string(i), "i" + std::to_string(j), c);
    }
  }
  const BtScores s = BtFit(w);
  double mean_theta = 0, mean_log_pi = 0;
  for (const auto& [id, theta] : s.theta) {
    mean_theta += theta;
    mean_log_pi += std::log(s.pi.at(id));
  }
  mean_theta /= s.theta.size();
  mean_log_pi /= s.theta.size();
  CHECK(std::abs(mean_theta) < 1e-9);
  CHECK(std::abs(mean_log_pi) < 1e-9);
  for (const auto& [id, theta] : s.theta) {
    CHECK(theta == Approx(std::log(s.pi.at(id)) - mean_log_pi).epsilon(1e-9));
  }
  CHECK(s.converged);
}

TEST_CASE("bt duplication invariance") {
  Rng rng(17);
  std::uniform_int_distribution<int> count(0, 3);
  WinMatrix once, thrice;
  for (int i = 0; i < 6; ++i) {
    for (int j = 0; j < 6; ++j) {
      if (i == j) continue;
      const int c = count(rng);
      if (!c) continue;
      const std::string a = "i" + std::to_string(i);
      const std::string b = "i" + std::to_string(j);
      once.AddWin(a, b, c);
      thrice.AddWin(a, b, 3 * c);
    }
  }
  const ScoreMap t1 = FitTheta(once, 0);
  const ScoreMap t3 = FitTheta(thrice, 0);
  for (const auto& [id, theta] : t1) {
    CHECK(theta == Approx(t3.at(id)).epsilon(1e-7));
  }
}

TEST_CASE("bt matches newton oracle on random strongly connected graphs") {
  Rng rng(101);
  std::uniform_int_distribution<int> count(0, 5);
  int checked = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 3 + trial % 4;
    testing::Dense dense(n, std::vector<int>(n, 0));
    WinMatrix w;
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        if (i == j) continue;
        dense[i][j] = count(rng) * (count(rng) > 1);
        if (dense[i][j]) {
          w.AddWin(std::to_string(i), std::to_string(j), dense[i][j]);
        }
      }
    }
    std::vector<int> nodes(n);
    for (int i = 0; i < n; ++i) nodes[i] = i;
    if (!testing::StronglyConnected(dense, nodes)) continue;
    const auto oracle = testing::NewtonBtOracle(dense, nodes);
    REQUIRE(oracle);
    const ScoreMap t = FitTheta(w, 0);
    for (int i = 1; i < n; ++i) {
      const double got = t.at(std::to_string(i)) - t.at("0");
      CHECK(got == Approx((*oracle)[i] - (*oracle)[0]).epsilon(1e-6));
    }
    ++checked;
  }
  CHECK(checked > 50);
}

TEST_CASE("bt log-likelihood") {
  WinMatrix w;
  w.AddWin("a", "b");
  w.AddWin("b", "a");
  CHECK(BtLogLikelihood(w, {{"a", 1.0}, {"b", 1.0}}) ==
        Approx(2 * std::log(0.5)).epsilon(1e-12));
  CHECK(BtLogLikelihood(WinMatrix{}, {}) == 0.0);
  CHECK_THROWS_AS(BtLogLikelihood(w, {{"a", 0.0}, {"b", 1.0}}),
                  InvalidArgument);
  CHECK_THROWS_AS(BtLogLikelihood(w, {{"a", -1.0}, {"b", 1.0}}),
                  InvalidArgument);

  WinMatrix r;
  r.AddWin("a", "b", 4);
  r.AddWin("b", "c", 2);
  r.AddWin("c", "a", 1);
  r.AddWin("b", "a", 1);
  const BtScores s = BtFit(r);
  CHECK(BtLogLikelihood(r, s.pi) >=
        BtLogLikelihood(r, {{"a", 1.0}, {"b", 1.0}, {"c", 1.0}}));
}

TEST_CASE("mm sweeps never lower the likelihood") {
  Rng rng(23);
  std::uniform_int_distribution<int> count(0, 6);
  WinMatrix w;
  for (int i = 0; i < 10; ++i) {
    for (int j = 0; j < 10; ++j) {
      if (i != j && count(rng) > 3) {
        w.AddWin(std::to_string(i), std::to_string(j), count(rng) + 1);
      }
    }
  }
  BtFitConfig c;
  c.lambda = 0;
  double last = -std::numeric_limits<double>::infinity();
  int sweeps = 0;
  BtFit(w, c, [&](int sweep, double ll) {
    CHECK(sweep == sweeps++);
    CHECK(ll >= last - 1e-9);
    last = ll;
  });
  CHECK(sweeps > 1);
}

TEST_CASE("bt unmatched items") {
  WinMatrix w;
  w.AddWin("a", "b", 2);
  w.AddWin("b", "a", 1);
  w.AddItem("lonely");
  BtFitConfig zero;
  zero.lambda = 0;
  const BtScores excluded = BtFit(w, zero);
  CHECK(excluded.excluded == std::vector<ItemId>{"lonely"});
  CHECK(excluded.theta.count("lonely") == 0);

  const BtScores kept = BtFit(w);
  CHECK(kept.excluded.empty());
  REQUIRE(kept.theta.count("lonely") == 1);
  CHECK(std::isfinite(kept.theta.at("lonely")));
  CHECK(kept.theta.at("lonely") < kept.theta.at("a"));
}

TEST_CASE("bt input validation") {
  CHECK_THROWS_AS(BtFit(WinMatrix{}), InsufficientData);
  WinMatrix w;
  w.AddWin("a", "b");
  BtFitConfig bad;
  bad.lambda = -1;
  CHECK_THROWS_AS(BtFit(w, bad), InvalidArgument);
  bad = {};
  bad.tolerance = 0;
  CHECK_THROWS_AS(BtFit(w, bad), InvalidArgument);
  bad = {};
  bad.max_iterations = 0;
  CHECK_THROWS_AS(BtFit(w, bad), InvalidArgument);
}

TEST_CASE("bt stops at the iteration cap") {
  WinMatrix w;
  w.AddWin("a", "b", 5);  // one-sided: the MLE diverges
  BtFitConfig c;
  c.lambda = 0;
  c.max_iterations = 50;
  const BtScores s = BtFit(w, c);
  CHECK(s.iterations_used == 50);
  CHECK_FALSE(s.converged);
  CHECK(s.theta.at("a") > s.theta.at("b"));
}

}  // namespace
}  // namespace pcrank
