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


// Reference maximizer of the Bradley-Terry log-likelihood for tiny dense
// win matrices, independent of the MM iteration under test.

#ifndef PCRANK_TESTS_BT_ORACLE_H_
#define PCRANK_TESTS_BT_ORACLE_H_

#include <cmath>
#include <optional>
#include <vector>

namespace pcrank::testing {

using Dense = std::vector<std::vector<int>>;  // w[i][j]: times i beat j

inline double DenseLogLikelihood(const Dense& w, const std::vector<double>& t) {
  double ll = 0;
  const int n = static_cast<int>(w.size());
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const int m = w[i][j] + w[j][i];
      if (m == 0) continue;
      // log(e^ti + e^tj), shifted for stability.
      const double hi = std::max(t[i], t[j]);
      const double lse =
          hi + std::log(std::exp(t[i] - hi) + std::exp(t[j] - hi));
      ll += w[i][j] * t[i] + w[j][i] * t[j] - m * lse;
    }
  }
  return ll;
}

// The MLE exists (up to translation) iff the "beat" digraph over items that
// played at least once is strongly connected.
inline bool StronglyConnected(const Dense& w, const std::vector<int>& nodes) {
  if (nodes.size() < 2) return false;
  for (int dir = 0; dir < 2; ++dir) {
    std::vector<bool> seen(w.size(), false);
    std::vector<int> stack = {nodes[0]};
    seen[nodes[0]] = true;
    while (!stack.empty()) {
      const int u = stack.back();
      stack.pop_back();
      for (int v : nodes) {
        const int edge = dir == 0 ? w[u][v] : w[v][u];
        if (!seen[v] && edge > 0) {
          seen[v] = true;
          stack.push_back(v);
        }
      }
    }
    for (int v : nodes) {
      if (!seen[v]) return false;
    }
  }
  return true;
}

// Damped Newton ascent on theta with theta[nodes[0]] pinned to 0. Returns
// nullopt if the gradient does not vanish (no finite maximizer).
inline std::optional<std::vector<double>> NewtonBtOracle(
    const Dense& w, const std::vector<int>& nodes) {
  const int n = static_cast<int>(w.size());
  const int k = static_cast<int>(nodes.size()) - 1;  // free coordinates
  std::vector<double> t(n, 0.0);
  auto grad_hess = [&](std::vector<double>& g,
                       std::vector<std::vector<double>>& h) {
    g.assign(k, 0.0);
    h.assign(k, std::vector<double>(k, 0.0));
    for (int a = 0; a <= k; ++a) {
      for (int b = a + 1; b <= k; ++b) {
        const int i = nodes[a], j = nodes[b];
        const int m = w[i][j] + w[j][i];
        if (m == 0) continue;
        const double p = 1.0 / (1.0 + std::exp(t[j] - t[i]));
        const double gi = w[i][j] - m * p;
        const double c = m * p * (1 - p);
        if (a > 0) {
          g[a - 1] += gi;
          h[a - 1][a - 1] -= c;
        }
        if (b > 0) {
          g[b - 1] -= gi;
          h[b - 1][b - 1] -= c;
        }
        if (a > 0 && b > 0) {
          h[a - 1][b - 1] += c;
          h[b - 1][a - 1] += c;
        }
      }
    }
  };
  std::vector<double> g;
  std::vector<std::vector<double>> h;
  for (int iter = 0; iter < 500; ++iter) {
    grad_hess(g, h);
    double gmax = 0;
    for (double x : g) gmax = std::max(gmax, std::abs(x));
    if (gmax < 1e-11) return t;
    // Solve (-h) step = g by Gaussian elimination with partial pivoting.
    std::vector<std::vector<double>> a(k, std::vector<double>(k + 1));
    for (int r = 0; r < k; ++r) {
      for (int c = 0; c < k; ++c) a[r][c] = -h[r][c];
      a[r][k] = g[r];
    }
    for (int c = 0; c < k; ++c) {
      int piv = c;
      for (int r = c + 1; r < k; ++r) {
        if (std::abs(a[r][c]) > std::abs(a[piv][c])) piv = r;
      }
      std::swap(a[c], a[piv]);
      if (std::abs(a[c][c]) < 1e-300) return std::nullopt;
      for (int r = 0; r < k; ++r) {
        if (r == c) continue;
        const double f = a[r][c] / a[c][c];
        for (int cc = c; cc <= k; ++cc) a[r][cc] -= f * a[c][cc];
      }
    }
    std::vector<double> step(k);
    double smax = 0;
    for (int r = 0; r < k; ++r) {
      step[r] = a[r][k] / a[r][r];
      smax = std::max(smax, std::abs(step[r]));
    }
    // Newton steps this small are below the resolution of the likelihood.
    if (smax < 1e-12 && gmax < 1e-8) return t;
    // Backtrack until the likelihood does not drop beyond rounding.
    const double base = DenseLogLikelihood(w, t);
    const double slack = 1e-13 * (1 + std::abs(base));
    double scale = 1.0;
    std::vector<double> trial = t;
    for (int bt = 0; bt < 60; ++bt) {
      trial = t;
      for (int r = 0; r < k; ++r) trial[nodes[r + 1]] += scale * step[r];
      if (DenseLogLikelihood(w, trial) >= base - slack) break;
      scale *= 0.5;
    }
    t = trial;
  }
  return std::nullopt;
}

}  // namespace pcrank::testing

#endif  // PCRANK_TESTS_BT_ORACLE_H_
