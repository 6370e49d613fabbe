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

#include "pcrank/judge.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

#include "httplib.h"
#include "json.hpp"
#include "pcrank/errors.h"

namespace pcrank {

namespace {

double Latent(const Item& item) {
  if (!item.latent) {
    throw InvalidArgument("item '" + item.id + "' has no latent score");
  }
  return *item.latent;
}

std::pair<ItemId, ItemId> PairKey(const ItemId& a, const ItemId& b) {
  return a < b ? std::pair(a, b) : std::pair(b, a);
}

void MergeSort(std::vector<const Item*>& v, std::vector<const Item*>& scratch,
               std::size_t lo, std::size_t hi, const NoiseModel& model,
               const AnnotatorBias& bias, Rng& rng) {
  if (hi - lo < 2) return;
  const std::size_t mid = lo + (hi - lo) / 2;
  MergeSort(v, scratch, lo, mid, model, bias, rng);
  MergeSort(v, scratch, mid, hi, model, bias, rng);
  std::size_t i = lo;
  std::size_t j = mid;
  std::size_t out = lo;
  while (i < mid && j < hi) {
    // The right element moves ahead only if the judge prefers it.
    if (SimulatedCompare(*v[j], *v[i], model, bias, rng) == v[j]->id) {
      scratch[out++] = v[j++];
    } else {
      scratch[out++] = v[i++];
    }
  }
  while (i < mid) scratch[out++] = v[i++];
  while (j < hi) scratch[out++] = v[j++];
  std::copy(scratch.begin() + lo, scratch.begin() + hi, v.begin() + lo);
}

struct UrlParts {
  std::string origin;  // scheme://host[:port]
  std::string prefix;  // path without trailing slash
};

UrlParts SplitUrl(const std::string& url) {
  const auto scheme_end = url.find("://");
  if (scheme_end == std::string::npos) {
    throw InvalidArgument("judge url '" + url + "' lacks a scheme");
  }
  const auto path_start = url.find('/', scheme_end + 3);
  UrlParts parts;
  parts.origin = url.substr(0, path_start);
  if (path_start != std::string::npos) parts.prefix = url.substr(path_start);
  while (!parts.prefix.empty() && parts.prefix.back() == '/') {
    parts.prefix.pop_back();
  }
  return parts;
}

nlohmann::json PostJson(const JudgeEndpoint& endpoint, const std::string& path,
                        const nlohmann::json& body) {
  if (endpoint.base_url.empty()) throw InvalidArgument("empty judge url");
  const UrlParts url = SplitUrl(endpoint.base_url);
  httplib::Client client(url.origin);
  client.set_connection_timeout(endpoint.timeout);
  client.set_read_timeout(endpoint.timeout);
  client.set_write_timeout(endpoint.timeout);
  httplib::Headers headers;
  if (endpoint.auth_token) {
    headers.emplace("Authorization", "Bearer " + *endpoint.auth_token);
  }
  auto res =
      client.Post(url.prefix + path, headers, body.dump(), "application/json");
  if (!res) {
    throw JudgeFailure("judge request " + path +
                       " failed: " + httplib::to_string(res.error()));
  }
  if (res->status < 200 || res->status >= 300) {
    throw JudgeFailure("judge request " + path + " returned HTTP " +
                       std::to_string(res->status));
  }
  try {
    return nlohmann::json::parse(res->body);
  } catch (const nlohmann::json::exception& e) {
    throw JudgeFailure("malformed judge response: " + std::string(e.what()));
  }
}

}  // namespace

ItemId Judge::Decide(const Item& a, const Item& b, int votes) {
  if (votes < 1 || votes % 2 == 0) {
    throw InvalidArgument("judgments per match must be odd and positive");
  }
  int for_a = 0;
  for (int v = 0; v < votes; ++v) {
    const ItemId w = Compare(a, b);
    if (w == a.id) {
      ++for_a;
    } else if (w != b.id) {
      throw InvalidJudgment("judge named '" + w + "', not a participant");
    }
  }
  return 2 * for_a > votes ? a.id : b.id;
}

NoiseModel NoiseModel::WithTau(double p_max, double tau) {
  if (!(p_max > 0.5 && p_max <= 1.0)) {
    throw InvalidArgument("p_max must lie in (0.5, 1]");
  }
  if (!(tau > 0) || !std::isfinite(tau)) {
    throw InvalidArgument("tau must be positive and finite");
  }
  return NoiseModel(p_max, tau, std::nullopt);
}

NoiseModel NoiseModel::Calibrated(double p_max, double p_target,
                                  double delta_ref) {
  if (!(p_max > 0.5 && p_max <= 1.0)) {
    throw InvalidArgument("p_max must lie in (0.5, 1]");
  }
  if (!(p_target > 0.5 && p_target < p_max)) {
    throw InvalidArgument("calibration target must lie in (0.5, p_max)");
  }
  if (!(delta_ref > 0) || !std::isfinite(delta_ref)) {
    throw InvalidArgument("calibration distance must be positive");
  }
  const double tau =
      -delta_ref / std::log(1.0 - (p_target - 0.5) / (p_max - 0.5));
  return NoiseModel(p_max, tau, Calibration{p_target, delta_ref});
}

NoiseModel NoiseModel::Noiseless() {
  return NoiseModel(1.0, std::numeric_limits<double>::min(), std::nullopt);
}

double WinProbability(double delta, const NoiseModel& model) {
  if (!(delta >= 0)) throw InvalidArgument("score gap must be nonnegative");
  return 0.5 + (model.p_max() - 0.5) * (1.0 - std::exp(-delta / model.tau()));
}

AnnotatorBias::AnnotatorBias(std::map<ItemId, double> shifts,
                             double delta_bias)
    : shifts_(std::move(shifts)), delta_bias_(delta_bias) {
  if (!(delta_bias >= 0) || !std::isfinite(delta_bias)) {
    throw InvalidArgument("bias magnitude must be finite and >= 0");
  }
  for (const auto& [id, shift] : shifts_) {
    if (std::abs(shift) != delta_bias) {
      throw InvalidArgument("bias shift of '" + id +
                            "' does not have magnitude delta_bias");
    }
  }
}

double AnnotatorBias::Shift(const ItemId& id) const {
  auto it = shifts_.find(id);
  return it == shifts_.end() ? 0.0 : it->second;
}

ItemId SimulatedCompare(const Item& a, const Item& b, const NoiseModel& model,
                        const AnnotatorBias& bias, Rng& rng) {
  const double score_a = Latent(a) + bias.Shift(a.id);
  const double score_b = Latent(b) + bias.Shift(b.id);
  const double u = std::uniform_real_distribution<double>(0.0, 1.0)(rng);
  if (score_a == score_b) return u < 0.5 ? a.id : b.id;
  const Item& higher = score_a > score_b ? a : b;
  const Item& lower = score_a > score_b ? b : a;
  const double p = WinProbability(std::abs(score_a - score_b), model);
  return u < p ? higher.id : lower.id;
}

std::vector<ItemId> SimulatedRank(std::span<const Item> group,
                                  const NoiseModel& model,
                                  const AnnotatorBias& bias, Rng& rng) {
  if (group.size() < 2) throw InvalidArgument("ranking needs >= 2 items");
  std::vector<const Item*> order;
  order.reserve(group.size());
  for (const Item& item : group) {
    Latent(item);
    order.push_back(&item);
  }
  std::vector<const Item*> scratch(order.size());
  MergeSort(order, scratch, 0, order.size(), model, bias, rng);
  std::vector<ItemId> ids;
  ids.reserve(order.size());
  for (const Item* item : order) ids.push_back(item->id);
  return ids;
}

SimulatedJudge::SimulatedJudge(NoiseModel model, AnnotatorBias bias, Rng rng,
                               std::string id)
    : model_(std::move(model)),
      bias_(std::move(bias)),
      rng_(std::move(rng)),
      id_(std::move(id)) {}

ItemId SimulatedJudge::Compare(const Item& a, const Item& b) {
  return SimulatedCompare(a, b, model_, bias_, rng_);
}

std::vector<ItemId> SimulatedJudge::Rank(std::span<const Item> group) {
  return SimulatedRank(group, model_, bias_, rng_);
}

void ValidateRanking(std::span<const Item> group,
                     std::span<const ItemId> order) {
  std::set<ItemId> expected;
  for (const Item& item : group) expected.insert(item.id);
  std::set<ItemId> seen;
  for (const ItemId& id : order) {
    if (!expected.count(id)) {
      throw InvalidJudgment("ranking names unknown id '" + id + "'");
    }
    if (!seen.insert(id).second) {
      throw InvalidJudgment("ranking repeats id '" + id + "'");
    }
  }
  if (seen.size() != expected.size()) {
    throw InvalidJudgment("ranking omits " +
                          std::to_string(expected.size() - seen.size()) +
                          " item(s)");
  }
}

ItemId ExternalCompare(const Item& a, const Item& b,
                       const JudgeEndpoint& endpoint) {
  const nlohmann::json body = {{"left_id", a.id},
                               {"right_id", b.id},
                               {"left_text", a.text},
                               {"right_text", b.text}};
  const nlohmann::json res = PostJson(endpoint, "/compare", body);
  if (!res.is_object() || !res.contains("winner_id") ||
      !res["winner_id"].is_string()) {
    throw JudgeFailure("compare response lacks a string winner_id");
  }
  ItemId winner = res["winner_id"].get<std::string>();
  if (winner != a.id && winner != b.id) {
    throw InvalidJudgment("judge named '" + winner + "', not a participant");
  }
  return winner;
}

std::vector<ItemId> ExternalRank(std::span<const Item> group,
                                 const JudgeEndpoint& endpoint) {
  nlohmann::json items = nlohmann::json::array();
  for (const Item& item : group) {
    items.push_back({{"id", item.id}, {"text", item.text}});
  }
  const nlohmann::json res = PostJson(endpoint, "/rank", {{"items", items}});
  if (!res.is_object() || !res.contains("order") || !res["order"].is_array()) {
    throw JudgeFailure("rank response lacks an order array");
  }
  std::vector<ItemId> order;
  for (const auto& v : res["order"]) {
    if (!v.is_string()) throw InvalidJudgment("rank order holds a non-string");
    order.push_back(v.get<std::string>());
  }
  ValidateRanking(group, order);
  return order;
}

ExternalJudge::ExternalJudge(JudgeEndpoint endpoint, int max_in_flight)
    : endpoint_(std::move(endpoint)), max_in_flight_(max_in_flight) {
  if (endpoint_.base_url.empty()) throw InvalidArgument("empty judge url");
  SplitUrl(endpoint_.base_url);
  if (max_in_flight_ < 1) throw InvalidArgument("max_in_flight must be >= 1");
}

std::string ExternalJudge::id() const { return "http:" + endpoint_.base_url; }

ItemId ExternalJudge::Compare(const Item& a, const Item& b) {
  return ExternalCompare(a, b, endpoint_);
}

std::vector<ItemId> ExternalJudge::Rank(std::span<const Item> group) {
  return ExternalRank(group, endpoint_);
}

ReplayJudge::ReplayJudge(std::span<const MatchRecord> log,
                         std::optional<std::string> id) {
  for (const MatchRecord& r : log) {
    Validate(r);
    outcomes_[PairKey(r.left, r.right)].push_back(r.winner);
  }
  if (id) {
    id_ = *id;
  } else {
    id_ = log.empty() ? "replay" : log.front().judge_id;
  }
}

ItemId ReplayJudge::Next(const ItemId& a, const ItemId& b) {
  auto it = outcomes_.find(PairKey(a, b));
  if (it == outcomes_.end() || it->second.empty()) {
    throw ReplayExhausted("no recorded outcome left for ('" + a + "', '" + b +
                          "')");
  }
  ItemId winner = std::move(it->second.front());
  it->second.pop_front();
  return winner;
}

ItemId ReplayJudge::Compare(const Item& a, const Item& b) {
  return Next(a.id, b.id);
}

ItemId ReplayJudge::Decide(const Item& a, const Item& b, int votes) {
  if (votes < 1 || votes % 2 == 0) {
    throw InvalidArgument("judgments per match must be odd and positive");
  }
  return Next(a.id, b.id);
}

std::vector<ItemId> ReplayJudge::Rank(std::span<const Item> group) {
  const std::size_t k = group.size();
  if (k < 2) throw InvalidArgument("ranking needs >= 2 items");
  std::vector<int> wins(k, 0);
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = i + 1; j < k; ++j) {
      const ItemId w = Next(group[i].id, group[j].id);
      ++wins[w == group[i].id ? i : j];
    }
  }
  // A strict total order gives win counts k-1, k-2, ..., 0.
  std::vector<std::size_t> idx(k);
  for (std::size_t i = 0; i < k; ++i) idx[i] = i;
  std::sort(idx.begin(), idx.end(),
            [&](std::size_t a, std::size_t b) { return wins[a] > wins[b]; });
  std::vector<ItemId> order;
  order.reserve(k);
  for (std::size_t r = 0; r < k; ++r) {
    if (wins[idx[r]] != static_cast<int>(k - 1 - r)) {
      throw InvalidJudgment("recorded outcomes do not form a ranking",
                            /*retryable=*/false);
    }
    order.push_back(group[idx[r]].id);
  }
  return order;
}

std::size_t ReplayJudge::remaining() const {
  std::size_t n = 0;
  for (const auto& [key, q] : outcomes_) n += q.size();
  return n;
}

}  // namespace pcrank
