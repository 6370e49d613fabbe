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

#include "pcrank/strategy.h"

#include <algorithm>
#include <cmath>
#include <exception>
#include <fstream>
#include <functional>
#include <future>
#include <set>
#include <sstream>
#include <thread>
#include <unordered_map>

#include "config_json.h"

namespace pcrank {

namespace {

template <typename T>
struct Outcome {
  std::optional<T> value;
  std::exception_ptr error;
};

template <typename F>
auto WithRetry(F&& call, const RetryPolicy& retry) -> decltype(call()) {
  auto backoff = retry.initial_backoff;
  for (int attempt = 0;; ++attempt) {
    try {
      return call();
    } catch (const JudgeFailure& e) {
      if (!e.retryable() || attempt >= retry.max_retries) throw;
    }
    if (backoff.count() > 0) std::this_thread::sleep_for(backoff);
    backoff = std::chrono::milliseconds(static_cast<long long>(
        static_cast<double>(backoff.count()) * retry.multiplier));
  }
}

// Runs task(0..n-1), at most `in_flight` at a time. Stops launching new
// work after the first failure; results past it stay empty.
template <typename T>
std::vector<Outcome<T>> Dispatch(std::size_t n, int in_flight,
                                 const std::function<T(std::size_t)>& task) {
  std::vector<Outcome<T>> out(n);
  auto run_one = [&](std::size_t i) {
    try {
      out[i].value = task(i);
    } catch (...) {
      out[i].error = std::current_exception();
    }
  };
  if (in_flight <= 1) {
    for (std::size_t i = 0; i < n; ++i) {
      run_one(i);
      if (out[i].error) break;
    }
    return out;
  }
  const std::size_t window = static_cast<std::size_t>(in_flight);
  for (std::size_t start = 0; start < n; start += window) {
    const std::size_t end = std::min(n, start + window);
    std::vector<std::future<void>> batch;
    for (std::size_t i = start; i < end; ++i) {
      batch.push_back(std::async(std::launch::async, run_one, i));
    }
    for (auto& f : batch) f.get();
    bool failed = false;
    for (std::size_t i = start; i < end; ++i) failed |= bool(out[i].error);
    if (failed) break;
  }
  return out;
}

std::string Describe(std::exception_ptr error) {
  try {
    std::rethrow_exception(error);
  } catch (const std::exception& e) {
    return e.what();
  } catch (...) {
    return "unknown error";
  }
}

}  // namespace

std::string_view ToString(Strategy s) {
  switch (s) {
    case Strategy::kFullPairwise:
      return "full_pairwise";
    case Strategy::kStreakPrune:
      return "streak_prune";
    case Strategy::kTailPrune:
      return "tail_prune";
    case Strategy::kListwise:
      return "listwise";
  }
  return "?";
}

Strategy ParseStrategy(std::string_view s) {
  for (Strategy v : {Strategy::kFullPairwise, Strategy::kStreakPrune,
                     Strategy::kTailPrune, Strategy::kListwise}) {
    if (ToString(v) == s) return v;
  }
  throw ConfigError("unknown strategy '" + std::string(s) + "'");
}

std::string_view ToString(Matchmaking m) {
  return m == Matchmaking::kRandom ? "random" : "similarity";
}

Matchmaking ParseMatchmaking(std::string_view s) {
  if (s == "random") return Matchmaking::kRandom;
  if (s == "similarity") return Matchmaking::kSimilarity;
  throw ConfigError("unknown matchmaking '" + std::string(s) + "'");
}

void Validate(const CampaignConfig& c) {
  if (c.rounds < 1) throw ConfigError("rounds must be >= 1");
  if (c.judgments_per_match < 1 || c.judgments_per_match % 2 == 0) {
    throw ConfigError("judgments_per_match must be odd and >= 1");
  }
  if (!(c.rating_online.k_factor > 0) ||
      !std::isfinite(c.rating_online.k_factor)) {
    throw ConfigError("rating_online.k_factor must be positive");
  }
  if (!std::isfinite(c.rating_online.initial_rating)) {
    throw ConfigError("rating_online.initial_rating must be finite");
  }
  switch (c.strategy) {
    case Strategy::kFullPairwise:
      if (!std::holds_alternative<std::monostate>(c.strategy_params)) {
        throw ConfigError("full_pairwise takes no strategy_params");
      }
      break;
    case Strategy::kStreakPrune: {
      const auto* p = std::get_if<StreakParams>(&c.strategy_params);
      if (!p) throw ConfigError("streak_prune needs streak parameters");
      if (p->prune_rounds < 1) throw ConfigError("prune_rounds must be >= 1");
      if (p->d < 1 || p->d > p->prune_rounds) {
        throw ConfigError("d must lie in [1, prune_rounds]");
      }
      break;
    }
    case Strategy::kTailPrune: {
      const auto* p = std::get_if<TailParams>(&c.strategy_params);
      if (!p) throw ConfigError("tail_prune needs tail parameters");
      if (p->w < 1) throw ConfigError("w must be >= 1");
      if (!(p->prune_perc > 0 && p->prune_perc < 0.5)) {
        throw ConfigError("prune_perc must lie in (0, 0.5)");
      }
      break;
    }
    case Strategy::kListwise: {
      const auto* p = std::get_if<ListwiseParams>(&c.strategy_params);
      if (!p) throw ConfigError("listwise needs listwise parameters");
      if (p->k < 2) throw ConfigError("k must be >= 2");
      if (p->ol < 0 || p->ol >= p->k) {
        throw ConfigError("ol must lie in [0, k)");
      }
      if (c.judgments_per_match != 1) {
        throw ConfigError("listwise campaigns take one ranking per group");
      }
      break;
    }
  }
}

std::string DescribeParams(const CampaignConfig& c) {
  std::ostringstream s;
  s << "rounds=" << c.rounds;
  if (const auto* p = std::get_if<StreakParams>(&c.strategy_params)) {
    s << ";prune_rounds=" << p->prune_rounds << ";d=" << p->d;
  } else if (const auto* p = std::get_if<TailParams>(&c.strategy_params)) {
    s << ";w=" << p->w << ";prune_perc=" << p->prune_perc;
  } else if (const auto* p = std::get_if<ListwiseParams>(&c.strategy_params)) {
    s << ";k=" << p->k << ";ol=" << p->ol;
  }
  if (c.judgments_per_match != 1) s << ";m=" << c.judgments_per_match;
  return s.str();
}

namespace internal {

void RequireKeys(const nlohmann::json& j, std::string_view where,
                 std::initializer_list<std::string_view> allowed) {
  if (!j.is_object()) {
    throw ConfigError(std::string(where) + " must be a JSON object");
  }
  for (const auto& [key, value] : j.items()) {
    if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
      throw ConfigError("unknown key '" + key + "' in " + std::string(where));
    }
  }
}

CampaignConfig CampaignConfigFromJson(const nlohmann::json& j) {
  RequireKeys(j, "config",
              {"strategy", "rounds", "matchmaking", "rating_online",
               "judgments_per_match", "strategy_params", "rng_seed"});
  CampaignConfig c;
  c.strategy = ParseStrategy(
      Get<std::string>(j, "strategy", std::string(ToString(c.strategy)),
                       "config"));
  c.rounds = Get<int>(j, "rounds", c.rounds, "config");
  c.matchmaking = ParseMatchmaking(Get<std::string>(
      j, "matchmaking", std::string(ToString(c.matchmaking)), "config"));
  if (auto it = j.find("rating_online"); it != j.end()) {
    RequireKeys(*it, "rating_online", {"k_factor", "initial_rating"});
    c.rating_online.k_factor = Get<double>(
        *it, "k_factor", c.rating_online.k_factor, "rating_online");
    c.rating_online.initial_rating = Get<double>(
        *it, "initial_rating", c.rating_online.initial_rating, "rating_online");
  }
  c.judgments_per_match =
      Get<int>(j, "judgments_per_match", c.judgments_per_match, "config");
  c.rng_seed = Get<std::uint64_t>(j, "rng_seed", c.rng_seed, "config");

  const nlohmann::json params =
      j.contains("strategy_params") ? j["strategy_params"]
                                    : nlohmann::json::object();
  const char* where = "strategy_params";
  switch (c.strategy) {
    case Strategy::kFullPairwise:
      RequireKeys(params, where, {});
      break;
    case Strategy::kStreakPrune: {
      RequireKeys(params, where, {"prune_rounds", "d"});
      StreakParams p;
      p.prune_rounds = Get<int>(params, "prune_rounds", p.prune_rounds, where);
      p.d = Get<int>(params, "d", p.d, where);
      c.strategy_params = p;
      break;
    }
    case Strategy::kTailPrune: {
      RequireKeys(params, where, {"w", "prune_perc"});
      TailParams p;
      p.w = Get<int>(params, "w", p.w, where);
      p.prune_perc = Get<double>(params, "prune_perc", p.prune_perc, where);
      c.strategy_params = p;
      break;
    }
    case Strategy::kListwise: {
      RequireKeys(params, where, {"k", "ol"});
      ListwiseParams p;
      p.k = Get<int>(params, "k", p.k, where);
      p.ol = Get<int>(params, "ol", p.ol, where);
      c.strategy_params = p;
      break;
    }
  }
  Validate(c);
  return c;
}

nlohmann::ordered_json CampaignConfigToJson(const CampaignConfig& c) {
  nlohmann::ordered_json j;
  j["strategy"] = ToString(c.strategy);
  j["rounds"] = c.rounds;
  j["matchmaking"] = ToString(c.matchmaking);
  j["rating_online"] = {{"k_factor", c.rating_online.k_factor},
                        {"initial_rating", c.rating_online.initial_rating}};
  j["judgments_per_match"] = c.judgments_per_match;
  nlohmann::ordered_json params = nlohmann::ordered_json::object();
  if (const auto* p = std::get_if<StreakParams>(&c.strategy_params)) {
    params["prune_rounds"] = p->prune_rounds;
    params["d"] = p->d;
  } else if (const auto* p = std::get_if<TailParams>(&c.strategy_params)) {
    params["w"] = p->w;
    params["prune_perc"] = p->prune_perc;
  } else if (const auto* p = std::get_if<ListwiseParams>(&c.strategy_params)) {
    params["k"] = p->k;
    params["ol"] = p->ol;
  }
  j["strategy_params"] = params;
  j["rng_seed"] = c.rng_seed;
  return j;
}

nlohmann::json ParseJsonText(std::string_view text, std::string_view what) {
  try {
    return nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string(what) + " is not valid JSON: " + e.what());
  }
}

std::string ReadTextFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path + "'");
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

}  // namespace internal

CampaignConfig ParseCampaignConfig(std::string_view json_text) {
  return internal::CampaignConfigFromJson(
      internal::ParseJsonText(json_text, "campaign config"));
}

CampaignConfig ReadCampaignConfigFile(const std::string& path) {
  return ParseCampaignConfig(internal::ReadTextFile(path));
}

std::string ToJson(const CampaignConfig& config) {
  return internal::CampaignConfigToJson(config).dump(2);
}

double CostOf(CallKind kind, std::optional<int> group_size) {
  if (kind == CallKind::kPairwise) return 1.0;
  if (!group_size || *group_size < 2) {
    throw InvalidArgument("listwise cost needs a group size >= 2");
  }
  return *group_size / 2.0;
}

void CostLedger::Charge(CallKind kind, int group_size) {
  if (kind == CallKind::kPairwise) {
    ++pairwise_calls;
  } else {
    ++listwise_calls;
  }
  cost_equivalent_calls += CostOf(kind, group_size);
}

CostLedger RecomputeLedger(std::span<const JudgeCall> calls) {
  CostLedger ledger;
  for (const JudgeCall& c : calls) ledger.Charge(c.kind, c.group_size);
  return ledger;
}

CampaignState::CampaignState(std::span<const ItemId> ids, EloParams elo)
    : active_(ids.begin(), ids.end()), elo_(elo) {
  std::sort(active_.begin(), active_.end());
  if (std::adjacent_find(active_.begin(), active_.end()) != active_.end()) {
    throw InvalidArgument("item ids must be unique");
  }
  for (const ItemId& id : active_) {
    elo_.Add(id);
    streaks_.emplace(id, Streak{});
  }
}

void CampaignState::RecordOutcome(const ItemId& winner, const ItemId& loser) {
  elo_.RecordWin(winner, loser);
  auto extend = [](Streak& s, int sign, const ItemId& opponent) {
    if (s.sign == sign) {
      ++s.length;
    } else {
      s.sign = sign;
      s.length = 1;
      s.opponents.clear();
    }
    s.opponents.push_back(opponent);
  };
  extend(streaks_.at(winner), +1, loser);
  extend(streaks_.at(loser), -1, winner);
}

void CampaignState::Deactivate(const ItemId& id, int round) {
  auto it = std::lower_bound(active_.begin(), active_.end(), id);
  if (it == active_.end() || *it != id) return;
  active_.erase(it);
  pruned_after_.emplace(id, round);
}

ScoreMap CampaignState::ActiveScores() const {
  ScoreMap scores;
  for (const ItemId& id : active_) scores.emplace_hint(scores.end(), id,
                                                       elo_.Rating(id));
  return scores;
}

std::vector<ItemId> ApplyStreakPruning(CampaignState& state,
                                       const StreakParams& params, int round) {
  std::vector<ItemId> pruned;
  for (const ItemId& id : state.active()) {
    const auto& s = state.streak(id);
    if (s.length < params.prune_rounds) continue;
    std::set<ItemId> distinct(s.opponents.begin(), s.opponents.end());
    if (static_cast<int>(distinct.size()) >= params.d) pruned.push_back(id);
  }
  for (const ItemId& id : pruned) state.Deactivate(id, round);
  return pruned;
}

std::vector<ItemId> ApplyTailPruning(CampaignState& state,
                                     const TailParams& params, int round) {
  if (round <= params.w) return {};
  const std::size_t active = state.active().size();
  // Guard against 0.29 * 100 == 28.999...
  std::size_t per_tail = static_cast<std::size_t>(
      std::floor(params.prune_perc * static_cast<double>(active) + 1e-9));
  if (active < 2) return {};
  per_tail = std::min(per_tail, (active - 2) / 2);
  if (per_tail == 0) return {};
  const std::vector<ItemId> order = SimilarityOrder(state.ActiveScores());
  std::vector<ItemId> pruned(order.begin(), order.begin() + per_tail);
  pruned.insert(pruned.end(), order.end() - per_tail, order.end());
  // Pruned before this round's matches, i.e. after the previous round.
  for (const ItemId& id : pruned) state.Deactivate(id, round - 1);
  return pruned;
}

std::vector<MatchRecord> ExpandListwise(std::span<const ItemId> ranking,
                                        int round, const std::string& judge_id,
                                        std::optional<int> source_group) {
  if (ranking.size() < 2) throw InvalidArgument("ranking needs >= 2 items");
  std::set<ItemId> seen;
  for (const ItemId& id : ranking) {
    if (!seen.insert(id).second) {
      throw InvalidJudgment("ranking repeats id '" + id + "'");
    }
  }
  std::vector<MatchRecord> out;
  out.reserve(ranking.size() * (ranking.size() - 1) / 2);
  for (std::size_t i = 0; i < ranking.size(); ++i) {
    for (std::size_t j = i + 1; j < ranking.size(); ++j) {
      out.push_back(MatchRecord{round, MatchKind::kListwiseImplied, ranking[i],
                                ranking[j], ranking[i], judge_id,
                                source_group});
    }
  }
  return out;
}

CampaignResult RunCampaign(std::span<const Item> items,
                           const CampaignConfig& config, Judge& judge,
                           const RetryPolicy& retry) {
  Validate(config);
  std::unordered_map<ItemId, const Item*> by_id;
  std::vector<ItemId> ids;
  for (const Item& item : items) {
    if (!by_id.emplace(item.id, &item).second) {
      throw InvalidArgument("duplicate item id '" + item.id + "'");
    }
    ids.push_back(item.id);
  }
  const auto* listwise = std::get_if<ListwiseParams>(&config.strategy_params);
  const std::size_t min_pool = listwise ? listwise->k : 2;
  if (ids.size() < std::max<std::size_t>(2, min_pool)) {
    throw InsufficientPool("campaign pool is smaller than required");
  }

  CampaignState state(ids, config.rating_online);
  Rng rng = DeriveRng(config.rng_seed);
  CampaignResult result;
  const std::string judge_id = judge.id();
  const int votes = config.judgments_per_match;

  auto finish = [&]() {
    result.elo = state.elo().ratings();
    result.pruned_after = state.pruned_after();
  };
  auto fail = [&](std::exception_ptr error, int round) {
    // Only judge failures abort with a partial log; anything else is a
    // programming or data error and propagates unchanged.
    try {
      std::rethrow_exception(error);
    } catch (const JudgeFailure&) {
    }
    finish();
    throw CampaignAborted("campaign aborted in round " +
                              std::to_string(round) + ": " + Describe(error),
                          std::move(result));
  };

  for (int round = 1; round <= config.rounds; ++round) {
    if (const auto* tail = std::get_if<TailParams>(&config.strategy_params)) {
      ApplyTailPruning(state, *tail, round);
    }
    if (state.active().size() < std::max<std::size_t>(2, min_pool)) break;

    if (listwise) {
      const ListGrouping grouping =
          GroupListwise(state.ActiveScores(), listwise->k, listwise->ol,
                        config.matchmaking, rng);
      const auto& groups = grouping.groups;
      std::function<std::vector<ItemId>(std::size_t)> task =
          [&](std::size_t g) {
            std::vector<Item> members;
            members.reserve(groups[g].size());
            for (const ItemId& id : groups[g]) members.push_back(*by_id.at(id));
            return WithRetry(
                [&] {
                  std::vector<ItemId> order = judge.Rank(members);
                  ValidateRanking(members, order);
                  return order;
                },
                retry);
          };
      auto outcomes = Dispatch(groups.size(), judge.max_in_flight(), task);
      for (std::size_t g = 0; g < groups.size(); ++g) {
        if (!outcomes[g].value) fail(outcomes[g].error, round);
        const int size = static_cast<int>(groups[g].size());
        result.calls.push_back({round, CallKind::kListwise, size});
        result.ledger.Charge(CallKind::kListwise, size);
        for (MatchRecord& r : ExpandListwise(*outcomes[g].value, round,
                                             judge_id, static_cast<int>(g))) {
          state.RecordOutcome(r.winner, r.loser());
          result.log.push_back(std::move(r));
        }
      }
    } else {
      const Pairing pairing = config.matchmaking == Matchmaking::kRandom
                                  ? PairRandom(state.active(), rng)
                                  : PairSimilarity(state.ActiveScores());
      const auto& pairs = pairing.pairs;
      std::function<ItemId(std::size_t)> task = [&](std::size_t p) {
        const Item& a = *by_id.at(pairs[p].first);
        const Item& b = *by_id.at(pairs[p].second);
        return WithRetry(
            [&] {
              ItemId w = judge.Decide(a, b, votes);
              if (w != a.id && w != b.id) {
                throw InvalidJudgment("judge named '" + w +
                                      "', not a participant");
              }
              return w;
            },
            retry);
      };
      auto outcomes = Dispatch(pairs.size(), judge.max_in_flight(), task);
      for (std::size_t p = 0; p < pairs.size(); ++p) {
        if (!outcomes[p].value) fail(outcomes[p].error, round);
        for (int v = 0; v < votes; ++v) {
          result.calls.push_back({round, CallKind::kPairwise, 2});
          result.ledger.Charge(CallKind::kPairwise, 2);
        }
        const ItemId& winner = *outcomes[p].value;
        const ItemId& loser =
            winner == pairs[p].first ? pairs[p].second : pairs[p].first;
        state.RecordOutcome(winner, loser);
        result.log.push_back(MatchRecord{round, MatchKind::kPairwise,
                                         pairs[p].first, pairs[p].second,
                                         winner, judge_id, std::nullopt});
      }
      if (const auto* streak =
              std::get_if<StreakParams>(&config.strategy_params)) {
        ApplyStreakPruning(state, *streak, round);
      }
    }
    result.rounds_played = round;
  }
  finish();
  return result;
}

}  // namespace pcrank
