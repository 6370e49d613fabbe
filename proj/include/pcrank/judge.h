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

// Judges decide comparisons. Three kinds are provided:
//
//  * SimulatedJudge: latent scores plus distance-calibrated noise and a
//    fixed per-item annotator bias.
//  * ExternalJudge: a remote service speaking the HTTP protocol below.
//  * ReplayJudge: answers from a previously recorded match log.
//
// HTTP protocol (UTF-8 JSON bodies, any non-2xx status is a failure):
//
//   POST <base>/compare  {"left_id","right_id","left_text","right_text"}
//                     -> {"winner_id": <left_id or right_id>}
//   POST <base>/rank     {"items": [{"id","text"}, ...]}
//                     -> {"order": [ids, most to least severe]}

#ifndef PCRANK_JUDGE_H_
#define PCRANK_JUDGE_H_

#include <chrono>
#include <deque>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "pcrank/match_log.h"
#include "pcrank/types.h"

namespace pcrank {

class Judge {
 public:
  virtual ~Judge() = default;

  // Recorded as judge_id in the match log.
  virtual std::string id() const = 0;

  // Returns the id of the item judged more severe.
  virtual ItemId Compare(const Item& a, const Item& b) = 0;

  // Returns the group's ids ordered from most to least severe.
  virtual std::vector<ItemId> Rank(std::span<const Item> group) = 0;

  // One match adjudicated by `votes` judgments under majority rule. `votes`
  // must be odd.
  virtual ItemId Decide(const Item& a, const Item& b, int votes);

  // How many Decide/Rank calls a campaign may have outstanding at once.
  // Values above one promise that concurrent calls are safe.
  virtual int max_in_flight() const { return 1; }
};

// P(correct | delta) = 1/2 + (p_max - 1/2)(1 - exp(-delta / tau)).
class NoiseModel {
 public:
  struct Calibration {
    double p_target;
    double delta_ref;
  };

  // Explicit decay scale.
  static NoiseModel WithTau(double p_max, double tau);
  // Chooses tau so that P(correct | delta_ref) == p_target.
  static NoiseModel Calibrated(double p_max, double p_target,
                               double delta_ref);
  // Limit p_max -> 1, tau -> 0+: any positive gap is decided correctly.
  static NoiseModel Noiseless();

  double p_max() const { return p_max_; }
  double tau() const { return tau_; }
  const std::optional<Calibration>& calibration() const {
    return calibration_;
  }

 private:
  NoiseModel(double p_max, double tau, std::optional<Calibration> cal)
      : p_max_(p_max), tau_(tau), calibration_(cal) {}

  double p_max_;
  double tau_;
  std::optional<Calibration> calibration_;
};

// Throws InvalidArgument for a negative (or NaN) delta.
double WinProbability(double delta, const NoiseModel& model);

// Fixed perceived-severity shifts for a subset of items. Immutable once
// built, so every comparison within a campaign sees the same shift.
class AnnotatorBias {
 public:
  AnnotatorBias() = default;
  // Every shift must have magnitude `delta_bias`.
  AnnotatorBias(std::map<ItemId, double> shifts, double delta_bias);

  double Shift(const ItemId& id) const;
  int t_bias() const { return static_cast<int>(shifts_.size()); }
  double delta_bias() const { return delta_bias_; }
  const std::map<ItemId, double>& shifts() const { return shifts_; }

 private:
  std::map<ItemId, double> shifts_;
  double delta_bias_ = 0.0;
};

// The item with the higher effective score (latent + bias shift) wins with
// probability WinProbability(|gap|); equal effective scores are a fair coin.
// Consumes exactly one uniform draw. Throws InvalidArgument when either item
// lacks a latent score.
ItemId SimulatedCompare(const Item& a, const Item& b, const NoiseModel& model,
                        const AnnotatorBias& bias, Rng& rng);

// Top-down merge sort (most severe first) whose comparator is one
// SimulatedCompare call per invocation. Always returns a permutation of the
// input ids.
std::vector<ItemId> SimulatedRank(std::span<const Item> group,
                                  const NoiseModel& model,
                                  const AnnotatorBias& bias, Rng& rng);

class SimulatedJudge : public Judge {
 public:
  SimulatedJudge(NoiseModel model, AnnotatorBias bias, Rng rng,
                 std::string id = "sim");

  std::string id() const override { return id_; }
  ItemId Compare(const Item& a, const Item& b) override;
  std::vector<ItemId> Rank(std::span<const Item> group) override;

  const NoiseModel& model() const { return model_; }
  const AnnotatorBias& bias() const { return bias_; }

 private:
  NoiseModel model_;
  AnnotatorBias bias_;
  Rng rng_;
  std::string id_;
};

struct JudgeEndpoint {
  std::string base_url;  // e.g. http://localhost:8080 or http://host/judge
  std::chrono::milliseconds timeout{30000};
  std::optional<std::string> auth_token;  // sent as "Bearer <token>"
};

// Transport errors, timeouts, non-2xx statuses and malformed bodies raise
// JudgeFailure; a well-formed answer that breaks the protocol raises
// InvalidJudgment. Both are retryable.
ItemId ExternalCompare(const Item& a, const Item& b,
                       const JudgeEndpoint& endpoint);
std::vector<ItemId> ExternalRank(std::span<const Item> group,
                                 const JudgeEndpoint& endpoint);

class ExternalJudge : public Judge {
 public:
  explicit ExternalJudge(JudgeEndpoint endpoint, int max_in_flight = 1);

  std::string id() const override;
  ItemId Compare(const Item& a, const Item& b) override;
  std::vector<ItemId> Rank(std::span<const Item> group) override;
  int max_in_flight() const override { return max_in_flight_; }

 private:
  JudgeEndpoint endpoint_;
  int max_in_flight_;
};

// Answers from recorded outcomes. Records are looked up by unordered pair
// and consumed in log order, so a log replays against the campaign that
// produced it. A recorded match already carries its majority outcome, so
// Decide consumes one record regardless of `votes`.
class ReplayJudge : public Judge {
 public:
  // The judge id defaults to that of the first record, so a replayed log is
  // byte-identical to the original.
  explicit ReplayJudge(std::span<const MatchRecord> log,
                       std::optional<std::string> id = std::nullopt);

  std::string id() const override { return id_; }
  ItemId Compare(const Item& a, const Item& b) override;
  ItemId Decide(const Item& a, const Item& b, int votes) override;
  // Reassembles the ranking from the group's implied pairwise records;
  // throws InvalidJudgment if they do not form a total order.
  std::vector<ItemId> Rank(std::span<const Item> group) override;

  // Records not yet consumed.
  std::size_t remaining() const;

 private:
  ItemId Next(const ItemId& a, const ItemId& b);

  std::map<std::pair<ItemId, ItemId>, std::deque<ItemId>> outcomes_;
  std::string id_;
};

// Checks that `order` is a permutation of the group's ids.
void ValidateRanking(std::span<const Item> group,
                     std::span<const ItemId> order);

}  // namespace pcrank

#endif  // PCRANK_JUDGE_H_
