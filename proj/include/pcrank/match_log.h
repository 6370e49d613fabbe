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

// Match records and their JSON-lines log format.
//
// One record per line, keys in this order:
//
//   {"round":3,"kind":"pairwise","left":"a","right":"b","winner":"a",
//    "judge_id":"sim","source_group":null}
//
// `kind` is "pairwise" or "listwise_implied"; `source_group` is the group
// index within the round for implied records and null otherwise.

#ifndef PCRANK_MATCH_LOG_H_
#define PCRANK_MATCH_LOG_H_

#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "pcrank/rating.h"
#include "pcrank/types.h"

namespace pcrank {

enum class MatchKind { kPairwise, kListwiseImplied };

std::string_view ToString(MatchKind kind);
MatchKind ParseMatchKind(std::string_view s);

struct MatchRecord {
  int round = 0;
  MatchKind kind = MatchKind::kPairwise;
  ItemId left;
  ItemId right;
  ItemId winner;
  std::string judge_id;
  std::optional<int> source_group;

  const ItemId& loser() const { return winner == left ? right : left; }

  friend bool operator==(const MatchRecord&, const MatchRecord&) = default;
};

// Checks winner in {left, right} and left != right.
void Validate(const MatchRecord& record);

std::string ToJsonLine(const MatchRecord& record);
MatchRecord ParseJsonLine(std::string_view line);

void WriteMatchLog(std::ostream& out, std::span<const MatchRecord> log);
// Blank lines are skipped. Throws IoError with the line number on
// malformed input.
std::vector<MatchRecord> ReadMatchLog(std::istream& in);

void WriteMatchLogFile(const std::string& path,
                       std::span<const MatchRecord> log);
std::vector<MatchRecord> ReadMatchLogFile(const std::string& path);

// Aggregates decisive outcomes for a Bradley-Terry fit.
WinMatrix ToWinMatrix(std::span<const MatchRecord> log);

}  // namespace pcrank

#endif  // PCRANK_MATCH_LOG_H_
