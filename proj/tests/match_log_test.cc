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


#include "pcrank/match_log.h"

#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "pcrank/errors.h"

namespace pcrank {
namespace {

MatchRecord Rec(int round, MatchKind kind, ItemId l, ItemId r, ItemId w,
                std::optional<int> group = std::nullopt) {
  return {round, kind, std::move(l), std::move(r), std::move(w), "sim", group};
}

TEST_CASE("json line layout") {
  const MatchRecord r = Rec(3, MatchKind::kPairwise, "a", "b", "b");
  CHECK(ToJsonLine(r) ==
        R"({"round":3,"kind":"pairwise","left":"a","right":"b",)"
        R"("winner":"b","judge_id":"sim","source_group":null})");
  const MatchRecord g = Rec(1, MatchKind::kListwiseImplied, "x", "y", "x", 7);
  CHECK(ToJsonLine(g).find(R"("kind":"listwise_implied")") !=
        std::string::npos);
  CHECK(ToJsonLine(g).find(R"("source_group":7)") != std::string::npos);
  CHECK(r.loser() == "a");
}

TEST_CASE("log round trip") {
  const std::vector<MatchRecord> log = {
      Rec(1, MatchKind::kPairwise, "a", "b", "a"),
      Rec(1, MatchKind::kListwiseImplied, "c", "d,\"e\"", "d,\"e\"", 0),
      Rec(2, MatchKind::kPairwise, "b", "a", "a"),
  };
  std::stringstream ss;
  WriteMatchLog(ss, log);
  CHECK(ReadMatchLog(ss) == log);
}

TEST_CASE("malformed records are rejected") {
  CHECK_THROWS_AS(ParseJsonLine("{not json"), IoError);
  CHECK_THROWS_AS(
      ParseJsonLine(R"({"round":1,"kind":"pairwise","left":"a","right":"b",)"
                    R"("winner":"c","judge_id":"s","source_group":null})"),
      IoError);
  CHECK_THROWS_AS(
      ParseJsonLine(R"({"round":1,"kind":"pairwise","left":"a","right":"a",)"
                    R"("winner":"a","judge_id":"s","source_group":null})"),
      IoError);
  CHECK_THROWS_AS(
      ParseJsonLine(R"({"round":1,"kind":"tie","left":"a","right":"b",)"
                    R"("winner":"a","judge_id":"s","source_group":null})"),
      IoError);
  std::stringstream ss("\n{\"round\":1}\n");
  CHECK_THROWS_AS(ReadMatchLog(ss), IoError);
  CHECK_THROWS_AS(ReadMatchLogFile("/nonexistent/x.jsonl"), IoError);
}

TEST_CASE("validate") {
  CHECK_NOTHROW(Validate(Rec(1, MatchKind::kPairwise, "a", "b", "a")));
  CHECK_THROWS_AS(Validate(Rec(1, MatchKind::kPairwise, "a", "b", "z")),
                  InvalidArgument);
  CHECK_THROWS_AS(Validate(Rec(1, MatchKind::kPairwise, "a", "a", "a")),
                  InvalidArgument);
}

TEST_CASE("win matrix from log") {
  const std::vector<MatchRecord> log = {
      Rec(1, MatchKind::kPairwise, "a", "b", "a"),
      Rec(2, MatchKind::kPairwise, "b", "a", "a"),
      Rec(2, MatchKind::kListwiseImplied, "b", "c", "b", 0),
  };
  const WinMatrix w = ToWinMatrix(log);
  CHECK(w.Wins("a", "b") == 2);
  CHECK(w.Wins("b", "a") == 0);
  CHECK(w.Wins("b", "c") == 1);
  CHECK(w.Total() == 3);
}

}  // namespace
}  // namespace pcrank
