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

#include <fstream>
#include <istream>
#include <ostream>

#include "json.hpp"
#include "pcrank/errors.h"

namespace pcrank {

std::string_view ToString(MatchKind kind) {
  return kind == MatchKind::kPairwise ? "pairwise" : "listwise_implied";
}

MatchKind ParseMatchKind(std::string_view s) {
  if (s == "pairwise") return MatchKind::kPairwise;
  if (s == "listwise_implied") return MatchKind::kListwiseImplied;
  throw InvalidArgument("unknown match kind '" + std::string(s) + "'");
}

void Validate(const MatchRecord& record) {
  if (record.left == record.right) {
    throw InvalidArgument("match record pits '" + record.left +
                          "' against itself");
  }
  if (record.winner != record.left && record.winner != record.right) {
    throw InvalidArgument("winner '" + record.winner +
                          "' is not a participant");
  }
}

std::string ToJsonLine(const MatchRecord& record) {
  nlohmann::ordered_json j;
  j["round"] = record.round;
  j["kind"] = ToString(record.kind);
  j["left"] = record.left;
  j["right"] = record.right;
  j["winner"] = record.winner;
  j["judge_id"] = record.judge_id;
  if (record.source_group) {
    j["source_group"] = *record.source_group;
  } else {
    j["source_group"] = nullptr;
  }
  return j.dump();
}

MatchRecord ParseJsonLine(std::string_view line) {
  MatchRecord r;
  try {
    const auto j = nlohmann::json::parse(line);
    r.round = j.at("round").get<int>();
    r.kind = ParseMatchKind(j.at("kind").get<std::string>());
    r.left = j.at("left").get<std::string>();
    r.right = j.at("right").get<std::string>();
    r.winner = j.at("winner").get<std::string>();
    r.judge_id = j.value("judge_id", std::string());
    if (auto it = j.find("source_group"); it != j.end() && !it->is_null()) {
      r.source_group = it->get<int>();
    }
  } catch (const nlohmann::json::exception& e) {
    throw IoError(std::string("malformed match record: ") + e.what());
  } catch (const InvalidArgument& e) {
    throw IoError(std::string("malformed match record: ") + e.what());
  }
  try {
    Validate(r);
  } catch (const InvalidArgument& e) {
    throw IoError(std::string("invalid match record: ") + e.what());
  }
  return r;
}

void WriteMatchLog(std::ostream& out, std::span<const MatchRecord> log) {
  for (const MatchRecord& r : log) out << ToJsonLine(r) << '\n';
}

std::vector<MatchRecord> ReadMatchLog(std::istream& in) {
  std::vector<MatchRecord> log;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      log.push_back(ParseJsonLine(line));
    } catch (const IoError& e) {
      throw IoError("line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  return log;
}

void WriteMatchLogFile(const std::string& path,
                       std::span<const MatchRecord> log) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  WriteMatchLog(out, log);
  if (!out) throw IoError("failed writing '" + path + "'");
}

std::vector<MatchRecord> ReadMatchLogFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path + "'");
  return ReadMatchLog(in);
}

WinMatrix ToWinMatrix(std::span<const MatchRecord> log) {
  WinMatrix wins;
  for (const MatchRecord& r : log) {
    Validate(r);
    wins.AddWin(r.winner, r.loser());
  }
  return wins;
}

}  // namespace pcrank
