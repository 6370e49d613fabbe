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


#include "pcrank/csv.h"

#include <cmath>
#include <random>
#include <sstream>
#include <string>

#include "doctest.h"
#include "pcrank/errors.h"

namespace pcrank {
namespace {

TEST_CASE("double formatting round trips") {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(-1e6, 1e6);
  for (int i = 0; i < 1000; ++i) {
    const double x = u(rng);
    CHECK(ParseDouble(FormatDouble(x)) == x);
  }
  CHECK(FormatDouble(0.5) == "0.5");
  CHECK(FormatDouble(12000) == "12000");
  CHECK(FormatDouble(NAN) == "nan");
  CHECK(FormatDouble(-INFINITY) == "-inf");
  CHECK(std::isnan(ParseDouble("nan")));
  CHECK(ParseDouble(" 2.5 ") == 2.5);
  CHECK(ParseDouble("+3") == 3);
  CHECK_THROWS_AS(ParseDouble("abc"), IoError);
  CHECK_THROWS_AS(ParseDouble(""), IoError);
  CHECK_THROWS_AS(ParseDouble("1.5x"), IoError);
}

TEST_CASE("csv quoting") {
  CHECK(CsvEscape("plain") == "plain");
  CHECK(CsvEscape("a,b") == "\"a,b\"");
  CHECK(CsvEscape("say \"hi\"") == "\"say \"\"hi\"\"\"");
  std::stringstream ss("h1,h2\r\n\"a,b\",\"multi\nline\"\nx,\"\"\"q\"\"\"\n");
  const CsvTable t = ReadCsv(ss);
  REQUIRE(t.rows.size() == 2);
  CHECK(t.rows[0][0] == "a,b");
  CHECK(t.rows[0][1] == "multi\nline");
  CHECK(t.rows[1][1] == "\"q\"");
  CHECK(t.Column("h2") == 1u);
  CHECK_FALSE(t.Column("nope"));
  std::stringstream bad("a,b\n1\n");
  CHECK_THROWS_AS(ReadCsv(bad), IoError);
  std::stringstream open("a\n\"unterminated\n");
  CHECK_THROWS_AS(ReadCsv(open), IoError);
}

TEST_CASE("dataset round trip") {
  std::vector<Item> items = {
      {"a", 1.5, "", std::nullopt},
      {"b", 999.25, "", std::nullopt},
  };
  std::stringstream ss;
  WriteDatasetCsv(ss, items);
  CHECK(ss.str() == "id,latent\na,1.5\nb,999.25\n");
  const auto back = ReadDatasetCsv(ss);
  REQUIRE(back.size() == 2);
  CHECK(*back[1].latent == 999.25);

  items[0].text = "hello, world";
  items[1].label = 1;
  std::stringstream ss2;
  WriteDatasetCsv(ss2, items);
  const auto back2 = ReadDatasetCsv(ss2);
  CHECK(back2[0].text == "hello, world");
  CHECK_FALSE(back2[0].label);
  CHECK(*back2[1].label == 1);
}

TEST_CASE("dataset errors") {
  std::stringstream dup("id,latent\na,1\na,2\n");
  CHECK_THROWS_AS(ReadDatasetCsv(dup), IoError);
  std::stringstream noid("name,latent\na,1\n");
  CHECK_THROWS_AS(ReadDatasetCsv(noid), IoError);
  std::stringstream text_only("id,text\na,hi\n");
  const auto items = ReadDatasetCsv(text_only);
  CHECK_FALSE(items[0].latent);
  CHECK_THROWS_AS(ReadDatasetCsvFile("/nonexistent.csv"), IoError);
}

TEST_CASE("score files") {
  const ScoreMap s = {{"a", 0.25}, {"b", -1}};
  std::stringstream ss;
  WriteScoresCsv(ss, s, "theta");
  CHECK(ss.str() == "id,theta\na,0.25\nb,-1\n");
  CHECK(ReadScoresCsv(ss) == s);
  std::stringstream multi("id,theta,pi\na,1,2\n");
  CHECK(ReadScoresCsv(multi, "pi").at("a") == 2);
  std::stringstream missing("id,theta\na,1\n");
  CHECK_THROWS_AS(ReadScoresCsv(missing, "elo"), IoError);
}

}  // namespace
}  // namespace pcrank
