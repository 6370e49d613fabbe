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

// Minimal RFC 4180 CSV handling plus the dataset and score file formats.

#ifndef PCRANK_CSV_H_
#define PCRANK_CSV_H_

#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "pcrank/types.h"

namespace pcrank {

// Shortest text that parses back to the same double; "nan"/"inf" for
// non-finite values.
std::string FormatDouble(double x);
double ParseDouble(std::string_view s);

// Quotes a field if it contains a comma, quote, or line break.
std::string CsvEscape(std::string_view field);

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  // Column index by name, or nullopt.
  std::optional<std::size_t> Column(std::string_view name) const;
};

// First record is the header. Quoted fields may span lines.
CsvTable ReadCsv(std::istream& in);
CsvTable ReadCsvFile(const std::string& path);

// Dataset file: header "id,latent[,text][,label]". The latent column may
// hold empty cells for real (non-simulated) data.
void WriteDatasetCsv(std::ostream& out, std::span<const Item> items);
std::vector<Item> ReadDatasetCsv(std::istream& in);
std::vector<Item> ReadDatasetCsvFile(const std::string& path);

// Score file: header "id,<column>". Reads take the named column, or the
// second column when `column` is empty.
void WriteScoresCsv(std::ostream& out, const ScoreMap& scores,
                    std::string_view column = "score");
ScoreMap ReadScoresCsv(std::istream& in, std::string_view column = {});
ScoreMap ReadScoresCsvFile(const std::string& path,
                           std::string_view column = {});

}  // namespace pcrank

#endif  // PCRANK_CSV_H_
