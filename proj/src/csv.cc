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

#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <set>

#include "pcrank/errors.h"

namespace pcrank {

std::string FormatDouble(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, end);
}

double ParseDouble(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) {
    s.remove_prefix(1);
  }
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' ||
                        s.back() == '\r')) {
    s.remove_suffix(1);
  }
  if (s == "nan") return std::nan("");
  if (s == "inf") return INFINITY;
  if (s == "-inf") return -INFINITY;
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  double x = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), x);
  if (s.empty() || ec != std::errc() || ptr != s.data() + s.size()) {
    throw IoError("not a number: '" + std::string(s) + "'");
  }
  return x;
}

std::string CsvEscape(std::string_view field) {
  if (field.find_first_of(",\"\r\n") == std::string_view::npos) {
    return std::string(field);
  }
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

std::optional<std::size_t> CsvTable::Column(std::string_view name) const {
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (header[i] == name) return i;
  }
  return std::nullopt;
}

CsvTable ReadCsv(std::istream& in) {
  CsvTable table;
  std::vector<std::string> record;
  std::string field;
  bool in_quotes = false;
  bool any = false;  // current record has content
  auto end_record = [&] {
    record.push_back(std::move(field));
    field.clear();
    if (!(record.size() == 1 && record[0].empty() && !any)) {
      if (table.header.empty()) {
        table.header = std::move(record);
      } else {
        table.rows.push_back(std::move(record));
      }
    }
    record.clear();
    any = false;
  };
  char c;
  while (in.get(c)) {
    if (in_quotes) {
      if (c == '"') {
        if (in.peek() == '"') {
          in.get(c);
          field += '"';
        } else {
          in_quotes = false;
        }
      } else {
        field += c;
      }
      continue;
    }
    switch (c) {
      case '"':
        in_quotes = true;
        any = true;
        break;
      case ',':
        record.push_back(std::move(field));
        field.clear();
        any = true;
        break;
      case '\r':
        break;
      case '\n':
        end_record();
        break;
      default:
        field += c;
        any = true;
    }
  }
  if (in_quotes) throw IoError("unterminated quoted CSV field");
  if (any || !field.empty() || !record.empty()) end_record();
  for (std::size_t r = 0; r < table.rows.size(); ++r) {
    if (table.rows[r].size() != table.header.size()) {
      throw IoError("CSV row " + std::to_string(r + 2) + " has " +
                    std::to_string(table.rows[r].size()) + " fields, header " +
                    std::to_string(table.header.size()));
    }
  }
  return table;
}

CsvTable ReadCsvFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path + "'");
  return ReadCsv(in);
}

void WriteDatasetCsv(std::ostream& out, std::span<const Item> items) {
  bool has_text = false;
  bool has_label = false;
  for (const Item& item : items) {
    has_text |= !item.text.empty();
    has_label |= item.label.has_value();
  }
  out << "id,latent";
  if (has_text) out << ",text";
  if (has_label) out << ",label";
  out << '\n';
  for (const Item& item : items) {
    out << CsvEscape(item.id) << ',';
    if (item.latent) out << FormatDouble(*item.latent);
    if (has_text) out << ',' << CsvEscape(item.text);
    if (has_label) {
      out << ',';
      if (item.label) out << FormatDouble(*item.label);
    }
    out << '\n';
  }
}

std::vector<Item> ReadDatasetCsv(std::istream& in) {
  const CsvTable t = ReadCsv(in);
  const auto id_col = t.Column("id");
  if (!id_col) throw IoError("dataset CSV lacks an 'id' column");
  const auto latent_col = t.Column("latent");
  const auto text_col = t.Column("text");
  const auto label_col = t.Column("label");
  std::vector<Item> items;
  std::set<ItemId> seen;
  for (const auto& row : t.rows) {
    Item item;
    item.id = row[*id_col];
    if (item.id.empty()) throw IoError("dataset row with empty id");
    if (!seen.insert(item.id).second) {
      throw IoError("duplicate item id '" + item.id + "'");
    }
    if (latent_col && !row[*latent_col].empty()) {
      item.latent = ParseDouble(row[*latent_col]);
    }
    if (text_col) item.text = row[*text_col];
    if (label_col && !row[*label_col].empty()) {
      item.label = ParseDouble(row[*label_col]);
    }
    items.push_back(std::move(item));
  }
  return items;
}

std::vector<Item> ReadDatasetCsvFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path + "'");
  return ReadDatasetCsv(in);
}

void WriteScoresCsv(std::ostream& out, const ScoreMap& scores,
                    std::string_view column) {
  out << "id," << column << '\n';
  for (const auto& [id, s] : scores) {
    out << CsvEscape(id) << ',' << FormatDouble(s) << '\n';
  }
}

ScoreMap ReadScoresCsv(std::istream& in, std::string_view column) {
  const CsvTable t = ReadCsv(in);
  const auto id_col = t.Column("id");
  if (!id_col) throw IoError("score CSV lacks an 'id' column");
  std::optional<std::size_t> col;
  if (column.empty()) {
    for (std::size_t i = 0; i < t.header.size(); ++i) {
      if (i != *id_col) {
        col = i;
        break;
      }
    }
  } else {
    col = t.Column(column);
  }
  if (!col) {
    throw IoError("score CSV lacks column '" + std::string(column) + "'");
  }
  ScoreMap scores;
  for (const auto& row : t.rows) {
    if (row[*col].empty()) continue;
    if (!scores.emplace(row[*id_col], ParseDouble(row[*col])).second) {
      throw IoError("duplicate item id '" + row[*id_col] + "'");
    }
  }
  return scores;
}

ScoreMap ReadScoresCsvFile(const std::string& path, std::string_view column) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path + "'");
  return ReadScoresCsv(in, column);
}

}  // namespace pcrank
