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

// Internal JSON helpers shared by the config and grid readers.

#ifndef PCRANK_SRC_CONFIG_JSON_H_
#define PCRANK_SRC_CONFIG_JSON_H_

#include <initializer_list>
#include <string>
#include <string_view>

#include "json.hpp"
#include "pcrank/errors.h"
#include "pcrank/strategy.h"

namespace pcrank::internal {

// Throws ConfigError if `j` is not an object or has keys outside `allowed`.
void RequireKeys(const nlohmann::json& j, std::string_view where,
                 std::initializer_list<std::string_view> allowed);

template <typename T>
T Get(const nlohmann::json& j, const char* key, T fallback,
      std::string_view where) {
  auto it = j.find(key);
  if (it == j.end()) return fallback;
  try {
    return it->get<T>();
  } catch (const nlohmann::json::exception&) {
    throw ConfigError(std::string(where) + "." + key + " has the wrong type");
  }
}

CampaignConfig CampaignConfigFromJson(const nlohmann::json& j);
nlohmann::ordered_json CampaignConfigToJson(const CampaignConfig& config);

nlohmann::json ParseJsonText(std::string_view text, std::string_view what);
std::string ReadTextFile(const std::string& path);

}  // namespace pcrank::internal

#endif  // PCRANK_SRC_CONFIG_JSON_H_
