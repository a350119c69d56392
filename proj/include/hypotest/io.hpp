// Copyright 2026 The hypotest Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdio>
#include <string>
#include <vector>

#include "json.hpp"

#include "hypotest/distribution.hpp"
#include "hypotest/errors.hpp"

namespace hypotest {

// 17 significant digits round-trips doubles exactly; all emitted numbers
// (JSON and CSV) go through this so identical runs are byte-identical.
inline std::string fmt17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

inline std::string json_number_array(const std::vector<double>& xs) {
  std::string s = "[";
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i) s += ",";
    s += fmt17(xs[i]);
  }
  return s + "]";
}

// Single distribution: {"labels": [...], "masses": [...]}; labels optional.
inline Distribution distribution_from_json(const nlohmann::json& j) {
  if (!j.contains("masses")) fail(errc::dimension_mismatch, "missing 'masses' array");
  std::vector<double> masses = j.at("masses").get<std::vector<double>>();
  if (j.contains("labels")) {
    std::vector<std::string> labels;
    for (const auto& l : j.at("labels")) labels.push_back(l.is_string() ? l.get<std::string>() : l.dump());
    return Distribution::validate(std::move(labels), std::move(masses));
  }
  return Distribution::validate(std::move(masses));
}

// Pair input for the CLI: {"labels": [...], "p": [...], "q": [...]}.
struct PairInput {
  Distribution p;
  Distribution q;
};

inline PairInput pair_from_json(const nlohmann::json& j) {
  if (!j.contains("p") || !j.contains("q")) fail(errc::dimension_mismatch, "input needs 'p' and 'q' arrays");
  std::vector<double> p = j.at("p").get<std::vector<double>>();
  std::vector<double> q = j.at("q").get<std::vector<double>>();
  if (j.contains("labels")) {
    std::vector<std::string> labels;
    for (const auto& l : j.at("labels")) labels.push_back(l.is_string() ? l.get<std::string>() : l.dump());
    std::vector<std::string> labels_q = labels;
    return {Distribution::validate(std::move(labels), std::move(p)),
            Distribution::validate(std::move(labels_q), std::move(q))};
  }
  return {Distribution::validate(std::move(p)), Distribution::validate(std::move(q))};
}

}  // namespace hypotest
