// Copyright 2026 The RMBoost Authors
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

// Versioned JSON documents for fitted models.
//
//   {"version": 1, "model_kind": "rmboost", "lambda": ..., "rules":
//    [{"feature", "threshold", "polarity"}], "mu": [...], "minimax_risk": ...,
//    "rounds_run": ..., "terminated_by_break": ...}
//
// Baselines share the envelope with model_kind "adaboost" (rules carry a
// "coefficient") or "logitboost" (rules carry "left_value"/"right_value").
// Doubles are written in shortest round-trip form, so a save/load cycle
// reproduces every score bit-exactly.

#ifndef RMBOOST_SERIALIZATION_H_
#define RMBOOST_SERIALIZATION_H_

#include <optional>
#include <string>

#include <nlohmann/json.hpp>

#include "rmboost/baselines.h"
#include "rmboost/learner.h"

namespace rmboost {

inline constexpr int kModelFormatVersion = 1;

nlohmann::json ModelToJson(const RmbModel& model);
nlohmann::json ModelToJson(const StagewiseModel& model);
RmbModel RmbModelFromJson(const nlohmann::json& doc);
StagewiseModel StagewiseModelFromJson(const nlohmann::json& doc);

// Either model kind, as read back from disk.
struct AnyModel {
  std::optional<RmbModel> rmboost;
  std::optional<StagewiseModel> baseline;

  std::string kind() const;
  Eigen::VectorXd Scores(const FeatureMatrix& x) const;
  // Largest feature index any rule reads, or -1 for an empty model.
  int max_feature() const;
};

AnyModel AnyModelFromJson(const nlohmann::json& doc);

void SaveModel(const nlohmann::json& doc, const std::string& path);
AnyModel LoadModel(const std::string& path);

// Columns: round, R_k, l1_norm_mu, n_rules, pricing_score.
std::string FormatHistoryTsv(const RmbModel& model);

}  // namespace rmboost

#endif  // RMBOOST_SERIALIZATION_H_
