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

// Stagewise additive baselines on stumps: discrete AdaBoost (exponential
// potential) and two-class LogitBoost (logistic potential, Newton steps).

#ifndef RMBOOST_BASELINES_H_
#define RMBOOST_BASELINES_H_

#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "rmboost/baserules.h"
#include "rmboost/data.h"

namespace rmboost {

// left_value if x[feature] <= threshold, right_value otherwise.
struct RegressionStump {
  int feature = 0;
  double threshold = 0.0;
  double left_value = 0.0;
  double right_value = 0.0;

  double Predict(std::span<const double> x) const {
    return x[feature] > threshold ? right_value : left_value;
  }
  double PredictRow(const FeatureMatrix& x, Eigen::Index row) const {
    return x(row, feature) > threshold ? right_value : left_value;
  }
  friend bool operator==(const RegressionStump&, const RegressionStump&) = default;
};

enum class BaselineKind { kAdaBoost, kLogitBoost };
std::string BaselineKindName(BaselineKind kind);  // "adaboost" / "logitboost"
BaselineKind ParseBaselineKind(const std::string& name);

struct StagewiseModel {
  BaselineKind kind = BaselineKind::kAdaBoost;
  // AdaBoost: score = sum_t coefficients[t] * stumps[t](x), coefficients > 0.
  std::vector<Stump> stumps;
  std::vector<double> coefficients;
  // LogitBoost: score = sum_t regression_stumps[t](x) / 2.
  std::vector<RegressionStump> regression_stumps;
  int rounds = 0;

  // Weighted 0-1 error of each accepted AdaBoost stump; not serialized.
  std::vector<double> weighted_errors;

  double Score(std::span<const double> x) const;
  Eigen::VectorXd Scores(const FeatureMatrix& x) const;
};

inline constexpr int kDefaultBaselineRounds = 200;

StagewiseModel FitAdaBoost(const Dataset& data, int rounds = kDefaultBaselineRounds);
StagewiseModel FitLogitBoost(const Dataset& data, int rounds = kDefaultBaselineRounds);
StagewiseModel FitBaseline(BaselineKind kind, const Dataset& data,
                           int rounds = kDefaultBaselineRounds);

// sign of the additive score, sign(0) = +1.
int PredictBaseline(const StagewiseModel& model, std::span<const double> x);

// Weighted least-squares regression stump for responses z with weights w;
// thresholds as in CandidateThresholds, an empty side gets value 0. Ties go
// to the lowest feature, then the lowest threshold.
RegressionStump FitRegressionStump(const FeatureMatrix& x, const FeatureOrder& order,
                                   const Eigen::VectorXd& z, const Eigen::VectorXd& w);

}  // namespace rmboost

#endif  // RMBOOST_BASELINES_H_
