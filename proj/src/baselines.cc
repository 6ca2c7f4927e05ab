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

#include "rmboost/baselines.h"

#include <algorithm>
#include <cmath>

#include "rmboost/error.h"

namespace rmboost {
namespace {

constexpr double kErrorFloor = 1e-10;
constexpr double kResponseClip = 4.0;
constexpr double kWeightFloor = 1e-10;

void CheckFitInput(const Dataset& data, int rounds) {
  data.Validate();
  if (data.num_samples() == 0) internal::ThrowInvalid("no samples");
  if (data.num_features() == 0) internal::ThrowInvalid("no features");
  if (rounds < 1) internal::ThrowInvalid("rounds must be >= 1");
}

}  // namespace

std::string BaselineKindName(BaselineKind kind) {
  return kind == BaselineKind::kAdaBoost ? "adaboost" : "logitboost";
}

BaselineKind ParseBaselineKind(const std::string& name) {
  if (name == "adaboost") return BaselineKind::kAdaBoost;
  if (name == "logitboost") return BaselineKind::kLogitBoost;
  internal::ThrowInvalid("unknown baseline '" + name + "'");
}

double StagewiseModel::Score(std::span<const double> x) const {
  double s = 0.0;
  for (size_t t = 0; t < stumps.size(); ++t) s += coefficients[t] * stumps[t].Predict(x);
  for (const RegressionStump& r : regression_stumps) s += 0.5 * r.Predict(x);
  return s;
}

Eigen::VectorXd StagewiseModel::Scores(const FeatureMatrix& x) const {
  Eigen::VectorXd s = Eigen::VectorXd::Zero(x.rows());
  for (size_t t = 0; t < stumps.size(); ++t) s += coefficients[t] * stumps[t].PredictAll(x);
  for (const RegressionStump& r : regression_stumps) {
    for (Eigen::Index i = 0; i < x.rows(); ++i) s(i) += 0.5 * r.PredictRow(x, i);
  }
  return s;
}

StagewiseModel FitAdaBoost(const Dataset& data, int rounds) {
  CheckFitInput(data, rounds);
  const int n = data.num_samples();
  const FeatureOrder order(data.x);
  StagewiseModel model;
  model.kind = BaselineKind::kAdaBoost;
  WeightedSample sample = UniformWeights(data.y);

  for (int t = 0; t < rounds; ++t) {
    // Largest edge sum_i D_i y_i s(x_i) is the smallest weighted error.
    const Stump stump = BestStump(data.x, order, sample).stump;
    const Eigen::VectorXd pred = stump.PredictAll(data.x);
    double error = 0.0;
    for (int i = 0; i < n; ++i) {
      if (pred(i) != data.y(i)) error += sample.weights(i);
    }
    if (error >= 0.5 - kErrorFloor) break;
    const bool perfect = error < kErrorFloor;
    const double eps = std::max(error, kErrorFloor);
    const double alpha = 0.5 * std::log((1.0 - eps) / eps);
    model.stumps.push_back(stump);
    model.coefficients.push_back(alpha);
    model.weighted_errors.push_back(error);
    model.rounds = t + 1;
    if (perfect) break;
    for (int i = 0; i < n; ++i) sample.weights(i) *= std::exp(-alpha * data.y(i) * pred(i));
    sample.weights /= sample.weights.sum();
  }
  return model;
}

RegressionStump FitRegressionStump(const FeatureMatrix& x, const FeatureOrder& order,
                                   const Eigen::VectorXd& z, const Eigen::VectorXd& w) {
  const Eigen::Index n = x.rows();
  if (n == 0) internal::ThrowInvalid("no samples");
  if (z.size() != n || w.size() != n) internal::ThrowInvalid("FitRegressionStump: length mismatch");
  const double total_w = w.sum();
  const double total_wz = w.dot(z);

  // Minimizing the weighted squared error is maximizing
  // S_L^2 / W_L + S_R^2 / W_R with S = sum w z and W = sum w per side.
  auto gain = [](double s, double weight) { return weight > 0.0 ? s * s / weight : 0.0; };
  auto mean = [](double s, double weight) { return weight > 0.0 ? s / weight : 0.0; };

  RegressionStump best;
  double best_gain = -1.0;
  for (int f = 0; f < static_cast<int>(x.cols()); ++f) {
    const std::vector<int>& idx = order.sorted(f);
    const double g0 = gain(total_wz, total_w);
    if (g0 > best_gain) {
      best_gain = g0;
      best = {f, BelowMinimumThreshold(x(idx.front(), f)), 0.0, mean(total_wz, total_w)};
    }
    double left_w = 0.0, left_wz = 0.0;
    for (Eigen::Index p = 0; p + 1 < n; ++p) {
      left_w += w(idx[p]);
      left_wz += w(idx[p]) * z(idx[p]);
      const double lo = x(idx[p], f);
      const double hi = x(idx[p + 1], f);
      if (!(lo < hi)) continue;
      const double right_w = total_w - left_w, right_wz = total_wz - left_wz;
      const double g = gain(left_wz, left_w) + gain(right_wz, right_w);
      if (g > best_gain) {
        best_gain = g;
        best = {f, ThresholdBetween(lo, hi), mean(left_wz, left_w), mean(right_wz, right_w)};
      }
    }
  }
  return best;
}

StagewiseModel FitLogitBoost(const Dataset& data, int rounds) {
  CheckFitInput(data, rounds);
  const int n = data.num_samples();
  const FeatureOrder order(data.x);
  StagewiseModel model;
  model.kind = BaselineKind::kLogitBoost;
  Eigen::VectorXd f = Eigen::VectorXd::Zero(n);
  Eigen::VectorXd z(n), w(n);

  for (int t = 0; t < rounds; ++t) {
    for (int i = 0; i < n; ++i) {
      const double p = 1.0 / (1.0 + std::exp(-2.0 * f(i)));
      const double target = data.y(i) > 0 ? 1.0 : 0.0;
      w(i) = std::max(p * (1.0 - p), kWeightFloor);
      z(i) = std::clamp((target - p) / w(i), -kResponseClip, kResponseClip);
    }
    const RegressionStump stump = FitRegressionStump(data.x, order, z, w);
    model.regression_stumps.push_back(stump);
    model.rounds = t + 1;
    for (int i = 0; i < n; ++i) f(i) += 0.5 * stump.PredictRow(data.x, i);
  }
  return model;
}

StagewiseModel FitBaseline(BaselineKind kind, const Dataset& data, int rounds) {
  return kind == BaselineKind::kAdaBoost ? FitAdaBoost(data, rounds)
                                         : FitLogitBoost(data, rounds);
}

int PredictBaseline(const StagewiseModel& model, std::span<const double> x) {
  return model.Score(x) >= 0.0 ? 1 : -1;
}

}  // namespace rmboost
