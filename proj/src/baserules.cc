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

#include "rmboost/baserules.h"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "rmboost/error.h"

namespace rmboost {

Eigen::VectorXd Stump::PredictAll(const FeatureMatrix& x) const {
  Eigen::VectorXd out(x.rows());
  for (Eigen::Index i = 0; i < x.rows(); ++i) out(i) = PredictRow(x, i);
  return out;
}

FeatureOrder::FeatureOrder(const FeatureMatrix& x)
    : num_rows_(static_cast<int>(x.rows())), order_(x.cols()) {
  for (int f = 0; f < static_cast<int>(x.cols()); ++f) {
    std::vector<int>& idx = order_[f];
    idx.resize(num_rows_);
    std::iota(idx.begin(), idx.end(), 0);
    std::stable_sort(idx.begin(), idx.end(),
                     [&](int a, int b) { return x(a, f) < x(b, f); });
  }
}

double BelowMinimumThreshold(double min_value) {
  return min_value - std::max(1.0, std::abs(min_value));
}

double ThresholdBetween(double lo, double hi) {
  const double mid = lo + 0.5 * (hi - lo);
  // Adjacent doubles: keep the split between the two groups.
  return mid < hi ? mid : lo;
}

std::vector<double> CandidateThresholds(const FeatureMatrix& x,
                                        const FeatureOrder& order, int f) {
  const std::vector<int>& idx = order.sorted(f);
  std::vector<double> out;
  if (idx.empty()) return out;
  out.push_back(BelowMinimumThreshold(x(idx.front(), f)));
  for (size_t p = 0; p + 1 < idx.size(); ++p) {
    const double lo = x(idx[p], f);
    const double hi = x(idx[p + 1], f);
    if (lo < hi) out.push_back(ThresholdBetween(lo, hi));
  }
  return out;
}

StumpChoice BestStump(const FeatureMatrix& x, const FeatureOrder& order,
                      const WeightedSample& sample) {
  const Eigen::Index n = x.rows();
  if (n == 0) internal::ThrowInvalid("no samples");
  if (x.cols() == 0) internal::ThrowInvalid("no features");
  if (sample.weights.size() != n || sample.pseudo_labels.size() != n ||
      order.num_rows() != n || order.num_features() != x.cols()) {
    internal::ThrowInvalid("BestStump: length mismatch");
  }
  const Eigen::VectorXd signed_weights =
      sample.weights.cwiseProduct(sample.pseudo_labels);
  // One total for every feature, so constant rules score identically.
  const double total = signed_weights.sum();

  StumpChoice best;
  bool have = false;
  auto consider = [&](int f, double threshold, double score_plus) {
    if (!have || score_plus > best.score) {
      best = {{f, threshold, 1}, score_plus};
      have = true;
    }
    if (-score_plus > best.score) best = {{f, threshold, -1}, -score_plus};
  };

  for (int f = 0; f < static_cast<int>(x.cols()); ++f) {
    const std::vector<int>& idx = order.sorted(f);
    // Below the minimum every sample is on the "greater" side.
    consider(f, BelowMinimumThreshold(x(idx.front(), f)), total);
    double prefix = 0.0;
    for (Eigen::Index p = 0; p + 1 < n; ++p) {
      prefix += signed_weights(idx[p]);
      const double lo = x(idx[p], f);
      const double hi = x(idx[p + 1], f);
      if (!(lo < hi)) continue;
      consider(f, ThresholdBetween(lo, hi), total - 2.0 * prefix);
    }
  }
  return best;
}

StumpChoice BestStump(const FeatureMatrix& x, const WeightedSample& sample) {
  if (x.rows() == 0) internal::ThrowInvalid("no samples");
  return BestStump(x, FeatureOrder(x), sample);
}

WeightedSample UpdateWeights(const Eigen::VectorXd& alpha,
                             const Eigen::VectorXd& beta,
                             const Eigen::VectorXd& labels) {
  const Eigen::Index n = labels.size();
  if (alpha.size() != n || beta.size() != n) {
    internal::ThrowInvalid("UpdateWeights: length mismatch");
  }
  WeightedSample s;
  s.weights.resize(n);
  s.pseudo_labels.resize(n);
  const double inv_n = 1.0 / static_cast<double>(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const double r = labels(i) * inv_n - (alpha(i) - beta(i));
    s.weights(i) = std::abs(r);
    s.pseudo_labels(i) = r >= 0.0 ? 1.0 : -1.0;
  }
  return s;
}

WeightedSample UniformWeights(const Eigen::VectorXd& labels) {
  const Eigen::Index n = labels.size();
  if (n == 0) internal::ThrowInvalid("no samples");
  return {Eigen::VectorXd::Constant(n, 1.0 / static_cast<double>(n)), labels};
}

}  // namespace rmboost
