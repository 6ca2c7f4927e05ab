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

#ifndef RMBOOST_BASERULES_H_
#define RMBOOST_BASERULES_H_

#include <span>
#include <vector>

#include <Eigen/Dense>

namespace rmboost {

// Instances are the rows of an n x d matrix.
using FeatureMatrix = Eigen::MatrixXd;

// Decision stump: polarity if x[feature] > threshold, -polarity otherwise.
// The family is closed under negation through the polarity.
struct Stump {
  int feature = 0;
  double threshold = 0.0;
  int polarity = 1;

  int Predict(std::span<const double> x) const {
    return x[feature] > threshold ? polarity : -polarity;
  }
  int PredictRow(const FeatureMatrix& x, Eigen::Index row) const {
    return x(row, feature) > threshold ? polarity : -polarity;
  }
  // Prediction vector over every row of x.
  Eigen::VectorXd PredictAll(const FeatureMatrix& x) const;

  Stump Negated() const { return {feature, threshold, -polarity}; }

  friend bool operator==(const Stump&, const Stump&) = default;
};

// Weighted, relabeled sample presented to the base learner.
struct WeightedSample {
  Eigen::VectorXd weights;        // w >= 0
  Eigen::VectorXd pseudo_labels;  // in {-1, +1}
};

// Per-feature sort of the rows, reused across boosting rounds.
class FeatureOrder {
 public:
  explicit FeatureOrder(const FeatureMatrix& x);

  int num_features() const { return static_cast<int>(order_.size()); }
  int num_rows() const { return num_rows_; }
  // Row indices of feature f in nondecreasing value order (ties by index).
  const std::vector<int>& sorted(int f) const { return order_[f]; }

 private:
  int num_rows_ = 0;
  std::vector<std::vector<int>> order_;
};

// Threshold used for the two constant rules of a feature whose smallest
// observed value is `min_value`.
double BelowMinimumThreshold(double min_value);

// Split point between consecutive distinct values lo < hi: the midpoint,
// or lo when no double lies strictly between them.
double ThresholdBetween(double lo, double hi);

// Every threshold the base learner considers for feature f, increasing.
std::vector<double> CandidateThresholds(const FeatureMatrix& x,
                                        const FeatureOrder& order, int f);

struct StumpChoice {
  Stump stump;
  double score = 0.0;  // sum_i w_i * pseudo_label_i * stump(x_i)
};

// Exact maximizer of sum_i w_i y~_i s(x_i) over all stumps. Ties go to the
// lowest feature, then the lowest threshold, then polarity +1. Throws
// InvalidInput on an empty sample or mismatched lengths.
StumpChoice BestStump(const FeatureMatrix& x, const FeatureOrder& order,
                      const WeightedSample& sample);
StumpChoice BestStump(const FeatureMatrix& x, const WeightedSample& sample);

// w_i = |y_i/n - (alpha_i - beta_i)|, y~_i = sign(same) with sign(0) = +1.
WeightedSample UpdateWeights(const Eigen::VectorXd& alpha,
                             const Eigen::VectorXd& beta,
                             const Eigen::VectorXd& labels);

// Initial sample of the column-generation loop: w = 1/n, y~ = y.
WeightedSample UniformWeights(const Eigen::VectorXd& labels);

}  // namespace rmboost

#endif  // RMBOOST_BASERULES_H_
