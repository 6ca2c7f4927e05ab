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

// Label-noise injectors. Instances are never modified, only labels.
//
// Uniform-symmetric noise flips each label independently with probability p.
// Adversarial noise flips exactly ceil(p n) labels: those with the largest
// margins y_i * score(x_i) under a reference model fitted on clean labels.

#ifndef RMBOOST_NOISE_H_
#define RMBOOST_NOISE_H_

#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "rmboost/baselines.h"
#include "rmboost/data.h"

namespace rmboost {

enum class NoiseKind { kNone, kUniform, kAdversarial };
std::string NoiseKindName(NoiseKind kind);  // "none", "uniform", "adversarial"
NoiseKind ParseNoiseKind(const std::string& name);

struct NoiseSpec {
  NoiseKind kind = NoiseKind::kNone;
  double p_noise = 0.0;
  std::uint64_t seed = 0;  // uniform only

  void Validate() const;
};

struct NoiseResult {
  Eigen::VectorXd labels;
  std::vector<int> flipped;  // increasing
};

// ceil(p n) with products within 1e-9 of an integer taken as that integer,
// so that 0.3 * 10 flips 3 labels rather than 4.
int AdversarialFlipCount(double p, int n);

NoiseResult InjectUniform(const Eigen::VectorXd& labels, double p, std::uint64_t seed);

// Indices of the AdversarialFlipCount(p, n) largest margins; ties at the
// cutoff go to the lowest index. Returned in increasing order.
std::vector<int> TopMarginIndices(const Eigen::VectorXd& margins, double p);

// Throws InvalidInput when `reference` is null.
NoiseResult InjectAdversarial(const Dataset& data, double p, const StagewiseModel* reference);

// Dispatch on spec.kind; `reference` is read only for adversarial noise.
NoiseResult ApplyNoise(const NoiseSpec& spec, const Dataset& data,
                       const StagewiseModel* reference = nullptr);

}  // namespace rmboost

#endif  // RMBOOST_NOISE_H_
