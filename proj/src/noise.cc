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

#include "rmboost/noise.h"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "rmboost/error.h"
#include "rmboost/rng.h"

namespace rmboost {
namespace {

void CheckProbability(double p) {
  if (!(p >= 0.0 && p <= 1.0)) internal::ThrowInvalid("p_noise must lie in [0, 1]");
}

}  // namespace

std::string NoiseKindName(NoiseKind kind) {
  switch (kind) {
    case NoiseKind::kNone:
      return "none";
    case NoiseKind::kUniform:
      return "uniform";
    case NoiseKind::kAdversarial:
      return "adversarial";
  }
  return "none";
}

NoiseKind ParseNoiseKind(const std::string& name) {
  if (name == "none") return NoiseKind::kNone;
  if (name == "uniform" || name == "uniform_symmetric") return NoiseKind::kUniform;
  if (name == "adversarial" || name == "adversarial_margin") return NoiseKind::kAdversarial;
  internal::ThrowInvalid("unknown noise kind '" + name + "'");
}

void NoiseSpec::Validate() const { CheckProbability(p_noise); }

int AdversarialFlipCount(double p, int n) {
  CheckProbability(p);
  return std::min(n, static_cast<int>(std::ceil(p * n - 1e-9)));
}

NoiseResult InjectUniform(const Eigen::VectorXd& labels, double p, std::uint64_t seed) {
  CheckProbability(p);
  NoiseResult out{labels, {}};
  Rng rng(seed);
  for (Eigen::Index i = 0; i < labels.size(); ++i) {
    // One draw per sample regardless of p keeps streams aligned across p.
    if (rng.Uniform() < p) {
      out.labels(i) = -labels(i);
      out.flipped.push_back(static_cast<int>(i));
    }
  }
  return out;
}

std::vector<int> TopMarginIndices(const Eigen::VectorXd& margins, double p) {
  const int n = static_cast<int>(margins.size());
  const int k = AdversarialFlipCount(p, n);
  std::vector<int> idx(static_cast<size_t>(n));
  std::iota(idx.begin(), idx.end(), 0);
  std::stable_sort(idx.begin(), idx.end(),
                   [&](int a, int b) { return margins(a) > margins(b); });
  idx.resize(static_cast<size_t>(k));
  std::sort(idx.begin(), idx.end());
  return idx;
}

NoiseResult InjectAdversarial(const Dataset& data, double p, const StagewiseModel* reference) {
  CheckProbability(p);
  if (reference == nullptr) {
    internal::ThrowInvalid("adversarial noise needs a reference model");
  }
  const Eigen::VectorXd margins = data.y.cwiseProduct(reference->Scores(data.x));
  NoiseResult out{data.y, TopMarginIndices(margins, p)};
  for (int i : out.flipped) out.labels(i) = -out.labels(i);
  return out;
}

NoiseResult ApplyNoise(const NoiseSpec& spec, const Dataset& data,
                       const StagewiseModel* reference) {
  spec.Validate();
  switch (spec.kind) {
    case NoiseKind::kNone:
      return {data.y, {}};
    case NoiseKind::kUniform:
      return InjectUniform(data.y, spec.p_noise, spec.seed);
    case NoiseKind::kAdversarial:
      return InjectAdversarial(data, spec.p_noise, reference);
  }
  return {data.y, {}};
}

}  // namespace rmboost
