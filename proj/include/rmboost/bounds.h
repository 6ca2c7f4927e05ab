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

// Finite-sample error bounds, as diagnostics. Nothing in the learner reads
// these. Logarithms are natural except in VcBoundTrees, which is base 2.
//
// Arguments follow one naming scheme: n samples, vc_dim the VC dimension of
// the base-rule family, delta the confidence parameter, l1 = ||mu||_1.

#ifndef RMBOOST_BOUNDS_H_
#define RMBOOST_BOUNDS_H_

#include <optional>

#include "rmboost/error.h"

namespace rmboost {

struct BoundInputs {
  int n = 1;
  int vc_dim = 1;
  double delta = 0.05;
  double p_noise = 0.0;
  double lambda = 0.0;
  double l1_mu = 0.0;
  double round_risk = 0.5;  // R^(k)
  std::optional<double> var_rho;

  // InvalidInput unless n >= 1, vc_dim >= 1, 0 < delta < 1, 0 <= p_noise < 1.
  void Validate() const;
};

// 2 sqrt(2 D ln(3n/D) / n) + sqrt(ln(2/delta) / (2n)).
// VacuousBound when 3n/D <= 1.
double EstErrorBound(int n, int vc_dim, double delta);

// 0 when l1 <= 1/2; otherwise
// 2 l1 sqrt(2 D ln(3n/D) / n) + (l1 - 1/2) sqrt(ln(1/delta) / (2n)).
// Discontinuous at l1 = 1/2 by construction.
double EpsilonDelta(double l1, int n, int vc_dim, double delta);

// R_k + eps_delta + (eps_est + 2 p_noise - lambda) l1.
double RoundErrorBound(double round_risk, double eps_delta, double eps_est,
                       double p_noise, double lambda, double l1);

// (2t + 1) log2(d + 2) for trees with t internal nodes on d features.
double VcBoundTrees(int t_nodes, int d);

struct NoiseBounds {
  double bound10 = 0.0;
  double bound11 = 0.0;
};

// Excess-risk terms under label noise, with l1_gap = ||mu - mu_o||_1:
//   bound10 = eps_opt + (eps_est + 2 p_noise + lambda) l1_gap
//   bound11 = [eps_opt + (eps_est + 2 sqrt(var_rho) + lambda) l1_gap] / (1 - 2 p_noise)
// VacuousBound for bound11 when p_noise >= 1/2.
NoiseBounds NoiseTheoremBounds(double eps_opt, double eps_est, double p_noise,
                               double lambda, double l1_gap, double var_rho);

// (max_pricing_score - lambda)_+ * l1_mu_star + eps_delta.
double EarlyTerminationBound(double max_pricing_score, double lambda, double l1_mu_star,
                             double eps_delta);

struct BoundReport {
  double eps_est = 0.0;
  double eps_delta = 0.0;
  double round_bound = 0.0;
};

// EstErrorBound, EpsilonDelta and RoundErrorBound for one fitted model.
BoundReport ComputeBounds(const BoundInputs& in);

}  // namespace rmboost

#endif  // RMBOOST_BOUNDS_H_
