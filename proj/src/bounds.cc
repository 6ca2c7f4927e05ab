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

#include "rmboost/bounds.h"

#include <algorithm>
#include <cmath>
#include <string>

namespace rmboost {
namespace {

void CheckSampleTerms(int n, int vc_dim, double delta) {
  if (n < 1) internal::ThrowInvalid("n must be >= 1");
  if (vc_dim < 1) internal::ThrowInvalid("VC dimension must be >= 1");
  if (!(delta > 0.0 && delta < 1.0)) internal::ThrowInvalid("delta must lie in (0, 1)");
  if (3.0 * n / vc_dim <= 1.0) {
    throw VacuousBound("bound vacuous: 3n/D = " + std::to_string(3.0 * n / vc_dim) + " <= 1");
  }
}

// sqrt(2 D ln(3n/D) / n)
double ComplexityTerm(int n, int vc_dim) {
  const double nd = n, d = vc_dim;
  return std::sqrt(2.0 * d * std::log(3.0 * nd / d) / nd);
}

}  // namespace

void BoundInputs::Validate() const {
  if (n < 1) internal::ThrowInvalid("n must be >= 1");
  if (vc_dim < 1) internal::ThrowInvalid("VC dimension must be >= 1");
  if (!(delta > 0.0 && delta < 1.0)) internal::ThrowInvalid("delta must lie in (0, 1)");
  if (!(p_noise >= 0.0 && p_noise < 1.0)) internal::ThrowInvalid("p_noise must lie in [0, 1)");
  if (!(l1_mu >= 0.0)) internal::ThrowInvalid("l1_mu must be >= 0");
  if (var_rho && !(*var_rho >= 0.0)) internal::ThrowInvalid("var_rho must be >= 0");
}

double EstErrorBound(int n, int vc_dim, double delta) {
  CheckSampleTerms(n, vc_dim, delta);
  return 2.0 * ComplexityTerm(n, vc_dim) + std::sqrt(std::log(2.0 / delta) / (2.0 * n));
}

double EpsilonDelta(double l1, int n, int vc_dim, double delta) {
  CheckSampleTerms(n, vc_dim, delta);
  if (!(l1 >= 0.0)) internal::ThrowInvalid("l1 must be >= 0");
  if (l1 <= 0.5) return 0.0;
  return 2.0 * l1 * ComplexityTerm(n, vc_dim) +
         (l1 - 0.5) * std::sqrt(std::log(1.0 / delta) / (2.0 * n));
}

double RoundErrorBound(double round_risk, double eps_delta, double eps_est,
                       double p_noise, double lambda, double l1) {
  return round_risk + eps_delta + (eps_est + 2.0 * p_noise - lambda) * l1;
}

double VcBoundTrees(int t_nodes, int d) {
  if (t_nodes < 1 || d < 1) internal::ThrowInvalid("t_nodes and d must be >= 1");
  return (2.0 * t_nodes + 1.0) * std::log2(d + 2.0);
}

NoiseBounds NoiseTheoremBounds(double eps_opt, double eps_est, double p_noise,
                               double lambda, double l1_gap, double var_rho) {
  if (!(var_rho >= 0.0)) internal::ThrowInvalid("var_rho must be >= 0");
  if (p_noise >= 0.5) {
    throw VacuousBound("bound vacuous: p_noise = " + std::to_string(p_noise) + " >= 1/2");
  }
  NoiseBounds b;
  b.bound10 = eps_opt + (eps_est + 2.0 * p_noise + lambda) * l1_gap;
  b.bound11 = (eps_opt + (eps_est + 2.0 * std::sqrt(var_rho) + lambda) * l1_gap) /
              (1.0 - 2.0 * p_noise);
  return b;
}

double EarlyTerminationBound(double max_pricing_score, double lambda, double l1_mu_star,
                             double eps_delta) {
  return std::max(max_pricing_score - lambda, 0.0) * l1_mu_star + eps_delta;
}

BoundReport ComputeBounds(const BoundInputs& in) {
  in.Validate();
  BoundReport r;
  r.eps_est = EstErrorBound(in.n, in.vc_dim, in.delta);
  r.eps_delta = EpsilonDelta(in.l1_mu, in.n, in.vc_dim, in.delta);
  r.round_bound =
      RoundErrorBound(in.round_risk, r.eps_delta, r.eps_est, in.p_noise, in.lambda, in.l1_mu);
  return r;
}

}  // namespace rmboost
