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

// Robust minimax boosting by column generation.
//
// Each round the base learner returns the stump with the largest weighted
// edge sum_i w_i y~_i s(x_i). If the edge does not exceed lambda (plus the
// outer tolerance) no dual constraint is violated and the current master is
// optimal over the whole stump family. Otherwise the stump joins the master
// with a zero coefficient, the master is re-solved from the previous basis,
// the sample is reweighted from the row duals, and rules whose dual
// constraint is strictly satisfied are dropped.

#ifndef RMBOOST_LEARNER_H_
#define RMBOOST_LEARNER_H_

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "rmboost/baserules.h"
#include "rmboost/data.h"
#include "rmboost/error.h"
#include "rmboost/linprog.h"

namespace rmboost {

struct RmbConfig {
  // Unset means 1/sqrt(n) for the training size n.
  std::optional<double> lambda;
  int max_rounds = 200;
  // Outer tolerance of the break and prune tests.
  double break_tolerance = 1e-3;
  bool prune = true;
  std::uint64_t seed = 0;
  linprog::SolveOptions lp;

  double ResolveLambda(int n) const;
  void Validate() const;
};

struct RoundRecord {
  int round = 0;
  double minimax_risk = 0.5;  // R^(k)
  double l1_norm = 0.0;       // ||mu^(k)||_1
  int num_rules = 0;          // after pruning
  double pricing_score = 0.0; // edge of the entering stump
  int pivots = 0;
  bool warm_started = false;
  int pruned = 0;
  double max_pruned_abs_mu = 0.0;
};

struct RmbModel {
  double lambda = 0.0;
  std::vector<Stump> rules;
  Eigen::VectorXd mu;
  double minimax_risk = 0.5;
  int rounds_run = 0;
  bool terminated_by_break = false;
  std::vector<RoundRecord> history;

  // Training-time diagnostics; not serialized.
  WeightedSample final_sample;
  // Largest edge over the whole stump family under final_sample.
  double final_pricing_score = 0.0;

  double Score(std::span<const double> x) const;
  Eigen::VectorXd Scores(const FeatureMatrix& x) const;
  double l1_norm() const { return mu.lpNorm<1>(); }
};

// Raised when the master cannot be solved even with Bland's rule; the
// message carries a dump of the round state.
class FitAborted : public Error {
 public:
  using Error::Error;
};

RmbModel FitRmboost(const Dataset& data, const RmbConfig& config = {});

// F(mu) = 1/2 - (1/n) sum_i y_i score(x_i) + lambda ||mu||_1.
double ObjectiveF(std::span<const Stump> rules, const Eigen::VectorXd& mu,
                  const Dataset& data, double lambda);
double ObjectiveF(const RmbModel& model, const Dataset& data, double lambda);

// Probability of label +1 under the randomized rule: clip(score + 1/2).
double PredictRandomized(const RmbModel& model, std::span<const double> x);
// sign(score), sign(0) = +1.
int PredictDeterministic(const RmbModel& model, std::span<const double> x);

double RandomizedFromScore(double score);
int DeterministicFromScore(double score);

// Empirical stand-in for the suboptimality functional: (F(mu) - R_ref)_+ on
// the training data plus the holdout mean of (|score| - 1/2)_+. R_ref
// defaults to the model's minimax risk.
double EpsilonOptDiagnostic(const RmbModel& model, const Dataset& train,
                            const Dataset& holdout, double lambda,
                            std::optional<double> reference_risk = std::nullopt);

// Every distinct stump the base learner can return on `x` with polarity +1
// (negations are covered by the sign of the coefficient).
std::vector<Stump> EnumerateStumps(const FeatureMatrix& x);

}  // namespace rmboost

#endif  // RMBOOST_LEARNER_H_
