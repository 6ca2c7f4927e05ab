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

#include "rmboost/learner.h"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace rmboost {
namespace {

std::string DumpRound(int round, const std::vector<Stump>& rules,
                      const linprog::LpSolution& s, double lambda, int n) {
  std::ostringstream out;
  out << "master LP failed at round " << round << " (status "
      << linprog::LpStatusName(s.status) << ", " << s.pivots
      << " pivots); n=" << n << " lambda=" << lambda << " rules=" << rules.size()
      << " basis=" << s.basis.columns.size() << "\n";
  for (size_t j = 0; j < rules.size(); ++j) {
    out << "  rule " << j << ": feature " << rules[j].feature << " threshold "
        << rules[j].threshold << " polarity " << rules[j].polarity << "\n";
  }
  return out.str();
}

}  // namespace

double RmbConfig::ResolveLambda(int n) const {
  if (lambda.has_value()) return *lambda;
  return 1.0 / std::sqrt(static_cast<double>(n));
}

void RmbConfig::Validate() const {
  if (lambda.has_value() && !(*lambda > 0.0)) internal::ThrowInvalid("lambda must be > 0");
  if (max_rounds < 1) internal::ThrowInvalid("max_rounds must be >= 1");
  if (!(break_tolerance >= 0.0)) internal::ThrowInvalid("break_tolerance must be >= 0");
}

double RmbModel::Score(std::span<const double> x) const {
  double s = 0.0;
  for (size_t j = 0; j < rules.size(); ++j) s += mu(static_cast<Eigen::Index>(j)) * rules[j].Predict(x);
  return s;
}

Eigen::VectorXd RmbModel::Scores(const FeatureMatrix& x) const {
  Eigen::VectorXd s = Eigen::VectorXd::Zero(x.rows());
  for (size_t j = 0; j < rules.size(); ++j) {
    s += mu(static_cast<Eigen::Index>(j)) * rules[j].PredictAll(x);
  }
  return s;
}

RmbModel FitRmboost(const Dataset& data, const RmbConfig& config) {
  config.Validate();
  data.Validate();
  const int n = data.num_samples();
  if (n < 1) internal::ThrowInvalid("no samples");
  const double lambda = config.ResolveLambda(n);
  const double tol = config.break_tolerance;

  const FeatureOrder order(data.x);
  RmbModel model;
  model.lambda = lambda;
  model.mu.resize(0);

  linprog::LpProblem master;
  master.labels = data.y;
  master.lambda = lambda;
  master.columns.resize(n, 0);
  std::optional<linprog::LpBasis> basis;

  WeightedSample sample = UniformWeights(data.y);
  StumpChoice choice;
  bool priced = false;  // `choice` reflects the current sample

  for (int k = 1; k <= config.max_rounds; ++k) {
    choice = BestStump(data.x, order, sample);
    priced = true;
    if (choice.score <= lambda + tol) {
      model.terminated_by_break = true;
      break;
    }
    // An optimally solved master already satisfies the dual constraint of
    // every rule it holds, so a repeat only shows up through tolerances.
    const auto repeats = [&](const Stump& r) {
      return r == choice.stump || r == choice.stump.Negated();
    };
    if (std::any_of(model.rules.begin(), model.rules.end(), repeats)) {
      model.terminated_by_break = true;
      break;
    }

    model.rules.push_back(choice.stump);
    const int t = static_cast<int>(model.rules.size());
    master.columns.conservativeResize(Eigen::NoChange, t);
    master.columns.col(t - 1) = choice.stump.PredictAll(data.x);

    linprog::LpSolution solution = linprog::SolveMaster(master, basis, config.lp);
    if (solution.status == linprog::LpStatus::kIterationLimit) {
      linprog::SolveOptions bland = config.lp;
      bland.force_bland = true;
      solution = linprog::SolveMaster(master, std::nullopt, bland);
    }
    if (solution.status != linprog::LpStatus::kOptimal) {
      throw FitAborted(DumpRound(k, model.rules, solution, lambda, n));
    }
    priced = false;

    model.mu = solution.mu();
    model.minimax_risk = solution.objective;
    model.rounds_run = k;
    sample = UpdateWeights(solution.alpha, solution.beta, data.y);
    basis = solution.basis;

    RoundRecord record;
    record.round = k;
    record.minimax_risk = solution.objective;
    record.l1_norm = model.mu.lpNorm<1>();
    record.pricing_score = choice.score;
    record.pivots = solution.pivots;
    record.warm_started = solution.warm_started;

    if (config.prune) {
      const Eigen::VectorXd signed_weights = sample.weights.cwiseProduct(sample.pseudo_labels);
      std::vector<int> old_to_new(static_cast<size_t>(t), -1);
      std::vector<int> keep;
      for (int j = 0; j < t; ++j) {
        const double price = master.columns.col(j).dot(signed_weights);
        const double coef = std::abs(model.mu(j));
        if (std::abs(price) < lambda - tol) {
          // Strictly satisfied dual constraint: the rule must carry a zero
          // coefficient by complementary slackness.
          if (coef > 10.0 * tol) {
            throw InternalError("pruning rule " + std::to_string(j) + " with |mu| = " +
                                std::to_string(coef) + " at round " + std::to_string(k));
          }
          ++record.pruned;
          record.max_pruned_abs_mu = std::max(record.max_pruned_abs_mu, coef);
          continue;
        }
        old_to_new[static_cast<size_t>(j)] = static_cast<int>(keep.size());
        keep.push_back(j);
      }
      if (static_cast<int>(keep.size()) < t) {
        std::vector<Stump> rules;
        Eigen::MatrixXd columns(n, static_cast<Eigen::Index>(keep.size()));
        Eigen::VectorXd mu(static_cast<Eigen::Index>(keep.size()));
        for (size_t q = 0; q < keep.size(); ++q) {
          rules.push_back(model.rules[static_cast<size_t>(keep[q])]);
          columns.col(static_cast<Eigen::Index>(q)) = master.columns.col(keep[q]);
          mu(static_cast<Eigen::Index>(q)) = model.mu(keep[q]);
        }
        model.rules = std::move(rules);
        master.columns = std::move(columns);
        model.mu = std::move(mu);
        if (!basis->RemapRules(old_to_new)) basis.reset();
      }
    }
    record.num_rules = static_cast<int>(model.rules.size());
    model.history.push_back(record);
  }

  model.final_sample = sample;
  model.final_pricing_score =
      priced ? choice.score : BestStump(data.x, order, sample).score;
  return model;
}

double ObjectiveF(std::span<const Stump> rules, const Eigen::VectorXd& mu,
                  const Dataset& data, double lambda) {
  if (static_cast<Eigen::Index>(rules.size()) != mu.size()) {
    internal::ThrowInvalid("ObjectiveF: mu not aligned with rules");
  }
  const int n = data.num_samples();
  Eigen::VectorXd scores = Eigen::VectorXd::Zero(n);
  for (size_t j = 0; j < rules.size(); ++j) {
    scores += mu(static_cast<Eigen::Index>(j)) * rules[j].PredictAll(data.x);
  }
  return 0.5 - data.y.dot(scores) / n + lambda * mu.lpNorm<1>();
}

double ObjectiveF(const RmbModel& model, const Dataset& data, double lambda) {
  return ObjectiveF(model.rules, model.mu, data, lambda);
}

double RandomizedFromScore(double score) { return std::clamp(score + 0.5, 0.0, 1.0); }

int DeterministicFromScore(double score) { return score >= 0.0 ? 1 : -1; }

double PredictRandomized(const RmbModel& model, std::span<const double> x) {
  return RandomizedFromScore(model.Score(x));
}

int PredictDeterministic(const RmbModel& model, std::span<const double> x) {
  return DeterministicFromScore(model.Score(x));
}

double EpsilonOptDiagnostic(const RmbModel& model, const Dataset& train,
                            const Dataset& holdout, double lambda,
                            std::optional<double> reference_risk) {
  const double reference = reference_risk.value_or(model.minimax_risk);
  const double value_gap = std::max(ObjectiveF(model, train, lambda) - reference, 0.0);
  double violation = 0.0;
  if (holdout.num_samples() > 0) {
    const Eigen::VectorXd scores = model.Scores(holdout.x);
    for (Eigen::Index i = 0; i < scores.size(); ++i) {
      violation += std::max(std::abs(scores(i)) - 0.5, 0.0);
    }
    violation /= holdout.num_samples();
  }
  return value_gap + violation;
}

std::vector<Stump> EnumerateStumps(const FeatureMatrix& x) {
  const FeatureOrder order(x);
  std::vector<Stump> out;
  for (int f = 0; f < static_cast<int>(x.cols()); ++f) {
    for (double thr : CandidateThresholds(x, order, f)) out.push_back({f, thr, 1});
  }
  return out;
}

}  // namespace rmboost
