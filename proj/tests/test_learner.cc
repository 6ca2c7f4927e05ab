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

#include <cmath>
#include <random>

#include "doctest.h"
#include "oracles/full_lp.h"
#include "rmboost/error.h"
#include "rmboost/learner.h"

namespace rmboost {
namespace {

Dataset Separable1D() {
  Dataset d;
  d.name = "sep";
  d.x.resize(10, 1);
  d.y.resize(10);
  for (int i = 0; i < 10; ++i) {
    d.x(i, 0) = i + 1;
    d.y(i) = (i + 1) > 5.5 ? 1.0 : -1.0;
  }
  return d;
}

Dataset Alternating(int n) {
  Dataset d;
  d.name = "alt";
  d.x.resize(n, 1);
  d.y.resize(n);
  for (int i = 0; i < n; ++i) {
    d.x(i, 0) = i;
    d.y(i) = i % 2 == 0 ? 1.0 : -1.0;
  }
  return d;
}

int TrainingErrors(const RmbModel& m, const Dataset& d) {
  const Eigen::VectorXd s = m.Scores(d.x);
  int errors = 0;
  for (int i = 0; i < d.num_samples(); ++i) errors += DeterministicFromScore(s(i)) != d.y(i);
  return errors;
}

TEST_SUITE("learner") {

TEST_CASE("separable 1-D data") {
  const Dataset d = Separable1D();
  RmbConfig config;
  config.lambda = 0.1;
  const RmbModel m = FitRmboost(d, config);
  CHECK(m.terminated_by_break);
  REQUIRE_FALSE(m.history.empty());
  CHECK(std::abs(m.history.front().minimax_risk - 0.05) <= 1e-12);
  CHECK(TrainingErrors(m, d) == 0);
  CHECK(m.minimax_risk <= 0.05 + 1e-9);
  CHECK(std::abs(m.minimax_risk - oracle::FullLpOptimum(d, 0.1)) <= 10 * config.break_tolerance);
  CHECK(m.lambda == 0.1);
}

TEST_CASE("break at the first round gives the empty ensemble") {
  const Dataset d = Alternating(100);  // best edge 0.02, lambda 0.1
  const RmbModel m = FitRmboost(d);
  CHECK(m.lambda == doctest::Approx(0.1));
  CHECK(m.terminated_by_break);
  CHECK(m.rules.empty());
  CHECK(m.mu.size() == 0);
  CHECK(m.minimax_risk == 0.5);
  CHECK(m.rounds_run == 0);
  CHECK(m.history.empty());
  CHECK(PredictRandomized(m, std::vector<double>{3.0}) == 0.5);
  CHECK(ObjectiveF(m, d, m.lambda) == 0.5);
}

TEST_CASE("objective F examples") {
  const Dataset d = Separable1D();
  const std::vector<Stump> rules = {{0, 5.5, 1}};
  CHECK(ObjectiveF(rules, Eigen::VectorXd::Zero(1), d, 0.1) == 0.5);
  Eigen::VectorXd mu(1);
  mu << 0.5;
  CHECK(std::abs(ObjectiveF(rules, mu, d, 0.1) - 0.05) <= 1e-15);
  CHECK_THROWS_AS(ObjectiveF(rules, Eigen::VectorXd::Zero(2), d, 0.1), InvalidInput);
}

TEST_CASE("prediction conventions") {
  CHECK(RandomizedFromScore(0.0) == 0.5);
  CHECK(RandomizedFromScore(0.5) == 1.0);
  CHECK(RandomizedFromScore(0.9) == 1.0);
  CHECK(RandomizedFromScore(-0.2) == doctest::Approx(0.3));
  CHECK(RandomizedFromScore(-0.7) == 0.0);
  CHECK(DeterministicFromScore(0.3) == 1);
  CHECK(DeterministicFromScore(-0.01) == -1);
  CHECK(DeterministicFromScore(0.0) == 1);

  RmbModel m;
  m.rules = {{0, 0.0, 1}, {1, 0.0, -1}};
  m.mu.resize(2);
  m.mu << 0.3, -0.1;
  const std::vector<double> x = {1.0, 1.0};  // 0.3 * 1 + (-0.1) * (-1)
  CHECK(m.Score(x) == doctest::Approx(0.4));
  CHECK(PredictRandomized(m, x) == doctest::Approx(0.9));
  CHECK(PredictDeterministic(m, x) == 1);
}

TEST_CASE("epsilon-opt diagnostic") {
  SUBCASE("hand-built holdout scores") {
    Dataset holdout;
    holdout.x.resize(3, 1);
    holdout.x << 0.7, 0.2, -0.9;
    holdout.y = Eigen::VectorXd::Ones(3);
    // Three stumps reproducing scores 0.7, 0.2, -0.9 on these points.
    RmbModel h;
    h.rules = {{0, 0.5, 1}, {0, 0.0, 1}, {0, -1.0, 1}};
    h.mu.resize(3);
    h.mu << 0.25, 0.55, -0.1;
    const Eigen::VectorXd s = h.Scores(holdout.x);
    CHECK(s(0) == doctest::Approx(0.7));
    CHECK(s(1) == doctest::Approx(0.2));
    CHECK(s(2) == doctest::Approx(-0.9));
    // Reference equal to F(mu) isolates the violation term.
    const double f = ObjectiveF(h, holdout, 0.1);
    CHECK(EpsilonOptDiagnostic(h, holdout, holdout, 0.1, f) == doctest::Approx(0.2));
  }
  SUBCASE("zero coefficients") {
    const Dataset d = Separable1D();
    RmbModel zero;
    zero.mu.resize(0);
    CHECK(EpsilonOptDiagnostic(zero, d, d, 0.1, 0.05) == doctest::Approx(0.45));
  }
  SUBCASE("break-terminated fit on its training data") {
    const Dataset d = Separable1D();
    RmbConfig config;
    config.lambda = 0.1;
    const RmbModel m = FitRmboost(d, config);
    CHECK(EpsilonOptDiagnostic(m, d, d, 0.1) <= 1e-6 + config.break_tolerance);
  }
}

TEST_CASE("tiny datasets agree with the one-shot LP" * doctest::timeout(60)) {
  std::mt19937_64 gen(20240601);
  int breaks = 0;
  for (int trial = 0; trial < 60; ++trial) {
    const Dataset d = oracle::RandomTinyDataset(gen, 20, 3);
    const RmbConfig config;
    const RmbModel m = FitRmboost(d, config);
    const double tol = config.break_tolerance;
    const double lambda = m.lambda;
    CAPTURE(trial);
    CHECK(m.minimax_risk >= 0.0);
    CHECK(m.minimax_risk <= 0.5);

    const double full = oracle::FullLpOptimum(d, lambda);
    CHECK(std::abs(ObjectiveF(m, d, lambda) - full) <= 10 * tol);

    // Margin feasibility.
    const Eigen::VectorXd s = m.Scores(d.x);
    CHECK(s.cwiseAbs().maxCoeff() <= 0.5 + tol);

    // Monotone rounds and pruning.
    for (size_t k = 1; k < m.history.size(); ++k) {
      CHECK(m.history[k].minimax_risk <= m.history[k - 1].minimax_risk + 1e-6);
    }
    for (const RoundRecord& r : m.history) CHECK(r.max_pruned_abs_mu <= 10 * tol);

    if (m.terminated_by_break) {
      ++breaks;
      CHECK(oracle::BruteForcePricing(d, m.final_sample) <= lambda + tol);
      CHECK(std::abs(ObjectiveF(m, d, lambda) - m.minimax_risk) <= 1e-6);
    }

    // Pointwise factor 2, exact.
    for (int i = 0; i < d.num_samples(); ++i) {
      const double p_correct = d.y(i) > 0 ? RandomizedFromScore(s(i)) : 1.0 - RandomizedFromScore(s(i));
      const double det_loss = DeterministicFromScore(s(i)) != d.y(i) ? 1.0 : 0.0;
      CHECK(det_loss <= 2.0 * (1.0 - p_correct));
    }
  }
  CHECK(breaks == 60);
}

TEST_CASE("determinism") {
  std::mt19937_64 gen(77);
  const Dataset d = oracle::RandomTinyDataset(gen, 20, 3);
  RmbConfig config;
  config.lambda = 0.05;
  const RmbModel a = FitRmboost(d, config);
  const RmbModel b = FitRmboost(d, config);
  CHECK(a.rules == b.rules);
  CHECK(a.mu == b.mu);
  CHECK(a.minimax_risk == b.minimax_risk);
  CHECK(a.rounds_run == b.rounds_run);
}

TEST_CASE("warm starts are used across rounds") {
  Dataset d;
  d.name = "grid";
  d.x.resize(60, 2);
  d.y.resize(60);
  std::mt19937_64 gen(3);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int i = 0; i < 60; ++i) {
    d.x(i, 0) = u(gen);
    d.x(i, 1) = u(gen);
    d.y(i) = d.x(i, 0) * d.x(i, 1) > 0 ? 1.0 : -1.0;
  }
  RmbConfig config;
  config.lambda = 0.02;
  const RmbModel m = FitRmboost(d, config);
  REQUIRE(m.history.size() >= 3);
  int warm = 0;
  for (const RoundRecord& r : m.history) warm += r.warm_started;
  CHECK(warm >= 1);
  CHECK(std::abs(ObjectiveF(m, d, 0.02) - oracle::FullLpOptimum(d, 0.02)) <= 10 * config.break_tolerance);
}

TEST_CASE("round cap leaves the fit uncertified") {
  Dataset d;
  d.name = "cap";
  d.x.resize(40, 1);
  d.y.resize(40);
  for (int i = 0; i < 40; ++i) {
    d.x(i, 0) = i;
    d.y(i) = (i / 4) % 2 == 0 ? 1.0 : -1.0;
  }
  RmbConfig config;
  config.lambda = 0.01;
  config.max_rounds = 1;
  const RmbModel m = FitRmboost(d, config);
  CHECK_FALSE(m.terminated_by_break);
  CHECK(m.rounds_run == 1);
  CHECK(m.history.size() == 1);
  CHECK(m.final_pricing_score > m.lambda + config.break_tolerance);
}

TEST_CASE("config validation") {
  const Dataset d = Separable1D();
  RmbConfig bad;
  bad.lambda = 0.0;
  CHECK_THROWS_AS(FitRmboost(d, bad), InvalidInput);
  bad.lambda = 0.1;
  bad.max_rounds = 0;
  CHECK_THROWS_AS(FitRmboost(d, bad), InvalidInput);
  bad.max_rounds = 5;
  bad.break_tolerance = -1.0;
  CHECK_THROWS_AS(FitRmboost(d, bad), InvalidInput);
  Dataset bad_labels = d;
  bad_labels.y(0) = 2.0;
  CHECK_THROWS_AS(FitRmboost(bad_labels), InvalidInput);
  CHECK(RmbConfig{}.ResolveLambda(400) == 0.05);
}

}  // TEST_SUITE
}  // namespace
}  // namespace rmboost
