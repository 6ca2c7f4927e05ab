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
#include "rmboost/error.h"
#include "rmboost/noise.h"

namespace rmboost {
namespace {

// i is in the top-k set iff fewer than k samples outrank it, where j
// outranks i when m_j > m_i, or m_j == m_i and j < i.
std::vector<int> RankOracle(const Eigen::VectorXd& m, int k) {
  std::vector<int> out;
  for (int i = 0; i < m.size(); ++i) {
    int above = 0;
    for (int j = 0; j < m.size(); ++j) above += m(j) > m(i) || (m(j) == m(i) && j < i);
    if (above < k) out.push_back(i);
  }
  return out;
}

TEST_SUITE("noise") {

TEST_CASE("uniform edge probabilities") {
  const Eigen::VectorXd y = Eigen::VectorXd::Ones(50);
  const NoiseResult none = InjectUniform(y, 0.0, 3);
  CHECK(none.flipped.empty());
  CHECK(none.labels == y);
  const NoiseResult all = InjectUniform(y, 1.0, 3);
  CHECK(all.flipped.size() == 50);
  CHECK(all.labels == -y);
}

TEST_CASE("uniform flip count stays in the binomial band") {
  const Eigen::VectorXd y = Eigen::VectorXd::Ones(10000);
  double total = 0.0;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const NoiseResult r = InjectUniform(y, 0.1, seed);
    CHECK(r.flipped.size() >= 800);
    CHECK(r.flipped.size() <= 1200);
    total += static_cast<double>(r.flipped.size());
    for (int i : r.flipped) CHECK(r.labels(i) == -1.0);
  }
  CHECK(std::abs(total / 1e6 - 0.1) < 0.003);
}

TEST_CASE("uniform flips of neighbouring samples are independent") {
  // 2x2 contingency of (flip_i, flip_{i+1}); chi-square 1 dof at 0.001.
  const Eigen::VectorXd y = Eigen::VectorXd::Ones(1000);
  double c[2][2] = {{0, 0}, {0, 0}};
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const NoiseResult r = InjectUniform(y, 0.3, seed);
    std::vector<int> f(1000, 0);
    for (int i : r.flipped) f[i] = 1;
    for (int i = 0; i + 1 < 1000; ++i) c[f[i]][f[i + 1]] += 1;
  }
  const double total = c[0][0] + c[0][1] + c[1][0] + c[1][1];
  double chi2 = 0.0;
  for (int a = 0; a < 2; ++a) {
    for (int b = 0; b < 2; ++b) {
      const double expected = (c[a][0] + c[a][1]) * (c[0][b] + c[1][b]) / total;
      chi2 += (c[a][b] - expected) * (c[a][b] - expected) / expected;
    }
  }
  CHECK(chi2 < 10.83);
}

TEST_CASE("uniform is deterministic per seed") {
  const Eigen::VectorXd y = Eigen::VectorXd::Ones(200);
  CHECK(InjectUniform(y, 0.2, 5).flipped == InjectUniform(y, 0.2, 5).flipped);
  CHECK(InjectUniform(y, 0.2, 5).flipped != InjectUniform(y, 0.2, 6).flipped);
}

TEST_CASE("adversarial flip count") {
  CHECK(AdversarialFlipCount(0.3, 10) == 3);
  CHECK(AdversarialFlipCount(0.1, 10) == 1);
  CHECK(AdversarialFlipCount(0.01, 10) == 1);
  CHECK(AdversarialFlipCount(0.0, 10) == 0);
  CHECK(AdversarialFlipCount(1.0, 10) == 10);
  CHECK(AdversarialFlipCount(0.2, 691) == 139);
}

TEST_CASE("adversarial top margins") {
  Eigen::VectorXd m(4);
  m << 3, 1, 2, 0;
  CHECK(TopMarginIndices(m, 0.5) == std::vector<int>{0, 2});
  CHECK(TopMarginIndices(m, 0.0).empty());

  Eigen::VectorXd ties(5);
  ties << 1, 2, 2, 2, 0;
  CHECK(TopMarginIndices(ties, 0.4) == std::vector<int>{1, 2});

  std::mt19937_64 gen(9);
  std::uniform_int_distribution<int> level(-3, 3), size(1, 40);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int trial = 0; trial < 300; ++trial) {
    Eigen::VectorXd r(size(gen));
    for (Eigen::Index i = 0; i < r.size(); ++i) r(i) = level(gen);
    const double p = unit(gen);
    const auto got = TopMarginIndices(r, p);
    CHECK(static_cast<int>(got.size()) == AdversarialFlipCount(p, static_cast<int>(r.size())));
    CHECK(got == RankOracle(r, AdversarialFlipCount(p, static_cast<int>(r.size()))));
  }
}

TEST_CASE("adversarial injection uses reference margins") {
  Dataset d;
  d.x.resize(4, 1);
  d.x << 3, 1, 2, 0;
  d.y = Eigen::VectorXd::Ones(4);
  // Score increasing in x: 1.5, -0.5, 0.5, -1.5.
  StagewiseModel ref;
  ref.stumps = {{0, 0.5, 1}, {0, 1.5, 1}, {0, 2.5, 1}};
  ref.coefficients = {0.5, 0.5, 0.5};
  const NoiseResult r = InjectAdversarial(d, 0.5, &ref);
  CHECK(r.flipped == std::vector<int>{0, 2});
  CHECK(r.labels(0) == -1.0);
  CHECK(r.labels(1) == 1.0);
  CHECK(r.labels(2) == -1.0);
  CHECK_THROWS_AS(InjectAdversarial(d, 0.5, nullptr), InvalidInput);
  const NoiseResult none = ApplyNoise({NoiseKind::kAdversarial, 0.0, 0}, d, &ref);
  CHECK(none.flipped.empty());
}

TEST_CASE("spec parsing and validation") {
  CHECK(ParseNoiseKind("uniform_symmetric") == NoiseKind::kUniform);
  CHECK(ParseNoiseKind("adversarial") == NoiseKind::kAdversarial);
  CHECK(NoiseKindName(NoiseKind::kNone) == "none");
  CHECK_THROWS_AS(ParseNoiseKind("feature"), InvalidInput);
  CHECK_THROWS_AS((NoiseSpec{NoiseKind::kUniform, 1.5, 0}.Validate()), InvalidInput);
  CHECK_THROWS_AS(InjectUniform(Eigen::VectorXd::Ones(3), -0.1, 0), InvalidInput);
}

}  // TEST_SUITE
}  // namespace
}  // namespace rmboost
