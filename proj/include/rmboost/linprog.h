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

// Dense primal simplex for the round master problem
//
//   min  1/2 - (1/n) sum_i y_i u_i'(mu+ - mu-) + lambda 1'(mu+ + mu-)
//   s.t. -1/2 <= u_i'(mu+ - mu-) <= 1/2,   i = 1..n
//        mu+ >= 0, mu- >= 0
//
// where u_i is row i of the n x t column matrix U. Rows are range
// constraints; a row is either "tight" (its activity sits on one of the two
// bounds and it takes part in the basis) or free inside (-1/2, 1/2). The
// working basis is the square block U_signed[tight rows, basic columns], so
// its size is the number of basic structurals, not n.
//
// Row duals are reported in the (alpha, beta) convention: alpha_i >= 0
// multiplies the upper bound of row i and beta_i >= 0 the lower bound. At
// optimality the objective equals (1 - 1'(alpha + beta)) / 2.

#ifndef RMBOOST_LINPROG_H_
#define RMBOOST_LINPROG_H_

#include <optional>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace rmboost::linprog {

struct LpProblem {
  // n x t, entry (i, j) is the value of rule j on sample i. All in [-1, 1].
  Eigen::MatrixXd columns;
  // n labels in {-1, +1}.
  Eigen::VectorXd labels;
  double lambda = 0.0;

  int num_rows() const { return static_cast<int>(columns.rows()); }
  int num_rules() const { return static_cast<int>(columns.cols()); }

  // Throws InvalidInput when an invariant is violated.
  void Validate() const;
};

// A structural variable of the master: rule `rule` with sign +1 (mu+) or -1
// (mu-).
struct BasicColumn {
  int rule = 0;
  bool negative = false;
  friend bool operator==(const BasicColumn&, const BasicColumn&) = default;
};

struct TightRow {
  int row = 0;
  bool at_upper = false;
  friend bool operator==(const TightRow&, const TightRow&) = default;
};

// Basis snapshot. Columns are identified by rule index, so appending rules
// keeps a snapshot valid; removing rules requires RemapRules.
struct LpBasis {
  std::vector<BasicColumn> columns;
  std::vector<TightRow> rows;

  bool empty() const { return columns.empty(); }

  // old_to_new[j] is the new index of rule j, or -1 if it was removed.
  // Returns false (and leaves the basis empty) when a removed rule was
  // basic, since the snapshot no longer describes a basis then.
  bool RemapRules(std::span<const int> old_to_new);

  friend bool operator==(const LpBasis&, const LpBasis&) = default;
};

enum class LpStatus { kOptimal, kInfeasible, kIterationLimit };

const char* LpStatusName(LpStatus status);

struct LpSolution {
  Eigen::VectorXd mu_plus;
  Eigen::VectorXd mu_minus;
  Eigen::VectorXd alpha;
  Eigen::VectorXd beta;
  double objective = 0.5;
  LpBasis basis;
  LpStatus status = LpStatus::kOptimal;
  int pivots = 0;
  // True when the supplied warm start was usable.
  bool warm_started = false;

  Eigen::VectorXd mu() const { return mu_plus - mu_minus; }
  double dual_objective() const {
    return 0.5 * (1.0 - alpha.sum() - beta.sum());
  }
};

struct SolveOptions {
  double feasibility_tolerance = 1e-9;
  double optimality_tolerance = 1e-9;
  int max_pivots = 100000;
  // Use Bland's rule from the first pivot instead of only after a long run
  // of degenerate pivots.
  bool force_bland = false;
};

LpSolution SolveMaster(const LpProblem& problem,
                       const std::optional<LpBasis>& warm_start = std::nullopt,
                       const SolveOptions& options = {});

// v'(y/n - (alpha - beta)). Values above lambda mark a violated dual
// constraint; by negation closure a value below -lambda is the same event
// for the negated rule.
double PriceColumn(std::span<const double> alpha, std::span<const double> beta,
                   std::span<const double> column,
                   std::span<const double> labels);

// Objective of the master at an arbitrary (mu+, mu-), without checking
// feasibility.
double MasterObjective(const LpProblem& problem, const Eigen::VectorXd& mu_plus,
                       const Eigen::VectorXd& mu_minus);

}  // namespace rmboost::linprog

#endif  // RMBOOST_LINPROG_H_
