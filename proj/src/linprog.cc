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

#include "rmboost/linprog.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "rmboost/error.h"

namespace rmboost::linprog {
namespace {

constexpr double kRowLower = -0.5;
constexpr double kRowUpper = 0.5;
// Entries of a direction vector below this magnitude never block a step.
constexpr double kPivotTolerance = 1e-9;
// Basis blocks with a worse reciprocal condition estimate are refused as
// warm starts.
constexpr double kMinWarmStartRcond = 1e-11;

// The entering candidate of one pivot. Structurals are numbered 0..2t-1
// (mu+ then mu-); tight-row releases are numbered 2t + row, which is also
// the order Bland's rule uses.
struct Entering {
  enum class Kind { kNone, kColumn, kRowRelease } kind = Kind::kNone;
  int index = -1;     // structural id or tight position
  double score = 0.0;  // magnitude of the dual infeasibility
};

struct Leaving {
  enum class Kind { kColumn, kRow, kBoundFlip } kind = Kind::kColumn;
  int position = -1;  // basic position (kColumn) or row index (kRow)
  bool to_upper = false;
  double step = 0.0;
};

class MasterSimplex {
 public:
  MasterSimplex(const LpProblem& problem, const SolveOptions& options)
      : problem_(problem),
        options_(options),
        n_(problem.num_rows()),
        t_(problem.num_rules()),
        mean_margin_(problem.columns.transpose() * problem.labels / n_),
        row_position_(n_, -1),
        column_position_(2 * t_, -1),
        activity_(Eigen::VectorXd::Zero(n_)) {}

  bool LoadBasis(const LpBasis& basis);
  LpSolution Run();

 private:
  double Coefficient(int row, int structural) const {
    return structural < t_ ? problem_.columns(row, structural)
                           : -problem_.columns(row, structural - t_);
  }
  double Cost(int structural) const {
    return structural < t_ ? problem_.lambda - mean_margin_(structural)
                           : problem_.lambda + mean_margin_(structural - t_);
  }
  int size() const { return static_cast<int>(basic_.size()); }

  void Clear();
  // Factorizes the basis block and recomputes primal values, row
  // activities and tight-row duals from scratch.
  bool Refresh(bool check_conditioning);
  bool IsPrimalFeasible(double tolerance) const;
  Entering ChooseEntering(bool bland) const;
  Eigen::VectorXd ReducedCosts() const;
  void ComputeDirection(const Entering& entering, Eigen::VectorXd* dx,
                        Eigen::VectorXd* dr) const;
  bool ChooseLeaving(const Entering& entering, const Eigen::VectorXd& dx,
                     const Eigen::VectorXd& dr, bool bland,
                     Leaving* leaving) const;
  void Pivot(const Entering& entering, const Leaving& leaving);
  LpSolution Extract(LpStatus status, int pivots) const;

  const LpProblem& problem_;
  const SolveOptions& options_;
  const int n_;
  const int t_;
  const Eigen::VectorXd mean_margin_;

  std::vector<int> basic_;         // structural ids, by basic position
  std::vector<int> tight_;         // row ids, by basic position
  std::vector<char> tight_upper_;  // bound each tight row sits on
  std::vector<int> row_position_;
  std::vector<int> column_position_;

  Eigen::PartialPivLU<Eigen::MatrixXd> lu_;
  Eigen::VectorXd x_basic_;
  Eigen::VectorXd duals_tight_;
  Eigen::VectorXd activity_;
};

void MasterSimplex::Clear() {
  for (int k : basic_) column_position_[k] = -1;
  for (int i : tight_) row_position_[i] = -1;
  basic_.clear();
  tight_.clear();
  tight_upper_.clear();
}

bool MasterSimplex::LoadBasis(const LpBasis& basis) {
  if (basis.columns.size() != basis.rows.size()) return false;
  Clear();
  for (size_t p = 0; p < basis.columns.size(); ++p) {
    const BasicColumn& c = basis.columns[p];
    const TightRow& r = basis.rows[p];
    if (c.rule < 0 || c.rule >= t_ || r.row < 0 || r.row >= n_) {
      Clear();
      return false;
    }
    const int k = c.rule + (c.negative ? t_ : 0);
    const int twin = c.negative ? c.rule : c.rule + t_;
    if (column_position_[k] >= 0 || column_position_[twin] >= 0 ||
        row_position_[r.row] >= 0) {
      Clear();
      return false;
    }
    column_position_[k] = static_cast<int>(p);
    row_position_[r.row] = static_cast<int>(p);
    basic_.push_back(k);
    tight_.push_back(r.row);
    tight_upper_.push_back(r.at_upper ? 1 : 0);
  }
  if (!Refresh(/*check_conditioning=*/true) ||
      !IsPrimalFeasible(1e3 * options_.feasibility_tolerance)) {
    Clear();
    Refresh(false);
    return false;
  }
  return true;
}

bool MasterSimplex::Refresh(bool check_conditioning) {
  const int m = size();
  activity_.setZero();
  if (m == 0) {
    x_basic_.resize(0);
    duals_tight_.resize(0);
    return true;
  }
  Eigen::MatrixXd block(m, m);
  Eigen::VectorXd bounds(m);
  Eigen::VectorXd costs(m);
  for (int r = 0; r < m; ++r) {
    for (int c = 0; c < m; ++c) block(r, c) = Coefficient(tight_[r], basic_[c]);
    bounds(r) = tight_upper_[r] ? kRowUpper : kRowLower;
  }
  for (int c = 0; c < m; ++c) costs(c) = Cost(basic_[c]);
  lu_.compute(block);
  if (check_conditioning && !(lu_.rcond() > kMinWarmStartRcond)) return false;
  x_basic_ = lu_.solve(bounds);
  duals_tight_ = lu_.transpose().solve(costs);
  for (int c = 0; c < m; ++c) {
    const int k = basic_[c];
    const double sign = k < t_ ? 1.0 : -1.0;
    activity_ += (sign * x_basic_(c)) * problem_.columns.col(k % t_);
  }
  return x_basic_.allFinite() && duals_tight_.allFinite();
}

bool MasterSimplex::IsPrimalFeasible(double tolerance) const {
  for (int c = 0; c < size(); ++c) {
    if (x_basic_(c) < -tolerance) return false;
  }
  for (int i = 0; i < n_; ++i) {
    if (activity_(i) > kRowUpper + tolerance ||
        activity_(i) < kRowLower - tolerance) {
      return false;
    }
  }
  return true;
}

Eigen::VectorXd MasterSimplex::ReducedCosts() const {
  // g_j = sum over tight rows of dual * U(row, j).
  Eigen::VectorXd g = Eigen::VectorXd::Zero(t_);
  for (int r = 0; r < size(); ++r) {
    g += duals_tight_(r) * problem_.columns.row(tight_[r]).transpose();
  }
  Eigen::VectorXd reduced(2 * t_);
  for (int j = 0; j < t_; ++j) {
    reduced(j) = problem_.lambda - mean_margin_(j) - g(j);
    reduced(j + t_) = problem_.lambda + mean_margin_(j) + g(j);
  }
  return reduced;
}

Entering MasterSimplex::ChooseEntering(bool bland) const {
  const double tol = options_.optimality_tolerance;
  Entering best;
  const Eigen::VectorXd reduced = ReducedCosts();
  for (int k = 0; k < 2 * t_; ++k) {
    if (column_position_[k] >= 0 || reduced(k) >= -tol) continue;
    if (bland) return {Entering::Kind::kColumn, k, -reduced(k)};
    if (-reduced(k) > best.score) best = {Entering::Kind::kColumn, k, -reduced(k)};
  }
  // A row on its upper bound is dual feasible when its dual is <= 0 (the
  // objective cannot drop by moving the activity down); the lower bound
  // mirrors that.
  int bland_row = std::numeric_limits<int>::max();
  for (int r = 0; r < size(); ++r) {
    const double dual = duals_tight_(r);
    const double violation = tight_upper_[r] ? dual : -dual;
    if (violation <= tol) continue;
    if (bland) {
      if (tight_[r] < bland_row) {
        bland_row = tight_[r];
        best = {Entering::Kind::kRowRelease, r, violation};
      }
    } else if (violation > best.score) {
      best = {Entering::Kind::kRowRelease, r, violation};
    }
  }
  return best;
}

void MasterSimplex::ComputeDirection(const Entering& entering,
                                     Eigen::VectorXd* dx,
                                     Eigen::VectorXd* dr) const {
  const int m = size();
  Eigen::VectorXd rhs(m);
  if (entering.kind == Entering::Kind::kColumn) {
    for (int r = 0; r < m; ++r) rhs(r) = -Coefficient(tight_[r], entering.index);
  } else {
    rhs.setZero();
    rhs(entering.index) = tight_upper_[entering.index] ? -1.0 : 1.0;
  }
  *dx = m > 0 ? Eigen::VectorXd(lu_.solve(rhs)) : Eigen::VectorXd(0);
  dr->setZero(n_);
  for (int c = 0; c < m; ++c) {
    const int k = basic_[c];
    const double sign = k < t_ ? 1.0 : -1.0;
    *dr += (sign * (*dx)(c)) * problem_.columns.col(k % t_);
  }
  if (entering.kind == Entering::Kind::kColumn) {
    const int k = entering.index;
    const double sign = k < t_ ? 1.0 : -1.0;
    *dr += sign * problem_.columns.col(k % t_);
  }
}

bool MasterSimplex::ChooseLeaving(const Entering& entering,
                                  const Eigen::VectorXd& dx,
                                  const Eigen::VectorXd& dr, bool bland,
                                  Leaving* leaving) const {
  struct Candidate {
    Leaving leaving;
    double slack;
    double rate;
    int bland_index;
  };
  std::vector<Candidate> candidates;
  for (int c = 0; c < size(); ++c) {
    if (dx(c) < -kPivotTolerance) {
      candidates.push_back({{Leaving::Kind::kColumn, c, false, 0.0},
                            std::max(x_basic_(c), 0.0), -dx(c), basic_[c]});
    }
  }
  for (int i = 0; i < n_; ++i) {
    if (row_position_[i] >= 0) continue;
    if (dr(i) > kPivotTolerance) {
      candidates.push_back({{Leaving::Kind::kRow, i, true, 0.0},
                            std::max(kRowUpper - activity_(i), 0.0), dr(i),
                            2 * t_ + i});
    } else if (dr(i) < -kPivotTolerance) {
      candidates.push_back({{Leaving::Kind::kRow, i, false, 0.0},
                            std::max(activity_(i) - kRowLower, 0.0), -dr(i),
                            2 * t_ + i});
    }
  }
  if (entering.kind == Entering::Kind::kRowRelease) {
    const int row = tight_[entering.index];
    candidates.push_back({{Leaving::Kind::kBoundFlip, entering.index,
                           !tight_upper_[entering.index], 0.0},
                          kRowUpper - kRowLower, 1.0, 2 * t_ + row});
  }
  if (candidates.empty()) return false;

  const Candidate* chosen = nullptr;
  if (bland) {
    double best_ratio = std::numeric_limits<double>::infinity();
    for (const Candidate& c : candidates) {
      best_ratio = std::min(best_ratio, c.slack / c.rate);
    }
    for (const Candidate& c : candidates) {
      if (c.slack / c.rate <= best_ratio + 1e-12 &&
          (chosen == nullptr || c.bland_index < chosen->bland_index)) {
        chosen = &c;
      }
    }
  } else {
    // Two-pass (Harris) ratio test: bound the step with relaxed slacks, then
    // pick the largest pivot among the candidates that block within it.
    const double relax = options_.feasibility_tolerance;
    double max_step = std::numeric_limits<double>::infinity();
    for (const Candidate& c : candidates) {
      max_step = std::min(max_step, (c.slack + relax) / c.rate);
    }
    for (const Candidate& c : candidates) {
      if (c.slack / c.rate > max_step) continue;
      if (chosen == nullptr || c.rate > chosen->rate ||
          (c.rate == chosen->rate && c.bland_index < chosen->bland_index)) {
        chosen = &c;
      }
    }
  }
  *leaving = chosen->leaving;
  leaving->step = chosen->slack / chosen->rate;
  return true;
}

void MasterSimplex::Pivot(const Entering& entering, const Leaving& leaving) {
  if (leaving.kind == Leaving::Kind::kBoundFlip) {
    tight_upper_[leaving.position] = leaving.to_upper ? 1 : 0;
    return;
  }
  auto erase_position = [this](int p) {
    column_position_[basic_[p]] = -1;
    row_position_[tight_[p]] = -1;
    basic_.erase(basic_.begin() + p);
    tight_.erase(tight_.begin() + p);
    tight_upper_.erase(tight_upper_.begin() + p);
    for (int q = p; q < size(); ++q) {
      column_position_[basic_[q]] = q;
      row_position_[tight_[q]] = q;
    }
  };

  if (entering.kind == Entering::Kind::kColumn) {
    const int k = entering.index;
    if (leaving.kind == Leaving::Kind::kColumn) {
      column_position_[basic_[leaving.position]] = -1;
      basic_[leaving.position] = k;
      column_position_[k] = leaving.position;
    } else {
      basic_.push_back(k);
      tight_.push_back(leaving.position);
      tight_upper_.push_back(leaving.to_upper ? 1 : 0);
      column_position_[k] = size() - 1;
      row_position_[leaving.position] = size() - 1;
    }
    return;
  }

  // Releasing tight row at position p.
  const int p = entering.index;
  if (leaving.kind == Leaving::Kind::kColumn) {
    // Pair the released row with the leaving column's slot, then drop it.
    const int q = leaving.position;
    if (q != p) {
      row_position_[tight_[p]] = -1;
      row_position_[tight_[q]] = p;
      std::swap(tight_[p], tight_[q]);
      std::swap(tight_upper_[p], tight_upper_[q]);
      row_position_[tight_[q]] = q;
    }
    erase_position(q);
  } else {
    row_position_[tight_[p]] = -1;
    tight_[p] = leaving.position;
    tight_upper_[p] = leaving.to_upper ? 1 : 0;
    row_position_[leaving.position] = p;
  }
}

LpSolution MasterSimplex::Extract(LpStatus status, int pivots) const {
  LpSolution s;
  s.status = status;
  s.pivots = pivots;
  s.mu_plus = Eigen::VectorXd::Zero(t_);
  s.mu_minus = Eigen::VectorXd::Zero(t_);
  s.alpha = Eigen::VectorXd::Zero(n_);
  s.beta = Eigen::VectorXd::Zero(n_);
  double objective = 0.5;
  for (int c = 0; c < size(); ++c) {
    const int k = basic_[c];
    const double value = std::max(x_basic_(c), 0.0);
    if (k < t_) {
      s.mu_plus(k) = value;
    } else {
      s.mu_minus(k - t_) = value;
    }
    objective += Cost(k) * value;
    s.basis.columns.push_back({k % t_, k >= t_});
    s.basis.rows.push_back({tight_[c], tight_upper_[c] != 0});
  }
  // row dual pi relates to (alpha, beta) by alpha - beta = -pi.
  for (int r = 0; r < size(); ++r) {
    const double dual = duals_tight_(r);
    if (tight_upper_[r]) {
      s.alpha(tight_[r]) = std::max(-dual, 0.0);
    } else {
      s.beta(tight_[r]) = std::max(dual, 0.0);
    }
  }
  s.objective = objective;
  return s;
}

LpSolution MasterSimplex::Run() {
  const int degenerate_limit = 50 * (n_ + t_);
  int degenerate_run = 0;
  bool bland = options_.force_bland;
  int pivots = 0;
  Refresh(false);
  while (true) {
    const Entering entering = ChooseEntering(bland);
    if (entering.kind == Entering::Kind::kNone) {
      return Extract(LpStatus::kOptimal, pivots);
    }
    if (pivots >= options_.max_pivots) {
      return Extract(LpStatus::kIterationLimit, pivots);
    }
    Eigen::VectorXd dx;
    Eigen::VectorXd dr;
    ComputeDirection(entering, &dx, &dr);
    Leaving leaving;
    if (!ChooseLeaving(entering, dx, dr, bland, &leaving)) {
      throw InternalError("master LP reported unbounded; objective is bounded "
                          "for every valid input");
    }
    Pivot(entering, leaving);
    ++pivots;
    if (leaving.step <= options_.feasibility_tolerance) {
      if (++degenerate_run > degenerate_limit) bland = true;
    } else {
      degenerate_run = 0;
    }
    if (!Refresh(false)) {
      throw InternalError("master LP basis became singular after pivot " +
                          std::to_string(pivots));
    }
  }
}

}  // namespace

void LpProblem::Validate() const {
  const int n = num_rows();
  const int t = num_rules();
  if (n < 1 || t < 1) internal::ThrowInvalid("master LP needs n >= 1 and t >= 1");
  if (labels.size() != n) internal::ThrowInvalid("label count does not match rows");
  if (!(lambda > 0.0) || !std::isfinite(lambda)) {
    internal::ThrowInvalid("lambda must be positive");
  }
  for (int i = 0; i < n; ++i) {
    if (labels(i) != 1.0 && labels(i) != -1.0) {
      internal::ThrowInvalid("labels must be in {-1, +1}");
    }
  }
  if (!columns.allFinite() || columns.maxCoeff() > 1.0 || columns.minCoeff() < -1.0) {
    internal::ThrowInvalid("column entries must lie in [-1, 1]");
  }
}

bool LpBasis::RemapRules(std::span<const int> old_to_new) {
  for (BasicColumn& c : columns) {
    if (c.rule < 0 || c.rule >= static_cast<int>(old_to_new.size()) ||
        old_to_new[c.rule] < 0) {
      columns.clear();
      rows.clear();
      return false;
    }
    c.rule = old_to_new[c.rule];
  }
  return true;
}

const char* LpStatusName(LpStatus status) {
  switch (status) {
    case LpStatus::kOptimal:
      return "optimal";
    case LpStatus::kInfeasible:
      return "infeasible";
    case LpStatus::kIterationLimit:
      return "iteration-limit";
  }
  return "unknown";
}

LpSolution SolveMaster(const LpProblem& problem,
                       const std::optional<LpBasis>& warm_start,
                       const SolveOptions& options) {
  problem.Validate();
  MasterSimplex simplex(problem, options);
  bool warm = false;
  if (warm_start.has_value() && !warm_start->empty()) {
    warm = simplex.LoadBasis(*warm_start);
  }
  LpSolution solution = simplex.Run();
  solution.warm_started = warm;
  return solution;
}

double PriceColumn(std::span<const double> alpha, std::span<const double> beta,
                   std::span<const double> column,
                   std::span<const double> labels) {
  const size_t n = labels.size();
  if (alpha.size() != n || beta.size() != n || column.size() != n) {
    internal::ThrowInvalid("PriceColumn: length mismatch");
  }
  const double inv_n = 1.0 / static_cast<double>(n);
  double value = 0.0;
  for (size_t i = 0; i < n; ++i) {
    value += column[i] * (labels[i] * inv_n - (alpha[i] - beta[i]));
  }
  return value;
}

double MasterObjective(const LpProblem& problem, const Eigen::VectorXd& mu_plus,
                       const Eigen::VectorXd& mu_minus) {
  const Eigen::VectorXd mu = mu_plus - mu_minus;
  const double n = problem.num_rows();
  const double fit = problem.labels.dot(problem.columns * mu) / n;
  return 0.5 - fit + problem.lambda * (mu_plus.sum() + mu_minus.sum());
}

}  // namespace rmboost::linprog
