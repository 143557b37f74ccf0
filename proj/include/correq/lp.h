// Copyright 2026 The correq Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef CORREQ_LP_H_
#define CORREQ_LP_H_

// Sparse linear and mixed-integer programming.
//
// The solver is a bounded-variable revised primal simplex with a sparse LU
// basis (refactored periodically, rank-one updated in between) and a
// composite phase one. Duals follow the sensitivity convention: the dual of
// a row is the derivative of the optimal objective with respect to that
// row's right-hand side, so under maximization a binding <= row has a
// nonnegative dual and a binding >= row a nonpositive one. The MIP solver is
// best-first branch and bound on binary variables, with an incumbent pool.

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace correq {

inline constexpr double kInfinity = 1e30;

struct NumericalFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct BudgetExceeded : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class RowSense { kLe, kEq, kGe };

struct LinearRow {
  std::vector<std::pair<int, double>> terms;  // (variable, coefficient)
  RowSense sense = RowSense::kEq;
  double rhs = 0.0;
  std::string name;
};

struct LinearModel {
  bool maximize = true;
  std::vector<double> objective;
  std::vector<double> lower;
  std::vector<double> upper;
  std::vector<uint8_t> is_binary;
  std::vector<std::string> var_names;
  std::vector<LinearRow> rows;

  int num_vars() const { return static_cast<int>(objective.size()); }
  int AddVar(double lb, double ub, double obj, std::string name,
             bool binary = false) {
    objective.push_back(obj);
    lower.push_back(lb);
    upper.push_back(ub);
    is_binary.push_back(binary ? 1 : 0);
    var_names.push_back(std::move(name));
    return num_vars() - 1;
  }
  LinearRow& AddRow(RowSense sense, double rhs, std::string name = "") {
    rows.push_back(LinearRow{{}, sense, rhs, std::move(name)});
    return rows.back();
  }
};

enum class SolveStatus { kOptimal, kInfeasible, kUnbounded };

struct Solution {
  SolveStatus status = SolveStatus::kOptimal;
  double objective = 0.0;
  std::vector<double> x;
  // Per-row duals, sensitivity convention (empty for MIP solves).
  std::vector<double> duals;
  // Additional integer-feasible points found during branch and bound,
  // best-first, excluding x itself.
  std::vector<std::vector<double>> pool;
  int64_t iterations = 0;
  // Residuals of the returned point: max row violation and, for LPs, the
  // complementary-slackness and objective-gap checks.
  double primal_residual = 0.0;
  double dual_residual = 0.0;
};

struct SolverConfig {
  // Feasibility tolerance on row activity and variable bounds.
  double feas_tol = 1e-7;
  // Reduced-cost optimality tolerance.
  double opt_tol = 1e-7;
  // A variable within this of an integer counts as integral.
  double int_tol = 1e-6;
  // Absolute MIP optimality gap.
  double mip_gap = 1e-6;
  int64_t max_lp_iterations = 50'000'000;
  int64_t max_mip_nodes = 2'000'000;
  int pool_limit = 32;
  // Pivots between basis refactorizations.
  int refactor_interval = 64;
  // Consecutive degenerate pivots before switching to Bland's rule.
  int degeneracy_threshold = 48;
};

// Solves the continuous relaxation (binary markers ignored). Throws
// NumericalFailure when residual checks cannot be met and BudgetExceeded
// when the pivot budget runs out.
Solution SolveLp(const LinearModel& model, const SolverConfig& config = {});

// Branch and bound over the binary-marked variables. The returned solution
// has every binary within int_tol of 0 or 1. Throws BudgetExceeded when the
// node budget runs out without proving the gap.
Solution SolveMip(const LinearModel& model, const SolverConfig& config = {});

}  // namespace correq

#endif  // CORREQ_LP_H_
