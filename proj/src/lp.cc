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

#include "correq/lp.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <vector>

#include <Eigen/Sparse>
#include <Eigen/SparseLU>

namespace correq {
namespace {

constexpr double kBoundInf = 1e29;    // bounds at or beyond this are infinite
constexpr double kPivotTol = 1e-9;    // smallest acceptable pivot magnitude
constexpr double kDegenStep = 1e-11;  // steps at or below this are degenerate

bool Finite(double bound) { return std::abs(bound) < kBoundInf; }

enum class VarState : uint8_t { kBasic, kAtLower, kAtUpper, kFreeZero };

// Bounded-variable primal simplex over the computational form
//   [A I E] (x, s, a) = b,   l <= (x, s, a) <= u,
// where s are row slacks and E holds artificial columns for rows whose slack
// cannot absorb the initial residual. Phase one maximizes minus the sum of
// artificials; phase two fixes the artificials at zero and optimizes the
// real objective. The basis inverse is a sparse LU factorization plus a
// chain of eta updates, refactored periodically.
class Simplex {
 public:
  Simplex(const LinearModel& model, const SolverConfig& config,
          const std::vector<double>* lower_override,
          const std::vector<double>* upper_override, bool force_bland)
      : config_(config), force_bland_(force_bland) {
    n_ = model.num_vars();
    m_ = static_cast<int>(model.rows.size());
    maximize_ = model.maximize;
    // Structural columns, duplicate terms merged.
    cols_.assign(n_, {});
    std::vector<double> dense(m_, 0.0);
    for (int v = 0; v < n_; ++v) {
      lower_.push_back((lower_override ? (*lower_override)[v]
                                       : model.lower[v]));
      upper_.push_back((upper_override ? (*upper_override)[v]
                                       : model.upper[v]));
      cost_.push_back(maximize_ ? model.objective[v] : -model.objective[v]);
    }
    std::vector<std::vector<std::pair<int, double>>> by_col(n_);
    for (int r = 0; r < m_; ++r) {
      b_.push_back(model.rows[r].rhs);
      for (auto [v, coef] : model.rows[r].terms) {
        by_col[v].push_back({r, coef});
      }
    }
    for (int v = 0; v < n_; ++v) {
      std::sort(by_col[v].begin(), by_col[v].end());
      for (auto [r, coef] : by_col[v]) {
        if (!cols_[v].empty() && cols_[v].back().first == r) {
          cols_[v].back().second += coef;
        } else {
          cols_[v].push_back({r, coef});
        }
      }
    }
    // Slack columns.
    slack_begin_ = n_;
    for (int r = 0; r < m_; ++r) {
      cols_.push_back({{r, 1.0}});
      switch (model.rows[r].sense) {
        case RowSense::kLe:
          lower_.push_back(0.0);
          upper_.push_back(kInfinity);
          break;
        case RowSense::kGe:
          lower_.push_back(-kInfinity);
          upper_.push_back(0.0);
          break;
        case RowSense::kEq:
          lower_.push_back(0.0);
          upper_.push_back(0.0);
          break;
      }
      cost_.push_back(0.0);
    }
    // Initial nonbasic point: every structural at its nearest finite bound.
    value_.assign(cols_.size(), 0.0);
    state_.assign(cols_.size(), VarState::kAtLower);
    for (int v = 0; v < n_; ++v) {
      if (Finite(lower_[v])) {
        value_[v] = lower_[v];
        state_[v] = VarState::kAtLower;
      } else if (Finite(upper_[v])) {
        value_[v] = upper_[v];
        state_[v] = VarState::kAtUpper;
      } else {
        value_[v] = 0.0;
        state_[v] = VarState::kFreeZero;
      }
    }
    // Row residuals at the initial point decide slack vs artificial basis.
    std::vector<double> residual = b_;
    for (int v = 0; v < n_; ++v) {
      if (value_[v] == 0.0) continue;
      for (auto [r, coef] : cols_[v]) residual[r] -= coef * value_[v];
    }
    art_begin_ = static_cast<int>(cols_.size());
    basic_.assign(m_, -1);
    basis_pos_.assign(cols_.size(), -1);
    for (int r = 0; r < m_; ++r) {
      int slack = slack_begin_ + r;
      double res = residual[r];
      if (res >= lower_[slack] - config_.feas_tol &&
          res <= upper_[slack] + config_.feas_tol) {
        basic_[r] = slack;
        value_[slack] = res;
        state_[slack] = VarState::kBasic;
      } else {
        // Slack pinned at the bound nearest the residual; artificial covers
        // the remainder with a positive value.
        double pin = res < lower_[slack] ? lower_[slack] : upper_[slack];
        value_[slack] = pin;
        state_[slack] = res < lower_[slack] ? VarState::kAtLower
                                            : VarState::kAtUpper;
        double remainder = res - pin;
        double e = remainder > 0 ? 1.0 : -1.0;
        cols_.push_back({{r, e}});
        lower_.push_back(0.0);
        upper_.push_back(kInfinity);
        cost_.push_back(0.0);
        value_.push_back(std::abs(remainder));
        state_.push_back(VarState::kBasic);
        basis_pos_.push_back(-1);
        basic_[r] = static_cast<int>(cols_.size()) - 1;
      }
    }
    for (int r = 0; r < m_; ++r) basis_pos_[basic_[r]] = r;
    has_artificials_ = static_cast<int>(cols_.size()) > art_begin_;
  }

  // Runs phase one (if needed) and phase two. Throws BudgetExceeded on the
  // pivot budget and NumericalFailure on basis breakdowns.
  SolveStatus Solve() {
    Refactor();
    if (has_artificials_) {
      phase_one_ = true;
      RunPhase();
      double infeasibility = 0.0;
      for (int c = art_begin_; c < static_cast<int>(cols_.size()); ++c) {
        infeasibility += value_[c];
      }
      if (infeasibility > 1e3 * config_.feas_tol) {
        return SolveStatus::kInfeasible;
      }
      // Fix the artificials at zero for phase two.
      for (int c = art_begin_; c < static_cast<int>(cols_.size()); ++c) {
        lower_[c] = upper_[c] = 0.0;
        if (state_[c] != VarState::kBasic) {
          value_[c] = 0.0;
          state_[c] = VarState::kAtLower;
        }
      }
      phase_one_ = false;
      Refactor();
      RecomputeBasics();
    }
    SolveStatus status = RunPhase();
    if (status != SolveStatus::kOptimal) return status;
    Refactor();
    RecomputeBasics();
    return SolveStatus::kOptimal;
  }

  double Objective() const {
    double val = 0.0;
    for (int v = 0; v < n_; ++v) val += cost_[v] * value_[v];
    return maximize_ ? val : -val;
  }

  std::vector<double> X() const {
    return std::vector<double>(value_.begin(), value_.begin() + n_);
  }

  // Row duals in the sensitivity convention of the original objective.
  std::vector<double> Duals() {
    Eigen::VectorXd y = Btran(BasicCosts());
    std::vector<double> duals(m_);
    for (int r = 0; r < m_; ++r) duals[r] = maximize_ ? y[r] : -y[r];
    return duals;
  }

  // Worst reduced-cost sign violation over all columns at the final basis.
  double DualResidual() {
    Eigen::VectorXd y = Btran(BasicCosts());
    double worst = 0.0;
    for (int c = 0; c < static_cast<int>(cols_.size()); ++c) {
      double d = Cost(c) - Dot(c, y);
      switch (state_[c]) {
        case VarState::kBasic:
          worst = std::max(worst, std::abs(d));
          break;
        case VarState::kAtLower:
          if (lower_[c] < upper_[c]) worst = std::max(worst, d);
          break;
        case VarState::kAtUpper:
          if (lower_[c] < upper_[c]) worst = std::max(worst, -d);
          break;
        case VarState::kFreeZero:
          worst = std::max(worst, std::abs(d));
          break;
      }
    }
    return worst;
  }

  int64_t iterations() const { return iterations_; }

 private:
  double Cost(int c) const {
    if (phase_one_) return c >= art_begin_ ? -1.0 : 0.0;
    return c >= art_begin_ ? 0.0 : cost_[c];
  }

  Eigen::VectorXd BasicCosts() const {
    Eigen::VectorXd cb(m_);
    for (int r = 0; r < m_; ++r) cb[r] = Cost(basic_[r]);
    return cb;
  }

  double Dot(int c, const Eigen::VectorXd& y) const {
    double acc = 0.0;
    for (auto [r, coef] : cols_[c]) acc += coef * y[r];
    return acc;
  }

  void Refactor() {
    if (m_ == 0) return;
    Eigen::SparseMatrix<double> basis(m_, m_);
    std::vector<Eigen::Triplet<double>> triplets;
    for (int r = 0; r < m_; ++r) {
      for (auto [row, coef] : cols_[basic_[r]]) {
        triplets.push_back({row, r, coef});
      }
    }
    basis.setFromTriplets(triplets.begin(), triplets.end());
    lu_.compute(basis);
    if (lu_.info() != Eigen::Success) {
      throw NumericalFailure("singular basis during refactorization");
    }
    etas_.clear();
  }

  void RecomputeBasics() {
    if (m_ == 0) return;
    Eigen::VectorXd rhs(m_);
    for (int r = 0; r < m_; ++r) rhs[r] = b_[r];
    for (int c = 0; c < static_cast<int>(cols_.size()); ++c) {
      if (state_[c] == VarState::kBasic || value_[c] == 0.0) continue;
      for (auto [r, coef] : cols_[c]) rhs[r] -= coef * value_[c];
    }
    Eigen::VectorXd xb = Ftran(rhs);
    for (int r = 0; r < m_; ++r) value_[basic_[r]] = xb[r];
  }

  Eigen::VectorXd Ftran(const Eigen::VectorXd& v) {
    if (m_ == 0) return Eigen::VectorXd(0);
    Eigen::VectorXd z = lu_.solve(v);
    for (const Eta& eta : etas_) {
      double pivot = z[eta.row] / eta.w[eta.row];
      if (pivot != 0.0) z -= pivot * eta.w;
      z[eta.row] = pivot;
    }
    return z;
  }

  Eigen::VectorXd Btran(const Eigen::VectorXd& c) {
    if (m_ == 0) return Eigen::VectorXd(0);
    Eigen::VectorXd q = c;
    for (auto it = etas_.rbegin(); it != etas_.rend(); ++it) {
      double qr = q[it->row];
      double adjusted = (qr - it->w.dot(q) + it->w[it->row] * qr) /
                        it->w[it->row];
      q[it->row] = adjusted;
    }
    return lu_.transpose().solve(q);
  }

  // One phase of the simplex loop on the current cost vector.
  SolveStatus RunPhase() {
    int degenerate_streak = 0;
    bool bland = force_bland_;
    int etas_since_refactor = 0;
    while (true) {
      if (++iterations_ > config_.max_lp_iterations) {
        throw BudgetExceeded("simplex pivot budget exhausted");
      }
      Eigen::VectorXd y = Btran(BasicCosts());
      // Entering variable.
      int enter = -1;
      double best_violation = bland ? 0.0 : config_.opt_tol;
      double enter_d = 0.0;
      for (int c = 0; c < static_cast<int>(cols_.size()); ++c) {
        if (state_[c] == VarState::kBasic) continue;
        if (lower_[c] == upper_[c]) continue;  // fixed, cannot move
        if (phase_one_ == false && c >= art_begin_) continue;
        double d = Cost(c) - Dot(c, y);
        double violation = 0.0;
        if (state_[c] == VarState::kAtLower && d > config_.opt_tol) {
          violation = d;
        } else if (state_[c] == VarState::kAtUpper && d < -config_.opt_tol) {
          violation = -d;
        } else if (state_[c] == VarState::kFreeZero &&
                   std::abs(d) > config_.opt_tol) {
          violation = std::abs(d);
        }
        if (violation <= 0.0) continue;
        if (bland) {
          enter = c;
          enter_d = d;
          break;
        }
        if (violation > best_violation) {
          best_violation = violation;
          enter = c;
          enter_d = d;
        }
      }
      if (enter < 0) return SolveStatus::kOptimal;

      double dir = enter_d > 0 ? 1.0 : -1.0;
      Eigen::VectorXd col(m_);
      col.setZero();
      for (auto [r, coef] : cols_[enter]) col[r] = coef;
      Eigen::VectorXd w = Ftran(col);

      // Ratio test: the entering variable moves by dir * theta; each basic
      // variable moves by -dir * w. A bound flip of the entering variable
      // itself competes with the basic ratios.
      double theta = kInfinity;
      int leave_pos = -1;
      bool leave_to_upper = false;
      double flip = (Finite(lower_[enter]) && Finite(upper_[enter]))
                        ? upper_[enter] - lower_[enter]
                        : kInfinity;
      double best_pivot = 0.0;
      for (int r = 0; r < m_; ++r) {
        double delta = -dir * w[r];
        if (std::abs(delta) < kPivotTol) continue;
        int var = basic_[r];
        double room;
        bool hits_upper;
        if (delta > 0) {
          if (!Finite(upper_[var])) continue;
          room = (upper_[var] - value_[var]) / delta;
          hits_upper = true;
        } else {
          if (!Finite(lower_[var])) continue;
          room = (value_[var] - lower_[var]) / (-delta);
          hits_upper = false;
        }
        room = std::max(room, 0.0);
        bool take = false;
        if (room < theta - 1e-10) {
          take = true;
        } else if (room < theta + 1e-10) {
          // Tie: prefer the larger pivot (Bland: the smallest variable id).
          take = bland ? (leave_pos < 0 || var < basic_[leave_pos])
                       : std::abs(w[r]) > best_pivot;
        }
        if (take) {
          theta = std::min(theta, room);
          leave_pos = r;
          leave_to_upper = hits_upper;
          best_pivot = std::abs(w[r]);
        }
      }
      if (flip < theta) {
        // The entering variable reaches its opposite bound first.
        double step = dir * flip;
        for (int r = 0; r < m_; ++r) {
          if (w[r] != 0.0) value_[basic_[r]] -= step * w[r];
        }
        value_[enter] += step;
        state_[enter] = state_[enter] == VarState::kAtLower
                            ? VarState::kAtUpper
                            : VarState::kAtLower;
        continue;
      }
      if (leave_pos < 0) {
        if (phase_one_) {
          throw NumericalFailure("unbounded phase-one subproblem");
        }
        return SolveStatus::kUnbounded;
      }
      if (theta <= kDegenStep) {
        if (++degenerate_streak >= config_.degeneracy_threshold) bland = true;
      } else {
        degenerate_streak = 0;
        if (!force_bland_) bland = false;
      }
      // Apply the pivot.
      double step = dir * theta;
      for (int r = 0; r < m_; ++r) {
        if (w[r] != 0.0) value_[basic_[r]] -= step * w[r];
      }
      int leave_var = basic_[leave_pos];
      value_[leave_var] = leave_to_upper ? upper_[leave_var]
                                         : lower_[leave_var];
      state_[leave_var] = leave_to_upper ? VarState::kAtUpper
                                         : VarState::kAtLower;
      value_[enter] += step;
      state_[enter] = VarState::kBasic;
      basis_pos_[leave_var] = -1;
      basic_[leave_pos] = enter;
      basis_pos_[enter] = leave_pos;
      etas_.push_back({leave_pos, w});
      if (++etas_since_refactor >= config_.refactor_interval) {
        Refactor();
        RecomputeBasics();
        etas_since_refactor = 0;
      }
    }
  }

  struct Eta {
    int row;
    Eigen::VectorXd w;
  };

  SolverConfig config_;
  bool force_bland_ = false;
  bool maximize_ = true;
  bool phase_one_ = false;
  bool has_artificials_ = false;
  int n_ = 0;
  int m_ = 0;
  int slack_begin_ = 0;
  int art_begin_ = 0;
  std::vector<std::vector<std::pair<int, double>>> cols_;
  std::vector<double> lower_, upper_, cost_, value_, b_;
  std::vector<VarState> state_;
  std::vector<int> basic_;      // row -> column
  std::vector<int> basis_pos_;  // column -> row or -1
  Eigen::SparseLU<Eigen::SparseMatrix<double>> lu_;
  std::vector<Eta> etas_;
  int64_t iterations_ = 0;
};

double PrimalResidual(const LinearModel& model, const std::vector<double>& x,
                      const std::vector<double>* lower_override,
                      const std::vector<double>* upper_override) {
  double worst = 0.0;
  for (int v = 0; v < model.num_vars(); ++v) {
    double lo = lower_override ? (*lower_override)[v] : model.lower[v];
    double hi = upper_override ? (*upper_override)[v] : model.upper[v];
    worst = std::max(worst, lo - x[v]);
    worst = std::max(worst, x[v] - hi);
  }
  for (const LinearRow& row : model.rows) {
    double lhs = 0.0;
    for (auto [v, coef] : row.terms) lhs += coef * x[v];
    switch (row.sense) {
      case RowSense::kLe:
        worst = std::max(worst, lhs - row.rhs);
        break;
      case RowSense::kGe:
        worst = std::max(worst, row.rhs - lhs);
        break;
      case RowSense::kEq:
        worst = std::max(worst, std::abs(lhs - row.rhs));
        break;
    }
  }
  return std::max(worst, 0.0);
}

Solution SolveLpBounded(const LinearModel& model, const SolverConfig& config,
                        const std::vector<double>* lower_override,
                        const std::vector<double>* upper_override) {
  for (int attempt = 0; attempt < 2; ++attempt) {
    Simplex simplex(model, config, lower_override, upper_override,
                    /*force_bland=*/attempt == 1);
    Solution solution;
    solution.status = simplex.Solve();
    solution.iterations = simplex.iterations();
    if (solution.status != SolveStatus::kOptimal) return solution;
    solution.objective = simplex.Objective();
    solution.x = simplex.X();
    solution.duals = simplex.Duals();
    solution.primal_residual =
        PrimalResidual(model, solution.x, lower_override, upper_override);
    solution.dual_residual = simplex.DualResidual();
    if (solution.primal_residual <= 10 * config.feas_tol &&
        solution.dual_residual <= 100 * config.opt_tol) {
      return solution;
    }
    if (attempt == 1) {
      throw NumericalFailure("residual checks failed after Bland restart");
    }
  }
  throw NumericalFailure("unreachable");
}

// Branch-and-bound node: bound overrides are reconstructed by walking the
// parent chain, so nodes stay O(1) in memory.
struct BnbNode {
  double bound;
  int arena_index;
};

struct BnbArenaEntry {
  int parent = -1;
  int var = -1;
  double fixed = 0.0;
};

struct BnbOrder {
  bool maximize;
  bool operator()(const BnbNode& a, const BnbNode& b) const {
    return maximize ? a.bound < b.bound : a.bound > b.bound;
  }
};

}  // namespace

Solution SolveLp(const LinearModel& model, const SolverConfig& config) {
  return SolveLpBounded(model, config, nullptr, nullptr);
}

Solution SolveMip(const LinearModel& model, const SolverConfig& config) {
  std::vector<int> binaries;
  for (int v = 0; v < model.num_vars(); ++v) {
    if (model.is_binary[v]) binaries.push_back(v);
  }
  if (binaries.empty()) {
    Solution solution = SolveLp(model, config);
    solution.duals.clear();
    return solution;
  }
  const bool maximize = model.maximize;
  auto better = [&](double a, double b) { return maximize ? a > b : a < b; };

  std::vector<BnbArenaEntry> arena(1);
  std::priority_queue<BnbNode, std::vector<BnbNode>, BnbOrder> open(
      BnbOrder{maximize});
  open.push({maximize ? kInfinity : -kInfinity, 0});

  Solution incumbent;
  incumbent.status = SolveStatus::kInfeasible;
  bool have_incumbent = false;
  std::vector<std::vector<double>> pool;
  std::vector<double> pool_values;
  int64_t nodes = 0;
  int64_t iterations = 0;

  std::vector<double> lower = model.lower;
  std::vector<double> upper = model.upper;
  while (!open.empty()) {
    BnbNode node = open.top();
    open.pop();
    if (have_incumbent &&
        !better(node.bound, incumbent.objective + (maximize ? 1 : -1) *
                                                      config.mip_gap)) {
      continue;  // cannot beat the incumbent by more than the gap
    }
    if (++nodes > config.max_mip_nodes) {
      throw BudgetExceeded("branch-and-bound node budget exhausted");
    }
    // Reconstruct bound overrides along the parent chain.
    lower = model.lower;
    upper = model.upper;
    for (int at = node.arena_index; at != 0; at = arena[at].parent) {
      lower[arena[at].var] = upper[arena[at].var] = arena[at].fixed;
    }
    Solution relax;
    try {
      relax = SolveLpBounded(model, config, &lower, &upper);
    } catch (const NumericalFailure&) {
      continue;  // prune nodes the simplex cannot certify
    }
    iterations += relax.iterations;
    if (relax.status == SolveStatus::kUnbounded) {
      Solution out;
      out.status = SolveStatus::kUnbounded;
      out.iterations = iterations;
      return out;
    }
    if (relax.status != SolveStatus::kOptimal) continue;
    if (have_incumbent &&
        !better(relax.objective + (maximize ? 1 : -1) * config.mip_gap,
                incumbent.objective)) {
      continue;
    }
    // Find the most fractional binary.
    int branch_var = -1;
    double best_frac = config.int_tol;
    for (int v : binaries) {
      double frac = std::abs(relax.x[v] - std::round(relax.x[v]));
      if (frac > best_frac) {
        best_frac = frac;
        branch_var = v;
      }
    }
    if (branch_var < 0) {
      // Integer feasible.
      if (!have_incumbent || better(relax.objective, incumbent.objective)) {
        if (have_incumbent &&
            static_cast<int>(pool.size()) < config.pool_limit) {
          pool.push_back(incumbent.x);
          pool_values.push_back(incumbent.objective);
        }
        incumbent = relax;
        have_incumbent = true;
      } else if (static_cast<int>(pool.size()) < config.pool_limit) {
        pool.push_back(relax.x);
        pool_values.push_back(relax.objective);
      }
      continue;
    }
    for (double fixed : {0.0, 1.0}) {
      arena.push_back({node.arena_index, branch_var, fixed});
      open.push({relax.objective, static_cast<int>(arena.size()) - 1});
    }
  }
  if (!have_incumbent) {
    Solution out;
    out.status = SolveStatus::kInfeasible;
    out.iterations = iterations;
    return out;
  }
  // Order the pool best-first and drop duplicates of the incumbent.
  std::vector<int> order(pool.size());
  for (size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    return better(pool_values[a], pool_values[b]);
  });
  incumbent.pool.clear();
  for (int i : order) {
    if (pool[i] == incumbent.x) continue;
    bool duplicate = false;
    for (const auto& kept : incumbent.pool) duplicate |= kept == pool[i];
    if (!duplicate) incumbent.pool.push_back(pool[i]);
  }
  incumbent.duals.clear();
  incumbent.iterations = iterations;
  return incumbent;
}

}  // namespace correq
