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

#include <algorithm>
#include <cmath>
#include <optional>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "correq/lp.h"
#include "doctest.h"

namespace correq {
namespace {

constexpr double kTol = 1e-6;

// Independent reference optimizer: enumerate every basic point (each subset
// of n constraints taken tight, among rows-as-equalities and variable
// bounds), keep the feasible ones, and take the best objective. Only valid
// for models whose variables all have finite bounds (so the optimum, if the
// model is feasible, is attained at such a point).
std::optional<double> EnumerateOptimum(const LinearModel& model) {
  int n = model.num_vars();
  struct Constraint {
    std::vector<double> a;
    double rhs;
  };
  std::vector<Constraint> candidates;
  for (const LinearRow& row : model.rows) {
    Constraint c{std::vector<double>(n, 0.0), row.rhs};
    for (auto [v, coef] : row.terms) c.a[v] += coef;
    candidates.push_back(std::move(c));
  }
  for (int v = 0; v < n; ++v) {
    Constraint lo{std::vector<double>(n, 0.0), model.lower[v]};
    lo.a[v] = 1.0;
    candidates.push_back(std::move(lo));
    Constraint hi{std::vector<double>(n, 0.0), model.upper[v]};
    hi.a[v] = 1.0;
    candidates.push_back(std::move(hi));
  }
  auto feasible = [&](const Eigen::VectorXd& x) {
    for (int v = 0; v < n; ++v) {
      if (x[v] < model.lower[v] - 1e-8 || x[v] > model.upper[v] + 1e-8) {
        return false;
      }
    }
    for (const LinearRow& row : model.rows) {
      double lhs = 0.0;
      for (auto [v, coef] : row.terms) lhs += coef * x[v];
      if (row.sense == RowSense::kLe && lhs > row.rhs + 1e-8) return false;
      if (row.sense == RowSense::kGe && lhs < row.rhs - 1e-8) return false;
      if (row.sense == RowSense::kEq && std::abs(lhs - row.rhs) > 1e-8) {
        return false;
      }
    }
    return true;
  };
  int total = static_cast<int>(candidates.size());
  std::vector<int> pick(n, 0);
  std::optional<double> best;
  // Iterate over all n-subsets of candidate constraints.
  std::vector<int> idx(n);
  for (int i = 0; i < n; ++i) idx[i] = i;
  while (true) {
    Eigen::MatrixXd a(n, n);
    Eigen::VectorXd b(n);
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) a(i, j) = candidates[idx[i]].a[j];
      b[i] = candidates[idx[i]].rhs;
    }
    Eigen::FullPivLU<Eigen::MatrixXd> lu(a);
    if (lu.isInvertible()) {
      Eigen::VectorXd x = lu.solve(b);
      if (feasible(x)) {
        double val = 0.0;
        for (int v = 0; v < n; ++v) val += model.objective[v] * x[v];
        if (!best || (model.maximize ? val > *best : val < *best)) best = val;
      }
    }
    // Next combination.
    int i = n - 1;
    while (i >= 0 && idx[i] == total - n + i) --i;
    if (i < 0) break;
    ++idx[i];
    for (int j = i + 1; j < n; ++j) idx[j] = idx[j - 1] + 1;
  }
  return best;
}

double Evaluate(const LinearModel& model, const std::vector<double>& x) {
  double val = 0.0;
  for (int v = 0; v < model.num_vars(); ++v) val += model.objective[v] * x[v];
  return val;
}

TEST_CASE("binding <= row has dual +1 under maximization") {
  LinearModel model;
  int x = model.AddVar(0.0, 10.0, 1.0, "x");
  model.AddRow(RowSense::kLe, 3.0, "cap").terms = {{x, 1.0}};
  Solution sol = SolveLp(model);
  REQUIRE(sol.status == SolveStatus::kOptimal);
  CHECK(sol.objective == doctest::Approx(3.0).epsilon(kTol));
  CHECK(sol.x[x] == doctest::Approx(3.0).epsilon(kTol));
  REQUIRE(sol.duals.size() == 1);
  CHECK(sol.duals[0] == doctest::Approx(1.0).epsilon(kTol));
  CHECK(sol.primal_residual <= 1e-7);
  CHECK(sol.dual_residual <= 1e-6);
}

TEST_CASE("nonbinding row has dual zero") {
  LinearModel model;
  int x = model.AddVar(0.0, 10.0, 1.0, "x");
  model.AddRow(RowSense::kLe, 30.0).terms = {{x, 1.0}};
  Solution sol = SolveLp(model);
  REQUIRE(sol.status == SolveStatus::kOptimal);
  CHECK(sol.objective == doctest::Approx(10.0).epsilon(kTol));
  CHECK(sol.duals[0] == doctest::Approx(0.0).epsilon(kTol));
}

TEST_CASE("dual signs for >= rows") {
  {
    // Minimize x subject to x >= 3: raising the rhs raises the optimum.
    LinearModel model;
    model.maximize = false;
    int x = model.AddVar(0.0, 10.0, 1.0, "x");
    model.AddRow(RowSense::kGe, 3.0).terms = {{x, 1.0}};
    Solution sol = SolveLp(model);
    REQUIRE(sol.status == SolveStatus::kOptimal);
    CHECK(sol.objective == doctest::Approx(3.0).epsilon(kTol));
    CHECK(sol.duals[0] == doctest::Approx(1.0).epsilon(kTol));
  }
  {
    // Maximize -x subject to x >= 3: raising the rhs lowers the optimum.
    LinearModel model;
    int x = model.AddVar(0.0, 10.0, -1.0, "x");
    model.AddRow(RowSense::kGe, 3.0).terms = {{x, 1.0}};
    Solution sol = SolveLp(model);
    REQUIRE(sol.status == SolveStatus::kOptimal);
    CHECK(sol.objective == doctest::Approx(-3.0).epsilon(kTol));
    CHECK(sol.duals[0] == doctest::Approx(-1.0).epsilon(kTol));
  }
}

TEST_CASE("equality row dual") {
  // max 2x + y with x + y = 1, x in [0,2], y in [0,1]: optimum (1, 0),
  // value 2, and x stays interior so the dual is uniquely 2 (moving the
  // rhs by eps moves x and the objective by 2*eps on both sides).
  LinearModel model;
  int x = model.AddVar(0.0, 2.0, 2.0, "x");
  int y = model.AddVar(0.0, 1.0, 1.0, "y");
  model.AddRow(RowSense::kEq, 1.0).terms = {{x, 1.0}, {y, 1.0}};
  Solution sol = SolveLp(model);
  REQUIRE(sol.status == SolveStatus::kOptimal);
  CHECK(sol.objective == doctest::Approx(2.0).epsilon(kTol));
  CHECK(sol.x[x] == doctest::Approx(1.0).epsilon(kTol));
  CHECK(sol.x[y] == doctest::Approx(0.0).epsilon(kTol));
  CHECK(sol.duals[0] == doctest::Approx(2.0).epsilon(kTol));
}

TEST_CASE("infeasible system is reported") {
  LinearModel model;
  int x = model.AddVar(0.0, 10.0, 1.0, "x");
  model.AddRow(RowSense::kLe, 1.0).terms = {{x, 1.0}};
  model.AddRow(RowSense::kGe, 2.0).terms = {{x, 1.0}};
  Solution sol = SolveLp(model);
  CHECK(sol.status == SolveStatus::kInfeasible);
}

TEST_CASE("unbounded problem is reported") {
  LinearModel model;
  model.AddVar(0.0, kInfinity, 1.0, "x");
  Solution sol = SolveLp(model);
  CHECK(sol.status == SolveStatus::kUnbounded);
}

TEST_CASE("free variables") {
  {
    // max y - x with y - x <= 2, y in [0,5], x free.
    LinearModel model;
    int x = model.AddVar(-kInfinity, kInfinity, -1.0, "x");
    int y = model.AddVar(0.0, 5.0, 1.0, "y");
    model.AddRow(RowSense::kLe, 2.0).terms = {{y, 1.0}, {x, -1.0}};
    Solution sol = SolveLp(model);
    REQUIRE(sol.status == SolveStatus::kOptimal);
    CHECK(sol.objective == doctest::Approx(2.0).epsilon(kTol));
    CHECK(sol.duals[0] == doctest::Approx(1.0).epsilon(kTol));
  }
  {
    // min x with x >= -3, x free.
    LinearModel model;
    model.maximize = false;
    int x = model.AddVar(-kInfinity, kInfinity, 1.0, "x");
    model.AddRow(RowSense::kGe, -3.0).terms = {{x, 1.0}};
    Solution sol = SolveLp(model);
    REQUIRE(sol.status == SolveStatus::kOptimal);
    CHECK(sol.objective == doctest::Approx(-3.0).epsilon(kTol));
  }
}

TEST_CASE("model without rows optimizes over the box") {
  LinearModel model;
  model.AddVar(0.0, 1.0, 3.0, "x");
  model.AddVar(0.0, 1.0, 2.0, "y");
  model.AddVar(0.0, 1.0, -4.0, "z");
  Solution sol = SolveLp(model);
  REQUIRE(sol.status == SolveStatus::kOptimal);
  CHECK(sol.objective == doctest::Approx(5.0).epsilon(kTol));
  CHECK(sol.x[2] == doctest::Approx(0.0).epsilon(kTol));
}

TEST_CASE("fixed variables are respected") {
  LinearModel model;
  int x = model.AddVar(2.0, 2.0, 1.0, "x");
  int y = model.AddVar(0.0, 1.0, 1.0, "y");
  model.AddRow(RowSense::kLe, 2.5).terms = {{x, 1.0}, {y, 1.0}};
  Solution sol = SolveLp(model);
  REQUIRE(sol.status == SolveStatus::kOptimal);
  CHECK(sol.x[x] == doctest::Approx(2.0).epsilon(kTol));
  CHECK(sol.objective == doctest::Approx(2.5).epsilon(kTol));
}

TEST_CASE("degenerate assignment relaxation") {
  // max sum x_ij with row sums <= 1 and column sums <= 1 on a 3x3 grid.
  LinearModel model;
  std::vector<std::vector<int>> var(3, std::vector<int>(3));
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      var[i][j] = model.AddVar(0.0, 1.0, 1.0, "x");
    }
  }
  for (int i = 0; i < 3; ++i) {
    LinearRow& row = model.AddRow(RowSense::kLe, 1.0);
    for (int j = 0; j < 3; ++j) row.terms.push_back({var[i][j], 1.0});
    LinearRow& col = model.AddRow(RowSense::kLe, 1.0);
    for (int j = 0; j < 3; ++j) col.terms.push_back({var[j][i], 1.0});
  }
  Solution sol = SolveLp(model);
  REQUIRE(sol.status == SolveStatus::kOptimal);
  CHECK(sol.objective == doctest::Approx(3.0).epsilon(kTol));
}

LinearModel RandomBoxModel(std::mt19937_64* rng, bool with_equality) {
  std::uniform_int_distribution<int> nd(2, 3), md(1, 4), coef(-5, 5),
      ub(1, 3);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  LinearModel model;
  model.maximize = (*rng)() % 2 == 0;
  int n = nd(*rng);
  std::vector<double> x0(n);
  for (int v = 0; v < n; ++v) {
    double u = ub(*rng);
    model.AddVar(0.0, u, coef(*rng), "x");
    x0[v] = unit(*rng) * u;
  }
  int m = md(*rng);
  for (int r = 0; r < m; ++r) {
    bool ge = (*rng)() % 3 == 0;
    LinearRow& row = model.AddRow(ge ? RowSense::kGe : RowSense::kLe, 0.0);
    for (int v = 0; v < n; ++v) {
      int c = coef(*rng);
      if (c != 0) row.terms.push_back({v, static_cast<double>(c)});
    }
    // Every row evaluates to zero at the origin; pick the rhs so the origin
    // stays strictly feasible (equality rows are handled below instead).
    row.rhs = ge ? -unit(*rng) : unit(*rng);
  }
  if (with_equality) {
    // Route one equality through an interior point so it stays feasible.
    LinearRow& row = model.AddRow(RowSense::kEq, 0.0);
    double rhs = 0.0;
    for (int v = 0; v < n; ++v) {
      int c = coef(*rng);
      if (c != 0) {
        row.terms.push_back({v, static_cast<double>(c)});
        rhs += c * x0[v];
      }
    }
    row.rhs = rhs;
  }
  return model;
}

TEST_CASE("random box LPs match the enumeration reference") {
  std::mt19937_64 rng(20260814);
  int solved = 0;
  for (int trial = 0; trial < 60; ++trial) {
    LinearModel model = RandomBoxModel(&rng, trial % 3 == 0);
    std::optional<double> expected = EnumerateOptimum(model);
    Solution sol = SolveLp(model);
    if (!expected) {
      CHECK(sol.status == SolveStatus::kInfeasible);
      continue;
    }
    ++solved;
    REQUIRE(sol.status == SolveStatus::kOptimal);
    CHECK(sol.objective ==
          doctest::Approx(*expected).epsilon(1e-7).scale(1.0));
    CHECK(Evaluate(model, sol.x) ==
          doctest::Approx(sol.objective).epsilon(1e-7).scale(1.0));
    CHECK(sol.primal_residual <= 1e-7);
    CHECK(sol.dual_residual <= 1e-6);
  }
  CHECK(solved >= 40);  // the generator rarely produces infeasible models
}

TEST_CASE("knapsack MIP matches subset enumeration") {
  const std::vector<double> value = {9, 14, 8, 3, 11, 6};
  const std::vector<double> weight = {3, 5, 4, 1, 4, 2};
  const double cap = 10;
  LinearModel model;
  for (int i = 0; i < 6; ++i) {
    model.AddVar(0.0, 1.0, value[i], "x", /*binary=*/true);
  }
  LinearRow& row = model.AddRow(RowSense::kLe, cap);
  for (int i = 0; i < 6; ++i) row.terms.push_back({i, weight[i]});
  double best = 0.0;
  for (int mask = 0; mask < 64; ++mask) {
    double v = 0.0, w = 0.0;
    for (int i = 0; i < 6; ++i) {
      if (mask & (1 << i)) {
        v += value[i];
        w += weight[i];
      }
    }
    if (w <= cap) best = std::max(best, v);
  }
  Solution sol = SolveMip(model);
  REQUIRE(sol.status == SolveStatus::kOptimal);
  CHECK(sol.objective == doctest::Approx(best).epsilon(kTol));
  for (int i = 0; i < 6; ++i) {
    CHECK(std::abs(sol.x[i] - std::round(sol.x[i])) <= 1e-6);
  }
  // Pool entries are integral, feasible, and no better than the incumbent.
  for (const auto& p : sol.pool) {
    double v = 0.0, w = 0.0;
    for (int i = 0; i < 6; ++i) {
      CHECK(std::abs(p[i] - std::round(p[i])) <= 1e-6);
      v += value[i] * std::round(p[i]);
      w += weight[i] * std::round(p[i]);
    }
    CHECK(w <= cap + 1e-6);
    CHECK(v <= best + 1e-6);
  }
}

TEST_CASE("fractional relaxation forces branching") {
  LinearModel model;
  int x = model.AddVar(0.0, 1.0, 1.0, "x", /*binary=*/true);
  model.AddRow(RowSense::kLe, 1.0).terms = {{x, 2.0}};
  Solution sol = SolveMip(model);
  REQUIRE(sol.status == SolveStatus::kOptimal);
  CHECK(sol.objective == doctest::Approx(0.0).epsilon(kTol));
  CHECK(sol.x[x] == doctest::Approx(0.0).epsilon(kTol));
}

TEST_CASE("integral relaxation needs no branching") {
  LinearModel model;
  int x = model.AddVar(0.0, 1.0, 1.0, "x", true);
  int y = model.AddVar(0.0, 1.0, 1.0, "y", true);
  model.AddRow(RowSense::kLe, 1.0).terms = {{x, 1.0}};
  model.AddRow(RowSense::kLe, 1.0).terms = {{y, 1.0}};
  Solution sol = SolveMip(model);
  REQUIRE(sol.status == SolveStatus::kOptimal);
  CHECK(sol.objective == doctest::Approx(2.0).epsilon(kTol));
}

TEST_CASE("mixed binary and continuous variables") {
  LinearModel model;
  int x = model.AddVar(0.0, 1.0, 2.0, "x", true);
  int y = model.AddVar(0.0, 1.0, 1.0, "y");
  model.AddRow(RowSense::kLe, 1.2).terms = {{x, 1.0}, {y, 1.0}};
  Solution sol = SolveMip(model);
  REQUIRE(sol.status == SolveStatus::kOptimal);
  CHECK(sol.objective == doctest::Approx(2.2).epsilon(kTol));
  CHECK(sol.x[x] == doctest::Approx(1.0).epsilon(kTol));
  CHECK(sol.x[y] == doctest::Approx(0.2).epsilon(kTol));
}

TEST_CASE("MIP infeasibility after branching") {
  LinearModel model;
  int x = model.AddVar(0.0, 1.0, 1.0, "x", true);
  model.AddRow(RowSense::kGe, 0.4).terms = {{x, 1.0}};
  model.AddRow(RowSense::kLe, 0.6).terms = {{x, 1.0}};
  Solution sol = SolveMip(model);
  CHECK(sol.status == SolveStatus::kInfeasible);
}

TEST_CASE("random knapsacks match enumeration") {
  std::mt19937_64 rng(77001);
  std::uniform_int_distribution<int> vd(1, 12), wd(1, 6);
  for (int trial = 0; trial < 20; ++trial) {
    int n = 4 + static_cast<int>(rng() % 4);  // 4..7 items
    std::vector<double> value(n), weight(n);
    for (int i = 0; i < n; ++i) {
      value[i] = vd(rng);
      weight[i] = wd(rng);
    }
    double cap = 1 + static_cast<double>(rng() % 12);
    LinearModel model;
    for (int i = 0; i < n; ++i) model.AddVar(0.0, 1.0, value[i], "x", true);
    LinearRow& row = model.AddRow(RowSense::kLe, cap);
    for (int i = 0; i < n; ++i) row.terms.push_back({i, weight[i]});
    double best = 0.0;
    for (int mask = 0; mask < (1 << n); ++mask) {
      double v = 0.0, w = 0.0;
      for (int i = 0; i < n; ++i) {
        if (mask & (1 << i)) {
          v += value[i];
          w += weight[i];
        }
      }
      if (w <= cap) best = std::max(best, v);
    }
    Solution sol = SolveMip(model);
    REQUIRE(sol.status == SolveStatus::kOptimal);
    CHECK(sol.objective == doctest::Approx(best).epsilon(kTol));
  }
}

}  // namespace
}  // namespace correq
