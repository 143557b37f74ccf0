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

#ifndef CORREQ_SOLVERS_H_
#define CORREQ_SOLVERS_H_

// The equilibrium engines.
//
// Both engines maximize a linear objective over correlation plans that admit
// no profitable trigger deviation:
//   - the DAG engine embeds the correlation-DAG flow polytope and the
//     dualized per-trigger incentive constraints into one LP;
//   - the column-generation engine (two players only) grows a support of
//     semi-randomized plans, solving a master LP over their mixtures and a
//     pricing MIP for the next support member.
// A brute-force oracle solves tiny games exactly over the simplex of pure
// strategy profiles with one constraint per (trigger, pure deviation) pair,
// giving an independent reference for both engines.

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "correq/correlation_dag.h"
#include "correq/game.h"
#include "correq/game_zoo.h"
#include "correq/lp.h"
#include "correq/triggers.h"
#include "correq/vsf.h"

namespace correq {

struct DagBudget : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct SolverFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct CertificationFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct MissingPlanEntries : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Objective {
  enum class Kind { kSocialWelfare, kPlayer, kWeights, kTerminalWeights };
  Kind kind = Kind::kSocialWelfare;
  PlayerId player = 0;                  // kPlayer
  std::vector<double> player_weights;   // kWeights
  // kTerminalWeights: coefficient per terminal node id (chance reach is
  // still applied on top).
  std::vector<std::pair<NodeId, double>> terminal_weights;

  static Objective SocialWelfare() { return Objective{}; }
  static Objective ForPlayer(PlayerId i) {
    Objective o;
    o.kind = Kind::kPlayer;
    o.player = i;
    return o;
  }
  static Objective Weights(std::vector<double> w) {
    Objective o;
    o.kind = Kind::kWeights;
    o.player_weights = std::move(w);
    return o;
  }
};

// Dense objective over joint sequences: entry sigma(z^bottom) accumulates
// weight(z) * chance-reach(z) over terminals z.
std::vector<double> ObjectiveVector(const Game& game,
                                    const JointSequenceSpace& space,
                                    const Objective& objective);

// Expected payoff per player under a plan (uses only sigma(z^bottom)
// entries).
std::vector<double> ExpectedPayoffs(const Game& game,
                                    const JointSequenceSpace& space,
                                    const std::vector<double>& plan);

// Smallest interval containing all payoffs of all players (certification
// tolerances scale with its width).
std::pair<double, double> RewardRange(const Game& game);

enum class DeltaRule { kAsPrinted, kReducedCost };

struct SolveOptions {
  double tol = 1e-6;  // colgen termination / certification slack
  int64_t edge_budget = 50'000'000;
  int64_t max_iterations = 20'000;  // colgen iteration budget
  SolverConfig lp;
  DeltaRule delta_rule = DeltaRule::kAsPrinted;
  // Optional external LP command for the master/DAG solves ("" = reference
  // solver). The command is invoked as: command model.lp out.sol.
  std::string external_solver;
};

struct EngineStats {
  int64_t lp_iterations = 0;
  int64_t colgen_iterations = 0;
  int64_t pricer_mips = 0;
  int64_t support_size = 0;
  int64_t lp_rows = 0;
  int64_t lp_cols = 0;
  DagStats dag;
};

struct EquilibriumResult {
  double value = 0.0;
  Concept notion = Concept::kNfcce;
  std::string engine;
  // Plan over all joint sequences; entries the engine could not determine
  // are NaN (the DAG engine certifies from terminal entries alone; the
  // column-generation engine returns a complete plan).
  std::vector<double> plan;
  double certified_benefit = 0.0;
  bool budget_exhausted = false;
  double upper_bound = 0.0;  // meaningful when budget_exhausted
  EngineStats stats;
};

// Exact certification: the largest deviation benefit over all triggers of
// the concept, computed by best-response dynamic programming on each
// trigger's deviation polytope (no LP involved). Throws MissingPlanEntries
// if the plan lacks a required terminal entry (NaN).
double MaxDeviationBenefit(const Game& game, const SequenceIndex& seq,
                           const JointSequenceSpace& space, Concept notion,
                           const std::vector<double>& plan);

// Correlation-DAG linear program. Throws DagBudget when the DAG exceeds the
// edge budget, SolverFailure on solver breakdown, CertificationFailure when
// the recomputed deviation benefit exceeds tolerance.
EquilibriumResult SolveDagLp(const Game& game, const SequenceIndex& seq,
                             const PublicPartition& partition,
                             const JointSequenceSpace& space, Concept notion,
                             const Objective& objective,
                             const SolveOptions& options = {});

// Two-sided column generation (two players only; throws NotTwoPlayer). On
// iteration exhaustion returns the best certified answer so far with
// budget_exhausted set and the last master objective as upper_bound.
EquilibriumResult SolveColgen(const Game& game, const SequenceIndex& seq,
                              const JointSequenceSpace& space, Concept notion,
                              const Objective& objective,
                              const SolveOptions& options = {});

// --- Column-generation building blocks (exposed for direct testing) ---

struct SupportMember {
  std::vector<double> plan;   // full plan over joint sequences
  std::vector<double> marg1;  // PlanMarginal(space, plan, 0)
  std::vector<double> marg2;
};

// Row/variable bookkeeping of the master LP.
struct MasterLayout {
  int xi_begin = 0;  // one variable per joint sequence
  int u_var = -1;
  std::vector<int> v_begin;     // per trigger
  std::vector<int> row1_begin;  // per trigger, rows "F v - A xi >= 0"
  std::vector<int> row1_count;
  std::vector<int> row2;        // per trigger, row "u - f v + b xi >= 0"
  int convexity_row = -1;       // "sum lambda = 1"
};

// Builds the master LP over the given support. With feasibility_phase the
// "u <= 0" bound is dropped and the objective becomes min u.
MasterLayout BuildMaster(const JointSequenceSpace& space,
                         const SequenceIndex& seq,
                         const std::vector<double>& objective_g,
                         const std::vector<TriggerIncentives>& incentives,
                         const std::vector<SupportMember>& support,
                         bool feasibility_phase, LinearModel* out);

struct PriceResult {
  double delta = 0.0;
  std::vector<double> plan;
  std::vector<std::vector<double>> pool;
  bool used_mip = false;
};

// Prices one side: maximizes (constant - xi . w) over the side's
// semi-randomized set, first via the LP relaxation (accepted when the side's
// marginal is integral), then via the MIP.
PriceResult Price(const VsfSystem& vsf, const JointSequenceSpace& space,
                  int side, const std::vector<double>& w, double constant,
                  const SolverConfig& config);

// --- Oracle ---

struct BruteForceResult {
  double value = 0.0;
  int64_t num_profiles = 0;
  int64_t num_trigger_agents = 0;
  // Distribution over enumerated pure profiles (odometer order).
  std::vector<double> distribution;
};

// Exact optimum over distributions of pure profiles subject to one
// constraint per trigger agent (trigger plus pure deviation continuation).
// Enumerates full (unreduced) pure strategies; intended for tiny games.
// corrupt_incentive_sign flips every constraint's sense and exists only so
// fault-injection tests can prove the oracle comparison has teeth.
BruteForceResult BruteForceOptimal(const Game& game, const SequenceIndex& seq,
                                   Concept notion, const Objective& objective,
                                   int64_t profile_cap = 20'000,
                                   int64_t deviation_cap = 1'000,
                                   bool corrupt_incentive_sign = false);

// --- Payoff-space sweep ---

struct PayoffPoint {
  double theta = 0.0;
  std::vector<double> payoffs;  // per player at the supporting plan
};

// For n_directions angles theta_j = 2*pi*j/n, maximizes
// cos(theta) u_1 + sin(theta) u_2 and reports the supporting payoff
// vectors. Requires two players, or three players in a constant-sum game.
std::vector<PayoffPoint> PayoffSpace(const Game& game,
                                     const SequenceIndex& seq,
                                     const PublicPartition& partition,
                                     const JointSequenceSpace& space,
                                     Concept notion, int n_directions,
                                     const std::string& engine,
                                     const SolveOptions& options = {});

}  // namespace correq

#endif  // CORREQ_SOLVERS_H_
