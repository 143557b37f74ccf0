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

#ifndef CORREQ_VSF_H_
#define CORREQ_VSF_H_

// The two-player sequence-pair relaxation of correlation plans, and its
// semi-randomized restrictions.
//
// A correlation plan assigns a probability xi[s1, s2] to each relevant pair
// of sequences (one per player). The relaxation keeps only the linear
// consistency constraints: the empty pair has probability one, and expanding
// either coordinate across the actions of an information set preserves mass.
// Restricting one player's marginal to be deterministic (0/1) yields the
// semi-randomized sets; their convex hull (from either side) is exactly the
// set of true correlation plans, which is what column generation exploits.

#include <stdexcept>
#include <vector>

#include "correq/lp.h"
#include "correq/triggers.h"

namespace correq {

struct NotTwoPlayer : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Equality rows over variables indexed by joint sequence (the two-player
// joint-sequence space doubles as the relevant-pair table).
struct VsfSystem {
  int num_vars = 0;
  struct Row {
    std::vector<std::pair<int, double>> terms;
    double rhs = 0.0;
  };
  std::vector<Row> rows;
};

// Throws NotTwoPlayer for other player counts. A probability-mass row
// (sum_a xi[(I,a), s] = xi[parent, s]) is emitted whenever every referenced
// pair is a known joint sequence; the space guarantees all-or-none presence,
// and partial presence aborts.
VsfSystem BuildVsfSystem(const JointSequenceSpace& space);

// Largest violation of the consistency rows and the [0,1] bounds. Rows (or
// bounds) touching NaN entries are skipped and counted, so partially
// determined plans are checked on exactly the claims they make.
struct VsfResidualReport {
  double residual = 0.0;
  int64_t rows_checked = 0;
  int64_t rows_skipped = 0;
};
VsfResidualReport VsfResidual(const VsfSystem& system,
                              const std::vector<double>& xi);

// Fills NaN entries bottom-up: a row whose expansion side is fully known
// determines its parent entry. Runs to fixpoint; entries no row determines
// stay NaN.
void CompletePlan(const VsfSystem& system, std::vector<double>* xi);

// Mixed-integer model whose feasible points are the semi-randomized plans
// with player `side`'s marginal deterministic: variables are joint
// sequences, rows are the consistency system, and the binaries are side's
// marginal entries xi[(s_side, empty)]. objective is per joint sequence.
LinearModel SemiRandomizedModel(const VsfSystem& system,
                                const JointSequenceSpace& space, int side,
                                const std::vector<double>& objective);

// Marginal of a plan for one player: entry j is xi[(s, empty)] for that
// player's j-th sequence (0 is the empty sequence, so entry 0 is 1).
std::vector<double> PlanMarginal(const JointSequenceSpace& space,
                                 const std::vector<double>& xi, int side);

// Product plan with the given marginals: xi[(s1, s2)] = m1[s1] * m2[s2] over
// all joint sequences. Marginals are indexed like PlanMarginal output.
std::vector<double> TensorPlan(const JointSequenceSpace& space,
                               const std::vector<double>& m1,
                               const std::vector<double>& m2);

// Whether xi equals the product of its own marginals within tol.
bool IsProductPlan(const JointSequenceSpace& space,
                   const std::vector<double>& xi, double tol = 1e-6);

}  // namespace correq

#endif  // CORREQ_VSF_H_
