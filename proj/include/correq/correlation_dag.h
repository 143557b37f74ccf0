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

#ifndef CORREQ_CORRELATION_DAG_H_
#define CORREQ_CORRELATION_DAG_H_

// A compact DAG whose source-to-sink flows are exactly the correlation plans
// of a game, specialized to one deviation notion.
//
// The DAG alternates two node kinds. An observation node is a set of trigger
// histories: everything the correlation device must still prescribe for,
// given the prescriptions it already made on this branch. A decision node
// groups the non-terminal elements of an observation node that lie in one
// public state; a prescription at a decision node picks one action for every
// infoset the device still controls there, and leads to a fresh observation
// node containing the resulting children (deviators, whom the device no
// longer controls, contribute all their children). Decision nodes with equal
// element sets are shared, which is where the exponential savings come from;
// sharing is sound because coexisting branches live in disjoint public
// states. Terminal elements route the branch's flow into one sink per
// terminal joint sequence, so the sink flows are the correlation plan.

#include <cstdint>
#include <stdexcept>
#include <utility>
#include <vector>

#include "correq/game.h"
#include "correq/triggers.h"

namespace correq {

struct OutOfMemoryBudget : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct DagOptions {
  // Upper bound on total DAG edges before construction aborts with
  // OutOfMemoryBudget.
  int64_t edge_budget = 50'000'000;
};

struct DagStats {
  int64_t num_observation_nodes = 0;
  int64_t num_decision_nodes = 0;
  int64_t num_terminals = 0;   // sinks, one per terminal joint sequence
  int64_t num_nodes = 0;       // observation + decision + sinks
  int64_t num_edges = 0;       // all edges, including sink transitions
  int64_t num_prescriptions = 0;  // decision -> observation edges only
  int64_t max_belief_size = 0;    // largest decision-node element set
};

class CorrelationDag {
 public:
  struct Decision {
    int public_state = -1;
    // Infosets the device prescribes for here, ascending ids.
    std::vector<InfosetId> active_infosets;
    // Parent observation nodes (this node is shared between branches).
    std::vector<int> parents;
    // One child observation node per prescription. Prescription p assigns
    // action (p / stride[j]) % num_actions(active_infosets[j]), i.e. an
    // odometer with the last infoset fastest.
    std::vector<int> children;
  };

  Concept notion() const { return concept_; }
  int source() const { return 0; }
  int num_observation_nodes() const {
    return static_cast<int>(num_obs_nodes_);
  }
  const std::vector<Decision>& decisions() const { return decisions_; }
  // Terminal sinks, parallel arrays: sink t collects joint sequence
  // terminal_joint_seqs()[t].
  const std::vector<int>& terminal_joint_seqs() const {
    return terminal_joint_seqs_;
  }
  // Observation -> sink transitions, deduplicated per observation node.
  const std::vector<std::pair<int, int>>& terminal_edges() const {
    return terminal_edges_;
  }
  DagStats stats() const;

 private:
  friend CorrelationDag BuildCorrelationDag(const Game&, const SequenceIndex&,
                                            const PublicPartition&,
                                            const JointSequenceSpace&, Concept,
                                            const DagOptions&);
  Concept concept_ = Concept::kNfcce;
  int64_t num_obs_nodes_ = 0;
  int64_t max_belief_size_ = 0;
  std::vector<Decision> decisions_;
  std::vector<int> terminal_joint_seqs_;
  std::vector<std::pair<int, int>> terminal_edges_;
};

CorrelationDag BuildCorrelationDag(const Game& game, const SequenceIndex& seq,
                                   const PublicPartition& partition,
                                   const JointSequenceSpace& space,
                                   Concept notion,
                                   const DagOptions& options = {});

// Linear description of the flow polytope. Variables: one per observation
// node (ids [0, num_observation_nodes)), then one per terminal sink; all in
// [0, 1]. Everything is an equality:
//   - rows: source flow is one, and per decision node, inflow (sum of
//     parents) equals outflow (sum of prescription children) — exactly
//     1 + #decision rows;
//   - projections: each sink variable equals the summed flow of the
//     observation nodes transitioning into it, which is the plan value of
//     the sink's joint sequence.
struct DagFlowSystem {
  int num_vars = 0;
  int num_observation_vars = 0;
  struct Row {
    std::vector<std::pair<int, double>> terms;
    double rhs = 0.0;
  };
  std::vector<Row> rows;
  std::vector<Row> projections;

  int observation_var(int obs) const { return obs; }
  int terminal_var(int t) const { return num_observation_vars + t; }
};

DagFlowSystem BuildFlowSystem(const CorrelationDag& dag);

// The 0/1 flow of the deterministic plan that prescribes profile[I] at every
// infoset I. Length and layout match BuildFlowSystem variables; the sink
// section is the plan's correlation vector restricted to terminal joint
// sequences.
std::vector<double> DagFlowsForPureProfile(const CorrelationDag& dag,
                                           const Game& game,
                                           const JointSequenceSpace& space,
                                           const std::vector<ActionIndex>&
                                               profile);

}  // namespace correq

#endif  // CORREQ_CORRELATION_DAG_H_
