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

#ifndef CORREQ_TRIGGERS_H_
#define CORREQ_TRIGGERS_H_

// Trigger deviations and the joint-sequence space they induce.
//
// A correlation device recommends behavior; a deviating player picks a
// trigger: a moment at which they stop following recommendations and play an
// arbitrary continuation of their own. The three equilibrium notions differ
// only in what a trigger is:
//   - kNfcce: the player defects before the game starts (one trigger per
//     player).
//   - kEfcce: the player defects on reaching an information set, before
//     seeing the recommendation there (one trigger per infoset).
//   - kEfce: the player defects on seeing a specific recommendation at an
//     information set (one trigger per infoset-action pair).
//
// A trigger history h^tau is a node h tagged with the deviation state: either
// no deviation happened yet (tau = bottom) or trigger tau fired at some
// ancestor. Its joint sequence sigma(h^tau) records, for each player, the
// sequence they played to reach h, except that the deviator's component is
// frozen at the sequence that identifies the trigger. The set of all joint
// sequences reachable this way (across all three notions) indexes every
// linear object downstream: correlation plans assign a probability to each
// joint sequence.

#include <cstdint>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "correq/game.h"
#include "correq/rational.h"

namespace correq {

enum class Concept { kNfcce = 0, kEfcce = 1, kEfce = 2 };

inline constexpr int kNumConcepts = 3;

// "nfcce", "efcce", "efce".
std::string ConceptName(Concept notion);
// Accepts the names above (case-insensitive); throws std::invalid_argument.
Concept ParseConcept(const std::string& name);

struct Trigger {
  Concept notion;
  PlayerId player = -1;
  InfosetId infoset = -1;  // -1 for kNfcce
  ActionIndex action = -1;  // >= 0 only for kEfce
  int id = -1;              // index within the concept's trigger list
};

// Deterministic trigger order: by player, then infoset id, then action.
std::vector<Trigger> EnumerateTriggers(const Game& game,
                                       const SequenceIndex& seq,
                                       Concept notion);

// In containers indexed by "trigger or bottom", bottom is -1.
inline constexpr int kBottom = -1;

// The joint-sequence space: interned vectors of per-player sequence ids.
// Joint sequence 0 is always the all-empty vector. The enumeration order is
// fixed: first sigma(h^bottom) for every node h in preorder, then for each
// concept (kNfcce, kEfcce, kEfce), for each trigger in order, for each node
// in preorder, the joint sequences of the valid trigger histories h^tau.
class JointSequenceSpace {
 public:
  JointSequenceSpace(const Game& game, const SequenceIndex& seq);

  const Game& game() const { return *game_; }
  const SequenceIndex& seq() const { return *seq_; }

  int num_joint_sequences() const {
    return static_cast<int>(joint_sequences_.size());
  }
  // Per-player sequence ids (global SeqId), length num_players.
  const std::vector<SeqId>& joint_sequence(int js) const {
    return joint_sequences_[js];
  }
  int empty_joint_sequence() const { return 0; }
  // sigma(h^bottom); defined for every node.
  int joint_seq_of_node(NodeId h) const { return node_joint_seq_[h]; }
  // Id of an interned vector, or -1 when absent.
  int Find(const std::vector<SeqId>& sigma) const;

  const std::vector<Trigger>& triggers(Concept notion) const {
    return triggers_[static_cast<int>(notion)];
  }

  // Whether h^tau is a well-formed trigger history: some trigger point for
  // tau lies on the path to h and, for kEfce, the recommended action was not
  // taken there. trigger indexes triggers(concept); kBottom is always valid.
  bool ValidTriggerHistory(Concept notion, NodeId h, int trigger) const;
  // A valid h^tau is fresh when h is the earliest node with that deviation
  // state, i.e. the trigger fired "just now".
  bool FreshTriggerHistory(Concept notion, NodeId h, int trigger) const;
  // sigma(h^tau) for a valid trigger history; -1 when invalid.
  int JointSeqOfTriggerHistory(Concept notion, NodeId h, int trigger) const;

  // Ascending joint-sequence ids of valid terminal trigger histories for the
  // concept (including every sigma(z^bottom)).
  const std::vector<int>& terminal_joint_seqs(Concept notion) const {
    return terminal_joint_seqs_[static_cast<int>(notion)];
  }
  // Canonical witness of a terminal joint sequence: the lexicographically
  // smallest (terminal id, trigger id) pair mapping to it, with bottom
  // ordered before real triggers. Second component is kBottom or a trigger
  // id. Throws std::out_of_range if js is not terminal for the concept.
  std::pair<NodeId, int> TerminalRepresentative(Concept notion, int js) const;

  // The deviating player's sequence right after trigger tau fires.
  SeqId TriggerSequence(const Trigger& trigger) const;

 private:
  int Intern(const std::vector<SeqId>& sigma);

  const Game* game_;
  const SequenceIndex* seq_;
  std::vector<std::vector<SeqId>> joint_sequences_;
  std::unordered_map<std::string, int> intern_;  // packed key -> id
  std::vector<int> node_joint_seq_;
  std::vector<std::vector<Trigger>> triggers_;  // per concept
  // Per concept: flat (node, trigger) -> joint seq id or -1.
  std::vector<std::vector<int>> trigger_history_js_;
  std::vector<std::vector<int>> terminal_joint_seqs_;
  // Per concept: terminal js -> representative (node, trigger).
  std::vector<std::unordered_map<int, std::pair<NodeId, int>>> reps_;
};

// The deviation polytope of a trigger: sequence-form strategies of the
// deviating player over the information sets reachable after the trigger
// fires. Variable 0 is a synthetic root fixed to one; variable v >= 1 is the
// local pair local_pairs[v - 1] = (infoset, action). For a kEfce trigger the
// recommended action at the trigger infoset and everything below it are
// excluded: a deviation must change the action at that infoset. When that
// infoset has a single action there is no legal deviation at all; the
// polytope is then marked `vacuous` (its constraint system is infeasible)
// and consumers must skip the trigger.
//
// Constraint rows (the matrix F, stored in `entries`, and the rhs vector f):
//   row 0:                 mu[0] = 1                        (f rhs 1)
//   row 1 + r, infoset I:  sum_a mu[(I,a)] - mu[parent(I)] = 0
// where parent(I) is the local pair of the deviator's last action above I,
// or variable 0 when the trigger itself is the last influence.
struct DeviationPolytope {
  PlayerId player = -1;
  bool vacuous = false;
  std::vector<std::pair<InfosetId, ActionIndex>> local_pairs;
  std::vector<InfosetId> infosets;  // one constraint row each, ascending
  struct Entry {
    int row;
    int var;
    int coef;  // +1 or -1
  };
  std::vector<Entry> entries;  // includes row 0: (0, 0, +1)

  int num_vars() const { return static_cast<int>(local_pairs.size()) + 1; }
  int num_rows() const { return static_cast<int>(infosets.size()) + 1; }
  // Variable id of a local pair, or -1 when the pair is not local.
  int VarOf(InfosetId infoset, ActionIndex action) const;
  // Variable of the deviator's last local action on the path to node h, or 0
  // when the deviator took no local action on that path.
  int LastLocalVar(const Game& game, const SequenceIndex& seq, NodeId h) const;

  std::unordered_map<int64_t, int> var_of_pair;  // (infoset << 20) | action
};

DeviationPolytope BuildDeviationPolytope(const Game& game,
                                         const SequenceIndex& seq,
                                         const Trigger& trigger);

// Incentive data of one trigger, exact. For correlation plan xi (indexed by
// joint sequence) the deviation benefit of the trigger is
//   max over mu in Q of  sum A[js, v] xi[js] mu[v]  -  sum b[js] xi[js],
// where Q is the deviation polytope. A accumulates u_i(z) p_c(z) at
// (sigma(z^tau), last-local-var(z)) over valid terminal trigger histories
// z^tau; b accumulates u_i(z) p_c(z) at sigma(z^bottom) over the honest
// terminals covered by the trigger: every terminal (kNfcce), terminals below
// the trigger infoset (kEfcce), or terminals below the recommended action at
// the trigger infoset (kEfce). Every joint sequence referenced is a terminal
// joint sequence of the trigger's concept.
//
// Entries are sorted ascending by (joint_seq, var) resp. joint_seq, with one
// entry per index pair; entries whose exact accumulated value is zero are
// dropped.
struct TriggerIncentives {
  Trigger trigger;
  DeviationPolytope polytope;
  struct AEntry {
    int joint_seq;
    int var;
    Rational value;
  };
  std::vector<AEntry> a_entries;
  std::vector<std::pair<int, Rational>> b_entries;
};

TriggerIncentives BuildTriggerIncentives(const Game& game,
                                         const SequenceIndex& seq,
                                         const JointSequenceSpace& space,
                                         const Trigger& trigger);

}  // namespace correq

#endif  // CORREQ_TRIGGERS_H_
