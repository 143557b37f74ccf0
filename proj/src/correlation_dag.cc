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

#include "correq/correlation_dag.h"

#include <algorithm>
#include <cstdint>
#include <map>
#include <queue>
#include <unordered_map>
#include <utility>
#include <vector>

#include "correq/game.h"
#include "correq/triggers.h"

namespace correq {
namespace {

// One trigger history: a game node together with the deviation that spawned
// this copy of it (kBottom while the branch still obeys the device).
struct Element {
  NodeId node = kNoNode;
  int tag = kBottom;

  friend bool operator<(const Element& a, const Element& b) {
    return a.node != b.node ? a.node < b.node : a.tag < b.tag;
  }
  friend bool operator==(const Element& a, const Element& b) {
    return a.node == b.node && a.tag == b.tag;
  }
};

class DagBuilder {
 public:
  DagBuilder(const Game& game, const SequenceIndex& seq,
             const PublicPartition& partition, const JointSequenceSpace& space,
             Concept notion, const DagOptions& options)
      : game_(game),
        seq_(seq),
        partition_(partition),
        space_(space),
        notion_(notion),
        options_(options),
        triggers_(space.triggers(notion)) {
    if (notion == Concept::kEfcce) {
      infoset_trigger_.assign(game.num_infosets(), -1);
      for (const Trigger& t : triggers_) infoset_trigger_[t.infoset] = t.id;
    } else if (notion == Concept::kEfce) {
      seq_trigger_.assign(seq.num_sequences(), -1);
      for (const Trigger& t : triggers_) {
        seq_trigger_[seq.sequence_id(t.infoset, t.action)] = t.id;
      }
    }
  }

  void Run() { MakeObservation({Element{game_.root(), kBottom}}); }

  int num_observation_nodes_ = 0;
  int64_t max_belief_size_ = 0;
  std::vector<CorrelationDag::Decision> decisions_;
  std::vector<int> terminal_joint_seqs_;
  std::vector<std::pair<int, int>> terminal_edges_;

 private:
  // True when the device still prescribes an action at this element: the
  // node belongs to a player who is not the element's deviator.
  bool Active(const Element& e) const {
    const GameNode& node = game_.node(e.node);
    if (node.kind != NodeKind::kPlayer) return false;
    return e.tag == kBottom || triggers_[e.tag].player != node.player;
  }

  void CountEdge() {
    if (++num_edges_ > options_.edge_budget) {
      throw OutOfMemoryBudget("correlation dag exceeds the edge budget");
    }
  }

  // Adds the copies whose deviation starts exactly at this observation: the
  // device just revealed a prescription some deviator may refuse, so their
  // frozen counterparts enter the node set here and are carried along below.
  void Augment(std::vector<Element>* elements) const {
    size_t honest = elements->size();
    for (size_t i = 0; i < honest; ++i) {
      const Element e = (*elements)[i];
      if (e.tag != kBottom) continue;
      switch (notion_) {
        case Concept::kNfcce:
          // Deviations start at the root, one per player.
          if (e.node == game_.root()) {
            for (const Trigger& t : triggers_) {
              elements->push_back({e.node, t.id});
            }
          }
          break;
        case Concept::kEfcce:
          // A player may walk away upon seeing their infoset, before any
          // recommendation: the copy starts at the node itself.
          if (game_.node(e.node).kind == NodeKind::kPlayer) {
            elements->push_back(
                {e.node, infoset_trigger_[game_.node(e.node).infoset]});
          }
          break;
        case Concept::kEfce: {
          // A player may refuse the action just recommended at the parent:
          // copies start at every sibling reached by a different action.
          NodeId parent = game_.node(e.node).parent;
          if (parent == kNoNode ||
              game_.node(parent).kind != NodeKind::kPlayer) {
            break;
          }
          const GameNode& parent_node = game_.node(parent);
          ActionIndex taken = game_.node(e.node).action_in_parent;
          int trigger =
              seq_trigger_[seq_.sequence_id(parent_node.infoset, taken)];
          for (ActionIndex alt = 0;
               alt < static_cast<ActionIndex>(parent_node.actions.size());
               ++alt) {
            if (alt == taken) continue;
            elements->push_back({parent_node.actions[alt].child, trigger});
          }
          break;
        }
      }
    }
  }

  int MakeObservation(std::vector<Element> elements) {
    Augment(&elements);
    int obs = num_observation_nodes_++;

    // Terminal elements feed the sink of their joint sequence; only the
    // canonical representative adds the edge, so copies sharing a joint
    // sequence inside one observation node are counted once.
    std::map<int, std::vector<Element>> by_state;
    for (const Element& e : elements) {
      if (game_.node(e.node).kind == NodeKind::kTerminal) {
        int js = space_.JointSeqOfTriggerHistory(notion_, e.node, e.tag);
        if (space_.TerminalRepresentative(notion_, js) ==
            std::make_pair(e.node, e.tag)) {
          auto [it, inserted] =
              sink_of_js_.try_emplace(js, terminal_joint_seqs_.size());
          if (inserted) terminal_joint_seqs_.push_back(js);
          terminal_edges_.emplace_back(obs, it->second);
          CountEdge();
        }
      } else {
        by_state[partition_.state_of[e.node]].push_back(e);
      }
    }

    // The remaining histories split into coexisting public states; each set
    // becomes (or joins) one decision node.
    for (auto& [state, belief] : by_state) {
      std::sort(belief.begin(), belief.end());
      int decision = MakeDecision(state, std::move(belief));
      decisions_[decision].parents.push_back(obs);
      CountEdge();
    }
    return obs;
  }

  int MakeDecision(int state, std::vector<Element> belief) {
    auto [it, inserted] = decision_memo_.try_emplace(std::move(belief), -1);
    if (!inserted) return it->second;
    const std::vector<Element>& elements = it->first;
    int id = static_cast<int>(decisions_.size());
    it->second = id;
    decisions_.emplace_back();
    decisions_[id].public_state = state;
    max_belief_size_ =
        std::max(max_belief_size_, static_cast<int64_t>(elements.size()));

    std::vector<InfosetId>& active = decisions_[id].active_infosets;
    for (const Element& e : elements) {
      if (Active(e)) active.push_back(game_.node(e.node).infoset);
    }
    std::sort(active.begin(), active.end());
    active.erase(std::unique(active.begin(), active.end()), active.end());

    // Odometer over the active infosets' actions, last infoset fastest.
    std::vector<InfosetId> infosets = active;  // `active` may reallocate.
    int64_t num_prescriptions = 1;
    for (InfosetId infoset : infosets) {
      num_prescriptions *= game_.infoset(infoset).num_actions;
    }
    std::vector<ActionIndex> prescribed(infosets.size(), 0);
    for (int64_t p = 0; p < num_prescriptions; ++p) {
      std::vector<Element> child;
      for (const Element& e : elements) {
        const GameNode& node = game_.node(e.node);
        if (Active(e)) {
          size_t j = std::lower_bound(infosets.begin(), infosets.end(),
                                      node.infoset) -
                     infosets.begin();
          child.push_back({node.actions[prescribed[j]].child, e.tag});
        } else {
          for (const GameAction& action : node.actions) {
            child.push_back({action.child, e.tag});
          }
        }
      }
      CountEdge();
      int child_obs = MakeObservation(std::move(child));
      decisions_[id].children.push_back(child_obs);

      // Advance the odometer.
      for (int j = static_cast<int>(infosets.size()) - 1; j >= 0; --j) {
        if (++prescribed[j] < game_.infoset(infosets[j]).num_actions) break;
        prescribed[j] = 0;
      }
    }
    return id;
  }

  const Game& game_;
  const SequenceIndex& seq_;
  const PublicPartition& partition_;
  const JointSequenceSpace& space_;
  const Concept notion_;
  const DagOptions& options_;
  const std::vector<Trigger>& triggers_;

  std::vector<int> infoset_trigger_;  // EFCCE: infoset -> trigger id.
  std::vector<int> seq_trigger_;      // EFCE: recommended sequence -> id.
  std::map<std::vector<Element>, int> decision_memo_;
  std::unordered_map<int, int> sink_of_js_;
  int64_t num_edges_ = 0;
};

}  // namespace

CorrelationDag BuildCorrelationDag(const Game& game, const SequenceIndex& seq,
                                   const PublicPartition& partition,
                                   const JointSequenceSpace& space,
                                   Concept notion, const DagOptions& options) {
  if (!game.IsTimed()) {
    throw NotTimed("correlation dag construction needs a timed game");
  }
  DagBuilder builder(game, seq, partition, space, notion, options);
  builder.Run();

  CorrelationDag dag;
  dag.concept_ = notion;
  dag.num_obs_nodes_ = builder.num_observation_nodes_;
  dag.max_belief_size_ = builder.max_belief_size_;
  dag.decisions_ = std::move(builder.decisions_);
  dag.terminal_joint_seqs_ = std::move(builder.terminal_joint_seqs_);
  dag.terminal_edges_ = std::move(builder.terminal_edges_);
  return dag;
}

DagStats CorrelationDag::stats() const {
  DagStats stats;
  stats.num_observation_nodes = num_obs_nodes_;
  stats.num_decision_nodes = static_cast<int64_t>(decisions_.size());
  stats.num_terminals = static_cast<int64_t>(terminal_joint_seqs_.size());
  stats.num_nodes = stats.num_observation_nodes + stats.num_decision_nodes +
                    stats.num_terminals;
  int64_t parent_edges = 0;
  int64_t prescription_edges = 0;
  for (const Decision& decision : decisions_) {
    parent_edges += static_cast<int64_t>(decision.parents.size());
    prescription_edges += static_cast<int64_t>(decision.children.size());
  }
  stats.num_prescriptions = prescription_edges;
  stats.num_edges = parent_edges + prescription_edges +
                    static_cast<int64_t>(terminal_edges_.size());
  stats.max_belief_size = max_belief_size_;
  return stats;
}

DagFlowSystem BuildFlowSystem(const CorrelationDag& dag) {
  DagFlowSystem sys;
  sys.num_observation_vars = dag.num_observation_nodes();
  sys.num_vars = sys.num_observation_vars +
                 static_cast<int>(dag.terminal_joint_seqs().size());

  sys.rows.reserve(1 + dag.decisions().size());
  DagFlowSystem::Row source;
  source.terms.emplace_back(sys.observation_var(dag.source()), 1.0);
  source.rhs = 1.0;
  sys.rows.push_back(std::move(source));
  for (const CorrelationDag::Decision& decision : dag.decisions()) {
    DagFlowSystem::Row row;
    for (int obs : decision.parents) {
      row.terms.emplace_back(sys.observation_var(obs), 1.0);
    }
    for (int child : decision.children) {
      row.terms.emplace_back(sys.observation_var(child), -1.0);
    }
    sys.rows.push_back(std::move(row));
  }

  sys.projections.assign(dag.terminal_joint_seqs().size(), {});
  for (size_t t = 0; t < sys.projections.size(); ++t) {
    sys.projections[t].terms.emplace_back(
        sys.terminal_var(static_cast<int>(t)), 1.0);
  }
  for (const auto& [obs, t] : dag.terminal_edges()) {
    sys.projections[t].terms.emplace_back(sys.observation_var(obs), -1.0);
  }
  return sys;
}

std::vector<double> DagFlowsForPureProfile(
    const CorrelationDag& dag, const Game& game,
    const JointSequenceSpace& space, const std::vector<ActionIndex>& profile) {
  (void)space;
  const auto& decisions = dag.decisions();
  int num_obs = dag.num_observation_nodes();
  std::vector<double> flow(
      static_cast<size_t>(num_obs) + dag.terminal_joint_seqs().size(), 0.0);
  flow[dag.source()] = 1.0;

  // Observation flows only settle once their producing decision fired, and a
  // decision only fires once all its parents settled, so walk the dag in
  // dependency order rather than construction order.
  std::vector<std::vector<int>> decisions_of_obs(num_obs);
  std::vector<int> missing_parents(decisions.size());
  for (size_t d = 0; d < decisions.size(); ++d) {
    missing_parents[d] = static_cast<int>(decisions[d].parents.size());
    for (int obs : decisions[d].parents) {
      decisions_of_obs[obs].push_back(static_cast<int>(d));
    }
  }
  std::queue<int> ready;
  ready.push(dag.source());
  while (!ready.empty()) {
    int obs = ready.front();
    ready.pop();
    for (int d : decisions_of_obs[obs]) {
      if (--missing_parents[d] != 0) continue;
      const CorrelationDag::Decision& decision = decisions[d];
      double inflow = 0.0;
      for (int parent : decision.parents) inflow += flow[parent];
      int64_t prescription = 0;
      for (InfosetId infoset : decision.active_infosets) {
        prescription = prescription * game.infoset(infoset).num_actions +
                       profile[infoset];
      }
      flow[decision.children[prescription]] += inflow;
      for (int child : decision.children) ready.push(child);
    }
  }

  for (const auto& [obs, t] : dag.terminal_edges()) {
    flow[static_cast<size_t>(num_obs) + t] += flow[obs];
  }
  return flow;
}

}  // namespace correq
