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

#include "correq/triggers.h"

#include <algorithm>
#include <cctype>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>

namespace correq {
namespace {

std::string PackKey(const std::vector<SeqId>& sigma) {
  return std::string(reinterpret_cast<const char*>(sigma.data()),
                     sigma.size() * sizeof(SeqId));
}

int64_t PairKey(InfosetId infoset, ActionIndex action) {
  return (static_cast<int64_t>(infoset) << 20) | action;
}

// The deviating player's sequence component while the trigger is active.
SeqId FrozenSequence(const SequenceIndex& seq, const Trigger& trigger) {
  switch (trigger.notion) {
    case Concept::kNfcce:
      return seq.empty_sequence(trigger.player);
    case Concept::kEfcce:
      return seq.infoset_parent_seq(trigger.infoset);
    case Concept::kEfce:
      return seq.sequence_id(trigger.infoset, trigger.action);
  }
  throw std::invalid_argument("unknown equilibrium concept");
}

// Whether terminal z contributes to the honest side of the trigger's
// incentive constraint: everywhere for kNfcce, below the trigger infoset for
// kEfcce, below the recommended action for kEfce.
bool CoveredTerminal(const Game& game, const Trigger& trigger, NodeId z) {
  if (trigger.notion == Concept::kNfcce) return true;
  for (NodeId member : game.infoset(trigger.infoset).members) {
    if (!game.IsAncestorOrSelf(member, z)) continue;
    if (trigger.notion == Concept::kEfcce) return true;
    return game.IsAncestorOrSelf(
        game.node(member).actions[trigger.action].child, z);
  }
  return false;
}

}  // namespace

std::string ConceptName(Concept notion) {
  switch (notion) {
    case Concept::kNfcce:
      return "nfcce";
    case Concept::kEfcce:
      return "efcce";
    case Concept::kEfce:
      return "efce";
  }
  throw std::invalid_argument("unknown equilibrium concept");
}

Concept ParseConcept(const std::string& name) {
  std::string lower(name);
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  if (lower == "nfcce") return Concept::kNfcce;
  if (lower == "efcce") return Concept::kEfcce;
  if (lower == "efce") return Concept::kEfce;
  throw std::invalid_argument("unknown equilibrium concept: " + name);
}

std::vector<Trigger> EnumerateTriggers(const Game& game,
                                       const SequenceIndex& /*seq*/,
                                       Concept notion) {
  std::vector<Trigger> out;
  if (notion == Concept::kNfcce) {
    for (PlayerId player = 0; player < game.num_players(); ++player) {
      out.push_back(Trigger{notion, player, -1, -1, 0});
    }
  } else {
    std::vector<std::pair<PlayerId, InfosetId>> order;
    for (InfosetId infoset = 0; infoset < game.num_infosets(); ++infoset) {
      order.push_back({game.infoset(infoset).player, infoset});
    }
    std::sort(order.begin(), order.end());
    for (const auto& [player, infoset] : order) {
      if (notion == Concept::kEfcce) {
        out.push_back(Trigger{notion, player, infoset, -1, 0});
      } else {
        for (ActionIndex action = 0;
             action < game.infoset(infoset).num_actions; ++action) {
          out.push_back(Trigger{notion, player, infoset, action, 0});
        }
      }
    }
  }
  for (int k = 0; k < static_cast<int>(out.size()); ++k) out[k].id = k;
  return out;
}

JointSequenceSpace::JointSequenceSpace(const Game& game,
                                       const SequenceIndex& seq)
    : game_(&game), seq_(&seq) {
  const int players = game.num_players();
  triggers_.resize(kNumConcepts);
  trigger_history_js_.resize(kNumConcepts);
  terminal_joint_seqs_.resize(kNumConcepts);
  reps_.resize(kNumConcepts);
  for (int c = 0; c < kNumConcepts; ++c) {
    triggers_[c] = EnumerateTriggers(game, seq, static_cast<Concept>(c));
  }

  std::vector<std::set<int>> terminal_sets(kNumConcepts);
  auto note_terminal = [&](int c, int js, NodeId z, int tag) {
    terminal_sets[c].insert(js);
    std::pair<NodeId, int> witness(z, tag);
    auto [it, inserted] = reps_[c].try_emplace(js, witness);
    if (!inserted && witness < it->second) it->second = witness;
  };

  // Undeviated joints first, one per node in preorder; node ids are already
  // preorder positions, so the all-empty joint of the root interns as 0.
  node_joint_seq_.resize(game.num_nodes());
  std::vector<SeqId> sigma(players);
  for (NodeId h = 0; h < game.num_nodes(); ++h) {
    for (PlayerId p = 0; p < players; ++p) sigma[p] = seq.sequence_at(h, p);
    node_joint_seq_[h] = Intern(sigma);
    if (game.node(h).kind == NodeKind::kTerminal) {
      for (int c = 0; c < kNumConcepts; ++c) {
        note_terminal(c, node_joint_seq_[h], h, kBottom);
      }
    }
  }

  // Deviated joints: concept-major, trigger-major, nodes in preorder within
  // each trigger. Infoset members own disjoint subtrees in ascending order,
  // so scanning members in order visits valid nodes in global preorder.
  for (int c = 0; c < kNumConcepts; ++c) {
    const std::vector<Trigger>& triggers = triggers_[c];
    const int num_triggers = static_cast<int>(triggers.size());
    trigger_history_js_[c].assign(
        static_cast<size_t>(game.num_nodes()) * num_triggers, -1);
    for (const Trigger& trigger : triggers) {
      const SeqId frozen = FrozenSequence(seq, trigger);
      auto visit = [&](NodeId h) {
        for (PlayerId p = 0; p < players; ++p) {
          sigma[p] = seq.sequence_at(h, p);
        }
        sigma[trigger.player] = frozen;
        int js = Intern(sigma);
        trigger_history_js_[c][static_cast<size_t>(h) * num_triggers +
                               trigger.id] = js;
        if (game.node(h).kind == NodeKind::kTerminal) {
          note_terminal(c, js, h, trigger.id);
        }
      };
      if (trigger.notion == Concept::kNfcce) {
        for (NodeId h = 0; h < game.num_nodes(); ++h) visit(h);
        continue;
      }
      for (NodeId member : game.infoset(trigger.infoset).members) {
        NodeId excluded = trigger.notion == Concept::kEfce
                              ? game.node(member).actions[trigger.action].child
                              : kNoNode;
        for (NodeId h = member;
             h < game.num_nodes() && game.IsAncestorOrSelf(member, h); ++h) {
          if (excluded != kNoNode && game.IsAncestorOrSelf(excluded, h)) {
            continue;
          }
          visit(h);
        }
      }
    }
    terminal_joint_seqs_[c].assign(terminal_sets[c].begin(),
                                   terminal_sets[c].end());
  }
}

int JointSequenceSpace::Intern(const std::vector<SeqId>& sigma) {
  auto [it, inserted] = intern_.try_emplace(
      PackKey(sigma), static_cast<int>(joint_sequences_.size()));
  if (inserted) joint_sequences_.push_back(sigma);
  return it->second;
}

int JointSequenceSpace::Find(const std::vector<SeqId>& sigma) const {
  auto it = intern_.find(PackKey(sigma));
  return it == intern_.end() ? -1 : it->second;
}

bool JointSequenceSpace::ValidTriggerHistory(Concept notion, NodeId h,
                                             int trigger) const {
  return JointSeqOfTriggerHistory(notion, h, trigger) >= 0;
}

bool JointSequenceSpace::FreshTriggerHistory(Concept notion, NodeId h,
                                             int trigger) const {
  if (trigger == kBottom) return false;
  const Trigger& t = triggers_[static_cast<int>(notion)][trigger];
  switch (notion) {
    case Concept::kNfcce:
      return h == game_->root();
    case Concept::kEfcce: {
      const GameNode& node = game_->node(h);
      return node.kind == NodeKind::kPlayer && node.infoset == t.infoset;
    }
    case Concept::kEfce: {
      const GameNode& node = game_->node(h);
      if (node.parent == kNoNode) return false;
      const GameNode& parent = game_->node(node.parent);
      return parent.kind == NodeKind::kPlayer &&
             parent.infoset == t.infoset &&
             node.action_in_parent != t.action;
    }
  }
  return false;
}

int JointSequenceSpace::JointSeqOfTriggerHistory(Concept notion, NodeId h,
                                                 int trigger) const {
  if (trigger == kBottom) return node_joint_seq_[h];
  const int c = static_cast<int>(notion);
  const size_t num_triggers = triggers_[c].size();
  return trigger_history_js_[c][static_cast<size_t>(h) * num_triggers +
                                trigger];
}

std::pair<NodeId, int> JointSequenceSpace::TerminalRepresentative(
    Concept notion, int js) const {
  return reps_[static_cast<int>(notion)].at(js);
}

SeqId JointSequenceSpace::TriggerSequence(const Trigger& trigger) const {
  return FrozenSequence(*seq_, trigger);
}

int DeviationPolytope::VarOf(InfosetId infoset, ActionIndex action) const {
  auto it = var_of_pair.find(PairKey(infoset, action));
  return it == var_of_pair.end() ? -1 : it->second;
}

int DeviationPolytope::LastLocalVar(const Game& game,
                                    const SequenceIndex& /*seq*/,
                                    NodeId h) const {
  for (NodeId cur = h; game.node(cur).parent != kNoNode;
       cur = game.node(cur).parent) {
    const GameNode& parent = game.node(game.node(cur).parent);
    if (parent.kind != NodeKind::kPlayer || parent.player != player) continue;
    int var = VarOf(parent.infoset, game.node(cur).action_in_parent);
    if (var >= 0) return var;
  }
  return 0;
}

DeviationPolytope BuildDeviationPolytope(const Game& game,
                                         const SequenceIndex& seq,
                                         const Trigger& trigger) {
  DeviationPolytope dev;
  dev.player = trigger.player;
  const bool efce = trigger.notion == Concept::kEfce;
  dev.vacuous =
      efce && game.infoset(trigger.infoset).num_actions == 1;

  // Local infosets: everything the deviator can reach once the trigger
  // fires. The recommended branch of a kEfce trigger is not reachable.
  std::vector<InfosetId> stack;
  if (trigger.notion == Concept::kNfcce) {
    for (InfosetId infoset = 0; infoset < game.num_infosets(); ++infoset) {
      if (game.infoset(infoset).player == trigger.player &&
          seq.infoset_parent_seq(infoset) ==
              seq.empty_sequence(trigger.player)) {
        stack.push_back(infoset);
      }
    }
  } else {
    stack.push_back(trigger.infoset);
  }
  while (!stack.empty()) {
    InfosetId infoset = stack.back();
    stack.pop_back();
    dev.infosets.push_back(infoset);
    for (ActionIndex action = 0;
         action < game.infoset(infoset).num_actions; ++action) {
      if (efce && infoset == trigger.infoset && action == trigger.action) {
        continue;
      }
      for (InfosetId child :
           seq.infosets_below(seq.sequence_id(infoset, action))) {
        stack.push_back(child);
      }
    }
  }
  std::sort(dev.infosets.begin(), dev.infosets.end());

  for (InfosetId infoset : dev.infosets) {
    for (ActionIndex action = 0;
         action < game.infoset(infoset).num_actions; ++action) {
      if (efce && infoset == trigger.infoset && action == trigger.action) {
        continue;
      }
      dev.var_of_pair[PairKey(infoset, action)] =
          static_cast<int>(dev.local_pairs.size()) + 1;
      dev.local_pairs.push_back({infoset, action});
    }
  }

  dev.entries.push_back({0, 0, +1});
  const SeqId entry_seq = trigger.notion == Concept::kNfcce
                              ? seq.empty_sequence(trigger.player)
                              : seq.infoset_parent_seq(trigger.infoset);
  for (int r = 0; r < static_cast<int>(dev.infosets.size()); ++r) {
    InfosetId infoset = dev.infosets[r];
    SeqId parent = seq.infoset_parent_seq(infoset);
    int parent_var = 0;
    if (parent != entry_seq) {
      parent_var = dev.VarOf(seq.sequence(parent).infoset,
                             seq.sequence(parent).action);
    }
    for (ActionIndex action = 0;
         action < game.infoset(infoset).num_actions; ++action) {
      int var = dev.VarOf(infoset, action);
      if (var >= 0) dev.entries.push_back({1 + r, var, +1});
    }
    dev.entries.push_back({1 + r, parent_var, -1});
  }
  return dev;
}

TriggerIncentives BuildTriggerIncentives(const Game& game,
                                         const SequenceIndex& seq,
                                         const JointSequenceSpace& space,
                                         const Trigger& trigger) {
  TriggerIncentives inc;
  inc.trigger = trigger;
  inc.polytope = BuildDeviationPolytope(game, seq, trigger);
  std::map<std::pair<int, int>, Rational> gain;
  std::map<int, Rational> honest;
  for (NodeId z = 0; z < game.num_nodes(); ++z) {
    if (game.node(z).kind != NodeKind::kTerminal) continue;
    const Rational w =
        game.node(z).payoffs[trigger.player] * game.ChanceReach(z);
    if (w == Rational(0)) continue;
    int js = space.JointSeqOfTriggerHistory(trigger.notion, z, trigger.id);
    if (js >= 0) {
      gain[{js, inc.polytope.LastLocalVar(game, seq, z)}] += w;
    }
    if (CoveredTerminal(game, trigger, z)) {
      honest[space.joint_seq_of_node(z)] += w;
    }
  }
  for (const auto& [key, value] : gain) {
    if (value == Rational(0)) continue;
    inc.a_entries.push_back({key.first, key.second, value});
  }
  for (const auto& [js, value] : honest) {
    if (value == Rational(0)) continue;
    inc.b_entries.push_back({js, value});
  }
  return inc;
}

}  // namespace correq
