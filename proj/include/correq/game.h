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

#ifndef CORREQ_GAME_H_
#define CORREQ_GAME_H_

#include <stdexcept>
#include <string>
#include <vector>

#include "correq/rational.h"

namespace correq {

using PlayerId = int;
using NodeId = int;
using InfosetId = int;
using ActionIndex = int;
using SeqId = int;

inline constexpr PlayerId kChancePlayer = -1;
inline constexpr NodeId kNoNode = -1;

// Thrown when infoset members disagree on the owner's past actions.
struct PerfectRecallViolation : std::runtime_error {
  using std::runtime_error::runtime_error;
};
// Thrown when an operation requires a timed game (every infoset contained in
// a single layer) and the game is not timed.
struct NotTimed : std::runtime_error {
  using std::runtime_error::runtime_error;
};
// Thrown by MakeTimed when the precedence order on infosets has a cycle.
struct UntimableGame : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class NodeKind { kChance, kPlayer, kTerminal };

struct GameAction {
  std::string label;
  NodeId child = kNoNode;
  Rational prob;  // Meaningful only on chance nodes.
};

struct GameNode {
  NodeKind kind = NodeKind::kTerminal;
  PlayerId player = kChancePlayer;  // Player nodes only.
  InfosetId infoset = -1;           // Player nodes only.
  std::vector<GameAction> actions;
  std::vector<Rational> payoffs;  // Terminal nodes only; one entry per player.
  NodeId parent = kNoNode;
  ActionIndex action_in_parent = -1;
  int depth = 0;
};

struct Infoset {
  PlayerId player = -1;
  std::vector<NodeId> members;  // Ascending node ids.
  int num_actions = 0;
  std::string label;
};

// An extensive-form game with perfect recall. Node ids are depth-first
// preorder integers (the root is node 0, children in action order), which
// makes ancestor tests O(1) via subtree intervals and gives all enumeration
// orders in this codebase a stable meaning.
class Game {
 public:
  int num_players() const { return num_players_; }
  NodeId root() const { return 0; }
  int num_nodes() const { return static_cast<int>(nodes_.size()); }
  int num_infosets() const { return static_cast<int>(infosets_.size()); }
  const GameNode& node(NodeId id) const { return nodes_[id]; }
  const Infoset& infoset(InfosetId id) const { return infosets_[id]; }
  const std::vector<GameNode>& nodes() const { return nodes_; }
  const std::vector<Infoset>& infosets() const { return infosets_; }

  int num_terminals() const { return num_terminals_; }
  int max_depth() const { return max_depth_; }

  // True iff a == b or a is an ancestor of b.
  bool IsAncestorOrSelf(NodeId a, NodeId b) const {
    return a <= b && b < subtree_end_[a];
  }
  NodeId AncestorAtDepth(NodeId h, int depth) const {
    while (nodes_[h].depth > depth) h = nodes_[h].parent;
    return h;
  }

  // Product of chance probabilities along the root -> h path.
  const Rational& ChanceReach(NodeId h) const { return chance_reach_[h]; }

  // True iff every infoset's members share one depth.
  bool IsTimed() const;

 private:
  friend class GameBuilder;
  int num_players_ = 0;
  int num_terminals_ = 0;
  int max_depth_ = 0;
  std::vector<GameNode> nodes_;
  std::vector<Infoset> infosets_;
  std::vector<NodeId> subtree_end_;  // Subtree of h is [h, subtree_end_[h]).
  std::vector<Rational> chance_reach_;
};

// Incremental construction helper. Nodes are created root-first; Build()
// renumbers them in depth-first preorder, groups player nodes into infosets
// by (player, key), and validates the structure.
class GameBuilder {
 public:
  explicit GameBuilder(int num_players);

  // parent == kNoNode creates the root (allowed once). `prob` is consulted
  // only when the parent is a chance node.
  NodeId AddChance(NodeId parent, const std::string& edge_label,
                   const Rational& prob = Rational(1));
  NodeId AddPlayer(NodeId parent, const std::string& edge_label,
                   PlayerId player, const std::string& infoset_key,
                   const Rational& prob = Rational(1));
  NodeId AddTerminal(NodeId parent, const std::string& edge_label,
                     std::vector<Rational> payoffs,
                     const Rational& prob = Rational(1));

  // Throws std::invalid_argument on structural problems (missing root,
  // payoff arity, children on terminals). Semantic checks — probability
  // sums, infoset action agreement, perfect recall — are ValidateGame's job,
  // so that malformed inputs produce diagnostics instead of aborting.
  Game Build();

 private:
  struct ProtoNode {
    NodeKind kind;
    PlayerId player = kChancePlayer;
    std::string infoset_key;
    std::vector<Rational> payoffs;
    std::vector<int> children;
    std::vector<std::string> edge_labels;
    std::vector<Rational> edge_probs;
  };
  NodeId Attach(NodeId parent, const std::string& edge_label,
                const Rational& prob, ProtoNode node);

  int num_players_;
  std::vector<ProtoNode> protos_;
  bool has_root_ = false;
};

struct Diagnostics {
  bool ok = true;
  std::vector<std::string> issues;
};

// Structural sanity report: chance probabilities sum to one, payoff arity,
// infoset consistency, reachability. Non-throwing.
Diagnostics ValidateGame(const Game& game);

// Sequences. A sequence of player i is either the empty sequence or the pair
// (infoset, action) of the last action i took. Sequence ids are global across
// players; each player's empty sequence comes first in their block.
struct Sequence {
  PlayerId player = -1;
  InfosetId infoset = -1;  // -1 for the empty sequence.
  ActionIndex action = -1;
};

class SequenceIndex {
 public:
  int num_sequences() const { return static_cast<int>(sequences_.size()); }
  int num_player_sequences(PlayerId i) const {
    return static_cast<int>(player_sequences_[i].size());
  }
  const Sequence& sequence(SeqId s) const { return sequences_[s]; }
  const std::vector<SeqId>& player_sequences(PlayerId i) const {
    return player_sequences_[i];
  }
  SeqId empty_sequence(PlayerId i) const { return empty_[i]; }
  SeqId sequence_id(InfosetId infoset, ActionIndex action) const {
    return infoset_action_seq_[infoset][action];
  }
  // The owner's sequence leading to (but not including) the infoset.
  SeqId infoset_parent_seq(InfosetId infoset) const {
    return infoset_parent_[infoset];
  }
  // sigma_i(h): player i's sequence at node h, excluding any action at h.
  SeqId sequence_at(NodeId h, PlayerId i) const {
    return seq_at_[static_cast<size_t>(h) * num_players_ + i];
  }
  // Infosets of player i whose parent sequence is s (tree structure on
  // sequences, used for sequence-form constraint assembly).
  const std::vector<InfosetId>& infosets_below(SeqId s) const {
    return infosets_below_[s];
  }
  std::string SequenceLabel(SeqId s) const;

 private:
  friend SequenceIndex ComputeSequences(const Game& game);
  int num_players_ = 0;
  std::vector<Sequence> sequences_;
  std::vector<std::vector<SeqId>> player_sequences_;
  std::vector<SeqId> empty_;
  std::vector<std::vector<SeqId>> infoset_action_seq_;
  std::vector<SeqId> infoset_parent_;
  std::vector<SeqId> seq_at_;
  std::vector<std::vector<InfosetId>> infosets_below_;
};

// Throws PerfectRecallViolation when infoset members disagree on the owner's
// sequence.
SequenceIndex ComputeSequences(const Game& game);

// Public states: connected components, within each layer, of the relation
// "same private-state vector, or both precede a common infoset". Terminal
// nodes carry no public state. Requires a timed game (throws NotTimed).
struct PublicPartition {
  std::vector<int> state_of;                 // Per node; -1 for terminals.
  std::vector<std::vector<NodeId>> states;   // Members, ascending ids.
  std::vector<int> layer_of_state;
  int num_layers = 0;
};

PublicPartition ComputePublicStates(const Game& game,
                                    const SequenceIndex& seq);

struct GameParams {
  int k = 0;  // Max number of distinct player private states per public state.
  int b = 0;  // Max branching factor over non-chance nodes.
  int d = 0;  // Depth: number of nodes on the longest root->leaf path.
  int num_nodes = 0;
  int num_terminals = 0;
  std::vector<int> num_player_sequences;  // Including the empty sequence.
};

GameParams GameParameters(const Game& game, const SequenceIndex& seq,
                          const PublicPartition& partition);

// Result of MakeTimed: a timed game plus the id mapping back to the input.
// Inserted single-action chance padding nodes map to kNoNode.
struct TimedGame {
  Game game;
  std::vector<NodeId> original_node;  // Indexed by new node id.
  std::vector<NodeId> new_node;       // Indexed by original node id.
  bool was_timed = false;             // True iff the input was already timed.
};

// Pads the game with single-action chance nodes so that every infoset lies in
// a single layer. Identity mapping when the input is already timed. Throws
// UntimableGame when the infoset precedence relation is cyclic.
TimedGame MakeTimed(const Game& game);

}  // namespace correq

#endif  // CORREQ_GAME_H_
