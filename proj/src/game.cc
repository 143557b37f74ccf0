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

#include "correq/game.h"

#include <algorithm>
#include <map>
#include <numeric>
#include <queue>
#include <unordered_map>
#include <utility>

namespace correq {

namespace {

// Union-find with path compression, used for public-state components.
class UnionFind {
 public:
  explicit UnionFind(int n) : parent_(n) {
    std::iota(parent_.begin(), parent_.end(), 0);
  }
  int Find(int x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }
  void Union(int a, int b) {
    a = Find(a);
    b = Find(b);
    if (a != b) parent_[std::max(a, b)] = std::min(a, b);
  }

 private:
  std::vector<int> parent_;
};

}  // namespace

bool Game::IsTimed() const {
  for (const Infoset& infoset : infosets_) {
    for (NodeId m : infoset.members) {
      if (nodes_[m].depth != nodes_[infoset.members[0]].depth) return false;
    }
  }
  return true;
}

GameBuilder::GameBuilder(int num_players) : num_players_(num_players) {
  if (num_players < 1) throw std::invalid_argument("need at least one player");
}

NodeId GameBuilder::Attach(NodeId parent, const std::string& edge_label,
                           const Rational& prob, ProtoNode node) {
  if (parent == kNoNode) {
    if (has_root_) throw std::invalid_argument("root already exists");
    has_root_ = true;
  } else if (parent < 0 || parent >= static_cast<int>(protos_.size())) {
    throw std::invalid_argument("bad parent id");
  } else if (protos_[parent].kind == NodeKind::kTerminal) {
    throw std::invalid_argument("cannot attach children to a terminal");
  }
  NodeId id = static_cast<NodeId>(protos_.size());
  protos_.push_back(std::move(node));
  if (parent != kNoNode) {
    protos_[parent].children.push_back(id);
    protos_[parent].edge_labels.push_back(edge_label);
    protos_[parent].edge_probs.push_back(prob);
  }
  return id;
}

NodeId GameBuilder::AddChance(NodeId parent, const std::string& edge_label,
                              const Rational& prob) {
  ProtoNode n;
  n.kind = NodeKind::kChance;
  return Attach(parent, edge_label, prob, std::move(n));
}

NodeId GameBuilder::AddPlayer(NodeId parent, const std::string& edge_label,
                              PlayerId player, const std::string& infoset_key,
                              const Rational& prob) {
  if (player < 0 || player >= num_players_) {
    throw std::invalid_argument("player id out of range");
  }
  ProtoNode n;
  n.kind = NodeKind::kPlayer;
  n.player = player;
  n.infoset_key = infoset_key;
  return Attach(parent, edge_label, prob, std::move(n));
}

NodeId GameBuilder::AddTerminal(NodeId parent, const std::string& edge_label,
                                std::vector<Rational> payoffs,
                                const Rational& prob) {
  if (static_cast<int>(payoffs.size()) != num_players_) {
    throw std::invalid_argument("terminal payoff arity mismatch");
  }
  ProtoNode n;
  n.kind = NodeKind::kTerminal;
  n.payoffs = std::move(payoffs);
  return Attach(parent, edge_label, prob, std::move(n));
}

Game GameBuilder::Build() {
  if (!has_root_) throw std::invalid_argument("game has no root");

  // Depth-first preorder numbering, children in insertion order.
  std::vector<NodeId> order;  // order[new] = proto id
  std::vector<NodeId> new_id(protos_.size(), kNoNode);
  order.reserve(protos_.size());
  std::vector<NodeId> stack = {0};
  while (!stack.empty()) {
    NodeId p = stack.back();
    stack.pop_back();
    new_id[p] = static_cast<NodeId>(order.size());
    order.push_back(p);
    const auto& kids = protos_[p].children;
    for (auto it = kids.rbegin(); it != kids.rend(); ++it) stack.push_back(*it);
  }
  if (order.size() != protos_.size()) {
    throw std::invalid_argument("unreachable nodes in construction");
  }

  Game game;
  game.num_players_ = num_players_;
  game.nodes_.resize(protos_.size());
  game.subtree_end_.assign(protos_.size(), 0);
  game.chance_reach_.assign(protos_.size(), Rational(1));

  // Infoset keys -> ids, ordered by (player, first member preorder id).
  std::map<std::pair<PlayerId, std::string>, InfosetId> infoset_ids;
  for (NodeId nid = 0; nid < static_cast<NodeId>(order.size()); ++nid) {
    const ProtoNode& proto = protos_[order[nid]];
    if (proto.kind != NodeKind::kPlayer) continue;
    infoset_ids.emplace(std::make_pair(proto.player, proto.infoset_key), -1);
  }
  {
    // std::map iterates keys in (player, key) order; we want (player, first
    // appearance). Collect first appearance explicitly.
    std::map<std::pair<PlayerId, NodeId>, std::pair<PlayerId, std::string>>
        by_first;
    std::map<std::pair<PlayerId, std::string>, NodeId> first_member;
    for (NodeId nid = 0; nid < static_cast<NodeId>(order.size()); ++nid) {
      const ProtoNode& proto = protos_[order[nid]];
      if (proto.kind != NodeKind::kPlayer) continue;
      auto key = std::make_pair(proto.player, proto.infoset_key);
      if (!first_member.count(key)) first_member[key] = nid;
    }
    for (const auto& [key, first] : first_member) {
      by_first[{key.first, first}] = key;
    }
    InfosetId next = 0;
    for (const auto& [unused, key] : by_first) {
      infoset_ids[key] = next++;
      Infoset infoset;
      infoset.player = key.first;
      infoset.label = key.second;
      game.infosets_.push_back(std::move(infoset));
    }
  }

  for (NodeId nid = 0; nid < static_cast<NodeId>(order.size()); ++nid) {
    const ProtoNode& proto = protos_[order[nid]];
    GameNode& node = game.nodes_[nid];
    node.kind = proto.kind;
    node.payoffs = proto.payoffs;
    if (proto.kind == NodeKind::kPlayer) {
      node.player = proto.player;
      node.infoset = infoset_ids.at({proto.player, proto.infoset_key});
      game.infosets_[node.infoset].members.push_back(nid);
    }
    node.actions.resize(proto.children.size());
    for (size_t a = 0; a < proto.children.size(); ++a) {
      node.actions[a].label = proto.edge_labels[a];
      node.actions[a].child = new_id[proto.children[a]];
      node.actions[a].prob = proto.edge_probs[a];
    }
  }

  // Parents, depths, chance reach, subtree intervals, counters.
  game.nodes_[0].parent = kNoNode;
  for (NodeId h = 0; h < game.num_nodes(); ++h) {
    GameNode& node = game.nodes_[h];
    if (node.kind == NodeKind::kTerminal) {
      if (!node.actions.empty()) {
        throw std::invalid_argument("terminal node with children");
      }
      ++game.num_terminals_;
    } else if (node.actions.empty()) {
      throw std::invalid_argument("non-terminal node without actions");
    }
    for (size_t a = 0; a < node.actions.size(); ++a) {
      NodeId c = node.actions[a].child;
      game.nodes_[c].parent = h;
      game.nodes_[c].action_in_parent = static_cast<ActionIndex>(a);
      game.nodes_[c].depth = node.depth + 1;
      game.chance_reach_[c] =
          game.chance_reach_[h] * (node.kind == NodeKind::kChance
                                       ? node.actions[a].prob
                                       : Rational(1));
    }
    game.max_depth_ = std::max(game.max_depth_, node.depth);
  }
  for (NodeId h = game.num_nodes() - 1; h >= 0; --h) {
    NodeId end = h + 1;
    for (const GameAction& a : game.nodes_[h].actions) {
      end = std::max(end, game.subtree_end_[a.child]);
    }
    game.subtree_end_[h] = end;
  }

  // Semantic problems (probability sums, infoset action mismatches, recall)
  // are reported by ValidateGame rather than rejected here.
  for (Infoset& infoset : game.infosets_) {
    const GameNode& first = game.nodes_[infoset.members[0]];
    infoset.num_actions = static_cast<int>(first.actions.size());
  }
  return game;
}

Diagnostics ValidateGame(const Game& game) {
  Diagnostics diag;
  auto issue = [&](const std::string& s) {
    diag.ok = false;
    diag.issues.push_back(s);
  };
  if (game.num_nodes() == 0) {
    issue("empty game");
    return diag;
  }
  for (NodeId h = 0; h < game.num_nodes(); ++h) {
    const GameNode& node = game.node(h);
    switch (node.kind) {
      case NodeKind::kTerminal:
        if (static_cast<int>(node.payoffs.size()) != game.num_players()) {
          issue("terminal " + std::to_string(h) + " payoff arity");
        }
        break;
      case NodeKind::kChance: {
        Rational total(0);
        for (const GameAction& a : node.actions) {
          if (a.prob <= Rational(0)) {
            issue("chance " + std::to_string(h) +
                  " has a non-positive probability");
          }
          total += a.prob;
        }
        if (total != Rational(1)) {
          issue("chance " + std::to_string(h) + " probabilities sum to " +
                total.ToString());
        }
        break;
      }
      case NodeKind::kPlayer:
        if (node.player < 0 || node.player >= game.num_players()) {
          issue("node " + std::to_string(h) + " player out of range");
        }
        if (node.infoset < 0 || node.infoset >= game.num_infosets()) {
          issue("node " + std::to_string(h) + " infoset out of range");
        }
        break;
    }
    if (h > 0 && (node.parent < 0 || node.parent >= h)) {
      issue("node " + std::to_string(h) + " has non-preorder parent");
    }
  }
  for (InfosetId i = 0; i < game.num_infosets(); ++i) {
    const Infoset& infoset = game.infoset(i);
    if (infoset.members.empty()) {
      issue("infoset " + std::to_string(i) + " empty");
      continue;
    }
    for (NodeId m : infoset.members) {
      if (game.node(m).kind != NodeKind::kPlayer ||
          game.node(m).player != infoset.player) {
        issue("infoset " + std::to_string(i) + " mixes players");
      }
      if (static_cast<int>(game.node(m).actions.size()) !=
          infoset.num_actions) {
        issue("infoset " + std::to_string(i) + " (" + infoset.label +
              ") members disagree on action count");
      }
    }
    for (size_t a = 0; a < infoset.members.size(); ++a) {
      for (size_t b = a + 1; b < infoset.members.size(); ++b) {
        if (game.IsAncestorOrSelf(infoset.members[a], infoset.members[b])) {
          issue("infoset " + std::to_string(i) + " contains an ancestor pair");
        }
      }
    }
  }
  try {
    ComputeSequences(game);
  } catch (const PerfectRecallViolation& e) {
    issue(e.what());
  }
  return diag;
}

std::string SequenceIndex::SequenceLabel(SeqId s) const {
  const Sequence& seq = sequences_[s];
  if (seq.infoset < 0) return "empty";
  return "I" + std::to_string(seq.infoset) + "a" + std::to_string(seq.action);
}

SequenceIndex ComputeSequences(const Game& game) {
  SequenceIndex index;
  index.num_players_ = game.num_players();
  index.player_sequences_.resize(game.num_players());
  index.empty_.resize(game.num_players());
  index.infoset_action_seq_.resize(game.num_infosets());
  index.infoset_parent_.assign(game.num_infosets(), -1);

  // First pass: the owner's sequence at each node, as (infoset, action) of
  // the owner's most recent action, tracked by walking down the tree.
  // seq pairs are provisional (infoset, action) pairs; -1 marks empty.
  std::vector<std::pair<InfosetId, ActionIndex>> last_pair(
      static_cast<size_t>(game.num_nodes()) * game.num_players(), {-1, -1});
  for (NodeId h = 0; h < game.num_nodes(); ++h) {
    const GameNode& node = game.node(h);
    for (size_t a = 0; a < node.actions.size(); ++a) {
      NodeId c = node.actions[a].child;
      for (PlayerId i = 0; i < game.num_players(); ++i) {
        last_pair[static_cast<size_t>(c) * game.num_players() + i] =
            (node.kind == NodeKind::kPlayer && node.player == i)
                ? std::make_pair(node.infoset, static_cast<ActionIndex>(a))
                : last_pair[static_cast<size_t>(h) * game.num_players() + i];
      }
    }
  }

  // Perfect recall: all members of an infoset agree on the owner's sequence.
  for (InfosetId i = 0; i < game.num_infosets(); ++i) {
    const Infoset& infoset = game.infoset(i);
    const auto& first = last_pair[static_cast<size_t>(infoset.members[0]) *
                                      game.num_players() +
                                  infoset.player];
    for (NodeId m : infoset.members) {
      const auto& mine =
          last_pair[static_cast<size_t>(m) * game.num_players() +
                    infoset.player];
      if (mine != first) {
        throw PerfectRecallViolation(
            "infoset " + std::to_string(i) + " (" + infoset.label +
            ") members disagree on the owner's past actions");
      }
    }
  }

  // Assign global sequence ids: per player, empty first, then infoset-action
  // pairs with infosets in ascending id order (ids are first-appearance
  // order, so this is deterministic).
  for (PlayerId i = 0; i < game.num_players(); ++i) {
    SeqId empty = static_cast<SeqId>(index.sequences_.size());
    index.empty_[i] = empty;
    index.player_sequences_[i].push_back(empty);
    Sequence seq;
    seq.player = i;
    index.sequences_.push_back(seq);
    for (InfosetId inf = 0; inf < game.num_infosets(); ++inf) {
      if (game.infoset(inf).player != i) continue;
      index.infoset_action_seq_[inf].resize(game.infoset(inf).num_actions);
      for (ActionIndex a = 0; a < game.infoset(inf).num_actions; ++a) {
        SeqId s = static_cast<SeqId>(index.sequences_.size());
        index.infoset_action_seq_[inf][a] = s;
        index.player_sequences_[i].push_back(s);
        Sequence sq;
        sq.player = i;
        sq.infoset = inf;
        sq.action = a;
        index.sequences_.push_back(sq);
      }
    }
  }

  auto seq_of_pair = [&](PlayerId i,
                         const std::pair<InfosetId, ActionIndex>& p) {
    return p.first < 0 ? index.empty_[i]
                       : index.infoset_action_seq_[p.first][p.second];
  };

  index.seq_at_.resize(last_pair.size());
  for (NodeId h = 0; h < game.num_nodes(); ++h) {
    for (PlayerId i = 0; i < game.num_players(); ++i) {
      size_t at = static_cast<size_t>(h) * game.num_players() + i;
      index.seq_at_[at] = seq_of_pair(i, last_pair[at]);
    }
  }
  for (InfosetId i = 0; i < game.num_infosets(); ++i) {
    index.infoset_parent_[i] =
        index.sequence_at(game.infoset(i).members[0], game.infoset(i).player);
  }
  index.infosets_below_.resize(index.sequences_.size());
  for (InfosetId i = 0; i < game.num_infosets(); ++i) {
    index.infosets_below_[index.infoset_parent_[i]].push_back(i);
  }
  return index;
}

PublicPartition ComputePublicStates(const Game& game,
                                    const SequenceIndex& seq) {
  if (!game.IsTimed()) {
    throw NotTimed("public states require a timed game");
  }
  UnionFind uf(game.num_nodes());

  // Rule 1: nodes in one layer whose private-state vectors agree for every
  // player. A private state is the player's sequence, refined by the infoset
  // when the player is the one to act.
  using PrivateVec = std::vector<std::pair<int, int>>;
  std::map<std::pair<int, PrivateVec>, NodeId> groups;
  for (NodeId h = 0; h < game.num_nodes(); ++h) {
    const GameNode& node = game.node(h);
    if (node.kind == NodeKind::kTerminal) continue;
    PrivateVec key(game.num_players());
    for (PlayerId i = 0; i < game.num_players(); ++i) {
      key[i] = (node.kind == NodeKind::kPlayer && node.player == i)
                   ? std::make_pair(1, node.infoset)
                   : std::make_pair(0, seq.sequence_at(h, i));
    }
    auto [it, inserted] = groups.emplace(std::make_pair(node.depth, key), h);
    if (!inserted) uf.Union(it->second, h);
  }

  // Rule 2: nodes in one layer that both precede (weakly) a common infoset.
  for (const Infoset& infoset : game.infosets()) {
    int infoset_depth = game.node(infoset.members[0]).depth;
    for (int depth = 0; depth <= infoset_depth; ++depth) {
      NodeId first = game.AncestorAtDepth(infoset.members[0], depth);
      for (size_t m = 1; m < infoset.members.size(); ++m) {
        uf.Union(first, game.AncestorAtDepth(infoset.members[m], depth));
      }
    }
  }

  PublicPartition partition;
  partition.state_of.assign(game.num_nodes(), -1);
  partition.num_layers = game.max_depth() + 1;
  std::map<std::pair<int, NodeId>, int> state_ids;  // (layer, root) -> state
  for (NodeId h = 0; h < game.num_nodes(); ++h) {
    if (game.node(h).kind == NodeKind::kTerminal) continue;
    auto key = std::make_pair(game.node(h).depth, static_cast<NodeId>(uf.Find(h)));
    auto it = state_ids.find(key);
    if (it == state_ids.end()) {
      it = state_ids.emplace(key, static_cast<int>(partition.states.size()))
               .first;
      partition.states.emplace_back();
      partition.layer_of_state.push_back(key.first);
    }
    partition.state_of[h] = it->second;
    partition.states[it->second].push_back(h);
  }
  return partition;
}

GameParams GameParameters(const Game& game, const SequenceIndex& seq,
                          const PublicPartition& partition) {
  GameParams params;
  params.num_nodes = game.num_nodes();
  params.num_terminals = game.num_terminals();
  params.d = game.max_depth() + 1;
  for (PlayerId i = 0; i < game.num_players(); ++i) {
    params.num_player_sequences.push_back(seq.num_player_sequences(i));
  }
  for (const GameNode& node : game.nodes()) {
    if (node.kind == NodeKind::kPlayer) {
      params.b = std::max(params.b, static_cast<int>(node.actions.size()));
    }
  }
  for (const auto& members : partition.states) {
    // Distinct private states over (node, player) pairs in the public state.
    // An untaken empty sequence carries no player identity, so all players'
    // empty sequences count as one private state.
    std::vector<std::pair<int, int>> states;
    for (NodeId h : members) {
      const GameNode& node = game.node(h);
      for (PlayerId i = 0; i < game.num_players(); ++i) {
        if (node.kind == NodeKind::kPlayer && node.player == i) {
          states.emplace_back(1, node.infoset);
        } else {
          SeqId s = seq.sequence_at(h, i);
          states.emplace_back(0, s == seq.empty_sequence(i) ? -1 : s);
        }
      }
    }
    std::sort(states.begin(), states.end());
    states.erase(std::unique(states.begin(), states.end()), states.end());
    params.k = std::max(params.k, static_cast<int>(states.size()));
  }
  return params;
}

TimedGame MakeTimed(const Game& game) {
  // Constraint classes: all nodes of an infoset share a layer, so merge them;
  // chance and terminal nodes are singletons.
  int num_classes = game.num_infosets();
  std::vector<int> class_of(game.num_nodes());
  for (NodeId h = 0; h < game.num_nodes(); ++h) {
    const GameNode& node = game.node(h);
    class_of[h] = node.kind == NodeKind::kPlayer ? node.infoset : num_classes++;
  }
  // Longest-path layering over class edges class(h) -> class(child).
  std::vector<std::vector<int>> out(num_classes);
  std::vector<int> indegree(num_classes, 0);
  for (NodeId h = 0; h < game.num_nodes(); ++h) {
    for (const GameAction& a : game.node(h).actions) {
      out[class_of[h]].push_back(class_of[a.child]);
      ++indegree[class_of[a.child]];
    }
  }
  std::vector<int> layer(num_classes, 0);
  std::queue<int> ready;
  for (int c = 0; c < num_classes; ++c) {
    if (indegree[c] == 0) ready.push(c);
  }
  int processed = 0;
  while (!ready.empty()) {
    int c = ready.front();
    ready.pop();
    ++processed;
    for (int d : out[c]) {
      layer[d] = std::max(layer[d], layer[c] + 1);
      if (--indegree[d] == 0) ready.push(d);
    }
  }
  if (processed != num_classes) {
    throw UntimableGame("infoset precedence relation has a cycle");
  }

  TimedGame result;
  if (game.IsTimed()) {
    result.game = game;
    result.was_timed = true;
    result.original_node.resize(game.num_nodes());
    result.new_node.resize(game.num_nodes());
    std::iota(result.original_node.begin(), result.original_node.end(), 0);
    std::iota(result.new_node.begin(), result.new_node.end(), 0);
    return result;
  }

  GameBuilder builder(game.num_players());
  std::vector<NodeId> new_of_old(game.num_nodes(), kNoNode);
  std::vector<NodeId> old_of_new;
  // Recreate in preorder; builder creation order is preorder, so new ids are
  // the creation sequence.
  struct Item {
    NodeId old_node;
    NodeId new_parent;
    std::string label;
    Rational prob;
  };
  std::vector<Item> stack = {{game.root(), kNoNode, "", Rational(1)}};
  while (!stack.empty()) {
    Item item = stack.back();
    stack.pop_back();
    const GameNode& node = game.node(item.old_node);
    // Padding chain to lift this node to its class layer: the parent sits at
    // its own class layer, and every edge advances one layer, so insert
    // single-action chance nodes to absorb the remaining gap.
    int target = layer[class_of[item.old_node]];
    NodeId parent = item.new_parent;
    std::string label = item.label;
    Rational prob = item.prob;
    if (parent != kNoNode) {
      int parent_layer = layer[class_of[game.node(item.old_node).parent]];
      for (int gap = target - parent_layer - 1; gap > 0; --gap) {
        parent = builder.AddChance(parent, label, prob);
        old_of_new.push_back(kNoNode);
        label = "wait";
        prob = Rational(1);
      }
    } else if (target != 0) {
      throw UntimableGame("root cannot be lifted to a positive layer");
    }
    NodeId fresh;
    switch (node.kind) {
      case NodeKind::kChance:
        fresh = builder.AddChance(parent, label, prob);
        break;
      case NodeKind::kPlayer:
        fresh = builder.AddPlayer(parent, label, node.player,
                                  "I" + std::to_string(node.infoset), prob);
        break;
      case NodeKind::kTerminal:
        fresh = builder.AddTerminal(parent, label, node.payoffs, prob);
        break;
    }
    new_of_old[item.old_node] = fresh;
    old_of_new.push_back(item.old_node);
    for (auto it = node.actions.rbegin(); it != node.actions.rend(); ++it) {
      stack.push_back({it->child, fresh, it->label, it->prob});
    }
  }
  result.game = builder.Build();
  result.was_timed = false;
  result.original_node = std::move(old_of_new);
  result.new_node = std::move(new_of_old);
  return result;
}

}  // namespace correq
