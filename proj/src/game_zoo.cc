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

#include "correq/game_zoo.h"

#include <algorithm>
#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include <random>

#include "correq/game.h"
#include "correq/game_io.h"
#include "json.hpp"

namespace correq {
namespace {

// ---------------------------------------------------------------------------
// Ride-sharing.
// ---------------------------------------------------------------------------

struct RoadMap {
  std::vector<Rational> rewards;
  std::vector<std::vector<int>> adjacent;  // Sorted neighbour lists.
};

RoadMap MakeRoadMap(int id) {
  RoadMap map;
  std::vector<std::pair<int, int>> edges;
  if (id == 1) {
    map.rewards = {Rational(1),     Rational(1, 2), Rational(1, 2),
                   Rational(3, 2),  Rational(9, 2), Rational(2),
                   Rational(3, 2)};
    edges = {{0, 1}, {0, 3}, {1, 2}, {1, 5}, {2, 3},
             {2, 4}, {2, 5}, {2, 6}, {3, 6}, {5, 6}};
  } else if (id == 2) {
    map.rewards = {Rational(1),     Rational(1, 2), Rational(1, 2),
                   Rational(3, 2),  Rational(1),    Rational(5, 2),
                   Rational(3, 2),  Rational(5)};
    edges = {{0, 1}, {0, 2}, {0, 3}, {0, 4}, {1, 5}, {2, 5},
             {2, 3}, {3, 6}, {4, 6}, {5, 7}, {6, 7}};
  } else {
    throw BadMap("ride-sharing map must be 1 or 2");
  }
  map.adjacent.resize(map.rewards.size());
  for (auto [a, b] : edges) {
    map.adjacent[a].push_back(b);
    map.adjacent[b].push_back(a);
  }
  for (auto& neighbours : map.adjacent) {
    std::sort(neighbours.begin(), neighbours.end());
  }
  return map;
}

bool AreClose(const RoadMap& map, int a, int b) {
  if (a == b) return true;
  return std::binary_search(map.adjacent[a].begin(), map.adjacent[a].end(), b);
}

std::string Observe(const RoadMap& map, int me, int other) {
  return AreClose(map, me, other) ? std::to_string(other) : "far";
}

struct RideBuilder {
  const RoadMap& map;
  int horizon;
  GameBuilder& gb;

  // Serves `vertex` for `driver_payoff` if it is still unserved.
  static void Serve(const RoadMap& map, int vertex, uint32_t* served,
                    Rational* payoff) {
    if (*served >> vertex & 1u) return;
    *served |= 1u << vertex;
    *payoff = *payoff + map.rewards[vertex];
  }

  // Adds the decision pair for one time step, with the drivers at (p1, p2).
  void Step(NodeId parent, const std::string& edge, const Rational& prob,
            int step, int p1, int p2, uint32_t served, const Rational& u1,
            const Rational& u2, const std::string& key1,
            const std::string& key2) {
    std::string k1 = key1 + "|" + std::to_string(p1) + ":" + Observe(map, p1, p2);
    std::string k2 = key2 + "|" + std::to_string(p2) + ":" + Observe(map, p2, p1);
    NodeId d1 = gb.AddPlayer(parent, edge, 0, k1, prob);
    for (int m1 : map.adjacent[p1]) {
      NodeId d2 = gb.AddPlayer(d1, std::to_string(m1), 1, k2);
      for (int m2 : map.adjacent[p2]) {
        uint32_t next_served = served;
        Rational nu1 = u1;
        Rational nu2 = u2;
        if (m1 == m2) {
          next_served |= 1u << m1;  // Simultaneous arrival consumes for zero.
        } else {
          Serve(map, m1, &next_served, &nu1);
          Serve(map, m2, &next_served, &nu2);
        }
        if (step + 1 == horizon) {
          gb.AddTerminal(d2, std::to_string(m2), {nu1, nu2});
        } else {
          Step(d2, std::to_string(m2), Rational(1), step + 1, m1, m2,
               next_served, nu1, nu2, k1, k2);
        }
      }
    }
  }
};

}  // namespace

Game GenRideSharing(const RideSharingSpec& spec) {
  RoadMap map = MakeRoadMap(spec.map);
  if (spec.horizon < 0) throw BadHorizon("ride-sharing horizon must be >= 0");
  const int n = static_cast<int>(map.rewards.size());

  GameBuilder gb(2);
  NodeId root = gb.AddChance(kNoNode, "");
  RideBuilder builder{map, spec.horizon, gb};
  const Rational pair_prob(1, n * n);
  for (int v1 = 0; v1 < n; ++v1) {
    for (int v2 = 0; v2 < n; ++v2) {
      std::string label = std::to_string(v1) + "," + std::to_string(v2);
      uint32_t served = 0;
      Rational u1(0);
      Rational u2(0);
      if (v1 == v2) {
        served |= 1u << v1;  // Shared start consumes the vertex for zero.
      } else {
        RideBuilder::Serve(map, v1, &served, &u1);
        RideBuilder::Serve(map, v2, &served, &u2);
      }
      if (spec.horizon <= 1) {
        gb.AddTerminal(root, label, {u1, u2}, pair_prob);
      } else {
        builder.Step(root, label, pair_prob, 1, v1, v2, served, u1, u2, "",
                     "");
      }
    }
  }
  return gb.Build();
}

namespace {

// ---------------------------------------------------------------------------
// Trick-taking endgame.
// ---------------------------------------------------------------------------
//
// Cards are indexed suit-major with suits S,H,D,C and ranks 2,3,4, so
// S2=0, S3=1, S4=2, H2=3, ... C4=11. Spades (suit 0) are trump.

constexpr int kNumCards = 12;
constexpr int kDummyCards[3] = {0, 3, 4};  // S2 H2 H3.
// Seats in clockwise play order: player 0, dummy, player 2, declarer.
constexpr int kSeatPlayer[4] = {0, 1, 2, 1};

int CardSuit(int card) { return card / 3; }
int CardRank(int card) { return card % 3; }

std::string CardName(int card) {
  static const char kSuits[] = "SHDC";
  std::string name;
  name += kSuits[CardSuit(card)];
  name += static_cast<char>('2' + CardRank(card));
  return name;
}

std::string HandString(const std::array<int, 3>& hand) {
  return CardName(hand[0]) + CardName(hand[1]) + CardName(hand[2]);
}

// All 3-subsets of `pool` in lexicographic order.
std::vector<std::array<int, 3>> Combos3(const std::vector<int>& pool) {
  std::vector<std::array<int, 3>> out;
  const int n = static_cast<int>(pool.size());
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      for (int k = j + 1; k < n; ++k) {
        out.push_back({pool[i], pool[j], pool[k]});
      }
    }
  }
  return out;
}

struct Deal {
  std::array<std::array<int, 3>, 4> seat_hands;  // By seat.
  std::string label;                             // "P0/declarer/P2" hands.
};

std::vector<Deal> AllDeals() {
  std::vector<int> pool;
  for (int card = 0; card < kNumCards; ++card) {
    if (card != kDummyCards[0] && card != kDummyCards[1] &&
        card != kDummyCards[2]) {
      pool.push_back(card);
    }
  }
  std::vector<Deal> deals;
  for (const auto& hand0 : Combos3(pool)) {
    std::vector<int> rest;
    for (int card : pool) {
      if (card != hand0[0] && card != hand0[1] && card != hand0[2]) {
        rest.push_back(card);
      }
    }
    for (const auto& declarer : Combos3(rest)) {
      std::array<int, 3> hand2{};
      int next = 0;
      for (int card : rest) {
        if (card != declarer[0] && card != declarer[1] && card != declarer[2]) {
          hand2[next++] = card;
        }
      }
      Deal deal;
      deal.seat_hands[0] = hand0;
      deal.seat_hands[1] = {kDummyCards[0], kDummyCards[1], kDummyCards[2]};
      deal.seat_hands[2] = hand2;
      deal.seat_hands[3] = declarer;
      deal.label = HandString(hand0) + "/" + HandString(declarer) + "/" +
                   HandString(hand2);
      deals.push_back(std::move(deal));
    }
  }
  return deals;
}

struct TrickState {
  std::array<std::vector<int>, 4> hands;  // Remaining cards, sorted.
  int leader = 0;
  int plays_in_trick = 0;
  int lead_suit = -1;
  std::array<int, 4> trick_card{};
  std::array<int, 4> trick_seat{};
  std::array<int, 4> tricks_won{};
  int total_plays = 0;
  std::string history;
};

// Trump beats plain; within trump or the lead suit, higher rank wins.
int TrickWinnerSeat(const TrickState& st) {
  int best_pos = 0;
  int best_strength = -1;
  for (int pos = 0; pos < 4; ++pos) {
    int card = st.trick_card[pos];
    int strength;
    if (CardSuit(card) == 0) {
      strength = 100 + CardRank(card);
    } else if (CardSuit(card) == st.lead_suit) {
      strength = CardRank(card);
    } else {
      strength = -1;
    }
    if (strength > best_strength) {
      best_strength = strength;
      best_pos = pos;
    }
  }
  return st.trick_seat[best_pos];
}

struct TricksBuilder {
  GameBuilder& gb;
  bool perfect_info;

  void Play(NodeId parent, const std::string& edge, const Rational& prob,
            const Deal& deal, const TrickState& st) {
    if (st.total_plays == 12) {
      std::vector<Rational> payoffs = {
          Rational(st.tricks_won[0]),
          Rational(st.tricks_won[1] + st.tricks_won[3]),
          Rational(st.tricks_won[2])};
      gb.AddTerminal(parent, edge, std::move(payoffs), prob);
      return;
    }
    const int seat = (st.leader + st.plays_in_trick) % 4;
    const int player = kSeatPlayer[seat];
    // The acting player knows their initial hand (the declarer's, for the
    // dummy's turns) and the public play history; with perfect information
    // the whole deal is visible instead.
    std::string key =
        (perfect_info ? deal.label
                      : HandString(deal.seat_hands[player == 1 ? 3 : seat])) +
        "#" + st.history;
    NodeId node = gb.AddPlayer(parent, edge, player, key, prob);

    std::vector<int> legal;
    if (st.plays_in_trick > 0) {
      for (int card : st.hands[seat]) {
        if (CardSuit(card) == st.lead_suit) legal.push_back(card);
      }
    }
    if (legal.empty()) legal = st.hands[seat];

    for (int card : legal) {
      TrickState next = st;
      auto& hand = next.hands[seat];
      hand.erase(std::find(hand.begin(), hand.end(), card));
      if (next.plays_in_trick == 0) next.lead_suit = CardSuit(card);
      next.trick_card[next.plays_in_trick] = card;
      next.trick_seat[next.plays_in_trick] = seat;
      ++next.plays_in_trick;
      ++next.total_plays;
      next.history += CardName(card);
      if (next.plays_in_trick == 4) {
        int winner = TrickWinnerSeat(next);
        ++next.tricks_won[winner];
        next.leader = winner;
        next.plays_in_trick = 0;
        next.lead_suit = -1;
      }
      Play(node, CardName(card), Rational(1), deal, next);
    }
  }
};

}  // namespace

Game GenTricks(const TricksSpec& spec) {
  if (spec.deals < 1 || spec.deals > 1680) {
    throw BadDealCount("tricks deal count must be in 1..1680");
  }
  std::vector<Deal> deals = AllDeals();
  std::vector<int> chosen;
  if (spec.deals == static_cast<int>(deals.size())) {
    for (int i = 0; i < spec.deals; ++i) chosen.push_back(i);
  } else {
    // Order-preserving selection sampling.
    std::mt19937_64 rng(spec.seed);
    uint64_t need = static_cast<uint64_t>(spec.deals);
    uint64_t left = deals.size();
    for (int i = 0; i < static_cast<int>(deals.size()) && need > 0;
         ++i, --left) {
      if (rng() % left < need) {
        chosen.push_back(i);
        --need;
      }
    }
  }

  GameBuilder gb(3);
  NodeId root = gb.AddChance(kNoNode, "");
  TricksBuilder builder{gb, spec.perfect_info};
  const Rational deal_prob(1, static_cast<long long>(chosen.size()));
  for (int index : chosen) {
    const Deal& deal = deals[index];
    TrickState st;
    for (int seat = 0; seat < 4; ++seat) {
      st.hands[seat] = {deal.seat_hands[seat][0], deal.seat_hands[seat][1],
                        deal.seat_hands[seat][2]};
    }
    builder.Play(root, deal.label, deal_prob, deal, st);
  }
  return gb.Build();
}

namespace {

// ---------------------------------------------------------------------------
// Three-player Kuhn poker.
// ---------------------------------------------------------------------------

struct KuhnBuilder {
  GameBuilder& gb;

  static std::vector<Rational> Payoffs(const std::array<int, 3>& cards,
                                       int bettor, int callers_mask) {
    std::array<int, 3> contrib = {1, 1, 1};
    int participants_mask = 0;
    if (bettor < 0) {
      participants_mask = 0b111;
    } else {
      participants_mask = 1 << bettor;
      contrib[bettor] = 2;
      for (int i = 0; i < 3; ++i) {
        if (callers_mask >> i & 1) {
          participants_mask |= 1 << i;
          contrib[i] = 2;
        }
      }
    }
    const int pot = contrib[0] + contrib[1] + contrib[2];
    int winner = -1;
    for (int i = 0; i < 3; ++i) {
      if (!(participants_mask >> i & 1)) continue;
      if (winner < 0 || cards[i] > cards[winner]) winner = i;
    }
    std::vector<Rational> payoffs;
    for (int i = 0; i < 3; ++i) {
      payoffs.push_back(Rational((i == winner ? pot : 0) - contrib[i]));
    }
    return payoffs;
  }

  // `checks` counts the opening checks; `bettor` is -1 until someone bets,
  // after which the other two players respond in clockwise order.
  void Bet(NodeId parent, const std::string& edge, const Rational& prob,
           const std::array<int, 3>& cards, const std::string& history,
           int checks, int bettor, int responses, int callers_mask) {
    const bool showdown_all = bettor < 0 && checks == 3;
    const bool bet_settled = bettor >= 0 && responses == 2;
    if (showdown_all || bet_settled) {
      gb.AddTerminal(parent, edge, Payoffs(cards, bettor, callers_mask), prob);
      return;
    }
    const int player =
        bettor < 0 ? checks : (bettor + 1 + responses) % 3;
    std::string key = std::to_string(cards[player]) + "|" + history;
    NodeId node = gb.AddPlayer(parent, edge, player, key, prob);
    if (bettor < 0) {
      Bet(node, "k", Rational(1), cards, history + "k", checks + 1, -1, 0, 0);
      Bet(node, "b", Rational(1), cards, history + "b", checks, player, 0, 0);
    } else {
      Bet(node, "f", Rational(1), cards, history + "f", checks, bettor,
          responses + 1, callers_mask);
      Bet(node, "c", Rational(1), cards, history + "c", checks, bettor,
          responses + 1, callers_mask | 1 << player);
    }
  }
};

}  // namespace

Game GenKuhn3(int ranks) {
  if (ranks < 3) throw BadRankCount("kuhn3 needs at least 3 ranks");
  GameBuilder gb(3);
  NodeId root = gb.AddChance(kNoNode, "");
  const long long num_deals =
      static_cast<long long>(ranks) * (ranks - 1) * (ranks - 2);
  KuhnBuilder builder{gb};
  for (int c0 = 0; c0 < ranks; ++c0) {
    for (int c1 = 0; c1 < ranks; ++c1) {
      if (c1 == c0) continue;
      for (int c2 = 0; c2 < ranks; ++c2) {
        if (c2 == c0 || c2 == c1) continue;
        std::string label = std::to_string(c0) + "," + std::to_string(c1) +
                            "," + std::to_string(c2);
        builder.Bet(root, label, Rational(1, num_deals), {c0, c1, c2}, "", 0,
                    -1, 0, 0);
      }
    }
  }
  return gb.Build();
}

namespace {

// ---------------------------------------------------------------------------
// Seeded random games.
// ---------------------------------------------------------------------------

double Unit(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

}  // namespace

Game GenRandomGame(const RandomGameSpec& spec) {
  if (spec.players < 2 || spec.players > 3) {
    throw CapsExceeded("random game players must be 2 or 3");
  }
  if (spec.depth < 1 || spec.depth > 5) {
    throw CapsExceeded("random game depth must be 1..5");
  }
  if (spec.branching < 1 || spec.branching > 3) {
    throw CapsExceeded("random game branching must be 1..3");
  }
  if (spec.max_terminals < 1) {
    throw CapsExceeded("random game needs max_terminals >= 1");
  }
  if (spec.infoset_merge_prob < 0.0 || spec.infoset_merge_prob > 1.0 ||
      spec.chance_prob < 0.0 || spec.chance_prob > 1.0) {
    throw CapsExceeded("random game probabilities must be in [0, 1]");
  }

  std::mt19937_64 rng(spec.seed);
  struct Level {
    bool chance;
    int player;
    int width;
  };
  std::vector<Level> levels;
  for (int t = 0; t < spec.depth; ++t) {
    Level level;
    level.chance = Unit(rng) < spec.chance_prob;
    level.player =
        level.chance ? -1 : static_cast<int>(rng() % spec.players);
    level.width = spec.branching == 1
                      ? 1
                      : 2 + static_cast<int>(rng() % (spec.branching - 1));
    levels.push_back(level);
  }
  // Truncate so the (complete) tree respects the terminal budget.
  long long leaves = 1;
  for (size_t t = 0; t < levels.size(); ++t) {
    if (leaves * levels[t].width > spec.max_terminals) {
      levels.resize(t);
      break;
    }
    leaves *= levels[t].width;
  }

  GameBuilder gb(spec.players);
  struct Pending {
    NodeId parent = kNoNode;
    std::string edge;
    Rational prob = Rational(1);
    std::array<std::string, 3> sig;  // Per-player private history.
  };
  std::vector<Pending> frontier(1);

  for (const Level& level : levels) {
    std::vector<std::pair<NodeId, std::array<std::string, 3>>> created;
    if (level.chance) {
      for (const Pending& pd : frontier) {
        created.push_back(
            {gb.AddChance(pd.parent, pd.edge, pd.prob), pd.sig});
      }
    } else {
      // Bucket nodes by the owner's private history; infosets may only merge
      // within a bucket, which preserves perfect recall.
      std::map<std::string, std::vector<int>> buckets;
      for (int i = 0; i < static_cast<int>(frontier.size()); ++i) {
        buckets[frontier[i].sig[level.player]].push_back(i);
      }
      std::vector<std::string> key_of(frontier.size());
      for (const auto& [sig, members] : buckets) {
        int next_local = 0;
        for (int i : members) {
          int local;
          if (next_local == 0 || Unit(rng) >= spec.infoset_merge_prob) {
            local = next_local++;
          } else {
            local = static_cast<int>(rng() % next_local);
          }
          key_of[i] = sig + "#" + std::to_string(local);
        }
      }
      for (int i = 0; i < static_cast<int>(frontier.size()); ++i) {
        const Pending& pd = frontier[i];
        NodeId id =
            gb.AddPlayer(pd.parent, pd.edge, level.player, key_of[i], pd.prob);
        auto sig = pd.sig;
        sig[level.player] += "(" + key_of[i] + ")";
        created.push_back({id, sig});
      }
    }

    std::vector<Pending> next;
    for (int c = 0; c < static_cast<int>(created.size()); ++c) {
      std::vector<long long> weights(level.width, 1);
      long long total = level.width;
      if (level.chance) {
        total = 0;
        for (int j = 0; j < level.width; ++j) {
          weights[j] = 1 + static_cast<long long>(rng() % 4);
          total += weights[j];
        }
      }
      for (int j = 0; j < level.width; ++j) {
        Pending pd;
        pd.parent = created[c].first;
        pd.edge = "a" + std::to_string(j);
        pd.prob = level.chance ? Rational(weights[j], total) : Rational(1);
        pd.sig = created[c].second;
        if (!level.chance) {
          pd.sig[level.player] += ":" + std::to_string(j);
        }
        next.push_back(std::move(pd));
      }
    }
    frontier = std::move(next);
  }

  for (const Pending& pd : frontier) {
    std::vector<Rational> payoffs;
    for (int i = 0; i < spec.players; ++i) {
      payoffs.push_back(Rational(static_cast<long long>(rng() % 11) - 5));
    }
    gb.AddTerminal(pd.parent, pd.edge, std::move(payoffs), pd.prob);
  }
  return gb.Build();
}

// ---------------------------------------------------------------------------
// Manifest resolution.
// ---------------------------------------------------------------------------

Game GameFromManifest(const std::string& manifest_json,
                      const std::string& name) {
  nlohmann::json manifest;
  try {
    manifest = nlohmann::json::parse(manifest_json);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("manifest: ") + e.what());
  }
  if (!manifest.is_object()) {
    throw ParseError("manifest must be a JSON object of name -> spec");
  }
  auto it = manifest.find(name);
  if (it == manifest.end()) {
    throw std::out_of_range("unknown benchmark name: " + name);
  }
  const nlohmann::json& entry = *it;
  try {
    if (!entry.is_object() || !entry.contains("type")) {
      throw ParseError("manifest entry for " + name + " needs a \"type\"");
    }
    const std::string type = entry.at("type").get<std::string>();
    if (type == "ride_sharing") {
      RideSharingSpec spec;
      spec.map = entry.value("map", spec.map);
      spec.horizon = entry.value("horizon", spec.horizon);
      return GenRideSharing(spec);
    }
    if (type == "tricks") {
      TricksSpec spec;
      spec.deals = entry.value("deals", spec.deals);
      spec.perfect_info = entry.value("perfect_info", spec.perfect_info);
      spec.seed = entry.value("seed", spec.seed);
      return GenTricks(spec);
    }
    if (type == "kuhn3") {
      return GenKuhn3(entry.value("ranks", 3));
    }
    if (type == "random") {
      RandomGameSpec spec;
      spec.seed = entry.value("seed", spec.seed);
      spec.players = entry.value("players", spec.players);
      spec.depth = entry.value("depth", spec.depth);
      spec.branching = entry.value("branching", spec.branching);
      spec.infoset_merge_prob =
          entry.value("infoset_merge_prob", spec.infoset_merge_prob);
      spec.chance_prob = entry.value("chance_prob", spec.chance_prob);
      spec.max_terminals = entry.value("max_terminals", spec.max_terminals);
      return GenRandomGame(spec);
    }
    throw ParseError("unknown generator type: " + type);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError("manifest entry for " + name + ": " + e.what());
  }
}

}  // namespace correq
