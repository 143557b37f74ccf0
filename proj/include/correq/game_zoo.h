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

#ifndef CORREQ_GAME_ZOO_H_
#define CORREQ_GAME_ZOO_H_

#include <cstdint>
#include <stdexcept>
#include <string>

#include "correq/game.h"

namespace correq {

struct BadMap : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
struct BadHorizon : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
struct BadDealCount : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
struct BadRankCount : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
struct CapsExceeded : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Two-driver ride-sharing on a road network. A single root chance node picks
// the ordered pair of start vertices uniformly among all |V|^2 pairs. Each
// driver serves (and consumes) the reward of their start vertex at placement
// (both get zero if they start on the same vertex), then the drivers
// alternate in time steps: in each of the max(0, horizon-1) remaining steps,
// driver 1 commits an edge move, then driver 2 commits one; both moves resolve
// simultaneously. A driver serves an unserved vertex on arrival; simultaneous
// arrival on the same unserved vertex consumes it for zero. Before moving, a
// driver observes their own position, and the other's exact position when the
// two are on the same or adjacent vertices.
struct RideSharingSpec {
  int map = 1;      // 1 or 2 (throws BadMap otherwise).
  int horizon = 2;  // T >= 0 (throws BadHorizon when negative).
};
Game GenRideSharing(const RideSharingSpec& spec);

// Three-seat trick-taking endgame. Deck: ranks {2,3,4} x 4 suits, spades
// trump. The dummy's hand is fixed and public; the dummy's plays are chosen
// by the declarer (player 1). Player 0 is the defender on the declarer's
// left (leads the first trick), player 2 the other defender. Followers must
// follow the lead suit when possible; highest trump, else highest lead-suit
// card, wins the trick and leads the next. Payoffs: tricks won, with the
// dummy's tricks credited to the declarer.
struct TricksSpec {
  int deals = 1680;            // 1..1680 (throws BadDealCount otherwise).
  bool perfect_info = false;   // All hands public when true.
  uint64_t seed = 0;           // Selects which deals when deals < 1680.
};
Game GenTricks(const TricksSpec& spec);

// Three-player Kuhn poker with `ranks` cards (throws BadRankCount when
// ranks < 3). One card each, one ante each, a single bet size of one chip.
Game GenKuhn3(int ranks);

// Seeded random tree games for differential testing. Depth/branching are
// capped small so brute-force equilibrium computation stays cheap; throws
// CapsExceeded when the requested shape is outside the supported range.
struct RandomGameSpec {
  uint64_t seed = 0;
  int players = 2;               // 2 or 3.
  int depth = 3;                 // <= 5.
  int branching = 2;             // <= 3.
  double infoset_merge_prob = 0.5;
  double chance_prob = 0.3;
  int max_terminals = 25;
};
Game GenRandomGame(const RandomGameSpec& spec);

// Resolves a benchmark name from a JSON manifest mapping names to generator
// specs, e.g. {"2RS12": {"type": "ride_sharing", "map": 1, "horizon": 2}}.
// Throws std::out_of_range for unknown names and ParseError-compatible
// exceptions for malformed manifests.
Game GameFromManifest(const std::string& manifest_json,
                      const std::string& name);

}  // namespace correq

#endif  // CORREQ_GAME_ZOO_H_
