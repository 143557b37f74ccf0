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

#ifndef CORREQ_TESTS_TEST_GAMES_H_
#define CORREQ_TESTS_TEST_GAMES_H_

// Shared hand-built fixtures. Expected values quoted in the tests that use
// these fixtures were derived by hand on paper from the payoff matrices
// below; keep the numbers in sync when editing.

#include <string>
#include <vector>

#include "correq/game.h"

namespace correq {
namespace testing {

// Simultaneous two-player matrix game: player 0 picks a row at the root,
// player 1 picks a column without observing the row (one infoset spanning
// all of player 0's choices). payoffs[r][c] = {u0, u1}.
inline Game MatrixGame(
    const std::vector<std::vector<std::vector<Rational>>>& payoffs) {
  GameBuilder builder(2);
  NodeId root = builder.AddPlayer(kNoNode, "", 0, "row");
  for (size_t r = 0; r < payoffs.size(); ++r) {
    NodeId col =
        builder.AddPlayer(root, "r" + std::to_string(r), 1, "col");
    for (size_t c = 0; c < payoffs[r].size(); ++c) {
      builder.AddTerminal(col, "c" + std::to_string(c), payoffs[r][c]);
    }
  }
  return builder.Build();
}

// Chicken. Rows/cols: 0 = dare, 1 = chicken.
//   (D,D) = (0,0), (D,C) = (7,2), (C,D) = (2,7), (C,C) = (6,6).
// Optimal correlated social welfare 10.5 = 12*(1/2) + 9*(1/4) + 9*(1/4):
// mass 1/2 on (C,C) and 1/4 on each of (C,D), (D,C); the binding incentive
// is 2*P(C,D) >= P(C,C) per player. Coarse relaxations give the same value.
inline Game Chicken() {
  auto p = [](int64_t a, int64_t b) {
    return std::vector<Rational>{Rational(a), Rational(b)};
  };
  return MatrixGame({{p(0, 0), p(7, 2)}, {p(2, 7), p(6, 6)}});
}

// Battle of the sexes: (0,0) off-diagonal, (2,1) and (1,2) on-diagonal.
// Optimal correlated social welfare 3.0 (any mix of the two diagonals).
inline Game BattleOfSexes() {
  auto p = [](int64_t a, int64_t b) {
    return std::vector<Rational>{Rational(a), Rational(b)};
  };
  return MatrixGame({{p(2, 1), p(0, 0)}, {p(0, 0), p(1, 2)}});
}

// Matching pennies: zero-sum, so social welfare is 0 under any plan.
inline Game MatchingPennies() {
  auto p = [](int64_t a, int64_t b) {
    return std::vector<Rational>{Rational(a), Rational(b)};
  };
  return MatrixGame({{p(1, -1), p(-1, 1)}, {p(-1, 1), p(1, -1)}});
}

// Two-player signaling fixture with a non-trivial public-state structure:
//
//              a  (chance, 1/2 each)
//            /                \
//          b (P0)             c (P0)        <- singleton infosets
//         /    \             /    \
//       d       f          e       g
//      (P1, infoset {d,e})  (P1, infoset {f,g})
//      d: i(z) h(P0)   e: j(z) k(z)   f: l(z) m(z)   g: n(z) o(z)
//      h: p(z) q(z)
//
// Public states: {a}, {b,c}, {d,e}, {f,g}, {h}; information complexity 3
// (e.g. in {d,e}: player 1's infoset plus player 0's two distinct
// sequences). Payoffs are distinct primes so objective maxima are unique.
inline Game SignalingFixture() {
  auto p = [](int64_t a, int64_t b) {
    return std::vector<Rational>{Rational(a), Rational(b)};
  };
  GameBuilder builder(2);
  NodeId a = builder.AddChance(kNoNode, "");
  NodeId b = builder.AddPlayer(a, "left", 0, "b", Rational::Parse("1/2"));
  NodeId c = builder.AddPlayer(a, "right", 0, "c", Rational::Parse("1/2"));
  NodeId d = builder.AddPlayer(b, "d", 1, "de");
  NodeId f = builder.AddPlayer(b, "f", 1, "fg");
  NodeId e = builder.AddPlayer(c, "e", 1, "de");
  NodeId g = builder.AddPlayer(c, "g", 1, "fg");
  builder.AddTerminal(d, "i", p(2, 3));
  NodeId h = builder.AddPlayer(d, "h", 0, "h");
  builder.AddTerminal(h, "p", p(5, 7));
  builder.AddTerminal(h, "q", p(11, 13));
  builder.AddTerminal(e, "j", p(17, 19));
  builder.AddTerminal(e, "k", p(23, 29));
  builder.AddTerminal(f, "l", p(31, 37));
  builder.AddTerminal(f, "m", p(41, 43));
  builder.AddTerminal(g, "n", p(47, 53));
  builder.AddTerminal(g, "o", p(59, 61));
  return builder.Build();
}

}  // namespace testing
}  // namespace correq

#endif  // CORREQ_TESTS_TEST_GAMES_H_
