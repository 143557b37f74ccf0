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

#ifndef CORREQ_GAME_IO_H_
#define CORREQ_GAME_IO_H_

#include <stdexcept>
#include <string>

#include "correq/game.h"

namespace correq {

// Raised on malformed game files; the message carries the offending
// field/node and, for syntax errors, the byte position reported by the
// JSON parser.
struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// JSON game format:
//   {
//     "players": 2,
//     "root": 0,
//     "nodes": [
//       {"id": 0, "kind": "chance",
//        "actions": [{"label": "l", "child": 1, "prob": "1/2"}, ...]},
//       {"id": 1, "kind": "player", "player": 0, "infoset": "P0.card2",
//        "actions": [{"label": "check", "child": 2}, ...]},
//       {"id": 2, "kind": "terminal", "payoffs": ["1", "-1"]}
//     ]
//   }
// Rationals are "p" or "p/q" strings. SaveGame emits nodes in preorder with
// canonical ids, so save -> load -> save round-trips byte-identically.
Game LoadGame(const std::string& bytes);
std::string SaveGame(const Game& game);

Game LoadGameFile(const std::string& path);
void SaveGameFile(const Game& game, const std::string& path);

}  // namespace correq

#endif  // CORREQ_GAME_IO_H_
