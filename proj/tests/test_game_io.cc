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

#include <cstdio>
#include <string>

#include "correq/game.h"
#include "correq/game_io.h"
#include "doctest.h"
#include "test_games.h"

namespace correq {
namespace {

TEST_CASE("save then load then save is byte-identical") {
  for (Game game : {testing::SignalingFixture(), testing::Chicken()}) {
    std::string once = SaveGame(game);
    Game reloaded = LoadGame(once);
    std::string twice = SaveGame(reloaded);
    CHECK(once == twice);
    CHECK(reloaded.num_nodes() == game.num_nodes());
    CHECK(reloaded.num_infosets() == game.num_infosets());
    CHECK(reloaded.num_players() == game.num_players());
    for (NodeId h = 0; h < game.num_nodes(); ++h) {
      CHECK(reloaded.node(h).kind == game.node(h).kind);
      CHECK(reloaded.node(h).player == game.node(h).player);
      CHECK(reloaded.node(h).payoffs == game.node(h).payoffs);
      CHECK(reloaded.node(h).infoset == game.node(h).infoset);
    }
  }
}

TEST_CASE("hand-written three-node game loads") {
  std::string text = R"({
    "players": 1,
    "root": 7,
    "nodes": [
      {"id": 7, "kind": "chance", "actions": [
        {"label": "heads", "child": 3, "prob": "1/2"},
        {"label": "tails", "child": 9, "prob": "1/2"}]},
      {"id": 3, "kind": "terminal", "payoffs": ["5"]},
      {"id": 9, "kind": "terminal", "payoffs": ["-5/3"]}
    ]
  })";
  Game game = LoadGame(text);
  CHECK(game.num_players() == 1);
  CHECK(game.num_nodes() == 3);
  CHECK(game.node(0).kind == NodeKind::kChance);
  CHECK(game.node(1).kind == NodeKind::kTerminal);
  CHECK(game.node(1).payoffs[0] == Rational(5));
  CHECK(game.node(2).payoffs[0] == Rational(-5, 3));
  CHECK(game.node(0).actions[0].prob == Rational(1, 2));
  CHECK(game.node(0).actions[0].label == "heads");
}

TEST_CASE("player infoset keys group nodes") {
  std::string text = R"({
    "players": 2,
    "root": 0,
    "nodes": [
      {"id": 0, "kind": "chance", "actions": [
        {"label": "l", "child": 1, "prob": "1/2"},
        {"label": "r", "child": 2, "prob": "1/2"}]},
      {"id": 1, "kind": "player", "player": 1, "infoset": "J",
       "actions": [{"label": "a", "child": 3}, {"label": "b", "child": 4}]},
      {"id": 2, "kind": "player", "player": 1, "infoset": "J",
       "actions": [{"label": "a", "child": 5}, {"label": "b", "child": 6}]},
      {"id": 3, "kind": "terminal", "payoffs": ["1", "0"]},
      {"id": 4, "kind": "terminal", "payoffs": ["0", "1"]},
      {"id": 5, "kind": "terminal", "payoffs": ["2", "0"]},
      {"id": 6, "kind": "terminal", "payoffs": ["0", "2"]}
    ]
  })";
  Game game = LoadGame(text);
  CHECK(game.num_infosets() == 1);
  CHECK(game.infoset(0).members.size() == 2);
  CHECK(game.infoset(0).player == 1);
  CHECK(ValidateGame(game).ok);
}

TEST_CASE("malformed inputs raise parse errors") {
  CHECK_THROWS_AS(LoadGame("not json"), ParseError);
  CHECK_THROWS_AS(LoadGame("{}"), ParseError);  // missing fields
  // Bad probability strings.
  std::string bad_prob = R"({
    "players": 1, "root": 0,
    "nodes": [
      {"id": 0, "kind": "chance", "actions": [
        {"label": "l", "child": 1, "prob": "0.5"},
        {"label": "r", "child": 2, "prob": "1/2"}]},
      {"id": 1, "kind": "terminal", "payoffs": ["0"]},
      {"id": 2, "kind": "terminal", "payoffs": ["0"]}
    ]
  })";
  CHECK_THROWS_AS(LoadGame(bad_prob), ParseError);
  // Unknown node kind.
  std::string bad_kind = R"({
    "players": 1, "root": 0,
    "nodes": [{"id": 0, "kind": "weird", "payoffs": ["0"]}]
  })";
  CHECK_THROWS_AS(LoadGame(bad_kind), ParseError);
  // Child id that does not exist.
  std::string bad_child = R"({
    "players": 1, "root": 0,
    "nodes": [
      {"id": 0, "kind": "chance",
       "actions": [{"label": "l", "child": 5, "prob": "1"}]},
      {"id": 1, "kind": "terminal", "payoffs": ["0"]}
    ]
  })";
  CHECK_THROWS_AS(LoadGame(bad_child), ParseError);
  // Node reached from two parents (shared child).
  std::string dag = R"({
    "players": 1, "root": 0,
    "nodes": [
      {"id": 0, "kind": "chance", "actions": [
        {"label": "l", "child": 1, "prob": "1/2"},
        {"label": "r", "child": 1, "prob": "1/2"}]},
      {"id": 1, "kind": "terminal", "payoffs": ["0"]}
    ]
  })";
  CHECK_THROWS_AS(LoadGame(dag), ParseError);
  // Unreachable node.
  std::string orphan = R"({
    "players": 1, "root": 0,
    "nodes": [
      {"id": 0, "kind": "terminal", "payoffs": ["0"]},
      {"id": 1, "kind": "terminal", "payoffs": ["1"]}
    ]
  })";
  CHECK_THROWS_AS(LoadGame(orphan), ParseError);
  // Terminal with actions.
  std::string terminal_actions = R"({
    "players": 1, "root": 0,
    "nodes": [
      {"id": 0, "kind": "terminal", "payoffs": ["0"],
       "actions": [{"label": "l", "child": 0}]}
    ]
  })";
  CHECK_THROWS_AS(LoadGame(terminal_actions), ParseError);
  // Wrong payoff arity.
  std::string arity = R"({
    "players": 2, "root": 0,
    "nodes": [{"id": 0, "kind": "terminal", "payoffs": ["0"]}]
  })";
  CHECK_THROWS_AS(LoadGame(arity), ParseError);
}

TEST_CASE("file round trip") {
  Game game = testing::BattleOfSexes();
  std::string path = "correq_io_test_tmp.json";
  SaveGameFile(game, path);
  Game reloaded = LoadGameFile(path);
  CHECK(SaveGame(reloaded) == SaveGame(game));
  std::remove(path.c_str());
  CHECK_THROWS_AS(LoadGameFile("does_not_exist_anywhere.json"), ParseError);
}

}  // namespace
}  // namespace correq
