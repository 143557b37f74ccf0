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

#include "correq/game_io.h"

#include <fstream>
#include <sstream>
#include <unordered_map>

#include "json.hpp"

namespace correq {

namespace {

using OrderedJson = nlohmann::ordered_json;

Rational ParseProb(const OrderedJson& value, const std::string& where) {
  try {
    if (value.is_string()) return Rational::Parse(value.get<std::string>());
    if (value.is_number_integer()) return Rational(value.get<int64_t>());
  } catch (const std::exception& e) {
    throw ParseError(where + ": " + e.what());
  }
  throw ParseError(where + ": expected an exact rational (string or integer)");
}

}  // namespace

Game LoadGame(const std::string& bytes) {
  OrderedJson doc;
  try {
    doc = OrderedJson::parse(bytes);
  } catch (const std::exception& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("players") || !doc.contains("nodes")) {
    throw ParseError("expected an object with \"players\" and \"nodes\"");
  }
  int players;
  long long root = 0;
  try {
    players = doc.at("players").get<int>();
    if (doc.contains("root")) root = doc.at("root").get<long long>();
  } catch (const std::exception& e) {
    throw ParseError(std::string("bad header field: ") + e.what());
  }
  if (players < 1) throw ParseError("\"players\" must be positive");
  const OrderedJson& nodes = doc.at("nodes");
  if (!nodes.is_array() || nodes.empty()) {
    throw ParseError("\"nodes\" must be a non-empty array");
  }
  int n = static_cast<int>(nodes.size());
  // Ids are arbitrary integers; map them to array indexes.
  std::unordered_map<long long, int> by_id;
  by_id.reserve(nodes.size());
  for (int idx = 0; idx < n; ++idx) {
    const OrderedJson& node = nodes[idx];
    if (!node.is_object() || !node.contains("id") ||
        !node.at("id").is_number_integer()) {
      throw ParseError("node " + std::to_string(idx) + ": missing \"id\"");
    }
    long long id = node.at("id").get<long long>();
    if (!by_id.emplace(id, idx).second) {
      throw ParseError("duplicate node id " + std::to_string(id));
    }
  }
  if (!by_id.count(root)) throw ParseError("\"root\" id not found");

  GameBuilder builder(players);
  // Depth-first from the root, children in listed order, so builder ids are
  // preorder.
  struct Pending {
    long long id;   // file id
    NodeId parent;  // builder id
    std::string label;
    Rational prob;
  };
  std::vector<Pending> stack = {{root, kNoNode, "", Rational(1)}};
  std::vector<bool> seen(n, false);
  while (!stack.empty()) {
    Pending item = stack.back();
    stack.pop_back();
    int item_idx = by_id.at(item.id);
    if (seen[item_idx]) {
      throw ParseError("node " + std::to_string(item.id) +
                       " reached twice; games must be trees");
    }
    seen[item_idx] = true;
    const OrderedJson& node = nodes[item_idx];
    std::string where = "node " + std::to_string(item.id);
    std::string kind;
    try {
      kind = node.at("kind").get<std::string>();
    } catch (const std::exception&) {
      throw ParseError(where + ": missing \"kind\"");
    }
    NodeId built;
    try {
      if (kind == "chance") {
        built = builder.AddChance(item.parent, item.label, item.prob);
      } else if (kind == "player") {
        if (!node.contains("player") || !node.contains("infoset")) {
          throw ParseError(where + ": player nodes need \"player\"/\"infoset\"");
        }
        built = builder.AddPlayer(item.parent, item.label,
                                  node.at("player").get<PlayerId>(),
                                  node.at("infoset").get<std::string>(),
                                  item.prob);
      } else if (kind == "terminal") {
        if (!node.contains("payoffs") || !node.at("payoffs").is_array()) {
          throw ParseError(where + ": terminal nodes need \"payoffs\"");
        }
        std::vector<Rational> payoffs;
        for (const OrderedJson& p : node.at("payoffs")) {
          payoffs.push_back(ParseProb(p, where + " payoff"));
        }
        built = builder.AddTerminal(item.parent, item.label,
                                    std::move(payoffs), item.prob);
      } else {
        throw ParseError(where + ": unknown kind \"" + kind + "\"");
      }
    } catch (const ParseError&) {
      throw;
    } catch (const std::exception& e) {
      throw ParseError(where + ": " + e.what());
    }
    if (kind != "terminal") {
      if (!node.contains("actions") || !node.at("actions").is_array() ||
          node.at("actions").empty()) {
        throw ParseError(where + ": non-terminal nodes need \"actions\"");
      }
      const OrderedJson& actions = node.at("actions");
      for (auto it = actions.rbegin(); it != actions.rend(); ++it) {
        const OrderedJson& action = *it;
        if (!action.is_object() || !action.contains("child")) {
          throw ParseError(where + ": action missing \"child\"");
        }
        long long child = action.at("child").get<long long>();
        if (!by_id.count(child)) {
          throw ParseError(where + ": child id " + std::to_string(child) +
                           " not found");
        }
        std::string label =
            action.contains("label") ? action.at("label").get<std::string>()
                                     : "";
        Rational prob = action.contains("prob")
                            ? ParseProb(action.at("prob"), where + " prob")
                            : Rational(1);
        stack.push_back({child, built, label, prob});
      }
    } else if (node.contains("actions") && !node.at("actions").empty()) {
      throw ParseError(where + ": terminal node with actions");
    }
  }
  for (int idx = 0; idx < n; ++idx) {
    if (!seen[idx]) {
      throw ParseError("node at index " + std::to_string(idx) +
                       " unreachable from the root");
    }
  }
  try {
    return builder.Build();
  } catch (const std::exception& e) {
    throw ParseError(std::string("invalid game: ") + e.what());
  }
}

std::string SaveGame(const Game& game) {
  OrderedJson doc;
  doc["players"] = game.num_players();
  doc["root"] = game.root();
  OrderedJson nodes = OrderedJson::array();
  for (NodeId h = 0; h < game.num_nodes(); ++h) {
    const GameNode& node = game.node(h);
    OrderedJson out;
    out["id"] = h;
    switch (node.kind) {
      case NodeKind::kChance:
        out["kind"] = "chance";
        break;
      case NodeKind::kPlayer:
        out["kind"] = "player";
        out["player"] = node.player;
        out["infoset"] = game.infoset(node.infoset).label;
        break;
      case NodeKind::kTerminal: {
        out["kind"] = "terminal";
        OrderedJson payoffs = OrderedJson::array();
        for (const Rational& p : node.payoffs) payoffs.push_back(p.ToString());
        out["payoffs"] = std::move(payoffs);
        break;
      }
    }
    if (node.kind != NodeKind::kTerminal) {
      OrderedJson actions = OrderedJson::array();
      for (const GameAction& a : node.actions) {
        OrderedJson action;
        action["label"] = a.label;
        action["child"] = a.child;
        if (node.kind == NodeKind::kChance) {
          action["prob"] = a.prob.ToString();
        }
        actions.push_back(std::move(action));
      }
      out["actions"] = std::move(actions);
    }
    nodes.push_back(std::move(out));
  }
  doc["nodes"] = std::move(nodes);
  return doc.dump(2) + "\n";
}

Game LoadGameFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return LoadGame(buffer.str());
}

void SaveGameFile(const Game& game, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ParseError("cannot write " + path);
  out << SaveGame(game);
}

}  // namespace correq
