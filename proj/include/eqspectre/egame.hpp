/*
 * Copyright 2026 The eqspectre Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef EQSPECTRE_EGAME_HPP
#define EQSPECTRE_EGAME_HPP

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "eqspectre/energy.hpp"

namespace eqspectre {

using PositionId = std::uint32_t;

struct GameMove {
  UpdateVector update;
  PositionId target;

  bool operator==(const GameMove&) const = default;
};

// Game graph with declining energy updates on moves. Positions are dense ids
// minted by the graph; successors() may mint new ids (lazy materialization),
// but must return the same duplicate-free list on every call.
class GameGraph {
 public:
  virtual ~GameGraph() = default;

  virtual std::size_t dimension() const = 0;
  virtual std::size_t position_count() const = 0;
  virtual bool is_defender(PositionId g) const = 0;
  virtual void successors(PositionId g, std::vector<GameMove>& out) = 0;
  virtual std::string position_label(PositionId g) const = 0;
};

struct SolveLimits {
  // Positions of the spectroscopy game carry whole process sets, so the
  // default budget guards memory, not just time.
  std::size_t max_positions = 2'000'000;
  double timeout_s = 0;  // 0 disables the wall-clock limit
};

class ResourceLimitError : public std::runtime_error {
 public:
  explicit ResourceLimitError(const std::string& what)
      : std::runtime_error(what) {}
};

struct SolveOptions {
  // When set, every stored energy is capped at this bound.
  std::optional<EnergyValue> cap;
  SolveLimits limits;
  // Test hook: randomizes the worklist pop order. The least fixed point is
  // unique, so results must not depend on it.
  std::optional<std::uint64_t> shuffle_seed;
};

struct SolveStats {
  std::size_t positions = 0;
  std::size_t moves = 0;
  std::size_t table_updates = 0;
  std::size_t pops = 0;
};

// Minimal attacker winning budgets per position, valid for the subgraph
// reachable from the solve roots.
class BudgetTable {
 public:
  const Antichain& budgets(PositionId g) const;
  bool known(PositionId g) const {
    return g < known_.size() && known_[g];
  }
  std::size_t size() const { return table_.size(); }

  bool operator==(const BudgetTable&) const = default;

 private:
  friend BudgetTable solve_winning_budgets(GameGraph&,
                                           std::span<const PositionId>,
                                           const SolveOptions&, SolveStats*);
  std::vector<Antichain> table_;
  std::vector<char> known_;
};

// Least fixed point of the winning-budget characterization: stuck defender
// positions win with the zero vector; attacker positions take the minima of
// inversely updated successor budgets; defender positions win only when
// every successor is covered, combining one option per successor by
// supremum.
BudgetTable solve_winning_budgets(GameGraph& game,
                                  std::span<const PositionId> roots,
                                  const SolveOptions& options = {},
                                  SolveStats* stats = nullptr);

bool attacker_wins(const BudgetTable& table, PositionId g, const Energy& e);

// One defender combination step: minimal suprema of one pick per option
// antichain. Equivalent to enumerating all choice functions.
Antichain combine_defender_options(std::span<const Antichain> options,
                                   std::size_t dim);

// Reachable part of a game, for reporting.
struct GameDump {
  std::vector<PositionId> order;  // discovery order
  std::vector<std::vector<GameMove>> succ;
  std::vector<char> defender;
};

GameDump explore_game(GameGraph& game, std::span<const PositionId> roots,
                      const SolveLimits& limits = {});
nlohmann::json game_to_json(const GameGraph& game, const GameDump& dump,
                            const BudgetTable* table = nullptr);
std::string game_to_graphviz(const GameGraph& game, const GameDump& dump,
                             const BudgetTable* table = nullptr);

}  // namespace eqspectre

#endif  // EQSPECTRE_EGAME_HPP
