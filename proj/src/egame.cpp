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

#include "eqspectre/egame.hpp"

#include <algorithm>
#include <chrono>
#include <deque>
#include <random>
#include <sstream>

namespace eqspectre {

const Antichain& BudgetTable::budgets(PositionId g) const {
  if (!known(g)) {
    throw std::out_of_range("position " + std::to_string(g) +
                            " not covered by this solve");
  }
  return table_[g];
}

bool attacker_wins(const BudgetTable& table, PositionId g, const Energy& e) {
  return dominated_by(table.budgets(g), e);
}

Antichain combine_defender_options(std::span<const Antichain> options,
                                   std::size_t dim) {
  std::vector<Energy> acc{Energy::zero(dim)};
  for (const Antichain& opt : options) {
    if (opt.empty()) return Antichain{};
    Antichain next;
    for (const Energy& a : acc) {
      for (const Energy& b : opt.elements()) {
        next.insert_minimal(least_upper_bound(a, b));
      }
    }
    acc.assign(next.elements().begin(), next.elements().end());
  }
  Antichain result;
  for (const Energy& e : acc) result.insert_minimal(e);
  return result;
}

namespace {

class Deadline {
 public:
  explicit Deadline(double timeout_s) {
    if (timeout_s > 0) {
      deadline_ = std::chrono::steady_clock::now() +
                  std::chrono::duration_cast<std::chrono::steady_clock::duration>(
                      std::chrono::duration<double>(timeout_s));
    }
  }

  void check(const char* phase) const {
    if (deadline_ &&
        std::chrono::steady_clock::now() > *deadline_) {
      throw ResourceLimitError(std::string("wall-clock limit hit during ") +
                               phase);
    }
  }

 private:
  std::optional<std::chrono::steady_clock::time_point> deadline_;
};

struct Explored {
  std::vector<PositionId> order;
  std::vector<std::vector<GameMove>> succ;
  std::vector<std::vector<PositionId>> preds;
  std::vector<char> defender;
  std::vector<char> reachable;

  void ensure(PositionId g) {
    if (g >= reachable.size()) {
      std::size_t n = g + 1;
      succ.resize(n);
      preds.resize(n);
      defender.resize(n, 0);
      reachable.resize(n, 0);
    }
  }
};

Explored explore(GameGraph& game, std::span<const PositionId> roots,
                 const SolveLimits& limits, const Deadline& deadline,
                 bool want_preds) {
  Explored ex;
  std::deque<PositionId> frontier;
  for (PositionId r : roots) {
    ex.ensure(r);
    if (!ex.reachable[r]) {
      ex.reachable[r] = 1;
      frontier.push_back(r);
    }
  }
  std::vector<GameMove> moves;
  std::size_t expansions = 0;
  while (!frontier.empty()) {
    PositionId g = frontier.front();
    frontier.pop_front();
    ex.order.push_back(g);
    ex.defender[g] = game.is_defender(g) ? 1 : 0;
    moves.clear();
    game.successors(g, moves);
    ex.ensure(static_cast<PositionId>(game.position_count() - 1));
    ex.succ[g] = moves;
    for (const GameMove& m : ex.succ[g]) {
      ex.ensure(m.target);
      if (want_preds) ex.preds[m.target].push_back(g);
      if (!ex.reachable[m.target]) {
        ex.reachable[m.target] = 1;
        frontier.push_back(m.target);
      }
    }
    if (ex.order.size() > limits.max_positions) {
      throw ResourceLimitError("position budget exhausted (" +
                               std::to_string(limits.max_positions) + ")");
    }
    if ((++expansions & 0x3FF) == 0) deadline.check("game exploration");
  }
  if (want_preds) {
    for (auto& ps : ex.preds) {
      std::sort(ps.begin(), ps.end());
      ps.erase(std::unique(ps.begin(), ps.end()), ps.end());
    }
  }
  return ex;
}

}  // namespace

BudgetTable solve_winning_budgets(GameGraph& game,
                                  std::span<const PositionId> roots,
                                  const SolveOptions& options,
                                  SolveStats* stats) {
  Deadline deadline(options.limits.timeout_s);
  Explored ex = explore(game, roots, options.limits, deadline, true);

  std::size_t universe = ex.reachable.size();
  BudgetTable result;
  result.table_.resize(universe);
  result.known_ = ex.reachable;

  auto maybe_cap = [&](Energy e) {
    return options.cap ? cap(e, *options.cap) : e;
  };

  std::deque<PositionId> todo;
  std::vector<char> queued(universe, 0);
  auto enqueue = [&](PositionId g) {
    if (!queued[g]) {
      queued[g] = 1;
      todo.push_back(g);
    }
  };

  for (PositionId g : ex.order) {
    if (ex.defender[g] && ex.succ[g].empty()) enqueue(g);
  }

  std::optional<std::mt19937_64> rng;
  if (options.shuffle_seed) rng.emplace(*options.shuffle_seed);

  const std::size_t dim = game.dimension();
  std::size_t pops = 0, updates = 0;
  std::vector<Antichain> option_sets;
  while (!todo.empty()) {
    PositionId g;
    if (rng) {
      std::size_t k = (*rng)() % todo.size();
      std::swap(todo[k], todo.back());
      g = todo.back();
      todo.pop_back();
    } else {
      g = todo.front();
      todo.pop_front();
    }
    queued[g] = 0;
    if ((++pops & 0x3FF) == 0) deadline.check("fixed-point iteration");

    Antichain updated;
    if (!ex.defender[g]) {
      for (const Energy& e : result.table_[g].elements()) {
        updated.insert_minimal(e);
      }
      for (const GameMove& m : ex.succ[g]) {
        for (const Energy& after : result.table_[m.target].elements()) {
          updated.insert_minimal(maybe_cap(invert_update(after, m.update)));
        }
      }
    } else if (ex.succ[g].empty()) {
      updated.insert_minimal(Energy::zero(dim));
    } else {
      option_sets.clear();
      bool covered = true;
      for (const GameMove& m : ex.succ[g]) {
        Antichain opts;
        for (const Energy& after : result.table_[m.target].elements()) {
          opts.insert_minimal(maybe_cap(invert_update(after, m.update)));
        }
        if (opts.empty()) {
          covered = false;
          break;
        }
        option_sets.push_back(std::move(opts));
      }
      if (covered) {
        updated = combine_defender_options(option_sets, dim);
      }
    }

    if (updated != result.table_[g]) {
      // The fixed point only ever grows the winning set.
      for (const Energy& old : result.table_[g].elements()) {
        if (!dominated_by(updated, old)) {
          throw std::logic_error("winning budgets shrank at position " +
                                 std::to_string(g));
        }
      }
      result.table_[g] = std::move(updated);
      ++updates;
      for (PositionId pred : ex.preds[g]) enqueue(pred);
    }
  }

  if (stats) {
    stats->positions = ex.order.size();
    std::size_t moves = 0;
    for (PositionId g : ex.order) moves += ex.succ[g].size();
    stats->moves = moves;
    stats->table_updates = updates;
    stats->pops = pops;
  }
  return result;
}

GameDump explore_game(GameGraph& game, std::span<const PositionId> roots,
                      const SolveLimits& limits) {
  Deadline deadline(limits.timeout_s);
  Explored ex = explore(game, roots, limits, deadline, false);
  GameDump dump;
  dump.order = std::move(ex.order);
  dump.succ = std::move(ex.succ);
  dump.defender = std::move(ex.defender);
  return dump;
}

nlohmann::json game_to_json(const GameGraph& game, const GameDump& dump,
                            const BudgetTable* table) {
  nlohmann::json positions = nlohmann::json::array();
  nlohmann::json moves = nlohmann::json::array();
  for (PositionId g : dump.order) {
    nlohmann::json pos{{"id", g},
                       {"label", game.position_label(g)},
                       {"owner", dump.defender[g] ? "defender" : "attacker"}};
    if (table && table->known(g)) {
      pos["budgets"] = to_json(table->budgets(g));
    }
    positions.push_back(std::move(pos));
    for (const GameMove& m : dump.succ[g]) {
      moves.push_back(nlohmann::json{
          {"from", g}, {"to", m.target}, {"update", m.update.to_json()}});
    }
  }
  return nlohmann::json{{"positions", positions}, {"moves", moves}};
}

std::string game_to_graphviz(const GameGraph& game, const GameDump& dump,
                             const BudgetTable* table) {
  std::ostringstream os;
  os << "digraph game {\n  rankdir=LR;\n";
  for (PositionId g : dump.order) {
    os << "  n" << g << " [shape="
       << (dump.defender[g] ? "ellipse" : "box") << ", label=\""
       << game.position_label(g);
    if (table && table->known(g)) {
      os << "\\n" << table->budgets(g).to_string();
    }
    os << "\"];\n";
  }
  for (PositionId g : dump.order) {
    for (const GameMove& m : dump.succ[g]) {
      os << "  n" << g << " -> n" << m.target << " [label=\""
         << m.update.to_string() << "\"];\n";
    }
  }
  os << "}\n";
  return os.str();
}

}  // namespace eqspectre
