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

#ifndef EQSPECTRE_SPECTROSCOPY_HPP
#define EQSPECTRE_SPECTROSCOPY_HPP

#include <array>
#include <map>
#include <memory>
#include <optional>
#include <unordered_map>
#include <vector>

#include "eqspectre/egame.hpp"
#include "eqspectre/energy.hpp"
#include "eqspectre/hml.hpp"
#include "eqspectre/lts.hpp"

namespace eqspectre {

// Positions of the spectroscopy energy game. The attacker claims that p can
// be told apart from every process in Q; defender conjunction positions
// split Q into clause answers and a revival set, which are disjoint.
struct SpectroPosition {
  enum class Kind : std::uint8_t { kAttacker, kAttackerClause, kDefenderConj };

  Kind kind = Kind::kAttacker;
  ProcessId p = 0;
  ProcessId q = 0;       // attacker clause only
  ProcessSet set_q;      // attacker: Q; defender: the clause part
  ProcessSet set_qstar;  // defender: the revival part

  static SpectroPosition attacker(ProcessId p, ProcessSet q);
  static SpectroPosition clause(ProcessId p, ProcessId q);
  static SpectroPosition defender(ProcessId p, ProcessSet q,
                                  ProcessSet qstar);

  bool operator==(const SpectroPosition&) const = default;
  std::size_t hash() const;
  std::string to_string() const;
};

enum class GameVariant { kFull, kClever };

// The six move kinds: observation, conjunction challenge, revival, clause
// answer, positive decision, negative decision; each with its fixed update.
std::vector<std::pair<UpdateVector, SpectroPosition>> successors_full(
    const SpectroPosition& pos, const Lts& lts);
// Conjunction challenges restricted to the enabledness-guided revival sets
// (empty set; processes enabling no more than p; no less than p; the same
// as p), deduplicated.
std::vector<std::pair<UpdateVector, SpectroPosition>> successors_clever(
    const SpectroPosition& pos, const Lts& lts);

const UpdateVector& observation_update();
const UpdateVector& challenge_update();
const UpdateVector& revival_update();
const UpdateVector& answer_update();
const UpdateVector& positive_update();
const UpdateVector& negative_update();

// Lazily materialized game graph over an immutable transition system.
class SpectroscopyGame final : public GameGraph {
 public:
  SpectroscopyGame(const Lts& lts, GameVariant variant);

  PositionId intern(const SpectroPosition& pos);
  const SpectroPosition& position(PositionId id) const {
    return positions_[id];
  }
  const Lts& lts() const { return lts_; }
  GameVariant variant() const { return variant_; }

  std::size_t dimension() const override { return kSpectroscopyDim; }
  std::size_t position_count() const override { return positions_.size(); }
  bool is_defender(PositionId g) const override;
  void successors(PositionId g, std::vector<GameMove>& out) override;
  std::string position_label(PositionId g) const override;

 private:
  struct PosHash {
    std::size_t operator()(const SpectroPosition& p) const {
      return p.hash();
    }
  };

  const Lts& lts_;
  GameVariant variant_;
  std::vector<SpectroPosition> positions_;
  std::unordered_map<SpectroPosition, PositionId, PosHash> index_;
};

// Which of the named notions hold, given the minimal attacker budgets of the
// comparison's root: a notion holds iff no budget lies below its coordinate.
std::array<bool, kSpectrumSize> derive_preorders(const Antichain& budgets);

// Maximal budgets won by the defender in both directions; its downset is the
// set of coordinates whose notions equate the pair.
Antichain finest_distinctions(const Antichain& budgets_pq,
                              const Antichain& budgets_qp);

// One member of the attacker's strategy formulas at an attacker position,
// given a winning budget: a formula distinguishing p from every process in Q
// with price below the budget. Deterministic; prefers moves with the
// lexicographically least updated budget. Requires an exact-mode table over
// the full game for completeness.
HmlFormula strategy_formula(SpectroscopyGame& game, const BudgetTable& table,
                            PositionId pos, const Energy& budget);
std::optional<HmlFormula> try_strategy_formula(SpectroscopyGame& game,
                                               const BudgetTable& table,
                                               PositionId pos,
                                               const Energy& budget);

struct SpectroOptions {
  GameVariant variant = GameVariant::kClever;
  std::optional<EnergyValue> cap = 3;  // nullopt for exact budgets
  bool certificates = false;           // needs exact mode
  SolveLimits limits;
  // Additional coordinates to evaluate besides the named spectrum. When any
  // of them is unsafe for the clever variant, the full game is used instead.
  std::vector<std::pair<std::string, Energy>> extra_coords;
};

struct DirectionResult {
  Antichain budgets;
  std::array<bool, kSpectrumSize> preorder{};
  std::vector<std::pair<std::string, bool>> extra;
  // Cheapest distinguishing formula per failed notion (certificate mode).
  std::map<std::string, HmlFormula> certificates;
};

struct SpectroVerdict {
  ProcessId p = 0;
  ProcessId q = 0;
  DirectionResult forward;   // p compared against q
  DirectionResult backward;  // q compared against p
  Antichain finest;          // exact mode only
  bool exact = false;
  bool forced_full = false;
  bool aborted = false;
  std::string abort_reason;

  bool equivalence(std::size_t notion) const {
    return forward.preorder[notion] && backward.preorder[notion];
  }
};

SpectroVerdict spectroscope(const Lts& lts, ProcessId p, ProcessId q,
                            const SpectroOptions& options = {});

// Batched form: one game and one solve per worker, shared across all pairs
// it handles (their reachable subgraphs overlap heavily).
std::vector<SpectroVerdict> spectroscope_pairs(
    const Lts& lts, std::span<const std::pair<ProcessId, ProcessId>> pairs,
    const SpectroOptions& options = {}, unsigned jobs = 1);

// Whole-system spectroscopy: solves the games for all ordered pairs of
// distinct processes sharing an enabledness block. Pairs across blocks are
// never equated by any named notion and are recorded as failing without a
// solve.
struct SystemVerdicts {
  Partition enabledness;
  std::unordered_map<std::uint64_t, Antichain> budgets;  // (p << 32) | q
  SolveStats stats;
  double solve_seconds = 0;

  bool solved(ProcessId p, ProcessId q) const;
  const Antichain& budgets_of(ProcessId p, ProcessId q) const;
  bool preorder_holds(ProcessId p, ProcessId q, std::size_t notion) const;
  bool equivalence_holds(ProcessId p, ProcessId q, std::size_t notion) const;
  Partition notion_partition(std::size_t notion, std::size_t n) const;
};

SystemVerdicts spectroscope_system(const Lts& lts,
                                   const SpectroOptions& options = {},
                                   unsigned jobs = 1);

// Self-check: the pairs won by the defender at unbounded energy, together
// with the diagonal, must form a bisimulation (symmetric and closed under
// the simulation property).
bool check_bisim_witness(const Lts& lts, const SystemVerdicts& verdicts);

}  // namespace eqspectre

#endif  // EQSPECTRE_SPECTROSCOPY_HPP
