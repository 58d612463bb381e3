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

#include "eqspectre/spectroscopy.hpp"

#include <algorithm>
#include <cassert>
#include <chrono>
#include <functional>
#include <sstream>
#include <thread>
#include <unordered_set>

namespace eqspectre {

SpectroPosition SpectroPosition::attacker(ProcessId p, ProcessSet q) {
  SpectroPosition pos;
  pos.kind = Kind::kAttacker;
  pos.p = p;
  pos.set_q = std::move(q);
  return pos;
}

SpectroPosition SpectroPosition::clause(ProcessId p, ProcessId q) {
  SpectroPosition pos;
  pos.kind = Kind::kAttackerClause;
  pos.p = p;
  pos.q = q;
  return pos;
}

SpectroPosition SpectroPosition::defender(ProcessId p, ProcessSet q,
                                          ProcessSet qstar) {
  SpectroPosition pos;
  pos.kind = Kind::kDefenderConj;
  pos.p = p;
  pos.set_q = std::move(q);
  pos.set_qstar = std::move(qstar);
  assert(pos.set_q.minus(pos.set_qstar) == pos.set_q);
  return pos;
}

std::size_t SpectroPosition::hash() const {
  std::size_t h = static_cast<std::size_t>(kind) * 0x9E3779B97F4A7C15ull;
  h ^= (static_cast<std::size_t>(p) << 1) * 1099511628211ull;
  h ^= (static_cast<std::size_t>(q) << 7) * 1099511628211ull;
  h ^= set_q.hash() + 0x9E3779B97F4A7C15ull + (h << 6) + (h >> 2);
  h ^= set_qstar.hash() + 0x9E3779B97F4A7C15ull + (h << 6) + (h >> 2);
  return h;
}

std::string SpectroPosition::to_string() const {
  std::ostringstream os;
  switch (kind) {
    case Kind::kAttacker:
      os << '<' << p << ',' << set_q.to_string() << '>';
      break;
    case Kind::kAttackerClause:
      os << '<' << p << '~' << q << '>';
      break;
    case Kind::kDefenderConj:
      os << "d(" << p << ',' << set_q.to_string() << ','
         << set_qstar.to_string() << ')';
      break;
  }
  return os.str();
}

namespace {

UpdateVector make_observation() {
  UpdateVector u(kSpectroscopyDim);
  u.set_decrement(0);
  return u;
}

UpdateVector make_challenge() {
  UpdateVector u(kSpectroscopyDim);
  u.set_decrement(1);
  return u;
}

UpdateVector make_revival() {
  UpdateVector u(kSpectroscopyDim);
  u.set_min_of(0, {0, 2});
  return u;
}

UpdateVector make_answer() {
  UpdateVector u(kSpectroscopyDim);
  u.set_min_of(3, {2, 3});
  return u;
}

UpdateVector make_positive() {
  UpdateVector u(kSpectroscopyDim);
  u.set_min_of(0, {0, 3});
  return u;
}

UpdateVector make_negative() {
  UpdateVector u(kSpectroscopyDim);
  u.set_min_of(0, {0, 4});
  u.set_decrement(5);
  return u;
}

}  // namespace

const UpdateVector& observation_update() {
  static const UpdateVector u = make_observation();
  return u;
}
const UpdateVector& challenge_update() {
  static const UpdateVector u = make_challenge();
  return u;
}
const UpdateVector& revival_update() {
  static const UpdateVector u = make_revival();
  return u;
}
const UpdateVector& answer_update() {
  static const UpdateVector u = make_answer();
  return u;
}
const UpdateVector& positive_update() {
  static const UpdateVector u = make_positive();
  return u;
}
const UpdateVector& negative_update() {
  static const UpdateVector u = make_negative();
  return u;
}

namespace {

struct PosHasher {
  std::size_t operator()(const SpectroPosition& p) const { return p.hash(); }
};

void observation_successors(
    const SpectroPosition& pos, const Lts& lts,
    std::vector<std::pair<UpdateVector, SpectroPosition>>& out) {
  std::unordered_set<SpectroPosition, PosHasher> seen;
  for (ActionId a : lts.enabled(pos.p)) {
    ProcessSet stepped = lts.step_set(pos.set_q, a);
    for (ProcessId succ : lts.targets(pos.p, a)) {
      SpectroPosition next = SpectroPosition::attacker(succ, stepped);
      if (seen.insert(next).second) {
        out.emplace_back(observation_update(), std::move(next));
      }
    }
  }
}

void shared_successors(
    const SpectroPosition& pos,
    std::vector<std::pair<UpdateVector, SpectroPosition>>& out) {
  switch (pos.kind) {
    case SpectroPosition::Kind::kDefenderConj:
      if (!pos.set_qstar.empty()) {
        out.emplace_back(revival_update(),
                         SpectroPosition::attacker(pos.p, pos.set_qstar));
      }
      for (ProcessId q : pos.set_q) {
        out.emplace_back(answer_update(),
                         SpectroPosition::clause(pos.p, q));
      }
      break;
    case SpectroPosition::Kind::kAttackerClause:
      out.emplace_back(
          positive_update(),
          SpectroPosition::attacker(pos.p, ProcessSet::single(pos.q)));
      if (pos.p != pos.q) {
        out.emplace_back(
            negative_update(),
            SpectroPosition::attacker(pos.q, ProcessSet::single(pos.p)));
      }
      break;
    case SpectroPosition::Kind::kAttacker:
      break;
  }
}

}  // namespace

std::vector<std::pair<UpdateVector, SpectroPosition>> successors_full(
    const SpectroPosition& pos, const Lts& lts) {
  std::vector<std::pair<UpdateVector, SpectroPosition>> out;
  if (pos.kind != SpectroPosition::Kind::kAttacker) {
    shared_successors(pos, out);
    return out;
  }
  observation_successors(pos, lts, out);
  if (pos.set_q.size() > 25) {
    throw ResourceLimitError(
        "conjunction challenge set too wide for the unrestricted game (" +
        std::to_string(pos.set_q.size()) + " processes)");
  }
  std::vector<ProcessId> members(pos.set_q.begin(), pos.set_q.end());
  for (std::uint32_t mask = 0; mask < (1u << members.size()); ++mask) {
    std::vector<ProcessId> star, rest;
    for (std::size_t i = 0; i < members.size(); ++i) {
      if (mask & (1u << i)) {
        star.push_back(members[i]);
      } else {
        rest.push_back(members[i]);
      }
    }
    out.emplace_back(challenge_update(),
                     SpectroPosition::defender(pos.p,
                                               ProcessSet(std::move(rest)),
                                               ProcessSet(std::move(star))));
  }
  return out;
}

std::vector<std::pair<UpdateVector, SpectroPosition>> successors_clever(
    const SpectroPosition& pos, const Lts& lts) {
  std::vector<std::pair<UpdateVector, SpectroPosition>> out;
  if (pos.kind != SpectroPosition::Kind::kAttacker) {
    shared_successors(pos, out);
    return out;
  }
  observation_successors(pos, lts, out);

  std::vector<ProcessId> below, above, equal;
  for (ProcessId q : pos.set_q) {
    bool q_le_p = lts.enabled_subset(q, pos.p);
    bool p_le_q = lts.enabled_subset(pos.p, q);
    if (q_le_p) below.push_back(q);
    if (p_le_q) above.push_back(q);
    if (q_le_p && p_le_q) equal.push_back(q);
  }
  std::vector<ProcessSet> stars{ProcessSet{}, ProcessSet(std::move(below)),
                                ProcessSet(std::move(above)),
                                ProcessSet(std::move(equal))};
  std::vector<ProcessSet> unique_stars;
  for (ProcessSet& s : stars) {
    if (std::find(unique_stars.begin(), unique_stars.end(), s) ==
        unique_stars.end()) {
      unique_stars.push_back(std::move(s));
    }
  }
  for (ProcessSet& star : unique_stars) {
    ProcessSet rest = pos.set_q.minus(star);
    out.emplace_back(challenge_update(),
                     SpectroPosition::defender(pos.p, std::move(rest),
                                               std::move(star)));
  }
  return out;
}

SpectroscopyGame::SpectroscopyGame(const Lts& lts, GameVariant variant)
    : lts_(lts), variant_(variant) {}

PositionId SpectroscopyGame::intern(const SpectroPosition& pos) {
  auto it = index_.find(pos);
  if (it != index_.end()) return it->second;
  PositionId id = static_cast<PositionId>(positions_.size());
  positions_.push_back(pos);
  index_.emplace(pos, id);
  return id;
}

bool SpectroscopyGame::is_defender(PositionId g) const {
  return positions_[g].kind == SpectroPosition::Kind::kDefenderConj;
}

void SpectroscopyGame::successors(PositionId g, std::vector<GameMove>& out) {
  out.clear();
  // positions_[g] may be invalidated by intern() growing the vector.
  SpectroPosition pos = positions_[g];
  auto raw = variant_ == GameVariant::kFull ? successors_full(pos, lts_)
                                            : successors_clever(pos, lts_);
  out.reserve(raw.size());
  for (auto& [update, succ] : raw) {
    out.push_back(GameMove{update, intern(succ)});
  }
}

std::string SpectroscopyGame::position_label(PositionId g) const {
  return positions_[g].to_string();
}

std::array<bool, kSpectrumSize> derive_preorders(const Antichain& budgets) {
  std::array<bool, kSpectrumSize> holds{};
  auto coords = spectrum_coords();
  for (std::size_t i = 0; i < kSpectrumSize; ++i) {
    holds[i] = !dominated_by(budgets, coords[i].coordinate);
  }
  return holds;
}

Antichain finest_distinctions(const Antichain& budgets_pq,
                              const Antichain& budgets_qp) {
  std::vector<Energy> all(budgets_pq.elements().begin(),
                          budgets_pq.elements().end());
  all.insert(all.end(), budgets_qp.elements().begin(),
             budgets_qp.elements().end());
  return complement_antichain(normalize_min(all), kSpectroscopyDim);
}

namespace {

struct ExtractKey {
  PositionId pos;
  Energy budget;
  bool need_obs;

  bool operator==(const ExtractKey&) const = default;
};

struct ExtractKeyHash {
  std::size_t operator()(const ExtractKey& k) const {
    return k.budget.hash() ^ (static_cast<std::size_t>(k.pos) << 17) ^
           (k.need_obs ? 0x8000000 : 0);
  }
};

// Backtracking search through the strategy-formula rules. At conjunctions
// every clause must succeed. Revival clauses and decided clauses prefer
// observation shape; when no observation-shaped witness exists (the swapped
// side may be unable to observe anything), a nested conjunction is accepted,
// which keeps both the distinction and the price bound intact.
class FormulaExtractor {
 public:
  FormulaExtractor(SpectroscopyGame& game, const BudgetTable& table)
      : game_(game), table_(table), lts_(game.lts()) {}

  std::optional<HmlFormula> extract(PositionId pos, const Energy& budget,
                                    bool need_obs) {
    if (!table_.known(pos) ||
        !dominated_by(table_.budgets(pos), budget)) {
      return std::nullopt;
    }
    ExtractKey key{pos, budget, need_obs};
    auto it = memo_.find(key);
    if (it != memo_.end()) return it->second;
    std::optional<HmlFormula> result = compute(pos, budget, need_obs);
    memo_.emplace(std::move(key), result);
    return result;
  }

 private:
  struct Candidate {
    Energy after;
    PositionId target;
    ActionId action = 0;   // observations only
    bool is_challenge = false;
    bool is_negative = false;
  };

  static void sort_candidates(std::vector<Candidate>& cs) {
    std::stable_sort(cs.begin(), cs.end(),
                     [](const Candidate& a, const Candidate& b) {
                       if (a.after != b.after) {
                         return Energy::lex_less(a.after, b.after);
                       }
                       return a.target < b.target;
                     });
  }

  std::optional<HmlFormula> compute(PositionId pos_id, const Energy& budget,
                                    bool need_obs) {
    const SpectroPosition pos = game_.position(pos_id);
    switch (pos.kind) {
      case SpectroPosition::Kind::kAttacker:
        return attacker_formula(pos, budget, need_obs);
      case SpectroPosition::Kind::kAttackerClause:
        return clause_formula(pos, budget);
      case SpectroPosition::Kind::kDefenderConj:
        return conjunction_formula(pos, budget);
    }
    return std::nullopt;
  }

  std::optional<HmlFormula> attacker_formula(const SpectroPosition& pos,
                                             const Energy& budget,
                                             bool need_obs) {
    std::vector<Candidate> candidates;
    if (auto after = apply_update(budget, observation_update())) {
      for (ActionId a : lts_.enabled(pos.p)) {
        ProcessSet stepped = lts_.step_set(pos.set_q, a);
        for (ProcessId succ : lts_.targets(pos.p, a)) {
          PositionId target =
              game_.intern(SpectroPosition::attacker(succ, stepped));
          if (table_.known(target) &&
              dominated_by(table_.budgets(target), *after)) {
            candidates.push_back({*after, target, a, false, false});
          }
        }
      }
    }
    if (!need_obs) {
      if (auto after = apply_update(budget, challenge_update())) {
        auto raw = game_.variant() == GameVariant::kFull
                       ? successors_full(pos, lts_)
                       : successors_clever(pos, lts_);
        for (auto& [update, succ] : raw) {
          if (succ.kind != SpectroPosition::Kind::kDefenderConj) continue;
          PositionId target = game_.intern(succ);
          if (table_.known(target) &&
              dominated_by(table_.budgets(target), *after)) {
            candidates.push_back({*after, target, 0, true, false});
          }
        }
      }
    }
    sort_candidates(candidates);
    for (const Candidate& c : candidates) {
      if (c.is_challenge) {
        if (auto sub = extract(c.target, c.after, false)) return sub;
      } else {
        if (auto sub = extract(c.target, c.after, false)) {
          return HmlFormula::observe(c.action, std::move(*sub));
        }
      }
    }
    return std::nullopt;
  }

  // observation shape first, general shape as fallback
  std::optional<HmlFormula> extract_clause_body(PositionId target,
                                                const Energy& after) {
    if (auto sub = extract(target, after, true)) return sub;
    return extract(target, after, false);
  }

  std::optional<HmlFormula> clause_formula(const SpectroPosition& pos,
                                           const Energy& budget) {
    std::vector<Candidate> candidates;
    if (auto after = apply_update(budget, positive_update())) {
      PositionId target = game_.intern(
          SpectroPosition::attacker(pos.p, ProcessSet::single(pos.q)));
      if (table_.known(target) &&
          dominated_by(table_.budgets(target), *after)) {
        candidates.push_back({*after, target, 0, false, false});
      }
    }
    if (pos.p != pos.q) {
      if (auto after = apply_update(budget, negative_update())) {
        PositionId target = game_.intern(
            SpectroPosition::attacker(pos.q, ProcessSet::single(pos.p)));
        if (table_.known(target) &&
            dominated_by(table_.budgets(target), *after)) {
          candidates.push_back({*after, target, 0, false, true});
        }
      }
    }
    sort_candidates(candidates);
    for (const Candidate& c : candidates) {
      if (auto sub = extract_clause_body(c.target, c.after)) {
        if (c.is_negative) return HmlFormula::neg(std::move(*sub));
        return sub;
      }
    }
    return std::nullopt;
  }

  std::optional<HmlFormula> conjunction_formula(const SpectroPosition& pos,
                                                const Energy& budget) {
    std::vector<HmlFormula> clauses;
    for (ProcessId q : pos.set_q) {
      Energy after = *apply_update(budget, answer_update());
      PositionId target = game_.intern(SpectroPosition::clause(pos.p, q));
      auto sub = extract(target, after, false);
      if (!sub) return std::nullopt;
      clauses.push_back(std::move(*sub));
    }
    if (!pos.set_qstar.empty()) {
      Energy after = *apply_update(budget, revival_update());
      PositionId target =
          game_.intern(SpectroPosition::attacker(pos.p, pos.set_qstar));
      auto sub = extract_clause_body(target, after);
      if (!sub) return std::nullopt;
      clauses.push_back(std::move(*sub));
    }
    return HmlFormula::conj(std::move(clauses));
  }

  SpectroscopyGame& game_;
  const BudgetTable& table_;
  const Lts& lts_;
  std::unordered_map<ExtractKey, std::optional<HmlFormula>, ExtractKeyHash>
      memo_;
};

}  // namespace

std::optional<HmlFormula> try_strategy_formula(SpectroscopyGame& game,
                                               const BudgetTable& table,
                                               PositionId pos,
                                               const Energy& budget) {
  FormulaExtractor extractor(game, table);
  return extractor.extract(pos, budget, false);
}

HmlFormula strategy_formula(SpectroscopyGame& game, const BudgetTable& table,
                            PositionId pos, const Energy& budget) {
  if (!table.known(pos) || !dominated_by(table.budgets(pos), budget)) {
    throw std::invalid_argument("budget " + budget.to_string() +
                                " is not winning at " +
                                game.position_label(pos));
  }
  auto formula = try_strategy_formula(game, table, pos, budget);
  if (!formula) {
    throw std::runtime_error("no strategy formula found at " +
                             game.position_label(pos) + " for " +
                             budget.to_string());
  }
  return *formula;
}

namespace {

void fill_direction(DirectionResult& dir, const Antichain& budgets,
                    const SpectroOptions& options) {
  dir.budgets = budgets;
  dir.preorder = derive_preorders(budgets);
  for (const auto& [name, coord] : options.extra_coords) {
    dir.extra.emplace_back(name, !dominated_by(budgets, coord));
  }
}

void fill_certificates(DirectionResult& dir, SpectroscopyGame& game,
                       const BudgetTable& table, PositionId root) {
  auto coords = spectrum_coords();
  for (std::size_t i = 0; i < kSpectrumSize; ++i) {
    if (dir.preorder[i]) continue;
    // Cheapest witness: the lexicographically least minimal budget below the
    // notion's coordinate. Elements are already in lexicographic order.
    for (const Energy& m : dir.budgets.elements()) {
      if (!order_leq(m, coords[i].coordinate)) continue;
      if (auto formula = try_strategy_formula(game, table, root, m)) {
        dir.certificates.emplace(coords[i].name, std::move(*formula));
      }
      break;
    }
  }
}

}  // namespace

namespace {

// Variant to actually play, honoring the precondition of the reduced game.
GameVariant effective_game_variant(const SpectroOptions& options,
                                   bool* forced_full) {
  GameVariant variant = options.variant;
  for (const auto& [name, coord] : options.extra_coords) {
    if (variant == GameVariant::kClever && !clever_applicable(coord)) {
      variant = GameVariant::kFull;
      if (forced_full) *forced_full = true;
    }
  }
  return variant;
}

void solve_pair_batch(const Lts& lts,
                      std::span<const std::pair<ProcessId, ProcessId>> pairs,
                      const SpectroOptions& options,
                      std::span<SpectroVerdict*> out) {
  bool forced_full = false;
  GameVariant variant = effective_game_variant(options, &forced_full);
  bool exact = !options.cap.has_value();

  SpectroscopyGame game(lts, variant);
  std::vector<PositionId> roots;
  roots.reserve(2 * pairs.size());
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    auto [p, q] = pairs[i];
    if (p >= lts.process_count() || q >= lts.process_count()) {
      throw std::invalid_argument("process id out of range");
    }
    SpectroVerdict& verdict = *out[i];
    verdict.p = p;
    verdict.q = q;
    verdict.exact = exact;
    verdict.forced_full = forced_full;
    roots.push_back(
        game.intern(SpectroPosition::attacker(p, ProcessSet::single(q))));
    roots.push_back(
        game.intern(SpectroPosition::attacker(q, ProcessSet::single(p))));
  }

  SolveOptions solve_options;
  solve_options.cap = options.cap;
  solve_options.limits = options.limits;

  BudgetTable table;
  try {
    table = solve_winning_budgets(game, roots, solve_options);
  } catch (const ResourceLimitError& err) {
    for (std::size_t i = 0; i < pairs.size(); ++i) {
      out[i]->aborted = true;
      out[i]->abort_reason = err.what();
    }
    return;
  }

  for (std::size_t i = 0; i < pairs.size(); ++i) {
    SpectroVerdict& verdict = *out[i];
    PositionId fwd = roots[2 * i];
    PositionId bwd = roots[2 * i + 1];
    fill_direction(verdict.forward, table.budgets(fwd), options);
    fill_direction(verdict.backward, table.budgets(bwd), options);
    if (exact) {
      verdict.finest = finest_distinctions(verdict.forward.budgets,
                                           verdict.backward.budgets);
      if (options.certificates) {
        fill_certificates(verdict.forward, game, table, fwd);
        fill_certificates(verdict.backward, game, table, bwd);
      }
    }
  }
}

}  // namespace

SpectroVerdict spectroscope(const Lts& lts, ProcessId p, ProcessId q,
                            const SpectroOptions& options) {
  SpectroVerdict verdict;
  SpectroVerdict* slot = &verdict;
  std::pair<ProcessId, ProcessId> pair{p, q};
  solve_pair_batch(lts, {&pair, 1}, options, {&slot, 1});
  return verdict;
}

std::vector<SpectroVerdict> spectroscope_pairs(
    const Lts& lts, std::span<const std::pair<ProcessId, ProcessId>> pairs,
    const SpectroOptions& options, unsigned jobs) {
  std::vector<SpectroVerdict> verdicts(pairs.size());
  unsigned workers =
      std::max<unsigned>(1, std::min<std::size_t>(jobs, pairs.size()));
  std::vector<std::exception_ptr> errors(workers);
  auto work = [&](unsigned w) {
    try {
      std::vector<std::pair<ProcessId, ProcessId>> mine;
      std::vector<SpectroVerdict*> slots;
      for (std::size_t i = w; i < pairs.size(); i += workers) {
        mine.push_back(pairs[i]);
        slots.push_back(&verdicts[i]);
      }
      if (!mine.empty()) solve_pair_batch(lts, mine, options, slots);
    } catch (...) {
      errors[w] = std::current_exception();
    }
  };
  if (workers == 1) {
    work(0);
  } else {
    std::vector<std::thread> threads;
    for (unsigned w = 0; w < workers; ++w) threads.emplace_back(work, w);
    for (auto& t : threads) t.join();
  }
  for (auto& err : errors) {
    if (err) std::rethrow_exception(err);
  }
  return verdicts;
}

namespace {

std::uint64_t pair_key(ProcessId p, ProcessId q) {
  return (static_cast<std::uint64_t>(p) << 32) | q;
}

}  // namespace

bool SystemVerdicts::solved(ProcessId p, ProcessId q) const {
  return budgets.contains(pair_key(p, q));
}

const Antichain& SystemVerdicts::budgets_of(ProcessId p, ProcessId q) const {
  auto it = budgets.find(pair_key(p, q));
  if (it == budgets.end()) {
    throw std::out_of_range("pair not solved");
  }
  return it->second;
}

bool SystemVerdicts::preorder_holds(ProcessId p, ProcessId q,
                                    std::size_t notion) const {
  if (p == q) return true;
  auto it = budgets.find(pair_key(p, q));
  if (it == budgets.end()) return false;  // across enabledness blocks
  return !dominated_by(it->second, spectrum_coords()[notion].coordinate);
}

bool SystemVerdicts::equivalence_holds(ProcessId p, ProcessId q,
                                       std::size_t notion) const {
  return preorder_holds(p, q, notion) && preorder_holds(q, p, notion);
}

Partition SystemVerdicts::notion_partition(std::size_t notion,
                                           std::size_t n) const {
  std::vector<std::uint32_t> parent(n);
  for (std::size_t i = 0; i < n; ++i) parent[i] = static_cast<std::uint32_t>(i);
  std::function<std::uint32_t(std::uint32_t)> find =
      [&](std::uint32_t x) -> std::uint32_t {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  };
  for (const auto& [key, ac] : budgets) {
    ProcessId p = static_cast<ProcessId>(key >> 32);
    ProcessId q = static_cast<ProcessId>(key & 0xFFFFFFFFu);
    if (p < q && equivalence_holds(p, q, notion)) {
      parent[find(p)] = find(q);
    }
  }
  std::vector<std::uint32_t> raw(n);
  for (std::size_t i = 0; i < n; ++i) raw[i] = find(static_cast<std::uint32_t>(i));
  Partition part;
  part.block_of.assign(n, 0);
  std::unordered_map<std::uint32_t, std::uint32_t> renumber;
  for (std::size_t i = 0; i < n; ++i) {
    auto it = renumber.try_emplace(raw[i],
                                   static_cast<std::uint32_t>(renumber.size()));
    part.block_of[i] = it.first->second;
  }
  part.block_count = static_cast<std::uint32_t>(renumber.size());
  return part;
}

SystemVerdicts spectroscope_system(const Lts& lts,
                                   const SpectroOptions& options,
                                   unsigned jobs) {
  SystemVerdicts verdicts;
  verdicts.enabledness = enabledness_partition(lts);
  std::size_t n = lts.process_count();

  std::vector<std::pair<ProcessId, ProcessId>> pairs;
  for (ProcessId p = 0; p < n; ++p) {
    for (ProcessId q = 0; q < n; ++q) {
      if (p != q && verdicts.enabledness.block_of[p] ==
                        verdicts.enabledness.block_of[q]) {
        pairs.emplace_back(p, q);
      }
    }
  }

  SolveOptions solve_options;
  solve_options.cap = options.cap;
  solve_options.limits = options.limits;

  auto start = std::chrono::steady_clock::now();
  if (jobs <= 1 || pairs.size() < 2) {
    SpectroscopyGame game(lts, options.variant);
    std::vector<PositionId> roots;
    roots.reserve(pairs.size());
    for (auto [p, q] : pairs) {
      roots.push_back(
          game.intern(SpectroPosition::attacker(p, ProcessSet::single(q))));
    }
    BudgetTable table =
        solve_winning_budgets(game, roots, solve_options, &verdicts.stats);
    for (std::size_t i = 0; i < pairs.size(); ++i) {
      verdicts.budgets.emplace(pair_key(pairs[i].first, pairs[i].second),
                               table.budgets(roots[i]));
    }
  } else {
    unsigned workers = std::min<unsigned>(jobs, pairs.size());
    std::vector<std::vector<std::pair<std::uint64_t, Antichain>>> results(
        workers);
    std::vector<SolveStats> stats(workers);
    std::vector<std::exception_ptr> errors(workers);
    std::vector<std::thread> threads;
    for (unsigned w = 0; w < workers; ++w) {
      threads.emplace_back([&, w] {
        try {
          SpectroscopyGame game(lts, options.variant);
          std::vector<PositionId> roots;
          std::vector<std::size_t> indices;
          for (std::size_t i = w; i < pairs.size(); i += workers) {
            roots.push_back(game.intern(SpectroPosition::attacker(
                pairs[i].first, ProcessSet::single(pairs[i].second))));
            indices.push_back(i);
          }
          BudgetTable table =
              solve_winning_budgets(game, roots, solve_options, &stats[w]);
          for (std::size_t k = 0; k < roots.size(); ++k) {
            auto [p, q] = pairs[indices[k]];
            results[w].emplace_back(pair_key(p, q),
                                    table.budgets(roots[k]));
          }
        } catch (...) {
          errors[w] = std::current_exception();
        }
      });
    }
    for (auto& t : threads) t.join();
    for (auto& err : errors) {
      if (err) std::rethrow_exception(err);
    }
    for (unsigned w = 0; w < workers; ++w) {
      for (auto& [key, ac] : results[w]) {
        verdicts.budgets.emplace(key, std::move(ac));
      }
      verdicts.stats.positions += stats[w].positions;
      verdicts.stats.moves += stats[w].moves;
      verdicts.stats.table_updates += stats[w].table_updates;
      verdicts.stats.pops += stats[w].pops;
    }
  }
  verdicts.solve_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();
  return verdicts;
}

bool check_bisim_witness(const Lts& lts, const SystemVerdicts& verdicts) {
  std::size_t n = lts.process_count();
  auto related = [&](ProcessId p, ProcessId q) {
    if (p == q) return true;
    if (!verdicts.solved(p, q)) return false;
    return verdicts.budgets_of(p, q).empty();
  };
  for (ProcessId p = 0; p < n; ++p) {
    for (ProcessId q = 0; q < n; ++q) {
      if (!related(p, q)) continue;
      if (!related(q, p)) return false;
      for (ActionId a : lts.enabled(p)) {
        for (ProcessId ps : lts.targets(p, a)) {
          bool matched = false;
          for (ProcessId qs : lts.targets(q, a)) {
            if (related(ps, qs)) {
              matched = true;
              break;
            }
          }
          if (!matched) return false;
        }
      }
    }
  }
  return true;
}

}  // namespace eqspectre
