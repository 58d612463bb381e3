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

#include <doctest.h>

#include <random>
#include <set>

#include "eqspectre/spectroscopy.hpp"
#include "oracles.hpp"

using namespace eqspectre;

namespace {

constexpr EnergyValue kInf = kEnergyInf;

Lts internal_choice_system() {
  return parse_aut_file(std::string(EQSPECTRE_DATA_DIR) +
                        "/internal_choice.aut");
}
constexpr ProcessId kS = 0, kSp = 1, kDiv = 2;

Antichain chain(std::initializer_list<Energy> es) {
  Antichain ac;
  for (const Energy& e : es) ac.insert_minimal(e);
  return ac;
}

struct SolvedPair {
  SpectroscopyGame game;
  BudgetTable table;
  PositionId root;

  SolvedPair(const Lts& lts, ProcessId p, ProcessId q, GameVariant variant,
             std::optional<EnergyValue> cap = std::nullopt)
      : game(lts, variant),
        root(game.intern(
            SpectroPosition::attacker(p, ProcessSet::single(q)))) {
    std::vector<PositionId> roots{root};
    SolveOptions options;
    options.cap = cap;
    table = solve_winning_budgets(game, roots, options);
  }

  const Antichain& at(const SpectroPosition& pos) {
    return table.budgets(game.intern(pos));
  }
};

std::set<std::string> names_of(
    const std::vector<std::pair<UpdateVector, SpectroPosition>>& succs) {
  std::set<std::string> out;
  for (const auto& [u, pos] : succs) out.insert(pos.to_string());
  return out;
}

// verdict bits for every ordered pair under one game configuration
std::vector<std::array<bool, kSpectrumSize>> all_pair_verdicts(
    const Lts& lts, GameVariant variant, std::optional<EnergyValue> cap) {
  SpectroscopyGame game(lts, variant);
  std::vector<PositionId> roots;
  for (ProcessId p = 0; p < lts.process_count(); ++p) {
    for (ProcessId q = 0; q < lts.process_count(); ++q) {
      roots.push_back(
          game.intern(SpectroPosition::attacker(p, ProcessSet::single(q))));
    }
  }
  SolveOptions options;
  options.cap = cap;
  BudgetTable table = solve_winning_budgets(game, roots, options);
  std::vector<std::array<bool, kSpectrumSize>> verdicts;
  for (PositionId root : roots) {
    verdicts.push_back(derive_preorders(table.budgets(root)));
  }
  return verdicts;
}

}  // namespace

TEST_SUITE("spectroscopy") {

TEST_CASE("successor moves at the initial comparison") {
  Lts lts = internal_choice_system();
  auto succs =
      successors_full(SpectroPosition::attacker(kS, ProcessSet::single(kSp)),
                      lts);
  auto labels = names_of(succs);
  // two internal observations, one visible observation, two challenges
  CHECK(labels.count("<0,{1}>"));      // tau loop back to the root
  CHECK(labels.count("<2,{1}>"));      // tau into the diverging process
  CHECK(labels.count("<2,{2}>"));      // visible action on both sides
  CHECK(labels.count("d(0,{1},{})"));  // challenge with empty revival
  CHECK(labels.count("d(0,{},{1})"));  // challenge reviving everything
  CHECK(labels.size() == 5);
}

TEST_CASE("clause and conjunction endgames") {
  Lts lts = internal_choice_system();
  auto self = successors_full(SpectroPosition::clause(kS, kS), lts);
  REQUIRE(self.size() == 1);  // no negative decision on the diagonal
  CHECK(self[0].second == SpectroPosition::attacker(kS, ProcessSet::single(kS)));
  CHECK(self[0].first == positive_update());

  auto stuck = successors_full(
      SpectroPosition::defender(kDiv, ProcessSet{}, ProcessSet{}), lts);
  CHECK(stuck.empty());
}

TEST_CASE("restricted challenges keep only enabledness-guided revivals") {
  Lts lts = internal_choice_system();
  auto succs = successors_clever(
      SpectroPosition::attacker(kSp, ProcessSet({kS, kDiv})), lts);
  std::set<std::string> challenge_labels;
  for (const auto& [u, pos] : succs) {
    if (pos.kind == SpectroPosition::Kind::kDefenderConj) {
      challenge_labels.insert(pos.to_string());
    }
  }
  // the sets {} (nothing revived), {s, div} (everything enabled at most as
  // much), and {s} (enabled at least / exactly as much, deduplicated)
  CHECK(challenge_labels ==
        std::set<std::string>{"d(1,{0,2},{})", "d(1,{},{0,2})",
                              "d(1,{2},{0})"});

  auto empty_q =
      successors_clever(SpectroPosition::attacker(kS, ProcessSet{}), lts);
  int challenges = 0;
  for (const auto& [u, pos] : empty_q) {
    if (pos.kind == SpectroPosition::Kind::kDefenderConj) ++challenges;
  }
  CHECK(challenges == 1);  // only the empty revival set remains
}

TEST_CASE("restricted moves are a subset of the unrestricted moves") {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    Lts lts = oracles::random_lts(600 + seed);
    std::mt19937_64 rng(seed);
    std::vector<ProcessId> members;
    for (ProcessId p = 0; p < lts.process_count(); ++p) {
      if (rng() % 2) members.push_back(p);
    }
    SpectroPosition pos = SpectroPosition::attacker(
        static_cast<ProcessId>(rng() % lts.process_count()),
        ProcessSet(members));
    auto full = successors_full(pos, lts);
    auto clever = successors_clever(pos, lts);
    for (const auto& move : clever) {
      CHECK(std::find(full.begin(), full.end(), move) != full.end());
    }
  }
}

TEST_CASE("minimal budgets across the whole reference game") {
  Lts lts = internal_choice_system();
  SolvedPair solved(lts, kS, kSp, GameVariant::kFull);
  // make both comparison directions reachable in one table
  SolvedPair reverse(lts, kSp, kS, GameVariant::kFull);

  auto att = [](ProcessId p, std::initializer_list<ProcessId> q) {
    return SpectroPosition::attacker(p, ProcessSet(std::vector<ProcessId>(q)));
  };
  auto def = [](ProcessId p, std::initializer_list<ProcessId> q,
                std::initializer_list<ProcessId> qs) {
    return SpectroPosition::defender(p, ProcessSet(std::vector<ProcessId>(q)),
                                     ProcessSet(std::vector<ProcessId>(qs)));
  };

  CHECK(solved.at(att(kS, {kSp})) == chain({Energy{2, 2, 0, 0, 1, 1}}));
  CHECK(solved.at(SpectroPosition::clause(kS, kSp)) ==
        chain({Energy{2, 2, 0, 2, 1, 1}, Energy{2, 3, 0, 0, 2, 3}}));
  CHECK(solved.at(def(kS, {kSp}, {})) ==
        chain({Energy{2, 2, 2, 2, 1, 1}, Energy{2, 3, 0, 0, 2, 3}}));
  CHECK(solved.at(att(kDiv, {kSp})) == chain({Energy{1, 2, 0, 0, 1, 1}}));
  CHECK(solved.at(def(kDiv, {kSp}, {})) == chain({Energy{1, 1, 0, 0, 1, 1}}));
  CHECK(solved.at(SpectroPosition::clause(kDiv, kSp)) ==
        chain({Energy{1, 1, 0, 0, 1, 1}}));
  CHECK(solved.at(att(kSp, {kDiv})) == chain({Energy{1, 1, 0, 0, 0, 0}}));
  CHECK(solved.at(def(kSp, {kDiv}, {})) ==
        chain({Energy{1, 1, 1, 1, 0, 0}, Energy{1, 2, 0, 0, 1, 2}}));
  CHECK(solved.at(SpectroPosition::clause(kSp, kDiv)) ==
        chain({Energy{1, 1, 0, 1, 0, 0}, Energy{1, 2, 0, 0, 1, 2}}));
  CHECK(solved.at(att(kDiv, {})) == chain({Energy{0, 1, 0, 0, 0, 0}}));
  CHECK(solved.at(def(kDiv, {}, {})) == chain({Energy::zero(6)}));
  CHECK(solved.at(att(kDiv, {kDiv})).empty());

  // winning is membership in the upward closure of the minimal budgets
  CHECK(attacker_wins(solved.table, solved.root,
                      Energy::all_infinite(kSpectroscopyDim)));
  CHECK_FALSE(
      attacker_wins(solved.table, solved.root, Energy{2, 1, 0, 0, 1, 1}));
  CHECK_FALSE(attacker_wins(
      solved.table, solved.game.intern(att(kDiv, {kDiv})),
      Energy::all_infinite(kSpectroscopyDim)));

  CHECK(reverse.at(att(kSp, {kS})) == chain({Energy{2, 3, 0, 0, 2, 2}}));
  CHECK(reverse.at(SpectroPosition::clause(kSp, kS)) ==
        chain({Energy{2, 2, 0, 0, 2, 2}}));
  CHECK(reverse.at(def(kSp, {kS}, {})) == chain({Energy{2, 2, 0, 0, 2, 2}}));
  CHECK(reverse.at(att(kSp, {kS, kDiv})) ==
        chain({Energy{2, 3, 0, 0, 2, 2}}));
  CHECK(reverse.at(def(kSp, {kDiv}, {kS})) ==
        chain({Energy{2, 3, 2, 0, 2, 2}}));
  CHECK(reverse.at(def(kSp, {kS, kDiv}, {})) ==
        chain({Energy{2, 2, 0, 0, 2, 2}}));
}

TEST_CASE("pair verdicts on the reference system") {
  Lts lts = internal_choice_system();
  SpectroOptions options;
  options.cap.reset();
  options.variant = GameVariant::kFull;
  SpectroVerdict verdict = spectroscope(lts, kS, kSp, options);

  auto holds = [](const DirectionResult& d, const char* name) {
    return d.preorder[notion_index(name)];
  };
  // equated exactly by enabledness, traces, and similarity
  for (const char* name : {"E", "T", "1S"}) {
    CHECK(holds(verdict.forward, name));
    CHECK(holds(verdict.backward, name));
    CHECK(verdict.equivalence(notion_index(name)));
  }
  CHECK_FALSE(holds(verdict.forward, "F"));
  CHECK(holds(verdict.backward, "RS"));
  CHECK_FALSE(verdict.equivalence(notion_index("F")));
  CHECK_FALSE(verdict.equivalence(notion_index("B")));
  std::size_t equated = 0;
  for (std::size_t i = 0; i < kSpectrumSize; ++i) {
    if (verdict.equivalence(i)) ++equated;
  }
  CHECK(equated == 3);

  // diagonal comparison: everything holds, budgets empty
  SpectroVerdict diag = spectroscope(lts, kS, kS, options);
  CHECK(diag.forward.budgets.empty());
  for (std::size_t i = 0; i < kSpectrumSize; ++i) CHECK(diag.equivalence(i));
}

TEST_CASE("preorders from budget antichains") {
  auto as_set = [](const std::array<bool, kSpectrumSize>& holds) {
    std::set<std::string> out;
    for (std::size_t i = 0; i < kSpectrumSize; ++i) {
      if (holds[i]) out.insert(spectrum_coords()[i].name);
    }
    return out;
  };
  CHECK(as_set(derive_preorders(chain({Energy{2, 2, 0, 0, 1, 1}}))) ==
        std::set<std::string>{"E", "T", "1S"});
  CHECK(as_set(derive_preorders(Antichain{})).size() == kSpectrumSize);
  CHECK(as_set(derive_preorders(chain({Energy{0, 1, 0, 0, 0, 0}}))).empty());
}

TEST_CASE("finest equated coordinates") {
  Antichain both_empty = finest_distinctions(Antichain{}, Antichain{});
  REQUIRE(both_empty.size() == 1);
  CHECK(both_empty.elements()[0] == Energy::all_infinite(6));

  Antichain finest = finest_distinctions(chain({Energy{2, 2, 0, 0, 1, 1}}),
                                         chain({Energy{2, 3, 0, 0, 2, 2}}));
  Antichain expected;
  expected.insert_maximal(Energy{1, kInf, kInf, kInf, kInf, kInf});
  expected.insert_maximal(Energy{kInf, 1, kInf, kInf, kInf, kInf});
  expected.insert_maximal(Energy{kInf, kInf, kInf, kInf, 0, kInf});
  expected.insert_maximal(Energy{kInf, kInf, kInf, kInf, kInf, 0});
  CHECK(finest == expected);
  // similarity lies below the finest equated coordinates
  CHECK(covered_by(finest, find_notion("1S")->coordinate));
  CHECK_FALSE(covered_by(finest, find_notion("F")->coordinate));
}

TEST_CASE("strategy formulas of the reference game") {
  Lts lts = internal_choice_system();
  ActionId tau = *lts.internal_action();
  ActionId ec_a = *lts.action_id("ec_A");
  HmlFormula no_ec = HmlFormula::conj(
      {HmlFormula::neg(HmlFormula::observe(ec_a, HmlFormula::truth()))});

  SolvedPair solved(lts, kS, kSp, GameVariant::kFull);
  PositionId div_vs_sp = solved.game.intern(
      SpectroPosition::attacker(kDiv, ProcessSet::single(kSp)));
  CHECK(strategy_formula(solved.game, solved.table, div_vs_sp,
                         Energy{1, 2, 0, 0, 1, 1}) == no_ec);
  CHECK(strategy_formula(solved.game, solved.table, solved.root,
                         Energy{2, 2, 0, 0, 1, 1}) ==
        HmlFormula::observe(tau, no_ec));
  PositionId div_empty =
      solved.game.intern(SpectroPosition::attacker(kDiv, ProcessSet{}));
  CHECK(strategy_formula(solved.game, solved.table, div_empty,
                         Energy{0, 1, 0, 0, 0, 0}) == HmlFormula::truth());

  // losing budgets are rejected
  CHECK_THROWS_AS(strategy_formula(solved.game, solved.table, solved.root,
                                   Energy{1, 1, 0, 0, 0, 0}),
                  std::invalid_argument);

  SolvedPair reverse(lts, kSp, kS, GameVariant::kFull);
  HmlFormula backward = strategy_formula(reverse.game, reverse.table,
                                         reverse.root,
                                         Energy{2, 3, 0, 0, 2, 2});
  CHECK(backward ==
        HmlFormula::conj({HmlFormula::neg(HmlFormula::observe(tau, no_ec))}));
}

TEST_CASE("extracted formulas distinguish and stay within budget") {
  for (std::uint64_t seed = 1; seed <= 12; ++seed) {
    oracles::RandomLtsConfig cfg;
    cfg.max_states = 5;
    Lts lts = oracles::random_lts(7100 + seed, cfg);
    SpectroscopyGame game(lts, GameVariant::kFull);
    std::vector<PositionId> roots;
    for (ProcessId p = 0; p < lts.process_count(); ++p) {
      for (ProcessId q = 0; q < lts.process_count(); ++q) {
        if (p != q) {
          roots.push_back(game.intern(
              SpectroPosition::attacker(p, ProcessSet::single(q))));
        }
      }
    }
    BudgetTable table = solve_winning_budgets(game, roots);
    for (PositionId id = 0; id < game.position_count(); ++id) {
      if (!table.known(id)) continue;
      const SpectroPosition& pos = game.position(id);
      if (pos.kind != SpectroPosition::Kind::kAttacker) continue;
      Antichain budgets = table.budgets(id);
      for (const Energy& budget : budgets.elements()) {
        HmlFormula formula = strategy_formula(game, table, id, budget);
        CHECK(distinguishes(lts, formula, pos.p, pos.set_q));
        Energy price = expr_price(formula);
        CHECK(order_leq(price, budget));
        CHECK(dominated_by(table.budgets(id), price));
      }
    }
  }
}

TEST_CASE("prices of distinguishing formulas are winning budgets") {
  std::mt19937_64 rng(5150);
  for (std::uint64_t seed = 1; seed <= 15; ++seed) {
    oracles::RandomLtsConfig cfg;
    cfg.max_states = 5;
    Lts lts = oracles::random_lts(7300 + seed, cfg);
    for (int round = 0; round < 12; ++round) {
      HmlFormula formula = oracles::random_formula(rng, lts, 3);
      ProcessId p = static_cast<ProcessId>(rng() % lts.process_count());
      std::vector<ProcessId> members;
      for (ProcessId q = 0; q < lts.process_count(); ++q) {
        if (q != p && rng() % 2) members.push_back(q);
      }
      ProcessSet qs(members);
      if (!distinguishes(lts, formula, p, qs)) continue;
      SpectroscopyGame game(lts, GameVariant::kFull);
      PositionId root = game.intern(SpectroPosition::attacker(p, qs));
      std::vector<PositionId> roots{root};
      BudgetTable table = solve_winning_budgets(game, roots);
      CHECK(attacker_wins(table, root, expr_price(formula)));
    }
  }
}

TEST_CASE("restricted and unrestricted games decide the same notions") {
  for (std::uint64_t seed = 1; seed <= 40; ++seed) {
    Lts lts = oracles::random_lts(8000 + seed);
    auto full = all_pair_verdicts(lts, GameVariant::kFull, std::nullopt);
    auto clever = all_pair_verdicts(lts, GameVariant::kClever, std::nullopt);
    CHECK(full == clever);
  }
}

TEST_CASE("capped solving decides the same notions") {
  for (std::uint64_t seed = 1; seed <= 40; ++seed) {
    Lts lts = oracles::random_lts(8500 + seed);
    auto exact = all_pair_verdicts(lts, GameVariant::kClever, std::nullopt);
    auto capped = all_pair_verdicts(lts, GameVariant::kClever, 3);
    CHECK(exact == capped);
  }
}

TEST_CASE("variants and modes agree on saturated systems") {
  // saturation piles up nondeterminism, which is where the restricted
  // challenges have to work hardest
  for (std::uint64_t seed = 1; seed <= 15; ++seed) {
    oracles::RandomLtsConfig cfg;
    cfg.max_states = 5;
    cfg.with_internal = true;
    Lts lts = saturate_weak(oracles::random_lts(8600 + seed, cfg));
    auto reference = all_pair_verdicts(lts, GameVariant::kFull, std::nullopt);
    CHECK(all_pair_verdicts(lts, GameVariant::kClever, std::nullopt) ==
          reference);
    CHECK(all_pair_verdicts(lts, GameVariant::kClever, 3) == reference);
    CHECK(all_pair_verdicts(lts, GameVariant::kFull, 3) == reference);
  }
}

TEST_CASE("bounded formula enumeration agrees with the game") {
  // tiny systems, coordinates capped at two
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    oracles::RandomLtsConfig cfg;
    cfg.max_states = 4;
    cfg.max_actions = 2;
    Lts lts = oracles::random_lts(9000 + seed, cfg);
    SpectroscopyGame game(lts, GameVariant::kFull);
    std::vector<PositionId> roots;
    std::vector<std::pair<ProcessId, ProcessId>> pairs;
    for (ProcessId p = 0; p < lts.process_count(); ++p) {
      for (ProcessId q = 0; q < lts.process_count(); ++q) {
        if (p == q) continue;
        roots.push_back(
            game.intern(SpectroPosition::attacker(p, ProcessSet::single(q))));
        pairs.emplace_back(p, q);
      }
    }
    BudgetTable table = solve_winning_budgets(game, roots);
    for (const char* name : {"E", "T", "F", "1S"}) {
      Energy budget = cap(find_notion(name)->coordinate, 2);
      for (std::size_t i = 0; i < pairs.size(); ++i) {
        bool game_says = attacker_wins(table, roots[i], budget);
        bool enumeration = oracles::some_formula_distinguishes(
            lts, budget, pairs[i].first, pairs[i].second);
        CHECK(game_says == enumeration);
      }
    }
  }
}

TEST_CASE("verdicts are downward closed along the hierarchy") {
  for (std::uint64_t seed = 1; seed <= 30; ++seed) {
    Lts lts = oracles::random_lts(9500 + seed);
    for (const auto& verdict :
         all_pair_verdicts(lts, GameVariant::kClever, 3)) {
      for (auto [finer, coarser] : spectrum_edges()) {
        if (verdict[finer]) CHECK(verdict[coarser]);
      }
    }
  }
}

TEST_CASE("bisimulation witness self-check") {
  Lts lts = internal_choice_system();
  SpectroOptions options;
  SystemVerdicts verdicts = spectroscope_system(lts, options);
  CHECK(check_bisim_witness(lts, verdicts));
  // the witness is exactly the diagonal here
  CHECK(verdicts.solved(kS, kSp));
  CHECK_FALSE(verdicts.budgets_of(kS, kSp).empty());

  LtsBuilder single(1);
  single.intern_action("a");
  Lts one = single.build();
  CHECK(check_bisim_witness(one, spectroscope_system(one, options)));

  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    oracles::RandomLtsConfig cfg;
    cfg.max_states = 6;
    Lts sys = oracles::random_lts(9900 + seed, cfg);
    SystemVerdicts sv = spectroscope_system(sys, options);
    CHECK(check_bisim_witness(sys, sv));
    // defender-unbounded pairs match the relational oracle
    auto bisim = oracles::bisimulation_relation(sys);
    for (ProcessId p = 0; p < sys.process_count(); ++p) {
      for (ProcessId q = 0; q < sys.process_count(); ++q) {
        bool won = p == q ||
                   (sv.solved(p, q) && sv.budgets_of(p, q).empty());
        CHECK(won == bisim[p][q]);
      }
    }
  }
}

TEST_CASE("system spectroscopy is stable across worker counts") {
  Lts lts = parse_aut_file(std::string(EQSPECTRE_DATA_DIR) + "/rand_a.aut");
  SpectroOptions options;
  SystemVerdicts seq = spectroscope_system(lts, options, 1);
  SystemVerdicts par = spectroscope_system(lts, options, 4);
  REQUIRE(seq.budgets.size() == par.budgets.size());
  for (const auto& [key, ac] : seq.budgets) {
    REQUIRE(par.budgets.contains(key));
    CHECK(par.budgets.at(key) == ac);
  }
}

TEST_CASE("batched pair solves are stable across worker counts") {
  Lts lts = parse_aut_file(std::string(EQSPECTRE_DATA_DIR) + "/rand_b.aut");
  std::vector<std::pair<ProcessId, ProcessId>> pairs;
  for (ProcessId p = 0; p < lts.process_count(); ++p) {
    for (ProcessId q = p + 1; q < lts.process_count(); ++q) {
      pairs.emplace_back(p, q);
    }
  }
  SpectroOptions options;
  options.cap.reset();
  options.variant = GameVariant::kFull;
  auto seq = spectroscope_pairs(lts, pairs, options, 1);
  auto par = spectroscope_pairs(lts, pairs, options, 3);
  REQUIRE(seq.size() == par.size());
  for (std::size_t i = 0; i < seq.size(); ++i) {
    CHECK(seq[i].forward.budgets == par[i].forward.budgets);
    CHECK(seq[i].backward.budgets == par[i].backward.budgets);
    CHECK(seq[i].forward.preorder == par[i].forward.preorder);
    CHECK(seq[i].finest == par[i].finest);
  }
}

TEST_CASE("notion partitions from system verdicts") {
  Lts lts = internal_choice_system();
  SystemVerdicts verdicts = spectroscope_system(lts, SpectroOptions{});
  CHECK(verdicts.notion_partition(notion_index("B"), 3).block_count == 3);
  CHECK(verdicts.notion_partition(notion_index("1S"), 3).block_count == 2);
  CHECK(verdicts.notion_partition(notion_index("T"), 3).block_count == 2);
  CHECK(verdicts.notion_partition(notion_index("E"), 3).block_count == 2);
}

TEST_CASE("unsafe custom coordinates force the unrestricted game") {
  Lts lts = internal_choice_system();
  SpectroOptions options;
  options.extra_coords.emplace_back("custom", Energy{kInf, 2, 2, 2, 1, 1});
  SpectroVerdict verdict = spectroscope(lts, kS, kSp, options);
  CHECK(verdict.forced_full);
  REQUIRE(verdict.forward.extra.size() == 1);
  CHECK(verdict.forward.extra[0].first == "custom");

  SpectroOptions safe;
  safe.extra_coords.emplace_back("failures-again",
                                 find_notion("F")->coordinate);
  SpectroVerdict v2 = spectroscope(lts, kS, kSp, safe);
  CHECK_FALSE(v2.forced_full);
  CHECK_FALSE(v2.forward.extra[0].second);
  CHECK(v2.backward.extra[0].second);
}

}  // TEST_SUITE
