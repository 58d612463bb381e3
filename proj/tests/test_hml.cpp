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

#include "eqspectre/hml.hpp"
#include "oracles.hpp"

using namespace eqspectre;

namespace {

constexpr EnergyValue kInf = kEnergyInf;

Lts internal_choice_system() {
  return parse_aut_file(std::string(EQSPECTRE_DATA_DIR) +
                        "/internal_choice.aut");
}
constexpr ProcessId kS = 0, kSp = 1, kDiv = 2;

// <tau> /\ { !<ec_A> T }
HmlFormula after_tau_no_ec(const Lts& lts) {
  ActionId tau = *lts.internal_action();
  ActionId ec_a = *lts.action_id("ec_A");
  return HmlFormula::observe(
      tau, HmlFormula::conj({HmlFormula::neg(
               HmlFormula::observe(ec_a, HmlFormula::truth()))}));
}

// collect all subformulas, including the root
void collect(const HmlFormula& f, std::vector<HmlFormula>& out) {
  out.push_back(f);
  switch (f.kind()) {
    case HmlFormula::Kind::kObserve:
    case HmlFormula::Kind::kNeg:
      collect(f.child(), out);
      break;
    case HmlFormula::Kind::kConj:
      for (const HmlFormula& c : f.clauses()) collect(c, out);
      break;
  }
}

}  // namespace

TEST_SUITE("hml") {

TEST_CASE("semantics on the internal-choice system") {
  Lts lts = internal_choice_system();
  HmlFormula refusal = after_tau_no_ec(lts);
  ProcessSet sem = evaluate(lts, refusal);
  CHECK(sem.contains(kS));
  CHECK_FALSE(sem.contains(kSp));
  // the diverging process only reaches itself internally, so it satisfies
  // the refusal as well
  CHECK(sem == ProcessSet({kS, kDiv}));

  CHECK(evaluate(lts, HmlFormula::truth()) == ProcessSet({kS, kSp, kDiv}));

  Lts dead = [] {
    LtsBuilder b(2);
    b.add_transition(0, "a", 1);
    return b.build();
  }();
  HmlFormula obs = HmlFormula::observe(*dead.action_id("a"),
                                       HmlFormula::truth());
  CHECK_FALSE(evaluate(dead, obs).contains(1));
}

TEST_CASE("distinguishing pairs") {
  Lts lts = internal_choice_system();
  HmlFormula refusal = after_tau_no_ec(lts);
  CHECK(distinguishes(lts, refusal, kS, ProcessSet::single(kSp)));
  CHECK_FALSE(distinguishes(lts, HmlFormula::truth(), kS,
                            ProcessSet::single(kSp)));
  // empty right-hand side: only membership of p matters
  CHECK(distinguishes(lts, refusal, kS, ProcessSet{}));
  CHECK_FALSE(distinguishes(lts, refusal, kSp, ProcessSet{}));
}

TEST_CASE("expressiveness prices of the reference formulas") {
  LtsBuilder b(1);
  ActionId tau = b.designate_internal("tau");
  ActionId ec_a = b.intern_action("ec_A");
  ActionId lc_a = b.intern_action("lc_A");
  ActionId ec_b = b.intern_action("ec_B");
  (void)b.build();

  // <tau> /\ { <ec_A><lc_A>T, <tau>T, !<ec_B>T }
  HmlFormula ready_trace = HmlFormula::observe(
      tau,
      HmlFormula::conj(
          {HmlFormula::observe(ec_a,
                               HmlFormula::observe(lc_a, HmlFormula::truth())),
           HmlFormula::observe(tau, HmlFormula::truth()),
           HmlFormula::neg(
               HmlFormula::observe(ec_b, HmlFormula::truth()))}));
  CHECK(expr_price(ready_trace) == Energy{3, 2, 2, 1, 1, 1});

  HmlFormula refusal = HmlFormula::observe(
      tau, HmlFormula::conj({HmlFormula::neg(
               HmlFormula::observe(ec_a, HmlFormula::truth()))}));
  CHECK(expr_price(refusal) == Energy{2, 2, 0, 0, 1, 1});

  HmlFormula negated = HmlFormula::conj({HmlFormula::neg(refusal)});
  CHECK(expr_price(negated) == Energy{2, 3, 0, 0, 2, 2});

  CHECK(expr_price(HmlFormula::truth()) == Energy{0, 1, 0, 0, 0, 0});
}

TEST_CASE("prices are monotone along subformulas") {
  LtsBuilder b(1);
  b.intern_action("a");
  b.intern_action("b");
  Lts alphabet = b.build();
  std::mt19937_64 rng(815);
  for (int round = 0; round < 300; ++round) {
    HmlFormula f = oracles::random_formula(rng, alphabet, 4);
    Energy root = expr_price(f);
    std::vector<HmlFormula> subs;
    collect(f, subs);
    for (const HmlFormula& sub : subs) {
      CHECK(order_leq(expr_price(sub), root));
    }
  }
}

TEST_CASE("deepest-clause tie break does not change prices") {
  LtsBuilder b(1);
  ActionId a = b.intern_action("a");
  ActionId c = b.intern_action("b");
  (void)b.build();
  // two positive clauses of equal maximal depth, in both orders
  HmlFormula deep1 = HmlFormula::observe(a, HmlFormula::truth());
  HmlFormula deep2 = HmlFormula::observe(c, HmlFormula::truth());
  HmlFormula one = HmlFormula::conj({deep1, deep2});
  HmlFormula two = HmlFormula::conj({deep2, deep1});
  CHECK(expr_price(one) == expr_price(two));
  CHECK(expr_price(one) == Energy{1, 2, 1, 1, 0, 0});
  CHECK(one == two);  // clause lists are multisets
}

TEST_CASE("spectrum coordinate table") {
  auto coords = spectrum_coords();
  REQUIRE(coords.size() == kSpectrumSize);
  CHECK(find_notion("F")->coordinate == Energy{kInf, 2, 0, 0, 1, 1});
  CHECK(find_notion("B")->coordinate ==
        Energy{kInf, kInf, kInf, kInf, kInf, kInf});
  CHECK(find_notion("E")->coordinate == Energy{1, 1, 0, 0, 0, 0});
  CHECK(find_notion("T")->coordinate == Energy{kInf, 1, 0, 0, 0, 0});
  CHECK(find_notion("enabledness") == find_notion("E"));
  CHECK(find_notion("nope") == nullptr);
  CHECK(coords.front().name == "E");
  CHECK(coords.back().name == "B");
}

TEST_CASE("hierarchy edges respect the coordinate order") {
  auto coords = spectrum_coords();
  for (auto [finer, coarser] : spectrum_edges()) {
    REQUIRE(finer >= 0);
    REQUIRE(coarser >= 0);
    CHECK(order_leq(coords[coarser].coordinate, coords[finer].coordinate));
  }
}

TEST_CASE("reduced-branching precondition") {
  for (const SpectrumNotion& n : spectrum_coords()) {
    CHECK(clever_applicable(n.coordinate));
  }
  CHECK_FALSE(clever_applicable(Energy{kInf, 2, 2, 2, 1, 1}));  // e4 = 2
  CHECK_FALSE(clever_applicable(Energy{kInf, 2, 0, 1, 1, 1}));  // e4 > e3
  CHECK_FALSE(clever_applicable(Energy{kInf, 2, 1, 0, 2, 1}));  // e5 > 1
}

TEST_CASE("canonical rendering") {
  Lts lts = internal_choice_system();
  HmlFormula refusal = after_tau_no_ec(lts);
  CHECK(refusal.to_string(lts) == "<tau>⋀{¬<ec_A>T}");
  CHECK(refusal.to_string(lts, true) == "<tau>/\\{!<ec_A>T}");
  CHECK(HmlFormula::truth().to_string(lts) == "T");

  // negations print last regardless of construction order
  ActionId tau = *lts.internal_action();
  HmlFormula mixed = HmlFormula::conj(
      {HmlFormula::neg(HmlFormula::observe(tau, HmlFormula::truth())),
       HmlFormula::observe(tau, HmlFormula::truth())});
  CHECK(mixed.to_string(lts, true) == "/\\{<tau>T, !<tau>T}");
}

TEST_CASE("distinct distinguishers in both directions need inequivalence") {
  std::mt19937_64 rng(99);
  for (int round = 0; round < 60; ++round) {
    oracles::RandomLtsConfig cfg;
    cfg.max_states = 6;
    Lts lts = oracles::random_lts(7000 + round, cfg);
    auto bisim = oracles::bisimulation_relation(lts);
    for (int tries = 0; tries < 10; ++tries) {
      HmlFormula f = oracles::random_formula(rng, lts, 3);
      HmlFormula g = oracles::random_formula(rng, lts, 3);
      for (ProcessId p = 0; p < lts.process_count(); ++p) {
        for (ProcessId q = 0; q < lts.process_count(); ++q) {
          if (distinguishes(lts, f, p, ProcessSet::single(q)) &&
              distinguishes(lts, g, q, ProcessSet::single(p))) {
            CHECK_FALSE(bisim[p][q]);
          }
        }
      }
    }
  }
}

}  // TEST_SUITE
