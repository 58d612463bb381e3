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

#ifndef EQSPECTRE_HML_HPP
#define EQSPECTRE_HML_HPP

#include <span>
#include <string>
#include <vector>

#include "eqspectre/energy.hpp"
#include "eqspectre/lts.hpp"

namespace eqspectre {

// Immutable observation / conjunction / negation tree. Negations appear only
// as direct clauses of a conjunction; the empty conjunction is T. Conjunction
// clauses are kept in canonical order (negations last), so structural
// equality is multiset equality of clauses.
class HmlFormula {
 public:
  enum class Kind : std::uint8_t { kObserve, kConj, kNeg };

  HmlFormula() : kind_(Kind::kConj) {}  // T

  static HmlFormula truth() { return HmlFormula(); }
  static HmlFormula observe(ActionId action, HmlFormula child);
  static HmlFormula conj(std::vector<HmlFormula> clauses);
  static HmlFormula neg(HmlFormula child);

  Kind kind() const { return kind_; }
  bool is_observation() const { return kind_ == Kind::kObserve; }
  bool is_negation() const { return kind_ == Kind::kNeg; }
  bool is_truth() const {
    return kind_ == Kind::kConj && children_.empty();
  }

  ActionId action() const { return action_; }
  const HmlFormula& child() const { return children_.front(); }
  std::span<const HmlFormula> clauses() const { return children_; }

  bool operator==(const HmlFormula&) const = default;

  std::string to_string(const Lts& lts, bool ascii = false) const;

 private:
  // Structural key independent of any transition system, used to order
  // conjunction clauses canonically.
  std::string sort_key() const;

  Kind kind_;
  ActionId action_ = 0;
  std::vector<HmlFormula> children_;
};

// Set of processes satisfying the formula. Observations of actions without
// transitions simply evaluate to the empty set.
ProcessSet evaluate(const Lts& lts, const HmlFormula& formula);

// True iff p satisfies the formula and no q in qs does.
bool distinguishes(const Lts& lts, const HmlFormula& formula, ProcessId p,
                   const ProcessSet& qs);

// Six-dimensional expressiveness price: modal depth, conjunction nesting,
// deepest positive clause depth, other positive clause depth, negative
// clause depth, negation nesting. Ties for the deepest positive clause are
// broken towards the first clause, which cannot change the result.
Energy expr_price(const HmlFormula& formula);

struct SpectrumNotion {
  std::string name;       // short: E, T, F, ...
  std::string long_name;  // enabledness, traces, failures, ...
  Energy coordinate;
};

inline constexpr std::size_t kSpectrumSize = 13;

// The fixed coordinate table of the strong spectrum, from enabledness up to
// bisimulation.
std::span<const SpectrumNotion> spectrum_coords();
const SpectrumNotion* find_notion(std::string_view name);
int notion_index(std::string_view name);  // -1 when unknown

// Covering edges of the spectrum hierarchy as (finer, coarser) index pairs;
// whenever a finer notion holds, the coarser one must hold too.
std::span<const std::pair<int, int>> spectrum_edges();

// Coordinates usable with the reduced-branching game: the fourth component
// is 0, 1 or infinite, stays below the third, and a negative-clause depth
// above 1 forces the third and fourth to agree.
bool clever_applicable(const Energy& coordinate);

}  // namespace eqspectre

#endif  // EQSPECTRE_HML_HPP
