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

#include "eqspectre/hml.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace eqspectre {

HmlFormula HmlFormula::observe(ActionId action, HmlFormula child) {
  if (child.is_negation()) {
    throw std::invalid_argument("negation under an observation");
  }
  HmlFormula f;
  f.kind_ = Kind::kObserve;
  f.action_ = action;
  f.children_.push_back(std::move(child));
  return f;
}

HmlFormula HmlFormula::conj(std::vector<HmlFormula> clauses) {
  HmlFormula f;
  f.kind_ = Kind::kConj;
  f.children_ = std::move(clauses);
  std::stable_sort(f.children_.begin(), f.children_.end(),
                   [](const HmlFormula& a, const HmlFormula& b) {
                     if (a.is_negation() != b.is_negation()) {
                       return b.is_negation();
                     }
                     return a.sort_key() < b.sort_key();
                   });
  return f;
}

HmlFormula HmlFormula::neg(HmlFormula child) {
  if (child.is_negation()) {
    throw std::invalid_argument("directly nested negation");
  }
  HmlFormula f;
  f.kind_ = Kind::kNeg;
  f.children_.push_back(std::move(child));
  return f;
}

std::string HmlFormula::sort_key() const {
  std::ostringstream os;
  switch (kind_) {
    case Kind::kObserve:
      os << 'o' << action_ << '.' << children_.front().sort_key();
      break;
    case Kind::kNeg:
      os << 'n' << children_.front().sort_key();
      break;
    case Kind::kConj:
      os << 'c';
      for (const HmlFormula& c : children_) os << '[' << c.sort_key() << ']';
      break;
  }
  return os.str();
}

std::string HmlFormula::to_string(const Lts& lts, bool ascii) const {
  switch (kind_) {
    case Kind::kObserve:
      return "<" + lts.action_name(action_) + ">" +
             children_.front().to_string(lts, ascii);
    case Kind::kNeg:
      return (ascii ? "!" : "¬") +
             children_.front().to_string(lts, ascii);
    case Kind::kConj: {
      if (children_.empty()) return "T";
      std::string s = ascii ? "/\\{" : "⋀{";
      for (std::size_t i = 0; i < children_.size(); ++i) {
        if (i) s += ", ";
        s += children_[i].to_string(lts, ascii);
      }
      return s + "}";
    }
  }
  return {};
}

namespace {

std::vector<bool> evaluate_bits(const Lts& lts, const HmlFormula& f) {
  std::size_t n = lts.process_count();
  switch (f.kind()) {
    case HmlFormula::Kind::kObserve: {
      std::vector<bool> child = evaluate_bits(lts, f.child());
      std::vector<bool> result(n, false);
      for (ProcessId p = 0; p < n; ++p) {
        for (ProcessId t : lts.targets(p, f.action())) {
          if (child[t]) {
            result[p] = true;
            break;
          }
        }
      }
      return result;
    }
    case HmlFormula::Kind::kNeg: {
      std::vector<bool> child = evaluate_bits(lts, f.child());
      child.flip();
      return child;
    }
    case HmlFormula::Kind::kConj: {
      std::vector<bool> result(n, true);
      for (const HmlFormula& clause : f.clauses()) {
        std::vector<bool> c = evaluate_bits(lts, clause);
        for (std::size_t i = 0; i < n; ++i) {
          result[i] = result[i] && c[i];
        }
      }
      return result;
    }
  }
  return std::vector<bool>(n, false);
}

}  // namespace

ProcessSet evaluate(const Lts& lts, const HmlFormula& formula) {
  std::vector<bool> bits = evaluate_bits(lts, formula);
  std::vector<ProcessId> ids;
  for (ProcessId p = 0; p < bits.size(); ++p) {
    if (bits[p]) ids.push_back(p);
  }
  return ProcessSet(std::move(ids));
}

bool distinguishes(const Lts& lts, const HmlFormula& formula, ProcessId p,
                   const ProcessSet& qs) {
  std::vector<bool> bits = evaluate_bits(lts, formula);
  if (!bits[p]) return false;
  for (ProcessId q : qs) {
    if (bits[q]) return false;
  }
  return true;
}

Energy expr_price(const HmlFormula& formula) {
  switch (formula.kind()) {
    case HmlFormula::Kind::kObserve: {
      Energy e = expr_price(formula.child());
      if (e[0] != kEnergyInf) ++e[0];
      return e;
    }
    case HmlFormula::Kind::kNeg: {
      Energy e = expr_price(formula.child());
      if (e[5] != kEnergyInf) ++e[5];
      return e;
    }
    case HmlFormula::Kind::kConj: {
      auto clauses = formula.clauses();
      std::vector<Energy> prices;
      prices.reserve(clauses.size());
      for (const HmlFormula& c : clauses) prices.push_back(expr_price(c));

      Energy summary = Energy::zero(kSpectroscopyDim);
      EnergyValue max_nesting = 0;
      for (const Energy& p : prices) max_nesting = std::max(max_nesting, p[1]);
      summary[1] =
          max_nesting == kEnergyInf ? kEnergyInf
                                    : static_cast<EnergyValue>(max_nesting + 1);

      // Deepest positive clause: first clause attaining the maximal modal
      // depth among the positives. It is exempt from the fourth dimension.
      std::size_t deepest = clauses.size();
      for (std::size_t i = 0; i < clauses.size(); ++i) {
        if (clauses[i].is_negation()) continue;
        if (deepest == clauses.size() || prices[i][0] > prices[deepest][0]) {
          deepest = i;
        }
      }
      for (std::size_t i = 0; i < clauses.size(); ++i) {
        if (clauses[i].is_negation()) {
          summary[4] = std::max(summary[4], prices[i][0]);
        } else {
          summary[2] = std::max(summary[2], prices[i][0]);
          if (i != deepest) summary[3] = std::max(summary[3], prices[i][0]);
        }
      }

      Energy result = summary;
      for (const Energy& p : prices) result = least_upper_bound(result, p);
      return result;
    }
  }
  return Energy::zero(kSpectroscopyDim);
}

namespace {

constexpr EnergyValue kInf = kEnergyInf;

const std::vector<SpectrumNotion>& spectrum_table() {
  static const std::vector<SpectrumNotion> table = {
      {"E", "enabledness", Energy{1, 1, 0, 0, 0, 0}},
      {"T", "traces", Energy{kInf, 1, 0, 0, 0, 0}},
      {"F", "failures", Energy{kInf, 2, 0, 0, 1, 1}},
      {"RV", "revivals", Energy{kInf, 2, 1, 0, 1, 1}},
      {"IF", "impossible-futures", Energy{kInf, 2, 0, 0, kInf, 1}},
      {"PF", "possible-futures", Energy{kInf, 2, kInf, kInf, kInf, 1}},
      {"R", "readiness", Energy{kInf, 2, 1, 1, 1, 1}},
      {"FT", "failure-traces", Energy{kInf, kInf, kInf, 0, 1, 1}},
      {"RT", "readiness-traces", Energy{kInf, kInf, kInf, 1, 1, 1}},
      {"1S", "simulation", Energy{kInf, kInf, kInf, kInf, 0, 0}},
      {"RS", "ready-simulation", Energy{kInf, kInf, kInf, kInf, 1, 1}},
      {"2S", "2-nested-simulation", Energy{kInf, kInf, kInf, kInf, kInf, 1}},
      {"B", "bisimulation",
       Energy{kInf, kInf, kInf, kInf, kInf, kInf}},
  };
  return table;
}

int index_of(std::string_view name) {
  const auto& table = spectrum_table();
  for (std::size_t i = 0; i < table.size(); ++i) {
    if (table[i].name == name || table[i].long_name == name) {
      return static_cast<int>(i);
    }
  }
  return -1;
}

}  // namespace

std::span<const SpectrumNotion> spectrum_coords() { return spectrum_table(); }

const SpectrumNotion* find_notion(std::string_view name) {
  int i = index_of(name);
  return i < 0 ? nullptr : &spectrum_table()[static_cast<std::size_t>(i)];
}

int notion_index(std::string_view name) { return index_of(name); }

std::span<const std::pair<int, int>> spectrum_edges() {
  // (finer, coarser) covering pairs of the hierarchy.
  static const std::vector<std::pair<int, int>> edges = [] {
    auto idx = [](std::string_view n) { return index_of(n); };
    std::vector<std::pair<int, int>> e = {
        {idx("B"), idx("2S")},  {idx("2S"), idx("RS")},
        {idx("2S"), idx("PF")}, {idx("RS"), idx("1S")},
        {idx("RS"), idx("RT")}, {idx("RT"), idx("R")},
        {idx("RT"), idx("FT")}, {idx("PF"), idx("R")},
        {idx("PF"), idx("IF")}, {idx("1S"), idx("T")},
        {idx("FT"), idx("RV")}, {idx("R"), idx("RV")},
        {idx("IF"), idx("F")},  {idx("RV"), idx("F")},
        {idx("F"), idx("T")},   {idx("T"), idx("E")},
    };
    return e;
  }();
  return edges;
}

bool clever_applicable(const Energy& coordinate) {
  if (coordinate.dim() != kSpectroscopyDim) return false;
  EnergyValue e3 = coordinate[2], e4 = coordinate[3], e5 = coordinate[4];
  if (!(e4 == 0 || e4 == 1 || e4 == kEnergyInf)) return false;
  if (e4 > e3) return false;
  if (e5 > 1 && e3 != e4) return false;
  return true;
}

}  // namespace eqspectre
