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

#ifndef EQSPECTRE_ENERGY_HPP
#define EQSPECTRE_ENERGY_HPP

#include <array>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

namespace eqspectre {

// Component type of an energy vector. The maximum value is reserved as the
// infinity sentinel; it is absorbing for sup and the top of the order.
using EnergyValue = std::uint16_t;
inline constexpr EnergyValue kEnergyInf =
    std::numeric_limits<EnergyValue>::max();

inline constexpr std::size_t kMaxEnergyDim = 8;
inline constexpr std::size_t kSpectroscopyDim = 6;

// N-dimensional vector over the naturals extended with infinity, compared
// componentwise. Unused trailing slots stay zero so equality and hashing can
// look at the whole array.
class Energy {
 public:
  Energy() = default;
  explicit Energy(std::size_t dim, EnergyValue fill = 0);
  Energy(std::initializer_list<EnergyValue> comps);

  static Energy zero(std::size_t dim) { return Energy(dim); }
  static Energy all_infinite(std::size_t dim) {
    return Energy(dim, kEnergyInf);
  }

  std::size_t dim() const { return dim_; }
  EnergyValue operator[](std::size_t i) const { return comps_[i]; }
  EnergyValue& operator[](std::size_t i) { return comps_[i]; }

  bool finite() const;

  bool operator==(const Energy&) const = default;

  // Total order used only for canonical storage; the semantic order is the
  // componentwise partial order `order_leq`.
  static bool lex_less(const Energy& a, const Energy& b);

  std::size_t hash() const;
  std::string to_string() const;

 private:
  std::uint8_t dim_ = 0;
  std::array<EnergyValue, kMaxEnergyDim> comps_{};
};

using ExtendedEnergy = Energy;

bool order_leq(const Energy& e, const Energy& f);

Energy least_upper_bound(const Energy& e, const Energy& f);
Energy greatest_lower_bound(const Energy& e, const Energy& f);
// Empty input yields the zero vector (resp. the all-infinite vector).
Energy least_upper_bound(std::span<const Energy> es, std::size_t dim);
Energy greatest_lower_bound(std::span<const Energy> es, std::size_t dim);

// Componentwise min with K; K stands in for every value above it, including
// infinity.
Energy cap(const Energy& e, EnergyValue k);

// Per-component update label on game moves: keep, decrement, or replace by
// the minimum over a dimension subset D (which must contain the component's
// own index).
class UpdateVector {
 public:
  UpdateVector() = default;
  explicit UpdateVector(std::size_t dim);

  std::size_t dim() const { return dim_; }

  void set_decrement(std::size_t k);
  void set_min_of(std::size_t k, std::initializer_list<std::size_t> dims);
  void set_min_of(std::size_t k, std::uint32_t mask);

  bool is_zero(std::size_t k) const { return ops_[k] == kZero; }
  bool is_decrement(std::size_t k) const { return ops_[k] == kDecrement; }
  bool is_min(std::size_t k) const { return (ops_[k] & kMinBit) != 0; }
  std::uint32_t min_mask(std::size_t k) const {
    return ops_[k] & ~std::uint16_t{kMinBit};
  }

  bool operator==(const UpdateVector&) const = default;

  std::string to_string() const;
  nlohmann::json to_json() const;

 private:
  static constexpr std::uint16_t kZero = 0;
  static constexpr std::uint16_t kDecrement = 1;
  static constexpr std::uint16_t kMinBit = 0x8000;

  std::uint8_t dim_ = 0;
  std::array<std::uint16_t, kMaxEnergyDim> ops_{};
};

// Forward application of an update. Any decrement on a zero component makes
// the result illegal, reported as nullopt rather than an error.
std::optional<Energy> apply_update(const Energy& e, const UpdateVector& u);

// Least energy whose update dominates e', i.e. inf { e | e' <= upd(e, u) }.
Energy invert_update(const Energy& after, const UpdateVector& u);

// Canonical set of pairwise-incomparable energies, kept in lexicographic
// order. Whether it denotes an upward or a downward closed set is decided by
// the insert discipline at the use site.
class Antichain {
 public:
  Antichain() = default;

  std::span<const Energy> elements() const { return elems_; }
  bool empty() const { return elems_.empty(); }
  std::size_t size() const { return elems_.size(); }
  void clear() { elems_.clear(); }

  // Keeps <=-minimal elements; returns false if e was dominated.
  bool insert_minimal(const Energy& e);
  // Keeps <=-maximal elements; returns false if e was covered.
  bool insert_maximal(const Energy& e);

  bool operator==(const Antichain&) const = default;

  std::string to_string() const;

 private:
  std::vector<Energy> elems_;
};

Antichain normalize_min(std::span<const Energy> es);
Antichain normalize_max(std::span<const Energy> es);

// Membership of e in the upward closure of ac: some member is <= e.
bool dominated_by(const Antichain& ac, const Energy& e);
// Membership of e in the downward closure of ac: some member is >= e.
bool covered_by(const Antichain& ac, const Energy& e);

// Maximal elements of the complement of mn's upward closure, so that an
// extended energy lies below the result exactly when it is not dominated by
// mn. mn must be an antichain of finite energies.
Antichain complement_antichain(const Antichain& mn, std::size_t dim);

nlohmann::json to_json(const Energy& e);
nlohmann::json to_json(const Antichain& ac);

struct EnergyHash {
  std::size_t operator()(const Energy& e) const { return e.hash(); }
};

}  // namespace eqspectre

#endif  // EQSPECTRE_ENERGY_HPP
