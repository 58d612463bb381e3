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

#include "eqspectre/energy.hpp"

#include <algorithm>
#include <cassert>
#include <sstream>
#include <stdexcept>

namespace eqspectre {

namespace {

void check_dim(std::size_t dim) {
  if (dim > kMaxEnergyDim) {
    throw std::invalid_argument("energy dimension exceeds " +
                                std::to_string(kMaxEnergyDim));
  }
}

void check_same_dim(std::size_t a, std::size_t b) {
  if (a != b) {
    throw std::invalid_argument("dimension mismatch: " + std::to_string(a) +
                                " vs " + std::to_string(b));
  }
}

EnergyValue saturating_inc(EnergyValue v) {
  return v == kEnergyInf ? kEnergyInf : static_cast<EnergyValue>(v + 1);
}

}  // namespace

Energy::Energy(std::size_t dim, EnergyValue fill) {
  check_dim(dim);
  dim_ = static_cast<std::uint8_t>(dim);
  for (std::size_t i = 0; i < dim; ++i) comps_[i] = fill;
}

Energy::Energy(std::initializer_list<EnergyValue> comps) {
  check_dim(comps.size());
  dim_ = static_cast<std::uint8_t>(comps.size());
  std::size_t i = 0;
  for (EnergyValue v : comps) comps_[i++] = v;
}

bool Energy::finite() const {
  for (std::size_t i = 0; i < dim_; ++i) {
    if (comps_[i] == kEnergyInf) return false;
  }
  return true;
}

bool Energy::lex_less(const Energy& a, const Energy& b) {
  if (a.dim_ != b.dim_) return a.dim_ < b.dim_;
  for (std::size_t i = 0; i < a.dim_; ++i) {
    if (a.comps_[i] != b.comps_[i]) return a.comps_[i] < b.comps_[i];
  }
  return false;
}

std::size_t Energy::hash() const {
  std::size_t h = 1469598103934665603ull;
  h = (h ^ dim_) * 1099511628211ull;
  for (std::size_t i = 0; i < dim_; ++i) {
    h = (h ^ comps_[i]) * 1099511628211ull;
  }
  return h;
}

std::string Energy::to_string() const {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < dim_; ++i) {
    if (i) os << ',';
    if (comps_[i] == kEnergyInf) {
      os << "inf";
    } else {
      os << comps_[i];
    }
  }
  os << ')';
  return os.str();
}

bool order_leq(const Energy& e, const Energy& f) {
  check_same_dim(e.dim(), f.dim());
  for (std::size_t i = 0; i < e.dim(); ++i) {
    if (e[i] > f[i]) return false;
  }
  return true;
}

Energy least_upper_bound(const Energy& e, const Energy& f) {
  check_same_dim(e.dim(), f.dim());
  Energy r(e.dim());
  for (std::size_t i = 0; i < e.dim(); ++i) r[i] = std::max(e[i], f[i]);
  return r;
}

Energy greatest_lower_bound(const Energy& e, const Energy& f) {
  check_same_dim(e.dim(), f.dim());
  Energy r(e.dim());
  for (std::size_t i = 0; i < e.dim(); ++i) r[i] = std::min(e[i], f[i]);
  return r;
}

Energy least_upper_bound(std::span<const Energy> es, std::size_t dim) {
  Energy r = Energy::zero(dim);
  for (const Energy& e : es) r = least_upper_bound(r, e);
  return r;
}

Energy greatest_lower_bound(std::span<const Energy> es, std::size_t dim) {
  Energy r = Energy::all_infinite(dim);
  for (const Energy& e : es) r = greatest_lower_bound(r, e);
  return r;
}

Energy cap(const Energy& e, EnergyValue k) {
  if (k < 1) throw std::invalid_argument("cap bound must be at least 1");
  Energy r(e.dim());
  for (std::size_t i = 0; i < e.dim(); ++i) r[i] = std::min(e[i], k);
  return r;
}

UpdateVector::UpdateVector(std::size_t dim) {
  check_dim(dim);
  dim_ = static_cast<std::uint8_t>(dim);
}

void UpdateVector::set_decrement(std::size_t k) {
  assert(k < dim_);
  ops_[k] = kDecrement;
}

void UpdateVector::set_min_of(std::size_t k,
                              std::initializer_list<std::size_t> dims) {
  std::uint32_t mask = 0;
  for (std::size_t d : dims) {
    assert(d < dim_);
    mask |= 1u << d;
  }
  set_min_of(k, mask);
}

void UpdateVector::set_min_of(std::size_t k, std::uint32_t mask) {
  assert(k < dim_);
  if (mask == 0 || (mask & (1u << k)) == 0) {
    throw std::invalid_argument(
        "min update must range over a set containing its own component");
  }
  ops_[k] = static_cast<std::uint16_t>(kMinBit | mask);
}

std::string UpdateVector::to_string() const {
  std::ostringstream os;
  os << '(';
  for (std::size_t k = 0; k < dim_; ++k) {
    if (k) os << ',';
    if (is_zero(k)) {
      os << '0';
    } else if (is_decrement(k)) {
      os << "-1";
    } else {
      os << "min{";
      bool first = true;
      for (std::size_t d = 0; d < dim_; ++d) {
        if (min_mask(k) & (1u << d)) {
          if (!first) os << ',';
          os << d + 1;
          first = false;
        }
      }
      os << '}';
    }
  }
  os << ')';
  return os.str();
}

nlohmann::json UpdateVector::to_json() const {
  nlohmann::json arr = nlohmann::json::array();
  for (std::size_t k = 0; k < dim_; ++k) {
    if (is_zero(k)) {
      arr.push_back(0);
    } else if (is_decrement(k)) {
      arr.push_back(-1);
    } else {
      nlohmann::json dims = nlohmann::json::array();
      for (std::size_t d = 0; d < dim_; ++d) {
        if (min_mask(k) & (1u << d)) dims.push_back(d + 1);
      }
      arr.push_back(nlohmann::json{{"min", dims}});
    }
  }
  return arr;
}

std::optional<Energy> apply_update(const Energy& e, const UpdateVector& u) {
  check_same_dim(e.dim(), u.dim());
  Energy r(e.dim());
  for (std::size_t k = 0; k < e.dim(); ++k) {
    if (u.is_zero(k)) {
      r[k] = e[k];
    } else if (u.is_decrement(k)) {
      if (e[k] == 0) return std::nullopt;
      r[k] = e[k] == kEnergyInf ? kEnergyInf
                                : static_cast<EnergyValue>(e[k] - 1);
    } else {
      EnergyValue m = kEnergyInf;
      std::uint32_t mask = u.min_mask(k);
      for (std::size_t d = 0; d < e.dim(); ++d) {
        if (mask & (1u << d)) m = std::min(m, e[d]);
      }
      r[k] = m;
    }
  }
  return r;
}

Energy invert_update(const Energy& after, const UpdateVector& u) {
  check_same_dim(after.dim(), u.dim());
  // Base vector: undo numeric components, copy min components.
  Energy r(after.dim());
  for (std::size_t k = 0; k < after.dim(); ++k) {
    r[k] = u.is_decrement(k) ? saturating_inc(after[k]) : after[k];
  }
  // Each min_D component additionally forces its required level onto every
  // dimension of D.
  for (std::size_t k = 0; k < after.dim(); ++k) {
    if (!u.is_min(k)) continue;
    std::uint32_t mask = u.min_mask(k);
    for (std::size_t d = 0; d < after.dim(); ++d) {
      if (mask & (1u << d)) r[d] = std::max(r[d], after[k]);
    }
  }
  return r;
}

bool Antichain::insert_minimal(const Energy& e) {
  for (const Energy& m : elems_) {
    if (order_leq(m, e)) return false;
  }
  std::erase_if(elems_, [&](const Energy& m) { return order_leq(e, m); });
  auto it = std::lower_bound(elems_.begin(), elems_.end(), e,
                             &Energy::lex_less);
  elems_.insert(it, e);
  return true;
}

bool Antichain::insert_maximal(const Energy& e) {
  for (const Energy& m : elems_) {
    if (order_leq(e, m)) return false;
  }
  std::erase_if(elems_, [&](const Energy& m) { return order_leq(m, e); });
  auto it = std::lower_bound(elems_.begin(), elems_.end(), e,
                             &Energy::lex_less);
  elems_.insert(it, e);
  return true;
}

std::string Antichain::to_string() const {
  std::ostringstream os;
  os << '{';
  for (std::size_t i = 0; i < elems_.size(); ++i) {
    if (i) os << ", ";
    os << elems_[i].to_string();
  }
  os << '}';
  return os.str();
}

Antichain normalize_min(std::span<const Energy> es) {
  Antichain ac;
  for (const Energy& e : es) ac.insert_minimal(e);
  return ac;
}

Antichain normalize_max(std::span<const Energy> es) {
  Antichain ac;
  for (const Energy& e : es) ac.insert_maximal(e);
  return ac;
}

bool dominated_by(const Antichain& ac, const Energy& e) {
  for (const Energy& m : ac.elements()) {
    if (order_leq(m, e)) return true;
  }
  return false;
}

bool covered_by(const Antichain& ac, const Energy& e) {
  for (const Energy& m : ac.elements()) {
    if (order_leq(e, m)) return true;
  }
  return false;
}

Antichain complement_antichain(const Antichain& mn, std::size_t dim) {
  check_dim(dim);
  // Start from the full space and intersect, one budget at a time, with the
  // set of energies that stay below the budget in some dimension. Keeping
  // maximal elements after each step keeps the candidate set an antichain.
  std::vector<Energy> frontier{Energy::all_infinite(dim)};
  for (const Energy& m : mn.elements()) {
    check_same_dim(m.dim(), dim);
    Antichain next;
    for (const Energy& c : frontier) {
      for (std::size_t i = 0; i < dim; ++i) {
        if (m[i] == 0) continue;  // cannot stay below zero
        Energy lowered = c;
        lowered[i] =
            std::min(lowered[i], static_cast<EnergyValue>(m[i] - 1));
        next.insert_maximal(lowered);
      }
    }
    frontier.assign(next.elements().begin(), next.elements().end());
    if (frontier.empty()) break;
  }
  Antichain result;
  for (const Energy& c : frontier) result.insert_maximal(c);
  return result;
}

nlohmann::json to_json(const Energy& e) {
  nlohmann::json arr = nlohmann::json::array();
  for (std::size_t i = 0; i < e.dim(); ++i) {
    if (e[i] == kEnergyInf) {
      arr.push_back("inf");
    } else {
      arr.push_back(e[i]);
    }
  }
  return arr;
}

nlohmann::json to_json(const Antichain& ac) {
  nlohmann::json arr = nlohmann::json::array();
  for (const Energy& e : ac.elements()) arr.push_back(to_json(e));
  return arr;
}

}  // namespace eqspectre
