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

#ifndef EQSPECTRE_LTS_HPP
#define EQSPECTRE_LTS_HPP

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace eqspectre {

using ProcessId = std::uint32_t;
using ActionId = std::uint32_t;

// Canonical (sorted, deduplicated) set of process ids. Equality of sets is
// equality of the representation, which makes game positions hashable.
class ProcessSet {
 public:
  ProcessSet() = default;
  explicit ProcessSet(std::vector<ProcessId> ids);
  static ProcessSet single(ProcessId p);

  bool empty() const { return ids_.empty(); }
  std::size_t size() const { return ids_.size(); }
  bool contains(ProcessId p) const;
  std::span<const ProcessId> ids() const { return ids_; }
  auto begin() const { return ids_.begin(); }
  auto end() const { return ids_.end(); }

  bool subset_of(const ProcessSet& other) const;
  ProcessSet minus(const ProcessSet& other) const;
  ProcessSet unite(const ProcessSet& other) const;

  bool operator==(const ProcessSet&) const = default;
  bool operator<(const ProcessSet& other) const { return ids_ < other.ids_; }

  std::size_t hash() const;
  std::string to_string() const;

 private:
  std::vector<ProcessId> ids_;
};

struct Transition {
  ProcessId src;
  ActionId action;
  ProcessId dst;

  bool operator==(const Transition&) const = default;
  auto operator<=>(const Transition&) const = default;
};

// Block id per process; block ids are dense and numbered by first occurrence.
struct Partition {
  std::vector<std::uint32_t> block_of;
  std::uint32_t block_count = 0;

  std::vector<std::vector<ProcessId>> blocks() const;
  bool refines(const Partition& coarser) const;
  bool operator==(const Partition&) const = default;
};

class LtsBuilder;

// Immutable labeled transition system with a per-process outgoing adjacency
// index grouped by action. Safe to share across concurrent readers.
class Lts {
 public:
  std::size_t process_count() const { return out_.size(); }
  std::size_t action_count() const { return action_names_.size(); }
  ProcessId initial() const { return initial_; }

  std::optional<ActionId> internal_action() const { return internal_; }
  const std::string& action_name(ActionId a) const {
    return action_names_[a];
  }
  std::optional<ActionId> action_id(std::string_view name) const;

  std::span<const Transition> transitions() const { return transitions_; }

  // Actions enabled at p, ascending.
  std::span<const ActionId> enabled(ProcessId p) const {
    return enabled_[p];
  }
  // Targets of p under a, ascending; empty when a is not enabled.
  std::span<const ProcessId> targets(ProcessId p, ActionId a) const;

  bool same_enabled(ProcessId p, ProcessId q) const;
  bool enabled_subset(ProcessId p, ProcessId q) const;

  ProcessSet step_set(const ProcessSet& ps, ActionId a) const;

 private:
  friend class LtsBuilder;

  std::vector<std::string> action_names_;
  std::optional<ActionId> internal_;
  ProcessId initial_ = 0;
  std::vector<Transition> transitions_;  // sorted, unique
  // Per process: parallel arrays of enabled actions and their target lists.
  std::vector<std::vector<ActionId>> enabled_;
  std::vector<std::vector<std::vector<ProcessId>>> out_;
};

class LtsBuilder {
 public:
  explicit LtsBuilder(std::size_t process_count);

  ActionId intern_action(std::string_view name);
  // Interns (or finds) the internal action and marks it.
  ActionId designate_internal(std::string_view name = "tau");
  void add_transition(ProcessId src, ActionId action, ProcessId dst);
  void add_transition(ProcessId src, std::string_view action, ProcessId dst);
  void set_initial(ProcessId p) { initial_ = p; }

  Lts build() const;

 private:
  std::size_t process_count_;
  ProcessId initial_ = 0;
  std::vector<std::string> action_names_;
  std::map<std::string, ActionId, std::less<>> action_index_;
  std::optional<ActionId> internal_;
  std::vector<Transition> transitions_;
};

class AutParseError : public std::runtime_error {
 public:
  AutParseError(int line, const std::string& message);
  int line() const { return line_; }

 private:
  int line_;
};

// Aldebaran format: a `des (initial,transitions,states)` header followed by
// one `(src,label,dst)` line per transition. Labels may be bare or quoted;
// the spellings i, tau, "i", "tau" all denote the internal action, which is
// always interned (as "tau") even when unused.
Lts parse_aut(std::istream& in);
Lts parse_aut_file(const std::string& path);
void write_aut(const Lts& lts, std::ostream& out);

// Sidecar name map, one `name<TAB>id` line per process name.
std::map<std::string, ProcessId> parse_name_map(std::istream& in);

// Closure under internal steps: p -tau-> p' iff p reaches p' by zero or more
// internal steps (so every process gains a self loop), and p -a-> p' iff
// p tau* a tau* p' in the original system. Requires a designated internal
// action.
Lts saturate_weak(const Lts& lts);

// Coarsest strong-bisimilarity partition by signature refinement, plus the
// quotient system with one process per block and deduplicated transitions.
std::pair<Lts, Partition> bisim_quotient(const Lts& lts);

// Processes share a block iff they enable exactly the same actions.
Partition enabledness_partition(const Lts& lts);

// Quotient under an arbitrary partition, one representative per block.
Lts quotient_by_partition(const Lts& lts, const Partition& partition);

struct ProcessSetHash {
  std::size_t operator()(const ProcessSet& s) const { return s.hash(); }
};

}  // namespace eqspectre

#endif  // EQSPECTRE_LTS_HPP
