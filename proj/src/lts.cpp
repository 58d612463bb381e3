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

#include "eqspectre/lts.hpp"

#include <algorithm>
#include <cassert>
#include <fstream>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>
#include <unordered_map>

namespace eqspectre {

ProcessSet::ProcessSet(std::vector<ProcessId> ids) : ids_(std::move(ids)) {
  std::sort(ids_.begin(), ids_.end());
  ids_.erase(std::unique(ids_.begin(), ids_.end()), ids_.end());
}

ProcessSet ProcessSet::single(ProcessId p) {
  ProcessSet s;
  s.ids_.push_back(p);
  return s;
}

bool ProcessSet::contains(ProcessId p) const {
  return std::binary_search(ids_.begin(), ids_.end(), p);
}

bool ProcessSet::subset_of(const ProcessSet& other) const {
  return std::includes(other.ids_.begin(), other.ids_.end(), ids_.begin(),
                       ids_.end());
}

ProcessSet ProcessSet::minus(const ProcessSet& other) const {
  ProcessSet r;
  std::set_difference(ids_.begin(), ids_.end(), other.ids_.begin(),
                      other.ids_.end(), std::back_inserter(r.ids_));
  return r;
}

ProcessSet ProcessSet::unite(const ProcessSet& other) const {
  ProcessSet r;
  std::set_union(ids_.begin(), ids_.end(), other.ids_.begin(),
                 other.ids_.end(), std::back_inserter(r.ids_));
  return r;
}

std::size_t ProcessSet::hash() const {
  std::size_t h = 1469598103934665603ull;
  for (ProcessId p : ids_) h = (h ^ p) * 1099511628211ull;
  return h;
}

std::string ProcessSet::to_string() const {
  std::ostringstream os;
  os << '{';
  for (std::size_t i = 0; i < ids_.size(); ++i) {
    if (i) os << ',';
    os << ids_[i];
  }
  os << '}';
  return os.str();
}

std::vector<std::vector<ProcessId>> Partition::blocks() const {
  std::vector<std::vector<ProcessId>> bs(block_count);
  for (ProcessId p = 0; p < block_of.size(); ++p) {
    bs[block_of[p]].push_back(p);
  }
  return bs;
}

bool Partition::refines(const Partition& coarser) const {
  // Every block of this partition must lie inside one coarser block.
  std::vector<std::int64_t> image(block_count, -1);
  for (ProcessId p = 0; p < block_of.size(); ++p) {
    std::uint32_t b = block_of[p];
    if (image[b] < 0) {
      image[b] = coarser.block_of[p];
    } else if (image[b] != coarser.block_of[p]) {
      return false;
    }
  }
  return true;
}

std::optional<ActionId> Lts::action_id(std::string_view name) const {
  for (ActionId a = 0; a < action_names_.size(); ++a) {
    if (action_names_[a] == name) return a;
  }
  return std::nullopt;
}

std::span<const ProcessId> Lts::targets(ProcessId p, ActionId a) const {
  const auto& acts = enabled_[p];
  auto it = std::lower_bound(acts.begin(), acts.end(), a);
  if (it == acts.end() || *it != a) return {};
  return out_[p][static_cast<std::size_t>(it - acts.begin())];
}

bool Lts::same_enabled(ProcessId p, ProcessId q) const {
  return enabled_[p] == enabled_[q];
}

bool Lts::enabled_subset(ProcessId p, ProcessId q) const {
  return std::includes(enabled_[q].begin(), enabled_[q].end(),
                       enabled_[p].begin(), enabled_[p].end());
}

ProcessSet Lts::step_set(const ProcessSet& ps, ActionId a) const {
  std::vector<ProcessId> result;
  for (ProcessId p : ps) {
    auto ts = targets(p, a);
    result.insert(result.end(), ts.begin(), ts.end());
  }
  return ProcessSet(std::move(result));
}

LtsBuilder::LtsBuilder(std::size_t process_count)
    : process_count_(process_count) {}

ActionId LtsBuilder::intern_action(std::string_view name) {
  auto it = action_index_.find(name);
  if (it != action_index_.end()) return it->second;
  ActionId id = static_cast<ActionId>(action_names_.size());
  action_names_.emplace_back(name);
  action_index_.emplace(std::string(name), id);
  return id;
}

ActionId LtsBuilder::designate_internal(std::string_view name) {
  ActionId id = intern_action(name);
  internal_ = id;
  return id;
}

void LtsBuilder::add_transition(ProcessId src, ActionId action,
                                ProcessId dst) {
  if (src >= process_count_ || dst >= process_count_) {
    throw std::invalid_argument("transition endpoint out of range");
  }
  if (action >= action_names_.size()) {
    throw std::invalid_argument("unknown action id");
  }
  transitions_.push_back({src, action, dst});
}

void LtsBuilder::add_transition(ProcessId src, std::string_view action,
                                ProcessId dst) {
  add_transition(src, intern_action(action), dst);
}

Lts LtsBuilder::build() const {
  if (initial_ >= process_count_ && process_count_ > 0) {
    throw std::invalid_argument("initial process out of range");
  }
  Lts lts;
  lts.action_names_ = action_names_;
  lts.internal_ = internal_;
  lts.initial_ = initial_;
  lts.transitions_ = transitions_;
  std::sort(lts.transitions_.begin(), lts.transitions_.end());
  lts.transitions_.erase(
      std::unique(lts.transitions_.begin(), lts.transitions_.end()),
      lts.transitions_.end());

  lts.enabled_.resize(process_count_);
  lts.out_.resize(process_count_);
  for (const Transition& t : lts.transitions_) {
    auto& acts = lts.enabled_[t.src];
    if (acts.empty() || acts.back() != t.action) {
      // transitions_ is sorted by (src, action, dst), so actions arrive in
      // ascending order per source
      acts.push_back(t.action);
      lts.out_[t.src].emplace_back();
    }
    lts.out_[t.src].back().push_back(t.dst);
  }
  return lts;
}

AutParseError::AutParseError(int line, const std::string& message)
    : std::runtime_error("line " + std::to_string(line) + ": " + message),
      line_(line) {}

namespace {

bool is_internal_label(std::string_view label) {
  return label == "i" || label == "tau";
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' ||
                        s.front() == '\r')) {
    s.remove_prefix(1);
  }
  while (!s.empty() &&
         (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
    s.remove_suffix(1);
  }
  return s;
}

std::uint64_t parse_number(std::string_view s, int line,
                           const char* what) {
  s = trim(s);
  if (s.empty()) throw AutParseError(line, std::string("missing ") + what);
  std::uint64_t value = 0;
  for (char c : s) {
    if (c < '0' || c > '9') {
      throw AutParseError(line, std::string("malformed ") + what + " '" +
                                    std::string(s) + "'");
    }
    value = value * 10 + static_cast<std::uint64_t>(c - '0');
    if (value > 0xFFFFFFFFull) {
      throw AutParseError(line, std::string(what) + " out of range");
    }
  }
  return value;
}

struct RawTransition {
  std::uint64_t src;
  std::string label;
  std::uint64_t dst;
};

// A transition line has the shape (src, label, dst) where the label is
// either quoted or runs up to the next comma.
RawTransition parse_transition_line(std::string_view body, int line) {
  body = trim(body);
  if (body.size() < 2 || body.front() != '(' || body.back() != ')') {
    throw AutParseError(line, "expected '(src, label, dst)'");
  }
  body = body.substr(1, body.size() - 2);

  auto first_comma = body.find(',');
  if (first_comma == std::string_view::npos) {
    throw AutParseError(line, "expected '(src, label, dst)'");
  }
  RawTransition t;
  t.src = parse_number(body.substr(0, first_comma), line, "source state");

  std::string_view rest = trim(body.substr(first_comma + 1));
  if (!rest.empty() && rest.front() == '"') {
    auto closing = rest.find('"', 1);
    if (closing == std::string_view::npos) {
      throw AutParseError(line, "unterminated quoted label");
    }
    t.label = std::string(rest.substr(1, closing - 1));
    rest = trim(rest.substr(closing + 1));
    if (rest.empty() || rest.front() != ',') {
      throw AutParseError(line, "expected ',' after label");
    }
    rest.remove_prefix(1);
  } else {
    auto comma = rest.rfind(',');
    if (comma == std::string_view::npos) {
      throw AutParseError(line, "expected '(src, label, dst)'");
    }
    t.label = std::string(trim(rest.substr(0, comma)));
    rest = rest.substr(comma + 1);
  }
  if (t.label.empty()) throw AutParseError(line, "empty label");
  t.dst = parse_number(rest, line, "target state");
  return t;
}

}  // namespace

Lts parse_aut(std::istream& in) {
  std::string line;
  int line_no = 0;

  // Header: des (initial, transition-count, state-count)
  std::uint64_t initial = 0, trans_count = 0, state_count = 0;
  bool have_header = false;
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view body = trim(line);
    if (body.empty()) continue;
    if (body.substr(0, 3) != "des") {
      throw AutParseError(line_no, "expected 'des (i,t,s)' header");
    }
    body = trim(body.substr(3));
    if (body.size() < 2 || body.front() != '(' || body.back() != ')') {
      throw AutParseError(line_no, "malformed header");
    }
    body = body.substr(1, body.size() - 2);
    auto c1 = body.find(',');
    auto c2 = body.find(',', c1 == std::string_view::npos ? 0 : c1 + 1);
    if (c1 == std::string_view::npos || c2 == std::string_view::npos) {
      throw AutParseError(line_no, "malformed header");
    }
    initial = parse_number(body.substr(0, c1), line_no, "initial state");
    trans_count =
        parse_number(body.substr(c1 + 1, c2 - c1 - 1), line_no,
                     "transition count");
    state_count = parse_number(body.substr(c2 + 1), line_no, "state count");
    have_header = true;
    break;
  }
  if (!have_header) throw AutParseError(line_no + 1, "missing header");
  if (state_count == 0) {
    throw AutParseError(line_no, "state count must be positive");
  }
  if (initial >= state_count) {
    throw AutParseError(line_no, "initial state exceeds state count");
  }

  LtsBuilder builder(state_count);
  builder.set_initial(static_cast<ProcessId>(initial));
  ActionId internal = builder.designate_internal("tau");

  std::uint64_t seen = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view body = trim(line);
    if (body.empty()) continue;
    RawTransition t = parse_transition_line(body, line_no);
    if (seen == trans_count) {
      throw AutParseError(line_no, "more transitions than declared");
    }
    if (t.src >= state_count || t.dst >= state_count) {
      throw AutParseError(line_no, "transition references state id >= " +
                                       std::to_string(state_count));
    }
    ActionId a = is_internal_label(t.label)
                     ? internal
                     : builder.intern_action(t.label);
    builder.add_transition(static_cast<ProcessId>(t.src), a,
                           static_cast<ProcessId>(t.dst));
    ++seen;
  }
  if (seen != trans_count) {
    throw AutParseError(line_no + 1,
                        "declared " + std::to_string(trans_count) +
                            " transitions but found " + std::to_string(seen));
  }
  return builder.build();
}

Lts parse_aut_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  return parse_aut(in);
}

void write_aut(const Lts& lts, std::ostream& out) {
  out << "des (" << lts.initial() << ',' << lts.transitions().size() << ','
      << lts.process_count() << ")\n";
  for (const Transition& t : lts.transitions()) {
    out << '(' << t.src << ",\"" << lts.action_name(t.action) << "\","
        << t.dst << ")\n";
  }
}

std::map<std::string, ProcessId> parse_name_map(std::istream& in) {
  std::map<std::string, ProcessId> names;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view body = trim(line);
    if (body.empty()) continue;
    auto tab = body.find('\t');
    if (tab == std::string_view::npos) {
      throw AutParseError(line_no, "expected 'name<TAB>id'");
    }
    std::string name(trim(body.substr(0, tab)));
    std::uint64_t id = parse_number(body.substr(tab + 1), line_no, "id");
    if (name.empty()) throw AutParseError(line_no, "empty name");
    names[name] = static_cast<ProcessId>(id);
  }
  return names;
}

Lts saturate_weak(const Lts& lts) {
  std::optional<ActionId> internal = lts.internal_action();
  if (!internal) {
    throw std::invalid_argument("no internal action designated");
  }
  std::size_t n = lts.process_count();

  // Reflexive-transitive closure of internal steps, per process.
  std::vector<std::vector<ProcessId>> closure(n);
  for (ProcessId p = 0; p < n; ++p) {
    std::vector<bool> seen(n, false);
    std::vector<ProcessId> stack{p};
    seen[p] = true;
    while (!stack.empty()) {
      ProcessId q = stack.back();
      stack.pop_back();
      closure[p].push_back(q);
      for (ProcessId r : lts.targets(q, *internal)) {
        if (!seen[r]) {
          seen[r] = true;
          stack.push_back(r);
        }
      }
    }
    std::sort(closure[p].begin(), closure[p].end());
  }

  LtsBuilder builder(n);
  builder.set_initial(lts.initial());
  for (ActionId a = 0; a < lts.action_count(); ++a) {
    builder.intern_action(lts.action_name(a));
  }
  ActionId tau = builder.designate_internal(lts.action_name(*internal));

  for (ProcessId p = 0; p < n; ++p) {
    for (ProcessId q : closure[p]) builder.add_transition(p, tau, q);
    // Observable step a: tau* a tau*.
    std::vector<bool> reached(n, false);
    for (ActionId a = 0; a < lts.action_count(); ++a) {
      if (a == *internal) continue;
      std::fill(reached.begin(), reached.end(), false);
      for (ProcessId q : closure[p]) {
        for (ProcessId r : lts.targets(q, a)) {
          for (ProcessId s : closure[r]) reached[s] = true;
        }
      }
      for (ProcessId s = 0; s < n; ++s) {
        if (reached[s]) builder.add_transition(p, a, s);
      }
    }
  }
  return builder.build();
}

namespace {

Partition canonical_partition(const std::vector<std::uint32_t>& raw_block,
                              std::size_t n) {
  Partition part;
  part.block_of.assign(n, 0);
  std::unordered_map<std::uint32_t, std::uint32_t> renumber;
  for (ProcessId p = 0; p < n; ++p) {
    auto [it, inserted] = renumber.try_emplace(
        raw_block[p], static_cast<std::uint32_t>(renumber.size()));
    part.block_of[p] = it->second;
  }
  part.block_count = static_cast<std::uint32_t>(renumber.size());
  return part;
}

}  // namespace

std::pair<Lts, Partition> bisim_quotient(const Lts& lts) {
  std::size_t n = lts.process_count();
  std::vector<std::uint32_t> block(n, 0);
  std::uint32_t count = n == 0 ? 0 : 1;

  // Signature refinement: split blocks by their sets of (action, target
  // block) pairs until stable.
  bool changed = n > 0;
  while (changed) {
    changed = false;
    std::map<std::pair<std::uint32_t, std::vector<std::uint64_t>>,
             std::uint32_t>
        groups;
    std::vector<std::uint32_t> next(n, 0);
    for (ProcessId p = 0; p < n; ++p) {
      std::vector<std::uint64_t> sig;
      for (ActionId a : lts.enabled(p)) {
        for (ProcessId t : lts.targets(p, a)) {
          sig.push_back((static_cast<std::uint64_t>(a) << 32) | block[t]);
        }
      }
      std::sort(sig.begin(), sig.end());
      sig.erase(std::unique(sig.begin(), sig.end()), sig.end());
      auto [it, inserted] = groups.try_emplace(
          {block[p], std::move(sig)},
          static_cast<std::uint32_t>(groups.size()));
      next[p] = it->second;
    }
    if (groups.size() != count) {
      count = static_cast<std::uint32_t>(groups.size());
      changed = true;
    }
    block = std::move(next);
  }

  Partition part = canonical_partition(block, n);
  return {quotient_by_partition(lts, part), part};
}

Partition enabledness_partition(const Lts& lts) {
  std::size_t n = lts.process_count();
  std::map<std::vector<ActionId>, std::uint32_t> groups;
  std::vector<std::uint32_t> block(n, 0);
  for (ProcessId p = 0; p < n; ++p) {
    std::vector<ActionId> key(lts.enabled(p).begin(), lts.enabled(p).end());
    auto [it, inserted] = groups.try_emplace(
        std::move(key), static_cast<std::uint32_t>(groups.size()));
    block[p] = it->second;
  }
  return canonical_partition(block, n);
}

Lts quotient_by_partition(const Lts& lts, const Partition& partition) {
  LtsBuilder builder(partition.block_count);
  for (ActionId a = 0; a < lts.action_count(); ++a) {
    builder.intern_action(lts.action_name(a));
  }
  if (lts.internal_action()) {
    builder.designate_internal(lts.action_name(*lts.internal_action()));
  }
  if (!partition.block_of.empty()) {
    builder.set_initial(partition.block_of[lts.initial()]);
  }
  for (const Transition& t : lts.transitions()) {
    builder.add_transition(partition.block_of[t.src], t.action,
                           partition.block_of[t.dst]);
  }
  return builder.build();
}

}  // namespace eqspectre
