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

#include "eqspectre/pipeline.hpp"

#include <algorithm>
#include <chrono>
#include <fstream>
#include <iomanip>
#include <map>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "eqspectre/log.hpp"

namespace eqspectre {

namespace {

using nlohmann::json;

std::string basename_of(const std::string& path) {
  auto slash = path.find_last_of('/');
  std::string name = slash == std::string::npos ? path : path.substr(slash + 1);
  auto dot = name.rfind(".aut");
  if (dot != std::string::npos && dot == name.size() - 4) {
    name = name.substr(0, dot);
  }
  return name;
}

struct LoadedSystem {
  Lts lts;                       // the analyzed system (saturated, quotiented)
  Partition bisim;               // original process -> analyzed process
  std::map<std::string, ProcessId> names;  // original ids
  std::size_t original_states = 0;
};

LoadedSystem load_system(const RunConfig& config) {
  if (config.inputs.empty()) {
    throw std::runtime_error("no input file given");
  }
  LoadedSystem sys;
  sys.lts = parse_aut_file(config.inputs.front());
  sys.original_states = sys.lts.process_count();
  if (!config.names_path.empty()) {
    std::ifstream in(config.names_path);
    if (!in) {
      throw std::runtime_error("cannot open '" + config.names_path + "'");
    }
    sys.names = parse_name_map(in);
    for (const auto& [name, id] : sys.names) {
      if (id >= sys.original_states) {
        throw std::runtime_error("name '" + name +
                                 "' maps to out-of-range id " +
                                 std::to_string(id));
      }
    }
  }
  if (config.weak) {
    sys.lts = saturate_weak(sys.lts);
    log_info("saturated system has " +
             std::to_string(sys.lts.transitions().size()) + " transitions");
  }
  if (config.quotient) {
    auto [quotient, partition] = bisim_quotient(sys.lts);
    log_info("bisimilarity quotient: " + std::to_string(partition.block_count) +
             " of " + std::to_string(sys.original_states) + " states remain");
    sys.lts = std::move(quotient);
    sys.bisim = std::move(partition);
  } else {
    sys.bisim.block_of.resize(sys.original_states);
    for (ProcessId p = 0; p < sys.original_states; ++p) {
      sys.bisim.block_of[p] = p;
    }
    sys.bisim.block_count = static_cast<std::uint32_t>(sys.original_states);
  }
  return sys;
}

ProcessId resolve_process(const LoadedSystem& sys, const std::string& token) {
  auto it = sys.names.find(token);
  if (it != sys.names.end()) return it->second;
  ProcessId id = 0;
  bool numeric = !token.empty();
  for (char c : token) {
    if (c < '0' || c > '9') {
      numeric = false;
      break;
    }
    id = id * 10 + static_cast<ProcessId>(c - '0');
  }
  if (!numeric) {
    throw std::runtime_error("unknown process '" + token + "'");
  }
  if (id >= sys.original_states) {
    throw std::runtime_error("process id " + std::to_string(id) +
                             " out of range (states: " +
                             std::to_string(sys.original_states) + ")");
  }
  return id;
}

std::string display_name(const LoadedSystem& sys, ProcessId original) {
  for (const auto& [name, id] : sys.names) {
    if (id == original) return name;
  }
  return std::to_string(original);
}

bool effective_exact(const RunConfig& config) {
  return config.exact_mode.value_or(false);
}

GameVariant effective_variant(const RunConfig& config) {
  if (config.variant) return *config.variant;
  return effective_exact(config) ? GameVariant::kFull : GameVariant::kClever;
}

SpectroOptions make_options(const RunConfig& config) {
  SpectroOptions options;
  options.variant = effective_variant(config);
  if (effective_exact(config)) {
    options.cap.reset();
    options.certificates = true;
  } else {
    options.cap = config.cap;
  }
  options.limits = config.limits;
  return options;
}

std::vector<std::size_t> required_notions(const RunConfig& config) {
  std::vector<std::size_t> indices;
  if (config.require.empty()) {
    for (std::size_t i = 0; i < kSpectrumSize; ++i) indices.push_back(i);
    return indices;
  }
  for (const std::string& name : config.require) {
    int idx = notion_index(name);
    if (idx < 0) {
      throw std::runtime_error("unknown equivalence '" + name + "'");
    }
    indices.push_back(static_cast<std::size_t>(idx));
  }
  return indices;
}

std::string notion_list(const std::array<bool, kSpectrumSize>& holds,
                        const char* sep = " ") {
  std::string s;
  auto coords = spectrum_coords();
  for (std::size_t i = 0; i < kSpectrumSize; ++i) {
    if (!holds[i]) continue;
    if (!s.empty()) s += sep;
    s += coords[i].name;
  }
  return s;
}

json notion_json(const std::array<bool, kSpectrumSize>& holds) {
  json arr = json::array();
  auto coords = spectrum_coords();
  for (std::size_t i = 0; i < kSpectrumSize; ++i) {
    if (holds[i]) arr.push_back(coords[i].name);
  }
  return arr;
}

struct PairReport {
  ProcessId p_original = 0;
  ProcessId q_original = 0;
  std::string p_label;
  std::string q_label;
  SpectroVerdict verdict;
};

void print_pair_text(const PairReport& report, bool exact, std::ostream& out,
                     const Lts& lts) {
  const SpectroVerdict& v = report.verdict;
  out << "pair (" << report.p_label << "," << report.q_label << ")";
  if (report.p_label != std::to_string(report.p_original) ||
      report.q_label != std::to_string(report.q_original)) {
    out << "  ids (" << report.p_original << "," << report.q_original << ")";
  }
  out << "\n";
  if (v.aborted) {
    out << "  aborted: " << v.abort_reason << "\n";
    return;
  }
  out << "  preorders " << report.p_label << " <= " << report.q_label << ": "
      << notion_list(v.forward.preorder) << "\n";
  out << "  preorders " << report.q_label << " <= " << report.p_label << ": "
      << notion_list(v.backward.preorder) << "\n";
  std::array<bool, kSpectrumSize> eq{};
  for (std::size_t i = 0; i < kSpectrumSize; ++i) eq[i] = v.equivalence(i);
  out << "  equivalences: " << notion_list(eq) << "\n";
  if (exact) {
    out << "  budgets " << report.p_label << " vs " << report.q_label << ": "
        << v.forward.budgets.to_string() << "\n";
    out << "  budgets " << report.q_label << " vs " << report.p_label << ": "
        << v.backward.budgets.to_string() << "\n";
    out << "  finest defender budgets: " << v.finest.to_string() << "\n";
    for (const auto& [notion, formula] : v.forward.certificates) {
      out << "  certificate " << report.p_label << " vs " << report.q_label
          << " [" << notion << "]: " << formula.to_string(lts) << "\n";
    }
    for (const auto& [notion, formula] : v.backward.certificates) {
      out << "  certificate " << report.q_label << " vs " << report.p_label
          << " [" << notion << "]: " << formula.to_string(lts) << "\n";
    }
  }
}

json pair_json(const PairReport& report, bool exact, const Lts& lts) {
  const SpectroVerdict& v = report.verdict;
  json j;
  j["pair"] = {report.p_original, report.q_original};
  j["names"] = {report.p_label, report.q_label};
  if (v.aborted) {
    j["aborted"] = true;
    j["reason"] = v.abort_reason;
    return j;
  }
  j["preorders"] = {{"pq", notion_json(v.forward.preorder)},
                    {"qp", notion_json(v.backward.preorder)}};
  std::array<bool, kSpectrumSize> eq{};
  for (std::size_t i = 0; i < kSpectrumSize; ++i) eq[i] = v.equivalence(i);
  j["equivalences"] = notion_json(eq);
  if (exact) {
    j["budgets"] = {{"pq", to_json(v.forward.budgets)},
                    {"qp", to_json(v.backward.budgets)}};
    j["finest"] = to_json(v.finest);
    json certs_pq = json::object();
    for (const auto& [notion, formula] : v.forward.certificates) {
      certs_pq[notion] = formula.to_string(lts);
    }
    json certs_qp = json::object();
    for (const auto& [notion, formula] : v.backward.certificates) {
      certs_qp[notion] = formula.to_string(lts);
    }
    j["certificates"] = {{"pq", certs_pq}, {"qp", certs_qp}};
  }
  return j;
}

void print_pair_csv_row(const PairReport& report, std::ostream& out) {
  const SpectroVerdict& v = report.verdict;
  std::array<bool, kSpectrumSize> eq{};
  for (std::size_t i = 0; i < kSpectrumSize; ++i) eq[i] = v.equivalence(i);
  out << report.p_original << ',' << report.q_original << ','
      << notion_list(v.forward.preorder, ";") << ','
      << notion_list(v.backward.preorder, ";") << ','
      << notion_list(eq, ";") << "\n";
}

json run_header_json(const RunConfig& config, const char* command) {
  json j;
  j["command"] = command;
  if (!config.inputs.empty()) j["input"] = config.inputs.front();
  j["weak"] = config.weak;
  j["quotient"] = config.quotient;
  j["variant"] =
      effective_variant(config) == GameVariant::kFull ? "full" : "clever";
  if (effective_exact(config)) {
    j["mode"] = "exact";
  } else {
    j["mode"] = "capped";
    j["cap"] = config.cap;
  }
  return j;
}

void validate_cap(const RunConfig& config) {
  if (!effective_exact(config) && config.cap < 3) {
    throw std::runtime_error(
        "capped verdict mode needs --cap at least 3 to cover the spectrum "
        "coordinates");
  }
}

}  // namespace

int run_check(const RunConfig& config, std::ostream& out, std::ostream& err) {
  try {
    validate_cap(config);
    std::vector<std::size_t> needed = required_notions(config);
    LoadedSystem sys = load_system(config);
    SpectroOptions options = make_options(config);
    bool exact = effective_exact(config);

    std::vector<PairReport> reports;
    bool cross_block_failures = false;

    if (config.all_pairs) {
      Partition enab = enabledness_partition(sys.lts);
      cross_block_failures = enab.block_count > 1;
      std::vector<std::pair<ProcessId, ProcessId>> pairs;
      for (ProcessId p = 0; p < sys.lts.process_count(); ++p) {
        for (ProcessId q = p + 1; q < sys.lts.process_count(); ++q) {
          if (enab.block_of[p] == enab.block_of[q]) pairs.emplace_back(p, q);
        }
      }
      log_info("comparing " + std::to_string(pairs.size()) +
               " enabledness-compatible pairs");
      std::vector<SpectroVerdict> verdicts =
          spectroscope_pairs(sys.lts, pairs, options, config.jobs);
      reports.resize(pairs.size());
      for (std::size_t i = 0; i < pairs.size(); ++i) {
        reports[i].p_original = pairs[i].first;
        reports[i].q_original = pairs[i].second;
        reports[i].p_label = std::to_string(pairs[i].first);
        reports[i].q_label = std::to_string(pairs[i].second);
        reports[i].verdict = std::move(verdicts[i]);
      }
    } else {
      PairReport report;
      report.p_original = resolve_process(sys, config.proc_a);
      report.q_original = resolve_process(sys, config.proc_b);
      report.p_label = display_name(sys, report.p_original);
      report.q_label = display_name(sys, report.q_original);
      ProcessId p = sys.bisim.block_of[report.p_original];
      ProcessId q = sys.bisim.block_of[report.q_original];
      report.verdict = spectroscope(sys.lts, p, q, options);
      reports.push_back(std::move(report));
    }

    bool aborted = false;
    bool all_required_hold = !cross_block_failures;
    for (const PairReport& report : reports) {
      if (report.verdict.aborted) aborted = true;
      for (std::size_t idx : needed) {
        if (!report.verdict.equivalence(idx)) all_required_hold = false;
      }
    }

    switch (config.format) {
      case OutputFormat::kText:
        for (const PairReport& report : reports) {
          print_pair_text(report, exact, out, sys.lts);
        }
        break;
      case OutputFormat::kJson: {
        json j = run_header_json(config, "check");
        json verdicts = json::array();
        for (const PairReport& report : reports) {
          verdicts.push_back(pair_json(report, exact, sys.lts));
        }
        j["verdicts"] = verdicts;
        out << j.dump(2) << "\n";
        break;
      }
      case OutputFormat::kCsv:
        out << "p,q,preorders_pq,preorders_qp,equivalences\n";
        for (const PairReport& report : reports) {
          if (!report.verdict.aborted) print_pair_csv_row(report, out);
        }
        break;
    }

    if (aborted) return kExitResourceLimit;
    return all_required_hold ? kExitOk : kExitDistinguished;
  } catch (const std::exception& ex) {
    err << "error: " << ex.what() << "\n";
    return kExitError;
  }
}

namespace {

// Quotient with one representative per block: only the representative's
// transitions survive, retargeted to block ids.
Lts representative_quotient(const Lts& lts, const Partition& part) {
  std::vector<ProcessId> rep(part.block_count, 0);
  std::vector<bool> seen(part.block_count, false);
  for (ProcessId p = 0; p < lts.process_count(); ++p) {
    std::uint32_t b = part.block_of[p];
    if (!seen[b]) {
      seen[b] = true;
      rep[b] = p;
    }
  }
  LtsBuilder builder(part.block_count);
  for (ActionId a = 0; a < lts.action_count(); ++a) {
    builder.intern_action(lts.action_name(a));
  }
  if (lts.internal_action()) {
    builder.designate_internal(lts.action_name(*lts.internal_action()));
  }
  if (lts.process_count() > 0) {
    builder.set_initial(part.block_of[lts.initial()]);
  }
  for (std::uint32_t b = 0; b < part.block_count; ++b) {
    for (ActionId a : lts.enabled(rep[b])) {
      for (ProcessId t : lts.targets(rep[b], a)) {
        builder.add_transition(b, a, part.block_of[t]);
      }
    }
  }
  return builder.build();
}

}  // namespace

int run_quotient(const RunConfig& config, std::ostream& out,
                 std::ostream& err) {
  try {
    validate_cap(config);
    int idx = notion_index(config.notion);
    if (idx < 0) {
      throw std::runtime_error("unknown notion '" + config.notion + "'");
    }
    const SpectrumNotion& notion = spectrum_coords()[idx];
    if (notion.name != "E" && notion.name != "T" && notion.name != "1S" &&
        notion.name != "B") {
      throw std::runtime_error("quotient supports E, T, 1S and B");
    }

    RunConfig cfg = config;
    cfg.quotient = false;  // handled explicitly below
    LoadedSystem sys = load_system(cfg);

    Partition partition;
    if (notion.name == "B") {
      partition = bisim_quotient(sys.lts).second;
    } else if (notion.name == "E") {
      partition = enabledness_partition(sys.lts);
    } else {
      auto [qlts, bpart] = bisim_quotient(sys.lts);
      SystemVerdicts verdicts =
          spectroscope_system(qlts, make_options(config), config.jobs);
      Partition block_classes = verdicts.notion_partition(
          static_cast<std::size_t>(idx), qlts.process_count());
      partition.block_of.resize(sys.lts.process_count());
      for (ProcessId p = 0; p < sys.lts.process_count(); ++p) {
        partition.block_of[p] = block_classes.block_of[bpart.block_of[p]];
      }
      partition.block_count = block_classes.block_count;
    }

    if (config.format == OutputFormat::kJson) {
      json j = run_header_json(config, "quotient");
      j["notion"] = notion.name;
      j["classes"] = partition.block_count;
      out << j.dump(2) << "\n";
    } else {
      out << notion.long_name << " classes: " << partition.block_count
          << "\n";
    }

    if (!config.out_path.empty()) {
      std::ofstream file(config.out_path);
      if (!file) {
        throw std::runtime_error("cannot write '" + config.out_path + "'");
      }
      write_aut(representative_quotient(sys.lts, partition), file);
    }
    return kExitOk;
  } catch (const ResourceLimitError& ex) {
    err << "resource limit: " << ex.what() << "\n";
    return kExitResourceLimit;
  } catch (const std::exception& ex) {
    err << "error: " << ex.what() << "\n";
    return kExitError;
  }
}

int run_bench(const RunConfig& config, std::ostream& out, std::ostream& err) {
  try {
    validate_cap(config);
  } catch (const std::exception& ex) {
    err << "error: " << ex.what() << "\n";
    return kExitError;
  }
  out << "system,states,bisimquot,moves,time_s,enabledness,trace,simulation\n";
  for (const std::string& input : config.inputs) {
    std::string name = basename_of(input);
    try {
      RunConfig cfg = config;
      cfg.inputs = {input};
      cfg.quotient = false;  // quotient handled explicitly
      LoadedSystem sys = load_system(cfg);

      auto [qlts, bpart] = bisim_quotient(sys.lts);
      SystemVerdicts verdicts =
          spectroscope_system(qlts, make_options(config), config.jobs);

      std::size_t enab = enabledness_partition(qlts).block_count;
      std::size_t trace =
          verdicts.notion_partition(notion_index("T"), qlts.process_count())
              .block_count;
      std::size_t sim =
          verdicts.notion_partition(notion_index("1S"), qlts.process_count())
              .block_count;
      if (!(bpart.block_count >= sim && sim >= trace && trace >= enab)) {
        log_warn("quotient size hierarchy violated for " + name);
      }
      out << name << ',' << sys.original_states << ',' << bpart.block_count
          << ',' << verdicts.stats.moves << ',' << std::fixed
          << std::setprecision(3) << verdicts.solve_seconds << ','
          << enab << ',' << trace << ',' << sim << "\n";
      out.unsetf(std::ios_base::fixed);
    } catch (const std::exception& ex) {
      log_warn("bench failed for " + name + ": " + ex.what());
      out << name << ",error,,,,,,\n";
    }
  }
  return kExitOk;
}

int run_game_dump(const RunConfig& config, std::ostream& out,
                  std::ostream& err) {
  try {
    LoadedSystem sys = load_system(config);
    ProcessId p_orig = resolve_process(sys, config.proc_a);
    ProcessId q_orig = resolve_process(sys, config.proc_b);
    ProcessId p = sys.bisim.block_of[p_orig];
    ProcessId q = sys.bisim.block_of[q_orig];

    GameVariant variant = config.variant.value_or(GameVariant::kFull);
    SpectroscopyGame game(sys.lts, variant);
    PositionId root =
        game.intern(SpectroPosition::attacker(p, ProcessSet::single(q)));
    std::vector<PositionId> roots{root};

    SolveOptions solve_options;
    if (!config.exact_mode.value_or(true)) solve_options.cap = config.cap;
    solve_options.limits = config.limits;
    BudgetTable table = solve_winning_budgets(game, roots, solve_options);
    GameDump dump = explore_game(game, roots, config.limits);

    if (config.format == OutputFormat::kJson) {
      out << game_to_json(game, dump, &table).dump(2) << "\n";
    } else {
      out << game_to_graphviz(game, dump, &table);
    }
    return kExitOk;
  } catch (const ResourceLimitError& ex) {
    err << "resource limit: " << ex.what() << "\n";
    return kExitResourceLimit;
  } catch (const std::exception& ex) {
    err << "error: " << ex.what() << "\n";
    return kExitError;
  }
}

int run_spectrum(const RunConfig& config, std::ostream& out,
                 std::ostream& err) {
  try {
    if (config.format == OutputFormat::kJson) {
      json arr = json::array();
      for (const SpectrumNotion& n : spectrum_coords()) {
        arr.push_back(json{{"name", n.name},
                           {"long_name", n.long_name},
                           {"coordinate", to_json(n.coordinate)}});
      }
      out << arr.dump(2) << "\n";
    } else {
      for (const SpectrumNotion& n : spectrum_coords()) {
        out << std::left << std::setw(4) << n.name << std::setw(22)
            << n.long_name << n.coordinate.to_string() << "\n";
      }
    }
    return kExitOk;
  } catch (const std::exception& ex) {
    err << "error: " << ex.what() << "\n";
    return kExitError;
  }
}

}  // namespace eqspectre
