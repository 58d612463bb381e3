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

#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "eqspectre/pipeline.hpp"

namespace {

using eqspectre::GameVariant;
using eqspectre::OutputFormat;
using eqspectre::RunConfig;

void add_common_flags(CLI::App* cmd, RunConfig& config, std::string& variant,
                      std::string& mode, std::string& format) {
  cmd->add_flag("--weak", config.weak,
                "saturate with the closure of internal steps first");
  cmd->add_option("--variant", variant, "game variant")
      ->check(CLI::IsMember({"full", "clever"}));
  cmd->add_option("--mode", mode, "budget mode")
      ->check(CLI::IsMember({"exact", "capped"}));
  cmd->add_option("--cap", config.cap, "bound for capped mode (default 3)");
  cmd->add_option("--format", format, "output format")
      ->check(CLI::IsMember({"text", "json", "csv"}));
  cmd->add_option("--jobs", config.jobs, "parallel pair solves");
  cmd->add_option("--limit-positions", config.limits.max_positions,
                  "abort when the game exceeds this many positions");
  cmd->add_option("--timeout", config.limits.timeout_s,
                  "abort a solve after this many seconds");
  cmd->add_option("--names", config.names_path,
                  "sidecar name map (name<TAB>id lines)");
}

void apply_common(RunConfig& config, const std::string& variant,
                  const std::string& mode, const std::string& format) {
  if (variant == "full") config.variant = GameVariant::kFull;
  if (variant == "clever") config.variant = GameVariant::kClever;
  if (mode == "exact") config.exact_mode = true;
  if (mode == "capped") config.exact_mode = false;
  if (format == "json") config.format = OutputFormat::kJson;
  if (format == "csv") config.format = OutputFormat::kCsv;
  if (format == "text") config.format = OutputFormat::kText;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "eqspectre - decides all behavioral preorders and equivalences of the "
      "strong spectrum between processes of a labeled transition system"};
  app.require_subcommand(1);

  RunConfig config;
  std::string variant, mode, format;
  std::string pair_a, pair_b;
  std::string single_input;

  CLI::App* check = app.add_subcommand(
      "check", "compare two processes (or all pairs) of an .aut system");
  check->add_option("file", single_input, "input .aut file")->required();
  check->add_option("p", pair_a,
                    "first process (id, name, or 'all-pairs')")
      ->required();
  check->add_option("q", pair_b, "second process (id or name)");
  add_common_flags(check, config, variant, mode, format);
  check->add_flag("!--no-quotient", config.quotient,
                  "skip the bisimilarity-quotient preprocessing");
  check->add_option("--require", config.require,
                    "equivalences that must hold for exit code 0")
      ->delimiter(',');

  CLI::App* quotient = app.add_subcommand(
      "quotient", "count (and optionally write) equivalence classes");
  quotient->add_option("file", single_input, "input .aut file")->required();
  quotient->add_option("--notion", config.notion, "E, T, 1S or B")
      ->required();
  quotient->add_option("-o,--out", config.out_path,
                       "write a representative-based quotient .aut");
  add_common_flags(quotient, config, variant, mode, format);

  CLI::App* bench = app.add_subcommand(
      "bench", "CSV benchmark rows for a list of .aut files");
  bench->add_option("files", config.inputs, "input .aut files");
  add_common_flags(bench, config, variant, mode, format);

  CLI::App* dump = app.add_subcommand(
      "game-dump", "dump the reachable game with budgets (json or dot)");
  dump->add_option("file", single_input, "input .aut file")->required();
  dump->add_option("p", pair_a, "first process")->required();
  dump->add_option("q", pair_b, "second process")->required();
  add_common_flags(dump, config, variant, mode, format);
  dump->add_flag("--quotient", config.quotient,
                 "apply the bisimilarity-quotient preprocessing");

  CLI::App* spectrum = app.add_subcommand(
      "spectrum", "print the coordinate table of the notion hierarchy");
  spectrum->add_option("--format", format, "output format")
      ->check(CLI::IsMember({"text", "json"}));

  CLI11_PARSE(app, argc, argv);

  apply_common(config, variant, mode, format);
  config.proc_a = pair_a;
  config.proc_b = pair_b;
  if (!single_input.empty()) config.inputs = {single_input};

  if (check->parsed()) {
    if (pair_a == "all-pairs") {
      config.all_pairs = true;
    } else if (pair_b.empty()) {
      std::cerr << "error: check needs two processes or 'all-pairs'\n";
      return eqspectre::kExitError;
    }
    return eqspectre::run_check(config, std::cout, std::cerr);
  }
  if (quotient->parsed()) {
    return eqspectre::run_quotient(config, std::cout, std::cerr);
  }
  if (bench->parsed()) {
    return eqspectre::run_bench(config, std::cout, std::cerr);
  }
  if (dump->parsed()) {
    // The dump shows the system as given, without quotient preprocessing,
    // unless --quotient is passed; budgets default to exact mode.
    if (!dump->count("--quotient")) config.quotient = false;
    return eqspectre::run_game_dump(config, std::cout, std::cerr);
  }
  if (spectrum->parsed()) {
    return eqspectre::run_spectrum(config, std::cout, std::cerr);
  }
  return eqspectre::kExitError;
}
