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

#ifndef EQSPECTRE_PIPELINE_HPP
#define EQSPECTRE_PIPELINE_HPP

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "eqspectre/spectroscopy.hpp"

namespace eqspectre {

// Exit codes shared by all subcommands.
inline constexpr int kExitOk = 0;
inline constexpr int kExitDistinguished = 1;
inline constexpr int kExitError = 2;
inline constexpr int kExitResourceLimit = 3;

enum class OutputFormat { kText, kJson, kCsv };

struct RunConfig {
  std::vector<std::string> inputs;

  // check / game-dump: processes by id or by name from the name map;
  // "all-pairs" compares every enabledness-compatible pair.
  std::string proc_a;
  std::string proc_b;
  bool all_pairs = false;

  bool weak = false;
  bool quotient = true;     // preprocess with the bisimilarity quotient
  std::optional<GameVariant> variant;
  std::optional<bool> exact_mode;  // unset: capped for verdicts
  EnergyValue cap = 3;
  OutputFormat format = OutputFormat::kText;
  unsigned jobs = 1;
  SolveLimits limits;
  std::string names_path;
  // Equivalences that must hold for exit code 0; empty means all of them.
  std::vector<std::string> require;

  std::string notion;    // quotient subcommand
  std::string out_path;  // quotient subcommand, optional .aut output
};

int run_check(const RunConfig& config, std::ostream& out, std::ostream& err);
int run_quotient(const RunConfig& config, std::ostream& out,
                 std::ostream& err);
int run_bench(const RunConfig& config, std::ostream& out, std::ostream& err);
int run_game_dump(const RunConfig& config, std::ostream& out,
                  std::ostream& err);
int run_spectrum(const RunConfig& config, std::ostream& out,
                 std::ostream& err);

}  // namespace eqspectre

#endif  // EQSPECTRE_PIPELINE_HPP
