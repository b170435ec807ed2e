// Copyright 2026 The hdim Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef HDIM_CLI_HPP
#define HDIM_CLI_HPP

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "hdim/sequences.hpp"

namespace hdim {

struct RunConfig {
  std::string command;  // compute, verify or diagnose
  std::optional<std::string> spec_path;
  std::string family = "sym";
  std::optional<std::size_t> degree;
  std::optional<std::string> degree_formula;
  std::string alpha = "1/2";
  std::size_t levels = 5;
  long precision = kDefaultPrecision;
  std::uint64_t threshold_bits = 1ULL << 20;
  std::uint64_t max_points = kDefaultMaxPoints;
  std::optional<std::string> out;
  std::vector<double> c_list{2.0};
  double a_max = 1e4;
};

/// The sequence named by --spec or by --family with --degree or
/// --degree-formula.
SequenceSpec resolve_sequence(const RunConfig& config);

int cmd_compute(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_verify(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_diagnose(const RunConfig& config, std::ostream& out, std::ostream& err);

/// Parses arguments and dispatches. Returns the process exit code:
/// 0 success, 2 configuration, 3 capacity, 4 infeasible selection,
/// 5 inconsistency or failed verification.
int run_cli(int argc, const char* const* argv, std::ostream& out,
            std::ostream& err);

}  // namespace hdim

#endif  // HDIM_CLI_HPP
