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

#ifndef HDIM_SEQUENCES_HPP
#define HDIM_SEQUENCES_HPP

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "hdim/bignum.hpp"
#include "hdim/ext_real.hpp"
#include "hdim/formula.hpp"
#include "hdim/permgroup.hpp"

namespace hdim {

enum class Family { kSymmetric, kAlternating, kCyclic, kCustom };

/// "sym"/"symmetric", "alt"/"alternating", "cyc"/"cyclic", "custom".
Family parse_family(std::string_view name);
std::string_view family_name(Family f);

/// One transitive group S_k <= Sym(m_k).
struct PermGroupSpec {
  Family family = Family::kSymmetric;
  std::size_t degree = 2;
  std::vector<std::string> generators;  // cycle notation, custom only

  /// Degree bounds and, for custom groups, parse + transitivity.
  void validate() const;
  /// "Sym(5)", "Alt(5)", "C(5)", "custom(5; (1 2 3 4 5))".
  std::string label() const;

  friend bool operator==(const PermGroupSpec&, const PermGroupSpec&) = default;
};

enum class TailRule { kRepeatLast, kFormula };

/// The sequence (S_k)_{k>=1}: an explicit prefix followed by a tail rule.
struct SequenceSpec {
  std::vector<PermGroupSpec> prefix;
  TailRule tail = TailRule::kRepeatLast;
  Family tail_family = Family::kSymmetric;
  std::optional<DegreeFormula> degree_formula;

  static SequenceSpec constant(PermGroupSpec group);
  /// Level k is `family` of degree formula(k) for every k >= 1.
  static SequenceSpec from_formula(Family family, DegreeFormula formula);

  /// The group at level k >= 1. Throws ConfigError if a formula degree is
  /// out of range.
  PermGroupSpec level(std::size_t k) const;

  /// Validates the prefix and every level up to `levels`.
  void validate(std::size_t levels) const;
};

/// Reads the YAML sequence-spec format documented in the README.
SequenceSpec parse_sequence_yaml(std::string_view text);
SequenceSpec load_sequence_file(const std::string& path);

/// symmetric(m): (1 2), (1 2 ... m); alternating(m): (1 2 3) and (1 ... m)
/// for odd m or (2 ... m) for even m; cyclic(m): (1 ... m); custom: parsed.
PermGroup standard_generators(const PermGroupSpec& spec);

/// |S|; custom groups are enumerated under `cap`.
BigNat group_order(const PermGroupSpec& spec,
                   std::uint64_t cap = kDefaultEnumerationCap);

/// ln |S|.
ExtReal log_order(const PermGroupSpec& spec, long precision = kDefaultPrecision,
                  std::uint64_t cap = kDefaultEnumerationCap);

/// Memoized per-level data for a sequence.
class LevelCatalog {
 public:
  struct Entry {
    PermGroupSpec spec;
    PermGroup group;
    BigNat order;
    ExtReal log_order;
  };

  LevelCatalog(const SequenceSpec& seq, long precision,
               std::uint64_t cap = kDefaultEnumerationCap);

  const Entry& at(std::size_t k);

 private:
  const SequenceSpec& seq_;
  long precision_;
  std::uint64_t cap_;
  std::map<std::string, Entry> by_label_;
};

struct GoodnessReport {
  bool is_good = false;
  /// Least feasible A over the checked horizon (at least 1).
  ExtReal a_constant;
  std::size_t m0 = 1;
  /// First k with log|S_k| > a_max * log|S_{k+1}|.
  std::optional<std::size_t> counterexample;
  /// The tail rule was decided analytically.
  bool analytic_tail = false;
  bool horizon_limited = true;
  std::size_t horizon = 0;
  /// ratios[k-1] = log|S_k| / log|S_{k+1}| for k = 1 .. horizon-1.
  std::vector<double> ratios;
};

struct GoodnessOptions {
  long precision = kDefaultPrecision;
  double a_max = 1e4;
  std::uint64_t cap = kDefaultEnumerationCap;
};

/// Decides |S_k| <= |S_{k+1}|^A for k >= M0 = 1. repeat-last tails are
/// settled analytically (ratio 1 beyond the prefix); formula tails are
/// scanned up to `horizon` and flagged horizon-limited.
GoodnessReport goodness_check(const SequenceSpec& seq, std::size_t horizon,
                              const GoodnessOptions& options = {});

}  // namespace hdim

#endif  // HDIM_SEQUENCES_HPP
