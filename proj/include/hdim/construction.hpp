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

#ifndef HDIM_CONSTRUCTION_HPP
#define HDIM_CONSTRUCTION_HPP

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "hdim/bignum.hpp"
#include "hdim/ext_real.hpp"
#include "hdim/magnitude.hpp"
#include "hdim/permgroup.hpp"
#include "hdim/sequences.hpp"

namespace hdim {

/// One level of the (c_n, o_n, e_n) recursion.
struct LayerParams {
  std::size_t level = 0;
  std::size_t m = 0;        // m_n
  ExtReal log_order;        // ln |S_n|
  Magnitude mtilde_prev;    // m~_{n-1}, with m~_0 = 1
  std::optional<Magnitude> e;  // e_n = floor(alpha c_{n-1}) o_{n-1}, n >= 2
  Magnitude c;
  Magnitude o;
  Magnitude mtilde;         // m~_n
  Magnitude floor_term;     // floor(alpha c_n)
  /// {alpha c_n}, known whenever c_n is exact.
  std::optional<Rational> frac_term;
  bool exact = true;        // c_n, o_n and m~_n are all exact
  /// Accumulated relative error from dropped floors on the log path.
  ExtReal error_bound;
};

/// Levels 1..levels of the recursion c_1 = m_1, o_1 = 1,
///   c_{n+1} = m_{n+1}^(m~_n - e_{n+1}),  o_{n+1} = m_{n+1}^e_{n+1}.
std::vector<LayerParams> layer_recursion(const SequenceSpec& seq,
                                         const Rational& alpha,
                                         std::size_t levels,
                                         const ArithConfig& cfg = {});

/// A level built as explicit permutations of the product domain.
struct ExplicitLayer {
  std::size_t level = 0;
  ProductDomain domain;                   // the domain of level n
  PermGroup base;                         // S_n
  std::vector<Point> support;             // O_{n-1}: coordinates carrying K_n
  std::vector<Permutation> k_generators;  // K_n
  std::vector<Permutation> h_generators;  // H_n
  OrbitPartition partition;               // K_n orbits
  std::vector<std::size_t> selected;      // orbit indices forming O_n
  std::vector<Point> selected_points;     // O_n, ascending
};

struct ExplicitResult {
  std::vector<ExplicitLayer> layers;
  bool truncated = false;
  /// Level that could not be built, when truncated.
  std::size_t truncated_level = 0;
  std::string truncation_reason;
};

/// Builds levels 1, 2, ... while the domain has at most `max_points` points
/// (and at most `max_levels` levels when nonzero). Level 1 has trivial K and
/// O_1 = the floor(alpha m_1) smallest points. Throws SelectionInfeasible if
/// no invariant union of the required size exists.
ExplicitResult explicit_layers(const SequenceSpec& seq, const Rational& alpha,
                               std::uint64_t max_points = kDefaultMaxPoints,
                               std::size_t max_levels = 0);

/// A union of exactly `count` orbits invariant under `h_generators`. Orbit
/// labels are grouped into blocks under the induced action, blocks are taken
/// greedily by ascending minimal point, and the search backtracks when the
/// count cannot be hit. Returns ascending orbit indices.
std::vector<std::size_t> select_invariant_orbit_union(
    const OrbitPartition& partition, std::size_t count,
    std::span<const Permutation> h_generators);

struct PropertyCheck {
  std::string name;
  bool passed = false;
  bool skipped = false;
  std::string detail;
};

struct VerificationReport {
  std::size_t level = 0;
  std::vector<PropertyCheck> checks;

  bool all_passed() const;
};

struct VerifyOptions {
  /// |H_n| from the order formula; enumeration is skipped when absent.
  std::optional<BigNat> expected_order;
  /// Enumerate only while |H_n| * degree stays below this.
  std::uint64_t enumeration_budget = 1ULL << 26;
  /// Skip the normalization check past this many point visits.
  std::uint64_t normalization_budget = 1ULL << 28;
};

/// Checks orbit count and size against (c_n, o_n), c_n o_n = m~_n, the
/// invariance of O_n under H_n, the order of H_n (optional) and that H_n
/// normalizes K_n.
VerificationReport verify_layer(const ExplicitLayer& layer,
                                const LayerParams& params,
                                const VerifyOptions& options = {});

/// prod_{j=2..n} |S_j|^e_j, or nothing if the result would exceed `max_bits`.
std::optional<BigNat> h_order_formula(std::span<const LayerParams> layers,
                                      const SequenceSpec& seq, std::size_t n,
                                      std::uint64_t max_bits = 1ULL << 16);

/// YAML export: generators in cycle notation, orbits and the selection.
std::string export_layers_yaml(const ExplicitResult& result,
                               bool with_orbits = true);

}  // namespace hdim

#endif  // HDIM_CONSTRUCTION_HPP
