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

#ifndef HDIM_DIMENSION_HPP
#define HDIM_DIMENSION_HPP

#include <cstddef>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "hdim/bignum.hpp"
#include "hdim/construction.hpp"
#include "hdim/ext_real.hpp"

namespace hdim {

// The trace keeps a'_n = m~_{n-1} ln|S_n|; the alpha-weighted series
// a_n = alpha a'_n only matters in ratios, where alpha cancels.
struct DimensionRow {
  std::size_t level = 0;
  ExtReal log_a;                  // ln a'_n
  std::optional<ExtReal> log_b;   // ln b_n; absent when b_n = 0 or n = 1
  ExtReal log_sum_a;              // ln sum_{k<=n} a'_k
  std::optional<ExtReal> log_sum_b;  // ln sum_{2<=k<=n} b_k
  /// D_n: the rounded exact fraction when known, else alpha - residual.
  double d = 0.0;
  /// exp(log_sum_b - log_sum_a), the plain quotient; NaN once the
  /// logarithms are too large for their difference to mean anything.
  double d_direct = 0.0;
  /// alpha - D_n >= 0.
  ExtReal residual;
  ExtReal error_bound;
  /// D_n as a fraction when every layer so far is exact and |S_k| is
  /// constant.
  std::optional<Rational> exact_d;
};

struct DimensionTrace {
  Rational alpha;
  std::vector<LayerParams> layers;
  std::vector<DimensionRow> rows;
};

DimensionTrace dimension_trace(std::vector<LayerParams> layers,
                               const Rational& alpha,
                               long precision = kDefaultPrecision);

/// n, m_n, mtilde_prev, c_n, o_n, floor_term, log2_b_n, log2_a_n, D_n,
/// residual, error_bound.
void write_trace_csv(std::ostream& out, const DimensionTrace& trace);
std::string trace_csv(const DimensionTrace& trace);

/// Shortest decimal that reads back as the same double.
std::string format_double(double v);

struct Threshold {
  double c = 0.0;
  /// Least M >= 2 with the inequality holding for all computed n >= M;
  /// absent when it fails at the last computed level.
  std::optional<std::size_t> m;
};

struct GrowthReport {
  /// mtilde_{n-1} / mtilde_n for n = 2..N.
  std::vector<ExtReal> ratios;
  /// C mtilde_{n-1} <= mtilde_n.
  std::vector<Threshold> thresholds;
  bool horizon_limited = true;
};

/// Checks mtilde_n >= n (InconsistencyError otherwise) and scans thresholds.
GrowthReport growth_diagnostics(std::span<const LayerParams> layers,
                                std::span<const double> c_list,
                                long precision = kDefaultPrecision);

struct ClaimRow {
  std::size_t level = 0;
  /// floor(alpha c_n) o_n / mtilde_n and its distance to alpha. On the log
  /// path the distance is the bound 1/c_n.
  ExtReal limit2;
  ExtReal limit2_deviation;
  /// sum_{k<=n} a_k / a_n - 1.
  ExtReal limit11_excess;
  /// sum_{k<=n} b_k / b_n - 1; absent while b_n = 0.
  std::optional<ExtReal> limit1_excess;
  /// a_{n-1} / a_n, n >= 2.
  std::optional<ExtReal> nice3;
};

struct InequalityCheck {
  std::string name;
  std::size_t from_level = 0;
  bool passed = true;
  std::optional<std::size_t> failed_at;
};

struct ClaimReport {
  std::vector<ClaimRow> rows;
  /// C a_{k-1} <= a_k thresholds for the requested C values.
  std::vector<Threshold> thresholds;
  std::optional<std::size_t> m2;     // M(2)
  std::optional<std::size_t> m_hat;  // max{M(2)+1, M(M(2))}
  std::vector<InequalityCheck> checks;
  bool advisory = false;  // sequence not known to be good
};

ClaimReport claim_diagnostics(const DimensionTrace& trace,
                              std::span<const double> c_list,
                              bool sequence_good = true,
                              long precision = kDefaultPrecision);

}  // namespace hdim

#endif  // HDIM_DIMENSION_HPP
