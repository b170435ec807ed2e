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

#include "hdim/dimension.hpp"

#include <charconv>
#include <limits>
#include <sstream>

#include "hdim/errors.hpp"

namespace hdim {

DimensionTrace dimension_trace(std::vector<LayerParams> layers,
                               const Rational& alpha, long precision) {
  if (alpha.sign() < 0 || alpha > Rational(1, 1)) {
    throw DomainError("alpha must lie in [0, 1], got " + alpha.str());
  }
  const long p = precision;
  const ExtReal alpha_x = ExtReal::from_rational(alpha, p);
  DimensionTrace trace;
  trace.alpha = alpha;

  std::optional<ExtReal> sum_a;
  std::optional<ExtReal> sum_b;
  // alpha a'_1 + sum_{k>=2} {alpha c_{k-1}} o_{k-1} ln|S_k|, so that
  // D_n = alpha - numer / sum a'_k without cancellation.
  ExtReal numer(0.0, p);
  bool exact_ok = true;
  BigNat sum_e = 0;
  BigNat sum_mt = 0;

  for (std::size_t i = 0; i < layers.size(); ++i) {
    const LayerParams& layer = layers[i];
    const ExtReal ln_l = log(layer.log_order);
    DimensionRow row;
    row.level = layer.level;
    row.log_a = layer.mtilde_prev.log(p) + ln_l;
    sum_a = log_sum_accumulate(sum_a, row.log_a);
    if (i == 0) {
      numer = alpha_x * layer.log_order;
    } else {
      const LayerParams& prev = layers[i - 1];
      if (layer.e && !layer.e->is_zero()) {
        row.log_b = layer.e->log(p) + ln_l;
        sum_b = log_sum_accumulate(sum_b, *row.log_b);
      }
      if (prev.frac_term && !prev.frac_term->is_zero()) {
        numer += ExtReal::from_rational(*prev.frac_term, p) *
                 prev.o.to_ext(p) * layer.log_order;
      }
    }
    row.log_sum_a = *sum_a;
    row.log_sum_b = sum_b;
    row.residual = numer / exp(*sum_a);
    row.d = alpha.to_double() - row.residual.to_double();
    if (row.d < 0.0) row.d = 0.0;
    row.d_direct = sum_b ? exp(*sum_b - *sum_a).to_double() : 0.0;
    // The difference of two logarithms is noise once they exceed 2^(P/2).
    if (sum_a->depth() > 0 || *sum_a > ExtReal::pow2(p / 2, p)) {
      row.d_direct = std::numeric_limits<double>::quiet_NaN();
    }
    row.error_bound = layer.error_bound;

    exact_ok = exact_ok && layer.exact && layer.mtilde_prev.is_exact() &&
               (!layer.e || layer.e->is_exact()) &&
               layer.log_order == layers.front().log_order;
    if (exact_ok) {
      if (layer.e) sum_e += layer.e->value();
      sum_mt += layer.mtilde_prev.value();
      mpq_class q(sum_e, sum_mt);
      q.canonicalize();
      row.exact_d = Rational(q);
      row.d = ExtReal::from_rational(*row.exact_d, p).to_double();
    }
    trace.rows.push_back(std::move(row));
  }
  trace.layers = std::move(layers);
  return trace;
}

std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

void write_trace_csv(std::ostream& out, const DimensionTrace& trace) {
  out << "n,m_n,mtilde_prev,c_n,o_n,floor_term,log2_b_n,log2_a_n,D_n,"
         "residual,error_bound\n";
  for (std::size_t i = 0; i < trace.rows.size(); ++i) {
    const DimensionRow& row = trace.rows[i];
    const LayerParams& layer = trace.layers[i];
    const long p = row.log_a.precision();
    const ExtReal ln2 = ExtReal::ln2(p);
    out << row.level << ',' << layer.m << ',' << layer.mtilde_prev.repr(p)
        << ',' << layer.c.repr(p) << ',' << layer.o.repr(p) << ','
        << layer.floor_term.repr(p) << ','
        << (row.log_b ? (*row.log_b / ln2).str() : std::string()) << ','
        << (row.log_a / ln2).str() << ',' << format_double(row.d) << ','
        << row.residual.str() << ',' << row.error_bound.str() << '\n';
  }
}

std::string trace_csv(const DimensionTrace& trace) {
  std::ostringstream out;
  write_trace_csv(out, trace);
  return out.str();
}

namespace {

// C * ratio <= 1 with the rounding slack.
bool ratio_ok(double c, const ExtReal& ratio, const ExtReal& one_plus_tol) {
  return ExtReal(c, ratio.precision()) * ratio <= one_plus_tol;
}

std::optional<std::size_t> scan_threshold(std::size_t last,
                                          const auto& holds) {
  if (last < 2) return 2;  // vacuous
  if (!holds(last)) return std::nullopt;
  std::size_t m = last;
  while (m > 2 && holds(m - 1)) --m;
  return m;
}

}  // namespace

GrowthReport growth_diagnostics(std::span<const LayerParams> layers,
                                std::span<const double> c_list,
                                long precision) {
  const long p = precision;
  const ExtReal one_tol = ExtReal(1.0, p) + ExtReal::pow2(-(p - 16), p);
  GrowthReport rep;
  for (const LayerParams& layer : layers) {
    if (compare(layer.mtilde, Magnitude::exact(layer.level), p) < 0) {
      throw InconsistencyError("m~_" + std::to_string(layer.level) + " = " +
                               layer.mtilde.repr(p) + " is below n");
    }
  }
  for (std::size_t i = 1; i < layers.size(); ++i) {
    rep.ratios.push_back(
        exp(layers[i - 1].mtilde.log(p) - layers[i].mtilde.log(p)));
  }
  const std::size_t last = layers.empty() ? 0 : layers.back().level;
  for (double c : c_list) {
    auto holds = [&](std::size_t n) {
      const Magnitude& lo = layers[n - 2].mtilde;
      const Magnitude& hi = layers[n - 1].mtilde;
      if (lo.is_exact() && hi.is_exact()) {
        return mpq_class(c) * lo.value() <= hi.value();
      }
      return ratio_ok(c, rep.ratios[n - 2], one_tol);
    };
    rep.thresholds.push_back({c, scan_threshold(last, holds)});
  }
  return rep;
}

ClaimReport claim_diagnostics(const DimensionTrace& trace,
                              std::span<const double> c_list,
                              bool sequence_good, long precision) {
  const long p = precision;
  const ExtReal tol = ExtReal::pow2(-(p - 16), p);
  const ExtReal one_tol = ExtReal(1.0, p) + tol;
  const ExtReal alpha_x = ExtReal::from_rational(trace.alpha, p);
  ClaimReport rep;
  rep.advisory = !sequence_good;
  const auto& rows = trace.rows;
  const auto& layers = trace.layers;
  const std::size_t n_levels = rows.size();

  for (std::size_t i = 0; i < n_levels; ++i) {
    const LayerParams& layer = layers[i];
    ClaimRow row;
    row.level = layer.level;
    if (layer.c.is_exact()) {
      mpq_class v(layer.floor_term.value(), layer.c.value());
      v.canonicalize();
      row.limit2 = ExtReal::from_rational(Rational(v), p);
      mpq_class dev(layer.frac_term->value() / layer.c.value());
      row.limit2_deviation = ExtReal::from_rational(Rational(dev), p);
    } else {
      row.limit2 = alpha_x;
      row.limit2_deviation = exp(-layer.c.log(p));
    }
    row.limit11_excess =
        i == 0 ? ExtReal(0.0, p) : exp(rows[i - 1].log_sum_a - rows[i].log_a);
    if (rows[i].log_b) {
      row.limit1_excess = (i > 0 && rows[i - 1].log_sum_b)
                              ? exp(*rows[i - 1].log_sum_b - *rows[i].log_b)
                              : ExtReal(0.0, p);
    }
    if (i > 0) row.nice3 = exp(rows[i - 1].log_a - rows[i].log_a);
    rep.rows.push_back(std::move(row));
  }

  const std::size_t last = n_levels == 0 ? 0 : rows.back().level;
  auto threshold = [&](double c) {
    auto holds = [&](std::size_t k) {
      return ratio_ok(c, *rep.rows[k - 1].nice3, one_tol);
    };
    return scan_threshold(last, holds);
  };
  for (double c : c_list) rep.thresholds.push_back({c, threshold(c)});
  rep.m2 = threshold(2.0);
  if (rep.m2) {
    const auto mm = threshold(static_cast<double>(*rep.m2));
    if (mm) rep.m_hat = std::max(*rep.m2 + 1, *mm);
  }

  for (const Threshold& t : rep.thresholds) {
    InequalityCheck chk;
    chk.name = "C a_{k-1} <= a_k, C = " + format_double(t.c);
    chk.passed = t.m.has_value();
    chk.from_level = t.m.value_or(last);
    if (!t.m) chk.failed_at = last;
    rep.checks.push_back(std::move(chk));
  }

  // sum_{k=start}^{n-1} a_k / a_n <= bound - 1 for every n >= from, where
  // start is `first_term` or, when that is 0, `from` itself.
  auto partial_check = [&](std::string name, std::optional<std::size_t> from,
                           std::size_t first_term, double bound) {
    InequalityCheck chk;
    chk.name = std::move(name);
    if (!from) {
      chk.passed = false;
      chk.failed_at = last;
      rep.checks.push_back(std::move(chk));
      return;
    }
    chk.from_level = *from;
    const std::size_t start = first_term == 0 ? *from : first_term;
    const ExtReal limit = ExtReal(bound - 1.0, p) * one_tol;
    for (std::size_t n = *from; n <= last; ++n) {
      std::optional<ExtReal> acc;
      for (std::size_t k = start; k < n; ++k) {
        acc = log_sum_accumulate(acc, rows[k - 1].log_a);
      }
      const ExtReal excess =
          acc ? exp(*acc - rows[n - 1].log_a) : ExtReal(0.0, p);
      if (excess > limit) {
        chk.passed = false;
        chk.failed_at = n;
        break;
      }
    }
    rep.checks.push_back(std::move(chk));
  };
  partial_check("sum_{k=M(2)..n} a_k <= 2 a_n", rep.m2, 0, 2.0);
  partial_check("sum_{k=2..n} a_k <= 3 a_n", rep.m_hat, 2, 3.0);
  return rep;
}

}  // namespace hdim
