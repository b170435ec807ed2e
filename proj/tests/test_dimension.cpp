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

#include <gtest/gtest.h>

#include <charconv>
#include <cmath>
#include <sstream>

#include "hdim/dimension.hpp"
#include "hdim/errors.hpp"
#include "oracles.hpp"

namespace hdim {
namespace {

SequenceSpec constant(Family f, std::size_t m) {
  PermGroupSpec s;
  s.family = f;
  s.degree = m;
  return SequenceSpec::constant(s);
}

DimensionTrace trace_for(const SequenceSpec& seq, long num, long den,
                         std::size_t levels) {
  const Rational a(num, den);
  return dimension_trace(layer_recursion(seq, a, levels), a);
}

std::string shortest(double v) {
  char buf[64];
  auto r = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, r.ptr);
}

// Least M >= 2 with C x_{n-1} <= x_n for every n in [M, last], over an exact
// series indexed from 1.
std::optional<std::size_t> oracle_threshold(const std::vector<mpz_class>& x,
                                            long c) {
  const std::size_t last = x.size();
  std::optional<std::size_t> m;
  for (std::size_t n = last; n >= 2; --n) {
    if (c * x[n - 2] <= x[n - 1]) {
      m = n;
    } else {
      break;
    }
  }
  if (last < 2) m = 2;
  return m;
}

TEST(Trace, ConstantSequencesMatchOracle) {
  struct Case {
    Family f;
    unsigned long m;
    std::size_t levels;
  };
  for (Case cs : {Case{Family::kSymmetric, 2, 5}, Case{Family::kAlternating, 5, 3},
                  Case{Family::kSymmetric, 3, 3}, Case{Family::kCyclic, 7, 2}}) {
    for (auto [num, den] :
         {std::pair{0L, 1L}, {1, 3}, {1, 2}, {2, 3}, {1, 10}, {1, 1}}) {
      const DimensionTrace t = trace_for(constant(cs.f, cs.m), num, den, cs.levels);
      const auto want =
          oracle::constant_dimensions(oracle::constant_recursion(cs.m, num, den, cs.levels));
      for (std::size_t n = 0; n < cs.levels; ++n) {
        ASSERT_TRUE(t.rows[n].exact_d.has_value());
        EXPECT_EQ(t.rows[n].exact_d->value(), want[n]) << n;
        EXPECT_DOUBLE_EQ(t.rows[n].d, want[n].get_d());
        EXPECT_GE(t.rows[n].d, 0.0);
        EXPECT_LE(t.rows[n].d, 1.0);
        if (!std::isnan(t.rows[n].d_direct)) {
          EXPECT_NEAR(t.rows[n].d_direct, want[n].get_d(), 1e-14);
        }
      }
    }
  }
}

TEST(Trace, NamedExamples) {
  const DimensionTrace h = trace_for(constant(Family::kSymmetric, 2), 1, 2, 5);
  EXPECT_EQ(h.rows[1].exact_d->str(), "1/3");
  EXPECT_EQ(h.rows[2].exact_d->str(), "3/7");
  EXPECT_EQ(h.rows[3].exact_d->str(), "11/23");
  EXPECT_EQ(h.rows[4].exact_d->str(), "32779/65559");
  const DimensionTrace t = trace_for(constant(Family::kSymmetric, 2), 1, 3, 5);
  EXPECT_EQ(t.rows[3].exact_d->str(), "5/23");
  EXPECT_EQ(t.rows[4].exact_d->str(), "21845/65559");
  EXPECT_FALSE(t.rows[1].log_b.has_value());  // floor(2/3) = 0
  const DimensionTrace a = trace_for(constant(Family::kAlternating, 5), 1, 2, 3);
  EXPECT_EQ(a.rows[1].exact_d->str(), "1/3");
  EXPECT_EQ(a.rows[2].exact_d->str(), "1552/3131");
}

TEST(Trace, Endpoints) {
  const DimensionTrace z = trace_for(constant(Family::kAlternating, 5), 0, 1, 5);
  for (const auto& r : z.rows) {
    EXPECT_EQ(r.d, 0.0);
    EXPECT_FALSE(r.log_b.has_value());
  }
  const DimensionTrace f = trace_for(constant(Family::kSymmetric, 2), 1, 1, 6);
  EXPECT_GT(f.rows[5].d, f.rows[4].d);
  EXPECT_LT(f.rows[5].residual.to_double(), 1e-4000 + 1e-300);
  EXPECT_EQ(f.rows[0].d, 0.0);
}

TEST(Trace, BIsAtMostAlphaA) {
  const ExtReal slack = ExtReal::pow2(-(kDefaultPrecision - 16));
  for (auto [num, den] : {std::pair{1L, 3L}, {1, 2}, {9, 10}}) {
    for (auto seq : {constant(Family::kSymmetric, 2), constant(Family::kAlternating, 5),
                     SequenceSpec::from_formula(Family::kSymmetric,
                                                DegreeFormula::parse("k+2"))}) {
      const DimensionTrace t = trace_for(seq, num, den, 7);
      const ExtReal log_alpha = log(ExtReal::from_rational(Rational(num, den)));
      for (const auto& r : t.rows) {
        if (!r.log_b) continue;
        const ExtReal rhs = log_alpha + r.log_a;
        if (rhs.depth() > 0) {
          // Logs this large only carry relative precision.
          EXPECT_TRUE(*r.log_b <= rhs || relative_close(*r.log_b, rhs, slack))
              << r.level;
        } else {
          EXPECT_LE(*r.log_b - rhs, slack + abs(rhs) * slack) << r.level;
        }
      }
    }
  }
}

TEST(Trace, DeepLevelsStayFinite) {
  const DimensionTrace t = trace_for(constant(Family::kSymmetric, 2), 1, 2, 10);
  for (std::size_t n = 5; n < 10; ++n) {
    EXPECT_TRUE(std::isfinite(t.rows[n].d));
    EXPECT_LT(t.rows[n].residual, t.rows[n - 1].residual);
  }
  EXPECT_LT(t.rows[9].residual.to_double(), 1e-6);
}

TEST(Growth, Sym2Tower) {
  const auto L = layer_recursion(constant(Family::kSymmetric, 2), Rational(1, 2), 4);
  const std::vector<double> cs{2.0};
  const GrowthReport g = growth_diagnostics(L, cs);
  const auto W = oracle::constant_recursion(2, 1, 2, 4);
  ASSERT_EQ(g.ratios.size(), 3u);
  for (std::size_t i = 0; i < 3; ++i) {
    const mpq_class r(W.mt[i], W.mt[i + 1]);
    EXPECT_EQ(g.ratios[i].to_double(), r.get_d());
  }
  EXPECT_EQ(g.thresholds[0].m, oracle_threshold(W.mt, 2));
  EXPECT_EQ(g.thresholds[0].m, std::optional<std::size_t>(2));
}

TEST(Growth, Alt5LargeConstant) {
  const std::vector<double> cs{1e6};
  const auto L3 = layer_recursion(constant(Family::kAlternating, 5), Rational(1, 2), 3);
  const auto W = oracle::constant_recursion(5, 1, 2, 3);
  EXPECT_EQ(growth_diagnostics(L3, cs).thresholds[0].m,
            oracle_threshold(W.mt, 1000000));
  const auto L5 = layer_recursion(constant(Family::kAlternating, 5), Rational(1, 2), 5);
  EXPECT_EQ(growth_diagnostics(L5, cs).thresholds[0].m,
            oracle_threshold(W.mt, 1000000));
}

TEST(Claims, LimitTwoPerLevel) {
  for (auto [num, den] : {std::pair{1L, 3L}, {1, 2}}) {
    const DimensionTrace t = trace_for(constant(Family::kSymmetric, 2), num, den, 4);
    const auto W = oracle::constant_recursion(2, num, den, 5);
    const std::vector<double> cs{2.0};
    const ClaimReport r = claim_diagnostics(t, cs);
    for (std::size_t n = 0; n < 4; ++n) {
      // floor(alpha c_n) o_n / mt_n = e_{n+1} / mt_n.
      const mpq_class want(W.e[n + 1], W.mt[n]);
      EXPECT_EQ(r.rows[n].limit2.to_double(), want.get_d()) << n;
    }
  }
}

TEST(Claims, SumOfBOverLastB) {
  const DimensionTrace t = trace_for(constant(Family::kSymmetric, 2), 1, 2, 5);
  const auto W = oracle::constant_recursion(2, 1, 2, 5);
  mpz_class sum = 0;
  for (std::size_t k = 1; k < 5; ++k) sum += W.e[k];
  const mpq_class excess = mpq_class(sum, W.e[4]) - 1;
  const std::vector<double> cs{2.0};
  const ClaimReport r = claim_diagnostics(t, cs);
  ASSERT_TRUE(r.rows[4].limit1_excess.has_value());
  EXPECT_NEAR(r.rows[4].limit1_excess->to_double(), excess.get_d(),
              1e-15 * excess.get_d());
  EXPECT_EQ(excess, mpq_class(11, 32768));
}

TEST(Claims, ThresholdsAndInequalities) {
  for (auto [seq, levels] : {std::pair{constant(Family::kSymmetric, 2), std::size_t{5}},
                             {constant(Family::kAlternating, 5), std::size_t{3}}}) {
    const DimensionTrace t = trace_for(seq, 1, 2, levels);
    const std::vector<double> cs{2.0, 3.0};
    const ClaimReport r = claim_diagnostics(t, cs);
    // a'_k / ln|S| = mt_{k-1}, with mt_0 = 1.
    const unsigned long m = seq.level(1).degree;
    const auto W = oracle::constant_recursion(m, 1, 2, levels);
    std::vector<mpz_class> a{1};
    for (std::size_t k = 1; k < levels; ++k) a.push_back(W.mt[k - 1]);
    EXPECT_EQ(r.thresholds[0].m, oracle_threshold(a, 2));
    EXPECT_EQ(r.thresholds[1].m, oracle_threshold(a, 3));
    ASSERT_TRUE(r.m2 && r.m_hat);
    EXPECT_EQ(*r.m2, *oracle_threshold(a, 2));
    const auto mm = oracle_threshold(a, static_cast<long>(*r.m2));
    EXPECT_EQ(*r.m_hat, std::max(*r.m2 + 1, *mm));
    for (const auto& c : r.checks) EXPECT_TRUE(c.passed) << c.name;
    EXPECT_FALSE(r.advisory);
  }
}

TEST(Csv, ColumnsAndDeterminism) {
  const DimensionTrace t = trace_for(constant(Family::kSymmetric, 2), 1, 2, 5);
  const std::string csv = trace_csv(t);
  EXPECT_EQ(csv, trace_csv(trace_for(constant(Family::kSymmetric, 2), 1, 2, 5)));
  std::istringstream in(csv);
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line,
            "n,m_n,mtilde_prev,c_n,o_n,floor_term,log2_b_n,log2_a_n,D_n,"
            "residual,error_bound");
  std::vector<std::vector<std::string>> rows;
  while (std::getline(in, line)) {
    std::vector<std::string> cols;
    std::istringstream ls(line);
    for (std::string c; std::getline(ls, c, ',');) cols.push_back(c);
    if (line.back() == ',') cols.emplace_back();
    ASSERT_EQ(cols.size(), 11u) << line;
    rows.push_back(cols);
  }
  ASSERT_EQ(rows.size(), 5u);
  const auto W = oracle::constant_recursion(2, 1, 2, 5);
  const double log2_ln2 = std::log2(std::log(2.0));
  for (std::size_t n = 0; n < 5; ++n) {
    const auto& r = rows[n];
    EXPECT_EQ(r[0], std::to_string(n + 1));
    EXPECT_EQ(r[1], "2");
    EXPECT_EQ(r[2], n == 0 ? "1" : W.mt[n - 1].get_str());
    EXPECT_EQ(r[3], W.c[n].get_str());
    EXPECT_EQ(r[4], W.o[n].get_str());
    // log2 a'_n = log2 mt_{n-1} + log2 ln 2.
    const double la = n == 0 ? 0.0 : std::log2(W.mt[n - 1].get_d());
    EXPECT_NEAR(std::stod(r[7]), la + log2_ln2, 1e-12);
    EXPECT_EQ(r[6].empty(), n == 0);
  }
  EXPECT_EQ(rows[4][8], shortest(32779.0 / 65559.0));  // IEEE division rounds correctly
  EXPECT_EQ(format_double(0.5), "0.5");
  EXPECT_EQ(format_double(1.0 / 3.0), shortest(1.0 / 3.0));
}

}  // namespace
}  // namespace hdim
