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

#include <cmath>
#include <random>

#include "hdim/bignum.hpp"
#include "hdim/errors.hpp"
#include "hdim/ext_real.hpp"
#include "hdim/magnitude.hpp"

namespace hdim {
namespace {

const long kP = kDefaultPrecision;

ExtReal tol(long p = kP) { return ExtReal::pow2(-(p - 16), p); }

ExtReal lnz(const BigNat& n) { return log(ExtReal::from_integer(n)); }

BigNat random_big(std::mt19937_64& rng, unsigned bits) {
  BigNat r = 0;
  for (unsigned i = 0; i < bits; i += 64) {
    r <<= 64;
    r += BigNat(std::to_string(rng()));
  }
  mpz_fdiv_r_2exp(r.get_mpz_t(), r.get_mpz_t(), bits);
  return r;
}

TEST(Rational, ParsesAndCanonicalizes) {
  EXPECT_EQ(Rational::parse("2/4"), Rational(1, 2));
  EXPECT_EQ(Rational::parse("3"), Rational(3, 1));
  EXPECT_EQ(Rational::parse("0/7").str(), "0/1");
  EXPECT_EQ(Rational::parse("-6/9").str(), "-2/3");
  EXPECT_THROW(Rational::parse("1/0"), ConfigError);
  EXPECT_THROW(Rational::parse("0.5"), ConfigError);
  EXPECT_THROW(Rational::parse(""), ConfigError);
  EXPECT_LT(Rational(1, 3), Rational(1, 2));
}

TEST(BigNat, BitLengthAndDecimal) {
  EXPECT_EQ(bit_length(BigNat(0)), 0u);
  EXPECT_EQ(bit_length(BigNat(1)), 1u);
  EXPECT_EQ(bit_length(BigNat(256)), 9u);
  EXPECT_EQ(to_decimal(BigNat("123456789012345678901234567890")),
            "123456789012345678901234567890");
}

TEST(ExtReal, FlatArithmetic) {
  const ExtReal a(3.0), b(4.0);
  EXPECT_EQ((a + b).to_double(), 7.0);
  EXPECT_EQ((a - b).to_double(), -1.0);
  EXPECT_EQ((a * b).to_double(), 12.0);
  EXPECT_EQ((a / b).to_double(), 0.75);
  EXPECT_NEAR(log(b).to_double(), std::log(4.0), 1e-15);
  EXPECT_NEAR(exp(a).to_double(), std::exp(3.0), 1e-12);
  EXPECT_TRUE((a - a).is_zero());
  EXPECT_EQ(ExtReal(0.1).str(), "0.1");
  EXPECT_EQ(ExtReal(-2.5).str(), "-2.5");
}

TEST(ExtReal, TowersRoundTrip) {
  const ExtReal x(100.0);
  const ExtReal big = exp(exp(x));
  EXPECT_EQ(big.depth(), 1);
  EXPECT_TRUE(relative_close(log(log(big)), x, tol()));
  EXPECT_EQ(big.to_double(), HUGE_VAL);
  // ln(2 big) - ln(big) = ln 2.
  EXPECT_NEAR((log(big + big) - log(big)).to_double(), std::log(2.0), 1e-15);
  const ExtReal tiny = ExtReal(1.0) / big;
  EXPECT_TRUE(tiny.is_reciprocal());
  EXPECT_EQ(tiny.to_double(), 0.0);
  EXPECT_TRUE(relative_close(tiny * big, ExtReal(1.0), tol()));
  EXPECT_LT(tiny, ExtReal(1e-300));
  EXPECT_GT(big, ExtReal(1e300));
  EXPECT_EQ(big.str(), "exp(" + exp(x).str() + ")");
}

TEST(ExtReal, NegligibleTermsVanish) {
  const ExtReal t = exp(ExtReal(1e9));
  EXPECT_TRUE((t - t).is_zero());
  EXPECT_EQ(t + ExtReal(1.0), t);
  EXPECT_TRUE(relative_close(t / (t + ExtReal(1.0)), ExtReal(1.0), tol()));
}

TEST(ExtReal, DeepTowersCompare) {
  ExtReal a(10.0), b(11.0);
  for (int i = 0; i < 6; ++i) {
    a = exp(a);
    b = exp(b);
  }
  EXPECT_LT(a, b);
  EXPECT_LT(-b, -a);
  EXPECT_LT(ExtReal(1.0) / b, ExtReal(1.0) / a);
  ExtReal back = b;
  for (int i = 0; i < 6; ++i) back = log(back);
  EXPECT_NEAR(back.to_double(), 11.0, 1e-12);
}

TEST(Magnitude, FloorMulExamples) {
  ArithConfig cfg;
  EXPECT_EQ(floor_mul(Rational(1, 2), Magnitude::exact(5), cfg).value.value(), 2);
  EXPECT_EQ(floor_mul(Rational(1, 3), Magnitude::exact(2), cfg).value.value(), 0);
  EXPECT_EQ(floor_mul(Rational(1, 2), Magnitude::exact(4096), cfg).value.value(),
            2048);
  // Same value through the log path.
  const FloorResult lr =
      floor_mul(Rational(1, 2), Magnitude::log_of(ExtReal::log_of(4096)), cfg);
  EXPECT_FALSE(lr.value.is_exact());
  EXPECT_TRUE(relative_close(lr.value.stored_log(), ExtReal::log_of(2048),
                             ExtReal::pow2(-250)));
  EXPECT_THROW(floor_mul(Rational(3, 2), Magnitude::exact(4), cfg), DomainError);
  EXPECT_THROW(floor_mul(Rational(-1, 2), Magnitude::exact(4), cfg), DomainError);
}

TEST(Magnitude, FloorMulLogBoundCoversTheFloor) {
  std::mt19937_64 rng(7);
  ArithConfig cfg;
  for (int i = 0; i < 200; ++i) {
    const BigNat x = random_big(rng, 80) + 1000;
    const Rational a(1 + static_cast<long>(rng() % 9), 10);
    const BigNat exact = floor_mul(a, Magnitude::exact(x), cfg).value.value();
    const FloorResult lr = floor_mul(a, Magnitude::log_of(lnz(x)), cfg);
    // |approx - floor| / floor <= bound.
    const ExtReal approx = exp(lr.value.stored_log());
    const ExtReal fl = ExtReal::from_integer(exact);
    EXPECT_LE(abs(approx - fl) / fl, lr.rel_error * ExtReal(1.0 + 1e-9));
  }
}

TEST(Magnitude, PowExamples) {
  ArithConfig cfg;
  EXPECT_EQ(mag_pow(2, Magnitude::exact(4), cfg).value(), 16);
  const Magnitude p = mag_pow(5, Magnitude::exact(3125), cfg);
  ASSERT_TRUE(p.is_exact());
  BigNat want;
  mpz_ui_pow_ui(want.get_mpz_t(), 5, 3125);
  EXPECT_EQ(p.value(), want);
  EXPECT_EQ(to_decimal(p.value()).size(), 2185u);
  // With a small threshold the same power is a logarithm.
  ArithConfig small;
  small.threshold_bits = 1000;
  const Magnitude q = mag_pow(5, Magnitude::exact(3125), small);
  ASSERT_FALSE(q.is_exact());
  EXPECT_TRUE(relative_close(q.stored_log(),
                             ExtReal(3125.0) * ExtReal::log_of(5), tol()));
  const Magnitude r = mag_pow(2, Magnitude::log_of(ExtReal::log_of(65536)), cfg);
  EXPECT_TRUE(relative_close(r.stored_log(),
                             ExtReal(65536.0) * ExtReal::ln2(), tol()));
  EXPECT_EQ(mag_pow(7, Magnitude::exact(0), cfg).value(), 1);
  EXPECT_THROW(mag_pow(1, Magnitude::exact(3), cfg), DomainError);
}

TEST(Magnitude, SubExponentExamples) {
  ArithConfig cfg;
  EXPECT_EQ(mag_sub_exponent(Magnitude::exact(16), Magnitude::exact(8), cfg)
                .value(),
            8);
  EXPECT_EQ(
      mag_sub_exponent(Magnitude::exact(4), Magnitude::exact(2), cfg).value(),
      2);
  const ExtReal lm = ExtReal(1e6);
  const Magnitude r = mag_sub_exponent(
      Magnitude::log_of(lm), Magnitude::log_of(lm + log(ExtReal(0.5))), cfg);
  EXPECT_TRUE(relative_close(r.stored_log(), lm + log(ExtReal(0.5)),
                             ExtReal::pow2(-(kP - 8))));
  EXPECT_THROW(
      mag_sub_exponent(Magnitude::exact(4), Magnitude::exact(5), cfg),
      InconsistencyError);
  EXPECT_THROW(mag_sub_exponent(Magnitude::log_of(lm),
                                Magnitude::log_of(lm + ExtReal(1.0)), cfg),
               InconsistencyError);
}

TEST(Magnitude, LogSumExamples) {
  EXPECT_TRUE(relative_close(log_sum_accumulate(ExtReal(0.0), ExtReal::ln2()),
                             ExtReal::log_of(3), tol()));
  EXPECT_EQ(log_sum_accumulate(std::nullopt, ExtReal::log_of(7)),
            ExtReal::log_of(7));
  // ln(2^10000 + 2^9000) against the exact integer sum.
  BigNat a, b;
  mpz_ui_pow_ui(a.get_mpz_t(), 2, 10000);
  mpz_ui_pow_ui(b.get_mpz_t(), 2, 9000);
  const ExtReal got = log_sum_accumulate(lnz(a), lnz(b));
  EXPECT_TRUE(relative_close(got, lnz(a + b), tol()));
  // A gap the working precision can see.
  BigNat c, d;
  mpz_ui_pow_ui(c.get_mpz_t(), 2, 300);
  mpz_ui_pow_ui(d.get_mpz_t(), 2, 200);
  const ExtReal got2 = log_sum_accumulate(lnz(c), lnz(d));
  EXPECT_TRUE(relative_close(got2, lnz(c + d), tol()));
  EXPECT_GT(got2, lnz(c));
}

TEST(Magnitude, PromotionAndRepr) {
  ArithConfig cfg;
  cfg.threshold_bits = 64;
  BigNat big;
  mpz_ui_pow_ui(big.get_mpz_t(), 2, 100);
  const Magnitude m = promote(Magnitude::exact(big), cfg);
  EXPECT_FALSE(m.is_exact());
  EXPECT_EQ(m.repr(), "log2≈100");
  EXPECT_EQ(Magnitude::exact(12345).repr(), "12345");
  EXPECT_EQ(compare(Magnitude::exact(big), m), 0);
  EXPECT_THROW(Magnitude::log_of(ExtReal(-1.0)), DomainError);
  ArithConfig bad;
  bad.precision = 32;
  EXPECT_THROW(bad.validate(), ConfigError);
}

// Property suites over random inputs below the promotion threshold.

TEST(Properties, FloorMulMonotone) {
  std::mt19937_64 rng(11);
  ArithConfig cfg;
  for (int i = 0; i < 10000; ++i) {
    BigNat x = random_big(rng, 1 + rng() % 200);
    BigNat y = random_big(rng, 1 + rng() % 200);
    if (x > y) std::swap(x, y);
    const Rational a(static_cast<long>(rng() % 101), 100);
    EXPECT_LE(floor_mul(a, Magnitude::exact(x), cfg).value.value(),
              floor_mul(a, Magnitude::exact(y), cfg).value.value());
  }
}

TEST(Properties, PowIsAdditiveInTheExponent) {
  std::mt19937_64 rng(13);
  ArithConfig cfg;
  ArithConfig logcfg;
  logcfg.threshold_bits = 1;
  for (int i = 0; i < 2000; ++i) {
    const unsigned long b = 2 + rng() % 30;
    const BigNat x = 1 + rng() % 2000, y = 1 + rng() % 2000;
    const Magnitude px = mag_pow(b, Magnitude::exact(x), cfg);
    const Magnitude py = mag_pow(b, Magnitude::exact(y), cfg);
    const Magnitude pxy = mag_pow(b, Magnitude::exact(x + y), cfg);
    ASSERT_TRUE(px.is_exact() && py.is_exact() && pxy.is_exact());
    EXPECT_EQ(px.value() * py.value(), pxy.value());
    const Magnitude lx = mag_pow(b, Magnitude::exact(x), logcfg);
    const Magnitude ly = mag_pow(b, Magnitude::exact(y), logcfg);
    const Magnitude lxy = mag_pow(b, Magnitude::exact(x + y), logcfg);
    EXPECT_TRUE(relative_close(lx.log() + ly.log(), lxy.log(), tol()));
  }
}

TEST(Properties, ExactAndLogPathsAgree) {
  std::mt19937_64 rng(17);
  ArithConfig cfg;
  for (int i = 0; i < 3000; ++i) {
    // floor_mul on multiples of the denominator, where no floor is dropped.
    const long den = 1 + static_cast<long>(rng() % 50);
    const Rational a(static_cast<long>(rng() % den) + 1, den);
    const BigNat x = (random_big(rng, 300) + 1) * a.den();
    const BigNat ex = floor_mul(a, Magnitude::exact(x), cfg).value.value();
    const FloorResult lg = floor_mul(a, Magnitude::log_of(lnz(x)), cfg);
    EXPECT_TRUE(relative_close(lg.value.stored_log(), lnz(ex), tol()));

    // mag_sub_exponent on mt > e.
    const BigNat mt = random_big(rng, 400) + 2;
    const BigNat e = 1 + random_big(rng, 390) % (mt - 1);
    const BigNat d = mag_sub_exponent(Magnitude::exact(mt), Magnitude::exact(e),
                                      cfg)
                         .value();
    const Magnitude ld = mag_sub_exponent(Magnitude::log_of(lnz(mt)),
                                          Magnitude::log_of(lnz(e)), cfg);
    if (e * 2 < mt) {  // away from cancellation
      EXPECT_TRUE(relative_close(ld.stored_log(), lnz(d), tol()));
    }
  }
}

TEST(Properties, LogSumCommutativeAndAssociative) {
  std::mt19937_64 rng(19);
  std::uniform_real_distribution<double> u(-50.0, 5000.0);
  for (int i = 0; i < 10000; ++i) {
    const ExtReal a(u(rng)), b(u(rng)), c(u(rng));
    EXPECT_TRUE(relative_close(log_sum_accumulate(a, b),
                               log_sum_accumulate(b, a), tol()));
    const ExtReal left = log_sum_accumulate(log_sum_accumulate(a, b), c);
    const ExtReal right = log_sum_accumulate(a, log_sum_accumulate(b, c));
    EXPECT_TRUE(relative_close(left, right, tol()));
  }
}

}  // namespace
}  // namespace hdim
