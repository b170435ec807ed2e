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

#include "hdim/magnitude.hpp"

#include <utility>

#include "hdim/errors.hpp"

namespace hdim {

void ArithConfig::validate() const {
  if (precision < kMinPrecision || precision > kMaxPrecision) {
    throw ConfigError("precision must lie in [" +
                      std::to_string(kMinPrecision) + ", " +
                      std::to_string(kMaxPrecision) + "], got " +
                      std::to_string(precision));
  }
  if (threshold_bits < 1 || threshold_bits > (1ULL << 29)) {
    throw ConfigError("threshold must lie in [1, 2^29] bits");
  }
}

Magnitude Magnitude::exact(BigNat n) {
  if (n < 0) throw DomainError("Magnitude holds non-negative integers");
  Magnitude m;
  m.v_ = std::move(n);
  return m;
}

Magnitude Magnitude::log_of(ExtReal ln_value) {
  if (ln_value.sign() < 0) {
    throw DomainError("Magnitude::log_of expects ln(value) >= 0");
  }
  Magnitude m;
  m.v_ = std::move(ln_value);
  return m;
}

const BigNat& Magnitude::value() const {
  if (!is_exact()) throw InconsistencyError("Magnitude is not exact");
  return std::get<BigNat>(v_);
}

const ExtReal& Magnitude::stored_log() const {
  if (is_exact()) throw InconsistencyError("Magnitude is exact");
  return std::get<ExtReal>(v_);
}

bool Magnitude::is_zero() const {
  return is_exact() && std::get<BigNat>(v_) == 0;
}

ExtReal Magnitude::log(long precision) const {
  if (!is_exact()) return std::get<ExtReal>(v_);
  const BigNat& n = std::get<BigNat>(v_);
  if (n <= 0) throw DomainError("log of a zero Magnitude");
  return hdim::log(ExtReal::from_integer(n, precision));
}

ExtReal Magnitude::to_ext(long precision) const {
  if (is_exact()) return ExtReal::from_integer(std::get<BigNat>(v_), precision);
  return exp(std::get<ExtReal>(v_));
}

std::string Magnitude::repr(long precision) const {
  if (is_exact()) return to_decimal(std::get<BigNat>(v_));
  const ExtReal& l = std::get<ExtReal>(v_);
  return "log2≈" + (l / ExtReal::ln2(std::max(precision, l.precision()))).str();
}

int compare(const Magnitude& a, const Magnitude& b, long precision) {
  if (a.is_exact() && b.is_exact()) {
    const int c = cmp(a.value(), b.value());
    return (c > 0) - (c < 0);
  }
  if (a.is_zero() || b.is_zero()) {
    return static_cast<int>(!a.is_zero()) - static_cast<int>(!b.is_zero());
  }
  return compare(a.log(precision), b.log(precision));
}

Magnitude promote(Magnitude x, const ArithConfig& cfg) {
  if (x.is_exact() && bit_length(x.value()) > cfg.threshold_bits) {
    return Magnitude::log_of(x.log(cfg.precision));
  }
  return x;
}

FloorResult floor_mul(const Rational& alpha, const Magnitude& x,
                      const ArithConfig& cfg) {
  if (alpha.sign() < 0 || alpha > Rational(1, 1)) {
    throw DomainError("floor_mul: alpha must lie in [0, 1], got " +
                      alpha.str());
  }
  const ExtReal zero(0.0, cfg.precision);
  if (x.is_exact()) {
    BigNat r = alpha.num() * x.value();
    mpz_fdiv_q(r.get_mpz_t(), r.get_mpz_t(), alpha.den().get_mpz_t());
    return {Magnitude::exact(std::move(r)), zero};
  }
  if (alpha.is_zero()) return {Magnitude::exact(0UL), zero};
  if (alpha.is_one()) return {x, zero};
  const ExtReal ln_ax =
      x.stored_log() + log(ExtReal::from_rational(alpha, cfg.precision));
  if (ln_ax.sign() < 0) return {Magnitude::exact(0UL), zero};
  // floor(y) >= y - 1, so the relative error of y against floor(y) is at
  // most 1/y; add a rounding allowance of 2^-(P-8).
  const ExtReal bound = exp(-ln_ax) + ExtReal::pow2(-(cfg.precision - 8),
                                                    cfg.precision);
  return {Magnitude::log_of(ln_ax), bound};
}

Magnitude mag_pow(unsigned long base, const Magnitude& exp_,
                  const ArithConfig& cfg) {
  if (base < 2) throw DomainError("mag_pow: base must be at least 2");
  const ExtReal ln_base = ExtReal::log_of(base, cfg.precision);
  if (exp_.is_exact()) {
    const BigNat& e = exp_.value();
    if (e == 0) return Magnitude::exact(1UL);
    const std::uint64_t base_bits = bit_length(BigNat(base));
    // base^e has between e*(base_bits-1)+1 and e*base_bits bits.
    if (e.fits_ulong_p() &&
        BigNat(e) * (base_bits - 1) < BigNat(static_cast<unsigned long>(
                                          cfg.threshold_bits))) {
      BigNat r;
      mpz_ui_pow_ui(r.get_mpz_t(), base, e.get_ui());
      return promote(Magnitude::exact(std::move(r)), cfg);
    }
    return Magnitude::log_of(ExtReal::from_integer(e, cfg.precision) * ln_base);
  }
  return Magnitude::log_of(exp(exp_.stored_log()) * ln_base);
}

Magnitude mag_sub_exponent(const Magnitude& mtilde, const Magnitude& e,
                           const ArithConfig& cfg) {
  if (mtilde.is_exact() && e.is_exact()) {
    if (e.value() > mtilde.value()) {
      throw InconsistencyError("mag_sub_exponent: e exceeds m~ (" +
                               e.repr() + " > " + mtilde.repr() + ")");
    }
    return Magnitude::exact(mtilde.value() - e.value());
  }
  if (e.is_zero()) return mtilde;
  if (mtilde.is_zero()) {
    throw InconsistencyError("mag_sub_exponent: e exceeds m~ (m~ = 0)");
  }
  const long p = cfg.precision;
  const ExtReal lm = mtilde.log(p);
  const ExtReal d = e.log(p) - lm;
  // Tolerate rounding noise at equality.
  const ExtReal slack = ExtReal::pow2(-(p - 16), p);
  if (d > slack) {
    throw InconsistencyError("mag_sub_exponent: e exceeds m~ (" + e.repr(p) +
                             " > " + mtilde.repr(p) + ")");
  }
  if (d.sign() >= 0) return Magnitude::exact(0UL);
  const ExtReal one(1.0, p);
  const ExtReal rest = one - exp(d);
  if (rest.sign() <= 0) return Magnitude::exact(0UL);
  return Magnitude::log_of(lm + log(rest));
}

Magnitude mag_mul(const Magnitude& a, const Magnitude& b,
                  const ArithConfig& cfg) {
  if (a.is_zero() || b.is_zero()) return Magnitude::exact(0UL);
  if (a.is_exact() && b.is_exact()) {
    if (bit_length(a.value()) + bit_length(b.value()) - 1 >
        cfg.threshold_bits) {
      return Magnitude::log_of(a.log(cfg.precision) + b.log(cfg.precision));
    }
    return promote(Magnitude::exact(a.value() * b.value()), cfg);
  }
  return Magnitude::log_of(a.log(cfg.precision) + b.log(cfg.precision));
}

Magnitude mag_scale(const Magnitude& x, const ExtReal& factor,
                    const ArithConfig& cfg) {
  if (factor.sign() <= 0) throw DomainError("mag_scale: factor must be > 0");
  if (x.is_zero()) return x;
  const ExtReal l = x.log(cfg.precision) + log(factor);
  if (l.sign() < 0) {
    throw DomainError("mag_scale: result below 1 cannot be a Magnitude");
  }
  return Magnitude::log_of(l);
}

ExtReal log_sum_accumulate(const std::optional<ExtReal>& acc,
                           const ExtReal& term) {
  if (!acc) return term;
  const bool acc_larger = *acc >= term;
  const ExtReal& hi = acc_larger ? *acc : term;
  const ExtReal& lo = acc_larger ? term : *acc;
  return hi + log1p_exp(lo - hi);
}

}  // namespace hdim
