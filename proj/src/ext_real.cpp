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

#include "hdim/ext_real.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <utility>

#include "hdim/errors.hpp"

namespace hdim {
namespace detail {

MpfrNum::MpfrNum(long precision) {
  mpfr_init2(v_, precision);
  mpfr_set_zero(v_, 1);
}

MpfrNum::MpfrNum(const MpfrNum& other) {
  mpfr_init2(v_, mpfr_get_prec(other.v_));
  mpfr_set(v_, other.v_, MPFR_RNDN);
}

MpfrNum::MpfrNum(MpfrNum&& other) noexcept {
  mpfr_init2(v_, mpfr_get_prec(other.v_));
  mpfr_swap(v_, other.v_);
}

MpfrNum& MpfrNum::operator=(MpfrNum other) noexcept {
  mpfr_swap(v_, other.v_);
  return *this;
}

MpfrNum::~MpfrNum() { mpfr_clear(v_); }

struct ExtRealAccess {
  static ExtReal flat(MpfrNum v) { return ExtReal(std::move(v), 0, false, false); }
  static ExtReal tower(MpfrNum top, int depth, bool recip, bool neg) {
    return ExtReal(std::move(top), depth, recip, neg);
  }
  static const MpfrNum& top(const ExtReal& x) { return x.top_; }
  static bool neg(const ExtReal& x) { return x.neg_; }
};

}  // namespace detail

namespace {

using detail::ExtRealAccess;
using detail::MpfrNum;
constexpr mpfr_rnd_t kRnd = MPFR_RNDN;

// kLiftExponent * ln 2: tops below this drop one level.
MpfrNum lift_bound(long precision) {
  MpfrNum b(precision);
  mpfr_const_log2(b.get(), kRnd);
  mpfr_mul_si(b.get(), b.get(), kLiftExponent, kRnd);
  return b;
}

// log of the ratio below which a summand vanishes at P bits.
ExtReal negligible_log_ratio(long precision) {
  return -(ExtReal::ln2(precision) *
           ExtReal(static_cast<double>(precision + 4), precision));
}

int magnitude_level(const ExtReal& x) {
  if (x.depth() == 0) return 0;
  return x.is_reciprocal() ? -x.depth() : x.depth();
}

using FlatOp = int (*)(mpfr_ptr, mpfr_srcptr, mpfr_srcptr, mpfr_rnd_t);

ExtReal flat_binary(const ExtReal& a, const ExtReal& b, FlatOp op) {
  MpfrNum r(std::max(a.precision(), b.precision()));
  op(r.get(), a.flat(), b.flat(), kRnd);
  return ExtRealAccess::flat(std::move(r));
}

int cmp_magnitude(const ExtReal& a, const ExtReal& b) {
  if (a.is_zero() || b.is_zero()) {
    return static_cast<int>(!a.is_zero()) - static_cast<int>(!b.is_zero());
  }
  const int la = magnitude_level(a);
  const int lb = magnitude_level(b);
  if (la != lb) return la < lb ? -1 : 1;
  const int c = la == 0 ? mpfr_cmpabs(a.flat(), b.flat())
                        : mpfr_cmp(ExtRealAccess::top(a).get(),
                                   ExtRealAccess::top(b).get());
  const int s = (c > 0) - (c < 0);
  return la < 0 ? -s : s;
}

// ln(1 - e^d) for flat d < 0.
ExtReal log1m_exp(const ExtReal& d) {
  MpfrNum r(d.precision());
  MpfrNum t(d.precision());
  mpfr_const_log2(t.get(), kRnd);
  mpfr_neg(t.get(), t.get(), kRnd);
  if (mpfr_cmp(d.flat(), t.get()) > 0) {
    mpfr_expm1(r.get(), d.flat(), kRnd);
    mpfr_neg(r.get(), r.get(), kRnd);
    mpfr_log(r.get(), r.get(), kRnd);
  } else {
    mpfr_exp(r.get(), d.flat(), kRnd);
    mpfr_neg(r.get(), r.get(), kRnd);
    mpfr_log1p(r.get(), r.get(), kRnd);
  }
  return ExtRealAccess::flat(std::move(r));
}

// x + y for x, y > 0.
ExtReal add_magnitudes(const ExtReal& x, const ExtReal& y) {
  const long p = std::max(x.precision(), y.precision());
  if (x.depth() == 0 && y.depth() == 0) return flat_binary(x, y, mpfr_add);
  const bool x_larger = cmp_magnitude(x, y) >= 0;
  const ExtReal& big = x_larger ? x : y;
  const ExtReal& small = x_larger ? y : x;
  const ExtReal lb = log(big);
  const ExtReal d = log(small) - lb;
  if (d < negligible_log_ratio(p)) return big.with_precision(p);
  return exp(lb + log1p_exp(d));
}

// x - y for x > y > 0.
ExtReal sub_magnitudes(const ExtReal& x, const ExtReal& y) {
  const long p = std::max(x.precision(), y.precision());
  if (x.depth() == 0 && y.depth() == 0) return flat_binary(x, y, mpfr_sub);
  const ExtReal lx = log(x);
  const ExtReal d = log(y) - lx;
  if (d < negligible_log_ratio(p)) return x.with_precision(p);
  if (d.is_zero()) return ExtReal(0.0, p);
  return exp(lx + log1m_exp(d));
}

std::string flat_to_string(mpfr_srcptr v) {
  if (mpfr_zero_p(v)) return "0";
  const double d = mpfr_get_d(v, kRnd);
  const double ad = std::fabs(d);
  if (std::isfinite(d) && ad >= 1e-300 && ad <= 1e300) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), d);
    return std::string(buf, res.ptr);
  }
  mpfr_exp_t e10 = 0;
  char* digits = mpfr_get_str(nullptr, &e10, 10, 17, v, kRnd);
  std::string s(digits);
  mpfr_free_str(digits);
  std::string sign;
  if (!s.empty() && s[0] == '-') {
    sign = "-";
    s.erase(0, 1);
  }
  while (s.size() > 1 && s.back() == '0') s.pop_back();
  std::string out = sign + s.substr(0, 1);
  if (s.size() > 1) out += "." + s.substr(1);
  const long exponent = static_cast<long>(e10) - 1;
  out += exponent < 0 ? "e-" : "e+";
  out += std::to_string(std::labs(exponent));
  return out;
}

}  // namespace

ExtReal::ExtReal() : top_(kDefaultPrecision) {}

ExtReal::ExtReal(double v, long precision) : top_(precision) {
  mpfr_set_d(top_.get(), v, kRnd);
  normalize();
}

ExtReal::ExtReal(detail::MpfrNum top, int depth, bool recip, bool neg)
    : top_(std::move(top)), depth_(depth), recip_(recip), neg_(neg) {
  normalize();
}

ExtReal ExtReal::from_integer(const BigNat& n, long precision) {
  MpfrNum v(precision);
  mpfr_set_z(v.get(), n.get_mpz_t(), kRnd);
  return ExtRealAccess::flat(std::move(v));
}

ExtReal ExtReal::from_rational(const Rational& q, long precision) {
  MpfrNum v(precision);
  mpfr_set_q(v.get(), q.value().get_mpq_t(), kRnd);
  return ExtRealAccess::flat(std::move(v));
}

ExtReal ExtReal::log_of(unsigned long n, long precision) {
  if (n == 0) throw DomainError("log_of(0)");
  MpfrNum v(precision);
  mpfr_set_ui(v.get(), n, kRnd);
  mpfr_log(v.get(), v.get(), kRnd);
  return ExtRealAccess::flat(std::move(v));
}

ExtReal ExtReal::log_factorial(unsigned long n, long precision) {
  MpfrNum v(precision);
  mpfr_set_ui(v.get(), n + 1, kRnd);
  mpfr_lngamma(v.get(), v.get(), kRnd);
  return ExtRealAccess::flat(std::move(v));
}

ExtReal ExtReal::ln2(long precision) {
  MpfrNum v(precision);
  mpfr_const_log2(v.get(), kRnd);
  return ExtRealAccess::flat(std::move(v));
}

ExtReal ExtReal::pow2(long e, long precision) {
  MpfrNum v(precision);
  mpfr_set_ui(v.get(), 1, kRnd);
  mpfr_mul_2si(v.get(), v.get(), e, kRnd);
  return ExtRealAccess::flat(std::move(v));
}

ExtReal ExtReal::with_precision(long precision) const {
  MpfrNum t(precision);
  mpfr_set(t.get(), top_.get(), kRnd);
  return ExtReal(std::move(t), depth_, recip_, neg_);
}

void ExtReal::normalize() {
  mpfr_ptr t = top_.get();
  if (!mpfr_number_p(t)) throw InconsistencyError("non-finite ExtReal");
  if (depth_ == 0) {
    recip_ = false;
    neg_ = false;
    if (mpfr_zero_p(t)) return;
    const long e = mpfr_get_exp(t);
    if (e >= -kLiftExponent && e <= kLiftExponent) return;
    neg_ = mpfr_sgn(t) < 0;
    mpfr_abs(t, t, kRnd);
    mpfr_log(t, t, kRnd);
    recip_ = e < 0;
    if (recip_) mpfr_neg(t, t, kRnd);
    depth_ = 1;
  }
  while (mpfr_get_exp(t) > kLiftExponent) {
    mpfr_log(t, t, kRnd);
    ++depth_;
  }
  const MpfrNum bound = lift_bound(top_.precision());
  while (depth_ > 0 && mpfr_cmp(t, bound.get()) < 0) {
    mpfr_exp(t, t, kRnd);
    --depth_;
  }
  if (depth_ == 0) {
    if (recip_) mpfr_ui_div(t, 1, t, kRnd);
    if (neg_) mpfr_neg(t, t, kRnd);
    recip_ = false;
    neg_ = false;
  }
}

int ExtReal::sign() const {
  if (depth_ == 0) return mpfr_sgn(top_.get());
  return neg_ ? -1 : 1;
}

double ExtReal::to_double() const {
  if (depth_ == 0) return mpfr_get_d(top_.get(), kRnd);
  if (recip_) return neg_ ? -0.0 : 0.0;
  return neg_ ? -HUGE_VAL : HUGE_VAL;
}

std::string ExtReal::str() const {
  if (depth_ == 0) return flat_to_string(top_.get());
  return std::string(neg_ ? "-" : "") + "exp(" + log(abs(*this)).str() + ")";
}

mpfr_srcptr ExtReal::flat() const {
  if (depth_ != 0) throw InconsistencyError("flat() on a tower value");
  return top_.get();
}

ExtReal ExtReal::operator-() const {
  ExtReal r = *this;
  if (r.depth_ == 0) {
    mpfr_neg(r.top_.get(), r.top_.get(), kRnd);
  } else {
    r.neg_ = !r.neg_;
  }
  return r;
}

ExtReal abs(const ExtReal& x) { return x.sign() < 0 ? -x : x; }

ExtReal operator+(const ExtReal& a, const ExtReal& b) {
  const long p = std::max(a.precision(), b.precision());
  if (a.is_zero()) return b.with_precision(p);
  if (b.is_zero()) return a.with_precision(p);
  if (a.depth_ == 0 && b.depth_ == 0) return flat_binary(a, b, mpfr_add);
  const int sa = a.sign();
  const int sb = b.sign();
  if (sa == sb) {
    ExtReal m = add_magnitudes(abs(a), abs(b));
    return sa < 0 ? -m : m;
  }
  const int c = cmp_magnitude(a, b);
  if (c == 0) return ExtReal(0.0, p);
  const ExtReal& big = c > 0 ? a : b;
  const ExtReal& small = c > 0 ? b : a;
  ExtReal m = sub_magnitudes(abs(big), abs(small));
  return big.sign() < 0 ? -m : m;
}

ExtReal operator-(const ExtReal& a, const ExtReal& b) { return a + (-b); }

ExtReal operator*(const ExtReal& a, const ExtReal& b) {
  const long p = std::max(a.precision(), b.precision());
  if (a.is_zero() || b.is_zero()) return ExtReal(0.0, p);
  if (a.depth_ == 0 && b.depth_ == 0) return flat_binary(a, b, mpfr_mul);
  ExtReal m = exp(log(abs(a)) + log(abs(b)));
  return a.sign() * b.sign() < 0 ? -m : m;
}

ExtReal operator/(const ExtReal& a, const ExtReal& b) {
  if (b.is_zero()) throw DomainError("ExtReal division by zero");
  const long p = std::max(a.precision(), b.precision());
  if (a.is_zero()) return ExtReal(0.0, p);
  if (a.depth_ == 0 && b.depth_ == 0) return flat_binary(a, b, mpfr_div);
  ExtReal m = exp(log(abs(a)) - log(abs(b)));
  return a.sign() * b.sign() < 0 ? -m : m;
}

ExtReal log(const ExtReal& x) {
  if (x.sign() <= 0) throw DomainError("log of a non-positive ExtReal");
  if (x.depth_ == 0) {
    MpfrNum r(x.precision());
    mpfr_log(r.get(), x.top_.get(), kRnd);
    return ExtRealAccess::flat(std::move(r));
  }
  if (x.depth_ == 1) {
    MpfrNum t = x.top_;
    if (x.recip_) mpfr_neg(t.get(), t.get(), kRnd);
    return ExtRealAccess::flat(std::move(t));
  }
  return ExtRealAccess::tower(x.top_, x.depth_ - 1, false, x.recip_);
}

ExtReal exp(const ExtReal& x) {
  const long p = x.precision();
  if (x.is_zero()) return ExtReal(1.0, p);
  if (x.depth_ == 0) {
    const MpfrNum bound = lift_bound(p);
    if (mpfr_cmpabs(x.top_.get(), bound.get()) < 0) {
      MpfrNum r(p);
      mpfr_exp(r.get(), x.top_.get(), kRnd);
      return ExtRealAccess::flat(std::move(r));
    }
    MpfrNum t(p);
    mpfr_abs(t.get(), x.top_.get(), kRnd);
    return ExtRealAccess::tower(std::move(t), 1, x.sign() < 0, false);
  }
  // |x| < 2^-kLiftExponent: 1 + x rounds to 1 at any supported precision.
  if (x.recip_) return ExtReal(1.0, p);
  return ExtRealAccess::tower(x.top_, x.depth_ + 1, x.neg_, false);
}

ExtReal log1p_exp(const ExtReal& d) {
  const long p = d.precision();
  if (d.sign() > 0) return d + log1p_exp(-d);
  if (d < negligible_log_ratio(p)) return exp(d);
  MpfrNum r(p);
  mpfr_exp(r.get(), d.flat(), kRnd);
  mpfr_log1p(r.get(), r.get(), kRnd);
  return ExtRealAccess::flat(std::move(r));
}

int compare(const ExtReal& a, const ExtReal& b) {
  const int sa = a.sign();
  const int sb = b.sign();
  if (sa != sb) return sa < sb ? -1 : 1;
  if (sa == 0) return 0;
  const int m = cmp_magnitude(a, b);
  return sa > 0 ? m : -m;
}

bool relative_close(const ExtReal& a, const ExtReal& b, const ExtReal& tol) {
  if (a.depth() > 0 || b.depth() > 0) {
    // Beyond the flat range only the logarithm carries P bits.
    if (a.sign() != b.sign()) return false;
    if (a.is_zero() || b.is_zero()) return a.is_zero() && b.is_zero();
    return relative_close(log(abs(a)), log(abs(b)), tol);
  }
  const ExtReal diff = abs(a - b);
  if (diff.is_zero()) return true;
  const ExtReal scale = std::max(abs(a), abs(b));
  return diff <= tol * scale;
}

}  // namespace hdim
