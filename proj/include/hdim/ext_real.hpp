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

#ifndef HDIM_EXT_REAL_HPP
#define HDIM_EXT_REAL_HPP

#include <mpfr.h>

#include <compare>
#include <string>

#include "hdim/bignum.hpp"

namespace hdim {

inline constexpr long kDefaultPrecision = 256;
inline constexpr long kMinPrecision = 64;
inline constexpr long kMaxPrecision = 1L << 16;

/// Binary exponent bound of the flat representation. Magnitudes at or above
/// 2^kLiftExponent (or below its reciprocal) move one tower level up.
inline constexpr long kLiftExponent = 1L << 24;

class ExtReal;

namespace detail {

struct ExtRealAccess;

// RAII owner of one mpfr_t.
class MpfrNum {
 public:
  explicit MpfrNum(long precision);
  MpfrNum(const MpfrNum& other);
  MpfrNum(MpfrNum&& other) noexcept;
  MpfrNum& operator=(MpfrNum other) noexcept;
  ~MpfrNum();

  mpfr_ptr get() { return v_; }
  mpfr_srcptr get() const { return v_; }
  long precision() const { return static_cast<long>(mpfr_get_prec(v_)); }

 private:
  mpfr_t v_;
};

}  // namespace detail

/// Extended-range real with a P-bit significand.
///
/// Values whose binary exponent lies within +-kLiftExponent are held as a
/// plain MPFR number. Larger magnitudes are held in level-index form,
///
///     value = sign * exp^depth(top)        (huge)
///     value = sign / exp^depth(top)        (tiny)
///
/// with depth >= 1 and a flat MPFR `top`, normalized so that the depth is
/// the least one that keeps `top` inside the flat range. Relative precision
/// is P bits at depth 0 and degrades by the size of `top` per level, which
/// is the price of representing m~_n = m_n^(m~_{n-1}) towers of any height.
class ExtReal {
 public:
  ExtReal();
  explicit ExtReal(double v, long precision = kDefaultPrecision);
  static ExtReal from_integer(const BigNat& n,
                              long precision = kDefaultPrecision);
  static ExtReal from_rational(const Rational& q,
                               long precision = kDefaultPrecision);
  /// Natural logarithm of a positive integer.
  static ExtReal log_of(unsigned long n, long precision = kDefaultPrecision);
  /// ln(n!) via the log-gamma function.
  static ExtReal log_factorial(unsigned long n,
                               long precision = kDefaultPrecision);
  static ExtReal ln2(long precision = kDefaultPrecision);
  /// 2^e, e may be negative.
  static ExtReal pow2(long e, long precision = kDefaultPrecision);

  long precision() const { return top_.precision(); }
  ExtReal with_precision(long precision) const;

  int sign() const;
  bool is_zero() const { return depth_ == 0 && mpfr_zero_p(top_.get()); }
  int depth() const { return depth_; }
  bool is_reciprocal() const { return recip_; }

  /// Rounds to the nearest double; towers map to +-inf or +-0.
  double to_double() const;

  /// Deterministic text form. Flat values in double range print as the
  /// shortest round-trip decimal, other flat values with 17 significant
  /// digits, towers as nested "exp(...)" / "exp(-...)".
  std::string str() const;

  ExtReal operator-() const;
  friend ExtReal operator+(const ExtReal& a, const ExtReal& b);
  friend ExtReal operator-(const ExtReal& a, const ExtReal& b);
  friend ExtReal operator*(const ExtReal& a, const ExtReal& b);
  friend ExtReal operator/(const ExtReal& a, const ExtReal& b);
  ExtReal& operator+=(const ExtReal& b) { return *this = *this + b; }
  ExtReal& operator-=(const ExtReal& b) { return *this = *this - b; }

  friend ExtReal abs(const ExtReal& x);
  /// Natural log; x must be positive.
  friend ExtReal log(const ExtReal& x);
  friend ExtReal exp(const ExtReal& x);
  /// ln(1 + e^d), d <= 0 expected but not required.
  friend ExtReal log1p_exp(const ExtReal& d);

  friend int compare(const ExtReal& a, const ExtReal& b);
  friend bool operator==(const ExtReal& a, const ExtReal& b) {
    return compare(a, b) == 0;
  }
  friend std::strong_ordering operator<=>(const ExtReal& a,
                                          const ExtReal& b) {
    const int c = compare(a, b);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater
                          : std::strong_ordering::equal);
  }

  /// Flat MPFR view; only valid when depth() == 0.
  mpfr_srcptr flat() const;

 private:
  friend struct detail::ExtRealAccess;
  ExtReal(detail::MpfrNum top, int depth, bool recip, bool neg);
  void normalize();

  detail::MpfrNum top_;
  int depth_ = 0;
  bool recip_ = false;
  bool neg_ = false;
};

ExtReal abs(const ExtReal& x);
ExtReal log(const ExtReal& x);
ExtReal exp(const ExtReal& x);
ExtReal log1p_exp(const ExtReal& d);
int compare(const ExtReal& a, const ExtReal& b);

/// abs(a - b) <= tol * max(abs(a), abs(b)). Outside the flat range the test
/// is applied to ln abs(a) and ln abs(b), which is where the precision lives.
bool relative_close(const ExtReal& a, const ExtReal& b, const ExtReal& tol);

}  // namespace hdim

#endif  // HDIM_EXT_REAL_HPP
