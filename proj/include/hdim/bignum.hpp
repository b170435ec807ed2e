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

#ifndef HDIM_BIGNUM_HPP
#define HDIM_BIGNUM_HPP

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

namespace hdim {

/// Arbitrary-size non-negative integer. GMP keeps it canonical.
using BigNat = mpz_class;

std::uint64_t bit_length(const BigNat& n);
std::string to_decimal(const BigNat& n);

/// Exact fraction in lowest terms with a positive denominator.
class Rational {
 public:
  Rational() = default;
  Rational(long num, unsigned long den);
  explicit Rational(const mpq_class& q);

  /// Accepts "p/q" or a bare integer "p". Throws ConfigError otherwise.
  static Rational parse(std::string_view text);

  const mpq_class& value() const { return q_; }
  mpz_class num() const { return q_.get_num(); }
  mpz_class den() const { return q_.get_den(); }
  int sign() const { return sgn(q_); }
  bool is_zero() const { return sign() == 0; }
  bool is_one() const { return q_ == 1; }
  double to_double() const { return q_.get_d(); }
  std::string str() const;

  friend bool operator==(const Rational& a, const Rational& b) {
    return a.q_ == b.q_;
  }
  friend std::strong_ordering operator<=>(const Rational& a,
                                          const Rational& b) {
    const int c = cmp(a.q_, b.q_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater
                          : std::strong_ordering::equal);
  }

 private:
  mpq_class q_{0};
};

}  // namespace hdim

#endif  // HDIM_BIGNUM_HPP
