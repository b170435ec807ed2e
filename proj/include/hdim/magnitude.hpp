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

#ifndef HDIM_MAGNITUDE_HPP
#define HDIM_MAGNITUDE_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <variant>

#include "hdim/bignum.hpp"
#include "hdim/ext_real.hpp"

namespace hdim {

inline constexpr std::uint64_t kDefaultThresholdBits = 1ULL << 20;

struct ArithConfig {
  long precision = kDefaultPrecision;            // P, bits
  std::uint64_t threshold_bits = kDefaultThresholdBits;  // T, bits

  /// Throws ConfigError unless kMinPrecision <= P <= kMaxPrecision and
  /// 1 <= T <= 2^29.
  void validate() const;
};

/// A non-negative integer, held exactly while its bit length is at most T and
/// by its natural logarithm beyond that. Once a value has moved to the log
/// domain every result derived from it stays there.
class Magnitude {
 public:
  Magnitude() : v_(BigNat(0)) {}
  static Magnitude exact(BigNat n);
  static Magnitude exact(unsigned long n) { return exact(BigNat(n)); }
  /// A value given by its natural logarithm (must be >= 0).
  static Magnitude log_of(ExtReal ln_value);

  bool is_exact() const { return std::holds_alternative<BigNat>(v_); }
  /// Only valid when is_exact().
  const BigNat& value() const;
  /// The stored logarithm. Only valid when !is_exact().
  const ExtReal& stored_log() const;

  bool is_zero() const;
  /// ln(value) at the given precision; value must be positive.
  ExtReal log(long precision = kDefaultPrecision) const;
  /// The value as an ExtReal (may be a tower).
  ExtReal to_ext(long precision = kDefaultPrecision) const;

  /// Decimal digits when exact, "log2≈x" in the log domain.
  std::string repr(long precision = kDefaultPrecision) const;

 private:
  std::variant<BigNat, ExtReal> v_;
};

/// -1, 0, 1. Exact values compare exactly, otherwise via logarithms.
int compare(const Magnitude& a, const Magnitude& b,
            long precision = kDefaultPrecision);

/// Moves an exact value above the threshold into the log domain.
Magnitude promote(Magnitude x, const ArithConfig& cfg);

struct FloorResult {
  Magnitude value;
  /// Relative error of `value` against the true floor; zero on the exact path.
  ExtReal rel_error;
};

/// floor(alpha * x). Exact path: integer division. Log path: alpha * x, with
/// the dropped fractional part and rounding recorded in rel_error.
FloorResult floor_mul(const Rational& alpha, const Magnitude& x,
                      const ArithConfig& cfg = {});

/// base^exp. Exact iff exp is exact and exp * log2(base) <= T.
Magnitude mag_pow(unsigned long base, const Magnitude& exp,
                  const ArithConfig& cfg = {});

/// mtilde - e, requiring e <= mtilde.
Magnitude mag_sub_exponent(const Magnitude& mtilde, const Magnitude& e,
                           const ArithConfig& cfg = {});

Magnitude mag_mul(const Magnitude& a, const Magnitude& b,
                  const ArithConfig& cfg = {});

/// x * factor for a positive real factor; the result is log-domain unless
/// x is zero.
Magnitude mag_scale(const Magnitude& x, const ExtReal& factor,
                    const ArithConfig& cfg = {});

/// ln(e^acc + e^term); an empty accumulator acts as ln 0.
ExtReal log_sum_accumulate(const std::optional<ExtReal>& acc,
                           const ExtReal& term);

}  // namespace hdim

#endif  // HDIM_MAGNITUDE_HPP
