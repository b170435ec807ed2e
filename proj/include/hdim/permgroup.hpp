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

#ifndef HDIM_PERMGROUP_HPP
#define HDIM_PERMGROUP_HPP

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace hdim {

using Point = std::uint32_t;

inline constexpr std::uint64_t kDefaultMaxPoints = 1ULL << 20;
inline constexpr std::uint64_t kDefaultEnumerationCap = 1000000;

/// A bijection of {0, ..., degree-1}. Groups act on the right: x^(g*h) is
/// (x^g)^h, i.e. g*h means "g, then h".
class Permutation {
 public:
  Permutation() = default;
  /// Identity of the given degree.
  explicit Permutation(std::size_t degree);
  /// Throws ConfigError unless `images` is a bijection.
  explicit Permutation(std::vector<Point> images);

  /// Parses 1-based cycle notation such as "(1 2 3)(4 5)". "()" or an empty
  /// string is the identity. Overlapping cycles are rejected.
  static Permutation from_cycles(std::string_view text, std::size_t degree);

  std::size_t degree() const { return images_.size(); }
  Point operator[](Point x) const { return images_[x]; }
  const std::vector<Point>& images() const { return images_; }
  bool is_identity() const;
  Permutation inverse() const;

  /// 1-based cycle notation without fixed points; "()" for the identity.
  std::string cycles() const;

  friend Permutation operator*(const Permutation& g, const Permutation& h);
  friend bool operator==(const Permutation&, const Permutation&) = default;

 private:
  std::vector<Point> images_;
};

struct PermutationHash {
  std::size_t operator()(const Permutation& p) const;
};

struct PermGroup {
  std::size_t degree = 0;
  std::vector<Permutation> generators;
};

/// Points of Omega^d, ranked lexicographically with coordinate 0 most
/// significant: rank(x) = sum_i x_i * m^(d-1-i).
class ProductDomain {
 public:
  /// A single point (alphabet 1, no coordinates).
  ProductDomain() = default;
  /// Throws CapacityError if m^d exceeds max_points.
  ProductDomain(std::size_t alphabet, std::size_t coordinates,
                std::uint64_t max_points = kDefaultMaxPoints);

  /// m^d, or nullopt when it does not fit in 63 bits.
  static std::optional<std::uint64_t> size_of(std::size_t alphabet,
                                              std::size_t coordinates);

  std::size_t alphabet() const { return alphabet_; }
  std::size_t coordinates() const { return strides_.size(); }
  std::size_t size() const { return size_; }

  std::size_t digit(Point x, std::size_t coordinate) const {
    return (x / strides_[coordinate]) % alphabet_;
  }
  std::size_t stride(std::size_t coordinate) const {
    return strides_[coordinate];
  }
  Point rank(std::span<const std::size_t> digits) const;
  std::vector<std::size_t> unrank(Point x) const;

 private:
  std::size_t alphabet_ = 1;
  std::size_t size_ = 1;
  std::vector<std::size_t> strides_;
};

struct Orbit {
  std::vector<Point> points;  // ascending
  Point min_point = 0;
};

struct OrbitPartition {
  std::vector<std::uint32_t> orbit_of;  // point -> orbit index
  std::vector<Orbit> orbits;            // ascending by min_point
};

/// For each non-identity generator s of S, the permutation of the product
/// points applying s to coordinate `position` and fixing the others.
std::vector<Permutation> coordinate_subgroup_generators(
    const PermGroup& s, std::size_t position, const ProductDomain& domain);

/// For each non-identity generator h of H (acting on coordinates), the
/// permutation sending x to the tuple y with y_{i^h} = x_i.
std::vector<Permutation> top_action_generators(const PermGroup& h,
                                               const ProductDomain& domain);

/// BFS from each unvisited point in ascending order.
OrbitPartition orbits(std::span<const Permutation> generators,
                      std::size_t degree);

bool is_transitive(std::span<const Permutation> generators,
                   std::size_t degree);

/// True iff every generator maps `points` into itself.
bool is_invariant(std::span<const Point> points,
                  std::span<const Permutation> generators);

/// is_invariant(points) == is_invariant(complement of points).
bool complement_invariance_agrees(std::span<const Point> points,
                                  std::span<const Permutation> generators,
                                  std::size_t degree);

/// All elements of <generators>. Throws CapacityError once more than `cap`
/// elements have been found.
std::vector<Permutation> enumerate_group(
    std::span<const Permutation> generators, std::size_t degree,
    std::uint64_t cap = kDefaultEnumerationCap);

}  // namespace hdim

#endif  // HDIM_PERMGROUP_HPP
