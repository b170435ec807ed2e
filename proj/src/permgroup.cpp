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

#include "hdim/permgroup.hpp"

#include <algorithm>
#include <cctype>
#include <deque>
#include <numeric>
#include <unordered_set>

#include "hdim/errors.hpp"

namespace hdim {

Permutation::Permutation(std::size_t degree) : images_(degree) {
  std::iota(images_.begin(), images_.end(), Point{0});
}

Permutation::Permutation(std::vector<Point> images) : images_(std::move(images)) {
  std::vector<bool> seen(images_.size(), false);
  for (Point y : images_) {
    if (y >= images_.size() || seen[y]) {
      throw ConfigError("permutation images are not a bijection");
    }
    seen[y] = true;
  }
}

Permutation Permutation::from_cycles(std::string_view text,
                                     std::size_t degree) {
  std::vector<Point> images(degree);
  std::iota(images.begin(), images.end(), Point{0});
  std::vector<bool> used(degree, false);
  const std::string where = " in '" + std::string(text) + "'";

  std::size_t i = 0;
  auto skip_ws = [&] {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i])))
      ++i;
  };
  skip_ws();
  while (i < text.size()) {
    if (text[i] != '(') throw ConfigError("expected '('" + where);
    ++i;
    std::vector<Point> cycle;
    for (;;) {
      skip_ws();
      if (i >= text.size()) throw ConfigError("unterminated cycle" + where);
      if (text[i] == ')') {
        ++i;
        break;
      }
      if (!std::isdigit(static_cast<unsigned char>(text[i]))) {
        throw ConfigError(std::string("unexpected '") + text[i] + "'" + where);
      }
      std::uint64_t v = 0;
      while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
        v = v * 10 + static_cast<std::uint64_t>(text[i] - '0');
        if (v > degree) throw ConfigError("point out of range" + where);
        ++i;
      }
      if (v == 0) throw ConfigError("points are 1-based" + where);
      const Point p = static_cast<Point>(v - 1);
      if (used[p]) {
        throw ConfigError("point " + std::to_string(v) +
                          " appears in more than one place" + where);
      }
      used[p] = true;
      cycle.push_back(p);
    }
    for (std::size_t k = 0; k < cycle.size(); ++k) {
      images[cycle[k]] = cycle[(k + 1) % cycle.size()];
    }
    skip_ws();
  }
  return Permutation(std::move(images));
}

bool Permutation::is_identity() const {
  for (std::size_t x = 0; x < images_.size(); ++x) {
    if (images_[x] != x) return false;
  }
  return true;
}

Permutation Permutation::inverse() const {
  std::vector<Point> inv(images_.size());
  for (std::size_t x = 0; x < images_.size(); ++x) {
    inv[images_[x]] = static_cast<Point>(x);
  }
  Permutation r;
  r.images_ = std::move(inv);
  return r;
}

std::string Permutation::cycles() const {
  std::string out;
  std::vector<bool> seen(images_.size(), false);
  for (std::size_t x = 0; x < images_.size(); ++x) {
    if (seen[x] || images_[x] == x) continue;
    out += '(';
    Point y = static_cast<Point>(x);
    bool first = true;
    while (!seen[y]) {
      seen[y] = true;
      if (!first) out += ' ';
      out += std::to_string(y + 1);
      first = false;
      y = images_[y];
    }
    out += ')';
  }
  return out.empty() ? "()" : out;
}

Permutation operator*(const Permutation& g, const Permutation& h) {
  if (g.degree() != h.degree()) {
    throw ConfigError("composing permutations of different degree");
  }
  Permutation r;
  r.images_.resize(g.degree());
  for (std::size_t x = 0; x < g.degree(); ++x) r.images_[x] = h.images_[g.images_[x]];
  return r;
}

std::size_t PermutationHash::operator()(const Permutation& p) const {
  // FNV-1a over the image array.
  std::uint64_t h = 1469598103934665603ULL;
  for (Point y : p.images()) {
    h ^= y;
    h *= 1099511628211ULL;
  }
  return static_cast<std::size_t>(h);
}

std::optional<std::uint64_t> ProductDomain::size_of(std::size_t alphabet,
                                                    std::size_t coordinates) {
  std::uint64_t n = 1;
  constexpr std::uint64_t kLimit = 1ULL << 63;
  for (std::size_t i = 0; i < coordinates; ++i) {
    if (alphabet != 0 && n > kLimit / alphabet) return std::nullopt;
    n *= alphabet;
  }
  return n;
}

ProductDomain::ProductDomain(std::size_t alphabet, std::size_t coordinates,
                             std::uint64_t max_points)
    : alphabet_(alphabet), size_(0), strides_(coordinates) {
  if (alphabet < 1) throw ConfigError("product domain needs a non-empty alphabet");
  const auto n = size_of(alphabet, coordinates);
  if (!n || *n > max_points || *n > (1ULL << 32)) {
    throw CapacityError("product domain " + std::to_string(alphabet) + "^" +
                        std::to_string(coordinates) +
                        " exceeds the point cap " + std::to_string(max_points));
  }
  size_ = static_cast<std::size_t>(*n);
  std::size_t s = 1;
  for (std::size_t i = coordinates; i-- > 0;) {
    strides_[i] = s;
    s *= alphabet;
  }
}

Point ProductDomain::rank(std::span<const std::size_t> digits) const {
  std::size_t r = 0;
  for (std::size_t i = 0; i < digits.size(); ++i) r += digits[i] * strides_[i];
  return static_cast<Point>(r);
}

std::vector<std::size_t> ProductDomain::unrank(Point x) const {
  std::vector<std::size_t> d(coordinates());
  for (std::size_t i = 0; i < d.size(); ++i) d[i] = digit(x, i);
  return d;
}

std::vector<Permutation> coordinate_subgroup_generators(
    const PermGroup& s, std::size_t position, const ProductDomain& domain) {
  if (position >= domain.coordinates()) {
    throw ConfigError("coordinate position out of range");
  }
  if (s.degree != domain.alphabet()) {
    throw ConfigError("group degree does not match the domain alphabet");
  }
  const std::size_t stride = domain.stride(position);
  std::vector<Permutation> out;
  for (const Permutation& g : s.generators) {
    if (g.is_identity()) continue;
    std::vector<Point> images(domain.size());
    for (std::size_t x = 0; x < domain.size(); ++x) {
      const std::size_t d = domain.digit(static_cast<Point>(x), position);
      images[x] = static_cast<Point>(x + (g[static_cast<Point>(d)] - d) * stride);
    }
    out.emplace_back(std::move(images));
  }
  return out;
}

std::vector<Permutation> top_action_generators(const PermGroup& h,
                                               const ProductDomain& domain) {
  if (h.degree != domain.coordinates()) {
    throw ConfigError("top group degree does not match the coordinate count");
  }
  const std::size_t d = domain.coordinates();
  std::vector<Permutation> out;
  for (const Permutation& g : h.generators) {
    if (g.is_identity()) continue;
    // Coordinate i moves to position i^g, so digit i is weighted by the
    // stride of i^g.
    std::vector<std::size_t> target_stride(d);
    for (std::size_t i = 0; i < d; ++i) {
      target_stride[i] = domain.stride(g[static_cast<Point>(i)]);
    }
    std::vector<Point> images(domain.size());
    for (std::size_t x = 0; x < domain.size(); ++x) {
      std::size_t y = 0;
      std::size_t rest = x;
      for (std::size_t i = d; i-- > 0;) {
        y += (rest % domain.alphabet()) * target_stride[i];
        rest /= domain.alphabet();
      }
      images[x] = static_cast<Point>(y);
    }
    out.emplace_back(std::move(images));
  }
  return out;
}

OrbitPartition orbits(std::span<const Permutation> generators,
                      std::size_t degree) {
  for (const Permutation& g : generators) {
    if (g.degree() != degree) throw ConfigError("generator degree mismatch");
  }
  constexpr std::uint32_t kUnseen = ~std::uint32_t{0};
  OrbitPartition part;
  part.orbit_of.assign(degree, kUnseen);
  std::vector<Point> queue;
  queue.reserve(degree);
  for (std::size_t start = 0; start < degree; ++start) {
    if (part.orbit_of[start] != kUnseen) continue;
    const auto id = static_cast<std::uint32_t>(part.orbits.size());
    queue.clear();
    queue.push_back(static_cast<Point>(start));
    part.orbit_of[start] = id;
    for (std::size_t head = 0; head < queue.size(); ++head) {
      const Point x = queue[head];
      for (const Permutation& g : generators) {
        const Point y = g[x];
        if (part.orbit_of[y] == kUnseen) {
          part.orbit_of[y] = id;
          queue.push_back(y);
        }
      }
    }
    Orbit o;
    o.points = queue;
    std::sort(o.points.begin(), o.points.end());
    o.min_point = o.points.front();
    part.orbits.push_back(std::move(o));
  }
  return part;
}

bool is_transitive(std::span<const Permutation> generators,
                   std::size_t degree) {
  if (degree == 0) return false;
  return orbits(generators, degree).orbits.size() == 1;
}

bool is_invariant(std::span<const Point> points,
                  std::span<const Permutation> generators) {
  if (generators.empty()) return true;
  std::vector<bool> member(generators.front().degree(), false);
  for (Point p : points) member.at(p) = true;
  for (const Permutation& g : generators) {
    for (Point p : points) {
      if (!member[g[p]]) return false;
    }
  }
  return true;
}

bool complement_invariance_agrees(std::span<const Point> points,
                                  std::span<const Permutation> generators,
                                  std::size_t degree) {
  std::vector<bool> member(degree, false);
  for (Point p : points) member.at(p) = true;
  std::vector<Point> complement;
  for (std::size_t x = 0; x < degree; ++x) {
    if (!member[x]) complement.push_back(static_cast<Point>(x));
  }
  return is_invariant(points, generators) ==
         is_invariant(complement, generators);
}

std::vector<Permutation> enumerate_group(
    std::span<const Permutation> generators, std::size_t degree,
    std::uint64_t cap) {
  std::unordered_set<Permutation, PermutationHash> seen;
  std::vector<Permutation> elements;
  Permutation id(degree);
  seen.insert(id);
  elements.push_back(std::move(id));
  for (std::size_t head = 0; head < elements.size(); ++head) {
    for (const Permutation& s : generators) {
      Permutation g = elements[head] * s;
      if (seen.insert(g).second) {
        if (elements.size() >= cap) {
          throw CapacityError("group enumeration exceeded the cap of " +
                              std::to_string(cap) + " elements");
        }
        elements.push_back(std::move(g));
      }
    }
  }
  return elements;
}

}  // namespace hdim
