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

// Independent reference computations for the tests. Nothing here calls into
// the library beyond plain data types.
#ifndef HDIM_TESTS_ORACLES_HPP
#define HDIM_TESTS_ORACLES_HPP

#include <gmpxx.h>

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <set>
#include <vector>

namespace oracle {

// Recursion for a constant sequence of degree m, straight from the formulas:
// c_1 = m, o_1 = 1, e_{n+1} = floor(alpha c_n) o_n,
// c_{n+1} = m^(mt_n - e_{n+1}), o_{n+1} = m^e_{n+1}, mt_{n+1} = m^mt_n.
struct Levels {
  std::vector<mpz_class> c, o, mt, e;  // index n-1; e[0] = 0 (unused)
};

inline mpz_class ipow(unsigned long base, const mpz_class& e) {
  mpz_class r;
  mpz_ui_pow_ui(r.get_mpz_t(), base, e.get_ui());
  return r;
}

inline Levels constant_recursion(unsigned long m, long num, long den,
                                 std::size_t levels) {
  Levels L;
  L.c.push_back(m);
  L.o.push_back(1);
  L.mt.push_back(m);
  L.e.push_back(0);
  for (std::size_t n = 1; n < levels; ++n) {
    mpz_class f = (L.c.back() * num) / den;  // non-negative, so truncation = floor
    mpz_class e = f * L.o.back();
    mpz_class mt_prev = L.mt.back();
    L.c.push_back(ipow(m, mt_prev - e));
    L.o.push_back(ipow(m, e));
    L.mt.push_back(ipow(m, mt_prev));
    L.e.push_back(e);
  }
  return L;
}

// D_n for a constant sequence: the common log|S| cancels.
inline std::vector<mpq_class> constant_dimensions(const Levels& L) {
  std::vector<mpq_class> d;
  mpz_class num = 0, den = 0;
  for (std::size_t n = 0; n < L.c.size(); ++n) {
    den += n == 0 ? mpz_class(1) : L.mt[n - 1];
    if (n > 0) num += L.e[n];
    mpq_class q(num, den);
    q.canonicalize();
    d.push_back(q);
  }
  return d;
}

using Perm = std::vector<std::uint32_t>;

// Right action: (g*h)(x) = h(g(x)).
inline Perm compose(const Perm& g, const Perm& h) {
  Perm r(g.size());
  for (std::size_t x = 0; x < g.size(); ++x) r[x] = h[g[x]];
  return r;
}

// Orbits by union-find, each sorted, listed by least point.
inline std::vector<std::vector<std::uint32_t>> orbits(
    const std::vector<Perm>& gens, std::size_t degree) {
  std::vector<std::size_t> parent(degree);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (const Perm& g : gens) {
    for (std::size_t x = 0; x < degree; ++x) {
      std::size_t a = find(x), b = find(g[x]);
      if (a != b) parent[std::max(a, b)] = std::min(a, b);
    }
  }
  std::vector<std::vector<std::uint32_t>> byroot(degree);
  for (std::size_t x = 0; x < degree; ++x) {
    byroot[find(x)].push_back(static_cast<std::uint32_t>(x));
  }
  std::vector<std::vector<std::uint32_t>> out;
  for (auto& o : byroot) {
    if (!o.empty()) out.push_back(std::move(o));
  }
  return out;
}

// Group order by closure over an ordered set.
inline std::size_t closure_order(const std::vector<Perm>& gens,
                                 std::size_t degree) {
  Perm id(degree);
  std::iota(id.begin(), id.end(), 0u);
  std::set<Perm> seen{id};
  std::vector<Perm> todo{id};
  while (!todo.empty()) {
    Perm g = std::move(todo.back());
    todo.pop_back();
    for (const Perm& s : gens) {
      Perm h = compose(g, s);
      if (seen.insert(h).second) todo.push_back(std::move(h));
    }
  }
  return seen.size();
}

inline std::size_t digit(std::size_t x, std::size_t m, std::size_t d,
                         std::size_t coord) {
  for (std::size_t i = d; i-- > coord + 1;) x /= m;
  return x % m;
}

}  // namespace oracle

#endif  // HDIM_TESTS_ORACLES_HPP
