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

#include "hdim/construction.hpp"

#include <yaml-cpp/yaml.h>

#include <algorithm>
#include <unordered_set>

#include "hdim/errors.hpp"

namespace hdim {

namespace {

void check_alpha(const Rational& alpha) {
  if (alpha.sign() < 0 || alpha > Rational(1, 1)) {
    throw DomainError("alpha must lie in [0, 1], got " + alpha.str());
  }
}

// m~_n - e_{n+1} = (c_n - floor(alpha c_n)) o_n, formed without subtracting
// two nearly equal logarithms.
Magnitude c_exponent(const LayerParams& prev, const Rational& alpha,
                     const ArithConfig& cfg) {
  if (prev.c.is_exact()) {
    return mag_mul(Magnitude::exact(prev.c.value() - prev.floor_term.value()),
                   prev.o, cfg);
  }
  if (alpha.is_one()) return Magnitude::exact(0UL);
  const Magnitude co = mag_mul(prev.c, prev.o, cfg);
  if (alpha.is_zero()) return co;
  const Rational rest(mpq_class(1 - alpha.value()));
  return mag_scale(co, ExtReal::from_rational(rest, cfg.precision), cfg);
}

}  // namespace

std::vector<LayerParams> layer_recursion(const SequenceSpec& seq,
                                         const Rational& alpha,
                                         std::size_t levels,
                                         const ArithConfig& cfg) {
  cfg.validate();
  check_alpha(alpha);
  if (levels == 0) throw ConfigError("need at least one level");
  seq.validate(levels);
  const long p = cfg.precision;
  const ExtReal tol = ExtReal::pow2(-(p - 16), p);
  LevelCatalog catalog(seq, p);
  std::vector<LayerParams> out;
  out.reserve(levels);
  ExtReal bound(0.0, p);

  for (std::size_t n = 1; n <= levels; ++n) {
    const LevelCatalog::Entry& entry = catalog.at(n);
    LayerParams layer;
    layer.level = n;
    layer.m = entry.spec.degree;
    layer.log_order = entry.log_order;
    if (n == 1) {
      layer.mtilde_prev = Magnitude::exact(1UL);
      layer.c = Magnitude::exact(static_cast<unsigned long>(layer.m));
      layer.o = Magnitude::exact(1UL);
      layer.mtilde = layer.c;
    } else {
      const LayerParams& prev = out.back();
      const Magnitude e = mag_mul(prev.floor_term, prev.o, cfg);
      const Magnitude cexp = c_exponent(prev, alpha, cfg);
      if (cexp.is_exact() && e.is_exact() && prev.mtilde.is_exact()) {
        const Magnitude check = mag_sub_exponent(prev.mtilde, e, cfg);
        if (check.value() != cexp.value()) {
          throw InconsistencyError("level " + std::to_string(n) +
                                   ": m~ - e disagrees with (c - floor) o");
        }
      }
      layer.mtilde_prev = prev.mtilde;
      layer.e = e;
      layer.c = mag_pow(layer.m, cexp, cfg);
      layer.o = mag_pow(layer.m, e, cfg);
      layer.mtilde = mag_pow(layer.m, prev.mtilde, cfg);
    }

    FloorResult fr = floor_mul(alpha, layer.c, cfg);
    layer.floor_term = std::move(fr.value);
    if (!fr.rel_error.is_zero()) bound += fr.rel_error;
    layer.error_bound = bound;
    if (layer.c.is_exact()) {
      mpz_class r = alpha.num() * layer.c.value();
      mpz_fdiv_r(r.get_mpz_t(), r.get_mpz_t(), alpha.den().get_mpz_t());
      mpq_class q(r, alpha.den());
      q.canonicalize();
      layer.frac_term = Rational(q);
    }
    layer.exact = layer.c.is_exact() && layer.o.is_exact() &&
                  layer.mtilde.is_exact();

    // c_n o_n = m~_n.
    if (layer.exact) {
      if (layer.c.value() * layer.o.value() != layer.mtilde.value()) {
        throw InconsistencyError("level " + std::to_string(n) +
                                 ": c o != m~ on the exact path");
      }
    } else if (!relative_close(layer.c.log(p) + layer.o.log(p),
                               layer.mtilde.log(p), tol)) {
      throw InconsistencyError("level " + std::to_string(n) +
                               ": ln c + ln o disagrees with ln m~");
    }
    out.push_back(std::move(layer));
  }
  return out;
}

std::vector<std::size_t> select_invariant_orbit_union(
    const OrbitPartition& partition, std::size_t count,
    std::span<const Permutation> h_generators) {
  const std::size_t n = partition.orbits.size();
  if (count > n) {
    throw InconsistencyError("cannot select " + std::to_string(count) +
                             " of " + std::to_string(n) + " orbits");
  }
  if (count == 0) return {};

  // Induced action on orbit labels.
  std::vector<std::vector<std::uint32_t>> induced;
  induced.reserve(h_generators.size());
  for (const Permutation& h : h_generators) {
    std::vector<std::uint32_t> img(n);
    for (std::size_t i = 0; i < n; ++i) {
      const Orbit& orb = partition.orbits[i];
      img[i] = partition.orbit_of[h[orb.min_point]];
      for (Point x : orb.points) {
        if (partition.orbit_of[h[x]] != img[i]) {
          throw InconsistencyError(
              "a generator does not permute the orbits (orbit " +
              std::to_string(i) + ")");
        }
      }
    }
    induced.push_back(std::move(img));
  }

  // Blocks in ascending order of their least label.
  std::vector<std::vector<std::size_t>> blocks;
  std::vector<bool> seen(n, false);
  for (std::size_t start = 0; start < n; ++start) {
    if (seen[start]) continue;
    std::vector<std::size_t> block{start};
    seen[start] = true;
    for (std::size_t head = 0; head < block.size(); ++head) {
      for (const auto& img : induced) {
        const std::size_t t = img[block[head]];
        if (!seen[t]) {
          seen[t] = true;
          block.push_back(t);
        }
      }
    }
    blocks.push_back(std::move(block));
  }
  const std::size_t nb = blocks.size();
  std::vector<std::size_t> suffix(nb + 1, 0);
  for (std::size_t i = nb; i-- > 0;) suffix[i] = suffix[i + 1] + blocks[i].size();

  struct Frame {
    std::size_t i;
    std::size_t rem;
    int phase;  // 0 fresh, 1 include tried, 2 exclude tried
  };
  std::unordered_set<std::uint64_t> failed;
  auto key = [](std::size_t i, std::size_t rem) {
    return (static_cast<std::uint64_t>(i) << 32) ^ rem;
  };
  std::vector<Frame> stack{{0, count, 0}};
  bool found = false;
  while (!stack.empty()) {
    Frame& f = stack.back();
    if (f.rem == 0) {
      found = true;
      break;
    }
    if (f.phase == 0 &&
        (f.i == nb || suffix[f.i] < f.rem || failed.count(key(f.i, f.rem)))) {
      stack.pop_back();
      continue;
    }
    if (f.phase == 0) {
      f.phase = 1;
      const std::size_t sz = blocks[f.i].size();
      if (sz <= f.rem) {
        stack.push_back({f.i + 1, f.rem - sz, 0});
        continue;
      }
    }
    if (f.phase == 1) {
      f.phase = 2;
      stack.push_back({f.i + 1, f.rem, 0});
      continue;
    }
    failed.insert(key(f.i, f.rem));
    stack.pop_back();
  }

  if (!found) {
    std::vector<std::size_t> sizes;
    for (const auto& b : blocks) sizes.push_back(b.size());
    std::sort(sizes.begin(), sizes.end());
    std::string msg = "no invariant union of " + std::to_string(count) +
                      " orbits; block sizes:";
    for (std::size_t s : sizes) msg += " " + std::to_string(s);
    throw SelectionInfeasible(msg, std::move(sizes), count);
  }

  std::vector<std::size_t> chosen;
  for (std::size_t k = 0; k + 1 < stack.size(); ++k) {
    // A frame in phase 1 has its include branch on the stack.
    if (stack[k].phase == 1) {
      chosen.insert(chosen.end(), blocks[stack[k].i].begin(),
                    blocks[stack[k].i].end());
    }
  }
  std::sort(chosen.begin(), chosen.end());
  return chosen;
}

ExplicitResult explicit_layers(const SequenceSpec& seq, const Rational& alpha,
                               std::uint64_t max_points,
                               std::size_t max_levels) {
  check_alpha(alpha);
  seq.validate(1);
  ExplicitResult res;
  for (std::size_t n = 1; max_levels == 0 || n <= max_levels; ++n) {
    const PermGroupSpec spec = seq.level(n);
    const std::size_t coords = n == 1 ? 1 : res.layers.back().domain.size();
    const auto size = ProductDomain::size_of(spec.degree, coords);
    if (!size || *size > max_points) {
      res.truncated = true;
      res.truncated_level = n;
      res.truncation_reason =
          "level " + std::to_string(n) + " needs " + std::to_string(spec.degree) +
          "^" + std::to_string(coords) + " points, above the cap of " +
          std::to_string(max_points);
      break;
    }

    ExplicitLayer layer;
    layer.level = n;
    layer.domain = ProductDomain(spec.degree, coords, max_points);
    layer.base = standard_generators(spec);
    if (n > 1) {
      const ExplicitLayer& prev = res.layers.back();
      layer.support = prev.selected_points;
      for (Point i : layer.support) {
        auto gens = coordinate_subgroup_generators(layer.base, i, layer.domain);
        for (auto& g : gens) layer.k_generators.push_back(std::move(g));
      }
      layer.h_generators = top_action_generators(
          PermGroup{prev.domain.size(), prev.h_generators}, layer.domain);
      layer.h_generators.insert(layer.h_generators.end(),
                                layer.k_generators.begin(),
                                layer.k_generators.end());
    }
    layer.partition = orbits(layer.k_generators, layer.domain.size());

    mpz_class count = alpha.num() *
                      static_cast<unsigned long>(layer.partition.orbits.size());
    mpz_fdiv_q(count.get_mpz_t(), count.get_mpz_t(), alpha.den().get_mpz_t());
    layer.selected = select_invariant_orbit_union(
        layer.partition, count.get_ui(), layer.h_generators);
    for (std::size_t i : layer.selected) {
      const auto& pts = layer.partition.orbits[i].points;
      layer.selected_points.insert(layer.selected_points.end(), pts.begin(),
                                   pts.end());
    }
    std::sort(layer.selected_points.begin(), layer.selected_points.end());
    res.layers.push_back(std::move(layer));
  }
  return res;
}

bool VerificationReport::all_passed() const {
  return std::all_of(checks.begin(), checks.end(),
                     [](const PropertyCheck& c) { return c.passed; });
}

namespace {

PropertyCheck check_normalization(const ExplicitLayer& layer,
                                  std::uint64_t budget) {
  PropertyCheck chk{"normalization", true, false, ""};
  const ProductDomain& dom = layer.domain;
  const std::size_t d = dom.coordinates();
  const std::size_t m = dom.alphabet();
  const std::uint64_t per_pair = static_cast<std::uint64_t>(dom.size()) * d;
  const std::uint64_t pairs =
      static_cast<std::uint64_t>(layer.h_generators.size()) *
      layer.k_generators.size();
  if (pairs == 0) {
    chk.detail = "no generator pairs";
    return chk;
  }
  if (per_pair * pairs > budget) {
    chk.skipped = true;
    chk.detail = "skipped: " + std::to_string(pairs) + " pairs over budget";
    return chk;
  }

  std::vector<bool> in_support(d, false);
  for (Point i : layer.support) in_support[i] = true;
  std::unordered_set<Permutation, PermutationHash> base_elements;
  bool membership = true;
  try {
    for (auto& g : enumerate_group(layer.base.generators, m)) {
      base_elements.insert(std::move(g));
    }
  } catch (const CapacityError&) {
    membership = false;
  }

  std::vector<std::int64_t> sigma(d * m);
  for (std::size_t hi = 0; hi < layer.h_generators.size(); ++hi) {
    const Permutation& h = layer.h_generators[hi];
    const Permutation hinv = h.inverse();
    for (std::size_t ki = 0; ki < layer.k_generators.size(); ++ki) {
      const Permutation conj = hinv * layer.k_generators[ki] * h;
      std::fill(sigma.begin(), sigma.end(), -1);
      for (std::size_t x = 0; x < dom.size(); ++x) {
        const Point y = conj[static_cast<Point>(x)];
        for (std::size_t j = 0; j < d; ++j) {
          const std::size_t a = dom.digit(static_cast<Point>(x), j);
          const std::size_t b = dom.digit(y, j);
          if (!in_support[j]) {
            if (a != b) {
              chk.passed = false;
              chk.detail = "conjugate of K generator " + std::to_string(ki) +
                           " by H generator " + std::to_string(hi) +
                           " moves coordinate " + std::to_string(j);
              return chk;
            }
            continue;
          }
          std::int64_t& s = sigma[j * m + a];
          if (s < 0) {
            s = static_cast<std::int64_t>(b);
          } else if (s != static_cast<std::int64_t>(b)) {
            chk.passed = false;
            chk.detail = "conjugate of K generator " + std::to_string(ki) +
                         " is not coordinatewise at coordinate " +
                         std::to_string(j);
            return chk;
          }
        }
      }
      if (!membership) continue;
      for (Point j : layer.support) {
        std::vector<Point> images(m);
        for (std::size_t a = 0; a < m; ++a) {
          images[a] = static_cast<Point>(sigma[j * m + a]);
        }
        if (!base_elements.count(Permutation(std::move(images)))) {
          chk.passed = false;
          chk.detail = "conjugate acts outside S_n at coordinate " +
                       std::to_string(j);
          return chk;
        }
      }
    }
  }
  chk.detail = std::to_string(pairs) + " conjugates lie in K_n";
  if (!membership) chk.detail += " (coordinate membership in S_n not enumerated)";
  return chk;
}

}  // namespace

VerificationReport verify_layer(const ExplicitLayer& layer,
                                const LayerParams& params,
                                const VerifyOptions& options) {
  VerificationReport rep;
  rep.level = layer.level;
  const auto& orbs = layer.partition.orbits;
  if (params.level != layer.level) {
    rep.checks.push_back({"level", false, false,
                          "explicit level " + std::to_string(layer.level) +
                              " vs recursion level " +
                              std::to_string(params.level)});
    return rep;
  }

  // (a)
  {
    PropertyCheck chk{"orbit-count", false, false, ""};
    const std::string got = std::to_string(orbs.size());
    chk.passed = params.c.is_exact() && params.c.value() == orbs.size();
    chk.detail = got + " orbits, c_n = " + params.c.repr();
    rep.checks.push_back(std::move(chk));
  }
  {
    PropertyCheck chk{"orbit-size", true, false, ""};
    if (!params.o.is_exact()) {
      chk.passed = false;
      chk.detail = "o_n is log-domain";
    } else {
      for (std::size_t i = 0; i < orbs.size(); ++i) {
        if (params.o.value() != orbs[i].points.size()) {
          chk.passed = false;
          chk.detail = "orbit " + std::to_string(i) + " has " +
                       std::to_string(orbs[i].points.size()) + " points, o_n = " +
                       params.o.repr();
          break;
        }
      }
      if (chk.passed) chk.detail = "all orbits have " + params.o.repr() + " points";
    }
    rep.checks.push_back(std::move(chk));
  }
  // (b)
  {
    PropertyCheck chk{"c*o=m~", false, false, ""};
    chk.passed = params.exact &&
                 params.c.value() * params.o.value() == params.mtilde.value() &&
                 params.mtilde.value() == layer.domain.size();
    chk.detail = params.c.repr() + " * " + params.o.repr() + " vs " +
                 std::to_string(layer.domain.size()) + " points";
    rep.checks.push_back(std::move(chk));
  }
  // (c)
  {
    PropertyCheck chk{"invariance", false, false, ""};
    const bool count_ok = params.floor_term.is_exact() &&
                          params.floor_term.value() == layer.selected.size();
    const bool inv = is_invariant(layer.selected_points, layer.h_generators);
    const bool comp = complement_invariance_agrees(
        layer.selected_points, layer.h_generators, layer.domain.size());
    chk.passed = count_ok && inv && comp;
    chk.detail = std::to_string(layer.selected.size()) + " orbits selected (" +
                 params.floor_term.repr() + " required), " +
                 (inv ? "invariant" : "NOT invariant") + " under " +
                 std::to_string(layer.h_generators.size()) + " generators";
    rep.checks.push_back(std::move(chk));
  }
  if (options.expected_order) {
    PropertyCheck chk{"order", true, false, ""};
    const BigNat& want = *options.expected_order;
    const BigNat work = want * static_cast<unsigned long>(layer.domain.size());
    if (work > BigNat(static_cast<unsigned long>(options.enumeration_budget))) {
      chk.skipped = true;
      chk.detail = "skipped: |H| = " + to_decimal(want) + " over budget";
    } else {
      const auto elems = enumerate_group(
          layer.h_generators, layer.domain.size(),
          std::max<std::uint64_t>(want.get_ui() + 1, 1));
      chk.passed = want == elems.size();
      chk.detail = "|H_n| = " + std::to_string(elems.size()) + ", formula " +
                   to_decimal(want);
    }
    rep.checks.push_back(std::move(chk));
  }
  if (layer.level >= 2) {
    rep.checks.push_back(check_normalization(layer, options.normalization_budget));
  }
  return rep;
}

std::optional<BigNat> h_order_formula(std::span<const LayerParams> layers,
                                      const SequenceSpec& seq, std::size_t n,
                                      std::uint64_t max_bits) {
  if (n > layers.size()) return std::nullopt;
  BigNat order = 1;
  for (std::size_t j = 2; j <= n; ++j) {
    const LayerParams& lp = layers[j - 1];
    if (!lp.e || !lp.e->is_exact() || !lp.e->value().fits_ulong_p()) {
      return std::nullopt;
    }
    const unsigned long e = lp.e->value().get_ui();
    const BigNat s = group_order(seq.level(j));
    if (BigNat(e) * bit_length(s) > BigNat(static_cast<unsigned long>(max_bits))) {
      return std::nullopt;
    }
    BigNat p;
    mpz_pow_ui(p.get_mpz_t(), s.get_mpz_t(), e);
    order *= p;
    if (bit_length(order) > max_bits) return std::nullopt;
  }
  return order;
}

std::string export_layers_yaml(const ExplicitResult& result, bool with_orbits) {
  YAML::Emitter out;
  out << YAML::BeginMap;
  out << YAML::Key << "truncated" << YAML::Value << result.truncated;
  if (result.truncated) {
    out << YAML::Key << "truncated_level" << YAML::Value
        << result.truncated_level;
    out << YAML::Key << "reason" << YAML::Value << result.truncation_reason;
  }
  out << YAML::Key << "levels" << YAML::Value << YAML::BeginSeq;
  for (const ExplicitLayer& layer : result.layers) {
    out << YAML::BeginMap;
    out << YAML::Key << "level" << YAML::Value << layer.level;
    out << YAML::Key << "alphabet" << YAML::Value << layer.domain.alphabet();
    out << YAML::Key << "coordinates" << YAML::Value
        << layer.domain.coordinates();
    out << YAML::Key << "points" << YAML::Value << layer.domain.size();
    out << YAML::Key << "support" << YAML::Value << YAML::Flow
        << layer.support;
    out << YAML::Key << "k_generators" << YAML::Value << YAML::BeginSeq;
    for (const auto& g : layer.k_generators) out << g.cycles();
    out << YAML::EndSeq;
    out << YAML::Key << "h_generators" << YAML::Value << YAML::BeginSeq;
    for (const auto& g : layer.h_generators) out << g.cycles();
    out << YAML::EndSeq;
    out << YAML::Key << "orbit_count" << YAML::Value
        << layer.partition.orbits.size();
    if (with_orbits) {
      out << YAML::Key << "orbits" << YAML::Value << YAML::BeginSeq;
      for (const Orbit& o : layer.partition.orbits) {
        out << YAML::Flow << o.points;
      }
      out << YAML::EndSeq;
    }
    out << YAML::Key << "selected" << YAML::Value << YAML::Flow
        << layer.selected;
    std::vector<Point> mins;
    for (std::size_t i : layer.selected) {
      mins.push_back(layer.partition.orbits[i].min_point);
    }
    out << YAML::Key << "selected_min_points" << YAML::Value << YAML::Flow
        << mins;
    out << YAML::EndMap;
  }
  out << YAML::EndSeq << YAML::EndMap;
  return std::string(out.c_str()) + "\n";
}

}  // namespace hdim
