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

#include "hdim/sequences.hpp"

#include <yaml-cpp/yaml.h>

#include <algorithm>
#include <fstream>
#include <sstream>

#include "hdim/errors.hpp"

namespace hdim {

Family parse_family(std::string_view name) {
  if (name == "sym" || name == "symmetric") return Family::kSymmetric;
  if (name == "alt" || name == "alternating") return Family::kAlternating;
  if (name == "cyc" || name == "cyclic") return Family::kCyclic;
  if (name == "custom") return Family::kCustom;
  throw ConfigError("unknown group family '" + std::string(name) + "'");
}

std::string_view family_name(Family f) {
  switch (f) {
    case Family::kSymmetric:
      return "sym";
    case Family::kAlternating:
      return "alt";
    case Family::kCyclic:
      return "cyc";
    case Family::kCustom:
      return "custom";
  }
  return "?";
}

void PermGroupSpec::validate() const {
  if (degree < 2) {
    throw ConfigError(label() + ": degree must be at least 2");
  }
  if (family == Family::kAlternating && degree < 3) {
    throw ConfigError(label() + ": alternating groups need degree >= 3");
  }
  if (degree > (1U << 20)) {
    throw ConfigError(label() + ": degree too large");
  }
  if (family == Family::kCustom) {
    if (generators.empty()) {
      throw ConfigError(label() + ": custom groups need generators");
    }
    std::vector<Permutation> gens;
    for (const auto& g : generators) {
      gens.push_back(Permutation::from_cycles(g, degree));
    }
    if (!is_transitive(gens, degree)) {
      throw ConfigError(label() + ": group is not transitive");
    }
  } else if (!generators.empty()) {
    throw ConfigError(label() + ": generators are only allowed for custom");
  }
}

std::string PermGroupSpec::label() const {
  const std::string m = std::to_string(degree);
  switch (family) {
    case Family::kSymmetric:
      return "Sym(" + m + ")";
    case Family::kAlternating:
      return "Alt(" + m + ")";
    case Family::kCyclic:
      return "C(" + m + ")";
    case Family::kCustom: {
      std::string s = "custom(" + m + ";";
      for (const auto& g : generators) s += " " + g;
      return s + ")";
    }
  }
  return "?";
}

SequenceSpec SequenceSpec::constant(PermGroupSpec group) {
  SequenceSpec s;
  s.prefix.push_back(std::move(group));
  s.tail = TailRule::kRepeatLast;
  return s;
}

SequenceSpec SequenceSpec::from_formula(Family family, DegreeFormula formula) {
  if (family == Family::kCustom) {
    throw ConfigError("formula tails need a named family");
  }
  SequenceSpec s;
  s.tail = TailRule::kFormula;
  s.tail_family = family;
  s.degree_formula = std::move(formula);
  s.prefix.push_back(s.level(1));
  return s;
}

PermGroupSpec SequenceSpec::level(std::size_t k) const {
  if (k == 0) throw ConfigError("levels are numbered from 1");
  if (k <= prefix.size()) return prefix[k - 1];
  if (tail == TailRule::kRepeatLast) {
    if (prefix.empty()) throw ConfigError("sequence has an empty prefix");
    return prefix.back();
  }
  if (!degree_formula) throw ConfigError("formula tail without a formula");
  const std::int64_t d = degree_formula->eval(static_cast<std::int64_t>(k));
  PermGroupSpec spec;
  spec.family = tail_family;
  if (d < 2 || d > (1 << 20)) {
    throw ConfigError("degree formula '" + degree_formula->text() +
                      "' gives " + std::to_string(d) + " at k = " +
                      std::to_string(k));
  }
  spec.degree = static_cast<std::size_t>(d);
  return spec;
}

void SequenceSpec::validate(std::size_t levels) const {
  if (prefix.empty()) throw ConfigError("sequence prefix must be non-empty");
  if (tail == TailRule::kFormula &&
      (!degree_formula || tail_family == Family::kCustom)) {
    throw ConfigError("formula tails need a named family and a formula");
  }
  for (const auto& g : prefix) g.validate();
  for (std::size_t k = prefix.size() + 1; k <= levels; ++k) level(k).validate();
}

namespace {

PermGroupSpec group_from_yaml(const YAML::Node& node) {
  if (!node.IsMap()) throw ConfigError("each level must be a mapping");
  PermGroupSpec spec;
  if (!node["family"] || !node["degree"]) {
    throw ConfigError("each level needs 'family' and 'degree'");
  }
  spec.family = parse_family(node["family"].as<std::string>());
  const long long degree = node["degree"].as<long long>();
  if (degree < 0) throw ConfigError("degree must be positive");
  spec.degree = static_cast<std::size_t>(degree);
  if (const YAML::Node gens = node["generators"]) {
    if (!gens.IsSequence()) throw ConfigError("'generators' must be a list");
    for (const auto& g : gens) spec.generators.push_back(g.as<std::string>());
  }
  return spec;
}

}  // namespace

SequenceSpec parse_sequence_yaml(std::string_view text) {
  SequenceSpec seq;
  try {
    const YAML::Node root = YAML::Load(std::string(text));
    if (!root.IsMap()) throw ConfigError("sequence spec must be a mapping");
    const YAML::Node levels = root["levels"];
    if (!levels || !levels.IsSequence() || levels.size() == 0) {
      throw ConfigError("sequence spec needs a non-empty 'levels' list");
    }
    for (const auto& level : levels) seq.prefix.push_back(group_from_yaml(level));
    if (const YAML::Node tail = root["tail"]) {
      const std::string rule =
          tail["rule"] ? tail["rule"].as<std::string>() : "repeat-last";
      if (rule == "repeat-last") {
        seq.tail = TailRule::kRepeatLast;
      } else if (rule == "formula") {
        seq.tail = TailRule::kFormula;
        if (!tail["family"] || !tail["degree_formula"]) {
          throw ConfigError("formula tails need 'family' and 'degree_formula'");
        }
        seq.tail_family = parse_family(tail["family"].as<std::string>());
        seq.degree_formula =
            DegreeFormula::parse(tail["degree_formula"].as<std::string>());
      } else {
        throw ConfigError("unknown tail rule '" + rule + "'");
      }
    }
  } catch (const YAML::Exception& e) {
    throw ConfigError(std::string("sequence spec: ") + e.what());
  }
  seq.validate(seq.prefix.size());
  return seq;
}

SequenceSpec load_sequence_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read sequence spec '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_sequence_yaml(buf.str());
}

PermGroup standard_generators(const PermGroupSpec& spec) {
  spec.validate();
  const std::size_t m = spec.degree;
  PermGroup g;
  g.degree = m;
  auto cycle = [m](std::size_t from, std::size_t to) {
    std::vector<Point> images(m);
    for (std::size_t i = 0; i < m; ++i) images[i] = static_cast<Point>(i);
    for (std::size_t i = from; i < to; ++i) images[i] = static_cast<Point>(i + 1);
    images[to] = static_cast<Point>(from);
    return Permutation(std::move(images));
  };
  switch (spec.family) {
    case Family::kSymmetric:
      g.generators.push_back(cycle(0, 1));
      if (m > 2) g.generators.push_back(cycle(0, m - 1));
      break;
    case Family::kAlternating:
      g.generators.push_back(cycle(0, 2));
      if (m > 3) g.generators.push_back(m % 2 == 1 ? cycle(0, m - 1) : cycle(1, m - 1));
      break;
    case Family::kCyclic:
      g.generators.push_back(cycle(0, m - 1));
      break;
    case Family::kCustom:
      for (const auto& c : spec.generators) {
        g.generators.push_back(Permutation::from_cycles(c, m));
      }
      break;
  }
  return g;
}

BigNat group_order(const PermGroupSpec& spec, std::uint64_t cap) {
  spec.validate();
  BigNat f;
  switch (spec.family) {
    case Family::kSymmetric:
      mpz_fac_ui(f.get_mpz_t(), spec.degree);
      return f;
    case Family::kAlternating:
      mpz_fac_ui(f.get_mpz_t(), spec.degree);
      return f / 2;
    case Family::kCyclic:
      return BigNat(static_cast<unsigned long>(spec.degree));
    case Family::kCustom: {
      const PermGroup g = standard_generators(spec);
      return BigNat(static_cast<unsigned long>(
          enumerate_group(g.generators, g.degree, cap).size()));
    }
  }
  return f;
}

ExtReal log_order(const PermGroupSpec& spec, long precision,
                  std::uint64_t cap) {
  spec.validate();
  switch (spec.family) {
    case Family::kSymmetric:
      return ExtReal::log_factorial(spec.degree, precision);
    case Family::kAlternating:
      return ExtReal::log_factorial(spec.degree, precision) -
             ExtReal::ln2(precision);
    case Family::kCyclic:
      return ExtReal::log_of(spec.degree, precision);
    case Family::kCustom:
      return log(ExtReal::from_integer(group_order(spec, cap), precision));
  }
  return ExtReal();
}

LevelCatalog::LevelCatalog(const SequenceSpec& seq, long precision,
                           std::uint64_t cap)
    : seq_(seq), precision_(precision), cap_(cap) {}

const LevelCatalog::Entry& LevelCatalog::at(std::size_t k) {
  PermGroupSpec spec = seq_.level(k);
  const std::string key = spec.label();
  auto it = by_label_.find(key);
  if (it != by_label_.end()) return it->second;
  Entry e;
  e.group = standard_generators(spec);
  e.order = group_order(spec, cap_);
  e.log_order = log(ExtReal::from_integer(e.order, precision_));
  if (spec.family != Family::kCustom) e.log_order = log_order(spec, precision_);
  e.spec = std::move(spec);
  return by_label_.emplace(key, std::move(e)).first->second;
}

GoodnessReport goodness_check(const SequenceSpec& seq, std::size_t horizon,
                              const GoodnessOptions& options) {
  if (horizon < 2) throw ConfigError("goodness horizon must be at least 2");
  const long p = options.precision;
  GoodnessReport report;
  report.horizon = horizon;
  report.m0 = 1;
  report.analytic_tail = seq.tail == TailRule::kRepeatLast;
  report.horizon_limited = !report.analytic_tail;

  // With a repeat-last tail every ratio past the prefix equals 1.
  const std::size_t scan =
      report.analytic_tail ? std::min(horizon, seq.prefix.size() + 1) : horizon;
  LevelCatalog catalog(seq, p, options.cap);
  const ExtReal a_max(options.a_max, p);
  ExtReal a(1.0, p);
  for (std::size_t k = 1; k < scan; ++k) {
    const ExtReal ratio = catalog.at(k).log_order / catalog.at(k + 1).log_order;
    report.ratios.push_back(ratio.to_double());
    if (ratio > a) a = ratio;
    if (ratio > a_max && !report.counterexample) report.counterexample = k;
  }
  report.a_constant = a;
  report.is_good = !report.counterexample.has_value();
  return report;
}

}  // namespace hdim
