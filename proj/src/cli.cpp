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

#include "hdim/cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <new>
#include <sstream>

#include "hdim/construction.hpp"
#include "hdim/dimension.hpp"
#include "hdim/errors.hpp"

namespace hdim {

namespace {

ArithConfig arith_of(const RunConfig& config) {
  ArithConfig cfg;
  cfg.precision = config.precision;
  cfg.threshold_bits = config.threshold_bits;
  cfg.validate();
  return cfg;
}

Rational alpha_of(const RunConfig& config) {
  const Rational a = Rational::parse(config.alpha);
  if (a.sign() < 0 || a > Rational(1, 1)) {
    throw ConfigError("--alpha must lie in [0, 1], got " + a.str());
  }
  return a;
}

void check_levels(const RunConfig& config) {
  if (config.levels == 0) throw ConfigError("--levels must be at least 1");
}

// Writes to --out when given, otherwise to `fallback`.
template <typename Fn>
void emit(const RunConfig& config, std::ostream& fallback, Fn&& write) {
  if (!config.out) {
    write(fallback);
    return;
  }
  std::ofstream file(*config.out, std::ios::binary);
  if (!file) throw ConfigError("cannot write '" + *config.out + "'");
  write(file);
  if (!file) throw ConfigError("error writing '" + *config.out + "'");
}

std::string opt_level(const std::optional<std::size_t>& m) {
  return m ? std::to_string(*m) : std::string("none");
}

}  // namespace

SequenceSpec resolve_sequence(const RunConfig& config) {
  SequenceSpec seq;
  if (config.spec_path) {
    if (config.degree || config.degree_formula) {
      throw ConfigError("--spec cannot be combined with --degree");
    }
    seq = load_sequence_file(*config.spec_path);
  } else {
    const Family family = parse_family(config.family);
    if (family == Family::kCustom) {
      throw ConfigError("custom groups need a --spec file");
    }
    if (config.degree && config.degree_formula) {
      throw ConfigError("give either --degree or --degree-formula");
    }
    if (config.degree_formula) {
      seq = SequenceSpec::from_formula(
          family, DegreeFormula::parse(*config.degree_formula));
    } else if (config.degree) {
      PermGroupSpec g;
      g.family = family;
      g.degree = *config.degree;
      seq = SequenceSpec::constant(std::move(g));
    } else {
      throw ConfigError("need --spec, --degree or --degree-formula");
    }
  }
  seq.validate(std::max<std::size_t>(config.levels, 1));
  return seq;
}

int cmd_compute(const RunConfig& config, std::ostream& out, std::ostream& err) {
  check_levels(config);
  const ArithConfig cfg = arith_of(config);
  const Rational alpha = alpha_of(config);
  const SequenceSpec seq = resolve_sequence(config);
  const DimensionTrace trace = dimension_trace(
      layer_recursion(seq, alpha, config.levels, cfg), alpha, cfg.precision);
  emit(config, out, [&](std::ostream& s) { write_trace_csv(s, trace); });

  std::ostream& summary = config.out ? out : err;
  const DimensionRow& last = trace.rows.back();
  summary << "D_" << last.level << " = " << format_double(last.d) << '\n'
          << "residual = " << last.residual.str() << '\n'
          << "error bound = " << last.error_bound.str() << '\n';
  return 0;
}

int cmd_verify(const RunConfig& config, std::ostream& out, std::ostream& err) {
  check_levels(config);
  const ArithConfig cfg = arith_of(config);
  const Rational alpha = alpha_of(config);
  const SequenceSpec seq = resolve_sequence(config);
  const ExplicitResult ex =
      explicit_layers(seq, alpha, config.max_points, config.levels);
  const auto params = layer_recursion(
      seq, alpha, std::max<std::size_t>(ex.layers.size(), 1), cfg);

  bool ok = true;
  for (const ExplicitLayer& layer : ex.layers) {
    VerifyOptions vo;
    vo.expected_order = h_order_formula(params, seq, layer.level);
    const VerificationReport rep =
        verify_layer(layer, params[layer.level - 1], vo);
    out << "level " << layer.level << " (" << layer.domain.size()
        << " points, " << layer.partition.orbits.size() << " orbits)\n";
    for (const PropertyCheck& c : rep.checks) {
      out << "  " << (c.skipped ? "SKIP" : (c.passed ? "PASS" : "FAIL")) << ' '
          << c.name << ": " << c.detail << '\n';
    }
    out << "  selected orbit min points:";
    std::size_t shown = 0;
    for (std::size_t i : layer.selected) {
      if (shown++ == 32) {
        out << " ... (" << layer.selected.size() << " total)";
        break;
      }
      out << ' ' << layer.partition.orbits[i].min_point;
    }
    out << '\n';
    ok = ok && rep.all_passed();
  }
  if (ex.truncated) out << "truncated: " << ex.truncation_reason << '\n';
  if (config.out) {
    emit(config, out, [&](std::ostream& s) { s << export_layers_yaml(ex); });
  }
  out << (ok ? "all checks passed" : "verification FAILED") << '\n';
  if (!ok) err << "verification failed\n";
  return ok ? 0 : static_cast<int>(ErrorKind::kInconsistency);
}

int cmd_diagnose(const RunConfig& config, std::ostream& out,
                 std::ostream& /*err*/) {
  check_levels(config);
  const ArithConfig cfg = arith_of(config);
  const Rational alpha = alpha_of(config);
  const SequenceSpec seq = resolve_sequence(config);
  const long p = cfg.precision;

  GoodnessOptions go;
  go.precision = p;
  go.a_max = config.a_max;
  const GoodnessReport good =
      goodness_check(seq, std::max<std::size_t>(config.levels, 2), go);
  out << "goodness: " << (good.is_good ? "good" : "NOT good")
      << ", A = " << good.a_constant.str() << ", M0 = " << good.m0;
  if (good.counterexample) out << ", counterexample k = " << *good.counterexample;
  out << (good.horizon_limited
              ? ", horizon-limited (" + std::to_string(good.horizon) + " levels)"
              : ", decided analytically")
      << '\n';

  const DimensionTrace trace = dimension_trace(
      layer_recursion(seq, alpha, config.levels, cfg), alpha, p);
  if (config.levels >= 2) {
    const GrowthReport growth = growth_diagnostics(trace.layers, config.c_list, p);
    out << "growth: m~_n >= n at all " << config.levels << " levels\n";
    for (std::size_t i = 0; i < growth.ratios.size(); ++i) {
      out << "  m~_" << i + 1 << "/m~_" << i + 2 << " = "
          << growth.ratios[i].str() << '\n';
    }
    for (const Threshold& t : growth.thresholds) {
      out << "  C = " << format_double(t.c) << ": C m~_{n-1} <= m~_n from n = "
          << opt_level(t.m) << '\n';
    }
  }

  const ClaimReport claims =
      claim_diagnostics(trace, config.c_list, good.is_good, p);
  if (claims.advisory) out << "claims (advisory: sequence not good)\n";
  out << "n,limit2,limit2_dev,sum_a_excess,sum_b_excess,a_prev_over_a\n";
  for (const ClaimRow& r : claims.rows) {
    out << r.level << ',' << r.limit2.str() << ',' << r.limit2_deviation.str()
        << ',' << r.limit11_excess.str() << ','
        << (r.limit1_excess ? r.limit1_excess->str() : std::string()) << ','
        << (r.nice3 ? r.nice3->str() : std::string()) << '\n';
  }
  out << "M(2) = " << opt_level(claims.m2) << ", M^ = " << opt_level(claims.m_hat)
      << '\n';
  for (const Threshold& t : claims.thresholds) {
    out << "M(" << format_double(t.c) << ") = " << opt_level(t.m) << '\n';
  }
  for (const InequalityCheck& c : claims.checks) {
    out << (c.passed ? "PASS " : "FAIL ") << c.name << " (n >= " << c.from_level
        << ")";
    if (c.failed_at) out << " fails at n = " << *c.failed_at;
    out << '\n';
  }
  return 0;
}

int run_cli(int argc, const char* const* argv, std::ostream& out,
            std::ostream& err) {
  CLI::App app{"Subgroups of iterated wreath products and their dimensions"};
  app.require_subcommand(1);
  RunConfig config;
  std::string c_list;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--spec", config.spec_path, "YAML sequence spec");
    sub->add_option("--family", config.family, "sym, alt or cyc")
        ->check(CLI::IsMember({"sym", "alt", "cyc", "symmetric", "alternating",
                               "cyclic"}));
    sub->add_option("--degree", config.degree, "constant degree m");
    sub->add_option("--degree-formula", config.degree_formula,
                    "degree as an expression in k, e.g. k+2");
    sub->add_option("--alpha", config.alpha, "target as a fraction P/Q");
    sub->add_option("--levels", config.levels, "number of levels N");
    sub->add_option("--precision", config.precision, "working precision, bits")
        ->envname("HDIM_PRECISION");
    sub->add_option("--threshold", config.threshold_bits,
                    "exact/log promotion threshold, bits");
    sub->add_option("--max-points", config.max_points,
                    "largest explicit domain");
    sub->add_option("--out", config.out, "output file");
  };
  CLI::App* compute = app.add_subcommand("compute", "dimension trace as CSV");
  CLI::App* verify =
      app.add_subcommand("verify", "explicit layers against the recursion");
  CLI::App* diagnose = app.add_subcommand("diagnose", "limits and thresholds");
  for (CLI::App* sub : {compute, verify, diagnose}) add_common(sub);
  diagnose->add_option("--c-list", c_list, "comma-separated constants C");
  diagnose->add_option("--a-max", config.a_max,
                       "largest acceptable goodness constant A");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : static_cast<int>(ErrorKind::kConfig);
  }

  try {
    if (!c_list.empty()) {
      config.c_list.clear();
      std::stringstream ss(c_list);
      std::string item;
      while (std::getline(ss, item, ',')) {
        std::size_t used = 0;
        double v = 0.0;
        try {
          v = std::stod(item, &used);
        } catch (const std::exception&) {
          used = 0;
        }
        if (used == 0 || used != item.size() || !(v > 0.0)) {
          throw ConfigError("--c-list entries must be positive numbers, got '" +
                            item + "'");
        }
        config.c_list.push_back(v);
      }
    }
    if (*compute) {
      config.command = "compute";
      return cmd_compute(config, out, err);
    }
    if (*verify) {
      config.command = "verify";
      return cmd_verify(config, out, err);
    }
    config.command = "diagnose";
    return cmd_diagnose(config, out, err);
  } catch (const SelectionInfeasible& e) {
    err << "error: " << e.what() << "\ncertificate: target " << e.target()
        << ", block sizes";
    for (std::size_t s : e.block_sizes()) err << ' ' << s;
    err << '\n';
    return e.exit_code();
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return e.exit_code();
  } catch (const std::bad_alloc&) {
    err << "error: out of memory\n";
    return static_cast<int>(ErrorKind::kCapacity);
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return static_cast<int>(ErrorKind::kInconsistency);
  }
}

}  // namespace hdim
