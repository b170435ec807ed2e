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

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "hdim/cli.hpp"
#include "hdim/construction.hpp"
#include "hdim/dimension.hpp"
#include "hdim/errors.hpp"
#include "hdim/sequences.hpp"

namespace py = pybind11;
using namespace hdim;

namespace {

py::object to_pyint(const BigNat& n) {
  const std::string s = n.get_str(16);
  return py::reinterpret_steal<py::object>(
      PyLong_FromString(s.c_str(), nullptr, 16));
}

py::object mag_value(const Magnitude& m) {
  return m.is_exact() ? to_pyint(m.value()) : py::none();
}

py::object fraction(const Rational& q) {
  static py::object cls = py::module_::import("fractions").attr("Fraction");
  return cls(to_pyint(q.num()), to_pyint(q.den()));
}

PermGroupSpec group_spec(const std::string& family, std::size_t degree,
                         std::vector<std::string> generators) {
  PermGroupSpec g;
  g.family = parse_family(family);
  g.degree = degree;
  g.generators = std::move(generators);
  g.validate();
  return g;
}

ArithConfig arith(long precision, std::uint64_t threshold) {
  ArithConfig cfg;
  cfg.precision = precision;
  cfg.threshold_bits = threshold;
  return cfg;
}

py::dict layer_dict(const LayerParams& l) {
  py::dict d;
  d["level"] = l.level;
  d["m"] = l.m;
  d["log_order"] = l.log_order.to_double();
  d["mtilde_prev"] = mag_value(l.mtilde_prev);
  d["e"] = l.e ? mag_value(*l.e) : py::none();
  d["c"] = mag_value(l.c);
  d["o"] = mag_value(l.o);
  d["mtilde"] = mag_value(l.mtilde);
  d["floor_term"] = mag_value(l.floor_term);
  d["c_repr"] = l.c.repr();
  d["o_repr"] = l.o.repr();
  d["mtilde_repr"] = l.mtilde.repr();
  d["exact"] = l.exact;
  d["error_bound"] = l.error_bound.str();
  return d;
}

}  // namespace

PYBIND11_MODULE(_hdim, m) {
  m.doc() = "Subgroups of iterated wreath products and their dimensions";

  // Translators run newest first, so the base class goes in first.
  auto base = py::register_exception<Error>(m, "HdimError");
  py::register_exception<ConfigError>(m, "ConfigError", base.ptr());
  py::register_exception<CapacityError>(m, "CapacityError", base.ptr());
  py::register_exception<SelectionInfeasible>(m, "SelectionInfeasible",
                                              base.ptr());
  py::register_exception<InconsistencyError>(m, "InconsistencyError",
                                             base.ptr());

  py::class_<Permutation>(m, "Permutation")
      .def(py::init<std::vector<Point>>(), py::arg("images"))
      .def_static("from_cycles", &Permutation::from_cycles, py::arg("text"),
                  py::arg("degree"))
      .def_property_readonly("degree", &Permutation::degree)
      .def_property_readonly("images", &Permutation::images)
      .def("inverse", &Permutation::inverse)
      .def("cycles", &Permutation::cycles)
      .def("__call__", [](const Permutation& p, Point x) {
        if (x >= p.degree()) throw py::index_error("point out of range");
        return p[x];
      })
      .def("__mul__", [](const Permutation& a, const Permutation& b) {
        if (a.degree() != b.degree()) throw py::value_error("degree mismatch");
        return a * b;
      })
      .def("__eq__", [](const Permutation& a, const Permutation& b) {
        return a == b;
      })
      .def("__hash__", [](const Permutation& p) { return PermutationHash{}(p); })
      .def("__repr__", [](const Permutation& p) {
        return "Permutation('" + p.cycles() + "', " +
               std::to_string(p.degree()) + ")";
      });

  m.def(
      "orbits",
      [](const std::vector<Permutation>& gens, std::size_t degree) {
        std::vector<std::vector<Point>> out;
        for (auto& o : orbits(gens, degree).orbits) out.push_back(o.points);
        return out;
      },
      py::arg("generators"), py::arg("degree"));
  m.def(
      "is_invariant",
      [](const std::vector<Point>& pts, const std::vector<Permutation>& gens) {
        return is_invariant(pts, gens);
      },
      py::arg("points"), py::arg("generators"));
  m.def(
      "group_order",
      [](const std::vector<Permutation>& gens, std::size_t degree,
         std::uint64_t cap) { return enumerate_group(gens, degree, cap).size(); },
      py::arg("generators"), py::arg("degree"),
      py::arg("cap") = kDefaultEnumerationCap);

  py::class_<SequenceSpec>(m, "Sequence")
      .def_static(
          "constant",
          [](const std::string& family, std::size_t degree,
             std::vector<std::string> generators) {
            return SequenceSpec::constant(
                group_spec(family, degree, std::move(generators)));
          },
          py::arg("family"), py::arg("degree"),
          py::arg("generators") = std::vector<std::string>{})
      .def_static(
          "formula",
          [](const std::string& family, const std::string& expr) {
            return SequenceSpec::from_formula(parse_family(family),
                                              DegreeFormula::parse(expr));
          },
          py::arg("family"), py::arg("degree_formula"))
      .def_static("from_yaml", &parse_sequence_yaml, py::arg("text"))
      .def_static("load", &load_sequence_file, py::arg("path"))
      .def(
          "level",
          [](const SequenceSpec& s, std::size_t k) { return s.level(k).label(); },
          py::arg("k"))
      .def(
          "group_order",
          [](const SequenceSpec& s, std::size_t k) {
            return to_pyint(group_order(s.level(k)));
          },
          py::arg("k"));

  m.def(
      "layer_recursion",
      [](const SequenceSpec& seq, const std::string& alpha, std::size_t levels,
         long precision, std::uint64_t threshold) {
        py::list out;
        for (const auto& l : layer_recursion(seq, Rational::parse(alpha), levels,
                                             arith(precision, threshold))) {
          out.append(layer_dict(l));
        }
        return out;
      },
      py::arg("sequence"), py::arg("alpha"), py::arg("levels"),
      py::arg("precision") = kDefaultPrecision,
      py::arg("threshold") = kDefaultThresholdBits);

  m.def(
      "dimension_trace",
      [](const SequenceSpec& seq, const std::string& alpha, std::size_t levels,
         long precision, std::uint64_t threshold) {
        const Rational a = Rational::parse(alpha);
        const DimensionTrace t = dimension_trace(
            layer_recursion(seq, a, levels, arith(precision, threshold)), a,
            precision);
        py::list out;
        for (const DimensionRow& r : t.rows) {
          py::dict d;
          d["level"] = r.level;
          d["d"] = r.d;
          d["residual"] = r.residual.to_double();
          d["residual_repr"] = r.residual.str();
          d["error_bound"] = r.error_bound.str();
          d["exact_d"] = r.exact_d ? fraction(*r.exact_d) : py::none();
          out.append(d);
        }
        return out;
      },
      py::arg("sequence"), py::arg("alpha"), py::arg("levels"),
      py::arg("precision") = kDefaultPrecision,
      py::arg("threshold") = kDefaultThresholdBits);

  m.def(
      "trace_csv",
      [](const SequenceSpec& seq, const std::string& alpha, std::size_t levels,
         long precision) {
        const Rational a = Rational::parse(alpha);
        ArithConfig cfg;
        cfg.precision = precision;
        return trace_csv(
            dimension_trace(layer_recursion(seq, a, levels, cfg), a, precision));
      },
      py::arg("sequence"), py::arg("alpha"), py::arg("levels"),
      py::arg("precision") = kDefaultPrecision);

  m.def(
      "verify",
      [](const SequenceSpec& seq, const std::string& alpha,
         std::uint64_t max_points, std::size_t max_levels) {
        const Rational a = Rational::parse(alpha);
        const ExplicitResult ex = explicit_layers(seq, a, max_points, max_levels);
        const auto params =
            layer_recursion(seq, a, std::max<std::size_t>(ex.layers.size(), 1));
        py::list out;
        for (const ExplicitLayer& layer : ex.layers) {
          VerifyOptions vo;
          vo.expected_order = h_order_formula(params, seq, layer.level);
          const VerificationReport rep =
              verify_layer(layer, params[layer.level - 1], vo);
          py::dict d;
          d["level"] = layer.level;
          d["points"] = layer.domain.size();
          d["orbits"] = layer.partition.orbits.size();
          std::vector<std::size_t> sizes;
          for (const auto& o : layer.partition.orbits) sizes.push_back(o.points.size());
          d["orbit_sizes"] = sizes;
          std::vector<Point> mins;
          for (std::size_t i : layer.selected) {
            mins.push_back(layer.partition.orbits[i].min_point);
          }
          d["selected_min_points"] = mins;
          py::dict checks;
          for (const auto& c : rep.checks) {
            checks[py::str(c.name)] =
                py::make_tuple(c.passed, c.skipped, c.detail);
          }
          d["checks"] = checks;
          d["passed"] = rep.all_passed();
          out.append(d);
        }
        return out;
      },
      py::arg("sequence"), py::arg("alpha"),
      py::arg("max_points") = kDefaultMaxPoints, py::arg("max_levels") = 0);

  m.def(
      "goodness",
      [](const SequenceSpec& seq, std::size_t horizon, double a_max) {
        GoodnessOptions o;
        o.a_max = a_max;
        const GoodnessReport r = goodness_check(seq, horizon, o);
        py::dict d;
        d["is_good"] = r.is_good;
        d["A"] = r.a_constant.to_double();
        d["M0"] = r.m0;
        d["counterexample"] =
            r.counterexample ? py::cast(*r.counterexample) : py::none();
        d["horizon_limited"] = r.horizon_limited;
        d["ratios"] = r.ratios;
        return d;
      },
      py::arg("sequence"), py::arg("horizon") = 16, py::arg("a_max") = 1e4);

  m.def(
      "run_cli",
      [](const std::vector<std::string>& args) {
        std::vector<const char*> argv{"hdim"};
        for (const auto& a : args) argv.push_back(a.c_str());
        std::ostringstream out, err;
        const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
        return py::make_tuple(code, out.str(), err.str());
      },
      py::arg("args"));
}
