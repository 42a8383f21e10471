#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "colift/cli.hpp"
#include "colift/harness.hpp"
#include "colift/simulation.hpp"
#include "colift/system.hpp"

namespace py = pybind11;
using namespace colift;

namespace {

template <class T>
const T& entry(const Registry<T>& reg, const std::optional<std::string>& name) {
  if (name) return reg.at(*name);
  if (reg.empty()) throw ConfigError("the system declares none");
  return reg.entries().front().second;
}

const Coalgebra& side(const SystemDescription& sys, const std::optional<std::string>& name, const Carrier& states) {
  if (name) return sys.coalgebras.at(*name);
  for (const auto& [n, c] : sys.coalgebras.entries())
    if (c.states() == states) return c;
  throw ConfigError("no coalgebra over '" + states.name() + "'");
}

py::tuple report(const CheckReport& r) {
  if (r.holds) return py::make_tuple(true, py::none());
  return py::make_tuple(false, py::make_tuple(r.witness->states, r.witness->explanation));
}

std::vector<std::pair<std::string, std::string>> pairs_of(const Relation& r) { return r.id_pairs(); }

std::set<Op> operators(const std::vector<std::string>& names) {
  static const std::map<std::string, Op> table = {
      {"not", Op::Not},   {"and", Op::And},       {"or", Op::Or},                 {"implies", Op::Implies},
      {"next", Op::Next}, {"always", Op::Always}, {"eventually", Op::Eventually}, {"until", Op::Until}};
  std::set<Op> ops;
  for (const auto& n : names) {
    auto it = table.find(n);
    if (it == table.end()) throw ConfigError("unknown operator '" + n + "'");
    ops.insert(it->second);
  }
  return ops;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Bisimulation, simulation and temporal-logic checks on finite coalgebras";

  auto base = py::register_exception<Error>(m, "Error", PyExc_ValueError);
  py::register_exception<ConfigError>(m, "ConfigError", base.ptr());
  py::register_exception<ValidationError>(m, "ValidationError", base.ptr());
  py::register_exception<ParseError>(m, "ParseError", base.ptr());
  py::register_exception<EnumerationTooLarge>(m, "EnumerationTooLarge", base.ptr());
  py::register_exception<UnsupportedConstructor>(m, "UnsupportedConstructor", base.ptr());
  py::register_exception<NotApplicable>(m, "NotApplicable", base.ptr());

  py::class_<SystemDescription>(m, "System")
      .def_static("load", &load_system, py::arg("path"))
      .def_static("parse", [](const std::string& text) { return parse_system(text); }, py::arg("text"))
      .def("dumps", &dump_system)
      .def_property_readonly("coalgebras", [](const SystemDescription& s) { return s.coalgebras.names(); })
      .def_property_readonly("relations", [](const SystemDescription& s) { return s.relations.names(); })
      .def_property_readonly("predicates", [](const SystemDescription& s) { return s.predicates.names(); })
      .def_property_readonly("orders", [](const SystemDescription& s) { return s.orders.names(); })
      .def_property_readonly("formulas", [](const SystemDescription& s) { return s.formulas.names(); })
      .def(
          "states",
          [](const SystemDescription& s, const std::string& coalgebra) {
            const auto e = s.coalgebras.at(coalgebra).states().elements();
            return std::vector<std::string>(e.begin(), e.end());
          },
          py::arg("coalgebra"))
      .def(
          "is_bisimulation",
          [](const SystemDescription& s, std::optional<std::string> relation, std::optional<std::string> left,
             std::optional<std::string> right) {
            const Relation& r = entry(s.relations, relation);
            return report(is_bisimulation(side(s, left, r.domain()), side(s, right, r.codomain()), r));
          },
          py::arg("relation") = py::none(), py::arg("left") = py::none(), py::arg("right") = py::none(),
          "(holds, None) or (False, (states, explanation))")
      .def(
          "is_simulation",
          [](const SystemDescription& s, std::optional<std::string> relation, std::optional<std::string> order,
             std::optional<std::string> left, std::optional<std::string> right) {
            const Relation& r = entry(s.relations, relation);
            return report(is_simulation(side(s, left, r.domain()), side(s, right, r.codomain()),
                                        entry(s.orders, order), r, s.limits));
          },
          py::arg("relation") = py::none(), py::arg("order") = py::none(), py::arg("left") = py::none(),
          py::arg("right") = py::none())
      .def(
          "largest_bisimulation",
          [](const SystemDescription& s, const std::string& left, const std::string& right) {
            return pairs_of(largest_bisimulation(s.coalgebras.at(left), s.coalgebras.at(right)));
          },
          py::arg("left"), py::arg("right"))
      .def(
          "largest_simulation",
          [](const SystemDescription& s, const std::string& left, const std::string& right,
             std::optional<std::string> order) {
            return pairs_of(
                largest_simulation(s.coalgebras.at(left), s.coalgebras.at(right), entry(s.orders, order), s.limits));
          },
          py::arg("left"), py::arg("right"), py::arg("order") = py::none())
      .def(
          "eval",
          [](const SystemDescription& s, const std::string& formula, const std::string& coalgebra,
             std::optional<std::string> image, bool inverse, std::optional<std::string> nu) {
            Formula phi = s.formula(formula);
            if (image) phi = image_formula(phi, RelationRef{*image}, inverse ? Direction::Inverse : Direction::Direct);
            const NatTrans* n = nu ? &s.nus.at(*nu) : (s.nus.empty() ? nullptr : &s.nus.entries().front().second);
            return eval(s.coalgebras.at(coalgebra), phi, s.env(), n).members();
          },
          py::arg("formula"), py::arg("coalgebra"), py::arg("image") = py::none(), py::arg("inverse") = false,
          py::arg("nu") = py::none(), "States of `coalgebra` satisfying `formula` (a registered name or text).");

  m.def(
      "run_suites_json",
      [](const std::string& suite, std::uint64_t seed, std::size_t trials, std::size_t max_states, std::size_t depth,
         const std::vector<std::string>& ops) {
        TrialConfig cfg;
        cfg.seed = seed;
        cfg.trials = trials;
        cfg.max_states = max_states;
        cfg.formula_depth = depth;
        cfg.operators = operators(ops);
        Json out = Json::array();
        {
          py::gil_scoped_release release;
          for (const auto& r : run_suites(suite, cfg)) out.push_back(report_to_json(r));
        }
        return out.dump();
      },
      py::arg("suite") = "all", py::arg("seed") = 42, py::arg("trials") = 500, py::arg("max_states") = 4,
      py::arg("depth") = 3, py::arg("operators") = std::vector<std::string>{});

  m.def("run_cli", [](const std::vector<std::string>& args) {
    std::ostringstream out, err;
    const int code = run_cli(args, out, err);
    return py::make_tuple(code, out.str(), err.str());
  });
}
