#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "gbk/adversary.hpp"
#include "gbk/analysis.hpp"
#include "gbk/io.hpp"
#include "gbk/rng.hpp"
#include "gbk/solvers.hpp"

namespace py = pybind11;
using namespace gbk;

namespace {

std::vector<int> to_list(const Configuration& config) {
  std::vector<int> out(config.size());
  for (std::size_t c = 0; c < config.size(); ++c) out[c] = config[c];
  return out;
}

Configuration from_list(const Instance& inst, const std::vector<int>& values) {
  if (values.size() != inst.board.area()) {
    throw ValidationError("configuration has " + std::to_string(values.size()) + " values, board has " +
                          std::to_string(inst.board.area()) + " cells");
  }
  return Configuration::from_values(values);
}

Assignment assignment_from_dict(const Instance& inst, const std::optional<std::map<std::string, int>>& signs) {
  Assignment assignment = Assignment::identity(inst.family.size());
  if (!signs) return assignment;
  for (const auto& [id, sign] : *signs) {
    if (sign != 1 && sign != -1) throw ValidationError("switch '" + id + "' must be +1 or -1");
    assignment.signs.set(inst.family.require_index(id), sign);
  }
  return assignment;
}

py::dict result_dict(const Instance& inst, const SolveResult& result) {
  py::dict assignment;
  for (std::size_t s = 0; s < inst.family.size(); ++s) assignment[py::str(inst.family[s].id)] = result.assignment[s];
  py::dict out;
  out["value"] = result.value;
  out["assignment"] = assignment;
  out["nodes_explored"] = result.nodes_explored;
  return out;
}

py::object big_int(const BigInt& value) {
  return py::reinterpret_steal<py::object>(PyLong_FromString(value.str().c_str(), nullptr, 10));
}

Instance instance(const std::string& board, int n, const std::string& switches, int t, int a, int b) {
  const BoardSpec board_spec{parse_board_kind(board), n};
  SwitchSpec switch_spec = switches.empty() ? default_switches(board_spec.kind) : SwitchSpec{parse_switch_kind(switches)};
  switch_spec.t = t;
  switch_spec.a = a;
  switch_spec.b = b;
  return make_instance(board_spec, switch_spec);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Signed discrepancy solvers for the switching game";

  py::register_exception<BudgetError>(m, "BudgetError", PyExc_RuntimeError);
  py::register_exception<ValidationError>(m, "ValidationError", PyExc_ValueError);

  py::class_<Instance>(m, "Instance")
      .def_property_readonly("area", [](const Instance& inst) { return inst.board.area(); })
      .def_property_readonly("dim", [](const Instance& inst) { return inst.board.dim(); })
      .def_property_readonly("cells",
                             [](const Instance& inst) {
                               std::vector<std::vector<int>> out;
                               for (const Cell& c : inst.board.cells()) {
                                 out.push_back(c.dim == 2 ? std::vector<int>{c.row(), c.col()}
                                                          : std::vector<int>{c.row(), c.col(), c.layer()});
                               }
                               return out;
                             })
      .def_property_readonly("switch_ids",
                             [](const Instance& inst) {
                               std::vector<std::string> ids;
                               for (const Switch& s : inst.family.switches()) ids.push_back(s.id);
                               return ids;
                             })
      .def("to_json", [](const Instance& inst) { return instance_to_json(inst.board, inst.family).dump(); });

  m.def("make_instance", &instance, py::arg("board") = "square", py::arg("n"), py::arg("switches") = "",
        py::arg("t") = 0, py::arg("a") = 0, py::arg("b") = 0);
  m.def("instance_from_json", [](const std::string& text) { return instance_from_json(json::parse(text)); });

  m.def(
      "random_config",
      [](const Instance& inst, std::uint64_t seed) {
        return to_list(random_configuration(inst.board.area(), CounterRng(seed)));
      },
      py::arg("instance"), py::arg("seed") = 0);
  m.def("parse_config", [](const Instance& inst, const std::string& text) {
    return to_list(parse_configuration(text, inst.board));
  });
  m.def("config_grid", [](const Instance& inst, const std::vector<int>& config) {
    return configuration_to_grid(from_list(inst, config), inst.board);
  });

  m.def(
      "evaluate",
      [](const Instance& inst, const std::vector<int>& config, std::optional<std::map<std::string, int>> assignment) {
        return evaluate(inst.board, inst.family, from_list(inst, config), assignment_from_dict(inst, assignment));
      },
      py::arg("instance"), py::arg("config"), py::arg("assignment") = py::none());

  m.def(
      "solve",
      [](const Instance& inst, const std::vector<int>& config, const std::string& method, int cap,
         std::uint64_t seed) {
        const Configuration c = from_list(inst, config);
        const SolverOptions options{cap, 1};
        SolveResult result;
        {
          py::gil_scoped_release release;
          if (method == "auto") {
            result = solve_exact(inst.board, inst.family, c, options);
          } else if (method == "exact") {
            result = exact_max(inst.board, inst.family, c, options);
          } else if (method == "local") {
            result = local_search(inst.board, inst.family, c, Assignment::identity(inst.family.size()));
          } else if (method == "greedy") {
            std::optional<SwitchKind> kind;
            if (inst.switch_spec) kind = inst.switch_spec->kind;
            const auto [scramble, greedy] = scramble_groups(inst.board, inst.family, kind);
            result = scramble_greedy(inst.board, inst.family, c, scramble, greedy, seed);
          } else if (method == "x-cycle") {
            result = x_cycle_solve(inst.board, c);
          } else if (method == "hyperbola") {
            if (!inst.board_spec || inst.board_spec->kind != BoardKind::hyperbola) {
              throw ValidationError("hyperbola method needs a hyperbola board");
            }
            result = hyperbola_solve(inst.board_spec->n, c);
          } else {
            throw ValidationError("unknown method '" + method + "'");
          }
        }
        return result_dict(inst, result);
      },
      py::arg("instance"), py::arg("config"), py::arg("method") = "auto", py::arg("cap") = 30,
      py::arg("seed") = 0);

  m.def(
      "minimax",
      [](const Instance& inst, bool canonicalize, std::uint64_t config_cap) {
        MinimaxOptions options;
        options.canonicalize = canonicalize;
        options.config_cap = config_cap;
        MinimaxResult result;
        {
          py::gil_scoped_release release;
          result = minimax(inst.board, inst.family, options);
        }
        py::dict out;
        out["value"] = result.value;
        out["witness"] = to_list(result.witness_config);
        out["configs_scanned"] = result.configs_scanned;
        out["canonical"] = result.canonical;
        return out;
      },
      py::arg("instance"), py::arg("canonicalize") = true, py::arg("config_cap") = std::uint64_t{1} << 25);

  m.def("build_remove_ii", [](int n, int a, int b, std::uint64_t seed) { return to_list(build_remove_ii(n, a, b, seed)); },
        py::arg("n"), py::arg("a"), py::arg("b"), py::arg("seed") = 0);
  m.def("build_remove_iii", [](int n, int a, int b) { return to_list(build_remove_iii(n, a, b)); });

  m.def("expected_abs_sum", [](int n) {
    const Rational value = expected_abs_sum(n);
    py::object fraction = py::module_::import("fractions").attr("Fraction");
    return fraction(big_int(boost::multiprecision::numerator(value)),
                    big_int(boost::multiprecision::denominator(value)));
  });
  m.def("chernoff_bound", &chernoff_bound, py::arg("n"), py::arg("lam"));
  m.def("gamma", [](double s) { return gbk::gamma(s); });
  m.def("theorem_constant", [](const std::string& name) { return theorem_constant(name); });
  m.def("theorem_constants", [] {
    py::dict out;
    for (const NamedConstant& c : theorem_constants()) out[py::str(std::string(c.name))] = c.value;
    return out;
  });

  m.def(
      "run_trials",
      [](const std::string& strategy, const Instance& inst, std::uint64_t trials, std::uint64_t seed, int jobs) {
        if (!inst.board_spec || !inst.switch_spec) throw ValidationError("trials need a generated instance");
        const TrialStrategy strat = make_strategy(strategy, *inst.board_spec, *inst.switch_spec);
        TrialStats stats;
        {
          py::gil_scoped_release release;
          stats = run_trials(strat, trials, seed, jobs);
        }
        py::dict out;
        out["trials"] = stats.trials;
        out["mean"] = stats.mean;
        out["std"] = stats.sample_std;
        out["stderr"] = stats.std_err;
        out["ci95"] = py::make_tuple(stats.ci95.first, stats.ci95.second);
        out["stderr_defined"] = stats.dispersion_defined;
        return out;
      },
      py::arg("strategy"), py::arg("instance"), py::arg("trials"), py::arg("seed") = 0, py::arg("jobs") = 1);
}
