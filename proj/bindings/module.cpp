#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "mssc/distances.hpp"
#include "mssc/exact.hpp"
#include "mssc/io.hpp"
#include "mssc/lp.hpp"
#include "mssc/rounding.hpp"

namespace py = pybind11;

namespace {

std::vector<std::vector<double>> matrix_rows(const mssc::StochasticMatrix& m) {
  std::vector<std::vector<double>> rows(m.size());
  for (mssc::ElementId e = 0; e < m.size(); ++e) {
    rows[e].assign(m.row(e).begin(), m.row(e).end());
  }
  return rows;
}

mssc::StochasticMatrix matrix_from_rows(
    const std::vector<std::vector<double>>& rows) {
  const int n = static_cast<int>(rows.size());
  std::vector<double> flat;
  flat.reserve(static_cast<size_t>(n) * n);
  for (const auto& row : rows) {
    if (static_cast<int>(row.size()) != n) {
      throw std::invalid_argument("matrix rows must form an n x n square");
    }
    flat.insert(flat.end(), row.begin(), row.end());
  }
  return mssc::StochasticMatrix(n, std::move(flat));
}

}  // namespace

PYBIND11_MODULE(_mssc, m) {
  m.doc() = "Multistage Min-Sum Set Cover: LP relaxation, rounding "
            "algorithms, distances and exact oracles";

  py::class_<mssc::Permutation>(m, "Permutation")
      .def(py::init<std::vector<mssc::ElementId>>(), py::arg("order"))
      .def_static("identity", &mssc::Permutation::identity)
      .def("__len__", &mssc::Permutation::size)
      .def("element_at", &mssc::Permutation::element_at, py::arg("pos"))
      .def("position_of", &mssc::Permutation::position_of, py::arg("e"))
      .def_property_readonly("order", &mssc::Permutation::order)
      .def("__eq__", [](const mssc::Permutation& a, const mssc::Permutation& b) {
        return a == b;
      });

  py::class_<mssc::Request>(m, "Request")
      .def(py::init<std::vector<mssc::ElementId>>(), py::arg("members"))
      .def_readonly("members", &mssc::Request::members);

  py::class_<mssc::Instance>(m, "Instance")
      .def(py::init([](int n, const mssc::Permutation& pi0,
                       const std::vector<std::vector<mssc::ElementId>>& requests) {
             mssc::Instance inst;
             inst.n = n;
             inst.pi0 = pi0;
             for (const auto& r : requests) inst.requests.emplace_back(r);
             return inst;
           }),
           py::arg("n"), py::arg("pi0"), py::arg("requests"))
      .def_readonly("n", &mssc::Instance::n)
      .def_readonly("pi0", &mssc::Instance::pi0)
      .def_readonly("requests", &mssc::Instance::requests)
      .def_property_readonly("T", &mssc::Instance::horizon)
      .def_property_readonly("r_bound", &mssc::Instance::r_bound);

  py::class_<mssc::StochasticMatrix>(m, "StochasticMatrix")
      .def(py::init(&matrix_from_rows), py::arg("rows"))
      .def("__len__", &mssc::StochasticMatrix::size)
      .def("entry", &mssc::StochasticMatrix::entry, py::arg("e"), py::arg("pos"))
      .def("rows", &matrix_rows)
      .def("is_doubly_stochastic", &mssc::StochasticMatrix::is_doubly_stochastic,
           py::arg("eps") = mssc::kEpsRow)
      .def("to_permutation", &mssc::StochasticMatrix::to_permutation);

  py::class_<mssc::GranularMatrix>(m, "GranularMatrix")
      .def_static("from_permutation", &mssc::GranularMatrix::from_permutation,
                  py::arg("pi"), py::arg("r"))
      .def("__len__", &mssc::GranularMatrix::size)
      .def_property_readonly("granularity", &mssc::GranularMatrix::granularity)
      .def("units", &mssc::GranularMatrix::units, py::arg("e"), py::arg("pos"))
      .def("to_stochastic", &mssc::GranularMatrix::to_stochastic);

  py::class_<mssc::CostReport>(m, "CostReport")
      .def_readonly("covering", &mssc::CostReport::covering)
      .def_readonly("moving", &mssc::CostReport::moving)
      .def_readonly("total_covering", &mssc::CostReport::total_covering)
      .def_readonly("total_moving", &mssc::CostReport::total_moving)
      .def_readonly("total", &mssc::CostReport::total);

  py::class_<mssc::SolutionSequence>(m, "SolutionSequence")
      .def_readonly("perms", &mssc::SolutionSequence::perms);

  py::class_<mssc::FractionalSequence>(m, "FractionalSequence")
      .def_readonly("matrices", &mssc::FractionalSequence::matrices)
      .def_readonly("objective", &mssc::FractionalSequence::objective);

  py::class_<mssc::NeighborStep>(m, "NeighborStep")
      .def_readonly("matrix", &mssc::NeighborStep::matrix)
      .def_readonly("moved_element", &mssc::NeighborStep::moved_element)
      .def_readonly("from_col", &mssc::NeighborStep::from_col)
      .def_readonly("to_col", &mssc::NeighborStep::to_col)
      .def_readonly("mass", &mssc::NeighborStep::mass);

  py::class_<mssc::SetCoverInstance>(m, "SetCoverInstance")
      .def(py::init([](int n_elements, std::vector<std::vector<int>> sets) {
             return mssc::SetCoverInstance{n_elements, std::move(sets)};
           }),
           py::arg("n_elements"), py::arg("sets"))
      .def_readonly("n_elements", &mssc::SetCoverInstance::n_elements)
      .def_readonly("sets", &mssc::SetCoverInstance::sets);

  m.def("validate_instance", &mssc::validate_instance, py::arg("inst"));
  m.def("covering_cost", &mssc::covering_cost, py::arg("pi"), py::arg("request"));
  m.def("total_cost", &mssc::total_cost, py::arg("inst"), py::arg("sol"));
  m.def("matrix_from_permutation", &mssc::matrix_from_permutation, py::arg("pi"));

  m.def("kendall_tau", &mssc::kendall_tau, py::arg("a"), py::arg("b"));
  m.def("footrule_perm", &mssc::footrule_perm, py::arg("a"), py::arg("b"));
  m.def("footrule_matrix", &mssc::footrule_matrix, py::arg("a"), py::arg("b"));
  m.def("r_index",
        py::overload_cast<const mssc::StochasticMatrix&, mssc::ElementId, int>(
            &mssc::r_index),
        py::arg("a"), py::arg("e"), py::arg("r"));
  m.def("fractional_kendall_tau",
        py::overload_cast<const mssc::StochasticMatrix&,
                          const mssc::StochasticMatrix&, int>(
            &mssc::fractional_kendall_tau),
        py::arg("a"), py::arg("b"), py::arg("r"));
  m.def("fractional_kendall_tau_granular",
        py::overload_cast<const mssc::GranularMatrix&,
                          const mssc::GranularMatrix&>(
            &mssc::fractional_kendall_tau),
        py::arg("a"), py::arg("b"));
  m.def("decompose_neighboring", &mssc::decompose_neighboring, py::arg("a"),
        py::arg("b"));

  m.def("solve_fractional_mtf", &mssc::solve_fractional_mtf, py::arg("inst"),
        py::call_guard<py::gil_scoped_release>());
  m.def("randomized_round", &mssc::randomized_round, py::arg("frac"),
        py::arg("inst"), py::arg("seed"));
  m.def(
      "greedy_round",
      [](const mssc::FractionalSequence& frac, const mssc::Instance& inst) {
        auto res = mssc::greedy_round(frac, inst);
        return py::make_tuple(res.sol, res.chosen);
      },
      py::arg("frac"), py::arg("inst"));
  m.def("move_to_front", &mssc::move_to_front, py::arg("pi"), py::arg("e"));
  m.def("greedy_lp_solve", &mssc::greedy_lp_solve, py::arg("pi0"),
        py::arg("chosen"), py::arg("r"));

  m.def(
      "brute_force_opt",
      [](const mssc::Instance& inst) {
        auto res = mssc::brute_force_opt(inst);
        return py::make_tuple(res.sol, res.report);
      },
      py::arg("inst"));
  m.def(
      "brute_force_mtf",
      [](const mssc::Instance& inst) {
        auto res = mssc::brute_force_mtf(inst);
        return py::make_tuple(res.sol, res.moving_cost);
      },
      py::arg("inst"));
  m.def("setcover_reduce", &mssc::setcover_reduce, py::arg("sc"),
        py::arg("dummy_count") = py::none());

  m.def("parse_instance", &mssc::parse_instance_text, py::arg("text"));
  m.def("serialize_instance", &mssc::serialize_instance, py::arg("inst"));
  m.def("parse_setcover", &mssc::parse_setcover_text, py::arg("text"));
  m.def("serialize_setcover", &mssc::serialize_setcover, py::arg("sc"));
  m.def(
      "generate_instance",
      [](int n, int T, int r, const std::string& dist, std::uint64_t seed) {
        const auto d = dist == "mixed" ? mssc::GenDistribution::Mixed
                                       : mssc::GenDistribution::UniformR;
        return mssc::generate_instance(n, T, r, d, seed);
      },
      py::arg("n"), py::arg("T"), py::arg("r"), py::arg("dist") = "uniform-r",
      py::arg("seed") = 1);
}
