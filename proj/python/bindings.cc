// Copyright 2026 The loccbench Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "loccbench/runner.h"

namespace py = pybind11;
using namespace loccbench;

namespace {

py::object to_python(const nlohmann::json &j) {
    return py::module_::import("json").attr("loads")(j.dump());
}

py::tuple spectrum_tuple(const HermitianSpectrum &s) {
    return py::make_tuple(s.eigenvalues, s.eigenvectors, s.degenerate);
}

RunOptions make_options(uint64_t seed, int trials, double tol) {
    RunOptions opts;
    opts.seed = seed;
    opts.trials = trials;
    opts.tol = tol;
    opts.format = Format::Json;
    return opts;
}

BipartiteEnsemble make_ensemble(const std::vector<std::pair<double, DensityOperator>> &members) {
    std::vector<EnsembleMember> out;
    for (const auto &[p, rho] : members) {
        out.push_back({p, rho});
    }
    return BipartiteEnsemble(std::move(out));
}

}  // namespace

PYBIND11_MODULE(_loccbench, m) {
    m.doc() = "Entropic bounds on LOCC discrimination and entanglement distillation.";

    py::enum_<Party>(m, "Party").value("A", Party::A).value("B", Party::B);
    py::enum_<Measure>(m, "Measure")
        .value("ENTROPY_OF_ENTANGLEMENT_PURE", Measure::EntropyOfEntanglementPure)
        .value("EOF_TWO_QUBIT", Measure::EofTwoQubit)
        .value("AUTO", Measure::Auto);

    py::class_<DensityOperator>(m, "DensityOperator")
        .def(py::init([](const Matrix &matrix, int dim_a, int dim_b, double tol) {
                 return validate_density(matrix, dim_a, dim_b, tol);
             }),
             py::arg("matrix"), py::arg("dim_a"), py::arg("dim_b"), py::arg("tol") = kDefaultTol)
        .def_static("pure", &DensityOperator::pure, py::arg("psi"), py::arg("dim_a"), py::arg("dim_b"))
        .def_property_readonly("dim_a", &DensityOperator::dim_a)
        .def_property_readonly("dim_b", &DensityOperator::dim_b)
        .def_property_readonly("matrix", [](const DensityOperator &r) { return Matrix(r.matrix()); });

    m.def("partial_trace", py::overload_cast<const DensityOperator &, Party>(&partial_trace), py::arg("rho"),
          py::arg("keep"));
    m.def("partial_transpose", py::overload_cast<const DensityOperator &, Party>(&partial_transpose), py::arg("rho"),
          py::arg("party") = Party::B);
    m.def(
        "hermitian_eig", [](const Matrix &h, double tol) { return spectrum_tuple(hermitian_eig(h, tol)); },
        py::arg("matrix"), py::arg("tol") = kDefaultTol,
        "Returns (ascending eigenvalues, eigenvector columns, degenerate flag).");

    m.def("shannon_entropy", [](const std::vector<double> &p) { return shannon_entropy(p); });
    m.def("von_neumann_entropy", py::overload_cast<const DensityOperator &>(&von_neumann_entropy));
    m.def("von_neumann_entropy", py::overload_cast<const Matrix &>(&von_neumann_entropy));
    m.def(
        "holevo_chi",
        [](const std::vector<double> &p, const std::vector<Matrix> &states) { return holevo_chi(p, states); },
        py::arg("probabilities"), py::arg("states"));
    m.def("purity", &purity);
    m.def("concurrence", &concurrence);
    m.def("eof_from_concurrence", &eof_from_concurrence);
    m.def("entanglement", &entanglement, py::arg("rho"), py::arg("selector") = Measure::Auto);
    m.def("is_ppt", [](const DensityOperator &rho) {
        auto r = is_ppt(rho);
        return py::make_tuple(r.ppt, r.min_eigenvalue);
    });
    m.def(
        "ensemble_holevo",
        [](const std::vector<std::pair<double, DensityOperator>> &members, std::optional<Party> side) {
            auto ens = make_ensemble(members);
            return side ? holevo_chi(ens, *side) : holevo_chi(ens);
        },
        py::arg("members"), py::arg("side") = py::none());

    m.def("generalized_bell_state", &generalized_bell_state, py::arg("d"), py::arg("k"));
    m.def(
        "bell_diagonal", [](int d, const std::vector<double> &p) { return bell_diagonal({d, p}); }, py::arg("d"),
        py::arg("probs"));
    m.def("dp_bound", &dp_bound);
    m.def(
        "dp_bound_bell", [](int d, const std::vector<double> &p) { return dp_bound_bell({d, p}).raw; },
        py::arg("d"), py::arg("probs"));
    m.def(
        "dpprime_bound",
        [](const DensityOperator &rho) {
            auto b = dpprime_bound(rho);
            return py::make_tuple(b.bound, b.r_max);
        },
        "Returns (bound, r_max); both are +inf when the bound is vacuous.");
    m.def(
        "dpprime_bound_bell", [](int d, const std::vector<double> &p) { return dpprime_bound_bell({d, p}); },
        py::arg("d"), py::arg("probs"));
    m.def("distillation_report",
          [](const DensityOperator &rho) { return to_python(distillation_json(distillation_report(rho))); });

    m.def(
        "bound_report",
        [](const std::string &scenario_json) {
            Scenario s = parse_scenario_text(scenario_json);
            auto t = run_protocol(build_ensemble(s), build_chooser(s), static_cast<int>(s.steps.size()));
            nlohmann::json out = bound_report_json(bound_suite(t, s.measure_in, s.measure_out));
            out["audits"] = audit_json(audit_rounds(t));
            return to_python(out);
        },
        py::arg("scenario_json"), "Bound suite and per-round audits for a protocol scenario given as JSON text.");
    m.def(
        "generate_scenario",
        [](uint64_t seed) { return to_python(to_json(generate_random_scenario(seed, RandomSpec{}))); },
        py::arg("seed"));
    m.def(
        "run_scenario_file",
        [](const std::string &path, const std::string &command, uint64_t seed, int trials, double tol) {
            auto r = run_scenario_file(path, command, make_options(seed, trials, tol));
            if (r.exit_code == kExitInputError) {
                throw py::value_error(r.output);
            }
            return py::make_tuple(r.exit_code, to_python(r.report));
        },
        py::arg("path"), py::arg("command"), py::arg("seed") = 0, py::arg("trials") = 1,
        py::arg("tol") = kSlackTol, "Returns (exit_code, report).");
    m.def(
        "run_scenario",
        [](const std::string &scenario_json, const std::string &command, uint64_t seed, int trials, double tol) {
            auto cmd = parse_command(command);
            if (!cmd) {
                throw py::value_error("unknown command '" + command + "'");
            }
            auto r = run_scenario(parse_scenario_text(scenario_json), *cmd, make_options(seed, trials, tol));
            return py::make_tuple(r.exit_code, to_python(r.report));
        },
        py::arg("scenario_json"), py::arg("command"), py::arg("seed") = 0, py::arg("trials") = 1,
        py::arg("tol") = kSlackTol, "Returns (exit_code, report).");
}
