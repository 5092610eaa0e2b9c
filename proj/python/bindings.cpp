#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "hqs/bounds.hpp"
#include "hqs/config.hpp"
#include "hqs/errors.hpp"
#include "hqs/lindblad.hpp"
#include "hqs/protocol.hpp"
#include "hqs/stats.hpp"

namespace py = pybind11;

PYBIND11_MODULE(_core, m) {
    m.doc() = "Qubit-coupled acoustic resonator protocol simulation and physics bounds";

    py::register_exception<hqs::InvalidParameterError>(m, "InvalidParameterError",
                                                       PyExc_ValueError);
    py::register_exception<hqs::NumericalError>(m, "NumericalError", PyExc_ArithmeticError);

    py::class_<hqs::HilbertLayout>(m, "HilbertLayout")
        .def(py::init<>())
        .def_readwrite("qubit_levels", &hqs::HilbertLayout::qubit_levels)
        .def_readwrite("fock_cutoff", &hqs::HilbertLayout::fock_cutoff)
        .def("dim", &hqs::HilbertLayout::dim);

    py::class_<hqs::EvolveSettings>(m, "EvolveSettings")
        .def(py::init<>())
        .def_readwrite("rel_tol", &hqs::EvolveSettings::rel_tol)
        .def_readwrite("abs_tol", &hqs::EvolveSettings::abs_tol)
        .def_readwrite("max_step", &hqs::EvolveSettings::max_step)
        .def_readwrite("exact_expm", &hqs::EvolveSettings::exact_expm);

    py::class_<hqs::DeviceParams>(m, "DeviceParams")
        .def(py::init<>())
        .def_static("table1", &hqs::DeviceParams::table1)
        .def_static("ideal", &hqs::DeviceParams::ideal)
        .def("validate", &hqs::DeviceParams::validate)
        .def_readwrite("phonon_freq", &hqs::DeviceParams::phonon_freq)
        .def_readwrite("qubit_freq", &hqs::DeviceParams::qubit_freq)
        .def_readwrite("anharmonicity", &hqs::DeviceParams::anharmonicity)
        .def_readwrite("coupling", &hqs::DeviceParams::coupling)
        .def_readwrite("fsr", &hqs::DeviceParams::fsr)
        .def_readwrite("mode_number", &hqs::DeviceParams::mode_number)
        .def_readwrite("t1_phonon", &hqs::DeviceParams::t1_phonon)
        .def_readwrite("t2_phonon", &hqs::DeviceParams::t2_phonon)
        .def_readwrite("t1_ge", &hqs::DeviceParams::t1_ge)
        .def_readwrite("t1_ef", &hqs::DeviceParams::t1_ef)
        .def_readwrite("t_phi", &hqs::DeviceParams::t_phi)
        .def_readwrite("t_qubit_init", &hqs::DeviceParams::t_qubit_init)
        .def_readwrite("t_qubit_bath", &hqs::DeviceParams::t_qubit_bath)
        .def_readwrite("t_env", &hqs::DeviceParams::t_env)
        .def_readwrite("length", &hqs::DeviceParams::length)
        .def_readwrite("waist", &hqs::DeviceParams::waist)
        .def_readwrite("density", &hqs::DeviceParams::density)
        .def_readwrite("stiffness_c33", &hqs::DeviceParams::stiffness_c33)
        .def_readwrite("piezo_e33", &hqs::DeviceParams::piezo_e33)
        .def_readwrite("rel_permittivity", &hqs::DeviceParams::rel_permittivity);

    py::class_<hqs::ProtocolSettings>(m, "ProtocolSettings")
        .def(py::init<>())
        .def_readwrite("iswap_amplitude", &hqs::ProtocolSettings::iswap_amplitude)
        .def_readwrite("readout_fidelity", &hqs::ProtocolSettings::readout_fidelity)
        .def_readwrite("include_reference", &hqs::ProtocolSettings::include_reference);

    py::class_<hqs::ContrastResult>(m, "ContrastResult")
        .def_readonly("a_sig", &hqs::ContrastResult::a_sig)
        .def_readonly("a_ref", &hqs::ContrastResult::a_ref)
        .def_readonly("population", &hqs::ContrastResult::population);

    py::class_<hqs::GWResult>(m, "GWResult")
        .def_readonly("h0", &hqs::GWResult::h0)
        .def_readonly("drive", &hqs::GWResult::drive)
        .def_readonly("xi33", &hqs::GWResult::xi33)
        .def_readonly("assumptions", &hqs::GWResult::assumptions);

    py::class_<hqs::DPResult>(m, "DPResult")
        .def_readonly("kappa", &hqs::DPResult::kappa)
        .def_readonly("drive", &hqs::DPResult::drive)
        .def_readonly("e33_used", &hqs::DPResult::e33_used)
        .def_readonly("assumptions", &hqs::DPResult::assumptions);

    py::class_<hqs::CSLResult>(m, "CSLResult")
        .def_readonly("tau_e", &hqs::CSLResult::tau_e)
        .def_readonly("lambda_csl", &hqs::CSLResult::lambda_csl)
        .def_readonly("r_csl", &hqs::CSLResult::r_csl);

    m.def(
        "run_protocol",
        [](const hqs::DeviceParams& device, double true_population,
           const hqs::ProtocolSettings& settings, const hqs::HilbertLayout& layout,
           const hqs::EvolveSettings& evolve) {
            return hqs::run_protocol(device, true_population, settings, layout, evolve);
        },
        py::arg("device"), py::arg("true_population"),
        py::arg("settings") = hqs::ProtocolSettings{}, py::arg("layout") = hqs::HilbertLayout{},
        py::arg("evolve") = hqs::EvolveSettings{},
        py::call_guard<py::gil_scoped_release>());

    m.def(
        "infer_population",
        [](double measured, const hqs::DeviceParams& device, std::pair<double, double> bath_range,
           const hqs::ProtocolSettings& settings, const hqs::HilbertLayout& layout) {
            return hqs::infer_population(measured, device, bath_range, settings, layout);
        },
        py::arg("measured"), py::arg("device"),
        py::arg("bath_range") = std::pair<double, double>{0.037, 0.053},
        py::arg("settings") = hqs::ProtocolSettings{}, py::arg("layout") = hqs::HilbertLayout{},
        py::call_guard<py::gil_scoped_release>());

    m.def("steady_occupation_analytic", &hqs::steady_occupation_analytic, py::arg("drive"),
          py::arg("decay"));
    m.def(
        "evolve_to_steady",
        [](double drive, double decay, const hqs::HilbertLayout& layout) {
            return hqs::evolve_to_steady(drive, decay, layout);
        },
        py::arg("drive"), py::arg("decay"), py::arg("layout") = hqs::HilbertLayout{},
        py::call_guard<py::gil_scoped_release>());

    m.def("xi_33", &hqs::xi_33, py::arg("length"), py::arg("waist"), py::arg("mode_number"));
    m.def("xi_33_numeric", &hqs::xi_33_numeric, py::arg("length"), py::arg("waist"),
          py::arg("mode_number"));
    m.def("h0_bound", &hqs::h0_bound, py::arg("population"), py::arg("device"));
    m.def("kappa_bound", &hqs::kappa_bound, py::arg("population"), py::arg("device"),
          py::arg("e33"));
    m.def("csl_bound", &hqs::csl_bound, py::arg("population"), py::arg("t1_phonon"));

    m.def("bose_population", &hqs::bose_population, py::arg("temperature"), py::arg("freq"),
          py::arg("offset") = 0.0);
    m.def("effective_temperature", &hqs::effective_temperature, py::arg("population"),
          py::arg("freq"));
    m.def("weighted_mean", [](const std::vector<std::pair<double, double>>& mean_var) {
        std::vector<hqs::PopulationRecord> records;
        records.reserve(mean_var.size());
        for (const auto& [mean, var] : mean_var) {
            hqs::PopulationRecord r;
            r.mean = mean;
            r.variance = var;
            r.n_shots = 1;
            records.push_back(std::move(r));
        }
        const auto out = hqs::weighted_mean(records);
        return std::make_pair(out.mean, out.variance);
    });
    m.def(
        "block_statistics",
        [](const std::vector<double>& means) {
            const auto s = hqs::block_statistics(means);
            return py::dict(py::arg("mean") = s.mean, py::arg("sigma_total") = s.sigma_total,
                            py::arg("sem") = s.sem, py::arg("reference") = s.reference);
        },
        py::arg("block_means"));
    m.def("synthetic_blocks", &hqs::synthetic_blocks, py::arg("mean"), py::arg("sigma"),
          py::arg("n_blocks"), py::arg("seed"));
}
