#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "nozzle/background.hpp"
#include "nozzle/diagnostics.hpp"
#include "nozzle/extension.hpp"
#include "nozzle/interpolation.hpp"
#include "nozzle/march.hpp"
#include "nozzle/verify.hpp"
#include "nozzle/zfields.hpp"

namespace py = pybind11;
using namespace nozzle;

PYBIND11_MODULE(_core, m) {
    m.doc() = "Supersonic divergent-nozzle flow laboratory (C++ core)";

    py::register_exception<CavitationError>(m, "CavitationError");
    py::register_exception<HyperbolicityLoss>(m, "HyperbolicityLoss");
    py::register_exception<BranchError>(m, "BranchError");
    py::register_exception<NoConvergence>(m, "NoConvergence");

    py::class_<GasParams>(m, "GasParams")
        .def_readonly("gamma", &GasParams::gamma)
        .def_readonly("q0", &GasParams::q0)
        .def_readonly("rho0", &GasParams::rho0)
        .def_readonly("phi0", &GasParams::phi0)
        .def_readonly("C0", &GasParams::C0)
        .def_readonly("mu", &GasParams::mu)
        .def_readonly("sigma", &GasParams::sigma)
        .def_readonly("delta", &GasParams::delta);

    m.def("make_gas_params", &make_gas_params, py::arg("gamma"), py::arg("q0"),
          py::arg("phi0"), py::arg("delta") = -1.0);
    m.def("density_from_speed_sq", &density_from_speed_sq);
    m.def("sound_speed_sq", &sound_speed_sq);

    py::class_<BackgroundState>(m, "BackgroundState")
        .def_readonly("r", &BackgroundState::r)
        .def_readonly("rho", &BackgroundState::rho_hat)
        .def_readonly("U", &BackgroundState::U_hat)
        .def_readonly("c2", &BackgroundState::c2)
        .def_readonly("drho_dr", &BackgroundState::drho_dr)
        .def_readonly("dU_dr", &BackgroundState::dU_dr)
        .def_readonly("P1", &BackgroundState::P1)
        .def_readonly("P2", &BackgroundState::P2)
        .def_readonly("dP1_dr", &BackgroundState::dP1_dr)
        .def_readonly("dP2_dr", &BackgroundState::dP2_dr);

    m.def(
        "solve_background",
        [](double r, const GasParams& p) { return solve_background(r, p); },
        py::arg("r"), py::arg("params"));
    m.def("background_table", &background_table);
    m.def("log_spaced_radii", &log_spaced_radii);

    py::class_<BumpProfile>(m, "BumpProfile")
        .def(py::init([](double center, double width, double amplitude) {
                 return BumpProfile{center, width, amplitude};
             }),
             py::arg("center"), py::arg("width"), py::arg("amplitude") = 1.0)
        .def("__call__", &BumpProfile::operator())
        .def("d1", &BumpProfile::d1)
        .def("d2", &BumpProfile::d2);

    m.def("initial_density_profile", &initial_density_profile);

    py::class_<FlowSlice>(m, "FlowSlice")
        .def_readonly("r", &FlowSlice::r)
        .def_readonly("Phi", &FlowSlice::Phi)
        .def_readonly("V", &FlowSlice::V)
        .def_property_readonly("phi",
                               [](const FlowSlice& s) { return s.grid.nodes; });

    py::class_<AbortInfo>(m, "AbortInfo")
        .def_readonly("r", &AbortInfo::r)
        .def_readonly("reason", &AbortInfo::reason);

    py::class_<MarchTrace>(m, "MarchTrace")
        .def_readonly("slices", &MarchTrace::slices)
        .def_readonly("steps_taken", &MarchTrace::steps_taken)
        .def_readonly("aborted", &MarchTrace::aborted)
        .def("completed", &MarchTrace::completed)
        .def("stored_radii", &MarchTrace::stored_radii);

    py::class_<MarchOptions>(m, "MarchOptions")
        .def(py::init<>())
        .def_readwrite("n_phi", &MarchOptions::n_phi)
        .def_readwrite("cfl", &MarchOptions::cfl)
        .def_readwrite("store_targets", &MarchOptions::store_targets)
        .def_readwrite("store_every", &MarchOptions::store_every);

    m.def("march", &march, py::arg("Phi0"), py::arg("Phi1"), py::arg("eps"),
          py::arg("r_max"), py::arg("params"), py::arg("options") = MarchOptions{});

    py::class_<PerturbationSlice>(m, "PerturbationSlice")
        .def_readonly("r", &PerturbationSlice::r)
        .def_readonly("dot_Phi", &PerturbationSlice::dot_Phi)
        .def_readonly("d_dot_Phi_dr", &PerturbationSlice::d_dot_Phi_dr)
        .def_readonly("d_dot_Phi_dphi", &PerturbationSlice::d_dot_Phi_dphi);

    m.def("perturbation", &perturbation);
    m.def("mass_flux", &mass_flux);
    m.def("entrance_mass_flux", &entrance_mass_flux);

    py::class_<EnergyReport>(m, "EnergyReport")
        .def_readonly("k", &EnergyReport::k)
        .def_readonly("eps", &EnergyReport::eps)
        .def_readonly("T_values", &EnergyReport::T_values)
        .def_readonly("surface_dr", &EnergyReport::surface_dr)
        .def_readonly("surface_Z", &EnergyReport::surface_Z)
        .def_readonly("volume_dr", &EnergyReport::volume_dr)
        .def_readonly("volume_Z", &EnergyReport::volume_Z);

    m.def("weighted_energy", &weighted_energy);

    py::class_<MultiplierWeight>(m, "MultiplierWeight")
        .def_readonly("weight", &MultiplierWeight::weight)
        .def_readonly("a", &MultiplierWeight::a)
        .def_readonly("a_prime", &MultiplierWeight::a_prime);

    m.def("multiplier_weight", &multiplier_weight);

    py::class_<CertificateReport>(m, "CertificateReport")
        .def_readonly("mu_used", &CertificateReport::mu_used)
        .def_readonly("min_radial_normalized", &CertificateReport::min_radial_normalized)
        .def_readonly("min_angular_normalized", &CertificateReport::min_angular_normalized)
        .def_readonly("pass_", &CertificateReport::pass);

    m.def(
        "positivity_certificates",
        [](const std::vector<BackgroundState>& table, const GasParams& p,
           std::optional<double> mu) { return positivity_certificates(table, p, mu); },
        py::arg("table"), py::arg("params"), py::arg("mu_override") = std::nullopt);

    py::class_<DecayFit>(m, "DecayFit")
        .def_readonly("quantity", &DecayFit::quantity)
        .def_readonly("slope", &DecayFit::slope)
        .def_readonly("intercept", &DecayFit::intercept)
        .def_readonly("residual", &DecayFit::residual)
        .def_readonly("points", &DecayFit::points);

    m.def("decay_fit", &decay_fit, py::arg("r"), py::arg("y"), py::arg("r_lo"),
          py::arg("r_hi"), py::arg("quantity") = "");

    py::class_<DecaySeries>(m, "DecaySeries")
        .def_readonly("r", &DecaySeries::r)
        .def_readonly("sup_dr", &DecaySeries::sup_dr)
        .def_readonly("sup_Z_r", &DecaySeries::sup_Z_r)
        .def_readonly("c2_min", &DecaySeries::c2_min)
        .def_readonly("c2_max", &DecaySeries::c2_max);

    m.def("decay_series", &decay_series);

    py::class_<ExtensionCoefficients>(m, "ExtensionCoefficients")
        .def_readonly("lambda_", &ExtensionCoefficients::lambda)
        .def("moment_residual", &ExtensionCoefficients::moment_residual);

    m.def("extension_coefficients", &extension_coefficients);

    py::class_<InterpolationExponents>(m, "InterpolationExponents")
        .def_readwrite("s", &InterpolationExponents::s)
        .def_readwrite("tau", &InterpolationExponents::tau)
        .def_readwrite("p", &InterpolationExponents::p)
        .def_readwrite("alpha", &InterpolationExponents::alpha)
        .def_readwrite("beta", &InterpolationExponents::beta)
        .def_readwrite("q", &InterpolationExponents::q)
        .def_readwrite("a", &InterpolationExponents::a)
        .def_readwrite("j", &InterpolationExponents::j)
        .def_readwrite("m", &InterpolationExponents::m)
        .def_readwrite("n", &InterpolationExponents::n);

    m.def("canonical_exponent_set", &canonical_exponent_set);
    m.def(
        "weighted_interpolation_admissible",
        [](const InterpolationExponents& e) {
            return weighted_interpolation_admissible(e);
        },
        py::arg("exponents"));

    py::class_<ConeBump>(m, "ConeBump")
        .def(py::init<>())
        .def_readwrite("r_center", &ConeBump::r_center)
        .def_readwrite("r_width", &ConeBump::r_width)
        .def_readwrite("phi_center", &ConeBump::phi_center)
        .def_readwrite("phi_width", &ConeBump::phi_width)
        .def_readwrite("amplitude", &ConeBump::amplitude)
        .def("partial", &ConeBump::partial);

    m.def("inequality_ratio", &inequality_ratio, py::arg("which"), py::arg("u"),
          py::arg("gamma"), py::arg("sigma"), py::arg("delta"), py::arg("phi0"),
          py::arg("grid_level") = 0);

    py::class_<ZFieldProbeReport>(m, "ZFieldProbeReport")
        .def_readonly("max_identity_residual", &ZFieldProbeReport::max_identity_residual)
        .def_readonly("max_commutator_residual",
                      &ZFieldProbeReport::max_commutator_residual)
        .def_readonly("max_tangential_gap", &ZFieldProbeReport::max_tangential_gap);

    m.def("z_field_probe", &z_field_probe);
}
