#include "vortexwave/errors.hpp"
#include "vortexwave/exact.hpp"
#include "vortexwave/geometry.hpp"
#include "vortexwave/quasi.hpp"
#include "vortexwave/scenario.hpp"
#include "vortexwave/specfun.hpp"
#include "vortexwave/vortex.hpp"

#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

namespace py = pybind11;
using namespace vortexwave;

namespace {

Spin spin_from_string(const std::string& s)
{
    if (s == "spinless") return Spin::spinless();
    if (s == "half+") return Spin::half(+1);
    if (s == "half-") return Spin::half(-1);
    throw DomainError("spin must be spinless|half+|half-");
}

} // namespace

PYBIND11_MODULE(_core, m)
{
    m.doc() = "scattering off an impenetrable magnetic vortex in conical space";

    py::register_exception<Error>(m, "VortexwaveError", PyExc_ValueError);

    py::class_<ConeGeometry>(m, "ConeGeometry")
        .def(py::init<double>(), py::arg("eta"))
        .def_property_readonly("eta", &ConeGeometry::eta)
        .def_property_readonly("phi_eta", &ConeGeometry::phi_eta)
        .def_property_readonly("omega_eta", &ConeGeometry::omega_eta)
        .def("__repr__", [](const ConeGeometry& g) {
            std::ostringstream os;
            os << "ConeGeometry(eta=" << g.eta() << ")";
            return os.str();
        });

    py::class_<TubeSpec>(m, "TubeSpec")
        .def(py::init<double>(), py::arg("r_c"))
        .def(py::init<double, double>(), py::arg("r_c"), py::arg("xi_c"))
        .def_property_readonly("r_c", &TubeSpec::r_c)
        .def_property_readonly("xi_c", &TubeSpec::xi_c);

    py::class_<VortexConfig>(m, "VortexConfig")
        .def(py::init([](double eta, double r_c, double flux_ratio,
                         const std::string& spin, double xi_c) {
                 return VortexConfig(ConeGeometry(eta),
                                     TubeSpec(r_c, xi_c > 0 ? xi_c : r_c),
                                     flux_ratio, spin_from_string(spin));
             }),
             py::arg("eta") = 0.0, py::arg("r_c") = 1.0, py::arg("flux_ratio") = 0.0,
             py::arg("spin") = "spinless", py::arg("xi_c") = -1.0)
        .def_property_readonly("geom", &VortexConfig::geom)
        .def_property_readonly("tube", &VortexConfig::tube)
        .def_property_readonly("flux_ratio", &VortexConfig::flux_ratio)
        .def_property_readonly("effective_flux", &VortexConfig::effective_flux);

    py::class_<WaveState>(m, "WaveState")
        .def(py::init<double>(), py::arg("k"))
        .def_property_readonly("k", &WaveState::k)
        .def_static("from_kinematics", &WaveState::from_kinematics, py::arg("mass"),
                    py::arg("energy"), py::arg("k_z"), py::arg("hbar") = 1.0);

    // special functions
    m.def("bessel_j", &specfun::bessel_j, py::arg("nu"), py::arg("x"));
    m.def("bessel_y", &specfun::bessel_y, py::arg("nu"), py::arg("x"));
    m.def("hankel1", &specfun::hankel1, py::arg("nu"), py::arg("x"));
    m.def("jh_ratio", &specfun::jh_ratio, py::arg("nu"), py::arg("x"));

    // classical geometry
    py::enum_<RegionLabel>(m, "RegionLabel")
        .value("Regular", RegionLabel::Regular)
        .value("Shadow", RegionLabel::Shadow)
        .value("DoubleImage", RegionLabel::DoubleImage);
    py::enum_<HalfSpace>(m, "HalfSpace")
        .value("UpperHalf", HalfSpace::UpperHalf)
        .value("LowerHalf", HalfSpace::LowerHalf)
        .value("Combined", HalfSpace::Combined);
    m.def("classify_angle", &classify_angle, py::arg("phi"), py::arg("geom"));
    m.def("impact_parameter", &impact_parameter, py::arg("phi"), py::arg("geom"),
          py::arg("tube"));
    m.def(
        "dsigma_classical",
        [](double phi, const ConeGeometry& g, const TubeSpec& t, HalfSpace mode) {
            const auto r = dsigma_classical(phi, g, t, mode);
            return py::make_tuple(r.value, r.region);
        },
        py::arg("phi"), py::arg("geom"), py::arg("tube"), py::arg("mode"));
    m.def(
        "sigma_classical_totals",
        [](const ConeGeometry& g, const TubeSpec& t) {
            const auto r = sigma_classical_totals(g, t);
            py::dict d;
            d["sigma_total"] = r.sigma_total;
            if (r.sigma_out) d["sigma_out"] = *r.sigma_out;
            if (r.sigma_in) d["sigma_in"] = *r.sigma_in;
            return d;
        },
        py::arg("geom"), py::arg("tube"));
    m.def("transverse_wavenumber", &transverse_wavenumber, py::arg("mass"),
          py::arg("energy"), py::arg("k_z"), py::arg("hbar") = 1.0);
    m.def("alpha_order", &alpha_order, py::arg("n"), py::arg("cfg"));

    // exact series
    py::class_<exact::TruncationPolicy>(m, "TruncationPolicy")
        .def(py::init<>())
        .def_readwrite("tol", &exact::TruncationPolicy::tol)
        .def_readwrite("max_terms", &exact::TruncationPolicy::max_terms)
        .def_readwrite("include_zero_radius",
                       &exact::TruncationPolicy::include_zero_radius);

    py::class_<exact::AmplitudeResult>(m, "AmplitudeResult")
        .def_readonly("value", &exact::AmplitudeResult::value)
        .def_readonly("truncation_error", &exact::AmplitudeResult::truncation_error)
        .def_readonly("terms_used", &exact::AmplitudeResult::terms_used)
        .def_readonly("near_peak", &exact::AmplitudeResult::near_peak);

    py::class_<exact::ExactSeries>(m, "ExactSeries")
        .def(py::init<const WaveState&, const VortexConfig&,
                      exact::TruncationPolicy>(),
             py::arg("k"), py::arg("cfg"),
             py::arg("policy") = exact::TruncationPolicy{})
        .def("amplitude", &exact::ExactSeries::amplitude, py::arg("phi"))
        .def("amplitude_ratio_part", &exact::ExactSeries::amplitude_ratio_part,
             py::arg("phi"))
        .def("zero_radius", &exact::ExactSeries::zero_radius, py::arg("phi"))
        .def_property_readonly("terms_used", &exact::ExactSeries::terms_used);

    py::class_<exact::WavefunctionSeries>(m, "WavefunctionSeries")
        .def(py::init<double, const WaveState&, const VortexConfig&,
                      exact::TruncationPolicy>(),
             py::arg("r"), py::arg("k"), py::arg("cfg"),
             py::arg("policy") = exact::TruncationPolicy{})
        .def("value", &exact::WavefunctionSeries::value, py::arg("phi"));

    m.def(
        "amplitude_exact",
        [](const WaveState& k, double phi, const VortexConfig& cfg,
           exact::TruncationPolicy pol) { return exact::amplitude_exact(k, phi, cfg, pol); },
        py::arg("k"), py::arg("phi"), py::arg("cfg"),
        py::arg("policy") = exact::TruncationPolicy{});
    m.def("amplitude_zero_radius", &exact::amplitude_zero_radius, py::arg("k"),
          py::arg("phi"), py::arg("cfg"));
    m.def(
        "wavefunction_exact",
        [](double r, double phi, const WaveState& k, const VortexConfig& cfg,
           exact::TruncationPolicy pol) {
            return exact::wavefunction_exact(r, phi, k, cfg, pol);
        },
        py::arg("r"), py::arg("phi"), py::arg("k"), py::arg("cfg"),
        py::arg("policy") = exact::TruncationPolicy{});
    m.def("wavefunction_halfflux", &exact::wavefunction_halfflux, py::arg("r"),
          py::arg("phi"), py::arg("k"), py::arg("cfg"));
    m.def(
        "incident_wave",
        [](double r, double phi, const WaveState& k, const VortexConfig& cfg) {
            const auto w = exact::incident_wave(r, phi, k, cfg);
            return py::make_tuple(w.value, w.n_l, w.shadow);
        },
        py::arg("r"), py::arg("phi"), py::arg("k"), py::arg("cfg"));
    m.def(
        "smatrix_peak_data",
        [](const VortexConfig& cfg, const WaveState& k) {
            const auto d = exact::smatrix_peak_data(cfg, k);
            py::dict out;
            out["directions"] = d.directions;
            out["phases"] = d.phases;
            out["prefactor"] = d.prefactor;
            return out;
        },
        py::arg("cfg"), py::arg("k"));
    m.def(
        "optical_check",
        [](const WaveState& k, const VortexConfig& cfg) {
            const auto c = exact::optical_check(k, cfg);
            return py::make_tuple(c.lhs, c.sigma_quad, c.residual);
        },
        py::arg("k"), py::arg("cfg"));
    m.def("near_peak", &exact::near_peak, py::arg("phi"), py::arg("cfg"), py::arg("k"));

    // quasiclassical decomposition
    py::enum_<quasi::PeakBranch>(m, "PeakBranch")
        .value("PlusPeak", quasi::PeakBranch::PlusPeak)
        .value("MinusPeak", quasi::PeakBranch::MinusPeak)
        .value("EuclidTube", quasi::PeakBranch::EuclidTube)
        .value("EuclidVortex", quasi::PeakBranch::EuclidVortex);
    py::enum_<quasi::DsigmaChannel>(m, "DsigmaChannel")
        .value("QClassOutside", quasi::DsigmaChannel::QClassOutside)
        .value("QClassDoubleImage", quasi::DsigmaChannel::QClassDoubleImage)
        .value("PeakPlus", quasi::DsigmaChannel::PeakPlus)
        .value("PeakMinus", quasi::DsigmaChannel::PeakMinus)
        .value("EuclidPeakFlux", quasi::DsigmaChannel::EuclidPeakFlux)
        .value("ForwardWindow", quasi::DsigmaChannel::ForwardWindow);
    py::enum_<quasi::SigmaChannel>(m, "SigmaChannel")
        .value("PeakPlus", quasi::SigmaChannel::PeakPlus)
        .value("PeakMinus", quasi::SigmaChannel::PeakMinus)
        .value("Peak", quasi::SigmaChannel::Peak)
        .value("QClass", quasi::SigmaChannel::QClass)
        .value("Total", quasi::SigmaChannel::Total);
    py::enum_<quasi::OpticalMode>(m, "OpticalMode")
        .value("Euclid", quasi::OpticalMode::Euclid)
        .value("Cone", quasi::OpticalMode::Cone);

    m.def("delta_reg", &quasi::delta_reg, py::arg("x"), py::arg("phi"));
    m.def("f_peak", &quasi::f_peak, py::arg("k"), py::arg("phi"), py::arg("branch"),
          py::arg("cfg"));
    m.def("f_qclass", &quasi::f_qclass, py::arg("k"), py::arg("phi"), py::arg("cfg"));
    m.def("dsigma_analytic", &quasi::dsigma_analytic, py::arg("phi"),
          py::arg("channel"), py::arg("cfg"), py::arg("k"));
    m.def("sigma_integrated", &quasi::sigma_integrated, py::arg("channel"),
          py::arg("cfg"));
    m.def("optical_residual", &quasi::optical_residual, py::arg("k"), py::arg("cfg"),
          py::arg("mode"));
    m.def(
        "gate_function",
        [](double phi, const std::string& parity, const std::string& spin, int sigma,
           const VortexConfig& cfg, const WaveState& k) {
            quasi::GateSpec spec;
            if (parity == "even") spec.parity = quasi::GateParity::Even;
            else if (parity == "odd") spec.parity = quasi::GateParity::Odd;
            else throw DomainError("parity must be even|odd");
            if (spin == "spinless") spec.spin = quasi::GateSpin::Spinless;
            else if (spin == "unpolarized") spec.spin = quasi::GateSpin::HalfUnpolarized;
            else if (spin == "polarized") spec.spin = quasi::GateSpin::HalfPolarized;
            else throw DomainError("spin must be spinless|unpolarized|polarized");
            spec.sigma = sigma;
            return quasi::gate_function(phi, spec, cfg, k);
        },
        py::arg("phi"), py::arg("parity"), py::arg("spin"), py::arg("sigma"),
        py::arg("cfg"), py::arg("k"));
    m.def(
        "compose_quasiclassical",
        [](const WaveState& k, double phi, const VortexConfig& cfg) {
            const auto d = quasi::compose_quasiclassical(k, phi, cfg);
            py::dict out;
            out["f_peak_plus"] = d.f_peak_plus;
            out["f_peak_minus"] = d.f_peak_minus;
            out["f_qclass"] = d.f_qclass;
            out["total"] = d.total;
            out["remainder_bound"] = d.remainder_bound;
            return out;
        },
        py::arg("k"), py::arg("phi"), py::arg("cfg"));

    // scenario runner
    m.def(
        "run_config",
        [](const std::string& text, int threads) {
            const auto cfg = cli::parse_config(text);
            const auto out = cli::run_scenario(cfg, threads);
            return cli::emit_json(out, cfg);
        },
        py::arg("config_text"), py::arg("threads") = 1,
        "Parse a config document, run it, return the JSON payload.");

    m.attr("__version__") = "0.1.0";
}
