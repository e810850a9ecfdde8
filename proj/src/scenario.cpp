#include "vortexwave/scenario.hpp"
#include "vortexwave/errors.hpp"
#include "vortexwave/exact.hpp"
#include "vortexwave/geometry.hpp"
#include "vortexwave/quadrature.hpp"
#include "vortexwave/quasi.hpp"

#include <json.hpp>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <limits>
#include <map>
#include <numbers>
#include <sstream>
#include <thread>

namespace vortexwave::cli {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr const char* kVersion = "0.1.0";

std::string fmt12(double v)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

std::string fmt17(double v)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string trim(const std::string& s)
{
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

struct RawEntry {
    std::string value;
    int line;
};

double to_double(const std::string& key, const RawEntry& e)
{
    try {
        std::size_t pos = 0;
        const double v = std::stod(e.value, &pos);
        if (pos != e.value.size()) throw std::invalid_argument("trailing text");
        return v;
    } catch (const std::exception&) {
        throw ConfigError(key + " expects a number, got '" + e.value + "'", e.line);
    }
}

long to_long(const std::string& key, const RawEntry& e)
{
    try {
        std::size_t pos = 0;
        const long v = std::stol(e.value, &pos);
        if (pos != e.value.size()) throw std::invalid_argument("trailing text");
        return v;
    } catch (const std::exception&) {
        throw ConfigError(key + " expects an integer, got '" + e.value + "'", e.line);
    }
}

bool to_bool(const std::string& key, const RawEntry& e)
{
    if (e.value == "true") return true;
    if (e.value == "false") return false;
    throw ConfigError(key + " expects true or false, got '" + e.value + "'", e.line);
}

std::vector<double> to_double_list(const std::string& key, const RawEntry& e)
{
    std::vector<double> out;
    std::stringstream ss(e.value);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (item.empty())
            throw ConfigError(key + " has an empty list element", e.line);
        out.push_back(to_double(key, RawEntry{item, e.line}));
    }
    if (out.empty()) throw ConfigError(key + " expects a nonempty list", e.line);
    return out;
}

const char* scenario_name(Scenario s)
{
    switch (s) {
    case Scenario::Classical: return "classical";
    case Scenario::Exact: return "exact";
    case Scenario::Quasi: return "quasi";
    case Scenario::Compare: return "compare";
    case Scenario::Verify: return "verify";
    }
    return "?";
}

std::string spin_name(const Spin& s)
{
    if (s.mode == SpinMode::Spinless) return "spinless";
    return s.projection > 0 ? "half+" : "half-";
}

void validate_point(Scenario scenario, double eta, double k_rc)
{
    if (!std::isfinite(eta)) throw ConfigError("eta must be finite");
    if (eta >= 1.0) throw ConfigError("eta must be < 1");
    if (!(k_rc > 0.0)) throw ConfigError("k_rc must be positive");
    const bool quasiclassical = scenario == Scenario::Quasi ||
                                scenario == Scenario::Compare;
    if (quasiclassical && eta >= 0.5)
        throw ConfigError("quasiclassical formulas require eta < 1/2");
    if (scenario == Scenario::Classical && eta >= 0.5)
        throw ConfigError("classical formulas require eta < 1/2");
}

} // namespace

VortexConfig ScenarioConfig::vortex() const
{
    return VortexConfig(ConeGeometry(eta), TubeSpec(r_c, xi_c), flux_ratio, spin);
}

WaveState ScenarioConfig::wave() const { return WaveState(k_rc / r_c); }

std::string ScenarioConfig::canonical_text() const
{
    std::ostringstream os;
    os << "scenario = " << scenario_name(scenario) << "\n";
    os << "eta = " << fmt17(eta) << "\n";
    os << "flux_ratio = " << fmt17(flux_ratio) << "\n";
    os << "spin = " << spin_name(spin) << "\n";
    os << "k_rc = " << fmt17(k_rc) << "\n";
    os << "r_c = " << fmt17(r_c) << "\n";
    os << "xi_c = " << fmt17(xi_c) << "\n";
    os << "phi_grid.count = " << phi_grid.count << "\n";
    os << "phi_grid.lo = " << fmt17(phi_grid.lo) << "\n";
    os << "phi_grid.hi = " << fmt17(phi_grid.hi) << "\n";
    os << "phi_grid.mask_peaks = " << (phi_grid.mask_peaks ? "true" : "false") << "\n";
    if (sweep) {
        os << "sweep.param = " << sweep->param << "\n";
        os << "sweep.values = ";
        for (std::size_t i = 0; i < sweep->values.size(); ++i)
            os << (i ? "," : "") << fmt17(sweep->values[i]);
        os << "\n";
    }
    os << "tol = " << fmt17(tol) << "\n";
    os << "term_budget = " << term_budget << "\n";
    if (wavefunction_kr) os << "wavefunction.k_r = " << fmt17(*wavefunction_kr) << "\n";
    os << "output.format = " << (format == OutputFormat::Csv ? "csv" : "json") << "\n";
    os << "output.path = " << out_path << "\n";
    return os.str();
}

ScenarioConfig parse_config(
    const std::string& text,
    const std::vector<std::pair<std::string, std::string>>& overrides)
{
    std::map<std::string, RawEntry> raw;
    std::istringstream is(text);
    std::string line;
    int lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("expected 'key = value', got '" + line + "'", lineno);
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty()) throw ConfigError("empty key", lineno);
        if (value.empty()) throw ConfigError("empty value for key '" + key + "'", lineno);
        if (raw.count(key))
            throw ConfigError("duplicate key '" + key + "'", lineno);
        raw[key] = {value, lineno};
    }
    for (const auto& [key, value] : overrides) {
        if (trim(value).empty()) throw ConfigError("empty value for override '" + key + "'");
        raw[trim(key)] = {trim(value), 0};
    }

    ScenarioConfig cfg;
    auto take = [&](const char* key) -> std::optional<RawEntry> {
        auto it = raw.find(key);
        if (it == raw.end()) return std::nullopt;
        RawEntry e = it->second;
        raw.erase(it);
        return e;
    };

    if (auto e = take("scenario")) {
        if (e->value == "classical") cfg.scenario = Scenario::Classical;
        else if (e->value == "exact") cfg.scenario = Scenario::Exact;
        else if (e->value == "quasi") cfg.scenario = Scenario::Quasi;
        else if (e->value == "compare") cfg.scenario = Scenario::Compare;
        else if (e->value == "verify") cfg.scenario = Scenario::Verify;
        else
            throw ConfigError("scenario must be classical|exact|quasi|compare|verify",
                              e->line);
    }
    if (auto e = take("eta")) cfg.eta = to_double("eta", *e);
    if (auto e = take("flux_ratio")) cfg.flux_ratio = to_double("flux_ratio", *e);
    if (auto e = take("spin")) {
        if (e->value == "spinless") cfg.spin = Spin::spinless();
        else if (e->value == "half+") cfg.spin = Spin::half(+1);
        else if (e->value == "half-") cfg.spin = Spin::half(-1);
        else throw ConfigError("spin must be spinless|half+|half-", e->line);
    }
    if (auto e = take("k_rc")) cfg.k_rc = to_double("k_rc", *e);
    bool have_xi = false;
    if (auto e = take("r_c")) {
        cfg.r_c = to_double("r_c", *e);
        if (!(cfg.r_c > 0.0)) throw ConfigError("r_c must be positive", e->line);
    }
    if (auto e = take("xi_c")) {
        cfg.xi_c = to_double("xi_c", *e);
        if (!(cfg.xi_c > 0.0)) throw ConfigError("xi_c must be positive", e->line);
        have_xi = true;
    }
    if (!have_xi) cfg.xi_c = cfg.r_c;

    cfg.phi_grid.lo = -kPi;
    cfg.phi_grid.hi = kPi;
    if (auto e = take("phi_grid.count")) {
        cfg.phi_grid.count = static_cast<int>(to_long("phi_grid.count", *e));
        if (cfg.phi_grid.count < 2)
            throw ConfigError("phi_grid.count must be >= 2", e->line);
    }
    if (auto e = take("phi_grid.lo")) cfg.phi_grid.lo = to_double("phi_grid.lo", *e);
    if (auto e = take("phi_grid.hi")) cfg.phi_grid.hi = to_double("phi_grid.hi", *e);
    if (!(cfg.phi_grid.hi > cfg.phi_grid.lo))
        throw ConfigError("phi_grid.hi must exceed phi_grid.lo");
    cfg.phi_grid.mask_peaks = cfg.scenario == Scenario::Compare;
    if (auto e = take("phi_grid.mask_peaks"))
        cfg.phi_grid.mask_peaks = to_bool("phi_grid.mask_peaks", *e);

    const auto sweep_param = take("sweep.param");
    const auto sweep_values = take("sweep.values");
    if (sweep_param.has_value() != sweep_values.has_value())
        throw ConfigError("sweep.param and sweep.values must be given together");
    if (sweep_param) {
        SweepSpec sw;
        sw.param = sweep_param->value;
        if (sw.param != "eta" && sw.param != "flux_ratio" && sw.param != "k_rc")
            throw ConfigError("sweep.param must be eta|flux_ratio|k_rc",
                              sweep_param->line);
        sw.values = to_double_list("sweep.values", *sweep_values);
        cfg.sweep = sw;
    }

    if (auto e = take("tol")) {
        cfg.tol = to_double("tol", *e);
        if (!(cfg.tol > 0.0)) throw ConfigError("tol must be positive", e->line);
    }
    if (auto e = take("term_budget")) {
        cfg.term_budget = to_long("term_budget", *e);
        if (cfg.term_budget < 0)
            throw ConfigError("term_budget must be >= 0", e->line);
    }
    if (auto e = take("wavefunction.k_r")) {
        cfg.wavefunction_kr = to_double("wavefunction.k_r", *e);
    }

    cfg.format = cfg.scenario == Scenario::Verify ? OutputFormat::Json
                                                  : OutputFormat::Csv;
    if (auto e = take("output.format")) {
        if (e->value == "csv") cfg.format = OutputFormat::Csv;
        else if (e->value == "json") cfg.format = OutputFormat::Json;
        else throw ConfigError("output.format must be csv or json", e->line);
        if (cfg.scenario == Scenario::Verify && cfg.format == OutputFormat::Csv)
            throw ConfigError("verify requires output.format = json", e->line);
    }
    if (auto e = take("output.path")) cfg.out_path = e->value;

    if (!raw.empty()) {
        const auto& [key, entry] = *raw.begin();
        throw ConfigError("unknown key '" + key + "'", entry.line);
    }

    // validate the base point and every sweep substitution
    validate_point(cfg.scenario, cfg.eta, cfg.k_rc);
    if (cfg.wavefunction_kr && !(*cfg.wavefunction_kr >= cfg.k_rc))
        throw ConfigError("wavefunction.k_r must be >= k_rc");
    if (cfg.sweep) {
        for (double v : cfg.sweep->values) {
            double eta = cfg.eta, k_rc = cfg.k_rc;
            if (cfg.sweep->param == "eta") eta = v;
            if (cfg.sweep->param == "k_rc") k_rc = v;
            validate_point(cfg.scenario, eta, k_rc);
        }
    }
    return cfg;
}

bool VerificationReport::all_pass() const
{
    return std::all_of(checks.begin(), checks.end(),
                       [](const CheckResult& c) { return c.pass; });
}

namespace {

std::vector<double> make_grid(const PhiGrid& g)
{
    std::vector<double> phis(g.count);
    for (int i = 0; i < g.count; ++i)
        phis[i] = g.lo + (g.hi - g.lo) * static_cast<double>(i) /
                             static_cast<double>(g.count - 1);
    return phis;
}

// map i -> row over `threads` workers; rows land at their index
template <typename Fn>
std::vector<ResultRow> parallel_rows(int count, int threads, Fn&& fn)
{
    std::vector<ResultRow> rows(count);
    if (threads <= 1) {
        for (int i = 0; i < count; ++i) rows[i] = fn(i);
        return rows;
    }
    std::vector<std::thread> pool;
    std::atomic<int> next{0};
    for (int t = 0; t < threads; ++t)
        pool.emplace_back([&] {
            for (int i = next.fetch_add(1); i < count; i = next.fetch_add(1))
                rows[i] = fn(i);
        });
    for (auto& th : pool) th.join();
    return rows;
}

RunOutput run_classical(const ScenarioConfig& cfg, int threads)
{
    const VortexConfig vc = cfg.vortex();
    const ConeGeometry& geom = vc.geom();
    const TubeSpec& tube = vc.tube();
    const double eta = geom.eta();
    const double phe = geom.phi_eta();

    RunOutput out;
    out.table.columns = {"dsigma_upper", "dsigma_lower", "dsigma_combined"};
    out.table.has_label = true;
    out.table.label_name = "region";

    const auto phis = make_grid(cfg.phi_grid);
    out.table.rows = parallel_rows(
        static_cast<int>(phis.size()), threads, [&](int i) {
            const double phi = phis[i];
            ResultRow row;
            row.phi = phi;
            row.values.assign(3, std::nullopt);
            const RegionLabel region = classify_angle(phi, geom);
            row.label = region == RegionLabel::Shadow        ? "shadow"
                        : region == RegionLabel::DoubleImage ? "double-image"
                                                             : "regular";
            if (region == RegionLabel::Shadow) {
                row.values[0] = 0.0;
                row.values[1] = 0.0;
                row.source = "Eq35";
                return row;
            }
            if (phi > phe && phi < kPi)
                row.values[0] = dsigma_classical(phi, geom, tube, HalfSpace::UpperHalf).value;
            if (phi > -kPi && phi < -phe)
                row.values[1] =
                    dsigma_classical(phi + 2.0 * kPi, geom, tube, HalfSpace::LowerHalf).value;
            if (region == RegionLabel::DoubleImage) {
                row.values[2] = dsigma_classical(phi, geom, tube, HalfSpace::Combined).value;
                row.source = "Eq38";
            } else {
                row.source = row.values[0] ? "Eq5" : "Eq6";
            }
            return row;
        });

    const ClassicalTotals totals = sigma_classical_totals(geom, tube);
    out.report.add_scalar("sigma_total", totals.sigma_total);
    if (totals.sigma_out) out.report.add_scalar("sigma_out", *totals.sigma_out);
    if (totals.sigma_in) out.report.add_scalar("sigma_in", *totals.sigma_in);

    // quadrature cross-check of the closed-form totals
    auto upper = [&](double p) {
        return dsigma_classical(p, geom, tube, HalfSpace::UpperHalf).value;
    };
    auto lower = [&](double p) {
        return dsigma_classical(p, geom, tube, HalfSpace::LowerHalf).value;
    };
    const double omega = geom.omega_eta();
    const double quad_total = quad::integrate(upper, omega, kPi, 1e-12) +
                              quad::integrate(lower, kPi, 2.0 * kPi - omega, 1e-12) +
                              (eta > 0.0
                                   ? quad::integrate(upper, -omega, omega, 1e-12) +
                                         quad::integrate(lower, 2.0 * kPi - omega,
                                                         2.0 * kPi + omega, 1e-12)
                                   : 0.0);
    out.report.add_scalar("sigma_total_quadrature", quad_total);
    out.report.checks.push_back(
        {"classical_quadrature",
         std::abs(quad_total - totals.sigma_total) <= 1e-9 * totals.sigma_total,
         std::abs(quad_total - totals.sigma_total) / totals.sigma_total, 1e-9,
         "adaptive integral of the two branches vs closed form"});
    return out;
}

RunOutput run_exact(const ScenarioConfig& cfg, int threads)
{
    const VortexConfig vc = cfg.vortex();
    const WaveState k = cfg.wave();
    exact::TruncationPolicy pol{cfg.tol, cfg.term_budget, true};
    const exact::ExactSeries series(k, vc, pol);
    std::optional<exact::WavefunctionSeries> psi;
    if (cfg.wavefunction_kr)
        psi.emplace(*cfg.wavefunction_kr / k.k(), k, vc, pol);

    RunOutput out;
    out.table.columns = {"re_f", "im_f", "dsigma"};
    if (psi) {
        out.table.columns.push_back("re_psi");
        out.table.columns.push_back("im_psi");
    }
    out.table.has_label = true;
    out.table.label_name = "flag";

    const auto phis = make_grid(cfg.phi_grid);
    out.table.rows = parallel_rows(
        static_cast<int>(phis.size()), threads, [&](int i) {
            const double phi = phis[i];
            ResultRow row;
            row.phi = phi;
            row.values.assign(out.table.columns.size(), std::nullopt);
            row.source = "Eq45";
            const bool peaky = exact::near_peak(phi, vc, k);
            row.label = peaky ? "near-peak" : "";
            if (!(cfg.phi_grid.mask_peaks && peaky)) {
                try {
                    const auto amp = series.amplitude(phi);
                    row.values[0] = amp.value.real();
                    row.values[1] = amp.value.imag();
                    row.values[2] = std::norm(amp.value);
                } catch (const SingularityError&) {
                    row.label = "peak-singularity";
                }
            }
            if (psi) {
                const auto v = psi->value(phi);
                row.values[3] = v.real();
                row.values[4] = v.imag();
                row.source = "Eq45+EqA7";
            }
            return row;
        });

    const auto check = exact::optical_check(k, vc, pol);
    out.report.add_scalar("optical_lhs", check.lhs);
    out.report.add_scalar("optical_sigma_quad", check.sigma_quad);
    out.report.add_scalar("sigma_ratio_part", exact::ratio_part_cross_section(series));
    out.report.add_scalar("terms_used", static_cast<double>(series.terms_used()));
    out.report.checks.push_back({"optical_exact", check.residual < 1e-4,
                                 check.residual, 1e-4,
                                 "generalized optical theorem residual"});
    return out;
}

RunOutput run_quasi(const ScenarioConfig& cfg, int threads)
{
    const VortexConfig vc = cfg.vortex();
    const WaveState k = cfg.wave();
    const double eta = vc.geom().eta();
    const double x = k.k() * vc.tube().r_c();

    RunOutput out;
    out.table.columns = {"dsigma_qclass", "dsigma_peak_plus", "dsigma_peak_minus",
                         "dsigma_peak_euclid", "dsigma_total_coherent",
                         "gate_even", "gate_odd"};
    out.table.has_label = true;
    out.table.label_name = "region";

    const quasi::GateSpin gate_spin = vc.spin().mode == SpinMode::Spinless
                                          ? quasi::GateSpin::Spinless
                                          : quasi::GateSpin::HalfPolarized;
    const char* gate_eq =
        vc.spin().mode == SpinMode::Spinless ? "Eq59" : "Eq61";

    const auto phis = make_grid(cfg.phi_grid);
    out.table.rows = parallel_rows(
        static_cast<int>(phis.size()), threads, [&](int i) {
            const double phi = phis[i];
            ResultRow row;
            row.phi = phi;
            row.values.assign(7, std::nullopt);
            const RegionLabel region = classify_angle(phi, vc.geom());
            row.label = region == RegionLabel::Shadow        ? "shadow"
                        : region == RegionLabel::DoubleImage ? "double-image"
                                                             : "regular";
            switch (region) {
            case RegionLabel::Shadow:
                row.values[0] = 0.0;
                row.source = "Eq35";
                break;
            case RegionLabel::DoubleImage:
                row.values[0] = quasi::dsigma_analytic(
                    phi, quasi::DsigmaChannel::QClassDoubleImage, vc, k);
                row.source = vc.effective_flux() == 0.0 ? "Eq37" : "Eq50";
                break;
            case RegionLabel::Regular:
                row.values[0] = quasi::dsigma_analytic(
                    phi, quasi::DsigmaChannel::QClassOutside, vc, k);
                row.source = eta > 0.0 ? "Eq36" : "Eq34";
                break;
            }
            const bool peaky = exact::near_peak(phi, vc, k);
            if (peaky) row.label += row.label.empty() ? "near-peak" : "+near-peak";
            if (!(cfg.phi_grid.mask_peaks && peaky)) {
                row.values[1] =
                    quasi::dsigma_analytic(phi, quasi::DsigmaChannel::PeakPlus, vc, k);
                row.values[2] =
                    quasi::dsigma_analytic(phi, quasi::DsigmaChannel::PeakMinus, vc, k);
                if (eta == 0.0)
                    row.values[3] = quasi::dsigma_analytic(
                        phi, quasi::DsigmaChannel::EuclidPeakFlux, vc, k);
                row.values[4] =
                    std::norm(quasi::compose_quasiclassical(k, phi, vc).total);
            }
            if (eta > 0.0 && std::abs((1.0 - eta) * phi) < 1.0 / x) {
                row.values[5] = quasi::gate_function(
                    phi, {quasi::GateParity::Even, gate_spin, vc.spin().projection}, vc, k);
                row.values[6] = quasi::gate_function(
                    phi, {quasi::GateParity::Odd, gate_spin, vc.spin().projection}, vc, k);
                row.source += std::string("+") + gate_eq;
            }
            return row;
        });

    const double s_peak_plus = quasi::sigma_integrated(quasi::SigmaChannel::PeakPlus, vc);
    const double s_qclass = quasi::sigma_integrated(quasi::SigmaChannel::QClass, vc);
    const double s_total = quasi::sigma_integrated(quasi::SigmaChannel::Total, vc);
    const double s_classical = sigma_classical_totals(vc.geom(), vc.tube()).sigma_total;
    out.report.add_scalar("sigma_peak_plus", s_peak_plus);
    out.report.add_scalar("sigma_peak_minus", s_peak_plus);
    out.report.add_scalar("sigma_qclass", s_qclass);
    out.report.add_scalar("sigma_total", s_total);
    out.report.add_scalar("sigma_classical", s_classical);
    out.report.add_scalar("remainder_bound",
                          std::sqrt(vc.tube().r_c()) * std::pow(x, -1.0 / 6.0));
    out.report.checks.push_back({"doubling", s_total == 2.0 * s_classical,
                                 s_total / s_classical, 2.0,
                                 "sigma_tot equals twice the classical total"});
    const double resid = quasi::optical_residual(
        k, vc, eta == 0.0 ? quasi::OpticalMode::Euclid : quasi::OpticalMode::Cone);
    out.report.add_scalar("optical_residual", resid);
    if (cfg.k_rc >= 50.0)
        out.report.checks.push_back(
            {"optical_quasi", resid < 0.05, resid, 0.05,
             eta == 0.0 ? "Euclid regularized optical theorem"
                        : "cone regularized optical theorem"});
    return out;
}

RunOutput run_compare(const ScenarioConfig& cfg, int threads)
{
    const VortexConfig vc = cfg.vortex();
    const WaveState k = cfg.wave();

    RunOutput out;
    out.table.columns = {"dsigma_exact", "dsigma_quasi", "rel_error"};
    out.table.has_label = true;
    out.table.label_name = "flag";

    if (cfg.phi_grid.mask_peaks) {
        const auto pts = compare_profile(vc, k, cfg.phi_grid.count, cfg.phi_grid.lo,
                                         cfg.phi_grid.hi, threads);
        double max_err = 0.0;
        int used = 0;
        out.table.rows.reserve(pts.size());
        for (const auto& p : pts) {
            ResultRow row;
            row.phi = p.phi;
            row.source = "Eq45|Eq29";
            row.values.assign(3, std::nullopt);
            if (std::isfinite(p.dsigma_exact)) row.values[0] = p.dsigma_exact;
            if (std::isfinite(p.dsigma_quasi)) row.values[1] = p.dsigma_quasi;
            if (p.masked) {
                row.label = "masked";
            } else {
                row.values[2] = p.rel_error;
                max_err = std::max(max_err, p.rel_error);
                ++used;
            }
            out.table.rows.push_back(std::move(row));
        }
        out.report.add_scalar("max_rel_error", max_err);
        out.report.add_scalar("compared_points", used);
    } else {
        const exact::ExactSeries series(k, vc,
                                        {cfg.tol, cfg.term_budget, true});
        const auto phis = make_grid(cfg.phi_grid);
        out.table.rows = parallel_rows(
            static_cast<int>(phis.size()), threads, [&](int i) {
                ResultRow row;
                row.phi = phis[i];
                row.source = "Eq45|Eq29";
                row.values.assign(3, std::nullopt);
                const double q =
                    std::norm(quasi::compose_quasiclassical(k, phis[i], vc).total);
                row.values[1] = q;
                try {
                    const double e = std::norm(series.amplitude(phis[i]).value);
                    row.values[0] = e;
                    row.values[2] = std::abs(q - e) / e;
                } catch (const SingularityError&) {
                    row.label = "peak-singularity";
                }
                return row;
            });
        double max_err = 0.0;
        for (const auto& r : out.table.rows)
            if (r.values[2]) max_err = std::max(max_err, *r.values[2]);
        out.report.add_scalar("max_rel_error", max_err);
    }
    return out;
}

ScenarioConfig with_sweep_value(const ScenarioConfig& base, const std::string& param,
                                double v)
{
    ScenarioConfig c = base;
    c.sweep.reset();
    if (param == "eta") c.eta = v;
    else if (param == "flux_ratio") c.flux_ratio = v;
    else if (param == "k_rc") c.k_rc = v;
    return c;
}

RunOutput run_single(const ScenarioConfig& cfg, int threads)
{
    switch (cfg.scenario) {
    case Scenario::Classical: return run_classical(cfg, threads);
    case Scenario::Exact: return run_exact(cfg, threads);
    case Scenario::Quasi: return run_quasi(cfg, threads);
    case Scenario::Compare: return run_compare(cfg, threads);
    case Scenario::Verify: return {ResultTable{}, verify_point(cfg, threads)};
    }
    throw InvariantViolation("unreachable scenario");
}

} // namespace

std::vector<ComparePoint> compare_profile(const VortexConfig& cfg, const WaveState& k,
                                          int count, double lo, double hi, int threads)
{
    const double eta = cfg.geom().eta();
    const double xe = k.k() * cfg.tube().r_c() * (1.0 - eta);
    const double period = 2.0 * kPi / xe;
    const int n_per = std::max(2L, std::lround(0.45 / period));
    const double window = n_per * period;
    const int n_sub = 12 * n_per + 1;
    const double mask_width =
        0.5 * window + std::max(0.25, 3.0 * std::pow(xe, -1.0 / 3.0));
    const double phi_eta = cfg.geom().phi_eta();
    const double omega = cfg.geom().omega_eta();

    const exact::ExactSeries series(k, cfg);

    auto smoothed = [&](const std::function<double(double)>& f2, double phi) {
        double s = 0.0;
        for (int j = 0; j < n_sub; ++j)
            s += f2(phi - 0.5 * window + window * j / (n_sub - 1.0));
        return s / n_sub;
    };

    std::vector<ComparePoint> pts(count);
    auto eval = [&](int i) {
        const double phi = lo + (hi - lo) * static_cast<double>(i) /
                                    static_cast<double>(count - 1);
        ComparePoint p;
        p.phi = phi;
        const double dist = std::min(std::abs(wrap_pi(phi + phi_eta)),
                                     std::abs(wrap_pi(phi - phi_eta)));
        p.masked = dist < mask_width ||
                   (eta < 0.0 && std::abs(wrap_pi(phi)) < omega + mask_width);
        try {
            p.dsigma_exact = std::norm(series.amplitude(phi).value);
        } catch (const SingularityError&) {
            p.dsigma_exact = std::numeric_limits<double>::quiet_NaN();
        }
        p.dsigma_quasi = std::norm(quasi::compose_quasiclassical(k, phi, cfg).total);
        p.rel_error = std::numeric_limits<double>::quiet_NaN();
        if (!p.masked) {
            // peak forms are dropped in the bulk: their sharp 1/sin tails are
            // regularization artifacts the exact amplitude does not have
            const double a = smoothed(
                [&](double q) { return std::norm(series.amplitude(q).value); }, phi);
            const double b = smoothed(
                [&](double q) { return std::norm(quasi::f_qclass(k, q, cfg)); }, phi);
            p.rel_error = std::abs(b - a) / a;
        }
        return p;
    };

    if (threads <= 1) {
        for (int i = 0; i < count; ++i) pts[i] = eval(i);
    } else {
        std::vector<std::thread> pool;
        std::atomic<int> next{0};
        for (int t = 0; t < threads; ++t)
            pool.emplace_back([&] {
                for (int i = next.fetch_add(1); i < count; i = next.fetch_add(1))
                    pts[i] = eval(i);
            });
        for (auto& th : pool) th.join();
    }
    return pts;
}

VerificationReport verify_point(const ScenarioConfig& cfg, int threads)
{
    (void)threads;
    VerificationReport rep;
    const VortexConfig vc = cfg.vortex();
    const WaveState k = cfg.wave();
    const double eta = vc.geom().eta();
    const double nu_eff = vc.effective_flux();
    exact::TruncationPolicy pol{cfg.tol, cfg.term_budget, true};

    if (eta < 0.5) {
        const ClassicalTotals totals = sigma_classical_totals(vc.geom(), vc.tube());
        auto upper = [&](double p) {
            return dsigma_classical(p, vc.geom(), vc.tube(), HalfSpace::UpperHalf).value;
        };
        auto lower = [&](double p) {
            return dsigma_classical(p, vc.geom(), vc.tube(), HalfSpace::LowerHalf).value;
        };
        const double omega = vc.geom().omega_eta();
        double quad_total = quad::integrate(upper, omega, kPi, 1e-12) +
                            quad::integrate(lower, kPi, 2.0 * kPi - omega, 1e-12);
        if (eta > 0.0)
            quad_total += quad::integrate(upper, -omega, omega, 1e-12) +
                          quad::integrate(lower, 2.0 * kPi - omega, 2.0 * kPi + omega,
                                          1e-12);
        double dev = std::abs(quad_total - totals.sigma_total) / totals.sigma_total;
        if (totals.sigma_out && totals.sigma_in) {
            const double ident =
                std::abs(*totals.sigma_out + 2.0 * *totals.sigma_in -
                         totals.sigma_total) /
                totals.sigma_total;
            dev = std::max(dev, ident);
        }
        rep.checks.push_back({"classical_totals", dev < 1e-9, dev, 1e-9,
                              "branch quadrature and the out+2*in identity"});
        rep.add_scalar("sigma_classical_total", totals.sigma_total);

        const double s_total = quasi::sigma_integrated(quasi::SigmaChannel::Total, vc);
        rep.checks.push_back({"doubling", s_total == 2.0 * totals.sigma_total,
                              s_total / totals.sigma_total, 2.0,
                              "quasiclassical total = 2x classical total"});
        rep.add_scalar("sigma_quasi_total", s_total);

        const double resid = quasi::optical_residual(
            k, vc, eta == 0.0 ? quasi::OpticalMode::Euclid : quasi::OpticalMode::Cone);
        rep.add_scalar("optical_quasi_residual", resid);
        // the regularized theorem is an asymptotic statement; gate the
        // pass/fail check on being in the quasiclassical regime
        if (cfg.k_rc >= 50.0)
            rep.checks.push_back({"optical_quasi", resid < 0.05, resid, 0.05,
                                  "regularized optical theorem"});
    }

    {
        const auto check = exact::optical_check(k, vc, pol);
        rep.checks.push_back({"optical_exact", check.residual < 1e-4, check.residual,
                              1e-4, "generalized optical theorem, exact series"});
        rep.add_scalar("optical_exact_lhs", check.lhs);
        rep.add_scalar("optical_exact_sigma", check.sigma_quad);
    }

    {
        // Dirichlet boundary value on a 64-point angular grid
        const exact::WavefunctionSeries psi(vc.tube().r_c(), k, vc, pol);
        double worst = 0.0;
        for (int i = 0; i < 64; ++i)
            worst = std::max(worst,
                             std::abs(psi.value(-kPi + 2.0 * kPi * i / 64.0)));
        rep.checks.push_back({"dirichlet", worst < 1e-8, worst, 1e-8,
                              "|psi(r_c)| on a 64-point grid"});
    }

    const double twice = 2.0 * nu_eff;
    if (twice == std::round(twice) && std::llround(std::abs(twice)) % 2 == 1) {
        double worst = 0.0;
        double forward_abs = 0.0;
        for (double kr : {std::max(5.0, 1.5 * cfg.k_rc), std::max(20.0, 3.0 * cfg.k_rc)}) {
            const exact::WavefunctionSeries psi(kr / k.k(), k, vc, pol);
            double maxpsi = 0.0;
            for (int i = 0; i < 360; ++i)
                maxpsi = std::max(maxpsi,
                                  std::abs(psi.value(-kPi + 2.0 * kPi * i / 360.0)));
            const double fw = std::abs(psi.value(0.0));
            forward_abs = std::max(forward_abs, fw);
            worst = std::max(worst, fw / maxpsi);
        }
        rep.checks.push_back({"forward_null", worst < 1e-8, worst, 1e-8,
                              "|psi(0)|/max|psi| at half-odd flux"});
        rep.add_scalar("forward_null_max_abs", forward_abs);
    }

    if (eta > 0.0 && eta < 0.5) {
        const double x = k.k() * vc.tube().r_c();
        double worst = 0.0;
        for (int i = 1; i < 32; ++i) {
            const double phi = (i - 16) / 16.5 / ((1.0 - eta) * x);
            const double sum_spinless =
                quasi::gate_function(phi, {quasi::GateParity::Even,
                                           quasi::GateSpin::Spinless, +1}, vc, k) +
                quasi::gate_function(phi, {quasi::GateParity::Odd,
                                           quasi::GateSpin::Spinless, +1}, vc, k);
            worst = std::max(worst, std::abs(sum_spinless - 2.0));
            const double unpol = quasi::gate_function(
                phi, {quasi::GateParity::Even, quasi::GateSpin::HalfUnpolarized, +1},
                vc, k);
            const double avg =
                0.5 * (quasi::gate_function(phi, {quasi::GateParity::Even,
                                                  quasi::GateSpin::HalfPolarized, +1},
                                            vc, k) +
                       quasi::gate_function(phi, {quasi::GateParity::Even,
                                                  quasi::GateSpin::HalfPolarized, -1},
                                            vc, k));
            worst = std::max(worst, std::abs(avg - unpol));
        }
        rep.checks.push_back({"semifluxon_gate", worst < 1e-12, worst, 1e-12,
                              "sum rule and polarization average"});
    }

    {
        // |f|^2 must be invariant under flux_ratio -> flux_ratio + 1
        VortexConfig shifted(vc.geom(), vc.tube(), vc.flux_ratio() + 1.0, vc.spin());
        const exact::ExactSeries s0(k, vc, pol);
        const exact::ExactSeries s1(k, shifted, pol);
        double worst = 0.0;
        double scale = 0.0;
        for (int i = 0; i < 64; ++i) {
            const double phi = -kPi + 2.0 * kPi * (i + 0.5) / 64.0;
            if (exact::near_peak(phi, vc, k)) continue;
            try {
                const double a = std::norm(s0.amplitude(phi).value);
                const double b = std::norm(s1.amplitude(phi).value);
                worst = std::max(worst, std::abs(a - b));
                scale = std::max(scale, a);
            } catch (const SingularityError&) {
            }
        }
        worst /= std::max(scale, 1e-300);
        rep.checks.push_back({"flux_periodicity", worst < 1e-8, worst, 1e-8,
                              "|f|^2 invariant under nu -> nu + 1"});
    }

    return rep;
}

RunOutput run_scenario(const ScenarioConfig& cfg, int threads)
{
    if (!cfg.sweep) return run_single(cfg, threads);

    RunOutput combined;
    bool first = true;
    for (double v : cfg.sweep->values) {
        const ScenarioConfig point = with_sweep_value(cfg, cfg.sweep->param, v);
        RunOutput one = run_single(point, threads);
        if (first) {
            combined.table.columns = one.table.columns;
            combined.table.has_label = one.table.has_label;
            combined.table.label_name = one.table.label_name;
            first = false;
        }
        for (auto& row : one.table.rows) {
            row.sweep_value = v;
            combined.table.rows.push_back(std::move(row));
        }
        const std::string tag =
            cfg.sweep->param + "=" + fmt12(v) + ":";
        for (auto& c : one.report.checks) {
            c.name = tag + c.name;
            combined.report.checks.push_back(c);
        }
        for (auto& s : one.report.scalars)
            combined.report.scalars.emplace_back(tag + s.first, s.second);
    }
    return combined;
}

std::string emit_csv(const RunOutput& out, const ScenarioConfig& cfg)
{
    std::ostringstream os;
    os << "phi";
    for (const auto& c : out.table.columns) os << "," << c;
    if (out.table.has_label) os << "," << out.table.label_name;
    os << ",source";
    if (cfg.sweep) os << ",sweep_value";
    os << "\n";
    for (const auto& row : out.table.rows) {
        os << fmt12(row.phi);
        for (const auto& v : row.values) {
            os << ",";
            if (v && std::isfinite(*v)) os << fmt12(*v);
        }
        if (out.table.has_label) os << "," << row.label;
        os << "," << row.source;
        if (cfg.sweep) {
            os << ",";
            if (row.sweep_value) os << fmt12(*row.sweep_value);
        }
        os << "\n";
    }
    return os.str();
}

std::string emit_json(const RunOutput& out, const ScenarioConfig& cfg)
{
    using ordered_json = nlohmann::ordered_json;
    ordered_json j;
    j["meta"]["version"] = kVersion;
    j["meta"]["scenario"] = scenario_name(cfg.scenario);
    ordered_json jc;
    jc["eta"] = cfg.eta;
    jc["flux_ratio"] = cfg.flux_ratio;
    jc["spin"] = spin_name(cfg.spin);
    jc["k_rc"] = cfg.k_rc;
    jc["r_c"] = cfg.r_c;
    jc["xi_c"] = cfg.xi_c;
    jc["phi_grid"]["count"] = cfg.phi_grid.count;
    jc["phi_grid"]["lo"] = cfg.phi_grid.lo;
    jc["phi_grid"]["hi"] = cfg.phi_grid.hi;
    jc["phi_grid"]["mask_peaks"] = cfg.phi_grid.mask_peaks;
    if (cfg.sweep) {
        jc["sweep"]["param"] = cfg.sweep->param;
        jc["sweep"]["values"] = cfg.sweep->values;
    }
    jc["tol"] = cfg.tol;
    jc["term_budget"] = cfg.term_budget;
    if (cfg.wavefunction_kr) jc["wavefunction_k_r"] = *cfg.wavefunction_kr;
    j["meta"]["config"] = jc;
    j["meta"]["config_text"] = cfg.canonical_text();

    ordered_json cols = ordered_json::array();
    cols.push_back("phi");
    for (const auto& c : out.table.columns) cols.push_back(c);
    if (out.table.has_label) cols.push_back(out.table.label_name);
    cols.push_back("source");
    if (cfg.sweep) cols.push_back("sweep_value");
    j["columns"] = cols;

    ordered_json rows = ordered_json::array();
    for (const auto& row : out.table.rows) {
        ordered_json r = ordered_json::array();
        r.push_back(row.phi);
        for (const auto& v : row.values) {
            if (v && std::isfinite(*v)) r.push_back(*v);
            else r.push_back(nullptr);
        }
        if (out.table.has_label) r.push_back(row.label);
        r.push_back(row.source);
        if (cfg.sweep) {
            if (row.sweep_value) r.push_back(*row.sweep_value);
            else r.push_back(nullptr);
        }
        rows.push_back(std::move(r));
    }
    j["rows"] = rows;

    ordered_json checks = ordered_json::array();
    for (const auto& c : out.report.checks) {
        ordered_json cj;
        cj["name"] = c.name;
        cj["pass"] = c.pass;
        cj["value"] = c.value;
        cj["threshold"] = c.threshold;
        cj["detail"] = c.detail;
        checks.push_back(std::move(cj));
    }
    j["report"]["checks"] = checks;
    ordered_json scalars;
    for (const auto& [name, v] : out.report.scalars) scalars[name] = v;
    j["report"]["scalars"] = scalars;
    j["report"]["all_pass"] = out.report.all_pass();

    return j.dump(2) + "\n";
}

void emit(const RunOutput& out, const ScenarioConfig& cfg, std::ostream& fallback)
{
    const std::string payload =
        cfg.format == OutputFormat::Csv ? emit_csv(out, cfg) : emit_json(out, cfg);
    if (cfg.out_path == "-") {
        fallback << payload;
        fallback.flush();
        return;
    }
    std::ofstream f(cfg.out_path, std::ios::binary);
    if (!f) throw ConfigError("cannot open output path: " + cfg.out_path);
    f << payload;
}

} // namespace vortexwave::cli
