#include "vortexwave/quasi.hpp"
#include "vortexwave/errors.hpp"
#include "vortexwave/exact.hpp"
#include "vortexwave/quadrature.hpp"

#include <cmath>
#include <numbers>

namespace vortexwave::quasi {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;
const std::complex<double> kI{0.0, 1.0};
const std::complex<double> kInvSqrtI = std::polar(1.0, -kPi / 4.0);

// sin(a*psi)/sin(psi/2) with the removable point psi = 0 -> 2a
double kernel_ratio(double a, double psi)
{
    if (psi == 0.0) return 2.0 * a;
    return std::sin(a * psi) / std::sin(0.5 * psi);
}

// delta kernel without the open-interval domain check, for channel
// evaluation at wrapped offsets (|psi| <= pi, the endpoint included)
double delta_value(double x, double psi)
{
    if (psi == 0.0) return x / kPi;
    const double s = std::sin(x * psi) / std::sin(0.5 * psi);
    return s * s / (4.0 * kPi * x);
}

std::complex<double> tube_phase(const WaveState& k, const VortexConfig& cfg)
{
    return std::polar(1.0, 2.0 * k.k() * (cfg.tube().r_c() - cfg.tube().xi_c()));
}

void require_quasiclassical_regime(const VortexConfig& cfg)
{
    if (cfg.geom().eta() >= 0.5)
        throw UnsupportedRegimeError("quasiclassical formulas require eta < 1/2");
}

} // namespace

double delta_reg(double x, double phi)
{
    if (!(x > 0.0)) throw DomainError("delta_reg sharpness x must be positive");
    if (!(phi > -kPi && phi < kPi))
        throw RangeError("delta_reg defined on (-pi, pi)");
    if (phi == 0.0) return x / kPi;
    const double s = std::sin(x * phi) / std::sin(0.5 * phi);
    return s * s / (4.0 * kPi * x);
}

std::complex<double> f_peak(const WaveState& k, double phi, PeakBranch branch,
                            const VortexConfig& cfg)
{
    const double eta = cfg.geom().eta();
    const double phi_eta = cfg.geom().phi_eta();
    const double x = k.k() * cfg.tube().r_c();
    const double nu = cfg.effective_flux();
    const double nu_floor = std::floor(nu);
    const std::complex<double> norm =
        -tube_phase(k, cfg) * kInvSqrtI / std::sqrt(kTwoPi * k.k());

    switch (branch) {
    case PeakBranch::PlusPeak:
    case PeakBranch::MinusPeak: {
        require_quasiclassical_regime(cfg);
        const double sign = branch == PeakBranch::PlusPeak ? +1.0 : -1.0;
        const double psi = wrap_pi(phi + sign * phi_eta);
        const double a = 0.5 * x * (1.0 - eta);
        const double nu_tilde = nu * (kPi - phi_eta);
        const std::complex<double> phase =
            std::polar(1.0, sign * nu_tilde + (nu_floor + 0.5 + sign * a) * psi);
        return norm * kernel_ratio(a, psi) * phase;
    }
    case PeakBranch::EuclidTube: {
        if (!cfg.geom().euclidean())
            throw PreconditionError("EuclidTube peak form requires eta = 0");
        const double psi = wrap_pi(phi);
        return norm * kernel_ratio(std::floor(x) + 0.5, psi);
    }
    case PeakBranch::EuclidVortex: {
        if (!cfg.geom().euclidean())
            throw PreconditionError("EuclidVortex peak form requires eta = 0");
        const double psi = wrap_pi(phi);
        const double a = 0.5 * x;
        return 2.0 * norm * kernel_ratio(a, psi) * std::cos(a * psi + nu * kPi) *
               std::polar(1.0, (nu_floor + 0.5) * psi);
    }
    }
    throw InvariantViolation("unreachable peak branch");
}

std::complex<double> f_qclass(const WaveState& k, double phi, const VortexConfig& cfg)
{
    require_quasiclassical_regime(cfg);
    const double eta = cfg.geom().eta();
    const double nu = cfg.effective_flux();
    const double x = k.k() * cfg.tube().r_c();
    const exact::ImageWindow window = exact::image_window(phi, cfg.geom());
    if (window.count() == 0) return {0.0, 0.0}; // classical shadow

    std::complex<double> sum{0.0, 0.0};
    for (long l = window.lo; l <= window.hi; ++l) {
        const double a = phi - kPi + kTwoPi * static_cast<double>(l);
        double c = std::cos(0.5 * (1.0 - eta) * a);
        if (c < 0.0) {
            if (c < -1e-12)
                throw InvariantViolation("negative radicand in the reflection sum");
            c = 0.0;
        }
        sum += std::sqrt(c) * std::polar(1.0, nu * a - 2.0 * x * c);
    }
    return -tube_phase(k, cfg) * (1.0 - eta) *
           std::sqrt(0.5 * cfg.tube().r_c()) * sum;
}

double dsigma_analytic(double phi, DsigmaChannel channel, const VortexConfig& cfg,
                       const WaveState& k)
{
    require_quasiclassical_regime(cfg);
    const double eta = cfg.geom().eta();
    const double r_c = cfg.tube().r_c();
    const double phi_eta = cfg.geom().phi_eta();
    const double omega = cfg.geom().omega_eta();
    const double x = k.k() * r_c;
    const double nu = cfg.effective_flux();

    switch (channel) {
    case DsigmaChannel::QClassOutside: {
        const double w = wrap_pi(phi);
        if (std::abs(w) < omega) {
            if (eta < 0.0) return 0.0; // shadow
            throw RangeError("use QClassDoubleImage inside the double-image band");
        }
        const double q = wrap_2pi(phi);
        return 0.5 * r_c * (1.0 - eta) * (1.0 - eta) *
               std::sin(0.5 * (1.0 - eta) * q + 0.5 * eta * kPi);
    }
    case DsigmaChannel::QClassDoubleImage: {
        if (!(eta > 0.0))
            throw RangeError("double-image band exists for 0 < eta < 1/2 only");
        const double w = wrap_pi(phi);
        if (!(w > phi_eta && w < -phi_eta))
            throw RangeError("phi outside the double-image band");
        const double se = std::sin(0.5 * eta * kPi);
        const double sf = std::sin(0.5 * (1.0 - eta) * w);
        const double rad = std::max(0.0, se * se - sf * sf);
        return r_c * (1.0 - eta) * (1.0 - eta) *
               (std::cos(0.5 * (1.0 - eta) * w) * se +
                std::sqrt(rad) *
                    std::cos(2.0 * nu * kPi +
                             4.0 * x * sf * std::cos(0.5 * eta * kPi)));
    }
    case DsigmaChannel::PeakPlus:
        return r_c * (1.0 - eta) *
               delta_value(0.5 * x * (1.0 - eta), wrap_pi(phi + phi_eta));
    case DsigmaChannel::PeakMinus:
        return r_c * (1.0 - eta) *
               delta_value(0.5 * x * (1.0 - eta), wrap_pi(phi - phi_eta));
    case DsigmaChannel::EuclidPeakFlux: {
        if (!cfg.geom().euclidean())
            throw RangeError("EuclidPeakFlux requires eta = 0");
        const double w = wrap_pi(phi);
        const double c2 = std::cos(2.0 * nu * kPi);
        const double s2 = std::sin(2.0 * nu * kPi);
        return 2.0 * r_c *
               (c2 * delta_value(x, w) +
                (1.0 - c2 - s2 * std::sin(x * w)) * delta_value(0.5 * x, w));
    }
    case DsigmaChannel::ForwardWindow: {
        if (!(eta > 0.0))
            throw RangeError("forward window form requires 0 < eta < 1/2");
        if (std::sin(0.5 / x) >= 0.1 * std::sin(0.5 * eta * kPi))
            throw RangeError("forward window requires sin(1/(2 k r_c)) << sin(eta pi/2)");
        const double w = wrap_pi(phi);
        if (!(std::abs((1.0 - eta) * w) < 1.0 / x))
            throw RangeError("phi outside the forward window |(1-eta) phi| < 1/(k r_c)");
        const double c = std::cos(nu * kPi +
                                  x * (1.0 - eta) * w * std::cos(0.5 * eta * kPi));
        return 2.0 * r_c * (1.0 - eta) * (1.0 - eta) * std::sin(0.5 * eta * kPi) * c * c;
    }
    }
    throw InvariantViolation("unreachable dsigma channel");
}

double sigma_integrated(SigmaChannel channel, const VortexConfig& cfg)
{
    require_quasiclassical_regime(cfg);
    const double s = cfg.tube().r_c() * (1.0 - cfg.geom().eta());
    switch (channel) {
    case SigmaChannel::PeakPlus:
    case SigmaChannel::PeakMinus:
        return s;
    case SigmaChannel::Peak:
    case SigmaChannel::QClass:
        return 2.0 * s;
    case SigmaChannel::Total:
        return 4.0 * s;
    }
    throw InvariantViolation("unreachable sigma channel");
}

double optical_residual(const WaveState& k, const VortexConfig& cfg, OpticalMode mode)
{
    require_quasiclassical_regime(cfg);
    const double eta = cfg.geom().eta();
    const double x = k.k() * cfg.tube().r_c();
    const double nu = cfg.effective_flux();
    const double phi_eta = cfg.geom().phi_eta();
    const std::complex<double> unwind = std::conj(tube_phase(k, cfg));
    const double root = std::sqrt(kTwoPi / k.k());

    double lhs = 0.0;
    switch (mode) {
    case OpticalMode::Euclid: {
        if (!cfg.geom().euclidean())
            throw PreconditionError("Euclid optical theorem requires eta = 0");
        const std::complex<double> fp = f_peak(k, 0.0, PeakBranch::EuclidVortex, cfg);
        lhs = 2.0 * std::cos(nu * kPi) * root * std::imag(kInvSqrtI * unwind * fp) +
              std::sin(nu * kPi) * std::sin(nu * kPi) * (4.0 * kPi / k.k()) *
                  delta_reg(x, 0.0);
        break;
    }
    case OpticalMode::Cone: {
        const double nu_tilde = nu * (kPi - phi_eta);
        const std::complex<double> f_plus_c =
            f_peak(k, -phi_eta, PeakBranch::PlusPeak, cfg);
        const std::complex<double> f_minus_c =
            f_peak(k, +phi_eta, PeakBranch::MinusPeak, cfg);
        lhs = std::cos(nu_tilde) * root *
                  std::imag(kInvSqrtI * unwind * (f_plus_c + f_minus_c)) -
              std::sin(nu_tilde) * root *
                  std::real(kInvSqrtI * unwind * (f_plus_c - f_minus_c)) +
              (kTwoPi / k.k()) * delta_reg(x * (1.0 - eta), 0.0);
        break;
    }
    }

    auto integrand = [&](double phi) {
        return std::norm(compose_quasiclassical(k, phi, cfg).total);
    };
    const double wavelength = kPi / (x * std::max(1.0, 1.0 - eta) + 5.0);
    const double sigma = quad::integrate_oscillatory(
        integrand, -kPi, kPi, wavelength, {-phi_eta, 0.0, phi_eta});

    return std::abs(lhs - sigma) / sigma;
}

double gate_function(double phi, const GateSpec& gate, const VortexConfig& cfg,
                     const WaveState& k)
{
    require_quasiclassical_regime(cfg);
    const double eta = cfg.geom().eta();
    const double x = k.k() * cfg.tube().r_c();
    if (!(std::abs((1.0 - eta) * phi) < 1.0 / x))
        throw RangeError("gate functions defined on (1-eta)|phi| < 1/(k r_c)");

    const double sign = gate.parity == GateParity::Even ? +1.0 : -1.0;
    const double arg = 2.0 * x * (1.0 - eta) * phi * std::cos(0.5 * eta * kPi);
    switch (gate.spin) {
    case GateSpin::Spinless:
        return 1.0 + sign * std::cos(arg);
    case GateSpin::HalfUnpolarized:
        return 1.0 + sign * std::cos(arg) * std::cos(eta * kPi);
    case GateSpin::HalfPolarized: {
        if (gate.sigma != 1 && gate.sigma != -1)
            throw DomainError("polarization sigma must be +1 or -1");
        return 1.0 + sign * std::cos(arg) * std::cos(eta * kPi) +
               sign * gate.sigma * std::sin(arg) * std::sin(eta * kPi);
    }
    }
    throw InvariantViolation("unreachable gate spin");
}

QuasiDecomposition compose_quasiclassical(const WaveState& k, double phi,
                                          const VortexConfig& cfg)
{
    require_quasiclassical_regime(cfg);
    QuasiDecomposition d;
    d.f_peak_plus = f_peak(k, phi, PeakBranch::PlusPeak, cfg);
    d.f_peak_minus = f_peak(k, phi, PeakBranch::MinusPeak, cfg);
    d.f_qclass = f_qclass(k, phi, cfg);
    d.total = d.f_peak_plus + d.f_peak_minus + d.f_qclass;
    const double x = k.k() * cfg.tube().r_c();
    d.remainder_bound = std::sqrt(cfg.tube().r_c()) * std::pow(x, -1.0 / 6.0);
    return d;
}

} // namespace vortexwave::quasi
