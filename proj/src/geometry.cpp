#include "vortexwave/geometry.hpp"
#include "vortexwave/errors.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace vortexwave {

namespace {
constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;
}

double wrap_pi(double phi)
{
    double w = std::remainder(phi, kTwoPi);
    if (w >= kPi) w -= kTwoPi; // remainder returns [-pi, pi]; fold the top edge
    return w;
}

double wrap_2pi(double phi)
{
    double w = std::fmod(phi, kTwoPi);
    if (w < 0.0) w += kTwoPi;
    return w;
}

ConeGeometry::ConeGeometry(double eta) : eta_(eta)
{
    if (!std::isfinite(eta)) throw DomainError("eta must be finite");
    if (eta >= 1.0)
        throw DomainError("eta must be < 1, got " + std::to_string(eta));
    phi_eta_ = -eta * kPi / (1.0 - eta);
    omega_eta_ = std::abs(phi_eta_);
}

TubeSpec::TubeSpec(double r_c) : TubeSpec(r_c, r_c) {}

TubeSpec::TubeSpec(double r_c, double xi_c) : r_c_(r_c), xi_c_(xi_c)
{
    if (!(r_c > 0.0) || !std::isfinite(r_c))
        throw DomainError("tube radius r_c must be positive");
    if (!(xi_c > 0.0) || !std::isfinite(xi_c))
        throw DomainError("geodesic radius xi_c must be positive");
}

RegionLabel classify_angle(double phi, const ConeGeometry& geom)
{
    const double w = wrap_pi(phi);
    const double eta = geom.eta();
    if (std::abs(w) < geom.omega_eta()) {
        if (eta < 0.0) return RegionLabel::Shadow;
        if (eta > 0.0 && eta < 0.5) return RegionLabel::DoubleImage;
        if (eta >= 0.5)
            throw UnsupportedRegimeError(
                "no classical formulas for eta >= 1/2 inside |phi| < omega_eta");
    }
    return RegionLabel::Regular;
}

ClassicalKinematics classical_kinematics(double phi, const ConeGeometry& geom,
                                         const TubeSpec& tube)
{
    const double eta = geom.eta();
    if (eta >= 0.5)
        throw UnsupportedRegimeError("classical scattering requires eta < 1/2");
    if (!(phi > geom.phi_eta() && phi < kPi))
        throw RangeError("phi outside classical scattering range (phi_eta, pi)");
    const double chi = 0.5 * (1.0 - eta) * (kPi - phi);
    return {chi, tube.r_c() * (1.0 - eta) * std::sin(chi)};
}

double impact_parameter(double phi, const ConeGeometry& geom, const TubeSpec& tube)
{
    return classical_kinematics(phi, geom, tube).rho;
}

namespace {

// d(sigma)/d(phi) = (r_c/2)(1-eta)^2 sin[(1-eta)phi/2 + eta*pi/2], the common
// closed form of the upper and lower half-space branches.
double branch_value(double phi, double eta, double r_c)
{
    return 0.5 * r_c * (1.0 - eta) * (1.0 - eta) *
           std::sin(0.5 * (1.0 - eta) * phi + 0.5 * eta * kPi);
}

} // namespace

ClassicalDifferential dsigma_classical(double phi, const ConeGeometry& geom,
                                       const TubeSpec& tube, HalfSpace mode)
{
    const double eta = geom.eta();
    if (eta >= 0.5)
        throw UnsupportedRegimeError("classical cross sections require eta < 1/2");
    const double r_c = tube.r_c();
    const double phe = geom.phi_eta();

    switch (mode) {
    case HalfSpace::UpperHalf: {
        if (eta < 0.0 && phi > -phe && phi < phe)
            return {0.0, RegionLabel::Shadow};
        if (!(phi > phe && phi < kPi))
            throw RangeError("UpperHalf requires phi in (phi_eta, pi)");
        return {branch_value(phi, eta, r_c), classify_angle(phi, geom)};
    }
    case HalfSpace::LowerHalf: {
        if (eta < 0.0 && phi > kTwoPi - phe && phi < kTwoPi + phe)
            return {0.0, RegionLabel::Shadow};
        if (!(phi > kPi && phi < kTwoPi - phe))
            throw RangeError("LowerHalf requires phi in (pi, 2pi-phi_eta)");
        return {branch_value(phi, eta, r_c), classify_angle(phi, geom)};
    }
    case HalfSpace::Combined: {
        if (eta < 0.0) {
            // no double image; inside the shadow band everything vanishes
            if (std::abs(wrap_pi(phi)) < geom.omega_eta())
                return {0.0, RegionLabel::Shadow};
            throw RangeError("Combined requires the double-image region (0 < eta < 1/2)");
        }
        if (!(eta > 0.0))
            throw RangeError("Combined requires 0 < eta < 1/2");
        if (!(phi > phe && phi < -phe))
            throw RangeError("Combined requires phi in (phi_eta, -phi_eta)");
        const double v = r_c * (1.0 - eta) * (1.0 - eta) *
                         std::cos(0.5 * (1.0 - eta) * phi) * std::sin(0.5 * eta * kPi);
        return {v, RegionLabel::DoubleImage};
    }
    }
    throw InvariantViolation("unreachable half-space mode");
}

ClassicalTotals sigma_classical_totals(const ConeGeometry& geom, const TubeSpec& tube)
{
    const double eta = geom.eta();
    if (eta >= 0.5)
        throw UnsupportedRegimeError("classical totals require eta < 1/2");
    const double r_c = tube.r_c();
    ClassicalTotals totals;
    totals.sigma_total = 2.0 * r_c * (1.0 - eta);
    if (eta > 0.0) {
        totals.sigma_out = 2.0 * r_c * (1.0 - eta) * std::cos(eta * kPi);
        totals.sigma_in = r_c * (1.0 - eta) * (1.0 - std::cos(eta * kPi));
    }
    return totals;
}

} // namespace vortexwave
