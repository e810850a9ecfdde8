#include "vortexwave/specfun.hpp"
#include "vortexwave/errors.hpp"

#include <boost/math/special_functions/bessel.hpp>

#include <cmath>
#include <limits>
#include <string>

namespace vortexwave::specfun {

namespace {

void check_order(double nu)
{
    if (!std::isfinite(nu) || nu < 0.0)
        throw DomainError("Bessel order must be finite and >= 0, got " +
                          std::to_string(nu));
}

void check_arg_positive(double x)
{
    if (!std::isfinite(x) || x <= 0.0)
        throw DomainError("argument must be finite and > 0, got " + std::to_string(x));
}

// Exponent of the Debye large-order decay, nu*(alpha - tanh(alpha)) with
// cosh(alpha) = nu/x. J ~ e^-E, |Y| ~ e^+E up to algebraic factors.
double debye_exponent(double nu, double x)
{
    const double w = nu / x;
    const double s = std::sqrt((w - 1.0) * (w + 1.0));
    return nu * (std::log(w + s) - s / w);
}

// J_nu/Y_nu by the Debye expansions, usable for nu substantially above x.
// Only called where the ratio is far below 1e-250, so two correction terms
// are plenty.
double jy_ratio_debye(double nu, double x)
{
    const double w = nu / x;
    const double s = std::sqrt((w - 1.0) * (w + 1.0));
    const double p = w / s; // coth(alpha)
    const double p2 = p * p;
    const double u1 = p * (3.0 - 5.0 * p2) / 24.0;
    const double u2 = p2 * (81.0 + p2 * (-462.0 + 385.0 * p2)) / 1152.0;
    const double sj = 1.0 + u1 / nu + u2 / (nu * nu);
    const double sy = 1.0 - u1 / nu + u2 / (nu * nu);
    const double e = debye_exponent(nu, x);
    // exp underflows to 0 when 2E > ~709; the true ratio is then far below
    // the double range and 0 is the correct rounded value.
    return -0.5 * std::exp(-2.0 * e) * sj / sy;
}

} // namespace

double bessel_j(double nu, double x)
{
    check_order(nu);
    if (!std::isfinite(x) || x < 0.0)
        throw DomainError("bessel_j argument must be finite and >= 0");
    if (x == 0.0) return nu == 0.0 ? 1.0 : 0.0;
    return boost::math::cyl_bessel_j(nu, x);
}

double bessel_y(double nu, double x)
{
    check_order(nu);
    check_arg_positive(x);
    try {
        const double y = boost::math::cyl_neumann(nu, x);
        // deep large-order regime: |Y| exceeds the double range and the
        // backend can hand back NaN instead of signalling overflow
        if (std::isnan(y) && nu > x)
            return -std::numeric_limits<double>::infinity();
        return y;
    } catch (const std::overflow_error&) {
        return -std::numeric_limits<double>::infinity();
    }
}

std::complex<double> hankel1(double nu, double x)
{
    return {bessel_j(nu, x), bessel_y(nu, x)};
}

std::complex<double> jh_ratio(double nu, double x)
{
    check_order(nu);
    check_arg_positive(x);

    // Direct evaluation is safe while |Y| stays well inside the double
    // range; past that the ratio itself is below ~1e-250.
    if (nu <= 1.05 * x || debye_exponent(nu, x) < 600.0) {
        const double j = bessel_j(nu, x);
        const double y = bessel_y(nu, x);
        return std::complex<double>(j, 0.0) / std::complex<double>(j, y);
    }

    const double t = jy_ratio_debye(nu, x); // J/Y, tiny and negative
    // J/(J + iY) = t/(t + i) = (t^2 - i t)/(1 + t^2) with t^2 negligible
    return {t * t, -t};
}

} // namespace vortexwave::specfun
