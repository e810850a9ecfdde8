#include "bessel_oracle.hpp"

#include <boost/multiprecision/mpfr.hpp>

#include <cmath>
#include <stdexcept>

namespace vwtest {

namespace {

using big = boost::multiprecision::mpfr_float;

struct PrecisionGuard {
    explicit PrecisionGuard(unsigned digits) : saved(big::default_precision())
    {
        big::default_precision(digits);
    }
    ~PrecisionGuard() { big::default_precision(saved); }
    unsigned saved;
};

unsigned working_digits(unsigned base, double nu, double x)
{
    // alternating-series cancellation costs ~0.44*x digits; near-integer
    // orders cost extra digits in the connection formula
    double cancel = 0.45 * x + 0.1 * std::abs(nu);
    double nearest = std::abs(nu - std::round(nu));
    double near_int = (nearest > 0.0 && nearest < 1e-3) ? -std::log10(nearest) : 0.0;
    return base + static_cast<unsigned>(cancel + near_int) + 20;
}

big const_pi() { return boost::math::constants::pi<big>(); }

big euler_gamma()
{
    big g;
    mpfr_const_euler(g.backend().data(), MPFR_RNDN);
    return g;
}

big series_eps()
{
    return pow(big(10), -static_cast<int>(big::default_precision()));
}

// Power series for J_nu, valid for any real order that is not a negative
// integer. mpfr's exponent range makes over/underflow a non-issue here.
big j_series(const big& nu, const big& x)
{
    const big x2 = x / 2;
    const big q = x2 * x2;
    const big eps = series_eps();
    big term = pow(x2, nu) / tgamma(nu + 1);
    big sum = term;
    big peak = abs(term);
    for (int k = 1; k < 100000; ++k) {
        term *= -q / (k * (nu + k));
        sum += term;
        peak = max(peak, abs(term));
        if (abs(term) < peak * eps && big(k) > x2) break;
    }
    return sum;
}

// Y_n for integer n >= 0 via the digamma (harmonic-number) series.
big y_integer(long n, const big& x)
{
    const big x2 = x / 2;
    const big q = x2 * x2;
    const big pi = const_pi();
    const big gamma_e = euler_gamma();
    const big eps = series_eps();

    big finite_sum = 0;
    if (n > 0) {
        big qk = 1;
        big kfact = 1;
        for (long k = 0; k < n; ++k) {
            if (k > 0) kfact *= k;
            finite_sum += tgamma(big(n - k)) / kfact * qk;
            qk *= q;
        }
        finite_sum *= pow(x2, -n) / pi;
    }

    const big jn = j_series(big(n), x);

    // sum_{k>=0} [psi(k+1)+psi(n+k+1)] (-q)^k / (k! (n+k)!), with the
    // digammas built up from harmonic numbers
    big h_k = 0;
    big h_nk = 0;
    for (long m = 1; m <= n; ++m) h_nk += big(1) / m;
    big coef = 1 / tgamma(big(n + 1));
    big series = coef * (h_k + h_nk - 2 * gamma_e);
    big peak = abs(series);
    big powq = 1;
    for (long k = 1; k < 100000; ++k) {
        powq *= -q;
        coef /= big(k) * big(n + k);
        h_k += big(1) / k;
        h_nk += big(1) / (n + k);
        big term = coef * (h_k + h_nk - 2 * gamma_e) * powq;
        series += term;
        peak = max(peak, abs(term));
        if (abs(term) < peak * eps && big(k) > x2) break;
    }
    series *= pow(x2, n) / pi;

    return -finite_sum + 2 / pi * log(x2) * jn - series;
}

big y_any(double nu_d, const big& x)
{
    const double nearest = std::round(nu_d);
    if (nu_d == nearest)
        return y_integer(static_cast<long>(nearest), x);
    const big nu(nu_d);
    const big pi = const_pi();
    const big jp = j_series(nu, x);
    const big jm = j_series(-nu, x);
    return (jp * cos(nu * pi) - jm) / sin(nu * pi);
}

} // namespace

double BesselOracle::j(double nu, double x) const
{
    if (x == 0.0) return nu == 0.0 ? 1.0 : 0.0;
    PrecisionGuard guard(working_digits(base_digits_, nu, x));
    return j_series(big(nu), big(x)).convert_to<double>();
}

double BesselOracle::y(double nu, double x) const
{
    if (!(x > 0.0)) throw std::domain_error("oracle: Y requires x > 0");
    PrecisionGuard guard(working_digits(base_digits_, nu, x));
    return y_any(nu, big(x)).convert_to<double>();
}

std::complex<double> BesselOracle::jh_ratio(double nu, double x) const
{
    if (!(x > 0.0)) throw std::domain_error("oracle: ratio requires x > 0");
    PrecisionGuard guard(working_digits(base_digits_, nu, x));
    const big bx(x);
    const big jv = j_series(big(nu), bx);
    const big yv = y_any(nu, bx);
    const big denom = jv * jv + yv * yv;
    return {(jv * jv / denom).convert_to<double>(),
            (-jv * yv / denom).convert_to<double>()};
}

} // namespace vwtest
