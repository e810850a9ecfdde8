#include "vortexwave/quadrature.hpp"
#include "vortexwave/errors.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <algorithm>
#include <cmath>

namespace vortexwave::quad {

namespace {
using GK = boost::math::quadrature::gauss_kronrod<double, 15>;
constexpr unsigned kAdaptiveDepth = 12;
}

double integrate(const std::function<double(double)>& f, double a, double b,
                 double rel_tol)
{
    if (!(b > a)) {
        if (a == b) return 0.0;
        throw DomainError("integration bounds must satisfy a <= b");
    }
    return GK::integrate(f, a, b, kAdaptiveDepth, rel_tol);
}

double integrate_with_breaks(const std::function<double(double)>& f, double a,
                             double b, std::vector<double> breaks, double rel_tol)
{
    breaks.erase(std::remove_if(breaks.begin(), breaks.end(),
                                [&](double p) { return !(p > a && p < b); }),
                 breaks.end());
    breaks.push_back(a);
    breaks.push_back(b);
    std::sort(breaks.begin(), breaks.end());
    double total = 0.0;
    for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
        if (breaks[i + 1] - breaks[i] < 1e-14) continue;
        total += integrate(f, breaks[i], breaks[i + 1], rel_tol);
    }
    return total;
}

double integrate_oscillatory(const std::function<double(double)>& f, double a,
                             double b, double wavelength,
                             std::vector<double> breaks)
{
    if (!(b > a)) {
        if (a == b) return 0.0;
        throw DomainError("integration bounds must satisfy a <= b");
    }
    if (!(wavelength > 0.0))
        throw DomainError("oscillation wavelength must be positive");

    breaks.erase(std::remove_if(breaks.begin(), breaks.end(),
                                [&](double p) { return !(p > a && p < b); }),
                 breaks.end());
    breaks.push_back(a);
    breaks.push_back(b);
    std::sort(breaks.begin(), breaks.end());

    const double panel = 0.5 * wavelength;
    double total = 0.0;
    for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
        const double lo = breaks[i];
        const double hi = breaks[i + 1];
        if (hi - lo < 1e-14) continue;
        const long n = std::max<long>(1, static_cast<long>(std::ceil((hi - lo) / panel)));
        for (long j = 0; j < n; ++j) {
            const double x0 = lo + (hi - lo) * static_cast<double>(j) / n;
            const double x1 = lo + (hi - lo) * static_cast<double>(j + 1) / n;
            total += GK::integrate(f, x0, x1, 0); // single fixed application
        }
    }
    return total;
}

double integrate_pv(const std::function<double(double)>& f, double a, double b,
                    const std::vector<double>& poles, double halfwidth,
                    double wavelength)
{
    std::vector<double> inside;
    for (double p : poles)
        if (p > a && p < b) inside.push_back(p);
    std::sort(inside.begin(), inside.end());
    for (std::size_t i = 0; i + 1 < inside.size(); ++i)
        if (inside[i + 1] - inside[i] < 2.0 * halfwidth)
            throw DomainError("pole windows overlap; reduce halfwidth");
    for (double p : inside)
        if (p - halfwidth < a || p + halfwidth > b)
            throw DomainError("pole window sticks out of the integration range");

    double total = 0.0;
    double cursor = a;
    for (double p : inside) {
        total += integrate_oscillatory(f, cursor, p - halfwidth, wavelength);
        // symmetrized pair kills the odd 1/t singularity pointwise
        auto sym = [&](double t) { return f(p + t) + f(p - t); };
        total += integrate_oscillatory(sym, 0.0, halfwidth, wavelength);
        cursor = p + halfwidth;
    }
    total += integrate_oscillatory(f, cursor, b, wavelength);
    return total;
}

} // namespace vortexwave::quad
