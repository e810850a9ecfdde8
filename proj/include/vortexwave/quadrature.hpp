#ifndef VORTEXWAVE_QUADRATURE_HPP
#define VORTEXWAVE_QUADRATURE_HPP

#include <functional>
#include <vector>

namespace vortexwave::quad {

/// Adaptive Gauss-Kronrod integration of f over [a, b].
double integrate(const std::function<double(double)>& f, double a, double b,
                 double rel_tol = 1e-10);

/// Same, but the interval is first split at the given interior break
/// points (peak centers, region edges). Breaks outside (a, b) are ignored.
double integrate_with_breaks(const std::function<double(double)>& f, double a,
                             double b, std::vector<double> breaks,
                             double rel_tol = 1e-10);

/// Non-adaptive panel scheme for oscillatory integrands: fixed Gauss-Kronrod
/// applications on uniform panels no wider than half the given wavelength.
/// Adaptive bisection is useless there (whole-period panels integrate to
/// near zero, defeating any relative-error termination).
double integrate_oscillatory(const std::function<double(double)>& f, double a,
                             double b, double wavelength,
                             std::vector<double> breaks = {});

/// Oscillatory panel scheme for integrands with simple (principal-value)
/// poles inside (a, b): around each pole p the symmetrized integrand
/// f(p+t) + f(p-t) is integrated over t in (0, w], which cancels the odd
/// 1/t part pointwise. Pole windows must not overlap.
double integrate_pv(const std::function<double(double)>& f, double a, double b,
                    const std::vector<double>& poles, double halfwidth,
                    double wavelength);

} // namespace vortexwave::quad

#endif
