#ifndef VORTEXWAVE_SPECFUN_HPP
#define VORTEXWAVE_SPECFUN_HPP

#include <complex>

namespace vortexwave::specfun {

/// Bessel function J_nu(x) for real order nu >= 0, x >= 0.
/// Relative accuracy ~1e-14 away from zeros for nu, x up to 1e4.
double bessel_j(double nu, double x);

/// Bessel function of the second kind Y_nu(x), nu >= 0, x > 0.
/// Returns -inf when the true value is below the double range
/// (deep large-order regime |Y| > ~1e308).
double bessel_y(double nu, double x);

/// First-kind Hankel function H1_nu(x) = J_nu(x) + i Y_nu(x).
/// Never underflows to zero for x > 0.
std::complex<double> hankel1(double nu, double x);

/// The quotient J_nu(x) / H1_nu(x) that enters every amplitude series.
/// Computed without overflow or NaN even deep in nu >> x where J underflows
/// and |Y| overflows; |ratio| <= 1 and decays monotonically in nu past x.
std::complex<double> jh_ratio(double nu, double x);

} // namespace vortexwave::specfun

#endif
