#ifndef VORTEXWAVE_TESTS_BESSEL_ORACLE_HPP
#define VORTEXWAVE_TESTS_BESSEL_ORACLE_HPP

#include <complex>

namespace vwtest {

struct OracleJY {
    double j;
    double y;
};

// Slow arbitrary-precision Bessel oracle: J by its power series, Y by the
// connection formula (non-integer order) or the digamma series (integer
// order). Working precision grows with x to absorb the alternating-series
// cancellation, so results are correctly rounded doubles for the tested
// ranges. Test-tree only; independent of the fast kernel.
class BesselOracle {
public:
    explicit BesselOracle(unsigned base_digits = 60) : base_digits_(base_digits) {}

    double j(double nu, double x) const;
    double y(double nu, double x) const;
    OracleJY jy(double nu, double x) const { return {j(nu, x), y(nu, x)}; }

    // J_nu(x) / H1_nu(x) computed in extended precision, rounded to double.
    std::complex<double> jh_ratio(double nu, double x) const;

private:
    unsigned base_digits_;
};

} // namespace vwtest

#endif
