#ifndef VORTEXWAVE_QUASI_HPP
#define VORTEXWAVE_QUASI_HPP

#include "vortexwave/vortex.hpp"

#include <complex>

namespace vortexwave::quasi {

/// Regularized angular delta function, sin^2(x phi) / (4 pi x sin^2(phi/2))
/// on (-pi, pi); the removable singularity at phi = 0 evaluates to x/pi.
double delta_reg(double x, double phi);

enum class PeakBranch { PlusPeak, MinusPeak, EuclidTube, EuclidVortex };

/// Fraunhofer peak amplitudes. PlusPeak/MinusPeak are the conical-vortex
/// peaks centered at phi = -phi_eta and +phi_eta; EuclidTube and
/// EuclidVortex are the flat-space forms (eta = 0 required). phi is the
/// physical scattering angle; the offset from the peak center is reduced
/// to [-pi, pi). The global tube phase e^{2ik(r_c-xi_c)} is included in
/// every branch.
std::complex<double> f_peak(const WaveState& k, double phi, PeakBranch branch,
                            const VortexConfig& cfg);

/// Quasiclassical (geometric-reflection) amplitude, summed over the
/// winding images; zero in the classical shadow.
std::complex<double> f_qclass(const WaveState& k, double phi, const VortexConfig& cfg);

enum class DsigmaChannel {
    QClassOutside,     // classical reflection form outside the central band
    QClassDoubleImage, // flux-sensitive two-image interference form
    PeakPlus,
    PeakMinus,
    EuclidPeakFlux,    // flat-space flux-dependent peak profile
    ForwardWindow      // forward expansion inside |(1-eta) phi| < 1/(k r_c)
};

/// Printed closed-form differential cross sections per channel.
double dsigma_analytic(double phi, DsigmaChannel channel, const VortexConfig& cfg,
                       const WaveState& k);

enum class SigmaChannel { PeakPlus, PeakMinus, Peak, QClass, Total };

/// Closed-form integrated cross sections; Total = 2x the classical total.
double sigma_integrated(SigmaChannel channel, const VortexConfig& cfg);

enum class OpticalMode { Euclid, Cone };

/// Relative residual of the quasiclassical optical theorem: peak-direction
/// combination plus the regularized-delta term against the quadrature of
/// the composed |f|^2 over the full circle.
double optical_residual(const WaveState& k, const VortexConfig& cfg, OpticalMode mode);

enum class GateParity { Even, Odd };
enum class GateSpin { Spinless, HalfUnpolarized, HalfPolarized };

/// Semifluxon gate selector: parity of n in Phi = n Phi_0/2 picks the sign,
/// spin picks among the spinless/unpolarized/polarized forms.
struct GateSpec {
    GateParity parity = GateParity::Even;
    GateSpin spin = GateSpin::Spinless;
    int sigma = +1; // polarization state, HalfPolarized only
};

/// Flux-gate function F(phi, +/-) on the forward window (1-eta)|phi| < 1/(k r_c).
double gate_function(double phi, const GateSpec& gate, const VortexConfig& cfg,
                     const WaveState& k);

struct QuasiDecomposition {
    std::complex<double> f_peak_plus;
    std::complex<double> f_peak_minus;
    std::complex<double> f_qclass;
    std::complex<double> total;
    double remainder_bound; // sqrt(r_c) (k r_c)^{-1/6}, constant unknown
};

/// Peak + reflection decomposition of the quasiclassical amplitude.
QuasiDecomposition compose_quasiclassical(const WaveState& k, double phi,
                                          const VortexConfig& cfg);

} // namespace vortexwave::quasi

#endif
