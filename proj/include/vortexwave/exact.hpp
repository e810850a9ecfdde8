#ifndef VORTEXWAVE_EXACT_HPP
#define VORTEXWAVE_EXACT_HPP

#include "vortexwave/vortex.hpp"

#include <array>
#include <complex>
#include <vector>

namespace vortexwave::exact {

/// Controls for the partial-wave summation.
struct TruncationPolicy {
    /// relative tail tolerance for the coefficient series
    double tol = 1e-10;
    /// explicit term cap; 0 picks 4*k*r_c/(1-eta) + 200
    long max_terms = 0;
    /// add the closed-form zero-radius (sine) part of the amplitude
    bool include_zero_radius = true;
};

struct AmplitudeResult {
    std::complex<double> value;
    double truncation_error;
    long terms_used;
    bool near_peak;
};

/// Winding images of the incident direction contributing at angle phi:
/// integers l with -(phi-phi_eta)/2pi < l < -(phi+phi_eta)/2pi + 1.
struct ImageWindow {
    long lo;
    long hi; // inclusive; lo > hi means empty (shadow)
    int count() const { return hi < lo ? 0 : static_cast<int>(hi - lo + 1); }
};
ImageWindow image_window(double phi, const ConeGeometry& geom);

/// true when phi lies within 2/(k r_c (1-eta)) of a diffraction peak
/// direction -/+phi_eta, where the r^{-1/2} expansion is unreliable
bool near_peak(double phi, const VortexConfig& cfg, const WaveState& k);

/// Partial-wave scattering amplitude with the ratio-part coefficients
/// precomputed once per (k, cfg); per-angle evaluation is then O(terms)
/// with the deterministic summation order n = 0, +1, -1, +2, -2, ...
class ExactSeries {
public:
    ExactSeries(const WaveState& k, const VortexConfig& cfg,
                TruncationPolicy policy = {});

    /// full amplitude: closed-form zero-radius part (unless disabled by the
    /// policy) plus the truncated cylindrical-function quotient sum
    AmplitudeResult amplitude(double phi) const;
    /// quotient sum only (finite at the peak directions)
    AmplitudeResult amplitude_ratio_part(double phi) const;
    /// zero-radius closed form including the global tube phase
    std::complex<double> zero_radius(double phi) const;

    double k() const { return k_; }
    const VortexConfig& config() const { return cfg_; }
    long terms_used() const { return 2 * n_max_ + 1; }
    double tail_estimate() const { return tail_estimate_; }
    /// Parseval value of the quotient-part cross section, (4/k) sum |a_n|^2
    double ratio_part_parseval() const;

private:
    std::complex<double> ratio_sum(double phi) const;

    VortexConfig cfg_;
    double k_;
    TruncationPolicy policy_;
    long n_max_;
    std::vector<std::complex<double>> coeff_; // a_n = e^{-i alpha_n pi} J/H, n = -n_max..n_max
    std::complex<double> prefactor_;          // -e^{2ik(r_c-xi_c)} sqrt(2/(pi i k))
    std::complex<double> tube_phase_;         // e^{2ik(r_c-xi_c)}
    double tail_estimate_;
};

/// One-shot evaluation of the exact partial-wave amplitude.
AmplitudeResult amplitude_exact(const WaveState& k, double phi,
                                const VortexConfig& cfg, TruncationPolicy policy = {});

/// Exact wave function at fixed radius with the radial coefficients
/// precomputed; per-angle evaluation is O(terms). Vanishes at r = r_c to
/// rounding (the Dirichlet condition holds term by term).
class WavefunctionSeries {
public:
    WavefunctionSeries(double r, const WaveState& k, const VortexConfig& cfg,
                       TruncationPolicy policy = {});
    std::complex<double> value(double phi) const;
    long terms_used() const { return 2 * n_max_ + 1; }

private:
    long n_max_;
    std::vector<std::complex<double>> coeff_;
    std::complex<double> prefactor_;
};

/// Angular integral of the quotient-part |f|^2: the finite total cross
/// section of the cylindrical-function part of the series. Approaches
/// 4 r_c (1-eta) in the quasiclassical limit.
double ratio_part_cross_section(const ExactSeries& series);

/// Closed-form amplitude of the zero-transverse-size vortex (the sine part
/// of the series summed analytically; diverges at phi = -/+phi_eta).
std::complex<double> amplitude_zero_radius(const WaveState& k, double phi,
                                           const VortexConfig& cfg);

/// Exact scattering wave function (Dirichlet at r = r_c).
std::complex<double> wavefunction_exact(double r, double phi, const WaveState& k,
                                        const VortexConfig& cfg,
                                        TruncationPolicy policy = {});

/// Sine-series form of the wave function at half-odd-integer effective
/// flux; vanishes identically (term by term) in the forward direction.
std::complex<double> wavefunction_halfflux(double r, double phi, const WaveState& k,
                                           const VortexConfig& cfg);

struct IncidentWave {
    std::complex<double> value;
    int n_l;
    bool shadow;
};
/// Conical-space incident wave: finite sum over the winding images.
IncidentWave incident_wave(double r, double phi, const WaveState& k,
                           const VortexConfig& cfg);

/// Plain-data content of the modified unity matrix: the two delta-peak
/// directions with their phase weights and the common prefactor.
struct SMatrixPeakData {
    std::array<double, 2> directions;             // (-phi_eta, +phi_eta)
    std::array<std::complex<double>, 2> phases;   // e^{+/- i nu (pi - phi_eta)}
    std::complex<double> prefactor;               // e^{2ik(r_c-xi_c)} / 2
};
SMatrixPeakData smatrix_peak_data(const VortexConfig& cfg, const WaveState& k);

/// Unitarity (generalized optical theorem) check for the exact series:
/// the phase-weighted ratio-part amplitude at the two peak directions
/// against the zero-radius-subtracted angular integral of |f|^2.
struct OpticalCheck {
    double lhs;        // peak-direction combination
    double sigma_quad; // integral side, by adaptive quadrature
    double residual;   // |lhs - sigma_quad| / |sigma_quad|
};
OpticalCheck optical_check(const WaveState& k, const VortexConfig& cfg,
                           TruncationPolicy policy = {});

} // namespace vortexwave::exact

#endif
