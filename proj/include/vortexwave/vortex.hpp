#ifndef VORTEXWAVE_VORTEX_HPP
#define VORTEXWAVE_VORTEX_HPP

#include "vortexwave/geometry.hpp"

#include <optional>

namespace vortexwave {

enum class SpinMode { Spinless, SpinHalf };

/// Spin setting of the scattered particle. For spin-1/2 the projection on
/// the vortex axis (+1/-1) selects the sign of the flux shift -/+ eta/2.
struct Spin {
    SpinMode mode = SpinMode::Spinless;
    int projection = +1;

    static Spin spinless() { return {}; }
    static Spin half(int projection);
};

/// Full scatterer description: cone geometry, hard tube, flux ratio
/// nu_Phi = Phi/Phi_0 and the spin setting.
class VortexConfig {
public:
    VortexConfig(ConeGeometry geom, TubeSpec tube, double flux_ratio,
                 Spin spin = Spin::spinless());

    const ConeGeometry& geom() const { return geom_; }
    const TubeSpec& tube() const { return tube_; }
    double flux_ratio() const { return flux_ratio_; }
    const Spin& spin() const { return spin_; }

    /// Flux ratio with the spin-1/2 shift nu -> nu -/+ eta/2 applied.
    /// The single place the shift happens; every formula reads this.
    double effective_flux() const;

private:
    ConeGeometry geom_;
    TubeSpec tube_;
    double flux_ratio_;
    Spin spin_;
};

/// Provenance of a wavenumber derived from (m, E, k_z).
struct WaveProvenance {
    double mass;
    double energy;
    double k_z;
    double hbar;
};

/// Incident beam: transverse wavenumber k > 0, optionally with the
/// kinematic quantities it was derived from.
class WaveState {
public:
    explicit WaveState(double k);
    WaveState(double k, WaveProvenance provenance);

    double k() const { return k_; }
    const std::optional<WaveProvenance>& provenance() const { return provenance_; }

    static WaveState from_kinematics(double mass, double energy, double k_z,
                                     double hbar = 1.0);

private:
    double k_;
    std::optional<WaveProvenance> provenance_;
};

/// k = sqrt(2 m E / hbar^2 - k_z^2); throws KinematicsError when the
/// transverse energy is not positive.
double transverse_wavenumber(double mass, double energy, double k_z, double hbar = 1.0);

/// Partial-wave order alpha_n = |n - nu_eff| / (1 - eta).
double alpha_order(long n, const VortexConfig& cfg);

} // namespace vortexwave

#endif
