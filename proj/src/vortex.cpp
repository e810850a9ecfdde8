#include "vortexwave/vortex.hpp"
#include "vortexwave/errors.hpp"

#include <cmath>
#include <string>

namespace vortexwave {

Spin Spin::half(int projection)
{
    if (projection != 1 && projection != -1)
        throw DomainError("spin projection must be +1 or -1");
    return {SpinMode::SpinHalf, projection};
}

VortexConfig::VortexConfig(ConeGeometry geom, TubeSpec tube, double flux_ratio,
                           Spin spin)
    : geom_(geom), tube_(tube), flux_ratio_(flux_ratio), spin_(spin)
{
    if (!std::isfinite(flux_ratio))
        throw DomainError("flux ratio must be finite");
    if (spin_.mode == SpinMode::SpinHalf && spin_.projection != 1 &&
        spin_.projection != -1)
        throw DomainError("spin projection must be +1 or -1");
}

double VortexConfig::effective_flux() const
{
    if (spin_.mode == SpinMode::Spinless) return flux_ratio_;
    return flux_ratio_ - 0.5 * spin_.projection * geom_.eta();
}

WaveState::WaveState(double k) : k_(k)
{
    if (!(k > 0.0) || !std::isfinite(k))
        throw DomainError("wavenumber k must be positive, got " + std::to_string(k));
}

WaveState::WaveState(double k, WaveProvenance provenance) : WaveState(k)
{
    provenance_ = provenance;
}

WaveState WaveState::from_kinematics(double mass, double energy, double k_z, double hbar)
{
    const double k = transverse_wavenumber(mass, energy, k_z, hbar);
    return WaveState(k, WaveProvenance{mass, energy, k_z, hbar});
}

double transverse_wavenumber(double mass, double energy, double k_z, double hbar)
{
    const double radicand = 2.0 * mass * energy / (hbar * hbar) - k_z * k_z;
    if (!(radicand > 0.0))
        throw KinematicsError("transverse energy must be positive: 2mE/hbar^2 - k_z^2 = " +
                              std::to_string(radicand));
    return std::sqrt(radicand);
}

double alpha_order(long n, const VortexConfig& cfg)
{
    return std::abs(static_cast<double>(n) - cfg.effective_flux()) /
           (1.0 - cfg.geom().eta());
}

} // namespace vortexwave
