#ifndef VORTEXWAVE_GEOMETRY_HPP
#define VORTEXWAVE_GEOMETRY_HPP

#include <optional>

namespace vortexwave {

/// Reduce an angle to [-pi, pi).
double wrap_pi(double phi);
/// Reduce an angle to [0, 2*pi).
double wrap_2pi(double phi);

/// Conical-space kinematics: deficit parameter eta (< 1) and the derived
/// kinematic angle phi_eta = -eta*pi/(1-eta). Trajectories that miss the
/// scatterer are deflected by phi_eta; the band |phi| < omega_eta is a
/// shadow for eta < 0 and a double-image region for 0 < eta < 1/2.
class ConeGeometry {
public:
    explicit ConeGeometry(double eta);

    double eta() const { return eta_; }
    double phi_eta() const { return phi_eta_; }
    double omega_eta() const { return omega_eta_; }
    /// true when eta == 0 (Euclidean plane)
    bool euclidean() const { return eta_ == 0.0; }

private:
    double eta_;
    double phi_eta_;
    double omega_eta_;
};

/// Hard tube of radius r_c; xi_c is the geodesic radius through the curved
/// interior. It enters observables only via the global phase 2k(r_c - xi_c),
/// so it defaults to r_c.
class TubeSpec {
public:
    explicit TubeSpec(double r_c);
    TubeSpec(double r_c, double xi_c);

    double r_c() const { return r_c_; }
    double xi_c() const { return xi_c_; }

private:
    double r_c_;
    double xi_c_;
};

enum class RegionLabel { Regular, Shadow, DoubleImage };

/// Incidence(=reflection) angle chi and impact parameter rho for a
/// classical trajectory scattered into a given angle.
struct ClassicalKinematics {
    double chi;
    double rho;
};

enum class HalfSpace { UpperHalf, LowerHalf, Combined };

/// Differential cross section value together with the region the angle
/// falls in (Shadow angles return value 0 rather than raising).
struct ClassicalDifferential {
    double value;
    RegionLabel region;
};

/// Integrated classical cross sections. sigma_out/sigma_in are present
/// only for 0 < eta < 1/2 where the double-image split exists.
struct ClassicalTotals {
    double sigma_total;
    std::optional<double> sigma_out;
    std::optional<double> sigma_in;
};

/// Region classification of a scattering angle (any real angle accepted;
/// reduced to [-pi, pi) internally).
RegionLabel classify_angle(double phi, const ConeGeometry& geom);

/// Impact parameter rho(phi) = r_c(1-eta) sin[(1-eta)(pi-phi)/2] for the
/// upper half-space branch, phi in (phi_eta, pi).
double impact_parameter(double phi, const ConeGeometry& geom, const TubeSpec& tube);

/// Incidence angle and impact parameter for the upper half-space branch.
ClassicalKinematics classical_kinematics(double phi, const ConeGeometry& geom,
                                         const TubeSpec& tube);

/// Classical differential cross section d(sigma)/d(phi).
/// UpperHalf: valid for phi in (phi_eta, pi); LowerHalf: (pi, 2pi-phi_eta);
/// Combined: double-image region (phi_eta, -phi_eta), 0 < eta < 1/2 only.
/// Shadow angles return 0 with the Shadow label.
ClassicalDifferential dsigma_classical(double phi, const ConeGeometry& geom,
                                       const TubeSpec& tube, HalfSpace mode);

/// Closed-form totals: sigma_total = 2 r_c (1-eta); for 0 < eta < 1/2 also
/// the split into sigma_out and sigma_in with sigma_out + 2 sigma_in = sigma_total.
ClassicalTotals sigma_classical_totals(const ConeGeometry& geom, const TubeSpec& tube);

} // namespace vortexwave

#endif
