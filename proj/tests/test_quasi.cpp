#include "vortexwave/quasi.hpp"
#include "vortexwave/errors.hpp"
#include "vortexwave/exact.hpp"
#include "vortexwave/geometry.hpp"
#include "vortexwave/quadrature.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>

using namespace vortexwave;
using quasi::DsigmaChannel;
using quasi::GateParity;
using quasi::GateSpin;
using quasi::PeakBranch;
using quasi::SigmaChannel;
constexpr double kPi = std::numbers::pi;

namespace {
VortexConfig make_cfg(double eta, double nu, double r_c = 1.0)
{
    return VortexConfig(ConeGeometry(eta), TubeSpec(r_c), nu);
}
} // namespace

TEST_CASE("regularized angular delta")
{
    CHECK(quasi::delta_reg(10.0, 0.0) == doctest::Approx(10.0 / kPi).epsilon(1e-15));
    CHECK(quasi::delta_reg(10.0, kPi / 10.0) == doctest::Approx(0.0));
    CHECK_THROWS_AS(quasi::delta_reg(10.0, kPi), RangeError);
    CHECK_THROWS_AS(quasi::delta_reg(10.0, -3.5), RangeError);
    CHECK_THROWS_AS(quasi::delta_reg(0.0, 0.1), DomainError);

    auto ig = [](double p) { return quasi::delta_reg(50.0, p); };
    const double total =
        quad::integrate_oscillatory(ig, -kPi + 1e-9, kPi - 1e-9, kPi / 50.0);
    CHECK(std::abs(total - 1.0) < 1e-3);
}

TEST_CASE("flat-space tube peak (geometric-progression form)")
{
    const WaveState k(100.0);
    const auto cfg = make_cfg(0.0, 0.0);
    const auto f0 = quasi::f_peak(k, 0.0, PeakBranch::EuclidTube, cfg);
    // forward value -(2 [[k r_c]] + 1)/sqrt(2 pi i k), strongly peaked
    CHECK(std::abs(f0) ==
          doctest::Approx(201.0 / std::sqrt(2.0 * kPi * 100.0)).epsilon(1e-12));
    CHECK(std::abs(f0) == doctest::Approx(std::sqrt(2.0 * 100.0 / kPi) * 1.0)
                              .epsilon(0.01)); // ~ sqrt(2k/pi) r_c
    CHECK_THROWS_AS(quasi::f_peak(k, 0.0, PeakBranch::EuclidTube, make_cfg(0.25, 0.0)),
                    PreconditionError);
}

TEST_CASE("peak heights satisfy the delta-kernel identity")
{
    const WaveState k(100.0);
    const auto cfg = make_cfg(0.25, 0.3);
    const double phi_eta = cfg.geom().phi_eta();
    // |f_peak+-|^2 at the center equals r_c(1-eta) Delta(0) = k r_c^2 (1-eta)^2/(2 pi)
    const auto fp = quasi::f_peak(k, -phi_eta, PeakBranch::PlusPeak, cfg);
    CHECK(std::norm(fp) ==
          doctest::Approx(100.0 * 0.75 * 0.75 / (2.0 * kPi)).epsilon(1e-12));
    const auto fm = quasi::f_peak(k, +phi_eta, PeakBranch::MinusPeak, cfg);
    CHECK(std::norm(fm) == doctest::Approx(std::norm(fp)).epsilon(1e-12));

    // pointwise |f_peak|^2 = dsigma_analytic(Peak...) off center as well
    for (double off : {0.01, 0.05, -0.03}) {
        const double phi = -phi_eta + off;
        CHECK(std::norm(quasi::f_peak(k, phi, PeakBranch::PlusPeak, cfg)) ==
              doctest::Approx(quasi::dsigma_analytic(phi, DsigmaChannel::PeakPlus,
                                                     cfg, k))
                  .epsilon(1e-12));
    }
}

TEST_CASE("flat-space vortex peak: half flux gates the forward direction")
{
    const WaveState k(100.0);
    const auto cfg = make_cfg(0.0, 0.5);
    CHECK(std::abs(quasi::f_peak(k, 0.0, PeakBranch::EuclidVortex, cfg)) < 1e-13);
    // and reduces to the coherent PlusPeak+MinusPeak pair at eta = 0
    for (double nu : {0.0, 0.3, 0.5}) {
        const auto c = make_cfg(0.0, nu);
        for (double phi : {0.004, 0.02, -0.013}) {
            const auto pair = quasi::f_peak(k, phi, PeakBranch::PlusPeak, c) +
                              quasi::f_peak(k, phi, PeakBranch::MinusPeak, c);
            const auto ev = quasi::f_peak(k, phi, PeakBranch::EuclidVortex, c);
            CHECK(std::abs(pair - ev) < 1e-12 * std::abs(ev));
        }
    }
}

TEST_CASE("reflection amplitude against the printed cross sections")
{
    // flat space: |f_class|^2 = (r_c/2) sin(phi/2)
    {
        const WaveState k(50.0);
        const auto cfg = make_cfg(0.0, 0.0);
        CHECK(std::norm(quasi::f_qclass(k, kPi, cfg)) ==
              doctest::Approx(0.5).epsilon(1e-12));
        for (double phi : {0.8, 2.0, 4.5}) {
            CHECK(std::norm(quasi::f_qclass(k, phi, cfg)) ==
                  doctest::Approx(0.5 * std::sin(0.5 * phi)).epsilon(1e-12));
        }
    }
    // shadow region: zero
    CHECK(std::abs(quasi::f_qclass(WaveState(50.0), 0.0, make_cfg(-0.5, 0.0))) == 0.0);
    // half flux kills the strictly forward double-image direction
    CHECK(std::norm(quasi::f_qclass(WaveState(100.0), 0.0, make_cfg(0.25, 0.5))) <
          1e-20);
    // and the |f_qclass|^2 in the band follows the flux-dependent form
    {
        const WaveState k(100.0);
        for (double nu : {0.0, 0.3, 0.5}) {
            const auto cfg = make_cfg(0.25, nu);
            for (double phi : {0.0, 0.2, -0.4}) {
                CHECK(std::norm(quasi::f_qclass(k, phi, cfg)) ==
                      doctest::Approx(quasi::dsigma_analytic(
                                          phi, DsigmaChannel::QClassDoubleImage,
                                          cfg, k))
                          .epsilon(1e-10));
            }
        }
    }
    // outside the band it follows the classical branch value
    {
        const WaveState k(100.0);
        const auto cfg = make_cfg(0.25, 0.4);
        for (double phi : {1.5, 2.5, kPi}) {
            CHECK(std::norm(quasi::f_qclass(k, phi, cfg)) ==
                  doctest::Approx(quasi::dsigma_analytic(
                                      phi, DsigmaChannel::QClassOutside, cfg, k))
                      .epsilon(1e-10));
        }
    }
}

TEST_CASE("analytic differential cross sections")
{
    const WaveState k(1000.0);
    // forward value at nu = 0 (double-image band)
    const auto cfg = make_cfg(0.25, 0.0);
    const double forward_flux_free = 2.0 * 0.5625 * std::sin(kPi / 8.0);
    CHECK(quasi::dsigma_analytic(0.0, DsigmaChannel::QClassDoubleImage, cfg, k) ==
          doctest::Approx(forward_flux_free).epsilon(1e-14));
    CHECK(quasi::dsigma_analytic(0.0, DsigmaChannel::ForwardWindow, cfg, k) ==
          doctest::Approx(forward_flux_free).epsilon(1e-14));
    // integer vs half-integer flux through the forward window
    const auto cfg5 = make_cfg(0.25, 0.5);
    CHECK(quasi::dsigma_analytic(0.0, DsigmaChannel::ForwardWindow, cfg5, k) <
          1e-25);
    // flat-space forward peak: 2 Delta_x(0) = 2x/pi
    const WaveState k100(100.0);
    CHECK(quasi::dsigma_analytic(0.0, DsigmaChannel::EuclidPeakFlux,
                                 make_cfg(0.0, 0.0), k100) ==
          doctest::Approx(200.0 / kPi).epsilon(1e-14));
    // range errors
    CHECK_THROWS_AS(quasi::dsigma_analytic(2.0, DsigmaChannel::QClassDoubleImage,
                                           cfg, k),
                    RangeError);
    CHECK_THROWS_AS(quasi::dsigma_analytic(0.1, DsigmaChannel::QClassOutside, cfg, k),
                    RangeError);
    CHECK_THROWS_AS(quasi::dsigma_analytic(0.5, DsigmaChannel::ForwardWindow, cfg, k),
                    RangeError);
    CHECK_THROWS_AS(quasi::dsigma_analytic(0.0, DsigmaChannel::ForwardWindow,
                                           make_cfg(0.25, 0.0), WaveState(3.0)),
                    RangeError); // applicability gate sin(1/2x) << sin(eta pi/2)
    // shadow gives zero
    CHECK(quasi::dsigma_analytic(0.1, DsigmaChannel::QClassOutside,
                                 make_cfg(-0.5, 0.0), k) == 0.0);
}

TEST_CASE("flat-space flux peak profile matches its amplitude form pointwise")
{
    const WaveState k(100.0);
    for (double nu : {0.0, 0.3, 0.5, 1.2}) {
        const auto cfg = make_cfg(0.0, nu);
        for (double phi : {0.001, 0.01, 0.03, -0.02}) {
            const double lhs =
                std::norm(quasi::f_peak(k, phi, PeakBranch::EuclidVortex, cfg));
            const double rhs =
                quasi::dsigma_analytic(phi, DsigmaChannel::EuclidPeakFlux, cfg, k);
            CHECK(lhs == doctest::Approx(rhs).epsilon(1e-11));
        }
    }
}

TEST_CASE("integrated cross sections and the doubling law")
{
    {
        const auto cfg = make_cfg(0.0, 0.0);
        CHECK(quasi::sigma_integrated(SigmaChannel::Peak, cfg) == 2.0);
        CHECK(quasi::sigma_integrated(SigmaChannel::QClass, cfg) == 2.0);
        CHECK(quasi::sigma_integrated(SigmaChannel::Total, cfg) == 4.0);
    }
    {
        const auto cfg = make_cfg(0.25, 0.0);
        CHECK(quasi::sigma_integrated(SigmaChannel::PeakPlus, cfg) == 0.75);
        CHECK(quasi::sigma_integrated(SigmaChannel::PeakMinus, cfg) == 0.75);
        CHECK(quasi::sigma_integrated(SigmaChannel::QClass, cfg) == 1.5);
        CHECK(quasi::sigma_integrated(SigmaChannel::Total, cfg) == 3.0);
    }
    for (double eta : {-2.0, -0.5, 0.0, 0.1, 0.25, 0.4}) {
        const auto cfg = make_cfg(eta, 0.0);
        const double classical =
            sigma_classical_totals(cfg.geom(), cfg.tube()).sigma_total;
        CHECK(quasi::sigma_integrated(SigmaChannel::Total, cfg) == 2.0 * classical);
    }
    // integrated values are independent of the flux (bit equality)
    for (double nu : {0.3, 0.5}) {
        CHECK(quasi::sigma_integrated(SigmaChannel::Total, make_cfg(0.25, nu)) ==
              quasi::sigma_integrated(SigmaChannel::Total, make_cfg(0.25, 0.0)));
        CHECK(quasi::sigma_integrated(SigmaChannel::QClass, make_cfg(0.25, nu)) ==
              quasi::sigma_integrated(SigmaChannel::QClass, make_cfg(0.25, 0.0)));
    }
    CHECK_THROWS_AS(quasi::sigma_integrated(SigmaChannel::Total, make_cfg(0.6, 0.0)),
                    UnsupportedRegimeError);
}

TEST_CASE("peak normalization integral")
{
    const WaveState k(1000.0);
    const auto cfg = make_cfg(0.25, 0.0);
    auto ig = [&](double p) {
        return std::norm(quasi::f_peak(k, p, PeakBranch::PlusPeak, cfg));
    };
    const double total = quad::integrate_oscillatory(ig, -kPi, kPi, kPi / 1000.0);
    CHECK(std::abs(total - 0.75) < 0.01 * 0.75);
}

TEST_CASE("peak interference is negligible against each peak")
{
    const WaveState k(200.0);
    const auto cfg = make_cfg(0.25, 0.0);
    auto ig = [&](double p) {
        const auto d = quasi::compose_quasiclassical(k, p, cfg);
        return 2.0 * std::real(d.f_peak_plus * std::conj(d.f_peak_minus));
    };
    const double interference =
        std::abs(quad::integrate_oscillatory(ig, -kPi, kPi, kPi / 400.0));
    const double each = quasi::sigma_integrated(SigmaChannel::PeakPlus, cfg);
    CHECK(interference < 0.02 * each);
}

TEST_CASE("regularized optical theorems")
{
    const WaveState k(100.0);
    CHECK(quasi::optical_residual(k, make_cfg(0.0, 0.0), quasi::OpticalMode::Euclid) <
          0.05);
    CHECK(quasi::optical_residual(k, make_cfg(0.0, 0.5), quasi::OpticalMode::Euclid) <
          0.05);
    CHECK(quasi::optical_residual(k, make_cfg(0.25, 0.0), quasi::OpticalMode::Cone) <
          0.05);
    CHECK(quasi::optical_residual(k, make_cfg(-0.5, 0.3), quasi::OpticalMode::Cone) <
          0.05);
    CHECK_THROWS_AS(
        quasi::optical_residual(k, make_cfg(0.25, 0.0), quasi::OpticalMode::Euclid),
        PreconditionError);
}

TEST_CASE("gate functions")
{
    const WaveState k(100.0);
    const auto cfg = make_cfg(0.25, 0.0);
    // spinless forward values
    CHECK(quasi::gate_function(0.0, {GateParity::Even, GateSpin::Spinless}, cfg, k) ==
          2.0);
    CHECK(quasi::gate_function(0.0, {GateParity::Odd, GateSpin::Spinless}, cfg, k) ==
          0.0);
    // unpolarized forward values 1 +- cos(eta pi)
    CHECK(quasi::gate_function(0.0, {GateParity::Even, GateSpin::HalfUnpolarized},
                               cfg, k) ==
          doctest::Approx(1.0 + std::cos(kPi / 4)).epsilon(1e-15));
    CHECK(quasi::gate_function(0.0, {GateParity::Odd, GateSpin::HalfUnpolarized},
                               cfg, k) ==
          doctest::Approx(1.0 - std::cos(kPi / 4)).epsilon(1e-15));
    // sum rule and the polarization average across the window
    const double width = 1.0 / (0.75 * 100.0);
    for (int i = 1; i < 16; ++i) {
        const double phi = width * (i - 8) / 8.5;
        const double sum =
            quasi::gate_function(phi, {GateParity::Even, GateSpin::Spinless}, cfg, k) +
            quasi::gate_function(phi, {GateParity::Odd, GateSpin::Spinless}, cfg, k);
        CHECK(sum == doctest::Approx(2.0).epsilon(1e-15));
        const double unpol_sum =
            quasi::gate_function(phi, {GateParity::Even, GateSpin::HalfUnpolarized},
                                 cfg, k) +
            quasi::gate_function(phi, {GateParity::Odd, GateSpin::HalfUnpolarized},
                                 cfg, k);
        CHECK(unpol_sum == doctest::Approx(2.0).epsilon(1e-15));
        for (auto parity : {GateParity::Even, GateParity::Odd}) {
            const double avg =
                0.5 * (quasi::gate_function(phi, {parity, GateSpin::HalfPolarized, +1},
                                            cfg, k) +
                       quasi::gate_function(phi, {parity, GateSpin::HalfPolarized, -1},
                                            cfg, k));
            CHECK(avg == doctest::Approx(quasi::gate_function(
                             phi, {parity, GateSpin::HalfUnpolarized}, cfg, k))
                             .epsilon(1e-15));
        }
    }
    CHECK_THROWS_AS(
        quasi::gate_function(0.1, {GateParity::Even, GateSpin::Spinless}, cfg, k),
        RangeError);
}

TEST_CASE("gate equals the forward cross-section ratio")
{
    // F(phi,+) dsigma_class(0) equals the nu = n (even) forward window form
    const WaveState k(1000.0);
    const auto cfg0 = make_cfg(0.25, 0.0);
    const double class_fw =
        dsigma_classical(0.0, cfg0.geom(), cfg0.tube(), HalfSpace::Combined).value;
    for (double phi : {0.0, 0.0005, -0.0008}) {
        const double even =
            quasi::gate_function(phi, {GateParity::Even, GateSpin::Spinless}, cfg0, k) *
            class_fw;
        CHECK(even == doctest::Approx(quasi::dsigma_analytic(
                          phi, DsigmaChannel::ForwardWindow, cfg0, k))
                          .epsilon(1e-9));
        const double odd =
            quasi::gate_function(phi, {GateParity::Odd, GateSpin::Spinless}, cfg0, k) *
            class_fw;
        CHECK(odd == doctest::Approx(quasi::dsigma_analytic(
                         phi, DsigmaChannel::ForwardWindow, make_cfg(0.25, 0.5), k))
                         .epsilon(1e-9));
    }
}

TEST_CASE("double-image quadrature difference decays like (k r_c)^{-3/2}")
{
    const double eta = 0.25;
    const auto cfg = make_cfg(eta, 0.0);
    const double omega = cfg.geom().omega_eta();
    auto diff = [&](double x) {
        const WaveState k(x);
        auto f = [&](double phi) {
            return quasi::dsigma_analytic(phi, DsigmaChannel::QClassDoubleImage, cfg,
                                          k) -
                   dsigma_classical(phi, cfg.geom(), cfg.tube(), HalfSpace::Combined)
                       .value;
        };
        return quad::integrate_oscillatory(
            f, -omega + 1e-12, omega - 1e-12,
            kPi / (2.0 * x * (1.0 - eta) * std::cos(0.5 * eta * kPi)));
    };
    // rms over a window spanning one oscillation per decade, then fit
    const double period =
        2.0 * kPi / (4.0 * std::cos(0.5 * eta * kPi) * std::sin(0.5 * eta * kPi));
    double lx[3], ly[3];
    for (int d = 0; d < 3; ++d) {
        const double X = std::pow(10.0, 2 + d);
        double ss = 0.0;
        for (int i = 0; i < 8; ++i) {
            const double v = diff(X + period * i / 8.0);
            ss += v * v;
        }
        lx[d] = std::log(X);
        ly[d] = 0.5 * std::log(ss / 8.0);
    }
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (int d = 0; d < 3; ++d) {
        sx += lx[d];
        sy += ly[d];
        sxx += lx[d] * lx[d];
        sxy += lx[d] * ly[d];
    }
    const double slope = (3 * sxy - sx * sy) / (3 * sxx - sx * sx);
    CHECK(slope > -1.8);
    CHECK(slope < -1.2);
}

TEST_CASE("flux form reduces to the flux-free band form at nu = 0")
{
    // literal transcription of the flux-free double-image cross section
    const WaveState k(137.0);
    const auto cfg = make_cfg(0.25, 0.0);
    const double eta = 0.25, r_c = 1.0, x = 137.0;
    for (double phi : {0.0, 0.15, -0.31, 0.4}) {
        const double se = std::sin(0.5 * eta * kPi);
        const double sf = std::sin(0.5 * (1.0 - eta) * phi);
        const double band_flux_free =
            r_c * (1.0 - eta) * (1.0 - eta) *
            (std::cos(0.5 * (1.0 - eta) * phi) * se +
             std::sqrt(se * se - sf * sf) *
                 std::cos(4.0 * x * sf * std::cos(0.5 * eta * kPi)));
        CHECK(quasi::dsigma_analytic(phi, DsigmaChannel::QClassDoubleImage, cfg, k) ==
              doctest::Approx(band_flux_free).epsilon(1e-15));
    }
}

TEST_CASE("forward window form matches the reflection sum in its window")
{
    const WaveState k(1000.0);
    for (double nu : {0.0, 0.25}) {
        const auto cfg = make_cfg(0.25, nu);
        for (int i = -9; i <= 9; ++i) {
            const double phi = i * 1.3e-4;
            const double a =
                quasi::dsigma_analytic(phi, DsigmaChannel::ForwardWindow, cfg, k);
            const double b = std::norm(quasi::f_qclass(k, phi, cfg));
            CHECK(std::abs(a - b) < 0.01 * std::max(b, 1e-4));
        }
    }
}

TEST_CASE("composed amplitude tracks the exact series away from the peak")
{
    const WaveState k(200.0);
    const auto cfg = make_cfg(0.0, 0.0);
    const exact::ExactSeries series(k, cfg);
    const double fe = std::norm(series.amplitude(kPi / 2).value);
    const double fq = std::norm(quasi::compose_quasiclassical(k, kPi / 2, cfg).total);
    CHECK(std::abs(fq - fe) < 0.02 * fe);
}

TEST_CASE("composed decomposition pieces")
{
    const WaveState k(200.0);
    const auto cfg = make_cfg(0.25, 0.3);
    const auto d = quasi::compose_quasiclassical(k, 2.0, cfg);
    CHECK(d.total == d.f_peak_plus + d.f_peak_minus + d.f_qclass);
    CHECK(d.remainder_bound == doctest::Approx(std::pow(200.0, -1.0 / 6.0)));
    CHECK_THROWS_AS(quasi::compose_quasiclassical(k, 2.0, make_cfg(0.55, 0.0)),
                    UnsupportedRegimeError);
}
