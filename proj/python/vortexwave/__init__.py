"""Scattering observables for a hard magnetic vortex in conical space.

Thin wrapper over the C++ core: exact partial-wave series, quasiclassical
decomposition, classical cross sections and the scenario runner.
"""

from ._core import (  # noqa: F401
    AmplitudeResult,
    ConeGeometry,
    DsigmaChannel,
    ExactSeries,
    HalfSpace,
    OpticalMode,
    PeakBranch,
    RegionLabel,
    SigmaChannel,
    TruncationPolicy,
    TubeSpec,
    VortexConfig,
    VortexwaveError,
    WaveState,
    WavefunctionSeries,
    __version__,
    alpha_order,
    amplitude_exact,
    amplitude_zero_radius,
    bessel_j,
    bessel_y,
    classify_angle,
    compose_quasiclassical,
    delta_reg,
    dsigma_analytic,
    dsigma_classical,
    f_peak,
    f_qclass,
    gate_function,
    hankel1,
    impact_parameter,
    incident_wave,
    jh_ratio,
    near_peak,
    optical_check,
    optical_residual,
    run_config,
    sigma_classical_totals,
    sigma_integrated,
    smatrix_peak_data,
    transverse_wavenumber,
    wavefunction_exact,
    wavefunction_halfflux,
)
