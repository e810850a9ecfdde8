import json
import math

import pytest

import vortexwave as vw


def test_bessel_closed_forms():
    x = math.pi / 2
    assert vw.bessel_j(0.5, x) == pytest.approx(2.0 / math.pi, rel=1e-14)
    assert abs(vw.bessel_y(0.5, x)) < 1e-15
    r = vw.jh_ratio(0.5, x)
    assert r.real == pytest.approx(1.0, rel=1e-13)
    assert abs(vw.jh_ratio(200.0, 10.0)) < 1e-100


def test_domain_errors_map_to_python():
    with pytest.raises(ValueError):
        vw.bessel_y(1.0, -2.0)
    with pytest.raises(ValueError):
        vw.ConeGeometry(1.5)


def test_classical_totals_and_regions():
    geom = vw.ConeGeometry(0.25)
    tube = vw.TubeSpec(1.0)
    totals = vw.sigma_classical_totals(geom, tube)
    assert totals["sigma_total"] == pytest.approx(1.5)
    assert totals["sigma_out"] + 2 * totals["sigma_in"] == pytest.approx(1.5)
    assert vw.classify_angle(0.0, geom) == vw.RegionLabel.DoubleImage
    assert vw.classify_angle(0.0, vw.ConeGeometry(-0.5)) == vw.RegionLabel.Shadow


def test_doubling_law():
    cfg = vw.VortexConfig(eta=0.25, r_c=1.0, flux_ratio=0.3)
    total = vw.sigma_integrated(vw.SigmaChannel.Total, cfg)
    classical = vw.sigma_classical_totals(cfg.geom, cfg.tube)["sigma_total"]
    assert total == 2.0 * classical


def test_forward_null_at_half_flux():
    cfg = vw.VortexConfig(eta=0.0, r_c=1.0, flux_ratio=0.5)
    k = vw.WaveState(1.0)
    psi = vw.WavefunctionSeries(5.0, k, cfg)
    grid = [(-math.pi + 2 * math.pi * i / 180) for i in range(180)]
    peak = max(abs(psi.value(p)) for p in grid)
    assert abs(psi.value(0.0)) < 1e-8 * peak


def test_flux_periodicity_of_amplitude():
    k = vw.WaveState(5.0)
    s0 = vw.ExactSeries(k, vw.VortexConfig(eta=0.25, flux_ratio=0.3))
    s1 = vw.ExactSeries(k, vw.VortexConfig(eta=0.25, flux_ratio=1.3))
    for phi in (0.7, 2.0, -2.1):
        a = abs(s0.amplitude(phi).value) ** 2
        b = abs(s1.amplitude(phi).value) ** 2
        assert a == pytest.approx(b, rel=1e-8)


def test_gate_sum_rule():
    cfg = vw.VortexConfig(eta=0.25, flux_ratio=0.0)
    k = vw.WaveState(100.0)
    phi = 0.5 / (0.75 * 100.0)
    even = vw.gate_function(phi, "even", "spinless", 1, cfg, k)
    odd = vw.gate_function(phi, "odd", "spinless", 1, cfg, k)
    assert even + odd == pytest.approx(2.0, abs=1e-14)


def test_run_config_json():
    payload = vw.run_config(
        "scenario = classical\neta = 0.25\nk_rc = 10\nphi_grid.count = 5\n"
    )
    doc = json.loads(payload)
    assert doc["meta"]["scenario"] == "classical"
    assert len(doc["rows"]) == 5
    assert doc["columns"][0] == "phi"
    assert doc["report"]["scalars"]["sigma_total"] == pytest.approx(1.5)
