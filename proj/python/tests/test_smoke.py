import math
import os
from pathlib import Path

import pytest

import fasuav

CONFIGS = Path(os.environ.get("FASUAV_CONFIG_DIR", Path(__file__).resolve().parents[2] / "configs"))


def test_fbl_constants():
    f = fasuav.derive_fbl(80, 100)
    assert f.rate == pytest.approx(0.8)
    assert f.tau == pytest.approx(2 ** 0.8 - 1, rel=1e-15)
    assert f.rho_h - f.rho_l == pytest.approx(1 / f.chi)


def test_correlation():
    c = fasuav.make_correlation(2, 0.5)
    assert c.n_eff == 2
    assert c.eigenvalues[0] == pytest.approx(1.304242, abs=1e-6)
    assert fasuav.bessel_j0(0.0) == 1.0


def test_hop_blers_monotone():
    f = fasuav.derive_fbl(80, 200)
    values = [fasuav.hop2_bler(f, 2, 2 / 10 ** (s / 10), [1.3, 0.7]) for s in range(0, 30, 3)]
    assert all(a >= b for a, b in zip(values, values[1:]))
    assert 0.0 < fasuav.hop1_bler(f, 1, 1e-9) < 1e-9


def test_config_round_trip_and_errors():
    c = fasuav.load_config(CONFIGS / "rural.cfg")
    assert c.scenario == fasuav.Scenario.rural
    assert fasuav.parse_config(c.emit()).hash() == c.hash()
    with pytest.raises(ValueError, match="fas.aperture"):
        fasuav.parse_config("scenario = rural\nuav.altitude = 100\nfas.aperture = -1\n")


def test_pipeline_and_simulation():
    c = fasuav.preset(fasuav.Scenario.rural)
    c.p2_dbm = 0.0
    c.p1_dbm = 15.0
    analytic = fasuav.average_bler(c)
    assert fasuav.error_floor(c) <= analytic <= 1.0
    est = fasuav.simulate(c, trials=20000, seed=3)
    assert est.trials_used == 20000
    assert 0.0 < est.mean < 1.0
    assert fasuav.simulate(c, trials=20000, seed=3).mean == est.mean


def test_bisection_with_python_evaluator():
    p0 = 0.01
    r = fasuav.min_power_bisection(lambda p: math.exp(-p / p0), 1e-6, 1.0, math.exp(-2.0))
    assert r.feasible
    assert abs(10 * math.log10(r.p_star / (2 * p0))) <= 0.01


def test_sweep_csv():
    c = fasuav.preset(fasuav.Scenario.urban)
    csv = fasuav.sweep(c, "N", [1, 10], ["closed", "ee"])
    rows = [l for l in csv.splitlines() if not l.startswith("#")]
    assert rows[0] == "N_ports,closed,ee_bits_per_J,causality_ok"
    assert rows[2].endswith("false")


def test_trajectory_average():
    assert fasuav.trajectory_average(lambda t: math.sin(t) ** 2, 128) == pytest.approx(0.5, abs=1e-9)
