import math

import numpy as np
import pytest

import n32

SPEC = n32.QuadratureSpec(radius=70.0, nodes=12, tolerance=1e-6)


def test_group_law():
    g = (1.0, 0.0, 0.0, 0.0, 0.0, 0.0)
    h = (0.0, 1.0, 0.0, 0.0, 0.0, 0.0)
    assert n32.multiply(g, h)[5] == pytest.approx(0.5)
    k = (0.3, -1.0, 2.0, 0.5, 0.1, -0.7)
    assert np.allclose(n32.multiply(k, n32.inverse(k)), 0.0)
    assert n32.dilate(2.0, k)[3] == pytest.approx(2.0)


def test_kernel_origin_and_scaling():
    assert n32.p1_raw((0, 0, 0), (0, 0, 0)) == pytest.approx(n32.raw_value_at_origin(), rel=1e-9)
    g = (0.4, -0.2, 0.1, 0.3, 0.0, -0.5)
    p = n32.p_t(1.0, g, SPEC)
    assert p > 0
    assert n32.p_t(4.0, n32.dilate(2.0, g), SPEC) == pytest.approx(p / 2**9, rel=1e-9)


def test_kernel_errors():
    with pytest.raises(ValueError):
        n32.p_t(-1.0, (0,) * 6)
    with pytest.raises(n32.ConvergenceError):
        n32.grad_p_t(1.0, (0,) * 6, n32.QuadratureSpec(radius=10, nodes=2))


def test_sampler_moments():
    s = n32.simulate(t=1.0, dt=0.01, n_paths=20000, seed=3)
    assert s.shape == (20000, 6)
    r1 = (s[:, :3] ** 2).sum(axis=1)
    assert abs(r1.mean() - 6) < 3 * r1.std() / math.sqrt(len(r1))
    assert np.array_equal(s, n32.simulate(t=1.0, dt=0.01, n_paths=20000, seed=3))


def test_distance():
    assert n32.cc_distance((3, 4, 0, 0, 0, 0))["d"] == pytest.approx(5)
    d = n32.cc_distance((0, 0, 0, 0, 0, 1.0))
    assert d["d"] == pytest.approx(math.sqrt(4 * math.pi), rel=1e-3)
    assert d["lower"] <= d["d"] <= d["upper"]


def test_suites_and_audits():
    assert n32.suite("bracket_table")["passed"]
    assert n32.suite("radial_tables")["passed"]
    assert n32.suite("cd_gap", n=200)["detail"]["negative"] == 0
    rp = n32.reverse_poincare(t=1.0, n_paths=5000)
    x1 = rp["points"][0]
    assert x1["label"] == "x1"
    assert abs(x1["value"] - 2.0) <= 3 * x1["stderr"]
    ly = n32.li_yau([1.0], n=3, spec=SPEC)
    assert ly["passed"] and ly["feasible"]


def test_cli_entry(tmp_path):
    out = tmp_path / "d.json"
    assert n32.cli(["--out", str(out), "dist", "eval", "--x", "1,0,0"]) == 0
    assert out.exists() and (tmp_path / "d.json.manifest.json").exists()
    assert n32.cli(["nonsense"]) == 2
