import math

import numpy as np
import pytest

from hsswitness.errors import NonContractiveAmplitude
from hsswitness.linalg import is_density
from hsswitness.models import v_type as vt
from hsswitness.models.v_type import VTypeParams
from hsswitness.speed import hss_numeric, trace_distance
from oracles import random_state, vtype_G


def test_G_at_zero():
    gp, gm = vt.amplitudes(VTypeParams(1, 0.3, 0.6), 0.0)
    assert gp == pytest.approx(1.0) and gm == pytest.approx(1.0)


def test_G_minus_is_one_for_aligned_dipoles():
    t = np.linspace(0, 500, 1001)
    for theta in (1.0, -1.0):
        _, gm = vt.amplitudes(VTypeParams(1.0, 0.05, theta), t)
        assert np.allclose(gm, 1.0, atol=1e-12)


def test_G_equal_for_orthogonal_dipoles():
    t = np.linspace(0, 50, 101)
    gp, gm = vt.amplitudes(VTypeParams(1.0, 0.1, 0.0), t)
    assert np.array_equal(gp, gm)


@pytest.mark.parametrize("lam,theta", [(5e-3, 0.6), (0.5, 0.3), (10.0, 0.9), (4.0, 0.0), (1.0, -0.4)])
def test_G_matches_oracle(lam, theta):
    p = VTypeParams(1.0, lam, theta)
    t = np.linspace(0, min(200.0, 200.0 / lam), 57)
    gp, gm = vt.amplitudes(p, t)
    assert np.allclose(gp.real, [vtype_G(1, lam, theta, x, +1) for x in t], atol=1e-12)
    assert np.allclose(gm.real, [vtype_G(1, lam, theta, x, -1) for x in t], atol=1e-12)
    assert np.max(np.abs(gp.imag)) < 1e-12


def test_continuity_across_degenerate_point():
    # d_+ = 0 at lam = 2 gamma (1 + theta)
    theta = 0.5
    lam0 = 2 * (1 + theta)
    t = np.linspace(0, 20, 81)
    at = vt.amplitudes(VTypeParams(1.0, lam0, theta), t)[0]
    for eps in (1e-9, -1e-9):
        near = vt.amplitudes(VTypeParams(1.0, lam0 + eps, theta), t)[0]
        assert np.max(np.abs(near - at)) < 1e-8
    assert np.allclose(at.real, np.exp(-lam0 * t / 2) * (1 + lam0 * t / 2), atol=1e-14)


def test_param_checks():
    with pytest.raises(ValueError):
        VTypeParams(1.0, 0.1, 1.5)
    with pytest.raises(ValueError):
        VTypeParams(1.0, -0.1, 0.5)


def test_evolve_identity_at_t0():
    rho = random_state(np.random.default_rng(1), 3)
    assert np.max(np.abs(vt.evolve(VTypeParams(1, 0.1, 0.4), rho, 0.0) - rho)) <= 1e-12


def test_trace_preserved_and_valid():
    rng = np.random.default_rng(2)
    for _ in range(40):
        p = VTypeParams(1.0, 10 ** rng.uniform(-3, 1), rng.uniform(-1, 1))
        out = vt.evolve(p, random_state(rng, 3), rng.uniform(0, 100))
        assert abs(np.trace(out) - 1) < 1e-10
        assert is_density(out, 1e-8)


def test_ground_population_grows_while_amplitudes_shrink():
    p = VTypeParams(1.0, 5.0, 0.3)  # weak coupling: |G_pm| decrease monotonically
    t = np.linspace(0, 10, 201)
    gp, gm = vt.amplitudes(p, t)
    assert np.all(np.diff(np.abs(gp)) <= 0) and np.all(np.diff(np.abs(gm)) <= 0)
    pops = vt.evolve(p, random_state(np.random.default_rng(3), 3), t)[:, 2, 2].real
    assert np.all(np.diff(pops) >= -1e-15)


def test_dark_branch_frozen():
    p = VTypeParams(1.0, 0.05, 1.0)
    v = np.array([0, 0.6, 0.8j])  # support on the G_- level and the ground level only
    rho = np.outer(v, v.conj())
    for t in (1.0, 37.0, 400.0):
        assert np.allclose(vt.evolve(p, rho, t), rho, atol=1e-12)


def test_non_contractive_amplitude():
    with pytest.raises(NonContractiveAmplitude):
        vt.kraus(1.1, 0.5)


def test_closed_forms_at_t0():
    hss, D = vt.hss_and_D(VTypeParams(1.0, 0.1, 0.6), 0.0)
    assert hss == pytest.approx(math.sqrt(2) / 3) and D == pytest.approx(1.0)


def test_aligned_dipoles_ratio():
    t = np.linspace(0, 300, 601)
    for theta in (1.0, -1.0):
        hss, D = vt.hss_and_D(VTypeParams(1.0, 5e-3, theta), t)
        assert np.allclose(hss, math.sqrt(2) / 3 * D, atol=1e-12)


def test_hss_matches_numeric():
    rng = np.random.default_rng(4)
    for _ in range(50):
        p = VTypeParams(1.0, 10 ** rng.uniform(-3, 1), rng.uniform(-1, 1))
        t, phi = rng.uniform(0, 200), rng.uniform(0, 2 * math.pi)
        num = hss_numeric(lambda f: vt.evolve(p, vt.initial_state(f), t), phi)
        assert abs(num - vt.hss_and_D(p, t)[0]) < 1e-6


def test_trace_distance_of_pair():
    p = VTypeParams(1.0, 5e-3, 0.6)
    r1, r2 = vt.blp_pair()
    for t in (0.0, 12.0, 250.0):
        d = trace_distance(vt.evolve(p, r1, t), vt.evolve(p, r2, t))
        assert d == pytest.approx(vt.hss_and_D(p, t)[1], abs=1e-10)


def test_shared_zeros_fig2_regime():
    p = VTypeParams(1.0, 5e-3, 0.6)
    t = np.arange(0, 3000, 0.05)
    hss, D = vt.hss_and_D(p, t)
    # both carry the factor |G_+|, so they vanish together
    assert np.allclose(hss / np.sqrt(np.abs(vt.amplitudes(p, t)[1]) ** 2 + 1) * 3, D, atol=1e-12)
