import math

import numpy as np
import pytest

from hsswitness.linalg import is_density
from hsswitness.models import phase_covariant as pc
from hsswitness.models.phase_covariant import PhaseCovariantParams
from hsswitness.models.rates import RateProfile
from hsswitness.numerics import Grid, Series, central_diff
from hsswitness.speed import hss_numeric

C = RateProfile.constant
COS = RateProfile.cosine


def probe(phi):
    # (e^{i phi}|+> + |->)/sqrt2 written out in the {|1>, |0>} order
    plus = np.array([1, 1]) / math.sqrt(2)
    minus = np.array([-1, 1]) / math.sqrt(2)
    psi = (np.exp(1j * phi) * plus + minus) / math.sqrt(2)
    return np.outer(psi, psi.conj())


def hss_oracle(gamma, gamma_tilde, phi):
    return 0.5 * np.sqrt(np.exp(-2 * gamma) * math.sin(phi) ** 2 + np.exp(-gamma - 2 * gamma_tilde) * math.cos(phi) ** 2)


def test_initial_state_layout():
    for phi in (0.0, 0.4, math.pi / 2):
        assert np.allclose(pc.initial_state(phi), probe(phi), atol=1e-15)
    # P1(0) = (1 - cos phi)/2 for the excited level listed first
    assert pc.initial_state(0.0)[0, 0].real == pytest.approx(0.0, abs=1e-15)


def test_t0_identity():
    p = PhaseCovariantParams(C(0.3), COS(0.2, 0.5, 2), C(0.1), C(3.0))
    for phi in (0.0, 1.1, 2.5):
        assert np.max(np.abs(pc.evolve(p, phi, 0.0) - probe(phi))) <= 1e-12


def test_closed_dynamics():
    p = PhaseCovariantParams(C(0), C(0), C(0))
    for t in (0.5, 3.0):
        assert np.allclose(pc.evolve(p, 0.9, t), probe(0.9), atol=1e-14)


def test_coherence_decay_example():
    p = PhaseCovariantParams(C(1), C(1), C(0))
    rho = pc.evolve(p, math.pi / 2, 1.0)
    assert abs(rho[0, 1]) == pytest.approx(0.5 * math.exp(-0.5), abs=1e-10)


def test_chi_half_pi_constant():
    p = PhaseCovariantParams(C(1), C(1), C(0))
    t = np.linspace(0, 5, 11)
    assert np.allclose(pc.chi(p, math.pi / 2, t), -0.5 * np.exp(-t), atol=1e-10)


def test_chi_zero_phase_positive_when_combination_negative():
    p = PhaseCovariantParams(C(0.2), C(0.2), COS(0, 1, 1))
    t_star = math.pi  # gamma1 + gamma2 + 4 gamma3 = 0.4 - 4 < 0
    assert pc.chi(p, 0.0, t_star) > 0


def test_eternal_never_positive():
    p = PhaseCovariantParams.eternal()
    assert p.gamma3(1.0) == pytest.approx(-0.5 * math.tanh(1.0))
    t = np.linspace(0, 10, 2001)
    prop = pc.propagator(p, t)
    for phi in (0.0, math.pi / 2):
        assert np.max(pc.chi(p, phi, t, prop)) <= 0.0


def test_hss_matches_oracle():
    p = PhaseCovariantParams(C(0.4), COS(0.3, 0.2, 1.5), C(0.25), C(1.0))
    t = np.linspace(0, 4, 9)
    prop = pc.propagator(p, t)
    gamma = 0.5 * (0.4 * t + 0.3 * t + 0.2 * np.sin(1.5 * t) / 1.5)
    assert np.allclose(prop.gamma, gamma, atol=1e-10)
    assert np.allclose(prop.gamma_tilde, 0.25 * t, atol=1e-10)
    assert np.allclose(prop.omega, 2 * t, atol=1e-10)
    for phi in (0.0, 0.7, math.pi / 2):
        assert np.allclose(pc.hss(p, phi, t, prop), hss_oracle(gamma, 0.25 * t, phi), atol=1e-10)


def test_hss_matches_numeric():
    rng = np.random.default_rng(21)
    for _ in range(10):
        g1, g2, g3 = rng.uniform(0, 1, 3)
        p = PhaseCovariantParams(C(g1), COS(g2, 0.5 * g2, 2.0), C(g3))
        phi, t = rng.uniform(0, 2 * math.pi), rng.uniform(0, 3)
        prop = pc.propagator(p, t)
        got = hss_numeric(lambda f: pc.apply(prop, pc.initial_state(f)), phi)
        assert got == pytest.approx(pc.hss(p, phi, t, prop), abs=1e-8)


def test_chi_matches_central_diff():
    p = PhaseCovariantParams(C(0.1), COS(0, 1, 1), C(0.05))
    g = Grid.span(8, 1e-3)
    prop = pc.propagator(p, g.times)
    for phi in (0.0, 1.0, math.pi / 2):
        num = central_diff(Series(g, pc.hss(p, phi, g.times, prop))).values
        assert np.max(np.abs(num - pc.chi(p, phi, g.times, prop))[1:-1]) < 1e-6


def test_scalar_and_array_propagator_agree():
    p = PhaseCovariantParams(C(0.3), COS(0.2, 0.5, 2), C(0.1))
    t = np.array([0.0, 0.5, 1.7, 3.0])
    arr = pc.propagator(p, t)
    for k, tk in enumerate(t):
        one = pc.propagator(p, tk)
        for a, b in zip(arr, one):
            assert a[k] == pytest.approx(b, abs=1e-9)
    # arrays that do not start at 0 are handled too
    late = pc.propagator(p, t[1:])
    assert np.allclose(late.g, arr.g[1:], atol=1e-12)


def test_commutative_populations():
    # gamma1 = gamma2 = gamma: P1 - 1/2 relaxes as e^{-int gamma}
    gamma = COS(1.0, 0.5, 1.0)
    p = PhaseCovariantParams(gamma, gamma, C(0.2))
    t = np.linspace(0, 4, 9)
    rho = pc.evolve(p, 2.0, t)
    p10 = (1 - math.cos(2.0)) / 2
    expected = 0.5 + (p10 - 0.5) * np.exp(-(t + 0.5 * np.sin(t)))
    assert np.allclose(rho[:, 0, 0].real, expected, atol=1e-10)


def test_states_valid_for_nonnegative_constant_rates():
    rng = np.random.default_rng(22)
    for _ in range(40):
        g1, g2, g3 = rng.uniform(0, 2, 3)
        p = PhaseCovariantParams(C(g1), C(g2), C(g3), C(rng.uniform(-1, 1)))
        rho = pc.evolve(p, rng.uniform(0, 2 * math.pi), rng.uniform(0, 5))
        assert is_density(rho)


def test_blp_pair_tangent():
    r1, r2 = pc.blp_pair(0.3)
    assert np.allclose(r1 - r2, 2 * pc.initial_derivative(0.3), atol=1e-14)
    p = PhaseCovariantParams(C(0.3), C(0.6), C(0.1))
    t = np.linspace(0, 3, 7)
    assert np.allclose(pc.trace_distance(p, 0.3, t), 2 * pc.hss(p, 0.3, t), atol=1e-12)
