import numpy as np
import pytest

from hsswitness.errors import ConvergenceFailure, NonHermitianInput, NotAState
from hsswitness.linalg import herm_eig, is_density, kron, pure_state, trace_distance_stack, trace_norm, validate_density
from oracles import cubic_eigenvalues, random_hermitian, random_state, random_unitary

KET0 = np.array([1, 0], dtype=complex)
KET1 = np.array([0, 1], dtype=complex)
PLUS = (KET0 + KET1) / np.sqrt(2)


def test_diagonal():
    e = herm_eig(np.diag([1.0, 2.0]))
    assert np.allclose(e.eigenvalues, [1, 2])
    assert np.allclose(e.eigenvectors, np.eye(2))


def test_pauli_x():
    e = herm_eig([[0, 1], [1, 0]])
    assert np.allclose(e.eigenvalues, [-1, 1], atol=1e-14)


def test_cubic_oracle():
    rng = np.random.default_rng(7)
    a = rng.normal(size=(3, 3)) + 1j * rng.normal(size=(3, 3))
    h = a + a.conj().T
    assert np.max(np.abs(herm_eig(h).eigenvalues - cubic_eigenvalues(h))) < 1e-9


def test_cubic_oracle_many():
    rng = np.random.default_rng(8)
    for _ in range(200):
        h = random_hermitian(rng, 3)
        assert np.max(np.abs(herm_eig(h).eigenvalues - cubic_eigenvalues(h))) < 1e-9


def test_reconstruction_and_orthonormality_10k():
    rng = np.random.default_rng(2024)
    worst_rec = worst_orth = 0.0
    for k in range(10_000):
        n = 2 + k % 3
        h = random_hermitian(rng, n, scale=10.0 ** rng.uniform(-3, 3))
        e = herm_eig(h)
        v = e.eigenvectors
        rec = np.linalg.norm(e.reconstruct() - h) / max(1.0, np.linalg.norm(h))
        orth = np.max(np.abs(v.conj().T @ v - np.eye(n)))
        worst_rec, worst_orth = max(worst_rec, rec), max(worst_orth, orth)
        assert np.all(np.diff(e.eigenvalues) >= 0)
    assert worst_rec <= 1e-10
    assert worst_orth <= 1e-10


def test_degenerate_and_dim8():
    rng = np.random.default_rng(3)
    u = random_unitary(rng, 8)
    d = np.array([1, 1, 1, 2, 2, -3, 0, 0], dtype=float)
    h = u @ np.diag(d) @ u.conj().T
    e = herm_eig(h)
    assert np.allclose(e.eigenvalues, np.sort(d), atol=1e-12)
    assert np.linalg.norm(e.reconstruct() - h) < 1e-10


def test_phase_normalization():
    rng = np.random.default_rng(4)
    e = herm_eig(random_hermitian(rng, 4))
    for k in range(4):
        col = e.eigenvectors[:, k]
        first = col[np.flatnonzero(np.abs(col) > 1e-12)[0]]
        assert abs(first.imag) < 1e-14 and first.real > 0


def test_deterministic():
    rng = np.random.default_rng(5)
    h = random_hermitian(rng, 4)
    a, b = herm_eig(h), herm_eig(h.copy())
    assert np.array_equal(a.eigenvalues, b.eigenvalues)
    assert np.array_equal(a.eigenvectors, b.eigenvectors)


def test_non_hermitian_rejected():
    with pytest.raises(NonHermitianInput):
        herm_eig([[0, 1], [0, 0]])
    # small asymmetry within 1e-8 is accepted
    herm_eig(np.array([[0, 1 + 1e-10], [1, 0]]))


def test_convergence_budget():
    rng = np.random.default_rng(6)
    with pytest.raises(ConvergenceFailure):
        herm_eig(random_hermitian(rng, 6), max_sweeps=1)


def test_trace_norm_examples():
    assert trace_norm(np.diag([0.5, -0.5])) == pytest.approx(1.0, abs=1e-15)
    assert trace_norm(np.zeros((3, 3))) == 0.0
    diff = np.outer(KET0, KET0) - np.outer(PLUS, PLUS)
    assert trace_norm(diff) == pytest.approx(np.sqrt(2), abs=1e-14)


def test_trace_norm_unitary_invariance():
    rng = np.random.default_rng(11)
    for _ in range(300):
        n = int(rng.integers(2, 5))
        m = random_hermitian(rng, n)
        u = random_unitary(rng, n)
        assert abs(trace_norm(m) - trace_norm(u @ m @ u.conj().T)) < 1e-9


def test_trace_norm_triangle():
    rng = np.random.default_rng(12)
    for _ in range(300):
        n = int(rng.integers(2, 5))
        a, b = random_hermitian(rng, n), random_hermitian(rng, n)
        assert trace_norm(a + b) <= trace_norm(a) + trace_norm(b) + 1e-9


def test_kron_examples():
    assert np.array_equal(kron(np.eye(2), np.eye(2)), np.eye(4))
    assert np.array_equal(kron(np.diag([1, 2]), np.diag([3, 4])), np.diag([3, 4, 6, 8]).astype(complex))
    m = kron(np.outer(KET0, KET0), np.outer(KET1, KET1))
    expected = np.zeros((4, 4))
    expected[1, 1] = 1
    assert np.array_equal(m, expected)


def test_validate_density():
    assert np.allclose(validate_density(np.eye(2) / 2), np.eye(2) / 2)
    with pytest.raises(NotAState) as err:
        validate_density(np.diag([1.5, -0.5]))
    assert err.value.invariant == "positivity"
    assert err.value.magnitude == pytest.approx(0.5, abs=1e-12)
    with pytest.raises(NotAState) as err:
        validate_density(np.diag([0.5, 0.6]))
    assert err.value.invariant == "trace"
    with pytest.raises(NotAState) as err:
        validate_density(np.array([[0.5, 0.1], [0.2, 0.5]]))
    assert err.value.invariant == "hermiticity"
    assert err.value.magnitude == pytest.approx(0.1)


def test_validate_density_tolerance():
    rho = np.diag([1 + 1e-9, -1e-9])
    assert not is_density(rho)
    assert is_density(rho, 1e-8)


def test_random_states_valid():
    rng = np.random.default_rng(13)
    for n in (2, 3, 4):
        for rank in range(1, n + 1):
            assert is_density(random_state(rng, n, rank))


def test_pure_state_and_stack():
    rho = pure_state([1, 1])
    assert np.allclose(rho, np.full((2, 2), 0.5))
    a = np.array([np.outer(KET0, KET0), np.outer(PLUS, PLUS)])
    b = np.array([np.outer(KET1, KET1), np.outer(KET0, KET0)])
    d = trace_distance_stack(a, b)
    assert d.shape == (2,)
    assert d[0] == pytest.approx(1.0)
    assert d[1] == pytest.approx(np.sqrt(2) / 2)
