"""Small dense complex linear algebra.

Matrices are plain ``numpy`` arrays of dtype ``complex``. The Hermitian
eigensolver is a cyclic Jacobi iteration, which is plenty for the 2x2 to 4x4
states handled here and keeps the trace norm independent of LAPACK.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import tolerances as tol
from .errors import ConvergenceFailure, NonHermitianInput, NotAState

MAX_DIM = 8


@dataclass(frozen=True)
class HermEigen:
    """Eigenpairs of a Hermitian matrix.

    ``eigenvalues`` are ascending; ``eigenvectors[:, k]`` belongs to
    ``eigenvalues[k]`` and has its first nonzero component real positive.
    """

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray

    def reconstruct(self) -> np.ndarray:
        v = self.eigenvectors
        return (v * self.eigenvalues) @ v.conj().T


def as_matrix(m) -> np.ndarray:
    a = np.asarray(m, dtype=complex)
    if a.ndim != 2 or a.shape[0] != a.shape[1] or a.shape[0] < 1:
        raise ValueError(f"expected a square matrix, got shape {a.shape}")
    return a


def hermiticity_defect(m: np.ndarray) -> float:
    """max |m_ij - conj(m_ji)|."""
    return float(np.max(np.abs(m - m.conj().T))) if m.size else 0.0


def herm_eig(h, max_sweeps: int = tol.JACOBI_MAX_SWEEPS) -> HermEigen:
    """Diagonalize a Hermitian matrix with cyclic complex Jacobi rotations.

    Raises NonHermitianInput when the asymmetry exceeds 1e-8 and
    ConvergenceFailure when ``max_sweeps`` sweeps do not reduce the
    off-diagonal Frobenius norm below ``1e-14 * ||H||_F``.
    """
    a = as_matrix(h)
    n = a.shape[0]
    if n > MAX_DIM:
        raise ValueError(f"herm_eig supports dim <= {MAX_DIM}, got {n}")
    defect = hermiticity_defect(a)
    if defect > tol.NON_HERMITIAN_TOL:
        raise NonHermitianInput(f"matrix is not Hermitian (defect {defect:.3e})")
    a = 0.5 * (a + a.conj().T)
    v = np.eye(n, dtype=complex)

    scale = np.linalg.norm(a)
    if n > 1 and scale > 0.0:
        target = 1e-14 * scale
        for _ in range(max_sweeps):
            off = np.sqrt(max(scale**2 - np.sum(np.abs(np.diag(a)) ** 2), 0.0))
            # the cheap estimate above loses accuracy near convergence
            if off < 1e-6 * scale:
                off = np.linalg.norm(a - np.diag(np.diag(a)))
            if off <= target:
                break
            for p in range(n - 1):
                for q in range(p + 1, n):
                    _rotate(a, v, p, q, scale)
        else:
            off = np.linalg.norm(a - np.diag(np.diag(a)))
            if off > target:
                raise ConvergenceFailure(
                    f"Jacobi did not converge in {max_sweeps} sweeps (off-norm {off:.3e})"
                )

    evals = np.real(np.diag(a)).copy()
    order = np.argsort(evals, kind="stable")
    evals = evals[order]
    v = v[:, order]
    for k in range(n):
        col = v[:, k]
        nz = np.flatnonzero(np.abs(col) > 1e-12)
        if nz.size:
            z = col[nz[0]]
            v[:, k] = col * (np.conj(z) / abs(z))
    return HermEigen(evals, v)


def _rotate(a: np.ndarray, v: np.ndarray, p: int, q: int, scale: float) -> None:
    apq = a[p, q]
    mag = abs(apq)
    if mag <= 1e-300 or mag <= 1e-18 * scale:
        return
    phase = apq / mag
    app = a[p, p].real
    aqq = a[q, q].real
    theta = (aqq - app) / (2.0 * mag)
    if theta == 0.0:
        t = 1.0
    else:
        t = np.copysign(1.0, theta) / (abs(theta) + np.sqrt(theta * theta + 1.0))
    c = 1.0 / np.sqrt(1.0 + t * t)
    s = t * c
    ph = np.conj(phase)
    # unitary acting on columns p, q: diag(1, e^{-i arg a_pq}) times a real rotation
    j = np.array([[c, s], [-s * ph, c * ph]])
    idx = [p, q]
    a[:, idx] = a[:, idx] @ j
    a[idx, :] = j.conj().T @ a[idx, :]
    v[:, idx] = v[:, idx] @ j
    a[p, q] = a[q, p] = 0.0
    a[p, p] = a[p, p].real
    a[q, q] = a[q, q].real


def trace_norm(m) -> float:
    """Sum of absolute eigenvalues of a Hermitian matrix."""
    return float(np.sum(np.abs(herm_eig(m).eigenvalues)))


def kron(a, b) -> np.ndarray:
    """Tensor product with the first factor's index major."""
    return np.kron(as_matrix(a), as_matrix(b))


def validate_density(m, tol_: float | None = None) -> np.ndarray:
    """Return ``m`` as a density matrix or raise NotAState.

    Without ``tol_`` the default invariants apply (hermiticity 1e-12, trace
    1e-10, positivity 1e-10); with it, the single value is used for all three.
    """
    if tol_ is not None and tol_ <= 0:
        raise ValueError("tolerance must be positive")
    h_tol = tol.HERMITICITY_TOL if tol_ is None else tol_
    t_tol = tol.TRACE_TOL if tol_ is None else tol_
    p_tol = tol.POSITIVITY_TOL if tol_ is None else tol_

    a = as_matrix(m)
    defect = hermiticity_defect(a)
    if defect > h_tol:
        raise NotAState("hermiticity", defect)
    trace_err = abs(np.trace(a) - 1.0)
    if trace_err > t_tol:
        raise NotAState("trace", trace_err)
    a = 0.5 * (a + a.conj().T)
    lo = herm_eig(a).eigenvalues[0]
    if lo < -p_tol:
        raise NotAState("positivity", -lo)
    return a


def is_density(m, tol_: float | None = None) -> bool:
    try:
        validate_density(m, tol_)
    except NotAState:
        return False
    return True


def pure_state(vec) -> np.ndarray:
    """|psi><psi| for a (not necessarily normalized) state vector."""
    psi = np.asarray(vec, dtype=complex)
    psi = psi / np.linalg.norm(psi)
    return np.outer(psi, psi.conj())


def trace_distance_stack(rho1, rho2):
    """Trace distance of matching states in two stacks ``(..., n, n)``."""
    a = np.asarray(rho1, dtype=complex)
    b = np.asarray(rho2, dtype=complex)
    diff = a - b
    if diff.ndim == 2:
        return 0.5 * trace_norm(diff)
    flat = diff.reshape((-1,) + diff.shape[-2:])
    out = np.array([0.5 * trace_norm(m) for m in flat])
    return out.reshape(diff.shape[:-2])
