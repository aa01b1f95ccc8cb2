"""Dense complex-matrix kernel for one- and two-qubit operators.

Everything works on plain numpy arrays: 2x2 or 4x4 complex matrices.
The two-qubit basis is ordered |00>, |01>, |10>, |11>, with detector A
as the first (slow) tensor factor. All functions are pure.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

HERMITICITY_TOL = 1e-12
TRACE_TOL = 1e-12
POSITIVITY_TOL = 1e-10
DEGENERACY_TOL = 1e-9

_SIGMA_X = np.array([[0.0, 1.0], [1.0, 0.0]], dtype=complex)
_SIGMA_Y = np.array([[0.0, -1.0j], [1.0j, 0.0]], dtype=complex)
_SIGMA_Z = np.array([[1.0, 0.0], [0.0, -1.0]], dtype=complex)
_PAULI = (_SIGMA_X, _SIGMA_Y, _SIGMA_Z)

IDENTITY_2 = np.eye(2, dtype=complex)
IDENTITY_4 = np.eye(4, dtype=complex)


def pauli(index: int) -> np.ndarray:
    """Pauli matrix sigma_index for index 1 (x), 2 (y) or 3 (z)."""
    if index not in (1, 2, 3):
        raise ValueError(f"pauli index must be 1, 2 or 3 (got {index!r})")
    return _PAULI[index - 1].copy()


def kron(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Tensor product of two 2x2 matrices; `a` acts on the first qubit."""
    a = np.asarray(a, dtype=complex)
    b = np.asarray(b, dtype=complex)
    if a.shape != (2, 2) or b.shape != (2, 2):
        raise ValueError(f"expected two 2x2 matrices, got {a.shape} and {b.shape}")
    return np.kron(a, b)


@dataclass(frozen=True)
class DensityReport:
    """Outcome of validating a candidate density matrix."""

    hermiticity_error: float
    trace_error: float
    min_eigenvalue: float
    hermiticity_tol: float = HERMITICITY_TOL
    trace_tol: float = TRACE_TOL
    positivity_tol: float = POSITIVITY_TOL

    @property
    def ok(self) -> bool:
        return not self.violations()

    def violations(self) -> list[str]:
        out = []
        if self.hermiticity_error > self.hermiticity_tol:
            out.append(f"hermiticity violated by {self.hermiticity_error:.3e}")
        if self.trace_error > self.trace_tol:
            out.append(f"unit trace violated by {self.trace_error:.3e}")
        if self.min_eigenvalue < -self.positivity_tol:
            out.append(f"positivity violated by {-self.min_eigenvalue:.3e}")
        return out


def validate_density(
    m: np.ndarray,
    hermiticity_tol: float = HERMITICITY_TOL,
    trace_tol: float = TRACE_TOL,
    positivity_tol: float = POSITIVITY_TOL,
) -> DensityReport:
    """Check Hermiticity, unit trace and positivity; report the misses.

    Never raises: callers decide what to do with the report.
    """
    m = np.asarray(m, dtype=complex)
    if m.ndim != 2 or m.shape[0] != m.shape[1] or m.shape[0] not in (2, 4):
        raise ValueError(f"expected a square 2x2 or 4x4 matrix, got shape {m.shape}")
    herm_err = float(np.abs(m - m.conj().T).max())
    trace_err = float(abs(np.trace(m) - 1.0))
    min_eig = float(np.linalg.eigvalsh(0.5 * (m + m.conj().T)).min())
    return DensityReport(herm_err, trace_err, min_eig, hermiticity_tol, trace_tol, positivity_tol)


def assert_density(m: np.ndarray, name: str = "state", **tols: float) -> np.ndarray:
    """Validate `m` as a density matrix, raising ValueError on failure."""
    report = validate_density(m, **tols)
    if not report.ok:
        raise ValueError(f"{name} is not a valid density matrix: " + "; ".join(report.violations()))
    return np.asarray(m, dtype=complex)


def partial_trace(rho: np.ndarray, side: str, validate: bool = True) -> np.ndarray:
    """Trace out one qubit of a two-qubit density matrix.

    `side` names the qubit that is removed: "A" keeps the second factor,
    "B" keeps the first.
    """
    if side not in ("A", "B"):
        raise ValueError(f"side must be 'A' or 'B' (got {side!r})")
    rho = np.asarray(rho, dtype=complex)
    if rho.shape != (4, 4):
        raise ValueError(f"expected a 4x4 matrix, got shape {rho.shape}")
    if validate:
        assert_density(rho, name="partial_trace input")
    r = rho.reshape(2, 2, 2, 2)
    if side == "A":
        return np.trace(r, axis1=0, axis2=2)
    return np.trace(r, axis1=1, axis2=3)


@dataclass(frozen=True)
class EigenSystem2:
    """Eigendecomposition of a Hermitian 2x2 matrix.

    Eigenvalues are sorted descending; eigenvectors are the matching
    columns of `eigenvectors`, each with its first nonzero component
    made real and positive so the basis is reproducible.
    """

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray
    degenerate: bool


def _fix_phase(v: np.ndarray) -> np.ndarray:
    for comp in v:
        if abs(comp) > 1e-12:
            return v * (comp.conjugate() / abs(comp))
    return v


def eigensystem2(m: np.ndarray, degeneracy_tol: float = DEGENERACY_TOL) -> EigenSystem2:
    """Closed-form eigensystem of a Hermitian 2x2 matrix.

    Uses the quadratic formula rather than an iterative solver so the
    result is exact (to rounding) and fully deterministic.
    """
    m = np.asarray(m, dtype=complex)
    if m.shape != (2, 2):
        raise ValueError(f"expected a 2x2 matrix, got shape {m.shape}")
    if np.abs(m - m.conj().T).max() > 1e-10:
        raise ValueError("eigensystem2 requires a Hermitian matrix (within 1e-10)")

    a = m[0, 0].real
    d = m[1, 1].real
    b = 0.5 * (m[0, 1] + np.conj(m[1, 0]))  # symmetrized off-diagonal
    mean = 0.5 * (a + d)
    half_gap = float(np.hypot(0.5 * (a - d), abs(b)))
    lam1, lam2 = mean + half_gap, mean - half_gap
    degenerate = (lam1 - lam2) <= degeneracy_tol

    if half_gap == 0.0:
        vecs = np.eye(2, dtype=complex)
    else:
        # Two algebraically equivalent eigenvector candidates; pick the
        # better-conditioned one (their combined norm is always 2*half_gap).
        c1 = np.array([b, lam1 - a], dtype=complex)
        c2 = np.array([lam1 - d, np.conj(b)], dtype=complex)
        v1 = c1 if np.linalg.norm(c1) >= np.linalg.norm(c2) else c2
        v1 = v1 / np.linalg.norm(v1)
        v1 = _fix_phase(v1)
        v2 = _fix_phase(np.array([-np.conj(v1[1]), np.conj(v1[0])]))
        vecs = np.stack([v1, v2], axis=1)
    return EigenSystem2(np.array([lam1, lam2]), vecs, bool(degenerate))


def trace_distance(a: np.ndarray, b: np.ndarray) -> float:
    """Half the sum of absolute eigenvalues of (a - b)."""
    d = np.asarray(a, dtype=complex) - np.asarray(b, dtype=complex)
    d = 0.5 * (d + d.conj().T)
    return 0.5 * float(np.abs(np.linalg.eigvalsh(d)).sum())
