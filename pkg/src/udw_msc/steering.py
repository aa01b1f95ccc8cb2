"""Measurements on detector A, steered states of detector B, and
maximal steered coherence (MSC).

Coherence is the l1 off-diagonal sum of B's post-measurement state in a
reference basis, normally the eigenbasis of B's reduced state. MSC
maximizes that coherence over A's measurements. When B's reduced state
is degenerate the eigenbasis is ambiguous and the value is defined as
the infimum over reference bases of the measurement maximum.

Two routes are provided: a closed form valid for the X-shaped steady
states, and a grid-plus-refinement numeric maximizer for arbitrary
two-qubit densities that serves as its independent check.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from ._golden import golden_section_max
from .qmat import assert_density, eigensystem2, partial_trace
from .udw_state import XStateCoeffs

PROB_FLOOR = 1e-12

_TWO_PI = 2.0 * math.pi


class UnreachableOutcomeError(ValueError):
    """Measurement outcome whose probability is below the floor."""

    def __init__(self, probability: float):
        super().__init__(
            f"outcome probability {probability:.3e} is below the floor {PROB_FLOOR:.0e}; "
            "the steered state is undefined"
        )
        self.probability = probability


@dataclass(frozen=True)
class MeasurementDirection:
    """Bloch-sphere direction (polar theta in [0, pi], azimuth phi in [0, 2pi))."""

    theta: float
    phi: float

    def __post_init__(self):
        if not (0.0 <= self.theta <= math.pi):
            raise ValueError(f"theta must lie in [0, pi] (got {self.theta!r})")
        if not (0.0 <= self.phi < _TWO_PI):
            raise ValueError(f"phi must lie in [0, 2pi) (got {self.phi!r})")

    @property
    def unit_vector(self) -> np.ndarray:
        st = math.sin(self.theta)
        return np.array([st * math.cos(self.phi), st * math.sin(self.phi), math.cos(self.theta)])


@dataclass(frozen=True)
class SteeredOutcome:
    """Post-measurement state of detector B and the outcome probability."""

    state: np.ndarray
    probability: float


@dataclass(frozen=True)
class ReferenceBasis:
    """Orthonormal qubit basis; columns of `vectors` are the basis kets.

    `degenerate` records that the reduced state the basis refers to was
    degenerate, i.e. the basis was selected by the infimum rather than
    fixed by the eigendecomposition.
    """

    vectors: np.ndarray
    degenerate: bool = False

    def __post_init__(self):
        v = np.asarray(self.vectors, dtype=complex)
        if v.shape != (2, 2):
            raise ValueError(f"expected a 2x2 matrix of column vectors, got {v.shape}")
        gram = v.conj().T @ v
        if np.abs(gram - np.eye(2)).max() > 1e-12:
            raise ValueError("basis vectors must be orthonormal within 1e-12")


@dataclass(frozen=True)
class MscResult:
    """MSC value with the optimizing measurement direction.

    `optimal_phi` is None when the value does not depend on the azimuth.
    """

    value: float
    optimal_theta: float
    optimal_phi: float | None
    basis_used: ReferenceBasis
    method: str


@dataclass(frozen=True)
class AngleGrid:
    """Resolution of the numeric maximizer.

    `n_theta` x `n_phi` measurement grid, `n_axis` reference-basis axes
    for the degenerate branch, golden-section tolerance for the polar
    refinement.
    """

    n_theta: int = 181
    n_phi: int = 24
    n_axis: int = 400
    theta_refine_tol: float = 1e-12

    def __post_init__(self):
        if self.n_theta < 3 or self.n_phi < 1 or self.n_axis < 8:
            raise ValueError(f"grid too coarse: {self!r}")


def _projector_stack(theta: np.ndarray, phi: np.ndarray) -> np.ndarray:
    """Rank-1 projectors (I + m.sigma)/2 for broadcastable angle arrays."""
    st, ct = np.sin(theta), np.cos(theta)
    mx, my, mz = st * np.cos(phi), st * np.sin(phi), ct
    out = np.empty(np.shape(theta) + (2, 2), dtype=complex)
    out[..., 0, 0] = 0.5 * (1.0 + mz)
    out[..., 0, 1] = 0.5 * (mx - 1j * my)
    out[..., 1, 0] = 0.5 * (mx + 1j * my)
    out[..., 1, 1] = 0.5 * (1.0 - mz)
    return out


def bloch_projector(d: MeasurementDirection) -> np.ndarray:
    """Projector onto the +1 eigenstate of m.sigma for direction `d`."""
    return _projector_stack(np.float64(d.theta), np.float64(d.phi))


def _steered_blocks(rho: np.ndarray, measurements: np.ndarray):
    """Unnormalized steered B states tr_A[(M x I) rho] and probabilities.

    `measurements` is a stack (..., 2, 2) of operators on A.
    """
    rt = rho.reshape(2, 2, 2, 2)
    om = np.einsum("...ac,cbad->...bd", measurements, rt)
    p = np.einsum("...bb->...", om).real
    return om, p


def steer(rho: np.ndarray, measurement: np.ndarray) -> SteeredOutcome:
    """State of B after A obtains the outcome `measurement` on `rho`."""
    rho = assert_density(rho, name="steer input")
    if rho.shape != (4, 4):
        raise ValueError(f"expected a 4x4 density matrix, got shape {rho.shape}")
    m = np.asarray(measurement, dtype=complex)
    if m.shape != (2, 2):
        raise ValueError(f"measurement must be 2x2, got shape {m.shape}")
    if np.abs(m - m.conj().T).max() > 1e-10:
        raise ValueError("measurement operator must be Hermitian")
    om, p = _steered_blocks(rho, m)
    p = float(p)
    if p <= PROB_FLOOR:
        raise UnreachableOutcomeError(p)
    state = 0.5 * (om + om.conj().T) / p
    return SteeredOutcome(state, p)


def coherence(state: np.ndarray, basis: ReferenceBasis) -> float:
    """l1 off-diagonal sum of `state` in the given reference basis."""
    state = np.asarray(state, dtype=complex)
    v = basis.vectors
    t = v.conj().T @ state @ v
    return float(abs(t[0, 1]) + abs(t[1, 0]))


def basis_from_axis(theta: float, phi: float) -> ReferenceBasis:
    """Eigenbasis of m.sigma for the Bloch axis (theta, phi)."""
    c, s = math.cos(0.5 * theta), math.sin(0.5 * theta)
    ph = complex(math.cos(phi), math.sin(phi))
    plus = np.array([c, ph * s], dtype=complex)
    minus = np.array([-np.conj(ph) * s, c], dtype=complex)
    return ReferenceBasis(np.stack([plus, minus], axis=1))


def msc_closed_form(c: XStateCoeffs) -> MscResult:
    """MSC of an X-shaped state: |D| / sqrt((A + C)(C + B)).

    The optimum is reached at polar angle arccos((B - A) / (A + 2C + B))
    and is independent of the azimuth.
    """
    a, b, cc, d = c.a_pop, c.b_pop, c.c_pop, c.d_coh
    denom = (a + cc) * (cc + b)
    if d == 0.0:
        # Every steered state is diagonal; this also covers the corner
        # where a level of B empties out and the quotient would be 0/0.
        value = 0.0
    elif denom <= 0.0:
        raise ValueError("reduced state of B has an empty level; MSC closed form undefined")
    else:
        value = abs(d) / math.sqrt(denom)
    arg = (b - a) / (a + 2.0 * cc + b)
    theta = math.acos(min(1.0, max(-1.0, arg)))
    marginal = np.diag([a + cc, cc + b]).astype(complex)
    es = eigensystem2(marginal)
    return MscResult(
        value=value,
        optimal_theta=theta,
        optimal_phi=None,
        basis_used=ReferenceBasis(es.eigenvectors, es.degenerate),
        method="closed_form",
    )


def _measurement_grid(grid: AngleGrid):
    thetas = np.linspace(0.0, math.pi, grid.n_theta)
    phis = np.linspace(0.0, _TWO_PI, grid.n_phi, endpoint=False)
    th, ph = np.meshgrid(thetas, phis, indexing="ij")  # theta-major for tie-breaks
    return th.ravel(), ph.ravel()


def _coherence_on_grid(rho, th, ph, vectors):
    om, p = _steered_blocks(rho, _projector_stack(th, ph))
    ok = p > PROB_FLOOR
    t = np.einsum("ib,nbd,dj->nij", vectors.conj().T, om, vectors)
    with np.errstate(invalid="ignore", divide="ignore"):
        coh = np.where(ok, 2.0 * np.abs(t[:, 0, 1]) / p, -np.inf)
    return coh, ok, p


def _coherence_single(rho, theta, phi, vectors) -> float:
    om, p = _steered_blocks(rho, _projector_stack(np.float64(theta), np.float64(phi)))
    if p <= PROB_FLOOR:
        return -np.inf
    t = vectors.conj().T @ om @ vectors
    return 2.0 * abs(t[0, 1]) / float(p)


def _max_over_measurements(rho, vectors, grid: AngleGrid):
    """Grid search plus polar golden-section refinement at the best azimuth."""
    th, ph = _measurement_grid(grid)
    coh, ok, p = _coherence_on_grid(rho, th, ph, vectors)
    if not ok.any():
        raise UnreachableOutcomeError(float(p.max()))
    k = int(np.argmax(coh))  # first occurrence: smallest theta, then smallest phi
    theta0, phi0 = float(th[k]), float(ph[k])
    span = math.pi / (grid.n_theta - 1)
    lo, hi = max(0.0, theta0 - span), min(math.pi, theta0 + span)
    theta_ref, val_ref = golden_section_max(
        lambda t: _coherence_single(rho, t, phi0, vectors),
        lo,
        hi,
        tol=grid.theta_refine_tol,
    )
    if val_ref >= coh[k]:
        return float(val_ref), float(theta_ref), phi0
    return float(coh[k]), theta0, phi0


def _fibonacci_sphere(n: int):
    k = np.arange(n)
    phi = (math.pi * (3.0 - math.sqrt(5.0)) * k) % _TWO_PI
    z = 1.0 - 2.0 * (k + 0.5) / n
    theta = np.arccos(np.clip(z, -1.0, 1.0))
    return theta, phi


def _steered_bloch_cloud(rho, grid: AngleGrid):
    """Bloch vectors of all steered states on the measurement grid."""
    th, ph = _measurement_grid(grid)
    om, p = _steered_blocks(rho, _projector_stack(th, ph))
    ok = p > PROB_FLOOR
    safe = np.where(ok, p, 1.0)
    rx = 2.0 * om[:, 0, 1].real / safe
    ry = -2.0 * om[:, 0, 1].imag / safe
    rz = (om[:, 0, 0] - om[:, 1, 1]).real / safe
    r = np.stack([rx, ry, rz], axis=1)
    return r, ok


def _infimum_over_bases(rho, grid: AngleGrid):
    """Min over reference-basis axes of the max steered coherence.

    The coherence of a qubit with Bloch vector r in the basis of axis n
    is the length of r's component perpendicular to n, so the inner
    maximization reduces to a projection over the precomputed cloud of
    steered Bloch vectors. The outer axis search runs on a Fibonacci
    sphere and is tightened by a fixed-schedule pattern search.
    """
    r, ok = _steered_bloch_cloud(rho, grid)
    if not ok.any():
        raise UnreachableOutcomeError(0.0)
    r2 = np.einsum("ni,ni->n", r, r)

    def inner_max(axis: np.ndarray) -> float:
        perp2 = r2 - (r @ axis) ** 2
        return math.sqrt(max(0.0, float(np.max(np.where(ok, perp2, -1.0)))))

    ta, pa = _fibonacci_sphere(grid.n_axis)
    axes = np.stack([np.sin(ta) * np.cos(pa), np.sin(ta) * np.sin(pa), np.cos(ta)], axis=1)
    proj = r @ axes.T
    perp2 = np.where(ok[:, None], r2[:, None] - proj**2, -1.0)
    inner = np.sqrt(np.maximum(np.max(perp2, axis=0), 0.0))
    j = int(np.argmin(inner))
    best_t, best_p, best = float(ta[j]), float(pa[j]), float(inner[j])

    step = math.pi / math.sqrt(grid.n_axis)
    for _ in range(400):
        if step <= 1e-7:
            break
        moved = False
        for dt, dp in ((step, 0.0), (-step, 0.0), (0.0, step), (0.0, -step)):
            tt = min(math.pi, max(0.0, best_t + dt))
            pp = (best_p + dp) % _TWO_PI
            ax = np.array([math.sin(tt) * math.cos(pp), math.sin(tt) * math.sin(pp), math.cos(tt)])
            val = inner_max(ax)
            if val < best:
                best, best_t, best_p = val, tt, pp
                moved = True
        if not moved:
            step *= 0.5
    return best_t, best_p


def msc_numeric(
    rho: np.ndarray,
    grid: AngleGrid = AngleGrid(),
    positivity_tol: float = 1e-10,
) -> MscResult:
    """MSC of an arbitrary two-qubit density matrix by direct search.

    Non-degenerate reduced state of B: maximize the steered coherence in
    B's eigenbasis over a measurement-angle grid, then refine the polar
    angle by golden section. Degenerate reduced state: take the infimum
    over reference bases of that maximum.

    Deterministic: grid reductions tie-break toward the smallest polar
    angle, then the smallest azimuth. `positivity_tol` loosens input
    validation for states carrying integrator-level noise.
    """
    rho = assert_density(rho, name="msc_numeric input", positivity_tol=positivity_tol)
    if rho.shape != (4, 4):
        raise ValueError(f"expected a 4x4 density matrix, got shape {rho.shape}")
    rho_b = partial_trace(rho, side="A", validate=False)
    es = eigensystem2(rho_b)
    if not es.degenerate:
        value, theta, phi = _max_over_measurements(rho, es.eigenvectors, grid)
        return MscResult(value, theta, phi, ReferenceBasis(es.eigenvectors, False), "numeric")

    axis_t, axis_p = _infimum_over_bases(rho, grid)
    basis = ReferenceBasis(basis_from_axis(axis_t, axis_p).vectors, degenerate=True)
    value, theta, phi = _max_over_measurements(rho, basis.vectors, grid)
    return MscResult(value, theta, phi, basis, "numeric")


def steered_ellipsoid(c: XStateCoeffs) -> tuple[float, float]:
    """Equatorial and polar Bloch-vector extents of B's steered states.

    Over all projective measurements on A the steered Bloch vectors of
    an X-shaped state fill an ellipsoid of revolution with equatorial
    semi-axis 2|D| and polar semi-axis 2|A - C|.
    """
    return 2.0 * abs(c.d_coh), 2.0 * abs(c.a_pop - c.c_pop)


def msc_random_povm(
    rho: np.ndarray,
    n_samples: int = 200,
    rng: np.random.Generator | None = None,
) -> float:
    """Best steered coherence found over random two-outcome POVMs.

    Samples POVMs {M, I - M} with M = U diag(u1, u2) U* for Haar-random
    U and uniform eigenvalues, and evaluates both outcomes in the
    eigenbasis of B's reduced state. Exists to probe whether general
    POVMs beat rank-1 projectors; the answer is reported, not assumed.
    """
    rho = assert_density(rho, name="msc_random_povm input")
    rho_b = partial_trace(rho, side="A", validate=False)
    es = eigensystem2(rho_b)
    if es.degenerate:
        raise ValueError("random-POVM sampling needs a non-degenerate reduced state")
    if rng is None:
        rng = np.random.default_rng()
    v = es.eigenvectors
    best = 0.0
    for _ in range(n_samples):
        z = rng.standard_normal((2, 2)) + 1j * rng.standard_normal((2, 2))
        q, r = np.linalg.qr(z)
        q = q * (np.diagonal(r) / np.abs(np.diagonal(r)))
        u = rng.uniform(0.0, 1.0, size=2)
        m = (q * u) @ q.conj().T
        for element in (m, np.eye(2) - m):
            om, p = _steered_blocks(rho, element.astype(complex))
            if p > PROB_FLOOR:
                t = v.conj().T @ om @ v
                best = max(best, 2.0 * abs(t[0, 1]) / float(p))
    return best
