"""Collective dissipative dynamics of two detectors in a thermal bath.

Both detectors couple to the same field, so the dissipator carries one
3x3 coefficient matrix shared by every ordered pair of sites, built
from three rates: the symmetric and antisymmetric bath responses at the
detector gap (gamma_plus, gamma_minus) and the zero-frequency excess
gamma_zero. The singlet is annihilated by every collective operator and
is therefore an exact fixed point; the correlation invariant
Delta = sum_i <sigma_i x sigma_i> is conserved, which is what makes the
stationary state a one-parameter family.

The overall rate scale absorbs the squared coupling constant; proper
time is measured in units of 1/scale. The effective gap (gap plus its
environmental shift) is taken as a direct input since it never enters
the stationary state.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np

from .qmat import IDENTITY_2, assert_density, pauli, validate_density

_CP_SLACK = 1e-12

_SITE = tuple(
    (np.kron(pauli(i), IDENTITY_2), np.kron(IDENTITY_2, pauli(i))) for i in (1, 2, 3)
)
_SIGMA3_TOTAL = _SITE[2][0] + _SITE[2][1]

# I, sx, sy, sz products spanning Hermitian 4x4 matrices; used both to
# build the real representation of the generator and to reassemble states.
_PAULI_STACK = np.stack(
    [
        np.kron(p1, p2)
        for p1 in (IDENTITY_2, pauli(1), pauli(2), pauli(3))
        for p2 in (IDENTITY_2, pauli(1), pauli(2), pauli(3))
    ]
)
_PAULI_VEC = np.stack([g.reshape(16) / 2.0 for g in _PAULI_STACK], axis=1)  # orthonormal columns


class StepTooLargeError(RuntimeError):
    """Integration step produced an unphysical state."""

    def __init__(self, dt: float, reason: str):
        self.suggested_dt = dt / 2.0
        super().__init__(
            f"step too large: {reason} at dt={dt:.6g}; retry with dt <= {self.suggested_dt:.6g}"
        )


@dataclass(frozen=True)
class RateTriple:
    """Dissipator rates (units 1/time).

    Complete positivity requires gamma_plus >= |gamma_minus| and
    gamma_plus/2 + gamma_zero >= 0.
    """

    gamma_plus: float
    gamma_minus: float
    gamma_zero: float

    def __post_init__(self):
        vals = (self.gamma_plus, self.gamma_minus, self.gamma_zero)
        if not all(math.isfinite(v) for v in vals):
            raise ValueError(f"rates must be finite (got {vals})")
        if self.gamma_plus <= 0.0:
            raise ValueError(f"gamma_plus must be positive (got {self.gamma_plus!r})")
        if self.gamma_plus < abs(self.gamma_minus) - _CP_SLACK:
            raise ValueError(
                f"complete positivity needs gamma_plus >= |gamma_minus| (got {vals})"
            )
        if 0.5 * self.gamma_plus + self.gamma_zero < -_CP_SLACK:
            raise ValueError(
                f"complete positivity needs gamma_plus/2 + gamma_zero >= 0 (got {vals})"
            )

    @property
    def ratio(self) -> float:
        """gamma_minus / gamma_plus, the thermal ratio."""
        return self.gamma_minus / self.gamma_plus


@dataclass(frozen=True)
class LindbladParams:
    """Generator inputs: effective gap of the detectors plus the rates."""

    effective_gap: float
    rates: RateTriple

    def __post_init__(self):
        if not (math.isfinite(self.effective_gap) and self.effective_gap > 0.0):
            raise ValueError(f"effective_gap must be positive (got {self.effective_gap!r})")


def unruh_spectral_profile(lam: float, temperature: float, scale: float = 1.0) -> float:
    """Thermal bath response G(lambda) = scale * lambda / (1 - exp(-lambda/T)).

    This is the standard response of a uniformly accelerated detector in
    a massless scalar vacuum; it satisfies the detailed-balance ratio
    G(lambda) = exp(lambda/T) G(-lambda) exactly and extends continuously
    to G(0) = scale * T.
    """
    lam = float(lam)
    if not math.isfinite(lam):
        raise ValueError(f"lambda must be finite (got {lam!r})")
    if not (math.isfinite(temperature) and temperature > 0.0):
        raise ValueError(f"temperature must be positive (got {temperature!r})")
    if not (math.isfinite(scale) and scale > 0.0):
        raise ValueError(f"scale must be positive (got {scale!r})")
    if lam == 0.0:
        return scale * temperature
    x = lam / temperature
    if x <= -700.0:  # exp(-x) would overflow; response is exponentially small
        return -scale * lam * math.exp(x)
    return -scale * lam / math.expm1(-x)


def unruh_rates(omega: float, temperature: float, scale: float = 1.0) -> RateTriple:
    """Dissipator rates of the thermal profile at gap ``omega``.

    Evaluating G(omega) +/- G(-omega) analytically gives
    gamma_plus = scale * omega / tanh(omega / 2T),
    gamma_minus = scale * omega,
    gamma_zero = scale * T - gamma_plus / 2,
    so gamma_minus/gamma_plus = tanh(omega / 2T) holds to rounding and
    gamma_plus/2 + gamma_zero = scale * T stays nonnegative exactly.
    """
    if not (math.isfinite(omega) and omega > 0.0):
        raise ValueError(f"omega must be positive (got {omega!r})")
    if not (math.isfinite(temperature) and temperature > 0.0):
        raise ValueError(f"temperature must be positive (got {temperature!r})")
    if not (math.isfinite(scale) and scale > 0.0):
        raise ValueError(f"scale must be positive (got {scale!r})")
    gamma_plus = scale * omega / math.tanh(0.5 * omega / temperature)
    gamma_minus = scale * omega
    gamma_zero = scale * temperature - 0.5 * gamma_plus
    return RateTriple(gamma_plus, gamma_minus, gamma_zero)


def thermal_params(
    omega: float,
    temperature: float,
    scale: float = 1.0,
    effective_gap: float | None = None,
    gamma_zero: float | None = None,
) -> LindbladParams:
    """Bundle thermal rates into generator parameters.

    ``gamma_zero`` overrides the profile value (the stationary family
    does not depend on it); ``effective_gap`` defaults to the bare gap.
    """
    rates = unruh_rates(omega, temperature, scale)
    if gamma_zero is not None:
        rates = RateTriple(rates.gamma_plus, rates.gamma_minus, gamma_zero)
    return LindbladParams(omega if effective_gap is None else effective_gap, rates)


def kossakowski(rates: RateTriple) -> np.ndarray:
    """3x3 dissipator coefficient matrix for the given rates.

    C_ij = (gamma_plus/2) delta_ij - i (gamma_minus/2) eps_ij3
         + gamma_zero delta_3i delta_3j
    with eigenvalues (gamma_plus +/- gamma_minus)/2 and
    gamma_plus/2 + gamma_zero, all nonnegative for valid rates.
    """
    c = np.zeros((3, 3), dtype=complex)
    c[0, 0] = c[1, 1] = 0.5 * rates.gamma_plus
    c[0, 1] = -0.5j * rates.gamma_minus
    c[1, 0] = 0.5j * rates.gamma_minus
    c[2, 2] = 0.5 * rates.gamma_plus + rates.gamma_zero
    return c


def generator(rho: np.ndarray, params: LindbladParams) -> np.ndarray:
    """Right-hand side of the master equation applied to ``rho``.

    -i [H, rho] plus the dissipator summed over both sites for each
    operator slot with the shared coefficient matrix. Linear in ``rho``
    (no density validation) so it can be applied to basis matrices.
    """
    rho = np.asarray(rho, dtype=complex)
    if rho.shape != (4, 4):
        raise ValueError(f"expected a 4x4 matrix, got shape {rho.shape}")
    cmat = kossakowski(params.rates)
    h = 0.5 * params.effective_gap * _SIGMA3_TOTAL
    out = -1j * (h @ rho - rho @ h)
    for i in range(3):
        for j in range(3):
            cij = 0.5 * cmat[i, j]
            if cij == 0.0:
                continue
            for alpha in range(2):
                si = _SITE[i][alpha]
                for beta in range(2):
                    sj = _SITE[j][beta]
                    out += cij * (2.0 * (sj @ rho @ si) - si @ (sj @ rho) - (rho @ si) @ sj)
    return out


def superoperator_matrix(params: LindbladParams) -> np.ndarray:
    """16x16 matrix of the generator acting on row-major vectorized states."""
    s = np.zeros((16, 16), dtype=complex)
    basis = np.zeros((4, 4), dtype=complex)
    for k in range(16):
        basis.flat[k] = 1.0
        s[:, k] = generator(basis, params).reshape(16)
        basis.flat[k] = 0.0
    return s


def _hermitian_generator_matrix(params: LindbladParams) -> np.ndarray:
    """The generator restricted to Hermitian matrices, as a real 16x16 map."""
    s = superoperator_matrix(params)
    lam = _PAULI_VEC.conj().T @ s @ _PAULI_VEC
    if np.abs(lam.imag).max() > 1e-10:
        raise AssertionError("generator does not preserve Hermiticity")
    return lam.real


@dataclass(frozen=True)
class Trajectory:
    """Stored integration output: proper times and matching 4x4 states."""

    times: np.ndarray
    states: np.ndarray


def evolve(
    rho0: np.ndarray,
    params: LindbladParams,
    tau_max: float | None = None,
    dt: float | None = None,
    store_stride: int = 1,
    positivity_tol: float = 1e-6,
) -> Trajectory:
    """Integrate the master equation with fixed-step classical RK4.

    Defaults: dt = 0.01/gamma_plus and tau_max = 40/gamma_plus, long
    enough to reach the stationary state to well below 1e-6 for valid
    rates. Every stored state is re-Hermitized; a positivity or trace
    violation beyond tolerance raises StepTooLargeError with a halved
    step suggestion.
    """
    rho0 = assert_density(rho0, name="initial state")
    if rho0.shape != (4, 4):
        raise ValueError(f"expected a 4x4 density matrix, got shape {rho0.shape}")
    gp = params.rates.gamma_plus
    if tau_max is None:
        tau_max = 40.0 / gp
    if dt is None:
        dt = 0.01 / gp
    if not (math.isfinite(dt) and dt > 0.0):
        raise ValueError(f"dt must be positive (got {dt!r})")
    if tau_max < dt:
        raise ValueError(f"tau_max must be at least dt (got tau_max={tau_max!r}, dt={dt!r})")
    if store_stride < 1:
        raise ValueError(f"store_stride must be >= 1 (got {store_stride!r})")

    s = superoperator_matrix(params)
    n_steps = max(1, int(round(tau_max / dt)))
    v = rho0.reshape(16).copy()
    times = [0.0]
    states = [0.5 * (rho0 + rho0.conj().T)]
    for k in range(1, n_steps + 1):
        k1 = s @ v
        k2 = s @ (v + (0.5 * dt) * k1)
        k3 = s @ (v + (0.5 * dt) * k2)
        k4 = s @ (v + dt * k3)
        v = v + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
        if k % store_stride == 0 or k == n_steps:
            mat = v.reshape(4, 4)
            herm = 0.5 * (mat + mat.conj().T)
            min_eig = float(np.linalg.eigvalsh(herm).min())
            if min_eig < -positivity_tol:
                raise StepTooLargeError(dt, f"positivity violated by {-min_eig:.3e}")
            trace_err = abs(float(np.trace(herm).real) - 1.0)
            if trace_err > 1e-8:
                raise StepTooLargeError(dt, f"trace drifted by {trace_err:.3e}")
            times.append(k * dt)
            states.append(herm)
    return Trajectory(np.asarray(times), np.asarray(states))


def steady_state_numeric(
    params: LindbladParams,
    delta0_sector: float,
    constraint_tol: float = 1e-9,
) -> np.ndarray:
    """Stationary state in the given Delta sector from the null space.

    Builds the generator as a real map on Hermitian matrices, extracts
    its null space by SVD, and solves for the combination with unit
    trace and the requested correlation invariant. The kernel is
    expected to be two-dimensional (base state plus the Delta
    direction); any other dimension is flagged.
    """
    lam = _hermitian_generator_matrix(params)
    _, sing, vt = np.linalg.svd(lam)
    kernel = vt[sing <= max(sing[0], 1.0) * 1e-11].T
    k_dim = kernel.shape[1]
    if k_dim == 0:
        raise ValueError("generator has no stationary state within tolerance")
    if k_dim != 2:
        warnings.warn(
            f"stationary subspace has dimension {k_dim}, expected 2", RuntimeWarning, stacklevel=2
        )
    # Coordinates x give the state sum_k x_k G_k / 2, so the trace is
    # 2 x_0 and Delta is 2 (x_5 + x_10 + x_15).
    constraints = np.stack(
        [2.0 * kernel[0], 2.0 * (kernel[5] + kernel[10] + kernel[15])]
    )
    rhs = np.array([1.0, float(delta0_sector)])
    coef, *_ = np.linalg.lstsq(constraints, rhs, rcond=None)
    residual = float(np.linalg.norm(constraints @ coef - rhs))
    if residual > constraint_tol:
        raise ValueError(
            f"no stationary state with correlation invariant {delta0_sector!r} "
            f"(constraint residual {residual:.3e})"
        )
    x = kernel @ coef
    rho = 0.5 * np.tensordot(x, _PAULI_STACK, axes=1)
    report = validate_density(rho, trace_tol=1e-9, positivity_tol=1e-8)
    if not report.ok:
        raise ValueError(
            "null-space candidate is not a density matrix: " + "; ".join(report.violations())
        )
    return rho
