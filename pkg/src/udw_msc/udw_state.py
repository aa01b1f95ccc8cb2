"""Steady-state family of two uniformly accelerated two-level detectors.

Two identical detectors with energy gap ``omega``, collectively coupled
to a massless scalar bath perceived at Unruh temperature ``T``, relax to
an X-shaped joint state. The whole family is parametrized by two
dimensionless numbers:

* ``gamma = tanh(omega / 2T)``, the thermal down/up rate ratio, and
* ``Delta``, the correlation invariant sum_i <sigma_i x sigma_i> of the
  initial state, which the collective dissipator conserves.

Natural units throughout (hbar = c = k_B = 1).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .qmat import assert_density, kron, pauli

DELTA0_MIN = -3.0
DELTA0_MAX = 1.0


def _require_positive(value: float, name: str) -> float:
    value = float(value)
    if not math.isfinite(value) or value <= 0.0:
        raise ValueError(f"{name} must be positive and finite (got {value!r})")
    return value


def gamma_ratio(omega: float, temperature: float) -> float:
    """Down/up transition-rate ratio tanh(omega / 2T) in (0, 1].

    Saturates to exactly 1.0 once omega/T exceeds the representable
    tanh range, so the zero-temperature limit needs no special casing.
    """
    omega = _require_positive(omega, "omega")
    temperature = _require_positive(temperature, "temperature")
    return math.tanh(0.5 * omega / temperature)


def acceleration_to_temperature(a: float) -> float:
    """Unruh temperature T = a / 2pi of a detector with proper acceleration a."""
    a = _require_positive(a, "acceleration")
    return a / (2.0 * math.pi)


@dataclass(frozen=True)
class ModelParams:
    """Physical inputs: gap ``omega``, Unruh temperature, and initial Delta."""

    omega: float
    temperature: float
    delta0: float

    def __post_init__(self):
        _require_positive(self.omega, "omega")
        _require_positive(self.temperature, "temperature")
        if not (DELTA0_MIN <= self.delta0 <= DELTA0_MAX):
            raise ValueError(
                f"delta0 must lie in [{DELTA0_MIN:g}, {DELTA0_MAX:g}] (got {self.delta0!r})"
            )

    @property
    def gamma(self) -> float:
        return gamma_ratio(self.omega, self.temperature)


@dataclass(frozen=True)
class XStateCoeffs:
    """The four real numbers defining an X-shaped steady state.

    ``a_pop`` sits at |00><00|, ``b_pop`` at |11><11|, ``c_pop`` on the
    two middle diagonal entries and ``d_coh`` on the middle
    anti-diagonal. Unit trace means a_pop + b_pop + 2 c_pop = 1.
    """

    a_pop: float
    b_pop: float
    c_pop: float
    d_coh: float

    def __post_init__(self):
        vals = (self.a_pop, self.b_pop, self.c_pop, self.d_coh)
        if not all(math.isfinite(v) for v in vals):
            raise ValueError(f"coefficients must be finite (got {vals})")
        if min(self.a_pop, self.b_pop, self.c_pop) < -1e-12:
            raise ValueError(f"populations must be nonnegative (got {vals})")
        trace = self.a_pop + self.b_pop + 2.0 * self.c_pop
        if abs(trace - 1.0) > 1e-12:
            raise ValueError(f"a_pop + b_pop + 2*c_pop must equal 1 (got {trace!r})")
        if self.c_pop - abs(self.d_coh) < -1e-12:
            raise ValueError(
                f"|d_coh| may not exceed c_pop (got d_coh={self.d_coh!r}, c_pop={self.c_pop!r})"
            )


def steady_state_coeffs(delta0: float, gamma: float) -> XStateCoeffs:
    """Steady-state coefficients for invariant ``delta0`` and ratio ``gamma``.

    A = (3 + Delta0)(gamma - 1)^2 / 4(3 + gamma^2)
    B = (3 + Delta0)(gamma + 1)^2 / 4(3 + gamma^2)
    C = (3 - Delta0 - (Delta0 + 1) gamma^2) / 4(3 + gamma^2)
    D = (Delta0 - gamma^2) / 2(3 + gamma^2)

    gamma = 0 is the infinite-temperature limit, gamma = 1 the
    zero-temperature limit; both endpoints are accepted.
    """
    delta0 = float(delta0)
    gamma = float(gamma)
    if not (DELTA0_MIN <= delta0 <= DELTA0_MAX):
        raise ValueError(f"delta0 must lie in [{DELTA0_MIN:g}, {DELTA0_MAX:g}] (got {delta0!r})")
    if not (0.0 <= gamma <= 1.0):
        raise ValueError(f"gamma must lie in [0, 1] (got {gamma!r})")
    g2 = gamma * gamma
    den = 4.0 * (3.0 + g2)
    a = (3.0 + delta0) * (gamma - 1.0) ** 2 / den
    b = (3.0 + delta0) * (gamma + 1.0) ** 2 / den
    c = (3.0 - delta0 - (delta0 + 1.0) * g2) / den
    d = (delta0 - g2) / (2.0 * (3.0 + g2))
    return XStateCoeffs(a, b, c, d)


def steady_state(params: ModelParams) -> XStateCoeffs:
    """Steady-state coefficients for the given physical parameters."""
    return steady_state_coeffs(params.delta0, params.gamma)


def coeffs_to_density(c: XStateCoeffs) -> np.ndarray:
    """Assemble the 4x4 X-shaped density matrix from its coefficients."""
    rho = np.zeros((4, 4), dtype=complex)
    rho[0, 0] = c.a_pop
    rho[1, 1] = c.c_pop
    rho[2, 2] = c.c_pop
    rho[3, 3] = c.b_pop
    rho[1, 2] = c.d_coh
    rho[2, 1] = c.d_coh
    return rho


def delta_of_state(rho: np.ndarray, validate: bool = True) -> float:
    """Correlation invariant sum_i tr(rho sigma_i x sigma_i)."""
    if validate:
        rho = assert_density(rho, name="delta_of_state input")
    rho = np.asarray(rho, dtype=complex)
    if rho.shape != (4, 4):
        raise ValueError(f"expected a 4x4 density matrix, got shape {rho.shape}")
    total = 0.0
    for i in (1, 2, 3):
        s = pauli(i)
        total += float(np.trace(rho @ kron(s, s)).real)
    return total
