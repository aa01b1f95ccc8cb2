"""Parameter sweeps over the steady-state family.

Grids of MSC values, the temperature threshold where the coherence of
the stationary state vanishes, monotonicity classification of MSC
against temperature, and figure-ready row streams.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

from ._golden import golden_section_min
from .steering import msc_closed_form
from .udw_state import DELTA0_MAX, DELTA0_MIN, gamma_ratio, steady_state_coeffs

DEFAULT_T_START = 0.05
DEFAULT_T_STOP = 10.0
DEFAULT_T_STEP = 0.05
DEFAULT_DELTA0_STEP = 0.05
FIG1_OMEGAS = (1.0, 3.0, 5.0)
FIG2_DELTA0S = (-1.0, 0.5, 1.0)
_PANEL_LETTERS = "abcdefgh"


def inclusive_range(start: float, stop: float, step: float) -> tuple[float, ...]:
    """Arithmetic grid from start to stop, endpoints included."""
    if step <= 0.0:
        raise ValueError(f"step must be positive (got {step!r})")
    if stop < start:
        raise ValueError(f"stop must be >= start (got [{start}, {stop}])")
    n = int(math.floor((stop - start) / step + 1e-9))
    return tuple(start + i * step for i in range(n + 1))


@dataclass(frozen=True)
class GridSpec:
    """Axes of a sweep; every combination is evaluated."""

    delta0_values: tuple[float, ...]
    omega_values: tuple[float, ...]
    temperature_values: tuple[float, ...]

    def __post_init__(self):
        for name, values in (
            ("delta0_values", self.delta0_values),
            ("omega_values", self.omega_values),
            ("temperature_values", self.temperature_values),
        ):
            if len(values) == 0:
                raise ValueError(f"{name} must be non-empty")
        for d in self.delta0_values:
            if not (DELTA0_MIN <= d <= DELTA0_MAX):
                raise ValueError(f"delta0 must lie in [-3, 1] (got {d!r})")
        for w in self.omega_values:
            if not (math.isfinite(w) and w > 0.0):
                raise ValueError(f"omega must be positive (got {w!r})")
        for t in self.temperature_values:
            if not (math.isfinite(t) and t > 0.0):
                raise ValueError(f"temperature must be positive (got {t!r})")

    @property
    def size(self) -> int:
        return len(self.delta0_values) * len(self.omega_values) * len(self.temperature_values)


@dataclass(frozen=True)
class SweepRow:
    delta0: float
    omega: float
    temperature: float
    gamma: float
    msc: float

    def astuple(self) -> tuple[float, float, float, float, float]:
        return (self.delta0, self.omega, self.temperature, self.gamma, self.msc)


def msc_point(delta0: float, omega: float, temperature: float) -> SweepRow:
    """One closed-form MSC evaluation."""
    gamma = gamma_ratio(omega, temperature)
    value = msc_closed_form(steady_state_coeffs(delta0, gamma)).value
    return SweepRow(delta0, omega, temperature, gamma, value)


def msc_grid(spec: GridSpec) -> list[SweepRow]:
    """Closed-form MSC on every grid point, delta0-major then omega then T."""
    return [
        msc_point(d, w, t)
        for d in spec.delta0_values
        for w in spec.omega_values
        for t in spec.temperature_values
    ]


def asymptotic_msc(delta0: float) -> float:
    """Infinite-temperature limit of the MSC: |delta0| / 3."""
    if not (DELTA0_MIN <= delta0 <= DELTA0_MAX):
        raise ValueError(f"delta0 must lie in [-3, 1] (got {delta0!r})")
    return abs(delta0) / 3.0


def threshold_temperature(delta0: float, omega: float) -> float:
    """Temperature where the stationary coherence D vanishes.

    Defined for 0 < delta0 < 1 as omega / (2 artanh sqrt(delta0)); below
    (above) it the MSC falls (rises) with temperature. For delta0 <= 0
    the MSC is monotone and for delta0 = 1 the artanh diverges, so the
    threshold is undefined.
    """
    if not (0.0 < delta0 < 1.0):
        raise ValueError(
            f"threshold undefined: delta0 must lie strictly in (0, 1) (got {delta0!r})"
        )
    if not (math.isfinite(omega) and omega > 0.0):
        raise ValueError(f"omega must be positive (got {omega!r})")
    return omega / (2.0 * math.atanh(math.sqrt(delta0)))


@dataclass(frozen=True)
class MonotonicityReport:
    """Trend of MSC against temperature: kind plus dip location if any."""

    kind: str  # "decreasing" | "dip_then_rise" | "increasing" | "constant"
    t_min: float | None = None


def monotonicity_report(
    delta0: float,
    omega: float,
    t_grid: Sequence[float],
    tol: float = 1e-10,
) -> MonotonicityReport:
    """Classify MSC(T) on the grid by finite differences.

    A dip is refined by golden section between the neighbors of the grid
    minimum (tolerance 1e-8 in T).
    """
    ts = [float(t) for t in t_grid]
    if len(ts) < 3:
        raise ValueError(f"t_grid needs at least 3 points (got {len(ts)})")
    if any(b <= a for a, b in zip(ts, ts[1:])):
        raise ValueError("t_grid must be strictly increasing")
    vals = [msc_point(delta0, omega, t).msc for t in ts]
    diffs = [b - a for a, b in zip(vals, vals[1:])]
    inc = [i for i, d in enumerate(diffs) if d > tol]
    dec = [i for i, d in enumerate(diffs) if d < -tol]
    if not inc and not dec:
        return MonotonicityReport("constant")
    if not inc:
        return MonotonicityReport("decreasing")
    if not dec:
        return MonotonicityReport("increasing")
    if max(dec) < min(inc):
        j = min(range(len(vals)), key=lambda i: (vals[i], i))
        lo = ts[max(0, j - 1)]
        hi = ts[min(len(ts) - 1, j + 1)]
        t_min, _ = golden_section_min(
            lambda t: msc_point(delta0, omega, t).msc, lo, hi, tol=1e-8
        )
        return MonotonicityReport("dip_then_rise", t_min)
    raise ValueError(f"MSC(T) is not unimodal on the grid for delta0={delta0}, omega={omega}")


def default_t_grid() -> tuple[float, ...]:
    return inclusive_range(DEFAULT_T_START, DEFAULT_T_STOP, DEFAULT_T_STEP)


def figure_data(which: str, omega_list: Sequence[float] | None = None):
    """Row streams for the two standard figures.

    "fig1": one panel per omega, a surface over (delta0, T).
    "fig2": one panel per delta0 in (-1, 0.5, 1), curves over T for each
    omega. Returns (panels, metadata) where panels maps the panel name
    to its rows in deterministic order.
    """
    omegas = tuple(float(w) for w in (omega_list or FIG1_OMEGAS))
    t_values = default_t_grid()
    panels: dict[str, list[SweepRow]] = {}
    if which == "fig1":
        delta0_values = inclusive_range(DELTA0_MIN, DELTA0_MAX, DEFAULT_DELTA0_STEP)
        for letter, w in zip(_PANEL_LETTERS, omegas):
            spec = GridSpec(delta0_values, (w,), t_values)
            panels[f"fig1_{letter}"] = msc_grid(spec)
        grid_meta = {
            "delta0": {"start": DELTA0_MIN, "stop": DELTA0_MAX, "step": DEFAULT_DELTA0_STEP},
            "temperature": {"start": DEFAULT_T_START, "stop": DEFAULT_T_STOP, "step": DEFAULT_T_STEP},
        }
        defaults = {"omega_panels": list(omegas)}
    elif which == "fig2":
        for letter, d in zip(_PANEL_LETTERS, FIG2_DELTA0S):
            spec = GridSpec((d,), omegas, t_values)
            panels[f"fig2_{letter}"] = msc_grid(spec)
        grid_meta = {
            "temperature": {"start": DEFAULT_T_START, "stop": DEFAULT_T_STOP, "step": DEFAULT_T_STEP},
        }
        defaults = {"delta0_panels": list(FIG2_DELTA0S), "omega_curves": list(omegas)}
    else:
        raise ValueError(f"which must be 'fig1' or 'fig2' (got {which!r})")
    from . import __version__

    metadata = {"grid": grid_meta, "defaults": defaults, "version": __version__}
    return panels, metadata
