"""Golden-section search on a closed interval."""

from __future__ import annotations

import math

_INVPHI = (math.sqrt(5.0) - 1.0) / 2.0


def golden_section_min(f, a: float, b: float, tol: float = 1e-8, max_iter: int = 200):
    """Minimize a unimodal scalar function on [a, b].

    Returns (x, f(x)) once the bracket is narrower than `tol`.
    """
    if not b >= a:
        raise ValueError(f"need b >= a (got [{a}, {b}])")
    x1 = b - _INVPHI * (b - a)
    x2 = a + _INVPHI * (b - a)
    f1, f2 = f(x1), f(x2)
    for _ in range(max_iter):
        if (b - a) <= tol:
            break
        if f1 > f2:
            a, x1, f1 = x1, x2, f2
            x2 = a + _INVPHI * (b - a)
            f2 = f(x2)
        else:
            b, x2, f2 = x2, x1, f1
            x1 = b - _INVPHI * (b - a)
            f1 = f(x1)
    x = 0.5 * (a + b)
    return x, f(x)


def golden_section_max(f, a: float, b: float, tol: float = 1e-8, max_iter: int = 200):
    """Maximize a unimodal scalar function on [a, b]; see golden_section_min."""
    x, fx = golden_section_min(lambda t: -f(t), a, b, tol=tol, max_iter=max_iter)
    return x, -fx
