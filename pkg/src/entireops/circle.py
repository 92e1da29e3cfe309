"""Sampling of |Phi_n| on circles centred at the origin.

Extrema here are estimates: a uniform sample refined by golden-section
search around the best node.  Results carry the node count so callers can
report them as numerical evidence rather than enclosures.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .expr import FunctionExpr, log_evaluate

DEFAULT_NODES = 4096
_INVPHI = (math.sqrt(5.0) - 1.0) / 2.0


def circle_nodes(R: float, M: int) -> np.ndarray:
    """``M`` equispaced points ``R*exp(2*pi*i*j/M)``, ``j = 0..M-1``."""
    return R * np.exp(2j * np.pi * np.arange(M) / M)


def log_modulus(expr: FunctionExpr, n: int, R: float, M: int = DEFAULT_NODES) -> np.ndarray:
    """``log|Phi_n|`` at the ``M`` circle nodes."""
    return np.asarray(log_evaluate(expr, n, circle_nodes(R, M))).real


def _golden(f, a: float, b: float, iters: int = 60) -> tuple[float, float]:
    """Minimize ``f`` on ``[a, b]``; returns (argmin, min)."""
    c = b - _INVPHI * (b - a)
    d = a + _INVPHI * (b - a)
    fc, fd = f(c), f(d)
    for _ in range(iters):
        if fc < fd:
            b, d, fd = d, c, fc
            c = b - _INVPHI * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + _INVPHI * (b - a)
            fd = f(d)
    x = 0.5 * (a + b)
    return x, f(x)


@dataclass(frozen=True)
class CircleExtrema:
    min_mod: float
    max_mod: float
    argmin: float
    argmax: float
    nodes: int
    R: float

    @property
    def log_min(self) -> float:
        return math.log(self.min_mod) if self.min_mod > 0 else -math.inf

    @property
    def log_max(self) -> float:
        return math.log(self.max_mod) if self.max_mod > 0 else -math.inf


def circle_log_extrema(expr: FunctionExpr, n: int, R: float, nodes: int = DEFAULT_NODES):
    """Refined ``(log_min, log_max, argmin, argmax)`` of ``|Phi_n|`` on ``|t| = R``."""
    if R <= 0:
        raise ValueError("radius must be positive")
    if nodes < 64 or nodes & (nodes - 1):
        raise ValueError("node count must be a power of two >= 64")
    L = log_modulus(expr, n, R, nodes)
    h = 2 * np.pi / nodes

    def logmod(theta):
        return float(np.real(log_evaluate(expr, n, R * np.exp(1j * theta))))

    i_min, i_max = int(np.argmin(L)), int(np.argmax(L))
    th_min, lo = i_min * h, float(L[i_min])
    th_max, hi = i_max * h, float(L[i_max])
    if np.isfinite(lo) and hi > lo:
        x, v = _golden(logmod, th_min - h, th_min + h)
        if v < lo:
            th_min, lo = x, v
        x, v = _golden(lambda th: -logmod(th), th_max - h, th_max + h)
        if -v > hi:
            th_max, hi = x, -v
    return lo, hi, th_min % (2 * np.pi), th_max % (2 * np.pi)


def circle_extrema(expr: FunctionExpr, n: int, R: float, nodes: int = DEFAULT_NODES) -> CircleExtrema:
    """Estimated min and max of ``|Phi_n(t)|`` over ``|t| = R`` with their angles."""
    lo, hi, amin, amax = circle_log_extrema(expr, n, R, nodes)
    with np.errstate(over="ignore"):
        return CircleExtrema(float(np.exp(lo)), float(np.exp(hi)), amin, amax, nodes, R)


@dataclass(frozen=True)
class GrowthMetrics:
    """Finite-radius growth diagnostics; the limsups themselves are not computed."""

    radius: float
    max_modulus: float
    type_estimate: float
    order_estimate: float


def growth_metrics(expr: FunctionExpr, n: int, radii, nodes: int = DEFAULT_NODES) -> list[GrowthMetrics]:
    """``M(r)``, ``log M(r)/r`` and ``log log M(r)/log r`` at each radius.

    ``order_estimate`` is NaN wherever ``M(r) <= 1`` or ``r == 1``.
    """
    radii = [float(r) for r in radii]
    if any(r <= 0 for r in radii) or any(b <= a for a, b in zip(radii, radii[1:])):
        raise ValueError("radii must be positive and strictly increasing")
    out = []
    for r in radii:
        _, log_m, _, _ = circle_log_extrema(expr, n, r, nodes)
        with np.errstate(over="ignore"):
            m = float(np.exp(log_m))
        order = math.log(log_m) / math.log(r) if log_m > 0 and r != 1 else math.nan
        out.append(GrowthMetrics(r, m, log_m / r, order))
    return out
