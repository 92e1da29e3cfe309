"""Borel transforms of polynomials, Polya reconstruction and the right inverse S_n.

All contour integrals have the form ``(1/2 pi i) oint_{|t|=R} e^{zt} g(t) dt``
and are computed with the trapezoidal rule on equispaced circle nodes.  For
integrands analytic near the contour this converges geometrically, so the
node count is doubled from ``QuadratureSpec.M`` until two successive
estimates agree.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np
from scipy.special import gammaln

from .circle import circle_nodes
from .errors import NearZeroDivisor, PoleError
from .expr import FunctionExpr, log_evaluate
from .operators import OperatorSequence
from .taylor import DEGREE_CAP, TaylorPoly, as_poly

#: Relative floor (min/max of |Phi_n| on the contour) below which S_n is refused;
#: for power families it applies to the base function (see OperatorSequence.log_zero_floor).
NEAR_ZERO = 1e-8
_EPS = np.finfo(float).eps
_CHUNK = 2048


@dataclass(frozen=True)
class QuadratureSpec:
    R: float
    M: int = 64
    tol: float = 1e-12
    max_doublings: int = 10

    def __post_init__(self):
        if not self.R > 0:
            raise ValueError("contour radius must be positive")
        if self.M < 64 or self.M & (self.M - 1):
            raise ValueError("initial node count must be a power of two >= 64")
        if self.max_doublings < 1:
            raise ValueError("max_doublings must be at least 1")

    def with_radius(self, R: float) -> "QuadratureSpec":
        return QuadratureSpec(R, self.M, self.tol, self.max_doublings)


@dataclass(frozen=True)
class QuadResult:
    """Contour quadrature outcome.

    ``value`` has the shape of the evaluation points.  When ``converged`` is
    False the doubling budget ran out; ``previous`` holds the estimate at
    half the final node count.
    """

    value: np.ndarray | complex
    error: float
    nodes: int
    converged: bool
    previous: np.ndarray | complex | None = None


@dataclass(frozen=True)
class BorelRational:
    """Borel transform ``sum_k k! a_k t^{-(k+1)}`` of the polynomial ``source``."""

    source: TaylorPoly

    def __call__(self, t):
        return borel_eval(self, t)


def borel(P) -> BorelRational:
    return BorelRational(as_poly(P))


def borel_eval(b: BorelRational, t):
    """Evaluate the Borel transform at ``t != 0`` (Horner in ``1/t``).

    Past the degree cap the terms are formed from ``log k! + log|a_k|`` to
    keep the factorials out of floating point.
    """
    t_arr = np.asarray(t, dtype=complex)
    if np.any(t_arr == 0):
        raise PoleError("Borel transform of a polynomial has a pole at t = 0")
    a = b.source.coeffs
    w = 1.0 / t_arr
    if b.source.order <= DEGREE_CAP:
        fact = np.exp(gammaln(np.arange(len(a)) + 1.0))
        acc = np.zeros_like(w)
        for ck in (a * fact)[::-1]:
            acc = acc * w + ck
        out = acc * w
    else:
        k = np.arange(len(a))
        nz = a != 0
        logs = (
            gammaln(k[nz] + 1.0)[:, None]
            + np.log(a[nz])[:, None]
            - (k[nz] + 1.0)[:, None] * np.log(t_arr.ravel())[None, :]
        )
        out = np.exp(logs).sum(axis=0).reshape(t_arr.shape)
    return out if out.ndim else complex(out)


def contour_integral(kernel: Callable[[np.ndarray], np.ndarray], q: QuadratureSpec, z, guard=None) -> QuadResult:
    """``(1/2 pi i) oint_{|t|=q.R} e^{zt} kernel(t) dt`` for every point in ``z``.

    Each doubling reuses the previous nodes.  Convergence: the change between
    successive estimates is below ``tol*|I|`` or below a rounding floor
    proportional to the sum of term moduli.  ``guard(t)`` is called on every
    new node set (used for the near-zero divisor pre-flight).
    """
    z_arr = np.asarray(z, dtype=complex)
    zf = z_arr.reshape(-1)

    def partial(t):
        if guard is not None:
            guard(t)
        g = kernel(t) * t
        s = np.zeros(zf.shape, dtype=complex)
        l1 = np.zeros(zf.shape)
        for lo in range(0, len(t), _CHUNK):
            terms = np.exp(np.outer(zf, t[lo : lo + _CHUNK])) * g[None, lo : lo + _CHUNK]
            s += terms.sum(axis=1)
            l1 += np.abs(terms).sum(axis=1)
        return s, l1

    M = q.M
    t = circle_nodes(q.R, M)
    s, l1 = partial(t)
    est = s / M
    prev = None
    err = math.inf
    for _ in range(q.max_doublings):
        t_odd = q.R * np.exp(2j * np.pi * (np.arange(M) + 0.5) / M)
        s_odd, l1_odd = partial(t_odd)
        s, l1 = s + s_odd, l1 + l1_odd
        M *= 2
        prev, est = est, s / M
        delta = np.abs(est - prev)
        err = float(delta.max()) if delta.size else 0.0
        floor = 64 * _EPS * l1 / M
        if np.all(delta <= np.maximum(q.tol * np.abs(est), floor)):
            return QuadResult(_shape(est, z_arr), err, M, True, _shape(prev, z_arr))
    return QuadResult(_shape(est, z_arr), err, M, False, _shape(prev, z_arr))


def _shape(v, like):
    v = v.reshape(like.shape)
    return v if v.ndim else complex(v)


def polya_reconstruct(b: BorelRational, q: QuadratureSpec, z) -> QuadResult:
    """Recover ``P(z)`` from its Borel transform by contour quadrature."""
    return contour_integral(lambda t: borel_eval(b, t), q, z)


def polya_radius(P, K: float) -> float:
    """Contour radius balancing ``k! |a_k| R^{-k}`` against ``e^{K R}``.

    Minimizes the log of the largest integrand modulus over a log grid, which
    keeps the rounding floor of Polya quadrature small for high degrees.
    """
    a = np.abs(as_poly(P).coeffs)
    k = np.flatnonzero(a)
    if k.size == 0:
        return 1.0
    grid = np.logspace(-2, 3, 501)
    logs = gammaln(k + 1.0)[None, :] + np.log(a[k])[None, :] - k[None, :] * np.log(grid)[:, None]
    cost = logs.max(axis=1) + K * grid
    return float(grid[int(np.argmin(cost))])


def _contour_guard(seq: OperatorSequence, n: int):
    expr, floor = seq.expr, seq.log_zero_floor(n, NEAR_ZERO)

    def guard(t):
        L = np.asarray(log_evaluate(expr, n, t)).real
        if not np.all(np.isfinite(L)) or L.min() - L.max() < floor:
            i = int(np.argmin(L))
            raise NearZeroDivisor(
                f"|Phi_{n}| nearly vanishes on |t|={abs(t[0]):g} near angle {np.angle(t[i]):.6f}"
            )

    return guard


def _ratio_kernel(seq: OperatorSequence, k: int, m: int, b: BorelRational):
    expr = seq.expr

    def kernel(t):
        lk = log_evaluate(expr, k, t) if k else 0.0
        lm = log_evaluate(expr, m, t) if m else 0.0
        return borel_eval(b, t) * np.exp(np.asarray(lk) - np.asarray(lm))

    return kernel


def right_inverse_eval(seq: OperatorSequence, n: int, P, q: QuadratureSpec, z) -> QuadResult:
    """``(S_n P)(z) = (1/2 pi i) oint e^{zt} (BP)(t) / Phi_n(t) dt``.

    ``n == 0`` returns ``P(z)`` exactly.  Raises NearZeroDivisor when
    ``min|Phi_n| / max|Phi_n|`` on any node set falls below 1e-8.
    """
    P = as_poly(P)
    if n == 0:
        return QuadResult(P(z), 0.0, 0, True)
    return transfer_apply(seq, 0, n, P, q, z)


def transfer_apply(seq: OperatorSequence, k: int, m: int, P, q: QuadratureSpec, z) -> QuadResult:
    """``(T_k S_m P)(z)`` as the single integral with kernel ``(BP) Phi_k / Phi_m``.

    For ``k == m`` the kernel is identically 1 and this is Polya reconstruction.
    """
    P = as_poly(P)
    b = borel(P)
    if k == m:
        return polya_reconstruct(b, q, z)
    guard = _contour_guard(seq, m) if m else None
    return contour_integral(_ratio_kernel(seq, k, m, b), q, z, guard=guard)


def default_truncation(R: float, K: float) -> int:
    """``ceil(e * R * K) + 30``: the Taylor tail of ``S_n P`` on ``|z| <= K`` is negligible."""
    return int(math.ceil(math.e * R * K)) + 30


def right_inverse_taylor(seq: OperatorSequence, n: int, P, q: QuadratureSpec, M_T: int | None = None, K: float = 1.0) -> TaylorPoly:
    """Taylor coefficients of ``S_n P`` through order ``M_T`` via contour moments.

    The ``k``-th coefficient is ``(1/2 pi i) oint t^k/k! (BP)(t)/Phi_n(t) dt``;
    on equispaced nodes all moments at once are one inverse FFT.  The result is
    marked inexact with a tail bound for ``|z| <= K``; convergence of the node
    doubling is judged in the ``|z| <= K`` weighted coefficient norm.
    """
    P = as_poly(P)
    if n == 0:
        return P
    if M_T is None:
        M_T = default_truncation(q.R, K)
    M_T = min(int(M_T), DEGREE_CAP)
    b = borel(P)
    guard = _contour_guard(seq, n)
    kernel = _ratio_kernel(seq, 0, n, b)
    k = np.arange(M_T + 1)
    log_scale = k * math.log(q.R) - gammaln(k + 1.0)
    weight = np.exp(log_scale + k * math.log(K)) if K > 0 else (k == 0).astype(float)

    def moments(M):
        t = circle_nodes(q.R, M)
        guard(t)
        g = kernel(t) * t
        # sum_j g_j e^{2 pi i j k / M} = M * ifft(g)[k]
        raw = np.fft.ifft(g)
        idx = k % M
        return raw[idx] * np.exp(log_scale), float(np.abs(g).max())

    M = max(q.M, 2 ** int(math.ceil(math.log2(M_T + 2))))
    c, gmax = moments(M)
    converged = False
    for _ in range(q.max_doublings):
        M *= 2
        c_new, gmax = moments(M)
        delta = float(np.sum(np.abs(c_new - c) * weight))
        size = float(np.sum(np.abs(c_new) * weight))
        c = c_new
        if delta <= max(q.tol * size, 64 * _EPS * gmax * float(np.sum(weight))):
            converged = True
            break
    x = q.R * K
    if x > 0:
        log_tail = (M_T + 1) * math.log(x) - gammaln(M_T + 2.0)
        tail = gmax * math.exp(log_tail) / max(1e-300, 1.0 - x / (M_T + 2))
    else:
        tail = 0.0
    notes = (f"right inverse S_{n}P, contour R={q.R:g}, tail bound on |z|<={K:g}",)
    if not converged:
        notes += ("moment quadrature did not converge",)
    return TaylorPoly(c, is_exact=False, tail_bound=float(tail), notes=notes)


@dataclass(frozen=True)
class RadiusInvariance:
    max_deviation: float
    radii: tuple
    passed: bool
    converged: bool


def radius_invariance_check(seq: OperatorSequence, n: int, P, radii, zgrid, q: QuadratureSpec | None = None) -> RadiusInvariance:
    """Max pairwise difference of ``S_n P`` over the given contour radii.

    Passes when the deviation is at most ``10 * tol`` relative to the
    magnitude of the values (absolute for values below 1).
    """
    q = q or QuadratureSpec(float(radii[0]))
    vals, conv = [], True
    for R in radii:
        res = right_inverse_eval(seq, n, P, q.with_radius(float(R)), zgrid)
        vals.append(np.atleast_1d(res.value))
        conv &= res.converged
    dev = 0.0
    for i in range(len(vals)):
        for j in range(i + 1, len(vals)):
            dev = max(dev, float(np.max(np.abs(vals[i] - vals[j]))))
    scale = max(1.0, max(float(np.max(np.abs(v))) for v in vals))
    return RadiusInvariance(dev, tuple(float(r) for r in radii), dev <= 10 * q.tol * scale, conv)
