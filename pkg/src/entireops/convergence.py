"""Numerical checks of the four series/limit conditions behind frequent hypercyclicity.

For an instance ``(T_n = Phi_n(D), S_n, P)``:

(i)   ``sum_{n=1}^{k} T_k S_{k-n} P`` bounded uniformly in ``k``;
(ii)  ``sum_n T_k S_{n+k} P`` converges uniformly in ``k``;
(iii) ``sum_n S_n P`` converges;
(iv)  ``T_n S_n P -> P``.

Series are checked through absolute convergence of sup-norm terms on a polar
grid over ``|z| <= K``.  Each ledger also carries the closed-form majorant
``R e^{K R} sup_{|t|=R}|BP| * (matrix or reciprocal-minimum sum)``, so the grid
sup (an underestimate) and the majorant (an overestimate) bracket the truth.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .borel import QuadratureSpec, borel, right_inverse_eval, right_inverse_taylor, transfer_apply
from .circle import DEFAULT_NODES, circle_log_extrema, circle_nodes
from .criterion import Verdict, compute_bound_matrices
from .operators import OperatorSequence, apply_operator
from .taylor import DEGREE_CAP, TaylorPoly, as_poly

CONDITION_IV_TOL = 1e-7
CAUCHY_TOL = 1e-6
MAJORANT_SLACK = 1.05


def disk_grid(K: float, n_radii: int = 8, n_angles: int = 64) -> np.ndarray:
    """Origin plus ``n_radii`` circles ``|z| = K i / n_radii`` with ``n_angles`` points each."""
    if K < 0:
        raise ValueError("disk radius must be nonnegative")
    r = K * np.arange(1, n_radii + 1) / n_radii
    th = 2 * np.pi * np.arange(n_angles) / n_angles
    return np.concatenate([[0j], (r[:, None] * np.exp(1j * th)[None, :]).ravel()])


def _sup(values) -> float:
    return float(np.max(np.abs(values)))


def borel_sup(P, R: float, nodes: int = DEFAULT_NODES) -> float:
    """``sup_{|t|=R} |(BP)(t)|`` sampled on the circle."""
    P = as_poly(P)
    if not np.any(P.coeffs):
        return 0.0
    return _sup(borel(P)(circle_nodes(R, nodes)))


# -- condition (iv) -----------------------------------------------------------------


@dataclass
class ConditionIVResult:
    max_deviation: float
    deviation_contour: float
    deviation_taylor: float
    per_n: dict
    passed: bool
    tolerance: float = CONDITION_IV_TOL

    def to_dict(self) -> dict:
        return {
            "condition": "iv",
            "max_deviation": self.max_deviation,
            "deviation_contour": self.deviation_contour,
            "deviation_taylor": self.deviation_taylor,
            "per_n": self.per_n,
            "verdict": (Verdict.PASS_NUMERIC if self.passed else Verdict.FAIL).value,
            "tolerance": self.tolerance,
        }


def verify_condition_iv(seq: OperatorSequence, n_range, P, q: QuadratureSpec, K: float, grid=None, M_T: int = DEGREE_CAP) -> ConditionIVResult:
    """Max over ``n`` and the disk grid of ``|T_n S_n P - P|`` along two routes.

    Contour route: ``T_n S_n`` as one integral with kernel ``Phi_n/Phi_n``
    (Polya reconstruction).  Taylor route: ``Phi_n(D)`` applied to the
    truncated Taylor series of ``S_n P`` (order ``M_T``).  ``n = 0`` is exact.
    """
    P = as_poly(P)
    z = disk_grid(K) if grid is None else np.asarray(grid, dtype=complex)
    exact = P(z)
    per_n = {"n": [], "contour": [], "taylor": []}
    for n in n_range:
        if n == 0:
            dev_c = dev_t = 0.0
        else:
            dev_c = _sup(transfer_apply(seq, n, n, P, q, z).value - exact)
            S = right_inverse_taylor(seq, n, P, q, M_T=M_T, K=K)
            dev_t = _sup(apply_operator(seq, n, S)(z) - exact)
        per_n["n"].append(int(n))
        per_n["contour"].append(dev_c)
        per_n["taylor"].append(dev_t)
    dc = max(per_n["contour"], default=0.0)
    dt = max(per_n["taylor"], default=0.0)
    worst = max(dc, dt)
    return ConditionIVResult(worst, dc, dt, per_n, worst <= CONDITION_IV_TOL)


# -- bound ledgers ------------------------------------------------------------------


@dataclass
class ConvergenceLedger:
    """Direct sup-norm partial sums next to the closed-form majorant."""

    condition: str
    radius: float
    K: float
    N_max: int
    k_max: int | None
    direct_terms: list
    direct_partial_sums: list
    analytic_bound: float
    verdict: Verdict
    details: dict = field(default_factory=dict)

    @property
    def majorant_holds(self) -> bool:
        return all(s <= self.analytic_bound * MAJORANT_SLACK for s in self.direct_partial_sums)

    def to_dict(self) -> dict:
        return {
            "condition": self.condition,
            "radius": self.radius,
            "K": self.K,
            "N_max": self.N_max,
            "k_max": self.k_max,
            "direct_terms": self.direct_terms,
            "direct_partial_sums": self.direct_partial_sums,
            "analytic_bound": self.analytic_bound,
            "majorant_holds": self.majorant_holds,
            "verdict": self.verdict.value,
            "details": self.details,
        }


def _prefactor(P, R, K):
    bp = borel_sup(P, R)
    return R * math.exp(K * R) * bp, bp


def _series_verdict(partial, bound):
    if not all(s <= bound * MAJORANT_SLACK for s in partial):
        return Verdict.FAIL
    half = len(partial) // 2
    tail = partial[-1] - partial[half - 1] if half >= 1 else math.inf
    return Verdict.PASS_NUMERIC if tail < CAUCHY_TOL else Verdict.INCONCLUSIVE


def bound_condition_iii(seq: OperatorSequence, P, R3: float, K: float, N_max: int, q: QuadratureSpec | None = None, grid=None) -> ConvergenceLedger:
    """Terms ``sup_grid |S_n P|`` for ``n = 1..N_max`` against
    ``R3 e^{K R3} sup|BP| sum_n 1/min_{|t|=R3}|Phi_n|``.

    PASS: every partial sum is below the majorant (5 % slack) and the last
    half of the terms adds up to less than 1e-6.
    """
    q = (q or QuadratureSpec(R3)).with_radius(R3)
    z = disk_grid(K) if grid is None else np.asarray(grid, dtype=complex)
    P = as_poly(P)
    zero = not np.any(P.coeffs)
    terms = [0.0 if zero else _sup(right_inverse_eval(seq, n, P, q, z).value) for n in range(1, N_max + 1)]
    recip = [math.exp(-circle_log_extrema(seq.expr, n, R3)[0]) for n in range(1, N_max + 1)]
    pre, bp = _prefactor(P, R3, K)
    bound = pre * math.fsum(recip)
    partial = np.cumsum(terms).tolist()
    return ConvergenceLedger(
        "iii", R3, K, N_max, None, terms, partial, bound, _series_verdict(partial, bound),
        {"borel_sup": bp, "prefactor": pre, "reciprocal_minima": recip, "termwise_majorant": [pre * r for r in recip]},
    )


def bound_condition_ii(seq: OperatorSequence, P, R2: float, K: float, N_max: int, k_max: int, q: QuadratureSpec | None = None, grid=None) -> ConvergenceLedger:
    """Terms ``sup_grid |T_k S_{n+k} P|`` for ``1 <= k <= k_max``, ``n = 1..N_max``.

    The reported partial sum at ``N`` is ``max_k sum_{n<=N}`` (the quantity
    the majorant bounds); the majorant is
    ``R2 e^{K R2} sup|BP| max_k sum_{n=k+1}^{k+N_max} beta[n, k]``.
    """
    q = (q or QuadratureSpec(R2)).with_radius(R2)
    z = disk_grid(K) if grid is None else np.asarray(grid, dtype=complex)
    P = as_poly(P)
    zero = not np.any(P.coeffs)
    table = np.zeros((k_max, N_max))
    if not zero:
        for k in range(1, k_max + 1):
            for n in range(1, N_max + 1):
                table[k - 1, n - 1] = _sup(transfer_apply(seq, k, n + k, P, q, z).value)
    per_k_partial = np.cumsum(table, axis=1)
    partial = per_k_partial.max(axis=0).tolist()
    terms = table.max(axis=0).tolist()
    bm = compute_bound_matrices(seq, R2, R2, N_max + k_max)
    col = [float(bm.beta[k + 1 : k + N_max + 1, k].sum()) for k in range(1, k_max + 1)]
    pre, bp = _prefactor(P, R2, K)
    bound = pre * max(col)
    return ConvergenceLedger(
        "ii", R2, K, N_max, k_max, terms, partial, bound, _series_verdict(partial, bound),
        {"borel_sup": bp, "prefactor": pre, "beta_column_sums": col, "per_k_totals": per_k_partial[:, -1].tolist()},
    )


def bound_condition_i(seq: OperatorSequence, P, R1: float, K: float, k_max: int, q: QuadratureSpec | None = None, grid=None) -> ConvergenceLedger:
    """Finite sums ``s_k = sum_{n=1}^{k} sup_grid |T_k S_{k-n} P|`` for ``k <= k_max``.

    The partial sums reported are the running ``max_{k' <= k} s_{k'}``; the
    majorant uses the alpha constants on ``|t| = R1``:
    ``R1 e^{K R1} sup|BP| max_k sum_{j<k} alpha[k, j]``.  PASS additionally
    needs the alpha row sums not to grow over the last decile of ``k``.
    """
    q = (q or QuadratureSpec(R1)).with_radius(R1)
    z = disk_grid(K) if grid is None else np.asarray(grid, dtype=complex)
    P = as_poly(P)
    zero = not np.any(P.coeffs)
    sums = []
    for k in range(1, k_max + 1):
        s = 0.0
        if not zero:
            for n in range(1, k + 1):
                s += _sup(transfer_apply(seq, k, k - n, P, q, z).value)
        sums.append(s)
    running = np.maximum.accumulate(sums).tolist()
    bm = compute_bound_matrices(seq, R1, R1, k_max)
    rows = bm.alpha_row_sums[1:]
    pre, bp = _prefactor(P, R1, K)
    bound = pre * float(rows.max())
    early = rows[: max(int(0.9 * k_max), 1)].max()
    stable = rows.max() <= 1.05 * early
    if not all(s <= bound * MAJORANT_SLACK for s in running):
        verdict = Verdict.FAIL
    else:
        verdict = Verdict.PASS_NUMERIC if stable and math.isfinite(bound) else Verdict.INCONCLUSIVE
    return ConvergenceLedger(
        "i", R1, K, k_max, k_max, sums, running, bound, verdict,
        {"borel_sup": bp, "prefactor": pre, "alpha_row_sums": rows.tolist(), "row_sums_stable": bool(stable)},
    )


# -- orbits -------------------------------------------------------------------------


@dataclass
class OrbitSample:
    n: int
    grid: np.ndarray
    values: np.ndarray
    sup_norm: float


def orbit_apply(seq, n: int, f, K: float, grid=None) -> OrbitSample:
    """``Phi_n(D) f`` sampled on the disk grid, with its sampled sup norm."""
    z = disk_grid(K) if grid is None else np.asarray(grid, dtype=complex)
    g = apply_operator(seq, n, f)
    vals = np.asarray(g(z))
    return OrbitSample(n, z, vals, _sup(vals))


def density_curve(hits, N: int) -> list:
    """``d_m = #(hits within 1..m) / m`` for ``m = 1..N``."""
    marks = np.zeros(N + 1)
    for h in hits:
        if 1 <= h <= N:
            marks[h] = 1
    counts = np.cumsum(marks)[1:]
    return (counts / np.arange(1, N + 1)).tolist()


@dataclass
class HittingDensityReport:
    N: int
    hits: list
    density_curve: list
    liminf_estimate: float
    eps: float
    K: float

    def to_dict(self) -> dict:
        return {
            "N": self.N,
            "hits": self.hits,
            "density_curve": self.density_curve,
            "liminf_estimate": self.liminf_estimate,
            "eps": self.eps,
            "K": self.K,
        }


def hitting_density(seq, f, target, eps: float, K: float, N: int, grid=None) -> HittingDensityReport:
    """Indices ``n <= N`` whose orbit point lies within ``eps`` of ``target`` in grid sup norm.

    The liminf estimate is the minimum of the density curve over its last half;
    a positive value is a diagnostic, not evidence of frequent hypercyclicity.
    """
    if N < 10:
        raise ValueError("horizon must be at least 10")
    z = disk_grid(K) if grid is None else np.asarray(grid, dtype=complex)
    f = as_poly(f)
    tv = as_poly(target)(z)
    hits = [n for n in range(1, N + 1) if _sup(apply_operator(seq, n, f)(z) - tv) < eps]
    curve = density_curve(hits, N)
    return HittingDensityReport(N, hits, curve, float(min(curve[N // 2 - 1 :])), eps, K)


__all__ = [
    "ConditionIVResult",
    "ConvergenceLedger",
    "HittingDensityReport",
    "OrbitSample",
    "TaylorPoly",
    "bound_condition_i",
    "bound_condition_ii",
    "bound_condition_iii",
    "borel_sup",
    "density_curve",
    "disk_grid",
    "hitting_density",
    "orbit_apply",
    "verify_condition_iv",
]
