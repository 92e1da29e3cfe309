"""Numerical verification of the zero-free-annulus criterion, conditions (a)-(e).

Infinite quantifiers are checked on ``n = 1..N_max`` and every condition gets
a three-valued verdict:

* ``PASS_NUMERIC`` -- holds on the computed range and the relevant tails decay;
  this is numerical evidence, not a proof;
* ``FAIL`` -- a concrete violation or divergence that persists as the horizon
  doubles twice; always accompanied by a witness;
* ``INCONCLUSIVE`` -- anything else.

Zero thresholds are relative: a circle counts as hitting a zero when
``min|Phi_n| < 1e-8 * max|Phi_n|`` on it.  Absolute thresholds would reject
families such as ``5^n z^n + 9^-n e^{nz}`` whose modulus on ``|t| = 1/15``
is about ``3^-n`` without ever approaching a zero.  For power families
``c_n Phi^n`` the threshold applies to ``Phi`` (so to ``Phi_n`` it is ``1e-8**n``).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum

import numpy as np

from .borel import QuadratureSpec
from .circle import DEFAULT_NODES, circle_extrema, circle_log_extrema, circle_nodes, log_modulus
from .errors import PhaseStepTooLarge, ZeroOnContour, ZeroScalar
from .expr import FunctionExpr, Seq, log_evaluate
from .operators import OperatorSequence

ZERO_THRESHOLD = 1e-8
SAFETY = 1.01
_LOG_ZERO = math.log(ZERO_THRESHOLD)


class Verdict(str, Enum):
    PASS_NUMERIC = "PASS_NUMERIC"
    FAIL = "FAIL"
    INCONCLUSIVE = "INCONCLUSIVE"


def combine(verdicts) -> Verdict:
    """FAIL dominates, then INCONCLUSIVE."""
    verdicts = list(verdicts)
    if Verdict.FAIL in verdicts:
        return Verdict.FAIL
    if Verdict.INCONCLUSIVE in verdicts or not verdicts:
        return Verdict.INCONCLUSIVE
    return Verdict.PASS_NUMERIC


@dataclass(frozen=True)
class Annulus:
    R1: float
    R2: float
    R3: float | None = None

    def __post_init__(self):
        if self.R3 is None:
            object.__setattr__(self, "R3", self.R2)
        for name in ("R1", "R2", "R3"):
            if not getattr(self, name) > 0:
                raise ValueError(f"{name} must be positive")

    @property
    def rho(self) -> float:
        return min(self.R1, self.R2, self.R3)

    @property
    def sigma(self) -> float:
        return max(self.R1, self.R2, self.R3)

    def contains(self, z) -> bool:
        return bool(self.rho <= abs(z) <= self.sigma)

    def to_dict(self) -> dict:
        return {"R1": self.R1, "R2": self.R2, "R3": self.R3}


@dataclass
class ConditionResult:
    label: str
    verdict: Verdict
    witness: dict | None = None
    details: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {"label": self.label, "verdict": self.verdict.value, "witness": self.witness, "details": self.details}


# -- zeros --------------------------------------------------------------------------


def _floor(seq, n: int) -> float:
    return seq.log_zero_floor(n, ZERO_THRESHOLD) if isinstance(seq, OperatorSequence) else _LOG_ZERO


def _check_circle(L: np.ndarray, n: int, R: float, M: int, floor: float = _LOG_ZERO):
    if not np.all(np.isfinite(L)) or L.min() - L.max() < floor:
        i = int(np.nanargmin(np.where(np.isfinite(L), L, -np.inf)))
        raise ZeroOnContour(f"|Phi_{n}| nearly vanishes on |t|={R:g} at angle {2 * np.pi * i / M:.6f}")


def winding_number(expr, n: int, R: float, q: QuadratureSpec | None = None) -> int:
    """Number of zeros of ``Phi_n`` in ``|t| < R`` by the argument principle.

    ``expr`` is an expression or an OperatorSequence (whose zero floor is used).

    The phase is unwrapped node to node.  The first node count is at least
    ``8 n max(1, R)`` (the phase of ``Phi_n`` typically turns ``O(n R)`` times),
    steps of ``pi/2`` or more force a doubling, and a count is accepted only
    when two successive node counts agree, which rules out aliasing of
    full turns between nodes.
    """
    floor = _floor(expr, n)
    expr = expr.expr if isinstance(expr, OperatorSequence) else expr
    if n == 0:
        return 0
    M = max(q.M if q else 64, 1 << max(6, math.ceil(math.log2(8 * n * max(1.0, R)))))
    doublings = q.max_doublings if q else 10
    previous = None
    for _ in range(doublings + 1):
        w = np.asarray(log_evaluate(expr, n, circle_nodes(R, M)))
        _check_circle(w.real, n, R, M, floor)
        steps = np.diff(np.append(w.imag, w.imag[0]))
        steps = (steps + np.pi) % (2 * np.pi) - np.pi
        count = None
        if np.max(np.abs(steps)) < np.pi / 2:
            total = steps.sum() / (2 * np.pi)
            if abs(total - round(total)) <= 0.01:
                count = int(round(total))
        if count is not None and count == previous:
            return count
        previous = count
        M *= 2
    raise PhaseStepTooLarge(f"winding on |t|={R:g} not stable up to {M // 2} nodes")


@dataclass
class ZeroFreeResult:
    verdict: Verdict
    counts_rho: list
    counts_sigma: list
    witness: dict | None = None

    def as_condition(self) -> ConditionResult:
        return ConditionResult(
            "b",
            self.verdict,
            self.witness,
            {"counts_rho": self.counts_rho, "counts_sigma": self.counts_sigma},
        )


def annulus_zero_free(seq, n_range, ann: Annulus, q: QuadratureSpec | None = None, nodes: int = DEFAULT_NODES, n_circles: int = 8) -> ZeroFreeResult:
    """Check that no ``Phi_n`` (``n`` in ``n_range``) vanishes on the closed annulus.

    Passes when the zero counts inside ``rho`` and ``sigma`` agree and no
    sampled modulus on the boundary or on ``n_circles`` intermediate circles
    drops below the relative zero threshold.
    """
    expr = seq.expr if isinstance(seq, OperatorSequence) else seq
    rho, sigma = ann.rho, ann.sigma
    inner = list(np.geomspace(rho, sigma, n_circles + 2)[1:-1]) if sigma > rho else []
    counts_rho, counts_sigma = [], []
    for n in n_range:
        try:
            w_rho = winding_number(seq, n, rho, q)
            w_sigma = w_rho if sigma == rho else winding_number(seq, n, sigma, q)
        except ZeroOnContour as exc:
            R = rho if f"|t|={rho:g} " in str(exc) else sigma
            return ZeroFreeResult(Verdict.FAIL, counts_rho, counts_sigma, _zero_witness(expr, n, R, nodes))
        except PhaseStepTooLarge as exc:
            return ZeroFreeResult(Verdict.INCONCLUSIVE, counts_rho, counts_sigma, {"n": n, "reason": str(exc)})
        counts_rho.append(w_rho)
        counts_sigma.append(w_sigma)
        if w_rho != w_sigma:
            return ZeroFreeResult(
                Verdict.FAIL,
                counts_rho,
                counts_sigma,
                {"n": n, "zeros_inside_rho": w_rho, "zeros_inside_sigma": w_sigma, "rho": rho, "sigma": sigma},
            )
        for R in inner:
            L = log_modulus(expr, n, R, nodes)
            if not np.all(np.isfinite(L)) or L.min() - L.max() < _floor(seq, n):
                return ZeroFreeResult(Verdict.FAIL, counts_rho, counts_sigma, _zero_witness(expr, n, R, nodes))
    return ZeroFreeResult(Verdict.PASS_NUMERIC, counts_rho, counts_sigma)


def _zero_witness(expr, n, R, nodes):
    lo, hi, amin, _ = circle_log_extrema(expr, n, float(R), nodes)
    rel = math.exp(lo - hi) if np.isfinite(lo) else 0.0
    return {"n": n, "radius": float(R), "angle": amin, "relative_min_modulus": rel}


# -- bound matrices -----------------------------------------------------------------


@dataclass
class BoundMatrices:
    """Tightest sampled constants of conditions (c) and (d), times ``SAFETY``.

    ``alpha[n, j]`` bounds ``|Phi_n/Phi_j|`` on ``|t| = R1`` and ``beta[n, j]``
    bounds ``|Phi_j/Phi_n|`` on ``|t| = R2``, for ``n > j >= 0`` (zero elsewhere).
    """

    R1: float
    R2: float
    N_max: int
    nodes: int
    alpha: np.ndarray
    beta: np.ndarray
    log_min_R1: np.ndarray
    log_max_R1: np.ndarray
    log_min_R2: np.ndarray
    log_max_R2: np.ndarray

    @property
    def alpha_row_sums(self) -> np.ndarray:
        return self.alpha.sum(axis=1)

    def beta_col_sums(self, horizon: int | None = None) -> np.ndarray:
        h = self.N_max if horizon is None else horizon
        return self.beta[: h + 1].sum(axis=0)

    @property
    def row_sum_sup_alpha(self) -> float:
        return float(self.alpha_row_sums.max())

    @property
    def col_sum_sup_beta(self) -> float:
        """Sup over ``j >= 1`` (the index range the criterion states)."""
        return float(self.beta_col_sums()[1:].max()) if self.N_max >= 2 else 0.0

    @property
    def col_sum_sup_beta_j0(self) -> float:
        """Same sup with the ``j = 0`` column included (uses ``Phi_0 = 1``)."""
        return float(self.beta_col_sums().max())

    def tail_ratios(self) -> dict:
        N = self.N_max
        gaps = np.arange(1, N + 1)
        row = self.alpha[N, N - gaps]
        col = self.beta[1 + gaps[: N - 1], 1] if N >= 2 else np.zeros(0)
        return {"alpha_row": _geometric_rate(row), "beta_col": _geometric_rate(col)}


def _geometric_rate(values: np.ndarray) -> float:
    """Ratio fitted by least squares to the last quarter of a sequence."""
    v = np.asarray(values, dtype=float)
    if v.size < 2:
        return math.nan
    lo = min(int(0.75 * v.size), v.size - 2)
    idx = np.arange(lo, v.size)
    tail = v[idx]
    ok = (tail > 0) & np.isfinite(tail)
    if not np.any(tail > 0):
        return 0.0
    if ok.sum() < 2:
        return math.nan if np.any(~np.isfinite(tail)) else 0.0
    slope = np.polyfit(idx[ok], np.log(tail[ok]), 1)[0]
    return float(math.exp(slope))


def _log_rows(seq, N, R, nodes):
    expr = seq.expr if isinstance(seq, OperatorSequence) else seq
    rows = np.empty((N + 1, nodes))
    for n in range(N + 1):
        rows[n] = log_modulus(expr, n, R, nodes)
        if n:
            _check_circle(rows[n], n, R, nodes, _floor(seq, n))
    return rows


def _pair_max(L: np.ndarray, upper: bool) -> np.ndarray:
    """``out[n, j] = max_t (L[n] - L[j])`` (upper) or ``max_t (L[j] - L[n])`` for ``j < n``."""
    N = L.shape[0] - 1
    out = np.full((N + 1, N + 1), -np.inf)
    for n in range(1, N + 1):
        diff = L[n][None, :] - L[:n] if upper else L[:n] - L[n][None, :]
        out[n, :n] = diff.max(axis=1)
    return out


def compute_bound_matrices(seq, R1: float, R2: float, N_max: int, q: QuadratureSpec | None = None, nodes: int = DEFAULT_NODES) -> BoundMatrices:
    """Sample every ``Phi_n`` (``0 <= n <= N_max``) on both circles and form alpha, beta.

    Raises ZeroOnContour when some ``Phi_n`` nearly vanishes on either circle.
    """
    L1 = _log_rows(seq, N_max, R1, nodes)
    L2 = L1 if R2 == R1 else _log_rows(seq, N_max, R2, nodes)
    with np.errstate(over="ignore"):
        alpha = SAFETY * np.exp(_pair_max(L1, upper=True))
        beta = SAFETY * np.exp(_pair_max(L2, upper=False))
    return BoundMatrices(
        R1, R2, N_max, nodes, alpha, beta,
        L1.min(axis=1), L1.max(axis=1), L2.min(axis=1), L2.max(axis=1),
    )


def validate_bound_matrices(bm: BoundMatrices, seq, refine: int = 4) -> tuple[ConditionResult, ConditionResult]:
    """Conditions (c) and (d): re-sample at ``refine`` times the nodes and look for a ratio above alpha/beta."""
    M = bm.nodes * refine
    results = []
    for label, R, mat, upper in (("c", bm.R1, bm.alpha, True), ("d", bm.R2, bm.beta, False)):
        L = _log_rows(seq, bm.N_max, R, M)
        worst, witness = -np.inf, None
        for n in range(1, bm.N_max + 1):
            diff = L[n][None, :] - L[:n] if upper else L[:n] - L[n][None, :]
            with np.errstate(divide="ignore"):
                excess = diff - np.log(mat[n, :n])[:, None]
            j, i = np.unravel_index(int(np.argmax(excess)), excess.shape)
            if excess[j, i] > worst:
                worst = float(excess[j, i])
                if worst > 0:
                    witness = {
                        "n": n, "j": int(j), "radius": R, "angle": 2 * np.pi * i / M,
                        "ratio": math.exp(diff[j, i]), "bound": float(mat[n, j]),
                    }
        verdict = Verdict.FAIL if worst > 0 else Verdict.PASS_NUMERIC
        details = {"radius": R, "refined_nodes": M, "max_log_excess": worst, "safety_factor": SAFETY}
        results.append(ConditionResult(label, verdict, witness if worst > 0 else None, details))
    return results[0], results[1]


def check_condition_a(bm: BoundMatrices) -> ConditionResult:
    """Uniform boundedness of alpha row sums and beta column sums.

    PASS: finite sups, no growth over the last decile of the horizon (< 5 %),
    fitted tail ratios below 1.  FAIL: some sup grows by at least 1.5x at each
    of two horizon doublings ``N/4 -> N/2 -> N``.
    """
    N = bm.N_max
    rows = bm.alpha_row_sums
    horizons = [max(N // 4, 1), max(N // 2, 1), N]
    early = max(int(0.9 * N), 1)

    def alpha_sup(h):
        return float(rows[: h + 1].max())

    def beta_sup(h, j0=1):
        sums = bm.beta_col_sums(h)
        return float(sums[j0 : max(h // 2, j0 + 1)].max()) if h >= 2 else float(sums[j0:].max(initial=0.0))

    sups = {
        "alpha": [alpha_sup(h) for h in horizons],
        "beta": [beta_sup(h) for h in horizons],
    }
    ratios = bm.tail_ratios()
    details = {
        "sup_alpha": bm.row_sum_sup_alpha,
        "sup_beta": bm.col_sum_sup_beta,
        "sup_beta_including_j0": bm.col_sum_sup_beta_j0,
        "horizons": horizons,
        "horizon_sups": sups,
        "tail_ratio_alpha": ratios["alpha_row"],
        "tail_ratio_beta": ratios["beta_col"],
    }
    for name, s in sups.items():
        if all(np.isfinite(s)) and s[0] > 0 and s[1] >= 1.5 * s[0] and s[2] >= 1.5 * s[1]:
            return ConditionResult("a", Verdict.FAIL, {"matrix": name, "horizons": horizons, "sups": s}, details)
        if not np.isfinite(s[-1]):
            return ConditionResult("a", Verdict.FAIL, {"matrix": name, "horizons": horizons, "sups": s}, details)
    trend_alpha = alpha_sup(N) > 1.05 * alpha_sup(early)
    trend_beta = N >= 4 and beta_sup(N) > 1.05 * beta_sup(early)
    details["trending"] = {"alpha": bool(trend_alpha), "beta": bool(trend_beta)}
    decaying = all(np.isfinite(r) and r < 1 for r in ratios.values())
    if not trend_alpha and not trend_beta and decaying:
        return ConditionResult("a", Verdict.PASS_NUMERIC, None, details)
    return ConditionResult("a", Verdict.INCONCLUSIVE, None, details)


def check_condition_e(seq, R3: float, N_max: int, q: QuadratureSpec | None = None, nodes: int = DEFAULT_NODES) -> ConditionResult:
    """Convergence of ``sum_n 1/min_{|t|=R3} |Phi_n(t)|``.

    PASS: the last-quarter fitted term ratio is below 0.95.  FAIL: the minimum
    term over ``(N/2, N]`` stays within 10 % of the minimum over
    ``(N/4, N/2]``, which stays within 10 % of the one over ``(N/8, N/4]``.
    """
    expr = seq.expr if isinstance(seq, OperatorSequence) else seq
    log_terms = np.empty(N_max)
    for n in range(1, N_max + 1):
        lo, hi, _, _ = circle_log_extrema(expr, n, R3, nodes)
        if not np.isfinite(lo) or lo - hi < _floor(seq, n):
            raise ZeroOnContour(f"|Phi_{n}| nearly vanishes on |t|={R3:g}")
        log_terms[n - 1] = -lo
    with np.errstate(over="ignore"):
        terms = np.exp(log_terms)
    partial = np.cumsum(terms)
    ratio = _geometric_rate(terms) if np.all(np.isfinite(terms)) else math.exp(np.polyfit(
        np.arange(N_max)[-max(N_max // 4, 2):], log_terms[-max(N_max // 4, 2):], 1)[0])
    details = {
        "R3": R3,
        "terms": terms.tolist(),
        "partial_sums": partial.tolist(),
        "fitted_ratio": ratio,
    }
    if np.isfinite(ratio) and ratio < 0.95:
        return ConditionResult("e", Verdict.PASS_NUMERIC, None, details)
    blocks = [(max(N_max // 8, 1), max(N_max // 4, 2)), (max(N_max // 4, 2), max(N_max // 2, 3)), (max(N_max // 2, 3), N_max)]
    mins = [float(terms[a:b].min()) if b > a else math.nan for a, b in blocks]
    details["block_minima"] = mins
    if all(np.isfinite(mins)) and mins[0] > 0 and mins[1] >= 0.9 * mins[0] and mins[2] >= 0.9 * mins[1]:
        n_w = int(blocks[2][0] + np.argmin(terms[blocks[2][0] : blocks[2][1]])) + 1
        witness = {
            "n": n_w,
            "R3": R3,
            "term": float(terms[n_w - 1]),
            "lower_bound": mins[2],
            "partial_sums": {str(b): float(partial[b - 1]) for _, b in blocks},
        }
        return ConditionResult("e", Verdict.FAIL, witness, details)
    return ConditionResult("e", Verdict.INCONCLUSIVE, None, details)


# -- orchestration ------------------------------------------------------------------


@dataclass
class CriterionReport:
    conditions: dict
    overall: Verdict
    N_max: int
    annulus: Annulus
    per_n: dict = field(default_factory=dict)
    extras: dict = field(default_factory=dict)
    bound_matrices: BoundMatrices | None = None

    def verdict(self, label: str) -> Verdict:
        return self.conditions[label].verdict

    def to_dict(self, include_matrices: bool = False) -> dict:
        doc = {
            "overall": self.overall.value,
            "N_max": self.N_max,
            "annulus": self.annulus.to_dict(),
            "conditions": {k: self.conditions[k].to_dict() for k in sorted(self.conditions)},
            "extras": self.extras,
        }
        if include_matrices and self.bound_matrices is not None:
            doc["alpha"] = self.bound_matrices.alpha.tolist()
            doc["beta"] = self.bound_matrices.beta.tolist()
        return doc


def _blocked(labels, reason):
    return {k: ConditionResult(k, Verdict.INCONCLUSIVE, None, {"blocked_by": reason}) for k in labels}


def check_criterion(seq: OperatorSequence, ann: Annulus, N_max: int = 200, q: QuadratureSpec | None = None, nodes: int = DEFAULT_NODES) -> CriterionReport:
    """Run (b) as a gate, then (c)/(d) via the bound matrices, then (a) and (e)."""
    conditions = {}
    b = annulus_zero_free(seq, range(1, N_max + 1), ann, q, nodes)
    conditions["b"] = b.as_condition()
    bm = None
    per_n = {}
    if b.verdict is not Verdict.PASS_NUMERIC:
        conditions.update(_blocked("acde", "b"))
    else:
        try:
            bm = compute_bound_matrices(seq, ann.R1, ann.R2, N_max, q, nodes)
            conditions["c"], conditions["d"] = validate_bound_matrices(bm, seq)
            conditions["a"] = check_condition_a(bm)
        except ZeroOnContour as exc:
            conditions.update(_blocked("acd", str(exc)))
        try:
            conditions["e"] = check_condition_e(seq, ann.R3, N_max, q, nodes)
        except ZeroOnContour as exc:
            conditions.update(_blocked("e", str(exc)))
        per_n = _per_n_table(seq, ann, N_max, bm, conditions.get("e"), nodes)
    overall = combine(c.verdict for c in conditions.values())
    return CriterionReport(conditions, overall, N_max, ann, per_n, {}, bm)


def _per_n_table(seq, ann, N_max, bm, e_result, nodes):
    n = list(range(1, N_max + 1))
    table = {"n": n}
    if bm is not None:
        table["min_R1"] = np.exp(bm.log_min_R1[1:]).tolist()
        table["max_R1"] = np.exp(bm.log_max_R1[1:]).tolist()
        table["min_R2"] = np.exp(bm.log_min_R2[1:]).tolist()
        table["max_R2"] = np.exp(bm.log_max_R2[1:]).tolist()
    if e_result is not None and "terms" in e_result.details:
        terms = np.asarray(e_result.details["terms"])
        with np.errstate(divide="ignore"):
            table["min_R3"] = (1.0 / terms).tolist()
        table["partial_sum_e"] = e_result.details["partial_sums"]
    return table


# -- power sequences c_n Phi^n ---------------------------------------------------------


@dataclass(frozen=True)
class RatioStats:
    """Trailing-window inf/sup of ``|c_{n+1}/c_n|``.

    When doubling the window end moves the sup up (or the inf down) by more
    than 5 %, the corresponding estimate is reported as ``inf`` (or ``0``).
    """

    gamma_estimate: float
    delta_estimate: float
    window: tuple
    n_used: int
    raw_gamma: float
    raw_delta: float

    @property
    def finite(self) -> bool:
        return self.gamma_estimate > 0 and math.isfinite(self.delta_estimate)

    def to_dict(self) -> dict:
        return {
            "gamma_estimate": self.gamma_estimate,
            "delta_estimate": self.delta_estimate,
            "window": list(self.window),
            "n_used": self.n_used,
            "raw_gamma": self.raw_gamma,
            "raw_delta": self.raw_delta,
        }


def _window_ratios(c: Seq, N: int):
    lo = max(1, N // 2)
    r = np.empty(N - lo)
    for i, n in enumerate(range(lo, N)):
        for m in (n, n + 1):
            if np.isneginf(c.log_value(m).real):
                raise ZeroScalar(f"c_{m} = 0 inside the ratio window")
        r[i] = abs(c.ratio(n))
    return lo, r


def ratio_stats(c: Seq, N: int) -> RatioStats:
    """Estimate ``gamma = liminf |c_{n+1}/c_n|`` and ``delta = limsup`` over ``[N/2, N]``."""
    if N < 2:
        raise ValueError("window end must be at least 2")
    lo, r = _window_ratios(c, N)
    gamma, delta = float(r.min()), float(r.max())
    g_est, d_est = gamma, delta
    try:
        _, r2 = _window_ratios(c, 2 * N)
    except IndexError:
        r2 = None
    if r2 is not None:
        if r2.max() > 1.05 * delta:
            d_est = math.inf
        if r2.min() < gamma / 1.05:
            g_est = 0.0
    return RatioStats(g_est, d_est, (lo, N), N, gamma, delta)


@dataclass
class RadiusSearchResult:
    found: bool
    R1: float | None = None
    R2: float | None = None
    blocking: list = field(default_factory=list)
    margins: tuple | None = None

    def to_dict(self) -> dict:
        return {"found": self.found, "R1": self.R1, "R2": self.R2, "blocking": self.blocking,
                "margins": list(self.margins) if self.margins else None}


DEFAULT_GRID = np.logspace(-3, 3, 6 * 200 + 1)
_TIERS = ((0.5, 2.0), (0.95, 1.05))


def radius_search(phi: FunctionExpr, stats: RatioStats, grid=None, seed=None, scan_nodes: int = 1024) -> RadiusSearchResult:
    """Find ``R1 < R2`` with ``max|Phi| <= 0.95/delta`` on ``|t|=R1``,
    ``min|Phi| >= 1.05/gamma`` on ``|t|=R2`` and no zero of ``Phi`` in ``A(R1, R2)``.

    A ``seed=(R1, R2)`` is tried first.  The grid scan prefers the factor-2
    margins ``0.5/delta`` and ``2/gamma`` and falls back to the 5 % band: R1 is
    the outermost qualifying radius and R2 the innermost qualifying radius
    beyond it, which keeps the annulus narrow.
    """
    if not stats.finite:
        return RadiusSearchResult(False, blocking=["ratio statistics: gamma = 0 or delta = inf"])
    b1, b2 = 1.0 / stats.delta_estimate, 1.0 / stats.gamma_estimate
    seq1 = OperatorSequence(phi)
    blocking = []

    def confirm(R1, R2, f1, f2):
        ex1 = circle_extrema(phi, 1, R1)
        ex2 = circle_extrema(phi, 1, R2)
        if ex1.max_mod > 0.95 * b1:
            return f"max|Phi| = {ex1.max_mod:.6g} on |t|={R1:g} exceeds 0.95/delta"
        if ex2.min_mod < 1.05 * b2:
            return f"min|Phi| = {ex2.min_mod:.6g} on |t|={R2:g} is below 1.05/gamma"
        zf = annulus_zero_free(seq1, [1], Annulus(R1, R2))
        if zf.verdict is not Verdict.PASS_NUMERIC:
            return f"Phi has zeros in A({R1:g}, {R2:g}): {zf.witness}"
        return None

    if seed is not None:
        R1, R2 = float(seed[0]), float(seed[1])
        problem = confirm(R1, R2, 0.95, 1.05)
        if problem is None:
            return RadiusSearchResult(True, R1, R2, [], (0.95, 1.05))
        blocking.append(f"seed rejected: {problem}")

    grid = DEFAULT_GRID if grid is None else np.asarray(grid, dtype=float)
    log_max = np.empty(len(grid))
    log_min = np.empty(len(grid))
    for i, r in enumerate(grid):
        L = log_modulus(phi, 1, r, scan_nodes)
        log_max[i], log_min[i] = L.max(), L.min()
    for f1, f2 in _TIERS:
        ok1 = grid[log_max <= math.log(f1 * b1)]
        ok2 = grid[log_min >= math.log(f2 * b2)]
        if ok1.size == 0:
            blocking.append(f"no radius with max|Phi| <= {f1}/delta")
            continue
        if ok2.size == 0:
            blocking.append(f"no radius with min|Phi| >= {f2}/gamma")
            continue
        R1 = float(ok1.max())
        beyond = ok2[ok2 > R1]
        if beyond.size == 0:
            blocking.append(f"no radius beyond R1={R1:g} with min|Phi| >= {f2}/gamma")
            continue
        R2 = float(beyond.min())
        problem = confirm(R1, R2, f1, f2)
        if problem is None:
            return RadiusSearchResult(True, R1, R2, blocking, (f1, f2))
        blocking.append(problem)
    return RadiusSearchResult(False, blocking=blocking)


def check_power_sequence(phi: FunctionExpr, coeff: Seq | None, N_max: int = 200, q: QuadratureSpec | None = None,
                         ratio_window: int = 10_000, seed=None, nodes: int = DEFAULT_NODES) -> CriterionReport:
    """Criterion for ``c_n * Phi^n``: ratio statistics, radius search, then :func:`check_criterion`
    on ``A(R1, R2, R3 = R2)``."""
    c = coeff if coeff is not None else Seq.make("constant", c=1.0)
    extras: dict = {}
    try:
        stats = ratio_stats(c, ratio_window)
        extras["ratio_stats"] = stats.to_dict()
    except ZeroScalar as exc:
        stats = None
        extras["ratio_stats"] = {"error": str(exc)}
    if stats is None or not stats.finite:
        search = RadiusSearchResult(False, blocking=["ratio statistics: gamma = 0 or delta = inf"])
    else:
        search = radius_search(phi, stats, seed=seed)
    extras["radius_search"] = search.to_dict()
    if not search.found:
        conditions = _blocked("abcde", "radius search: " + "; ".join(search.blocking))
        return CriterionReport(conditions, Verdict.INCONCLUSIVE, N_max, Annulus(1.0, 1.0), {}, extras)
    seq = OperatorSequence.power_family(phi, coeff)
    report = check_criterion(seq, Annulus(search.R1, search.R2, search.R2), N_max, q, nodes)
    report.extras.update(extras)
    return report
