"""Convolution operators ``Phi_n(D)`` acting on polynomials.

``Phi_n(D) f = sum_j h_j f^{(j)}`` where ``h_j`` are the Taylor coefficients
of ``Phi_n``.  For a polynomial ``f`` of degree ``d`` only ``h_0..h_d``
contribute, so the action is a finite, exact sum even when ``Phi_n`` is
transcendental (e.g. the translation ``exp(a z)``).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .expr import Const, Exp, FunctionExpr, Mul, N, Pow, Seq, evaluate, taylor_coeffs
from .taylor import DEGREE_CAP, TaylorPoly, as_poly

TRUNCATION_NOTE = "input was a truncated series; coefficients near the truncation order are unreliable"


@dataclass(frozen=True)
class OperatorSequence:
    """``n -> Phi_n(D)`` backed by an expression with free index ``n``.

    ``phi`` and ``coeff`` are set when the family has the form
    ``coeff_n * phi**n``; the power-sequence criterion needs them.
    """

    expr: FunctionExpr
    label: str = ""
    n_start: int = 1
    phi: FunctionExpr | None = None
    coeff: Seq | None = None

    def __call__(self, n: int, z):
        return evaluate(self.expr, n, z)

    def symbol(self, n: int, M: int) -> TaylorPoly:
        return taylor_coeffs(self.expr, n, M)

    def log_zero_floor(self, n: int, rel: float = 1e-8) -> float:
        """Log of the relative modulus floor below which ``Phi_n`` counts as vanishing.

        For ``c_n * phi**n`` the floor is applied to ``phi`` itself, i.e. it is
        ``rel**n`` for ``Phi_n``: the zeros are those of ``phi`` and the
        min/max ratio of ``phi**n`` shrinks geometrically without any zero nearby.
        """
        return (max(n, 1) if self.phi is not None else 1) * math.log(rel)

    @classmethod
    def power_family(cls, phi: FunctionExpr, coeff: Seq | None = None, label: str = "") -> "OperatorSequence":
        return cls(operator_power_expr(phi, coeff=coeff), label=label, phi=phi, coeff=coeff)


def operator_power_expr(base: FunctionExpr, n: int | None = None, coeff: Seq | None = None) -> FunctionExpr:
    """``c_n * base**n``.

    With ``n=None`` the exponent is the free index; otherwise the integer ``n``
    is frozen into the tree.  ``coeff=None`` means ``c_n = 1``.
    """
    exponent = N if n is None else Const(n)
    power = Pow(base, exponent)
    return power if coeff is None else Mul(coeff, power)


def apply_symbol(h: np.ndarray, f: TaylorPoly) -> TaylorPoly:
    """``sum_j h[j] f^{(j)}`` for a coefficient vector ``h``."""
    out = np.zeros(f.order + 1, dtype=complex)
    g = f.coeffs.copy()
    for j in range(min(len(h), f.order + 1)):
        if h[j] != 0:
            out[: len(g)] += h[j] * g
        if len(g) > 1:
            g = g[1:] * np.arange(1, len(g))
        else:
            g = np.zeros(1, dtype=complex)
    return TaylorPoly(
        out,
        is_exact=f.is_exact,
        tail_bound=f.tail_bound,
        notes=f.notes if f.is_exact else f.notes + (TRUNCATION_NOTE,),
    )


def apply_operator(seq: OperatorSequence | FunctionExpr, n: int, f) -> TaylorPoly:
    """``Phi_n(D) f`` for a polynomial (or truncated series) ``f``.

    ``n == 0`` returns ``f`` unchanged.  Raises DegreeCapError past order 100.
    """
    f = as_poly(f)
    f.check_cap(DEGREE_CAP)
    if n == 0:
        return f
    expr = seq.expr if isinstance(seq, OperatorSequence) else seq
    h = taylor_coeffs(expr, n, f.order).coeffs
    return apply_symbol(h, f)


def commutation_check(seq: OperatorSequence, n: int, a: complex, f, samples) -> float:
    """Max over ``samples`` of ``|Phi_n(D)(tau_a f) - tau_a(Phi_n(D) f)|``.

    The first path shifts coefficients, the second evaluates at shifted points,
    so the two share no translation code.
    """
    f = as_poly(f)
    z = np.asarray(samples, dtype=complex)
    shifted_then_applied = apply_operator(seq, n, f.translate(a))(z)
    applied_then_shifted = apply_operator(seq, n, f)(z + a)
    return float(np.max(np.abs(shifted_then_applied - applied_then_shifted)))


def translation(a: complex) -> FunctionExpr:
    """Symbol of ``tau_a``: ``exp(a z)``."""
    return Exp(Const(a))
