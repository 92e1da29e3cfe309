"""Immutable complex coefficient vectors: polynomials and truncated Taylor series."""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from typing import Sequence

import numpy as np

from .errors import DegreeCapError

#: Largest polynomial order accepted by the operator and Borel machinery.
#: n! overflows a double at n = 171; 100 keeps k!·a_k well inside range.
DEGREE_CAP = 100


@dataclass(frozen=True, eq=False)
class TaylorPoly:
    """Coefficients ``coeffs[k]`` of ``z**k``.

    ``is_exact`` is False for truncations of an infinite series; such objects
    may carry an estimated ``tail_bound`` (sup of the discarded tail on the
    disk the producer states in ``notes``).
    """

    coeffs: np.ndarray
    is_exact: bool = True
    tail_bound: float = 0.0
    notes: tuple = field(default=())

    def __post_init__(self):
        c = np.array(self.coeffs, dtype=complex).ravel()
        if c.size == 0:
            c = np.zeros(1, dtype=complex)
        c.flags.writeable = False
        object.__setattr__(self, "coeffs", c)
        object.__setattr__(self, "notes", tuple(self.notes))

    @classmethod
    def monomial(cls, k: int, scale: complex = 1.0) -> "TaylorPoly":
        c = np.zeros(k + 1, dtype=complex)
        c[k] = scale
        return cls(c)

    @classmethod
    def from_roots(cls, roots: Sequence[complex], lead: complex = 1.0) -> "TaylorPoly":
        return cls(lead * np.polynomial.polynomial.polyfromroots(roots))

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    @property
    def degree(self) -> int:
        """Index of the last nonzero coefficient (0 for the zero polynomial)."""
        nz = np.flatnonzero(self.coeffs)
        return int(nz[-1]) if nz.size else 0

    def __call__(self, z):
        z = np.asarray(z, dtype=complex)
        acc = np.zeros_like(z)
        for a in self.coeffs[::-1]:
            acc = acc * z + a
        return acc if acc.ndim else complex(acc)

    def derive(self) -> "TaylorPoly":
        if self.order == 0:
            return replace(self, coeffs=np.zeros(1, dtype=complex))
        k = np.arange(1, self.order + 1)
        return replace(self, coeffs=self.coeffs[1:] * k)

    def translate(self, a: complex) -> "TaylorPoly":
        """Coefficients of ``z -> f(z + a)`` (Taylor shift by repeated synthetic division)."""
        c = self.coeffs.copy()
        d = self.order
        for i in range(d):
            for j in range(d - 1, i - 1, -1):
                c[j] += a * c[j + 1]
        return replace(self, coeffs=c)

    def trimmed(self) -> "TaylorPoly":
        return replace(self, coeffs=self.coeffs[: self.degree + 1])

    def padded(self, order: int) -> "TaylorPoly":
        if order <= self.order:
            return self
        c = np.zeros(order + 1, dtype=complex)
        c[: self.order + 1] = self.coeffs
        return replace(self, coeffs=c)

    def check_cap(self, cap: int = DEGREE_CAP) -> None:
        if self.order > cap:
            raise DegreeCapError(f"order {self.order} exceeds the degree cap {cap}")

    def _combine(self, other: "TaylorPoly", sign: float) -> "TaylorPoly":
        m = max(self.order, other.order)
        a, b = self.padded(m).coeffs, other.padded(m).coeffs
        return TaylorPoly(
            a + sign * b,
            is_exact=self.is_exact and other.is_exact,
            tail_bound=self.tail_bound + other.tail_bound,
            notes=self.notes + tuple(n for n in other.notes if n not in self.notes),
        )

    def __add__(self, other):
        if not isinstance(other, TaylorPoly):
            other = TaylorPoly([other])
        return self._combine(other, 1.0)

    __radd__ = __add__

    def __sub__(self, other):
        if not isinstance(other, TaylorPoly):
            other = TaylorPoly([other])
        return self._combine(other, -1.0)

    def __mul__(self, scalar):
        if isinstance(scalar, TaylorPoly):
            return NotImplemented
        return replace(self, coeffs=self.coeffs * scalar, tail_bound=self.tail_bound * abs(scalar))

    __rmul__ = __mul__

    def __neg__(self):
        return self * -1.0

    def allclose(self, other: "TaylorPoly", rtol=1e-12, atol=1e-14) -> bool:
        m = max(self.order, other.order)
        return bool(np.allclose(self.padded(m).coeffs, other.padded(m).coeffs, rtol=rtol, atol=atol))

    def __repr__(self):
        tag = "" if self.is_exact else f", truncated, tail<={self.tail_bound:.2e}"
        return f"TaylorPoly({np.array2string(self.coeffs, precision=6)}{tag})"


def as_poly(p) -> TaylorPoly:
    """Accept a TaylorPoly, a coefficient sequence, or a scalar."""
    if isinstance(p, TaylorPoly):
        return p
    return TaylorPoly(np.atleast_1d(np.asarray(p, dtype=complex)))
