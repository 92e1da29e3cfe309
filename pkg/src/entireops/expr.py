"""Expression trees for index-dependent families of entire functions.

A :class:`FunctionExpr` describes ``Phi_n(z)`` for every index ``n``.  Leaves
are the variable ``z``, complex constants, and :class:`Seq` scalars that
depend on ``n`` only; inner nodes are sums, products, nonnegative integer
powers (exponent may depend on ``n``) and ``exp(a*z)`` (``a`` may depend on
``n``).  By convention ``Phi_0 == 1`` for every family; :func:`evaluate`,
:func:`log_evaluate` and :func:`taylor_coeffs` all honour it.

Three evaluation routes are provided:

* :func:`evaluate` -- plain complex arithmetic, falling back to the
  log-domain route when an intermediate overflows;
* :func:`log_evaluate` -- returns ``log Phi_n(z)`` (real part = log-modulus,
  imaginary part = a continuous-enough phase) and never overflows for
  moderate indices; used for all modulus ratios and winding numbers;
* :func:`taylor_coeffs` -- truncated power-series arithmetic on the tree.

Expressions serialize to a small JSON schema, see :func:`to_json` and
``docs/formats.md``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Any

import numpy as np
from scipy.special import gammaln

from .taylor import TaylorPoly

_LOG_DBL_MAX = math.log(np.finfo(float).max)

SEQ_TAGS = ("constant", "geometric", "log1p", "power", "list", "factorial")


class FunctionExpr:
    """Base class; supports ``+``, ``*``, ``/`` (by scalars), ``**`` and unary ``-``."""

    def __add__(self, other):
        return Add(self, as_expr(other))

    def __radd__(self, other):
        return Add(as_expr(other), self)

    def __sub__(self, other):
        return Add(self, Mul(Const(-1.0), as_expr(other)))

    def __mul__(self, other):
        return Mul(self, as_expr(other))

    def __rmul__(self, other):
        return Mul(as_expr(other), self)

    def __truediv__(self, other):
        if isinstance(other, FunctionExpr):
            return NotImplemented
        return Mul(self, Const(1.0 / complex(other)))

    def __neg__(self):
        return Mul(Const(-1.0), self)

    def __pow__(self, exponent):
        return Pow(self, as_expr(exponent))

    # subclasses implement the following
    def _eval(self, n: int, z):
        raise NotImplementedError

    def _log(self, n: int, z):
        raise NotImplementedError

    def _series(self, n: int, M: int) -> np.ndarray:
        raise NotImplementedError

    def _degree(self, n: int):
        """Polynomial degree in z at index n, or None when transcendental."""
        raise NotImplementedError

    def depends_on_z(self) -> bool:
        raise NotImplementedError


def as_expr(x) -> FunctionExpr:
    if isinstance(x, FunctionExpr):
        return x
    return Const(complex(x))


@dataclass(frozen=True)
class Z(FunctionExpr):
    def _eval(self, n, z):
        return z

    def _log(self, n, z):
        return np.log(z)

    def _series(self, n, M):
        s = np.zeros(M + 1, dtype=complex)
        if M >= 1:
            s[1] = 1.0
        return s

    def _degree(self, n):
        return 1

    def depends_on_z(self):
        return True

    def __repr__(self):
        return "z"


@dataclass(frozen=True)
class Const(FunctionExpr):
    value: complex

    def __post_init__(self):
        object.__setattr__(self, "value", complex(self.value))

    def _eval(self, n, z):
        return self.value

    def _log(self, n, z):
        return np.log(self.value + 0j)

    def _series(self, n, M):
        s = np.zeros(M + 1, dtype=complex)
        s[0] = self.value
        return s

    def _degree(self, n):
        return 0

    def depends_on_z(self):
        return False

    def __repr__(self):
        v = self.value
        return repr(v.real) if v.imag == 0 else repr(v)


@dataclass(frozen=True)
class Seq(FunctionExpr):
    """Scalar depending on the index only.

    Tags and parameters:

    ``constant`` (c)      c
    ``geometric`` (r)     r**n
    ``log1p``             log(n + 1)   -- shifted so that c_1 != 0
    ``power`` (p)         n**p
    ``list`` (values)     values[n]; IndexError past the end
    ``factorial``         n!
    """

    tag: str
    params: tuple = ()

    def __post_init__(self):
        if self.tag not in SEQ_TAGS:
            raise ValueError(f"unknown seq tag {self.tag!r}; expected one of {SEQ_TAGS}")
        params = dict(self.params)
        if self.tag == "list":
            params["values"] = tuple(complex(v) for v in params["values"])
        for key in ("c", "r"):
            if key in params:
                params[key] = complex(params[key])
        if "p" in params:
            params["p"] = float(params["p"])
        object.__setattr__(self, "params", tuple(sorted(params.items())))

    @property
    def p(self) -> dict:
        return dict(self.params)

    def value(self, n: int) -> complex:
        prm = self.p
        if self.tag == "constant":
            return prm["c"]
        if self.tag == "geometric":
            return prm["r"] ** n
        if self.tag == "log1p":
            return complex(math.log(n + 1))
        if self.tag == "power":
            return complex(float(n) ** prm["p"])
        if self.tag == "list":
            return prm["values"][n]
        if n > 170:
            raise OverflowError(f"{n}! overflows double precision")
        return complex(math.factorial(n))

    def log_value(self, n: int) -> complex:
        prm = self.p
        if self.tag == "geometric":
            return n * np.log(prm["r"])
        if self.tag == "factorial":
            return complex(gammaln(n + 1))
        if self.tag == "power":
            return complex(prm["p"] * math.log(n)) if n > 0 else complex(-np.inf)
        with np.errstate(divide="ignore"):
            return complex(np.log(self.value(n) + 0j))

    def ratio(self, n: int) -> complex:
        """``c_{n+1} / c_n`` computed without forming large powers."""
        prm = self.p
        if self.tag == "constant":
            return 1.0 + 0j
        if self.tag == "geometric":
            return prm["r"]
        if self.tag == "factorial":
            return complex(n + 1)
        if self.tag == "power":
            return complex(((n + 1) / n) ** prm["p"]) if n > 0 else complex(np.inf)
        return self.value(n + 1) / self.value(n)

    def _eval(self, n, z):
        return self.value(n)

    def _log(self, n, z):
        return self.log_value(n)

    def _series(self, n, M):
        s = np.zeros(M + 1, dtype=complex)
        s[0] = self.value(n)
        return s

    def _degree(self, n):
        return 0

    def depends_on_z(self):
        return False

    @staticmethod
    def make(tag: str, **params) -> "Seq":
        return Seq(tag, tuple(params.items()))

    def __repr__(self):
        prm = self.p
        if self.tag == "constant":
            return f"{prm['c']}"
        if self.tag == "geometric":
            r = prm["r"]
            return f"{r.real if r.imag == 0 else r}^n"
        if self.tag == "log1p":
            return "log(n+1)"
        if self.tag == "power":
            return "n" if prm["p"] == 1 else f"n^{prm['p']}"
        if self.tag == "factorial":
            return "n!"
        return f"list[{len(prm['values'])}]"


@dataclass(frozen=True)
class Add(FunctionExpr):
    left: FunctionExpr
    right: FunctionExpr

    def _eval(self, n, z):
        return self.left._eval(n, z) + self.right._eval(n, z)

    def _log(self, n, z):
        return _log_add(self.left._log(n, z), self.right._log(n, z))

    def _series(self, n, M):
        return self.left._series(n, M) + self.right._series(n, M)

    def _degree(self, n):
        a, b = self.left._degree(n), self.right._degree(n)
        return None if a is None or b is None else max(a, b)

    def depends_on_z(self):
        return self.left.depends_on_z() or self.right.depends_on_z()

    def __repr__(self):
        return f"({self.left!r} + {self.right!r})"


@dataclass(frozen=True)
class Mul(FunctionExpr):
    left: FunctionExpr
    right: FunctionExpr

    def _eval(self, n, z):
        return self.left._eval(n, z) * self.right._eval(n, z)

    def _log(self, n, z):
        return self.left._log(n, z) + self.right._log(n, z)

    def _series(self, n, M):
        return np.convolve(self.left._series(n, M), self.right._series(n, M))[: M + 1]

    def _degree(self, n):
        a, b = self.left._degree(n), self.right._degree(n)
        return None if a is None or b is None else a + b

    def depends_on_z(self):
        return self.left.depends_on_z() or self.right.depends_on_z()

    def __repr__(self):
        return f"{self.left!r}*{self.right!r}"


@dataclass(frozen=True)
class Pow(FunctionExpr):
    """``base ** k`` with ``k`` a nonnegative integer given by an index-only expression."""

    base: FunctionExpr
    exponent: FunctionExpr

    def __post_init__(self):
        if self.exponent.depends_on_z():
            raise ValueError("Pow exponent must not depend on z")

    def power(self, n: int) -> int:
        k = complex(self.exponent._eval(n, 0.0))
        ki = int(round(k.real))
        if abs(k - ki) > 1e-9 or ki < 0:
            raise ValueError(f"Pow exponent evaluates to {k} at n={n}; need a nonnegative integer")
        return ki

    def _eval(self, n, z):
        return _ipow(self.base._eval(n, z), self.power(n))

    def _log(self, n, z):
        k = self.power(n)
        if k == 0:
            return np.zeros_like(np.asarray(z, dtype=complex))
        return k * self.base._log(n, z)

    def _series(self, n, M):
        k = self.power(n)
        b = self.base._series(n, M)
        out = np.zeros(M + 1, dtype=complex)
        out[0] = 1.0
        while k:
            if k & 1:
                out = np.convolve(out, b)[: M + 1]
            k >>= 1
            if k:
                b = np.convolve(b, b)[: M + 1]
        return out

    def _degree(self, n):
        d = self.base._degree(n)
        return None if d is None else d * self.power(n)

    def depends_on_z(self):
        return self.base.depends_on_z()

    def __repr__(self):
        return f"{self.base!r}^{self.exponent!r}"


@dataclass(frozen=True)
class Exp(FunctionExpr):
    """``exp(a * z)`` with ``a`` an index-only expression."""

    scale: FunctionExpr

    def __post_init__(self):
        if self.scale.depends_on_z():
            raise ValueError("Exp scale must not depend on z")

    def a(self, n: int) -> complex:
        return complex(self.scale._eval(n, 0.0))

    def _eval(self, n, z):
        return np.exp(self.a(n) * z)

    def _log(self, n, z):
        return self.a(n) * np.asarray(z, dtype=complex)

    def _series(self, n, M):
        a = self.a(n)
        s = np.empty(M + 1, dtype=complex)
        s[0] = 1.0
        for k in range(1, M + 1):
            s[k] = s[k - 1] * a / k
        return s

    def _degree(self, n):
        return 0 if self.a(n) == 0 else None

    def depends_on_z(self):
        return True

    def __repr__(self):
        return f"exp({self.scale!r}*z)"


def _ipow(x, k: int):
    result = np.ones_like(np.asarray(x, dtype=complex))
    base = np.asarray(x, dtype=complex)
    while k:
        if k & 1:
            result = result * base
        k >>= 1
        if k:
            base = base * base
    return result if result.ndim else complex(result)


def _log_add(a, b):
    a = np.asarray(a, dtype=complex)
    b = np.asarray(b, dtype=complex)
    m = np.maximum(a.real, b.real)
    finite = np.isfinite(m)
    m0 = np.where(finite, m, 0.0)
    with np.errstate(divide="ignore", invalid="ignore"):
        s = np.exp(a - m0) + np.exp(b - m0)
        out = np.log(s) + m0
    out = np.where(finite, out, complex(-np.inf))
    return out if out.ndim else complex(out)


# -- index variable and scalar catalog -------------------------------------------

#: The index ``n`` itself (``n**1``).
N = Seq.make("power", p=1)


def const_seq(c) -> Seq:
    return Seq.make("constant", c=c)


def geometric(r) -> Seq:
    return Seq.make("geometric", r=r)


def log1p_seq() -> Seq:
    return Seq("log1p")


def power_seq(p) -> Seq:
    return Seq.make("power", p=p)


def explicit(values) -> Seq:
    return Seq.make("list", values=tuple(values))


def factorial_seq() -> Seq:
    return Seq("factorial")


def poly_expr(coeffs) -> FunctionExpr:
    """Index-independent polynomial ``sum coeffs[k] z**k`` (Horner-shaped tree)."""
    coeffs = [complex(c) for c in coeffs]
    expr: FunctionExpr = Const(coeffs[-1])
    for c in reversed(coeffs[:-1]):
        expr = Add(Const(c), Mul(Z(), expr))
    return expr


# -- public evaluation API -------------------------------------------------------


def evaluate(expr: FunctionExpr, n: int, z):
    """``Phi_n(z)``; ``n == 0`` gives 1.  Accepts scalars or arrays for ``z``.

    Intermediate overflow is retried in the log domain; an OverflowError is
    raised only when the result itself is out of double range.
    """
    if n < 0:
        raise ValueError("index must be nonnegative")
    z_arr = np.asarray(z, dtype=complex)
    if n == 0:
        out = np.ones_like(z_arr)
        return out if out.ndim else complex(out)
    with np.errstate(over="ignore", invalid="ignore"):
        val = np.asarray(expr._eval(n, z_arr), dtype=complex) + np.zeros_like(z_arr)
    bad = ~np.isfinite(val)
    if bad.any():
        w = np.asarray(log_evaluate(expr, n, z_arr[bad] if z_arr.ndim else z_arr))
        if np.any(w.real > _LOG_DBL_MAX):
            raise OverflowError(f"|Phi_{n}(z)| exceeds double range")
        if z_arr.ndim:
            val[bad] = np.exp(w)
        else:
            val = np.exp(w)
    return val if val.ndim else complex(val)


def log_evaluate(expr: FunctionExpr, n: int, z):
    """Complex logarithm of ``Phi_n(z)``; real part is ``log|Phi_n(z)|`` (``-inf`` at zeros)."""
    z_arr = np.asarray(z, dtype=complex)
    if n == 0:
        out = np.zeros_like(z_arr)
        return out if out.ndim else complex(out)
    with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
        w = np.asarray(expr._log(n, z_arr), dtype=complex) + np.zeros_like(z_arr)
    return w if w.ndim else complex(w)


def taylor_coeffs(expr: FunctionExpr, n: int, M: int, radius: float = 1.0) -> TaylorPoly:
    """Taylor coefficients of ``Phi_n`` through degree ``M``.

    For transcendental ``Phi_n`` the result is marked inexact and carries a
    geometric tail estimate on ``|z| <= radius``, fitted to the last quartile
    of the weighted coefficients ``|a_k| radius**k``.
    """
    if M < 0:
        raise ValueError("truncation order must be nonnegative")
    if n == 0:
        c = np.zeros(M + 1, dtype=complex)
        c[0] = 1.0
        return TaylorPoly(c)
    with np.errstate(over="ignore", invalid="ignore"):
        c = expr._series(n, M)
    if not np.all(np.isfinite(c)):
        raise OverflowError(f"Taylor coefficients of Phi_{n} overflow double precision")
    deg = expr._degree(n)
    if deg is not None and deg <= M:
        return TaylorPoly(c)
    tail = _tail_estimate(c, radius)
    return TaylorPoly(c, is_exact=False, tail_bound=tail, notes=(f"tail bound on |z|<={radius:g}",))


def _tail_estimate(c: np.ndarray, radius: float) -> float:
    M = len(c) - 1
    b = np.abs(c) * radius ** np.arange(M + 1)
    lo = min(int(np.ceil(0.75 * (M + 1))), max(M - 1, 0))
    idx = np.arange(lo, M + 1)
    idx = idx[b[idx] > 0]
    if idx.size == 0:
        return 0.0
    if idx.size == 1:
        return float(b[idx[0]])
    rates = (b[idx[1:]] / b[idx[:-1]]) ** (1.0 / np.diff(idx))
    q = float(rates.max())
    if q >= 1.0:
        return float("inf")
    k_last = idx[-1]
    return float(b[k_last] * q ** (M + 1 - k_last) / (1.0 - q))


# -- JSON --------------------------------------------------------------------------


def _num_to_json(v: complex):
    v = complex(v)
    return v.real if v.imag == 0 else [v.real, v.imag]


def _num_from_json(v) -> complex:
    if isinstance(v, (list, tuple)):
        if len(v) != 2:
            raise ValueError(f"complex number must be [re, im], got {v!r}")
        return complex(float(v[0]), float(v[1]))
    if isinstance(v, bool) or not isinstance(v, (int, float)):
        raise ValueError(f"expected a number, got {v!r}")
    return complex(v)


def to_json(expr: FunctionExpr) -> dict:
    """Serialize to the ``{"kind": ...}`` expression schema."""
    if isinstance(expr, Z):
        return {"kind": "z"}
    if isinstance(expr, Const):
        return {"kind": "const", "value": _num_to_json(expr.value)}
    if isinstance(expr, Seq):
        params: dict[str, Any] = {}
        for k, v in expr.params:
            if k == "values":
                params[k] = [_num_to_json(x) for x in v]
            elif isinstance(v, complex):
                params[k] = _num_to_json(v)
            else:
                params[k] = v
        return {"kind": "seq", "tag": expr.tag, "params": params}
    if isinstance(expr, Add):
        return {"kind": "add", "left": to_json(expr.left), "right": to_json(expr.right)}
    if isinstance(expr, Mul):
        return {"kind": "mul", "left": to_json(expr.left), "right": to_json(expr.right)}
    if isinstance(expr, Pow):
        return {"kind": "pow", "base": to_json(expr.base), "exponent": to_json(expr.exponent)}
    if isinstance(expr, Exp):
        return {"kind": "exp", "scale": to_json(expr.scale)}
    raise TypeError(f"cannot serialize {type(expr).__name__}")


_FIELDS = {
    "z": set(),
    "const": {"value"},
    "seq": {"tag", "params"},
    "add": {"left", "right"},
    "mul": {"left", "right"},
    "pow": {"base", "exponent"},
    "exp": {"scale"},
}


def from_json(doc: dict, where: str = "expr") -> FunctionExpr:
    """Inverse of :func:`to_json`; raises ValueError naming the offending path."""
    if not isinstance(doc, dict) or "kind" not in doc:
        raise ValueError(f"{where}: expected an object with a 'kind' field")
    kind = doc["kind"]
    if kind not in _FIELDS:
        raise ValueError(f"{where}: unknown kind {kind!r}")
    extra = set(doc) - _FIELDS[kind] - {"kind"}
    missing = {f for f in _FIELDS[kind] if f not in doc and not (kind == "seq" and f == "params")}
    if extra:
        raise ValueError(f"{where}: unexpected fields {sorted(extra)} for kind {kind!r}")
    if missing:
        raise ValueError(f"{where}: missing fields {sorted(missing)} for kind {kind!r}")
    try:
        if kind == "z":
            return Z()
        if kind == "const":
            return Const(_num_from_json(doc["value"]))
        if kind == "seq":
            params = dict(doc.get("params", {}))
            if "values" in params:
                params["values"] = tuple(_num_from_json(v) for v in params["values"])
            for key in ("c", "r"):
                if key in params:
                    params[key] = _num_from_json(params[key])
            return Seq(doc["tag"], tuple(params.items()))
        if kind == "add":
            return Add(from_json(doc["left"], where + ".left"), from_json(doc["right"], where + ".right"))
        if kind == "mul":
            return Mul(from_json(doc["left"], where + ".left"), from_json(doc["right"], where + ".right"))
        if kind == "pow":
            return Pow(from_json(doc["base"], where + ".base"), from_json(doc["exponent"], where + ".exponent"))
        return Exp(from_json(doc["scale"], where + ".scale"))
    except (KeyError, TypeError) as exc:
        raise ValueError(f"{where}: malformed {kind!r} node ({exc})") from None
    except ValueError as exc:
        if str(exc).startswith(where):
            raise
        raise ValueError(f"{where}: {exc}") from None
