"""Named operator families used by tests, demos and the CLI.

Each entry pairs a sequence ``n -> Phi_n`` with the annulus on which the
criterion is expected to hold (or fail, for the negative controls).
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

from .criterion import Annulus
from .expr import Const, Exp, N, Z, factorial_seq, from_json, geometric, log1p_seq
from .operators import OperatorSequence


@dataclass(frozen=True)
class Fixture:
    name: str
    seq: OperatorSequence
    annulus: Annulus | None
    expected: str
    description: str


def phi_small_exp():
    """``z + e^z / 9``: one simple zero near ``-0.1``, none elsewhere in ``|z| <= 2``."""
    return Z() + Exp(Const(1.0)) / 9


def derivative() -> OperatorSequence:
    return OperatorSequence.power_family(Z(), label="derivative")


def translation(a: complex = 1.0) -> OperatorSequence:
    """``tau_a^n`` with symbol ``e^{a n z}``."""
    return OperatorSequence(Exp(Const(a) * N), label="translation")


def five_nine() -> OperatorSequence:
    """``5^n z^n + 9^{-n} e^{nz}``."""
    return OperatorSequence(geometric(5.0) * Z() ** N + geometric(1.0 / 9.0) * Exp(N), label="five_nine")


def phi_log() -> OperatorSequence:
    """``log(n+1) (z + e^z/9)^n``."""
    return OperatorSequence.power_family(phi_small_exp(), log1p_seq(), label="phi_log")


def phi_power() -> OperatorSequence:
    return OperatorSequence.power_family(phi_small_exp(), label="phi_power")


def factorial_derivative() -> OperatorSequence:
    """``n! z^n``: consecutive coefficient ratios ``n + 1`` are unbounded."""
    return OperatorSequence.power_family(Z(), factorial_seq(), label="factorial_derivative")


CATALOG = {
    "derivative": Fixture("derivative", derivative(), Annulus(0.5, 2.0, 2.0), "PASS_NUMERIC", "powers of D"),
    "five_nine": Fixture("five_nine", five_nine(), Annulus(1 / 15, 1.0, 1.0), "PASS_NUMERIC",
                         "5^n z^n + 9^-n e^{nz}"),
    # the zero of z + e^z/9 near -0.1 lies inside |t| = 1/2, so A(1/2, 2) is zero-free
    "phi_log": Fixture("phi_log", phi_log(), Annulus(0.5, 2.0, 2.0), "PASS_NUMERIC", "log(n+1) (z + e^z/9)^n"),
    "phi_power": Fixture("phi_power", phi_power(), None, "", "(z + e^z/9)^n"),
    "translation": Fixture("translation", translation(), None, "", "powers of the unit translation"),
    "derivative_divergent": Fixture("derivative_divergent", derivative(), Annulus(1.0, 1.0, 0.5), "FAIL",
                                    "powers of D on a circle where (a) and (e) break"),
    "factorial_derivative": Fixture("factorial_derivative", factorial_derivative(), None, "INCONCLUSIVE",
                                    "n! D^n, unbounded coefficient ratios"),
}

#: Families with a zero-free annulus, used for right-inverse checks.
RIGHT_INVERSE_FIXTURES = ("derivative", "five_nine", "phi_log")


def get(name: str) -> Fixture:
    try:
        return CATALOG[name]
    except KeyError:
        raise KeyError(f"unknown fixture {name!r}; known: {sorted(CATALOG)}") from None


def load_catalog_json(path=None) -> dict:
    """Fixtures from the bundled ``catalog.json`` (same content as :data:`CATALOG`)."""
    path = Path(path) if path else Path(__file__).parent / "data" / "catalog.json"
    doc = json.loads(path.read_text())
    out = {}
    for name, e in doc["entries"].items():
        if "phi" in e:
            coeff = from_json(e["coeff"], f"{name}.coeff") if e["coeff"] is not None else None
            seq = OperatorSequence.power_family(from_json(e["phi"], f"{name}.phi"), coeff, label=name)
        else:
            seq = OperatorSequence(from_json(e["expr"], f"{name}.expr"), label=name)
        ann = Annulus(**e["annulus"]) if "annulus" in e else None
        out[name] = Fixture(name, seq, ann, e.get("expected", ""), e["description"])
    return out
