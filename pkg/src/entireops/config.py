"""Experiment configuration files (JSON).

A config names the operator family as an expression document, the annulus,
horizons, quadrature settings and target polynomials.  Defaults are filled in
only for absent fields, unknown keys are rejected, and every violation is
reported at once.  ``dumps(parse(text))`` is canonical, so
``parse -> print -> parse`` is a fixed point.
"""

from __future__ import annotations

import copy
import json
from dataclasses import dataclass, field
from pathlib import Path

from .borel import QuadratureSpec
from .criterion import Annulus
from .errors import ConfigError
from .expr import FunctionExpr, Seq, _num_from_json, _num_to_json, from_json, to_json
from .operators import OperatorSequence
from .taylor import TaylorPoly

CONFIG_VERSION = 1

DEFAULTS = {
    "N_max": 200,
    "k_max": 50,
    "K": 1.0,
    "quadrature": {"M0": 64, "tol": 1e-12, "max_doublings": 10},
    "targets": [[1.0], [0.0, 1.0], [0.0, 0.0, 1.0]],
    "options": {},
}

TOP_KEYS = {"version", "label", "sequence", "power", "annulus", "N_max", "k_max", "K", "quadrature", "targets", "options"}
QUAD_KEYS = {"M0", "tol", "max_doublings"}
ANNULUS_KEYS = {"R1", "R2", "R3"}
POWER_KEYS = {"phi", "coeff"}
OPTION_KEYS = {
    "radii",            # zeros, borel: contour radii
    "n_values",         # zeros, apply, inverse, orbit: indices n
    "points",           # apply, inverse: evaluation points
    "contour_radius",   # inverse, bg: radius for S_n
    "f",                # orbit: starting polynomial
    "target",           # orbit: hitting-density target polynomial
    "eps",              # orbit: hitting-density ball radius
    "horizon",          # orbit: hitting-density horizon
    "ratio_window",     # check32: window end for coefficient ratios
    "seed_radii",       # check32: (R1, R2) tried before the grid scan
    "n_inverse",        # bg: largest n for condition (iv)
}


@dataclass
class ExperimentConfig:
    sequence: FunctionExpr | None
    annulus: Annulus | None
    N_max: int
    k_max: int
    K: float
    quadrature: dict
    targets: list
    options: dict = field(default_factory=dict)
    power: dict | None = None
    label: str = ""
    version: int = CONFIG_VERSION

    def operator_sequence(self) -> OperatorSequence:
        if self.power is not None:
            return OperatorSequence.power_family(self.power["phi"], self.power["coeff"], label=self.label)
        return OperatorSequence(self.sequence, label=self.label)

    def quadrature_spec(self, R: float) -> QuadratureSpec:
        q = self.quadrature
        return QuadratureSpec(float(R), int(q["M0"]), float(q["tol"]), int(q["max_doublings"]))

    def target_polys(self) -> list:
        return [TaylorPoly(t) for t in self.targets]

    def to_dict(self) -> dict:
        doc = {"version": self.version}
        if self.label:
            doc["label"] = self.label
        if self.sequence is not None:
            doc["sequence"] = to_json(self.sequence)
        if self.power is not None:
            coeff = self.power["coeff"]
            doc["power"] = {"phi": to_json(self.power["phi"]), "coeff": None if coeff is None else to_json(coeff)}
        if self.annulus is not None:
            doc["annulus"] = self.annulus.to_dict()
        doc.update(
            N_max=self.N_max,
            k_max=self.k_max,
            K=self.K,
            quadrature=dict(self.quadrature),
            targets=[[_num_to_json(c) for c in t] for t in self.targets],
            options=copy.deepcopy(self.options),
        )
        return doc


def dumps(cfg: ExperimentConfig) -> str:
    return json.dumps(cfg.to_dict(), indent=2, sort_keys=True) + "\n"


def _positive(v) -> bool:
    return isinstance(v, (int, float)) and not isinstance(v, bool) and v > 0


def _int_at_least(v, lo) -> bool:
    return isinstance(v, int) and not isinstance(v, bool) and v >= lo


def parse_config_dict(doc, path=None) -> ExperimentConfig:
    """Validate a decoded document; raises ConfigError listing every problem."""
    problems = []
    if not isinstance(doc, dict):
        raise ConfigError(["top level must be an object"], path)
    for key in sorted(set(doc) - TOP_KEYS):
        problems.append(f"unknown key {key!r}")
    version = doc.get("version", CONFIG_VERSION)
    if version != CONFIG_VERSION:
        problems.append(f"version: unsupported {version!r} (expected {CONFIG_VERSION})")
    label = doc.get("label", "")
    if not isinstance(label, str):
        problems.append("label: must be a string")
        label = ""

    sequence = power = None
    if "sequence" in doc and "power" in doc:
        problems.append("give either 'sequence' or 'power', not both")
    elif "sequence" not in doc and "power" not in doc:
        problems.append("missing 'sequence' (or 'power')")
    if "sequence" in doc:
        try:
            sequence = from_json(doc["sequence"], "sequence")
        except ValueError as exc:
            problems.append(str(exc))
    if "power" in doc:
        p = doc["power"]
        if not isinstance(p, dict):
            problems.append("power: must be an object with 'phi' and optional 'coeff'")
        else:
            for key in sorted(set(p) - POWER_KEYS):
                problems.append(f"power: unknown key {key!r}")
            try:
                phi = from_json(p.get("phi"), "power.phi")
                coeff = None
                if p.get("coeff") is not None:
                    coeff = from_json(p["coeff"], "power.coeff")
                    if not isinstance(coeff, Seq):
                        problems.append("power.coeff: must be a 'seq' node")
                power = {"phi": phi, "coeff": coeff}
            except ValueError as exc:
                problems.append(str(exc))

    annulus = None
    if "annulus" in doc:
        a = doc["annulus"]
        if not isinstance(a, dict):
            problems.append("annulus: must be an object")
        else:
            for key in sorted(set(a) - ANNULUS_KEYS):
                problems.append(f"annulus: unknown key {key!r}")
            ok = True
            for key in ("R1", "R2"):
                if key not in a:
                    problems.append(f"annulus.{key}: missing")
                    ok = False
            for key in ANNULUS_KEYS & set(a):
                if not _positive(a[key]):
                    problems.append(f"annulus.{key}: must be a positive number, got {a[key]!r}")
                    ok = False
            if ok:
                annulus = Annulus(float(a["R1"]), float(a["R2"]), float(a["R3"]) if "R3" in a else None)

    N_max = doc.get("N_max", DEFAULTS["N_max"])
    if not _int_at_least(N_max, 1):
        problems.append(f"N_max: must be a positive integer, got {N_max!r}")
    k_max = doc.get("k_max", DEFAULTS["k_max"])
    if not _int_at_least(k_max, 1):
        problems.append(f"k_max: must be a positive integer, got {k_max!r}")
    K = doc.get("K", DEFAULTS["K"])
    if not _positive(K):
        problems.append(f"K: must be a positive number, got {K!r}")

    quad = dict(DEFAULTS["quadrature"])
    if "quadrature" in doc:
        qd = doc["quadrature"]
        if not isinstance(qd, dict):
            problems.append("quadrature: must be an object")
        else:
            for key in sorted(set(qd) - QUAD_KEYS):
                problems.append(f"quadrature: unknown key {key!r}")
            quad.update({k: v for k, v in qd.items() if k in QUAD_KEYS})
    m0 = quad["M0"]
    if not _int_at_least(m0, 64) or m0 & (m0 - 1):
        problems.append(f"quadrature.M0: must be a power of two >= 64, got {m0!r}")
    if not _positive(quad["tol"]):
        problems.append(f"quadrature.tol: must be positive, got {quad['tol']!r}")
    if not _int_at_least(quad["max_doublings"], 1):
        problems.append(f"quadrature.max_doublings: must be an integer >= 1, got {quad['max_doublings']!r}")

    targets = []
    raw_targets = doc.get("targets", DEFAULTS["targets"])
    if not isinstance(raw_targets, list):
        problems.append("targets: must be a list of coefficient lists")
    else:
        for i, t in enumerate(raw_targets):
            if not isinstance(t, list) or not t:
                problems.append(f"targets[{i}]: must be a non-empty coefficient list")
                continue
            try:
                targets.append([_num_from_json(c) for c in t])
            except ValueError as exc:
                problems.append(f"targets[{i}]: {exc}")

    options = doc.get("options", {})
    if not isinstance(options, dict):
        problems.append("options: must be an object")
        options = {}
    for key in sorted(set(options) - OPTION_KEYS):
        problems.append(f"options: unknown key {key!r}")
    for key in ("radii",):
        if key in options and (not isinstance(options[key], list) or not all(_positive(r) for r in options[key])):
            problems.append(f"options.{key}: must be a list of positive numbers")
    if "seed_radii" in options:
        s = options["seed_radii"]
        if not (isinstance(s, list) and len(s) == 2 and all(_positive(r) for r in s)):
            problems.append("options.seed_radii: must be [R1, R2] with positive entries")
    if "n_values" in options and (not isinstance(options["n_values"], list) or not all(_int_at_least(n, 0) for n in options["n_values"])):
        problems.append("options.n_values: must be a list of nonnegative integers")
    for key in ("contour_radius", "eps"):
        if key in options and not _positive(options[key]):
            problems.append(f"options.{key}: must be a positive number")
    for key, lo in (("horizon", 10), ("ratio_window", 2), ("n_inverse", 0)):
        if key in options and not _int_at_least(options[key], lo):
            problems.append(f"options.{key}: must be an integer >= {lo}")
    for key in ("f", "target"):
        if key in options:
            try:
                if not isinstance(options[key], list) or not options[key]:
                    raise ValueError("must be a non-empty coefficient list")
                [_num_from_json(c) for c in options[key]]
            except ValueError as exc:
                problems.append(f"options.{key}: {exc}")
    if "points" in options:
        try:
            [_num_from_json(c) for c in options["points"]]
        except (ValueError, TypeError) as exc:
            problems.append(f"options.points: {exc}")

    if problems:
        raise ConfigError(problems, path)
    return ExperimentConfig(
        sequence, annulus, N_max, k_max, float(K),
        {"M0": m0, "tol": float(quad["tol"]), "max_doublings": quad["max_doublings"]},
        targets, copy.deepcopy(options), power, label, version,
    )


def parse_config_text(text: str, path=None) -> ExperimentConfig:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError([f"line {exc.lineno}, column {exc.colno}: {exc.msg}"], path) from None
    return parse_config_dict(doc, path)


def parse_config(path) -> ExperimentConfig:
    p = Path(path)
    try:
        text = p.read_text()
    except OSError as exc:
        raise ConfigError([f"cannot read file ({exc.strerror})"], str(p)) from None
    return parse_config_text(text, str(p))


def fixture_path(name: str) -> Path:
    """Path of a bundled fixture config, e.g. ``fixture_path("dn")``."""
    return Path(__file__).parent / "data" / "fixtures" / f"{name}.json"


def fixture_names() -> list:
    return sorted(p.stem for p in (Path(__file__).parent / "data" / "fixtures").glob("*.json"))
