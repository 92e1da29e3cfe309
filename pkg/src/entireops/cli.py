"""Command line entry point: ``entireops <cmd> --config FILE [--out DIR] [--nmax N] [--kmax K] [--quiet]``.

Exit codes: 0 all checks PASS_NUMERIC, 1 FAIL, 2 INCONCLUSIVE, 3 runtime
error inside a computation, 4 invalid configuration or usage.
``ENTIREOPS_THREADS`` caps the worker threads used for independent tasks.
"""

from __future__ import annotations

import argparse
import os
import sys
import time
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path

import numpy as np

from .borel import borel, polya_radius, polya_reconstruct, radius_invariance_check, right_inverse_eval
from .config import ExperimentConfig, parse_config
from .convergence import (
    bound_condition_i,
    bound_condition_ii,
    bound_condition_iii,
    disk_grid,
    hitting_density,
    orbit_apply,
    verify_condition_iv,
)
from .criterion import Verdict, check_criterion, check_power_sequence, combine, winding_number
from .errors import ConfigError, EntireOpsError, PhaseStepTooLarge, ZeroOnContour
from .expr import _num_from_json
from .operators import apply_operator
from .reports import build_report, log, write_csv, write_json
from .taylor import TaylorPoly

EXIT_CODES = {Verdict.PASS_NUMERIC: 0, Verdict.FAIL: 1, Verdict.INCONCLUSIVE: 2}
EXIT_RUNTIME = 3
EXIT_CONFIG = 4
POLYA_TOL = 1e-9


def thread_count() -> int:
    raw = os.environ.get("ENTIREOPS_THREADS", "1")
    try:
        return max(1, int(raw))
    except ValueError:
        return 1


def _parallel(fn, items):
    """``[fn(x) for x in items]`` on up to ENTIREOPS_THREADS threads, order preserved."""
    items = list(items)
    n = min(thread_count(), len(items))
    if n <= 1:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=n) as pool:
        return list(pool.map(fn, items))


def _need_annulus(cfg: ExperimentConfig):
    if cfg.annulus is None:
        raise ConfigError(["annulus: required for this command"])
    return cfg.annulus


def _points(cfg, default):
    pts = cfg.options.get("points")
    return np.array([_num_from_json(p) for p in pts]) if pts is not None else np.asarray(default, dtype=complex)


def _criterion_tables(report):
    sidecars = {}
    if report.per_n:
        sidecars["per_n"] = report.per_n
    bm = report.bound_matrices
    if bm is not None:
        n_idx, j_idx = np.tril_indices(bm.N_max + 1, k=-1)
        sidecars["bounds"] = {
            "n": n_idx.tolist(),
            "j": j_idx.tolist(),
            "alpha": bm.alpha[n_idx, j_idx].tolist(),
            "beta": bm.beta[n_idx, j_idx].tolist(),
        }
    return sidecars


def cmd_check(cfg):
    ann = _need_annulus(cfg)
    report = check_criterion(cfg.operator_sequence(), ann, cfg.N_max, cfg.quadrature_spec(ann.R2))
    return report.to_dict(), report.overall, _criterion_tables(report)


def cmd_check32(cfg):
    if cfg.power is None:
        raise ConfigError(["power: check32 needs a power family {'phi', 'coeff'}"])
    report = check_power_sequence(
        cfg.power["phi"], cfg.power["coeff"], cfg.N_max,
        ratio_window=cfg.options.get("ratio_window", 10_000),
        seed=cfg.options.get("seed_radii"),
    )
    return report.to_dict(), report.overall, _criterion_tables(report)


def cmd_borel(cfg):
    grid = disk_grid(cfg.K)
    seq = cfg.operator_sequence()
    out = {"polya": [], "radius_invariance": []}
    verdicts = []
    for P in cfg.target_polys():
        R = polya_radius(P, cfg.K)
        res = polya_reconstruct(borel(P), cfg.quadrature_spec(R), grid)
        exact = P(grid)
        err = float(np.max(np.abs(res.value - exact)) / max(1.0, float(np.max(np.abs(exact)))))
        ok = err <= POLYA_TOL and res.converged
        verdicts.append(Verdict.PASS_NUMERIC if ok else Verdict.FAIL)
        out["polya"].append({"target": P.coeffs, "radius": R, "relative_error": err, "nodes": res.nodes, "converged": res.converged})
    radii = cfg.options.get("radii")
    if radii and len(radii) >= 2:
        for n in cfg.options.get("n_values", [1, 2, 3]):
            for P in cfg.target_polys():
                ri = radius_invariance_check(seq, n, P, radii, grid, cfg.quadrature_spec(radii[0]))
                verdicts.append(Verdict.PASS_NUMERIC if ri.passed else Verdict.FAIL)
                out["radius_invariance"].append({"n": n, "target": P.coeffs, "radii": list(ri.radii),
                                                 "max_deviation": ri.max_deviation, "passed": ri.passed})
    return out, combine(verdicts), {}


def cmd_apply(cfg):
    seq = cfg.operator_sequence()
    z = _points(cfg, [0.0])
    rows = []
    for P in cfg.target_polys():
        for n in cfg.options.get("n_values", [1]):
            g = apply_operator(seq, n, P)
            rows.append({"n": n, "target": P.coeffs, "coeffs": g.coeffs, "points": z, "values": np.atleast_1d(g(z))})
    return {"apply": rows}, Verdict.PASS_NUMERIC, {}


def _contour_radius(cfg):
    r = cfg.options.get("contour_radius")
    if r is not None:
        return float(r)
    return cfg.annulus.R2 if cfg.annulus is not None else 1.0


def cmd_inverse(cfg):
    seq = cfg.operator_sequence()
    R = _contour_radius(cfg)
    q = cfg.quadrature_spec(R)
    z = _points(cfg, [0.0, 1.0])
    n_values = cfg.options.get("n_values", [1, 2, 3])
    rows = []
    for P in cfg.target_polys():
        for n in n_values:
            res = right_inverse_eval(seq, n, P, q, z)
            rows.append({"n": n, "target": P.coeffs, "points": z, "values": np.atleast_1d(res.value),
                         "converged": res.converged, "nodes": res.nodes})
    iv = _parallel(lambda P: verify_condition_iv(seq, range(0, max(n_values) + 1), P, q, cfg.K), cfg.target_polys())
    verdict = Verdict.PASS_NUMERIC if all(r.passed for r in iv) else Verdict.FAIL
    return {"contour_radius": R, "values": rows, "condition_iv": [r.to_dict() for r in iv]}, verdict, {}


def cmd_zeros(cfg):
    seq = cfg.operator_sequence()
    radii = cfg.options.get("radii")
    if not radii:
        ann = _need_annulus(cfg)
        radii = [ann.rho, ann.sigma]
    n_values = cfg.options.get("n_values", [1])
    table = {"n": [], "radius": [], "count": []}
    problems = []
    verdict = Verdict.PASS_NUMERIC
    for n in n_values:
        for R in radii:
            try:
                c = winding_number(seq, n, float(R), cfg.quadrature_spec(float(R)))
            except ZeroOnContour as exc:
                problems.append({"n": n, "radius": R, "error": str(exc)})
                verdict = Verdict.FAIL
                continue
            except PhaseStepTooLarge as exc:
                problems.append({"n": n, "radius": R, "error": str(exc)})
                verdict = combine([verdict, Verdict.INCONCLUSIVE])
                continue
            table["n"].append(n)
            table["radius"].append(float(R))
            table["count"].append(c)
    return {"zero_counts": table, "problems": problems}, verdict, {"zeros": table}


def cmd_bg(cfg):
    ann = _need_annulus(cfg)
    seq = cfg.operator_sequence()
    R = _contour_radius(cfg)
    K, N, kmax = cfg.K, cfg.N_max, cfg.k_max
    n_inv = cfg.options.get("n_inverse", 10)
    targets = cfg.target_polys()

    def one(P):
        return {
            "iv": verify_condition_iv(seq, range(0, n_inv + 1), P, cfg.quadrature_spec(R), K),
            "iii": bound_condition_iii(seq, P, ann.R3, K, N, cfg.quadrature_spec(ann.R3)),
            "ii": bound_condition_ii(seq, P, ann.R2, K, N, kmax, cfg.quadrature_spec(ann.R2)),
            "i": bound_condition_i(seq, P, ann.R1, K, kmax, cfg.quadrature_spec(ann.R1)),
        }

    per_target = _parallel(one, targets)
    verdicts = []
    out = []
    sidecars = {}
    for label in ("i", "ii", "iii"):
        ledgers = [r[label] for r in per_target]
        cols = {"index": list(range(1, len(ledgers[0].direct_partial_sums) + 1))}
        for t, led in enumerate(ledgers):
            cols[f"target{t}"] = led.direct_partial_sums
        sidecars[f"partial_sums_{label}"] = cols
    for P, r in zip(targets, per_target):
        verdicts.append(Verdict.PASS_NUMERIC if r["iv"].passed else Verdict.FAIL)
        verdicts += [r[k].verdict for k in ("i", "ii", "iii")]
        out.append({"target": P.coeffs, **{k: v.to_dict() for k, v in r.items()}})
    return {"targets": out, "K": K, "N_max": N, "k_max": kmax}, combine(verdicts), sidecars


def cmd_orbit(cfg):
    seq = cfg.operator_sequence()
    f = TaylorPoly([_num_from_json(c) for c in cfg.options["f"]]) if "f" in cfg.options else cfg.target_polys()[0]
    samples = [orbit_apply(seq, n, f, cfg.K) for n in cfg.options.get("n_values", [1, 2, 3])]
    out = {"orbit": [{"n": s.n, "sup_norm": s.sup_norm} for s in samples]}
    sidecars = {}
    if "target" in cfg.options:
        target = TaylorPoly([_num_from_json(c) for c in cfg.options["target"]])
        rep = hitting_density(seq, f, target, cfg.options.get("eps", 0.5), cfg.K, cfg.options.get("horizon", 100))
        out["hitting_density"] = rep.to_dict()
        sidecars["density"] = {"m": list(range(1, rep.N + 1)), "d_m": rep.density_curve}
    return out, Verdict.PASS_NUMERIC, sidecars


COMMANDS = {
    "check": (cmd_check, "verify conditions (a)-(e) on the configured annulus"),
    "check32": (cmd_check32, "ratio statistics + radius search for c_n Phi^n, then (a)-(e)"),
    "borel": (cmd_borel, "Polya round trip of the targets and contour-radius invariance of S_n"),
    "apply": (cmd_apply, "apply Phi_n(D) to the target polynomials"),
    "inverse": (cmd_inverse, "evaluate S_n P and check T_n S_n P = P along two routes"),
    "zeros": (cmd_zeros, "argument-principle zero counts of Phi_n inside given radii"),
    "bg": (cmd_bg, "conditions (i)-(iv) with direct sums and closed-form majorants"),
    "orbit": (cmd_orbit, "orbit samples and hitting density"),
}


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_CONFIG, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="entireops", description="Numerics for sequences of convolution operators on entire functions.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)
    for name, (_, help_text) in COMMANDS.items():
        sp = sub.add_parser(name, help=help_text)
        sp.add_argument("--config", required=True, help="experiment config (JSON)")
        sp.add_argument("--out", default="entireops_out", help="output directory (default: %(default)s)")
        sp.add_argument("--nmax", type=int, help="override N_max")
        sp.add_argument("--kmax", type=int, help="override k_max")
        sp.add_argument("--quiet", action="store_true", help="no progress output")
    return p


def run_command(command: str, cfg: ExperimentConfig, out_dir, quiet: bool = True):
    """Run one command; returns ``(report, exit_code)`` and writes report and sidecars."""
    started = time.perf_counter()
    out_dir = Path(out_dir)
    fn = COMMANDS[command][0]
    config_doc = cfg.to_dict()
    try:
        results, verdict, sidecars = fn(cfg)
        code = EXIT_CODES[verdict]
        verdict_s = verdict.value
    except ConfigError as exc:
        results, sidecars, code, verdict_s = {"error": str(exc), "problems": exc.problems}, {}, EXIT_CONFIG, "ERROR"
    except (EntireOpsError, ArithmeticError, ValueError, OverflowError, IndexError) as exc:
        results, sidecars, code, verdict_s = {"error": f"{type(exc).__name__}: {exc}"}, {}, EXIT_RUNTIME, "ERROR"
    files = {}
    for name, cols in sidecars.items():
        path = write_csv(out_dir / f"{command}_{name}.csv", cols)
        files[name] = path.name
    if files:
        results = dict(results)
        results["sidecars"] = files
        results["sidecar_data"] = sidecars
    report = build_report(command, config_doc, results, verdict_s, code, started)
    path = write_json(out_dir / f"{command}.json", report)
    log(f"{command}: {verdict_s} (exit {code}); report {path}", quiet)
    if code >= EXIT_RUNTIME:
        log(f"error: {results.get('error')}", False)
    return report, code


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = parse_config(args.config)
    except ConfigError as exc:
        print(f"entireops: invalid config: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    if args.nmax is not None:
        cfg.N_max = args.nmax
    if args.kmax is not None:
        cfg.k_max = args.kmax
    if cfg.N_max < 1 or cfg.k_max < 1:
        print("entireops: --nmax and --kmax must be positive", file=sys.stderr)
        return EXIT_CONFIG
    _, code = run_command(args.command, cfg, args.out, args.quiet)
    return code


if __name__ == "__main__":
    sys.exit(main())
