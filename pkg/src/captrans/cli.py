"""Command-line front end.

Commands build instances, solve them, verify certificates, analyze plan
structure, reproduce the three worked examples with embedded
self-checks, cross-check the two solvers, and run the refinement study.
Artifacts are plain text (JSON, CSV, plain graymap) written atomically.

Exit codes:
    0  success; every check the command performs passed
    2  file problems: missing, unreadable, or malformed inputs (also bad
       command-line syntax, via the argument parser)
    3  domain problems: invalid dimensions, modes, grid sizes,
       divisibility, or parameter combinations
    4  solver failures: float-mode stall or resource exhaustion
    5  checks failed: a verification, certification, or comparison the
       command ran did not pass
"""
from __future__ import annotations

import argparse
import math
import os
import sys
from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, Optional, Sequence

from . import fileio
from ._config import FLOAT_REL_TOL
from .duality import build_example1_certificate, check_optimality_pair
from .errors import (
    CaptransError,
    DimensionError,
    DomainError,
    FileFormatError,
    InstanceTooLargeError,
    ModeError,
    ResourceError,
    SolverStallError,
)
from .grid import Grid1D
from .problem import example_instance, plan_cost, random_feasible_instance, validate_plan
from .solver import oracle_solve, solve
from .structure import classify_cells, emit_support_heatmap, extremality_convergence
from .verify import find_improving_cycle

EXIT_OK = 0
EXIT_FILE = 2
EXIT_DOMAIN = 3
EXIT_SOLVER = 4
EXIT_CHECKS = 5


@dataclass
class RunConfig:
    """Parsed invocation; one command plus its knobs."""

    command: str
    input: Optional[str] = None
    output_dir: str = "."
    grid_n: int = 8
    mode: str = "exact"
    tol: Optional[float] = None
    example: Optional[int] = None
    hbar: Optional[str] = None
    seed: int = 0
    sizes: Optional[List[int]] = None
    plan: Optional[str] = None
    certificate: Optional[str] = None


def _say(ok: bool, text: str) -> bool:
    print(f"[{'ok' if ok else 'FAIL'}] {text}")
    return ok


def _outpath(cfg: RunConfig, name: str) -> str:
    os.makedirs(cfg.output_dir, exist_ok=True)
    return os.path.join(cfg.output_dir, name)


def _sibling(input_path: str, name: str) -> str:
    return os.path.join(os.path.dirname(os.path.abspath(input_path)), name)


def _hbar_value(cfg: RunConfig):
    if cfg.hbar is None:
        return None
    try:
        return Fraction(cfg.hbar)
    except (ValueError, ZeroDivisionError) as exc:
        raise DomainError(f"cannot parse --hbar value {cfg.hbar!r} as a rational") from exc


def _write_solution(cfg: RunConfig, res) -> None:
    fileio.write_result_json(res, _outpath(cfg, "result.json"))
    if res.status == "optimal":
        fileio.write_plan_csv(res.plan, _outpath(cfg, "plan.csv"))
        fileio.write_certificate(res.dual, _outpath(cfg, "certificate.json"))


def _cmd_solve(cfg: RunConfig) -> int:
    if cfg.input is None:
        raise DomainError("solve needs --input pointing at a problem file")
    p = fileio.read_problem(cfg.input, cfg.mode)
    res = solve(p)
    print(f"status: {res.status}  backend: {res.backend}  pivots: {res.pivot_count}")
    if res.status == "optimal":
        print(f"objective: {res.objective}  fractional cells: {res.fractional_count}")
    else:
        print(f"deficit: {res.deficit}")
    _write_solution(cfg, res)
    print(f"wrote result.json{', plan.csv, certificate.json' if res.status == 'optimal' else ''} "
          f"in {cfg.output_dir}")
    return EXIT_OK


def _cmd_verify_certificate(cfg: RunConfig) -> int:
    if cfg.input is None:
        raise DomainError("verify-certificate needs --input pointing at a problem file")
    p = fileio.read_problem(cfg.input, cfg.mode)
    plan_path = cfg.plan or _sibling(cfg.input, "plan.csv")
    cert_path = cfg.certificate or _sibling(cfg.input, "certificate.json")
    plan = fileio.read_plan_csv(plan_path, p.m, p.n, cfg.mode)
    cert = fileio.read_certificate(cert_path, p.m, p.n, cfg.mode)
    report = check_optimality_pair(p, plan, cert, tol=cfg.tol)
    ok = _say(report.certified,
              f"pair certified optimal (gap {report.gap}, "
              f"{len(report.support_violations)} support / "
              f"{len(report.saturation_violations)} saturation violations)")
    fileio.write_report_json(
        {"check": "certificate-optimality", "instance": cfg.input,
         "result": "pass" if report.certified else "fail",
         "witness": {"gap": report.gap,
                     "support_violations": report.support_violations[:16],
                     "saturation_violations": report.saturation_violations[:16]}},
        _outpath(cfg, "verify_report.json"))
    return EXIT_OK if ok else EXIT_CHECKS


def _cmd_analyze(cfg: RunConfig) -> int:
    if cfg.input is None:
        raise DomainError("analyze needs --input pointing at a problem file")
    p = fileio.read_problem(cfg.input, cfg.mode)
    plan_path = cfg.plan or _sibling(cfg.input, "plan.csv")
    plan = fileio.read_plan_csv(plan_path, p.m, p.n, cfg.mode)
    rep = classify_cells(p, plan, tol=cfg.tol)
    print(f"cells: {rep.zero_count} zero, {rep.saturated_count} saturated, "
          f"{rep.fractional_count} fractional")
    print(f"fractional mass: {rep.fractional_mass}  extremality ratio: {rep.extremality_ratio}")
    fileio.write_report_json(
        {"check": "structure", "instance": cfg.input, "result": "pass",
         "witness": {"counts": rep.counts, "fractional_mass": rep.fractional_mass,
                     "extremality_ratio": rep.extremality_ratio, "tol": rep.tol}},
        _outpath(cfg, "structure_report.json"))
    emit_support_heatmap(rep, _outpath(cfg, "support.pgm"))
    print(f"wrote structure_report.json, support.pgm in {cfg.output_dir}")
    return EXIT_OK


def _example_tol(p) -> object:
    return 0 if p.mode == "exact" else FLOAT_REL_TOL * max(1.0, float(p.f.sum()))


def _cmd_example(cfg: RunConfig) -> int:
    which = cfg.example
    hbar = _hbar_value(cfg)
    p, candidate = example_instance(which, cfg.grid_n, hbar=hbar, mode=cfg.mode)
    res = solve(p)
    if res.status != "optimal":
        raise DomainError(f"example {which} unexpectedly {res.status}")
    _write_solution(cfg, res)
    ok = True
    tol = _example_tol(p)

    if which == 1:
        same = all(abs(res.plan.h[i, j] - candidate.h[i, j]) <= tol
                   for i in range(p.m) for j in range(p.n))
        ok &= _say(same, "solver plan equals the checkerboard candidate cell-for-cell")
        gx = Grid1D(lo=Fraction(-1, 2), hi=Fraction(1, 2), n=cfg.grid_n, mode=cfg.mode)
        cert = build_example1_certificate(gx, gx)
        rep = check_optimality_pair(p, res.plan, cert, tol=cfg.tol)
        ok &= _say(rep.certified, f"closed-form certificate gives gap {rep.gap}")
        ok &= _say(res.fractional_count == 0,
                   f"no fractional cells ({res.fractional_count})")
        print(f"objective: {res.objective}  (continuum limit 1/48 = {1 / 48:.9f}; "
              f"deviation {abs(float(res.objective) - 1 / 48):.3e})")

    elif which == 2:
        cand_cost = plan_cost(p, candidate.h)
        gap = cand_cost - res.objective
        ok &= _say(gap >= 0, f"four-tile candidate costs {cand_cost}, optimum {res.objective}")
        beaten = (gap > tol) if p.mode == "float" else (gap > 0)
        if beaten:
            print(f"candidate is suboptimal by {gap} "
                  f"({float(gap):.6e}); the conjectured plan is beaten at this resolution")
            cyc = find_improving_cycle(p, candidate)
            ok &= _say(cyc is not None, "improving residual cycle exists for the candidate")
            if cyc is not None:
                print(f"  cycle ({len(cyc)} forward cells, signed cost {cyc.signed_cost}, "
                      f"max push {cyc.max_push}):")
                print("  " + " -> ".join(cyc.nodes()))
        else:
            print("candidate optimal at this resolution (gap 0); "
                  "refine the grid (n >= 16) to see it beaten")
            cyc = find_improving_cycle(p, candidate)
            ok &= _say(cyc is None, "no improving cycle for the candidate (it is optimal here)")
        opt_cyc = find_improving_cycle(p, res.plan)
        ok &= _say(opt_cyc is None, "no improving cycle for the solver optimum")

    else:
        cand_cost = plan_cost(p, candidate.h)
        diff = abs(res.objective - cand_cost)
        bound = Fraction(1, 1000) if p.mode == "exact" else 1e-3
        ok &= _say(diff <= bound,
                   f"|optimum - strip candidate| = {float(diff):.3e} <= {float(bound):.0e} "
                   f"(optimum {res.objective}, candidate {cand_cost})")
        hb = float(hbar) if hbar is not None else 2.0
        n = cfg.grid_n
        rep = classify_cells(p, res.plan)
        halfw = 1.0 / (2.0 * hb) + 2.0 * math.sqrt(2.0) / n
        worst = 0.0
        outside = 0
        xs = [float(v) for v in
              Grid1D(lo=Fraction(-1, 2), hi=Fraction(1, 2), n=n, mode="float").midpoints]
        for i in range(n):
            for j in range(n):
                if rep.classes[i, j] == 2:  # saturated
                    z = xs[j] - xs[i]
                    z -= math.floor(z + 0.5)
                    worst = max(worst, abs(z))
                    if abs(z) > halfw + 1e-12:
                        outside += 1
        ok &= _say(outside == 0,
                   f"saturated support inside the strip band "
                   f"(max |fold(y-x)| = {worst:.6f}, allowed {halfw:.6f})")

    return EXIT_OK if ok else EXIT_CHECKS


_COMPARE_SHAPES = ((2, 3), (3, 3), (4, 4), (5, 2), (6, 6), (3, 6), (2, 2), (6, 3), (4, 6), (5, 5))


def _cmd_oracle_compare(cfg: RunConfig) -> int:
    rows = []
    ok = True
    for k in range(20):
        m, n = _COMPARE_SHAPES[k % len(_COMPARE_SHAPES)]
        seed = cfg.seed + k
        p, _ = random_feasible_instance(m, n, seed)
        a = solve(p)
        b = oracle_solve(p)
        agree = a.status == b.status and (a.status != "optimal" or a.objective == b.objective)
        ok &= agree
        rows.append({"seed": seed, "m": m, "n": n, "status": a.status,
                     "network": None if a.objective is None else a.objective,
                     "oracle": None if b.objective is None else b.objective,
                     "agree": agree})
        if not agree:
            print(f"[FAIL] seed {seed} ({m}x{n}): network {a.objective} != oracle {b.objective}")
    _say(ok, f"network simplex and dense oracle agree exactly on {len(rows)} instances")
    fileio.write_report_json({"check": "oracle-compare", "instance": f"seed base {cfg.seed}",
                              "result": "pass" if ok else "fail", "witness": rows},
                             _outpath(cfg, "oracle_compare.json"))
    return EXIT_OK if ok else EXIT_CHECKS


def _cmd_convergence(cfg: RunConfig) -> int:
    if cfg.example is None:
        raise DomainError("convergence needs --example {1,2,3}")
    sizes = cfg.sizes or [8, 16, 32]
    rows = extremality_convergence(cfg.example, sizes, hbar=_hbar_value(cfg), mode=cfg.mode)
    print("n, fractional_mass_fraction, objective")
    for n, fraction, objective in rows:
        print(f"{n}, {float(fraction):.6e}, {objective}")
    fileio.write_convergence_csv(rows, _outpath(cfg, "convergence.csv"))
    print(f"wrote convergence.csv in {cfg.output_dir}")
    return EXIT_OK


_DISPATCH = {
    "solve": _cmd_solve,
    "verify-certificate": _cmd_verify_certificate,
    "analyze": _cmd_analyze,
    "example": _cmd_example,
    "oracle-compare": _cmd_oracle_compare,
    "convergence": _cmd_convergence,
}


def run(config: RunConfig) -> int:
    """Dispatch one parsed invocation; returns the process exit code."""
    return _DISPATCH[config.command](config)


def _build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="captrans",
        description="Capacity-constrained transport: solve, certify, analyze.",
        epilog="exit codes: 0 success; 2 file problems (missing or malformed inputs); "
               "3 domain problems (bad dimensions, modes, parameters); "
               "4 solver failures (stall, resource exhaustion); 5 checks failed")
    sub = ap.add_subparsers(dest="command", required=True)

    def common(sp, input_file=False):
        sp.add_argument("--output-dir", default=".", help="directory for artifacts")
        sp.add_argument("--mode", choices=("exact", "float"), default="exact")
        sp.add_argument("--tol", type=float, default=None,
                        help="tolerance override (default: mode-appropriate)")
        if input_file:
            sp.add_argument("--input", required=True, help="problem JSON file")

    sp = sub.add_parser("solve", help="solve a problem file, write result + plan + certificate")
    common(sp, input_file=True)

    sp = sub.add_parser("verify-certificate",
                        help="check a plan/certificate pair for optimality")
    common(sp, input_file=True)
    sp.add_argument("--plan", help="plan CSV (default: plan.csv next to --input)")
    sp.add_argument("--certificate", help="certificate JSON (default: certificate.json next to --input)")

    sp = sub.add_parser("analyze", help="classify plan cells, emit report + heatmap")
    common(sp, input_file=True)
    sp.add_argument("--plan", help="plan CSV (default: plan.csv next to --input)")

    sp = sub.add_parser("example", help="reproduce a worked example and self-check it")
    sp.add_argument("example", type=int, choices=(1, 2, 3), help="example selector")
    sp.add_argument("--grid-n", type=int, default=8, dest="grid_n")
    sp.add_argument("--hbar", default=None, help="capacity bound for example 3 (rational)")
    common(sp)

    sp = sub.add_parser("oracle-compare",
                        help="cross-check network simplex against the dense oracle")
    sp.add_argument("--seed", type=int, default=0)
    common(sp)

    sp = sub.add_parser("convergence", help="fractional-mass refinement study")
    sp.add_argument("--example", type=int, choices=(1, 2, 3), required=True)
    sp.add_argument("--sizes", default=None,
                    help="comma-separated even grid sizes, e.g. 8,16,32")
    sp.add_argument("--hbar", default=None, help="capacity bound for example 3 (rational)")
    common(sp)
    return ap


def _config_from_args(ns: argparse.Namespace) -> RunConfig:
    sizes = None
    if getattr(ns, "sizes", None):
        try:
            sizes = [int(s) for s in str(ns.sizes).split(",") if s.strip()]
        except ValueError as exc:
            raise DomainError(f"cannot parse --sizes {ns.sizes!r}") from exc
    return RunConfig(
        command=ns.command,
        input=getattr(ns, "input", None),
        output_dir=getattr(ns, "output_dir", "."),
        grid_n=getattr(ns, "grid_n", 8),
        mode=getattr(ns, "mode", "exact"),
        tol=getattr(ns, "tol", None),
        example=getattr(ns, "example", None),
        hbar=getattr(ns, "hbar", None),
        seed=getattr(ns, "seed", 0),
        sizes=sizes,
        plan=getattr(ns, "plan", None),
        certificate=getattr(ns, "certificate", None),
    )


def main(argv: Optional[Sequence[str]] = None) -> int:
    ns = _build_parser().parse_args(argv)
    try:
        cfg = _config_from_args(ns)
        return run(cfg)
    except (FileNotFoundError, IsADirectoryError, PermissionError) as exc:
        print(f"file error: {exc}", file=sys.stderr)
        return EXIT_FILE
    except FileFormatError as exc:
        print(f"file format error: {exc}", file=sys.stderr)
        return EXIT_FILE
    except (DomainError, DimensionError, ModeError, InstanceTooLargeError) as exc:
        print(f"domain error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except (SolverStallError, ResourceError) as exc:
        print(f"solver failure: {exc}", file=sys.stderr)
        return EXIT_SOLVER


if __name__ == "__main__":
    sys.exit(main())
