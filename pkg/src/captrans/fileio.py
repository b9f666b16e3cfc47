"""Plain-text artifact formats: problem JSON, plan CSV, certificate JSON.

All writers are atomic (write to a sibling temp file, then rename) and
lossless: exact scalars are serialized as 'p/q' strings, floats as
their shortest round-tripping repr. Readers re-validate shapes and
reject malformed content with FileFormatError.
"""
from __future__ import annotations

import csv
import io
import json
import os
import tempfile
from fractions import Fraction
from typing import List, Sequence, Tuple

import numpy as np

from .duality import DualCertificate
from .errors import FileFormatError, ModeError
from .problem import CandidatePlan, DiscreteProblem
from .scalars import Scalar, check_mode, ensure_scalar, format_scalar, zeros


def atomic_write_text(path, text: str) -> None:
    """Write-then-rename so readers never observe a partial file."""
    path = os.fspath(path)
    d = os.path.dirname(path) or "."
    fd, tmp = tempfile.mkstemp(dir=d, prefix=".tmp-", suffix="~")
    try:
        with os.fdopen(fd, "w") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        try:
            os.unlink(tmp)
        except OSError:
            pass
        raise


def _scalar_out(x: Scalar):
    """JSON form: exact scalars as strings, floats as numbers."""
    if isinstance(x, Fraction):
        return format_scalar(x)
    return float(x)


def write_problem(p: DiscreteProblem, path) -> None:
    doc = {
        "m": p.m,
        "n": p.n,
        "f": [_scalar_out(v) for v in p.f],
        "g": [_scalar_out(v) for v in p.g],
        "cost": [[_scalar_out(p.cost[i, j]) for j in range(p.n)] for i in range(p.m)],
        "capacity": [[_scalar_out(p.capacity[i, j]) for j in range(p.n)] for i in range(p.m)],
    }
    atomic_write_text(path, json.dumps(doc, indent=1) + "\n")


def _load_json(path):
    try:
        with open(path, "r") as fh:
            return json.load(fh)
    except json.JSONDecodeError as exc:
        raise FileFormatError(f"{path}: not valid JSON: {exc}") from exc


def _file_scalar(raw, mode: str, path, where: str) -> Scalar:
    # unparsable values in a file are a format problem, not a mode problem
    try:
        return ensure_scalar(raw, mode)
    except ModeError as exc:
        raise FileFormatError(f"{path}: {where}: {exc}") from exc


def _matrix_in(rows, m: int, n: int, mode: str, what: str, path) -> np.ndarray:
    if not isinstance(rows, list) or len(rows) != m or \
            any(not isinstance(r, list) or len(r) != n for r in rows):
        raise FileFormatError(f"{path}: {what} must be an {m}x{n} array of rows")
    out = zeros((m, n), mode)
    for i in range(m):
        for j in range(n):
            out[i, j] = _file_scalar(rows[i][j], mode, path, f"{what}[{i}][{j}]")
    return out


def read_problem(path, mode: str) -> DiscreteProblem:
    """Parse a problem file; scalar coercion follows the requested mode."""
    check_mode(mode)
    doc = _load_json(path)
    if not isinstance(doc, dict):
        raise FileFormatError(f"{path}: top level must be an object")
    for key in ("m", "n", "f", "g", "cost", "capacity"):
        if key not in doc:
            raise FileFormatError(f"{path}: missing key {key!r}")
    m, n = doc["m"], doc["n"]
    if not isinstance(m, int) or not isinstance(n, int) or m < 1 or n < 1:
        raise FileFormatError(f"{path}: m and n must be positive integers")
    if not isinstance(doc["f"], list) or len(doc["f"]) != m:
        raise FileFormatError(f"{path}: f must be a list of length {m}")
    if not isinstance(doc["g"], list) or len(doc["g"]) != n:
        raise FileFormatError(f"{path}: g must be a list of length {n}")
    fv = zeros(m, mode)
    gv = zeros(n, mode)
    for i, v in enumerate(doc["f"]):
        fv[i] = _file_scalar(v, mode, path, f"f[{i}]")
    for j, v in enumerate(doc["g"]):
        gv[j] = _file_scalar(v, mode, path, f"g[{j}]")
    cost = _matrix_in(doc["cost"], m, n, mode, "cost", path)
    cap = _matrix_in(doc["capacity"], m, n, mode, "capacity", path)
    return DiscreteProblem(cost=cost, f=fv, g=gv, capacity=cap, mode=mode)


def write_plan_csv(plan: CandidatePlan, path) -> None:
    """Sparse cell list: header i,j,mass; only nonzero cells; 0-based."""
    h = plan.h
    m, n = h.shape
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["i", "j", "mass"])
    for i in range(m):
        for j in range(n):
            if h[i, j] != 0:
                w.writerow([i, j, format_scalar(h[i, j])])
    atomic_write_text(path, buf.getvalue())


def read_plan_csv(path, m: int, n: int, mode: str) -> CandidatePlan:
    check_mode(mode)
    h = zeros((m, n), mode)
    filled = set()
    with open(path, "r", newline="") as fh:
        reader = csv.reader(fh)
        try:
            header = next(reader)
        except StopIteration:
            raise FileFormatError(f"{path}: empty plan file") from None
        if [c.strip() for c in header] != ["i", "j", "mass"]:
            raise FileFormatError(f"{path}: expected header i,j,mass, got {header}")
        for lineno, row in enumerate(reader, start=2):
            if not row:
                continue
            if len(row) != 3:
                raise FileFormatError(f"{path}:{lineno}: expected 3 fields, got {len(row)}")
            try:
                i, j = int(row[0]), int(row[1])
            except ValueError as exc:
                raise FileFormatError(f"{path}:{lineno}: bad cell index") from exc
            if not (0 <= i < m and 0 <= j < n):
                raise FileFormatError(f"{path}:{lineno}: cell ({i},{j}) outside {m}x{n}")
            if (i, j) in filled:
                raise FileFormatError(f"{path}:{lineno}: duplicate cell ({i},{j})")
            filled.add((i, j))
            h[i, j] = _file_scalar(row[2], mode, path, f"line {lineno} mass")
    return CandidatePlan(h=h, provenance="file", note=os.fspath(path))


def write_certificate(cert: DualCertificate, path) -> None:
    doc = {
        "u": [_scalar_out(v) for v in cert.u],
        "v": [_scalar_out(v) for v in cert.v],
        "w": [[_scalar_out(cert.w[i, j]) for j in range(cert.n)] for i in range(cert.m)],
    }
    atomic_write_text(path, json.dumps(doc, indent=1) + "\n")


def read_certificate(path, m: int, n: int, mode: str) -> DualCertificate:
    check_mode(mode)
    doc = _load_json(path)
    if not isinstance(doc, dict) or any(k not in doc for k in ("u", "v", "w")):
        raise FileFormatError(f"{path}: certificate needs keys u, v, w")
    if not isinstance(doc["u"], list) or len(doc["u"]) != m:
        raise FileFormatError(f"{path}: u must be a list of length {m}")
    if not isinstance(doc["v"], list) or len(doc["v"]) != n:
        raise FileFormatError(f"{path}: v must be a list of length {n}")
    u = zeros(m, mode)
    v = zeros(n, mode)
    for i, x in enumerate(doc["u"]):
        u[i] = _file_scalar(x, mode, path, f"u[{i}]")
    for j, x in enumerate(doc["v"]):
        v[j] = _file_scalar(x, mode, path, f"v[{j}]")
    w = _matrix_in(doc["w"], m, n, mode, "w", path)
    return DualCertificate(u=u, v=v, w=w)


def write_result_json(res, path) -> None:
    """Solve outcome summary (the plan itself goes to the CSV)."""
    doc = {
        "status": res.status,
        "objective": None if res.objective is None else _scalar_out(res.objective),
        "pivot_count": res.pivot_count,
        "fractional_count": res.fractional_count,
        "deficit": _scalar_out(res.deficit),
        "mode": res.mode,
        "backend": res.backend,
    }
    atomic_write_text(path, json.dumps(doc, indent=1) + "\n")


def write_convergence_csv(rows: Sequence[Tuple[int, Scalar, Scalar]], path) -> None:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["n", "fractional_mass_fraction", "objective"])
    for n, fraction, objective in rows:
        w.writerow([n, format_scalar(fraction), format_scalar(objective)])
    atomic_write_text(path, buf.getvalue())


def write_report_json(doc: dict, path) -> None:
    """Verification/analysis report with scalars made JSON-safe."""

    def conv(x):
        if isinstance(x, Fraction):
            return format_scalar(x)
        if isinstance(x, np.ndarray):
            return [conv(v) for v in x.tolist()] if x.ndim == 1 \
                else [[conv(v) for v in row] for row in x.tolist()]
        if isinstance(x, (np.bool_, bool)):
            return bool(x)
        if isinstance(x, (np.integer,)):
            return int(x)
        if isinstance(x, (np.floating, float)):
            return float(x)
        if isinstance(x, dict):
            return {k: conv(v) for k, v in x.items()}
        if isinstance(x, (list, tuple)):
            return [conv(v) for v in x]
        return x

    atomic_write_text(path, json.dumps(conv(doc), indent=1) + "\n")
