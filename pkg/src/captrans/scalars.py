"""Scalar domain shared by every module.

A computation runs in one of two modes:

* ``"exact"``  — values are ``fractions.Fraction``; every comparison and
  every arithmetic identity in the package holds with mathematical
  equality.
* ``"float"``  — values are 64-bit floats; comparisons go through the
  tolerances in ``_config``.

Vectors and matrices are numpy arrays: ``float64`` in float mode,
``object`` dtype holding ``Fraction`` in exact mode, so shapes, slicing
and reductions read the same in both modes.
"""
from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterable, Sequence, Union

import numpy as np

from .errors import DimensionError, ModeError

Scalar = Union[Fraction, float]

MODES = ("exact", "float")


def check_mode(mode: str) -> str:
    if mode not in MODES:
        raise ModeError(f"unknown mode {mode!r}; expected 'exact' or 'float'")
    return mode


def ensure_scalar(value, mode: str) -> Scalar:
    """Coerce ``value`` into the mode's scalar type.

    Exact mode accepts ints, Fractions, and strings ("3/4", "0.25", "2");
    it rejects non-integral floats rather than silently adopting their
    binary rounding. Float mode accepts anything float() does, plus
    Fractions.
    """
    check_mode(mode)
    if isinstance(value, bool):
        raise ModeError(f"booleans are not scalars: {value!r}")
    if mode == "exact":
        if isinstance(value, Fraction):
            return value
        if isinstance(value, int):
            return Fraction(value)
        if isinstance(value, float):
            if not math.isfinite(value) or value != int(value):
                raise ModeError(
                    f"exact mode rejects non-integral float {value!r}; "
                    "pass a rational string such as '1/3' or '0.25'"
                )
            return Fraction(int(value))
        if isinstance(value, str):
            try:
                return Fraction(value.strip())
            except (ValueError, ZeroDivisionError) as exc:
                raise ModeError(f"cannot parse {value!r} as a rational") from exc
        raise ModeError(f"cannot use {type(value).__name__} in exact mode")
    # float mode
    if isinstance(value, Fraction):
        return float(value)
    if isinstance(value, (int, float)):
        out = float(value)
    elif isinstance(value, str):
        try:
            out = float(Fraction(value.strip()))
        except (ValueError, ZeroDivisionError) as exc:
            raise ModeError(f"cannot parse {value!r} as a number") from exc
    else:
        raise ModeError(f"cannot use {type(value).__name__} in float mode")
    if not math.isfinite(out):
        raise ModeError(f"non-finite value {value!r}")
    return out


def format_scalar(x: Scalar) -> str:
    """Serialize a scalar losslessly: 'p/q' (or 'p') exact, repr float."""
    if isinstance(x, Fraction):
        return str(x)
    return repr(float(x))


def zeros(shape, mode: str) -> np.ndarray:
    check_mode(mode)
    if mode == "exact":
        out = np.empty(shape, dtype=object)
        out[...] = Fraction(0)
        return out
    return np.zeros(shape, dtype=np.float64)


def as_vector(values: Sequence, length: int, mode: str, what: str = "vector") -> np.ndarray:
    vals = list(values)
    if len(vals) != length:
        raise DimensionError(f"{what}: expected length {length}, got {len(vals)}")
    out = zeros(length, mode)
    for i, v in enumerate(vals):
        out[i] = ensure_scalar(v, mode)
    return out


def as_matrix(rows: Sequence[Sequence], m: int, n: int, mode: str, what: str = "matrix") -> np.ndarray:
    rws = list(rows)
    if len(rws) != m:
        raise DimensionError(f"{what}: expected {m} rows, got {len(rws)}")
    out = zeros((m, n), mode)
    for i, row in enumerate(rws):
        row = list(row)
        if len(row) != n:
            raise DimensionError(f"{what}: row {i} has {len(row)} entries, expected {n}")
        for j, v in enumerate(row):
            out[i, j] = ensure_scalar(v, mode)
    return out


def denominator_lcm(values: Iterable[Fraction]) -> int:
    """Least common multiple of the denominators; 1 for an empty input."""
    out = 1
    for v in values:
        out = out * v.denominator // math.gcd(out, v.denominator)
    return out


def scale_to_ints(arr: np.ndarray, scale: int) -> list:
    """Multiply a Fraction array by ``scale`` and return plain ints.

    The caller guarantees ``scale`` clears every denominator.
    """
    flat = []
    for v in arr.ravel():
        num = v.numerator * scale
        den = v.denominator
        q, r = divmod(num, den)
        if r:
            raise ValueError(f"scale {scale} does not clear denominator of {v}")
        flat.append(q)
    return flat
