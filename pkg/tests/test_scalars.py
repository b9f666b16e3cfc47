"""Mode-tagged scalar plumbing."""
import math
from fractions import Fraction

import numpy as np
import pytest

from captrans.errors import DimensionError, ModeError
from captrans.scalars import (
    as_matrix,
    as_vector,
    check_mode,
    denominator_lcm,
    ensure_scalar,
    format_scalar,
    scale_to_ints,
    zeros,
)


def test_check_mode():
    assert check_mode("exact") == "exact"
    assert check_mode("float") == "float"
    with pytest.raises(ModeError):
        check_mode("decimal")


def test_ensure_scalar_exact_accepts_rationals():
    assert ensure_scalar(Fraction(3, 7), "exact") == Fraction(3, 7)
    assert ensure_scalar(5, "exact") == Fraction(5)
    assert ensure_scalar("3/8", "exact") == Fraction(3, 8)
    # integral floats are unambiguous
    assert ensure_scalar(2.0, "exact") == Fraction(2)


def test_ensure_scalar_exact_rejects_noise():
    with pytest.raises(ModeError):
        ensure_scalar(0.3, "exact")  # not integral, base-2 noise
    with pytest.raises(ModeError):
        ensure_scalar(True, "exact")
    with pytest.raises(ModeError):
        ensure_scalar("3/0", "exact")


def test_ensure_scalar_float():
    assert ensure_scalar("1/4", "float") == 0.25
    assert ensure_scalar(Fraction(1, 3), "float") == pytest.approx(1 / 3)
    assert ensure_scalar(0.3, "float") == 0.3
    with pytest.raises(ModeError):
        ensure_scalar(math.inf, "float")
    with pytest.raises(ModeError):
        ensure_scalar(math.nan, "float")


def test_format_scalar_round_trips():
    rng = np.random.default_rng(11)
    for _ in range(50):
        q = Fraction(int(rng.integers(-999, 1000)), int(rng.integers(1, 500)))
        assert ensure_scalar(format_scalar(q), "exact") == q
        x = float(rng.normal()) * 10.0 ** int(rng.integers(-8, 9))
        assert float(format_scalar(x)) == x  # repr is lossless


def test_zeros_dtype():
    z = zeros((2, 3), "exact")
    assert z.dtype == object and z[0, 0] == Fraction(0)
    z = zeros(4, "float")
    assert z.dtype == np.float64 and z.sum() == 0.0


def test_as_vector_and_matrix():
    v = as_vector(["1/2", "1/3"], 2, "exact")
    assert v[1] == Fraction(1, 3)
    with pytest.raises(DimensionError):
        as_vector([1, 2, 3], 2, "exact")
    m = as_matrix([[1, 2], [3, 4]], 2, 2, "float")
    assert m.dtype == np.float64 and m[1, 0] == 3.0
    with pytest.raises(DimensionError):
        as_matrix([[1, 2], [3]], 2, 2, "exact")


def test_denominator_lcm_and_scaling():
    vals = [Fraction(1, 6), Fraction(3, 4), Fraction(2)]
    lcm = denominator_lcm(vals)
    assert lcm == 12
    ints = scale_to_ints(np.array(vals, dtype=object), lcm)
    assert ints == [2, 9, 24]
    assert all(isinstance(k, int) for k in ints)


def test_denominator_lcm_random_consistency():
    rng = np.random.default_rng(7)
    for _ in range(30):
        vals = [Fraction(int(rng.integers(-20, 21)), int(rng.integers(1, 40)))
                for _ in range(8)]
        lcm = denominator_lcm(vals)
        for q in vals:
            assert (q * lcm).denominator == 1
