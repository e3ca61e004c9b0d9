import math
import random

import pytest
from hypothesis import given, strategies as st

from oddfactor.arith import ArithContext
from oddfactor.errors import DomainError
from oddfactor.isqrt import SqrtRem, isqrt_rem


@pytest.mark.parametrize("m, expected", [
    (0, (0, 0)),
    (25, (5, 0)),
    (23, (4, 7)),        # 16 <= 23 < 25
    (2565, (50, 65)),    # floor(5130 / 2) for n = 10261
    (1, (1, 0)),
    (3, (1, 2)),
    (4, (2, 0)),
])
def test_examples(m, expected):
    assert isqrt_rem(m) == SqrtRem(*expected)


def test_negative_rejected():
    with pytest.raises(DomainError):
        isqrt_rem(-1)


def test_type_checked():
    with pytest.raises(TypeError):
        isqrt_rem(2.0)


def test_exhaustive_small():
    for m in range(0, 20001):
        s, r = isqrt_rem(m)
        assert s == math.isqrt(m) and s * s + r == m and 0 <= r <= 2 * s


@given(st.integers(min_value=0, max_value=1 << 512))
def test_bounds_large(m):
    s, r = isqrt_rem(m)
    assert s * s <= m < (s + 1) * (s + 1)
    assert r == m - s * s


def test_perfect_squares_and_neighbours():
    rng = random.Random(7)
    for _ in range(200):
        s = rng.getrandbits(100)
        assert isqrt_rem(s * s) == (s, 0)
        if s:
            assert isqrt_rem(s * s - 1) == (s - 1, 2 * s - 2)


def test_audited_is_multiplication_free():
    ctx = ArithContext()
    m = (1 << 127) + 12345
    s, r = isqrt_rem(ctx.lift(m))
    assert (s.value, r.value) == (math.isqrt(m), m - math.isqrt(m) ** 2)
    rep = ctx.report()
    assert rep.mul_count == 0 and rep.div_count == 0
    assert rep.shift_count > 0 and rep.additive > 0
