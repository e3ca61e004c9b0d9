"""Integer square root with remainder using only add, subtract and shift.

The classic base-4 digit-by-digit method: walk a probe bit down from the
largest power of four not exceeding ``m``, subtracting ``root + bit`` from the
running remainder whenever it fits.  Newton's method would need division.
"""

from __future__ import annotations

from typing import NamedTuple

from .arith import NATIVE, AuditedInt
from .errors import DomainError


class SqrtRem(NamedTuple):
    s: int
    r: int


def isqrt_rem(m) -> SqrtRem:
    """Return ``(s, r)`` with ``s = floor(sqrt(m))`` and ``m = s*s + r``.

    ``m`` may be a plain int or an :class:`AuditedInt`; in the latter case
    every operation is tallied in its context and the results are audited
    values of the same context.

    >>> isqrt_rem(23)
    SqrtRem(s=4, r=7)
    """
    ctx = m.ctx if isinstance(m, AuditedInt) else NATIVE
    if not isinstance(m, AuditedInt) and (isinstance(m, bool) or not isinstance(m, int)):
        raise TypeError(f"isqrt_rem expects an integer, got {type(m).__name__}")
    zero = ctx.lift(0)
    if m < zero:
        raise DomainError(f"square root of negative number {int(m)}")

    # largest power of four <= m (or 1 when m is 0)
    bit = ctx.lift(1)
    probe = bit << 1 << 1
    while probe <= m:
        bit = probe
        probe = probe << 1 << 1

    rem = m
    root = zero
    while bit != zero:
        trial = root + bit
        if rem >= trial:
            rem = rem - trial
            root = (root >> 1) + bit
        else:
            root = root >> 1
        bit = bit >> 1 >> 1
    return SqrtRem(root, rem)
