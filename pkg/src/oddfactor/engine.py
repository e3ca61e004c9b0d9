"""Additive factoring iteration for odd integers.

Writing ``n = 2a + 1``, ``p = 2b + 1`` and ``q = 2c + 1``, the identity
``n = p*q`` becomes ``2bc + b + c - a = 0``.  The engine keeps the signed
residual ``y = 2bc + b + c - a`` and walks ``(b, c)`` from
``b = c = isqrt(a // 2)``: each step increments ``c`` and either keeps ``b``
(when ``|y| > 2b``) or decrements it.  Both updates of ``y`` reduce to
additions, so the loop is free of multiplication and division.  The walk
stops at ``y == 0``; for a prime ``n`` that only happens at ``b == 0``.

All functions accept plain ints.  Passing an :class:`~oddfactor.arith.ArithContext`
to :func:`init` or :func:`run` makes every kernel operation go through that
context's counters.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from itertools import repeat
from typing import Iterator, Optional

from . import _native
from .arith import NATIVE, ArithContext, AuditReport
from .errors import DomainError
from .isqrt import isqrt_rem

__all__ = [
    "Branch",
    "Status",
    "EngineState",
    "FactorResult",
    "TraceRow",
    "check_odd",
    "init",
    "step",
    "run",
    "resume",
    "trace",
    "reconstruct",
    "audited_run",
]


class Branch(enum.Enum):
    KEEP = "keep"        # b unchanged, y += 2b + 1
    DESCEND = "descend"  # b -= 1, y += 2(b - c + 1)


class Status(enum.Enum):
    FACTORED = "factored"
    TRIVIAL_ONLY = "trivial"
    BUDGET_EXCEEDED = "budget-exceeded"


@dataclass(frozen=True)
class EngineState:
    """One point of the walk.  Fields may be ints or audited ints."""

    a: object
    b: object
    c: object
    y: object
    k: object

    def plain(self) -> EngineState:
        return EngineState(int(self.a), int(self.b), int(self.c), int(self.y), int(self.k))


@dataclass(frozen=True)
class FactorResult:
    """Outcome of a run.

    ``p`` and ``q`` reconstruct the current ``(b, c)``; they only satisfy
    ``p * q == n`` when the status is not ``BUDGET_EXCEEDED``.  ``state`` is
    the final engine state and can be handed to :func:`resume`.
    """

    n: int
    p: int
    q: int
    iterations: int
    status: Status
    state: EngineState

    @property
    def complete(self) -> bool:
        return self.status is not Status.BUDGET_EXCEEDED

    @property
    def is_prime(self) -> bool:
        return self.status is Status.TRIVIAL_ONLY and self.n > 1


@dataclass(frozen=True)
class TraceRow:
    k: int
    b: int
    c: int
    y: int
    branch: Branch


def check_odd(n) -> int:
    if isinstance(n, bool) or not isinstance(n, int):
        raise TypeError(f"expected an int, got {type(n).__name__}")
    if n < 1 or not n & 1:
        raise DomainError(f"expected an odd integer >= 1, got {n}")
    return n


def init(n: int, ctx=NATIVE) -> EngineState:
    """Starting state for odd ``n``.

    ``b = c = isqrt(a // 2)``.  The starting residual is obtained from the
    square-root remainder: with ``h = a // 2 = s*s + r`` we have
    ``2s*s + 2s - a = 2(s - r) - (a - 2h)``, so no product is formed.
    """
    check_odd(n)
    nn = ctx.lift(n)
    a = (nn - 1) >> 1
    half = a >> 1
    s, r = isqrt_rem(half)
    parity = a - (half << 1)
    y = ((s - r) << 1) - parity
    return EngineState(a, s, s, y, ctx.lift(0))


def step(state: EngineState) -> tuple[EngineState, Branch]:
    """Advance one iteration.  ``c`` is incremented first; a tie ``|y| == 2b``
    takes the descending branch."""
    a, b, c, y, k = state.a, state.b, state.c, state.y, state.k
    if y == 0:
        raise DomainError("step called on a halted state (y == 0)")
    c = c + 1
    d = b + b
    if abs(y) > d:
        y = y + d + 1
        branch = Branch.KEEP
    else:
        b = b - 1
        e = b - c + 1
        y = y + e + e
        branch = Branch.DESCEND
    return EngineState(a, b, c, y, k + 1), branch


def _loop(state: EngineState, budget: Optional[int]) -> EngineState:
    # Same arithmetic as step(), inlined.  The caller guarantees y != 0.  The
    # step count is recovered from c, which grows by exactly one per step.
    a, b, c, y = state.a, state.b, state.c, state.y
    c0 = c - state.k
    if (_native.available() and type(a) is int and a < _native.SAFE_LIMIT
            and (budget is None or budget < _native.SAFE_LIMIT)):
        b, c, y = _native.walk(b, c, y, -1 if budget is None else budget)
        return EngineState(a, int(b), int(c), int(y), int(c) - c0)
    _abs = abs
    for _ in (repeat(None) if budget is None else repeat(None, budget)):
        c += 1
        d = b + b
        if _abs(y) > d:
            y += d + 1
        else:
            b -= 1
            e = b - c + 1
            y += e + e
        if y == 0:
            break
    return EngineState(a, b, c, y, c - c0)


def _result(n: int, state: EngineState) -> FactorResult:
    b, c, y, k = int(state.b), int(state.c), int(state.y), int(state.k)
    p, q = reconstruct(b, c)
    if y != 0:
        status = Status.BUDGET_EXCEEDED
    elif b == 0:
        status = Status.TRIVIAL_ONLY
    else:
        status = Status.FACTORED
    return FactorResult(n, p, q, k, status, state)


def _check_budget(budget: Optional[int]) -> None:
    if budget is not None and budget < 0:
        raise DomainError(f"budget must be non-negative, got {budget}")


def run(n: int, budget: Optional[int] = None, ctx=NATIVE) -> FactorResult:
    """Factor odd ``n`` as ``p * q`` with ``p`` the largest divisor <= sqrt(n).

    ``p == 1`` (status ``TRIVIAL_ONLY``) means ``n`` is prime or 1.  With a
    ``budget`` the walk stops after that many iterations and the result has
    status ``BUDGET_EXCEEDED``.

    >>> r = run(10261)
    >>> r.p, r.q, r.iterations
    (31, 331, 115)
    """
    _check_budget(budget)
    state = init(n, ctx)
    if state.y != 0:
        state = _loop(state, budget)
    return _result(n, state)


def resume(result: FactorResult, budget: Optional[int] = None) -> FactorResult:
    """Continue an interrupted run for up to ``budget`` more iterations."""
    _check_budget(budget)
    state = result.state
    if state.y != 0:
        state = _loop(state, budget)
    return _result(result.n, state)


def trace(n: int, limit: Optional[int] = None) -> Iterator[TraceRow]:
    """Yield one row per iteration of ``run(n)``, at most ``limit`` rows."""
    state = init(n)
    emitted = 0
    while state.y != 0 and (limit is None or emitted < limit):
        state, branch = step(state)
        emitted += 1
        yield TraceRow(state.k, state.b, state.c, state.y, branch)


def reconstruct(b: int, c: int) -> tuple[int, int]:
    if b < 0 or c < 0:
        raise DomainError(f"b and c must be non-negative, got ({b}, {c})")
    return b + b + 1, c + c + 1


def audited_run(n: int, budget: Optional[int] = None
                ) -> tuple[FactorResult, AuditReport, AuditReport]:
    """Run under a fresh audit context.

    Returns the result together with the operation tallies of the
    initialisation (including the entry halting test) and of the loop.
    """
    _check_budget(budget)
    ctx = ArithContext()
    state = init(n, ctx)
    halted = state.y == 0
    init_report = ctx.report()
    if not halted:
        state = _loop(state, budget)
    loop_report = ctx.report() - init_report
    result = _result(n, state)
    return result, init_report, loop_report
