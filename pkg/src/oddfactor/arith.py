"""Instrumented big-integer arithmetic restricted to additive operations.

An :class:`ArithContext` hands out :class:`AuditedInt` values.  Every
operation performed on them is tallied in the owning context, so a caller can
prove after the fact that a region of code never multiplied or divided.

The permitted operations are addition, subtraction, negation, absolute value,
comparison and a one-bit shift in either direction.  Negation is tallied as a
subtraction (``0 - x``); absolute value as a comparison against zero plus a
subtraction when the operand is negative.  Multiplication and division exist
only as explicitly named escape hatches (:meth:`ArithContext.mul`,
:meth:`ArithContext.divmod`) for test oracles; they are counted separately.

Plain :class:`int` values work with the same generic code through
:data:`NATIVE`, a context that lifts to bare ints and counts nothing.
"""

from __future__ import annotations

from dataclasses import astuple, dataclass
from typing import Union

__all__ = [
    "ArithContext",
    "AuditedInt",
    "AuditReport",
    "NativeContext",
    "NATIVE",
    "add",
    "sub",
    "neg",
    "absolute",
    "cmp",
    "shl1",
    "shr1",
    "audit_report",
]


@dataclass(frozen=True)
class AuditReport:
    add_count: int = 0
    sub_count: int = 0
    shift_count: int = 0
    cmp_count: int = 0
    mul_count: int = 0
    div_count: int = 0

    def __add__(self, other: AuditReport) -> AuditReport:
        return AuditReport(*(x + y for x, y in zip(astuple(self), astuple(other))))

    def __sub__(self, other: AuditReport) -> AuditReport:
        return AuditReport(*(x - y for x, y in zip(astuple(self), astuple(other))))

    @property
    def additive(self) -> int:
        return self.add_count + self.sub_count

    @property
    def total(self) -> int:
        return (self.add_count + self.sub_count + self.shift_count
                + self.cmp_count + self.mul_count + self.div_count)

    def as_dict(self) -> dict[str, int]:
        return {
            "add": self.add_count,
            "sub": self.sub_count,
            "shift": self.shift_count,
            "cmp": self.cmp_count,
            "mul": self.mul_count,
            "div": self.div_count,
        }


class ArithContext:
    """Owner of a set of operation counters.

    Contexts share nothing, so independent runs can proceed in separate
    threads as long as each uses its own context.
    """

    def __init__(self) -> None:
        self.reset()

    def reset(self) -> None:
        self.add_count = 0
        self.sub_count = 0
        self.shift_count = 0
        self.cmp_count = 0
        self.mul_count = 0
        self.div_count = 0

    def report(self) -> AuditReport:
        return AuditReport(self.add_count, self.sub_count, self.shift_count,
                           self.cmp_count, self.mul_count, self.div_count)

    def lift(self, value: Union[int, AuditedInt]) -> AuditedInt:
        if isinstance(value, AuditedInt):
            if value.ctx is not self:
                raise ValueError("AuditedInt belongs to a different context")
            return value
        if isinstance(value, bool) or not isinstance(value, int):
            raise TypeError(f"cannot lift {type(value).__name__} into an audited context")
        return AuditedInt(value, self)

    def _value(self, x) -> int:
        if isinstance(x, AuditedInt):
            if x.ctx is not self:
                raise ValueError("AuditedInt belongs to a different context")
            return x.value
        if isinstance(x, int) and not isinstance(x, bool):
            return x
        raise TypeError(f"unsupported operand type {type(x).__name__}")

    # permitted operations

    def add(self, x, y) -> AuditedInt:
        self.add_count += 1
        return AuditedInt(self._value(x) + self._value(y), self)

    def sub(self, x, y) -> AuditedInt:
        self.sub_count += 1
        return AuditedInt(self._value(x) - self._value(y), self)

    def neg(self, x) -> AuditedInt:
        self.sub_count += 1
        return AuditedInt(-self._value(x), self)

    def abs(self, x) -> AuditedInt:
        v = self._value(x)
        self.cmp_count += 1
        if v < 0:
            self.sub_count += 1
            v = -v
        return AuditedInt(v, self)

    def cmp(self, x, y) -> int:
        """Three-way comparison: -1, 0 or 1."""
        self.cmp_count += 1
        u, v = self._value(x), self._value(y)
        return (u > v) - (u < v)

    def shl1(self, x) -> AuditedInt:
        self.shift_count += 1
        return AuditedInt(self._value(x) << 1, self)

    def shr1(self, x) -> AuditedInt:
        v = self._value(x)
        if v < 0:
            raise ValueError("shr1 is only defined for non-negative operands")
        self.shift_count += 1
        return AuditedInt(v >> 1, self)

    # escape hatches; never used by the engine or isqrt

    def mul(self, x, y) -> AuditedInt:
        self.mul_count += 1
        return AuditedInt(self._value(x) * self._value(y), self)

    def divmod(self, x, y) -> tuple[AuditedInt, AuditedInt]:
        self.div_count += 1
        q, r = divmod(self._value(x), self._value(y))
        return AuditedInt(q, self), AuditedInt(r, self)


class AuditedInt:
    """An integer whose arithmetic is routed through its context's counters."""

    __slots__ = ("value", "ctx")

    def __init__(self, value: int, ctx: ArithContext) -> None:
        self.value = value
        self.ctx = ctx

    def __repr__(self) -> str:
        return f"AuditedInt({self.value})"

    def __int__(self) -> int:
        return self.value

    def __hash__(self) -> int:
        return hash(self.value)

    def __add__(self, other):
        return self.ctx.add(self, other)

    def __radd__(self, other):
        return self.ctx.add(other, self)

    def __sub__(self, other):
        return self.ctx.sub(self, other)

    def __rsub__(self, other):
        return self.ctx.sub(other, self)

    def __neg__(self):
        return self.ctx.neg(self)

    def __abs__(self):
        return self.ctx.abs(self)

    def __lshift__(self, k):
        if k != 1:
            raise ValueError("only single-bit shifts are permitted")
        return self.ctx.shl1(self)

    def __rshift__(self, k):
        if k != 1:
            raise ValueError("only single-bit shifts are permitted")
        return self.ctx.shr1(self)

    def __eq__(self, other):
        if not isinstance(other, (int, AuditedInt)):
            return NotImplemented
        return self.ctx.cmp(self, other) == 0

    def __ne__(self, other):
        if not isinstance(other, (int, AuditedInt)):
            return NotImplemented
        return self.ctx.cmp(self, other) != 0

    def __lt__(self, other):
        return self.ctx.cmp(self, other) < 0

    def __le__(self, other):
        return self.ctx.cmp(self, other) <= 0

    def __gt__(self, other):
        return self.ctx.cmp(self, other) > 0

    def __ge__(self, other):
        return self.ctx.cmp(self, other) >= 0

    def __bool__(self):
        return self.ctx.cmp(self, 0) != 0

    def __mul__(self, other):
        return self.ctx.mul(self, other)

    def __rmul__(self, other):
        return self.ctx.mul(other, self)

    def __floordiv__(self, other):
        return self.ctx.divmod(self, other)[0]

    def __mod__(self, other):
        return self.ctx.divmod(self, other)[1]

    def __divmod__(self, other):
        return self.ctx.divmod(self, other)


class NativeContext:
    """Uncounted context: values stay plain ints."""

    def lift(self, value: int) -> int:
        return int(value)


NATIVE = NativeContext()


def _ctx_of(x, y=None) -> ArithContext:
    for v in (x, y):
        if isinstance(v, AuditedInt):
            return v.ctx
    raise TypeError("at least one operand must be an AuditedInt")


def add(x, y) -> AuditedInt:
    return _ctx_of(x, y).add(x, y)


def sub(x, y) -> AuditedInt:
    return _ctx_of(x, y).sub(x, y)


def neg(x) -> AuditedInt:
    return _ctx_of(x).neg(x)


def absolute(x) -> AuditedInt:
    return _ctx_of(x).abs(x)


def cmp(x, y) -> int:
    return _ctx_of(x, y).cmp(x, y)


def shl1(x) -> AuditedInt:
    return _ctx_of(x).shl1(x)


def shr1(x) -> AuditedInt:
    return _ctx_of(x).shr1(x)


def audit_report(ctx: ArithContext) -> AuditReport:
    return ctx.report()
