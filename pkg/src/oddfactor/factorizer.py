"""Complete factorization and primality on top of the additive engine."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from typing import Optional

from . import engine
from .errors import BudgetExhausted, DomainError


@dataclass(frozen=True)
class Split:
    """One engine run inside a factorization."""

    n: int
    p: int
    q: int
    iterations: int
    status: engine.Status


@dataclass
class Factorization:
    n: int
    factors: tuple[tuple[int, int], ...] = ()
    complete: bool = True
    splits: list[Split] = field(default_factory=list)
    # odd cofactors left unresolved because a run hit its budget
    unresolved: list[int] = field(default_factory=list)

    def as_dict(self) -> dict[int, int]:
        return dict(self.factors)

    @property
    def is_prime(self) -> bool:
        return self.complete and len(self.factors) == 1 and self.factors[0][1] == 1


def strip_twos(n: int) -> tuple[int, int]:
    """Split ``n`` into its odd part and the exponent of 2."""
    if n < 1:
        raise DomainError(f"n must be positive, got {n}")
    e = 0
    while not n & 1:
        n >>= 1
        e += 1
    return n, e


def is_prime(n: int, budget: Optional[int] = None) -> bool:
    """Primality of odd ``n >= 3``: prime exactly when the engine only finds ``1 * n``.

    Raises :class:`BudgetExhausted` when the answer is undetermined.
    """
    if isinstance(n, bool) or not isinstance(n, int):
        raise TypeError(f"expected an int, got {type(n).__name__}")
    if n < 3 or not n & 1:
        raise DomainError(f"primality test needs an odd integer >= 3, got {n}")
    result = engine.run(n, budget)
    if not result.complete:
        raise BudgetExhausted(n, result)
    return result.p == 1


def full_factorization(n: int, budget: Optional[int] = None) -> Factorization:
    """Prime factorization of ``n >= 1``.

    Powers of two are stripped by shifting; each odd cofactor is split by
    :func:`engine.run`, smaller part first.  A cofactor whose run exhausts
    ``budget`` is reported in ``unresolved`` and the result is marked
    incomplete.
    """
    if isinstance(n, bool) or not isinstance(n, int):
        raise TypeError(f"expected an int, got {type(n).__name__}")
    odd, twos = strip_twos(n)
    primes: Counter[int] = Counter()
    if twos:
        primes[2] = twos
    out = Factorization(n)
    known: dict[int, engine.FactorResult] = {}

    def descend(m: int) -> None:
        if m == 1:
            return
        result = known.get(m)
        if result is None:
            result = engine.run(m, budget)
            known[m] = result
            out.splits.append(Split(m, result.p, result.q, result.iterations, result.status))
        if not result.complete:
            out.complete = False
            out.unresolved.append(m)
        elif result.p == 1:
            primes[m] += 1
        else:
            descend(result.p)
            descend(result.q)

    descend(odd)
    out.factors = tuple(sorted(primes.items()))
    return out
