"""Iteration-count experiments over prime pairs.

For a semiprime ``n = p*q`` (``p <= q``) the engine halts exactly when ``c``
reaches ``(q - 1)/2``, and ``c`` grows by one per step from
``isqrt(a // 2)``, so the count is known in closed form.  The harness measures
it anyway and checks the two agree.

``h_est = ln(i) / ln(log2 n)`` inverts ``i = (log2 n) ** h``.  It is reported
per (gap, size) cell; the harness never decides whether ``h`` is constant.
"""

from __future__ import annotations

import bisect
import csv
import math
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import astuple, dataclass, fields
from functools import lru_cache
from typing import Iterable, Optional, Sequence, TextIO

from . import engine, oracle
from .errors import DomainError

# the longest reference run needs 205_094_797 iterations
DEFAULT_BUDGET = 250_000_000
SIEVE_LIMIT = 1 << 20
MAX_PRIME_ATTEMPTS = 100_000

# Adjacent pairs of this list are the reference semiprimes; the final pair is
# the wide-gap case run separately.
LADDER_PRIMES = (3, 31, 331, 3331, 33331, 333331, 3333331, 33333331,
                 333333313, 982451653)
EXTRA_PAIR = (13, 256410241)


def ladder_pairs(rows: int = len(LADDER_PRIMES) - 1, extra: bool = False) -> list[tuple[int, int]]:
    if not 0 <= rows <= len(LADDER_PRIMES) - 1:
        raise DomainError(f"rows must be in [0, {len(LADDER_PRIMES) - 1}], got {rows}")
    pairs = list(zip(LADDER_PRIMES[:rows], LADDER_PRIMES[1:rows + 1]))
    if extra:
        pairs.append(EXTRA_PAIR)
    return pairs


@dataclass(frozen=True)
class BenchRecord:
    p: int
    q: int
    n: int
    measured_i: Optional[int]  # None when the run exhausted its budget
    predicted_i: int
    bits_n: float
    gap: float
    h_est: Optional[float]

    @property
    def exceeded(self) -> bool:
        return self.measured_i is None


def predict_iterations(p: int, q: int) -> int:
    """Closed-form iteration count for ``n = p*q`` with ``p <= q``."""
    if p > q:
        raise DomainError(f"expected p <= q, got p={p}, q={q}")
    if p < 1 or not p & 1 or not q & 1:
        raise DomainError(f"expected odd positive factors, got p={p}, q={q}")
    a = (p * q - 1) // 2
    return (q - 1) // 2 - math.isqrt(a // 2)


def h_estimate(iterations: Optional[int], n: int) -> Optional[float]:
    if iterations is None or iterations < 2:
        return None
    return math.log(iterations) / math.log(math.log2(n))


def measure(p: int, q: int, budget: Optional[int] = DEFAULT_BUDGET) -> BenchRecord:
    if p > q:
        raise DomainError(f"expected p <= q, got p={p}, q={q}")
    n = p * q
    result = engine.run(n, budget)
    measured = result.iterations if result.complete else None
    return BenchRecord(
        p=p, q=q, n=n,
        measured_i=measured,
        predicted_i=predict_iterations(p, q),
        bits_n=math.log2(n),
        gap=math.log2(q) - math.log2(p),
        h_est=h_estimate(measured, n),
    )


@lru_cache(maxsize=1)
def _small_primes() -> list[int]:
    return oracle.sieve_primes(SIEVE_LIMIT)


def random_prime(rng: random.Random, lo: int, hi: int) -> Optional[int]:
    """Uniform odd prime in ``[lo, hi]``, or None if there is none / none found."""
    lo = max(lo, 3)
    if hi < lo:
        return None
    if hi <= SIEVE_LIMIT:
        primes = _small_primes()
        i, j = bisect.bisect_left(primes, lo), bisect.bisect_right(primes, hi)
        return primes[rng.randrange(i, j)] if i < j else None
    for _ in range(MAX_PRIME_ATTEMPTS):
        cand = rng.randrange(lo, hi + 1) | 1
        if cand <= hi and oracle.is_prime(cand):
            return cand
    return None


def next_prime(m: int) -> int:
    """Smallest odd prime >= m."""
    m = max(m, 3) | 1
    if m <= SIEVE_LIMIT:
        primes = _small_primes()
        i = bisect.bisect_left(primes, m)
        if i < len(primes):
            return primes[i]
    while not oracle.is_prime(m):
        m += 2
    return m


def sample_pair(rng: random.Random, bits: float, gap: float) -> tuple[int, int]:
    """Prime pair with ``log2(p*q) ~ bits`` and ``log2(q/p) ~ gap``.

    ``p`` is drawn from a narrow window around ``2**((bits - gap)/2)``, widened
    until the window holds a prime; ``q`` is the next prime above ``p * 2**gap``.
    """
    if gap < 0:
        raise DomainError(f"gap must be non-negative, got {gap}")
    centre = (bits - gap) / 2
    for width in (0.1, 0.25, 0.5, 1.0, 2.0):
        lo = math.floor(2 ** (centre - width))
        hi = math.ceil(2 ** (centre + width))
        p = random_prime(rng, lo, hi)
        if p is not None:
            break
    else:
        p = next_prime(math.floor(2 ** centre))
    q = next_prime(max(p, math.ceil(p * 2.0 ** gap)))
    return p, q


def _measure_pair(args: tuple[int, int, Optional[int]]) -> BenchRecord:
    return measure(*args)


def sweep(bits: Iterable[float], gaps: Iterable[float], samples: int,
          budget: Optional[int] = DEFAULT_BUDGET, seed: int = 0,
          workers: int = 1) -> list[BenchRecord]:
    """Measure ``samples`` random pairs for every (bits, gap) cell.

    Pairs are drawn sequentially from ``random.Random(seed)`` so the output is
    reproducible whatever ``workers`` is.
    """
    rng = random.Random(seed)
    gaps = list(gaps)
    jobs = [(*sample_pair(rng, b, g), budget)
            for b in bits for g in gaps for _ in range(samples)]
    if workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(_measure_pair, jobs))
    return [_measure_pair(job) for job in jobs]


def ladder(rows: int = len(LADDER_PRIMES) - 1, extra: bool = False,
           budget: Optional[int] = DEFAULT_BUDGET) -> list[BenchRecord]:
    return [measure(p, q, budget) for p, q in ladder_pairs(rows, extra)]


@dataclass(frozen=True)
class SummaryRow:
    gap: float
    bits: int
    count: int
    mean_h: float
    grows: bool  # mean_h above the previous (smaller-bits) row of this gap


@dataclass
class Summary:
    rows: list[SummaryRow]
    # gap -> True when mean_h strictly increases across all its bit sizes
    increasing: dict[float, bool]
    exceeded: int

    @property
    def flagged(self) -> list[SummaryRow]:
        return [r for r in self.rows if r.grows]


def summarize(records: Sequence[BenchRecord], resolution: float = 1.0) -> Summary:
    """Mean ``h_est`` per (gap bucket, rounded bits) cell.

    Gaps are bucketed to the nearest multiple of ``resolution``.  Records
    without an estimate (budget exceeded, or fewer than two iterations) are
    left out of the means; exceeded runs are counted.
    """
    exceeded = sum(1 for r in records if r.exceeded)
    cells: dict[tuple[float, int], list[float]] = {}
    for r in records:
        if r.h_est is None:
            continue
        key = (round(round(r.gap / resolution) * resolution, 6), round(r.bits_n))
        cells.setdefault(key, []).append(r.h_est)

    rows: list[SummaryRow] = []
    increasing: dict[float, bool] = {}
    prev: dict[float, float] = {}
    for (gap, bits) in sorted(cells):
        values = cells[gap, bits]
        mean = math.fsum(values) / len(values)
        grows = gap in prev and mean > prev[gap]
        if gap in prev:
            increasing[gap] = increasing.get(gap, True) and grows
        prev[gap] = mean
        rows.append(SummaryRow(gap, bits, len(values), mean, grows))
    return Summary(rows, increasing, exceeded)


BENCH_COLUMNS = tuple(f.name for f in fields(BenchRecord))


def _fmt(value) -> str:
    if value is None:
        return ""
    if isinstance(value, float):
        return f"{value:.6f}"
    return str(value)


def write_csv(records: Iterable[BenchRecord], fh: TextIO) -> None:
    writer = csv.writer(fh, lineterminator="\n")
    writer.writerow(BENCH_COLUMNS)
    for r in records:
        writer.writerow([_fmt(v) for v in astuple(r)])


def format_summary(summary: Summary) -> str:
    lines = ["gap,bits,count,mean_h,grows"]
    for r in summary.rows:
        lines.append(f"{r.gap:g},{r.bits},{r.count},{r.mean_h:.6f},{int(r.grows)}")
    for gap, inc in sorted(summary.increasing.items()):
        verdict = "increases with n" if inc else "not monotone in n"
        lines.append(f"# gap {gap:g}: h_est {verdict}")
    if summary.exceeded:
        lines.append(f"# {summary.exceeded} run(s) exceeded the budget")
    return "\n".join(lines)
