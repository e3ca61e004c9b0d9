"""Machine-integer copy of the engine loop, compiled with numba when available.

Only used for plain-int runs whose every intermediate fits in a signed 64-bit
word.  Throughout a walk ``0 <= b <= c <= a`` and ``-2c <= y <= 2b``, so
``a < 2**60`` leaves ample headroom.  Set ``ODDFACTOR_NO_JIT=1`` to force the
pure-Python loop.
"""

import os

SAFE_LIMIT = 1 << 60

try:
    if os.environ.get("ODDFACTOR_NO_JIT"):
        raise ImportError("disabled by ODDFACTOR_NO_JIT")
    from numba import njit
except ImportError:
    njit = None


def _walk(b, c, y, budget):
    # budget < 0 means unlimited; returns the final (b, c, y)
    steps = 0
    while budget < 0 or steps < budget:
        c += 1
        d = b + b
        if abs(y) > d:
            y += d + 1
        else:
            b -= 1
            e = b - c + 1
            y += e + e
        steps += 1
        if y == 0:
            break
    return b, c, y


walk = njit(cache=True, nogil=True)(_walk) if njit is not None else None


def available() -> bool:
    return walk is not None
