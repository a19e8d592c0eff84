"""Stirling numbers of the second kind and exact binomial helpers."""

from __future__ import annotations

import math
import threading

from .errors import ContractError

__all__ = [
    "StirlingTable",
    "stirling2",
    "stirling2_explicit",
    "binomial",
    "multi_binomial",
    "factorial",
]

factorial = math.factorial


def binomial(n: int, k: int) -> int:
    if k < 0 or n < 0 or k > n:
        return 0
    return math.comb(n, k)


def multi_binomial(ell, j) -> int:
    """prod_n binomial(ell[n], j[n]); zero when some j[n] > ell[n]."""
    ell = tuple(ell)
    j = tuple(j)
    if len(ell) != len(j):
        raise ContractError(f"length mismatch: {ell} vs {j}")
    out = 1
    for a, b in zip(ell, j):
        out *= binomial(a, b)
        if not out:
            return 0
    return out


class StirlingTable:
    """Rows of S(k, l) grown on demand by S(k+1, l) = l S(k, l) + S(k, l-1).

    Rows are stored as tuples and only ever appended, under a lock, so
    concurrent readers always see the same values.
    """

    def __init__(self):
        self._rows = [(1,)]
        self._lock = threading.Lock()

    @property
    def max_k(self) -> int:
        return len(self._rows) - 1

    def row(self, k: int) -> tuple:
        if k < 0:
            raise ContractError(f"negative Stirling index {k}")
        if k >= len(self._rows):
            with self._lock:
                while len(self._rows) <= k:
                    prev = self._rows[-1]
                    m = len(prev)
                    new = [0] * (m + 1)
                    for ell in range(1, m + 1):
                        left = prev[ell] if ell < m else 0
                        new[ell] = ell * left + prev[ell - 1]
                    self._rows.append(tuple(new))
        return self._rows[k]

    def __call__(self, k: int, ell: int) -> int:
        if ell < 0:
            return 0
        row = self.row(k)
        return row[ell] if ell < len(row) else 0


_default_table = StirlingTable()


def stirling2(k: int, ell: int) -> int:
    """Number of partitions of a k-set into ell nonempty blocks."""
    return _default_table(k, ell)


def stirling2_explicit(k: int, ell: int) -> int:
    """S(k, l) = (1/l!) sum_j (-1)^(l-j) C(l, j) j^k, with 0**0 == 1."""
    if k < 0 or ell < 0:
        raise ContractError("Stirling indices must be non-negative")
    total = 0
    for j in range(ell + 1):
        total += (-1) ** (ell - j) * math.comb(ell, j) * j**k  # 0**0 == 1
    q, r = divmod(total, math.factorial(ell))
    assert r == 0, "alternating sum not divisible by l!"
    return q

