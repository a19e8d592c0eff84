"""Independent checks on the exact evaluators.

* :func:`taylor_zeta_oracle` gets zeta_mu(-k) from the Taylor coefficients of
  ``mu / (e^x - mu)`` by exact power-series division (no Stirling numbers).
* :func:`truncated_z_sum` sums the defining series in floating point inside
  its region of convergence.
* :func:`residue_demo` recomputes ``sum_u (-1)^u / (u^2 + 1) = pi / sinh(pi)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .cyclotomic import CyclotomicNumber, as_cyclotomic, embed_complex
from .errors import ContractError, PoleError

__all__ = [
    "PowerSeries",
    "taylor_zeta_oracle",
    "truncated_z_sum",
    "TruncatedSum",
    "symmetric_partial_sum",
    "residue_demo",
    "ResidueDemo",
]


@dataclass(frozen=True)
class PowerSeries:
    """c_0 + c_1 x + ... + c_K x^K + O(x^(K+1)) with exact coefficients."""

    coeffs: tuple

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    @classmethod
    def exp(cls, K: int) -> "PowerSeries":
        return cls(tuple(Fraction(1, math.factorial(i)) for i in range(K + 1)))

    def _align(self, other):
        if not isinstance(other, PowerSeries):
            return PowerSeries((other,) + (Fraction(0),) * self.order)
        return other

    def __add__(self, other):
        other = self._align(other)
        K = min(self.order, other.order)
        return PowerSeries(tuple(a + b for a, b in zip(self.coeffs[: K + 1], other.coeffs)))

    __radd__ = __add__

    def __neg__(self):
        return PowerSeries(tuple(-c for c in self.coeffs))

    def __sub__(self, other):
        return self + (-self._align(other))

    def __rsub__(self, other):
        return self._align(other) + (-self)

    def __mul__(self, other):
        if not isinstance(other, PowerSeries):
            return PowerSeries(tuple(c * other for c in self.coeffs))
        K = min(self.order, other.order)
        out = []
        for i in range(K + 1):
            acc = 0
            for j in range(i + 1):
                acc = self.coeffs[j] * other.coeffs[i - j] + acc
            out.append(acc)
        return PowerSeries(tuple(out))

    __rmul__ = __mul__

    def __truediv__(self, other):
        """Exact division; the divisor's constant term must be invertible."""
        other = self._align(other)
        K = min(self.order, other.order)
        d0 = other.coeffs[0]
        if d0 == 0:
            raise ZeroDivisionError("power series with zero constant term is not invertible")
        inv0 = 1 / d0
        q = []
        for i in range(K + 1):
            acc = self.coeffs[i]
            for j in range(1, i + 1):
                acc = acc - other.coeffs[j] * q[i - j]
            q.append(acc * inv0)
        return PowerSeries(tuple(q))

    def __rtruediv__(self, other):
        return self._align(other) / self


def taylor_zeta_oracle(mu, k: int) -> CyclotomicNumber:
    """zeta_mu(-k) = (-1)^k k! c_k where mu/(e^x - mu) = sum c_k x^k."""
    mu = as_cyclotomic(mu)
    if k < 0:
        raise ContractError(f"k must be a natural number, got {k}")
    if mu == 1:
        raise PoleError("e^x - 1 has no inverse power series")
    one = CyclotomicNumber.rational(1, mu.order)
    denom = PowerSeries.exp(k) * one - mu
    f = (mu + PowerSeries((Fraction(0),) * (k + 1))) / denom
    return f.coeffs[k] * ((-1) ** k * math.factorial(k))


# -- floating point checks -----------------------------------------------------


@dataclass(frozen=True)
class TruncatedSum:
    value: complex
    tail_estimate: float
    box: int
    rigorous: bool = False


def _to_complex(mu):
    if isinstance(mu, CyclotomicNumber):
        return embed_complex(mu)
    return complex(mu)


def _np_eval(P, coords):
    out = 0.0
    for exp, c in P.terms.items():
        c = _to_complex(c) if isinstance(c, CyclotomicNumber) else float(c)
        term = c
        for x, e in zip(coords, exp):
            if e:
                term = term * x**e
        out = out + term
    return np.broadcast_to(np.asarray(out, dtype=complex), np.broadcast(*coords).shape)


def truncated_z_sum(spec, sigma, box: int, chunk: int = 1 << 20) -> TruncatedSum:
    """sum over m in [1, box]^N of mu^m Q(m) prod_t P_t(m)^(-sigma_t), in floats.

    ``tail_estimate`` is the absolute mass of the outermost dyadic shell
    (max_n m_n > box // 2).  It is a heuristic, not a bound.
    """
    sigma = [complex(s) for s in sigma]
    if len(sigma) != len(spec.Ps):
        raise ContractError(f"expected {len(spec.Ps)} exponents, got {len(sigma)}")
    if box < 1:
        raise ContractError("box must be positive")
    N = spec.Q.nvars
    mus = [_to_complex(m) for m in spec.mus]
    if spec.Q.is_zero():
        return TruncatedSum(0j, 0.0, box)
    half = box // 2
    rows = max(1, chunk // box ** max(N - 1, 0))
    total = 0j
    shell = 0.0
    rest = np.arange(1, box + 1, dtype=float)
    for start in range(1, box + 1, rows):
        first = np.arange(start, min(box, start + rows - 1) + 1, dtype=float)
        axes = [first] + [rest] * (N - 1)
        coords = np.meshgrid(*axes, indexing="ij", sparse=True)
        terms = _np_eval(spec.Q, coords).copy()
        for mu, x in zip(mus, coords):
            terms = terms * np.power(mu, x)
        for P, s in zip(spec.Ps, sigma):
            terms = terms * np.power(_np_eval(P, coords), -s)
        total += complex(terms.sum())
        outer = np.zeros(terms.shape, dtype=bool)
        for x in coords:
            outer = outer | (x > half)
        shell += float(np.abs(terms[outer]).sum())
    return TruncatedSum(total, shell, box)


def symmetric_partial_sum(cutoff: int) -> float:
    """sum_{|u| <= cutoff} (-1)^u / (u^2 + 1)."""
    u = np.arange(cutoff, 0, -1, dtype=float)
    signs = np.where(np.arange(cutoff, 0, -1) % 2, -1.0, 1.0)
    return 1.0 + 2.0 * math.fsum(signs / (u * u + 1.0))


@dataclass(frozen=True)
class ResidueDemo:
    computed: float
    expected: float
    abs_err: float
    tail_bound: float


def residue_demo(cutoff: int = 10**6) -> ResidueDemo:
    """Recompute the residue pi/sinh(pi) of the degenerate-polynomial example.

    The limit of an alternating series with decreasing terms lies between
    consecutive partial sums, so their midpoint is within half the next term.
    """
    s0 = symmetric_partial_sum(cutoff)
    s1 = symmetric_partial_sum(cutoff + 1)
    computed = (s0 + s1) / 2
    bound = 1.0 / ((cutoff + 1) ** 2 + 1)
    expected = math.pi / math.sinh(math.pi)
    return ResidueDemo(computed, expected, abs(computed - expected), bound)
