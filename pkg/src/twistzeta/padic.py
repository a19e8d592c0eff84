"""Truncated p-adic numbers, the Teichmuller character and the embedding of
Q(zeta_n), n | p - 1, into Q_p.

A nonzero :class:`PAdicScalar` stands for ``unit * p**valuation`` with the unit
known modulo ``p**precision``; its absolute precision is therefore
``valuation + precision``.  A zero at finite precision is stored as
``unit=None, precision=0`` and ``valuation`` equal to the absolute precision
to which it is known to vanish.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational

from .cyclotomic import descend
from .errors import ContractError, PrecisionError, UnsupportedEmbeddingError

__all__ = [
    "PAdicScalar",
    "valuation",
    "factorial_valuation",
    "is_prime",
    "primitive_root",
    "teichmuller",
    "angle_bracket",
    "padic_embed_cyclo",
]


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    f = 2
    while f * f <= n:
        if n % f == 0:
            return False
        f += 1
    return True


def valuation(x, p: int) -> int:
    """p-adic valuation of a nonzero integer or rational."""
    q = Fraction(x)
    if q == 0:
        raise ContractError("valuation of zero is infinite")
    v = 0
    num, den = q.numerator, q.denominator
    while num % p == 0:
        num //= p
        v += 1
    while den % p == 0:
        den //= p
        v -= 1
    return v


def factorial_valuation(n: int, p: int) -> int:
    """v_p(n!) by Legendre's formula (n - s_p(n)) / (p - 1)."""
    s = 0
    m = n
    while m:
        s += m % p
        m //= p
    return (n - s) // (p - 1)


@dataclass(frozen=True)
class PAdicScalar:
    p: int
    precision: int
    valuation: int
    unit: int | None

    def __post_init__(self):
        if self.unit is None:
            if self.precision != 0:
                raise ContractError("zero marker carries no relative precision")
            return
        if self.precision < 1:
            raise ContractError("nonzero p-adic scalar needs precision >= 1")
        if not (0 < self.unit < self.p ** self.precision) or self.unit % self.p == 0:
            raise ContractError(f"invalid unit {self.unit} for p={self.p}")

    # -- construction -------------------------------------------------------

    @classmethod
    def zero(cls, p: int, abs_precision: int) -> "PAdicScalar":
        return cls(p, 0, abs_precision, None)

    @classmethod
    def from_scaled(cls, p: int, x: int, shift: int, digits: int) -> "PAdicScalar":
        """The value ``x * p**shift`` where ``x`` is known modulo ``p**digits``."""
        if digits <= 0:
            return cls.zero(p, shift + max(digits, 0))
        x %= p**digits
        if x == 0:
            return cls.zero(p, shift + digits)
        v = 0
        while x % p == 0:
            x //= p
            v += 1
        return cls(p, digits - v, shift + v, x)

    @classmethod
    def from_residue(cls, x: int, p: int, abs_precision: int) -> "PAdicScalar":
        """An integer known modulo ``p**abs_precision``."""
        return cls.from_scaled(p, x, 0, abs_precision)

    @classmethod
    def from_rational(cls, q, p: int, precision: int) -> "PAdicScalar":
        """An exact rational, kept to ``precision`` relative digits."""
        q = Fraction(q)
        if q == 0:
            return cls.zero(p, precision)
        v = valuation(q, p)
        num, den = q.numerator, q.denominator
        if v > 0:
            num //= p**v
        elif v < 0:
            den //= p ** (-v)
        mod = p**precision
        unit = num * pow(den, -1, mod) % mod
        return cls(p, precision, v, unit)

    # -- queries ------------------------------------------------------------

    @property
    def abs_precision(self) -> int:
        return self.valuation + self.precision

    def is_zero(self) -> bool:
        return self.unit is None

    def norm(self) -> Fraction:
        """|x|_p; a zero marker reports 0."""
        if self.unit is None:
            return Fraction(0)
        return Fraction(1, self.p**self.valuation) if self.valuation >= 0 else Fraction(
            self.p ** (-self.valuation)
        )

    def residue(self, abs_precision: int | None = None) -> int:
        """Integer representative modulo ``p**abs_precision`` (integral values only)."""
        if abs_precision is None:
            abs_precision = self.abs_precision
        if abs_precision > self.abs_precision:
            raise PrecisionError(
                f"requested {abs_precision} digits, only {self.abs_precision} known"
            )
        if self.unit is None:
            return 0
        if self.valuation < 0:
            raise ContractError("value is not a p-adic integer")
        mod = self.p**abs_precision
        return self.unit * self.p**self.valuation % mod

    def with_abs_precision(self, abs_precision: int) -> "PAdicScalar":
        """Drop digits beyond ``abs_precision``."""
        if abs_precision >= self.abs_precision:
            return self
        if self.unit is None:
            return PAdicScalar.zero(self.p, abs_precision)
        return PAdicScalar.from_scaled(
            self.p, self.unit, self.valuation, abs_precision - self.valuation
        )

    def agrees_with(self, other: "PAdicScalar", abs_precision: int) -> bool:
        """True when ``self == other`` modulo ``p**abs_precision``."""
        other = self._coerce(other)
        if min(self.abs_precision, other.abs_precision) < abs_precision:
            raise PrecisionError(
                f"comparison to {abs_precision} digits needs inputs known that far"
            )
        diff = self - other
        return diff.unit is None or diff.valuation >= abs_precision

    # -- arithmetic ---------------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, PAdicScalar):
            if other.p != self.p:
                raise ContractError(f"prime mismatch: {self.p} vs {other.p}")
            return other
        if isinstance(other, (int, Rational)):
            q = Fraction(other)
            if q == 0:
                return PAdicScalar.zero(self.p, max(self.abs_precision, self.precision))
            v = valuation(q, self.p)
            digits = max(self.precision, self.abs_precision - v, 1)
            return PAdicScalar.from_rational(q, self.p, digits)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        p = self.p
        abs_prec = min(self.abs_precision, other.abs_precision)
        base = min(self.valuation, other.valuation)
        total = 0
        for x in (self, other):
            if x.unit is not None:
                total += x.unit * p ** (x.valuation - base)
        return PAdicScalar.from_scaled(p, total, base, abs_prec - base)

    __radd__ = __add__

    def __neg__(self):
        if self.unit is None:
            return self
        return PAdicScalar(self.p, self.precision, self.valuation,
                           (-self.unit) % self.p**self.precision)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        v = self.valuation + other.valuation
        if self.unit is None or other.unit is None:
            return PAdicScalar.zero(self.p, v)
        prec = min(self.precision, other.precision)
        mod = self.p**prec
        return PAdicScalar(self.p, prec, v, self.unit * other.unit % mod)

    __rmul__ = __mul__

    def inverse(self) -> "PAdicScalar":
        if self.unit is None:
            raise PrecisionError("cannot invert a value indistinguishable from zero")
        mod = self.p**self.precision
        return PAdicScalar(self.p, self.precision, -self.valuation, pow(self.unit, -1, mod))

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other * self.inverse()

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        if self.unit is None:
            if k == 0:
                raise ContractError("0**0 of an inexact zero is undefined")
            return PAdicScalar.zero(self.p, self.valuation * k)
        mod = self.p**self.precision
        return PAdicScalar(self.p, self.precision, self.valuation * k, pow(self.unit, k, mod))

    def __str__(self):
        if self.unit is None:
            return f"O({self.p}^{self.valuation})"
        return f"{self.unit}*{self.p}^{self.valuation} + O({self.p}^{self.abs_precision})"

    # -- serialization ------------------------------------------------------

    def to_json(self) -> dict:
        if self.unit is None:
            digits = ""
        else:
            ds = []
            u = self.unit
            for _ in range(self.precision):
                ds.append(str(u % self.p))
                u //= self.p
            digits = ",".join(ds)
        return {"p": self.p, "precision": self.precision,
                "valuation": self.valuation, "unit": digits}

    @classmethod
    def from_json(cls, data: dict) -> "PAdicScalar":
        p = int(data["p"])
        if not data["unit"]:
            return cls.zero(p, int(data["valuation"]))
        unit = sum(int(d) * p**i for i, d in enumerate(data["unit"].split(",")))
        return cls(p, int(data["precision"]), int(data["valuation"]), unit)


def teichmuller(x: int, p: int, precision: int) -> PAdicScalar:
    """The (p-1)-th root of unity congruent to ``x`` mod p, to ``precision`` digits."""
    if x % p == 0:
        raise ContractError(f"{x} is not a unit modulo {p}")
    mod = p**precision
    w = x % mod
    while True:
        nxt = pow(w, p, mod)
        if nxt == w:
            return PAdicScalar(p, precision, 0, w)
        w = nxt


def angle_bracket(x: PAdicScalar) -> PAdicScalar:
    """<x> = x / w(x), the projection of a unit onto 1 + pZ_p."""
    if x.unit is None or x.valuation != 0:
        raise ContractError("angle bracket is defined on p-adic units only")
    w = teichmuller(x.unit, x.p, x.precision)
    return x * w.inverse()


def primitive_root(p: int) -> int:
    """Smallest generator of (Z/p)^*."""
    factors = [q for q in range(2, p) if (p - 1) % q == 0 and is_prime(q)]
    for g in range(2, p):
        if all(pow(g, (p - 1) // q, p) != 1 for q in factors):
            return g
    return 1  # p == 2


def padic_embed_cyclo(a, p: int, precision: int, generator: int | None = None) -> PAdicScalar:
    """Image of ``a`` in Q_p.

    zeta_n is sent to ``w(g) ** ((p-1)/n)`` where ``g`` is ``generator`` (a
    primitive root mod p, default the smallest one).  Choosing one generator
    for the whole tower keeps the images compatible across orders n | p - 1.
    """
    if isinstance(a, (int, Rational)):
        return PAdicScalar.from_rational(a, p, precision)
    if a.order > 1 and (p - 1) % a.order:
        a = descend(a)
    if a.is_rational():
        return PAdicScalar.from_rational(a.coeffs[0], p, precision)
    n = a.order
    if (p - 1) % n:
        raise UnsupportedEmbeddingError(
            f"Q(zeta_{n}) does not embed in Q_{p}: {n} does not divide {p - 1}"
        )
    g = primitive_root(p) if generator is None else generator
    if g % p == 0 or any(pow(g, (p - 1) // q, p) == 1
                         for q in range(2, p) if (p - 1) % q == 0 and is_prime(q)):
        raise ContractError(f"{g} is not a primitive root modulo {p}")
    # extra digits absorb p in the denominators of the coefficients
    slack = max((max(0, -valuation(c, p)) for c in a.coeffs if c), default=0)
    digits = precision + slack
    root = teichmuller(g, p, digits) ** ((p - 1) // n)
    acc = PAdicScalar.zero(p, digits)
    for c in reversed(a.coeffs):
        acc = acc * root
        if c:
            acc = acc + PAdicScalar.from_rational(c, p, digits)
    return acc
