"""Exact arithmetic in cyclotomic fields Q(zeta_n).

Elements are stored as the residue of a polynomial in ``zeta_n`` modulo the
n-th cyclotomic polynomial, in the power basis ``1, zeta, ..., zeta^(phi(n)-1)``.
That representation is canonical, so equality is coefficientwise.

Rationals are ordinary :class:`fractions.Fraction` values; they mix freely with
:class:`CyclotomicNumber` in arithmetic.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from numbers import Rational

from .errors import ContractError

__all__ = [
    "CyclotomicNumber",
    "cyclotomic_polynomial",
    "totient",
    "zeta",
    "cyclo_add",
    "cyclo_mul",
    "cyclo_neg",
    "cyclo_inv",
    "embed_order",
    "embed_complex",
    "common_order",
    "descend",
    "as_cyclotomic",
]


def totient(n: int) -> int:
    result = n
    m = n
    f = 2
    while f * f <= m:
        if m % f == 0:
            while m % f == 0:
                m //= f
            result -= result // f
        f += 1
    if m > 1:
        result -= result // m
    return result


def _divisors(n):
    return [d for d in range(1, n + 1) if n % d == 0]


def _int_polydiv_exact(num, den):
    # Exact division of integer polynomials (low degree first), den monic.
    num = list(num)
    out = [0] * (len(num) - len(den) + 1)
    for i in range(len(out) - 1, -1, -1):
        c = num[i + len(den) - 1]
        out[i] = c
        if c:
            for j, d in enumerate(den):
                num[i + j] -= c * d
    if any(num[: len(den) - 1]):
        raise ArithmeticError("inexact cyclotomic division")
    return out


@lru_cache(maxsize=None)
def cyclotomic_polynomial(n: int) -> tuple[int, ...]:
    """Integer coefficients of Phi_n, lowest degree first."""
    if n < 1:
        raise ContractError(f"cyclotomic order must be positive, got {n}")
    poly = [-1] + [0] * (n - 1) + [1]
    for d in _divisors(n)[:-1]:
        poly = _int_polydiv_exact(poly, cyclotomic_polynomial(d))
    return tuple(poly)


def _reduce(coeffs, n):
    """Reduce a Fraction coefficient list modulo Phi_n."""
    phi = cyclotomic_polynomial(n)
    deg = len(phi) - 1
    c = list(coeffs)
    # fold with zeta^n = 1 first; keeps the division short for big products
    if len(c) > n:
        folded = [Fraction(0)] * n
        for i, v in enumerate(c):
            folded[i % n] += v
        c = folded
    for i in range(len(c) - 1, deg - 1, -1):
        lead = c[i]
        if lead:
            for j in range(deg):
                c[i - deg + j] -= lead * phi[j]
        c[i] = Fraction(0)
    c = c[:deg] + [Fraction(0)] * max(0, deg - len(c))
    return tuple(c)


@dataclass(frozen=True, eq=False)
class CyclotomicNumber:
    """An element of Q(zeta_n), zeta_n = exp(2*pi*i/n)."""

    order: int
    coeffs: tuple

    def __post_init__(self):
        if self.order < 1:
            raise ContractError(f"order must be positive, got {self.order}")
        if len(self.coeffs) != totient(self.order):
            raise ContractError(
                f"order {self.order} needs {totient(self.order)} coefficients, "
                f"got {len(self.coeffs)}"
            )

    @classmethod
    def from_poly(cls, coeffs, order: int) -> "CyclotomicNumber":
        """Reduce an arbitrary polynomial in zeta_n (low degree first)."""
        return cls(order, _reduce([Fraction(c) for c in coeffs], order))

    @classmethod
    def rational(cls, q, order: int = 1) -> "CyclotomicNumber":
        c = [Fraction(0)] * totient(order)
        c[0] = Fraction(q)
        return cls(order, tuple(c))

    def is_rational(self) -> bool:
        return not any(self.coeffs[1:])

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def to_fraction(self) -> Fraction:
        if not self.is_rational():
            raise ContractError(f"{self} is not rational")
        return self.coeffs[0]

    def _coerce(self, other):
        if isinstance(other, CyclotomicNumber):
            return other
        if isinstance(other, (int, Rational)):
            return CyclotomicNumber.rational(other, self.order)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return cyclo_add(self, other)

    __radd__ = __add__

    def __neg__(self):
        return cyclo_neg(self)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return cyclo_add(self, cyclo_neg(other))

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return cyclo_add(other, cyclo_neg(self))

    def __mul__(self, other):
        if isinstance(other, (int, Rational)):
            q = Fraction(other)
            return CyclotomicNumber(self.order, tuple(q * c for c in self.coeffs))
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return cyclo_mul(self, other)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return cyclo_mul(self, cyclo_inv(other))

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return cyclo_mul(other, cyclo_inv(self))

    def __pow__(self, k: int):
        if k < 0:
            return cyclo_inv(self) ** (-k)
        result = CyclotomicNumber.rational(1, self.order)
        base = self
        while k:
            if k & 1:
                result = cyclo_mul(result, base)
            k >>= 1
            if k:
                base = cyclo_mul(base, base)
        return result

    def __eq__(self, other):
        if isinstance(other, CyclotomicNumber):
            if other.order == self.order:
                return self.coeffs == other.coeffs
            n = math.lcm(self.order, other.order)
            return embed_order(self, n).coeffs == embed_order(other, n).coeffs
        if isinstance(other, (int, Rational)):
            return self.is_rational() and self.coeffs[0] == other
        return NotImplemented

    def __hash__(self):
        if self.is_rational():
            return hash(self.coeffs[0])
        return hash((self.order, self.coeffs))

    def __bool__(self):
        return not self.is_zero()

    def __complex__(self):
        return embed_complex(self)

    def __str__(self):
        parts = []
        for i, c in enumerate(self.coeffs):
            if not c:
                continue
            if i == 0:
                parts.append(str(c))
                continue
            mon = f"z{self.order}" if i == 1 else f"z{self.order}^{i}"
            if c == 1:
                parts.append(mon)
            elif c == -1:
                parts.append(f"-{mon}")
            else:
                parts.append(f"{c}*{mon}")
        if not parts:
            return "0"
        return " + ".join(parts).replace("+ -", "- ")

    def __repr__(self):
        return f"CyclotomicNumber({self.order}, {str(self)!r})"

    def to_json(self) -> dict:
        return {"order": self.order, "coeffs": [_fraction_str(c) for c in self.coeffs]}

    @classmethod
    def from_json(cls, data: dict) -> "CyclotomicNumber":
        return cls(int(data["order"]), tuple(Fraction(c) for c in data["coeffs"]))


def _fraction_str(q: Fraction) -> str:
    return f"{q.numerator}/{q.denominator}"


def zeta(n: int, j: int = 1) -> CyclotomicNumber:
    """The root of unity exp(2*pi*i*j/n) as an element of Q(zeta_n)."""
    if n < 1:
        raise ContractError(f"order must be positive, got {n}")
    j %= n
    c = [Fraction(0)] * (j + 1)
    c[j] = Fraction(1)
    return CyclotomicNumber.from_poly(c, n)


def as_cyclotomic(x, order: int = 1) -> CyclotomicNumber:
    if isinstance(x, CyclotomicNumber):
        return x
    return CyclotomicNumber.rational(x, order)


def _check_same_order(a, b):
    if a.order != b.order:
        raise ContractError(
            f"order mismatch: {a.order} vs {b.order} (normalize with embed_order)"
        )


def cyclo_add(a: CyclotomicNumber, b: CyclotomicNumber) -> CyclotomicNumber:
    _check_same_order(a, b)
    return CyclotomicNumber(a.order, tuple(x + y for x, y in zip(a.coeffs, b.coeffs)))


def cyclo_neg(a: CyclotomicNumber) -> CyclotomicNumber:
    return CyclotomicNumber(a.order, tuple(-x for x in a.coeffs))


def cyclo_mul(a: CyclotomicNumber, b: CyclotomicNumber) -> CyclotomicNumber:
    _check_same_order(a, b)
    if a.is_rational():
        q = a.coeffs[0]
        return CyclotomicNumber(a.order, tuple(q * c for c in b.coeffs))
    if b.is_rational():
        q = b.coeffs[0]
        return CyclotomicNumber(a.order, tuple(q * c for c in a.coeffs))
    prod = [Fraction(0)] * (len(a.coeffs) + len(b.coeffs) - 1)
    for i, x in enumerate(a.coeffs):
        if x:
            for j, y in enumerate(b.coeffs):
                if y:
                    prod[i + j] += x * y
    return CyclotomicNumber(a.order, _reduce(prod, a.order))


# Univariate helpers over Q for the extended gcd (coefficient lists, low first).

def _trim(p):
    p = list(p)
    while p and not p[-1]:
        p.pop()
    return p


def _poly_divmod(a, b):
    a = _trim(a)
    b = _trim(b)
    if len(a) < len(b):
        return [], a
    q = [Fraction(0)] * (len(a) - len(b) + 1)
    lead = b[-1]
    for i in range(len(q) - 1, -1, -1):
        c = a[i + len(b) - 1] / lead
        q[i] = c
        if c:
            for j, d in enumerate(b):
                a[i + j] -= c * d
    return _trim(q), _trim(a[: len(b) - 1])


def _poly_mul(a, b):
    if not a or not b:
        return []
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return out


def _poly_sub(a, b):
    n = max(len(a), len(b))
    a = list(a) + [Fraction(0)] * (n - len(a))
    b = list(b) + [Fraction(0)] * (n - len(b))
    return _trim([x - y for x, y in zip(a, b)])


def cyclo_inv(a: CyclotomicNumber) -> CyclotomicNumber:
    """Inverse via the extended Euclidean algorithm against Phi_n."""
    if a.is_zero():
        raise ZeroDivisionError("inverse of zero in a cyclotomic field")
    if a.is_rational():
        return CyclotomicNumber.rational(1 / a.coeffs[0], a.order)
    r0 = [Fraction(c) for c in cyclotomic_polynomial(a.order)]
    r1 = _trim(a.coeffs)
    s0, s1 = [], [Fraction(1)]
    while len(r1) > 1:
        q, r = _poly_divmod(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, _poly_sub(s0, _poly_mul(q, s1))
    if not r1:
        # Phi_n is irreducible, so a nonzero residue is always coprime to it
        raise ArithmeticError("non-invertible cyclotomic residue")
    c = r1[0]
    return CyclotomicNumber.from_poly([x / c for x in s1], a.order)


def embed_order(a, m: int) -> CyclotomicNumber:
    """Map Q(zeta_n) into Q(zeta_m) for n | m, sending zeta_n to zeta_m^(m/n)."""
    a = as_cyclotomic(a)
    n = a.order
    if m % n:
        raise ContractError(f"cannot embed order {n} into order {m}")
    if n == m:
        return a
    step = m // n
    poly = [Fraction(0)] * ((len(a.coeffs) - 1) * step + 1)
    for i, c in enumerate(a.coeffs):
        poly[i * step] = c
    return CyclotomicNumber.from_poly(poly, m)


def common_order(values) -> int:
    n = 1
    for v in values:
        if isinstance(v, CyclotomicNumber):
            n = math.lcm(n, v.order)
    return n


def embed_complex(a, digits: int = 15):
    """Complex value of ``a`` under zeta_n -> exp(2*pi*i/n).

    Returns a Python complex for ``digits <= 15`` and an ``mpmath.mpc``
    computed at the requested number of digits otherwise.
    """
    a = as_cyclotomic(a)
    if digits <= 15:
        z = cmath.exp(2j * math.pi / a.order)
        acc = 0j
        for c in reversed(a.coeffs):
            acc = acc * z + float(c)
        return acc
    import mpmath

    with mpmath.workdps(digits + 10):
        z = mpmath.exp(2j * mpmath.pi / a.order)
        acc = mpmath.mpc(0)
        for c in reversed(a.coeffs):
            acc = acc * z + mpmath.mpf(c.numerator) / c.denominator
        return +acc


def _solve_rational(columns, target):
    """Solve sum x_i * columns[i] == target over Q; None if inconsistent."""
    rows = len(target)
    ncols = len(columns)
    mat = [[columns[j][i] for j in range(ncols)] + [target[i]] for i in range(rows)]
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, rows) if mat[i][c]), None)
        if piv is None:
            continue
        mat[r], mat[piv] = mat[piv], mat[r]
        inv = 1 / mat[r][c]
        mat[r] = [v * inv for v in mat[r]]
        for i in range(rows):
            if i != r and mat[i][c]:
                f = mat[i][c]
                mat[i] = [v - f * w for v, w in zip(mat[i], mat[r])]
        pivots.append(c)
        r += 1
    if any(mat[i][ncols] for i in range(r, rows)):
        return None
    x = [Fraction(0)] * ncols
    for i, c in enumerate(pivots):
        x[c] = mat[i][ncols]
    return x


def descend(a: CyclotomicNumber) -> CyclotomicNumber:
    """Rewrite ``a`` in the smallest Q(zeta_d), d | a.order, that contains it."""
    if a.is_rational():
        return CyclotomicNumber.rational(a.coeffs[0])
    for d in _divisors(a.order)[:-1]:
        basis = [embed_order(zeta(d, i), a.order).coeffs for i in range(totient(d))]
        x = _solve_rational(basis, a.coeffs)
        if x is not None:
            return CyclotomicNumber(d, tuple(x))
    return a
