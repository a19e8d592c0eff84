"""Sparse multivariate polynomials with exact coefficients.

Coefficients are Fractions by default but any exact scalar supporting ``+``,
``*`` and comparison with ``0`` works (in particular
:class:`~twistzeta.cyclotomic.CyclotomicNumber`).  Variables are indexed from
0; exponent tuples are the dictionary keys.
"""

from __future__ import annotations

import math
from fractions import Fraction
from numbers import Rational

from .errors import ContractError

__all__ = [
    "Polynomial",
    "expand_product",
    "find_constant_partial",
    "degree_in_var",
]


def _grlex_key(exp):
    return (sum(exp), exp)


def _as_coeff(c):
    if isinstance(c, (int, Rational)) and not isinstance(c, Fraction):
        return Fraction(c)
    return c


class Polynomial:
    """An immutable polynomial in ``nvars`` variables.

    >>> x, y = Polynomial.variables(2)
    >>> str((x + y) * (x - y))
    'x1^2 - x2^2'
    """

    __slots__ = ("nvars", "_terms", "_hash")

    def __init__(self, nvars: int, terms=None):
        if nvars < 0:
            raise ContractError("nvars must be non-negative")
        clean = {}
        for exp, c in (terms or {}).items():
            exp = tuple(int(e) for e in exp)
            if len(exp) != nvars:
                raise ContractError(f"exponent {exp} does not have {nvars} entries")
            if any(e < 0 for e in exp):
                raise ContractError(f"negative exponent in {exp}")
            if c != 0:
                clean[exp] = _as_coeff(c)
        self.nvars = nvars
        self._terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, nvars, terms):
        obj = cls.__new__(cls)
        obj.nvars = nvars
        obj._terms = terms
        obj._hash = None
        return obj

    # -- constructors -------------------------------------------------------

    @classmethod
    def constant(cls, c, nvars: int) -> "Polynomial":
        return cls(nvars, {(0,) * nvars: c})

    @classmethod
    def zero(cls, nvars: int) -> "Polynomial":
        return cls._raw(nvars, {})

    @classmethod
    def one(cls, nvars: int) -> "Polynomial":
        return cls.constant(1, nvars)

    @classmethod
    def variable(cls, i: int, nvars: int) -> "Polynomial":
        if not 0 <= i < nvars:
            raise ContractError(f"variable index {i} out of range for {nvars} variables")
        exp = [0] * nvars
        exp[i] = 1
        return cls(nvars, {tuple(exp): 1})

    @classmethod
    def variables(cls, nvars: int):
        return tuple(cls.variable(i, nvars) for i in range(nvars))

    @classmethod
    def monomial(cls, exp, c=1) -> "Polynomial":
        return cls(len(exp), {tuple(exp): c})

    # -- basic queries ------------------------------------------------------

    @property
    def terms(self) -> dict:
        """A copy of the exponent -> coefficient mapping."""
        return dict(self._terms)

    def items(self):
        """Terms in graded-lexicographic order (highest first)."""
        return sorted(self._terms.items(), key=lambda t: _grlex_key(t[0]), reverse=True)

    def support(self):
        return set(self._terms)

    def coefficient(self, exp):
        return self._terms.get(tuple(exp), Fraction(0))

    def is_zero(self) -> bool:
        return not self._terms

    def is_constant(self) -> bool:
        return all(not any(e) for e in self._terms)

    def constant_term(self):
        return self._terms.get((0,) * self.nvars, Fraction(0))

    def total_degree(self) -> int:
        if not self._terms:
            raise ContractError("degree of the zero polynomial is undefined")
        return max(sum(e) for e in self._terms)

    def degree_in_var(self, n: int) -> int:
        if not self._terms:
            raise ContractError("degree of the zero polynomial is undefined")
        return max(e[n] for e in self._terms)

    def __len__(self):
        return len(self._terms)

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.nvars == other.nvars and self._terms == other._terms
        if isinstance(other, (int, Rational)):
            if other == 0:
                return not self._terms
            return self._terms == {(0,) * self.nvars: other}
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.nvars, frozenset(self._terms.items())))
        return self._hash

    # -- ring operations ----------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, Polynomial):
            if other.nvars != self.nvars:
                raise ContractError(
                    f"nvars mismatch: {self.nvars} vs {other.nvars}"
                )
            return other
        return Polynomial.constant(other, self.nvars)

    def __add__(self, other):
        other = self._coerce(other)
        out = dict(self._terms)
        for exp, c in other._terms.items():
            s = out.get(exp, 0) + c
            if s != 0:
                out[exp] = s
            else:
                out.pop(exp, None)
        return Polynomial._raw(self.nvars, out)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial._raw(self.nvars, {e: -c for e, c in self._terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) + (-self)

    def scalar_mul(self, c) -> "Polynomial":
        if c == 0:
            return Polynomial.zero(self.nvars)
        return Polynomial._raw(self.nvars, {e: c * v for e, v in self._terms.items()})

    def __mul__(self, other):
        if not isinstance(other, Polynomial):
            return self.scalar_mul(_as_coeff(other))
        other = self._coerce(other)
        out = {}
        # schoolbook over sorted terms
        for ea, ca in self.items():
            for eb, cb in other.items():
                exp = tuple(x + y for x, y in zip(ea, eb))
                s = out.get(exp, 0) + ca * cb
                if s != 0:
                    out[exp] = s
                else:
                    out.pop(exp, None)
        return Polynomial._raw(self.nvars, out)

    def __rmul__(self, other):
        return self.scalar_mul(_as_coeff(other))

    def __pow__(self, k: int):
        if k < 0:
            raise ContractError("negative polynomial power")
        result = Polynomial.one(self.nvars)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    # -- calculus and evaluation --------------------------------------------

    def evaluate(self, point):
        point = tuple(point)
        if len(point) != self.nvars:
            raise ContractError(
                f"point has {len(point)} coordinates, polynomial has {self.nvars} variables"
            )
        total = Fraction(0)
        powers = [dict() for _ in range(self.nvars)]
        for exp, c in self._terms.items():
            term = c
            for i, e in enumerate(exp):
                if e:
                    cache = powers[i]
                    if e not in cache:
                        cache[e] = point[i] ** e
                    term = term * cache[e]
            total = total + term
        return total

    __call__ = evaluate

    def partial_derivative(self, alpha) -> "Polynomial":
        """The mixed partial derivative d^alpha."""
        alpha = tuple(alpha)
        if len(alpha) != self.nvars:
            raise ContractError(f"derivative order {alpha} has wrong length")
        out = {}
        for exp, c in self._terms.items():
            if any(e < a for e, a in zip(exp, alpha)):
                continue
            factor = 1
            for e, a in zip(exp, alpha):
                factor *= math.perm(e, a)
            out[tuple(e - a for e, a in zip(exp, alpha))] = c * factor
        return Polynomial._raw(self.nvars, out)

    # -- text / json --------------------------------------------------------

    def to_string(self, names=None) -> str:
        if names is None:
            names = [f"x{i + 1}" for i in range(self.nvars)]
        if not self._terms:
            return "0"
        parts = []
        for exp, c in self.items():
            mon = "*".join(
                n if e == 1 else f"{n}^{e}" for n, e in zip(names, exp) if e
            )
            neg = c < 0 if isinstance(c, Fraction) else False
            mag = -c if neg else c
            if not mon:
                body = str(mag)
            elif mag == 1:
                body = mon
            else:
                body = f"{mag}*{mon}" if isinstance(mag, Fraction) else f"({mag})*{mon}"
            parts.append(("-", body) if neg else ("+", body))
        sign, body = parts[0]
        out = ("-" if sign == "-" else "") + body
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return out

    def __str__(self):
        return self.to_string()

    def __repr__(self):
        return f"Polynomial({self.nvars}, {self.to_string()!r})"

    def to_json(self) -> dict:
        from .cyclotomic import CyclotomicNumber

        def enc(c):
            if isinstance(c, CyclotomicNumber):
                return c.to_json()
            return f"{c.numerator}/{c.denominator}"

        return {
            "nvars": self.nvars,
            "terms": [{"exp": list(e), "coeff": enc(c)} for e, c in self.items()],
        }

    @classmethod
    def from_json(cls, data: dict) -> "Polynomial":
        from .cyclotomic import CyclotomicNumber

        def dec(c):
            if isinstance(c, dict):
                return CyclotomicNumber.from_json(c)
            return Fraction(c)

        return cls(int(data["nvars"]), {tuple(t["exp"]): dec(t["coeff"]) for t in data["terms"]})


def degree_in_var(p: Polynomial, n: int) -> int:
    return p.degree_in_var(n)


def expand_product(Q: Polynomial, Ps, ks) -> Polynomial:
    """Q * prod_t Ps[t] ** ks[t]."""
    Ps = list(Ps)
    ks = list(ks)
    if len(Ps) != len(ks):
        raise ContractError(f"{len(Ps)} polynomials but {len(ks)} exponents")
    result = Q
    for P, k in zip(Ps, ks):
        if P.nvars != Q.nvars:
            raise ContractError("all polynomials must share nvars")
        if k:
            result = result * P**k
    return result


def find_constant_partial(p: Polynomial, n: int) -> tuple:
    """A multi-index alpha with alpha[n] >= 1 and d^alpha p a nonzero constant.

    Among support exponents of maximal degree in variable ``n``, take one of
    maximal total degree (lexicographically smallest on ties).  No other
    monomial dominates it componentwise, so differentiating along it kills
    everything but its own coefficient.
    """
    if p.is_zero() or p.degree_in_var(n) < 1:
        raise ContractError(f"polynomial does not depend on variable {n}")
    d = p.degree_in_var(n)
    candidates = [e for e in p.support() if e[n] == d]
    best = max(sum(e) for e in candidates)
    return min(e for e in candidates if sum(e) == best)
