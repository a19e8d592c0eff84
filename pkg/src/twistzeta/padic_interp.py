"""The finite double-sum formula for Z(-k) and the p-adic function Z_p^r.

For ``l`` in N^N put::

    Z_l^r(s) = (1 - mu)^(-l) sum_{j <= l} (-1)^|j| C(l, j) Q(-j)
               prod_t w(P_t(-j))^r_t <P_t(-j)>^(-s_t)

Then ``Z_p^r(s) = mu^1 / (1 - mu)^1 * sum_l Z_l^r(s)`` and at ``s = -k`` with
``k = r mod (p - 1)`` this reproduces the complex value Z(-k).  Each ``Z_l^r``
is divisible by ``prod_n l_n!`` in Z_p, which gives an explicit truncation.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .combinatorics import binomial, multi_binomial
from .cyclotomic import CyclotomicNumber
from .errors import ContractError, HypothesisViolation, UnsupportedEmbeddingError
from .padic import (
    PAdicScalar,
    factorial_valuation,
    is_prime,
    padic_embed_cyclo,
    teichmuller,
)
from .zeta_eval import ZetaSpec, _check_k

__all__ = [
    "PAdicContext",
    "PAdicSpec",
    "theorem4_value",
    "z_ell_r",
    "zp_r_eval",
    "angle_power",
    "angle_power_series",
    "check_padic_hypotheses",
    "PAdicHypothesisReport",
    "truncation_range",
]


@dataclass(frozen=True)
class PAdicContext:
    p: int
    precision: int
    generator: int | None = None

    def __post_init__(self):
        if not is_prime(self.p):
            raise ContractError(f"{self.p} is not prime")
        if self.p < 3:
            raise ContractError("p = 2 admits no twist mu != 1 with order dividing p - 1")
        if self.precision < 1:
            raise ContractError("precision must be at least 1")

    def embed(self, a, precision: int | None = None) -> PAdicScalar:
        return padic_embed_cyclo(a, self.p, precision or self.precision, self.generator)


def _int_coefficients(P) -> bool:
    return all(Fraction(c).denominator == 1 for c in P.terms.values())


def _int_eval(P, point) -> int:
    v = P.evaluate(point)
    return int(v)


def _residue_failures(P, p, N):
    for j in itertools.product(range(p), repeat=N):
        if _int_eval(P, j) % p == 0:
            yield j


@dataclass
class PAdicHypothesisReport:
    p: int
    integer_coefficients: bool
    twist_orders_ok: bool
    twist_valuations: list
    residue_failures: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return (self.integer_coefficients and self.twist_orders_ok
                and not self.residue_failures)

    def to_json(self) -> dict:
        return {
            "ok": self.ok,
            "p": self.p,
            "integer_coefficients": self.integer_coefficients,
            "twist_orders_ok": self.twist_orders_ok,
            "twist_valuations": self.twist_valuations,
            "residue_failures": [{"t": t + 1, "j": list(j)} for t, j in self.residue_failures],
        }


def check_padic_hypotheses(spec: ZetaSpec, ctx: PAdicContext) -> PAdicHypothesisReport:
    """Integrality, twist orders and the exhaustive residue scan p !| P_t(j)."""
    p = ctx.p
    ints = all(_int_coefficients(P) for P in (spec.Q,) + spec.Ps)
    orders_ok = True
    vals = []
    for mu in spec.mus:
        try:
            e = ctx.embed(1 - mu)
            vals.append(None if e.is_zero() else e.valuation)
            # |1 - mu|_p > p^(-1/(p-1)) forces valuation 0 in Q_p
            if e.is_zero() or e.valuation != 0:
                orders_ok = False
        except UnsupportedEmbeddingError:
            orders_ok = False
            vals.append(None)
    failures = []
    if ints:
        for t, P in enumerate(spec.Ps):
            failures.extend((t, j) for j in _residue_failures(P, p, spec.nvars))
    return PAdicHypothesisReport(p, ints, orders_ok, vals, failures)


@dataclass(frozen=True)
class PAdicSpec:
    """A ZetaSpec with integer polynomials satisfying the p-adic hypotheses."""

    spec: ZetaSpec
    ctx: PAdicContext
    r: tuple

    def __post_init__(self):
        r = tuple(int(x) for x in self.r)
        object.__setattr__(self, "r", r)
        if len(r) != self.spec.T:
            raise ContractError(f"r needs {self.spec.T} entries, got {len(r)}")
        if any(not 0 <= x <= self.ctx.p - 1 for x in r):
            raise ContractError(f"entries of r must lie in [0, {self.ctx.p - 1}]")
        report = check_padic_hypotheses(self.spec, self.ctx)
        if not report.integer_coefficients:
            raise HypothesisViolation("Q and P_t must have integer coefficients")
        if not report.twist_orders_ok:
            raise UnsupportedEmbeddingError(
                f"every twist must have order dividing {self.ctx.p - 1} and differ from 1"
            )
        if report.residue_failures:
            t, j = report.residue_failures[0]
            raise HypothesisViolation(
                f"p = {self.ctx.p} divides P_{t + 1}{j}", residue=(t, j)
            )

    @property
    def p(self) -> int:
        return self.ctx.p


# -- finite-sum route over Q -----------------------------------------------------


def _difference_transform(arr):
    """Apply v -> sum_j (-1)^j C(l, j) v_j along every axis of ``arr``."""
    for axis in range(arr.ndim):
        L = arr.shape[axis]
        M = np.empty((L, L), dtype=object)
        for ell in range(L):
            for j in range(L):
                M[ell, j] = (-1) ** j * binomial(ell, j)
        arr = np.moveaxis(np.tensordot(M, arr, axes=([1], [axis])), 0, axis)
    return arr


def _degree_bound(spec: ZetaSpec, k, n) -> int:
    d = spec.Q.degree_in_var(n)
    for P, kt in zip(spec.Ps, k):
        if kt and not P.is_zero():
            d += kt * P.degree_in_var(n)
    return d


def theorem4_value(spec: ZetaSpec, k) -> CyclotomicNumber:
    """Z(-k) = mu^1/(1-mu)^1 sum_l (1-mu)^(-l) sum_j (-1)^|j| C(l,j) Q(-j) prod P_t(-j)^k_t.

    The l-sum stops at l_n = deg_{X_n}(Q prod P_t^k_t); beyond that every
    inner sum is an N-fold finite difference of too high an order and vanishes.
    Works over Q (no integrality needed).
    """
    k = _check_k(k, spec.T)
    order = spec.order
    mus = spec.normalized_mus()
    if spec.Q.is_zero():
        return CyclotomicNumber.rational(0, order)
    N = spec.nvars
    D = [_degree_bound(spec, k, n) for n in range(N)]
    vals = np.empty(tuple(d + 1 for d in D), dtype=object)
    for j in itertools.product(*(range(d + 1) for d in D)):
        x = tuple(-a for a in j)
        v = spec.Q.evaluate(x)
        for P, kt in zip(spec.Ps, k):
            if kt:
                v *= P.evaluate(x) ** kt
        vals[j] = v
    inner = _difference_transform(vals)

    weights = []
    for mu, d in zip(mus, D):
        c = 1 / (1 - mu)
        pw = [CyclotomicNumber.rational(1, order)]
        for _ in range(d):
            pw.append(pw[-1] * c)
        weights.append(pw)
    total = CyclotomicNumber.rational(0, order)
    for ell in itertools.product(*(range(d + 1) for d in D)):
        v = inner[ell]
        if v:
            w = weights[0][ell[0]]
            for n in range(1, N):
                w = w * weights[n][ell[n]]
            total = total + w * v
    prefix = CyclotomicNumber.rational(1, order)
    for mu in mus:
        prefix = prefix * (mu / (1 - mu))
    return prefix * total


# -- p-adic side ---------------------------------------------------------------


def _exponent(s, p, M):
    """Return (-s mod p^(M-1), digits of the result that stay valid)."""
    if isinstance(s, PAdicScalar):
        if s.p != p:
            raise ContractError("prime mismatch in exponent")
        if s.valuation < 0 and not s.is_zero():
            raise ContractError("exponents must be p-adic integers")
        known = s.abs_precision
        e = -s.residue(min(known, M - 1)) if known else 0
        return e % p ** max(M - 1, 0), min(M, known + 1)
    return (-int(s)) % p ** max(M - 1, 0), M


def angle_power(u: int, e: int, p: int, M: int) -> int:
    """u^e mod p^M for u = 1 mod p and e a p-adic integer given mod p^(M-1)."""
    mod = p**M
    return pow(u, e % p ** max(M - 1, 0), mod)


def angle_power_series(u: int, e: int, p: int, M: int) -> int:
    """u^e mod p^M via sum_i C(e, i) (u - 1)^i; valid for u = 1 mod p."""
    mod = p**M
    h = (u - 1) % mod
    total = 0
    coeff = Fraction(1)
    power = 1
    for i in range(M):
        total += int(coeff) * power
        coeff = coeff * (e - i) / (i + 1)
        power = power * h % mod
    return total % mod


class _GTable:
    """Q(-j) prod_t w(P_t(-j))^r_t <P_t(-j)>^(-s_t) mod p^M, cached by j."""

    def __init__(self, pspec: PAdicSpec, s):
        spec = pspec.spec
        p, M = pspec.p, pspec.ctx.precision
        s = tuple(s)
        if len(s) != spec.T:
            raise ContractError(f"s needs {spec.T} entries, got {len(s)}")
        exps = [_exponent(x, p, M) for x in s]
        self.precision = min([M] + [d for _, d in exps])
        self.exps = [e for e, _ in exps]
        self.pspec = pspec
        self.mod = p**M
        self._cache = {}

    def __call__(self, j):
        got = self._cache.get(j)
        if got is not None:
            return got
        pspec = self.pspec
        spec = pspec.spec
        p, M = pspec.p, pspec.ctx.precision
        x = tuple(-a for a in j)
        val = _int_eval(spec.Q, x) % self.mod
        for P, r, e in zip(spec.Ps, pspec.r, self.exps):
            if not val:
                break
            y = _int_eval(P, x)
            if y % p == 0:
                raise HypothesisViolation(f"p = {p} divides P({x})", residue=x)
            w = teichmuller(y, p, M).unit
            bracket = y * pow(w, -1, self.mod) % self.mod
            val = val * pow(w, r, self.mod) % self.mod
            val = val * angle_power(bracket, e, p, M) % self.mod
        self._cache[j] = val
        return val


def _twist_factors(pspec: PAdicSpec):
    """Residues of 1/(1 - mu_n) and of the prefactor prod mu_n/(1 - mu_n)."""
    M = pspec.ctx.precision
    inv = []
    prefix = PAdicScalar.from_rational(1, pspec.p, M)
    for mu in pspec.spec.mus:
        one_minus = pspec.ctx.embed(1 - mu)
        inv.append(one_minus.inverse().residue(M))
        prefix = prefix * pspec.ctx.embed(mu) * one_minus.inverse()
    return inv, prefix.residue(M)


def z_ell_r(pspec: PAdicSpec, ell, s) -> PAdicScalar:
    """Z_l^r(s) at the context precision."""
    ell = tuple(int(x) for x in ell)
    if len(ell) != pspec.spec.nvars or any(x < 0 for x in ell):
        raise ContractError(f"l must be a multi-index of length {pspec.spec.nvars}")
    g = _GTable(pspec, s)
    mod = g.mod
    total = 0
    for j in itertools.product(*(range(x + 1) for x in ell)):
        sign = -1 if sum(j) % 2 else 1
        total += sign * multi_binomial(ell, j) * g(j)
    inv, _ = _twist_factors(pspec)
    for c, e in zip(inv, ell):
        total = total * pow(c, e, mod)
    return PAdicScalar.from_residue(total % mod, pspec.p, g.precision)


def truncation_range(p: int, N: int, m: int):
    """All l in N^N with sum_n v_p(l_n!) < m; the rest contribute O(p^m)."""
    per_axis = []
    for _ in range(N):
        axis = []
        ell = 0
        while factorial_valuation(ell, p) < m:
            axis.append(ell)
            ell += 1
        per_axis.append(axis)
    for ell in itertools.product(*per_axis):
        if sum(factorial_valuation(x, p) for x in ell) < m:
            yield ell


def zp_r_eval(pspec: PAdicSpec, s, m: int) -> PAdicScalar:
    """Z_p^r(s) modulo p^m (or the lower precision that ``s`` supports)."""
    M = pspec.ctx.precision
    if m > M:
        raise ContractError(f"target precision {m} exceeds context precision {M}")
    if m < 1:
        raise ContractError("target precision must be positive")
    N = pspec.spec.nvars
    p = pspec.p
    g = _GTable(pspec, s)
    mod = g.mod
    ells = list(truncation_range(p, N, m))
    box = tuple(max(e[n] for e in ells) + 1 for n in range(N))
    grid = np.empty(box, dtype=object)
    for j in itertools.product(*(range(b) for b in box)):
        grid[j] = g(j)
    inner = _difference_transform(grid)
    inv, prefix = _twist_factors(pspec)
    powers = [[pow(c, e, mod) for e in range(b)] for c, b in zip(inv, box)]
    total = 0
    for ell in ells:
        term = int(inner[ell]) % mod
        for n, e in enumerate(ell):
            term = term * powers[n][e] % mod
        total += term
    total = total * prefix % mod
    return PAdicScalar.from_residue(total, p, min(m, g.precision))
