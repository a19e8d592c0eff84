"""Twisted zeta values at negative integers.

``Z(Q, P_1..P_T, mu, s) = sum_{m >= 1} mu^m Q(m) prod_t P_t(m)^(-s_t)`` with
``mu`` a tuple of roots of unity different from 1.  At ``s = -k`` its value is
a finite linear combination of one-variable values ``zeta_mu(-a)``, which have
a closed form in Stirling numbers.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import NamedTuple

import numpy as np

from .combinatorics import stirling2
from .cyclotomic import CyclotomicNumber, as_cyclotomic, common_order, embed_order
from .errors import ContractError, PoleError
from .poly import Polynomial, expand_product

__all__ = [
    "ZetaSpec",
    "zeta_mu_neg",
    "z_value_at_negative",
    "reduce_tail",
    "verify_exchange",
    "ExchangeResult",
    "SamplingPlan",
    "HypothesisReport",
    "check_hypotheses",
]


def _is_root_of_unity(mu: CyclotomicNumber) -> bool:
    # the roots of unity in Q(zeta_n) all have order dividing lcm(2, n)
    return mu ** math.lcm(2, mu.order) == 1


@dataclass(frozen=True)
class ZetaSpec:
    """A problem instance (Q, P_1..P_T, mu)."""

    Q: Polynomial
    Ps: tuple
    mus: tuple

    def __post_init__(self):
        Ps = tuple(self.Ps)
        mus = tuple(as_cyclotomic(m) for m in self.mus)
        object.__setattr__(self, "Ps", Ps)
        object.__setattr__(self, "mus", mus)
        N = self.Q.nvars
        if N < 1:
            raise ContractError("at least one variable is required")
        if not Ps:
            raise ContractError("at least one polynomial P_t is required")
        for P in Ps:
            if P.nvars != N:
                raise ContractError(f"P has {P.nvars} variables, Q has {N}")
        if len(mus) != N:
            raise ContractError(f"{len(mus)} twists given for {N} variables")
        for n, mu in enumerate(mus):
            if mu == 1:
                raise PoleError(f"twist mu_{n + 1} = 1; every twist must differ from 1")
            if not _is_root_of_unity(mu):
                raise ContractError(f"twist mu_{n + 1} = {mu} is not a root of unity")

    @property
    def nvars(self) -> int:
        return self.Q.nvars

    @property
    def T(self) -> int:
        return len(self.Ps)

    @property
    def order(self) -> int:
        """Cyclotomic order in which all values of this spec live."""
        return common_order(self.mus)

    def normalized_mus(self):
        n = self.order
        return tuple(embed_order(m, n) for m in self.mus)


@lru_cache(maxsize=4096)
def _zeta_mu_neg_cached(order, coeffs, k):
    mu = CyclotomicNumber(order, coeffs)
    inv = 1 / (mu - 1)
    total = CyclotomicNumber.rational(0, order)
    power = CyclotomicNumber.rational(1, order)
    for ell in range(k + 1):
        s = stirling2(k, ell)
        if s:
            total = total + power * (math.factorial(ell) * s)
        power = power * inv
    return (-1) ** k * mu / (1 - mu) * total


def zeta_mu_neg(mu, k: int) -> CyclotomicNumber:
    """zeta_mu(-k) = (-1)^k mu/(1-mu) sum_l l! S(k,l) / (mu-1)^l."""
    mu = as_cyclotomic(mu)
    if k < 0:
        raise ContractError(f"k must be a natural number, got {k}")
    if mu == 1:
        raise PoleError("zeta_mu(-k) with mu = 1 is the untwisted zeta; not supported")
    return _zeta_mu_neg_cached(mu.order, mu.coeffs, k)


def _check_k(k, T):
    k = tuple(int(x) for x in k)
    if len(k) != T:
        raise ContractError(f"expected {T} exponents, got {len(k)}")
    if any(x < 0 for x in k):
        raise ContractError(f"exponents must be natural numbers, got {k}")
    return k


def z_value_at_negative(spec: ZetaSpec, k) -> CyclotomicNumber:
    """Z(Q, P, mu, -k) = sum_alpha a_alpha prod_n zeta_{mu_n}(-alpha_n),
    where Q prod_t P_t^k_t = sum_alpha a_alpha X^alpha."""
    k = _check_k(k, spec.T)
    order = spec.order
    mus = spec.normalized_mus()
    R = expand_product(spec.Q, spec.Ps, k)
    total = CyclotomicNumber.rational(0, order)
    if R.is_zero():
        return total
    tables = []
    for n, mu in enumerate(mus):
        d = R.degree_in_var(n)
        tables.append([zeta_mu_neg(mu, a) for a in range(d + 1)])
    for alpha, a in R.items():
        term = a
        for n, e in enumerate(alpha):
            term = tables[n][e] * term
        total = total + term
    return total


def reduce_tail(spec: ZetaSpec, k, T0: int):
    """Fold P_{T0+1}^k.. into Q; the value at -k is unchanged."""
    k = _check_k(k, spec.T)
    if not 1 <= T0 <= spec.T - 1:
        raise ContractError(f"T0 must lie in [1, {spec.T - 1}], got {T0}")
    Q = expand_product(spec.Q, spec.Ps[T0:], k[T0:])
    return ZetaSpec(Q, spec.Ps[:T0], spec.mus), k[:T0]


class ExchangeResult(NamedTuple):
    lhs: CyclotomicNumber
    rhs: CyclotomicNumber
    equal: bool


def verify_exchange(Q, Ps, ks, Qs, ls, mus) -> ExchangeResult:
    """Evaluate both sides of
    Z(Q prod Qs^ls, Ps, mu, -ks) == Z(Q prod Ps^ks, Qs, mu, -ls)."""
    ks = _check_k(ks, len(Ps))
    ls = _check_k(ls, len(Qs))
    lhs = z_value_at_negative(ZetaSpec(expand_product(Q, Qs, ls), Ps, mus), ks)
    rhs = z_value_at_negative(ZetaSpec(expand_product(Q, Ps, ks), Qs, mus), ls)
    return ExchangeResult(lhs, rhs, lhs == rhs)


# -- advisory hypothesis checks ------------------------------------------------


@dataclass(frozen=True)
class SamplingPlan:
    """Where the advisory checker looks.

    Rays are ``base + t * direction`` with ``base`` in ``{1..base_max}^N``,
    ``direction`` a nonzero 0/1 vector and ``t`` in ``ts``.  Decay exponents
    are fitted on the last ``fit_points`` samples of each ray.
    """

    ts: tuple = tuple(2**i for i in range(11))
    base_max: int = 3
    stencil_order: int = 3
    eps_min: float = 0.1
    fit_points: int = 5

    def bases(self, N):
        return itertools.product(range(1, self.base_max + 1), repeat=N)

    def directions(self, N):
        for d in itertools.product((0, 1), repeat=N):
            if any(d):
                yield d


@dataclass
class PositivityResult:
    method: str
    passed: bool
    counterexample: tuple | None = None


@dataclass
class HDFFailure:
    variable: int
    alpha: tuple
    base: tuple
    direction: tuple
    decay_exponent: float
    sample_ratio: float


@dataclass
class PolynomialReport:
    index: int
    positivity: PositivityResult
    hdf_failures: list = field(default_factory=list)
    rays_checked: int = 0

    @property
    def hdf_consistent(self) -> bool:
        return not self.hdf_failures


@dataclass
class HypothesisReport:
    polynomials: list
    growth_passed: bool
    min_growth_exponent: float
    plan: SamplingPlan

    @property
    def ok(self) -> bool:
        return self.growth_passed and all(
            r.positivity.passed and r.hdf_consistent for r in self.polynomials
        )

    def to_json(self) -> dict:
        return {
            "ok": self.ok,
            "growth": {"passed": self.growth_passed,
                       "min_exponent": _json_float(self.min_growth_exponent)},
            "polynomials": [
                {
                    "index": r.index + 1,
                    "positivity": {"method": r.positivity.method,
                                   "passed": r.positivity.passed,
                                   "counterexample": _json_point(r.positivity.counterexample)},
                    "hdf_consistent": r.hdf_consistent,
                    "rays_checked": r.rays_checked,
                    "hdf_failures": [
                        {"variable": f.variable + 1, "alpha": list(f.alpha),
                         "base": list(f.base), "direction": list(f.direction),
                         "decay_exponent": _json_float(f.decay_exponent),
                         "sample_ratio": _json_float(f.sample_ratio)}
                        for f in r.hdf_failures
                    ],
                }
                for r in self.polynomials
            ],
            "advisory": True,
        }


def _json_float(x):
    return None if x is None or math.isinf(x) or math.isnan(x) else float(x)


def _json_point(pt):
    return None if pt is None else [str(c) for c in pt]


def _fit_exponent(xs, values):
    """Least-squares slope of log|values| against log xs; -inf when all vanish."""
    pts = [(math.log(x), math.log(abs(v))) for x, v in zip(xs, values) if v != 0]
    if len(pts) < 2:
        return -math.inf
    lx, ly = zip(*pts)
    slope, _ = np.polyfit(lx, ly, 1)
    return float(slope)


def _ray_points(base, direction, ts):
    return [tuple(b + t * d for b, d in zip(base, direction)) for t in ts]


def _positivity(P: Polynomial, plan: SamplingPlan) -> PositivityResult:
    N = P.nvars
    coeffs = P.terms.values()
    if all(c >= 0 for c in coeffs) and P.evaluate((1,) * N) > 0:
        return PositivityResult("exact-shortcut", True)
    seen = set()
    for base in plan.bases(N):
        for d in plan.directions(N):
            for pt in [base] + _ray_points(base, d, plan.ts):
                if pt in seen:
                    continue
                seen.add(pt)
                if P.evaluate(pt) <= 0:
                    return PositivityResult("sampled", False, pt)
    return PositivityResult("sampled", True)


def _stencil(N, n, order):
    for alpha in itertools.product(range(order + 1), repeat=N):
        if alpha[n] >= 1 and sum(alpha) <= order:
            yield alpha


def check_hypotheses(spec: ZetaSpec, plan: SamplingPlan | None = None) -> HypothesisReport:
    """Sampled evidence for positivity, HDF and growth of prod P_t.

    This can refute the hypotheses along the sampled rays but never proves
    them; evaluation routines do not depend on its outcome.
    """
    plan = plan or SamplingPlan()
    N = spec.nvars
    fit_ts = plan.ts[-plan.fit_points:]
    reports = []
    for idx, P in enumerate(spec.Ps):
        report = PolynomialReport(idx, _positivity(P, plan))
        derivs = {}
        for n in range(N):
            if P.is_zero() or P.degree_in_var(n) < 1:
                continue
            for alpha in _stencil(N, n, plan.stencil_order):
                D = P.partial_derivative(alpha)
                if not D.is_zero():
                    derivs[(n, alpha)] = D
        for base in plan.bases(N):
            for d in plan.directions(N):
                pts = _ray_points(base, d, fit_ts)
                pvals = [P.evaluate(x) for x in pts]
                if any(v == 0 for v in pvals):
                    continue
                for (n, alpha), D in derivs.items():
                    if not d[n]:
                        continue
                    report.rays_checked += 1
                    ratios = [D.evaluate(x) / v for x, v in zip(pts, pvals)]
                    slope = _fit_exponent([x[n] for x in pts], ratios)
                    if -slope < plan.eps_min:
                        report.hdf_failures.append(
                            HDFFailure(n, alpha, base, d, -slope, float(ratios[-1]))
                        )
        reports.append(report)

    min_growth = math.inf
    for base in plan.bases(N):
        for d in plan.directions(N):
            pts = _ray_points(base, d, fit_ts)
            prods = []
            for x in pts:
                v = Fraction(1)
                for P in spec.Ps:
                    v *= P.evaluate(x)
                prods.append(v)
            ts = [max(x) for x in pts]
            min_growth = min(min_growth, _fit_exponent(ts, prods))
    growth_ok = min_growth >= plan.eps_min
    return HypothesisReport(reports, growth_ok, min_growth, plan)
