"""Acceptance criteria, one test each; every test prints a PASS/FAIL line."""

import math
import random
import time

import mpmath
import pytest

from _random_specs import random_instance, random_poly, rng
from twistzeta import (
    PAdicContext,
    PAdicSpec,
    Polynomial,
    ZetaSpec,
    check_hypotheses,
    padic_embed_cyclo,
    reduce_tail,
    residue_demo,
    stirling2,
    stirling2_explicit,
    taylor_zeta_oracle,
    theorem4_value,
    truncated_z_sum,
    verify_exchange,
    z_value_at_negative,
    zeta,
    zeta_mu_neg,
    zp_r_eval,
)

from test_combinatorics import bell_triangle
from test_oracle import eta_cvz


@pytest.fixture
def verdict(capsys):
    def emit(label, ok, detail=""):
        with capsys.disabled():
            print(f"\n[{'PASS' if ok else 'FAIL'}] {label}{': ' + detail if detail else ''}")
        assert ok, f"{label}: {detail}"

    return emit


def test_c1_closed_form_vs_series(verdict):
    start = time.perf_counter()
    bad = []
    for n in (2, 3, 4, 6, 8):
        mu = zeta(n)
        for k in range(13):
            if zeta_mu_neg(mu, k) != taylor_zeta_oracle(mu, k):
                bad.append((n, k))
    elapsed = time.perf_counter() - start
    verdict("1 closed form == series oracle (65 cases, exact)",
            not bad and elapsed < 5, f"mismatches={bad}, {elapsed:.2f}s (< 5s)")


def test_c2_expansion_vs_finite_sum(verdict):
    start = time.perf_counter()
    r = rng(20240502)
    bad = 0
    count = 150
    for _ in range(count):
        Q, Ps, mus, k = random_instance(r, max_N=3, max_T=2, deg=2, max_k=2)
        spec = ZetaSpec(Q, Ps, mus)
        if z_value_at_negative(spec, k) != theorem4_value(spec, k):
            bad += 1
    elapsed = time.perf_counter() - start
    verdict(f"2 expansion route == finite-sum route ({count} random instances, exact)",
            bad == 0 and elapsed < 60, f"mismatches={bad}, {elapsed:.2f}s (< 60s)")


def test_c3_exchange_and_reduction(verdict):
    start = time.perf_counter()
    r = rng(77)
    bad_ex = bad_red = 0
    count = 120
    for _ in range(count):
        Q, Ps, mus, k = random_instance(r)
        T2 = r.randint(1, 2)
        Qs = [random_poly(r, Q.nvars, 2) for _ in range(T2)]
        ls = [r.randint(0, 2) for _ in range(T2)]
        if not verify_exchange(Q, Ps, k, Qs, ls, mus).equal:
            bad_ex += 1
    for _ in range(count):
        Q, Ps, mus, k = random_instance(r)
        Ps = list(Ps) + [random_poly(r, Q.nvars, 2)]
        k = tuple(k) + (r.randint(0, 2),)
        spec = ZetaSpec(Q, Ps, mus)
        T0 = r.randint(1, len(Ps) - 1)
        s2, k2 = reduce_tail(spec, k, T0)
        if z_value_at_negative(s2, k2) != z_value_at_negative(spec, k):
            bad_red += 1
    elapsed = time.perf_counter() - start
    verdict(f"3 exchange ({count}) and reduce_tail ({count}) identities",
            bad_ex == 0 and bad_red == 0 and elapsed < 60,
            f"exchange mismatches={bad_ex}, reduction mismatches={bad_red}, {elapsed:.2f}s (< 60s)")


def _setup_5adic(r):
    (x,) = Polynomial.variables(1)
    spec = ZetaSpec(Polynomial.one(1), [x**2 + x + 1], [-1])
    return spec, PAdicSpec(spec, PAdicContext(5, 12), [r])


def test_c4_padic_interpolation(verdict):
    start = time.perf_counter()
    bad = []
    checked = 0
    for r in range(4):
        spec, ps = _setup_5adic(r)
        for k in range(r, 21, 4):
            want = padic_embed_cyclo(z_value_at_negative(spec, [k]), 5, 12)
            got = zp_r_eval(ps, [-k], 10)
            checked += 1
            if not got.agrees_with(want, 10):
                bad.append((r, k))
    elapsed = time.perf_counter() - start
    verdict(f"4 interpolation mod 5^10 ({checked} pairs (r, k))",
            not bad and elapsed < 30, f"mismatches={bad}, {elapsed:.2f}s (< 30s)")


def test_c5_padic_continuity(verdict):
    r_gen = random.Random(5)
    bad = []
    checked = 0
    for m in range(0, 5):
        for _ in range(4):
            k = r_gen.randint(0, 40)
            r = k % 4
            k2 = k + 4 * 5**m * r_gen.randint(1, 3)
            _, ps = _setup_5adic(r)
            a = zp_r_eval(ps, [-k], 10)
            b = zp_r_eval(ps, [-k2], 10)
            diff = a - b
            checked += 1
            if not (diff.is_zero() or diff.valuation >= m):
                bad.append((k, k2, m, diff.valuation))
    verdict(f"5 continuity |Z(-k) - Z(-k')|_5 <= 5^-m ({checked} pairs, m <= 4)",
            not bad, f"violations={bad}")


def test_c6_residue(verdict):
    start = time.perf_counter()
    demo = residue_demo()
    elapsed = time.perf_counter() - start
    with mpmath.workdps(30):
        independent = float(mpmath.pi / mpmath.sinh(mpmath.pi))
    err = abs(demo.computed - independent)
    verdict("6 residue pi/sinh(pi) ~ 0.2720290549821",
            err <= 1e-10 and elapsed < 5,
            f"computed={demo.computed:.13f}, abs_err={err:.2e} (<= 1e-10), {elapsed:.2f}s (< 5s)")


def test_c7_hdf(verdict):
    X, Y = Polynomial.variables(2)
    P = (X - Y) ** 2 * X + X
    rep = check_hypotheses(ZetaSpec(Polynomial.one(2), [P], [-1, -1]))
    diag = [f for f in rep.polynomials[0].hdf_failures
            if f.variable == 1 and f.alpha == (0, 1) and f.direction == (1, 1)
            and f.base[0] - f.base[1] == 1]
    refuted = bool(diag) and all(f.sample_ratio == -1.0 and abs(f.decay_exponent) < 0.1
                                 for f in diag)
    linear = check_hypotheses(ZetaSpec(Polynomial.one(2), [X + Y], [-1, -1]))
    r = rng(3)
    positive_ok = 0
    trials = 10
    for _ in range(trials):
        N = r.randint(1, 3)
        Q = random_poly(r, N, 2, integer=True)
        Q = Polynomial(N, {e: abs(c) for e, c in Q.terms.items()})
        for n in range(N):
            Q = Q + Polynomial.variable(n, N)
        if check_hypotheses(ZetaSpec(Polynomial.one(N), [Q], [-1] * N)).ok:
            positive_ok += 1
    ok = refuted and linear.ok and positive_ok == trials
    verdict("7 HDF refuted for (X-Y)^2 X + X along x = y+1; consistent for X1+X2 and positive polys",
            ok, f"diag failures={len(diag)}, X1+X2 ok={linear.ok}, positive {positive_ok}/{trials}")


def test_c8_stirling(verdict):
    bad = [(k, l) for k in range(31) for l in range(k + 1)
           if stirling2(k, l) != stirling2_explicit(k, l)]
    bells = bell_triangle(15)
    bad_bell = [k for k in range(16) if sum(stirling2(k, l) for l in range(k + 1)) != bells[k]]
    verdict("8 Stirling recurrence == explicit (k <= 30); row sums == Bell (k <= 15)",
            not bad and not bad_bell, f"triangle mismatches={bad}, Bell mismatches={bad_bell}")


def test_c9_convergence_region(verdict):
    (x,) = Polynomial.variables(1)
    res = truncated_z_sum(ZetaSpec(Polynomial.one(1), [x], [-1]), [2], 10**6)
    target = -math.pi**2 / 12
    err = abs(res.value - target)
    verdict("9 truncated sum at sigma = 2 vs -pi^2/12",
            err <= 1e-6 and abs(target + eta_cvz(2)) < 1e-12, f"abs_err={err:.2e} (<= 1e-6)")
