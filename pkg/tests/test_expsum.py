import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from quadcong.charsum import e_q
from quadcong.conic import TernaryForm, enumerate_all, find_base_point
from quadcong.corpus import FORM_CORPUS, random_amplitude_cases, random_error_sum_cases
from quadcong.errors import IdentityMismatch, PoleModP
from quadcong.expsum import (
    ErrorSumContext,
    Unsupported,
    cochrane_eval,
    error_sum,
    error_sum_direct,
    error_sum_formula,
    full_sum_direct,
    s_alpha,
    s_alpha_direct,
    stationary_point,
)
from quadcong.modarith import PrimePowerModulus, jacobi, val_p
from quadcong.polyrat import IntPolynomial, RationalAmplitude, ord_p_rat, rat_derivative, rat_eval_mod

X = IntPolynomial.x()
SPHERE = TernaryForm(1, 0, 1, 0, 0, 1)
SEED = 1234


def amp(num, den=1):
    return RationalAmplitude(num, den)


def test_s_alpha_direct_examples():
    m = PrimePowerModulus(3, 2)
    assert abs(s_alpha_direct(amp(X * X), 0, m) - 3) < 1e-12
    assert abs(s_alpha_direct(amp(X * X), 1, m)) < 1e-12
    assert abs(s_alpha_direct(amp(IntPolynomial.const(1), X), 1, PrimePowerModulus(5, 2))) < 1e-12
    with pytest.raises(PoleModP):
        s_alpha_direct(amp(IntPolynomial.const(1), X), 0, PrimePowerModulus(5, 2))


def test_cochrane_examples():
    m = PrimePowerModulus(3, 2)
    assert abs(cochrane_eval(amp(X * X), 0, m) - 3) < 1e-12
    assert cochrane_eval(amp(X * X), 1, m) == 0
    out = cochrane_eval(amp(X * X * X), 0, PrimePowerModulus(5, 3))
    assert isinstance(out, Unsupported) and not out
    value, method = s_alpha(amp(X * X * X), 0, PrimePowerModulus(5, 3))
    assert method == "direct-fallback"
    assert abs(value - s_alpha_direct(amp(X * X * X), 0, PrimePowerModulus(5, 3))) < 1e-9


def test_cochrane_unsupported_when_r_too_large():
    f = amp(9 * X * X)
    out = cochrane_eval(f, 0, PrimePowerModulus(3, 3))
    assert isinstance(out, Unsupported) and "exceeds" in out.reason


@pytest.mark.parametrize("case", random_amplitude_cases(SEED, 60), ids=lambda c: f"p{c.m.p}n{c.m.n}")
def test_cochrane_matches_direct(case):
    value = cochrane_eval(case.f, case.alpha, case.m)
    direct = s_alpha_direct(case.f, case.alpha, case.m)
    if isinstance(value, Unsupported):
        return
    r = ord_p_rat(rat_derivative(case.f), case.m.p)
    assert abs(value - direct) <= 1e-6 * case.m.p ** ((case.m.n + r) / 2)


@pytest.mark.parametrize("case", random_amplitude_cases(SEED + 1, 80), ids=lambda c: f"p{c.m.p}n{c.m.n}")
def test_stationary_lift_insensitive_to_extra_digit(case):
    m = case.m
    try:
        sp = stationary_point(case.f, case.alpha, m)
    except PoleModP:
        return
    if sp is None or sp[1] > m.n - 2:
        return
    star, r, _ = sp
    digits = -(-(m.n - r) // 2)
    longer, _, _ = stationary_point(case.f, case.alpha, m, digits=digits + 1)
    assert longer % m.p**digits == star
    assert abs(e_q(rat_eval_mod(case.f, star, m), m.q) - e_q(rat_eval_mod(case.f, longer, m), m.q)) < 1e-9


@pytest.mark.parametrize("f,pn", [(amp(X * X + 3 * X), (5, 3)), (amp(X + 1, X * X + 1), (3, 4)), (amp(2 * X, X * X + 1), (7, 2))])
def test_alpha_partition_identity(f, pn):
    m = PrimePowerModulus(*pn)
    if any(f.denominator(a) % m.p == 0 for a in range(m.p)):
        raise AssertionError("denominator must be a unit everywhere")
    total = sum(s_alpha_direct(f, a, m) for a in range(m.p))
    assert abs(total - full_sum_direct(f, m)) <= 1e-8 * m.q


def _ctx(Q, p, n, k1, k2, z):
    m = PrimePowerModulus(p, n)
    sols = enumerate_all(Q.dehomogenize(), m)
    return ErrorSumContext.build(Q, sols.base, k1, k2, z), sols


def test_error_sum_trivial_frequency():
    ctx, sols = _ctx(SPHERE, 5, 2, 0, 0, 1)
    assert error_sum_direct(ctx, sols) == len(sols) == 20


@pytest.mark.parametrize("p,n,k1,k2,z", [(5, 2, 1, 0, 1), (5, 3, 5, 5, 2), (7, 3, 2, 3, 1)])
def test_error_sum_examples(p, n, k1, k2, z):
    ctx, sols = _ctx(SPHERE, p, n, k1, k2, z)
    value = error_sum_formula(ctx)
    assert not isinstance(value, Unsupported)
    assert abs(value - error_sum_direct(ctx, sols)) <= 1e-6 * p ** ((n + ctx.r) / 2)


def test_error_sum_nonresidue_D_is_zero():
    seen = 0
    for case in random_error_sum_cases(SEED, 200):
        base = find_base_point(case.Q.dehomogenize(), case.m)
        ctx = ErrorSumContext.build(case.Q, base, case.k1, case.k2, case.z)
        if ctx.r <= case.m.n - 2 and ctx.rprime == 0 and jacobi(ctx.D, case.m.p) == -1:
            assert error_sum_formula(ctx) == 0
            seen += 1
    assert seen > 0


def test_error_sum_identity_trap():
    m = PrimePowerModulus(5, 2)
    base = find_base_point(SPHERE.dehomogenize(), m)
    from dataclasses import replace

    with pytest.raises(IdentityMismatch):
        ErrorSumContext.build(SPHERE, replace(base, A=base.A + 1), 1, 0, 1)


@pytest.mark.parametrize("case", random_error_sum_cases(SEED, 80), ids=lambda c: f"p{c.m.p}n{c.m.n}")
def test_error_sum_formula_matches_direct(case):
    sols = enumerate_all(case.Q.dehomogenize(), case.m)
    ctx = ErrorSumContext.build(case.Q, sols.base, case.k1, case.k2, case.z)
    direct = error_sum_direct(ctx, sols)
    assert abs(direct) <= len(sols) + 1e-9
    value, method = error_sum(ctx, sols)
    assert abs(value - direct) <= 1e-6 * case.m.p ** ((case.m.n + ctx.r) / 2)
    if method == "direct-fallback":
        assert isinstance(error_sum_formula(ctx), Unsupported)


@given(
    st.sampled_from([Q for Q in FORM_CORPUS if Q.admissible(5)]),
    st.integers(1, 4),
    st.integers(0, 624),
    st.integers(0, 624),
    st.integers(1, 4),
)
def test_stratum_amplitude_order_table(Q, n, k1, k2, z):
    """ord_p(f_s') = 2s + r when r' >= s, and s + r + r' otherwise (exponents)."""
    m = PrimePowerModulus(5, n)
    k1, k2 = k1 % m.q, k2 % m.q
    base = find_base_point(Q.dehomogenize(), m)
    ctx = ErrorSumContext.build(Q, base, k1, k2, z)
    if ctx.r >= n:
        return
    a, b = Q.a, Q.b
    rp = val_p((a * base.B - b * base.A) * ctx.l1 + a * base.A * ctx.l2, 5)
    for s in range(n + 1):
        order = ord_p_rat(rat_derivative(ctx.stratum_amplitude(s)), 5)
        assert order == (2 * s + ctx.r if rp >= s else s + ctx.r + rp)


def test_stratum_amplitude_reproduces_points():
    m = PrimePowerModulus(7, 3)
    Q = FORM_CORPUS[8]
    sols = enumerate_all(Q.dehomogenize(), m)
    ctx = ErrorSumContext.build(Q, sols.base, 3, 11, 2)
    for s, t, x, y in list(sols)[::17]:
        assert rat_eval_mod(ctx.stratum_amplitude(s), t, m) == 2 * (3 * x + 11 * y) % m.q


def test_unsupported_degenerate_direction_counted():
    hits = 0
    for case in random_error_sum_cases(SEED + 2, 300):
        base = find_base_point(case.Q.dehomogenize(), case.m)
        ctx = ErrorSumContext.build(case.Q, base, case.k1, case.k2, case.z)
        out = error_sum_formula(ctx)
        if isinstance(out, Unsupported) and "degenerate" in out.reason:
            assert math.isinf(ctx.rprime)
            hits += 1
    assert hits > 0
