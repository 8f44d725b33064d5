import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from quadcong.conic import TernaryForm, count_solutions, enumerate_all
from quadcong.corpus import FORM_CORPUS
from quadcong.counting import (
    CountConfig,
    GaussianWeight,
    box_scale,
    c_p,
    exact_count_mod_p,
    main_term,
    poisson_gap,
    run_asymptotic_experiment,
    smooth_count_classes,
    smooth_count_naive,
    weight,
    weight_hat,
)
from quadcong.errors import BudgetExceeded, NotAdmissible
from quadcong.modarith import PrimePowerModulus
from quadcong.oracles import projective_count_mod_p

SPHERE = TernaryForm(1, 0, 1, 0, 0, 1)


def test_weight_examples():
    assert weight(0) == 1 and weight_hat(0) == 1
    lhs = math.fsum(weight(k) for k in range(-8, 9))
    rhs = math.fsum(weight_hat(k) for k in range(-8, 9))
    assert abs(lhs - rhs) < 1e-12


@given(st.floats(-0.5, 0.5))
def test_poisson_self_check(u):
    assert poisson_gap(u, K=8) < 1e-10


def test_c_p_examples():
    assert c_p(SPHERE, 5) == Fraction(16, 25)
    assert c_p(SPHERE, 3) == Fraction(8, 9)
    assert c_p(TernaryForm(1, 0, -1, 0, 0, 1), 7) == Fraction(36, 49)
    with pytest.raises(NotAdmissible):
        c_p(TernaryForm(3, 0, 1, 0, 0, 1), 3)


def test_exact_count_mod_p_examples():
    assert exact_count_mod_p(SPHERE, 5) == 16
    assert exact_count_mod_p(SPHERE, 3) == 8
    assert exact_count_mod_p(SPHERE, 7) == 48


@pytest.mark.parametrize("Q", FORM_CORPUS[:10], ids=str)
def test_exact_count_matches_vectorized_oracle(Q):
    for p in (3, 5, 7, 11, 13):
        if Q.admissible(p):
            assert exact_count_mod_p(Q, p) == projective_count_mod_p(Q, p)


def test_main_term_examples():
    cfg = CountConfig(SPHERE, PrimePowerModulus(5, 3), 100)
    assert main_term(cfg) == pytest.approx(5120, rel=1e-12)
    assert main_term(CountConfig(SPHERE, PrimePowerModulus(5, 3), 200)) == pytest.approx(8 * 5120, rel=1e-12)
    assert main_term(CountConfig(SPHERE, PrimePowerModulus(5, 4), 100)) == pytest.approx(5120 / 5, rel=1e-12)


def test_main_term_translation_invariant():
    m = PrimePowerModulus(3, 4)
    values = {main_term(CountConfig(SPHERE, m, 20, c)) for c in [(0, 0, 0), (7, -3, 11), (100, 1, -5)]}
    assert len(values) == 1


def test_box_scale():
    assert box_scale(243, 0.6) == 27
    assert box_scale(729, 0.5) == 27
    assert box_scale(531441, 0.6) == 2725


def test_truncation_floor_and_tail():
    with pytest.raises(ValueError):
        CountConfig(SPHERE, PrimePowerModulus(3, 2), 5, truncation=5.0)
    cfg = CountConfig(SPHERE, PrimePowerModulus(3, 2), 5)
    assert cfg.tail_bound() <= 3 * math.exp(-36 * math.pi)
    assert GaussianWeight.tail_bound(6.0) < 1e-45


def test_tiny_box_hand_check():
    """q = 9, N = 1, center (0, 0, 1): explicit loop over the 13^3 box."""
    m = PrimePowerModulus(3, 2)
    cfg = CountConfig(SPHERE, m, 1, (0, 0, 1))
    total = 0.0
    for x in range(-6, 7):
        for y in range(-6, 7):
            for z in range(-5, 8):
                if z % 3 and (x * x + y * y + z * z) % 9 == 0:
                    total += math.exp(-math.pi * (x * x + y * y + (z - 1) ** 2))
    assert smooth_count_naive(cfg) == pytest.approx(total, rel=1e-12)
    sols = enumerate_all(SPHERE.dehomogenize(), m)
    assert smooth_count_classes(cfg, sols) == pytest.approx(total, rel=1e-12)


@pytest.mark.parametrize("Q,p,n", [(SPHERE, 3, 3), (FORM_CORPUS[4], 5, 2), (FORM_CORPUS[8], 7, 2)])
def test_period_box_raw_count(Q, p, n):
    """Unit weights on one full period: the count is phi(q) |M|."""
    m = PrimePowerModulus(p, n)
    pts = np.arange(m.q, dtype=np.int64)
    ones = np.ones(m.q)
    windows = [(pts, ones)] * 3
    cfg = CountConfig(Q, m, 1.0)
    sols = enumerate_all(Q.dehomogenize(), m)
    expected = (m.q - m.q // p) * count_solutions(Q.dehomogenize(), m)
    assert smooth_count_naive(cfg, windows) == expected
    assert smooth_count_classes(cfg, sols, windows) == expected


def test_no_coprime_z_gives_zero():
    m = PrimePowerModulus(3, 2)
    cfg = CountConfig(SPHERE, m, 1.0)
    pts = np.array([0, 3, 6], dtype=np.int64)
    windows = list(cfg.windows())
    windows[2] = (pts, np.ones(3))
    sols = enumerate_all(SPHERE.dehomogenize(), m)
    assert smooth_count_naive(cfg, windows) == 0
    assert smooth_count_classes(cfg, sols, windows) == 0


@given(
    st.sampled_from([(Q, p) for Q in FORM_CORPUS[:8] for p in (3, 5) if Q.admissible(p)]),
    st.integers(1, 3),
    st.floats(0.55, 0.9),
    st.tuples(st.integers(-20, 20), st.integers(-20, 20), st.integers(-20, 20)),
)
def test_naive_equals_classes(Qp, n, theta, center):
    Q, p = Qp
    m = PrimePowerModulus(p, n)
    cfg = CountConfig(Q, m, box_scale(m.q, theta), center)
    T_naive = smooth_count_naive(cfg)
    T_classes = smooth_count_classes(cfg, enumerate_all(Q.dehomogenize(), m))
    assert T_naive >= 0
    assert abs(T_naive - T_classes) <= 1e-6 * max(1.0, T_classes)


def test_naive_budget():
    cfg = CountConfig(SPHERE, PrimePowerModulus(3, 5), 27)
    with pytest.raises(BudgetExceeded):
        smooth_count_naive(cfg, budget=1000)


def test_asymptotic_rejects_bad_theta():
    with pytest.raises(ValueError):
        run_asymptotic_experiment(SPHERE, 3, [3], theta=0.5)


def test_asymptotic_budget_rows_are_marked():
    rows = run_asymptotic_experiment(SPHERE, 3, [3, 4], theta=0.6, budget=10)
    assert [r.method for r in rows] == ["skipped:budget", "skipped:budget"]


def test_small_rows_cross_checked():
    rows = run_asymptotic_experiment(SPHERE, 3, [2, 3], theta=0.6)
    assert all(r.method == "classes+naive" for r in rows)


@pytest.mark.parametrize("Q,p,n", [(SPHERE, 5, 5), (TernaryForm(1, 1, 1, 0, 0, 1), 5, 5), (SPHERE, 3, 8)])
def test_theta_one_ratio_near_one(Q, p, n):
    (row,) = run_asymptotic_experiment(Q, p, [n], theta=1.0, naive_budget=0)
    assert abs(row.ratio - 1) < 0.05
