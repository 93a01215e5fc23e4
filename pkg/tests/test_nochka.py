from __future__ import annotations

import random
from fractions import Fraction
from itertools import combinations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from derivsmt.lp import linprog_max
from derivsmt.nochka import (
    WeightAssignment,
    compute_weights,
    is_subgeneral,
    minimal_subgeneral_index,
    product_inequality_holds,
    rank_of,
    select_indices,
    verify_weights,
)
from derivsmt.problem import random_family

from designs import forms_family

P1_FIVE = [[1, 0], [0, 1], [1, -1], [1, 1], [1, -2]]


def test_rank_examples():
    fam = forms_family([[1, 0, 0], [0, 1, 0], [1, 1, 0], [0, 0, 1]], 4)
    assert rank_of(fam, [0]) == 1
    assert rank_of(fam, [0, 1]) == 2
    assert rank_of(fam, [0, 1, 2]) == 2


def test_proportional_members_rejected():
    with pytest.raises(ValueError, match="proportional"):
        forms_family([[1, 2], [2, 4], [0, 1]], 2)


def test_subgeneral_examples():
    assert is_subgeneral(forms_family([[1, 0], [0, 1], [1, 1], [1, 2]], 3), 2)
    concurrent = forms_family([[1, 0, 0], [0, 1, 0], [1, 1, 0], [0, 0, 1]], 4)
    assert not is_subgeneral(concurrent, 2)
    assert is_subgeneral(concurrent, 3)
    general = forms_family([[1, 0, 0], [0, 1, 0], [0, 0, 1], [1, 1, 1]], 3)
    assert is_subgeneral(general, 2)
    assert minimal_subgeneral_index(concurrent) == 3


def test_general_position_weights_are_one():
    fam = forms_family([[1, 0, 0], [0, 1, 0], [0, 0, 1], [1, 1, 1], [1, 2, 3]], 3)
    w = compute_weights(fam, 2, 2)
    assert w.weights == (1,) * 5 and w.constant == 1
    assert verify_weights(fam, 2, 2, w).ok


def test_forced_half_weights():
    fam = forms_family(P1_FIVE, 3)
    w = compute_weights(fam, 1, 2)
    assert w.weights == (Fraction(1, 2),) * 5 and w.constant == Fraction(1, 2)
    assert verify_weights(fam, 1, 2, w).ok


def test_tight_sum_when_coefficient_vanishes():
    # q = 2N - n + 1 makes the coefficient of the constant zero
    fam = forms_family([[1, 0, 0], [0, 1, 0], [1, 1, 0], [0, 0, 1], [1, 2, 3]], 4)
    w = compute_weights(fam, 2, 3)
    assert sum(w.weights) == 3


def test_all_one_weights_fail_when_subgeneral():
    fam = forms_family(P1_FIVE, 3)
    rep = verify_weights(fam, 1, 2, WeightAssignment((Fraction(1),) * 5, Fraction(1)))
    assert not rep.cond_iii and not rep.ok


def test_parameter_checks():
    fam = forms_family(P1_FIVE[:3], 3)
    with pytest.raises(ValueError, match="q >= 2N-n\\+1"):
        compute_weights(fam, 1, 2)


def test_select_indices_example():
    fam = forms_family(P1_FIVE, 3)
    w = compute_weights(fam, 1, 2)
    chosen = select_indices(fam, w, (0, 1, 2), (4, 9, 1, 1, 1))
    assert chosen == (0, 1)
    assert product_inequality_holds(w.weights, (0, 1, 2), chosen, (4, 9, 1, 1, 1))


def test_select_indices_trivial_cases():
    fam = forms_family([[1, 0, 0], [0, 1, 0], [0, 0, 1], [1, 1, 1]], 3)
    w = compute_weights(fam, 2, 2)
    assert select_indices(fam, w, (0, 2), (1, 1, 1, 1)) == (0, 2)
    assert select_indices(fam, w, (1, 3), (3, 5, 2, 7)) == (1, 3)


def test_product_inequality_exact():
    # 2^(1/2) * 8^(1/2) = 4, compared exactly with 8, 16 and 4
    w = (Fraction(1, 2), Fraction(1, 2))
    assert product_inequality_holds(w, (0, 1), (1,), (2, 8))
    assert product_inequality_holds(w, (0, 1), (0, 1), (2, 8))
    assert not product_inequality_holds((Fraction(1), Fraction(1)), (0, 1), (1,), (2, 8))
    assert product_inequality_holds((Fraction(1, 2), Fraction(1, 2)), (0, 1), (0,), (4, 4))


def _exhaustive_best(fam, R, a):
    r = fam.rank_of(R)
    best = None
    for S in combinations(R, r):
        if fam.rank_of(S) == r:
            prod = 1
            for j in S:
                prod *= Fraction(a[j])
            best = prod if best is None or prod > best else best
    return best


@settings(max_examples=15, deadline=None)
@given(st.integers(0, 10_000))
def test_weights_valid_on_random_subgeneral_families(seed):
    rng = random.Random(seed)
    n, k, q, N = rng.choice([(1, 0, 5, 3), (2, 0, 6, 4), (2, 0, 5, 3), (2, 1, 6, 4), (1, 0, 7, 4)])
    fam = random_family(rng, n, k, q, N)
    w = compute_weights(fam)
    rep = verify_weights(fam, None, None, w)
    assert rep.ok, rep
    lo = Fraction(fam.dim, 2 * fam.subgeneral_N - fam.dim)
    assert w.constant >= lo


@settings(max_examples=10, deadline=None)
@given(st.integers(0, 10_000))
def test_select_indices_is_max_product_basis(seed):
    rng = random.Random(seed)
    fam = random_family(rng, 2, 0, 6, 4)
    w = compute_weights(fam)
    N = fam.subgeneral_N - 1
    a = [Fraction(rng.randint(4, 40), 4) for _ in range(fam.q)]
    for size in range(1, N + 2):
        for R in combinations(range(fam.q), size):
            chosen = select_indices(fam, w, R, a)
            assert fam.rank_of(chosen) == len(chosen) == fam.rank_of(R)
            prod = 1
            for j in chosen:
                prod *= a[j]
            assert prod == _exhaustive_best(fam, R, a)


# -- exact simplex -----------------------------------------------------------


def test_lp_textbook():
    # max 3x + 5y, x <= 4, 2y <= 12, 3x + 2y <= 18 -> (2, 6), 36
    res = linprog_max([3, 5], [[1, 0], [0, 2], [3, 2]], [4, 12, 18])
    assert res.status == "optimal" and res.x == (2, 6) and res.value == 36


def test_lp_infeasible_and_unbounded():
    assert linprog_max([1], [[1]], [-1]).status == "infeasible"
    assert linprog_max([1, 0], [[-1, 1]], [0]).status == "unbounded"
    res = linprog_max([1, 1], A_eq=[[1, 2]], b_eq=[Fraction(3, 2)])
    assert res.status == "optimal" and res.value == Fraction(3, 2)


@settings(max_examples=40, deadline=None)
@given(
    st.lists(st.integers(-3, 3), min_size=2, max_size=2),
    st.lists(st.lists(st.integers(-2, 3), min_size=2, max_size=2), min_size=1, max_size=4),
    st.lists(st.integers(0, 6), min_size=4, max_size=4),
)
def test_lp_matches_vertex_enumeration(c, A, b):
    # bounded by the box x, y <= 6; enumerate every vertex as an oracle
    A = A + [[1, 0], [0, 1]]
    b = b[: len(A) - 2] + [6, 6]
    res = linprog_max(c, A, b)
    rows = A + [[-1, 0], [0, -1]]
    rhs = b + [0, 0]
    best = None
    for i, j in combinations(range(len(rows)), 2):
        (p, q), (r, s) = rows[i], rows[j]
        d = p * s - q * r
        if d == 0:
            continue
        x = Fraction(rhs[i] * s - q * rhs[j], d)
        y = Fraction(p * rhs[j] - rhs[i] * r, d)
        if all(u * x + v * y <= w for (u, v), w in zip(rows, rhs)):
            val = c[0] * x + c[1] * y
            best = val if best is None or val > best else best
    assert res.status == "optimal"
    assert res.value == best
