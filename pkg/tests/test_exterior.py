from __future__ import annotations

from fractions import Fraction
from itertools import combinations, permutations
from math import comb

import pytest
import sympy as sp
from hypothesis import given, settings
from hypothesis import strategies as st

from derivsmt.exterior import (
    DecomposableCovector,
    KVector,
    compound_matrix,
    index_rank,
    multi_indices,
    pair,
    plucker_of_vectors,
    wedge,
)
from derivsmt.matrix import det, inverse, matmul, rank
from derivsmt.scalarpoly import RatPoly

z = RatPoly.z()


def e(n, i):
    return KVector.basis((i,), n)


def test_wedge_examples():
    assert wedge(e(2, 0), e(2, 1)) == KVector.basis((0, 1), 2)
    assert wedge(e(2, 1), e(2, 0)) == -KVector.basis((0, 1), 2)
    v = e(2, 0) + e(2, 1)
    assert wedge(v, v) == KVector(2, 2, {})


def test_plucker_examples():
    assert plucker_of_vectors([[1, 0, 0], [0, 1, 0]]).as_list() == [1, 0, 0]
    assert plucker_of_vectors([[1, 1, 0], [0, 1, 1]]).as_list() == [1, 1, 1]
    assert plucker_of_vectors([[1, 2, 3], [2, 4, 6]]).as_list() == [0, 0, 0]


def test_pair_examples():
    A = DecomposableCovector([[1, 0, 0], [0, 1, 0]])
    assert pair(A, KVector.basis((0, 1), 2)) == 1
    assert pair(A, KVector.basis((0, 2), 2)) == 0
    B = DecomposableCovector([[1, 0, 0], [0, 1, 1]])
    Z = KVector(2, 2, {(0, 1): RatPoly.const(1), (0, 2): 2 * z, (1, 2): z**2})
    assert pair(B, Z) == 1 + 2 * z


def test_dependent_forms_rejected():
    with pytest.raises(ValueError, match="dependent"):
        DecomposableCovector([[1, 2, 3], [2, 4, 6]])


@pytest.mark.parametrize("n", range(0, 6))
def test_index_rank_is_bijection(n):
    for k in range(n + 1):
        ranks = [index_rank(I, n) for I in multi_indices(n, k)]
        assert ranks == list(range(1, comb(n + 1, k + 1) + 1))


vec = st.lists(st.integers(-3, 3), min_size=4, max_size=4)


@given(vec, vec, vec)
def test_wedge_alternating_and_associative(a, b, c):
    u, v, w = (KVector.from_vector(x) for x in (a, b, c))
    assert wedge(u, v) == -wedge(v, u)
    assert wedge(wedge(u, v), w) == wedge(u, wedge(v, w))


@given(st.lists(vec, min_size=2, max_size=3))
def test_plucker_coordinates_are_minors(rows):
    P = plucker_of_vectors(rows)
    k = len(rows) - 1
    for J in multi_indices(3, k):
        assert P[J] == det([[r[j] for j in J] for r in rows])


@settings(max_examples=50)
@given(st.lists(vec, min_size=2, max_size=3), st.lists(vec, min_size=2, max_size=3))
def test_pairing_is_cauchy_binet(forms, vectors):
    m = min(len(forms), len(vectors))
    forms, vectors = forms[:m], vectors[:m]
    if rank(forms) < m:
        return
    A = DecomposableCovector(forms)
    expected = det([[sum(a * b for a, b in zip(f, v)) for v in vectors] for f in forms])
    assert pair(A, plucker_of_vectors(vectors)) == expected


mat = st.integers(2, 4).flatmap(
    lambda s: st.lists(st.lists(st.fractions(-4, 4, max_denominator=3), min_size=s, max_size=s), min_size=s, max_size=s)
)


@settings(max_examples=40, deadline=None)
@given(mat)
def test_sylvester_franke(M):
    s = len(M)
    d = det(M)
    for k in range(s):
        assert det(compound_matrix(M, k)) == d ** comb(s - 1, k)


@settings(max_examples=30, deadline=None)
@given(mat, mat)
def test_compound_is_multiplicative(A, B):
    if len(A) != len(B):
        return
    for k in range(len(A)):
        assert compound_matrix(matmul(A, B), k) == matmul(compound_matrix(A, k), compound_matrix(B, k))


def test_compound_extremes():
    M = [[1, 2, 0], [0, 1, 3], [4, 0, 1]]
    C0 = compound_matrix(M, 0)
    assert all(C0[i][j] == M[i][j] for i in range(3) for j in range(3))
    top = compound_matrix(M, 2)
    assert len(top) == 1 and top[0][0] == det(M)


def test_compound_of_wronskian_matrix():
    f = [RatPoly.const(1), z, z**2]
    M = [[p.derivative(i) for p in f] for i in range(3)]
    assert det(compound_matrix(M, 1)) == RatPoly.const(4)


@settings(max_examples=30)
@given(mat)
def test_det_and_inverse_match_sympy(M):
    S = sp.Matrix([[sp.Rational(x.numerator, x.denominator) for x in row] for row in M])
    assert det(M) == Fraction(str(S.det()))
    assert rank(M) == S.rank()
    if det(M):
        Inv = inverse(M)
        ident = matmul(M, Inv)
        assert all(ident[i][j] == (1 if i == j else 0) for i in range(len(M)) for j in range(len(M)))


def test_det_permutation_sign():
    M = [[1, 2, 3], [4, 5, 6], [7, 8, 10]]
    for perm in permutations(range(3)):
        P = [M[i] for i in perm]
        inv = sum(1 for a, b in combinations(perm, 2) if a > b)
        assert det(P) == (-1) ** inv * det(M)
