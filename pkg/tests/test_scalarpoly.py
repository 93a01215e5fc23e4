from __future__ import annotations

import cmath
from fractions import Fraction

import pytest
import sympy as sp
from hypothesis import given, settings
from hypothesis import strategies as st

from derivsmt.scalarpoly import (
    I,
    GaussianRational,
    RatPoly,
    coprime_base,
    multiplicity_in,
    ord_at,
    poly_gcd,
    roots_with_multiplicity,
    squarefree_decompose,
    wronskian,
)

z = RatPoly.z()
zs = sp.Symbol("z")

small = st.fractions(min_value=-5, max_value=5, max_denominator=6)
gauss = st.builds(GaussianRational, small, small)
polys = st.lists(st.integers(-4, 4), min_size=1, max_size=6).map(RatPoly)


def to_sympy(p: RatPoly):
    return sp.expand(sum((sp.Rational(c.re) + sp.I * sp.Rational(c.im)) * zs**i for i, c in enumerate(p.coeffs)))


def from_sympy(e) -> RatPoly:
    cs = sp.Poly(sp.expand(e), zs).all_coeffs()[::-1]
    return RatPoly([GaussianRational(Fraction(str(sp.re(c))), Fraction(str(sp.im(c)))) for c in cs])


# -- Gaussian rationals ------------------------------------------------------


@given(gauss, gauss, gauss)
def test_field_axioms(a, b, c):
    assert (a + b) * c == a * c + b * c
    assert a * b == b * a
    if b:
        assert (a / b) * b == a


def test_gaussian_basics():
    assert I * I == -1
    assert GaussianRational(Fraction(1, 2), 3).conjugate() == GaussianRational(Fraction(1, 2), -3)
    assert GaussianRational(3, 4).norm() == 25
    assert GaussianRational(2) == 2 and hash(GaussianRational(Fraction(1, 2))) == hash(Fraction(1, 2))
    with pytest.raises(ZeroDivisionError):
        GaussianRational(1) / GaussianRational(0)


@given(gauss)
def test_gaussian_json_roundtrip(a):
    assert GaussianRational.from_json(a.to_json()) == a


# -- polynomials -------------------------------------------------------------


def test_gcd_examples():
    assert poly_gcd(z**2 - 1, z - 1) == z - 1
    assert poly_gcd(2 * z, RatPoly.const(3)) == RatPoly.const(1)
    p = (z - I) ** 2 * (z + 1)
    q = (z - I) * (z + 2)
    assert poly_gcd(p, q) == z - I


@settings(max_examples=60)
@given(polys, polys)
def test_gcd_matches_sympy(p, q):
    if p.is_zero() and q.is_zero():
        return
    expected = sp.Poly(sp.gcd(to_sympy(p), to_sympy(q)), zs).monic()
    assert poly_gcd(p, q) == from_sympy(expected.as_expr())


@given(polys, polys)
def test_divmod_identity(p, q):
    if q.is_zero():
        return
    quo, rem = divmod(p, q)
    assert quo * q + rem == p
    assert rem.degree < q.degree


def test_squarefree_examples():
    assert squarefree_decompose(z**3) == [(z, 3)]
    assert squarefree_decompose((z - 1) ** 2 * (z + 1)) == [(z + 1, 1), (z - 1, 2)]
    assert squarefree_decompose(RatPoly.const(5)) == []


@settings(max_examples=40)
@given(st.lists(st.integers(-3, 3), min_size=1, max_size=3), st.lists(st.integers(1, 3), min_size=1, max_size=3))
def test_squarefree_reassembles(roots, mults):
    p = RatPoly.const(2)
    for a, m in zip(roots, mults):
        p = p * (z - a) ** m
    prod = RatPoly.const(p.lead)
    for fac, m in squarefree_decompose(p):
        prod = prod * fac**m
    assert prod == p


def test_ord_examples():
    assert ord_at(z**2 * (z + 1), 0) == 2
    assert ord_at(z**2 + 1, 1) == 0
    assert ord_at((z - I) ** 3 * (z + I), I) == 3


def test_roots_examples():
    d = roots_with_multiplicity(z**2 * (z - 2)).as_dict()
    assert d == {0j: 2, 2 + 0j: 1}
    d = roots_with_multiplicity(z**2 + 1).as_dict()
    assert d == {1j: 1, -1j: 1}
    pts = roots_with_multiplicity((z**2 - 2) ** 3).points
    assert sorted(p.multiplicity for p in pts) == [3, 3]
    assert all(abs(p.location**2 - 2) < 1e-10 for p in pts)


@settings(max_examples=30, deadline=None)
@given(polys)
def test_roots_match_sympy(p):
    if p.degree < 1:
        return
    ours = roots_with_multiplicity(p)
    assert ours.degree == p.degree
    theirs = sp.roots(sp.Poly(to_sympy(p), zs), multiple=False)
    if sum(theirs.values()) != p.degree:
        return  # sympy could not solve in radicals
    for r, m in theirs.items():
        rc = complex(sp.N(r, 30))
        near = [pt for pt in ours.points if abs(pt.location - rc) < 1e-7]
        assert len(near) == 1 and near[0].multiplicity == m


def test_coprime_base_orders():
    a = (z - 1) ** 2 * (z**2 + 2)
    b = (z - 1) * (z**2 + 2) ** 3 * z
    base = coprime_base([a, b])
    for x in base:
        for y in base:
            if x is not y:
                assert poly_gcd(x, y) == RatPoly.const(1)
    rebuilt = RatPoly.const(a.lead)
    for f in base:
        rebuilt = rebuilt * f ** multiplicity_in(a, f)
    assert rebuilt == a


def test_wronskian_examples():
    assert wronskian([RatPoly.const(1), z, z**2]) == RatPoly.const(2)
    p = z**3 - z
    assert wronskian([p, p]).is_zero()
    assert wronskian([RatPoly.const(1), z**2]) == 2 * z


@settings(max_examples=25, deadline=None)
@given(st.lists(polys, min_size=2, max_size=3))
def test_wronskian_matches_sympy(ps):
    expr = sp.wronskian([to_sympy(p) for p in ps], zs)
    assert wronskian(ps) == from_sympy(expr)


def test_evaluate_numpy_agrees():
    import numpy as np

    p = (z - I) * (z + 2) ** 2
    pts = np.array([0.3 + 0.1j, -1.0, 2j])
    for x, v in zip(pts, p.evaluate(pts)):
        assert cmath.isclose(v, (x - 1j) * (x + 2) ** 2, rel_tol=1e-12)
