"""Hand-built curves, families and the seeded corpus shared by the tests."""

from __future__ import annotations

from functools import lru_cache
from math import comb

from derivsmt.curves import PolyCurve
from derivsmt.exterior import DecomposableCovector, multi_indices
from derivsmt.nevanlinna import RadialGrid
from derivsmt.nochka import HyperplaneFamily
from derivsmt.problem import DEFAULT_GRID, generate_corpus, parse_problem
from derivsmt.scalarpoly import RatPoly
from derivsmt.smtlab import SmtProblem

Z = RatPoly.z()
ONE = RatPoly.const(1)
GRID = RadialGrid(DEFAULT_GRID)


def curve(*comps) -> PolyCurve:
    return PolyCurve(tuple(c if isinstance(c, RatPoly) else RatPoly.const(c) for c in comps))


def monomial_curve(*exps) -> PolyCurve:
    return curve(*(Z**e for e in exps))


def unit(n: int, i: int) -> list[int]:
    return [int(j == i) for j in range(n + 1)]


def coord_cov(n: int, I) -> DecomposableCovector:
    return DecomposableCovector([unit(n, i) for i in I])


def coord_family(n: int, k: int, N: int | None = None) -> HyperplaneFamily:
    covs = tuple(coord_cov(n, I) for I in multi_indices(n, k))
    return HyperplaneFamily(covs, N or comb(n + 1, k + 1))


def forms_family(forms, N: int) -> HyperplaneFamily:
    """Family of hyperplanes given by single linear forms (k = 0)."""
    return HyperplaneFamily(tuple(DecomposableCovector([f]) for f in forms), N)


def wedge_family(pairs, N: int) -> HyperplaneFamily:
    return HyperplaneFamily(tuple(DecomposableCovector(list(p)) for p in pairs), N)


def _problem(f, k, fam) -> SmtProblem:
    return SmtProblem.create(f, k, fam, GRID)


# two-form covectors on C^3 in general position (any 3 span Λ^2 dual)
GENERIC_P2_WEDGES = [
    ([1, 0, 0], [0, 1, 0]),
    ([1, 0, 0], [0, 0, 1]),
    ([0, 1, 0], [0, 0, 1]),
    ([1, 1, 0], [0, 1, 1]),
    ([1, 2, 0], [0, 1, 3]),
    ([2, 0, 1], [1, 3, 0]),
]


def designed_problems() -> list[tuple[str, SmtProblem, int]]:
    """(name, problem, max contact order) for hand-built instances."""
    out = []

    def add(name, f, k, fam):
        p = _problem(f, k, fam)
        contact = max(max((pt.multiplicity for pt in E.points), default=0) for E in p.divisors)
        out.append((name, p, contact))

    lines4 = [[1, 0, 0], [0, 1, 0], [0, 0, 1], [1, 1, 1]]
    add("conic_four_lines", monomial_curve(0, 1, 2), 0, forms_family(lines4, 3))
    add("cubic_flex_line", monomial_curve(0, 1, 3), 0, forms_family(lines4, 3))
    add("quartic_plucker", monomial_curve(0, 1, 4), 1, wedge_family(GENERIC_P2_WEDGES[:5], 3))
    add(
        "space_quintic",
        monomial_curve(0, 1, 2, 5),
        0,
        forms_family([unit(3, 0), unit(3, 1), unit(3, 2), unit(3, 3), [1, 1, 1, 1], [1, -1, 2, 3]], 4),
    )
    fam6 = coord_family(3, 1)
    extra = DecomposableCovector([[1, 1, 1, 1], [1, 2, 3, 4]])
    add("space_sextic_planes", monomial_curve(0, 1, 2, 6), 1, HyperplaneFamily(fam6.covectors + (extra,), 6))
    add("p1_five_points", monomial_curve(0, 3), 0, forms_family([[1, 0], [0, 1], [1, -1], [1, 1], [1, -2]], 3))
    add(
        "p2_concurrent_triple",
        monomial_curve(0, 1, 3),
        0,
        forms_family([[1, 0, 0], [0, 1, 0], [1, 1, 0], [0, 0, 1], [1, 2, 3]], 4),
    )
    add("doubled_contact", curve(ONE, Z**4, (Z - 1) ** 4), 0, coord_family(2, 0))
    add("conic_plucker", monomial_curve(0, 1, 2), 1, wedge_family(GENERIC_P2_WEDGES[:5], 3))
    add(
        "twisted_cubic_shifted",
        curve(ONE + Z, Z**2, Z**3 - 1),
        0,
        forms_family([unit(2, 0), unit(2, 1), unit(2, 2), [1, 1, 1], [2, -1, 1]], 3),
    )
    add("space_curve_osculating", monomial_curve(0, 1, 3, 4), 2, coord_family(3, 2, 4))
    return out


# (n, k, q, 𝔑, deg) used to build the seeded corpus
CORPUS_CONFIGS = [
    (1, 0, 5, 3, 3),
    (2, 0, 5, 3, 3),
    (2, 0, 6, 4, 4),
    (2, 1, 5, 3, 3),
    (2, 1, 7, 4, 3),
    (3, 0, 6, 4, 4),
    (3, 0, 8, 5, 4),
    (3, 2, 6, 4, 4),
    (3, 1, 7, 6, 3),
    (4, 0, 7, 5, 5),
    (4, 3, 7, 5, 5),
]
PER_CONFIG = 4


@lru_cache(maxsize=None)
def corpus_objects() -> tuple[dict, ...]:
    out = []
    for seed, (n, k, q, N, deg) in enumerate(CORPUS_CONFIGS):
        out.extend(generate_corpus(1000 + seed, count=PER_CONFIG, n=n, k=k, q=q, deg=deg, N=N))
    return tuple(out)


@lru_cache(maxsize=None)
def corpus_problems() -> tuple[SmtProblem, ...]:
    return tuple(parse_problem(o) for o in corpus_objects())
