"""Polynomial entire curves, their derived curves, and Fujimoto's nice jets."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Sequence

from .exterior import DecomposableCovector, KVector, pair
from .matrix import det, submatrix
from .scalarpoly import (
    DivisorOnC,
    GaussianRational,
    RatPoly,
    as_gaussian,
    ord_at,
    poly_gcd_many,
    roots_with_multiplicity,
    wronskian,
)

__all__ = [
    "PolyCurve",
    "DerivedCurve",
    "NiceJet",
    "DegenerateCurveError",
    "reduce_representation",
    "is_nondegenerate",
    "derivative_matrix",
    "derived_curve",
    "contract",
    "nice_coordinates_at",
    "stationary_order_check",
]


class DegenerateCurveError(ValueError):
    """The curve lies in a proper linear subspace (its Wronskian vanishes)."""


def _as_poly(p) -> RatPoly:
    return p if isinstance(p, RatPoly) else RatPoly.const(as_gaussian(p))


@dataclass(frozen=True)
class PolyCurve:
    """Reduced representation ``[f_0 : ... : f_n]`` with polynomial components."""

    components: tuple[RatPoly, ...]

    def __post_init__(self):
        comps = tuple(_as_poly(p) for p in self.components)
        object.__setattr__(self, "components", comps)
        if not comps or all(p.is_zero() for p in comps):
            raise ValueError("a curve needs a nonzero component")
        if poly_gcd_many(comps).degree > 0:
            raise ValueError("components have a common zero; use reduce_representation")

    @property
    def n(self) -> int:
        return len(self.components) - 1

    def __len__(self):
        return len(self.components)

    def __iter__(self):
        return iter(self.components)

    def __getitem__(self, i):
        return self.components[i]

    def to_json(self) -> dict:
        return {"n": self.n, "components": [p.to_json() for p in self.components]}

    @classmethod
    def from_json(cls, obj) -> "PolyCurve":
        comps = [RatPoly.from_json(c) for c in obj["components"]]
        if "n" in obj and obj["n"] != len(comps) - 1:
            raise ValueError(f"curve declares n={obj['n']} but has {len(comps)} components")
        return cls(tuple(comps))


def reduce_representation(raw: Sequence[RatPoly]) -> PolyCurve:
    raw = [_as_poly(p) for p in raw]
    if all(p.is_zero() for p in raw):
        raise ValueError("all components are identically zero")
    g = poly_gcd_many(raw)
    return PolyCurve(tuple(p.exact_div(g) for p in raw))


def is_nondegenerate(f: PolyCurve) -> bool:
    return not wronskian(f.components).is_zero()


def derivative_matrix(components: Sequence[RatPoly], order: int) -> list[list[RatPoly]]:
    """Rows are derivative orders 0..order, columns are the components."""
    return [[p.derivative(i) for p in components] for i in range(order + 1)]


@dataclass(frozen=True)
class DerivedCurve:
    k: int
    raw: KVector
    plucker_components: KVector
    cancellation: RatPoly
    stationary_divisor: DivisorOnC

    @property
    def n(self) -> int:
        return self.raw.n

    def components(self) -> list[RatPoly]:
        """Reduced coordinates in lexicographic order (zeros as zero polys)."""
        return [_as_poly(c) for c in self.plucker_components.as_list()]

    def raw_components(self) -> list[RatPoly]:
        return [_as_poly(c) for c in self.raw.as_list()]

    def degree(self) -> int:
        """Growth degree: T(r)/log r tends to this."""
        return max(p.degree for p in self.components())


def derived_curve(f: PolyCurve, k: int) -> DerivedCurve:
    if not 0 <= k <= f.n:
        raise ValueError(f"k={k} out of range 0..{f.n}")
    if not is_nondegenerate(f):
        raise DegenerateCurveError("curve degenerate: Wronskian vanishes identically")
    rows = derivative_matrix(f.components, k)
    coords = {}
    for J in combinations(range(f.n + 1), k + 1):
        coords[J] = _as_poly(det(submatrix(rows, range(k + 1), J)))
    raw = KVector(k + 1, f.n, coords)
    g = poly_gcd_many(raw.coords.values())
    reduced = raw.map(lambda p: p.exact_div(g))
    divisor = roots_with_multiplicity(g)
    return DerivedCurve(k, raw, reduced, g, divisor)


def contract(f: PolyCurve, A: DecomposableCovector) -> tuple[list[RatPoly], bool]:
    """``h_i = a_i ∘ f`` and the exact check ``A(F̃_k) == W(h_0, ..., h_k)``."""
    if A.n != f.n:
        raise ValueError(f"covector lives on C^{A.n + 1}, curve on C^{f.n + 1}")
    h = []
    for form in A.forms:
        acc = RatPoly()
        for a, p in zip(form, f.components):
            if a:
                acc = acc + p * a
        h.append(acc)
    rows = derivative_matrix(f.components, A.k)
    raw = KVector(
        A.k + 1,
        f.n,
        {J: _as_poly(det(submatrix(rows, range(A.k + 1), J))) for J in combinations(range(f.n + 1), A.k + 1)},
    )
    lhs = _as_poly(pair(A, raw))
    return h, lhs == wronskian(h)


@dataclass(frozen=True)
class NiceJet:
    """Change of coordinates P with ``(P f)_i = t^{α_i} + higher`` at z0, t = z - z0."""

    change_of_coordinates: tuple[tuple[GaussianRational, ...], ...]
    exponents: tuple[int, ...]
    base_point: GaussianRational

    def transform(self, f: PolyCurve) -> list[RatPoly]:
        out = []
        for row in self.change_of_coordinates:
            acc = RatPoly()
            for c, p in zip(row, f.components):
                if c:
                    acc = acc + p * c
            out.append(acc)
        return out


def nice_coordinates_at(f: PolyCurve, z0, tie_break: str = "first") -> NiceJet:
    """Gaussian elimination on the Taylor jets of the components at ``z0``.

    At each stage the remaining candidate of least vanishing order is
    promoted (ties broken by component index, ``tie_break="first"`` or
    ``"last"``), normalized to unit leading coefficient, and used to clear
    that order from every other candidate.  Polynomial jets are finite, so
    no truncation is involved.
    """
    if tie_break not in ("first", "last"):
        raise ValueError("tie_break must be 'first' or 'last'")
    z0 = as_gaussian(z0)
    if not is_nondegenerate(f):
        raise DegenerateCurveError("curve degenerate: Wronskian vanishes identically")
    size = f.n + 1
    width = max(p.degree for p in f.components) + 1
    jets = []
    for p in f.components:
        cs = list(p.taylor_shift(z0).coeffs)
        jets.append(cs + [GaussianRational(0)] * (width - len(cs)))
    # candidate: (jet, combination row over the original components)
    cands = [(jets[i], [GaussianRational(int(i == j)) for j in range(size)], i) for i in range(size)]

    def order(jet):
        return next(i for i, c in enumerate(jet) if c)

    rows, exps = [], []
    while cands:
        keyed = [(order(jet), idx if tie_break == "first" else -idx, pos) for pos, (jet, _, idx) in enumerate(cands)]
        alpha, _, pos = min(keyed)
        jet, comb_row, _ = cands.pop(pos)
        inv = 1 / jet[alpha]
        jet = [c * inv for c in jet]
        comb_row = [c * inv for c in comb_row]
        new = []
        for ojet, orow, oidx in cands:
            c = ojet[alpha]
            if c:
                ojet = [a - c * b for a, b in zip(ojet, jet)]
                orow = [a - c * b for a, b in zip(orow, comb_row)]
            if not any(ojet):
                raise DegenerateCurveError("jets became dependent; curve is degenerate")
            new.append((ojet, orow, oidx))
        cands = new
        rows.append(tuple(comb_row))
        exps.append(alpha)
    return NiceJet(tuple(rows), tuple(exps), z0)


def stationary_order_check(f: PolyCurve, k: int, z0) -> tuple[int, int, bool]:
    """Compare ord_{z0} g (from the derived curve) with Σ_{i≤k}(α_i - i)."""
    lhs = ord_at(derived_curve(f, k).cancellation, z0)
    alpha = nice_coordinates_at(f, z0).exponents
    rhs = sum(alpha[i] - i for i in range(k + 1))
    return lhs, rhs, lhs == rhs

