"""Verifiers for the derived-curve Second Main Theorem pipeline.

Pointwise divisor statements are checked on a coprime base of all the
polynomials involved: every root of one base factor has the same order in
each polynomial, so one exact comparison per factor covers all its roots,
rational or not.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from math import comb
from typing import Sequence

from .curves import (
    DerivedCurve,
    PolyCurve,
    derivative_matrix,
    derived_curve,
    is_nondegenerate,
    nice_coordinates_at,
)
from .exterior import compound_matrix, multi_indices, pair
from .matrix import det, submatrix
from .nevanlinna import (
    INF,
    RadialGrid,
    RadialReport,
    counting_N,
    exact_defect,
    order_T,
    pullback_divisor,
)
from .nochka import HyperplaneFamily, WeightAssignment, compute_weights, is_subgeneral
from .scalarpoly import (
    RatPoly,
    as_gaussian,
    coprime_base,
    multiplicity_in,
    ord_at,
    roots_with_multiplicity,
    wronskian,
)

__all__ = [
    "SmtProblem",
    "InvalidProblem",
    "weight_w",
    "wij_order_bound_check",
    "detW",
    "detW_bound_check",
    "detW_orders_at",
    "fujimoto_order_check",
    "nochka_divisor_inequality_check",
    "log_wronskian_identity_check",
    "smt_report",
    "defect_relation_report",
    "ramification_report",
]

REFERENCE_RADIUS = 100.0
SLACK_ALLOWANCE = 0.1


class InvalidProblem(ValueError):
    pass


def _poly(x) -> RatPoly:
    return x if isinstance(x, RatPoly) else RatPoly.const(as_gaussian(x))


@dataclass(frozen=True)
class SmtProblem:
    curve: PolyCurve
    k: int
    family: HyperplaneFamily
    grid: RadialGrid
    weights: WeightAssignment | None = None

    @classmethod
    def create(
        cls, curve: PolyCurve, k: int, family: HyperplaneFamily, grid: RadialGrid
    ) -> "SmtProblem":
        """Validate the problem invariants and attach Nochka weights when they exist."""
        if not is_nondegenerate(curve):
            raise InvalidProblem("curve degenerate: Wronskian vanishes identically")
        if not 0 <= k <= curve.n:
            raise InvalidProblem(f"k={k} out of range 0..{curve.n}")
        if (family.k, family.n) != (k, curve.n):
            raise InvalidProblem(
                f"family is in Λ^{family.k + 1}(C^{family.n + 1}), problem needs Λ^{k + 1}(C^{curve.n + 1})"
            )
        if family.q < family.subgeneral_N:
            raise InvalidProblem(f"q={family.q} is smaller than 𝔑={family.subgeneral_N}")
        if not is_subgeneral(family, family.subgeneral_N - 1):
            raise InvalidProblem(f"some {family.subgeneral_N} hyperplanes have a common point")
        prob = cls(curve, k, family, grid)
        for i, comp in enumerate(prob.compositions):
            if comp.is_zero():
                raise InvalidProblem(f"derived curve lies inside hyperplane {i}")
        n_th, N_th = family.nochka_params()
        if n_th >= 1 and N_th >= n_th and family.q >= 2 * N_th - n_th + 1:
            prob = cls(curve, k, family, grid, compute_weights(family, n_th, N_th))
        return prob

    @property
    def n(self) -> int:
        return self.curve.n

    @property
    def dim(self) -> int:
        return comb(self.n + 1, self.k + 1)

    @property
    def subgeneral_N(self) -> int:
        return self.family.subgeneral_N

    @property
    def truncation(self) -> int:
        return (self.k + 1) * (self.n - self.k)

    @property
    def coefficient(self) -> int:
        """q - 2𝔑 + 𝔫."""
        return self.family.q - 2 * self.subgeneral_N + self.dim

    @property
    def defect_bound(self) -> int:
        return 2 * self.subgeneral_N - self.dim

    @cached_property
    def derived(self) -> DerivedCurve:
        return derived_curve(self.curve, self.k)

    @cached_property
    def compositions(self) -> tuple[RatPoly, ...]:
        """A_i^* ∘ F̄_k for each hyperplane."""
        return tuple(_poly(pair(A, self.derived.plucker_components)) for A in self.family.covectors)

    @cached_property
    def divisors(self):
        return tuple(pullback_divisor(p) for p in self.compositions)


def weight_w(I: Sequence[int]) -> int:
    I = tuple(I)
    if any(a >= b for a, b in zip(I, I[1:])) or (I and I[0] < 0):
        raise ValueError(f"{I} is not a strictly increasing set of nonnegative integers")
    return sum(i - j for j, i in enumerate(I))


def _W_IJ(components: Sequence[RatPoly], I, J) -> RatPoly:
    order = max(I) if I else 0
    rows = derivative_matrix(components, order)
    return _poly(det(submatrix(rows, I, J)))


def wij_order_bound_check(
    f: PolyCurve, k: int, I: Sequence[int], J: Sequence[int], z0, coordinates: str = "nice"
) -> tuple[int, int, bool]:
    """ord_{z0} W(I,J) against (𝒟_k(z0) - w(I) + w(J))^+.

    The bound is stated for nice coordinates at z0; ``coordinates="raw"``
    evaluates W(I,J) on the given components instead, for comparison only.
    """
    I, J = tuple(I), tuple(J)
    if len(I) != k + 1 or len(J) != k + 1:
        raise ValueError("I and J must have k+1 elements")
    z0 = as_gaussian(z0)
    if coordinates == "nice":
        comps = nice_coordinates_at(f, z0).transform(f)
    elif coordinates == "raw":
        comps = list(f.components)
    else:
        raise ValueError("coordinates must be 'nice' or 'raw'")
    w = _W_IJ(comps, I, J)
    order = ord_at(w, z0) if not w.is_zero() else math.inf
    dk = ord_at(derived_curve(f, k).cancellation, z0)
    bound = max(0, dk - weight_w(I) + weight_w(J))
    return order, bound, order >= bound


def detW(f: PolyCurve, k: int, method: str = "compound") -> RatPoly:
    """det of the (k+1)-th compound of (f_j^{(i)}); ``method="sylvester"``
    uses W(f)^{C(n,k)} instead of expanding the compound."""
    if method == "sylvester":
        return wronskian(f.components) ** comb(f.n, k)
    if method != "compound":
        raise ValueError("method must be 'compound' or 'sylvester'")
    M = derivative_matrix(f.components, f.n)
    return _poly(det(compound_matrix(M, k)))


@dataclass
class DivisorComparison:
    rows: list[dict] = field(default_factory=list)

    @property
    def holds(self) -> bool:
        return all(row["margin"] >= 0 for row in self.rows)


def _factor_points(b: RatPoly) -> list[complex]:
    return [pt.location for pt in roots_with_multiplicity(b).points]


def detW_bound_check(f: PolyCurve, k: int) -> tuple[dict, dict, bool]:
    """(det 𝒲)_0 >= 𝔫 𝒟_k, pointwise.

    det 𝒲 is computed by expanding the compound matrix and independently by
    Sylvester-Franke; a disagreement is a harness bug and raises.
    """
    dim = comb(f.n + 1, k + 1)
    direct = detW(f, k, "compound")
    if direct != detW(f, k, "sylvester"):
        raise AssertionError("compound determinant disagrees with Sylvester-Franke")
    g = derived_curve(f, k).cancellation
    lhs, rhs = {}, {}
    holds = True
    for b in coprime_base([direct, g]):
        a = multiplicity_in(direct, b)
        d = multiplicity_in(g, b) if g.degree > 0 else 0
        for z in _factor_points(b):
            lhs[z], rhs[z] = a, dim * d
        holds = holds and a >= dim * d
    return lhs, rhs, holds


def detW_orders_at(f: PolyCurve, k: int, z0) -> tuple[int, int, int]:
    """ord_{z0} det 𝒲 in raw and in nice coordinates, and 𝔫 𝒟_k(z0)."""
    z0 = as_gaussian(z0)
    raw = detW(f, k)
    jet = nice_coordinates_at(f, z0)
    M = derivative_matrix(jet.transform(f), f.n)
    nice = _poly(det(compound_matrix(M, k)))
    dk = ord_at(derived_curve(f, k).cancellation, z0)
    return ord_at(raw, z0), ord_at(nice, z0), comb(f.n + 1, k + 1) * dk


def fujimoto_order_check(h: Sequence[RatPoly], I: Sequence[int], a) -> tuple[int, int, bool]:
    """ord_a det(h^{(i_j)}) >= ord_a W(h) - w(I) for linearly independent h."""
    I = tuple(I)
    if len(I) != len(h):
        raise ValueError("|I| must equal the number of functions")
    a = as_gaussian(a)
    W = wronskian(list(h))
    if W.is_zero():
        raise ValueError("functions are linearly dependent")
    lhs_poly = _W_IJ(list(h), I, tuple(range(len(h))))
    lhs = ord_at(lhs_poly, a) if not lhs_poly.is_zero() else math.inf
    rhs = ord_at(W, a) - weight_w(I)
    return lhs, rhs, lhs >= rhs


def nochka_divisor_inequality_check(problem: SmtProblem) -> DivisorComparison:
    """Pointwise ord det 𝒲 >= 𝔫 𝒟_k + Σ ω(i) (ord A_i∘F̄_k - (k+1)(n-k))^+."""
    if problem.weights is None:
        raise ValueError("problem has no Nochka weights (q < 2𝔑 - 𝔫 or 𝔫 = 1)")
    f, k = problem.curve, problem.k
    dW = detW(f, k, "sylvester")
    g = problem.derived.cancellation
    comps = problem.compositions
    t = problem.truncation
    report = DivisorComparison()
    for b in coprime_base([dW, g, *comps]):
        ord_det = multiplicity_in(dW, b)
        ord_g = multiplicity_in(g, b) if g.degree > 0 else 0
        excess = Fraction(0)
        orders = []
        for w, p in zip(problem.weights.weights, comps):
            o = multiplicity_in(p, b) if p.degree > 0 else 0
            orders.append(o)
            if o > t:
                excess += w * (o - t)
        rhs = problem.dim * ord_g + excess
        report.rows.append(
            {
                "factor": b,
                "points": _factor_points(b),
                "ord_detW": ord_det,
                "n_Dk": problem.dim * ord_g,
                "weighted_excess": excess,
                "hyperplane_orders": orders,
                "margin": ord_det - rhs,
            }
        )
    return report


def _log_derivative_numerators(fj: RatPoly, f0: RatPoly, order: int) -> list[RatPoly]:
    """N_a with (fj/f0)^{(a)} = N_a / f0^{a+1}, for a = 0..order."""
    out = [fj]
    d0 = f0.derivative()
    for a in range(order):
        prev = out[-1]
        out.append(prev.derivative() * f0 - d0 * prev * (a + 1))
    return out


def log_wronskian_identity_check(f: PolyCurve, k: int) -> bool:
    """Check F̃_{k,log} = f_0^{-(k+1)} F̃_k and det 𝒲_log = f_0^{-(k+1)𝔫} det 𝒲.

    Both sides are rational functions; each identity is checked as a
    cross-multiplied polynomial identity.
    """
    f0 = f.components[0]
    if f0.is_zero():
        raise ValueError("f_0 vanishes identically; permute coordinates first")
    n = f.n
    dim = comb(n + 1, k + 1)
    num = [_log_derivative_numerators(p, f0, n) for p in f.components]
    # Nmat[a][j] = numerator of (f_j/f_0)^{(a)}; true entry is Nmat[a][j] / f0^{a+1}
    Nmat = [[num[j][a] for j in range(n + 1)] for a in range(n + 1)]
    raw = derived_curve(f, k).raw
    rows = range(k + 1)
    den_rows = (k + 1) * (k + 2) // 2  # Σ_{a=0..k} (a+1)
    for J in multi_indices(n, k):
        log_num = _poly(det(submatrix(Nmat, rows, J)))
        if log_num * f0 ** (k + 1) != _poly(raw[J]) * f0**den_rows:
            return False
    # det 𝒲_log: row I of the compound carries the denominator f0^{Σ_{a∈I}(a+1)}
    comp = compound_matrix(Nmat, k)
    log_det_num = _poly(det(comp))
    den_total = sum(sum(a + 1 for a in I) for I in multi_indices(n, k))
    if log_det_num * f0 ** ((k + 1) * dim) != detW(f, k, "compound") * f0**den_total:
        return False
    # Sylvester-Franke on the logarithmic matrix: det 𝒲_log = W_log(f)^{C(n,k)}
    full_den = (n + 1) * (n + 2) // 2
    w_log_num = _poly(det(Nmat))
    return log_det_num * f0 ** (full_den * comb(n, k)) == w_log_num ** comb(n, k) * f0**den_total


def smt_report(problem: SmtProblem) -> RadialReport:
    """(q - 2𝔑 + 𝔫) T_{F_k}(r) against Σ_i N^{[(k+1)(n-k)]}(r, A_i) over the grid."""
    comps = problem.derived.components()
    coef = problem.coefficient
    t = problem.truncation
    report = RadialReport(("r", "T_Fk", "N_trunc_sum", "lhs", "rhs", "slack"))

    def row(r):
        T = order_T(comps, r)
        Nsum = sum(counting_N(E, t, r) for E in problem.divisors)
        lhs = coef * T
        return (r, T, Nsum, lhs, Nsum, Nsum - lhs)

    for r in problem.grid:
        report.rows.append(row(r))
    vacuous = coef <= 0
    report.flags["vacuous"] = vacuous
    report.flags["coefficient"] = coef
    report.flags["truncation"] = t
    if vacuous:
        report.flags["bounded"] = None
        return report
    ref = row(REFERENCE_RADIUS)[-1]
    late = [s for (r, *_, s) in report.rows if r >= REFERENCE_RADIUS]
    worst = min(late, default=ref)
    report.flags.update(
        reference_slack=ref,
        min_slack_after_reference=worst,
        bounded=worst >= ref - SLACK_ALLOWANCE,
    )
    return report


def _truncated_degree(E, m) -> int:
    return sum(pt.multiplicity if m == INF else min(m, pt.multiplicity) for pt in E.points)


def defect_relation_report(problem: SmtProblem) -> tuple[Fraction, int, bool, list[Fraction]]:
    """Σ exact defects δ^{[(k+1)(n-k)]}(A_i) against 2𝔑 - 𝔫."""
    dk = problem.derived.degree()
    defects = [exact_defect(E, problem.truncation, dk) for E in problem.divisors]
    total = sum(defects, Fraction(0))
    bound = problem.defect_bound
    return total, bound, total <= bound, defects


def ramification_report(problem: SmtProblem) -> tuple[list, Fraction, int, bool]:
    """Σ (1 - (k+1)(n-k)/μ_i) against 2𝔑 - 𝔫, with μ_i = ∞ for empty divisors."""
    t = problem.truncation
    mus: list = []
    total = Fraction(0)
    for E in problem.divisors:
        mu = E.min_multiplicity()
        if mu is None:
            mus.append(INF)
            total += 1
        else:
            mus.append(mu)
            total += 1 - Fraction(t, mu)
    bound = problem.defect_bound
    return mus, total, bound, total <= bound


def stationary_points(f: PolyCurve) -> list:
    """Exact roots of the full Wronskian, where some 𝒟_k can be positive."""
    return [pt.exact for pt in roots_with_multiplicity(wronskian(f.components)).points if pt.exact is not None]


def all_index_pairs(n: int, k: int):
    idx = multi_indices(n, k)
    return [(I, J) for I in idx for J in idx]
