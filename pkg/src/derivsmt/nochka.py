"""Subgeneral position, Nochka weights and the Nochka product inequality.

Index sets are 0-based throughout.  Inside this module ``n`` and ``N`` are
the projective parameters of Nochka's theorem.  A family of decomposable
hyperplanes of P(Λ^{k+1} C^{n+1}) in which any 𝔑 members have empty
intersection is handled with ``n = 𝔫 - 1`` and ``N = 𝔑 - 1``; that is
what ``HyperplaneFamily.nochka_params`` returns.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property, lru_cache
from itertools import combinations
from math import comb, gcd
from typing import Iterable, Sequence

from .exterior import DecomposableCovector
from .lp import linprog_max
from .matrix import rank as matrix_rank

__all__ = [
    "HyperplaneFamily",
    "WeightAssignment",
    "WeightReport",
    "NochkaError",
    "rank_of",
    "is_subgeneral",
    "minimal_subgeneral_index",
    "compute_weights",
    "verify_weights",
    "select_indices",
    "product_inequality_holds",
]


class NochkaError(RuntimeError):
    """No weights satisfy Nochka's conditions; this contradicts the theorem."""


@lru_cache(maxsize=65536)
def _subset_rank(vectors: tuple, R: tuple[int, ...]) -> int:
    return matrix_rank([vectors[i] for i in R])


@dataclass(frozen=True)
class HyperplaneFamily:
    """q decomposable hyperplanes; any ``subgeneral_N`` of them meet emptily."""

    covectors: tuple[DecomposableCovector, ...]
    subgeneral_N: int

    def __post_init__(self):
        covs = tuple(self.covectors)
        object.__setattr__(self, "covectors", covs)
        if not covs:
            raise ValueError("a hyperplane family needs at least one member")
        if len({(A.k, A.n) for A in covs}) != 1:
            raise ValueError("covectors of different grade or ambient dimension")
        for i, j in combinations(range(len(covs)), 2):
            if self.rank_of((i, j)) < 2:
                raise ValueError(f"covectors {i} and {j} are proportional")

    @property
    def q(self) -> int:
        return len(self.covectors)

    @property
    def k(self) -> int:
        return self.covectors[0].k

    @property
    def n(self) -> int:
        return self.covectors[0].n

    @property
    def dim(self) -> int:
        """𝔫 = C(n+1, k+1), the dimension of Λ^{k+1} C^{n+1}."""
        return comb(self.n + 1, self.k + 1)

    @cached_property
    def vectors(self) -> tuple[tuple, ...]:
        return tuple(tuple(A.coordinates()) for A in self.covectors)

    def nochka_params(self) -> tuple[int, int]:
        return self.dim - 1, self.subgeneral_N - 1

    def rank_of(self, R: Iterable[int]) -> int:
        R = tuple(sorted(R))
        if not R:
            return 0
        return _subset_rank(self.vectors, R)

    def without(self, i: int) -> "HyperplaneFamily":
        return HyperplaneFamily(self.covectors[:i] + self.covectors[i + 1:], self.subgeneral_N)

    def to_json(self) -> dict:
        return {
            "k": self.k,
            "n": self.n,
            "N": self.subgeneral_N,
            "covectors": [A.to_json() for A in self.covectors],
        }

    @classmethod
    def from_json(cls, obj) -> "HyperplaneFamily":
        covs = tuple(DecomposableCovector.from_json(c) for c in obj["covectors"])
        fam = cls(covs, int(obj["N"]))
        if "k" in obj and obj["k"] != fam.k:
            raise ValueError(f"family declares k={obj['k']} but covectors have k={fam.k}")
        if "n" in obj and obj["n"] != fam.n:
            raise ValueError(f"family declares n={obj['n']} but covectors have n={fam.n}")
        return fam


def rank_of(family: HyperplaneFamily, R: Iterable[int]) -> int:
    """Dimension of the span of the covectors indexed by R."""
    R = tuple(R)
    if any(not 0 <= i < family.q for i in R):
        raise ValueError(f"index set {R} not inside 0..{family.q - 1}")
    return family.rank_of(R)


def is_subgeneral(family: HyperplaneFamily, N: int) -> bool:
    """True iff every N+1 members have empty common zero set."""
    if family.q < N + 1:
        raise ValueError(f"need at least N+1={N + 1} hyperplanes, have {family.q}")
    full = family.dim
    return all(family.rank_of(R) == full for R in combinations(range(family.q), N + 1))


def minimal_subgeneral_index(family: HyperplaneFamily) -> int | None:
    """Least N with the family in N-subgeneral position (None if never)."""
    if family.rank_of(range(family.q)) < family.dim:
        return None
    for N in range(family.dim - 1, family.q):
        if is_subgeneral(family, N):
            return N
    return None


@dataclass(frozen=True)
class WeightAssignment:
    weights: tuple[Fraction, ...]
    constant: Fraction

    def to_csv_rows(self) -> list[tuple[int, int, int]]:
        return [(i, w.numerator, w.denominator) for i, w in enumerate(self.weights)]


@dataclass
class WeightReport:
    cond_i: bool
    cond_ii: bool
    cond_iii: bool
    cond_iv: bool
    witness: tuple[int, ...] | None = None
    details: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return self.cond_i and self.cond_ii and self.cond_iii and self.cond_iv


def _binding_subsets(family: HyperplaneFamily, N: int) -> list[tuple[int, ...]]:
    """Index sets whose rank inequality is not implied by the other constraints.

    With w_i <= t <= n/N and |R| <= N+1, a full-rank R has
    Σ_R w <= (N+1) n/N <= n+1, so only rank-deficient R matter.  Among those,
    R is implied by any R' ⊋ R of the same rank (weights are nonnegative).
    A set with rank(R) >= |R| t_max never binds either.
    """
    full = family.dim
    upper = Fraction(family.dim - 1, N)
    cands = {}
    for size in range(2, min(N + 1, family.q) + 1):
        for R in combinations(range(family.q), size):
            r = family.rank_of(R)
            if r < full and size * upper > r:
                cands[R] = r
    out = []
    for R, r in cands.items():
        Rs = set(R)
        if not any(len(S) > len(R) and cands[S] == r and Rs <= set(S) for S in cands):
            out.append(R)
    return out


def _check_params(family: HyperplaneFamily, n: int, N: int) -> None:
    if n < 1 or N < n:
        raise ValueError(f"need 1 <= n <= N, got n={n}, N={N}")
    if family.dim != n + 1:
        raise ValueError(f"family spans a space of dimension {family.dim}, expected n+1={n + 1}")
    if family.q < 2 * N - n + 1:
        raise ValueError(f"need q >= 2N-n+1 = {2 * N - n + 1}, have q={family.q}")
    if not is_subgeneral(family, N):
        raise ValueError(f"family is not in {N}-subgeneral position")


def compute_weights(
    family: HyperplaneFamily, n: int | None = None, N: int | None = None
) -> WeightAssignment:
    """Nochka weights by exact linear programming.

    Variables are the weights and the constant t.  The feasible set is
    ``0 <= w_i <= t``, ``Σ w = t(q-2N+n-1) + n+1``, the bounds on t and the
    rank inequalities.  Minimizing t forces ``max w_i = t`` at the optimum
    (otherwise t and the weight sum could both shrink).  Among those, the
    lexicographically largest weight vector is returned.
    """
    if n is None or N is None:
        n, N = family.nochka_params()
    _check_params(family, n, N)
    q = family.q
    coef = q - 2 * N + n - 1
    lower, upper = Fraction(n + 1, 2 * N - n + 1), Fraction(n, N)
    nv = q + 1  # weights, then t
    A_ub, b_ub = [], []
    for i in range(q):
        row = [0] * nv
        row[i], row[q] = 1, -1
        A_ub.append(row)
        b_ub.append(0)
    row = [0] * nv
    row[q] = 1
    A_ub.append(row)
    b_ub.append(upper)
    row = [0] * nv
    row[q] = -1
    A_ub.append(row)
    b_ub.append(-lower)
    for R in _binding_subsets(family, N):
        row = [0] * nv
        for i in R:
            row[i] = 1
        A_ub.append(row)
        b_ub.append(family.rank_of(R))
    A_eq = [[1] * q + [-coef]]
    b_eq = [n + 1]

    res = linprog_max([0] * q + [-1], A_ub, b_ub, A_eq, b_eq)
    if res.status != "optimal":
        raise NochkaError(f"weight LP is {res.status}; Nochka's theorem guarantees feasibility")
    t = res.x[q]
    A_eq.append([0] * q + [1])
    b_eq.append(t)
    x = res.x
    for i in range(q):
        obj = [0] * nv
        obj[i] = 1
        res = linprog_max(obj, A_ub, b_ub, A_eq, b_eq)
        if res.status != "optimal":  # pragma: no cover - fixing variables keeps feasibility
            raise NochkaError("lexicographic refinement lost feasibility")
        x = res.x
        fixed = [0] * nv
        fixed[i] = 1
        A_eq.append(fixed)
        b_eq.append(x[i])
    weights = tuple(x[:q])
    return WeightAssignment(weights, max(weights))


def verify_weights(
    family: HyperplaneFamily, n: int | None, N: int | None, w: WeightAssignment
) -> WeightReport:
    if n is None or N is None:
        n, N = family.nochka_params()
    q = family.q
    ws = [Fraction(x) for x in w.weights]
    details: dict = {}
    cond_i = len(ws) == q and all(0 <= x <= 1 for x in ws)
    const = max(ws) if ws else Fraction(0)
    details["max_weight"] = const
    details["declared_constant"] = w.constant
    total = sum(ws, Fraction(0))
    target = const * (q - 2 * N + n - 1) + n + 1
    details["sum"], details["target_sum"] = total, target
    cond_ii = const == w.constant and total == target
    cond_iii = Fraction(n + 1, 2 * N - n + 1) <= const <= Fraction(n, N)
    witness = None
    for size in range(1, min(N + 1, q) + 1):
        for R in combinations(range(q), size):
            if sum((ws[i] for i in R), Fraction(0)) > family.rank_of(R):
                witness = R
                break
        if witness:
            break
    return WeightReport(cond_i, cond_ii, cond_iii, witness is None, witness, details)


def product_inequality_holds(
    weights: Sequence[Fraction], R: Sequence[int], chosen: Sequence[int], a: Sequence
) -> bool:
    """Exact test of ``Π_{i∈R} a_i^{w_i} <= Π_{j∈chosen} a_j``.

    Clearing the common denominator D of the exponents gives the
    integer-power inequality ``Π a_i^{p_i} <= (Π a_j)^D``.
    """
    ws = [Fraction(weights[i]) for i in R]
    D = 1
    for x in ws:
        D = D * x.denominator // gcd(D, x.denominator)
    lhs = Fraction(1)
    for i, x in zip(R, ws):
        lhs *= Fraction(a[i]) ** int(x * D)
    rhs = Fraction(1)
    for j in chosen:
        rhs *= Fraction(a[j])
    return lhs <= rhs**D


def select_indices(
    family: HyperplaneFamily, w: WeightAssignment, R: Sequence[int], a: Sequence
) -> tuple[int, ...]:
    """rank(R) indices of R, independent, with the largest product of the a_i.

    Greedy over the matroid of R: take indices by decreasing a_i and keep
    those that raise the rank.  This yields a maximum-product basis, which
    satisfies the Nochka product inequality whenever any basis does.
    """
    R = tuple(R)
    if not R:
        raise ValueError("R must be nonempty")
    if any(Fraction(a[i]) < 1 for i in R):
        raise ValueError("the constants a_i must be >= 1")
    order = sorted(R, key=lambda i: (-Fraction(a[i]), i))
    chosen: list[int] = []
    for i in order:
        if family.rank_of(chosen + [i]) > len(chosen):
            chosen.append(i)
    chosen.sort()
    if not product_inequality_holds(w.weights, R, chosen, a):
        raise NochkaError(f"no basis of {R} satisfies the product inequality")
    return tuple(chosen)
