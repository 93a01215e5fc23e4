"""Grassmann algebra over C^{n+1} in Plücker coordinates.

Multi-indices are strictly increasing tuples of ints and are always listed in
lexicographic order, so ``index_rank(I, n, len(I)-1)`` is the 1-based position
of ``I`` among all (k+1)-subsets of {0..n}.  Coefficients are generic: the
same code runs on scalars (hyperplane data) and on polynomials (Wronskian
matrices).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from math import comb
from typing import Mapping, Sequence

from .matrix import det, rank, submatrix
from .scalarpoly import GaussianRational, as_gaussian

__all__ = [
    "multi_indices",
    "index_rank",
    "KVector",
    "DecomposableCovector",
    "wedge",
    "plucker_of_vectors",
    "pair",
    "compound_matrix",
]


def multi_indices(n: int, k: int) -> list[tuple[int, ...]]:
    """All (k+1)-subsets of {0..n}, lexicographically."""
    return list(combinations(range(n + 1), k + 1))


def index_rank(I: Sequence[int], n: int) -> int:
    """1-based lexicographic rank of ``I`` among subsets of {0..n} of size |I|."""
    size = len(I)
    pos, prev = 0, -1
    for slot, i in enumerate(I):
        if not prev < i <= n:
            raise ValueError(f"{tuple(I)} is not a strictly increasing subset of 0..{n}")
        for skipped in range(prev + 1, i):
            pos += comb(n - skipped, size - slot - 1)
        prev = i
    return pos + 1


def _merge_sign(I: tuple[int, ...], J: tuple[int, ...]) -> int:
    """Sign of the permutation sorting the concatenation I + J (disjoint)."""
    inversions = 0
    for j in J:
        inversions += sum(1 for i in I if i > j)
    return -1 if inversions % 2 else 1


@dataclass(frozen=True)
class KVector:
    """Element of Λ^grade(C^{n+1}); zero coordinates are not stored."""

    grade: int
    n: int
    coords: Mapping[tuple[int, ...], object] = field(default_factory=dict)

    def __post_init__(self):
        if not 0 <= self.grade <= self.n + 1:
            raise ValueError(f"grade {self.grade} out of range for C^{self.n + 1}")
        clean = {}
        for I, c in self.coords.items():
            I = tuple(I)
            if len(I) != self.grade or any(a >= b for a, b in zip(I, I[1:])) or (
                I and not 0 <= I[0] <= I[-1] <= self.n
            ):
                raise ValueError(f"bad multi-index {I} for grade {self.grade}")
            if c:
                clean[I] = c
        object.__setattr__(self, "coords", clean)

    @classmethod
    def basis(cls, I: Sequence[int], n: int, coeff=1) -> "KVector":
        return cls(len(I), n, {tuple(I): as_gaussian(coeff)})

    @classmethod
    def from_vector(cls, v: Sequence) -> "KVector":
        return cls(1, len(v) - 1, {(j,): c for j, c in enumerate(v)})

    @property
    def dimension(self) -> int:
        return comb(self.n + 1, self.grade)

    def __getitem__(self, I):
        return self.coords.get(tuple(I), 0)

    def is_zero(self) -> bool:
        return not self.coords

    def as_list(self) -> list:
        """Coordinates in lexicographic basis order, zeros included."""
        return [self[I] for I in combinations(range(self.n + 1), self.grade)]

    def _check(self, other: "KVector"):
        if (self.grade, self.n) != (other.grade, other.n):
            raise ValueError("k-vectors of different grade or ambient dimension")

    def __add__(self, other: "KVector") -> "KVector":
        self._check(other)
        out = dict(self.coords)
        for I, c in other.coords.items():
            out[I] = out[I] + c if I in out else c
        return KVector(self.grade, self.n, out)

    def __neg__(self) -> "KVector":
        return KVector(self.grade, self.n, {I: -c for I, c in self.coords.items()})

    def __sub__(self, other: "KVector") -> "KVector":
        return self + (-other)

    def scale(self, c) -> "KVector":
        return KVector(self.grade, self.n, {I: c * v for I, v in self.coords.items()})

    def map(self, fn) -> "KVector":
        return KVector(self.grade, self.n, {I: fn(v) for I, v in self.coords.items()})

    def __eq__(self, other):
        if not isinstance(other, KVector):
            return NotImplemented
        return (self.grade, self.n) == (other.grade, other.n) and self.coords == other.coords

    def __hash__(self):
        return hash((self.grade, self.n, frozenset(self.coords.items())))


def wedge(u: KVector, v: KVector) -> KVector:
    if u.n != v.n:
        raise ValueError("wedge of k-vectors over different spaces")
    if u.grade + v.grade > u.n + 1:
        raise ValueError(f"grade {u.grade + v.grade} exceeds {u.n + 1}")
    out: dict = {}
    for I, a in u.coords.items():
        sI = set(I)
        for J, b in v.coords.items():
            if sI.intersection(J):
                continue
            K = tuple(sorted(I + J))
            term = a * b if _merge_sign(I, J) > 0 else -(a * b)
            out[K] = out[K] + term if K in out else term
    return KVector(u.grade + v.grade, u.n, out)


def plucker_of_vectors(vectors: Sequence[Sequence]) -> KVector:
    """``v_0 ∧ ... ∧ v_k``: the coordinate at I is the minor on columns I."""
    if not vectors:
        raise ValueError("need at least one vector")
    n = len(vectors[0]) - 1
    if any(len(v) != n + 1 for v in vectors):
        raise ValueError("vectors of unequal length")
    rows = range(len(vectors))
    coords = {I: det(submatrix(vectors, rows, I)) for I in combinations(range(n + 1), len(vectors))}
    return KVector(len(vectors), n, coords)


class DecomposableCovector:
    """``a_0 ∧ ... ∧ a_k`` in Λ^{k+1}(C^{n+1})^∨, stored by its defining forms."""

    __slots__ = ("forms", "_plucker")

    def __init__(self, forms: Sequence[Sequence]):
        forms = tuple(tuple(as_gaussian(x) for x in form) for form in forms)
        if not forms:
            raise ValueError("a decomposable covector needs at least one form")
        if len({len(f) for f in forms}) != 1:
            raise ValueError("linear forms of unequal length")
        if len(forms) > len(forms[0]):
            raise ValueError("more forms than the dimension allows")
        if rank(forms) != len(forms):
            raise ValueError("linear forms are dependent: the covector is zero")
        self.forms = forms
        self._plucker = None

    @property
    def k(self) -> int:
        return len(self.forms) - 1

    @property
    def n(self) -> int:
        return len(self.forms[0]) - 1

    def plucker(self) -> KVector:
        if self._plucker is None:
            self._plucker = plucker_of_vectors(self.forms)
        return self._plucker

    def coordinates(self) -> list[GaussianRational]:
        """Plücker coordinates (the minors det(L_I)) in lexicographic order."""
        return [as_gaussian(c) for c in self.plucker().as_list()]

    def __eq__(self, other):
        if not isinstance(other, DecomposableCovector):
            return NotImplemented
        return self.forms == other.forms

    def __hash__(self):
        return hash(self.forms)

    def __repr__(self):
        rows = ", ".join("(" + ", ".join(str(x) for x in f) + ")" for f in self.forms)
        return f"DecomposableCovector([{rows}])"

    def to_json(self) -> dict:
        return {"forms": [[x.to_json() for x in f] for f in self.forms]}

    @classmethod
    def from_json(cls, obj) -> "DecomposableCovector":
        return cls([[GaussianRational.from_json(x) for x in f] for f in obj["forms"]])


def pair(A: DecomposableCovector, Z: KVector):
    """``A(Z) = Σ_I det(L_I) Z_I`` (Cauchy-Binet pairing)."""
    if A.k + 1 != Z.grade or A.n != Z.n:
        raise ValueError(
            f"cannot pair a grade-{A.k + 1} covector on C^{A.n + 1} with a "
            f"grade-{Z.grade} vector on C^{Z.n + 1}"
        )
    acc = 0
    for I, z in Z.coords.items():
        a = A.plucker()[I]
        if a:
            acc = a * z + acc
    return acc


def compound_matrix(M: Sequence[Sequence], k: int) -> list[list]:
    """The (k+1)-th compound: entry (‖I‖, ‖J‖) is det M[I, J]."""
    size = len(M)
    if any(len(row) != size for row in M):
        raise ValueError("compound of a non-square matrix")
    if not 0 <= k < size:
        raise ValueError(f"k={k} out of range for a {size}x{size} matrix")
    idx = list(combinations(range(size), k + 1))
    return [[det(submatrix(M, I, J)) for J in idx] for I in idx]
