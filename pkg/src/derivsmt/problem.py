"""Problem files and deterministic corpus generation.

A problem file is one JSON object::

    {"k": 1,
     "curve": {"n": 2, "components": [[c0, c1, ...], ...]},
     "family": {"k": 1, "n": 2, "N": 3, "covectors": [{"forms": [[...], ...]}, ...]},
     "grid": [2.0, 10.0, ...]}

Coefficients are ``{"re": [num, den], "im": [num, den]}`` with integer
strings; a bare integer or fraction string is also accepted.  ``N`` is the
number of hyperplanes that must always have empty common intersection.
"""

from __future__ import annotations

import json
import random
from math import comb
from pathlib import Path

from .curves import PolyCurve, is_nondegenerate
from .exterior import DecomposableCovector
from .nevanlinna import RadialGrid
from .nochka import HyperplaneFamily, is_subgeneral
from .scalarpoly import GaussianRational, RatPoly, poly_gcd_many
from .smtlab import InvalidProblem, SmtProblem

__all__ = [
    "ParseError",
    "CorpusError",
    "DEFAULT_GRID",
    "parse_problem",
    "load_problem",
    "problem_to_json",
    "dump_problem",
    "random_curve",
    "random_family",
    "generate_corpus",
]

DEFAULT_GRID = (2.0, 10.0, 100.0, 1e3, 1e4, 1e5, 1e6)


class ParseError(ValueError):
    pass


class CorpusError(RuntimeError):
    pass


def _parse_raw(obj) -> tuple[int, list[RatPoly], int, list[list[list[GaussianRational]]], tuple[float, ...]]:
    """Structural parse only; mathematical invariants are checked later."""
    try:
        if not isinstance(obj, dict):
            raise TypeError("problem must be a JSON object")
        k = obj["k"]
        if not isinstance(k, int) or isinstance(k, bool):
            raise TypeError("k must be an integer")
        comps = [RatPoly.from_json(c) for c in obj["curve"]["components"]]
        fam = obj["family"]
        N = fam["N"]
        if not isinstance(N, int) or isinstance(N, bool):
            raise TypeError("family.N must be an integer")
        forms = [[[GaussianRational.from_json(x) for x in form] for form in cov["forms"]] for cov in fam["covectors"]]
        grid = tuple(float(r) for r in obj.get("grid", DEFAULT_GRID))
        declared_n = obj["curve"].get("n")
    except (KeyError, TypeError, ValueError, IndexError, ZeroDivisionError) as exc:
        raise ParseError(f"malformed problem: {exc!r}") from exc
    if declared_n is not None and declared_n != len(comps) - 1:
        raise ParseError(f"curve declares n={declared_n} but has {len(comps)} components")
    for key in ("k", "n"):
        if key in fam and fam[key] != (k if key == "k" else len(comps) - 1):
            raise ParseError(f"family declares {key}={fam[key]} inconsistent with the problem")
    return k, comps, N, forms, grid


def parse_problem(obj, grid_override: RadialGrid | None = None) -> SmtProblem:
    """Build a validated problem; ParseError for bad structure, InvalidProblem otherwise."""
    k, comps, N, forms, radii = _parse_raw(obj)
    try:
        curve = PolyCurve(tuple(comps))
        family = HyperplaneFamily(tuple(DecomposableCovector(f) for f in forms), N)
        grid = grid_override or RadialGrid(radii)
    except ValueError as exc:
        raise InvalidProblem(str(exc)) from exc
    return SmtProblem.create(curve, k, family, grid)


def load_problem(path, grid_override: RadialGrid | None = None) -> SmtProblem:
    try:
        obj = json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise ParseError(f"cannot read {path}: {exc}") from exc
    return parse_problem(obj, grid_override)


def problem_to_json(curve: PolyCurve, k: int, family: HyperplaneFamily, grid=DEFAULT_GRID) -> dict:
    return {
        "k": k,
        "curve": curve.to_json(),
        "family": family.to_json(),
        "grid": [float(r) for r in grid],
    }


def dump_problem(obj: dict) -> str:
    return json.dumps(obj, sort_keys=True) + "\n"


def _random_poly(rng: random.Random, deg: int, lo: int, hi: int) -> RatPoly:
    d = rng.randint(0, deg)
    return RatPoly([rng.randint(lo, hi) for _ in range(d + 1)])


def random_curve(rng: random.Random, n: int, deg: int, budget: int = 1000, lo: int = -3, hi: int = 3) -> PolyCurve:
    """Nondegenerate reduced curve with integer coefficients in [lo, hi]."""
    if deg < n:
        raise CorpusError(f"a nondegenerate curve in P^{n} needs degree >= {n}, got {deg}")
    for _ in range(budget):
        comps = [_random_poly(rng, deg, lo, hi) for _ in range(n + 1)]
        if any(p.is_zero() for p in comps) or poly_gcd_many(comps).degree > 0:
            continue
        curve = PolyCurve(tuple(comps))
        if is_nondegenerate(curve):
            return curve
    raise CorpusError(f"rejection budget exhausted: no nondegenerate curve (n={n}, deg={deg})")


def _random_form(rng, n, lo, hi):
    return [rng.randint(lo, hi) for _ in range(n + 1)]


def _random_covector(rng, n, k, lo, hi, basis=None):
    """Wedge of k+1 random forms, optionally drawn from the span of ``basis``."""
    for _ in range(100):
        if basis is None:
            forms = [_random_form(rng, n, lo, hi) for _ in range(k + 1)]
        else:
            forms = []
            for _ in range(k + 1):
                c = [rng.randint(-2, 2) for _ in basis]
                forms.append([sum(ci * b[j] for ci, b in zip(c, basis)) for j in range(n + 1)])
        try:
            return DecomposableCovector(forms)
        except ValueError:
            continue
    return None


def random_family(
    rng: random.Random,
    n: int,
    k: int,
    q: int,
    N: int | None = None,
    budget: int = 1000,
    lo: int = -3,
    hi: int = 3,
) -> HyperplaneFamily:
    """q decomposable covectors in (N-1)-subgeneral position (N defaults to 𝔫).

    When N exceeds 𝔫 some members are planted in Λ^{k+1} of a proper
    subspace so that the family is not in general position.
    """
    dim = comb(n + 1, k + 1)
    N = dim if N is None else N
    if N < dim:
        raise CorpusError(f"N={N} is below the dimension 𝔫={dim}; no family can qualify")
    if q < N:
        raise CorpusError(f"subgeneral position needs q >= N, got q={q}, N={N}")
    for _ in range(budget):
        covs: list[DecomposableCovector] = []
        planted = 0
        if N > dim and n > k:
            m = rng.randint(k + 1, n)
            basis = [_random_form(rng, n, lo, hi) for _ in range(m)]
            planted = rng.randint(1, min(q, N - dim + comb(m, k + 1)))
        ok = True
        for i in range(q):
            A = _random_covector(rng, n, k, lo, hi, basis if i < planted else None)
            if A is None:
                ok = False
                break
            covs.append(A)
        if not ok:
            continue
        try:
            fam = HyperplaneFamily(tuple(covs), N)
        except ValueError:
            continue
        if is_subgeneral(fam, N - 1):
            return fam
    raise CorpusError(f"rejection budget exhausted: no family in {N - 1}-subgeneral position (q={q}, N={N})")


def generate_corpus(
    seed: int,
    count: int = 10,
    n: int = 2,
    k: int = 1,
    q: int = 5,
    deg: int = 3,
    N: int | None = None,
    grid=DEFAULT_GRID,
    budget: int = 1000,
) -> list[dict]:
    """Deterministic list of problem objects; same arguments give identical output."""
    if not 1 <= n <= 4 or not 0 <= k <= n:
        raise CorpusError(f"need 1 <= n <= 4 and 0 <= k <= n, got n={n}, k={k}")
    if q > 8 or deg > 6:
        raise CorpusError(f"corpus bounds are q <= 8 and deg <= 6, got q={q}, deg={deg}")
    rng = random.Random(seed)
    out = []
    for _ in range(count):
        for _ in range(budget):
            curve = random_curve(rng, n, deg, budget)
            family = random_family(rng, n, k, q, N, budget)
            try:
                SmtProblem.create(curve, k, family, RadialGrid(grid))
            except InvalidProblem:
                continue
            out.append(problem_to_json(curve, k, family, grid))
            break
        else:
            raise CorpusError("rejection budget exhausted: derived curve lies in a hyperplane every time")
    return out

