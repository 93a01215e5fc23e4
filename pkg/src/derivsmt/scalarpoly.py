"""Exact Gaussian-rational scalars and univariate polynomials over them.

Everything in the package that is claimed to hold *exactly* is computed with
the two types defined here.  Floating point only shows up when roots have to
be located in the plane (``roots_with_multiplicity``), and even there the
multiplicities come from exact square-free splitting.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational
from typing import Iterable, Sequence

import numpy as np

__all__ = [
    "GaussianRational",
    "RatPoly",
    "DivisorPoint",
    "DivisorOnC",
    "as_gaussian",
    "poly_gcd",
    "poly_gcd_many",
    "squarefree_decompose",
    "ord_at",
    "roots_with_multiplicity",
    "coprime_base",
    "multiplicity_in",
    "wronskian",
]


class GaussianRational:
    """The complex number ``(a + b*i) / d`` with integers a, b and d > 0.

    The triple is kept reduced (``gcd(a, b, d) == 1``) so equality and
    hashing are structural.  Values with zero imaginary part hash like the
    equivalent ``Fraction``/``int``.
    """

    __slots__ = ("_a", "_b", "_d")

    def __init__(self, re=0, im=0):
        if isinstance(re, GaussianRational):
            if im:
                raise TypeError("imaginary part given together with a GaussianRational")
            self._a, self._b, self._d = re._a, re._b, re._d
            return
        re = _to_fraction(re)
        im = _to_fraction(im)
        d = re.denominator * im.denominator // math.gcd(re.denominator, im.denominator)
        a = re.numerator * (d // re.denominator)
        b = im.numerator * (d // im.denominator)
        g = math.gcd(math.gcd(a, b), d)
        self._a, self._b, self._d = a // g, b // g, d // g

    @classmethod
    def _make(cls, a: int, b: int, d: int) -> "GaussianRational":
        if d < 0:
            a, b, d = -a, -b, -d
        g = math.gcd(math.gcd(a, b), d)
        if g != 1:
            a, b, d = a // g, b // g, d // g
        obj = object.__new__(cls)
        obj._a, obj._b, obj._d = a, b, d
        return obj

    @property
    def re(self) -> Fraction:
        return Fraction(self._a, self._d)

    @property
    def im(self) -> Fraction:
        return Fraction(self._b, self._d)

    def is_real(self) -> bool:
        return self._b == 0

    def conjugate(self) -> "GaussianRational":
        return GaussianRational._make(self._a, -self._b, self._d)

    def norm(self) -> Fraction:
        """Squared modulus, exactly."""
        return Fraction(self._a * self._a + self._b * self._b, self._d * self._d)

    # arithmetic ------------------------------------------------------------

    def __add__(self, other):
        o = _coerce(other)
        if o is None:
            return NotImplemented
        if self._d == o._d:
            return GaussianRational._make(self._a + o._a, self._b + o._b, self._d)
        return GaussianRational._make(
            self._a * o._d + o._a * self._d, self._b * o._d + o._b * self._d, self._d * o._d
        )

    __radd__ = __add__

    def __neg__(self):
        return GaussianRational._make(-self._a, -self._b, self._d)

    def __sub__(self, other):
        o = _coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = _coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        o = _coerce(other)
        if o is None:
            return NotImplemented
        a1, b1, a2, b2 = self._a, self._b, o._a, o._b
        if b1 == 0 and b2 == 0:
            return GaussianRational._make(a1 * a2, 0, self._d * o._d)
        return GaussianRational._make(a1 * a2 - b1 * b2, a1 * b2 + a2 * b1, self._d * o._d)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = _coerce(other)
        if o is None:
            return NotImplemented
        if not o:
            raise ZeroDivisionError("division by zero GaussianRational")
        a1, b1, a2, b2 = self._a, self._b, o._a, o._b
        n2 = a2 * a2 + b2 * b2
        # (a1 + b1 i)/d1 * d2 (a2 - b2 i) / n2
        return GaussianRational._make(
            (a1 * a2 + b1 * b2) * o._d, (b1 * a2 - a1 * b2) * o._d, self._d * n2
        )

    def __rtruediv__(self, other):
        o = _coerce(other)
        if o is None:
            return NotImplemented
        return o / self

    exact_div = __truediv__

    def __pow__(self, e: int):
        if not isinstance(e, int):
            return NotImplemented
        if e < 0:
            return (ONE / self) ** (-e)
        result, base = ONE, self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    # comparison / conversion ----------------------------------------------

    def __eq__(self, other):
        o = _coerce(other)
        if o is None:
            return NotImplemented
        return self._a == o._a and self._b == o._b and self._d == o._d

    def __hash__(self):
        if self._b == 0:
            return hash(Fraction(self._a, self._d))
        return hash((self._a, self._b, self._d))

    def __bool__(self):
        return self._a != 0 or self._b != 0

    def __complex__(self):
        return complex(Fraction(self._a, self._d), Fraction(self._b, self._d))

    def __repr__(self):
        return f"GaussianRational({self.re}, {self.im})"

    def __str__(self):
        re, im = self.re, self.im
        if im == 0:
            return str(re)
        if re == 0:
            return f"{im}i"
        sign = "+" if im > 0 else "-"
        return f"({re}{sign}{abs(im)}i)"

    def to_json(self) -> dict:
        re, im = self.re, self.im
        return {
            "re": [str(re.numerator), str(re.denominator)],
            "im": [str(im.numerator), str(im.denominator)],
        }

    @classmethod
    def from_json(cls, obj) -> "GaussianRational":
        if isinstance(obj, (int, str)):
            return cls(Fraction(obj))
        re = Fraction(int(obj["re"][0]), int(obj["re"][1]))
        im_raw = obj.get("im", ["0", "1"])
        im = Fraction(int(im_raw[0]), int(im_raw[1]))
        return cls(re, im)


def _to_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, Rational)):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    raise TypeError(f"cannot use {type(x).__name__} as an exact rational")


def _coerce(x) -> GaussianRational | None:
    if isinstance(x, GaussianRational):
        return x
    if isinstance(x, int):
        return GaussianRational._make(x, 0, 1)
    if isinstance(x, Fraction):
        return GaussianRational._make(x.numerator, 0, x.denominator)
    return None


def as_gaussian(x) -> GaussianRational:
    """Coerce ints, Fractions, strings or GaussianRationals; reject floats."""
    if isinstance(x, GaussianRational):
        return x
    return GaussianRational(x)


ZERO = GaussianRational(0)
ONE = GaussianRational(1)
I = GaussianRational(0, 1)


class RatPoly:
    """Univariate polynomial with Gaussian-rational coefficients.

    ``coeffs`` is lowest degree first with the leading coefficient nonzero;
    the zero polynomial has an empty tuple and degree -1.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable = ()):
        cs = [as_gaussian(c) for c in coeffs]
        while cs and not cs[-1]:
            cs.pop()
        self.coeffs: tuple[GaussianRational, ...] = tuple(cs)

    @classmethod
    def _trusted(cls, cs: list) -> "RatPoly":
        while cs and not cs[-1]:
            cs.pop()
        obj = object.__new__(cls)
        obj.coeffs = tuple(cs)
        return obj

    @classmethod
    def const(cls, c) -> "RatPoly":
        return cls([c])

    @classmethod
    def z(cls) -> "RatPoly":
        return cls([0, 1])

    @classmethod
    def monomial(cls, deg: int, c=1) -> "RatPoly":
        return cls([0] * deg + [c])

    @classmethod
    def from_roots(cls, roots: Iterable, lead=1) -> "RatPoly":
        p = cls.const(lead)
        for r in roots:
            p = p * cls([-as_gaussian(r), 1])
        return p

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_constant(self) -> bool:
        return len(self.coeffs) <= 1

    @property
    def lead(self) -> GaussianRational:
        return self.coeffs[-1] if self.coeffs else ZERO

    def __bool__(self):
        return bool(self.coeffs)

    def __len__(self):
        return len(self.coeffs)

    def __eq__(self, other):
        if isinstance(other, RatPoly):
            return self.coeffs == other.coeffs
        o = _coerce(other)
        if o is None:
            return NotImplemented
        return self.coeffs == ((o,) if o else ())

    def __hash__(self):
        if len(self.coeffs) == 1:
            return hash(self.coeffs[0])
        return hash(self.coeffs)

    # arithmetic ------------------------------------------------------------

    def _lift(self, other) -> "RatPoly | None":
        if isinstance(other, RatPoly):
            return other
        o = _coerce(other)
        if o is None:
            return None
        return RatPoly._trusted([o])

    def __add__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        a, b = self.coeffs, o.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] = out[i] + c
        return RatPoly._trusted(out)

    __radd__ = __add__

    def __neg__(self):
        return RatPoly._trusted([-c for c in self.coeffs])

    def __sub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        if not isinstance(other, RatPoly):
            o = _coerce(other)
            if o is None:
                return NotImplemented
            if not o:
                return RatPoly._trusted([])
            return RatPoly._trusted([c * o for c in self.coeffs])
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return RatPoly._trusted([])
        out = [ZERO] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if not x:
                continue
            for j, y in enumerate(b):
                if y:
                    out[i + j] = out[i + j] + x * y
        return RatPoly._trusted(out)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if not isinstance(e, int) or e < 0:
            return NotImplemented
        result, base = RatPoly.const(1), self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __divmod__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        if o.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        dq = o.degree
        if len(rem) - 1 < dq:
            return RatPoly._trusted([]), self
        inv_lead = ONE / o.lead
        quot = [ZERO] * (len(rem) - dq)
        for i in range(len(rem) - 1, dq - 1, -1):
            c = rem[i]
            if not c:
                continue
            c = c * inv_lead
            quot[i - dq] = c
            for j, oc in enumerate(o.coeffs):
                if oc:
                    rem[i - dq + j] = rem[i - dq + j] - c * oc
        return RatPoly._trusted(quot), RatPoly._trusted(rem[:dq])

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def exact_div(self, other) -> "RatPoly":
        """Quotient of a division known to be exact; raises otherwise."""
        q, r = divmod(self, other)
        if not r.is_zero():
            raise ArithmeticError("polynomial division is not exact")
        return q

    def derivative(self, m: int = 1) -> "RatPoly":
        cs = list(self.coeffs)
        for _ in range(m):
            cs = [c * i for i, c in enumerate(cs)][1:]
        return RatPoly._trusted(cs)

    def monic(self) -> "RatPoly":
        if self.is_zero():
            return self
        inv = ONE / self.lead
        return RatPoly._trusted([c * inv for c in self.coeffs])

    def __call__(self, x):
        x = as_gaussian(x)
        acc = ZERO
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def taylor_shift(self, a) -> "RatPoly":
        """Coefficients of ``p(a + t)`` as a polynomial in t."""
        a = as_gaussian(a)
        cs = list(self.coeffs)
        n = len(cs)
        # repeated synthetic division (Horner's scheme for the shift)
        for i in range(n):
            for j in range(n - 2, i - 1, -1):
                cs[j] = cs[j] + a * cs[j + 1]
        return RatPoly._trusted(cs)

    def compose(self, other: "RatPoly") -> "RatPoly":
        acc = RatPoly._trusted([])
        for c in reversed(self.coeffs):
            acc = acc * other + c
        return acc

    def to_numpy(self) -> np.ndarray:
        """Complex coefficient array, lowest degree first."""
        return np.array([complex(c) for c in self.coeffs], dtype=complex)

    def evaluate(self, z: np.ndarray) -> np.ndarray:
        """Floating evaluation on an array of complex points."""
        cs = self.to_numpy()
        if cs.size == 0:
            return np.zeros_like(np.asarray(z, dtype=complex))
        return np.polyval(cs[::-1], z)

    def max_abs_coeff(self) -> float:
        return max((abs(complex(c)) for c in self.coeffs), default=0.0)

    def __repr__(self):
        return f"RatPoly([{', '.join(str(c) for c in self.coeffs)}])"

    def __str__(self):
        if not self.coeffs:
            return "0"
        terms = []
        for i in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[i]
            if not c:
                continue
            if i == 0:
                terms.append(str(c))
            else:
                mono = "z" if i == 1 else f"z^{i}"
                terms.append(mono if c == 1 else f"{c}*{mono}")
        return " + ".join(terms)

    def to_json(self) -> list:
        return [c.to_json() for c in self.coeffs]

    @classmethod
    def from_json(cls, obj) -> "RatPoly":
        return cls(GaussianRational.from_json(c) for c in obj)


def poly_gcd(p: RatPoly, q: RatPoly) -> RatPoly:
    """Monic gcd by the Euclidean algorithm."""
    if p.is_zero() and q.is_zero():
        raise ValueError("gcd of two zero polynomials is undefined")
    a, b = p.monic(), q.monic()
    while not b.is_zero():
        a, b = b, (a % b).monic()
    return a.monic()


def poly_gcd_many(polys: Iterable[RatPoly]) -> RatPoly:
    g = RatPoly()
    for p in polys:
        if p.is_zero():
            continue
        g = p.monic() if g.is_zero() else poly_gcd(g, p)
        if g.degree == 0:
            break
    if g.is_zero():
        raise ValueError("gcd of only zero polynomials is undefined")
    return g


def squarefree_decompose(p: RatPoly) -> list[tuple[RatPoly, int]]:
    """Yun's algorithm: ``p = c * prod(f_j ** m_j)`` with monic square-free,
    pairwise coprime ``f_j`` and strictly increasing ``m_j``."""
    if p.is_zero():
        raise ValueError("square-free decomposition of the zero polynomial")
    if p.degree == 0:
        return []
    dp = p.derivative()
    a = poly_gcd(p, dp)
    b = p.exact_div(a)
    c = dp.exact_div(a)
    d = c - b.derivative()
    out = []
    i = 1
    while b.degree > 0:
        a = poly_gcd(b, d) if not d.is_zero() else b.monic()
        b = b.exact_div(a)
        c = d.exact_div(a)
        d = c - b.derivative()
        if a.degree > 0:
            out.append((a.monic(), i))
        i += 1
    return out


def ord_at(p: RatPoly, a) -> int:
    """Vanishing order of ``p`` at the exact point ``a``."""
    if p.is_zero():
        raise ValueError("order of the zero polynomial is infinite")
    a = as_gaussian(a)
    shifted = p.taylor_shift(a)
    for i, c in enumerate(shifted.coeffs):
        if c:
            return i
    raise AssertionError("unreachable: nonzero polynomial with all-zero shift")


def coprime_base(polys: Iterable[RatPoly]) -> list[RatPoly]:
    """Monic square-free, pairwise coprime polynomials whose roots are exactly
    the roots of the inputs.

    Every input factors as a product of powers of base elements, so each
    root of a given base element has the same order in every input.
    """
    pending = []
    for p in polys:
        if p.is_zero():
            raise ValueError("zero polynomial has no finite divisor")
        pending.extend(f for f, _ in squarefree_decompose(p))
    base: list[RatPoly] = []
    while pending:
        f = pending.pop()
        if f.degree <= 0:
            continue
        for i, b in enumerate(base):
            g = poly_gcd(f, b)
            if g.degree > 0:
                del base[i]
                pending.extend([g, f.exact_div(g), b.exact_div(g)])
                break
        else:
            base.append(f.monic())
    base.sort(key=lambda b: (b.degree, [(c.re, c.im) for c in b.coeffs]))
    return base


def multiplicity_in(p: RatPoly, factor: RatPoly) -> int:
    """Largest m with ``factor**m`` dividing ``p`` (factor nonconstant)."""
    if p.is_zero():
        raise ValueError("multiplicity in the zero polynomial is infinite")
    if factor.degree <= 0:
        raise ValueError("factor must be nonconstant")
    m = 0
    while True:
        q, r = divmod(p, factor)
        if not r.is_zero():
            return m
        p, m = q, m + 1


@dataclass(frozen=True)
class DivisorPoint:
    location: complex
    multiplicity: int
    exact: GaussianRational | None = None


@dataclass(frozen=True)
class DivisorOnC:
    """Finite effective divisor on C with exact multiplicities."""

    points: tuple[DivisorPoint, ...] = ()

    def __post_init__(self):
        for pt in self.points:
            if pt.multiplicity < 1:
                raise ValueError("divisor multiplicities must be positive")

    @property
    def degree(self) -> int:
        return sum(pt.multiplicity for pt in self.points)

    def is_empty(self) -> bool:
        return not self.points

    def min_multiplicity(self) -> int | None:
        return min((pt.multiplicity for pt in self.points), default=None)

    def as_dict(self) -> dict:
        return {pt.location: pt.multiplicity for pt in self.points}

    def __add__(self, other: "DivisorOnC") -> "DivisorOnC":
        return DivisorOnC(self.points + other.points)

    def __len__(self):
        return len(self.points)


def _rationalize(z: complex, factor: RatPoly) -> GaussianRational | None:
    for limit in (1, 12, 10**4):
        cand = GaussianRational(
            Fraction(z.real).limit_denominator(limit), Fraction(z.imag).limit_denominator(limit)
        )
        if not factor(cand):
            return cand
    return None


def _isolate(factor: RatPoly) -> list[complex]:
    """Numeric roots of a square-free polynomial, polished by Newton steps."""
    cs = factor.to_numpy()
    roots = np.roots(cs[::-1])
    dcs = np.polyder(cs[::-1])
    polished = []
    for z in roots:
        for _ in range(8):
            dv = np.polyval(dcs, z)
            if dv == 0:
                break
            step = np.polyval(cs[::-1], z) / dv
            z = z - step
            if abs(step) <= 1e-16 * max(1.0, abs(z)):
                break
        polished.append(complex(z))
    scale = max(1.0, max((abs(z) for z in polished), default=1.0))
    for i in range(len(polished)):
        for j in range(i):
            if abs(polished[i] - polished[j]) < 1e-9 * scale:
                return _isolate_mp(factor)
    return polished


def _isolate_mp(factor: RatPoly) -> list[complex]:
    import mpmath

    coeffs = [mpmath.mpc(float(c.re), float(c.im)) for c in reversed(factor.coeffs)]
    with mpmath.workdps(50):
        roots = mpmath.polyroots(coeffs, maxsteps=200, extraprec=200)
    return [complex(r) for r in roots]


def roots_with_multiplicity(p: RatPoly) -> DivisorOnC:
    """Zero divisor of ``p``: exact multiplicities, numerically isolated points.

    A root is flagged exact when a small-denominator Gaussian rational near
    the numeric location is verified to be an exact root.
    """
    if p.is_zero():
        raise ValueError("zero polynomial has no finite divisor")
    points = []
    for factor, mult in squarefree_decompose(p):
        if factor.degree == 1:
            root = -factor.coeffs[0] / factor.coeffs[1]
            points.append(DivisorPoint(complex(root), mult, root))
            continue
        for z in _isolate(factor):
            points.append(DivisorPoint(z, mult, _rationalize(z, factor)))
    points.sort(key=lambda pt: (abs(pt.location), pt.location.real, pt.location.imag))
    return DivisorOnC(tuple(points))


def wronskian(polys: Sequence[RatPoly]) -> RatPoly:
    """``det(p_j^{(i)})`` with rows the derivative orders 0..k."""
    from .matrix import det

    if not polys:
        raise ValueError("Wronskian of an empty list")
    k = len(polys)
    rows = [[p.derivative(i) for p in polys] for i in range(k)]
    result = det(rows)
    return result if isinstance(result, RatPoly) else RatPoly.const(result)
