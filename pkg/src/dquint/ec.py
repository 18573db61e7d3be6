"""Elliptic curves over Q in general Weierstrass form, and quartic models.

    y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6

Points are immutable; the point at infinity is ``INF``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import Callable, Iterable, Optional, Sequence

from .exact import factorize, fmt_rational, parse_rational, sqrt_rational


class OffCurveError(ValueError):
    pass


@dataclass(frozen=True)
class Point:
    x: Optional[Fraction] = None
    y: Optional[Fraction] = None

    @property
    def is_infinity(self) -> bool:
        return self.x is None

    def to_json(self) -> dict:
        if self.is_infinity:
            return {"infinity": True}
        return {"x": fmt_rational(self.x), "y": fmt_rational(self.y)}

    @classmethod
    def from_json(cls, obj: dict) -> "Point":
        if obj.get("infinity"):
            return INF
        return cls(parse_rational(obj["x"]), parse_rational(obj["y"]))

    def __repr__(self) -> str:
        return "INF" if self.is_infinity else f"({self.x}, {self.y})"


INF = Point()


def P(x, y) -> Point:
    return Point(Fraction(x), Fraction(y))


@dataclass(frozen=True)
class WeierstrassCurve:
    a1: Fraction = Fraction(0)
    a2: Fraction = Fraction(0)
    a3: Fraction = Fraction(0)
    a4: Fraction = Fraction(0)
    a6: Fraction = Fraction(0)

    def __post_init__(self):
        for name in ("a1", "a2", "a3", "a4", "a6"):
            object.__setattr__(self, name, Fraction(getattr(self, name)))
        if self.discriminant == 0:
            raise ValueError(f"singular curve {self}")

    @classmethod
    def short(cls, a4, a6) -> "WeierstrassCurve":
        return cls(0, 0, 0, a4, a6)

    @property
    def ainvs(self) -> tuple[Fraction, ...]:
        return (self.a1, self.a2, self.a3, self.a4, self.a6)

    @property
    def b2(self) -> Fraction:
        return self.a1**2 + 4 * self.a2

    @property
    def b4(self) -> Fraction:
        return 2 * self.a4 + self.a1 * self.a3

    @property
    def b6(self) -> Fraction:
        return self.a3**2 + 4 * self.a6

    @property
    def b8(self) -> Fraction:
        a1, a2, a3, a4, a6 = self.ainvs
        return a1**2 * a6 + 4 * a2 * a6 - a1 * a3 * a4 + a2 * a3**2 - a4**2

    @property
    def c4(self) -> Fraction:
        return self.b2**2 - 24 * self.b4

    @property
    def c6(self) -> Fraction:
        return -self.b2**3 + 36 * self.b2 * self.b4 - 216 * self.b6

    @property
    def discriminant(self) -> Fraction:
        b2, b4, b6, b8 = self.b2, self.b4, self.b6, self.b8
        return -b2**2 * b8 - 8 * b4**3 - 27 * b6**2 + 9 * b2 * b4 * b6

    @property
    def j_invariant(self) -> Fraction:
        return self.c4**3 / self.discriminant

    def contains(self, pt: Point) -> bool:
        if pt.is_infinity:
            return True
        x, y = pt.x, pt.y
        a1, a2, a3, a4, a6 = self.ainvs
        return y * y + a1 * x * y + a3 * y == x**3 + a2 * x * x + a4 * x + a6

    def lift_x(self, x) -> list[Point]:
        """Rational points with abscissa ``x`` (zero, one or two of them)."""
        x = Fraction(x)
        a1, a2, a3, a4, a6 = self.ainvs
        lin = a1 * x + a3
        disc = lin * lin + 4 * (x**3 + a2 * x * x + a4 * x + a6)
        root = sqrt_rational(disc)
        if root is None:
            return []
        ys = sorted({(-lin + root) / 2, (-lin - root) / 2})
        return [Point(x, y) for y in ys]

    def to_json(self) -> dict:
        return {k: fmt_rational(v) for k, v in zip(("a1", "a2", "a3", "a4", "a6"), self.ainvs)}

    @classmethod
    def from_json(cls, obj: dict) -> "WeierstrassCurve":
        return cls(*(parse_rational(obj[k]) for k in ("a1", "a2", "a3", "a4", "a6")))

    def __str__(self) -> str:
        return "[{}]".format(", ".join(str(a) for a in self.ainvs))


def _check(C: WeierstrassCurve, *pts: Point) -> None:
    for pt in pts:
        if not C.contains(pt):
            raise OffCurveError(f"{pt!r} is not on {C}")


def neg(C: WeierstrassCurve, Pt: Point) -> Point:
    if Pt.is_infinity:
        return INF
    return Point(Pt.x, -Pt.y - C.a1 * Pt.x - C.a3)


def _add(C: WeierstrassCurve, P1: Point, P2: Point) -> Point:
    if P1.is_infinity:
        return P2
    if P2.is_infinity:
        return P1
    a1, a2, a3, a4, a6 = C.ainvs
    x1, y1, x2, y2 = P1.x, P1.y, P2.x, P2.y
    if x1 == x2:
        if y1 + y2 + a1 * x2 + a3 == 0:
            return INF
        lam = (3 * x1 * x1 + 2 * a2 * x1 + a4 - a1 * y1) / (2 * y1 + a1 * x1 + a3)
    else:
        lam = (y2 - y1) / (x2 - x1)
    nu = y1 - lam * x1
    x3 = lam * lam + a1 * lam - a2 - x1 - x2
    y3 = -(lam + a1) * x3 - nu - a3
    return Point(x3, y3)


def add(C: WeierstrassCurve, P1: Point, P2: Point) -> Point:
    _check(C, P1, P2)
    return _add(C, P1, P2)


def mul(C: WeierstrassCurve, k: int, Pt: Point) -> Point:
    _check(C, Pt)
    if k < 0:
        return neg(C, mul(C, -k, Pt))
    acc, base = INF, Pt
    while k:
        if k & 1:
            acc = _add(C, acc, base)
        base = _add(C, base, base)
        k >>= 1
    return acc


def order(C: WeierstrassCurve, Pt: Point, bound: int = 12) -> Optional[int]:
    """Order of ``Pt`` if it is at most ``bound``, else None."""
    _check(C, Pt)
    acc = Pt
    for n in range(1, bound + 1):
        if acc.is_infinity:
            return n
        acc = _add(C, acc, Pt)
    return None


# --- rational roots -------------------------------------------------------

def _divisors(n: int) -> list[int]:
    n = abs(n)
    divs = [1]
    for p, e in factorize(n).items():
        divs = [d * p**i for d in divs for i in range(e + 1)]
    return sorted(divs)


def rational_roots(coeffs: Sequence[Fraction | int]) -> list[Fraction]:
    """Distinct rational roots of ``sum(coeffs[i] * x**i)`` (rational root test)."""
    coeffs = [Fraction(c) for c in coeffs]
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    if len(coeffs) <= 1:
        return []
    roots: list[Fraction] = []
    if coeffs[0] == 0:
        roots.append(Fraction(0))
        while coeffs[0] == 0:
            coeffs.pop(0)
    den = math.lcm(*(c.denominator for c in coeffs))
    ints = [int(c * den) for c in coeffs]
    g = math.gcd(*ints)
    ints = [c // g for c in ints]
    if len(ints) > 1:
        for p, q in product(_divisors(ints[0]), _divisors(ints[-1])):
            for cand in (Fraction(p, q), Fraction(-p, q)):
                if cand not in roots and sum(c * cand**i for i, c in enumerate(ints)) == 0:
                    roots.append(cand)
    return sorted(roots)


def two_torsion(C: WeierstrassCurve) -> list[Point]:
    """Finite rational points of order 2, from the 2-division polynomial."""
    psi2 = [C.b6, 2 * C.b4, C.b2, 4]
    pts = []
    for x in rational_roots(psi2):
        y = -(C.a1 * x + C.a3) / 2
        pts.append(Point(x, y))
    return pts


def three_torsion(C: WeierstrassCurve) -> list[Point]:
    psi3 = [C.b8, 3 * C.b6, 3 * C.b4, C.b2, 3]
    pts = []
    for x in rational_roots(psi3):
        pts.extend(C.lift_x(x))
    return pts


@dataclass(frozen=True)
class TorsionStructure:
    """Abelian invariants ``(n1, n2)`` with ``n1 | n2`` of the found subgroup.

    ``order_bound`` is the gcd of #E(F_p) over sampled good primes p >= 3,
    an upper bound for the full torsion order; when it equals the size of
    the found subgroup the structure is certified complete.
    """

    invariants: tuple[int, ...]
    points: tuple[Point, ...]
    order_bound: int

    @property
    def order(self) -> int:
        return len(self.points)

    @property
    def certified(self) -> bool:
        return self.order == self.order_bound

    def __str__(self) -> str:
        inv = [n for n in self.invariants if n > 1]
        return " x ".join(f"Z/{n}" for n in inv) if inv else "trivial"


def _count_mod_p(C: WeierstrassCurve, p: int) -> Optional[int]:
    if any(a.denominator % p == 0 for a in C.ainvs) or C.discriminant.numerator % p == 0:
        return None
    a1, a2, a3, a4, a6 = (a.numerator * pow(a.denominator, -1, p) % p for a in C.ainvs)
    count = 1
    for x in range(p):
        rhs = (x**3 + a2 * x * x + a4 * x + a6) % p
        lin = (a1 * x + a3) % p
        for y in range(p):
            if (y * y + lin * y - rhs) % p == 0:
                count += 1
    return count


def torsion_order_bound(C: WeierstrassCurve, primes: Iterable[int] = (3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47)) -> int:
    g = 0
    for p in primes:
        n = _count_mod_p(C, p)
        if n is not None:
            g = math.gcd(g, n)
    return g


def torsion_structure(C: WeierstrassCurve, sample: Iterable[Point] = ()) -> TorsionStructure:
    """Torsion subgroup generated by 2- and 3-division points and any sample
    points of order at most 12.
    """
    gens = [pt for pt in (*two_torsion(C), *three_torsion(C)) if not pt.is_infinity]
    for pt in sample:
        if order(C, pt) is not None:
            gens.append(pt)
    group = {INF}
    frontier = [INF]
    while frontier:
        nxt = []
        for a in frontier:
            for g in gens:
                b = _add(C, a, g)
                if b not in group:
                    group.add(b)
                    nxt.append(b)
        frontier = nxt
    size = len(group)
    exponent = 1
    for pt in group:
        exponent = math.lcm(exponent, order(C, pt, bound=size))
    invariants = (size // exponent, exponent)
    pts = tuple(sorted(group, key=lambda q: (not q.is_infinity, q.x or 0, q.y or 0)))
    return TorsionStructure(invariants, pts, torsion_order_bound(C))


# --- isomorphism ---------------------------------------------------------

def _rational_root_of(q: Fraction, k: int) -> Optional[Fraction]:
    """Positive rational r with r**k == q, if any."""
    if q <= 0:
        return None
    num = _int_root(q.numerator, k)
    den = _int_root(q.denominator, k)
    if num is None or den is None:
        return None
    return Fraction(num, den)


def _int_root(n: int, k: int) -> Optional[int]:
    lo, hi = 0, 1 << (n.bit_length() // k + 1)
    while lo < hi:
        mid = (lo + hi) // 2
        if mid**k < n:
            lo = mid + 1
        else:
            hi = mid
    return lo if lo**k == n else None


def iso_check(C1: WeierstrassCurve, C2: WeierstrassCurve) -> Optional[Fraction]:
    """Scale ``w > 0`` of a Q-isomorphism C1 -> C2, or None.

    Curves are Q-isomorphic iff c4(C1) = w^4 c4(C2) and c6(C1) = w^6 c6(C2)
    for some rational w, which is the scale of the admissible change
    ``x = w^2 x' + r``, ``y = w^3 y' + ...`` carrying C1 to C2.
    """
    c4a, c6a, c4b, c6b = C1.c4, C1.c6, C2.c4, C2.c6
    if (c4a == 0) != (c4b == 0) or (c6a == 0) != (c6b == 0):
        return None
    if c4a == 0:
        return _rational_root_of(c6a / c6b, 6)
    if c6a == 0:
        return _rational_root_of(c4a / c4b, 4)
    w = sqrt_rational((c6a / c6b) / (c4a / c4b))
    if w is None or w**4 * c4b != c4a or w**6 * c6b != c6a:
        return None
    return w


def change_coordinates(C: WeierstrassCurve, u, r=0, s=0, t=0) -> WeierstrassCurve:
    """Curve in coordinates ``x = u^2 x' + r``, ``y = u^3 y' + s u^2 x' + t``."""
    u, r, s, t = map(Fraction, (u, r, s, t))
    a1, a2, a3, a4, a6 = C.ainvs
    return WeierstrassCurve(
        (a1 + 2 * s) / u,
        (a2 - s * a1 + 3 * r - s * s) / u**2,
        (a3 + r * a1 + 2 * t) / u**3,
        (a4 - s * a3 + 2 * r * a2 - (t + r * s) * a1 + 3 * r * r - 2 * s * t) / u**4,
        (a6 + r * a4 + r * r * a2 + r**3 - t * a3 - t * t - r * t * a1) / u**6,
    )


# --- quartic models --------------------------------------------------------

@dataclass(frozen=True)
class QuarticPoint:
    u: Fraction
    v: Fraction


@dataclass(frozen=True)
class QuarticCurve:
    """``v^2 = q(u)`` with ``q = coeffs[0] + coeffs[1] u + ... + coeffs[4] u^4``."""

    coeffs: tuple[Fraction, ...]

    def __post_init__(self):
        cs = tuple(Fraction(c) for c in self.coeffs)
        if len(cs) != 5 or cs[4] == 0:
            raise ValueError("a quartic needs five coefficients with nonzero leading term")
        object.__setattr__(self, "coeffs", cs)
        if _poly_disc_zero(cs):
            raise ValueError("quartic has a repeated root")

    def __call__(self, u) -> Fraction:
        u = Fraction(u)
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * u + c
        return acc

    def contains(self, pt: QuarticPoint) -> bool:
        return pt.v * pt.v == self(pt.u)

    def lift(self, u) -> list[QuarticPoint]:
        root = sqrt_rational(self(u))
        if root is None:
            return []
        return [QuarticPoint(Fraction(u), root)] + ([QuarticPoint(Fraction(u), -root)] if root else [])

    def shifted(self, u0) -> tuple[Fraction, ...]:
        """Coefficients of ``q(u0 + w)`` in w."""
        u0 = Fraction(u0)
        cs = [Fraction(0)] * 5
        for i, c in enumerate(self.coeffs):
            for k in range(i + 1):
                cs[k] += c * math.comb(i, k) * u0 ** (i - k)
        return tuple(cs)


def poly_from_roots_product(*factors: Sequence[int | Fraction], scale=1) -> tuple[Fraction, ...]:
    """Coefficients (low to high) of ``scale * prod(factors)``."""
    out = [Fraction(scale)]
    for f in factors:
        f = [Fraction(c) for c in f]
        nxt = [Fraction(0)] * (len(out) + len(f) - 1)
        for i, a in enumerate(out):
            for j, b in enumerate(f):
                nxt[i + j] += a * b
        out = nxt
    return tuple(out)


def _poly_disc_zero(cs: Sequence[Fraction]) -> bool:
    # repeated root iff gcd(q, q') is nonconstant
    f = list(cs)
    g = [i * c for i, c in enumerate(cs)][1:]
    while g and any(g):
        while g and g[-1] == 0:
            g.pop()
        if not g:
            break
        while len(f) >= len(g) and any(f):
            coef = f[-1] / g[-1]
            shift = len(f) - len(g)
            for i, c in enumerate(g):
                f[i + shift] -= coef * c
            while f and f[-1] == 0:
                f.pop()
        f, g = g, f
    return len(f) > 1


@dataclass(frozen=True)
class QuarticBridge:
    """Birational maps between a quartic with a marked point and a Weierstrass model.

    The marked point ``base`` goes to infinity. With ``w = u - base.u`` the
    quartic reads ``v^2 = a w^4 + b w^3 + c w^2 + d w + q^2`` and the
    model is ``[d/q, c - d^2/(4q^2), 2qb, -4q^2 a, a2*a4]``. A base point
    with ``v = 0`` is handled by ``w = 1/(u - u0)``, which leaves a cubic.
    """

    quartic: QuarticCurve
    base: QuarticPoint
    curve: WeierstrassCurve
    steps: tuple[str, ...] = field(default=())

    def forward(self, pt: QuarticPoint) -> Point:
        if not self.quartic.contains(pt):
            raise OffCurveError(f"{pt} not on quartic")
        if self.base.v == 0:
            return self._forward_cubic(pt)
        _, d, c, b, a = self.quartic.shifted(self.base.u)
        q = self.base.v
        w = pt.u - self.base.u
        if w == 0:
            if pt.v == q:
                return INF
            return Point(-self.curve.a2, self.curve.a1 * self.curve.a2 - self.curve.a3)
        x = (2 * q * (pt.v + q) + d * w) / w**2
        y = (4 * q * q * (pt.v + q) + 2 * q * (d * w + c * w * w) - d * d * w * w / (2 * q)) / w**3
        return Point(x, y)

    def inverse(self, pt: Point) -> QuarticPoint:
        """Quartic point over a Weierstrass point; raises ZeroDivisionError at poles."""
        if pt.is_infinity:
            return self.base
        if self.base.v == 0:
            return self._inverse_cubic(pt)
        _, d, c, b, a = self.quartic.shifted(self.base.u)
        q = self.base.v
        if pt == Point(-self.curve.a2, self.curve.a1 * self.curve.a2 - self.curve.a3):
            return QuarticPoint(self.base.u, -q)
        x = pt.x
        num = 2 * q * (x + c) - d * d / (2 * q)
        if pt.y != 0:
            w = num / pt.y
        else:
            # y = 0 forces num = 0; w is then the nonzero root of
            # (x^2/4q^2 - a) w^2 - (x d/2q^2 + b) w - num/2q = 0
            lead = x * x / (4 * q * q) - a
            if lead == 0:
                raise ZeroDivisionError("inverse map has a pole at this point")
            w = (x * d / (2 * q * q) + b) / lead
        v = -q + w * (w * pt.x - d) / (2 * q)
        return QuarticPoint(self.base.u + w, v)

    # base point with v = 0: u = u0 + 1/w turns w^4 q(u) into a cubic
    # B w^3 + C w^2 + D w + E, and (X, Y) = (B w, B W) with W = v w^2.
    def _cubic_lead(self) -> Fraction:
        # w^4 q(u0 + 1/w) = d w^3 + c w^2 + b w + a since q(u0) = 0
        return self.quartic.shifted(self.base.u)[1]

    def _forward_cubic(self, pt: QuarticPoint) -> Point:
        B = self._cubic_lead()
        if pt.u == self.base.u:
            return INF
        w = 1 / (pt.u - self.base.u)
        return Point(B * w, B * pt.v * w * w)

    def _inverse_cubic(self, pt: Point) -> QuarticPoint:
        B = self._cubic_lead()
        w = pt.x / B
        u = self.base.u + 1 / w
        return QuarticPoint(u, pt.y / (B * w * w))


def quartic_to_weierstrass(Qc: QuarticCurve, P0: QuarticPoint) -> QuarticBridge:
    if not Qc.contains(P0):
        raise OffCurveError(f"{P0} not on quartic")
    e0, d, c, b, a = Qc.shifted(P0.u)
    if P0.v != 0:
        q = P0.v
        a1 = d / q
        a2 = c - d * d / (4 * q * q)
        a3 = 2 * q * b
        a4 = -4 * q * q * a
        C = WeierstrassCurve(a1, a2, a3, a4, a2 * a4)
        steps = (f"u = {P0.u} + w", f"x = (2q(v+q) + d w)/w^2 with q = {q}")
    else:
        # B w^3 + C w^2 + D w + E with X = B w, Y = B W: Y^2 = X^3 + C X^2 + B D X + B^2 E
        B, Cc, D, E = d, c, b, a
        C = WeierstrassCurve(0, Cc, 0, B * D, B * B * E)
        steps = (f"u = {P0.u} + 1/w", "X = B w, Y = B v w^2")
    return QuarticBridge(Qc, P0, C, steps)
