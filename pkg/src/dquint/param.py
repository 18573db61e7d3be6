"""Parametrization of exotic quintuples by rational points on the surface S.

The quadruple with abcd = 1 comes from (r, s, t) through
``x = (t^2-1)/(2t)``, ``y = (s^2-1)/(2s)``, ``z = (r^2-1)/(2r)`` and
``a = xyz, b = x/(yz), c = y/(xz), d = z/(xy)``. The fifth element is the
common regular extension e1 of {a,b,d} and e2 of {a,c,d}, forced equal by
fixing ``s`` as a function of ``(r, t)``.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Optional, Sequence

from .dtuples import RationalTuple, is_exotic_labelled
from .exact import fmt_rational, parse_rational, sqrt_rational


class DegeneratePoint(ValueError):
    """The map is undefined at a point or yields a degenerate tuple."""

    def __init__(self, reason: str):
        super().__init__(reason)
        self.reason = reason


class PoleError(DegeneratePoint):
    pass


def _q(v) -> Fraction:
    return v if isinstance(v, Fraction) else Fraction(v)


@dataclass(frozen=True)
class RSTTriple:
    r: Fraction
    s: Fraction
    t: Fraction

    def __post_init__(self):
        for name in ("r", "s", "t"):
            object.__setattr__(self, name, _q(getattr(self, name)))
        if not is_nondegenerate(self.r, self.s, self.t):
            raise DegeneratePoint("r*s*t*(r^2-1)*(s^2-1)*(t^2-1) vanishes")

    def astuple(self) -> tuple[Fraction, Fraction, Fraction]:
        return (self.r, self.s, self.t)


def is_nondegenerate(r, s, t) -> bool:
    return all(v != 0 and v * v != 1 for v in (r, s, t))


@dataclass(frozen=True)
class SurfacePoint:
    """Rational point (r, t, y) with ``y^2 = surface_rhs(r, t)``."""

    r: Fraction
    t: Fraction
    y: Fraction

    def __post_init__(self):
        for name in ("r", "t", "y"):
            object.__setattr__(self, name, _q(getattr(self, name)))
        if self.y * self.y != surface_rhs(self.r, self.t):
            raise ValueError("point does not lie on S")

    @classmethod
    def lift(cls, r, t) -> Optional["SurfacePoint"]:
        """Lift (r, t) to S with the nonnegative y, if the fibre is rational."""
        y = sqrt_rational(surface_rhs(r, t))
        return None if y is None else cls(r, t, y)

    def to_json(self) -> dict:
        return {"r": fmt_rational(self.r), "t": fmt_rational(self.t), "y": fmt_rational(self.y)}

    @classmethod
    def from_json(cls, obj: dict) -> "SurfacePoint":
        return cls(parse_rational(obj["r"]), parse_rational(obj["t"]), parse_rational(obj["y"]))


def x_of(t) -> Fraction:
    t = _q(t)
    if t == 0:
        raise PoleError("x_of undefined at t = 0")
    return (t * t - 1) / (2 * t)


def quad_from_rst(p: RSTTriple | Sequence) -> tuple[Fraction, Fraction, Fraction, Fraction]:
    r, s, t = p.astuple() if isinstance(p, RSTTriple) else RSTTriple(*p).astuple()
    x, y, z = x_of(t), x_of(s), x_of(r)
    return x * y * z, x / (y * z), y / (x * z), z / (x * y)


def s_of(r, t) -> Fraction:
    """Solve the regularity relation 1-r^2-s-r^2 s-t-r^2 t-st+r^2 st = 0 for s."""
    r, t = _q(r), _q(t)
    r2 = r * r
    den = -1 - r2 - t + r2 * t
    if den == 0:
        raise PoleError("s_of has a pole: r^2 = (1+t)/(t-1)")
    return (-1 + r2 + t + r2 * t) / den


def regularity_relation(r, s, t) -> Fraction:
    r, s, t = _q(r), _q(s), _q(t)
    r2 = r * r
    return 1 - r2 - s - r2 * s - t - r2 * t - s * t + r2 * s * t


def _e_denominator(r, s, t) -> Fraction:
    return 8 * (r - 1) * r * (r + 1) * (s - 1) * s * (s + 1) * (t - 1) * t * (t + 1)


def e1_factors(r, s, t) -> tuple[Fraction, Fraction, Fraction, Fraction]:
    rs, rt, st, rst = r * s, r * t, s * t, r * s * t
    return (
        -1 - r + s - rs - t - rt - st + rst,
        1 + r - s + rs - t - rt - st + rst,
        1 - r - s - rs + t - rt + st + rst,
        -1 + r + s + rs + t - rt + st + rst,
    )


def e2_factors(r, s, t) -> tuple[Fraction, Fraction, Fraction, Fraction]:
    rs, rt, st, rst = r * s, r * t, s * t, r * s * t
    return (
        -1 - r - s - rs + t - rt - st + rst,
        1 + r - s - rs - t + rt - st + rst,
        1 - r + s - rs - t - rt + st + rst,
        -1 + r + s - rs + t + rt + st + rst,
    )


def _e_from(factors: Callable, p) -> Fraction:
    r, s, t = p.astuple() if isinstance(p, RSTTriple) else RSTTriple(*p).astuple()
    f1, f2, f3, f4 = factors(r, s, t)
    return f1 * f2 * f3 * f4 / _e_denominator(r, s, t)


def e1_of(p: RSTTriple | Sequence) -> Fraction:
    """Regular extension of {a, b, d}."""
    return _e_from(e1_factors, p)


def e2_of(p: RSTTriple | Sequence) -> Fraction:
    """Regular extension of {a, c, d}."""
    return _e_from(e2_factors, p)


def e1_eq_e2_condition(r, s, t) -> Fraction:
    r, s, t = _q(r), _q(s), _q(t)
    r2 = r * r
    fourth = -1 - r2 + s - r2 * s + t - r2 * t + s * t + r2 * s * t
    return (s - t) * (1 + s * t) * regularity_relation(r, s, t) * fourth


def branch_curves(r, t) -> tuple[Fraction, Fraction, Fraction, Fraction]:
    """Values of the four branch curves C1..C4 of the projection S -> (r, t)."""
    r, t = _q(r), _q(t)
    r2, t2 = r * r, t * t
    return (
        1 + r - 2 * r2 * t - t2 + r * t2,
        -1 + r + 2 * r2 * t + t2 + r * t2,
        -r - r2 - 2 * t - r * t2 + r2 * t2,
        r - r2 - 2 * t + r * t2 + r2 * t2,
    )


def surface_rhs(r, t) -> Fraction:
    c1, c2, c3, c4 = branch_curves(r, t)
    return c1 * c2 * c3 * c4


def quintuple_at(r, t) -> tuple[Fraction, ...]:
    """(a, b, c, d, e1) at s = s_of(r, t), with no square or degeneracy check."""
    r, t = _q(r), _q(t)
    s = s_of(r, t)
    if not is_nondegenerate(r, s, t):
        raise PoleError("r*s*t*(r^2-1)*(s^2-1)*(t^2-1) vanishes")
    p = RSTTriple(r, s, t)
    return (*quad_from_rst(p), e1_of(p))


def p_map(sp: SurfacePoint) -> RationalTuple:
    """Map a point of S to its exotic quintuple (a, b, c, d, e).

    Raises :class:`DegeneratePoint` naming the failed condition.
    """
    elems = quintuple_at(sp.r, sp.t)
    if 0 in elems:
        raise DegeneratePoint("zero element")
    if len(set(elems)) != 5:
        raise DegeneratePoint("duplicate elements")
    q = RationalTuple(elems)
    if not is_exotic_labelled(q):
        # unreachable for genuine points of S; kept as a transcription guard
        raise DegeneratePoint("image fails exotic certification")
    return q


# --- symmetries -----------------------------------------------------------

def _inv(v: Fraction, name: str) -> Fraction:
    if v == 0:
        raise PoleError(f"{name} has a pole")
    return 1 / v


def sigma1(r, s, t):
    return _inv(r, "sigma1"), s, _inv(t, "sigma1")


def sigma2(r, s, t):
    return _inv(r, "sigma2"), s, -t


def sigma3(r, s, t):
    return -_inv(r, "sigma3"), s, -_inv(t, "sigma3")


def tau1(r, t):
    return -r, t


def tau2(r, t):
    return _inv(r, "tau2"), _inv(t, "tau2")


def tau3(r, t):
    if t == -1:
        raise PoleError("tau3 has a pole at t = -1")
    return -r, (t - 1) / (t + 1)


GENERATORS: dict[str, Callable] = {
    "sigma1": sigma1,
    "sigma2": sigma2,
    "sigma3": sigma3,
    "tau1": tau1,
    "tau2": tau2,
    "tau3": tau3,
}
_ARITY = {"sigma1": 3, "sigma2": 3, "sigma3": 3, "tau1": 2, "tau2": 2, "tau3": 2}


@dataclass(frozen=True)
class SymmetryElement:
    """A word in the generators, read as a composition (rightmost applied first).

    ``SymmetryElement(("tau2", "tau3", "tau3"))`` is tau2 o tau3 o tau3.
    """

    word: tuple[str, ...] = ()

    def __post_init__(self):
        arities = {_ARITY[g] for g in self.word}
        if len(arities) > 1:
            raise ValueError("cannot mix (r,s,t) and (r,t) generators in one word")

    @property
    def arity(self) -> Optional[int]:
        return _ARITY[self.word[0]] if self.word else None

    def __matmul__(self, other: "SymmetryElement") -> "SymmetryElement":
        return SymmetryElement(self.word + other.word)

    def __str__(self) -> str:
        return " o ".join(self.word) if self.word else "id"


def apply_symmetry(g: SymmetryElement | str, point: Sequence) -> tuple[Fraction, ...]:
    if isinstance(g, str):
        g = SymmetryElement((g,))
    pt = tuple(_q(v) for v in point)
    if g.arity is not None and g.arity != len(pt):
        raise ValueError(f"{g} acts on {g.arity}-tuples, got {len(pt)}")
    for name in reversed(g.word):
        pt = GENERATORS[name](*pt)
    return pt


def random_rational(rng: random.Random, height: int = 50, nonzero: bool = True) -> Fraction:
    while True:
        q = Fraction(rng.randint(-height, height), rng.randint(1, height))
        if q != 0 or not nonzero:
            return q


def sample_points(n: int, seed: int = 0, height: int = 10**6) -> list[tuple[Fraction, Fraction]]:
    rng = random.Random(seed)
    return [(random_rational(rng, height), random_rational(rng, height)) for _ in range(n)]


def enumerate_group_G(samples: int = 25, seed: int = 2021) -> list[SymmetryElement]:
    """Close {tau1, tau2, tau3} under composition.

    Two words are the same map when they agree at every sample point;
    words are found breadth-first, so each element keeps its shortest word.
    """
    points = sample_points(samples, seed)
    gens = [SymmetryElement((g,)) for g in ("tau1", "tau2", "tau3")]

    def signature(g: SymmetryElement):
        return tuple(apply_symmetry(g, pt) for pt in points)

    identity = SymmetryElement()
    seen = {signature(identity): identity}
    frontier = [identity]
    while frontier:
        nxt = []
        for elem in frontier:
            for gen in gens:
                cand = gen @ elem
                sig = signature(cand)
                if sig not in seen:
                    seen[sig] = cand
                    nxt.append(cand)
        frontier = nxt
    return list(seen.values())
