"""The three genus-one curve families on S and the quintuples they produce.

Each family is a rational curve D in the (r, t)-plane with a parametrization
``u -> (r, t)``; pulling S back along it gives a quartic ``v^2 = q(u)``.
Multiples of a generator on the Weierstrass model of that quartic give
infinitely many points of S, hence infinitely many exotic quintuples.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Iterator, Optional, Sequence

from . import ec
from .dtuples import (
    IntegerSquareQuintuple,
    PreconditionError,
    RationalTuple,
    all_products_square,
    clear_to_square_quintuple,
    exotic_ordering,
    is_dn_tuple,
)
from .exact import fmt_rational, sqrt_rational
from .param import DegeneratePoint, SurfacePoint, p_map, surface_rhs

log = logging.getLogger(__name__)

F = Fraction


class PsiPole(DegeneratePoint):
    pass


def _psi1(u: Fraction) -> tuple[Fraction, Fraction]:
    den_r = 3 * u * u + 8 * u + 3
    den_t = (u + 1) * (3 * u + 1)
    if den_r == 0 or den_t == 0:
        raise PsiPole(f"psi1 has a pole at u = {u}")
    return -(3 * u * u + 4 * u - 1) / den_r, 2 * u / den_t


def _psi2(u: Fraction) -> tuple[Fraction, Fraction]:
    den_r = (u + 1) * (u + 2)
    den_t = u * (u + 2)
    if den_r == 0 or den_t == 0:
        raise PsiPole(f"psi2 has a pole at u = {u}")
    return u * (2 * u + 1) / den_r, -(u * u - 2 * u - 2) / den_t


def _psi3(u: Fraction) -> tuple[Fraction, Fraction]:
    den_r = u * u + u + 1
    den_t = (u - 1) * (u + 1)
    if den_r == 0 or den_t == 0:
        raise PsiPole(f"psi3 has a pole at u = {u}")
    return -(2 * u + 1) / den_r, (u * u + 4 * u + 1) / den_t


def _d1(r, t):
    return r*r*t*t - 4*r*r*t - 3*r*r - 2*r*t*t - 2*r - 3*t*t - 4*t + 1


def _d2(r, t):
    return r*r*t - r*r + 2*r*t*t + 2*r - t - 1


def _d3(r, t):
    return r*r*t*t + 3*r*r - t*t + 2*t - 1


@dataclass(frozen=True)
class FamilyDescriptor:
    """One curve family: plane curve, parametrization, quartic, model, generator.

    ``base`` is the quartic point sent to infinity on the derived model and
    ``stabilizer`` the element of G fixing the plane curve.
    """

    id: str
    psi: Callable[[Fraction], tuple[Fraction, Fraction]]
    plane_curve: Callable[[Fraction, Fraction], Fraction]
    quartic: ec.QuarticCurve
    curve: ec.WeierstrassCurve
    generator_u: Fraction
    base: ec.QuarticPoint
    stabilizer: tuple[str, ...]

    @property
    def bridge(self) -> ec.QuarticBridge:
        return _bridge(self.id)

    def generator_point(self, sign: int = 1) -> ec.QuarticPoint:
        v = sqrt_rational(self.quartic(self.generator_u))
        if v is None:
            raise ValueError(f"{self.id}: generator does not lie on the quartic")
        return ec.QuarticPoint(self.generator_u, v if sign >= 0 else -v)

    def generator(self, sign: int = 1) -> ec.Point:
        return self.bridge.forward(self.generator_point(sign))


FAMILIES: dict[str, FamilyDescriptor] = {
    "D1": FamilyDescriptor(
        id="D1",
        psi=_psi1,
        plane_curve=_d1,
        quartic=ec.QuarticCurve(ec.poly_from_roots_product((3, 10, 5), (-1, 18, 9), scale=-192)),
        curve=ec.WeierstrassCurve.short(-2892, -59024),
        generator_u=F(-60, 233),
        base=ec.QuarticPoint(F(0), F(24)),
        stabilizer=("tau2",),
    ),
    "D2": FamilyDescriptor(
        id="D2",
        psi=_psi2,
        plane_curve=_d2,
        quartic=ec.QuarticCurve(ec.poly_from_roots_product((10, 16, 1), (-2, 0, 3), scale=48)),
        curve=ec.WeierstrassCurve.short(-876, -9520),
        generator_u=F(113, 23),
        base=ec.QuarticPoint(F(1), F(36)),
        stabilizer=("tau2", "tau3", "tau3"),
    ),
    "D3": FamilyDescriptor(
        id="D3",
        psi=_psi3,
        plane_curve=_d3,
        quartic=ec.QuarticCurve(ec.poly_from_roots_product((-1, -3, 1), (3, 5, 1), scale=-48)),
        curve=ec.WeierstrassCurve(1, -1, 1, -41, 96),
        generator_u=F(-4),
        base=ec.QuarticPoint(F(3), F(36)),
        stabilizer=("tau1",),
    ),
}

_BRIDGES: dict[str, ec.QuarticBridge] = {}


def _bridge(fid: str) -> ec.QuarticBridge:
    if fid not in _BRIDGES:
        f = FAMILIES[fid]
        _BRIDGES[fid] = ec.quartic_to_weierstrass(f.quartic, f.base)
    return _BRIDGES[fid]


def get_family(fid: str) -> FamilyDescriptor:
    return FAMILIES[fid.upper()]


def psi_eval(f: FamilyDescriptor, u) -> tuple[Fraction, Fraction]:
    return f.psi(Fraction(u))


def family_quartic_value(f: FamilyDescriptor, u) -> Fraction:
    return f.quartic(Fraction(u))


@dataclass
class GenerationRecord:
    family: str
    k: int
    torsion: Optional[int] = None
    u: Optional[Fraction] = None
    v: Optional[Fraction] = None
    r: Optional[Fraction] = None
    t: Optional[Fraction] = None
    y: Optional[Fraction] = None
    quintuple: Optional[RationalTuple] = None
    cleared: Optional[IntegerSquareQuintuple] = None
    status: str = "ok"
    reason: Optional[str] = None
    checks: dict[str, bool] = field(default_factory=dict)

    @property
    def verified(self) -> bool:
        return self.status == "ok" and all(self.checks.values())

    def to_json(self) -> dict:
        def q(x):
            return None if x is None else fmt_rational(x)

        out = {
            "family": self.family,
            "k": self.k,
            "torsion": self.torsion,
            "status": self.status,
            "u": q(self.u),
            "v": q(self.v),
            "r": q(self.r),
            "t": q(self.t),
            "y": q(self.y),
            "quintuple": None if self.quintuple is None else [fmt_rational(e) for e in self.quintuple],
            "roots": None if self.cleared is None else [str(s) for s in self.cleared.roots],
            "n": None if self.cleared is None else str(self.cleared.n),
        }
        if self.cleared is not None and not self.cleared.minimal:
            out["n_minimal"] = False
        if self.reason:
            out["reason"] = self.reason
        if self.checks:
            out["checks"] = self.checks
        return out


def record_from_point(f: FamilyDescriptor, k: int, pt: ec.Point, torsion: Optional[int] = None) -> GenerationRecord:
    """Push one Weierstrass point through the pipeline, re-verifying each stage."""
    rec = GenerationRecord(family=f.id, k=k, torsion=torsion)
    try:
        qp = f.bridge.inverse(pt)
    except ZeroDivisionError:
        rec.status, rec.reason = "degenerate", "inverse map to the quartic has a pole"
        return rec
    rec.u, rec.v = qp.u, qp.v
    rec.checks["on_quartic"] = f.quartic.contains(qp)
    try:
        rec.r, rec.t = psi_eval(f, qp.u)
    except DegeneratePoint as exc:
        rec.status, rec.reason = "degenerate", exc.reason
        return rec
    rec.checks["on_plane_curve"] = f.plane_curve(rec.r, rec.t) == 0
    sp = SurfacePoint.lift(rec.r, rec.t)
    rec.checks["surface_square"] = sp is not None
    if sp is None:
        rec.status = "failed"
        return rec
    rec.y = sp.y
    try:
        rec.quintuple = p_map(sp)
    except DegeneratePoint as exc:
        rec.status, rec.reason = "degenerate", exc.reason
        return rec
    rec.checks["exotic"] = exotic_ordering(rec.quintuple) is not None
    try:
        rec.cleared = clear_to_square_quintuple(rec.quintuple)
    except PreconditionError as exc:
        rec.status, rec.reason = "failed", str(exc)
        return rec
    elems = rec.cleared.elements
    rec.checks["distinct_squares"] = 0 not in elems and len(set(elems)) == 5
    rec.checks["dn"] = is_dn_tuple(elems, rec.cleared.n)
    rec.checks["d0"] = is_dn_tuple(elems, 0)
    if not all(rec.checks.values()):
        rec.status = "failed"
    return rec


def generate(
    f: FamilyDescriptor,
    k_range: Iterable[int],
    torsion_translates: bool = False,
    sign: int = 1,
) -> list[GenerationRecord]:
    """Records for ``k*G`` (and ``k*G + T`` over 2-torsion T when asked)."""
    ks = list(k_range)
    if not ks or any(k == 0 for k in ks):
        raise ValueError("multiples must be a nonempty list of nonzero integers")
    C = f.bridge.curve
    G = f.generator(sign)
    torsion = ec.two_torsion(C) if torsion_translates else []
    records = []
    for k in ks:
        kG = ec.mul(C, k, G)
        records.append(record_from_point(f, k, kG))
        for i, T in enumerate(torsion):
            records.append(record_from_point(f, k, ec.add(C, kG, T), torsion=i))
        log.debug("%s k=%d done", f.id, k)
    return records


def iter_generate(fids: Sequence[str], ks: Sequence[int], **kw) -> Iterator[GenerationRecord]:
    for fid in fids:
        yield from generate(get_family(fid), ks, **kw)


# --- rational Diophantine quadruples with square elements -------------------

def quadruple_family_sv(s, v) -> tuple[Fraction, Fraction, Fraction, Fraction]:
    """Two-parameter family of D(1)-quadruples whose elements are squares."""
    s, v = Fraction(s), Fraction(v)
    v2 = v * v
    p = 2 * s**3 - 2 * s + v2
    m = -4 * s**3 + 4 * s + v2
    h = -(s**3) + s + v2
    dens = (4 * p * p, 4 * (s + 1) ** 2 * (s - 1) ** 2 * h * h, 9 * v2 * s * s, v2 * m * m)
    if any(dd == 0 for dd in dens):
        raise PreconditionError("denominator vanishes")
    a = 9 * (s - 1) ** 2 * (s + 1) ** 2 * v2 / dens[0]
    b = v2 * m * m / dens[1]
    c = p * p / dens[2]
    d = 16 * h * h * s * s / dens[3]
    if 0 in (a, b, c, d):
        raise PreconditionError("zero element")
    return a, b, c, d


# --- tuples printed in the literature ------------------------------------

M_ROOTS = (225, 2548, 286, 1408, 819)
M_DEN = 480480

STATIC_TUPLES: dict[str, tuple[Fraction, ...]] = {
    "diophantus": (F(1, 16), F(33, 16), F(17, 4), F(105, 16)),
    "fermat": (F(1), F(3), F(8), F(120)),
    "euler": (F(1), F(3), F(8), F(120), F(777480, 8288641)),
    "gibbs": (F(11, 192), F(35, 192), F(155, 27), F(512, 27), F(1235, 48), F(180873, 16)),
    "M": tuple(F(x * x, M_DEN) for x in M_ROOTS),
    "D1_generator": (
        F(-29529940110878678717653, 420081952495961042800800),
        F(-3041992513146972959, 115488479640779256),
        F(-351416293757343837, 2249352029178441082),
        F(-1776863948138083954777600, 514004191012768208630559),
        F(-927643283361539913482847, 141804790226710724159200),
    ),
    "D2_generator": (
        F(-482493852225, 293535838544),
        F(-1058592509345792, 1212259417081713),
        F(-1207470487056449, 74793264945984),
        F(-18858398366873, 437001310622800),
        F(-695331110026639, 116388239242275),
    ),
    "D3_generator": (F(-5632, 1365), F(-4459, 330), F(-143, 840), F(-3375, 32032), F(-2457, 1760)),
    "square_quadruple": (F(18, 77) ** 2, F(55, 96) ** 2, F(56, 15) ** 2, F(340, 77) ** 2),
}


@dataclass
class StaticCheck:
    name: str
    passed: bool
    detail: str


def verify_static_examples() -> list[StaticCheck]:
    out = []

    def add(name, ok, detail):
        out.append(StaticCheck(name, bool(ok), detail))

    for name in ("diophantus", "fermat", "euler", "gibbs"):
        tup = STATIC_TUPLES[name]
        add(name, is_dn_tuple(tup, 1), f"D(1) {len(tup)}-tuple")
    m = STATIC_TUPLES["M"]
    add("M", exotic_ordering(m) is not None, "exotic D(1) quintuple")
    m_int = tuple(x * x for x in M_ROOTS)
    add("M_integer", is_dn_tuple(m_int, M_DEN**2) and is_dn_tuple(m_int, 0), "D(480480^2) and D(0)")
    for name in ("D1_generator", "D2_generator", "D3_generator"):
        add(name, exotic_ordering(STATIC_TUPLES[name]) is not None, "exotic D(1) quintuple")
    sq = STATIC_TUPLES["square_quadruple"]
    prod = sq[0] * sq[1] * sq[2] * sq[3]
    add(
        "square_quadruple",
        is_dn_tuple(sq, 1) and all_products_square(sq) and all(sqrt_rational(e) is not None for e in sq) and prod != 1,
        "D(1), square elements, abcd != 1",
    )
    return out


# --- low-height scan of S -------------------------------------------------------

def rationals_by_height(H: int) -> list[Fraction]:
    """All rationals p/q with max(|p|, q) <= H, ordered by height then value.

    Walks the Stern-Brocot tree, pruning subtrees whose mediants exceed H.
    """
    pos = []
    stack = [((0, 1), (1, 0))]
    while stack:
        (a, b), (c, d) = stack.pop()
        p, q = a + c, b + d
        if max(p, q) > H:
            continue
        pos.append(Fraction(p, q))
        stack.append(((a, b), (p, q)))
        stack.append(((p, q), (c, d)))
    out = [Fraction(0)] + pos + [-x for x in pos]

    def key(x: Fraction):
        return (max(abs(x.numerator), x.denominator), x.denominator, abs(x), x < 0)

    return sorted(out, key=key)


@dataclass
class ScanHit:
    point: SurfacePoint
    status: str
    reason: Optional[str] = None
    quintuple: Optional[RationalTuple] = None

    def to_json(self) -> dict:
        out = {**self.point.to_json(), "status": self.status}
        if self.reason:
            out["reason"] = self.reason
        if self.quintuple is not None:
            out["quintuple"] = [fmt_rational(e) for e in self.quintuple]
        return out


def classify(sp: SurfacePoint) -> ScanHit:
    try:
        q = p_map(sp)
    except DegeneratePoint as exc:
        return ScanHit(sp, "degenerate", exc.reason)
    except PreconditionError as exc:
        return ScanHit(sp, "degenerate", str(exc))
    return ScanHit(sp, "exotic", quintuple=q)


def scan_surface(H: int) -> Iterator[ScanHit]:
    """Points (r, t) of height at most H whose fibre on S is rational."""
    if H < 1:
        raise ValueError("height bound must be at least 1")
    rats = rationals_by_height(H)
    for r in rats:
        for t in rats:
            sp = SurfacePoint.lift(r, t)
            if sp is not None:
                yield classify(sp)
