"""Regression and identity checks runnable without pytest (``dquint selftest``)."""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

from . import ec, families, param
from .dtuples import (
    PreconditionError,
    clear_to_square_quintuple,
    exotic_ordering,
    is_dn_tuple,
    is_regular_quadruple,
    regular_extensions,
)
from .exact import sqrt_rational


@dataclass
class CheckResult:
    name: str
    passed: bool
    detail: str = ""


def random_rt(rng: random.Random, height: int = 40) -> tuple[Fraction, Fraction, Fraction]:
    """Random (r, s, t) with s = s_of(r, t), away from every pole and degeneracy."""
    while True:
        r = param.random_rational(rng, height)
        t = param.random_rational(rng, height)
        try:
            s = param.s_of(r, t)
        except param.PoleError:
            continue
        if param.is_nondegenerate(r, s, t) and t != -1:
            return r, s, t


def random_rst(rng: random.Random, height: int = 40) -> tuple[Fraction, Fraction, Fraction]:
    """Random nondegenerate (r, s, t) with s free."""
    while True:
        r, s, t = (param.random_rational(rng, height) for _ in range(3))
        if param.is_nondegenerate(r, s, t):
            return r, s, t


def check_e1_oracle(rng: random.Random, n: int = 100) -> bool:
    for _ in range(n):
        p = random_rst(rng)
        a, b, c, d = param.quad_from_rst(p)
        if param.e1_of(p) not in regular_extensions(a, b, d):
            return False
        if param.e2_of(p) not in regular_extensions(a, c, d):
            return False
    return True


def check_e1_equals_e2(rng: random.Random, n: int = 100) -> bool:
    for _ in range(n):
        p = random_rt(rng)
        if param.e1_of(p) != param.e2_of(p):
            return False
    return True


def check_abcd(rng: random.Random, n: int = 100) -> bool:
    for _ in range(n):
        a, b, c, d = param.quad_from_rst(random_rst(rng))
        if a * b * c * d != 1 or not is_dn_tuple((a, b, c, d), 1) or not is_dn_tuple((a, b, c, d), 0):
            return False
    return True


def check_sigma_invariance(rng: random.Random, n: int = 100) -> bool:
    for _ in range(n):
        p = random_rst(rng)
        quad = param.quad_from_rst(p)
        for g in ("sigma1", "sigma2"):
            if param.quad_from_rst(param.apply_symmetry(g, p)) != quad:
                return False
        p3 = param.apply_symmetry("sigma3", p)
        if param.quad_from_rst(p3) != quad or param.e1_of(p3) != param.e1_of(p) or param.e2_of(p3) != param.e2_of(p):
            return False
    return True


def check_tau3(rng: random.Random, n: int = 100) -> bool:
    done = 0
    while done < n:
        r, _, t = random_rt(rng)
        try:
            a, b, c, d, e = param.quintuple_at(r, t)
            img = param.quintuple_at(*param.apply_symmetry("tau3", (r, t)))
        except param.DegeneratePoint:
            continue
        if img != (-d, -c, -b, -a, -e):
            return False
        done += 1
    return True


def check_regular(rng: random.Random, n: int = 100) -> bool:
    for _ in range(n):
        a, b, c, d, e = param.quintuple_at(*random_rt(rng)[::2])
        if len({a, b, c, d, e}) < 5 or 0 in (a, b, c, d, e):
            continue
        if not (is_regular_quadruple(a, b, d, e) and is_regular_quadruple(a, c, d, e)):
            return False
    return True


def check_group_order() -> bool:
    return len(param.enumerate_group_G()) == 16


def check_m_reproduction() -> bool:
    f = families.get_family("D3")
    r, t = families.psi_eval(f, 3)
    if (r, t) != (Fraction(-7, 13), Fraction(11, 4)) or families.family_quartic_value(f, 3) != 1296:
        return False
    q = param.p_map(param.SurfacePoint.lift(r, t))
    if q.as_set() != set(families.STATIC_TUPLES["M"]):
        return False
    cleared = clear_to_square_quintuple(q)
    return cleared.roots == families.M_ROOTS and cleared.n == families.M_DEN**2 and cleared.check()


def check_generators() -> bool:
    for fid in ("D1", "D2", "D3"):
        rec = families.generate(families.get_family(fid), [1])[0]
        if not rec.verified or rec.quintuple.as_set() != set(families.STATIC_TUPLES[f"{fid}_generator"]):
            return False
    return True


def check_curves() -> bool:
    for f in families.FAMILIES.values():
        model = f.bridge.curve
        if ec.iso_check(model, f.curve) is None:
            return False
        ts = ec.torsion_structure(f.curve)
        if ts.invariants != (2, 2) or not ts.certified:
            return False
    return True


def check_sv_family(rng: random.Random, n: int = 100) -> bool:
    done = 0
    while done < n:
        try:
            quad = families.quadruple_family_sv(param.random_rational(rng, 30), param.random_rational(rng, 30))
        except PreconditionError:
            continue
        if not is_dn_tuple(quad, 1) or any(sqrt_rational(x) is None for x in quad):
            return False
        done += 1
    return True


def run_selftest(seed: int = 0) -> list[CheckResult]:
    results = [CheckResult(f"known-tuple:{c.name}", c.passed, c.detail) for c in families.verify_static_examples()]
    checks: list[tuple[str, Callable[[], bool]]] = [
        ("e1-oracle", lambda: check_e1_oracle(random.Random(seed))),
        ("e1-equals-e2", lambda: check_e1_equals_e2(random.Random(seed + 1))),
        ("abcd-identity", lambda: check_abcd(random.Random(seed + 2))),
        ("sigma-invariance", lambda: check_sigma_invariance(random.Random(seed + 3))),
        ("tau3-negation", lambda: check_tau3(random.Random(seed + 4))),
        ("regularity", lambda: check_regular(random.Random(seed + 5))),
        ("group-order", check_group_order),
        ("M-reproduction", check_m_reproduction),
        ("generators", check_generators),
        ("curves", check_curves),
        ("sv-family", lambda: check_sv_family(random.Random(seed + 6))),
    ]
    for name, fn in checks:
        try:
            ok, detail = fn(), ""
        except Exception as exc:  # a crash is a failed check, reported by name
            ok, detail = False, f"{type(exc).__name__}: {exc}"
        results.append(CheckResult(name, ok, detail))
    return results
