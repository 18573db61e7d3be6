import itertools
import random
from fractions import Fraction as F

import pytest

from conftest import M_SET, D3_GEN
from dquint import ec, families
from dquint.dtuples import (
    PreconditionError,
    all_products_square,
    equivalence_factor,
    is_dn_tuple,
    is_exotic_quintuple,
)
from dquint.exact import is_perfect_square, sqrt_rational
from dquint.families import (
    FAMILIES,
    STATIC_TUPLES,
    family_quartic_value,
    generate,
    get_family,
    psi_eval,
    quadruple_family_sv,
    rationals_by_height,
    scan_surface,
    verify_static_examples,
)
from dquint.param import DegeneratePoint, SurfacePoint, surface_rhs


def test_psi3_at_three():
    assert psi_eval(get_family("d3"), 3) == (F(-7, 13), F(11, 4))
    assert family_quartic_value(get_family("D3"), 3) == 1296


@pytest.mark.parametrize("fid", ["D1", "D2", "D3"])
def test_psi_lands_on_plane_curve(fid):
    fam = FAMILIES[fid]
    rng = random.Random(fid)
    done = 0
    while done < 50:
        u = F(rng.randint(-300, 300), rng.randint(1, 300))
        try:
            r, t = fam.psi(u)
        except DegeneratePoint:
            continue
        assert fam.plane_curve(r, t) == 0
        done += 1


@pytest.mark.parametrize("fid", ["D1", "D2", "D3"])
def test_rhs_over_quartic_is_square(fid):
    # along the curve, rhs(psi(u)) = square * q(u), so squares of q give squares of rhs
    fam = FAMILIES[fid]
    rng = random.Random(7)
    done = 0
    while done < 30:
        u = F(rng.randint(-200, 200), rng.randint(1, 200))
        try:
            r, t = fam.psi(u)
        except DegeneratePoint:
            continue
        qv, rhs = fam.quartic(u), surface_rhs(r, t)
        if qv == 0 or rhs == 0:
            continue
        assert is_perfect_square(rhs / qv)
        done += 1


@pytest.mark.parametrize("fid", ["D1", "D2", "D3"])
def test_generator_on_quartic(fid):
    fam = FAMILIES[fid]
    assert is_perfect_square(fam.quartic(fam.generator_u))
    assert fam.quartic.contains(fam.base)


@pytest.mark.parametrize("fid", ["D1", "D2", "D3"])
def test_generate_k1_reproduces_printed(fid):
    (rec,) = generate(FAMILIES[fid], [1])
    assert rec.verified, rec.checks
    assert rec.u == FAMILIES[fid].generator_u
    assert rec.quintuple.as_set() == set(STATIC_TUPLES[f"{fid}_generator"])


def test_d1_first_element():
    (rec,) = generate(FAMILIES["D1"], [1])
    assert F(-29529940110878678717653, 420081952495961042800800) in rec.quintuple.as_set()


def test_d3_generator_is_minus_m():
    assert set(STATIC_TUPLES["D3_generator"]) == set(D3_GEN)
    assert equivalence_factor(D3_GEN, sorted(M_SET)) == -1


def test_generate_both_signs():
    for sign in (1, -1):
        recs = generate(FAMILIES["D3"], [1, 2], sign=sign)
        assert all(r.verified for r in recs)


def test_generate_torsion_translates():
    recs = generate(FAMILIES["D3"], [1], torsion_translates=True)
    assert len(recs) == 4
    assert {r.torsion for r in recs} == {None, 0, 1, 2}
    for r in recs:
        assert r.status in ("ok", "degenerate")
        if r.status == "ok":
            assert r.verified


def test_generate_rejects_bad_input():
    with pytest.raises(ValueError):
        generate(FAMILIES["D1"], [])
    with pytest.raises(ValueError):
        generate(FAMILIES["D1"], [0])


def test_record_json():
    (rec,) = generate(FAMILIES["D3"], [1])
    js = rec.to_json()
    assert js["family"] == "D3" and js["status"] == "ok" and js["k"] == 1
    assert js["u"] == "-4/1"
    assert sorted(int(x) for x in js["roots"]) == sorted(families.M_ROOTS)
    assert js["n"] == str(families.M_DEN**2)
    assert all(js["checks"].values())


@pytest.mark.slow
@pytest.mark.parametrize("fid", ["D1", "D2", "D3"])
def test_multiples_distinct_and_inequivalent(fid):
    recs = generate(FAMILIES[fid], range(1, 6))
    assert all(r.verified for r in recs)
    tuples = [r.quintuple for r in recs]
    assert len({frozenset(t.as_set()) for t in tuples}) == 5
    for a, b in itertools.combinations(tuples, 2):
        assert equivalence_factor(a, b) is None
    for r in recs:
        assert is_exotic_quintuple(r.quintuple)
        assert r.cleared.check()


def test_static_examples_pass():
    checks = verify_static_examples()
    assert len(checks) == 10
    assert all(c.passed for c in checks), [c.name for c in checks if not c.passed]


def test_square_quadruple():
    sq = STATIC_TUPLES["square_quadruple"]
    assert is_dn_tuple(sq, 1) and all_products_square(sq)
    assert sq[0] * sq[1] * sq[2] * sq[3] != 1


def test_sv_family():
    rng = random.Random(11)
    done = 0
    while done < 100:
        s = F(rng.randint(-60, 60), rng.randint(1, 30))
        v = F(rng.randint(-60, 60), rng.randint(1, 30))
        try:
            quad = quadruple_family_sv(s, v)
        except PreconditionError:
            continue
        assert len(set(quad)) == 4
        assert is_dn_tuple(quad, 1)
        assert all(sqrt_rational(x) is not None for x in quad)
        done += 1


def test_sv_family_degenerate():
    with pytest.raises(PreconditionError):
        quadruple_family_sv(1, 2)
    with pytest.raises(PreconditionError):
        quadruple_family_sv(2, 0)


def test_rationals_by_height():
    rats = rationals_by_height(3)
    assert rats[:3] == [F(0), F(1), F(-1)]
    assert len(rats) == len(set(rats))
    expected = {F(p, q) for q in range(1, 4) for p in range(-3, 4)}
    assert set(rats) == expected
    heights = [max(abs(x.numerator), x.denominator) for x in rats]
    assert heights == sorted(heights)


def test_scan_small():
    hits = list(scan_surface(1))
    assert hits and all(h.status == "degenerate" for h in hits)
    with pytest.raises(ValueError):
        list(scan_surface(0))


def test_scan_finds_m_point():
    hits = [h for h in scan_surface(13) if h.status == "exotic"]
    pts = {(h.point.r, h.point.t) for h in hits}
    assert (F(-7, 13), F(11, 4)) in pts
    for h in hits:
        SurfacePoint(h.point.r, h.point.t, h.point.y)
        assert is_exotic_quintuple(h.quintuple)
