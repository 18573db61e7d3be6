"""D(n)-tuples: the D(n) property, regular quadruples, exotic quintuples,
equivalence scaling and clearing to integer quintuples with square elements.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Optional, Sequence

from .exact import (
    factor_with_hints,
    fmt_rational,
    isqrt,
    parse_rational,
    sqrt_rational,
    valuation,
)


class PreconditionError(ValueError):
    """An input violates the documented precondition of an operation."""


@dataclass(frozen=True)
class RationalTuple:
    """Ordered tuple of 3 to 6 distinct nonzero rationals."""

    elements: tuple[Fraction, ...]

    def __init__(self, elements: Iterable[Fraction | int | str]):
        elems = tuple(parse_rational(e) if isinstance(e, str) else Fraction(e) for e in elements)
        if not 3 <= len(elems) <= 6:
            raise PreconditionError(f"tuple length {len(elems)} outside 3..6")
        if any(e == 0 for e in elems):
            raise PreconditionError("tuple contains a zero element")
        if len(set(elems)) != len(elems):
            raise PreconditionError("tuple elements are not distinct")
        object.__setattr__(self, "elements", elems)

    def __iter__(self):
        return iter(self.elements)

    def __len__(self) -> int:
        return len(self.elements)

    def __getitem__(self, i):
        return self.elements[i]

    def as_set(self) -> frozenset[Fraction]:
        return frozenset(self.elements)

    def to_json(self, n: Fraction | int = 1) -> dict:
        return {"elements": [fmt_rational(e) for e in self.elements], "n": fmt_rational(n)}

    @classmethod
    def from_json(cls, obj: dict) -> tuple["RationalTuple", Fraction]:
        return cls(obj["elements"]), parse_rational(obj.get("n", "1/1"))


@dataclass(frozen=True)
class IntegerSquareQuintuple:
    """Integer quintuple ``{s_i**2}`` with the D(n) property, ``n = u**2``.

    ``u`` is the scaling that produced it from a rational quintuple and
    ``minimal`` records whether ``|u|`` is certified least possible.
    """

    roots: tuple[int, ...]
    n: int
    u: int
    minimal: bool = True

    @property
    def elements(self) -> tuple[int, ...]:
        return tuple(s * s for s in self.roots)

    def check(self) -> bool:
        """Re-verify the invariants: distinct nonzero squares, D(n) and D(0)."""
        elems = self.elements
        if any(e == 0 for e in elems) or len(set(elems)) != len(elems):
            return False
        return is_dn_tuple(elems, self.n) and is_dn_tuple(elems, 0)

    def to_json(self) -> dict:
        return {"roots": [str(s) for s in self.roots], "n": str(self.n)}


def _elements(t: RationalTuple | Sequence) -> tuple[Fraction, ...]:
    if isinstance(t, RationalTuple):
        return t.elements
    return tuple(Fraction(e) for e in t)


def dn_certificate(t: RationalTuple | Sequence, n: Fraction | int) -> list[tuple[int, int, Optional[Fraction]]]:
    """Per pair ``(i, j, root)`` where ``root**2 == a_i*a_j + n``, or None."""
    elems = _elements(t)
    n = Fraction(n)
    return [(i, j, sqrt_rational(elems[i] * elems[j] + n)) for i, j in combinations(range(len(elems)), 2)]


def is_dn_tuple(t: RationalTuple | Sequence, n: Fraction | int) -> bool:
    elems = _elements(t)
    n = Fraction(n)
    return all(sqrt_rational(x * y + n) is not None for x, y in combinations(elems, 2))


def all_products_square(t: RationalTuple | Sequence) -> bool:
    return is_dn_tuple(t, 0)


def regularity_defect(a, b, c, d) -> Fraction:
    """(a+b-c-d)^2 - 4(ab+1)(cd+1); zero exactly for regular quadruples."""
    a, b, c, d = map(Fraction, (a, b, c, d))
    return (a + b - c - d) ** 2 - 4 * (a * b + 1) * (c * d + 1)


def is_regular_quadruple(a, b, c, d) -> bool:
    vals = tuple(map(Fraction, (a, b, c, d)))
    if 0 in vals or len(set(vals)) != 4:
        raise PreconditionError("regularity is defined for four distinct nonzero values")
    return regularity_defect(*vals) == 0


def regular_extensions(a, b, c) -> tuple[Fraction, Fraction]:
    """Both roots e of the regularity relation for the triple {a, b, c}.

    Returns ``(e_plus, e_minus)``; either may be zero or coincide with an
    element of the triple, callers filter those.
    """
    a, b, c = map(Fraction, (a, b, c))
    root = sqrt_rational((a * b + 1) * (a * c + 1) * (b * c + 1))
    if root is None:
        raise PreconditionError("(ab+1)(ac+1)(bc+1) is not a rational square")
    base = a + b + c + 2 * a * b * c
    return base + 2 * root, base - 2 * root


def is_exotic_labelled(q: RationalTuple | Sequence) -> bool:
    """Check an ordered quintuple (a, b, c, d, e) for exoticity.

    Requires abcd = 1, regular {a,b,d,e} and {a,c,d,e}, all pairwise
    products square, and the D(1) property itself.
    """
    elems = _elements(q)
    if len(elems) != 5 or 0 in elems or len(set(elems)) != 5:
        return False
    a, b, c, d, e = elems
    return (
        a * b * c * d == 1
        and regularity_defect(a, b, d, e) == 0
        and regularity_defect(a, c, d, e) == 0
        and all_products_square(elems)
        and is_dn_tuple(elems, 1)
    )


def exotic_ordering(q: RationalTuple | Sequence) -> Optional[tuple[Fraction, ...]]:
    """An ordering (a, b, c, d, e) of ``q`` under which it is exotic, or None.

    abcd = 1 pins e to the product of all five elements, and the regularity
    defect is symmetric, so only the unordered pair {a, d} is left to choose.
    """
    elems = _elements(q)
    if len(elems) != 5 or 0 in elems or len(set(elems)) != 5:
        return None
    if is_exotic_labelled(elems):
        return elems
    e = math.prod(elems)
    if e not in elems:
        return None
    rest = [x for x in elems if x != e]
    for i, j in combinations(range(4), 2):
        b, c = (rest[m] for m in range(4) if m not in (i, j))
        cand = (rest[i], b, c, rest[j], e)
        if is_exotic_labelled(cand):
            return cand
    return None


def is_exotic_quintuple(q: RationalTuple | Sequence) -> bool:
    """True when some labelling of the five elements makes them exotic."""
    return exotic_ordering(q) is not None


def scale(q: RationalTuple, n, u) -> tuple[RationalTuple, Fraction]:
    u = Fraction(u)
    if u == 0:
        raise PreconditionError("scaling factor must be nonzero")
    return RationalTuple(u * e for e in q), Fraction(n) * u * u


def equivalence_factor(p: RationalTuple | Sequence, q: RationalTuple | Sequence) -> Optional[Fraction]:
    """Rational ``u`` with ``{u*x for x in p} == set(q)``, or None."""
    ps, qs = _elements(p), set(_elements(q))
    if len(ps) != len(qs) or 0 in ps:
        return None
    for target in qs:
        u = target / ps[0]
        if {u * x for x in ps} == qs:
            return u
    return None


def clear_to_square_quintuple(q: RationalTuple | Sequence) -> IntegerSquareQuintuple:
    """Least integer ``u`` turning every ``u*a_i`` into an integer square.

    All elements must share a sign and a squarefree class; ``u`` takes the
    common sign, so the result is a D(u**2) quintuple of integer squares.

    Writing ``a_i = eps * p_i/q_i`` in lowest terms, ``p_i*q_i = k*m_i**2``
    with the same squarefree ``k``. Every prime dividing ``k`` divides each
    ``p_i*q_i``, so ``k`` is read off the factorization of their gcd rather
    than of any single (possibly enormous) element.
    """
    elems = _elements(q)
    if len(elems) != 5:
        raise PreconditionError("expected a quintuple")
    if 0 in elems:
        raise PreconditionError("zero element")
    signs = {e > 0 for e in elems}
    if len(signs) != 1:
        raise PreconditionError("mixed-sign quintuple; flagged for inspection")
    eps = 1 if signs.pop() else -1
    if not all_products_square(elems):
        raise PreconditionError("elements do not share a squarefree class")

    pq = [abs(e.numerator) * e.denominator for e in elems]
    g = 0
    for x in pq:
        g = math.gcd(g, x)
    hints = [abs(e.numerator) for e in elems] + [e.denominator for e in elems]
    primes, pieces = factor_with_hints(g, hints)
    k = 1
    for p in primes:
        if valuation(pq[0], p) % 2:
            k *= p
    minimal = not pieces
    ms = _square_cofactors(pq, k * _odd_part(pieces, pq[0]))
    if ms is not None:
        k *= _odd_part(pieces, pq[0])
    else:
        # a piece hid a square factor: its whole power in g is still a valid choice
        for b, e in pieces.items():
            k *= b**e
        ms = _square_cofactors(pq, k)
        if ms is None:
            raise PreconditionError("elements do not share a squarefree class")

    L = 1
    for e, m in zip(elems, ms):
        den = e.denominator
        L = math.lcm(L, den // math.gcd(den, k * m))
    roots = tuple(k * L * m // e.denominator for e, m in zip(elems, ms))
    u = eps * k * L * L
    return IntegerSquareQuintuple(roots=roots, n=u * u, u=u, minimal=minimal)


def _odd_part(pieces: dict[int, int], n: int) -> int:
    out = 1
    for b in pieces:
        if valuation(n, b) % 2:
            out *= b
    return out


def _square_cofactors(pq: Sequence[int], k: int) -> Optional[list[int]]:
    ms = []
    for x in pq:
        m = isqrt(x // k) if x % k == 0 else None
        if m is None:
            return None
        ms.append(m)
    return ms
