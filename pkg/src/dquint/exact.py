"""Exact integers and rationals: square certification and squarefree parts.

Python ``int`` is the unbounded integer and :class:`fractions.Fraction` the
canonical rational (denominator positive, lowest terms, zero as 0/1).
"""

from __future__ import annotations

import math
import random
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Optional, Union

Rational = Fraction
RationalLike = Union[int, Fraction, str]

TRIAL_LIMIT = 10**6

# the first 13 of these bases already make Miller-Rabin deterministic below 3.3e24
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71)


def Q(value: RationalLike) -> Fraction:
    """Canonical rational from an int, a Fraction or a "num/den" string."""
    return parse_rational(value) if isinstance(value, str) else Fraction(value)


def parse_rational(text: str) -> Fraction:
    text = text.strip()
    if not text:
        raise ValueError("empty rational")
    if "/" in text:
        num_s, den_s = text.split("/", 1)
        num, den = int(num_s), int(den_s)
        if den == 0:
            raise ValueError(f"zero denominator in {text!r}")
        return Fraction(num, den)
    return Fraction(int(text))


def fmt_rational(q: Fraction | int) -> str:
    q = Fraction(q)
    return f"{q.numerator}/{q.denominator}"


def isqrt(n: int) -> Optional[int]:
    """Return ``m`` with ``m*m == n`` when ``n`` is a nonnegative perfect square."""
    if n < 0:
        return None
    m = math.isqrt(n)
    return m if m * m == n else None


def sqrt_rational(q: Fraction | int) -> Optional[Fraction]:
    """Nonnegative rational square root, or None when ``q`` is not a square."""
    q = Fraction(q)
    if q < 0:
        return None
    num = isqrt(q.numerator)
    if num is None:
        return None
    den = isqrt(q.denominator)
    if den is None:
        return None
    return Fraction(num, den)


def is_perfect_square(q: Fraction | int) -> bool:
    return sqrt_rational(q) is not None


def is_probable_prime(n: int) -> bool:
    """Miller-Rabin primality; deterministic for ``n < 3.3e24``."""
    if n < 2:
        return False
    for p in _MR_BASES:
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _pollard_brent(n: int, rng: random.Random, max_iter: int) -> Optional[int]:
    if n % 2 == 0:
        return 2
    for _ in range(8):
        y, c, m = rng.randrange(1, n), rng.randrange(1, n), 128
        g = r = q = 1
        x = ys = y
        steps = 0
        while g == 1:
            x = y
            for _ in range(r):
                y = (y * y + c) % n
            k = 0
            while k < r and g == 1:
                ys = y
                for _ in range(min(m, r - k)):
                    y = (y * y + c) % n
                    q = q * abs(x - y) % n
                g = math.gcd(q, n)
                k += m
            r *= 2
            steps += r
            if steps > max_iter:
                return None
        if g == n:
            g = 1
            while g == 1:
                ys = (ys * ys + c) % n
                g = math.gcd(abs(x - ys), n)
        if g != n:
            return g
    return None


class FactorizationIncomplete(Exception):
    """Raised when a cofactor resists the rho budget."""

    def __init__(self, factors: dict[int, int], cofactor: int):
        super().__init__(f"unfactored cofactor with {len(str(cofactor))} digits")
        self.factors = factors
        self.cofactor = cofactor


def factorize(n: int, rho_budget: int = 2_000_000) -> dict[int, int]:
    """Prime factorization of ``|n|`` (trial division, then Pollard-Brent).

    Raises :class:`FactorizationIncomplete` carrying the partial result when a
    composite cofactor cannot be split within ``rho_budget`` iterations.
    """
    n = abs(n)
    if n == 0:
        raise ValueError("cannot factor zero")
    factors: dict[int, int] = {}
    n = _trial_divide(n, factors)
    if n == 1:
        return factors
    rng = random.Random(n)
    stack = [n]
    stuck: list[int] = []
    while stack:
        m = stack.pop()
        if m == 1:
            continue
        if is_probable_prime(m):
            factors[m] = factors.get(m, 0) + 1
            continue
        root = isqrt(m)
        if root is not None:
            stack.extend((root, root))
            continue
        d = _pollard_brent(m, rng, rho_budget)
        if d is None:
            stuck.append(m)
        else:
            stack.extend((d, m // d))
    if stuck:
        cofactor = math.prod(stuck)
        raise FactorizationIncomplete(factors, cofactor)
    return dict(sorted(factors.items()))


@lru_cache(maxsize=None)
def _small_primes(limit: int) -> tuple[int, ...]:
    sieve = bytearray([1]) * (limit + 1)
    sieve[0:2] = b"\x00\x00"
    for i in range(2, math.isqrt(limit) + 1):
        if sieve[i]:
            sieve[i * i :: i] = bytearray(len(range(i * i, limit + 1, i)))
    return tuple(i for i in range(limit + 1) if sieve[i])


def _trial_divide(n: int, factors: dict[int, int]) -> int:
    for p in _small_primes(TRIAL_LIMIT):
        if p * p > n:
            break
        if n % p == 0:
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            factors[p] = e
    if 1 < n < TRIAL_LIMIT**2:
        # remaining cofactor has no factor below the trial limit, so it is prime
        factors[n] = factors.get(n, 0) + 1
        n = 1
    return n


def squarefree_part(n: int) -> int:
    """The squarefree ``s`` with ``n = s * m**2``; ``s`` carries the sign of ``n``."""
    if n == 0:
        raise ValueError("squarefree part of zero is undefined")
    s = 1
    for p, e in factorize(n).items():
        if e % 2:
            s *= p
    return s if n > 0 else -s


def valuation(n: int, b: int) -> int:
    n, e = abs(n), 0
    while n % b == 0:
        n //= b
        e += 1
    return e


def coprime_base(numbers: Iterable[int]) -> list[int]:
    """Pairwise coprime integers > 1 whose powers generate every input."""
    base = sorted({abs(n) for n in numbers if abs(n) > 1})
    changed = True
    while changed:
        changed = False
        for i in range(len(base)):
            for j in range(i + 1, len(base)):
                g = math.gcd(base[i], base[j])
                if g > 1:
                    a, b = base[i], base[j]
                    rest = [x for k, x in enumerate(base) if k not in (i, j)]
                    base = sorted(set(rest) | {x for x in (a // g, g, b // g) if x > 1})
                    changed = True
                    break
            if changed:
                break
    return base


def factor_with_hints(n: int, hints: Iterable[int] = (), rho_budget: int = 20_000) -> tuple[dict[int, int], dict[int, int]]:
    """Split ``|n|`` into proven primes and unresolved composite pieces.

    Whatever trial division and a short rho run leave behind is refined by
    gcds against ``hints`` into a coprime base. Returns ``(primes, pieces)``,
    both mapping a base element to its exponent in ``n``.
    """
    try:
        return factorize(n, rho_budget), {}
    except FactorizationIncomplete as exc:
        primes, cofactor = dict(exc.factors), exc.cofactor
    base = coprime_base([cofactor] + [math.gcd(cofactor, h) for h in hints])
    pieces: dict[int, int] = {}
    for b in base:
        e = valuation(cofactor, b)
        if e == 0:
            continue
        try:
            sub = factorize(b, rho_budget)
        except FactorizationIncomplete as inner:
            sub = inner.factors
            pieces[inner.cofactor] = pieces.get(inner.cofactor, 0) + e
        for p, f in sub.items():
            primes[p] = primes.get(p, 0) + f * e
    return dict(sorted(primes.items())), pieces
