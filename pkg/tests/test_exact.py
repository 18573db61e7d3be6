import math
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from dquint.exact import (
    coprime_base,
    factor_with_hints,
    factorize,
    fmt_rational,
    is_perfect_square,
    is_probable_prime,
    isqrt,
    parse_rational,
    sqrt_rational,
    squarefree_part,
)


@pytest.mark.parametrize("n,root", [(0, 0), (1, 1), (1296, 36), (1297, None), (-4, None), (10**40, 10**20)])
def test_isqrt(n, root):
    assert isqrt(n) == root


def test_isqrt_large_neighbours():
    m = 3**200 + 17
    assert isqrt(m * m) == m
    assert isqrt(m * m - 1) is None
    assert isqrt(m * m + 1) is None


def test_is_perfect_square_examples():
    assert is_perfect_square(Fraction(0))
    # 124^2 / 96^2 before reduction
    q = Fraction(15376, 9216)
    assert (q.numerator, q.denominator) == (961, 576)
    assert is_perfect_square(q)
    assert not is_perfect_square(Fraction(-4, 9))


@pytest.mark.parametrize(
    "q,root", [(Fraction(1296), Fraction(36)), (Fraction(4, 9), Fraction(2, 3)), (Fraction(2), None)]
)
def test_sqrt_rational(q, root):
    assert sqrt_rational(q) == root


@pytest.mark.parametrize("n,s", [(12, 3), (-50, -2), (480480**2, 1), (1, 1), (-1, -1), (480480, 30030)])
def test_squarefree_part(n, s):
    assert squarefree_part(n) == s


def test_squarefree_part_rejects_zero():
    with pytest.raises(ValueError):
        squarefree_part(0)


def test_rational_serialization():
    assert fmt_rational(Fraction(0)) == "0/1"
    assert fmt_rational(Fraction(-6, 4)) == "-3/2"
    assert parse_rational("-3/2") == Fraction(-3, 2)
    assert parse_rational("7") == Fraction(7)
    with pytest.raises(ValueError):
        parse_rational("1/0")


def test_factorize_semiprime_beyond_trial_limit():
    p, q = 1_000_003, 998_244_353
    assert factorize(p * q * q * 12) == {2: 2, 3: 1, p: 1, q: 2}


def test_primality_matches_sieve():
    sieve = [True] * 2000
    sieve[0] = sieve[1] = False
    for i in range(2, 45):
        for j in range(i * i, 2000, i):
            sieve[j] = False
    assert [n for n in range(2000) if is_probable_prime(n)] == [n for n in range(2000) if sieve[n]]


def test_coprime_base():
    base = coprime_base([12, 18, 35])
    assert all(math.gcd(a, b) == 1 for i, a in enumerate(base) for b in base[i + 1 :])
    assert set(base) == {2, 3, 5, 7} or set(base) == {2, 3, 35}


def test_factor_with_hints_uses_gcds():
    # two 20-digit primes; rho with a tiny budget cannot separate them, a hint can
    p, q = 10**19 + 51, 10**19 + 87
    assert is_probable_prime(p) and is_probable_prime(q)
    primes, pieces = factor_with_hints(p * q * 8, hints=[p * 3], rho_budget=10)
    assert primes == {2: 3, p: 1, q: 1}
    assert pieces == {}


@given(st.integers(), st.integers(min_value=1), st.integers().filter(lambda k: k != 0))
def test_canonical_form(p, q, k):
    a = Fraction(p, q)
    b = Fraction(p * k, q * k)
    assert (a.numerator, a.denominator) == (b.numerator, b.denominator)
    assert b.denominator > 0 and math.gcd(b.numerator, b.denominator) == 1


@given(st.integers())
def test_squares_recognised(m):
    assert is_perfect_square(Fraction(m * m))
    assert sqrt_rational(Fraction(m * m)) == abs(m)


@given(st.integers(min_value=-(10**12), max_value=10**12).filter(lambda n: n != 0))
def test_squarefree_decomposition(n):
    s = squarefree_part(n)
    assert n % s == 0
    assert isqrt(n // s) is not None
    assert (s > 0) == (n > 0)
    assert all(s % (p * p) for p in range(2, 100))


@given(st.fractions(), st.fractions(), st.fractions())
def test_distributivity(a, b, c):
    assert (a + b) * c == a * c + b * c
