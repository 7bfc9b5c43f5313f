"""Polynomials over GF(2) stored as Python int bitmasks.

Bit i of the mask is the coefficient of x^i, so ``0b1011`` is x^3 + x + 1.
The zero polynomial has degree -1.
"""
import re
from functools import lru_cache
from typing import Iterator

from sympy import primefactors


def degree(p: int) -> int:
    """Degree of p; -1 for the zero polynomial."""
    return p.bit_length() - 1


def clmul(a: int, b: int) -> int:
    """Carry-less product of two bitmask polynomials."""
    if a.bit_count() > b.bit_count():
        a, b = b, a
    result = 0
    while a:
        low = a & -a
        result ^= b << (low.bit_length() - 1)
        a ^= low
    return result


def poly_mod(a: int, m: int) -> int:
    """Remainder of a modulo m (m nonzero)."""
    if m == 0:
        raise ValueError("division by the zero polynomial")
    dm = degree(m)
    if dm == 0:
        return 0
    mask = (1 << dm) - 1
    tail = m & mask
    # fold the high part down with x^dm = tail
    while a >> dm:
        a = (a & mask) ^ clmul(a >> dm, tail)
    return a


def poly_divmod(a: int, m: int) -> tuple:
    """Quotient and remainder of long division of a by m."""
    if m == 0:
        raise ValueError("division by the zero polynomial")
    dm = degree(m)
    q = 0
    while degree(a) >= dm:
        shift = degree(a) - dm
        q |= 1 << shift
        a ^= m << shift
    return q, a


def poly_gcd(a: int, b: int) -> int:
    while b:
        a, b = b, poly_divmod(a, b)[1]
    return a


def square(a: int) -> int:
    """Square in GF(2)[x]: interleave zero bits between the coefficients."""
    if a == 0:
        return 0
    return int("0".join(format(a, "b")), 2)


def mulmod(a: int, b: int, m: int) -> int:
    return poly_mod(clmul(a, b), m)


def is_irreducible(p: int) -> bool:
    """Rabin's irreducibility test over GF(2).

    p of degree n is irreducible iff x^(2^n) = x (mod p) and
    gcd(x^(2^(n/q)) - x, p) = 1 for every prime q dividing n.
    """
    n = degree(p)
    if n < 1:
        raise ValueError(f"irreducibility is undefined for degree {n}")
    x = poly_mod(0b10, p)
    powers = [x]
    h = x
    for _ in range(n):
        h = poly_mod(square(h), p)
        powers.append(h)
    if h != x:
        return False
    for q in primefactors(n):
        if poly_gcd(p, powers[n // q] ^ x) != 1:
            return False
    return True


def is_irreducible_trial(p: int) -> bool:
    """Trial division by every polynomial of degree 1..deg(p)//2."""
    n = degree(p)
    if n < 1:
        raise ValueError(f"irreducibility is undefined for degree {n}")
    for d in range(2, 1 << (n // 2 + 1)):
        if poly_divmod(p, d)[1] == 0:
            return False
    return True


def iter_candidates(n: int) -> Iterator[int]:
    """Monic degree-n masks with constant term 1, in increasing order."""
    if n < 1:
        raise ValueError(f"degree must be at least 1, got {n}")
    top = 1 << n
    for low in range(1, top, 2):
        yield top | low


SMALL_FACTOR_DEGREE = 8


@lru_cache(maxsize=1)
def small_factor_product() -> int:
    """Product of every irreducible of degree 1..SMALL_FACTOR_DEGREE."""
    product = 1
    for p in range(2, 1 << (SMALL_FACTOR_DEGREE + 1)):
        if is_irreducible(p):
            product = clmul(product, p)
    return product


def first_irreducible(n: int) -> int:
    """Lexicographically smallest irreducible mask of degree n with constant term 1."""
    for p in iter_candidates(n):
        # even weight means x + 1 divides p
        if n > 1 and p.bit_count() % 2 == 0:
            continue
        if n > SMALL_FACTOR_DEGREE and poly_gcd(p, small_factor_product()) != 1:
            continue
        if is_irreducible(p):
            return p
    raise ValueError(f"no irreducible polynomial of degree {n}")


_TERM = re.compile(r"^(?:(1)|x(?:\s*(?:\^|\*\*)\s*(\d+))?)$")


def parse_poly(text: str) -> int:
    """Parse "0x13", "x^4+x+1" (or "x**4 + x + 1") into a bitmask."""
    s = text.strip().lower()
    if not s:
        raise ValueError("empty polynomial text")
    if s.startswith("0x"):
        try:
            return int(s, 16)
        except ValueError:
            raise ValueError(f"invalid hex polynomial: {text!r}") from None
    mask = 0
    for raw in s.split("+"):
        term = raw.strip()
        match = _TERM.match(term)
        if not match:
            raise ValueError(f"invalid polynomial term {term!r} in {text!r}")
        if match.group(1):
            power = 0
        elif match.group(2) is not None:
            power = int(match.group(2))
        else:
            power = 1
        if mask >> power & 1:
            raise ValueError(f"repeated term x^{power} in {text!r}")
        mask |= 1 << power
    return mask


def format_poly(p: int, style: str = "human") -> str:
    """Render p as "x^4+x+1" (human) or "0x13" (hex)."""
    if style == "hex":
        return hex(p)
    if style != "human":
        raise ValueError(f"unknown polynomial style: {style}")
    if p == 0:
        return "0"
    terms = []
    for power in range(degree(p), -1, -1):
        if p >> power & 1:
            terms.append("1" if power == 0 else "x" if power == 1 else f"x^{power}")
    return "+".join(terms)
