"""Exact integer and rational helpers.

Every ordering decision on root discriminants is made here by integer
cross-power comparison; floating point only appears in :meth:`approx`.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterator, Sequence, Tuple, Union

# mod-30 wheel: gaps between successive residues coprime to 30, starting at 7
_WHEEL = (4, 2, 4, 2, 4, 6, 2, 6)


def _trial_divisors() -> Iterator[int]:
    yield from (2, 3, 5)
    d = 7
    while True:
        for gap in _WHEEL:
            yield d
            d += gap


@lru_cache(maxsize=4096)
def is_prime(n: int) -> bool:
    if n < 2:
        return False
    for d in _trial_divisors():
        if d * d > n:
            return True
        if n % d == 0:
            return n == d
    return True  # pragma: no cover


def primes_up_to(n: int) -> list[int]:
    if n < 2:
        return []
    sieve = bytearray([1]) * (n + 1)
    sieve[0] = sieve[1] = 0
    for i in range(2, math.isqrt(n) + 1):
        if sieve[i]:
            sieve[i * i :: i] = bytearray(len(range(i * i, n + 1, i)))
    return [i for i, flag in enumerate(sieve) if flag]


@dataclass(frozen=True)
class Factorization:
    """A positive integer together with its prime factorization."""

    value: int
    factors: Tuple[Tuple[int, int], ...]

    def primes(self) -> list[int]:
        return [p for p, _ in self.factors]

    def product(self) -> int:
        out = 1
        for p, k in self.factors:
            out *= p**k
        return out

    def __iter__(self):
        return iter(self.factors)


@lru_cache(maxsize=8192)
def factor(n: int) -> Factorization:
    """Factor ``n`` by trial division over a mod-30 wheel."""
    if not isinstance(n, int) or n < 1:
        raise ValueError(f"factor() needs a positive integer, got {n!r}")
    m = n
    out = []
    for d in _trial_divisors():
        if d * d > m:
            break
        if m % d == 0:
            k = 0
            while m % d == 0:
                m //= d
                k += 1
            out.append((d, k))
    if m > 1:
        out.append((m, 1))
    return Factorization(n, tuple(out))


def valuation(n: int, p: int) -> int:
    """Exponent of the prime ``p`` in the nonzero integer ``n``."""
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    if n == 0:
        raise ValueError("valuation of 0 is infinite")
    n = abs(n)
    k = 0
    while n % p == 0:
        n //= p
        k += 1
    return k


def euler_phi(n: int) -> int:
    out = n
    for p, _ in factor(n):
        out = out // p * (p - 1)
    return out


def divisors(n: int) -> list[int]:
    out = [1]
    for p, k in factor(n):
        out = [d * p**i for d in out for i in range(k + 1)]
    return sorted(out)


def iroot(n: int, k: int) -> int:
    """Largest integer r >= 0 with r**k <= n."""
    if n < 0 or k < 1:
        raise ValueError("iroot needs n >= 0 and k >= 1")
    if n < 2 or k == 1:
        return n
    r = int(round(n ** (1.0 / k))) if n.bit_length() < 1000 else 1 << (n.bit_length() // k + 1)
    while r**k > n:
        r -= 1
    while (r + 1) ** k <= n:
        r += 1
    return r


def squarefree_kernel(n: int) -> int:
    """Signed squarefree part of a nonzero integer (``-12 -> -3``)."""
    if n == 0:
        raise ValueError("0 has no squarefree kernel")
    out = 1
    for p, k in factor(abs(n)):
        if k % 2:
            out *= p
    return out if n > 0 else -out


@dataclass(frozen=True)
class RootDiscriminant:
    """The real number ``disc ** (1/degree)`` kept as an exact pair.

    Equality of the dataclass is structural; numerical comparison goes
    through :func:`rd_compare`, so (144, 4) and (12, 2) are different pairs
    with equal values.
    """

    disc: int
    degree: int

    def __post_init__(self):
        if self.disc < 1 or self.degree < 1:
            raise ValueError(f"invalid root discriminant ({self.disc}, {self.degree})")

    def approx(self) -> float:
        """Six significant digits, for display only."""
        if self.disc == 1:
            return 1.0
        return float(f"{math.exp(math.log(self.disc) / self.degree):.6g}")

    def __mul__(self, other: "RootDiscriminant") -> "RootDiscriminant":
        n = math.lcm(self.degree, other.degree)
        return RootDiscriminant(
            self.disc ** (n // self.degree) * other.disc ** (n // other.degree), n
        )


def rd_compare(a: RootDiscriminant, b: RootDiscriminant) -> int:
    """-1, 0 or 1 as ``a`` is less than, equal to or greater than ``b``."""
    lhs = a.disc**b.degree
    rhs = b.disc**a.degree
    return (lhs > rhs) - (lhs < rhs)


@dataclass(frozen=True)
class Bound:
    """A positive real bound of the form ``value ** (1/root)``.

    ``root`` is 1 for ordinary rational bounds; ``Bound(8, 2)`` is sqrt(8).
    """

    value: Fraction
    root: int = 1

    def __post_init__(self):
        object.__setattr__(self, "value", Fraction(self.value))
        if self.value <= 0:
            raise ValueError(f"bound must be positive, got {self.value}")
        if self.root < 1:
            raise ValueError("root must be a positive integer")

    def __str__(self):
        if self.root == 1:
            return str(self.value)
        if self.root == 2:
            return f"sqrt({self.value})"
        return f"{self.value}^(1/{self.root})"

    def power_leq(self, base: int, num: int, den: int) -> bool:
        """Exactly decide ``base ** (num/den) <= self`` for base >= 1."""
        # base^(num/den) <= (p/q)^(1/k)  <=>  base^(num*k) * q^den <= p^den
        p, q = self.value.numerator, self.value.denominator
        return base ** (num * self.root) * q**den <= p**den

    def squared_floor(self) -> int:
        """floor(self**2), computed exactly."""
        p, q = self.value.numerator, self.value.denominator
        # m <= (p/q)^(2/k)  <=>  m^k <= p^2/q^2  <=>  m^k <= floor(p^2/q^2)
        return iroot(p * p // (q * q), self.root)


BoundLike = Union[Bound, Fraction, int, str]

_ROOT_RE = re.compile(r"^\s*sqrt\((?P<a>[^()]+)\)\s*$")
_POW_RE = re.compile(r"^\s*(?P<a>[^()^]+)\^\(1/(?P<k>\d+)\)\s*$")


def as_bound(n: BoundLike) -> Bound:
    if isinstance(n, Bound):
        return n
    if isinstance(n, str):
        return parse_bound(n)
    return Bound(Fraction(n))


def parse_bound(text: str) -> Bound:
    """Parse ``"3"``, ``"5/2"``, ``"2.75"``, ``"sqrt(8)"`` or ``"8^(1/2)"``.

    Decimals are read as exact rationals, never through binary floats.
    """
    m = _ROOT_RE.match(text)
    if m:
        return Bound(_exact_rational(m["a"]), 2)
    m = _POW_RE.match(text)
    if m:
        return Bound(_exact_rational(m["a"]), int(m["k"]))
    return Bound(_exact_rational(text))


def _exact_rational(text: str) -> Fraction:
    text = text.strip()
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"not a rational number: {text!r}") from exc


def rd_leq_bound(a: RootDiscriminant, n: BoundLike) -> bool:
    """True iff ``a.disc ** (1/a.degree) <= N`` exactly."""
    return as_bound(n).power_leq(a.disc, 1, a.degree)


def rd_product_compare(
    lhs: Sequence[RootDiscriminant], rhs: Sequence[RootDiscriminant]
) -> int:
    """Compare products of root discriminants exactly.

    Both sides are raised to the lcm of all degrees involved, which turns
    each product into an integer.
    """
    n = math.lcm(*(r.degree for r in (*lhs, *rhs)))
    left = math.prod(r.disc ** (n // r.degree) for r in lhs)
    right = math.prod(r.disc ** (n // r.degree) for r in rhs)
    return (left > right) - (left < right)


def rd_product_leq(
    lhs: Sequence[RootDiscriminant], rhs: Sequence[RootDiscriminant]
) -> bool:
    return rd_product_compare(lhs, rhs) <= 0
