"""The unit group (Z/M)* and its Dirichlet characters.

(Z/M)* is split into cyclic components, one per odd prime power and one
or two for the power of 2.  Generators are fixed: the smallest primitive
root modulo each odd p^a, -1 modulo 4, and (-1, 5) modulo 2^a for a >= 3,
each lifted by CRT to be 1 modulo the other prime powers.  A character is
an exponent vector against these generators, so chi(g_j) = exp(2 pi i e_j / n_j).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import product
from typing import Iterator, Optional, Sequence, Tuple

from rdlab.arith import euler_phi, factor, valuation
from rdlab.groups import subgroups  # noqa: F401  (re-exported)


@dataclass(frozen=True)
class Component:
    generator: int  # residue mod the full modulus
    order: int
    prime: int
    prime_power: int  # the exact power of `prime` dividing the modulus


@dataclass(frozen=True)
class UnitGroupStructure:
    modulus: int
    components: Tuple[Component, ...]

    @property
    def orders(self) -> Tuple[int, ...]:
        return tuple(c.order for c in self.components)

    @property
    def generators(self) -> Tuple[int, ...]:
        return tuple(c.generator for c in self.components)

    def indices_at(self, p: int) -> list[int]:
        return [i for i, c in enumerate(self.components) if c.prime == p]

    def dlog(self, a: int) -> Tuple[int, ...]:
        """Exponents of the unit ``a`` with respect to the generators."""
        if math.gcd(a, self.modulus) != 1:
            raise ValueError(f"{a} is not a unit modulo {self.modulus}")
        out = []
        seen = set()
        for c in self.components:
            if c.prime in seen:
                continue
            seen.add(c.prime)
            q = c.prime_power
            out.extend(_local_dlog(c.prime, q)[a % q])
        return tuple(out)


@lru_cache(maxsize=None)
def _primitive_root(p: int, q: int) -> int:
    """Smallest primitive root modulo the odd prime power q = p^a."""
    phi = euler_phi(q)
    qs = [r for r, _ in factor(phi)]
    g = 2
    while True:
        if g % p and all(pow(g, phi // r, q) != 1 for r in qs):
            return g
        g += 1


@lru_cache(maxsize=None)
def _local_components(p: int, q: int) -> Tuple[Tuple[int, int], ...]:
    """(local generator, order) pairs for (Z/q)*, q = p^a."""
    if p == 2:
        if q <= 2:
            return ()
        if q == 4:
            return ((3, 2),)
        return ((q - 1, 2), (5, q // 4))
    return ((_primitive_root(p, q), euler_phi(q)),)


@lru_cache(maxsize=None)
def _local_dlog(p: int, q: int) -> dict:
    """Map residue mod q -> exponent tuple against the local generators."""
    comps = _local_components(p, q)
    if not comps:
        return {r: () for r in range(q) if r % 2 or q == 1}
    if p == 2 and q >= 8:
        table = {}
        x = 1
        for t in range(q // 4):
            table[x] = (0, t)
            table[(-x) % q] = (1, t)
            x = x * 5 % q
        return table
    g, n = comps[0]
    table = {}
    x = 1
    for e in range(n):
        table[x] = (e,)
        x = x * g % q
    return table


@lru_cache(maxsize=None)
def unit_group_structure(modulus: int) -> UnitGroupStructure:
    """Cyclic decomposition of (Z/modulus)* with the fixed generator choice."""
    if modulus < 1:
        raise ValueError("modulus must be positive")
    comps = []
    for p, a in factor(modulus):
        q = p**a
        rest = modulus // q
        for g, n in _local_components(p, q):
            # CRT: x = g mod q, x = 1 mod rest
            x = g if rest == 1 else (1 + rest * ((g - 1) * pow(rest, -1, q))) % modulus
            comps.append(Component(x, n, p, q))
    return UnitGroupStructure(modulus, tuple(comps))


@dataclass(frozen=True)
class RootOfUnity:
    """exp(2 pi i k / n) with 0 <= k < n and gcd(k, n) = 1 (k = 0 iff n = 1)."""

    k: int
    n: int

    @classmethod
    def from_fraction(cls, x: Fraction) -> "RootOfUnity":
        x = x - math.floor(x)
        return cls(x.numerator, x.denominator)

    def as_fraction(self) -> Fraction:
        return Fraction(self.k, self.n)

    def __mul__(self, other: "RootOfUnity") -> "RootOfUnity":
        return RootOfUnity.from_fraction(self.as_fraction() + other.as_fraction())

    @property
    def order(self) -> int:
        return self.n


@dataclass(frozen=True)
class DirichletCharacter:
    structure: UnitGroupStructure
    exponents: Tuple[int, ...]

    def __post_init__(self):
        orders = self.structure.orders
        if len(self.exponents) != len(orders):
            raise ValueError("exponent vector does not match the unit group")
        object.__setattr__(
            self, "exponents", tuple(e % n for e, n in zip(self.exponents, orders))
        )

    @property
    def modulus(self) -> int:
        return self.structure.modulus

    def is_trivial(self) -> bool:
        return not any(self.exponents)

    def __mul__(self, other: "DirichletCharacter") -> "DirichletCharacter":
        if other.structure != self.structure:
            raise ValueError("characters live on different moduli")
        return DirichletCharacter(
            self.structure, tuple(a + b for a, b in zip(self.exponents, other.exponents))
        )

    def __pow__(self, k: int) -> "DirichletCharacter":
        return DirichletCharacter(self.structure, tuple(k * e for e in self.exponents))


def character(modulus: int, exponents: Sequence[int]) -> DirichletCharacter:
    return DirichletCharacter(unit_group_structure(modulus), tuple(exponents))


def all_characters(modulus: int) -> Iterator[DirichletCharacter]:
    s = unit_group_structure(modulus)
    for exps in product(*(range(n) for n in s.orders)):
        yield DirichletCharacter(s, exps)


def _value(chi: DirichletCharacter, logs: Sequence[int]) -> Fraction:
    return sum(
        (Fraction(e * l, n) for e, l, n in zip(chi.exponents, logs, chi.structure.orders)),
        Fraction(0),
    )


def char_eval(chi: DirichletCharacter, a: int) -> Optional[RootOfUnity]:
    """chi(a) as a root of unity, or None when gcd(a, modulus) > 1."""
    m = chi.modulus
    if math.gcd(a, m) != 1:
        return None
    return RootOfUnity.from_fraction(_value(chi, chi.structure.dlog(a % m)))


def value_away_from(chi: DirichletCharacter, a: int, p: int) -> RootOfUnity:
    """chi(a) computed on the components of primes other than p only.

    When chi has trivial p-component this is the value of the primitive
    character attached to chi at an integer a divisible by p.
    """
    s = chi.structure
    total = Fraction(0)
    done = set()
    for c in s.components:
        if c.prime == p or c.prime in done:
            continue
        done.add(c.prime)
        q = c.prime_power
        logs = _local_dlog(c.prime, q)[a % q]
        idx = s.indices_at(c.prime)
        for i, l in zip(idx, logs):
            total += Fraction(chi.exponents[i] * l, s.orders[i])
    return RootOfUnity.from_fraction(total)


def local_conductor_exponent(p: int, prime_power: int, exps: Sequence[int]) -> int:
    """p-exponent of the conductor of a character of (Z/p^a)*.

    ``exps`` are the exponents on the local generators (one entry for odd
    p and for 4, two entries (sign, 5-part) for 2^a with a >= 3).
    """
    a = valuation(prime_power, p)
    if p != 2:
        (e,) = exps
        return 0 if e == 0 else a - valuation(e, p)
    if a <= 1:
        return 0
    if a == 2:
        return 2 if exps[0] else 0
    s, t = exps
    if t:
        return a - valuation(t, 2)
    return 2 if s else 0


def conductor_exponents(chi: DirichletCharacter) -> dict[int, int]:
    s = chi.structure
    out = {}
    for p, a in factor(s.modulus):
        idx = s.indices_at(p)
        c = local_conductor_exponent(p, p**a, [chi.exponents[i] for i in idx])
        if c:
            out[p] = c
    return out


def conductor(chi: DirichletCharacter) -> int:
    """Smallest f | M such that chi factors through (Z/f)*."""
    return math.prod(p**c for p, c in conductor_exponents(chi).items())


def char_order(chi: DirichletCharacter) -> int:
    return math.lcm(*(n // math.gcd(e, n) for e, n in zip(chi.exponents, chi.structure.orders)))


def char_parity(chi: DirichletCharacter) -> int:
    v = char_eval(chi, -1)
    return 1 if v.k == 0 else -1


def _unit_lift(residue: int, modulus: int, target: int) -> int:
    """An integer congruent to residue mod modulus and prime to target."""
    x = residue % modulus if modulus > 1 else 1
    while math.gcd(x, target) != 1:
        x += modulus
    return x


def change_modulus(chi: DirichletCharacter, new_modulus: int) -> DirichletCharacter:
    """The character mod ``new_modulus`` inducing the same primitive character.

    Requires conductor(chi) | new_modulus.  Covers both inducing to a
    multiple and restricting down towards the conductor.
    """
    if new_modulus % conductor(chi):
        raise ValueError(
            f"conductor {conductor(chi)} does not divide the new modulus {new_modulus}"
        )
    target = unit_group_structure(new_modulus)
    m = chi.modulus
    exps = []
    for c in target.components:
        b = _unit_lift(c.generator, new_modulus, m)
        v = char_eval(chi, b).as_fraction() * c.order
        assert v.denominator == 1
        exps.append(int(v))
    return DirichletCharacter(target, tuple(exps))


def primitive(chi: DirichletCharacter) -> DirichletCharacter:
    return change_modulus(chi, conductor(chi))

