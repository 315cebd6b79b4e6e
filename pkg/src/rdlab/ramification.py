"""Ramification filtrations of local abelian extensions.

Filtrations are stored by group orders only.  Lower numbering is the list
``[|G_0|, |G_1|, ..., 1]``; upper numbering is a list of jumps ``(v, order)``
meaning ``|G^w| = order`` for w in (previous jump, v].  The two are related
by the Herbrand function

    phi(u) = (g_1 + ... + g_u) / g_0,    G_u = G^{phi(u)}.

All local data is derived from conductor exponents of characters, so no
p-adic element arithmetic is needed anywhere.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Tuple, Union

from rdlab.arith import is_prime, valuation


@dataclass(frozen=True)
class LowerFiltration:
    orders: Tuple[int, ...]

    def __post_init__(self):
        g = tuple(int(x) for x in self.orders)
        object.__setattr__(self, "orders", g)
        if not g or g[-1] != 1:
            raise ValueError(f"filtration must end with the trivial group: {list(g)}")
        if any(x < 1 for x in g):
            raise ValueError("group orders must be positive")
        if 1 in g[:-1]:
            raise ValueError("filtration must stop at the first trivial group")
        for a, b in zip(g, g[1:]):
            if a % b:
                raise ValueError(f"{b} does not divide {a}: not a chain of subgroups")

    def __getitem__(self, u: int) -> int:
        """|G_u|, with G_u trivial beyond the stored list."""
        return self.orders[u] if u < len(self.orders) else 1

    def __len__(self):
        return len(self.orders)

    @property
    def is_tame(self) -> bool:
        return self[1] == 1

    def __str__(self):
        return "[" + ",".join(map(str, self.orders)) + "]"


@dataclass(frozen=True)
class UpperJumps:
    jumps: Tuple[Tuple[Fraction, int], ...]

    def __post_init__(self):
        js = tuple((Fraction(v), int(o)) for v, o in self.jumps)
        object.__setattr__(self, "jumps", js)
        for v, o in js:
            if v < 0 or o < 2:
                raise ValueError(f"invalid jump ({v}, {o})")
        for (v1, o1), (v2, o2) in zip(js, js[1:]):
            if not (v1 < v2 and o1 > o2 and o1 % o2 == 0):
                raise ValueError("jumps must increase with orders strictly dividing")

    def __len__(self):
        return len(self.jumps)

    def __iter__(self):
        return iter(self.jumps)

    def as_json(self) -> list:
        return [[_num(v), o] for v, o in self.jumps]


def _num(x: Fraction) -> Union[int, str]:
    return int(x) if x.denominator == 1 else str(x)


def lower(orders: Iterable[int]) -> LowerFiltration:
    return LowerFiltration(tuple(orders))


def different_valuation(F: LowerFiltration) -> int:
    """Hilbert's formula: sum over i >= 0 of (|G_i| - 1)."""
    return sum(g - 1 for g in F.orders)


def disc_valuation(F: LowerFiltration, f: int, g: int) -> int:
    """v_p of the discriminant of a Galois extension with these local invariants."""
    if f < 1 or g < 1:
        raise ValueError("f and g must be positive")
    return g * f * different_valuation(F)


def herbrand_phi(F: LowerFiltration, u: int) -> Fraction:
    # (g_0 + ... + g_u)/g_0 - 1; the -1 cancels the g_0 term so phi(0) = 0
    if u < 0:
        raise ValueError("u must be nonnegative")
    g0 = F[0]
    return Fraction(sum(F[i] for i in range(u + 1)), g0) - 1


def upper_from_lower(F: LowerFiltration) -> UpperJumps:
    jumps = []
    for u in range(len(F) - 1):
        if F[u] > F[u + 1]:
            jumps.append((herbrand_phi(F, u), F[u]))
    return UpperJumps(tuple(jumps))


def lower_from_upper(U: UpperJumps) -> LowerFiltration:
    """Invert :func:`upper_from_lower` through psi, the inverse of phi.

    Raises ValueError when a lower break would not be an integer.
    """
    if not U.jumps:
        return LowerFiltration((1,))
    g0 = U.jumps[0][1]
    breaks = []
    u = Fraction(0)
    prev_v = Fraction(0)
    for v, order in U.jumps:
        # psi has slope g0/|G^w| on (prev_v, v]
        u += (v - prev_v) * Fraction(g0, order)
        if u.denominator != 1:
            raise ValueError(f"upper jump {v} maps to non-integral lower break {u}")
        breaks.append((int(u), order))
        prev_v = v
    orders = []
    for b, order in breaks:
        orders.extend([order] * (b + 1 - len(orders)))
    orders.append(1)
    return LowerFiltration(tuple(orders))


def hasse_arf_check(U: UpperJumps) -> bool:
    """True iff every upper jump sits at an integer."""
    return all(v.denominator == 1 for v, _ in U.jumps)


def upper_groups_from_characters(exponents: Iterable[int]) -> UpperJumps:
    """Upper filtration of a local abelian extension from its characters.

    ``exponents`` lists the conductor exponent of each character of the
    (decomposition) group.  A character is trivial on G^v exactly when its
    exponent is at most v, so |G^v| = total / #{c <= v} for integer v >= 0.
    """
    cs = sorted(exponents)
    if not cs:
        raise ValueError("need at least the trivial character")
    if cs[0] != 0:
        raise ValueError("the trivial character (exponent 0) must be present")
    total = len(cs)

    def order_at(v: int) -> int:
        k = sum(1 for c in cs if c <= v)
        if total % k:
            raise ValueError("exponent counts are not compatible with a group")
        return total // k

    jumps = []
    for v in range(cs[-1]):
        here, nxt = order_at(v), order_at(v + 1)
        if here > nxt:
            jumps.append((Fraction(v), here))
    return UpperJumps(tuple(jumps))


def lower_from_characters(exponents: Iterable[int]) -> LowerFiltration:
    return lower_from_upper(upper_groups_from_characters(exponents))


def conductor_exponent(U: UpperJumps) -> Union[int, Fraction]:
    """1 + the last upper jump, or 0 for an unramified extension."""
    if not U.jumps:
        return 0
    c = U.jumps[-1][0] + 1
    return int(c) if c.denominator == 1 else c


def cyclotomic_filtration(p: int, n: int) -> LowerFiltration:
    """Lower filtration of Q_p(zeta_{p^n}) / Q_p.

    |G_0| = p^(n-1)(p-1) and |G_u| = p^(n-k) for p^(k-1) <= u <= p^k - 1.
    """
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    if n < 1 or p**n < 3:
        raise ValueError("need p^n >= 3")
    orders = [p ** (n - 1) * (p - 1)]
    for k in range(1, n + 1):
        orders.extend([p ** (n - k)] * (p**k - p ** (k - 1)))
    F = LowerFiltration(tuple(orders[: p ** (n - 1)] + [1]))
    expected = p ** (n - 1) * (n * p - n - 1)
    if different_valuation(F) != expected:
        raise ArithmeticError(f"different {different_valuation(F)} != {expected}")
    return F


def wild_part(F: LowerFiltration) -> LowerFiltration:
    """Filtration of the extension over the maximal tame subextension.

    Lower numbering passes to subgroups, and the wild inertia group is
    G_1, so only G_0 changes.
    """
    if F.is_tame:
        return LowerFiltration((1,))
    return LowerFiltration((F[1],) + F.orders[1:])


def lemma_j_check(F: LowerFiltration, p: int) -> bool:
    """Each subgroup of order p^(t-i) must occur as G_m for >= p^i indices m >= 1.

    F must come from a totally ramified cyclic p-extension, |G_0| = p^t.
    """
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    for g in F.orders:
        if p ** valuation(g, p) != g:
            raise ValueError(f"{g} is not a power of {p}")
    t = valuation(F[0], p)
    for i in range(t):
        target = p ** (t - i)
        count = sum(1 for m in range(1, len(F)) if F[m] == target)
        if count < p**i:
            return False
    return True
