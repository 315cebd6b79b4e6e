"""Enumerate every abelian extension of Q with root discriminant <= N.

Two facts make the search finite and cheap.

* If p ramifies with index e, v_p(rd) >= (e - 1)/e >= 1/2, so p <= N^2.
* If the p-part of the conductor is p^a with a >= 2 (a >= 3 for p = 2),
  the characters whose p-exponent is exactly a fill the complement of a
  subgroup of index p (index 2 for p = 2), so v_p(rd) >= a (1 - 1/p)
  (resp. a/2).  That bounds a.

For a character group X with projections X_p onto the p-components,
v_p(disc) = |X| / |X_p| * sum of c_p over X_p, so v_p(rd) depends on X_p
alone.  The search therefore picks admissible local groups X_p prime by
prime, keeps tuples whose product of local factors is <= N, and then
lists the subgroups of prod X_p that project onto every X_p.  Every
subgroup of the full character group modulo prod p^(a_p) with rd <= N is
reached exactly this way.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass, field
from typing import Dict, Iterator, List, Optional, Sequence, Tuple, Union

from rdlab import groups
from rdlab.arith import (
    Bound,
    BoundLike,
    RootDiscriminant,
    as_bound,
    primes_up_to,
    rd_leq_bound,
)
from rdlab.characters import local_conductor_exponent, unit_group_structure
from rdlab.fields import AbelianField, canonicalize, root_discriminant, sort_fields

DEFAULT_CEILING = 1_000_000
CEILING_ENV = "RDLAB_CEILING"


class SearchSpaceExceeded(RuntimeError):
    def __init__(self, size: int, ceiling: int):
        super().__init__(
            f"enumeration search space {size} exceeds the ceiling {ceiling} "
            f"(raise it with ${CEILING_ENV})"
        )
        self.size = size
        self.ceiling = ceiling


def default_ceiling() -> int:
    raw = os.environ.get(CEILING_ENV)
    if raw is None:
        return DEFAULT_CEILING
    try:
        value = int(raw)
    except ValueError:
        raise ValueError(f"${CEILING_ENV} must be an integer, got {raw!r}") from None
    if value < 1:
        raise ValueError(f"${CEILING_ENV} must be positive")
    return value


def ramified_prime_bound(n: BoundLike) -> int:
    """floor(N^2): no prime above it ramifies in a Galois field with rd <= N."""
    return as_bound(n).squared_floor()


def exponent_bound(p: int, n: BoundLike) -> int:
    """Largest conductor exponent at p compatible with rd <= N."""
    bound = as_bound(n)
    if p == 2:
        a = 2
        while bound.power_leq(2, a + 1, 2):
            a += 1
        return a
    a = 1
    while bound.power_leq(p, (a + 1) * (p - 1), p):
        a += 1
    return a


@dataclass(frozen=True)
class EnumerationParams:
    bound: Bound
    max_degree: Optional[int] = None
    ceiling: int = field(default_factory=default_ceiling)
    prime_bound: int = field(init=False)
    exponent_bounds: Dict[int, int] = field(init=False, hash=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "bound", as_bound(self.bound))
        if self.max_degree is not None and self.max_degree < 1:
            raise ValueError("max_degree must be positive")
        pb = ramified_prime_bound(self.bound)
        object.__setattr__(self, "prime_bound", pb)
        object.__setattr__(
            self, "exponent_bounds", {p: exponent_bound(p, self.bound) for p in primes_up_to(pb)}
        )


@dataclass(frozen=True)
class LocalGroup:
    """A subgroup of the characters of (Z/p^a)*, with its local rd factor."""

    prime: int
    prime_power: int
    form: groups.Matrix
    size: int
    exponent_sum: int

    @property
    def rd(self) -> RootDiscriminant:
        return RootDiscriminant(self.prime**self.exponent_sum, self.size)


def local_groups(p: int, a: int, bound: Bound, max_degree: Optional[int] = None) -> List[LocalGroup]:
    """Subgroups of the characters mod p^a whose local factor p^(avg c_p) is <= N.

    The trivial group comes first.
    """
    q = p**a
    orders = unit_group_structure(q).orders
    out = []
    for form in groups.iter_subgroups(orders):
        elems = groups.elements(form, orders)
        size = len(elems)
        if max_degree is not None and size > max_degree:
            continue
        total = sum(local_conductor_exponent(p, q, e) for e in elems)
        if not bound.power_leq(p, total, size):
            continue
        out.append(LocalGroup(p, q, form, size, total))
    out.sort(key=lambda g: (g.size, g.exponent_sum, g.form))
    return out


def admissible_tuples(params: EnumerationParams) -> List[Tuple[LocalGroup, ...]]:
    """Tuples of nontrivial local groups, at distinct primes, with product of factors <= N."""
    per_prime = []
    for p, a in sorted(params.exponent_bounds.items()):
        gs = [g for g in local_groups(p, a, params.bound, params.max_degree) if g.size > 1]
        if gs:
            per_prime.append(gs)
    out: List[Tuple[LocalGroup, ...]] = []

    def rec(i: int, chosen: Tuple[LocalGroup, ...], acc: RootDiscriminant):
        if i == len(per_prime):
            out.append(chosen)
            return
        rec(i + 1, chosen, acc)
        for g in per_prime[i]:
            nxt = acc * g.rd
            if rd_leq_bound(nxt, params.bound):
                rec(i + 1, chosen + (g,), nxt)

    rec(0, (), RootDiscriminant(1, 1))
    return out


def search_space(tuples: Sequence[Tuple[LocalGroup, ...]]) -> int:
    """Total size of the product groups whose subgroups get scanned."""
    return sum(math.prod(g.size for g in t) for t in tuples)


def _subdirect_products(
    local: Tuple[LocalGroup, ...], max_degree: Optional[int]
) -> Iterator[AbelianField]:
    """Fields whose projection onto each prime's characters is the given local group."""
    modulus = math.prod(g.prime_power for g in local)
    s = unit_group_structure(modulus)
    k = len(s.orders)
    basis: List[Tuple[Tuple[int, ...], int]] = []
    blocks: List[Tuple[int, int, List[int]]] = []
    for g in local:
        idx = s.indices_at(g.prime)
        local_orders = [s.orders[i] for i in idx]
        start = len(basis)
        for elem, order in groups.decompose(g.form, local_orders):
            vec = [0] * k
            for i, x in zip(idx, elem):
                vec[i] = x
            basis.append((tuple(vec), order))
        blocks.append((start, len(basis), [o for _, o in basis[start:]]))
    abstract_orders = [o for _, o in basis]
    for sub in groups.iter_subgroups(abstract_orders):
        if max_degree is not None and groups.subgroup_order(sub, abstract_orders) > max_degree:
            continue
        rows = groups.generators(sub, abstract_orders)
        if not all(
            groups.hermite_form([r[lo:hi] for r in rows], bo) == groups.full_form(bo)
            for lo, hi, bo in blocks
        ):
            continue
        gens = []
        for r in rows:
            v = [0] * k
            for c, (elem, _) in zip(r, basis):
                if c:
                    v = [x + c * y for x, y in zip(v, elem)]
            gens.append(v)
        yield canonicalize(AbelianField(modulus, groups.hermite_form(gens, s.orders)))


def enumerate_abelian_fields(
    params: Union[EnumerationParams, BoundLike], max_degree: Optional[int] = None
) -> List[AbelianField]:
    """All abelian fields with rd <= N, sorted by (degree, discriminant, spec).

    Raises SearchSpaceExceeded before doing any subgroup scan when the
    product groups to scan are larger than ``params.ceiling`` in total.
    """
    if not isinstance(params, EnumerationParams):
        params = EnumerationParams(as_bound(params), max_degree)
    tuples = admissible_tuples(params)
    size = search_space(tuples)
    if size > params.ceiling:
        raise SearchSpaceExceeded(size, params.ceiling)
    found = set()
    for t in tuples:
        for F in _subdirect_products(t, params.max_degree):
            if not rd_leq_bound(root_discriminant(F), params.bound):
                raise AssertionError(f"pruning admitted a field above the bound: {F}")
            found.add(F)
    return sort_fields(found)
