"""Checks of discriminant identities and inequalities on concrete fields.

Each checker computes both sides along independent routes and returns a
report; a failing report points at a bug in this package, since every
relation checked here is a theorem.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, Tuple

from rdlab.arith import RootDiscriminant, is_prime, rd_product_compare, valuation
from rdlab.characters import unit_group_structure
from rdlab.fields import (
    AbelianField,
    compositum,
    disc_valuations,
    field_degree,
    intersect,
    is_subfield,
    local_data,
    ramified_primes,
    root_discriminant,
)
from rdlab.groups import invariant_factors
from rdlab.ramification import different_valuation, lower_from_characters


@dataclass
class TowerReport:
    holds: bool
    per_prime: List[Tuple[int, int, int]] = field(default_factory=list)  # (p, lhs, rhs)


@dataclass
class MultReport:
    holds: bool
    equality: bool
    lhs: Tuple[RootDiscriminant, RootDiscriminant]  # rd(EF), rd(E meet F)
    rhs: Tuple[RootDiscriminant, RootDiscriminant]  # rd(E), rd(F)


@dataclass
class OreReport:
    holds: bool
    lhs: int
    rhs: Fraction


def local_different(F: AbelianField, p: int) -> int:
    """v_P of the local different at p, from the character-derived filtration."""
    return different_valuation(lower_from_characters(local_data(F, p).exponents))


def tower_check(K: AbelianField, L: AbelianField) -> TowerReport:
    """Check v_p(d_L) = v_p(N_{K/Q} d_{L/K}) + [L:K] v_p(d_K) at every ramified p.

    The norm of the relative discriminant is obtained from transitivity of
    the different, D_{L/Q_p} = D_{L/K} D_{K/Q_p}, using local filtrations;
    v_p(d_L) itself never enters the right-hand side.
    """
    if not is_subfield(K, L):
        raise ValueError("K is not a subfield of L")
    rel_degree = field_degree(L) // field_degree(K)
    disc_l = disc_valuations(L)
    disc_k = disc_valuations(K)
    report = TowerReport(True)
    for p in ramified_primes(L):
        loc_l = local_data(L, p)
        loc_k = local_data(K, p)
        e_rel = loc_l.e // loc_k.e
        rel_different = local_different(L, p) - e_rel * local_different(K, p)
        norm_rel_disc = loc_l.f * loc_l.g * rel_different
        lhs = disc_l.get(p, 0)
        rhs = norm_rel_disc + rel_degree * disc_k.get(p, 0)
        report.per_prime.append((p, lhs, rhs))
        if lhs != rhs:
            report.holds = False
    return report


def mult_lemma_check(E: AbelianField, F: AbelianField) -> MultReport:
    """rd(EF) rd(E meet F) <= rd(E) rd(F), decided exactly."""
    lhs = (root_discriminant(compositum(E, F)), root_discriminant(intersect(E, F)))
    rhs = (root_discriminant(E), root_discriminant(F))
    c = rd_product_compare(lhs, rhs)
    return MultReport(c <= 0, c == 0, lhs, rhs)


def ore_bound_check(E: AbelianField, p: int) -> OreReport:
    """v_p(d_E) <= n (1 + v_p(e) - 1/e) with n = [E:Q] and e the ramification index at p."""
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    n = field_degree(E)
    e = local_data(E, p).e
    lhs = disc_valuations(E).get(p, 0)
    rhs = n * (1 + valuation(e, p) - Fraction(1, e))
    return OreReport(lhs <= rhs, lhs, rhs)


def ray_class_group_Q(m: int, with_infinity: bool = True) -> List[int]:
    """Invariant factors of the ray class group of Q modulo m (times infinity).

    With the real place the group is (Z/m)*; without it, the image of the
    global units {+1, -1} is divided out.
    """
    if m < 1:
        raise ValueError("modulus must be positive")
    s = unit_group_structure(m)
    k = len(s.orders)
    if k == 0:
        return []
    relations = [[s.orders[i] if i == j else 0 for j in range(k)] for i in range(k)]
    if not with_infinity:
        relations.append(list(s.dlog(m - 1)))
    return invariant_factors(relations, k)


def group_order(invariants: List[int]) -> int:
    return math.prod(invariants)
