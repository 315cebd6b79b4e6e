"""Abelian number fields as groups of Dirichlet characters.

By Kronecker-Weber every finite abelian extension of Q is a subfield of a
cyclotomic field and corresponds to a finite group X of primitive
characters.  A field is stored as its conductor together with the
canonical form of X inside the character group modulo the conductor, so
two fields are equal exactly when their dataclasses are equal.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from itertools import product
from typing import NamedTuple, Sequence, Tuple

from rdlab import groups
from rdlab.arith import RootDiscriminant, factor, is_prime, squarefree_kernel
from rdlab.characters import (
    DirichletCharacter,
    UnitGroupStructure,
    change_modulus,
    char_parity,
    conductor,
    local_conductor_exponent,
    unit_group_structure,
    value_away_from,
)


@dataclass(frozen=True)
class AbelianField:
    """A subgroup of the characters modulo ``modulus``.

    Instances built through :func:`canonicalize` (and every constructor in
    this module) have ``modulus`` equal to the field's conductor.
    """

    modulus: int
    form: groups.Matrix

    @property
    def structure(self) -> UnitGroupStructure:
        return unit_group_structure(self.modulus)

    @property
    def orders(self) -> Tuple[int, ...]:
        return self.structure.orders

    def generators(self) -> list[Tuple[int, ...]]:
        return groups.generators(self.form, self.orders)

    def characters(self) -> list[DirichletCharacter]:
        s = self.structure
        return [DirichletCharacter(s, v) for v in _elements(self)]

    @property
    def degree(self) -> int:
        return field_degree(self)

    def __str__(self) -> str:
        return to_spec(self)


@lru_cache(maxsize=65536)
def _elements(F: AbelianField) -> Tuple[Tuple[int, ...], ...]:
    return tuple(groups.elements(F.form, F.orders))


def from_generators(modulus: int, gens: Sequence[Sequence[int]]) -> AbelianField:
    """The field cut out by the characters ``gens`` (exponent vectors mod ``modulus``)."""
    s = unit_group_structure(modulus)
    return canonicalize(AbelianField(modulus, groups.hermite_form(gens, s.orders)))


def canonicalize(F: AbelianField) -> AbelianField:
    """Reduce the modulus to the conductor and put the group in canonical form."""
    s = F.structure
    gens = [DirichletCharacter(s, g) for g in groups.generators(F.form, s.orders)]
    f = math.lcm(1, *(conductor(chi) for chi in gens))
    target = unit_group_structure(f)
    moved = [change_modulus(chi, f).exponents for chi in gens]
    return AbelianField(f, groups.hermite_form(moved, target.orders))


def rational_field() -> AbelianField:
    return AbelianField(1, ())


def cyclotomic_field(m: int) -> AbelianField:
    if m < 1:
        raise ValueError("cyclotomic field needs m >= 1")
    s = unit_group_structure(m)
    return canonicalize(AbelianField(m, groups.full_form(s.orders)))


def quadratic_field(d: int) -> AbelianField:
    """Q(sqrt(d)) for a nonzero integer d; squares give Q."""
    if d == 0:
        raise ValueError("quadratic field needs d != 0")
    d = squarefree_kernel(d)
    if d == 1:
        return rational_field()
    disc = d if d % 4 == 1 else 4 * d
    f = abs(disc)
    s = unit_group_structure(f)
    sign = 1 if d > 0 else -1
    halves = [(0, n // 2) if n % 2 == 0 else (0,) for n in s.orders]
    for exps in product(*halves):
        chi = DirichletCharacter(s, exps)
        if chi.is_trivial():
            continue
        if conductor(chi) == f and char_parity(chi) == sign:
            return AbelianField(f, groups.hermite_form([exps], s.orders))
    raise AssertionError(f"no primitive quadratic character of conductor {f}")


@lru_cache(maxsize=65536)
def field_degree(F: AbelianField) -> int:
    return groups.subgroup_order(F.form, F.orders)


def disc_valuations(F: AbelianField) -> dict[int, int]:
    """{p: v_p(disc F)} from the conductor-discriminant formula."""
    return dict(_disc_valuations(F))


@lru_cache(maxsize=65536)
def _disc_valuations(F: AbelianField) -> Tuple[Tuple[int, int], ...]:
    s = F.structure
    out = []
    for p, a in factor(F.modulus):
        idx = s.indices_at(p)
        total = sum(
            local_conductor_exponent(p, p**a, [v[i] for i in idx]) for v in _elements(F)
        )
        if total:
            out.append((p, total))
    return tuple(out)


def discriminant(F: AbelianField) -> int:
    """Absolute discriminant: the product of the conductors of all characters."""
    return math.prod(p**k for p, k in _disc_valuations(F))


def root_discriminant(F: AbelianField) -> RootDiscriminant:
    return RootDiscriminant(discriminant(F), field_degree(F))


def field_conductor(F: AbelianField) -> int:
    s = F.structure
    return math.lcm(
        1, *(conductor(DirichletCharacter(s, g)) for g in groups.generators(F.form, s.orders))
    )


def ramified_primes(F: AbelianField) -> list[int]:
    return factor(field_conductor(F)).primes()


def is_totally_real(F: AbelianField) -> bool:
    s = F.structure
    return all(char_parity(DirichletCharacter(s, g)) == 1 for g in F.generators())


def signature(F: AbelianField) -> tuple[int, int]:
    n = field_degree(F)
    return (n, 0) if is_totally_real(F) else (0, n // 2)


@lru_cache(maxsize=65536)
def induced_form(F: AbelianField, modulus: int) -> groups.Matrix:
    """Canonical form of F's character group viewed modulo a multiple of its conductor."""
    if modulus % F.modulus:
        raise ValueError(f"{modulus} is not a multiple of the conductor {F.modulus}")
    s = F.structure
    target = unit_group_structure(modulus)
    moved = [
        change_modulus(DirichletCharacter(s, g), modulus).exponents for g in F.generators()
    ]
    return groups.hermite_form(moved, target.orders)


@lru_cache(maxsize=65536)
def compositum(F1: AbelianField, F2: AbelianField) -> AbelianField:
    m = math.lcm(F1.modulus, F2.modulus)
    orders = unit_group_structure(m).orders
    form = groups.join(induced_form(F1, m), induced_form(F2, m), orders)
    return canonicalize(AbelianField(m, form))


@lru_cache(maxsize=65536)
def intersect(F1: AbelianField, F2: AbelianField) -> AbelianField:
    m = math.lcm(F1.modulus, F2.modulus)
    orders = unit_group_structure(m).orders
    form = groups.meet(induced_form(F1, m), induced_form(F2, m), orders)
    return canonicalize(AbelianField(m, form))


@lru_cache(maxsize=65536)
def is_subfield(F1: AbelianField, F2: AbelianField) -> bool:
    """True iff F1 is contained in F2."""
    if F2.modulus % F1.modulus:
        return False
    return groups.is_subgroup(induced_form(F1, F2.modulus), F2.form, F2.orders)


def subfields(F: AbelianField) -> list[AbelianField]:
    """All subfields of F (including Q and F itself)."""
    out = {canonicalize(AbelianField(F.modulus, sub)) for sub in _subgroups_of(F)}
    return sort_fields(out)


def _subgroups_of(F: AbelianField) -> list[groups.Matrix]:
    basis = groups.decompose(F.form, F.orders)
    if not basis:
        return [F.form]
    out = []
    for sub in groups.iter_subgroups([n for _, n in basis]):
        gens = []
        for row in groups.generators(sub, [n for _, n in basis]):
            v = [0] * len(F.orders)
            for c, (elem, _) in zip(row, basis):
                v = [x + c * y for x, y in zip(v, elem)]
            gens.append(v)
        out.append(groups.hermite_form(gens, F.orders))
    return out


class LocalData(NamedTuple):
    e: int
    f: int
    g: int
    exponents: Tuple[int, ...]  # p-conductor exponents over the decomposition group dual


@lru_cache(maxsize=65536)
def local_data(F: AbelianField, p: int) -> LocalData:
    """Ramification index, residue degree, splitting number and local conductor data at p.

    The inertia group at p is dual to the projection X_p of the character
    group onto the p-components, so e = |X_p|.  The decomposition group is
    dual to X/Y where Y holds the characters unramified at p with
    chi(p) = 1; each element of X_p has f preimages in X/Y, which is how the
    exponent multiset is assembled.
    """
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    s = F.structure
    idx = s.indices_at(p)
    elems = _elements(F)
    n = len(elems)
    if idx:
        local_orders = [s.orders[i] for i in idx]
        q = s.components[idx[0]].prime_power
        proj = groups.hermite_form([[v[i] for i in idx] for v in F.generators()], local_orders)
        local = groups.elements(proj, local_orders)
        cexps = [local_conductor_exponent(p, q, psi) for psi in local]
    else:
        cexps = [0]
    e = len(cexps)
    unramified = [v for v in elems if all(v[i] == 0 for i in idx)]
    f = math.lcm(
        1, *(value_away_from(DirichletCharacter(s, v), p, p).n for v in unramified)
    )
    g = n // (e * f)
    assert e * f * g == n
    return LocalData(e, f, g, tuple(sorted(cexps * f)))


def to_spec(F: AbelianField) -> str:
    """Canonical text encoding; parses back to the identical field."""
    if F.modulus == 1:
        return "Q"
    gens = ",".join("/".join(str(x) for x in g) for g in F.generators())
    return f"chars:mod={F.modulus};gens={gens}"


def sort_key(F: AbelianField) -> tuple:
    return (field_degree(F), discriminant(F), to_spec(F))


def sort_fields(fields) -> list[AbelianField]:
    return sorted(fields, key=sort_key)


@lru_cache(maxsize=64)
def fields_up_to_conductor(limit: int) -> Tuple[AbelianField, ...]:
    """Every abelian field of conductor at most ``limit``, sorted."""
    out = []
    for m in range(1, limit + 1):
        s = unit_group_structure(m)
        for form in groups.iter_subgroups(s.orders):
            F = AbelianField(m, form)
            if field_conductor(F) == m:
                out.append(F)
    return tuple(sort_fields(out))
