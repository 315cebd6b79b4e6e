"""Property suites run over every abelian field of bounded conductor.

Each suite returns a :class:`SuiteResult` listing structured failures.
All checked relations are theorems, so any failure is a bug here.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Dict, List, Sequence

from rdlab import groups
from rdlab.arith import euler_phi
from rdlab.fields import (
    AbelianField,
    cyclotomic_field,
    disc_valuations,
    discriminant,
    fields_up_to_conductor,
    is_subfield,
    local_data,
    ramified_primes,
    subfields,
    to_spec,
)
from rdlab.ramification import (
    LowerFiltration,
    conductor_exponent,
    disc_valuation,
    hasse_arf_check,
    lemma_j_check,
    lower_from_upper,
    upper_from_lower,
    upper_groups_from_characters,
    wild_part,
)
from rdlab.towers import (
    group_order,
    mult_lemma_check,
    ore_bound_check,
    ray_class_group_Q,
    tower_check,
)

# pairs with a larger degree product make the compositum expensive
MULT_DEGREE_CAP = 64


@dataclass
class SuiteResult:
    suite: str
    target: str
    checked: int = 0
    failures: List[dict] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures

    def fail(self, **detail):
        self.failures.append(detail)


def suite_mult(corpus: Sequence[AbelianField]) -> SuiteResult:
    res = SuiteResult("mult", "rd(EF) rd(E meet F) <= rd(E) rd(F); equality when gcd(d_E, d_F) = 1")
    for i, E in enumerate(corpus):
        for F in corpus[i:]:
            if E.degree * F.degree > MULT_DEGREE_CAP:
                continue
            r = mult_lemma_check(E, F)
            res.checked += 1
            coprime = math.gcd(discriminant(E), discriminant(F)) == 1
            if not r.holds or (coprime and not r.equality):
                res.fail(
                    E=to_spec(E),
                    F=to_spec(F),
                    lhs=[[x.disc, x.degree] for x in r.lhs],
                    rhs=[[x.disc, x.degree] for x in r.rhs],
                    coprime=coprime,
                )
    return res


def suite_ore(corpus: Sequence[AbelianField]) -> SuiteResult:
    res = SuiteResult("ore", "v_p(d_E) <= n (1 + v_p(e) - 1/e)")
    for E in corpus:
        for p in ramified_primes(E):
            r = ore_bound_check(E, p)
            res.checked += 1
            if not r.holds:
                res.fail(field=to_spec(E), p=p, lhs=r.lhs, rhs=str(r.rhs))
    return res


def suite_tower(corpus: Sequence[AbelianField]) -> SuiteResult:
    res = SuiteResult("tower", "d_L = N_K(d_{L/K}) d_K^[L:K]")
    for L in corpus:
        for K in corpus:
            if K.degree > L.degree or L.degree % K.degree or not is_subfield(K, L):
                continue
            r = tower_check(K, L)
            res.checked += 1
            if not r.holds:
                res.fail(K=to_spec(K), L=to_spec(L), per_prime=[list(t) for t in r.per_prime])
    return res


def suite_hasse_arf(corpus: Sequence[AbelianField]) -> SuiteResult:
    """Integral upper jumps, the filtration form of v_p(disc), and conductor = last jump + 1."""
    res = SuiteResult(
        "hasse-arf",
        "upper jumps integral; v_p(d) = g f sum(|G_i| - 1); f_p = last jump + 1",
    )
    for F in corpus:
        disc = disc_valuations(F)
        for p in ramified_primes(F):
            loc = local_data(F, p)
            upper = upper_groups_from_characters(loc.exponents)
            lower = lower_from_upper(upper)
            res.checked += 1
            problems = {}
            if not hasse_arf_check(upper):
                problems["jumps"] = upper.as_json()
            via_filtration = disc_valuation(lower, loc.f, loc.g)
            if via_filtration != disc[p]:
                problems["disc"] = [disc[p], via_filtration]
            if conductor_exponent(upper) != max(loc.exponents):
                problems["conductor"] = [max(loc.exponents), str(conductor_exponent(upper))]
            if upper_from_lower(lower) != upper:
                problems["round_trip"] = str(lower)
            if problems:
                res.fail(field=to_spec(F), p=p, **problems)
    # control: a filtration no abelian extension can have
    control = LowerFiltration((4, 2, 1))
    res.checked += 1
    if hasse_arf_check(upper_from_lower(control)):
        res.fail(control=str(control), expected="non-integral jump 1/2")
    return res


def _cyclic_inertia(F: AbelianField, p: int) -> bool:
    s = F.structure
    idx = s.indices_at(p)
    local_orders = [s.orders[i] for i in idx]
    proj = groups.hermite_form([[v[i] for i in idx] for v in F.generators()], local_orders)
    return len(groups.decompose(proj, local_orders)) <= 1


def lemma_j_fields(conductor_limit: int = 0) -> List[tuple]:
    """(field, p) pairs whose wild inertia is cyclic: cyclotomic subfields of
    conductor p^n <= 125 for p in 2, 3, 5, plus corpus fields up to the limit."""
    pairs = []
    for p in (2, 3, 5):
        n = 1
        while p**n <= 125:
            if p**n >= 3:
                pairs.extend((K, p) for K in subfields(cyclotomic_field(p**n)) if K.modulus > 1)
            n += 1
    if conductor_limit:
        pairs.extend((F, p) for F in fields_up_to_conductor(conductor_limit) for p in ramified_primes(F))
    seen = set()
    out = []
    for F, p in pairs:
        if (F, p) not in seen and _cyclic_inertia(F, p):
            seen.add((F, p))
            out.append((F, p))
    return out


def suite_lemma_j(conductor_limit: int) -> SuiteResult:
    res = SuiteResult(
        "lemma-j",
        "in a cyclic totally ramified p^t-extension the subgroup of order p^(t-i) is G_m for >= p^i indices m >= 1",
    )
    for F, p in lemma_j_fields(conductor_limit):
        lower = lower_from_upper(upper_groups_from_characters(local_data(F, p).exponents))
        wild = wild_part(lower)
        res.checked += 1
        if not lemma_j_check(wild, p):
            res.fail(field=to_spec(F), p=p, wild=str(wild))
    control = LowerFiltration((9, 9, 3, 1))
    res.checked += 1
    if lemma_j_check(control, 3):
        res.fail(control=str(control), expected="fails at i = 1")
    return res


def _element_orders_brute(m: int, with_infinity: bool) -> List[int]:
    units = [a for a in range(1, m + 1) if math.gcd(a, m) == 1]
    targets = {1 % m} if with_infinity else {1 % m, (m - 1) % m}
    seen = set()
    out = []
    for a in units:
        cls = a % m if with_infinity else min(a % m, (m - a) % m)
        if cls in seen:
            continue
        seen.add(cls)
        k, x = 1, a % m
        while x not in targets:
            x = x * a % m
            k += 1
        out.append(k)
    return sorted(out)


def _element_orders(invariants: Sequence[int]) -> List[int]:
    orders = [1]
    for d in invariants:
        orders = [math.lcm(o, d // math.gcd(d, c)) for o in orders for c in range(d)]
    return sorted(orders)


def suite_ray_class(conductor_limit: int) -> SuiteResult:
    res = SuiteResult("ray-class", "Cl_Q^(m oo) = (Z/m)*, Cl_Q^(m) = (Z/m)*/{+-1}")
    for m in range(1, conductor_limit + 1):
        phi = euler_phi(m)
        for inf in (True, False):
            inv = ray_class_group_Q(m, inf)
            expected = phi if inf or m <= 2 else phi // 2
            res.checked += 1
            problems = {}
            if group_order(inv) != expected:
                problems["order"] = [group_order(inv), expected]
            if any(b % a for a, b in zip(inv, inv[1:])):
                problems["divisibility"] = inv
            if _element_orders(inv) != _element_orders_brute(m, inf):
                problems["element_orders"] = inv
            if problems:
                res.fail(m=m, with_infinity=inf, **problems)
    return res


SUITES: Dict[str, Callable[[int], SuiteResult]] = {
    "mult": lambda c: suite_mult(fields_up_to_conductor(c)),
    "ore": lambda c: suite_ore(fields_up_to_conductor(c)),
    "tower": lambda c: suite_tower(fields_up_to_conductor(c)),
    "hasse-arf": lambda c: suite_hasse_arf(fields_up_to_conductor(c)),
    "lemma-j": suite_lemma_j,
    "ray-class": suite_ray_class,
}


def run_suite(name: str, conductor_limit: int = 60) -> List[SuiteResult]:
    if conductor_limit < 1:
        raise ValueError("conductor limit must be >= 1")
    if name == "all":
        return [run(conductor_limit) for run in SUITES.values()]
    if name not in SUITES:
        raise ValueError(f"unknown suite {name!r}")
    return [SUITES[name](conductor_limit)]
