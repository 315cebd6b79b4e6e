"""Slow, independent reference computations used only by the tests.

Nothing here goes through the conductor formula, canonical forms or the
local-group pruning of the enumerator.  Conductors come from evaluating
characters directly, and fields from an enumeration are compared as
element sets inside one fixed character group.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache
from itertools import product

from rdlab.arith import factor, primes_up_to
from rdlab.characters import DirichletCharacter, char_eval, unit_group_structure
from rdlab.enumerator import exponent_bound, ramified_prime_bound
from rdlab.fields import from_generators


def cyclotomic_disc_prime_power(p: int, n: int) -> int:
    """|disc Q(zeta_{p^n})| from the closed form."""
    return p ** (p ** (n - 1) * (n * p - n - 1))


def cyclotomic_disc(m: int) -> int:
    """|disc Q(zeta_m)| = m^phi(m) / prod_{p | m} p^(phi(m)/(p-1))."""
    if m % 4 == 2:
        m //= 2
    phi = math.prod((p - 1) * p ** (k - 1) for p, k in factor(m))
    num = m**phi
    den = math.prod(p ** (phi // (p - 1)) for p in factor(m).primes())
    return num // den


def quadratic_disc(d: int) -> int:
    """Fundamental discriminant of Q(sqrt(d)) for squarefree d != 1."""
    return d if d % 4 == 1 else 4 * d


def brute_conductor(chi: DirichletCharacter) -> int:
    """Smallest divisor f of the modulus with chi trivial on units = 1 mod f."""
    m = chi.structure.modulus
    units = [a for a in range(1, m + 1) if math.gcd(a, m) == 1]
    for f in sorted(d for d in range(1, m + 1) if m % d == 0):
        if all(char_eval(chi, a).k == 0 for a in units if (a - 1) % f == 0):
            return f
    raise AssertionError("unreachable")


@lru_cache(maxsize=None)
def local_conductor_exponent_brute(p: int, b: int, exps: tuple) -> int:
    chi = DirichletCharacter(unit_group_structure(p**b), exps)
    f = brute_conductor(chi)
    c = 0
    while f % p == 0:
        f //= p
        c += 1
    return c


def _local_orders(p: int, b: int) -> tuple:
    return unit_group_structure(p**b).orders


def _add(u, v, orders):
    return tuple((x + y) % n for x, y, n in zip(u, v, orders))


def _span(gens, orders) -> frozenset:
    zero = tuple(0 for _ in orders)
    seen = {zero}
    frontier = [zero]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = _add(x, g, orders)
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
        frontier = nxt
    return frozenset(seen)


class BruteEnumeration:
    """All abelian fields with rd <= N, by cyclic search and join closure.

    Primes up to floor(N^2) and conductor exponents inflated by
    ``slack`` over :func:`exponent_bound`.  Every abelian field is the
    join of its cyclic subfields and rd never drops below that of a
    subfield, so closing the cyclic fields of rd <= N under joins that
    stay <= N reaches every field.
    """

    def __init__(self, bound, slack: int = 2):
        from rdlab.arith import as_bound

        self.bound = as_bound(bound)
        self.primes = primes_up_to(ramified_prime_bound(self.bound))
        self.exps = {p: exponent_bound(p, self.bound) + slack for p in self.primes}
        self.blocks = []
        orders = []
        for p in self.primes:
            lo = len(orders)
            orders.extend(_local_orders(p, self.exps[p]))
            self.blocks.append((p, lo, len(orders)))
        self.orders = tuple(orders)
        self.modulus = math.prod(p ** self.exps[p] for p in self.primes)

    def disc(self, elems) -> int:
        out = 1
        for p, lo, hi in self.blocks:
            b = self.exps[p]
            out *= p ** sum(local_conductor_exponent_brute(p, b, e[lo:hi]) for e in elems)
        return out

    def rd_ok(self, elems) -> bool:
        return self.bound.power_leq(self.disc(elems), 1, len(elems))

    def _local_candidates(self, p, lo, hi):
        b = self.exps[p]
        orders = self.orders[lo:hi]
        out = []
        for psi in product(*(range(n) for n in orders)):
            span = _span([psi], orders)
            total = sum(local_conductor_exponent_brute(p, b, x) for x in span)
            if self.bound.power_leq(p, total, len(span)):
                out.append((psi, Fraction(total, len(span))))
        return out

    def cyclic_fields(self):
        cands = [(p, lo, hi, self._local_candidates(p, lo, hi)) for p, lo, hi in self.blocks]
        k = len(self.orders)
        found = set()

        def rec(i, vec, logs):
            # logs: exponent of each prime in the rd of the cyclic group so far
            if i == len(cands):
                found.add(_span([tuple(vec)], self.orders))
                return
            p, lo, hi, local = cands[i]
            for psi, v in local:
                new_logs = logs + [(p, v)]
                # prod p^v <= N  <=>  prod p^(v * D) <= N^D with D a common denominator
                den = math.lcm(1, *(x.denominator for _, x in new_logs))
                num = math.prod(q ** int(x * den) for q, x in new_logs)
                if not self.bound.power_leq(num, 1, den):
                    continue
                rec(i + 1, vec[:lo] + list(psi) + vec[hi:], new_logs)

        rec(0, [0] * k, [])
        return {S for S in found if self.rd_ok(S)}

    def fields(self):
        current = set(self.cyclic_fields())
        todo = list(current)
        while todo:
            A = todo.pop()
            for B in list(current):
                C = _span(list(A | B), self.orders)
                if C not in current and self.rd_ok(C):
                    current.add(C)
                    todo.append(C)
        return current

    def to_library(self, elems):
        """The same field in the library's canonical representation."""
        s = unit_group_structure(self.modulus)
        vec_index = []
        for p, lo, hi in self.blocks:
            idx = s.indices_at(p)
            assert len(idx) == hi - lo
            vec_index.extend(idx)
        gens = []
        for e in elems:
            v = [0] * len(s.orders)
            for j, x in zip(vec_index, e):
                v[j] = x
            gens.append(v)
        return from_generators(self.modulus, gens)


def brute_enumerate(bound, slack: int = 2):
    """Pairs (library field, brute-force discriminant) for every field with rd <= N."""
    oracle = BruteEnumeration(bound, slack)
    return {oracle.to_library(S): oracle.disc(S) for S in oracle.fields()}


def brute_subgroup_count(orders) -> int:
    """Number of subgroups of Z/n_1 x ... x Z/n_k, spanning by <= k generators."""
    elems = list(product(*(range(n) for n in orders)))
    seen = set()
    for gens in product(elems, repeat=len(orders)):
        seen.add(_span(list(gens), tuple(orders)))
    return len(seen)
