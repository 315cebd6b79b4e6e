"""Subgroups of finite abelian groups ``Z/n_1 x ... x Z/n_k``.

A subgroup H is identified with its preimage lattice L in Z^k, which
contains ``diag(n) Z^k``.  The canonical form of H is the row Hermite
normal form of L: an upper triangular k x k matrix with diagonal entries
``d_j | n_j`` and entries above the diagonal reduced into ``[0, d_j)``.
Two generating sets give the same subgroup iff their forms are identical.
"""

from __future__ import annotations

import math
from itertools import product
from typing import Iterable, Iterator, Sequence, Tuple

from rdlab.arith import divisors

Matrix = Tuple[Tuple[int, ...], ...]
Vector = Tuple[int, ...]


def _egcd(a: int, b: int) -> tuple[int, int, int]:
    x0, y0, x1, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    return a, x0, y0


def hermite_form(gens: Iterable[Sequence[int]], orders: Sequence[int]) -> Matrix:
    """Canonical form of the subgroup generated by ``gens``."""
    k = len(orders)
    rows = [[x % n for x, n in zip(g, orders)] for g in gens]
    rows = [r for r in rows if any(r)]
    basis = []
    for col in range(k):
        # n_col * e_col lies in the lattice; it keeps the pivot dividing n_col
        pivot = [0] * k
        pivot[col] = orders[col]
        rest = []
        for r in rows:
            if r[col] == 0:
                rest.append(r)
                continue
            a, b = pivot[col], r[col]
            g, x, y = _egcd(a, b)
            new_pivot = [x * u + y * v for u, v in zip(pivot, r)]
            other = [(b // g) * u - (a // g) * v for u, v in zip(pivot, r)]
            pivot = new_pivot
            other = [v % n for v, n in zip(other, orders)]
            if any(other):
                rest.append(other)
        if pivot[col] < 0:
            pivot = [-v for v in pivot]
        for j in range(col + 1, k):
            pivot[j] %= orders[j]
        basis.append(pivot)
        rows = rest
    for j in range(k):
        d = basis[j][j]
        for i in range(j):
            q = basis[i][j] // d
            if q:
                basis[i] = [u - q * v for u, v in zip(basis[i], basis[j])]
    return tuple(tuple(r) for r in basis)


def trivial_form(orders: Sequence[int]) -> Matrix:
    k = len(orders)
    return tuple(tuple(orders[i] if i == j else 0 for j in range(k)) for i in range(k))


def full_form(orders: Sequence[int]) -> Matrix:
    k = len(orders)
    return tuple(tuple(1 if i == j else 0 for j in range(k)) for i in range(k))


def subgroup_order(form: Matrix, orders: Sequence[int]) -> int:
    return math.prod(n // form[i][i] for i, n in enumerate(orders))


def generators(form: Matrix, orders: Sequence[int]) -> list[Vector]:
    """The nontrivial rows of a canonical form, reduced mod the orders."""
    out = []
    for i, n in enumerate(orders):
        if form[i][i] != n:
            out.append(tuple(v % m for v, m in zip(form[i], orders)))
    return out


def _in_lattice(v: list[int], form: Matrix, start: int) -> bool:
    v = list(v)
    for j in range(start, len(form)):
        d = form[j][j]
        if v[j] % d:
            return False
        q = v[j] // d
        if q:
            for t in range(j, len(form)):
                v[t] -= q * form[j][t]
    return True


def contains(form: Matrix, vec: Sequence[int]) -> bool:
    return _in_lattice(list(vec), form, 0)


def elements(form: Matrix, orders: Sequence[int]) -> list[Vector]:
    """All elements of the subgroup, each reduced mod the orders."""
    k = len(orders)
    out = [tuple([0] * k)]
    for i in range(k - 1, -1, -1):
        mult = orders[i] // form[i][i]
        if mult == 1:
            continue
        row = form[i]
        out = [
            tuple((x + c * r) % n for x, r, n in zip(base, row, orders))
            for c in range(mult)
            for base in out
        ]
    return sorted(out)


def join(a: Matrix, b: Matrix, orders: Sequence[int]) -> Matrix:
    return hermite_form(list(a) + list(b), orders)


def meet(a: Matrix, b: Matrix, orders: Sequence[int]) -> Matrix:
    small, big = (a, b) if subgroup_order(a, orders) <= subgroup_order(b, orders) else (b, a)
    common = [v for v in elements(small, orders) if contains(big, v)]
    return hermite_form(common, orders)


def is_subgroup(a: Matrix, b: Matrix, orders: Sequence[int]) -> bool:
    return all(contains(b, g) for g in generators(a, orders))


def subgroups(orders: Sequence[int]) -> list[Matrix]:
    """Every subgroup of ``Z/n_1 x ... x Z/n_k`` exactly once, in canonical form.

    Rows are chosen bottom-up.  Row i has pivot ``d_i | n_i`` and a tail
    ``t`` in the box ``prod_{j>i} [0, d_j)``; the lattice only contains
    ``n_i e_i`` when ``(n_i/d_i) t`` already lies in the lattice spanned by
    the rows below, so that is the admissibility test.
    """
    return list(iter_subgroups(orders))


def iter_subgroups(orders: Sequence[int]) -> Iterator[Matrix]:
    k = len(orders)
    if k == 0:
        yield ()
        return

    def rec(i: int, below: list[tuple[int, ...]]) -> Iterator[list[tuple[int, ...]]]:
        if i < 0:
            yield below
            return
        # `below` holds rows i+1..k-1; build a full-size view for membership tests
        partial = tuple([(0,) * k] * (i + 1) + below)
        n = orders[i]
        for d in divisors(n):
            m = n // d
            boxes = [range(partial[j][j]) for j in range(i + 1, k)]
            for tail in product(*boxes):
                if m > 1 and not _in_lattice([0] * (i + 1) + [m * t for t in tail], partial, i + 1):
                    continue
                if m == 1 and any(tail):
                    continue
                row = (0,) * i + (d,) + tuple(tail)
                yield from rec(i - 1, [row] + below)

    for rows in rec(k - 1, []):
        yield tuple(rows)


def smith_form(matrix: Sequence[Sequence[int]]) -> tuple[list[int], list[list[int]]]:
    """Diagonal of the Smith normal form of an integer matrix, plus ``V^{-1}``.

    For ``U A V = D`` with unimodular U and V, returns ``(diag(D), V^{-1})``.
    The row space of A equals the row space of ``D V^{-1}``, which is what
    :func:`decompose` needs to read off independent generators.
    """
    a = [list(r) for r in matrix]
    rows = len(a)
    cols = len(a[0]) if rows else 0
    # track V^{-1} by applying the inverse column operations as row ops
    vinv = [[int(i == j) for j in range(cols)] for i in range(cols)]

    def col_swap(i, j):
        for r in a:
            r[i], r[j] = r[j], r[i]
        vinv[i], vinv[j] = vinv[j], vinv[i]

    def col_combine(i, j, x, y, u, v):
        # new col i = x*ci + y*cj ; new col j = u*ci + v*cj with det 1
        for r in a:
            ci, cj = r[i], r[j]
            r[i], r[j] = x * ci + y * cj, u * ci + v * cj
        # inverse of [[x,u],[y,v]] acting on rows of vinv
        ri, rj = vinv[i], vinv[j]
        vinv[i] = [v * s - u * t for s, t in zip(ri, rj)]
        vinv[j] = [-y * s + x * t for s, t in zip(ri, rj)]

    def row_combine(i, j, x, y, u, v):
        ri, rj = a[i], a[j]
        a[i] = [x * s + y * t for s, t in zip(ri, rj)]
        a[j] = [u * s + v * t for s, t in zip(ri, rj)]

    diag = []
    t = 0
    while t < min(rows, cols):
        nz = [(abs(a[i][j]), i, j) for i in range(t, rows) for j in range(t, cols) if a[i][j]]
        if not nz:
            break
        _, pi, pj = min(nz)
        a[t], a[pi] = a[pi], a[t]
        col_swap(t, pj)
        while True:
            changed = False
            for j in range(t + 1, cols):
                if a[t][j]:
                    if a[t][j] % a[t][t] == 0:
                        col_combine(t, j, 1, 0, -(a[t][j] // a[t][t]), 1)
                        continue
                    g, x, y = _egcd(a[t][t], a[t][j])
                    p, q = a[t][t] // g, a[t][j] // g
                    col_combine(t, j, x, y, -q, p)
                    changed = True
            for i in range(t + 1, rows):
                if a[i][t]:
                    if a[i][t] % a[t][t] == 0:
                        row_combine(t, i, 1, 0, -(a[i][t] // a[t][t]), 1)
                        continue
                    g, x, y = _egcd(a[t][t], a[i][t])
                    p, q = a[t][t] // g, a[i][t] // g
                    row_combine(t, i, x, y, -q, p)
                    changed = True
            if changed:
                continue
            piv = a[t][t]
            bad = next(
                ((i, j) for i in range(t + 1, rows) for j in range(t + 1, cols) if a[i][j] % piv),
                None,
            )
            if bad is None:
                break
            # pull the offending row into row t to restore divisibility
            a[t] = [s + u for s, u in zip(a[t], a[bad[0]])]
        if a[t][t] < 0:
            a[t] = [-s for s in a[t]]
        diag.append(a[t][t])
        t += 1
    return diag, vinv


def invariant_factors(relations: Sequence[Sequence[int]], rank: int) -> list[int]:
    """Invariant factors ``d_1 | d_2 | ...`` (all > 1) of ``Z^rank / <relations>``.

    The quotient must be finite.
    """
    if rank == 0:
        return []
    diag, _ = smith_form(relations)
    if len(diag) < rank:
        raise ValueError("relations do not give a finite group")
    return sorted(d for d in diag if d > 1)


def decompose(form: Matrix, orders: Sequence[int]) -> list[tuple[Vector, int]]:
    """Independent generators of a subgroup: ``[(element, order), ...]``.

    The subgroup is the direct sum of the cyclic groups they generate; the
    trivial subgroup gives an empty list.
    """
    k = len(orders)
    if k == 0:
        return []
    # coordinates of n_j e_j with respect to the rows of the form
    rel = []
    for j in range(k):
        v = [0] * k
        v[j] = orders[j]
        coeffs = [0] * k
        for i in range(k):
            q, r = divmod(v[i], form[i][i])
            assert r == 0
            coeffs[i] = q
            for t in range(i, k):
                v[t] -= q * form[i][t]
        rel.append(coeffs)
    diag, vinv = smith_form(rel)
    out = []
    for i, d in enumerate(diag):
        if d > 1:
            elem = [0] * k
            for c, row in zip(vinv[i], form):
                for t in range(k):
                    elem[t] += c * row[t]
            out.append((tuple(x % n for x, n in zip(elem, orders)), d))
    return out
