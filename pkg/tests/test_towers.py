import math
from fractions import Fraction

import pytest

from rdlab.arith import euler_phi
from rdlab.fields import (
    cyclotomic_field,
    fields_up_to_conductor,
    quadratic_field,
    rational_field,
)
from rdlab.towers import (
    group_order,
    mult_lemma_check,
    ore_bound_check,
    ray_class_group_Q,
    tower_check,
)


def test_tower_examples():
    r = tower_check(quadratic_field(-1), cyclotomic_field(8))
    assert r.holds and r.per_prime == [(2, 8, 8)]
    r = tower_check(quadratic_field(-3), cyclotomic_field(9))
    assert r.holds and r.per_prime == [(3, 9, 9)]


def test_tower_over_Q_degenerates():
    for F in fields_up_to_conductor(20):
        r = tower_check(rational_field(), F)
        assert r.holds


def test_tower_rejects_non_subfield():
    with pytest.raises(ValueError):
        tower_check(quadratic_field(5), cyclotomic_field(8))


def test_tower_catches_a_broken_relative_path(monkeypatch):
    # an off-by-one in the local different must surface as a failed report
    import rdlab.towers as towers

    real = towers.local_different
    monkeypatch.setattr(towers, "local_different", lambda F, p: real(F, p) + (F.modulus == 8))
    assert not tower_check(quadratic_field(-1), cyclotomic_field(8)).holds


def test_mult_examples():
    F = cyclotomic_field(7)
    r = mult_lemma_check(F, F)
    assert r.holds and r.equality
    r = mult_lemma_check(quadratic_field(-1), quadratic_field(-3))
    assert r.holds and r.equality
    r = mult_lemma_check(quadratic_field(2), quadratic_field(3))
    assert r.holds and not r.equality


def test_ore_examples():
    r = ore_bound_check(quadratic_field(-1), 2)
    assert (r.lhs, r.rhs, r.holds) == (2, 3, True)
    r = ore_bound_check(cyclotomic_field(9), 3)
    assert (r.lhs, r.rhs, r.holds) == (9, 11, True)
    r = ore_bound_check(cyclotomic_field(9), 5)
    assert (r.lhs, r.rhs) == (0, 0)
    assert isinstance(r.rhs, Fraction)
    with pytest.raises(ValueError):
        ore_bound_check(cyclotomic_field(9), 9)


def test_ray_class_examples():
    assert ray_class_group_Q(1) == []
    assert ray_class_group_Q(5) == [4]
    assert ray_class_group_Q(5, with_infinity=False) == [2]
    assert ray_class_group_Q(12) == [2, 2]
    assert ray_class_group_Q(16) == [2, 4]
    with pytest.raises(ValueError):
        ray_class_group_Q(0)


def test_ray_class_orders():
    for m in range(1, 200):
        assert group_order(ray_class_group_Q(m)) == euler_phi(m)
        if m > 2:
            phi = euler_phi(m)
            assert group_order(ray_class_group_Q(m, False)) == phi // math.gcd(2, phi)
