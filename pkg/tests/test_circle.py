import itertools

import numpy as np
import pytest

from gf2cdiff import circle as C
from gf2cdiff.errors import (BadTowerIndex, NotADivisor, NotInSubfield,
                             ZeroCoefficient, ZeroInput)
from gf2cdiff.field import FieldElement, TowerView, make_field

GF16 = make_field(4, 0x13)
T1 = TowerView(GF16, 1)


def el(v, f=GF16):
    return FieldElement(v, f)


def test_mu5_in_gf16():
    got = {e.value for e in C.subgroup_elements(GF16, 5)}
    assert got == {0x1, 0x8, 0xC, 0xA, 0xF}
    assert [e.value for e in C.subgroup_elements(GF16, 1)] == [1]
    assert sorted(C.subgroup_array(GF16, 15).tolist()) == list(range(1, 16))


def test_subgroup_requires_divisor():
    with pytest.raises(NotADivisor):
        C.SubgroupDesc(GF16, 4)


@pytest.mark.parametrize("m", [4, 6, 8, 10])
def test_subgroups_are_closed_and_exact(m):
    f = make_field(m)
    for s in (d for d in range(1, f.n_units + 1) if f.n_units % d == 0 and d <= 1 << 10):
        desc = C.SubgroupDesc(f, s)
        assert f.multiplicative_order(desc.coset_generator) == s
        arr = desc.array()
        members = set(arr.tolist())
        assert len(members) == s
        assert np.all(f.pow(arr, s) == 1)
        if s <= 64:
            prods = f.mul(arr[:, None], arr[None, :])
            assert set(prods.ravel().tolist()) == members
        assert set(f.inv(arr).tolist()) == members


def test_unit_circle_membership():
    assert C.in_unit_circle(el(1), T1, 1)
    assert C.in_unit_circle(el(1), T1, 2)
    assert C.in_unit_circle(el(0x8), T1, 2)
    assert not C.in_unit_circle(el(0x2), T1, 2)
    assert not C.in_unit_circle(el(0), T1, 2)
    with pytest.raises(BadTowerIndex):
        C.in_unit_circle(el(1), T1, 3)


@pytest.mark.parametrize("n", [1, 2, 3])
def test_unit_circle_sizes(n):
    tower = TowerView.of(n)
    q = tower.q
    assert C.unit_circle(tower, 1).size == q + 1
    assert C.unit_circle(tower, 2).size == q * q + 1
    assert C.admissible_c(tower).size == q * q


def test_polar_examples():
    lam, y = C.polar_decompose(el(0x2), T1, 2)
    assert (lam.value, y.value) == (0xC, 0x7)
    six = el(0x6)                      # in GF(4), the base at level 2
    lam, y = C.polar_decompose(six, T1, 2)
    assert (lam.value, y.value) == (1, 0x6)
    lam, y = C.polar_decompose(el(0x8), T1, 2)
    assert (lam.value, y.value) == (0x8, 1)


def test_polar_errors():
    with pytest.raises(ZeroInput):
        C.polar_decompose(el(0), T1, 1)
    with pytest.raises(NotInSubfield):
        C.polar_decompose(el(0x2), T1, 1)


@pytest.mark.parametrize("n,level", [(1, 1), (1, 2), (2, 1), (2, 2), (3, 1), (3, 2), (4, 1)])
def test_polar_round_trip_and_uniqueness(n, level):
    tower = TowerView.of(n)
    f = tower.ambient
    Q = 1 << (n * level)
    mu = C.unit_circle(tower, level)
    xs = f.elements()
    base = xs[(f.pow(xs, Q) == xs) & (xs != 0)]
    dom = xs[f.in_subfield(xs, 2 * level * n) & (xs != 0)]
    brute = f.mul(mu[:, None], base[None, :]) if f.degree <= 12 else None
    for x in dom:
        lam, y = C.polar_decompose(el(int(x), f), tower, level)
        assert f.mul(lam.value, y.value) == x
        assert f.pow(lam.value, Q + 1) == 1
        assert f.pow(y.value, Q) == y.value
        if brute is not None:
            assert np.count_nonzero(brute == x) == 1


def test_quadratic_examples():
    r = C.unit_circle_quadratic(el(0x4), el(0xA), 2)
    assert r.count == 2
    assert [x.value for x in r.roots] == [0x8, 0xC]
    assert r.predicted_count == 2 and not r.no_roots_in_field

    r = C.unit_circle_quadratic(el(0x4), el(0x1), 2)
    assert GF16.trace(GF16.div(1, GF16.mul(4, 4))) == 1
    assert r == (0, (), 0, True)
    assert all(GF16.mul(x, x) ^ GF16.mul(4, x) ^ 1 for x in range(16))

    g = 0x2
    a, b = g ^ GF16.mul(g, g), GF16.pow(g, 3)
    r = C.unit_circle_quadratic(el(a), el(b), 2)
    assert r.count == 0 and r.predicted_count == 0 and not r.no_roots_in_field


def test_quadratic_preconditions():
    with pytest.raises(ZeroCoefficient):
        C.unit_circle_quadratic(el(0), el(1), 2)
    with pytest.raises(BadTowerIndex):
        C.unit_circle_quadratic(el(1), el(1), 3)


def test_solve_quadratic_matches_search():
    for m in (4, 5, 6):
        f = make_field(m)
        xs = f.elements()
        for a, b in itertools.product(range(1, f.size), range(f.size)):
            want = xs[(f.mul(xs, xs) ^ f.mul(a, xs) ^ b) == 0].tolist()
            assert C.solve_quadratic(f, a, b) == want


@pytest.mark.parametrize("m", [2, 3])
def test_circle_root_classification_equals_brute_force(m):
    f = make_field(2 * m)
    Q = 1 << m
    xs = f.elements()
    on_circle = f.pow(xs, Q + 1) == 1
    for a, b in itertools.product(range(1, f.size), repeat=2):
        brute = int(np.count_nonzero(((f.mul(xs, xs) ^ f.mul(a, xs) ^ b) == 0) & on_circle))
        r = C.unit_circle_quadratic(el(a, f), el(b, f), m)
        assert r.count == brute
        if r.no_roots_in_field:
            assert brute == 0
        else:
            assert r.predicted_count == brute, (a, b)


def test_artin_schreier_table():
    t = C.artin_schreier_table(GF16)
    for w in range(16):
        sols = [x for x in range(16) if GF16.mul(x, x) ^ x == w]
        assert t[w] == (min(sols) if sols else -1)
    assert C.artin_schreier_table(GF16) is t
