import itertools
from fractions import Fraction
from math import factorial

import numpy as np
import pytest

from fvoa import lattices as L


def _ip(a, b):
    return sum(Fraction(x) * Fraction(y) for x, y in zip(a, b))


@pytest.mark.parametrize("name,count", [("A15", 240), ("D9", 144), ("A1", 2), ("A7", 56), ("D5", 40), ("E8", 240)])
def test_root_counts(name, count):
    lat = L.RootLattice.parse(name)
    roots = lat.roots()
    assert L.root_count(name) == len(roots) == count
    assert all(abs(r @ r - 2) < 1e-9 for r in roots)
    assert all(lat.contains([Fraction(x).limit_denominator(2) for x in r]) for r in roots)


@pytest.mark.parametrize("name,det", [("A3", 4), ("A7", 8), ("A15", 16), ("D5", 4), ("D9", 4), ("E8", 1)])
def test_determinants(name, det):
    lat = L.RootLattice.parse(name)
    assert lat.determinant() == det
    if lat.family != "E":
        assert lat.disc_order == det


def test_unsupported_lattices():
    with pytest.raises(ValueError):
        L.RootLattice("E", 6)
    with pytest.raises(ValueError):
        L.RootLattice.parse("X3")
    with pytest.raises(ValueError):
        _ = L.RootLattice("D", 4).disc_order
    with pytest.raises(ValueError):
        L.niemeier("A24")


def test_discriminant_norms():
    a7, d5 = L.RootLattice("A", 7), L.RootLattice("D", 5)
    assert a7.disc_norm(1) == Fraction(7, 8)
    assert d5.disc_norm(1) == Fraction(5, 4)
    for k in range(8):
        assert a7.disc_norm(k) == Fraction(k * (8 - k), 8)


@pytest.mark.parametrize("name", ["A3", "A7", "D5", "D9"])
def test_glue_vectors_are_minimal(name):
    lat = L.RootLattice.parse(name)
    for k in range(lat.disc_order):
        g = lat.glue_vector(k)
        assert lat.class_of(g) == k
        assert lat.class_min_norm_search(k) == lat.disc_norm(k)


@pytest.mark.parametrize("name,dim,glue", [("A15D9", 408, 8), ("A7A7D5D5", 216, 32)])
def test_niemeier_lattices(name, dim, glue):
    n = L.niemeier(name)
    r = n.verify()
    assert r["ok"] and r["weight1_dim"] == dim
    assert r["glue_order"] == glue
    # recheck evenness and integrality directly on all lifted glue vectors
    lifts = [n.lift(x) for x in n.glue_group()]
    assert all(_ip(a, a) % 2 == 0 for a in lifts)
    assert all(_ip(a, b).denominator == 1 for a in lifts for b in lifts)
    det = 1
    for c in n.components:
        det *= c.determinant()
    assert glue * glue == det
    assert n.weight1_dim() == 24 + sum(L.root_count(c.name) for c in n.components)


def test_glue_classes_have_no_roots():
    n = L.niemeier("A7A7D5D5")
    mins = {c.name: [c.class_min_norm_search(k) for k in range(c.disc_order)] for c in n.components[1:3]}
    for x in n.glue_group():
        if any(x):
            norm = sum(mins[c.name][k] for c, k in zip(n.components, x))
            assert norm > 2


def test_disc_orders():
    assert L.disc_orders("A7A7D5D5") == [8, 4]
    assert L.disc_orders("A15D9") == [8]
    n = L.niemeier("A7A7D5D5")
    assert n.element_order((0, 0, 0, 0)) == 1
    sub = {n.reduce(n.add(n.scale(a, L.U), n.scale(b, L.V))) for a in range(8) for b in range(4)}
    assert len(sub) == 32


def test_disc_action():
    r = L.disc_action_check()
    assert r.g_u and r.g_v and r.g_coords_agree and r.g_preserves_n
    assert r.kg_label_ok
    assert (0, 0) in r.identity_pairs
    want = [(a, b) for a in range(8) for b in range(4) if a % 2 == 0 and (2 * b - a) % 4 == 0]
    assert r.identity_pairs == want
    assert r.ok


def test_g_action_is_an_involution():
    n = L.niemeier("A7A7D5D5")
    for x in itertools.product(range(8), range(8), range(4), range(4)):
        if sum(x) % 5 == 0:  # a spread-out sample
            assert L.g_action(L.g_action(x)) == n.add(x, (0, 0, 0, 0))


def test_diagram_automorphism_does_not_preserve_glue():
    assert not L.tau_preserves_glue()
    x = (Fraction(1), Fraction(-1), 0, 0, 0, 0, 0, 0)
    assert L.diagram_tau(L.diagram_tau(x)) == tuple(Fraction(t) for t in x)


def test_weyl_group_d5():
    W = L.weyl_group_d(5)
    assert len(W) == 2**4 * factorial(5) == 1920
    assert len({w.tobytes() for w in W}) == 1920
    for w in W[::97]:
        assert (np.abs(w).sum(axis=1) == 1).all() and (w < 0).sum() % 2 == 0


def test_weyl_conjugacy():
    r = L.weyl_conjugacy_d5()
    assert r.group_order == 1920 and r.roots_checked == 40
    assert r.all_conjugate and r.minus_conjugate
    assert r.witnesses["(1, 1, 0, 0, 0)"] > 0
    assert r.ok


def test_in_2d():
    assert L.in_2d([2, 2, 0, 0, 0])
    assert not L.in_2d([2, 0, 0, 0, 0])
    assert not L.in_2d([1, 1, 0, 0, 0])


def test_fixed_dims():
    assert L.fixed_dim_inner("D5", [1, 1, 0, 0, 0]) == 21
    assert L.fixed_dim_inner("D5", [0, 0, 0, 0, 0]) == 45
    assert L.fixed_dim_minus_one("D5") == 20
    with pytest.raises(ValueError):
        L.fixed_dim_inner("D5", [1, 0, 0, 0, 0])
