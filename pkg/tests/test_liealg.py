import pytest
from hypothesis import given
from hypothesis import strategies as st

from fvoa import lattices, liealg
from fvoa.liealg import Factor, LieType, dim_of, parse_type


def test_parse_examples():
    assert parse_type("C8F4^2").factors == (Factor("C", 8), Factor("F", 4, 2))
    t = parse_type("A7C3^2A3")
    assert [f.as_tuple() for f in t.factors] == [("A", 7, 1), ("C", 3, 2), ("A", 3, 1)]
    assert [f.as_tuple() for f in parse_type("A1").factors] == [("A", 1, 1)]


@pytest.mark.parametrize("text", [
    "C_{8,1}", "E_{6,4}C_{2,1}A_{2,1}", "\\g(A_{7}C_{3}^2A_{3})", "A_3B_2^2A_1^2", "D9A7", "A_7^2D_5^2", "B4^2",
])
def test_parse_typeset_names(text):
    t = parse_type(text)
    assert t.dim > 0


def test_levels_are_dropped():
    t = parse_type("C_{8,1}")
    assert t.factors[0].level == 1 and t.dim == 136


@pytest.mark.parametrize("bad", ["", "X3", "A0", "E9", "F5", "B1", "C8^0", "A7)("])
def test_malformed(bad):
    with pytest.raises(ValueError):
        parse_type(bad)


@pytest.mark.parametrize("text,dim", [
    ("C8F4^2", 240), ("A7C3^2A3", 120), ("A15D9", 408), ("A7^2D5^2", 216), ("C8", 136), ("B4^2", 72),
    ("A7", 63), ("A3B2^2A1^2", 41), ("A7A3B2^2A1^2", 104), ("A3A1^2", 21), ("B2^2", 20), ("D9A7", 216),
    ("E8", 248), ("E7", 133), ("E6", 78), ("G2", 14),
])
def test_dims(text, dim):
    assert dim_of(text) == dim


def test_root_spaces():
    assert parse_type("A3B2^2A1^2").roots == 32
    assert parse_type("A7").roots == 56


@given(st.sampled_from("ABCD"), st.integers(4, 30), st.sampled_from("ABCD"), st.integers(4, 30))
def test_dim_additive(f1, r1, f2, r2):
    a = LieType((Factor(f1, r1),))
    b = LieType((Factor(f2, r2),))
    assert (a + b).dim == a.dim + b.dim
    assert parse_type(str(a + b)) == a + b


@given(st.integers(1, 40))
def test_classical_formulas(n):
    assert dim_of(f"A{n}") == n * n + 2 * n
    if n >= 2:
        assert dim_of(f"B{n}") == dim_of(f"C{n}") == 2 * n * n + n
    if n >= 3:
        assert dim_of(f"D{n}") == 2 * n * n - n


@pytest.mark.parametrize("name", ["A1", "A7", "A15", "D5", "D9", "E8"])
def test_table_matches_enumerated_roots(name):
    assert parse_type(name).roots == lattices.root_count(name)


def test_ideal_dims():
    assert 126 in parse_type("A7^2D5^2").ideal_dims()
    assert 126 not in parse_type("D9A7").ideal_dims()
    assert parse_type("A1^2").ideal_dims() == {0, 3, 6}


def test_paper_dim_checks_all_pass():
    rows = liealg.paper_dim_checks()
    assert len(rows) == 19 and all(r.ok for r in rows)
    assert len({r.id for r in rows}) == len(rows)


def test_count_56():
    r = liealg.count_56()
    assert r.summands == (39, 10, 4, 3)
    assert r.partial_sums == (39, 49, 53, 56)
    assert r.total == 56 and r.ok
