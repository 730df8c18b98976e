import itertools

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from fvoa import codes
from fvoa.gf2 import (
    BitMatrix,
    BitVector,
    Subspace,
    coordinatewise_product,
    kernel,
    perp,
    rank,
    rref,
    rref_pivots,
    solve,
    weight_distribution,
)

import oracles


@st.composite
def matrices(draw, max_rows=10, max_cols=70):
    cols = draw(st.integers(1, max_cols))
    rows = draw(st.lists(st.integers(0, (1 << cols) - 1), min_size=0, max_size=max_rows))
    return BitMatrix.from_rows(rows, cols) if rows else BitMatrix.zeros(0, cols)


@st.composite
def subspaces(draw, max_n=70):
    m = draw(matrices(max_cols=max_n))
    return Subspace(m.cols, m)


# --- examples ----------------------------------------------------------------


def test_rref_identity_and_zero():
    eye = BitMatrix.identity(7)
    assert rref(eye) == eye
    assert rref(BitMatrix.zeros(4, 9)).rows == 0


def test_rank_examples():
    assert rank(BitMatrix.identity(5)) == 5
    m = BitMatrix.from_rows([5, 5, 3, 3, 6], 3)
    assert rank(m) == rank(BitMatrix.from_rows([5, 3, 6], 3)) == 2
    assert codes.triangular_code().dim == 8
    assert rank(BitMatrix.from_rows(codes.dex().basis())) == 9


def test_kernel_examples():
    assert kernel(BitMatrix.identity(6)).dim == 0
    assert kernel(BitMatrix.zeros(3, 11)).dim == 11
    assert kernel(codes.dex().space.basis).dim == 39


def test_solve_examples():
    v = BitVector.from_str("1011001")
    x, ker = solve(BitMatrix.identity(7), v)
    assert x == v and ker.dim == 0
    # x0 = 1 and x0 = 0 at once
    x, _ = solve(BitMatrix.from_rows([1, 1], 3), BitVector(2, 0b01))
    assert x is None
    with pytest.raises(ValueError):
        solve(BitMatrix.identity(3), BitVector(4, 0))


def test_coordinatewise_product_examples():
    a = BitVector.from_str("110101")
    assert coordinatewise_product(a, a) == a
    assert coordinatewise_product(a, BitVector.ones(6)) == a
    with pytest.raises(ValueError):
        coordinatewise_product(a, BitVector.ones(5))


def test_perp_examples():
    assert perp(Subspace.zero(12)) == Subspace.full(12)
    assert perp(codes.dex().space).dim == 39


def test_bitvector_string_and_support():
    v = BitVector.from_str("0110")
    assert v.support() == [1, 2] and v.weight == 2
    assert str(v) == "0110"
    assert BitVector.from_array(v.to_array()) == v
    with pytest.raises(ValueError):
        BitVector(3, 8)


def test_matrix_text_round_trip_fixed():
    m = BitMatrix.from_rows(["101", "011"])
    assert m.to_text() == "2 3\n101\n011\n"
    assert BitMatrix.from_text(m.to_text()) == m
    with pytest.raises(ValueError):
        BitMatrix.from_text("3 3\n101\n")


# --- properties --------------------------------------------------------------


@given(matrices())
def test_rref_preserves_row_space(m):
    r = rref(m)
    a, b = Subspace(m.cols, m), Subspace(m.cols, r)
    assert all(x in b for x in m.row_ints())
    assert all(x in a for x in r.row_ints())


@given(matrices())
def test_rank_is_rows_of_rref_and_matches_oracle(m):
    assert rank(m) == rref(m).rows == oracles.rank(m.row_ints())


@given(matrices(), st.randoms(use_true_random=False))
def test_rref_is_canonical(m, rnd):
    # a random invertible row operation sequence does not change the rref
    rows = m.row_ints()
    for _ in range(3 * len(rows)):
        if len(rows) < 2:
            break
        i, j = rnd.sample(range(len(rows)), 2)
        rows[i] ^= rows[j]
    rnd.shuffle(rows)
    m2 = BitMatrix.from_rows(rows, m.cols) if rows else m
    assert rref(m2) == rref(m)
    assert rref(m).is_rref


@given(subspaces())
def test_perp_involution_and_dimension(s):
    p = perp(s)
    assert s.dim + p.dim == s.ambient_dim
    assert perp(p) == s
    assert all(bin(a & b).count("1") % 2 == 0 for a in s.basis_ints() for b in p.basis_ints())


@given(subspaces(max_n=12))
def test_perp_matches_brute_force(s):
    assert set(perp(s).element_ints()) == oracles.perp(s.basis_ints(), s.ambient_dim)


@given(matrices(max_cols=70))
def test_rank_nullity(m):
    assert rank(m) + kernel(m).dim == m.cols
    k = kernel(m)
    for v in k.basis_vectors():
        assert (m @ v).value == 0


@given(matrices(max_rows=8, max_cols=12), st.integers(0, 255))
def test_solve_agrees_with_exhaustive_search(m, rhs_bits):
    rhs = BitVector(m.rows, rhs_bits & ((1 << m.rows) - 1))
    x, ker = solve(m, rhs)
    brute = [v for v in range(1 << m.cols) if (m @ BitVector(m.cols, v)) == rhs]
    if x is None:
        assert brute == []
    else:
        assert m @ x == rhs
        assert len(brute) == 1 << ker.dim
        assert all((v ^ x.value) in ker for v in brute)


@given(matrices())
def test_matrix_text_round_trip(m):
    assert BitMatrix.from_text(m.to_text()) == m


@given(subspaces(max_n=20))
def test_span_and_weights_match_oracle(s):
    gens = s.basis_ints()
    assert set(s.element_ints()) == oracles.span(gens)
    wd = weight_distribution(s)
    assert {w: int(c) for w, c in enumerate(wd) if c} == oracles.weight_enumerator(gens)
    assert wd.sum() == 1 << s.dim and wd[0] == 1


@given(subspaces(max_n=30), subspaces(max_n=30))
def test_sum_and_intersection_dimensions(a, b):
    if a.ambient_dim != b.ambient_dim:
        return
    assert (a + b).dim + (a & b).dim == a.dim + b.dim
    assert (a & b).is_subspace_of(a) and (a & b).is_subspace_of(b)


@given(subspaces(max_n=40), st.integers(0, 2**32))
def test_complement_and_coordinates(s, seed):
    rng = np.random.default_rng(seed)
    full = Subspace.full(s.ambient_dim)
    c = s.complement_in(full, rng)
    assert c.dim + s.dim == s.ambient_dim and (c & s).dim == 0
    v = s.random_element(rng)
    assert s.combine(s.coordinates(v)) == v


def test_pivots_are_leading_columns():
    red, piv = rref_pivots(BitMatrix.from_rows(["0110", "0011", "0101"]))
    assert piv == (1, 2)
    for r, p in zip(red.row_ints(), piv):
        assert r & ((1 << p) - 1) == 0 and (r >> p) & 1


def test_subspace_equality_is_basis_equality():
    a = Subspace.span([0b011, 0b110], 3)
    b = Subspace.span([0b101, 0b011], 3)
    assert a == b and hash(a) == hash(b)
    assert set(a.element_ints()) == set(itertools.chain([0, 3, 5, 6]))
