"""Binary codes, the triangular-graph code family and the relabeling space of a
triply even code.

A :class:`BinaryCode` wraps a :class:`~fvoa.gf2.Subspace`.  The relabeling
space ``qd_space(D)`` consists of linear maps ``delta: D -> F2^n / D^perp``
with ``<delta(b), 1 + b> = 0`` for every ``b`` in ``D``; a :class:`QMap` stores
one such map as a ``d x d`` matrix over a basis of ``D`` whose first vector is
the all-one word.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import comb
from typing import Sequence

import numpy as np

from .gf2 import BitMatrix, BitVector, Subspace, independent, kernel, perp, rank, solve, weight_distribution

ENUM_LIMIT = 24


@dataclass(frozen=True)
class CodePredicates:
    is_even: bool
    is_doubly_even: bool
    is_triply_even: bool
    contains_allone: bool
    is_self_orthogonal: bool
    method: str


@dataclass(frozen=True, eq=False)
class BinaryCode:
    length: int
    space: Subspace
    name: str = ""

    def __post_init__(self):
        if self.space.ambient_dim != self.length:
            raise ValueError("generator space has the wrong length")

    @classmethod
    def from_generators(cls, gens: Sequence, length: int, name: str = "") -> "BinaryCode":
        return cls(length, Subspace.span(gens, length), name)

    @property
    def dim(self) -> int:
        return self.space.dim

    @property
    def generators(self) -> BitMatrix:
        return self.space.basis

    def basis(self) -> list[BitVector]:
        return self.space.basis_vectors()

    @property
    def allone(self) -> BitVector:
        return BitVector.ones(self.length)

    def __contains__(self, v) -> bool:
        return v in self.space

    def __eq__(self, other):
        if not isinstance(other, BinaryCode):
            return NotImplemented
        return self.space == other.space

    def __hash__(self):
        return hash(self.space)

    def dual(self) -> "BinaryCode":
        return BinaryCode(self.length, perp(self.space), f"dual({self.name})" if self.name else "")

    def codewords(self) -> list[BitVector]:
        if self.dim > ENUM_LIMIT:
            raise ValueError(f"refusing to enumerate 2^{self.dim} codewords")
        return [BitVector(self.length, v) for v in self.space.element_ints()]

    def weight_enumerator(self) -> dict[int, int]:
        if self.dim > ENUM_LIMIT:
            raise ValueError(f"refusing to enumerate 2^{self.dim} codewords")
        hist = weight_distribution(self.space)
        return {w: int(c) for w, c in enumerate(hist) if c}

    def predicates(self) -> CodePredicates:
        return predicates(self)

    def with_name(self, name: str) -> "BinaryCode":
        return BinaryCode(self.length, self.space, name)

    def to_text(self) -> str:
        return f"code n={self.length} dim={self.dim} name={self.name or '-'}\n" + self.generators.to_text()

    @classmethod
    def from_text(cls, text: str) -> "BinaryCode":
        head, _, body = text.strip().partition("\n")
        m = re.fullmatch(r"code n=(\d+) dim=(\d+) name=(\S*)", head.strip())
        if not m:
            raise ValueError(f"bad code header {head!r}")
        n, k, name = int(m.group(1)), int(m.group(2)), m.group(3)
        mat = BitMatrix.from_text(body)
        if mat.cols != n:
            raise ValueError("matrix width disagrees with header")
        code = cls(n, Subspace(n, mat), "" if name == "-" else name)
        if code.dim != k:
            raise ValueError(f"header says dim {k}, matrix has rank {code.dim}")
        return code

    def __repr__(self):
        label = f" {self.name}" if self.name else ""
        return f"<BinaryCode{label} n={self.length} dim={self.dim}>"


# ---------------------------------------------------------------------------
# constructions


def rm_1_4() -> BinaryCode:
    """First order Reed-Muller code of length 16: constants plus the 4 coordinate functions."""
    rows = [(1 << 16) - 1]
    for bit in range(4):
        rows.append(sum(1 << x for x in range(16) if (x >> bit) & 1))
    return BinaryCode.from_generators(rows, 16, "RM14")


def d16_plus() -> BinaryCode:
    """Doubly even self-dual code of length 16 built from the D16 root system."""
    rows = [0b1111 << (2 * i) for i in range(7)]
    rows.append(sum(1 << (2 * i + 1) for i in range(8)))
    return BinaryCode.from_generators(rows, 16, "d16plus")


def hamming_8() -> BinaryCode:
    """Extended Hamming [8,4,4] code."""
    return BinaryCode.from_generators(["11110000", "00111100", "00001111", "01010101"], 8, "H8")


def zero_code(n: int) -> BinaryCode:
    return BinaryCode(n, Subspace.zero(n), f"Zero({n})")


def allone_code(n: int) -> BinaryCode:
    return BinaryCode.from_generators([(1 << n) - 1], n, f"One({n})")


def extended_doubling(e: BinaryCode) -> BinaryCode:
    """The code spanned by (a, a) for a in e together with (1, 0)."""
    if not predicates(e).is_doubly_even:
        raise ValueError("extended doubling needs a doubly even code")
    n = e.length
    rows = [v | (v << n) for v in e.space.basis_ints()]
    rows.append((1 << n) - 1)
    name = f"ExtDbl({e.name})" if e.name else ""
    return BinaryCode.from_generators(rows, 2 * n, name)


def direct_sum(*codes: BinaryCode) -> BinaryCode:
    n, rows = 0, []
    for c in codes:
        rows += [v << n for v in c.space.basis_ints()]
        n += c.length
    name = ""
    if all(c.name for c in codes):
        name = codes[0].name
        for c in codes[1:]:
            name = f"DirectSum({name},{c.name})"
    return BinaryCode.from_generators(rows, n, name)


# coordinates 0..44 are the 2-subsets of {1..10} in lexicographic order
PAIRS: tuple[tuple[int, int], ...] = tuple(itertools.combinations(range(1, 11), 2))
PAIR_INDEX = {p: i for i, p in enumerate(PAIRS)}


def _pair(i: int, j: int) -> tuple[int, int]:
    if i == j or not (1 <= i <= 10 and 1 <= j <= 10):
        raise ValueError(f"not a 2-subset of 1..10: {{{i},{j}}}")
    return (i, j) if i < j else (j, i)


def gamma(i: int, j: int) -> BitVector:
    """Length-45 word on the 2-subsets meeting {i, j} in exactly one point."""
    a = set(_pair(i, j))
    return BitVector.from_support(45, [PAIR_INDEX[p] for p in PAIRS if len(a & set(p)) == 1])


def beta(i: int, j: int) -> BitVector:
    """Product of the words of {1, i} and {1, j}."""
    return gamma(1, i) * gamma(1, j)


def iota(v: BitVector) -> BitVector:
    """Pad a length-45 word with three zeros."""
    return v.concat(BitVector.zeros(3))


def triangular_code() -> BinaryCode:
    return BinaryCode.from_generators([gamma(*p) for p in PAIRS], 45, "T10")


def dex() -> BinaryCode:
    rows = [iota(gamma(*p)) for p in PAIRS] + [BitVector.ones(48)]
    return BinaryCode.from_generators(rows, 48, "Dex")


def d_partition(parts: Sequence[int]) -> BinaryCode:
    """Subcode of the exceptional code generated by 1 and the words of pairs
    inside consecutive blocks of sizes ``parts`` (padded with 1s up to 10)."""
    parts = [int(p) for p in parts]
    if any(p <= 0 for p in parts) or sum(parts) > 10:
        raise ValueError(f"not a partition of at most 10: {parts}")
    parts = parts + [1] * (10 - sum(parts))
    rows, start = [BitVector.ones(48)], 1
    for p in parts:
        block = range(start, start + p)
        rows += [iota(gamma(i, j)) for i, j in itertools.combinations(block, 2)]
        start += p
    label = ",".join(str(p) for p in parts if p > 1) or "1"
    return BinaryCode.from_generators(rows, 48, f"D[{label}]")


def dex_dual_basis() -> list[BitVector]:
    """39 explicit words claimed to form a basis of the dual of the exceptional code."""
    out = [iota(beta(i, j)) for i, j in itertools.combinations(range(2, 11), 2)]
    out.append(BitVector.ones(48))
    out.append(BitVector.from_support(48, [45, 46]))
    out.append(BitVector.from_support(48, [45, 47]))
    return out


def star_product(d: BinaryCode) -> BinaryCode:
    """Span of coordinatewise products of pairs of codewords (basis pairs suffice)."""
    b = d.space.basis_ints()
    rows = [x & y for x, y in itertools.combinations_with_replacement(b, 2)]
    name = f"{d.name}.{d.name}" if d.name else ""
    return BinaryCode.from_generators(rows, d.length, name)


def basis_with_one(d: BinaryCode, rng: np.random.Generator | None = None) -> list[BitVector]:
    """A basis of ``d`` whose first element is the all-one word.

    Without ``rng`` the remaining vectors are rref rows of ``d``, dropping the
    first row that the all-one word depends on.  With ``rng`` a random basis
    is drawn instead.
    """
    n = d.length
    one = (1 << n) - 1
    if one not in d.space:
        raise ValueError("code does not contain the all-one word")
    if rng is None:
        rows = d.space.basis_ints()
        coeffs = d.space.coordinates(one)
        drop = coeffs.index(1)
        rest = [r for k, r in enumerate(rows) if k != drop]
    else:
        rest, span = [], Subspace.span([one], n)
        while len(rest) < d.dim - 1:
            v = d.space.random_int(rng)
            if v not in span:
                rest.append(v)
                span = span + Subspace.span([v], n)
    return [BitVector(n, one)] + [BitVector(n, r) for r in rest]


def random_subcode(d: BinaryCode, dim: int, rng: np.random.Generator) -> BinaryCode:
    """Random subcode of ``d`` of the given dimension that contains the all-one word."""
    n = d.length
    one = (1 << n) - 1
    if one not in d.space or not 1 <= dim <= d.dim:
        raise ValueError("infeasible subcode request")
    span = Subspace.span([one], n)
    while span.dim < dim:
        v = d.space.random_int(rng)
        if v not in span:
            span = span + Subspace.span([v], n)
    return BinaryCode(n, span, "")


# ---------------------------------------------------------------------------
# predicates


def predicates(c: BinaryCode) -> CodePredicates:
    """Evenness flags of ``c``.

    Up to dimension 24 every codeword is weighed.  Beyond that the flags come
    from the basis: by inclusion-exclusion wt(sum v_i) is determined mod 8 by
    the weights of the v_i (mod 8), of the pairwise products (mod 4) and of
    the triple products (mod 2), so those three conditions characterise triply
    even codes, and the first two (mod 4, mod 2) doubly even ones.
    """
    one = c.allone.value
    contains = one in c.space
    b = c.space.basis_ints()
    self_orth = all((x & y).bit_count() % 2 == 0 for x, y in itertools.combinations_with_replacement(b, 2))
    if c.dim <= ENUM_LIMIT:
        weights = list(c.weight_enumerator())
        even = all(w % 2 == 0 for w in weights)
        doubly = all(w % 4 == 0 for w in weights)
        triply = all(w % 8 == 0 for w in weights)
        return CodePredicates(even, doubly, triply, contains, self_orth, "enumeration")
    wt = [x.bit_count() for x in b]
    pair = [(x & y).bit_count() for x, y in itertools.combinations(b, 2)]
    even = all(w % 2 == 0 for w in wt)
    doubly = all(w % 4 == 0 for w in wt) and all(p % 2 == 0 for p in pair)
    triply = (
        all(w % 8 == 0 for w in wt)
        and all(p % 4 == 0 for p in pair)
        and all((x & y & z).bit_count() % 2 == 0 for x, y, z in itertools.combinations(b, 3))
    )
    return CodePredicates(even, doubly, triply, contains, self_orth, "basis")


# ---------------------------------------------------------------------------
# the relabeling space Q_D


class Frame:
    """Fixed coordinates for maps D -> F2^n / D^perp.

    ``basis`` has the all-one word first.  The quotient F2^n / D^perp gets the
    unit vectors e_c for the non-pivot columns c of the rref basis of D^perp;
    the coordinates of a class are the bits of its reduced representative at
    those columns.
    """

    def __init__(self, d: BinaryCode, basis: Sequence[BitVector] | None = None):
        self.code = d
        self.n = d.length
        self.basis = list(basis) if basis is not None else basis_with_one(d)
        if len(self.basis) != d.dim or not independent(self.basis) or any(b not in d for b in self.basis):
            raise ValueError("not a basis of the code")
        self.span = Subspace.span(self.basis, self.n)
        self.dperp = perp(d.space)
        piv = set(self.dperp.pivots)
        self.quot_cols = [c for c in range(self.n) if c not in piv]
        self._binv = None

    @property
    def d(self) -> int:
        return len(self.basis)

    def coords(self, v: int) -> list[int]:
        r = self.dperp.reduce_int(v)
        return [(r >> c) & 1 for c in self.quot_cols]

    def lift(self, coords: Sequence[int]) -> int:
        return sum(1 << c for c, x in zip(self.quot_cols, coords) if x & 1)

    def expand(self, beta: int) -> list[int]:
        """Coefficients of ``beta`` in ``self.basis``."""
        if self._binv is None:
            # tag each basis vector with its index bits above the word
            n, d = self.n, self.d
            aug = [b.value | (1 << (n + i)) for i, b in enumerate(self.basis)]
            self._binv = Subspace.span(aug, n + d)
        r = self._binv.reduce_int(beta)
        if r & ((1 << self.n) - 1):
            raise ValueError("word not in the code")
        return [(r >> (self.n + i)) & 1 for i in range(self.d)]

    def gram(self) -> np.ndarray:
        """G[k, j] = <e_{c_k}, b_j>."""
        return np.array([[b[c] for b in self.basis] for c in self.quot_cols], dtype=np.uint8)


@lru_cache(maxsize=64)
def frame(d: BinaryCode) -> Frame:
    return Frame(d)


@dataclass(frozen=True, eq=False)
class QMap:
    """A linear map D -> F2^n / D^perp; row i of ``matrix`` holds the quotient
    coordinates of the image of the i-th frame basis vector."""

    frame: Frame
    matrix: np.ndarray = field(repr=False)

    def __post_init__(self):
        d = self.frame.d
        m = np.asarray(self.matrix, dtype=np.uint8) & 1
        if m.shape != (d, d):
            raise ValueError(f"expected a {d}x{d} matrix")
        m.setflags(write=False)
        object.__setattr__(self, "matrix", m)

    @property
    def code(self) -> BinaryCode:
        return self.frame.code

    def image(self, beta: BitVector) -> BitVector:
        """Reduced representative of delta(beta)."""
        coeffs = np.array(self.frame.expand(beta.value), dtype=np.uint8)
        row = (coeffs @ self.matrix) & 1
        return BitVector(self.frame.n, self.frame.lift(row))

    def is_member(self) -> bool:
        """Check <delta(b), 1 + b> = 0 on every codeword (full enumeration)."""
        one = (1 << self.frame.n) - 1
        for b in self.code.space.element_ints():
            img = self.image(BitVector(self.frame.n, b)).value
            if (img & (one ^ b)).bit_count() & 1:
                return False
        return True

    def __add__(self, other: "QMap") -> "QMap":
        if other.frame is not self.frame:
            raise ValueError("maps live on different frames")
        return QMap(self.frame, self.matrix ^ other.matrix)

    def __eq__(self, other):
        if not isinstance(other, QMap):
            return NotImplemented
        return other.frame is self.frame and bool(np.array_equal(self.matrix, other.matrix))

    def __hash__(self):
        return hash(self.matrix.tobytes())

    def is_zero(self) -> bool:
        return not self.matrix.any()


def _check_qd_pre(d: BinaryCode):
    if d.length % 16:
        raise ValueError("code length must be divisible by 16")
    p = predicates(d)
    if not p.is_triply_even:
        raise ValueError("code must be triply even")
    if not p.contains_allone:
        raise ValueError("code must contain the all-one word")


def qd_system(fr: Frame) -> BitMatrix:
    """Linear conditions on vec(X) (index i*d + k) cutting out Q_D."""
    d = fr.d
    g = fr.gram()
    rows = []
    # <delta(b_i), 1 + b_i> = 0; the all-one word is b_0
    for i in range(1, d):
        r = 0
        for k in range(d):
            if g[k, 0] ^ g[k, i]:
                r |= 1 << (i * d + k)
        rows.append(r)
    # <delta(b_i), b_j> = <delta(b_j), b_i>
    for i, j in itertools.combinations(range(d), 2):
        r = 0
        for k in range(d):
            if g[k, j]:
                r ^= 1 << (i * d + k)
            if g[k, i]:
                r ^= 1 << (j * d + k)
        rows.append(r)
    if not rows:
        return BitMatrix.zeros(0, d * d)
    return BitMatrix.from_rows(rows, d * d)


def _vec_to_matrix(v: int, d: int) -> np.ndarray:
    return np.array([[(v >> (i * d + k)) & 1 for k in range(d)] for i in range(d)], dtype=np.uint8)


def _matrix_to_vec(m: np.ndarray) -> int:
    d = m.shape[0]
    return sum(1 << (i * d + k) for i in range(d) for k in range(d) if m[i, k])


def qd_space(d: BinaryCode, fr: Frame | None = None) -> list[QMap]:
    """Basis of Q_D from a direct kernel computation."""
    _check_qd_pre(d)
    fr = fr or frame(d)
    sol = kernel(qd_system(fr))
    return [QMap(fr, _vec_to_matrix(v, fr.d)) for v in sol.basis_ints()]


def qd_dimension(d: BinaryCode) -> int:
    return len(qd_space(d))


def eta(g: BitVector, d: BinaryCode, fr: Frame | None = None) -> QMap:
    """The map b -> g*b + D^perp."""
    if g.length != d.length:
        raise ValueError("length mismatch")
    fr = fr or frame(d)
    m = np.array([fr.coords(g.value & b.value) for b in fr.basis], dtype=np.uint8).reshape(fr.d, fr.d)
    return QMap(fr, m)


def _eta_matrix(fr: Frame) -> BitMatrix:
    # row (i, k), column c: coefficient of g_c in coordinate k of g*b_i
    d, n = fr.d, fr.n
    unit = [fr.coords(1 << c) for c in range(n)]
    rows = []
    for b in fr.basis:
        for k in range(d):
            rows.append(sum(1 << c for c in range(n) if b[c] and unit[c][k]))
    return BitMatrix.from_rows(rows, n)


def eta_kernel(d: BinaryCode) -> Subspace:
    """{g : g*b in D^perp for all b in D}."""
    return kernel(_eta_matrix(frame(d)))


def solve_eta_preimage(delta: QMap) -> BitVector | None:
    """Some g with eta(g) = delta, or None if there is none."""
    fr = delta.frame
    rhs = BitVector(fr.d * fr.d, _matrix_to_vec(delta.matrix))
    x, _ = solve(_eta_matrix(fr), rhs)
    return x


@dataclass(frozen=True)
class UniquenessReport:
    dim_d: int
    dim_star: int
    formula_value: int
    satisfied: bool


def uniqueness_criterion(d: BinaryCode) -> UniquenessReport:
    _check_qd_pre(d)
    k = d.dim
    s = star_product(d).dim
    return UniquenessReport(k, s, comb(k, 2) + 1, s == comb(k, 2) + 1)


def product_set(basis: Sequence[BitVector]) -> list[BitVector]:
    """The all-one word together with products of distinct basis pairs."""
    n = basis[0].length
    return [BitVector.ones(n)] + [a * b for a, b in itertools.combinations(basis, 2)]


# ---------------------------------------------------------------------------
# module labels


def support_space(beta: BitVector) -> Subspace:
    return Subspace.span([1 << i for i in beta.support()], beta.length)


def maximal_self_orthogonal(cb: Subspace, rng: np.random.Generator | None = None) -> Subspace:
    """Greedy maximal self-orthogonal subcode of ``cb``.

    Each step adjoins a vector of cb that is even and orthogonal to the span
    so far; the first such basis vector is taken, or a random one with ``rng``.
    """
    n = cb.ambient_dim
    even = perp(Subspace.span([(1 << n) - 1], n)) if n else Subspace.zero(n)
    h = Subspace.zero(n)
    while True:
        cand = cb & perp(h) & even
        if cand.dim == h.dim:
            return h
        if rng is None:
            pick = next(v for v in cand.basis_ints() if v not in h)
        else:
            pick = 0
            while pick in h:
                pick = cand.random_int(rng)
        h = h + Subspace.span([pick], n)


def module_iso_criterion(
    c: BinaryCode,
    beta: BitVector,
    gamma1: BitVector,
    gamma2: BitVector,
    rng: np.random.Generator | None = None,
) -> bool:
    """Whether the labels (beta, gamma1) and (beta, gamma2) give isomorphic modules."""
    if beta not in perp(c.space):
        raise ValueError("beta must lie in the dual of C")
    supp = support_space(beta)
    h = maximal_self_orthogonal(c.space & supp, rng)
    h_perp_beta = supp & perp(h)
    return (gamma1 + gamma2) in (c.space + h_perp_beta)


def top_weight_shift(alpha: BitVector, beta: BitVector) -> Fraction:
    """<alpha, alpha + beta> / 2 modulo 1, with <,> the integer intersection size."""
    return Fraction(alpha.inner(alpha + beta) % 2, 2)


def sigma_relabel(alpha: BitVector, beta: BitVector, gamma_: BitVector) -> tuple[BitVector, BitVector]:
    """Label of a module after twisting by the sign automorphism of ``alpha``."""
    return beta, gamma_ + alpha * beta


# ---------------------------------------------------------------------------
# catalog


def _split_args(s: str) -> list[str]:
    out, depth, cur = [], 0, ""
    for ch in s:
        if ch == "," and depth == 0:
            out.append(cur)
            cur = ""
            continue
        depth += (ch == "(") - (ch == ")")
        cur += ch
    out.append(cur)
    return [a.strip() for a in out]


CATALOG_NAMES = ["RM14", "d16plus", "H8", "T10", "Dex", "D[10]", "D[8]", "D[7]", "One(n)", "ExtDbl(<name>)", "DirectSum(<a>,<b>)"]


def catalog(name: str) -> BinaryCode:
    """Resolve a catalog expression such as ``DirectSum(RM14,ExtDbl(d16plus))``."""
    s = name.strip()
    simple = {"RM14": rm_1_4, "d16plus": d16_plus, "H8": hamming_8, "T10": triangular_code, "Dex": dex}
    if s in simple:
        return simple[s]()
    m = re.fullmatch(r"D\[([\d,\s]+)\]", s)
    if m:
        return d_partition([int(t) for t in m.group(1).split(",") if t.strip()])
    m = re.fullmatch(r"(One|Zero)\((\d+)\)", s)
    if m:
        n = int(m.group(2))
        return allone_code(n) if m.group(1) == "One" else zero_code(n)
    m = re.fullmatch(r"(\w+)\((.*)\)", s)
    if m:
        args = _split_args(m.group(2))
        if m.group(1) == "ExtDbl" and len(args) == 1:
            return extended_doubling(catalog(args[0]))
        if m.group(1) == "DirectSum" and len(args) >= 2:
            return direct_sum(*(catalog(a) for a in args))
    raise KeyError(f"unknown code {name!r}; known: {', '.join(CATALOG_NAMES)}")


def rank_of(vectors: Sequence[BitVector]) -> int:
    return rank(BitMatrix.from_rows(list(vectors))) if vectors else 0
