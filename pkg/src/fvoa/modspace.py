"""Untwisted module classes of the fixed-point algebra of the lattice VOA on
sqrt(2)E8, modelled by cosets of the lattice E.

Coordinates: v = sum x_i e_i with <e_i, e_j> = 2 delta_ij, so <v, v> = 2 |x|^2.
In these coordinates E is the standard E8 lattice and E* = E / 2.  Internally
a vector of E* is stored as z = 4x, an integer vector whose halves y = z/2 lie
in E8; the class of v in E*/E is y mod 2E8, written as 8 bits in a fixed
E8 basis.

An untwisted class is a pair (coset label, sign).  Classes add componentwise
(coset labels by XOR, signs multiplicatively); this fixes the sign convention
for the theta-eigenspaces.  Graded dimensions: a nonzero coset contributes
half of its vectors of norm 2w to each sign at weight w; the zero coset has
the vacuum at weight 0 in the + part and the 8 Heisenberg vectors h_i at
weight 1 in the - part.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence

import numpy as np

from . import _kernels

# simple roots of E8, doubled (rows are 2y)
_BASIS2 = np.array(
    [
        [1, -1, -1, -1, -1, -1, -1, 1],
        [2, 2, 0, 0, 0, 0, 0, 0],
        [-2, 2, 0, 0, 0, 0, 0, 0],
        [0, -2, 2, 0, 0, 0, 0, 0],
        [0, 0, -2, 2, 0, 0, 0, 0],
        [0, 0, 0, -2, 2, 0, 0, 0],
        [0, 0, 0, 0, -2, 2, 0, 0],
        [0, 0, 0, 0, 0, -2, 2, 0],
    ],
    dtype=np.int64,
)
_BASIS2_INV = np.linalg.inv(_BASIS2.astype(float))

WEIGHTS = (Fraction(0), Fraction(1, 2), Fraction(1))


def _labels(z: np.ndarray) -> np.ndarray:
    """Coset labels (8-bit ints) of doubled E8 vectors z = 2y."""
    z = np.atleast_2d(np.asarray(z, dtype=np.int64))
    c = z @ _BASIS2_INV
    ci = np.rint(c).astype(np.int64)
    if np.abs(c - ci).max(initial=0) > 1e-9:
        raise ValueError("vector is not in E*")
    bits = ci & 1
    return (bits << np.arange(8)).sum(axis=1)


@lru_cache(maxsize=1)
def _short_table():
    """All y in E8 with |y|^2 <= 4, doubled, with their coset labels."""
    even = _kernels.bounded_vectors(np.array([-4, -2, 0, 2, 4]), 8, 16, 4, 0)
    odd = _kernels.bounded_vectors(np.array([-3, -1, 1, 3]), 8, 16, 4, 0)
    z = np.vstack([even, odd])
    z.setflags(write=False)
    sq = (z * z).sum(axis=1)  # <v, v> = sq / 8
    lab = _labels(z)
    return z, sq, lab


def _norm_of_z(z: np.ndarray) -> np.ndarray:
    # <v,v> = 2|x|^2 = 2 |z/4|^2 = |z|^2 / 8
    return (np.asarray(z) ** 2).sum(axis=-1) / 8


def e8_vector_count(norm2: int) -> int:
    """Number of E8 vectors with |y|^2 = norm2 (norm2 <= 4)."""
    z, sq, _ = _short_table()
    return int((sq == 4 * norm2).sum())


def to_z(x: Sequence) -> np.ndarray:
    """Coordinates in the e_i basis (numbers or strings like '1/2') -> z = 4x."""
    if len(x) != 8:
        raise ValueError("need 8 coordinates")
    fr = [Fraction(str(t)) if not isinstance(t, Fraction) else t for t in x]
    z = [f * 4 for f in fr]
    if any(t.denominator != 1 for t in z):
        raise ValueError("coordinates must be multiples of 1/4")
    z = np.array([int(t) for t in z], dtype=np.int64)
    if not ((z % 2 == 0).all() or (z % 2 == 1).all()) or z.sum() % 4:
        raise ValueError("vector is not in E*")
    return z


def coset_label(x: Sequence) -> int:
    return int(_labels(to_z(x))[0])


@lru_cache(maxsize=1)
def coset_representatives() -> dict[int, np.ndarray]:
    """Minimal-norm representative (lexicographically largest) of each coset, as z."""
    z, sq, lab = _short_table()
    reps = {}
    order = np.lexsort(tuple(-z[:, k] for k in range(7, -1, -1)) + (sq,))
    for i in order:
        reps.setdefault(int(lab[i]), z[i])
    if len(reps) != 256:
        raise AssertionError("short vectors do not meet every coset")
    return reps


def coset_short_vectors(label: int, norm) -> np.ndarray:
    """Vectors of norm 0, 1 or 2 in the coset, as x-coordinates (multiples of 1/4)."""
    norm = Fraction(norm)
    if norm not in (0, 1, 2):
        raise ValueError("supported norms are 0, 1 and 2")
    z, sq, lab = _short_table()
    sel = (lab == label) & (sq == int(8 * norm))
    return z[sel] / 4.0


def min_norm(label: int) -> Fraction:
    return Fraction(int((coset_representatives()[label] ** 2).sum()), 8)


def _pair_key(z: np.ndarray) -> tuple[int, ...]:
    """Representative of {z, -z}: the one whose first nonzero entry is positive."""
    t = tuple(int(a) for a in z)
    neg = tuple(-a for a in t)
    return max(t, neg)


@dataclass(frozen=True, order=True)
class UntwistedClass:
    """Class [V^{sign}_{lambda+E}]; sign 0 is +, 1 is -."""

    label: int
    sign: int = 0

    def __post_init__(self):
        if not 0 <= self.label < 256 or self.sign not in (0, 1):
            raise ValueError("bad untwisted class")

    def __add__(self, other: "UntwistedClass") -> "UntwistedClass":
        return UntwistedClass(self.label ^ other.label, self.sign ^ other.sign)

    @property
    def q(self) -> int:
        """1 exactly for half-integral weights."""
        return int(min_norm(self.label)) % 2

    def b(self, other: "UntwistedClass") -> int:
        return bform(self.label, other.label)

    @property
    def rep(self) -> tuple[Fraction, ...]:
        return tuple(Fraction(int(a), 4) for a in coset_representatives()[self.label])

    def __str__(self):
        coords = ",".join(str(c) for c in self.rep)
        return f"V[{coords}]{'-' if self.sign else '+'}"

    @classmethod
    def parse(cls, text: str) -> "UntwistedClass":
        text = text.strip()
        if not (text.startswith("V[") and text[-1] in "+-" and text[-2] == "]"):
            raise ValueError(f"bad class label {text!r}; expected V[x1,...,x8]+ or V[...]-")
        coords = [t.strip() for t in text[2:-2].split(",")]
        return cls(coset_label(coords), 1 if text[-1] == "-" else 0)

    @classmethod
    def of(cls, x: Sequence, sign: str = "+") -> "UntwistedClass":
        return cls(coset_label(x), 1 if sign == "-" else 0)


ZERO = UntwistedClass(0, 0)


def bform(l1: int, l2: int) -> int:
    """Polar form on labels: 2<v, w> mod 2 = y.y' mod 2."""
    reps = coset_representatives()
    y1, y2 = reps[l1], reps[l2]  # doubled: z = 2y
    return int((y1 @ y2) // 4) % 2


def all_classes() -> list[UntwistedClass]:
    return [UntwistedClass(l, s) for l in range(256) for s in (0, 1)]


# ---------------------------------------------------------------------------
# graded dimensions and weight-space bases


def class_weight_dim(c: UntwistedClass, w) -> int:
    w = Fraction(w)
    if w not in WEIGHTS:
        raise ValueError("weights 0, 1/2, 1 only")
    if c.label == 0:
        if w == 0:
            return 1 - c.sign
        if w == 1:
            n = len(coset_short_vectors(0, 2))
            return n // 2 + 8 * c.sign
        return 0
    return len(coset_short_vectors(c.label, 2 * w)) // 2


def class_weight_basis(c: UntwistedClass, w) -> list[tuple]:
    """Labels of a basis of the weight-w space.

    ("1",) vacuum; ("h", i) Heisenberg vector i (1-based); ("x", pair) for the
    theta-eigenvector on the pair {v, -v}, written via the quarter coordinates
    4x of the representative with positive leading entry.
    """
    w = Fraction(w)
    out: list[tuple] = []
    if c.label == 0 and w == 0 and c.sign == 0:
        out.append(("1",))
    if c.label == 0 and w == 1 and c.sign == 1:
        out += [("h", i) for i in range(1, 9)]
    if c.label != 0 or w != 0:
        z = np.rint(coset_short_vectors(c.label, 2 * w) * 4).astype(np.int64)
        keys = sorted({_pair_key(v) for v in z})
        out += [("x", k) for k in keys]
    if len(out) != class_weight_dim(c, w):
        raise AssertionError("basis size disagrees with the dimension rule")
    return out


Triple = tuple[UntwistedClass, UntwistedClass, UntwistedClass]


def _splits():
    h = Fraction(1, 2)
    return [s for s in itertools.product(WEIGHTS, repeat=3) if sum(s) == 1 and all(x in (0, h, 1) for x in s)]


def triple_weight1_dim(triples: Iterable[Triple]) -> int:
    total = 0
    for t in set(triples):
        for split in _splits():
            total += int(np.prod([class_weight_dim(c, w) for c, w in zip(t, split)]))
    return total


def triple_weight1_basis(triples: Iterable[Triple]) -> set[tuple]:
    """Basis labels ((class, label), (class, label), (class, label)) of the weight-1 space."""
    out = set()
    for t in set(triples):
        for split in _splits():
            parts = [[(c, lab) for lab in class_weight_basis(c, w)] for c, w in zip(t, split)]
            out.update(itertools.product(*parts))
    return out


def span_triples(gens: Sequence[Triple]) -> list[Triple]:
    """All sums of subsets of the generators (deduplicated)."""
    elems = {(ZERO, ZERO, ZERO)}
    for g in gens:
        elems |= {tuple(a + b for a, b in zip(e, g)) for e in elems}
    return sorted(elems)


def triple_q(t: Triple) -> int:
    return sum(c.q for c in t) % 2


def triple_b(s: Triple, t: Triple) -> int:
    return sum(a.b(b) for a, b in zip(s, t)) % 2


def is_totally_singular(gens: Sequence[Triple]) -> bool:
    if any(triple_q(g) for g in gens):
        return False
    return all(triple_b(s, t) == 0 for s, t in itertools.combinations(gens, 2))


def _rank(gens: Sequence[Triple]) -> int:
    return len(span_triples(gens)).bit_length() - 1


# ---------------------------------------------------------------------------
# the two explicit ideal decompositions


def _cls(x, sign="+"):
    return UntwistedClass.of(x, sign)


def _half(*idx):
    """The class of (sum_{i in idx} e_i)/2."""
    x = [Fraction(0)] * 8
    for i in idx:
        x[i - 1] = Fraction(1, 2)
    return x


def _unit(i):
    x = [0] * 8
    x[i - 1] = 1
    return x


VE_PLUS = ZERO
VE_MINUS = UntwistedClass(0, 1)
O = ZERO


def _first_coord_basis(i: int) -> set[tuple]:
    """e_i(-1) and x(e_i)^+- placed in the first coordinate."""
    vac = (O, ("1",))
    out = {((VE_MINUS, ("h", i)), vac, vac)}
    e1p, e1m = _cls(_unit(1)), _cls(_unit(1), "-")
    key = _pair_key(np.array(_unit(i)) * 4)
    out.add(((e1p, ("x", key)), vac, vac))
    out.add(((e1m, ("x", key)), vac, vac))
    return out


@dataclass
class IdealReport:
    name: str
    dims: list[int]
    expected: list[int]
    total: int
    expected_total: int
    partition_ok: bool
    totally_singular: bool
    choices: dict

    @property
    def ok(self) -> bool:
        return (
            self.dims == self.expected
            and self.total == self.expected_total
            and self.partition_ok
            and self.totally_singular
        )


def _untwisted_classes_with(pred) -> list[UntwistedClass]:
    return [c for c in all_classes() if pred(c)]


def find_a1_completion(S1, y, a, b):
    """Untwisted c, d with the orthogonality relations the A.1 set needs:
    c and d nonsingular, <a,c> = <b,d> = 1, and every other pairing between
    c, d and the remaining generators zero.  First solution in class order."""
    cs = _untwisted_classes_with(lambda c: c.q == 1 and a.b(c) == 1 and b.b(c) == 0 and y.b(c) == 0)
    ds = _untwisted_classes_with(lambda d: d.q == 1 and b.b(d) == 1 and a.b(d) == 0 and y.b(d) == 0)
    for c in cs:
        for d in ds:
            if c.b(d) == 0 and all((c + d).b(s) == 0 for s in S1):
                return c, d
    return None


def appendix_a1_check() -> IdealReport:
    s1 = [VE_MINUS, _cls(_unit(1))]
    S1 = [ZERO, s1[0], s1[1], s1[0] + s1[1]]
    y = _cls(_half(1, 2))
    a = _cls(_half(1, 2, 3, 4))
    b = _cls(_half(1, 2, 5, 6))
    found = find_a1_completion(S1, y, a, b)
    if found is None:
        raise AssertionError("no untwisted completion (c, d) exists")
    c, d = found
    gens = [(s, O, O) for s in s1] + [(a, a, O), (b, O, b), (c + d, c, d), (y, y, O), (y, O, y)]
    ts = is_totally_singular(gens)
    U = span_triples(gens)
    full = triple_weight1_basis(U)

    def body(triples):
        return triple_weight1_basis(triples)

    ideals = [
        _first_coord_basis(1)
        | _first_coord_basis(2)
        | body([(y + s, y, O) for s in S1] + [(y + s, O, y) for s in S1] + [(O, y, y)]),
        _first_coord_basis(3) | _first_coord_basis(4) | body([(y + a + s, y + a, O) for s in S1]),
        _first_coord_basis(5) | _first_coord_basis(6) | body([(y + b + s, O, y + b) for s in S1]),
        _first_coord_basis(7),
        _first_coord_basis(8),
    ]
    dims = [len(i) for i in ideals]
    union = set().union(*ideals)
    disjoint = sum(dims) == len(union)
    return IdealReport(
        "A.1",
        dims,
        [15, 10, 10, 3, 3],
        len(full),
        41,
        disjoint and union == full,
        ts and _rank(gens) == 7,
        {"c": str(c), "d": str(d)},
    )


def find_a2_completion(S1, p0, q0, a):
    """Untwisted p1, q1 so that P = <p0, p1> is a plus-type plane with p0 its
    only nonsingular vector, Q' = <a, q0, q1> has nonsingular vectors exactly
    q0 and q0 + a, and P, Q', S1 are mutually orthogonal."""
    def ok_p(p1):
        return p1.q == 0 and (p0 + p1).q == 0 and p0.b(p1) == 1 and all(p1.b(s) == 0 for s in S1)

    def ok_q(q1):
        return (
            q1.q == 0
            and (q1 + a).q == 0
            and (q0 + q1).q == 0
            and (q0 + q1 + a).q == 0
            and a.b(q1) == 0
            and all(q1.b(s) == 0 for s in S1)
        )

    ps = _untwisted_classes_with(ok_p)
    qs = _untwisted_classes_with(ok_q)
    for p1 in ps:
        for q1 in qs:
            P = [p0, p1]
            Qp = [a, q0, q1]
            if all(x.b(v) == 0 for x in P for v in Qp) and p1 not in S1:
                return p1, q1
    return None


def appendix_a2_check() -> IdealReport:
    s1 = [VE_MINUS, _cls(_unit(1))]
    S1 = [ZERO, s1[0], s1[1], s1[0] + s1[1]]
    h2 = VE_MINUS
    S2 = [ZERO, h2]
    p0 = _cls(_half(1, 2))
    q0 = _cls(_half(3, 4))
    a = _cls(_half(3, 4, 5, 6))
    found = find_a2_completion(S1, p0, q0, a)
    if found is None:
        raise AssertionError("no untwisted completion (p1, q1) exists")
    p1, q1 = found
    gens = [(s, O, O) for s in s1] + [(O, h2, O)] + [(p, p, O) for p in (p0, p1)] + [(q, O, q) for q in (a, q0, q1)]
    ts = is_totally_singular(gens)
    U = [t for t in span_triples(gens) if t != (O, h2, O)]
    full = triple_weight1_basis(U)
    body = triple_weight1_basis
    hprime = {("H'",)}
    ideals = [
        _first_coord_basis(1)
        | _first_coord_basis(2)
        | body([(p0 + x, p0 + s, O) for x in S1 for s in S2])
        | hprime,
        _first_coord_basis(3) | _first_coord_basis(4) | body([(q0 + x, O, q0) for x in S1]),
        _first_coord_basis(5) | _first_coord_basis(6) | body([(q0 + a + x, O, q0 + a) for x in S1]),
        _first_coord_basis(7),
        _first_coord_basis(8),
    ]
    dims = [len(i) for i in ideals]
    union = set().union(*ideals)
    disjoint = sum(dims) == len(union)
    return IdealReport(
        "A.2",
        dims,
        [15, 10, 10, 3, 3],
        len(full) + 1,
        41,
        disjoint and (union - hprime) == full,
        ts and _rank(gens) == 8,
        {"p1": str(p1), "q1": str(q1)},
    )
