"""Root lattices in coordinates, the two glued Niemeier lattices used by the
involution arguments, arithmetic in R*/N, and the D5 Weyl group.

Coordinate models: A_n lives in the sum-zero hyperplane of Z^{n+1}, D_n is
the even-sum sublattice of Z^n, E8 is the standard model (D8 plus the
all-halves coset).  Discriminant classes are stored as integers modulo the
(cyclic) discriminant order and are lifted to explicit rational vectors when
norms or inner products are needed.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

import numpy as np

from . import _kernels

_TYPE_RE = re.compile(r"^([ADE])(\d+)$")


@dataclass(frozen=True)
class RootLattice:
    family: str
    rank: int

    def __post_init__(self):
        ok = (
            (self.family == "A" and self.rank >= 1)
            or (self.family == "D" and self.rank >= 3)
            or (self.family == "E" and self.rank == 8)
        )
        if not ok:
            raise ValueError(f"unsupported root lattice {self.family}{self.rank}")

    @classmethod
    def parse(cls, text: str) -> "RootLattice":
        m = _TYPE_RE.match(text.strip())
        if not m:
            raise ValueError(f"bad root lattice name {text!r}")
        return cls(m.group(1), int(m.group(2)))

    @property
    def name(self) -> str:
        return f"{self.family}{self.rank}"

    @property
    def dim(self) -> int:
        """Dimension of the ambient coordinate space."""
        return self.rank + 1 if self.family == "A" else self.rank

    def contains(self, x) -> bool:
        x = [Fraction(t) for t in x]
        if len(x) != self.dim:
            return False
        if self.family == "A":
            return all(t.denominator == 1 for t in x) and sum(x) == 0
        if self.family == "D":
            return all(t.denominator == 1 for t in x) and sum(x) % 2 == 0
        halves = all(t.denominator == 2 for t in x)
        ints = all(t.denominator == 1 for t in x)
        return (halves or ints) and sum(x) % 2 == 0

    def roots(self) -> np.ndarray:
        """All norm-2 vectors, enumerated in coordinates (E8 in doubled coordinates / 2)."""
        return _roots(self.family, self.rank)

    def simple_roots(self) -> np.ndarray:
        n = self.rank
        if self.family == "A":
            r = np.zeros((n, n + 1))
            for i in range(n):
                r[i, i], r[i, i + 1] = 1, -1
            return r
        if self.family == "D":
            r = np.zeros((n, n))
            for i in range(n - 1):
                r[i, i], r[i, i + 1] = 1, -1
            r[n - 1, n - 2] = r[n - 1, n - 1] = 1
            return r
        r = np.zeros((8, 8))
        r[0] = [0.5, -0.5, -0.5, -0.5, -0.5, -0.5, -0.5, 0.5]
        r[1, :2] = [1, 1]
        for i in range(2, 8):
            r[i, i - 2], r[i, i - 1] = -1, 1
        return r

    def determinant(self) -> int:
        s = self.simple_roots()
        return int(round(np.linalg.det(s @ s.T)))

    # -- discriminant group (cyclic cases only)

    @property
    def disc_order(self) -> int:
        if self.family == "A":
            return self.rank + 1
        if self.family == "D":
            if self.rank % 2 == 0:
                raise ValueError("D_n with n even has a non-cyclic discriminant group")
            return 4
        return 1

    def glue_vector(self, k: int) -> tuple[Fraction, ...]:
        """Minimal representative of k times the standard discriminant generator."""
        n = self.rank
        k %= self.disc_order
        if self.family == "A":
            d = n + 1
            return tuple([Fraction(k, d)] * (d - k) + [Fraction(k - d, d)] * k)
        if self.family == "D":
            h = Fraction(1, 2)
            return [
                tuple([Fraction(0)] * n),
                tuple([h] * n),
                tuple([Fraction(1)] + [Fraction(0)] * (n - 1)),
                tuple([h] * (n - 1) + [-h]),
            ][k]
        return tuple([Fraction(0)] * 8)

    def class_of(self, x) -> int:
        """Discriminant class of a dual-lattice vector, by testing x - glue_vector(k)."""
        for k in range(self.disc_order):
            if self.contains([a - b for a, b in zip(x, self.glue_vector(k))]):
                return k
        raise ValueError("vector is not in the dual lattice")

    def disc_norm(self, k: int) -> Fraction:
        return sum(t * t for t in self.glue_vector(k))

    def class_min_norm_search(self, k: int, box: int = 1) -> Fraction:
        """Minimal norm in the class by brute force over lattice shifts with
        entries in [-box, box]; only meant for small ranks."""
        g = self.glue_vector(k)
        best = None
        for shift in itertools.product(range(-box, box + 1), repeat=self.dim):
            if not self.contains(shift):
                continue
            nrm = sum((a + b) ** 2 for a, b in zip(g, shift))
            best = nrm if best is None else min(best, nrm)
        return best


@lru_cache(maxsize=None)
def _roots(family: str, n: int) -> np.ndarray:
    out = []
    if family == "A":
        for i, j in itertools.permutations(range(n + 1), 2):
            v = np.zeros(n + 1, dtype=np.int64)
            v[i], v[j] = 1, -1
            out.append(v)
        r = np.array(out, dtype=float)
    elif family == "D":
        for i, j in itertools.combinations(range(n), 2):
            for a, b in itertools.product((1, -1), repeat=2):
                v = np.zeros(n, dtype=np.int64)
                v[i], v[j] = a, b
                out.append(v)
        r = np.array(out, dtype=float)
    else:
        even = _kernels.bounded_vectors(np.array([-2, 0, 2]), 8, 8, 4, 0)
        odd = _kernels.bounded_vectors(np.array([-1, 1]), 8, 8, 4, 0)
        z = np.vstack([even, odd])
        z = z[(z * z).sum(axis=1) == 8]
        r = z / 2.0
    r.setflags(write=False)
    return r


def root_count(name: str) -> int:
    return len(RootLattice.parse(name).roots())


def _inner(x, y) -> Fraction:
    return sum((a * b for a, b in zip(x, y)), Fraction(0))


@dataclass
class GlueDatum:
    name: str
    components: list[RootLattice]
    glue_generators: list[tuple[int, ...]]
    _group: list[tuple[int, ...]] = field(default=None, repr=False)

    @property
    def orders(self) -> tuple[int, ...]:
        return tuple(c.disc_order for c in self.components)

    def add(self, x, y):
        return tuple((a + b) % d for a, b, d in zip(x, y, self.orders))

    def scale(self, k, x):
        return tuple((k * a) % d for a, d in zip(x, self.orders))

    def neg(self, x):
        return self.scale(-1, x)

    def glue_group(self) -> list[tuple[int, ...]]:
        """All elements of N/R."""
        if self._group is None:
            elems = {tuple(0 for _ in self.components)}
            frontier = list(elems)
            while frontier:
                new = []
                for e in frontier:
                    for g in self.glue_generators:
                        f = self.add(e, g)
                        if f not in elems:
                            elems.add(f)
                            new.append(f)
                frontier = new
            self._group = sorted(elems)
        return self._group

    def lift(self, x) -> tuple[Fraction, ...]:
        out = []
        for c, k in zip(self.components, x):
            out.extend(c.glue_vector(k))
        return tuple(out)

    def norm(self, x) -> Fraction:
        return _inner(self.lift(x), self.lift(x))

    def ambient_dim(self) -> int:
        return sum(c.dim for c in self.components)

    def rank(self) -> int:
        return sum(c.rank for c in self.components)

    def root_count(self) -> int:
        return sum(len(c.roots()) for c in self.components)

    def weight1_dim(self) -> int:
        """dim (V_N)_1 = rank + number of norm-2 vectors (no glue roots)."""
        return self.rank() + self.root_count()

    def reduce(self, x) -> tuple[int, ...]:
        """Canonical representative of x + N/R in R*/R (lexicographic minimum)."""
        return min(self.add(x, g) for g in self.glue_group())

    def in_glue(self, x) -> bool:
        return tuple(a % d for a, d in zip(x, self.orders)) in set(self.glue_group())

    def element_order(self, x) -> int:
        """Order of x in R*/N."""
        k, y = 1, tuple(a % d for a, d in zip(x, self.orders))
        while not self.in_glue(y):
            y = self.add(y, x)
            k += 1
        return k

    def verify(self) -> dict:
        gens = [self.lift(g) for g in self.glue_generators]
        integral = all(_inner(a, b).denominator == 1 for a in gens for b in gens)
        even = all(_inner(a, a) % 2 == 0 for a in gens)
        group = self.glue_group()
        det_prod = 1
        for c in self.components:
            det_prod *= c.determinant()
        unimodular = len(group) ** 2 == det_prod
        min_glue = min((self.min_norm(x) for x in group if any(x)), default=None)
        return {
            "name": self.name,
            "glue_order": len(group),
            "det_product": det_prod,
            "integral": integral,
            "even": even and all(self.norm(x) % 2 == 0 for x in group),
            "unimodular": unimodular,
            "min_glue_norm": str(min_glue),
            "no_glue_roots": min_glue is None or min_glue > 2,
            "rank": self.rank(),
            "root_count": self.root_count(),
            "weight1_dim": self.weight1_dim(),
            "ok": integral and even and unimodular and (min_glue is None or min_glue > 2) and self.rank() == 24,
        }

    def min_norm(self, x) -> Fraction:
        # the glue vectors are minimal in their classes, componentwise
        return self.norm(x)


def niemeier(name: str) -> GlueDatum:
    if name == "A15D9":
        comps = [RootLattice("A", 15), RootLattice("D", 9)]
        return GlueDatum(name, comps, [(2, 1)])
    if name == "A7A7D5D5":
        comps = [RootLattice("A", 7), RootLattice("A", 7), RootLattice("D", 5), RootLattice("D", 5)]
        s = (3, 1, 1, 0)
        t = (2, 0, -1 % 4, 1)
        return GlueDatum(name, comps, [s, t])
    raise ValueError(f"unsupported Niemeier lattice {name!r}; known: A15D9, A7A7D5D5")


NIEMEIER_NAMES = ("A15D9", "A7A7D5D5")


def disc_orders(name: str) -> list[int]:
    """Orders in R*/N (equivalently 2R*/2N) of the generators used in the
    involution arguments: (alpha, 0) for A15D9; u and v for A7A7D5D5."""
    n = niemeier(name)
    if name == "A15D9":
        return [n.element_order((1, 0))]
    return [n.element_order(U), n.element_order(V)]


# labels in 2R*/2N are written through R*/N: u <-> (0, alpha, 0, 0), v <-> (0, 0, 0, beta)
U = (0, 1, 0, 0)
V = (0, 0, 0, 1)


def g_action(x):
    """The involution (v1, v2, v3, v4) -> (v2, v1, -v3, v4) on discriminant labels."""
    return (x[1], x[0], -x[2] % 4, x[3])


def g_action_coords(vec, comps):
    """The same involution on explicit coordinate vectors of R*."""
    sizes = [c.dim for c in comps]
    parts, pos = [], 0
    for s in sizes:
        parts.append(vec[pos : pos + s])
        pos += s
    out = list(parts[1]) + list(parts[0]) + [-t for t in parts[2]] + list(parts[3])
    return tuple(out)


def _compose(n: GlueDatum, a, b):
    """(w1, g)(w2, g): translation parts multiply as w1 + g(w2); g squared is trivial."""
    return n.add(a, g_action(b))


@dataclass
class DiscActionReport:
    g_u: bool
    g_v: bool
    g_coords_agree: bool
    g_preserves_n: bool
    kg_label_ok: bool
    identity_pairs: list[tuple[int, int]]
    n_even_necessary: bool
    exact_condition_ok: bool

    @property
    def ok(self) -> bool:
        return (
            self.g_u
            and self.g_v
            and self.g_coords_agree
            and self.g_preserves_n
            and self.kg_label_ok
            and self.n_even_necessary
            and self.exact_condition_ok
        )


def disc_action_check() -> DiscActionReport:
    n = niemeier("A7A7D5D5")
    red = n.reduce
    gu = red(g_action(U)) == red(n.add(n.scale(3, U), n.neg(V)))
    gv = red(g_action(V)) == red(V)

    # the label map agrees with the coordinate map on every class generator
    comps = n.components
    agree = True
    for x in [(1, 0, 0, 0), (0, 1, 0, 0), (0, 0, 1, 0), (0, 0, 0, 1)]:
        image = g_action_coords(n.lift(x), comps)
        pos, cls = 0, []
        for c in comps:
            cls.append(c.class_of(image[pos : pos + c.dim]))
            pos += c.dim
        agree &= tuple(cls) == g_action(x)
    preserves = all(n.in_glue(g_action(s)) for s in n.glue_generators)

    label_ok, ident = True, []
    for nn, mm in itertools.product(range(8), range(4)):
        w = n.add(n.scale(nn, U), n.scale(mm, V))
        sq = _compose(n, w, w)
        formula = n.add(n.scale(4 * nn, U), n.scale(-nn + 2 * mm, V))
        label_ok &= red(sq) == red(formula)
        if n.in_glue(sq):
            ident.append((nn, mm))
    n_even = all(a % 2 == 0 for a, _ in ident)
    exact = set(ident) == {(a, b) for a in range(8) for b in range(4) if a % 2 == 0 and (2 * b - a) % 4 == 0}
    return DiscActionReport(gu, gv, agree, preserves, label_ok, ident, n_even, exact)


def diagram_tau(x):
    """x -> -reverse(x) on an A_n coordinate vector."""
    return tuple(-t for t in reversed(x))


def tau_preserves_glue() -> bool:
    """Whether (tau, tau, 1, 1) maps the glue of N(A7^2 D5^2) into itself."""
    n = niemeier("A7A7D5D5")
    for s in n.glue_generators:
        img = []
        for i, c in enumerate(n.components):
            v = c.glue_vector(s[i])
            img.append(c.class_of(diagram_tau(v)) if i < 2 else s[i])
        if not n.in_glue(tuple(img)):
            return False
    return True


# ---------------------------------------------------------------------------
# D5 Weyl group


@lru_cache(maxsize=None)
def weyl_group_d(n: int = 5) -> np.ndarray:
    """Signed permutation matrices with an even number of -1 entries."""
    mats = []
    for perm in itertools.permutations(range(n)):
        for signs in itertools.product((1, -1), repeat=n):
            if signs.count(-1) % 2:
                continue
            m = np.zeros((n, n), dtype=np.int64)
            for i, (p, s) in enumerate(zip(perm, signs)):
                m[i, p] = s
            mats.append(m)
    out = np.array(mats)
    out.setflags(write=False)
    return out


def in_2d(x) -> bool:
    """Membership in 2 L(D_n) for integer vectors."""
    x = np.asarray(x)
    return bool((x % 2 == 0).all() and (x // 2).sum() % 2 == 0)


@dataclass
class WeylReport:
    group_order: int
    roots_checked: int
    all_conjugate: bool
    witnesses: dict
    minus_conjugate: bool

    @property
    def ok(self) -> bool:
        return self.group_order == 1920 and self.all_conjugate and self.minus_conjugate


def weyl_conjugacy_d5() -> WeylReport:
    """For every root s of D5: some w in W(D5) has w(s + 2 e1) = s mod 2 L(D5).
    Here 4 beta = 2 e1 mod 2 L(D5) because 2 beta + L(D5) = e1 + L(D5)."""
    W = weyl_group_d(5)
    d5 = RootLattice("D", 5)
    roots = d5.roots().astype(np.int64)
    e1 = np.array([1, 0, 0, 0, 0])
    assert d5.class_of(tuple(2 * np.array(d5.glue_vector(1)))) == d5.class_of(tuple(e1))
    all_ok, minus_ok, witnesses = True, True, {}
    for s in roots:
        images = W @ (s + 2 * e1)
        hit = [i for i, im in enumerate(images) if in_2d(im - s)]
        all_ok &= bool(hit)
        if tuple(s) == (1, 1, 0, 0, 0):
            witnesses[str(tuple(int(a) for a in s))] = len(hit)
        minus_ok &= any(in_2d(im + s) for im in W @ s)
    return WeylReport(len(W), len(roots), all_ok, witnesses, minus_ok)


# ---------------------------------------------------------------------------
# fixed-point dimensions of inner involutions


def fixed_dim_inner(name: str, s) -> int:
    """dim of the fixed points of exp(ad(pi i s)): rank + #{roots r : <s, r> even}."""
    lat = RootLattice.parse(name)
    s = np.asarray(s, dtype=float)
    if not lat.contains([Fraction(t).limit_denominator(2) for t in s]):
        raise ValueError("s must lie in the root lattice")
    ip = lat.roots() @ s
    return lat.rank + int((np.rint(ip) % 2 == 0).sum())


def fixed_dim_minus_one(name: str) -> int:
    """Fixed dimension of an involution lifting -1: one vector per root pair."""
    return len(RootLattice.parse(name).roots()) // 2
