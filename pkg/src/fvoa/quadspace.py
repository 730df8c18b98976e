"""Plus-type quadratic spaces over F2 and maximal totally singular subspaces of
their triple sums.

Model: R = F2^(2m) with q(x) = sum_i x[2i] x[2i+1], so e_i = bit 2i and
f_i = bit 2i+1 form hyperbolic pairs.  The triple space R^3 is F2^(6m) with
block j occupying bits [2mj, 2m(j+1)); since the blocks are unions of pairs,
q^3 is the same formula on the concatenated word.  Vectors are Python ints.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .gf2 import BitMatrix, BitVector, Subspace, perp

ENUM_BOUND = 20


def _even_mask(nbits: int) -> int:
    return sum(1 << (2 * i) for i in range(nbits // 2))


class QuadSpace:
    """(F2^(2m), q) with q(x) = sum x[2i] x[2i+1]."""

    def __init__(self, m: int):
        if m < 0 or 2 * m > 64 * 1024:
            raise ValueError("bad half dimension")
        self.m = m
        self.n = 2 * m
        self.even = _even_mask(self.n)

    # forms ---------------------------------------------------------------

    def q(self, x: int) -> int:
        return (x & (x >> 1) & self.even).bit_count() & 1

    def q_array(self, xs: np.ndarray) -> np.ndarray:
        """q on an array of words (requires n <= 64)."""
        if self.n > 64:
            raise ValueError("vectorised q needs n <= 64")
        xs = np.asarray(xs, dtype=np.uint64)
        e = np.uint64(self.even)
        return (np.bitwise_count(xs & (xs >> np.uint64(1)) & e) & 1).astype(np.uint8)

    def swap(self, x: int) -> int:
        e = self.even
        return ((x & e) << 1) | ((x >> 1) & e)

    def b(self, u: int, v: int) -> int:
        return (u & self.swap(v)).bit_count() & 1

    def bform(self, u: BitVector, v: BitVector) -> int:
        if u.length != self.n or v.length != self.n:
            raise ValueError("length mismatch")
        return self.b(u.value, v.value)

    def qform(self, u: BitVector) -> int:
        if u.length != self.n:
            raise ValueError("length mismatch")
        return self.q(u.value)

    # subspaces -----------------------------------------------------------

    def span(self, gens: Sequence[int]) -> Subspace:
        return Subspace.span(list(gens), self.n)

    def e(self, i: int) -> int:
        return 1 << (2 * i)

    def f(self, i: int) -> int:
        return 1 << (2 * i + 1)

    def perp(self, s: Subspace) -> Subspace:
        """Orthogonal complement for the polar form b."""
        return perp(Subspace.span([self.swap(v) for v in s.basis_ints()], self.n))

    def gram_rank(self, s: Subspace) -> int:
        return s.dim - (s & self.perp(s)).dim

    def radical(self, s: Subspace) -> Subspace:
        return s & self.perp(s)

    def is_totally_singular(self, s: Subspace) -> bool:
        rows = s.basis_ints()
        if any(self.q(r) for r in rows):
            return False
        return all(self.b(u, v) == 0 for u, v in itertools.combinations(rows, 2))

    def elements(self, s: Subspace) -> np.ndarray:
        if s.dim > ENUM_BOUND:
            raise ValueError(f"refusing to enumerate 2^{s.dim} vectors")
        if self.n > 64:
            raise ValueError("enumeration needs n <= 64")
        return s.elements()[:, 0]

    def count_singular(self, s: Subspace) -> int:
        return int((self.q_array(self.elements(s)) == 0).sum())

    def singular_vectors(self, s: Subspace) -> list[int]:
        el = self.elements(s)
        return sorted(int(x) for x in el[(self.q_array(el) == 0) & (el != 0)])

    def nonsingular_vectors(self, s: Subspace) -> list[int]:
        el = self.elements(s)
        return sorted(int(x) for x in el[self.q_array(el) == 1])

    def reflection(self, a: int):
        """x -> x + b(x, a) a, an isometry when q(a) = 1."""
        if not self.q(a):
            raise ValueError("reflection needs a nonsingular vector")
        return lambda x: x ^ (a if self.b(x, a) else 0)

    def __repr__(self):
        return f"QuadSpace(m={self.m})"


class TripleSpace(QuadSpace):
    """R^3 for R = QuadSpace(m), with q^3 the sum of the three forms."""

    def __init__(self, base: QuadSpace):
        super().__init__(3 * base.m)
        self.base = base
        self.w = base.n
        self.mask = (1 << base.n) - 1

    def join(self, x1: int, x2: int, x3: int) -> int:
        return x1 | (x2 << self.w) | (x3 << (2 * self.w))

    def blocks(self, v: int) -> tuple[int, int, int]:
        return v & self.mask, (v >> self.w) & self.mask, (v >> (2 * self.w)) & self.mask

    def block_arrays(self, el: np.ndarray) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        mask, w = np.uint64(self.mask), np.uint64(self.w)
        return el & mask, (el >> w) & mask, (el >> (w + w)) & mask

    def coordinate_subspace(self, keep: Sequence[int]) -> Subspace:
        """Vectors supported on the listed blocks."""
        gens = [1 << (self.w * j + c) for j in keep for c in range(self.w)]
        return Subspace.span(gens, self.n)

    def project(self, s: Subspace, j: int) -> Subspace:
        return self.base.span([self.blocks(v)[j] for v in s.basis_ints()])

    def permute(self, v: int, perm: Sequence[int]) -> int:
        """Put block perm[k] of v into position k."""
        xs = self.blocks(v)
        return self.join(*(xs[p] for p in perm))

    def __repr__(self):
        return f"TripleSpace(m={self.base.m})"


@dataclass(frozen=True, eq=False)
class TSSubspace:
    """A totally singular subspace of a quadratic space (validated on creation)."""

    space: QuadSpace
    sub: Subspace

    def __post_init__(self):
        if self.sub.ambient_dim != self.space.n:
            raise ValueError("subspace lives in a different ambient space")
        if not self.space.is_totally_singular(self.sub):
            raise ValueError("subspace is not totally singular")

    @classmethod
    def from_gens(cls, space: QuadSpace, gens: Sequence[int]) -> "TSSubspace":
        return cls(space, space.span(gens))

    @property
    def dim(self) -> int:
        return self.sub.dim

    @property
    def is_triple(self) -> bool:
        return isinstance(self.space, TripleSpace)

    @property
    def is_maximal(self) -> bool:
        return 2 * self.dim == self.space.n

    def __contains__(self, v: int) -> bool:
        return v in self.sub

    def __eq__(self, other):
        if not isinstance(other, TSSubspace):
            return NotImplemented
        return self.space.n == other.space.n and self.sub == other.sub

    def __hash__(self):
        return hash(self.sub)

    def to_text(self) -> str:
        m = self.space.base.m if self.is_triple else self.space.m
        return f"tspace m={m} triple={int(self.is_triple)}\n" + self.sub.basis.to_text()

    @classmethod
    def from_text(cls, text: str) -> "TSSubspace":
        head, _, body = text.strip().partition("\n")
        mt = re.fullmatch(r"tspace m=(\d+) triple=([01])", head.strip())
        if not mt:
            raise ValueError(f"bad tspace header {head!r}")
        base = QuadSpace(int(mt.group(1)))
        space = TripleSpace(base) if mt.group(2) == "1" else base
        mat = BitMatrix.from_text(body)
        if mat.cols != space.n:
            raise ValueError("matrix width disagrees with header")
        return cls(space, Subspace(space.n, mat))

    def __repr__(self):
        return f"TSSubspace(dim={self.dim}, {self.space!r})"


def is_totally_singular(space: QuadSpace, s: Subspace) -> bool:
    return space.is_totally_singular(s)


# ---------------------------------------------------------------------------
# types, Witt decomposition, isometries


@dataclass(frozen=True)
class SubspaceType:
    nonsingular: bool
    type: str  # "plus", "minus" or "not_applicable"


def subspace_type(space: QuadSpace, s: Subspace) -> SubspaceType:
    """Nonsingularity of b on s and, for nonsingular s, its type from the
    number of singular vectors (2^(2t-1) +- 2^(t-1) in dimension 2t)."""
    nonsing = space.gram_rank(s) == s.dim
    if not nonsing or s.dim % 2:
        return SubspaceType(nonsing, "not_applicable")
    t = s.dim // 2
    c = space.count_singular(s)
    if t == 0:
        return SubspaceType(True, "plus")
    if c == 2 ** (2 * t - 1) + 2 ** (t - 1):
        return SubspaceType(True, "plus")
    if c == 2 ** (2 * t - 1) - 2 ** (t - 1):
        return SubspaceType(True, "minus")
    raise AssertionError("singular vector count matches neither type")


@dataclass(frozen=True)
class WittDecomposition:
    pairs: tuple[tuple[int, int], ...]  # (e, f) with q(e)=q(f)=0, b(e,f)=1
    anisotropic: tuple[int, int] | None  # (u, v) with q(u)=q(v)=b(u,v)=1

    @property
    def type(self) -> str:
        return "minus" if self.anisotropic else "plus"

    def basis(self) -> list[int]:
        out = [x for p in self.pairs for x in p]
        if self.anisotropic:
            out += list(self.anisotropic)
        return out


def witt_decomposition(space: QuadSpace, s: Subspace, rng: np.random.Generator | None = None) -> WittDecomposition:
    """Split a nonsingular subspace into hyperbolic planes plus at most one
    anisotropic plane.  Picks are the smallest candidates, or random with rng."""
    if space.gram_rank(s) != s.dim:
        raise ValueError("subspace is singular")
    pairs = []
    w = s
    while w.dim:
        sing = space.singular_vectors(w)
        if not sing:
            if w.dim != 2:
                raise AssertionError("anisotropic part larger than a plane")
            u, v = w.basis_ints()
            return WittDecomposition(tuple(pairs), (u, v))
        e = sing[int(rng.integers(len(sing)))] if rng is not None else sing[0]
        partners = [x for x in space.elements(w).tolist() if space.b(e, x)]
        f = partners[int(rng.integers(len(partners)))] if rng is not None else min(partners)
        f ^= e if space.q(f) else 0
        pairs.append((e, f))
        w = w & space.perp(space.span([e, f]))
    return WittDecomposition(tuple(pairs), None)


class LinearMap:
    """Linear map fixed by the images of an independent list of vectors."""

    def __init__(self, src: Sequence[int], images: Sequence[int], n_src: int, n_dst: int):
        if len(src) != len(images):
            raise ValueError("need one image per source vector")
        self.src = list(src)
        self.images = list(images)
        self.n_src, self.n_dst = n_src, n_dst
        k = len(self.src)
        tagged = Subspace.span([v | (1 << (n_src + i)) for i, v in enumerate(self.src)], n_src + k)
        if Subspace.span(self.src, n_src).dim != k:
            raise ValueError("source vectors are dependent")
        self._tagged = tagged
        self.domain = Subspace.span(self.src, n_src)
        self.image = Subspace.span(self.images, n_dst)

    def __call__(self, v: int) -> int:
        r = self._tagged.reduce_int(v)
        if r & ((1 << self.n_src) - 1):
            raise ValueError("vector outside the domain")
        out = 0
        for i, img in enumerate(self.images):
            if (r >> (self.n_src + i)) & 1:
                out ^= img
        return out

    def compose(self, other: "LinearMap") -> "LinearMap":
        """self after other."""
        return LinearMap(other.src, [self(x) for x in other.images], other.n_src, self.n_dst)


def check_isometry(space: QuadSpace, phi: LinearMap) -> bool:
    """q(phi(x)) = q(x) on the whole domain (exhaustive up to dim 20)."""
    if phi.image.dim != phi.domain.dim:
        return False
    el = space.elements(phi.domain)
    img = np.array([phi(int(x)) for x in el], dtype=np.uint64)
    return bool(np.array_equal(space.q_array(el), space.q_array(img)))


def witt_isometry(space: QuadSpace, t: Subspace, u: Subspace, rng: np.random.Generator | None = None) -> LinearMap:
    """An isometry t -> u matching Witt bases."""
    wt, wu = witt_decomposition(space, t, rng), witt_decomposition(space, u, rng)
    if t.dim != u.dim or wt.type != wu.type:
        raise ValueError(f"spaces are not isometric ({t.dim} {wt.type} vs {u.dim} {wu.type})")
    return LinearMap(wt.basis(), wu.basis(), space.n, space.n)


# ---------------------------------------------------------------------------
# constructions


@dataclass
class ConstructionDatum:
    m: int
    k1: int
    k2: int
    eps: str | None
    S1: Subspace
    S2: Subspace
    P: Subspace
    Q: Subspace
    T: Subspace
    phi: LinearMap
    B: Subspace | None = None
    U: Subspace | None = None
    y: int | None = None
    z: int | None = None
    extra: dict = field(default_factory=dict)


def _random_isometry(space: QuadSpace, rng: np.random.Generator, count: int = 8):
    refl = []
    full = Subspace.full(space.n)
    while len(refl) < count:
        a = full.random_int(rng)
        if space.q(a):
            refl.append(space.reflection(a))

    def g(x: int) -> int:
        for r in refl:
            x = r(x)
        return x

    return g


def _moved(space: QuadSpace, s: Subspace, g) -> Subspace:
    return space.span([g(v) for v in s.basis_ints()])


def _assemble(tri: TripleSpace, d: ConstructionDatum) -> list[int]:
    j = tri.join
    gens = [j(s, 0, 0) for s in d.S1.basis_ints()]
    gens += [j(0, s, 0) for s in d.S2.basis_ints()]
    gens += [j(p, p, 0) for p in d.P.basis_ints()]
    gens += [j(q, 0, q) for q in d.Q.basis_ints()]
    gens += [j(0, t, d.phi(t)) for t in d.T.basis_ints()]
    return gens


def construct_even(m: int, k1: int, k2: int, eps: str, rng: np.random.Generator | None = None):
    """The space {(s1+p+q, s2+p+t, q+phi(t))} for m - k1 - k2 even.

    Returns (TSSubspace, ConstructionDatum).  With ``rng`` the flag (S1, S2, P)
    is moved by a random isometry and random complements and isometries are
    used, giving a different member of the same family.
    """
    eps = {"+": "plus", "-": "minus"}.get(eps, eps)
    r = m - k1 - k2
    if eps not in ("plus", "minus"):
        raise ValueError("eps must be plus or minus")
    if not (0 <= k2 <= k1 <= m) or r < 0 or r % 2:
        raise ValueError(f"need 0 <= k2 <= k1 and m - k1 - k2 even and >= 0: got ({m},{k1},{k2})")
    if eps == "minus" and (r < 2 or k1 - k2 > m - 2):
        raise ValueError(f"no minus-type P for ({m},{k1},{k2})")
    R = QuadSpace(m)
    s1 = [R.e(i) for i in range(k1)]
    s2 = [R.e(i) for i in range(k2)]
    p = []
    for i in range(k1, k1 + r // 2 - (eps == "minus")):
        p += [R.e(i), R.f(i)]
    if eps == "minus":
        a = k1 + r // 2 - 1
        p += [R.e(a) | R.f(a), R.e(a) | R.e(a + 1) | R.f(a + 1)]
    S1, S2, P = R.span(s1), R.span(s2), R.span(p)
    if rng is not None:
        g = _random_isometry(R, rng)
        S1, S2, P = _moved(R, S1, g), _moved(R, S2, g), _moved(R, P, g)
    Q = S1.complement_in(R.perp(S1 + P), rng)
    T = S2.complement_in(R.perp(S2 + P), rng)
    phi = witt_isometry(R, T, R.perp(Q), rng)
    d = ConstructionDatum(m, k1, k2, eps, S1, S2, P, Q, T, phi)
    tri = TripleSpace(R)
    return TSSubspace.from_gens(tri, _assemble(tri, d)), d


def construct_odd(m: int, k1: int, k2: int, rng: np.random.Generator | None = None):
    """The odd family: the even-type generators plus (y,y,0), (y,0,y), (z,z,z)."""
    r = m - k1 - k2
    if not (0 <= k2 <= k1 <= m) or r < 0 or r % 2 == 0:
        raise ValueError(f"need 0 <= k2 <= k1 and m - k1 - k2 odd: got ({m},{k1},{k2})")
    R = QuadSpace(m)
    s1 = [R.e(i) for i in range(k1)]
    s2 = [R.e(i) for i in range(k2)]
    npairs_p = (r - 1) // 2
    npairs_q = (m - k1 + k2 - 1) // 2
    p = [x for i in range(k1, k1 + npairs_p) for x in (R.e(i), R.f(i))]
    q = [x for i in range(k1 + npairs_p, k1 + npairs_p + npairs_q) for x in (R.e(i), R.f(i))]
    S1, S2, P, Q = R.span(s1), R.span(s2), R.span(p), R.span(q)
    if rng is not None:
        g = _random_isometry(R, rng)
        S1, S2, P, Q = (_moved(R, X, g) for X in (S1, S2, P, Q))
    B = S1.complement_in(R.perp(S1 + P + Q), rng)
    T = S2.complement_in(R.perp(S2 + P + B), rng)
    U = R.perp(Q + B)
    nons = R.nonsingular_vectors(B)
    sing = R.singular_vectors(B)
    if B.dim != 2 or len(nons) != 1:
        raise AssertionError("B is not a plus-type plane")
    y = nons[0]
    z = sing[int(rng.integers(len(sing)))] if rng is not None else sing[0]
    phi = witt_isometry(R, T, U, rng)
    d = ConstructionDatum(m, k1, k2, None, S1, S2, P, Q, T, phi, B=B, U=U, y=y, z=z)
    tri = TripleSpace(R)
    j = tri.join
    gens = _assemble(tri, d) + [j(y, y, 0), j(y, 0, y), j(z, z, z)]
    return TSSubspace.from_gens(tri, gens), d


def construct_flag(m: int = 5):
    """Space built from a flag S3 < S2 < S1 of totally singular subspaces of
    dims 1, 2, 4: {(s1+q, s2+t, s3+q+phi(t))}.

    Q complements S1 in S1^perp and T complements S2 in S2^perp.  phi maps T
    isometrically onto a complement U of S3 in (S3 + Q)^perp, which is the
    6-dimensional nonsingular part of that space.
    """
    if m != 5:
        raise ValueError("the flag construction is set up for m = 5")
    R = QuadSpace(m)
    S1 = R.span([R.e(i) for i in range(4)])
    S2 = R.span([R.e(i) for i in range(2)])
    S3 = R.span([R.e(0)])
    Q = S1.complement_in(R.perp(S1))
    T = S2.complement_in(R.perp(S2))
    U = S3.complement_in(R.perp(S3 + Q))
    phi = witt_isometry(R, T, U)
    tri = TripleSpace(R)
    j = tri.join
    gens = [j(s, 0, 0) for s in S1.basis_ints()]
    gens += [j(0, s, 0) for s in S2.basis_ints()]
    gens += [j(0, 0, s) for s in S3.basis_ints()]
    gens += [j(q, 0, q) for q in Q.basis_ints()]
    gens += [j(0, t, phi(t)) for t in T.basis_ints()]
    d = ConstructionDatum(m, 4, 2, None, S1, S2, R.span([]), Q, T, phi, U=U, extra={"S3": S3})
    return TSSubspace.from_gens(tri, gens), d


# ---------------------------------------------------------------------------
# condition (2), transforms, invariants


@dataclass(frozen=True)
class Cond2Result:
    holds: bool
    witness: tuple[tuple[int, int, int], tuple[int, int, int]] | None = None
    order: tuple[int, int, int] = (0, 1, 2)


def _cond2_order(tri: TripleSpace, el: np.ndarray, order: tuple[int, int, int]) -> Cond2Result:
    blocks = tri.block_arrays(el)
    x1, x2, x3 = (blocks[i] for i in order)
    R = tri.base
    s1, s2, s3 = (R.q_array(x) == 0 for x in (x1, x2, x3))
    left = (x3 == 0) & (x1 != 0) & (x2 != 0) & s1 & s2
    right = (x1 == 0) & (x2 != 0) & (x3 != 0) & s2 & s3
    common = np.intersect1d(x2[left], x2[right])
    if common.size == 0:
        return Cond2Result(False, None, order)
    a2 = common[0]
    u = el[left & (x2 == a2)][0]
    v = el[right & (x2 == a2)][0]
    return Cond2Result(True, (tri.blocks(int(u)), tri.blocks(int(v))), order)


def cond2_check(s: TSSubspace, symmetric: bool = False) -> Cond2Result:
    """Look for (a1,a2,0), (0,a2,a3) in s with all a_i nonzero singular.

    ``symmetric`` also tries the other two choices of shared coordinate.
    """
    if not s.is_triple:
        raise ValueError("condition (2) is defined on the triple space")
    el = s.space.elements(s.sub)
    orders = [(0, 1, 2)]
    if symmetric:
        orders += [(1, 0, 2), (0, 2, 1)]
    res = Cond2Result(False)
    for order in orders:
        res = _cond2_order(s.space, el, order)
        if res.holds:
            return res
    return res


def orbifold_transform(s: TSSubspace, w: int | BitVector) -> TSSubspace:
    """<s cap w^perp, w> for a singular w outside s."""
    sp = s.space
    w = w.value if isinstance(w, BitVector) else int(w)
    if sp.q(w):
        raise ValueError("w is nonsingular")
    if w in s.sub:
        raise ValueError("w already lies in the subspace")
    rows = s.sub.basis_ints()
    hit = [v for v in rows if sp.b(v, w)]
    keep = [v for v in rows if not sp.b(v, w)]
    if hit:
        keep += [v ^ hit[0] for v in hit[1:]]
    return TSSubspace.from_gens(sp, keep + [w])


def coordinate_intersections(s: TSSubspace) -> tuple[int, int, int]:
    """dims of s meeting {(r,0,0)}, {(0,r,0)}, {(0,0,r)}."""
    tri = s.space
    return tuple((s.sub & tri.coordinate_subspace([j])).dim for j in range(3))


def _quotient_record(R: QuadSpace, v: Subspace) -> tuple[int, int, str]:
    rad = R.radical(v)
    if any(R.q(x) for x in rad.basis_ints()):
        return (v.dim, rad.dim, "undefined")
    comp = rad.complement_in(v)
    return (v.dim, rad.dim, subspace_type(R, comp).type)


@dataclass(frozen=True)
class InvariantProfile:
    cond2: bool
    axis_dims: tuple[int, ...]
    parity: int
    epsilon: str
    signature: tuple


def invariant_profile(s: TSSubspace) -> InvariantProfile:
    """Invariants of s under isometries of R acting on all blocks and
    permutations of the three blocks.

    For every block j: dims and induced type of the projection of s, and of
    the projection of s cap {x_l = 0} for each other block l.  The signature
    is the minimum of these records over the six block orders.  ``epsilon`` is
    the induced type on the projection, onto a block of largest axis dim, of
    the part of s vanishing on a block of axis dim 0.
    """
    tri = s.space
    R = tri.base
    if s.dim > ENUM_BOUND:
        raise ValueError("subspace too large to profile")
    axes = coordinate_intersections(s)
    full = [_quotient_record(R, tri.project(s.sub, j)) for j in range(3)]
    zeroed = {}
    for j, l in itertools.permutations(range(3), 2):
        part = s.sub & tri.coordinate_subspace([k for k in range(3) if k != l])
        zeroed[j, l] = _quotient_record(R, tri.project(part, j))
    sigs = []
    for perm in itertools.permutations(range(3)):
        sigs.append(
            (
                tuple(axes[p] for p in perm),
                tuple(full[p] for p in perm),
                tuple(zeroed[perm[a], perm[b]] for a, b in itertools.permutations(range(3), 2)),
            )
        )
    top = max(axes)
    eps_types = sorted(
        {zeroed[j, l][2] for j in range(3) for l in range(3) if j != l and axes[j] == top and axes[l] == 0}
    )
    epsilon = eps_types[0] if len(eps_types) == 1 else ("none" if not eps_types else "mixed")
    return InvariantProfile(
        cond2=cond2_check(s, symmetric=True).holds,
        axis_dims=tuple(sorted(axes, reverse=True)),
        parity=(R.m - sum(axes)) % 2,
        epsilon=epsilon,
        signature=min(sigs),
    )


# ---------------------------------------------------------------------------
# the transforms used for the m = 5 isomorphisms


def _first(vals):
    for v in vals:
        return v
    raise AssertionError("no admissible vector")


def transform_540():
    """S(5,4,0) moved by W = (b, d+z, 0), b nonsingular in B^perp off S1^perp,
    d nonsingular in T.  Returns (source, W, result)."""
    s, d = construct_odd(5, 4, 0)
    R = s.space.base
    s1perp = R.perp(d.S1)
    b = _first(x for x in R.nonsingular_vectors(R.perp(d.B)) if x not in s1perp)
    dd = _first(R.nonsingular_vectors(d.T))
    w = s.space.join(b, dd ^ d.z, 0)
    return s, w, orbifold_transform(s, w)


def transform_flag():
    """Flag space moved by W = (b, 0, b) with b singular in (Q+U)^perp off S3^perp."""
    s, d = construct_flag()
    R = s.space.base
    s3perp = R.perp(d.extra["S3"])
    b = _first(x for x in R.singular_vectors(R.perp(d.Q + d.U)) if x not in s3perp)
    w = s.space.join(b, 0, b)
    return s, w, orbifold_transform(s, w)


def transform_520():
    """S(5,2,0) moved by W = (a+b, 0, 0), a singular in P, b singular in Q."""
    s, d = construct_odd(5, 2, 0)
    R = s.space.base
    a = _first(R.singular_vectors(d.P))
    b = _first(R.singular_vectors(d.Q))
    w = s.space.join(a ^ b, 0, 0)
    return s, w, orbifold_transform(s, w)


def transform_521():
    """S(5,2,1,+) moved by W = (a, 0, 0), a singular in Q."""
    s, d = construct_even(5, 2, 1, "plus")
    R = s.space.base
    a = _first(R.singular_vectors(d.Q))
    w = s.space.join(a, 0, 0)
    return s, w, orbifold_transform(s, w)


def admissible_parameters(m: int) -> list[tuple]:
    """All (k1, k2, eps) for the even family and (k1, k2) for the odd family."""
    out = []
    for k1 in range(m + 1):
        for k2 in range(k1 + 1):
            r = m - k1 - k2
            if r < 0:
                continue
            if r % 2 == 0:
                out.append((k1, k2, "plus"))
                if r >= 2 and k1 - k2 <= m - 2:
                    out.append((k1, k2, "minus"))
            else:
                out.append((k1, k2))
    return out


def construct(params: tuple, m: int = 5, rng: np.random.Generator | None = None) -> TSSubspace:
    if len(params) == 3:
        return construct_even(m, *params, rng=rng)[0]
    return construct_odd(m, *params, rng=rng)[0]


_NAME = re.compile(r"S\((\d+),(\d+),(\d+)(?:,([+-]))?\)")

NAMED = {"Flag": lambda: construct_flag()[0]}
NAMED_TRANSFORMS = {"T540": transform_540, "TFlag": transform_flag, "T520": transform_520, "T521": transform_521}


def named_space(name: str) -> TSSubspace:
    """Resolve "S(5,3,0,-)", "S(5,2,0)", "Flag" or a transform name such as "T540"."""
    name = name.replace(" ", "")
    mt = _NAME.fullmatch(name)
    if mt:
        m, k1, k2 = (int(mt.group(i)) for i in (1, 2, 3))
        if mt.group(4):
            return construct_even(m, k1, k2, mt.group(4))[0]
        return construct_odd(m, k1, k2)[0]
    if name in NAMED:
        return NAMED[name]()
    if name in NAMED_TRANSFORMS:
        return NAMED_TRANSFORMS[name]()[2]
    raise KeyError(f"unknown space {name!r}; try S(m,k1,k2,+/-), S(m,k1,k2), Flag, " + ", ".join(NAMED_TRANSFORMS))
