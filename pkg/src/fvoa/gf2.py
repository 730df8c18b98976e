"""Exact linear algebra over F2.

Vectors are stored as Python ints (bit ``c`` is coordinate ``c``) inside
:class:`BitVector`, and matrices as rows of packed little-endian uint64 words
inside :class:`BitMatrix`.  Elimination, span enumeration and weight counting
go through :mod:`fvoa._kernels`.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from . import _kernels

MAX_DIM = 1 << 16


def _check_dim(n: int) -> int:
    n = int(n)
    if n < 0 or n > MAX_DIM:
        raise ValueError(f"ambient dimension {n} outside [0, {MAX_DIM}]")
    return n


def _nwords(n: int) -> int:
    return max(1, (n + 63) // 64)


def ints_to_words(values: Iterable[int], n: int) -> np.ndarray:
    nw = _nwords(n)
    values = list(values)
    buf = b"".join(int(v).to_bytes(8 * nw, "little") for v in values)
    return np.frombuffer(buf, dtype="<u8").astype(np.uint64).reshape(len(values), nw)


def words_to_ints(words: np.ndarray) -> list[int]:
    words = np.ascontiguousarray(words, dtype="<u8")
    return [int.from_bytes(row.tobytes(), "little") for row in words]


def _parse_bits(text: str) -> tuple[int, int]:
    text = text.strip()
    if any(ch not in "01" for ch in text):
        raise ValueError(f"not a 0/1 string: {text!r}")
    return len(text), int(text[::-1], 2) if text else 0


@dataclass(frozen=True)
class BitVector:
    """An element of F2^length; ``value`` holds coordinate c in bit c."""

    length: int
    value: int = 0

    def __post_init__(self):
        _check_dim(self.length)
        if self.value < 0 or self.value >> self.length:
            raise ValueError("value has bits beyond the vector length")

    @classmethod
    def zeros(cls, n: int) -> "BitVector":
        return cls(n, 0)

    @classmethod
    def ones(cls, n: int) -> "BitVector":
        return cls(n, (1 << n) - 1)

    @classmethod
    def unit(cls, n: int, i: int) -> "BitVector":
        if not 0 <= i < n:
            raise IndexError(i)
        return cls(n, 1 << i)

    @classmethod
    def from_support(cls, n: int, support: Iterable[int]) -> "BitVector":
        v = 0
        for i in support:
            if not 0 <= i < n:
                raise IndexError(i)
            v |= 1 << i
        return cls(n, v)

    @classmethod
    def from_str(cls, text: str) -> "BitVector":
        n, v = _parse_bits(text)
        return cls(n, v)

    @classmethod
    def from_array(cls, bits) -> "BitVector":
        bits = np.asarray(bits, dtype=np.uint8).ravel() & 1
        return cls(bits.size, int("".join(map(str, bits[::-1])), 2) if bits.size else 0)

    def _same(self, other: "BitVector"):
        if not isinstance(other, BitVector):
            return NotImplemented
        if other.length != self.length:
            raise ValueError(f"length mismatch: {self.length} vs {other.length}")
        return other

    def __add__(self, other):
        other = self._same(other)
        if other is NotImplemented:
            return other
        return BitVector(self.length, self.value ^ other.value)

    __xor__ = __add__
    __sub__ = __add__

    def __mul__(self, other):
        other = self._same(other)
        if other is NotImplemented:
            return other
        return BitVector(self.length, self.value & other.value)

    def dot(self, other: "BitVector") -> int:
        self._same(other)
        return (self.value & other.value).bit_count() & 1

    def inner(self, other: "BitVector") -> int:
        """Integer intersection size |supp(a) & supp(b)|."""
        self._same(other)
        return (self.value & other.value).bit_count()

    @property
    def weight(self) -> int:
        return self.value.bit_count()

    def __len__(self):
        return self.length

    def __getitem__(self, i: int) -> int:
        if not -self.length <= i < self.length:
            raise IndexError(i)
        return (self.value >> (i % self.length)) & 1

    def __bool__(self):
        return self.value != 0

    def support(self) -> list[int]:
        v, out, i = self.value, [], 0
        while v:
            if v & 1:
                out.append(i)
            v >>= 1
            i += 1
        return out

    def concat(self, *others: "BitVector") -> "BitVector":
        v, n = self.value, self.length
        for o in others:
            v |= o.value << n
            n += o.length
        return BitVector(n, v)

    def split(self, *sizes: int) -> list["BitVector"]:
        if sum(sizes) != self.length:
            raise ValueError("sizes do not add up to the length")
        out, v = [], self.value
        for s in sizes:
            out.append(BitVector(s, v & ((1 << s) - 1)))
            v >>= s
        return out

    def to_array(self) -> np.ndarray:
        return np.array([(self.value >> i) & 1 for i in range(self.length)], dtype=np.uint8)

    def __str__(self):
        return format(self.value, f"0{self.length}b")[::-1] if self.length else ""

    def __repr__(self):
        return f"BitVector('{self}')"


def coordinatewise_product(a: BitVector, b: BitVector) -> BitVector:
    return a * b


class BitMatrix:
    """Dense F2 matrix; rows are packed into uint64 words (read-only)."""

    __slots__ = ("words", "cols")

    def __init__(self, words: np.ndarray, cols: int):
        cols = _check_dim(cols)
        words = np.array(words, dtype=np.uint64, copy=True)
        if words.ndim != 2 or words.shape[1] != _nwords(cols):
            raise ValueError("word array does not match the column count")
        if cols % 64 and words.shape[0] and (words[:, -1] >> np.uint64(cols % 64)).any():
            raise ValueError("bits set beyond the last column")
        words.setflags(write=False)
        self.words = words
        self.cols = cols

    @classmethod
    def from_rows(cls, rows: Sequence, cols: int | None = None) -> "BitMatrix":
        ints = []
        for r in rows:
            if isinstance(r, BitVector):
                if cols is None:
                    cols = r.length
                elif r.length != cols:
                    raise ValueError("row length mismatch")
                ints.append(r.value)
            elif isinstance(r, str):
                n, v = _parse_bits(r)
                if cols is None:
                    cols = n
                elif n != cols:
                    raise ValueError("row length mismatch")
                ints.append(v)
            else:
                ints.append(int(r))
        if cols is None:
            raise ValueError("cannot infer the column count of an empty matrix")
        if any(v < 0 or v >> cols for v in ints):
            raise ValueError("row has bits beyond the column count")
        return cls(ints_to_words(ints, cols), cols)

    @classmethod
    def from_dense(cls, a) -> "BitMatrix":
        a = np.asarray(a, dtype=np.uint8) & 1
        if a.ndim != 2:
            raise ValueError("expected a 2-d array")
        rows, cols = a.shape
        nw = _nwords(cols)
        padded = np.zeros((rows, nw * 64), dtype=np.uint8)
        padded[:, :cols] = a
        packed = np.packbits(padded, axis=1, bitorder="little")
        return cls(packed.view("<u8").astype(np.uint64).reshape(rows, nw), cols)

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "BitMatrix":
        return cls(np.zeros((rows, _nwords(cols)), dtype=np.uint64), cols)

    @classmethod
    def identity(cls, n: int) -> "BitMatrix":
        return cls.from_rows([1 << i for i in range(n)], n)

    @property
    def rows(self) -> int:
        return self.words.shape[0]

    @property
    def shape(self) -> tuple[int, int]:
        return self.rows, self.cols

    def row_ints(self) -> list[int]:
        return words_to_ints(self.words)

    def row(self, i: int) -> BitVector:
        return BitVector(self.cols, words_to_ints(self.words[i : i + 1])[0])

    def __iter__(self):
        for v in self.row_ints():
            yield BitVector(self.cols, v)

    def to_dense(self) -> np.ndarray:
        if self.rows == 0:
            return np.zeros((0, self.cols), dtype=np.uint8)
        raw = np.ascontiguousarray(self.words, dtype="<u8").view(np.uint8)
        return np.unpackbits(raw, axis=1, bitorder="little")[:, : self.cols].copy()

    def transpose(self) -> "BitMatrix":
        return BitMatrix.from_dense(self.to_dense().T)

    T = property(transpose)

    def __matmul__(self, other):
        if isinstance(other, BitVector):
            if other.length != self.cols:
                raise ValueError("dimension mismatch")
            v = 0
            for i, r in enumerate(self.row_ints()):
                v |= ((r & other.value).bit_count() & 1) << i
            return BitVector(self.rows, v)
        if isinstance(other, BitMatrix):
            if other.rows != self.cols:
                raise ValueError("dimension mismatch")
            prod = (self.to_dense().astype(np.int64) @ other.to_dense().astype(np.int64)) & 1
            return BitMatrix.from_dense(prod)
        return NotImplemented

    def vstack(self, other: "BitMatrix") -> "BitMatrix":
        if other.cols != self.cols:
            raise ValueError("column mismatch")
        return BitMatrix(np.vstack([self.words, other.words]), self.cols)

    @property
    def is_rref(self) -> bool:
        return self == rref(self) and self.rows == rank(self)

    def __eq__(self, other):
        if not isinstance(other, BitMatrix):
            return NotImplemented
        return self.shape == other.shape and bool(np.array_equal(self.words, other.words))

    def __hash__(self):
        return hash((self.cols, self.words.tobytes()))

    def to_text(self) -> str:
        lines = [f"{self.rows} {self.cols}"]
        lines += [str(BitVector(self.cols, v)) for v in self.row_ints()]
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "BitMatrix":
        lines = [ln.strip() for ln in text.strip().splitlines() if ln.strip()]
        if not lines:
            raise ValueError("empty matrix text")
        try:
            rows, cols = (int(t) for t in lines[0].split())
        except ValueError:
            raise ValueError(f"bad matrix header {lines[0]!r}") from None
        body = lines[1:]
        if len(body) != rows:
            raise ValueError(f"expected {rows} rows, found {len(body)}")
        if rows == 0:
            return cls.zeros(0, cols)
        return cls.from_rows(body, cols)

    def __repr__(self):
        return f"BitMatrix({self.rows}x{self.cols})"


def rref_pivots(m: BitMatrix) -> tuple[BitMatrix, tuple[int, ...]]:
    """Reduced row echelon form with zero rows dropped, and its pivot columns."""
    if m.rows == 0:
        return BitMatrix.zeros(0, m.cols), ()
    red, piv = _kernels.rref(m.words, m.cols)
    return BitMatrix(red, m.cols), tuple(int(p) for p in piv)


def rref(m: BitMatrix) -> BitMatrix:
    return rref_pivots(m)[0]


def rank(m: BitMatrix) -> int:
    return rref(m).rows


def _kernel_ints(red_rows: list[int], pivots: Sequence[int], n: int) -> list[int]:
    pivset = set(pivots)
    out = []
    for f in range(n):
        if f in pivset:
            continue
        v = 1 << f
        for r, p in zip(red_rows, pivots):
            if (r >> f) & 1:
                v |= 1 << p
        out.append(v)
    return out


def kernel(m: BitMatrix) -> "Subspace":
    """Null space {x : m x = 0}."""
    red, piv = rref_pivots(m)
    return Subspace.span(_kernel_ints(red.row_ints(), piv, m.cols), m.cols)


def solve(m: BitMatrix, rhs: BitVector) -> tuple[BitVector | None, "Subspace"]:
    """Particular solution of m x = rhs (None if inconsistent) and the kernel of m."""
    if rhs.length != m.rows:
        raise ValueError(f"rhs length {rhs.length} does not match {m.rows} rows")
    n = m.cols
    aug = [r | (((rhs.value >> i) & 1) << n) for i, r in enumerate(m.row_ints())]
    red, piv = rref_pivots(BitMatrix.from_rows(aug, n + 1))
    ker = Subspace.span(
        _kernel_ints([r & ((1 << n) - 1) for r in red.row_ints()], [p for p in piv if p < n], n), n
    )
    if n in piv:
        return None, ker
    x = 0
    for r, p in zip(red.row_ints(), piv):
        if (r >> n) & 1:
            x |= 1 << p
    return BitVector(n, x), ker


class Subspace:
    """A subspace of F2^n held by its reduced row echelon basis."""

    __slots__ = ("ambient_dim", "basis", "pivots", "_rows")

    def __init__(self, ambient_dim: int, basis: BitMatrix):
        ambient_dim = _check_dim(ambient_dim)
        if basis.cols != ambient_dim:
            raise ValueError("basis width differs from the ambient dimension")
        red, piv = rref_pivots(basis)
        self.ambient_dim = ambient_dim
        self.basis = red
        self.pivots = piv
        self._rows = red.row_ints()

    @classmethod
    def span(cls, gens: Iterable, n: int) -> "Subspace":
        gens = list(gens)
        if not gens:
            return cls.zero(n)
        return cls(n, BitMatrix.from_rows(gens, n))

    @classmethod
    def zero(cls, n: int) -> "Subspace":
        return cls(n, BitMatrix.zeros(0, n))

    @classmethod
    def full(cls, n: int) -> "Subspace":
        return cls(n, BitMatrix.identity(n))

    @property
    def dim(self) -> int:
        return len(self._rows)

    def basis_vectors(self) -> list[BitVector]:
        return [BitVector(self.ambient_dim, r) for r in self._rows]

    def basis_ints(self) -> list[int]:
        return list(self._rows)

    def _val(self, v) -> int:
        if isinstance(v, BitVector):
            if v.length != self.ambient_dim:
                raise ValueError("length mismatch")
            return v.value
        return int(v)

    def reduce_int(self, v: int) -> int:
        for r, p in zip(self._rows, self.pivots):
            if (v >> p) & 1:
                v ^= r
        return v

    def reduce(self, v: BitVector) -> BitVector:
        """Canonical representative of v modulo this subspace (pivot bits cleared)."""
        return BitVector(self.ambient_dim, self.reduce_int(self._val(v)))

    def __contains__(self, v) -> bool:
        return self.reduce_int(self._val(v)) == 0

    def coordinates(self, v) -> list[int]:
        """Coefficients of v in the rref basis; raises if v is not in the subspace."""
        x = self._val(v)
        if self.reduce_int(x):
            raise ValueError("vector not in subspace")
        return [(x >> p) & 1 for p in self.pivots]

    def combine(self, coeffs: Sequence[int]) -> BitVector:
        v = 0
        for c, r in zip(coeffs, self._rows):
            if c & 1:
                v ^= r
        return BitVector(self.ambient_dim, v)

    def elements(self) -> np.ndarray:
        """All 2**dim elements as packed words; row i combines basis rows set in i."""
        if self.dim == 0:
            return np.zeros((1, _nwords(self.ambient_dim)), dtype=np.uint64)
        return _kernels.span(self.basis.words)

    def element_ints(self) -> list[int]:
        return words_to_ints(self.elements())

    def __add__(self, other: "Subspace") -> "Subspace":
        self._same(other)
        return Subspace.span(self._rows + other._rows, self.ambient_dim)

    def intersect(self, other: "Subspace") -> "Subspace":
        self._same(other)
        return perp(perp(self) + perp(other))

    __and__ = intersect

    def is_subspace_of(self, other: "Subspace") -> bool:
        self._same(other)
        return all(r in other for r in self._rows)

    def complement_in(self, bigger: "Subspace", rng: np.random.Generator | None = None) -> "Subspace":
        """A complement of ``self`` inside ``bigger``.

        Without ``rng`` this is canonical: basis vectors of ``bigger`` reduced
        modulo ``self``.  With ``rng`` each complement vector is shifted by a
        random element of ``self``.
        """
        self._same(bigger)
        if not self.is_subspace_of(bigger):
            raise ValueError("not a subspace of the given space")
        res = Subspace.span([self.reduce_int(r) for r in bigger._rows], self.ambient_dim)
        if rng is None:
            return res
        shifted = [r ^ self.random_int(rng) for r in res._rows]
        return Subspace.span(shifted, self.ambient_dim)

    def random_int(self, rng: np.random.Generator) -> int:
        v = 0
        for r in self._rows:
            if rng.integers(2):
                v ^= r
        return v

    def random_element(self, rng: np.random.Generator) -> BitVector:
        return BitVector(self.ambient_dim, self.random_int(rng))

    def _same(self, other: "Subspace"):
        if other.ambient_dim != self.ambient_dim:
            raise ValueError("ambient dimension mismatch")

    def __eq__(self, other):
        if not isinstance(other, Subspace):
            return NotImplemented
        return self.ambient_dim == other.ambient_dim and self._rows == other._rows

    def __hash__(self):
        return hash((self.ambient_dim, tuple(self._rows)))

    def __repr__(self):
        return f"Subspace(dim={self.dim}, n={self.ambient_dim})"


def perp(s: Subspace) -> Subspace:
    """Orthogonal complement for the standard dot product."""
    return kernel(s.basis)


def weight_distribution(s: Subspace) -> np.ndarray:
    """Number of elements of each weight 0..n, by full enumeration."""
    if s.dim == 0:
        out = np.zeros(s.ambient_dim + 1, dtype=np.int64)
        out[0] = 1
        return out
    return _kernels.weight_histogram(s.basis.words, s.ambient_dim)


def independent(vectors: Sequence[BitVector]) -> bool:
    if not vectors:
        return True
    return rank(BitMatrix.from_rows(list(vectors))) == len(vectors)
