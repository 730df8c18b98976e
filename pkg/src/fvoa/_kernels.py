"""Hot inner loops over packed F2 words, with a numba path and a numpy path.

Bit ``c`` of a vector lives in word ``c // 64`` at bit position ``c % 64``.
Every kernel exists twice: a loop version compiled with ``numba.njit`` and a
vectorised numpy version.  Both return identical arrays, so callers never see
which one ran.  Set ``FVOA_DISABLE_NUMBA=1`` to force the numpy path (it is
also used automatically when numba is not importable).
"""

from __future__ import annotations

import os
from types import SimpleNamespace

import numpy as np

_U1 = np.uint64(1)
_M1 = np.uint64(0x5555555555555555)
_M2 = np.uint64(0x3333333333333333)
_M4 = np.uint64(0x0F0F0F0F0F0F0F0F)
_H01 = np.uint64(0x0101010101010101)


# ---------------------------------------------------------------------------
# loop versions (compiled by numba when available)


def _popcount64(x):
    x = x - ((x >> _U1) & _M1)
    x = (x & _M2) + ((x >> np.uint64(2)) & _M2)
    x = (x + (x >> np.uint64(4))) & _M4
    return (x * _H01) >> np.uint64(56)


def _rref_loop(m, ncols):
    a = m.copy()
    rows = a.shape[0]
    pivots = np.empty(min(rows, ncols), dtype=np.int64)
    r = 0
    for c in range(ncols):
        if r == rows:
            break
        wi = c >> 6
        bit = _U1 << np.uint64(c & 63)
        p = -1
        for i in range(r, rows):
            if a[i, wi] & bit:
                p = i
                break
        if p < 0:
            continue
        if p != r:
            for k in range(a.shape[1]):
                t = a[p, k]
                a[p, k] = a[r, k]
                a[r, k] = t
        for i in range(rows):
            if i != r and (a[i, wi] & bit):
                for k in range(a.shape[1]):
                    a[i, k] ^= a[r, k]
        pivots[r] = c
        r += 1
    return a[:r].copy(), pivots[:r].copy()


def _span_loop(basis):
    k, w = basis.shape
    out = np.zeros((1 << k, w), dtype=np.uint64)
    for i in range(1, 1 << k):
        low = i & (-i)
        j = 0
        while (low >> j) != 1:
            j += 1
        prev = i ^ low
        for t in range(w):
            out[i, t] = out[prev, t] ^ basis[j, t]
    return out


def _weight_histogram_loop(basis, ncols):
    k, w = basis.shape
    counts = np.zeros(ncols + 1, dtype=np.int64)
    cur = np.zeros(w, dtype=np.uint64)
    counts[0] = 1
    # Gray code walk: one row toggled per step
    for i in range(1, 1 << k):
        j = 0
        while ((i >> j) & 1) == 0:
            j += 1
        wt = 0
        for t in range(w):
            cur[t] ^= basis[j, t]
            wt += np.int64(_popcount64(cur[t]))
        counts[wt] += 1
    return counts


def _popcount_rows_loop(words):
    n, w = words.shape
    out = np.zeros(n, dtype=np.int64)
    for i in range(n):
        s = 0
        for t in range(w):
            s += np.int64(_popcount64(words[i, t]))
        out[i] = s
    return out


def _bounded_vectors_loop(values, dim, sumsq_max, modulus, residue):
    nv = values.shape[0]
    idx = np.zeros(dim, dtype=np.int64)
    cap = 1024
    out = np.empty((cap, dim), dtype=np.int64)
    n = 0
    while True:
        ss = 0
        s = 0
        for t in range(dim):
            v = values[idx[t]]
            ss += v * v
            s += v
        if ss <= sumsq_max and (s - residue) % modulus == 0:
            if n == cap:
                bigger = np.empty((2 * cap, dim), dtype=np.int64)
                bigger[:cap] = out
                out = bigger
                cap *= 2
            for t in range(dim):
                out[n, t] = values[idx[t]]
            n += 1
        # odometer, last coordinate fastest
        t = dim - 1
        while t >= 0:
            idx[t] += 1
            if idx[t] < nv:
                break
            idx[t] = 0
            t -= 1
        if t < 0:
            break
    return out[:n].copy()


# ---------------------------------------------------------------------------
# numpy versions


def _rref_np(m, ncols):
    a = np.array(m, dtype=np.uint64, copy=True)
    rows = a.shape[0]
    pivots = []
    r = 0
    for c in range(ncols):
        if r == rows:
            break
        wi, bit = c >> 6, np.uint64(1) << np.uint64(c & 63)
        hits = np.nonzero(a[r:, wi] & bit)[0]
        if hits.size == 0:
            continue
        p = r + int(hits[0])
        if p != r:
            a[[p, r]] = a[[r, p]]
        mask = (a[:, wi] & bit) != 0
        mask[r] = False
        a[mask] ^= a[r]
        pivots.append(c)
        r += 1
    return a[:r].copy(), np.array(pivots, dtype=np.int64)


def _span_np(basis):
    k, w = basis.shape
    out = np.zeros((1, w), dtype=np.uint64)
    for j in range(k):
        out = np.concatenate([out, out ^ basis[j]], axis=0)
    return out


def _weight_histogram_np(basis, ncols, chunk_bits=16):
    k = basis.shape[0]
    low = min(k, chunk_bits)
    base = _span_np(basis[:low])
    counts = np.zeros(ncols + 1, dtype=np.int64)
    for h in _span_np(basis[low:]):
        wt = np.bitwise_count(base ^ h).sum(axis=1, dtype=np.int64)
        counts += np.bincount(wt, minlength=ncols + 1)
    return counts


def _popcount_rows_np(words):
    return np.bitwise_count(words).sum(axis=1, dtype=np.int64)


def _bounded_vectors_np(values, dim, sumsq_max, modulus, residue):
    values = np.asarray(values, dtype=np.int64)
    grid = np.stack(np.meshgrid(*([values] * dim), indexing="ij"), axis=-1).reshape(-1, dim)
    keep = ((grid * grid).sum(axis=1) <= sumsq_max) & ((grid.sum(axis=1) - residue) % modulus == 0)
    return grid[keep]


numpy_kernels = SimpleNamespace(
    name="numpy",
    rref=_rref_np,
    span=_span_np,
    weight_histogram=_weight_histogram_np,
    popcount_rows=_popcount_rows_np,
    bounded_vectors=_bounded_vectors_np,
)


def _build_numba():
    try:
        import numba
    except ImportError:  # pragma: no cover - depends on environment
        return None
    jit = numba.njit(cache=True, nogil=True)
    global _popcount64
    _popcount64 = jit(_popcount64)
    return SimpleNamespace(
        name="numba",
        rref=jit(_rref_loop),
        span=jit(_span_loop),
        weight_histogram=jit(_weight_histogram_loop),
        popcount_rows=jit(_popcount_rows_loop),
        bounded_vectors=jit(_bounded_vectors_loop),
    )


def _disabled():
    return os.environ.get("FVOA_DISABLE_NUMBA", "").strip().lower() not in ("", "0", "false", "no")


numba_kernels = None if _disabled() else _build_numba()
active = numba_kernels if numba_kernels is not None else numpy_kernels
BACKEND = active.name


def _u64(a):
    a = np.ascontiguousarray(a, dtype=np.uint64)
    if a.ndim == 1:
        a = a.reshape(1, -1)
    return a


def rref(words, ncols):
    """Reduced row echelon form; returns (nonzero rows, pivot columns)."""
    return active.rref(_u64(words), int(ncols))


def span(basis):
    """All 2**k combinations; row ``i`` is the XOR of basis rows set in ``i``."""
    basis = _u64(basis)
    if basis.shape[0] > 30:
        raise ValueError("refusing to enumerate a span of dimension > 30")
    return active.span(basis)


def weight_histogram(basis, ncols):
    basis = _u64(basis)
    if basis.shape[0] > 40:
        raise ValueError("refusing to enumerate a span of dimension > 40")
    return active.weight_histogram(basis, int(ncols))


def popcount_rows(words):
    return active.popcount_rows(_u64(words))


def bounded_vectors(values, dim, sumsq_max, modulus=1, residue=0):
    """Integer vectors with entries in ``values``, sum of squares at most
    ``sumsq_max`` and coordinate sum congruent to ``residue`` mod ``modulus``.
    Rows come out in lexicographic order of the index tuple."""
    values = np.ascontiguousarray(values, dtype=np.int64)
    return active.bounded_vectors(values, int(dim), int(sumsq_max), int(modulus), int(residue))


def warmup():
    """Trigger compilation (or cache load) of every kernel."""
    b = np.array([[3], [5]], dtype=np.uint64)
    rref(b, 3)
    span(b)
    weight_histogram(b, 3)
    popcount_rows(b)
    bounded_vectors(np.array([0, 1]), 2, 1)
