"""Bit-packed row reduction over GF(2).

Rows are numpy uint64 vectors, 64 columns per word: column c lives in word
c >> 6 at bit c & 63.  Extra words past the declared column count ride along
through every row operation, which gives augmented-matrix transform tracking
for free.

The reduction kernel exists twice: a numba @njit build and a pure-numpy
fallback.  ``ZSEP_BACKEND=numba|numpy`` forces one; the default is numba
when it imports, numpy otherwise.
"""

from __future__ import annotations

import os

import numpy as np

_ONE = np.uint64(1)


def _pick_backend():
    choice = os.environ.get("ZSEP_BACKEND", "auto").strip().lower() or "auto"
    if choice not in ("auto", "numba", "numpy"):
        raise ValueError(f"ZSEP_BACKEND must be 'numba' or 'numpy', got {choice!r}")
    if choice == "numpy":
        return "numpy"
    try:
        import numba  # noqa: F401
    except ImportError:
        if choice == "numba":
            raise RuntimeError("ZSEP_BACKEND=numba but numba is not importable") from None
        return "numpy"
    return "numba"


BACKEND = _pick_backend()


def words_for(ncols):
    return (ncols + 63) >> 6


def pack_support(rows, ncols, aug_identity=False):
    """Pack rows given as iterables of set column indices.

    With ``aug_identity`` an identity block is appended in fresh words, so
    after reduction those words hold the combination of input rows that
    produced each output row.
    """
    rows = [list(r) for r in rows]
    n = len(rows)
    mw = words_for(ncols)
    aw = words_for(n) if aug_identity else 0
    M = np.zeros((n, mw + aw), dtype=np.uint64)
    for i, cols in enumerate(rows):
        for c in cols:
            if not 0 <= c < ncols:
                raise ValueError(f"column {c} out of range 0..{ncols - 1}")
            M[i, c >> 6] |= _ONE << np.uint64(c & 63)
        if aug_identity:
            M[i, mw + (i >> 6)] |= _ONE << np.uint64(i & 63)
    return M


def unpack_row(row, ncols, word_offset=0):
    """Sorted set-column indices of ``ncols`` columns starting at a word."""
    out = []
    for w in range(words_for(ncols)):
        word = int(row[word_offset + w])
        while word:
            low = word & -word
            out.append((w << 6) + low.bit_length() - 1)
            word ^= low
    return out


def row_is_zero(row, ncols):
    mw = words_for(ncols)
    return not any(int(row[w]) for w in range(mw))


def _rref_numpy(M, ncols):
    n = M.shape[0]
    pivots = []
    r = 0
    for c in range(ncols):
        if r == n:
            break
        w = c >> 6
        mask = _ONE << np.uint64(c & 63)
        below = ((M[r:, w] & mask) != 0).nonzero()[0]
        if below.size == 0:
            continue
        piv = r + int(below[0])
        if piv != r:
            M[[r, piv]] = M[[piv, r]]
        hits = ((M[:, w] & mask) != 0).nonzero()[0]
        hits = hits[hits != r]
        if hits.size:
            M[hits] ^= M[r]
        pivots.append(c)
        r += 1
    return np.array(pivots, dtype=np.int64)


_rref_numba = None

if BACKEND == "numba":
    import numba

    @numba.njit(cache=True)
    def _rref_numba_impl(M, ncols):  # pragma: no cover - measured via parity tests
        n = M.shape[0]
        width = M.shape[1]
        cap = n if n < ncols else ncols
        pivots = np.empty(cap, dtype=np.int64)
        one = np.uint64(1)
        r = 0
        for c in range(ncols):
            if r == n:
                break
            w = c >> 6
            mask = one << np.uint64(c & 63)
            piv = -1
            for i in range(r, n):
                if M[i, w] & mask:
                    piv = i
                    break
            if piv < 0:
                continue
            if piv != r:
                for j in range(width):
                    tmp = M[r, j]
                    M[r, j] = M[piv, j]
                    M[piv, j] = tmp
            for i in range(n):
                if i != r and (M[i, w] & mask):
                    for j in range(width):
                        M[i, j] ^= M[r, j]
            pivots[r] = c
            r += 1
        return pivots[:r]

    _rref_numba = _rref_numba_impl


def rref(M, ncols, backend=None):
    """In-place reduced row echelon form on the first ncols columns.

    Deterministic: leftmost pivot column, topmost pivot row.  Words beyond
    the declared columns are carried through each row operation.  Returns
    the pivot column indices; the rank is their count and rows past it have
    zero main part.
    """
    be = backend or BACKEND
    if M.shape[0] == 0 or ncols == 0:
        return np.array([], dtype=np.int64)
    if be == "numba":
        if _rref_numba is None:
            raise RuntimeError("numba backend not loaded (ZSEP_BACKEND)")
        return np.asarray(_rref_numba(M, ncols))
    if be != "numpy":
        raise ValueError(f"unknown backend {be!r}")
    return _rref_numpy(M, ncols)


def left_kernel_combos(rows, ncols, backend=None):
    """Combinations of input rows that sum to zero.

    Returns a list of index lists: each is a set of input-row positions
    whose GF(2) sum vanishes, forming a basis of the left kernel.
    """
    n = len(rows)
    M = pack_support(rows, ncols, aug_identity=True)
    pivots = rref(M, ncols, backend=backend)
    rank = len(pivots)
    mw = words_for(ncols)
    out = []
    for i in range(rank, n):
        out.append(unpack_row(M[i], n, word_offset=mw))
    return out
