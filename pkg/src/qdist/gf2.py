"""Bit-packed dense linear algebra over GF(2).

Rows are stored as runs of 64-bit words (little-endian bit order within a
row), so row elimination is a word-parallel XOR.  This is the substrate for
syndrome math, OSD solves, code dimension and residual classification, where
matrices with a few thousand columns get reduced over and over.

All public operations leave their arguments untouched.
"""

from __future__ import annotations

import numpy as np

try:
    from numba import njit

    _HAVE_NUMBA = True
except ImportError:  # pragma: no cover - numba is an optional speedup
    _HAVE_NUMBA = False

_ONE = np.uint64(1)


class Infeasible(Exception):
    """Raised when a linear system has no solution over GF(2)."""


def _pack_bits(a: np.ndarray) -> np.ndarray:
    """Pack a (rows, cols) 0/1 array into (rows, words) uint64."""
    a = np.ascontiguousarray(a, dtype=np.uint8) & 1
    rows, cols = a.shape
    words = (cols + 63) // 64
    out = np.zeros((rows, words * 8), dtype=np.uint8)
    if cols:
        b = np.packbits(a, axis=1, bitorder="little")
        out[:, : b.shape[1]] = b
    return np.ascontiguousarray(out).view(np.uint64)


def _unpack_bits(data: np.ndarray, cols: int) -> np.ndarray:
    """Inverse of _pack_bits; returns a (rows, cols) uint8 array."""
    rows = data.shape[0]
    if cols == 0:
        return np.zeros((rows, 0), dtype=np.uint8)
    as_bytes = np.ascontiguousarray(data).view(np.uint8)
    return np.unpackbits(as_bytes, axis=1, bitorder="little")[:, :cols].copy()


class BitVector:
    """Fixed-length bit vector packed into uint64 words."""

    __slots__ = ("length", "words")

    def __init__(self, length: int, words: np.ndarray):
        self.length = length
        self.words = words

    @classmethod
    def from_array(cls, a) -> "BitVector":
        a = np.atleast_1d(np.asarray(a, dtype=np.uint8))
        return cls(a.shape[0], _pack_bits(a[None, :])[0])

    @classmethod
    def zeros(cls, length: int) -> "BitVector":
        return cls(length, np.zeros((length + 63) // 64, dtype=np.uint64))

    def to_array(self) -> np.ndarray:
        return _unpack_bits(self.words[None, :], self.length)[0]

    def __getitem__(self, i: int) -> int:
        if not 0 <= i < self.length:
            raise IndexError(f"bit {i} out of range for length {self.length}")
        return int((self.words[i >> 6] >> np.uint64(i & 63)) & _ONE)

    def __xor__(self, other: "BitVector") -> "BitVector":
        if self.length != other.length:
            raise ValueError("length mismatch in XOR")
        return BitVector(self.length, self.words ^ other.words)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, BitVector)
            and self.length == other.length
            and bool(np.array_equal(self.words, other.words))
        )

    def is_zero(self) -> bool:
        return not self.words.any()

    def weight(self) -> int:
        return int(np.bitwise_count(self.words).sum())

    def __repr__(self) -> str:
        return f"BitVector({''.join(map(str, self.to_array()))})"


class BitMatrix:
    """Dense GF(2) matrix with word-packed rows."""

    __slots__ = ("rows", "cols", "data")

    def __init__(self, rows: int, cols: int, data: np.ndarray):
        self.rows = rows
        self.cols = cols
        self.data = data  # (rows, ceil(cols/64)) uint64

    @classmethod
    def from_array(cls, a) -> "BitMatrix":
        a = np.asarray(a, dtype=np.uint8)
        if a.ndim != 2:
            raise ValueError("expected a 2-D array")
        return cls(a.shape[0], a.shape[1], _pack_bits(a))

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "BitMatrix":
        return cls(rows, cols, np.zeros((rows, (cols + 63) // 64), dtype=np.uint64))

    @classmethod
    def identity(cls, n: int) -> "BitMatrix":
        return cls.from_array(np.eye(n, dtype=np.uint8))

    def to_array(self) -> np.ndarray:
        return _unpack_bits(self.data, self.cols)

    def copy(self) -> "BitMatrix":
        return BitMatrix(self.rows, self.cols, self.data.copy())

    def get(self, r: int, c: int) -> int:
        if not (0 <= r < self.rows and 0 <= c < self.cols):
            raise IndexError(f"({r}, {c}) out of range for {self.rows}x{self.cols}")
        return int((self.data[r, c >> 6] >> np.uint64(c & 63)) & _ONE)

    def row(self, r: int) -> BitVector:
        return BitVector(self.cols, self.data[r].copy())

    def mul_vector(self, v: BitVector) -> BitVector:
        """Matrix-vector product M·v over GF(2)."""
        if v.length != self.cols:
            raise ValueError("vector length does not match column count")
        bits = np.bitwise_count(self.data & v.words[None, :]).sum(axis=1) & 1
        return BitVector.from_array(bits.astype(np.uint8))

    def __repr__(self) -> str:
        return f"BitMatrix({self.rows}x{self.cols})"


def _column_bits(data: np.ndarray, c: int) -> np.ndarray:
    return (data[:, c >> 6] >> np.uint64(c & 63)) & _ONE


def _eliminate(data, cols, col_order=None, aug=None):
    """In-place Gauss-Jordan sweep; returns [(pivot_row, pivot_col), ...].

    Pivot search walks columns in col_order (default: ascending) and always
    takes the topmost available row, so the reduction is deterministic.
    """
    m = data.shape[0]
    pivots = []
    r = 0
    order = range(cols) if col_order is None else col_order
    for c in order:
        if r == m:
            break
        colbits = _column_bits(data, c)
        cand = np.nonzero(colbits[r:])[0]
        if cand.size == 0:
            continue
        p = r + int(cand[0])
        if p != r:
            data[[r, p]] = data[[p, r]]
            if aug is not None:
                aug[[r, p]] = aug[[p, r]]
        mask = _column_bits(data, c).astype(bool)
        mask[r] = False
        if mask.any():
            data[mask] ^= data[r]
            if aug is not None:
                aug[mask] ^= aug[r]
        pivots.append((r, c))
        r += 1
    return pivots


if _HAVE_NUMBA:

    @njit(cache=True)
    def _eliminate_jit(data, aug, col_order):  # pragma: no cover - exercised via solve_selected
        """Compiled Gauss-Jordan sweep for the hot per-trial OSD solve.

        Same pivot rule as _eliminate (topmost available row, columns in
        the given order); returns parallel pivot row/column arrays.
        """
        m, width = data.shape
        pivot_rows = np.empty(m, np.int64)
        pivot_cols = np.empty(m, np.int64)
        npiv = 0
        r = 0
        for ci in range(col_order.shape[0]):
            if r == m:
                break
            c = col_order[ci]
            w = c >> 6
            b = np.uint64(c & 63)
            p = -1
            for i in range(r, m):
                if (data[i, w] >> b) & np.uint64(1):
                    p = i
                    break
            if p < 0:
                continue
            if p != r:
                for j in range(width):
                    tmp = data[r, j]
                    data[r, j] = data[p, j]
                    data[p, j] = tmp
                tmp8 = aug[r]
                aug[r] = aug[p]
                aug[p] = tmp8
            for i in range(m):
                if i != r and ((data[i, w] >> b) & np.uint64(1)):
                    for j in range(width):
                        data[i, j] ^= data[r, j]
                    aug[i] ^= aug[r]
            pivot_rows[npiv] = r
            pivot_cols[npiv] = c
            npiv += 1
            r += 1
        return pivot_rows[:npiv], pivot_cols[:npiv]


def row_reduce(M: BitMatrix):
    """Reduced row-echelon form of M plus its pivot columns.

    Returns (reduced, pivot_cols) with pivot columns in ascending row order;
    the row space is preserved and M itself is not modified.
    """
    data = M.data.copy()
    pivots = _eliminate(data, M.cols)
    return BitMatrix(M.rows, M.cols, data), [c for _, c in pivots]


def rank(M: BitMatrix) -> int:
    """GF(2) rank of M."""
    data = M.data.copy()
    return len(_eliminate(data, M.cols))


def in_row_span(M: BitMatrix, v: BitVector) -> bool:
    """True iff v is a GF(2) combination of the rows of M."""
    if v.length != M.cols:
        raise ValueError("vector length does not match column count")
    return RowSpanReducer(M).contains(v)


def solve_selected(M: BitMatrix, s: BitVector, col_order) -> BitVector:
    """Solve M·x = s with x supported on a greedily chosen column set.

    Columns are tried in col_order (a permutation of range(M.cols)); the
    first maximal independent set wins and all other bits of x stay zero.
    Raises Infeasible when s is outside the column space.
    """
    if s.length != M.rows:
        raise ValueError("syndrome length does not match row count")
    col_order = np.asarray(list(col_order), dtype=np.int64)
    if not np.array_equal(np.sort(col_order), np.arange(M.cols)):
        raise ValueError("col_order must be a permutation of the columns")
    data = M.data.copy()
    aug = s.to_array()
    if _HAVE_NUMBA:
        pivot_rows, pivot_cols = _eliminate_jit(data, aug, col_order)
        pivots = list(zip(pivot_rows.tolist(), pivot_cols.tolist()))
    else:
        pivots = _eliminate(data, M.cols, col_order=col_order, aug=aug)
    nrank = len(pivots)
    if aug[nrank:].any():
        raise Infeasible("syndrome outside the column space")
    x = np.zeros(M.cols, dtype=np.uint8)
    for r, c in pivots:
        x[c] = aug[r]
    return BitVector.from_array(x)


def kernel_basis(M: BitMatrix) -> list[BitVector]:
    """Basis of {v : M·v = 0}; contains cols - rank(M) vectors."""
    reduced, pivot_cols = row_reduce(M)
    arr = reduced.to_array()
    pivot_set = set(pivot_cols)
    free_cols = [c for c in range(M.cols) if c not in pivot_set]
    basis = []
    for fc in free_cols:
        v = np.zeros(M.cols, dtype=np.uint8)
        v[fc] = 1
        for r, pc in enumerate(pivot_cols):
            v[pc] = arr[r, fc]
        basis.append(BitVector.from_array(v))
    return basis


class RowSpanReducer:
    """Precomputed RREF of a matrix for repeated row-span membership tests."""

    def __init__(self, M: BitMatrix):
        reduced, pivot_cols = row_reduce(M)
        self.cols = M.cols
        self.pivot_cols = pivot_cols
        self.pivot_rows = reduced.data[: len(pivot_cols)].copy()
        self.rank = len(pivot_cols)

    def reduce_words(self, words: np.ndarray) -> np.ndarray:
        """Reduce one packed vector against the pivot rows (copy returned)."""
        w = words.copy()
        for i, c in enumerate(self.pivot_cols):
            if (w[c >> 6] >> np.uint64(c & 63)) & _ONE:
                w ^= self.pivot_rows[i]
        return w

    def contains(self, v: BitVector) -> bool:
        if v.length != self.cols:
            raise ValueError("vector length does not match column count")
        return not self.reduce_words(v.words).any()

    def contains_batch(self, bits: np.ndarray) -> np.ndarray:
        """Vectorized membership test for a (batch, cols) 0/1 array."""
        w = _pack_bits(bits)
        for i, c in enumerate(self.pivot_cols):
            mask = (_column_bits(w, c)).astype(bool)
            if mask.any():
                w[mask] ^= self.pivot_rows[i]
        return ~w.any(axis=1) if w.shape[1] else np.ones(bits.shape[0], dtype=bool)
