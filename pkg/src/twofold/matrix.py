"""Nonnegative matrices, sign patterns and diagonal exponent vectors.

Everything downstream works on one of three value types:

* :class:`NonnegMatrix` -- dense ``n x n`` array of nonnegative floats,
* :class:`SignPattern` -- the zero/nonzero skeleton of such a matrix,
* :class:`DiagonalParams` -- the diagonal of a real diagonal matrix ``D``,
  used as the exponent in ``e^D A``.

All three are immutable after construction.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

import numpy as np

__all__ = [
    "NonnegMatrix",
    "SignPattern",
    "DiagonalParams",
    "PerronPair",
    "sign_pattern",
    "scale_exp",
    "convex_combination",
    "iter_bits",
]


def _bits_slow(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


_SMALL = 1 << 10
_BIT_TABLE = [tuple(_bits_slow(m)) for m in range(_SMALL)]


def iter_bits(mask: int):
    """Indices of the set bits of ``mask`` in increasing order."""
    if mask < _SMALL:
        return _BIT_TABLE[mask]
    return _bits_slow(mask)


def _frozen(array: np.ndarray) -> np.ndarray:
    array.setflags(write=False)
    return array


class NonnegMatrix:
    """Dense square matrix with nonnegative real entries.

    Parameters
    ----------
    entries : array_like, shape (n, n)
        Finite, nonnegative values. Negative entries raise ``ValueError``;
        nothing is clamped.
    """

    __slots__ = ("_entries",)

    def __init__(self, entries):
        a = np.array(entries, dtype=np.float64, copy=True)
        if a.ndim != 2 or a.shape[0] != a.shape[1]:
            raise ValueError(f"matrix must be square, got shape {a.shape}")
        if a.shape[0] < 1:
            raise ValueError("matrix dimension must be at least 1")
        if not np.all(np.isfinite(a)):
            raise ValueError("matrix entries must be finite")
        if np.any(a < 0):
            i, j = np.argwhere(a < 0)[0]
            raise ValueError(f"negative entry {a[i, j]!r} at ({i}, {j})")
        self._entries = _frozen(a)

    @property
    def n(self) -> int:
        return self._entries.shape[0]

    @property
    def entries(self) -> np.ndarray:
        """Read-only view of the underlying float64 array."""
        return self._entries

    def __array__(self, dtype=None, copy=None):
        if dtype is None:
            return self._entries
        return self._entries.astype(dtype)

    def __eq__(self, other):
        if not isinstance(other, NonnegMatrix):
            return NotImplemented
        return np.array_equal(self._entries, other._entries)

    def __hash__(self):
        return hash((self.n, self._entries.tobytes()))

    def __repr__(self):
        return f"NonnegMatrix({self._entries.tolist()!r})"

    def to_dict(self) -> dict:
        return {"n": self.n, "entries": self._entries.tolist()}


class SignPattern:
    """Zero/nonzero structure of an ``n x n`` matrix.

    Stored as one integer bitmask per row: bit ``j`` of ``rows[i]`` is set
    when entry ``(i, j)`` is nonzero. The boolean array view is available
    as :attr:`mask`.
    """

    def __init__(self, n: int, rows: Sequence[int]):
        if n < 1:
            raise ValueError("pattern dimension must be at least 1")
        rows = tuple(int(r) for r in rows)
        if len(rows) != n:
            raise ValueError(f"expected {n} rows, got {len(rows)}")
        full = (1 << n) - 1
        if any(r < 0 or r & ~full for r in rows):
            raise ValueError("row bitmask out of range")
        self.n = n
        self.rows = rows
        self._cols = None
        self._mask = None

    @classmethod
    def from_mask(cls, mask) -> "SignPattern":
        m = np.asarray(mask, dtype=bool)
        if m.ndim != 2 or m.shape[0] != m.shape[1]:
            raise ValueError(f"mask must be square, got shape {m.shape}")
        n = m.shape[0]
        rows = [sum(1 << j for j in range(n) if m[i, j]) for i in range(n)]
        return cls(n, rows)

    @classmethod
    def from_cells(cls, n: int, cells: Iterable[tuple[int, int]]) -> "SignPattern":
        rows = [0] * n
        for i, j in cells:
            rows[i] |= 1 << j
        return cls(n, rows)

    @classmethod
    def from_code(cls, n: int, code: int) -> "SignPattern":
        """Decode the integer whose bit ``i*n + j`` is cell ``(i, j)``."""
        full = (1 << n) - 1
        return cls(n, [(code >> (i * n)) & full for i in range(n)])

    @property
    def code(self) -> int:
        return sum(r << (i * self.n) for i, r in enumerate(self.rows))

    @property
    def cols(self) -> tuple[int, ...]:
        """Column bitmasks: bit ``i`` of ``cols[j]`` is cell ``(i, j)``."""
        if self._cols is None:
            cols = [0] * self.n
            for i, r in enumerate(self.rows):
                for j in iter_bits(r):
                    cols[j] |= 1 << i
            self._cols = tuple(cols)
        return self._cols

    @property
    def mask(self) -> np.ndarray:
        if self._mask is None:
            n = self.n
            m = np.zeros((n, n), dtype=bool)
            for i, r in enumerate(self.rows):
                for j in iter_bits(r):
                    m[i, j] = True
            self._mask = _frozen(m)
        return self._mask

    @property
    def nnz(self) -> int:
        return sum(r.bit_count() for r in self.rows)

    def cells(self) -> list[tuple[int, int]]:
        return [(i, j) for i, r in enumerate(self.rows) for j in iter_bits(r)]

    def __getitem__(self, ij):
        i, j = ij
        return bool(self.rows[i] >> j & 1)

    def transpose(self) -> "SignPattern":
        return SignPattern(self.n, self.cols)

    @property
    def T(self) -> "SignPattern":
        return self.transpose()

    def with_cell(self, i: int, j: int, value: bool = True) -> "SignPattern":
        rows = list(self.rows)
        if value:
            rows[i] |= 1 << j
        else:
            rows[i] &= ~(1 << j)
        return SignPattern(self.n, rows)

    def is_symmetric(self) -> bool:
        return self.rows == self.cols

    def to_matrix(self) -> NonnegMatrix:
        """Unit realization: 1 on every nonzero cell."""
        return NonnegMatrix(self.mask.astype(np.float64))

    def __eq__(self, other):
        if not isinstance(other, SignPattern):
            return NotImplemented
        return self.n == other.n and self.rows == other.rows

    def __hash__(self):
        return hash((self.n, self.rows))

    def __repr__(self):
        body = ", ".join(format(r, f"0{self.n}b")[::-1] for r in self.rows)
        return f"SignPattern(n={self.n}, rows=[{body}])"


class DiagonalParams:
    """Diagonal of a real diagonal matrix, stored as a length-n vector."""

    __slots__ = ("_values",)

    def __init__(self, values):
        v = np.array(values, dtype=np.float64, copy=True).reshape(-1)
        if v.size < 1:
            raise ValueError("diagonal must have at least one entry")
        if not np.all(np.isfinite(v)):
            raise ValueError("diagonal entries must be finite")
        self._values = _frozen(v)

    @classmethod
    def zeros(cls, n: int) -> "DiagonalParams":
        return cls(np.zeros(n))

    @property
    def values(self) -> np.ndarray:
        return self._values

    def __len__(self):
        return self._values.size

    def __array__(self, dtype=None, copy=None):
        if dtype is None:
            return self._values
        return self._values.astype(dtype)

    def __add__(self, other):
        other = other.values if isinstance(other, DiagonalParams) else other
        return DiagonalParams(self._values + other)

    def __sub__(self, other):
        other = other.values if isinstance(other, DiagonalParams) else other
        return DiagonalParams(self._values - other)

    def __eq__(self, other):
        if not isinstance(other, DiagonalParams):
            return NotImplemented
        return np.array_equal(self._values, other._values)

    def __hash__(self):
        return hash(self._values.tobytes())

    def __repr__(self):
        return f"DiagonalParams({self._values.tolist()!r})"

    def is_scalar(self, atol: float = 0.0) -> bool:
        """True when every entry is equal, i.e. the matrix is ``c I``."""
        v = self._values
        return bool(v.max() - v.min() <= atol)


@dataclass(frozen=True)
class PerronPair:
    """Spectral radius together with a positive eigenvector (unit sum)."""

    radius: float
    vector: np.ndarray
    iterations: int = 0


def sign_pattern(M) -> SignPattern:
    """Pattern of strictly positive entries (no epsilon)."""
    a = M.entries if isinstance(M, NonnegMatrix) else np.asarray(M)
    return SignPattern.from_mask(a > 0)


def _as_params(D) -> DiagonalParams:
    return D if isinstance(D, DiagonalParams) else DiagonalParams(D)


def scale_exp(M: NonnegMatrix, D) -> NonnegMatrix:
    """Return ``e^D M``, i.e. row ``i`` multiplied by ``exp(D_i)``."""
    D = _as_params(D)
    if len(D) != M.n:
        raise ValueError(f"diagonal length {len(D)} does not match n={M.n}")
    return NonnegMatrix(np.exp(D.values)[:, None] * M.entries)


def convex_combination(C, D, t: float) -> DiagonalParams:
    """Elementwise ``(1 - t) C + t D`` for ``t`` in ``[0, 1]``."""
    C, D = _as_params(C), _as_params(D)
    if len(C) != len(D):
        raise ValueError("diagonals have different lengths")
    if not 0.0 <= t <= 1.0:
        raise ValueError(f"t must lie in [0, 1], got {t!r}")
    return DiagonalParams((1.0 - t) * C.values + t * D.values)
