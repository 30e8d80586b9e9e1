"""Bit-packed linear algebra over F_2.

Vectors are Python integers used as bitsets (bit j = column j); a matrix is
a tuple of such rows. Elimination pivots on the highest set bit of a row,
which is also the convention used for canonical subspace bases.
"""

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from sumfree_cli.errors import PreconditionError


def reduce_against(vector: int, echelon: dict[int, int]) -> int:
    """Reduce a vector by an echelon basis keyed by pivot bit."""
    while vector:
        top = vector.bit_length() - 1
        row = echelon.get(top)
        if row is None:
            return vector
        vector ^= row
    return vector


def insert_row(vector: int, echelon: dict[int, int]) -> int:
    """Add a vector to an echelon basis; returns its pivot or -1 if dependent."""
    vector = reduce_against(vector, echelon)
    if not vector:
        return -1
    pivot = vector.bit_length() - 1
    echelon[pivot] = vector
    return pivot


def rank_of(vectors: Iterable[int]) -> int:
    echelon: dict[int, int] = {}
    return sum(1 for v in vectors if insert_row(v, echelon) >= 0)


def rref(vectors: Iterable[int]) -> list[int]:
    """Fully reduced row echelon form, rows sorted by pivot descending.

    Every row's leading bit is its highest bit and no other row has that
    bit set.
    """
    echelon: dict[int, int] = {}
    for v in vectors:
        insert_row(v, echelon)
    pivots = sorted(echelon, reverse=True)
    rows = [echelon[p] for p in pivots]
    # back-substitute so pivot columns are cleared everywhere else
    for i in range(len(rows) - 1, -1, -1):
        p = pivots[i]
        for j in range(i):
            if (rows[j] >> p) & 1:
                rows[j] ^= rows[i]
    return rows


def in_span(vector: int, vectors: Iterable[int]) -> bool:
    echelon: dict[int, int] = {}
    for v in vectors:
        insert_row(v, echelon)
    return reduce_against(vector, echelon) == 0


def dot(a: int, b: int) -> int:
    return (a & b).bit_count() & 1


@dataclass(frozen=True)
class BitMatrix:
    """A rows x cols matrix over F_2 stored as packed integer rows."""

    rows: tuple[int, ...]
    cols: int

    def __post_init__(self):
        limit = 1 << self.cols
        for i, row in enumerate(self.rows):
            if not 0 <= row < limit:
                raise PreconditionError(f"row {i} does not fit in {self.cols} columns")

    @classmethod
    def from_rows(cls, rows: Sequence[int], cols: int) -> "BitMatrix":
        return cls(tuple(int(r) for r in rows), cols)

    @property
    def num_rows(self) -> int:
        return len(self.rows)

    def bit(self, i: int, j: int) -> int:
        return (self.rows[i] >> j) & 1

    def row_bits(self, i: int) -> list[int]:
        return [(self.rows[i] >> j) & 1 for j in range(self.cols)]

    def rank(self) -> int:
        return rank_of(self.rows)

    def rref(self) -> "BitMatrix":
        return BitMatrix(tuple(rref(self.rows)), self.cols)

    def kernel(self) -> "BitMatrix":
        """Basis of {x : row . x = 0 for every row}."""
        reduced = rref(self.rows)
        pivot_of = {r.bit_length() - 1: r for r in reduced}
        basis = []
        for free in range(self.cols):
            if free in pivot_of:
                continue
            x = 1 << free
            for p, r in pivot_of.items():
                if (r >> free) & 1:
                    x |= 1 << p
            basis.append(x)
        return BitMatrix(tuple(basis), self.cols)

    def apply(self, vector: int) -> int:
        """Syndrome H x as an integer, bit i from row i."""
        out = 0
        for i, row in enumerate(self.rows):
            if (row & vector).bit_count() & 1:
                out |= 1 << i
        return out

    def contains_in_rowspace(self, vector: int) -> bool:
        return in_span(vector, self.rows)

    def is_orthogonal_to(self, other: "BitMatrix") -> bool:
        """True iff self . other^T = 0."""
        if self.cols != other.cols:
            return False
        return all(dot(a, b) == 0 for a in self.rows for b in other.rows)

    def stack(self, other: "BitMatrix") -> "BitMatrix":
        if self.cols != other.cols:
            raise PreconditionError(
                f"cannot stack {self.cols}-column and {other.cols}-column matrices"
            )
        return BitMatrix(self.rows + other.rows, self.cols)


def pack_bits(bits: np.ndarray) -> int:
    """Integer whose bit j is bits[j]."""
    packed = np.packbits(np.asarray(bits, dtype=np.uint8), bitorder="little")
    return int.from_bytes(packed.tobytes(), "little")


def unpack_bits(vector: int, length: int) -> np.ndarray:
    """Inverse of pack_bits: 0/1 uint8 array of the given length."""
    raw = vector.to_bytes((length + 7) // 8, "little")
    return np.unpackbits(np.frombuffer(raw, dtype=np.uint8), bitorder="little")[:length]


def to_words(vector: int, words: int) -> np.ndarray:
    """Split a vector into little-endian 64-bit words."""
    return np.frombuffer(vector.to_bytes(8 * words, "little"), dtype="<u8").astype(np.uint64)


def from_words(row: np.ndarray) -> int:
    return int.from_bytes(np.asarray(row, dtype="<u8").tobytes(), "little")
