"""Reed-Muller codes RM(r,n) and codeword enumeration.

Codewords are 2^n-bit integers; bit x is the value at the point x of F_2^n.
"""

import logging
from dataclasses import dataclass
from math import comb
from typing import Iterator, Optional

import numpy as np

from sumfree_cli.bitmatrix import BitMatrix, from_words, pack_bits, rref, to_words
from sumfree_cli.errors import CapExceededError, PreconditionError
from sumfree_cli.flats import Flat
from sumfree_cli.vecfun import hamming_weights, point_indices

logger = logging.getLogger(__name__)

DEFAULT_CODEWORD_DIM_CAP = 24

# Rows spanned into a lookup table; the remaining rows are walked in Gray order.
_TABLE_ROWS = 16


def rm_dimension(r: int, n: int) -> int:
    return sum(comb(n, i) for i in range(r + 1))


def monomial_order(r: int, n: int) -> list[int]:
    """Supports of degree <= r monomials, by weight then as integers."""
    weights = hamming_weights(n)
    return sorted((int(u) for u in point_indices(n) if weights[u] <= r), key=lambda u: (weights[u], u))


def monomial_vector(u: int, n: int) -> int:
    """Evaluation vector of prod_{i in u} x_i."""
    idx = point_indices(n)
    return pack_bits((idx & u) == u)


def rm_generator(r: int, n: int) -> BitMatrix:
    if not 0 <= r <= n:
        raise PreconditionError(f"need 0 <= r <= n, got r={r}, n={n}")
    rows = [monomial_vector(u, n) for u in monomial_order(r, n)]
    return BitMatrix(tuple(rows), 1 << n)


def rm_parity_check(r: int, n: int) -> BitMatrix:
    """Generator of the dual RM(n-r-1, n)."""
    if not 0 <= r <= n - 1:
        raise PreconditionError(f"need 0 <= r <= n-1, got r={r}, n={n}")
    return rm_generator(n - r - 1, n)


@dataclass(frozen=True)
class BinaryCode:
    """A linear code of length ``length`` given by G and/or H."""

    length: int
    generator: Optional[BitMatrix] = None
    parity_check: Optional[BitMatrix] = None

    def __post_init__(self):
        if self.generator is None and self.parity_check is None:
            raise PreconditionError("a code needs a generator or a parity check")
        for name, mat in (("generator", self.generator), ("parity check", self.parity_check)):
            if mat is not None and mat.cols != self.length:
                raise PreconditionError(
                    f"{name} has {mat.cols} columns, code length is {self.length}"
                )
        if self.generator is not None and self.parity_check is not None:
            if not self.generator.is_orthogonal_to(self.parity_check):
                raise PreconditionError("generator is not orthogonal to the parity check")
            if self.generator.rank() + self.parity_check.rank() != self.length:
                raise PreconditionError("generator and parity check ranks do not add up")

    @classmethod
    def reed_muller(cls, r: int, n: int) -> "BinaryCode":
        H = rm_parity_check(r, n) if r < n else BitMatrix((), 1 << n)
        return cls(1 << n, rm_generator(r, n), H)

    @property
    def dimension(self) -> int:
        if self.generator is not None:
            return self.generator.rank()
        return self.length - self.parity_check.rank()

    def generator_matrix(self) -> BitMatrix:
        """Generator in RREF form, derived from H when absent."""
        if self.generator is not None:
            return self.generator.rref()
        return self.parity_check.kernel().rref()

    def parity_check_matrix(self) -> BitMatrix:
        if self.parity_check is not None:
            return self.parity_check
        return self.generator.kernel()

    def contains(self, vector: int) -> bool:
        if self.parity_check is not None:
            return self.parity_check.apply(vector) == 0
        return self.generator.contains_in_rowspace(vector)

    def is_subcode_of(self, other: "BinaryCode") -> bool:
        if self.length != other.length:
            return False
        return all(other.contains(v) for v in self.generator_matrix().rows)


def incidence_vector(A: Flat) -> int:
    bits = np.zeros(1 << A.n, dtype=np.uint8)
    bits[A.points()] = 1
    return pack_bits(bits)


def second_weight_codeword(A1: Flat, A2: Flat) -> int:
    """Symmetric difference of two d-flats meeting in a (d-2)-flat."""
    if A1.n != A2.n or A1.dim != A2.dim:
        raise PreconditionError("flats must live in the same space and have equal dimension")
    common = A1.intersection(A2)
    if common is None:
        raise PreconditionError("flats are disjoint")
    if common.dim != A1.dim - 2:
        raise PreconditionError(
            f"flats meet in a {common.dim}-flat, need dimension {A1.dim - 2}"
        )
    return incidence_vector(A1) ^ incidence_vector(A2)


# --- codeword enumeration ------------------------------------------------


@dataclass
class CodewordBlock:
    """Codewords sum(rows[b]) as rows of 64-bit words.

    Row i is the codeword whose low-row combination is i and whose high-row
    combination is the Gray code of ``high``.
    """

    high: int
    words: np.ndarray


def _span_words(rows: list[int], words: int) -> np.ndarray:
    table = np.zeros((1, words), dtype=np.uint64)
    for row in rows:
        table = np.concatenate([table, table ^ to_words(row, words)[None, :]])
    return table


def codeword_high_count(dim: int) -> int:
    return 1 << max(dim - _TABLE_ROWS, 0)


def iter_codeword_blocks(
    rows: list[int], length: int, start: int = 0, stop: Optional[int] = None
) -> Iterator[CodewordBlock]:
    """All 2^len(rows) combinations of independent rows, Gray-walked in blocks.

    Blocks are indexed by a high counter in [start, stop); shards of that
    range partition the codewords.
    """
    words = max(1, (length + 63) // 64)
    low, high = rows[:_TABLE_ROWS], rows[_TABLE_ROWS:]
    table = _span_words(low, words)
    stop = (1 << len(high)) if stop is None else stop
    if start >= stop:
        return
    gray = start ^ (start >> 1)
    offset = 0
    for b, row in enumerate(high):
        if (gray >> b) & 1:
            offset ^= row
    for h in range(start, stop):
        if h != start:
            offset ^= high[(h & -h).bit_length() - 1]
        yield CodewordBlock(h, table ^ to_words(offset, words)[None, :])


def block_weights(block: CodewordBlock) -> np.ndarray:
    return np.bitwise_count(block.words).sum(axis=1, dtype=np.int64)


def independent_rows(matrix: BitMatrix) -> list[int]:
    return list(rref(matrix.rows))


def check_dimension_cap(dim: int, cap: Optional[int]) -> None:
    if cap is not None and dim > cap:
        raise CapExceededError(f"codeword enumeration of dimension {dim}", cap, dim)


def minimum_weight_codewords(
    code: BinaryCode, cap: Optional[int] = DEFAULT_CODEWORD_DIM_CAP
) -> tuple[int, list[int]]:
    """(minimum weight, sorted minimum-weight codewords) by full enumeration."""
    rows = independent_rows(code.generator_matrix())
    check_dimension_cap(len(rows), cap)
    if not rows:
        raise PreconditionError("the zero code has no nonzero codewords")
    best = code.length + 1
    found: list[int] = []
    for block in iter_codeword_blocks(rows, code.length):
        weights = block_weights(block)
        if block.high == 0:
            weights[0] = code.length + 1
        w = int(weights.min())
        if w < best:
            best, found = w, []
        if w == best:
            found.extend(from_words(block.words[i]) for i in np.flatnonzero(weights == w))
    logger.debug("%d codewords of minimum weight %d", len(found), best)
    return best, sorted(found)


