"""Vectorial Boolean functions F: F_2^n -> F_2^m.

A function is stored as its truth table, a numpy array of 2^n m-bit
integers indexed by the integer encoding of the input point (bit i is
coordinate i, which coincides with the GF(2^n) polynomial basis encoding).
"""

import logging
import threading
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

import numpy as np

from sumfree_cli.errors import PreconditionError
from sumfree_cli.gf2n import FieldContext, FieldElement

logger = logging.getLogger(__name__)

# Degree reported for the all-zero function.
ZERO_FUNCTION_DEGREE = -1

# Upper bound on the number of entries materialised at once when all
# components are evaluated together.
_COMPONENT_CHUNK_ENTRIES = 1 << 22


def point_indices(n: int) -> np.ndarray:
    return np.arange(1 << n, dtype=np.int64)


def hamming_weights(n: int) -> np.ndarray:
    """Hamming weight of every index 0..2^n-1."""
    idx = point_indices(n)
    weights = np.zeros(1 << n, dtype=np.int64)
    for i in range(n):
        weights += (idx >> i) & 1
    return weights


def parity(values: np.ndarray) -> np.ndarray:
    """Bitwise parity of each entry of a uint32 array."""
    v = values.astype(np.uint32, copy=True)
    for shift in (16, 8, 4, 2, 1):
        v ^= v >> shift
    return (v & 1).astype(np.uint8)


def mobius(values: np.ndarray) -> np.ndarray:
    """Binary Möbius transform along the last axis (an involution).

    Works on packed m-bit values: XOR acts on every coordinate at once.
    """
    out = np.array(values, copy=True)
    size = out.shape[-1]
    n = size.bit_length() - 1
    for i in range(n):
        half = 1 << i
        view = out.reshape(*out.shape[:-1], size // (2 * half), 2, half)
        view[..., 1, :] ^= view[..., 0, :]
    return out


@dataclass(frozen=True)
class AnfCoefficients:
    """ANF of an (n,m)-function.

    ``coefficients[u]`` is the m-bit vector of coefficients of the monomial
    prod_{i in u} x_i, one bit per output coordinate.
    """

    n: int
    m: int
    coefficients: np.ndarray

    def coordinate(self, i: int) -> int:
        """Coefficient vector of output coordinate i as a 2^n-bit integer."""
        bits = (self.coefficients >> i) & 1
        return sum(1 << int(u) for u in np.flatnonzero(bits))

    def monomials(self) -> list[tuple[int, int]]:
        """Nonzero (monomial, coefficient vector) pairs in index order."""
        nz = np.flatnonzero(self.coefficients)
        return [(int(u), int(self.coefficients[u])) for u in nz]


class VectorialFunction:
    """An (n,m)-function given by its truth table.

    Immutable; the ANF is computed once on first use.
    """

    __slots__ = ("n", "m", "table", "_anf", "_lock")

    def __init__(self, n: int, m: int, table: Iterable[int]):
        values = np.asarray(list(table) if not isinstance(table, np.ndarray) else table)
        if n < 0 or m < 0 or m > 32:
            raise PreconditionError(f"invalid dimensions n={n}, m={m}")
        if values.shape != (1 << n,):
            raise PreconditionError(
                f"truth table must have {1 << n} entries, got {values.size}"
            )
        if values.size and (values.min() < 0 or int(values.max()) >= (1 << m)):
            raise PreconditionError(f"table entries must be {m}-bit values")
        arr = values.astype(np.uint32)
        arr.setflags(write=False)
        self.n = n
        self.m = m
        self.table = arr
        self._anf: Optional[AnfCoefficients] = None
        self._lock = threading.Lock()

    def __call__(self, x: int) -> int:
        return int(self.table[x])

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, VectorialFunction):
            return NotImplemented
        return (
            self.n == other.n
            and self.m == other.m
            and np.array_equal(self.table, other.table)
        )

    def __hash__(self) -> int:
        return hash((self.n, self.m, self.table.tobytes()))

    def __repr__(self) -> str:
        return f"VectorialFunction(n={self.n}, m={self.m})"

    def __reduce__(self):
        # The lock is process-local; workers rebuild it.
        return (VectorialFunction, (self.n, self.m, np.array(self.table)))

    @property
    def anf(self) -> AnfCoefficients:
        if self._anf is None:
            with self._lock:
                if self._anf is None:
                    coeffs = mobius(self.table)
                    coeffs.setflags(write=False)
                    self._anf = AnfCoefficients(self.n, self.m, coeffs)
        return self._anf

    def values(self) -> list[int]:
        return [int(v) for v in self.table]


def from_table(n: int, m: int, values: Sequence[int]) -> VectorialFunction:
    return VectorialFunction(n, m, values)


def zero_function(n: int, m: int) -> VectorialFunction:
    return VectorialFunction(n, m, np.zeros(1 << n, dtype=np.uint32))


def from_univariate(
    ctx: FieldContext, terms: Sequence[tuple[FieldElement, int]]
) -> VectorialFunction:
    """(n,n)-function x -> sum c_i x^(e_i) evaluated in ctx."""
    top = ctx.order - 1
    for coeff, exponent in terms:
        if not 0 <= exponent <= top:
            raise PreconditionError(
                f"exponent {exponent} outside [0, {top}] for n={ctx.n}"
            )
        if not 0 <= coeff <= top:
            raise PreconditionError(f"coefficient {coeff:#x} is not in GF(2^{ctx.n})")
    table = np.zeros(ctx.order, dtype=np.uint32)
    for x in range(ctx.order):
        acc = 0
        for coeff, exponent in terms:
            acc ^= ctx.mul(coeff, ctx.pow(x, exponent))
        table[x] = acc
    return VectorialFunction(ctx.n, ctx.n, table)


def power_map(ctx: FieldContext, exponent: int) -> VectorialFunction:
    return from_univariate(ctx, [(1, exponent)])


def anf(F: VectorialFunction) -> AnfCoefficients:
    return F.anf


def algebraic_degree(F: VectorialFunction) -> int:
    """Maximum monomial weight in the ANF, ZERO_FUNCTION_DEGREE for F = 0."""
    nz = F.anf.coefficients != 0
    if not nz.any():
        return ZERO_FUNCTION_DEGREE
    return int(hamming_weights(F.n)[nz].max())


def component(
    F: VectorialFunction, v: int, ctx: Optional[FieldContext] = None
) -> VectorialFunction:
    """Component Boolean function f_v.

    With a field context and m = n this is tr(v F(x)); otherwise the bitwise
    dot product v . F(x).
    """
    if v == 0:
        raise PreconditionError("component vector v must be nonzero")
    if not 0 < v < (1 << F.m):
        raise PreconditionError(f"v={v:#x} is not an {F.m}-bit vector")
    if ctx is not None and F.m == F.n == ctx.n:
        bits = [ctx.trace(ctx.mul(v, int(y))) for y in F.table]
        return VectorialFunction(F.n, 1, bits)
    return VectorialFunction(F.n, 1, parity(F.table & np.uint32(v)))


def component_degrees(F: VectorialFunction) -> np.ndarray:
    """Degrees of the dot-product components f_v for v = 1..2^m-1.

    Entry v-1 holds deg(f_v), ZERO_FUNCTION_DEGREE when f_v vanishes.
    """
    count = (1 << F.m) - 1
    weights = hamming_weights(F.n)
    degrees = np.empty(count, dtype=np.int64)
    chunk = max(1, _COMPONENT_CHUNK_ENTRIES >> F.n)
    for start in range(1, count + 1, chunk):
        vs = np.arange(start, min(start + chunk, count + 1), dtype=np.uint32)
        comps = parity(F.table[None, :] & vs[:, None])
        coeffs = mobius(comps)
        degrees[start - 1 : start - 1 + len(vs)] = np.where(
            coeffs != 0, weights[None, :], ZERO_FUNCTION_DEGREE
        ).max(axis=1)
    return degrees


def lowest_degree_component(F: VectorialFunction) -> tuple[int, int]:
    """(v, deg f_v) for the first component of minimum degree."""
    degrees = component_degrees(F)
    idx = int(np.argmin(degrees))
    return idx + 1, int(degrees[idx])


def is_nondegenerate(F: VectorialFunction, k: int) -> bool:
    """True iff every nonzero component has algebraic degree >= k."""
    if F.m == 0:
        return True
    return bool((component_degrees(F) >= k).all())


def derivative(F: VectorialFunction, a: int) -> VectorialFunction:
    """D_a F(x) = F(x + a) + F(x)."""
    idx = point_indices(F.n)
    return VectorialFunction(F.n, F.m, F.table[idx ^ a] ^ F.table)


def higher_derivative(F: VectorialFunction, dirs: Sequence[int]) -> VectorialFunction:
    """D_{a_1} ... D_{a_l} F; zero when the directions are dependent."""
    idx = point_indices(F.n)
    table = F.table.copy()
    for a in dirs:
        table = table[idx ^ a] ^ table
    return VectorialFunction(F.n, F.m, table)


def differential_uniformity(F: VectorialFunction) -> int:
    """max over a != 0 and b of #{x : F(x + a) + F(x) = b}."""
    idx = point_indices(F.n)
    best = 0
    for a in range(1, 1 << F.n):
        counts = np.bincount(F.table[idx ^ a] ^ F.table, minlength=1 << F.m)
        best = max(best, int(counts.max()))
    return best


def is_apn(F: VectorialFunction) -> bool:
    return F.n == F.m and F.n >= 1 and differential_uniformity(F) == 2


def is_permutation(F: VectorialFunction) -> bool:
    return F.n == F.m and np.unique(F.table).size == F.table.size


def compose(F: VectorialFunction, G: VectorialFunction) -> VectorialFunction:
    """F o G."""
    if G.m != F.n:
        raise PreconditionError(
            f"cannot compose: inner output dimension {G.m} != outer input {F.n}"
        )
    return VectorialFunction(G.n, F.m, F.table[G.table])
