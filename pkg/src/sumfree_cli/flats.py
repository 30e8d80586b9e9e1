"""Subspaces, flats, witnesses and sum-freedom of (n,m)-functions.

Subspaces of F_2^n are stored in a canonical reduced row echelon form:
rows are n-bit integers, each row's leading bit is its highest set bit,
leading bits strictly decrease and no row has a bit at another row's
leading position. A flat is a subspace plus its minimum coset element.

Canonical enumeration order: pivot tuples in ``itertools.combinations``
order over positions n-1..0, then free bits row by row with the last row
varying fastest. Flats of one direction follow in increasing
representative order.
"""

import itertools
import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Iterator, Optional, Sequence

import numpy as np

from sumfree_cli.bitmatrix import rank_of, rref
from sumfree_cli.errors import CapExceededError, PreconditionError
from sumfree_cli.vecfun import VectorialFunction, higher_derivative, point_indices

logger = logging.getLogger(__name__)

DEFAULT_FLAT_CAP = 10**8

# Witness rows materialised per block in the bulk scanner.
_BLOCK_ENTRIES = 1 << 20


def gaussian_binomial(n: int, k: int) -> int:
    """Number of k-spaces of F_2^n."""
    if not 0 <= k <= n:
        raise PreconditionError(f"need 0 <= k <= n, got n={n}, k={k}")
    num = 1
    den = 1
    for i in range(k):
        num *= (1 << (n - i)) - 1
        den *= (1 << (i + 1)) - 1
    return num // den


def flat_count(n: int, k: int) -> int:
    return gaussian_binomial(n, k) << (n - k)


@dataclass(frozen=True, order=True)
class Subspace:
    """A linear subspace of F_2^n in canonical RREF."""

    n: int
    basis: tuple[int, ...]

    @classmethod
    def from_vectors(cls, n: int, vectors: Sequence[int]) -> "Subspace":
        for v in vectors:
            if not 0 <= v < (1 << n):
                raise PreconditionError(f"vector {v:#x} is not in F_2^{n}")
        return cls(n, tuple(rref(vectors)))

    @classmethod
    def zero(cls, n: int) -> "Subspace":
        return cls(n, ())

    @classmethod
    def full(cls, n: int) -> "Subspace":
        return cls(n, tuple(1 << i for i in range(n - 1, -1, -1)))

    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def pivots(self) -> tuple[int, ...]:
        return tuple(row.bit_length() - 1 for row in self.basis)

    @property
    def pivot_mask(self) -> int:
        mask = 0
        for p in self.pivots:
            mask |= 1 << p
        return mask

    def reduce(self, v: int) -> int:
        """Minimum element of the coset v + self."""
        for row in self.basis:
            if (v >> (row.bit_length() - 1)) & 1:
                v ^= row
        return v

    def reduce_array(self, vs: np.ndarray) -> np.ndarray:
        out = np.array(vs, dtype=np.int64, copy=True)
        for row in self.basis:
            hit = ((out >> (row.bit_length() - 1)) & 1).astype(bool)
            out[hit] ^= row
        return out

    def contains(self, v: int) -> bool:
        return self.reduce(v) == 0

    def ordered_basis(self) -> tuple[int, ...]:
        """Basis in ascending leading-bit order (coordinate i <-> row i)."""
        return tuple(reversed(self.basis))

    def points(self) -> np.ndarray:
        """All 2^dim elements; index i is the combination given by bits of i."""
        return span_points(self.ordered_basis())

    def coset_representatives(self) -> np.ndarray:
        """Minimum elements of all 2^(n-dim) cosets, ascending."""
        idx = point_indices(self.n)
        return idx[(idx & self.pivot_mask) == 0]

    def complement(self) -> "Subspace":
        """Span of the unit vectors at non-pivot positions."""
        pivots = set(self.pivots)
        return Subspace(
            self.n, tuple(1 << i for i in range(self.n - 1, -1, -1) if i not in pivots)
        )

    def as_flat(self) -> "Flat":
        return Flat(self, 0)

    def format(self) -> str:
        return ",".join(f"{v:#x}" for v in self.basis)


def span_points(basis: Sequence[int]) -> np.ndarray:
    """Span of an ordered basis; entry i is the XOR of basis[b] for bits b of i."""
    pts = np.zeros(1, dtype=np.int64)
    for vec in basis:
        pts = np.concatenate([pts, pts ^ vec])
    return pts


def embed(vector: int, basis: Sequence[int]) -> int:
    """Image of a coordinate vector under an ordered basis."""
    out = 0
    i = 0
    while vector:
        if vector & 1:
            out ^= basis[i]
        vector >>= 1
        i += 1
    return out


@dataclass(frozen=True, order=True)
class Flat:
    """An affine subspace rep + direction with rep the minimum element."""

    direction: Subspace
    rep: int

    def __post_init__(self):
        if self.direction.reduce(self.rep) != self.rep:
            raise PreconditionError(
                f"representative {self.rep:#x} is not reduced against the direction"
            )

    @classmethod
    def through(cls, direction: Subspace, point: int) -> "Flat":
        return cls(direction, direction.reduce(point))

    @classmethod
    def from_points(cls, n: int, points: Sequence[int]) -> "Flat":
        pts = [int(p) for p in points]
        if not pts:
            raise PreconditionError("a flat is never empty")
        origin = pts[0]
        direction = Subspace.from_vectors(n, [p ^ origin for p in pts])
        if len(set(pts)) != 1 << direction.dim:
            raise PreconditionError("points do not form a flat")
        return cls.through(direction, origin)

    @property
    def n(self) -> int:
        return self.direction.n

    @property
    def dim(self) -> int:
        return self.direction.dim

    def points(self) -> np.ndarray:
        return self.direction.points() ^ self.rep

    def contains(self, v: int) -> bool:
        return self.direction.reduce(v) == self.rep

    def contains_array(self, vs: np.ndarray) -> np.ndarray:
        return self.direction.reduce_array(vs) == self.rep

    def intersection(self, other: "Flat") -> Optional["Flat"]:
        """The flat A1 cap A2, or None when they are disjoint."""
        pts = self.points()
        common = pts[other.contains_array(pts)]
        if common.size == 0:
            return None
        return Flat.from_points(self.n, common)

    def format(self) -> str:
        return f"basis={self.direction.format()} rep={self.rep:#x}"


# --- enumeration -------------------------------------------------------


def _check_cap(what: str, required: int, cap: Optional[int]) -> None:
    if cap is not None and required > cap:
        raise CapExceededError(what, cap, required)


def _pivot_classes(n: int, k: int) -> Iterator[list[list[int]]]:
    """Per pivot tuple, the list of allowed values for each RREF row."""
    for pivots in itertools.combinations(range(n - 1, -1, -1), k):
        pivset = set(pivots)
        options = []
        for p in pivots:
            free = [j for j in range(p) if j not in pivset]
            values = []
            for cfg in range(1 << len(free)):
                v = 1 << p
                for b, j in enumerate(free):
                    if (cfg >> b) & 1:
                        v |= 1 << j
                values.append(v)
            options.append(values)
        yield options


def _class_size(options: list[list[int]]) -> int:
    size = 1
    for values in options:
        size *= len(values)
    return size


def iter_bases(
    n: int, k: int, start: int = 0, stop: Optional[int] = None
) -> Iterator[tuple[int, ...]]:
    """Canonical bases of k-spaces with canonical index in [start, stop)."""
    offset = 0
    for options in _pivot_classes(n, k):
        size = _class_size(options)
        lo, hi = offset, offset + size
        offset = hi
        if hi <= start:
            continue
        if stop is not None and lo >= stop:
            return
        it = itertools.product(*options)
        first = max(start - lo, 0)
        last = size if stop is None else min(stop - lo, size)
        yield from itertools.islice(it, first, last)


def enumerate_subspaces(
    n: int, k: int, cap: Optional[int] = DEFAULT_FLAT_CAP
) -> Iterator[Subspace]:
    """Every k-space of F_2^n exactly once, in canonical order."""
    _check_cap(f"subspace enumeration ({n},{k})", gaussian_binomial(n, k), cap)
    for basis in iter_bases(n, k):
        yield Subspace(n, basis)


def enumerate_flats(
    n: int, k: int, cap: Optional[int] = DEFAULT_FLAT_CAP
) -> Iterator[Flat]:
    """Every k-flat of F_2^n exactly once, in canonical order."""
    _check_cap(f"flat enumeration ({n},{k})", flat_count(n, k), cap)
    for basis in iter_bases(n, k):
        direction = Subspace(n, basis)
        for rep in direction.coset_representatives():
            yield Flat(direction, int(rep))


# --- witnesses ---------------------------------------------------------


def witness(F: VectorialFunction, A: Flat) -> int:
    """Sum of F over the points of A, walked in Gray-code order."""
    if A.n != F.n:
        raise PreconditionError(f"flat lives in F_2^{A.n}, function in F_2^{F.n}")
    basis = A.direction.basis
    table = F.table
    x = A.rep
    acc = int(table[x])
    for i in range(1, 1 << len(basis)):
        x ^= basis[(i & -i).bit_length() - 1]
        acc ^= int(table[x])
    return acc


@dataclass
class WitnessBlock:
    """Witnesses of all flats of a run of consecutive k-spaces.

    ``witnesses[i, x]`` is the witness of the flat bases[i] + x.
    """

    start: int
    bases: list[tuple[int, ...]]
    witnesses: np.ndarray


def iter_witness_blocks(
    F: VectorialFunction, k: int, start: int = 0, stop: Optional[int] = None
) -> Iterator[WitnessBlock]:
    """Bulk witnesses per k-space via iterated derivatives over all points.

    Derivatives along the leading rows are shared across a pivot class; the
    last row is applied to a whole block of candidate values at once.
    """
    n = F.n
    idx = point_indices(n)
    table = F.table
    if k == 0:
        if start < 1 and (stop is None or stop > 0):
            yield WitnessBlock(0, [()], table[None, :].copy())
        return
    chunk = max(1, _BLOCK_ENTRIES >> n)
    offset = 0
    for options in _pivot_classes(n, k):
        size = _class_size(options)
        lo, hi = offset, offset + size
        offset = hi
        if hi <= start:
            continue
        if stop is not None and lo >= stop:
            return
        yield from _scan_class(
            table, idx, options, lo, max(start, lo), hi if stop is None else min(stop, hi), chunk
        )


def _scan_class(
    table: np.ndarray,
    idx: np.ndarray,
    options: list[list[int]],
    base_index: int,
    start: int,
    stop: int,
    chunk: int,
) -> Iterator[WitnessBlock]:
    depth = len(options)
    leaf = np.asarray(options[-1], dtype=np.int64)
    leaf_size = len(leaf)

    def walk(level: int, prefix: tuple[int, ...], current: np.ndarray, index: int):
        if level == depth - 1:
            lo = max(start - index, 0)
            hi = min(stop - index, leaf_size)
            for s in range(lo, hi, chunk):
                e = min(s + chunk, hi)
                vals = leaf[s:e]
                block = current[idx[None, :] ^ vals[:, None]] ^ current[None, :]
                bases = [prefix + (int(v),) for v in vals]
                yield WitnessBlock(index + s, bases, block)
            return
        below = 1
        for values in options[level + 1 :]:
            below *= len(values)
        for i, v in enumerate(options[level]):
            sub_lo = index + i * below
            if sub_lo + below <= start:
                continue
            if sub_lo >= stop:
                return
            yield from walk(level + 1, prefix + (v,), current[idx ^ v] ^ current, sub_lo)

    yield from walk(0, (), table, base_index)


@dataclass(frozen=True)
class SumfreeResult:
    """Outcome of a sum-freedom check."""

    k: int
    sumfree: bool
    counterexample: Optional[Flat] = None
    # canonical index of the counterexample's direction
    index: Optional[int] = None


def _first_vanishing(
    F: VectorialFunction, k: int, start: int, stop: Optional[int]
) -> Optional[tuple[int, tuple[int, ...], int]]:
    for block in iter_witness_blocks(F, k, start, stop):
        zero = block.witnesses == 0
        rows = np.flatnonzero(zero.any(axis=1))
        if rows.size:
            i = int(rows[0])
            rep = int(np.flatnonzero(zero[i])[0])
            return block.start + i, block.bases[i], rep
    return None


def _shards(total: int, jobs: int) -> list[tuple[int, int]]:
    jobs = max(1, min(jobs, total))
    step = -(-total // jobs)
    return [(s, min(s + step, total)) for s in range(0, total, step)]


def is_sumfree(
    F: VectorialFunction,
    k: int,
    jobs: int = 1,
    cap: Optional[int] = DEFAULT_FLAT_CAP,
) -> SumfreeResult:
    """Check that the witness of every k-flat is nonzero.

    On failure the first vanishing flat in canonical order is returned, also
    when the check is sharded across ``jobs`` worker processes.
    """
    if not 0 <= k <= F.n:
        raise PreconditionError(f"order k={k} outside [0, {F.n}]")
    _check_cap(f"{k}-flats of F_2^{F.n}", flat_count(F.n, k), cap)
    total = gaussian_binomial(F.n, k)
    logger.debug("sum-free check n=%d m=%d k=%d over %d subspaces", F.n, F.m, k, total)
    if jobs > 1 and total > 1:
        shards = _shards(total, jobs)
        with ProcessPoolExecutor(max_workers=len(shards)) as pool:
            found = list(
                pool.map(_first_vanishing, *zip(*[(F, k, s, e) for s, e in shards]))
            )
        hits = [h for h in found if h is not None]
        hit = min(hits, key=lambda h: (h[0], h[2])) if hits else None
    else:
        hit = _first_vanishing(F, k, 0, None)
    if hit is None:
        return SumfreeResult(k, True)
    index, basis, rep = hit
    return SumfreeResult(k, False, Flat(Subspace(F.n, basis), rep), index)


def count_vanishing_flats(
    F: VectorialFunction, k: int, cap: Optional[int] = DEFAULT_FLAT_CAP
) -> int:
    """Number of k-flats whose witness is 0."""
    if not 0 <= k <= F.n:
        raise PreconditionError(f"order k={k} outside [0, {F.n}]")
    _check_cap(f"{k}-flats of F_2^{F.n}", flat_count(F.n, k), cap)
    zeros = 0
    for block in iter_witness_blocks(F, k):
        zeros += int(np.count_nonzero(block.witnesses == 0))
    # each flat is seen once per point
    return zeros >> k


@dataclass(frozen=True)
class OrderProfile:
    """The set K_F of orders at which F is sum-free."""

    n: int
    m: int
    orders: frozenset[int]
    checked: tuple[int, ...]
    skipped: dict[int, str] = field(default_factory=dict)

    def __contains__(self, k: int) -> bool:
        return k in self.orders

    @property
    def is_multiorder(self) -> bool:
        return len(self.orders - {0}) >= 2


def order_profile(
    F: VectorialFunction,
    kmin: int = 1,
    kmax: Optional[int] = None,
    include_zero: bool = False,
    jobs: int = 1,
    cap: Optional[int] = DEFAULT_FLAT_CAP,
) -> OrderProfile:
    """K_F restricted to [kmin, kmax], plus order 0 when ``include_zero``.

    Orders over the cap are skipped.
    """
    kmax = F.n if kmax is None else min(kmax, F.n)
    ks = list(range(max(kmin, 1), kmax + 1))
    if include_zero:
        ks.insert(0, 0)
    orders = set()
    checked = []
    skipped: dict[int, str] = {}
    for k in ks:
        try:
            if is_sumfree(F, k, jobs=jobs, cap=cap).sumfree:
                orders.add(k)
            checked.append(k)
        except CapExceededError as e:
            logger.warning("order %d skipped: %s", k, e)
            skipped[k] = str(e)
    return OrderProfile(F.n, F.m, frozenset(orders), tuple(checked), skipped)


def coset_witnesses_distinct(F: VectorialFunction, U: Subspace) -> bool:
    """True iff the 2^(n-dim U) cosets of U have pairwise distinct witnesses."""
    if U.n != F.n:
        raise PreconditionError(f"subspace lives in F_2^{U.n}, function in F_2^{F.n}")
    derived = higher_derivative(F, U.basis).table
    values = derived[U.coset_representatives()]
    return np.unique(values).size == values.size


def derivative_restriction(
    F: VectorialFunction, dirs: Sequence[int], W: Subspace
) -> VectorialFunction:
    """Restriction of D_{v_1}...D_{v_j} F to a complement W of span(dirs).

    The result is an (n-j, m)-function indexed by coordinates in W's ordered
    basis (ascending leading bit).
    """
    j = len(dirs)
    if rank_of(dirs) != j:
        raise PreconditionError("derivative directions are linearly dependent")
    if W.n != F.n or W.dim != F.n - j:
        raise PreconditionError(f"W must be an {F.n - j}-space of F_2^{F.n}")
    if rank_of(list(dirs) + list(W.basis)) != F.n:
        raise PreconditionError("W meets span(dirs) non-trivially")
    derived = higher_derivative(F, dirs).table
    return VectorialFunction(F.n - j, F.m, derived[W.points()])

