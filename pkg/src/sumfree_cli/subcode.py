"""Subcodes C_F of RM(r,n) cut out by the value matrix of a sum-free F."""

import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Iterator, Literal, Optional

import numpy as np
from pydantic import BaseModel, computed_field

from sumfree_cli.bitmatrix import BitMatrix, insert_row, pack_bits, unpack_bits
from sumfree_cli.errors import CapExceededError, PreconditionError
from sumfree_cli.flats import (
    Flat,
    Subspace,
    embed,
    enumerate_subspaces,
    gaussian_binomial,
    is_sumfree,
    iter_bases,
    witness,
)
from sumfree_cli.rmcode import (
    DEFAULT_CODEWORD_DIM_CAP,
    BinaryCode,
    block_weights,
    check_dimension_cap,
    codeword_high_count,
    incidence_vector,
    independent_rows,
    iter_codeword_blocks,
    rm_dimension,
    rm_parity_check,
    second_weight_codeword,
)
from sumfree_cli.vecfun import VectorialFunction, is_nondegenerate, lowest_degree_component

logger = logging.getLogger(__name__)

DEFAULT_PAIR_SEARCH_CAP = 10**7

Provenance = Literal["built-from-function", "extracted-from-code"]


@dataclass(frozen=True)
class SubcodeBundle:
    """A subcode of RM(r,n) together with its defining function."""

    r: int
    n: int
    m: int
    code: BinaryCode
    function: VectorialFunction
    provenance: Provenance

    @property
    def trivial(self) -> bool:
        """Codimension 0: the code is RM(r,n) itself."""
        return self.m == 0

    @property
    def expected_distance(self) -> int:
        return 3 << (self.n - self.r - 1)


def value_matrix(F: VectorialFunction) -> BitMatrix:
    """M_F: row i is output bit i of F over all points."""
    rows = [pack_bits((F.table >> np.uint32(i)) & 1) for i in range(F.m)]
    return BitMatrix(tuple(rows), 1 << F.n)


def _check_order(r: int, n: int) -> None:
    if not 2 <= r <= n - 2:
        raise PreconditionError(f"need 2 <= r <= n-2, got r={r}, n={n}")


def build_subcode(
    F: VectorialFunction,
    r: int,
    trust: bool = False,
    jobs: int = 1,
    flat_cap: Optional[int] = None,
) -> SubcodeBundle:
    """C_F with parity check [RM(n-r-1,n) generator; M_F].

    Unless ``trust`` is set, F must be (n-r)th-order sum-free and
    non-degenerate at order n-r.
    """
    n = F.n
    _check_order(r, n)
    k = n - r
    if not trust:
        result = is_sumfree(F, k, jobs=jobs, cap=flat_cap)
        if not result.sumfree:
            flat = result.counterexample
            raise PreconditionError(
                f"F is not {k}th-order sum-free: witness vanishes on {flat.format()}",
                flat=flat,
            )
        if not is_nondegenerate(F, k):
            v, degree = lowest_degree_component(F)
            raise PreconditionError(
                f"F is degenerate at order {k}: component v={v:#x} has degree {degree}",
                component=v,
            )
    H = rm_parity_check(r, n).stack(value_matrix(F))
    code = BinaryCode(1 << n, parity_check=H)
    expected = rm_dimension(r, n) - F.m
    if code.dimension != expected:
        logger.warning(
            "C_F has dimension %d, expected %d", code.dimension, expected
        )
    logger.info("built C_F for n=%d r=%d m=%d: dimension %d", n, r, F.m, code.dimension)
    return SubcodeBundle(r, n, F.m, code, F, "built-from-function")


def extract_function(code: BinaryCode, r: int) -> SubcodeBundle:
    """Read an (n,m)-function off a subcode of RM(r,n) of codimension m <= n.

    The parity-check rows of ``code`` that are independent of RM(n-r-1,n),
    taken in their original order, become the rows of M.
    """
    n = code.length.bit_length() - 1
    if code.length != 1 << n:
        raise PreconditionError(f"code length {code.length} is not a power of two")
    _check_order(r, n)
    rm = BinaryCode.reed_muller(r, n)
    if not code.is_subcode_of(rm):
        raise PreconditionError(f"code is not a subcode of RM({r},{n})")
    m = rm.dimension - code.dimension
    if m > n:
        raise PreconditionError(f"codimension {m} in RM({r},{n}) exceeds n={n}")
    echelon: dict[int, int] = {}
    for row in rm.parity_check.rows:
        insert_row(row, echelon)
    surplus = []
    for row in code.parity_check_matrix().rows:
        if len(surplus) == m:
            break
        if insert_row(row, echelon) >= 0:
            surplus.append(row)
    table = np.zeros(1 << n, dtype=np.uint32)
    for i, row in enumerate(surplus):
        bits = unpack_bits(row, 1 << n).astype(np.uint32)
        table |= bits << np.uint32(i)
    if m == 0:
        logger.warning("code equals RM(%d,%d); extracted function is empty", r, n)
    return SubcodeBundle(r, n, m, code, VectorialFunction(n, m, table), "extracted-from-code")


# --- minimum distance --------------------------------------------------


def _min_weight_in_range(
    rows: list[int], length: int, start: int, stop: int
) -> tuple[int, int, int]:
    """(weight, high, low) of the lightest nonzero codeword in a shard."""
    best = (length + 1, 0, 0)
    for block in iter_codeword_blocks(rows, length, start, stop):
        weights = block_weights(block)
        if block.high == 0:
            weights[0] = length + 1
        low = int(np.argmin(weights))
        candidate = (int(weights[low]), block.high, low)
        if candidate < best:
            best = candidate
    return best


def _shard_ranges(total: int, jobs: int) -> list[tuple[int, int]]:
    jobs = max(1, min(jobs, total))
    step = -(-total // jobs)
    return [(s, min(s + step, total)) for s in range(0, total, step)]


def min_distance_exhaustive(
    code: BinaryCode, cap: Optional[int] = DEFAULT_CODEWORD_DIM_CAP, jobs: int = 1
) -> int:
    """Exact minimum weight over all nonzero codewords."""
    rows = independent_rows(code.generator_matrix())
    try:
        check_dimension_cap(len(rows), cap)
    except CapExceededError as e:
        raise CapExceededError(
            f"{e.what}; use certificate mode instead", e.cap, e.required
        ) from e
    if not rows:
        raise PreconditionError("the zero code has no minimum distance")
    total = codeword_high_count(len(rows))
    shards = _shard_ranges(total, jobs)
    logger.debug("enumerating 2^%d codewords in %d shard(s)", len(rows), len(shards))
    if len(shards) > 1:
        with ProcessPoolExecutor(max_workers=len(shards)) as pool:
            results = list(
                pool.map(
                    _min_weight_in_range,
                    *zip(*[(rows, code.length, s, e) for s, e in shards]),
                )
            )
    else:
        results = [_min_weight_in_range(rows, code.length, 0, total)]
    return min(results)[0]


class DistanceCertificate(BaseModel):
    """Matching lower and upper bounds on d(C_F)."""

    n: int
    r: int
    m: int
    lower: int
    upper: Optional[int] = None
    witness_codeword: Optional[str] = None
    witness_weight: Optional[int] = None
    flat_a: Optional[str] = None
    flat_b: Optional[str] = None
    clique_family: Optional[str] = None
    witnesses_computed: int = 0
    complete: bool = False
    note: str = ""

    @computed_field
    @property
    def certified(self) -> bool:
        return self.complete and self.lower == self.upper


def _cliques_inside(n: int, d: int) -> Iterator[list[Subspace]]:
    """d-spaces inside each (d+2)-space, pairwise meeting in >= d-2 dims."""
    for V in enumerate_subspaces(n, d + 2, cap=None):
        basis = V.ordered_basis()
        yield [
            Subspace.from_vectors(n, [embed(v, basis) for v in local])
            for local in iter_bases(d + 2, d)
        ]


def _cliques_through(n: int, d: int) -> Iterator[list[Subspace]]:
    """d-spaces containing each (d-2)-space."""
    for W in enumerate_subspaces(n, d - 2, cap=None):
        quotient = W.complement().ordered_basis()
        yield [
            Subspace.from_vectors(n, list(W.basis) + [embed(v, quotient) for v in local])
            for local in iter_bases(n - d + 2, 2)
        ]


def certify_min_distance(
    bundle: SubcodeBundle,
    cap: Optional[int] = DEFAULT_PAIR_SEARCH_CAP,
    jobs: int = 1,
    flat_cap: Optional[int] = None,
) -> DistanceCertificate:
    """Certify d(C_F) = 3 * 2^(n-r-1) without enumerating codewords.

    Lower bound: F has no vanishing (n-r)-flat, so no minimum-weight word of
    RM(r,n) survives M_F. Upper bound: two (n-r)-spaces in a common clique
    with equal witnesses; their symmetric difference is a codeword.

    ``jobs`` shards only the sum-freedom check behind the lower bound. The
    pair search runs in this process and stops at the first collision, which
    lies in the first clique whenever the clique has more than 2^m members.
    """
    n, r, m = bundle.n, bundle.r, bundle.m
    if bundle.provenance != "built-from-function":
        raise PreconditionError("certificates need a bundle built from a function")
    if m > n:
        raise PreconditionError(f"m={m} exceeds n={n}")
    F = bundle.function
    d = n - r
    target = bundle.expected_distance
    sumfree = is_sumfree(F, d, jobs=jobs, cap=flat_cap).sumfree
    cert = DistanceCertificate(n=n, r=r, m=m, lower=target if sumfree else 1 << d)
    if not sumfree:
        cert.note = f"F is not {d}th-order sum-free; lower bound falls back to RM({r},{n})"
        return cert

    families = [
        ("inside-(d+2)-space", gaussian_binomial(d + 2, 2), _cliques_inside),
        ("through-(d-2)-space", gaussian_binomial(r + 2, 2), _cliques_through),
    ]
    families.sort(key=lambda f: -f[1])
    computed = 0
    for name, size, cliques in families:
        logger.debug("clique family %s of size %d", name, size)
        for clique in cliques(n, d):
            seen: dict[int, Subspace] = {}
            for U in clique:
                if cap is not None and computed >= cap:
                    cert.witnesses_computed = computed
                    cert.note = f"pair search cap {cap} reached"
                    logger.warning("certificate incomplete: %s", cert.note)
                    return cert
                w = witness(F, U.as_flat())
                computed += 1
                if w in seen:
                    A1, A2 = seen[w].as_flat(), U.as_flat()
                    codeword = second_weight_codeword(A1, A2)
                    weight = codeword.bit_count()
                    if not bundle.code.contains(codeword):
                        raise PreconditionError("witness codeword fails the parity check")
                    cert.upper = weight
                    cert.witness_codeword = f"{codeword:#x}"
                    cert.witness_weight = weight
                    cert.flat_a = A1.format()
                    cert.flat_b = A2.format()
                    cert.clique_family = name
                    cert.witnesses_computed = computed
                    cert.complete = True
                    return cert
                seen[w] = U
    cert.witnesses_computed = computed
    cert.note = "no colliding pair found"
    return cert


def find_flat_codeword(bundle: SubcodeBundle, flat: Flat) -> Optional[int]:
    """Incidence vector of ``flat`` if it is a codeword of the bundle's code."""
    vector = incidence_vector(flat)
    return vector if bundle.code.contains(vector) else None


