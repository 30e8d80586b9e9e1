"""Colorings of generalized Grassmann graphs J_2(n,k,t).

Vertices are the k-spaces of F_2^n, adjacent when they meet in at least t
dimensions; J_2(n,k) means t = k-1. A proper coloring partitions the
vertices into constant-dimension codes.
"""

import logging
import random
from collections import Counter, defaultdict
from dataclasses import dataclass, field
from typing import Literal, Optional

from pydantic import BaseModel

from sumfree_cli.bitmatrix import rank_of
from sumfree_cli.errors import PreconditionError
from sumfree_cli.flats import (
    Flat,
    Subspace,
    embed,
    gaussian_binomial,
    is_sumfree,
    iter_bases,
    iter_witness_blocks,
    witness,
)
from sumfree_cli.vecfun import VectorialFunction, algebraic_degree

logger = logging.getLogger(__name__)

DEFAULT_PAIR_SAMPLE = 2000

Producer = Literal["witness", "extended", "external"]


@dataclass(frozen=True)
class GrassmannParams:
    n: int
    k: int
    t: int

    def __post_init__(self):
        if not 0 <= self.t <= self.k < self.n:
            raise PreconditionError(
                f"need 0 <= t <= k < n, got n={self.n}, k={self.k}, t={self.t}"
            )

    @classmethod
    def grassmann(cls, n: int, k: int) -> "GrassmannParams":
        """J_2(n,k): adjacency on a common (k-1)-space."""
        return cls(n, k, k - 1)

    @property
    def vertex_count(self) -> int:
        return gaussian_binomial(self.n, self.k)


@dataclass
class ColoringCertificate:
    """Colors of k-spaces of F_2^n keyed by canonical basis.

    ``function`` is the defining function for witness and extended
    colorings; verification of extended colorings re-derives colors from it.
    """

    params: GrassmannParams
    m: int
    assignment: dict[tuple[int, ...], int]
    producer: Producer = "external"
    function: Optional[VectorialFunction] = field(default=None, repr=False)

    def color(self, U: Subspace) -> int:
        return self.assignment[U.basis]

    @property
    def colors_used(self) -> int:
        return len(set(self.assignment.values()))

    def relabel(self, permutation: dict[int, int]) -> "ColoringCertificate":
        """Same partition with colors renamed through ``permutation``."""
        if len(set(permutation.values())) != len(permutation):
            raise PreconditionError("color relabelling must be injective")
        return ColoringCertificate(
            self.params,
            self.m,
            {U: permutation.get(c, c) for U, c in self.assignment.items()},
            self.producer,
            self.function,
        )


def intersection_dim(U: Subspace, W: Subspace) -> int:
    if U.n != W.n:
        raise PreconditionError(f"subspaces live in F_2^{U.n} and F_2^{W.n}")
    return U.dim + W.dim - rank_of(U.basis + W.basis)


def _require_sumfree(F: VectorialFunction, k: int, jobs: int, cap: Optional[int]) -> None:
    result = is_sumfree(F, k, jobs=jobs, cap=cap)
    if not result.sumfree:
        raise PreconditionError(
            f"F is not {k}th-order sum-free: witness vanishes on "
            f"{result.counterexample.format()}",
            flat=result.counterexample,
        )


def witness_coloring(
    F: VectorialFunction, k: int, jobs: int = 1, cap: Optional[int] = None
) -> ColoringCertificate:
    """Color each k-space U of F_2^n by the witness of U."""
    _require_sumfree(F, k, jobs, cap)
    assignment: dict[tuple[int, ...], int] = {}
    for block in iter_witness_blocks(F, k):
        for basis, value in zip(block.bases, block.witnesses[:, 0]):
            assignment[basis] = int(value)
    logger.info("witness coloring of J_2(%d,%d): %d vertices", F.n, k, len(assignment))
    return ColoringCertificate(
        GrassmannParams.grassmann(F.n, k), F.m, assignment, "witness", F
    )


def extended_coloring(
    F: VectorialFunction, k: int, jobs: int = 1, cap: Optional[int] = None
) -> ColoringCertificate:
    """Coloring c_F of J_2(n+1,k) from a {k-1,k}-order sum-free F of degree k.

    F_2^(n+1) = F_2^n x F_2 with the new coordinate at bit n and
    H = {bit n clear}. Spaces inside H get their witness; the others get the
    sum of F over the first components of U minus H.
    """
    n = F.n
    if not 2 <= k < n:
        raise PreconditionError(f"need 2 <= k < n, got k={k}, n={n}")
    degree = algebraic_degree(F)
    if degree != k:
        raise PreconditionError(f"F has algebraic degree {degree}, need exactly {k}")
    _require_sumfree(F, k - 1, jobs, cap)
    _require_sumfree(F, k, jobs, cap)
    top = 1 << n
    assignment: dict[tuple[int, ...], int] = {}
    for block in iter_witness_blocks(F, k):
        for basis, value in zip(block.bases, block.witnesses[:, 0]):
            assignment[basis] = int(value)
    # U not in H: rows (bit n | a, R), a reduced against the (k-1)-space R
    for block in iter_witness_blocks(F, k - 1):
        for basis, row in zip(block.bases, block.witnesses):
            R = Subspace(n, basis)
            for a in R.coset_representatives():
                a = int(a)
                assignment[(top | a,) + basis] = int(row[a])
    logger.info("extended coloring of J_2(%d,%d): %d vertices", n + 1, k, len(assignment))
    return ColoringCertificate(
        GrassmannParams.grassmann(n + 1, k), F.m, assignment, "extended", F
    )


class ColoringReport(BaseModel):
    n: int
    k: int
    t: int
    m: int
    producer: str
    vertices: int
    valid: bool
    colors_used: int
    lower_bound: int
    first_conflict: Optional[tuple[str, str]] = None
    sampled_pairs: int = 0
    case_counts: dict[str, int] = {}
    case_failures: int = 0
    problems: list[str] = []


def _check_complete(cert: ColoringCertificate) -> list[str]:
    p = cert.params
    problems = []
    if len(cert.assignment) != p.vertex_count:
        problems.append(
            f"assignment has {len(cert.assignment)} vertices, J_2({p.n},{p.k},{p.t}) "
            f"has {p.vertex_count}"
        )
    for basis, color in cert.assignment.items():
        if len(basis) != p.k or Subspace.from_vectors(p.n, basis).basis != basis:
            problems.append(f"{','.join(f'{v:#x}' for v in basis)} is not a canonical {p.k}-space")
            break
        if not 0 < color < (1 << cert.m):
            problems.append(f"color {color:#x} is not a nonzero {cert.m}-bit value")
            break
    return problems


def _find_conflict(cert: ColoringCertificate) -> Optional[tuple[Subspace, Subspace]]:
    """First adjacent same-colored pair, scanning color classes in order."""
    p = cert.params
    buckets: dict[int, list[tuple[int, ...]]] = defaultdict(list)
    for basis, color in cert.assignment.items():
        buckets[color].append(basis)
    for color in sorted(buckets):
        members = sorted(buckets[color], reverse=True)
        for i, a in enumerate(members):
            for b in members[i + 1 :]:
                if 2 * p.k - rank_of(a + b) >= p.t:
                    return Subspace(p.n, a), Subspace(p.n, b)
    return None


def _random_neighbour(U: Subspace, rng: random.Random) -> Subspace:
    k, N = U.dim, U.n
    index = rng.randrange(gaussian_binomial(k, k - 1))
    local = next(iter_bases(k, k - 1, index, index + 1))
    basis = U.ordered_basis()
    T = [embed(v, basis) for v in local]
    while True:
        y = rng.randrange(1, 1 << N)
        if not U.contains(y):
            return Subspace.from_vectors(N, T + [y])


def _outside(U: Subspace, W: Subspace) -> int:
    """Some basis vector of U that is not in W."""
    return next(v for v in U.basis if not W.contains(v))


def _inside_h(U: Subspace, top: int) -> Subspace:
    return Subspace.from_vectors(U.n, [int(x) for x in U.points() if x < top])


def _case_sum(F: VectorialFunction, U1: Subspace, U2: Subspace) -> tuple[str, int]:
    """Re-derive c(U1) + c(U2) for adjacent U1, U2 from the case split.

    Each case yields a single flat of F_2^n whose witness is the sum.
    """
    n = F.n
    top = 1 << n
    mask = top - 1
    T = Flat(U1, 0).intersection(Flat(U2, 0)).direction
    in_h1 = U1.basis[0] < top
    in_h2 = U2.basis[0] < top
    if in_h1 and in_h2:
        u1, u2 = _outside(U1, T), _outside(U2, T)
        direction = Subspace.from_vectors(n, list(T.basis) + [u1 ^ u2])
        return "both-in-H", witness(F, Flat.through(direction, u1))
    if in_h1 or in_h2:
        if in_h2:
            U1, U2 = U2, U1
        u1 = _outside(U1, T)
        y = U2.basis[0]
        direction = Subspace.from_vectors(n, T.basis)
        return "one-in-H", witness(F, Flat.through(direction, u1 ^ (y & mask)))
    if T.basis[0] < top:
        a = U1.basis[0] ^ U2.basis[0]
        direction = Subspace.from_vectors(n, list(T.basis) + [a])
        return "meet-in-H", witness(F, direction.as_flat())
    T0 = _inside_h(T, top)
    h1 = _outside(_inside_h(U1, top), T0)
    h2 = _outside(_inside_h(U2, top), T0)
    t = T.basis[0]
    direction = Subspace.from_vectors(n, list(T0.basis) + [h1 ^ h2])
    return "meet-outside-H", witness(F, Flat.through(direction, h1 ^ (t & mask)))


def verify_coloring(
    cert: ColoringCertificate,
    pair_sample: int = DEFAULT_PAIR_SAMPLE,
    seed: int = 2024,
) -> ColoringReport:
    """Check that no two adjacent vertices share a color.

    Conflicts only occur inside a color class, so vertices are bucketed by
    color first. Extended colorings additionally re-derive the color sum of
    ``pair_sample`` random adjacent pairs through the four-case split.
    """
    p = cert.params
    problems = _check_complete(cert)
    report = ColoringReport(
        n=p.n,
        k=p.k,
        t=p.t,
        m=cert.m,
        producer=cert.producer,
        vertices=len(cert.assignment),
        valid=False,
        colors_used=cert.colors_used,
        lower_bound=chromatic_lower_bound(p.n, p.k, p.t),
        problems=problems,
    )
    if problems:
        return report
    conflict = _find_conflict(cert)
    if conflict is not None:
        report.first_conflict = (conflict[0].format(), conflict[1].format())
    report.valid = conflict is None

    if cert.producer == "extended" and cert.function is not None and p.k >= 2:
        rng = random.Random(seed)
        vertices = sorted(cert.assignment)
        counts: Counter[str] = Counter()
        failures = 0
        for _ in range(pair_sample):
            U1 = Subspace(p.n, rng.choice(vertices))
            U2 = _random_neighbour(U1, rng)
            case, derived = _case_sum(cert.function, U1, U2)
            counts[case] += 1
            if derived == 0 or derived != cert.color(U1) ^ cert.color(U2):
                failures += 1
                logger.warning("case %s fails for %s / %s", case, U1.format(), U2.format())
        report.sampled_pairs = pair_sample
        report.case_counts = dict(sorted(counts.items()))
        report.case_failures = failures
        report.valid = report.valid and failures == 0
    logger.info(
        "J_2(%d,%d,%d): valid=%s with %d colors", p.n, p.k, p.t, report.valid, report.colors_used
    )
    return report


def chromatic_lower_bound(n: int, k: int, t: int) -> int:
    GrassmannParams(n, k, t)
    if t == 0:
        return gaussian_binomial(n, k)
    return max(gaussian_binomial(n - t, k - t), gaussian_binomial(2 * k - t, k - t))


def chromatic_upper_bound(n: int, k: int) -> int:
    """Gauss(n,1), a general upper bound on chi(J_2(n,k))."""
    GrassmannParams.grassmann(n, k)
    return gaussian_binomial(n, 1)


def known_chromatic_number(n: int, k: int) -> Optional[int]:
    """Exact chi(J_2(n,2)) where known; None otherwise."""
    if k != 2 or n < 3:
        return None
    base = gaussian_binomial(n - 1, 1)
    return base if n % 2 == 0 else base + 3
