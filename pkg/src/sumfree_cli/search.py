"""Constructions and searches for sum-free functions.

Carlet power maps, the inverse-of-Gold check, catalog profiling, a small
exhaustive nonexistence search and the derivative restriction chain.
"""

import logging
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from math import gcd
from typing import Literal, Optional

from pydantic import BaseModel, computed_field

from sumfree_cli.errors import CapExceededError, PreconditionError
from sumfree_cli.flats import (
    Subspace,
    count_vanishing_flats,
    derivative_restriction,
    enumerate_flats,
    is_sumfree,
    order_profile,
)
from sumfree_cli.gf2n import FieldContext
from sumfree_cli.vecfun import (
    VectorialFunction,
    algebraic_degree,
    compose,
    is_apn,
    is_nondegenerate,
    power_map,
)

logger = logging.getLogger(__name__)

DEFAULT_NODE_BUDGET = 10**9


def reduce_exponent(e: int, n: int) -> int:
    """Smallest positive exponent with the same power map on GF(2^n)."""
    if e <= 0:
        return e
    return (e - 1) % ((1 << n) - 1) + 1


def carlet_exponent(n: int, k: int, j: int) -> int:
    """1 + 2^j + ... + 2^(j(k-1)) reduced modulo 2^n - 1."""
    return reduce_exponent(sum(1 << (j * i) for i in range(k)), n)


def carlet_function(
    ctx: FieldContext, k: int, j: int, allow_any_j: bool = False
) -> VectorialFunction:
    """F_{k,j}(x) = x^((2^(jk)-1)/(2^j-1)), kth-order sum-free when gcd(j,n) = 1."""
    n = ctx.n
    if not 1 <= k <= n:
        raise PreconditionError(f"need 1 <= k <= n, got k={k}, n={n}")
    if j < 1:
        raise PreconditionError(f"need j >= 1, got {j}")
    if gcd(j, n) != 1 and not allow_any_j:
        raise PreconditionError(f"gcd(j={j}, n={n}) != 1; pass allow_any_j to override")
    return power_map(ctx, carlet_exponent(n, k, j))


class GoldInverseReport(BaseModel):
    n: int
    i: int
    gold_exponent: int
    inverse_exponent: int
    composes_to_identity: bool
    orders: list[int]
    sumfree_orders: list[int]

    @computed_field
    @property
    def passed(self) -> bool:
        return self.composes_to_identity and set(self.orders) <= set(self.sumfree_orders)


def gold_inverse_check(
    ctx: FieldContext, i: int, jobs: int = 1, cap: Optional[int] = None
) -> GoldInverseReport:
    """Check that F_{m+1,2i} inverts x^(2^i+1) on GF(2^(2m+1)) and is {2,m+1}-order sum-free."""
    n = ctx.n
    if n % 2 == 0:
        raise PreconditionError(f"n={n} must be odd")
    if i < 1 or gcd(2 * i, n) != 1:
        raise PreconditionError(f"need gcd(2i, n) = 1, got i={i}, n={n}")
    m = (n - 1) // 2
    gold_exp = reduce_exponent((1 << i) + 1, n)
    inverse = carlet_function(ctx, m + 1, 2 * i)
    gold = power_map(ctx, gold_exp)
    identity = compose(inverse, gold)
    orders = sorted({2, m + 1})
    return GoldInverseReport(
        n=n,
        i=i,
        gold_exponent=gold_exp,
        inverse_exponent=carlet_exponent(n, m + 1, 2 * i),
        composes_to_identity=identity.values() == list(range(ctx.order)),
        orders=orders,
        sumfree_orders=[k for k in orders if is_sumfree(inverse, k, jobs=jobs, cap=cap).sumfree],
    )


# --- catalogs ----------------------------------------------------------


@dataclass(frozen=True)
class CatalogEntry:
    label: str
    function: VectorialFunction
    tags: tuple[str, ...] = ()


@dataclass
class FunctionCatalog:
    """Functions sharing (n, m), each with a unique label."""

    entries: list[CatalogEntry]
    source: str = ""
    modulus: Optional[int] = None

    def __post_init__(self):
        labels = [e.label for e in self.entries]
        if len(set(labels)) != len(labels):
            raise PreconditionError("catalog labels must be unique")
        dims = {(e.function.n, e.function.m) for e in self.entries}
        if len(dims) > 1:
            raise PreconditionError(f"catalog mixes dimensions {sorted(dims)}")

    @property
    def dims(self) -> Optional[tuple[int, int]]:
        if not self.entries:
            return None
        f = self.entries[0].function
        return f.n, f.m

    def __len__(self) -> int:
        return len(self.entries)

    def get(self, label: str) -> CatalogEntry:
        for entry in self.entries:
            if entry.label == label:
                return entry
        raise KeyError(label)


class ProfileRow(BaseModel):
    label: str
    tags: list[str] = []
    degree: int
    apn: bool
    orders: list[int]
    nondegenerate: dict[int, bool]
    vanishing_flats: dict[int, int]
    skipped: dict[int, str] = {}
    seconds: float


class ProfileReport(BaseModel):
    source: str
    n: Optional[int] = None
    m: Optional[int] = None
    kmin: int
    kmax: int
    rows: list[ProfileRow] = []

    def with_order(self, k: int) -> list[str]:
        return [row.label for row in self.rows if k in row.orders]


def _profile_entry(
    entry: CatalogEntry, kmin: int, kmax: int, cap: Optional[int]
) -> ProfileRow:
    F = entry.function
    start = time.perf_counter()
    vanishing: dict[int, int] = {}
    skipped: dict[int, str] = {}
    for k in range(max(kmin, 1), min(kmax, F.n) + 1):
        try:
            vanishing[k] = count_vanishing_flats(F, k, cap=cap)
        except CapExceededError as e:
            logger.warning("%s: order %d skipped: %s", entry.label, k, e)
            skipped[k] = str(e)
    orders = sorted(k for k, count in vanishing.items() if count == 0)
    return ProfileRow(
        label=entry.label,
        tags=list(entry.tags),
        degree=algebraic_degree(F),
        apn=is_apn(F),
        orders=orders,
        nondegenerate={k: is_nondegenerate(F, k) for k in orders},
        vanishing_flats=vanishing,
        skipped=skipped,
        seconds=round(time.perf_counter() - start, 3),
    )


def profile_catalog(
    catalog: FunctionCatalog,
    kmin: int,
    kmax: int,
    jobs: int = 1,
    cap: Optional[int] = None,
) -> ProfileReport:
    """Orders in [kmin, kmax] at which each entry is sum-free.

    An order whose flat count is over ``cap`` is recorded as skipped for that
    entry; entries are profiled in parallel when ``jobs`` > 1.
    """
    if kmin > kmax:
        raise PreconditionError(f"empty order range [{kmin}, {kmax}]")
    dims = catalog.dims
    report = ProfileReport(
        source=catalog.source,
        n=dims[0] if dims else None,
        m=dims[1] if dims else None,
        kmin=kmin,
        kmax=kmax,
    )
    args = [(e, kmin, kmax, cap) for e in catalog.entries]
    if jobs > 1 and len(args) > 1:
        with ProcessPoolExecutor(max_workers=min(jobs, len(args))) as pool:
            report.rows = list(pool.map(_profile_entry, *zip(*args)))
    else:
        report.rows = [_profile_entry(*a) for a in args]
    return report


# --- nonexistence ------------------------------------------------------


NonexistenceStatus = Literal["exists", "nonexistent", "budget-exhausted"]


class NonexistenceResult(BaseModel):
    n: int
    m: int
    k: int
    status: NonexistenceStatus
    nodes: int
    budget: int
    witness: Optional[list[int]] = None
    seconds: float = 0.0


@dataclass
class _Dfs:
    n: int
    m: int
    buckets: list[list[tuple[int, ...]]]
    budget: int
    values: list[int] = field(default_factory=list)
    nodes: int = 0

    def run(self, point: int, span_dim: int) -> bool:
        if point == 1 << self.n:
            return True
        # new values stay in span(e_0..e_{d-1}) or are e_d
        limit = 1 << span_dim
        candidates = list(range(limit))
        if span_dim < self.m:
            candidates.append(limit)
        for v in candidates:
            self.nodes += 1
            if self.nodes > self.budget:
                raise CapExceededError("nonexistence search nodes", self.budget)
            self.values.append(v)
            if self._consistent(point):
                if self.run(point + 1, span_dim + (v == limit)):
                    return True
            self.values.pop()
        return False

    def _consistent(self, point: int) -> bool:
        values = self.values
        for others in self.buckets[point]:
            acc = values[point]
            for x in others:
                acc ^= values[x]
            if acc == 0:
                return False
        return True


def exhaustive_nonexistence(
    n: int, m: int, k: int, budget: int = DEFAULT_NODE_BUDGET
) -> NonexistenceResult:
    """Depth-first search for a kth-order sum-free (n,m)-function.

    Points are assigned in increasing order; every k-flat is checked when its
    largest point is assigned. F(0) = 0 and output bases are normalised,
    which loses no solutions since sum-freedom at order k >= 1 is preserved
    by adding constants and by invertible maps on the outputs.
    """
    if not 1 <= k <= n:
        raise PreconditionError(f"need 1 <= k <= n, got k={k}, n={n}")
    if m < 0:
        raise PreconditionError(f"invalid m={m}")
    start = time.perf_counter()
    buckets: list[list[tuple[int, ...]]] = [[] for _ in range(1 << n)]
    for flat in enumerate_flats(n, k, cap=None):
        points = sorted(int(p) for p in flat.points())
        buckets[points[-1]].append(tuple(points[:-1]))
    logger.debug("nonexistence search (%d,%d,%d): %d flats", n, m, k, sum(map(len, buckets)))
    dfs = _Dfs(n, m, buckets, budget)
    try:
        # F(0) = 0
        dfs.values.append(0)
        dfs.nodes = 1
        found = dfs._consistent(0) and dfs.run(1, 0)
        status: NonexistenceStatus = "exists" if found else "nonexistent"
    except CapExceededError:
        found = False
        status = "budget-exhausted"
        logger.warning("node budget %d exhausted", budget)
    return NonexistenceResult(
        n=n,
        m=m,
        k=k,
        status=status,
        nodes=dfs.nodes,
        budget=budget,
        witness=list(dfs.values) if found else None,
        seconds=round(time.perf_counter() - start, 3),
    )


# --- bounds and restrictions ---------------------------------------------


class BoundCheck(BaseModel):
    k: int
    required_m: int
    holds: bool


class BoundReport(BaseModel):
    n: int
    m: int
    orders: list[int]
    checks: list[BoundCheck]
    consistent: bool


def bound_consistency_report(
    F: VectorialFunction, jobs: int = 1, cap: Optional[int] = None
) -> BoundReport:
    """Check m >= max(n-k+2, k+2) for every order 2 <= k <= n-2 in K_F.

    A failing check would be a counterexample to the lower bound on m.
    """
    profile = order_profile(F, jobs=jobs, cap=cap)
    checks = []
    for k in sorted(profile.orders):
        if 2 <= k <= F.n - 2:
            required = max(F.n - k + 2, k + 2)
            checks.append(BoundCheck(k=k, required_m=required, holds=F.m >= required))
    consistent = all(c.holds for c in checks)
    if not consistent:
        logger.error("lower bound on m violated: %s", [c for c in checks if not c.holds])
    return BoundReport(
        n=F.n, m=F.m, orders=sorted(profile.orders), checks=checks, consistent=consistent
    )


class RestrictionStep(BaseModel):
    n: int
    order: int
    direction: int
    sumfree: bool


@dataclass
class RestrictionChain:
    functions: list[VectorialFunction]
    steps: list[RestrictionStep]

    @property
    def final(self) -> VectorialFunction:
        return self.functions[-1]

    @property
    def holds(self) -> bool:
        return all(step.sumfree for step in self.steps)


def restriction_chain(
    F: VectorialFunction, k: int, j: int, jobs: int = 1, cap: Optional[int] = None
) -> RestrictionChain:
    """Apply j single-direction derivative restrictions to a kth-order sum-free F.

    Each step differentiates along e_0 and restricts to span(e_1, ...,
    e_{n-1}); step i must give an (n-i, m)-function sum-free at order k-i.
    """
    if not 1 <= j < k:
        raise PreconditionError(f"need 1 <= j < k, got j={j}, k={k}")
    if not is_sumfree(F, k, jobs=jobs, cap=cap).sumfree:
        raise PreconditionError(f"F is not {k}th-order sum-free")
    functions = [F]
    steps = []
    current = F
    for i in range(1, j + 1):
        complement = Subspace.from_vectors(current.n, [1]).complement()
        current = derivative_restriction(current, [1], complement)
        ok = is_sumfree(current, k - i, jobs=jobs, cap=cap).sumfree
        functions.append(current)
        steps.append(RestrictionStep(n=current.n, order=k - i, direction=1, sumfree=ok))
    return RestrictionChain(functions, steps)
