"""Reproducible claim checks run by ``sumfree reproduce``.

Each claim runs a pipeline end to end and returns a PASS/FAIL verdict with
a one-line detail; reports use ``CLAIM <id> RESULT <PASS|FAIL> DETAIL <...>``.
"""

import logging
import random
import time
from dataclasses import dataclass
from importlib import resources
from pathlib import Path
from typing import Callable, Optional

import numpy as np
from pydantic import BaseModel

from sumfree_cli.config import SumfreeConfig
from sumfree_cli.flats import (
    coset_witnesses_distinct,
    enumerate_flats,
    enumerate_subspaces,
    is_sumfree,
    iter_witness_blocks,
    order_profile,
    witness,
)
from sumfree_cli.gf2n import FieldContext
from sumfree_cli.grassmann import (
    chromatic_lower_bound,
    extended_coloring,
    known_chromatic_number,
    verify_coloring,
    witness_coloring,
)
from sumfree_cli.rmcode import (
    BinaryCode,
    incidence_vector,
    minimum_weight_codewords,
    rm_dimension,
)
from sumfree_cli.search import (
    carlet_function,
    exhaustive_nonexistence,
    gold_inverse_check,
    profile_catalog,
    restriction_chain,
)
from sumfree_cli.subcode import (
    build_subcode,
    certify_min_distance,
    extract_function,
    min_distance_exhaustive,
)
from sumfree_cli.utils.formats import parse_catalog, write_certificate, write_matrix
from sumfree_cli.vecfun import (
    VectorialFunction,
    algebraic_degree,
    higher_derivative,
    is_nondegenerate,
    mobius,
    power_map,
)

logger = logging.getLogger(__name__)


class ClaimResult(BaseModel):
    claim_id: str
    criterion: int
    passed: bool
    detail: str
    seconds: float = 0.0
    artifacts: list[str] = []

    def line(self) -> str:
        verdict = "PASS" if self.passed else "FAIL"
        return f"CLAIM {self.claim_id} RESULT {verdict} DETAIL {self.detail}"


@dataclass
class ClaimContext:
    config: SumfreeConfig
    artifact_dir: Optional[Path] = None

    def artifact(self, name: str) -> Optional[Path]:
        if self.artifact_dir is None:
            return None
        self.artifact_dir.mkdir(parents=True, exist_ok=True)
        return self.artifact_dir / name


@dataclass(frozen=True)
class Claim:
    claim_id: str
    criterion: int
    summary: str
    run: Callable[[ClaimContext], tuple[bool, str, list[str]]]


def sample_catalog_text() -> str:
    return resources.files("sumfree_cli.data").joinpath("catalog_n5.txt").read_text()


def _power(n: int, exponent: int) -> VectorialFunction:
    return power_map(FieldContext.default(n), exponent)


# --- claims ------------------------------------------------------------


def _carlet_sumfree(ctx: ClaimContext):
    cfg = ctx.config
    failures = []
    checked = 0
    for n in range(4, 9):
        field = FieldContext.default(n)
        for k in range(2, n + 1):
            F = carlet_function(field, k, 1)
            checked += 1
            if not is_sumfree(F, k, jobs=cfg.jobs, cap=cfg.flat_cap).sumfree:
                failures.append(f"n={n},k={k}")
    detail = f"{checked} pairs (n,k) with 4<=n<=8, 2<=k<=n"
    return not failures, detail + (f"; failing {failures}" if failures else ""), []


def _inverse_profile(ctx: ClaimContext):
    profile = order_profile(_power(5, 30), kmin=1, kmax=4, cap=ctx.config.flat_cap)
    orders = sorted(profile.orders)
    return orders == [1, 2, 3, 4], f"K_F(x^30, n=5) in [1,4] = {orders}", []


# x^11 and x^13 are Frobenius twists of x^21 on GF(2^5)
THIRD_ORDER_N5 = ["x^7", "x^11", "x^13", "x^21", "x^30"]


def _multiorder_n5(ctx: ClaimContext):
    catalog = parse_catalog(sample_catalog_text(), "catalog_n5.txt")
    report = profile_catalog(catalog, 2, 4, jobs=ctx.config.jobs, cap=ctx.config.flat_cap)
    third = report.with_order(3)
    degrees = {row.label: row.degree for row in report.rows}
    ok = sorted(third) == sorted(THIRD_ORDER_N5) and degrees["x^7"] == 3 and degrees["x^21"] == 3
    detail = f"3rd-order sum-free: {', '.join(third)}; deg x^7={degrees['x^7']}, deg x^21={degrees['x^21']}"
    return ok, detail, []


def _subcode_claim(n: int, r: int):
    def run(ctx: ClaimContext):
        cfg = ctx.config
        F = _power(n, (1 << (n - r)) - 1)
        bundle = build_subcode(F, r, jobs=cfg.jobs, flat_cap=cfg.flat_cap)
        rm = BinaryCode.reed_muller(r, n)
        dim = bundle.code.dimension
        distance = min_distance_exhaustive(bundle.code, cfg.codeword_dim_cap, cfg.jobs)
        artifacts = []
        path = ctx.artifact(f"subcode-{n}-{r}.pcheck")
        if path is not None:
            write_matrix(bundle.code.parity_check, path)
            artifacts.append(str(path))
        ok = dim == rm.dimension - n and distance == bundle.expected_distance
        return ok, f"dim={dim} (RM {rm.dimension} - {n}), d={distance}", artifacts

    return run


CERTIFY_CASES = [(6, 3), (6, 4), (7, 2), (7, 3), (7, 4), (8, 2)]


def _certify_distance(ctx: ClaimContext):
    cfg = ctx.config
    parts = []
    ok = True
    for n, r in CERTIFY_CASES:
        F = _power(n, (1 << (n - r)) - 1)
        bundle = build_subcode(F, r, jobs=cfg.jobs, flat_cap=cfg.flat_cap)
        cert = certify_min_distance(bundle, cfg.pair_search_cap, cfg.jobs, cfg.flat_cap)
        codeword = int(cert.witness_codeword, 16) if cert.witness_codeword else 0
        good = (
            cert.certified
            and cert.lower == bundle.expected_distance
            and codeword.bit_count() == cert.upper
            and bundle.code.contains(codeword)
        )
        ok = ok and good
        parts.append(f"({n},{r})={cert.lower}..{cert.upper}")
    return ok, " ".join(parts), []


SUBCODE_CASES = [(5, 2), (5, 3), (6, 2)]


def _extract_roundtrip(ctx: ClaimContext):
    cfg = ctx.config
    parts = []
    ok = True
    for n, r in SUBCODE_CASES:
        F = _power(n, (1 << (n - r)) - 1)
        bundle = build_subcode(F, r, jobs=cfg.jobs, flat_cap=cfg.flat_cap)
        G = extract_function(bundle.code, r).function
        good = G == F and is_sumfree(G, n - r).sumfree and is_nondegenerate(G, n - r)
        ok = ok and good
        parts.append(f"({n},{r}):{'identity' if G == F else 'differs'}")
    return ok, " ".join(parts), []


def _witness_colorings(ctx: ClaimContext):
    cfg = ctx.config
    parts = []
    ok = True
    for n in (5, 6, 7):
        for k in range(2, n):
            F = _power(n, (1 << k) - 1)
            cert = witness_coloring(F, k, cfg.jobs, cfg.flat_cap)
            report = verify_coloring(cert, cfg.pair_sample, cfg.seed)
            good = (
                report.valid
                and report.colors_used <= (1 << n) - 1
                and report.colors_used >= chromatic_lower_bound(n, k, k - 1)
            )
            ok = ok and good
            parts.append(f"J2({n},{k}):{report.colors_used}")
    return ok, " ".join(parts), []


def _extended_claim(k: int, exponent: int):
    def run(ctx: ClaimContext):
        cfg = ctx.config
        F = _power(5, exponent)
        cert = extended_coloring(F, k, cfg.jobs, cfg.flat_cap)
        report = verify_coloring(cert, cfg.pair_sample, cfg.seed)
        artifacts = []
        path = ctx.artifact(f"J2-6-{k}.cert")
        if path is not None:
            write_certificate(cert, path)
            artifacts.append(str(path))
        ok = report.valid and report.vertices == cert.params.vertex_count and report.colors_used <= 31
        detail = f"{report.vertices} vertices, {report.colors_used} colors, {report.case_failures} case failures"
        known = known_chromatic_number(6, k)
        if known is not None:
            ok = ok and report.colors_used == known
            detail += f", known optimum {known}"
        return ok, detail, artifacts

    return run


def _nonexistence(ctx: ClaimContext):
    result = exhaustive_nonexistence(4, 3, 2, ctx.config.node_budget)
    return result.status == "nonexistent", f"status={result.status} nodes={result.nodes}", []


# --- property suite ------------------------------------------------------


def mobius_is_involution(rng: random.Random, trials: int = 20) -> bool:
    for _ in range(trials):
        n = rng.randint(1, 8)
        table = np.array([rng.randrange(1 << 8) for _ in range(1 << n)], dtype=np.uint32)
        if not np.array_equal(mobius(mobius(table)), table):
            return False
    return True


def witness_matches_derivative(F: VectorialFunction, k: int) -> bool:
    """witness(F, U + x) = D_U F(x) for every flat."""
    for block in iter_witness_blocks(F, k):
        for basis, row in zip(block.bases, block.witnesses):
            if not np.array_equal(higher_derivative(F, basis).table, row):
                return False
    for A in enumerate_flats(F.n, k):
        if witness(F, A) != int(higher_derivative(F, A.direction.basis).table[A.rep]):
            return False
    return True


def hyperplane_criterion_agrees(F: VectorialFunction, k: int) -> bool:
    """kth-order sum-free iff every (k-1)-space has pairwise distinct coset witnesses."""
    distinct = all(coset_witnesses_distinct(F, U) for U in enumerate_subspaces(F.n, k - 1))
    return distinct == is_sumfree(F, k).sumfree


def random_low_degree(n: int, m: int, degree: int, rng: random.Random) -> VectorialFunction:
    """Random (n,m)-function whose ANF has only monomials of weight <= degree."""
    coeffs = np.zeros(1 << n, dtype=np.uint32)
    for u in range(1 << n):
        if u.bit_count() <= degree:
            coeffs[u] = rng.randrange(1 << m)
    return VectorialFunction(n, m, mobius(coeffs))


def special_condition_holds(F: VectorialFunction, k: int) -> bool:
    """For deg F = k: w(U) + w(x+U) + w(y+U) = w(x+y+U) on (k-1)-spaces U."""
    idx = np.arange(1 << F.n)
    for U in enumerate_subspaces(F.n, k - 1):
        D = higher_derivative(F, U.basis).table
        lhs = D[0] ^ D[:, None] ^ D[None, :]
        if not np.array_equal(lhs, D[idx[:, None] ^ idx[None, :]]):
            return False
    return True


MIN_WEIGHT_CASES = ((2, 4), (2, 5), (3, 5), (2, 6))


def min_weight_words_are_flats(r: int, n: int, cap: Optional[int] = None) -> bool:
    weight, words = minimum_weight_codewords(BinaryCode.reed_muller(r, n), cap)
    flats = sorted(incidence_vector(A) for A in enumerate_flats(n, n - r))
    return weight == 1 << (n - r) and words == flats


def _properties(ctx: ClaimContext):
    cfg = ctx.config
    rng = random.Random(cfg.seed)
    checks: dict[str, bool] = {}
    checks["mobius"] = mobius_is_involution(rng)
    checks["witness-derivative"] = all(
        witness_matches_derivative(_power(5, e), k) for e, k in ((7, 3), (3, 2))
    )
    checks["k-1-flats"] = all(
        hyperplane_criterion_agrees(_power(n, e), k)
        for n in (4, 5, 6)
        for e in (3, 7, 2 ** (n - 1) - 1)
        for k in (2, 3)
    )
    low = True
    for n in (4, 5, 6):
        for k in (2, 3, 4):
            G = random_low_degree(n, n, k - 1, rng)
            low = low and algebraic_degree(G) < k and not is_sumfree(G, k).sumfree
            F = carlet_function(FieldContext.default(n), k, 1)
            low = low and algebraic_degree(F) >= k
    checks["degree-below-k"] = low
    checks["special-condition"] = special_condition_holds(_power(5, 7), 3)
    chains = True
    for n in (5, 6, 7):
        for k in (2, 3, 4):
            if k + 1 <= n:
                F = carlet_function(FieldContext.default(n), k + 1, 1)
                chains = chains and restriction_chain(F, k + 1, 1).holds
    checks["restriction"] = chains
    checks["gold-inverse"] = gold_inverse_check(FieldContext.default(5), 1).passed
    checks["min-weight-flats"] = all(
        min_weight_words_are_flats(r, n, max(cfg.codeword_dim_cap, rm_dimension(r, n)))
        for r, n in MIN_WEIGHT_CASES
    )
    failed = [name for name, ok in checks.items() if not ok]
    detail = f"{len(checks) - len(failed)}/{len(checks)} property checks"
    return not failed, detail + (f"; failing {failed}" if failed else ""), []


CLAIMS: list[Claim] = [
    Claim("carlet-sumfree", 1, "x^(2^k-1) is kth-order sum-free for 4<=n<=8", _carlet_sumfree),
    Claim("inverse-profile", 2, "K_F of x^30 on GF(2^5) is {1,2,3,4}", _inverse_profile),
    Claim("multiorder-n5", 3, "3rd-order sum-free members of the n=5 catalog", _multiorder_n5),
    Claim("subcode-5-2", 4, "C_F for (n,r)=(5,2): dim 11, d 12", _subcode_claim(5, 2)),
    Claim("subcode-5-3", 4, "C_F for (n,r)=(5,3): dim 21, d 6", _subcode_claim(5, 3)),
    Claim("subcode-6-2", 4, "C_F for (n,r)=(6,2): dim 16, d 24", _subcode_claim(6, 2)),
    Claim("certify-distance", 5, "certificate-mode d(C_F) up to n=8", _certify_distance),
    Claim("extract-roundtrip", 6, "extract(build(F)) = F", _extract_roundtrip),
    Claim("coloring-witness", 7, "witness colorings of J_2(n,k), n=5,6,7", _witness_colorings),
    Claim("coloring-J2-6-3", 8, "extended coloring of J_2(6,3) from x^7", _extended_claim(3, 7)),
    Claim("coloring-J2-6-2", 8, "extended coloring of J_2(6,2) from x^3", _extended_claim(2, 3)),
    Claim("nonexist-4-3-2", 9, "no 2nd-order sum-free (4,3)-function", _nonexistence),
    Claim("properties", 10, "property suite", _properties),
]


def claim_ids() -> list[str]:
    return [claim.claim_id for claim in CLAIMS]


def get_claim(claim_id: str) -> Claim:
    for claim in CLAIMS:
        if claim.claim_id == claim_id:
            return claim
    raise KeyError(f"unknown claim {claim_id!r}; valid ids: {', '.join(claim_ids())}")


def run_claim(claim_id: str, context: ClaimContext) -> ClaimResult:
    claim = get_claim(claim_id)
    logger.info("running claim %s", claim_id)
    start = time.perf_counter()
    try:
        passed, detail, artifacts = claim.run(context)
    except Exception as e:
        logger.exception("claim %s raised", claim_id)
        passed, detail, artifacts = False, f"error: {e}", []
    return ClaimResult(
        claim_id=claim_id,
        criterion=claim.criterion,
        passed=passed,
        detail=detail,
        seconds=round(time.perf_counter() - start, 3),
        artifacts=artifacts,
    )
