import numpy as np
import pytest

from sumfree_cli.claims import THIRD_ORDER_N5, sample_catalog_text
from sumfree_cli.errors import PreconditionError
from sumfree_cli.flats import enumerate_flats, is_sumfree
from sumfree_cli.gf2n import FieldContext
from sumfree_cli.search import (
    CatalogEntry,
    FunctionCatalog,
    bound_consistency_report,
    carlet_exponent,
    carlet_function,
    exhaustive_nonexistence,
    gold_inverse_check,
    profile_catalog,
    reduce_exponent,
    restriction_chain,
)
from sumfree_cli.utils.formats import parse_catalog
from sumfree_cli.vecfun import VectorialFunction, algebraic_degree, is_nondegenerate, power_map


def test_carlet_exponents():
    assert carlet_exponent(5, 3, 1) == 7
    assert carlet_exponent(5, 3, 2) == 21
    assert carlet_exponent(6, 4, 1) == 15
    assert reduce_exponent(62, 5) == 31
    assert reduce_exponent(63, 5) == 1


@pytest.mark.parametrize("n", [4, 5, 6])
def test_carlet_family_is_sumfree(n):
    ctx = FieldContext.default(n)
    for k in range(2, n + 1):
        F = carlet_function(ctx, k, 1)
        assert is_sumfree(F, k).sumfree, (n, k)


def test_carlet_requires_coprime_step(gf64):
    with pytest.raises(PreconditionError, match="gcd"):
        carlet_function(gf64, 2, 2)
    F = carlet_function(gf64, 2, 2, allow_any_j=True)
    assert algebraic_degree(F) == 2


@pytest.mark.parametrize("i,inverse", [(1, 21), (2, 25)])
def test_gold_inverse(gf32, i, inverse):
    report = gold_inverse_check(gf32, i)
    assert report.inverse_exponent == inverse
    assert report.composes_to_identity
    assert report.orders == [2, 3]
    assert report.passed


def test_gold_inverse_needs_odd_n(gf64):
    with pytest.raises(PreconditionError):
        gold_inverse_check(gf64, 1)


def test_sample_catalog_profile():
    catalog = parse_catalog(sample_catalog_text(), "catalog_n5.txt")
    assert catalog.dims == (5, 5)
    report = profile_catalog(catalog, 2, 4)
    assert sorted(report.with_order(3)) == sorted(THIRD_ORDER_N5)
    rows = {row.label: row for row in report.rows}
    assert rows["x^7"].degree == 3
    assert rows["x^21"].degree == 3
    assert rows["x^30"].orders == [2, 3, 4]
    assert rows["x^3+tr(x^9)"].apn
    assert rows["x^3"].vanishing_flats[3] == 620


def test_profile_catalog_in_parallel(x7, x30):
    catalog = FunctionCatalog([CatalogEntry("a", x7), CatalogEntry("b", x30)])
    serial = profile_catalog(catalog, 1, 5)
    parallel = profile_catalog(catalog, 1, 5, jobs=2)
    assert [r.orders for r in serial.rows] == [r.orders for r in parallel.rows]


def test_catalog_rejects_duplicates(x7):
    with pytest.raises(PreconditionError):
        FunctionCatalog([CatalogEntry("a", x7), CatalogEntry("a", x7)])


def test_nonexistence_finds_small_witnesses():
    for n, m, k in [(3, 1, 3), (4, 4, 2)]:
        result = exhaustive_nonexistence(n, m, k)
        assert result.status == "exists"
        F = VectorialFunction(n, m, result.witness)
        assert is_sumfree(F, k).sumfree


def test_nonexistence_budget():
    result = exhaustive_nonexistence(4, 3, 2, budget=10)
    assert result.status == "budget-exhausted"
    assert result.witness is None


@pytest.mark.slow
def test_no_second_order_sumfree_4_3_function():
    result = exhaustive_nonexistence(4, 3, 2)
    assert result.status == "nonexistent"


def test_restriction_chain(x7):
    chain = restriction_chain(x7, 3, 2)
    assert chain.holds
    assert [s.order for s in chain.steps] == [2, 1]
    assert (chain.final.n, chain.final.m) == (3, 5)


def test_restriction_chain_needs_sumfree(x3):
    with pytest.raises(PreconditionError):
        restriction_chain(x3, 3, 1)


def test_bound_consistency(gf32):
    report = bound_consistency_report(power_map(gf32, 7))
    assert report.consistent
    assert [c.k for c in report.checks] == [2, 3]


@pytest.mark.parametrize("n", range(3, 9))
def test_carlet_functions_are_nondegenerate(n):
    ctx = FieldContext.default(n)
    for k in range(2, n):
        assert is_nondegenerate(carlet_function(ctx, k, 1), k)


def _sumfree_function_exists(n, m, k):
    """Check every (n,m)-function at once; row i of ``tables`` is function i."""
    size = 1 << n
    codes = np.arange(1 << (m * size), dtype=np.uint64)
    shifts = (m * np.arange(size)).astype(np.uint64)
    tables = (codes[:, None] >> shifts) & np.uint64((1 << m) - 1)
    alive = np.ones(len(tables), dtype=bool)
    for flat in enumerate_flats(n, k, cap=None):
        points = np.asarray(flat.points(), dtype=np.intp)
        alive &= np.bitwise_xor.reduce(tables[:, points], axis=1) != 0
    return bool(alive.any())


def _small_cases(max_bits):
    return [
        (n, m, k)
        for n in range(1, 5)
        for m in range(1, 11)
        if m << n <= max_bits
        for k in range(1, n + 1)
    ]


_QUICK = _small_cases(16)
_LONG = [case for case in _small_cases(20) if case not in _QUICK]


@pytest.mark.parametrize(
    "n,m,k", _QUICK + [pytest.param(*case, marks=pytest.mark.slow) for case in _LONG]
)
def test_nonexistence_agrees_with_brute_force(n, m, k):
    result = exhaustive_nonexistence(n, m, k)
    assert (result.status == "exists") == _sumfree_function_exists(n, m, k)
    if result.witness is not None:
        assert is_sumfree(VectorialFunction(n, m, result.witness), k).sumfree
