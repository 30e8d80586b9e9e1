import pytest

from sumfree_cli.claims import (
    MIN_WEIGHT_CASES,
    ClaimContext,
    claim_ids,
    get_claim,
    hyperplane_criterion_agrees,
    min_weight_words_are_flats,
    run_claim,
    special_condition_holds,
    witness_matches_derivative,
)
from sumfree_cli.config import SumfreeConfig


@pytest.fixture
def context(tmp_path):
    return ClaimContext(SumfreeConfig(), tmp_path / "artifacts")


def test_claim_ids_are_unique():
    ids = claim_ids()
    assert len(ids) == len(set(ids))
    assert "nonexist-4-3-2" in ids


def test_unknown_claim_lists_valid_ids():
    with pytest.raises(KeyError, match="subcode-5-2"):
        get_claim("no-such-claim")


def test_inverse_profile_claim(context):
    result = run_claim("inverse-profile", context)
    assert result.passed
    assert result.line() == f"CLAIM inverse-profile RESULT PASS DETAIL {result.detail}"


def test_subcode_claim_writes_artifact(context):
    result = run_claim("subcode-5-2", context)
    assert result.passed, result.detail
    assert result.artifacts
    assert (context.artifact_dir / "subcode-5-2.pcheck").exists()


def test_extract_roundtrip_claim(context):
    assert run_claim("extract-roundtrip", context).passed


def test_property_helpers(x3, x7):
    assert witness_matches_derivative(x7, 2)
    assert hyperplane_criterion_agrees(x3, 2)
    assert hyperplane_criterion_agrees(x3, 3)
    assert special_condition_holds(x7, 3)
    assert min_weight_words_are_flats(1, 4, 24)


@pytest.mark.parametrize(
    "r,n",
    [
        pytest.param(r, n, marks=pytest.mark.slow) if (r, n) == (3, 5) else (r, n)
        for r, n in MIN_WEIGHT_CASES
    ],
)
def test_min_weight_words_are_flat_incidences(r, n):
    assert min_weight_words_are_flats(r, n)


@pytest.mark.slow
def test_properties_claim_passes_with_default_codeword_cap(context):
    assert context.config.codeword_dim_cap < 26
    result = run_claim("properties", context)
    assert result.passed, result.detail


@pytest.mark.slow
@pytest.mark.parametrize("claim_id", claim_ids())
def test_every_claim_passes(claim_id, context):
    result = run_claim(claim_id, context)
    assert result.passed, result.detail
