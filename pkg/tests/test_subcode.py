import pytest

from sumfree_cli.bitmatrix import BitMatrix
from sumfree_cli.errors import CapExceededError, PreconditionError
from sumfree_cli.flats import is_sumfree
from sumfree_cli.gf2n import FieldContext
from sumfree_cli.rmcode import BinaryCode, rm_parity_check
from sumfree_cli.subcode import (
    build_subcode,
    certify_min_distance,
    extract_function,
    find_flat_codeword,
    min_distance_exhaustive,
    value_matrix,
)
from sumfree_cli.vecfun import power_map


def test_value_matrix_rows_are_output_bits(x7):
    M = value_matrix(x7)
    assert (M.num_rows, M.cols) == (5, 32)
    for x in range(32):
        assert sum(M.bit(i, x) << i for i in range(5)) == x7(x)


@pytest.mark.parametrize(
    "n,r,exponent,dimension,distance",
    [(5, 2, 7, 11, 12), (5, 3, 3, 21, 6), (6, 2, 15, 16, 24)],
)
def test_subcode_parameters(n, r, exponent, dimension, distance):
    F = power_map(FieldContext.default(n), exponent)
    bundle = build_subcode(F, r)
    assert bundle.code.dimension == dimension
    assert bundle.expected_distance == distance
    assert min_distance_exhaustive(bundle.code) == distance
    assert bundle.code.is_subcode_of(BinaryCode.reed_muller(r, n))


def test_sharded_distance_matches(x3):
    bundle = build_subcode(x3, 3)
    assert min_distance_exhaustive(bundle.code, jobs=4) == 6


def test_distance_cap_suggests_certificate(x3):
    bundle = build_subcode(x3, 3)
    with pytest.raises(CapExceededError, match="certificate"):
        min_distance_exhaustive(bundle.code, cap=20)


def test_build_rejects_non_sumfree(x3):
    with pytest.raises(PreconditionError) as excinfo:
        build_subcode(x3, 2)
    assert excinfo.value.flat is not None


def test_build_rejects_bad_order(x7):
    with pytest.raises(PreconditionError):
        build_subcode(x7, 1)
    with pytest.raises(PreconditionError):
        build_subcode(x7, 4)


def test_trusted_build_keeps_vanishing_flat(x3):
    bundle = build_subcode(x3, 2, trust=True)
    flat = is_sumfree(x3, 3).counterexample
    word = find_flat_codeword(bundle, flat)
    assert word is not None
    assert word.bit_count() == 8


def test_extract_roundtrip(x7, x3):
    for F, r in ((x7, 2), (x3, 3)):
        bundle = build_subcode(F, r)
        extracted = extract_function(bundle.code, r)
        assert extracted.provenance == "extracted-from-code"
        assert extracted.function == F


def test_extract_from_rm_itself_is_trivial():
    bundle = extract_function(BinaryCode.reed_muller(2, 5), 2)
    assert bundle.trivial
    assert bundle.function.m == 0


def test_extract_rejects_codimension_above_n():
    # weight-1 rows are independent modulo RM(2,5), whose minimum weight is 8
    units = BitMatrix(tuple(1 << i for i in range(6)), 32)
    code = BinaryCode(32, parity_check=rm_parity_check(2, 5).stack(units))
    with pytest.raises(PreconditionError, match="exceeds"):
        extract_function(code, 2)


def test_certificate_for_5_2(x7):
    bundle = build_subcode(x7, 2)
    cert = certify_min_distance(bundle)
    assert cert.certified
    assert cert.lower == cert.upper == 12
    word = int(cert.witness_codeword, 16)
    assert word.bit_count() == 12
    assert bundle.code.contains(word)


def test_certificate_for_6_3(gf64):
    bundle = build_subcode(power_map(gf64, 7), 3)
    cert = certify_min_distance(bundle)
    assert cert.certified
    assert cert.upper == bundle.expected_distance == 12


def test_certificate_same_with_jobs_and_found_in_first_clique(x7):
    bundle = build_subcode(x7, 2)
    single = certify_min_distance(bundle)
    sharded = certify_min_distance(bundle, jobs=2)
    assert sharded.model_dump() == single.model_dump()
    # 155 three-spaces per five-space, only 32 witness values
    assert single.witnesses_computed <= 2**5 + 1


def test_certificate_cap_leaves_it_incomplete(x7):
    cert = certify_min_distance(build_subcode(x7, 2), cap=1)
    assert not cert.certified
    assert cert.upper is None
    assert "cap" in cert.note


@pytest.mark.slow
def test_certificate_for_7_3():
    bundle = build_subcode(power_map(FieldContext.default(7), 15), 3)
    cert = certify_min_distance(bundle)
    assert cert.certified
    assert cert.lower == 24
