import pytest

from sumfree_cli.errors import PreconditionError
from sumfree_cli.flats import Subspace
from sumfree_cli.grassmann import (
    ColoringCertificate,
    GrassmannParams,
    chromatic_lower_bound,
    chromatic_upper_bound,
    extended_coloring,
    intersection_dim,
    known_chromatic_number,
    verify_coloring,
    witness_coloring,
)


def test_params():
    p = GrassmannParams.grassmann(6, 3)
    assert p.t == 2
    assert p.vertex_count == 1395
    with pytest.raises(PreconditionError):
        GrassmannParams(4, 4, 3)
    with pytest.raises(PreconditionError):
        GrassmannParams(5, 2, 3)


def test_bounds():
    assert chromatic_lower_bound(6, 3, 2) == 15
    assert chromatic_lower_bound(5, 3, 0) == 155
    assert chromatic_upper_bound(6, 3) == 63
    assert known_chromatic_number(6, 2) == 31
    assert known_chromatic_number(5, 2) == 18
    assert known_chromatic_number(6, 3) is None


def test_intersection_dim():
    U = Subspace.from_vectors(5, [1, 2, 4])
    W = Subspace.from_vectors(5, [1, 2, 8])
    assert intersection_dim(U, W) == 2
    assert intersection_dim(U, U) == 3


def test_witness_coloring_is_proper(x7):
    cert = witness_coloring(x7, 3)
    report = verify_coloring(cert)
    assert report.valid
    assert report.vertices == 155
    assert report.lower_bound <= report.colors_used <= 31
    assert report.sampled_pairs == 0


def test_witness_coloring_needs_sumfree(x3):
    with pytest.raises(PreconditionError):
        witness_coloring(x3, 3)


def test_extended_coloring_of_j2_6_3(x7):
    cert = extended_coloring(x7, 3)
    assert cert.params == GrassmannParams(6, 3, 2)
    report = verify_coloring(cert, pair_sample=300, seed=1)
    assert report.valid
    assert report.vertices == 1395
    assert report.colors_used <= 31
    assert report.case_failures == 0
    assert sum(report.case_counts.values()) == 300
    assert set(report.case_counts) <= {"both-in-H", "one-in-H", "meet-in-H", "meet-outside-H"}


def test_extended_coloring_of_j2_6_2_is_optimal(x3):
    cert = extended_coloring(x3, 2)
    report = verify_coloring(cert, pair_sample=200)
    assert report.valid
    assert report.vertices == 651
    assert report.colors_used == known_chromatic_number(6, 2)


def test_extended_coloring_needs_exact_degree(x7):
    with pytest.raises(PreconditionError, match="degree"):
        extended_coloring(x7, 2)


def test_monochromatic_coloring_has_conflict(x7):
    cert = witness_coloring(x7, 2)
    flat = ColoringCertificate(cert.params, cert.m, {U: 1 for U in cert.assignment})
    report = verify_coloring(flat)
    assert not report.valid
    assert report.first_conflict is not None


def test_incomplete_coloring_rejected(x7):
    cert = witness_coloring(x7, 3)
    missing = dict(list(cert.assignment.items())[1:])
    report = verify_coloring(ColoringCertificate(cert.params, cert.m, missing))
    assert not report.valid
    assert "vertices" in report.problems[0]


def test_relabelled_coloring_stays_proper(x7):
    cert = witness_coloring(x7, 3)
    swap = {c: (c % 31) + 1 for c in range(1, 32)}
    relabelled = cert.relabel(swap)
    assert verify_coloring(relabelled).valid
    with pytest.raises(PreconditionError):
        cert.relabel({1: 2, 2: 2})


def test_extended_coloring_matches_witness_coloring_inside_h(x7):
    extended = extended_coloring(x7, 3)
    inside = {
        basis: color for basis, color in extended.assignment.items() if basis[0] < 1 << 5
    }
    assert inside == witness_coloring(x7, 3).assignment
