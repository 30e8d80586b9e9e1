import pytest

from sumfree_cli.bitmatrix import BitMatrix
from sumfree_cli.errors import FormatError
from sumfree_cli.grassmann import verify_coloring, witness_coloring
from sumfree_cli.rmcode import rm_generator
from sumfree_cli.utils.formats import (
    format_certificate,
    format_function,
    format_matrix,
    parse_catalog,
    parse_certificate,
    parse_function,
    parse_matrix,
    parse_poly,
    read_function,
    write_function,
)
from sumfree_cli.vecfun import from_univariate, power_map


def test_parse_poly():
    assert parse_poly("x^3 + 0x2*x^5 + x + 1", 1) == [(1, 3), (2, 5), (1, 1), (1, 0)]
    with pytest.raises(FormatError):
        parse_poly("x^3 + y", 1)


def test_inline_and_block_poly_agree(gf32):
    inline = parse_function("n=5 m=5\npoly: x^3 + 0x2*x^5\n")
    block = parse_function("# comment\nn=5 m=5 modulus=0x25\npoly:\n1 3\n2 5\n")
    assert inline == block == from_univariate(gf32, [(1, 3), (2, 5)])


def test_modulus_applies_when_header_has_none():
    a = parse_function("n=4 m=4\npoly: x^3\n", modulus=0x19)
    b = parse_function("n=4 m=4\npoly: x^3\n")
    assert a != b


def test_truth_table_values_are_hex():
    F = parse_function("n=2 m=4\ntt: 0 a\nf 1\n")
    assert F.values() == [0, 10, 15, 1]


def test_function_file_roundtrip(tmp_path, x7):
    path = tmp_path / "x7.fn"
    write_function(x7, path, 0x25)
    assert "modulus=0x25" in path.read_text()
    assert read_function(path) == x7
    assert parse_function(format_function(x7)) == x7


@pytest.mark.parametrize(
    "text,line",
    [
        ("poly: x^3\n", 1),
        ("n=2 m=1\ntt: 0 1 1\n", 1),
        ("n=5 m=4\npoly: x^3\n", 1),
        ("n=2 m=1\ntt: 0 1 1 0\nextra=1\n", 3),
        ("n=5 m=5 modulus=0x21\npoly: x^3\n", 1),
    ],
)
def test_malformed_function_files(text, line):
    with pytest.raises(FormatError) as excinfo:
        parse_function(text)
    assert excinfo.value.line == line


def test_missing_file_is_a_format_error(tmp_path):
    with pytest.raises(FormatError, match="not found"):
        read_function(tmp_path / "absent.fn")


def test_matrix_roundtrip():
    G = rm_generator(1, 3)
    assert parse_matrix(format_matrix(G)) == G
    assert format_matrix(BitMatrix((0b011,), 3)) == "1 3\n110\n"


def test_malformed_matrix():
    with pytest.raises(FormatError):
        parse_matrix("2 3\n110\n")
    with pytest.raises(FormatError):
        parse_matrix("1 3\n120\n")


def test_catalog_with_per_entry_headers(gf16):
    text = """
[entry cube]
n=4 m=4
tags: gold, apn
poly: x^3

[entry table]
n=4 m=4
tt: 0 1 2 3 4 5 6 7 8 9 a b c d e f
"""
    catalog = parse_catalog(text, "inline")
    assert len(catalog) == 2
    assert catalog.get("cube").tags == ("gold", "apn")
    assert catalog.get("cube").function == power_map(gf16, 3)
    assert catalog.get("table").function.values() == list(range(16))


def test_catalog_rejects_mixed_dimensions():
    text = "[entry a]\nn=2 m=1\ntt: 0 1 1 0\n[entry b]\nn=2 m=2\ntt: 0 1 2 3\n"
    with pytest.raises(FormatError, match="mixes"):
        parse_catalog(text)


def test_certificate_roundtrip(gf16):
    cert = witness_coloring(power_map(gf16, 3), 2)
    parsed = parse_certificate(format_certificate(cert))
    assert parsed.params == cert.params
    assert parsed.producer == "witness"
    assert parsed.assignment == cert.assignment
    assert verify_coloring(parsed).valid


def test_certificate_rejects_duplicates():
    text = "n=3 k=1 t=0 m=2\n0x1 0x1\n0x1 0x2\n"
    with pytest.raises(FormatError, match="twice") as excinfo:
        parse_certificate(text)
    assert excinfo.value.line == 3


def test_modulus_header_is_hex_without_prefix():
    bare = parse_function("n=5 m=5 modulus=25\npoly: x^3\n")
    assert bare == parse_function("n=5 m=5 modulus=0x25\npoly: x^3\n")
    assert bare == parse_function("n=5 m=5\npoly: x^3\n")


def test_certificate_values_are_hex_without_prefix():
    cert = parse_certificate("n=3 k=1 t=0 m=5\n4 a\n2 10\n1 0x1b\n7 F\n")
    assert cert.assignment == {(4,): 0xA, (2,): 0x10, (1,): 0x1B, (7,): 0xF}


def test_certificate_rejects_non_hex_color():
    with pytest.raises(FormatError, match="hex") as excinfo:
        parse_certificate("n=3 k=1 t=0 m=5\n4 g\n")
    assert excinfo.value.line == 2
