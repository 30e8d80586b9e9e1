import pytest

from sumfree_cli.bitmatrix import BitMatrix, from_words, pack_bits, unpack_bits
from sumfree_cli.errors import CapExceededError, PreconditionError
from sumfree_cli.flats import Flat, enumerate_flats
from sumfree_cli.rmcode import (
    BinaryCode,
    incidence_vector,
    iter_codeword_blocks,
    minimum_weight_codewords,
    rm_dimension,
    rm_generator,
    rm_parity_check,
    second_weight_codeword,
)


@pytest.mark.parametrize("r,n,expected", [(2, 5, 16), (3, 5, 26), (2, 6, 22), (0, 4, 1), (4, 4, 16)])
def test_rm_dimension(r, n, expected):
    assert rm_dimension(r, n) == expected
    assert rm_generator(r, n).rank() == expected


def test_parity_check_is_dual():
    G, H = rm_generator(2, 5), rm_parity_check(2, 5)
    assert G.is_orthogonal_to(H)
    assert G.rank() + H.rank() == 32
    with pytest.raises(PreconditionError):
        rm_parity_check(5, 5)


def test_kernel_recovers_dual():
    G = rm_generator(1, 4)
    K = G.kernel()
    assert K.rank() == 16 - 5
    assert G.is_orthogonal_to(K)


def test_bits_pack_and_unpack():
    bits = unpack_bits(0b1011, 8)
    assert list(bits) == [1, 1, 0, 1, 0, 0, 0, 0]
    assert pack_bits(bits) == 0b1011


def test_codeword_blocks_cover_the_span():
    rows = [0b0011, 0b0101, 0b1000]
    words = set()
    for block in iter_codeword_blocks(rows, 4):
        words.update(from_words(row) for row in block.words)
    assert words == {a ^ b ^ c for a in (0, 3) for b in (0, 5) for c in (0, 8)}


def test_rm_2_5_minimum_weight_words_are_3_flats():
    weight, words = minimum_weight_codewords(BinaryCode.reed_muller(2, 5))
    assert weight == 8
    assert words == sorted(incidence_vector(A) for A in enumerate_flats(5, 3))
    assert len(words) == 620


def test_minimum_weight_cap():
    with pytest.raises(CapExceededError):
        minimum_weight_codewords(BinaryCode.reed_muller(2, 5), cap=10)


def test_flat_incidence_membership():
    code = BinaryCode.reed_muller(2, 5)
    three_flat = Flat.from_points(5, [0, 1, 2, 3, 4, 5, 6, 7])
    two_flat = Flat.from_points(5, [0, 1, 2, 3])
    assert code.contains(incidence_vector(three_flat))
    assert not code.contains(incidence_vector(two_flat))


def test_second_weight_codeword():
    A1 = Flat.from_points(5, [0, 1, 2, 3, 4, 5, 6, 7])
    A2 = Flat.from_points(5, [0, 1, 8, 9, 16, 17, 24, 25])
    word = second_weight_codeword(A1, A2)
    assert word.bit_count() == 12
    assert BinaryCode.reed_muller(2, 5).contains(word)
    A3 = Flat.from_points(5, [0, 1, 2, 3, 8, 9, 10, 11])
    with pytest.raises(PreconditionError):
        second_weight_codeword(A1, A3)


def test_code_from_parity_check_only():
    H = rm_parity_check(2, 5)
    code = BinaryCode(32, parity_check=H)
    assert code.dimension == 16
    assert code.is_subcode_of(BinaryCode.reed_muller(2, 5))
    assert BinaryCode.reed_muller(1, 5).is_subcode_of(code)


def test_inconsistent_matrices_rejected():
    with pytest.raises(PreconditionError):
        BinaryCode(32, generator=rm_generator(3, 5), parity_check=rm_parity_check(2, 5))
    with pytest.raises(PreconditionError):
        BinaryCode(16, generator=rm_generator(2, 5))
    with pytest.raises(PreconditionError):
        BinaryCode(8)
    with pytest.raises(PreconditionError):
        BitMatrix((0b100,), 2)
