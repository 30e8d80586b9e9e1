import random

import pytest

from sumfree_cli.errors import PreconditionError
from sumfree_cli.gf2n import (
    DEFAULT_MODULI,
    FieldContext,
    clmul,
    format_poly,
    is_irreducible,
)


def test_default_moduli_are_irreducible():
    for n, modulus in DEFAULT_MODULI.items():
        assert modulus.bit_length() - 1 == n
        assert is_irreducible(modulus)


def test_is_irreducible_rejects_squares():
    assert is_irreducible(0x13)
    assert not is_irreducible(0x15)  # (x^2 + x + 1)^2
    assert not is_irreducible(0x11)  # (x + 1)^4


def test_reducible_or_wrong_degree_modulus_rejected():
    with pytest.raises(PreconditionError):
        FieldContext(4, 0x11)
    with pytest.raises(PreconditionError):
        FieldContext(5, 0x13)
    with pytest.raises(PreconditionError):
        FieldContext.default(17)


def test_mul_reduces_by_modulus(gf32):
    # x * x^4 = x^5 = x^2 + 1
    assert gf32.mul(0b10, 0b10000) == 0b101
    assert clmul(0b11, 0b11) == 0b101


def test_multiplicative_group(gf32):
    for a in range(1, gf32.order):
        assert gf32.pow(a, gf32.order - 1) == 1
        assert gf32.mul(a, gf32.inv(a)) == 1
    assert gf32.pow(0, 0) == 1


def test_inverse_of_zero_rejected(gf32):
    with pytest.raises(PreconditionError):
        gf32.inv(0)


def test_trace_is_balanced_and_linear(gf64):
    traces = [gf64.trace(a) for a in range(gf64.order)]
    assert set(traces) == {0, 1}
    assert sum(traces) == gf64.order // 2
    for a, b in [(3, 17), (5, 60), (41, 22)]:
        assert gf64.trace(a ^ b) == gf64.trace(a) ^ gf64.trace(b)


def test_generator_has_full_order(gf16):
    g = gf16.generator
    powers = {gf16.pow(g, e) for e in range(gf16.order - 1)}
    assert len(powers) == gf16.order - 1


def test_describe(gf32):
    info = gf32.describe()
    assert info["modulus"] == "0x25"
    assert info["polynomial"] == format_poly(0x25) == "x^5 + x^2 + 1"
    assert info["generator"] == "0x2"


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_field_axioms_exhaustive(n):
    ctx = FieldContext.default(n)
    elements = range(ctx.order)
    for a in elements:
        for b in elements:
            ab = ctx.mul(a, b)
            assert ab == ctx.mul(b, a)
            for c in elements:
                assert ctx.mul(ab, c) == ctx.mul(a, ctx.mul(b, c))
                assert ctx.mul(a, b ^ c) == ab ^ ctx.mul(a, c)


@pytest.mark.parametrize("n", range(5, 17))
def test_field_axioms_on_random_triples(n):
    ctx = FieldContext.default(n)
    rng = random.Random(1000 + n)
    for _ in range(200):
        a, b, c = (rng.randrange(ctx.order) for _ in range(3))
        assert ctx.mul(a, b) == ctx.mul(b, a)
        assert ctx.mul(ctx.mul(a, b), c) == ctx.mul(a, ctx.mul(b, c))
        assert ctx.mul(a, b ^ c) == ctx.mul(a, b) ^ ctx.mul(a, c)


@pytest.mark.parametrize("n", range(1, 9))
def test_trace_is_linear_exhaustive(n):
    ctx = FieldContext.default(n)
    traces = [ctx.trace(a) for a in range(ctx.order)]
    for a in range(ctx.order):
        for b in range(ctx.order):
            assert traces[a ^ b] == traces[a] ^ traces[b]
