import pickle
import random

import numpy as np
import pytest

from sumfree_cli.errors import PreconditionError
from sumfree_cli.gf2n import FieldContext
from sumfree_cli.vecfun import (
    ZERO_FUNCTION_DEGREE,
    VectorialFunction,
    algebraic_degree,
    component,
    component_degrees,
    compose,
    derivative,
    differential_uniformity,
    from_univariate,
    higher_derivative,
    is_apn,
    is_nondegenerate,
    is_permutation,
    lowest_degree_component,
    mobius,
    power_map,
    zero_function,
)


def test_power_map_degree_is_exponent_weight(gf32):
    for exponent in (3, 7, 15, 21, 30):
        assert algebraic_degree(power_map(gf32, exponent)) == bin(exponent).count("1")


def test_zero_function_degree():
    assert algebraic_degree(zero_function(4, 3)) == ZERO_FUNCTION_DEGREE


def test_mobius_is_involution():
    rng = random.Random(7)
    for n in range(1, 8):
        table = np.array([rng.randrange(256) for _ in range(1 << n)], dtype=np.uint32)
        assert np.array_equal(mobius(mobius(table)), table)


def test_anf_of_monomial():
    # F(x) = x0 * x2 on F_2^3
    F = VectorialFunction(3, 1, [(x & 1) & ((x >> 2) & 1) for x in range(8)])
    assert F.anf.monomials() == [(0b101, 1)]


def test_x3_is_apn_permutation(x3):
    assert differential_uniformity(x3) == 2
    assert is_apn(x3)
    assert is_permutation(x3)


def test_components_of_x7_all_cubic(x7):
    degrees = component_degrees(x7)
    assert len(degrees) == 31
    assert (degrees == 3).all()
    assert is_nondegenerate(x7, 3)
    assert not is_nondegenerate(x7, 4)


def test_lowest_degree_component_reports_linear_part():
    F = VectorialFunction(3, 2, [x & 3 for x in range(8)])
    assert not is_nondegenerate(F, 2)
    assert lowest_degree_component(F) == (1, 1)


def test_trace_component_is_boolean(gf32, x3):
    f = component(x3, 5, gf32)
    assert f.m == 1
    assert set(f.values()) <= {0, 1}
    with pytest.raises(PreconditionError):
        component(x3, 0)


def test_derivatives(x7):
    D = derivative(x7, 6)
    assert all(D(x) == x7(x ^ 6) ^ x7(x) for x in range(32))
    # dependent directions give the zero function
    assert algebraic_degree(higher_derivative(x7, [3, 5, 6])) == ZERO_FUNCTION_DEGREE
    # three independent derivatives of a cubic are constant
    assert len(set(higher_derivative(x7, [1, 2, 4]).values())) == 1


def test_compose_inverse_power_maps(gf32):
    # 3 * 21 = 63 = 1 mod 31
    identity = compose(power_map(gf32, 21), power_map(gf32, 3))
    assert identity.values() == list(range(32))


def test_from_univariate_validates_terms(gf32):
    with pytest.raises(PreconditionError):
        from_univariate(gf32, [(1, 32)])
    with pytest.raises(PreconditionError):
        from_univariate(gf32, [(40, 3)])


def test_table_validation():
    with pytest.raises(PreconditionError):
        VectorialFunction(2, 1, [0, 1, 2, 0])
    with pytest.raises(PreconditionError):
        VectorialFunction(2, 1, [0, 1, 1])


def test_pickles_for_worker_processes(x7):
    _ = x7.anf
    clone = pickle.loads(pickle.dumps(x7))
    assert clone == x7
    assert algebraic_degree(clone) == 3


@pytest.mark.parametrize("n", range(2, 9))
def test_degree_of_x_to_half_order_minus_one(n):
    F = power_map(FieldContext.default(n), 2 ** (n - 1) - 1)
    assert algebraic_degree(F) == n - 1


@pytest.mark.parametrize("n", [3, 4, 5, 6])
def test_derivative_lowers_degree(n):
    rng = random.Random(n)
    for _ in range(20):
        m = rng.randint(1, n)
        F = VectorialFunction(n, m, [rng.randrange(1 << m) for _ in range(1 << n)])
        a = rng.randrange(1, 1 << n)
        degree = algebraic_degree(F)
        if degree > 0:
            assert algebraic_degree(derivative(F, a)) < degree
