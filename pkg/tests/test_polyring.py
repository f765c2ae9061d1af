import io
import math

import numpy as np
import pytest

from curvebumps.polyring import (Polynomial, dump_poly, grlex_key, load_poly,
                                 monomial_basis, poly_add, poly_eval,
                                 poly_from_records, poly_mul, poly_to_records)

x1 = Polynomial.variable(2, 0)
x2 = Polynomial.variable(2, 1)
one = Polynomial.constant(2, 1.0)


def test_add_cancellation():
    assert poly_add(x1, -x1).is_zero()


def test_add_disjoint_supports():
    p = poly_add(x1 + one, x2)
    assert p.terms == {(1, 0): 1.0, (0, 1): 1.0, (0, 0): 1.0}


def test_add_coefficient_arithmetic():
    p = poly_add(3.0 * x1**2, -1.5 * x1**2)
    assert p.terms == {(2, 0): 1.5}


def test_mul_binomial_square():
    p = poly_mul(x1 + x2, x1 + x2)
    assert p.terms == {(2, 0): 1.0, (1, 1): 2.0, (0, 2): 1.0}


def test_mul_identity():
    p = 2.5 * x1**3 - x2 + one
    assert poly_mul(p, one) == p


def test_mul_difference_of_squares():
    p = poly_mul(x2 - x1**2, x2 + x1**2)
    assert p.terms == {(0, 2): 1.0, (4, 0): -1.0}


def test_dimension_mismatch_raises():
    with pytest.raises(ValueError):
        poly_add(x1, Polynomial.variable(3, 0))
    with pytest.raises(ValueError):
        poly_mul(x1, Polynomial.variable(1, 0))


def test_eval_direct_product():
    assert poly_eval(x1 * x2, (2.0, 3.0)) == 6.0


def test_eval_constant():
    assert poly_eval(one, (123.0, -7.0)) == 1.0


def test_eval_arithmetic():
    p = 3.0 * x1**2 - x2**2
    assert poly_eval(p, (1.0, 1.0)) == 2.0


def test_eval_zero_to_zero_power():
    # 0**0 = 1: the constant monomial survives at the origin
    p = Polynomial.monomial((0, 2), 5.0) + one
    assert poly_eval(p, (0.0, 0.0)) == 1.0


def test_eval_dimension_mismatch():
    with pytest.raises(ValueError):
        poly_eval(x1, (1.0, 2.0, 3.0))


def test_monomial_basis_degree_one():
    assert monomial_basis(2, 1) == [(0, 0), (1, 0), (0, 1)]


def test_monomial_basis_degree_two():
    basis = monomial_basis(2, 2)
    assert len(basis) == 6
    assert basis == [(0, 0), (1, 0), (0, 1), (2, 0), (1, 1), (0, 2)]


def test_monomial_basis_univariate():
    assert monomial_basis(1, 3) == [(0,), (1,), (2,), (3,)]


@pytest.mark.parametrize("d,n", [(1, 5), (2, 4), (3, 3), (4, 2)])
def test_monomial_basis_count_and_order(d, n):
    basis = monomial_basis(d, n)
    assert len(basis) == math.comb(n + d, d)
    keys = [grlex_key(e) for e in basis]
    assert keys == sorted(keys)
    assert len(set(keys)) == len(keys)


def _random_poly(rng, dim, deg, integer=False):
    terms = {}
    for exp in monomial_basis(dim, deg):
        if rng.random() < 0.5:
            c = rng.integers(-5, 6) if integer else rng.uniform(-1, 1)
            terms[exp] = float(c)
    return Polynomial(dim, terms)


def test_ring_axioms_exact_on_integers():
    rng = np.random.default_rng(7)
    for _ in range(50):
        a = _random_poly(rng, 2, 3, integer=True)
        b = _random_poly(rng, 2, 3, integer=True)
        c = _random_poly(rng, 2, 2, integer=True)
        assert a + b == b + a
        assert a * b == b * a
        assert (a * b) * c == a * (b * c)
        assert a * (b + c) == a * b + a * c


def test_eval_is_ring_homomorphism():
    rng = np.random.default_rng(11)
    for _ in range(100):
        a = _random_poly(rng, 2, 3)
        b = _random_poly(rng, 2, 3)
        x = tuple(rng.uniform(-1, 1, size=2))
        lhs = poly_eval(a * b, x)
        rhs = poly_eval(a, x) * poly_eval(b, x)
        assert abs(lhs - rhs) <= 1e-12 * max(1.0, abs(lhs), abs(rhs))


def test_text_roundtrip():
    p = 2.0 * x1**2 * x2 - 0.125 * x2 + one
    buf = io.StringIO()
    dump_poly(p, buf)
    buf.seek(0)
    assert load_poly(buf) == p


def test_parser_rejects_duplicate_exponents():
    records = [{"exp": [1, 0], "coef": 1.0}, {"exp": [1, 0], "coef": 2.0}]
    with pytest.raises(ValueError):
        poly_from_records(records)


def test_records_roundtrip_zero_poly():
    assert poly_from_records([], dim=2).is_zero()
    assert poly_to_records(Polynomial.zero(2)) == []
