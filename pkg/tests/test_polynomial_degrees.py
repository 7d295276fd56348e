import random
from fractions import Fraction
from math import comb

import pytest

from equipart.cohomology import IntMatrix
from equipart.polynomial_degrees import (
    FactorizationCertificate,
    IntPolynomial,
    PreconditionViolated,
    ZeroPolynomial,
    bareiss_determinant,
    degree_monic_multiplication,
    degree_sphere_multiplication,
    poly_product,
    resultant,
    resultant_positivity_check,
    sylvester_matrix,
)

P = IntPolynomial.from_coefficients


def test_polynomial_canonical_form():
    assert P([1, 2, 0, 0]).coefficients == (1, 2)
    assert P([]).is_zero()
    assert P([0, 0]).is_zero()
    assert P([5]).degree == 0
    assert P([1, 0, 1]).degree == 2
    assert P([1, 0, 1]).is_monic()
    assert not P([2, 0, 3]).is_monic()


def test_polynomial_arithmetic():
    p = P([1, 1])          # 1 + x
    q = P([-1, 1])         # -1 + x
    assert p * q == P([-1, 0, 1])
    assert p + q == P([0, 2])
    assert p - p == IntPolynomial.zero()
    assert 3 * p == P([3, 3])
    assert (p * q)(Fraction(2)) == 3
    assert str(P([1, 0, 1])) == "x^2 + 1"
    assert str(P([-1, 2])) == "2*x - 1"


def test_sylvester_matrix_shape_and_determinant():
    p = P([1, 0, 1])       # x^2 + 1
    q = P([4, 0, 1])       # x^2 + 4
    m = sylvester_matrix(p, q)
    assert (m.rows, m.cols) == (4, 4)
    assert m.entries == (
        (1, 0, 1, 0),
        (0, 1, 0, 1),
        (1, 0, 4, 0),
        (0, 1, 0, 4),
    )
    # Root-product oracle: roots +/-i and +/-2i give (i-2i)(i+2i)(-i-2i)(-i+2i) = 9.
    assert bareiss_determinant(m) == 9


def test_sylvester_degenerate_examples():
    assert bareiss_determinant(sylvester_matrix(P([-1, 1]), P([-1, 1]))) == 0
    assert bareiss_determinant(sylvester_matrix(P([0, 1]), P([1, 1]))) == 1
    with pytest.raises(ZeroPolynomial):
        sylvester_matrix(IntPolynomial.zero(), P([1]))


def test_resultant_examples():
    assert resultant(P([1, 0, 1]), P([4, 0, 1])) == 9
    assert resultant(P([0, 1]), P([1, 1])) == 1
    # Shared root kills the resultant.
    assert resultant(P([-1, 1]) * P([1, 1]), P([-1, 1])) == 0


def test_resultant_multiplicativity_instance():
    p1 = P([1, 0, 1])
    p2 = P([4, 0, 1])
    q = P([9, 0, 1])
    lhs = resultant(p1 * p2, q)
    rhs = resultant(p1, q) * resultant(p2, q)
    assert lhs == rhs == 1600


def _random_poly(rng, max_degree):
    degree = rng.randint(0, max_degree)
    coeffs = [rng.randint(-5, 5) for _ in range(degree)] + [rng.randint(1, 5)]
    return P(coeffs)


def test_resultant_properties_random():
    rng = random.Random(31337)
    for _ in range(60):
        p = _random_poly(rng, 4)
        q = _random_poly(rng, 4)
        r = _random_poly(rng, 3)
        assert resultant(p * r, q) == resultant(p, q) * resultant(r, q)
        sign = (-1) ** (p.degree * q.degree)
        assert resultant(p, q) == sign * resultant(q, p)


def test_resultant_rational_coefficients():
    p = P([Fraction(1, 2), 1])     # x + 1/2, root -1/2
    q = P([1, 1])                  # x + 1, root -1
    # product formula: (-1/2) - (-1) = 1/2
    assert resultant(p, q) == Fraction(1, 2)


def test_bareiss_empty_and_rational():
    assert bareiss_determinant(IntMatrix.from_rows([], cols=0)) == 1
    m = IntMatrix.from_rows([[Fraction(1, 2), 1], [1, 2]])
    assert bareiss_determinant(m) == 0
    m = IntMatrix.from_rows([[Fraction(1, 2), 1], [1, 1]])
    assert bareiss_determinant(m) == Fraction(-1, 2)


def test_positivity_check_examples():
    assert resultant_positivity_check(P([1, 0, 1]), P([4, 0, 1]))
    assert resultant_positivity_check(
        [P([1, 0, 1]), P([2, 0, 1])],
        [P([3, 0, 1]), P([5, 0, 1])])


def test_positivity_check_preconditions():
    with pytest.raises(PreconditionViolated, match="real roots"):
        resultant_positivity_check(P([-1, 0, 1]), P([1, 0, 1]))
    with pytest.raises(PreconditionViolated, match="repeated"):
        resultant_positivity_check(P([1, 0, 1]), P([1, 0, 1]))
    with pytest.raises(PreconditionViolated, match="repeated"):
        resultant_positivity_check(
            [P([1, 0, 1]), P([1, 0, 1])], P([2, 0, 1]))
    with pytest.raises(PreconditionViolated, match="monic quadratic"):
        resultant_positivity_check(P([1, 1]), P([4, 0, 1]))


def test_degree_examples():
    count, cert = degree_monic_multiplication(2, 2)
    assert count == 2
    assert len(cert.pairs) == 2
    assert cert.target == P([1, 0, 1]) * P([2, 0, 1])
    assert degree_monic_multiplication(2, 4)[0] == 3
    count44, cert44 = degree_monic_multiplication(4, 4)
    assert count44 == 6
    assert all(sign == 1 for _, _, sign in cert44.pairs)


def test_degree_certificate_contents():
    _, cert = degree_monic_multiplication(2, 4)
    for p, q, sign in cert.pairs:
        assert p.degree == 2 and q.degree == 4
        assert p.is_monic() and q.is_monic()
        assert p * q == cert.target
        assert sign == 1
    data = cert.to_json()
    assert data["target"] == cert.target.coefficients_json()
    assert len(data["pairs"]) == 3


def test_degree_independent_of_shift_choice():
    base, _ = degree_monic_multiplication(2, 4)
    other, cert = degree_monic_multiplication(2, 4, quadratic_shifts=(2, 5, 11))
    assert base == other
    assert cert.target == poly_product(
        [P([2, 0, 1]), P([5, 0, 1]), P([11, 0, 1])])


def test_degree_input_validation():
    for m, n in ((1, 2), (2, 3), (0, 2), (-2, 2)):
        with pytest.raises(ValueError):
            degree_monic_multiplication(m, n)
    with pytest.raises(ValueError, match="distinct"):
        degree_monic_multiplication(2, 2, quadratic_shifts=(3, 3))


def test_degree_matches_binomial_small():
    for m in (2, 4, 6):
        for n in (2, 4):
            count, _ = degree_monic_multiplication(m, n)
            assert count == comb((m + n) // 2, m // 2)


def test_sphere_degree():
    assert degree_sphere_multiplication(2, 2) == 4
    assert degree_sphere_multiplication(2, 4) == 6
    assert degree_sphere_multiplication(4, 4) == 12


def test_certificate_rejects_bad_pairs():
    p = P([1, 0, 1])
    q = P([2, 0, 1])
    with pytest.raises(ValueError, match="multiply"):
        FactorizationCertificate(p * q, ((p, p, 1),))
    with pytest.raises(ValueError, match="duplicate"):
        FactorizationCertificate(p * q, ((p, q, 1), (p, q, 1)))
