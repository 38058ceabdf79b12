import random
from fractions import Fraction

import pytest

from etakit.core.exceptions import NotPalindromic, PolynomialSyntaxError, ZeroArgument
from etakit.models.laurent import LaurentPoly, SymBracket, from_bracket, to_bracket


def test_zero_coefficients_are_not_stored():
    p = LaurentPoly(coeffs={-2: 0, 0: 3, 1: 0})
    assert p.coeffs == {0: 3}
    assert LaurentPoly(coeffs={5: 0}) == LaurentPoly.zero()


def test_ring_operations():
    p = LaurentPoly(coeffs={-1: 1, 1: 1})
    q = LaurentPoly(coeffs={0: 2, 1: -1})
    assert p + q == LaurentPoly(coeffs={-1: 1, 0: 2})
    assert p - p == LaurentPoly.zero()
    assert p * q == LaurentPoly(coeffs={-1: 2, 0: -1, 1: 2, 2: -1})
    assert 3 * p == LaurentPoly(coeffs={-1: 3, 1: 3})


def test_degree_and_valuation():
    p = LaurentPoly(coeffs={-3: 1, 2: 4})
    assert p.degree() == 2
    assert p.valuation() == -3
    assert LaurentPoly.zero().degree() == 0


def test_reciprocal_and_palindromic():
    p = LaurentPoly(coeffs={-1: 2, 0: 1, 3: 5})
    assert p.reciprocal() == LaurentPoly(coeffs={1: 2, 0: 1, -3: 5})
    assert not p.is_palindromic()
    assert (p + p.reciprocal()).is_palindromic()


def test_evaluate_is_exact():
    p = LaurentPoly(coeffs={-1: 1, 0: -2, 1: 1})
    assert p.evaluate(1) == 0
    assert p.evaluate(-1) == -4
    assert p.evaluate(2) == Fraction(1, 2)


def test_evaluate_at_zero_raises():
    with pytest.raises(ZeroArgument):
        LaurentPoly.constant(1).evaluate(0)


def test_bracket_expands_symmetrically():
    poly = from_bracket(SymBracket.of([0, -1, 0, 1]))
    assert poly == LaurentPoly(coeffs={-3: 1, -1: -1, 1: -1, 3: 1})
    assert to_bracket(poly) == SymBracket.of([0, -1, 0, 1])


def test_bracket_trims_trailing_zeros():
    assert SymBracket.of([0, -1, 0, 1, 0]) == SymBracket.of([0, -1, 0, 1])
    assert SymBracket.of([0, 0, 0]).coeffs == [0]
    assert SymBracket.of([3, 2]).radius == 1
    assert SymBracket.of([3, 2])[7] == 0


def test_to_bracket_rejects_asymmetric_polynomial():
    with pytest.raises(NotPalindromic):
        LaurentPoly(coeffs={-1: 1, 1: 2}).to_bracket()
    with pytest.raises(NotPalindromic):
        LaurentPoly(coeffs={-2: 1}).to_bracket()


def test_render_and_parse():
    p = LaurentPoly(coeffs={-2: 3, 0: -1, 1: 1})
    assert p.render() == "3*t^-2 + -1*t^0 + 1*t^1"
    assert LaurentPoly.parse(p.render()) == p
    assert LaurentPoly.parse("0") == LaurentPoly.zero()
    assert SymBracket.parse("[-6, 3, 2, -3, 1]").coeffs == [-6, 3, 2, -3, 1]
    assert SymBracket.parse("[]") == SymBracket.of([0])


def test_parse_errors():
    with pytest.raises(PolynomialSyntaxError):
        LaurentPoly.parse("3*x^2")
    with pytest.raises(PolynomialSyntaxError):
        SymBracket.parse("1, 2")
    with pytest.raises(PolynomialSyntaxError):
        SymBracket.parse("[1, b]")


def random_poly(rng: random.Random) -> LaurentPoly:
    p = LaurentPoly.zero()
    for _ in range(rng.randint(0, 4)):
        p = p + LaurentPoly.monomial(rng.randint(-4, 4), rng.randint(-5, 5))
    return p


@pytest.mark.parametrize("seed", range(25))
def test_ring_laws_on_random_polynomials(seed):
    rng = random.Random(seed)
    p, q, r = random_poly(rng), random_poly(rng), random_poly(rng)
    assert p + q == q + p
    assert p * q == q * p
    assert (p + q) + r == p + (q + r)
    assert (p * q) * r == p * (q * r)
    assert p * (q + r) == p * q + p * r
    assert p + LaurentPoly.zero() == p
    assert p * LaurentPoly.constant(1) == p
    assert p - p == LaurentPoly.zero()


@pytest.mark.parametrize("seed", range(25))
def test_reciprocal_is_a_ring_involution(seed):
    rng = random.Random(1000 + seed)
    p, q = random_poly(rng), random_poly(rng)
    assert p.reciprocal().reciprocal() == p
    assert (p + q).reciprocal() == p.reciprocal() + q.reciprocal()
    assert (p * q).reciprocal() == p.reciprocal() * q.reciprocal()
    t0 = Fraction(rng.choice((-1, 1)) * rng.randint(1, 5), rng.randint(1, 5))
    assert p.reciprocal().evaluate(t0) == p.evaluate(1 / t0)


@pytest.mark.parametrize("seed", range(20))
def test_random_palindromes_round_trip_through_brackets(seed):
    rng = random.Random(seed)
    entries = [rng.randint(-9, 9) for _ in range(rng.randint(1, 6))]
    bracket = SymBracket.of(entries)
    poly = bracket.to_poly()
    assert poly.is_palindromic()
    assert poly.to_bracket() == bracket
    # value at 1 of a_0 + sum a_j (t^-j + t^j)
    assert poly.evaluate(1) == entries[0] + 2 * sum(entries[1:])
