"""
Tests for monomials, signed binomials and the Groebner oracle.
"""

import itertools

import pytest


def _permanents_2x3():
    from src.binomial_algebra import hyper_ring
    from src.hyperlattice import Shape
    from src.ideal_generators import FamilyKind, slice_ideal

    shape = Shape((2, 3), 1)
    hr = hyper_ring(shape)
    return hr, slice_ideal(shape, FamilyKind.J_T).polynomials(hr)


def test_monomial_order_is_lex_on_points():
    """Test that larger subscripts give larger variables."""
    from src.binomial_algebra import Monomial, compare

    assert Monomial.of((2, 1, 1)) > Monomial.of((1, 2, 2))
    assert Monomial.of((1, 1), (2, 2)) > Monomial.of((2, 1), (1, 2))
    assert compare(Monomial.of((1, 1)), Monomial.of((1, 2))) == -1
    assert compare(Monomial.of((1, 2), (1, 1)), Monomial.of((1, 1), (1, 2))) == 0


def test_monomial_order_is_multiplicative():
    """Test that m1 < m2 implies m1*m3 < m2*m3."""
    from src.binomial_algebra import Monomial

    points = [(1, 1), (1, 2), (2, 1), (2, 2)]
    quadrics = [Monomial(c) for c in itertools.combinations_with_replacement(points, 2)]
    for m1, m2 in itertools.combinations(sorted(quadrics), 2):
        for p in points:
            m3 = Monomial.of(p)
            assert m1 * m3 < m2 * m3


def test_monomial_arithmetic():
    """Test products, powers, divisibility and quotients."""
    from src.binomial_algebra import Monomial

    m = Monomial.of((1, 1), (2, 2))
    assert (m ** 2).degree == 4
    assert m.divides(m * Monomial.of((1, 2)))
    assert not (m ** 2).divides(m)
    assert (m * Monomial.of((1, 2))).quotient(m) == Monomial.of((1, 2))
    assert m.lcm(Monomial.of((2, 2), (2, 1))) == Monomial.of((1, 1), (2, 2), (2, 1))
    assert str(m) == "x_(1,1)*x_(2,2)"
    with pytest.raises(ValueError, match="does not divide"):
        m.quotient(Monomial.of((1, 2)))


def test_signed_binomial_canonical_form():
    """Test lead ordering, the zero element and the doubled monomial."""
    from src.binomial_algebra import Monomial, SignedBinomial

    small, big = Monomial.of((1, 1), (1, 2)), Monomial.of((2, 1), (2, 2))
    b = SignedBinomial.make(small, big, -1)
    assert b.lead == big and b.trail == small and b.sign == -1
    assert SignedBinomial.make(big, big, 1) is None
    doubled = SignedBinomial.make(big, big, -1)
    assert doubled.is_monomial and doubled.lead == big
    assert str(b) == "x_(2,1)*x_(2,2) + x_(1,1)*x_(1,2)"
    with pytest.raises(ValueError, match="sign must be"):
        SignedBinomial.make(small, big, 2)


def test_ring_conversion():
    """Test that the leading monomial in sympy is the lead of the binomial."""
    from src.binomial_algebra import Monomial, SignedBinomial, hyper_ring
    from src.hyperlattice import Shape

    hr = hyper_ring(Shape((2, 2), 1))
    b = SignedBinomial.make(Monomial.of((1, 1), (2, 2)), Monomial.of((1, 2), (2, 1)), -1)
    f = hr.polynomial(b)
    assert hr.to_monomial(f.LM) == b.lead
    assert [m for m, _ in hr.terms(f)] == [b.lead, b.trail]
    assert hyper_ring(Shape((2, 2), 2)) is hr


def test_single_generator_is_groebner():
    """Test that the permanent of a 2x2 matrix is its own reduced basis."""
    from src.binomial_algebra import buchberger, hyper_ring, is_groebner
    from src.hyperlattice import Shape
    from src.ideal_generators import FamilyKind, slice_ideal

    shape = Shape((2, 2), 1)
    hr = hyper_ring(shape)
    gens = slice_ideal(shape, FamilyKind.J_T).polynomials(hr)
    result = buchberger(gens)
    assert list(result.basis) == gens
    assert not result.truncated
    assert is_groebner(result.basis)


def test_buchberger_output_is_groebner():
    """Test the S-pair criterion on the computed basis of the 2x3 permanents."""
    from src.binomial_algebra import buchberger, is_groebner

    _, gens = _permanents_2x3()
    result = buchberger(gens)
    assert is_groebner(result.basis)
    assert all(g.LC == 1 for g in result.basis)


def test_monomial_in_permanental_ideal():
    """Test x11 x13 x22 lies in the ideal of 2x2 permanents of a 2x3 matrix."""
    from src.binomial_algebra import Membership, ideal_member

    hr, gens = _permanents_2x3()
    f = hr.points_monomial((1, 1), (1, 3), (2, 2))
    assert ideal_member(f, gens, degree_cap=None) == Membership.MEMBER
    assert ideal_member(f, gens, degree_cap=3) == Membership.MEMBER


def test_truncated_basis_reports_unknown():
    """Test that a basis capped below the degree of f cannot decide membership."""
    from src.binomial_algebra import Membership, buchberger, ideal_member

    hr, gens = _permanents_2x3()
    capped = buchberger(gens, degree_cap=2)
    assert capped.truncated
    f = hr.points_monomial((1, 1), (1, 3), (2, 2))
    assert ideal_member(f, gens, basis=capped) == Membership.UNKNOWN


def test_non_member_is_decided():
    """Test that a single variable is not in a quadratic ideal."""
    from src.binomial_algebra import Membership, ideal_member

    hr, gens = _permanents_2x3()
    assert ideal_member(hr.var((1, 1)), gens, degree_cap=None) == Membership.NOT_MEMBER
    assert ideal_member(hr.ring.zero, gens) == Membership.MEMBER


def test_divide_recombines():
    """Test f = sum q_i g_i + r for multivariate division."""
    from src.binomial_algebra import divide

    hr, gens = _permanents_2x3()
    f = hr.points_monomial((1, 1), (1, 3), (2, 2)) + 3 * hr.points_monomial((1, 2), (2, 3))
    quotients, remainder = divide(f, gens)
    assert sum((q * g for q, g in zip(quotients, gens)), hr.ring.zero) + remainder == f


def test_polynomial_text_round_trip():
    """Test that printed polynomials parse back exactly, rationals included."""
    from sympy.polys.domains import QQ

    from src.binomial_algebra import Monomial, format_polynomial, hyper_ring, parse_polynomial
    from src.hyperlattice import Shape

    hr = hyper_ring(Shape((2, 2, 2), 1))
    f = (
        hr.points_monomial((1, 1, 1), (2, 2, 2))
        + hr.monomial(Monomial.of((1, 2, 1), (1, 2, 1)), QQ(-3, 4))
        + 5 * hr.var((2, 1, 1))
    )
    text = format_polynomial(hr, f)
    assert parse_polynomial(hr, text) == f
    assert format_polynomial(hr, parse_polynomial(hr, text)) == text
    assert "-3/4*x_(1,2,1)*x_(1,2,1)" in text
    assert format_polynomial(hr, hr.ring.zero) == "0"


def test_polynomial_parse_errors():
    """Test malformed coefficients and unknown variables."""
    from src.binomial_algebra import hyper_ring, parse_polynomial
    from src.errors import ParseError
    from src.hyperlattice import Shape

    hr = hyper_ring(Shape((2, 2), 1))
    with pytest.raises(ParseError, match="Malformed term"):
        parse_polynomial(hr, "a*x_(1,1)")
    with pytest.raises(ParseError, match="not in the ring"):
        parse_polynomial(hr, "1*x_(3,1)")
    with pytest.raises(ParseError, match="Malformed variable"):
        parse_polynomial(hr, "1*y_(1,1)")


def test_parse_monomial():
    """Test the "(a)(b)(c)" monomial syntax."""
    from src.binomial_algebra import Monomial, parse_monomial
    from src.errors import ParseError

    assert parse_monomial("(1,1,1)(2,2,1) (1,1,1)") == Monomial.of((1, 1, 1), (1, 1, 1), (2, 2, 1))
    with pytest.raises(ParseError):
        parse_monomial("1,1,1")
