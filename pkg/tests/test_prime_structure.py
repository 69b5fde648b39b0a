"""
Tests for signed h-binomials, Q-ideals, normal forms and minimal primes.
"""

import pytest


def _square():
    from src.hyperlattice import Shape
    from src.signed_sets import PointSet

    shape = Shape((2, 2), 1)
    return shape, PointSet(shape, shape.points())


def test_h_gen_sign_follows_path_length():
    """Test h on the 2x2 square is the permanent."""
    from src.binomial_algebra import Monomial
    from src.prime_structure import h_gen

    _, S = _square()
    h = h_gen(S, {1}, (1, 1), (2, 2))
    assert h.lead == Monomial.of((2, 2), (1, 1))
    assert h.trail == Monomial.of((2, 1), (1, 2))
    assert h.sign == -1


def test_h_gen_rejects_bad_arguments():
    """Test K outside the head difference and disconnected points are refused."""
    from src.errors import InvalidArgumentsError
    from src.hyperlattice import Shape
    from src.prime_structure import h_gen
    from src.signed_sets import PointSet

    shape, S = _square()
    with pytest.raises(InvalidArgumentsError, match="head difference"):
        h_gen(S, {2}, (1, 1), (2, 2))
    apart = PointSet(Shape((2, 2), 2), [(1, 1), (2, 2)])
    with pytest.raises(InvalidArgumentsError, match="not connected"):
        h_gen(apart, {1}, (1, 1), (2, 2))


def test_q_ideal_requires_signed_set():
    """Test NotSignedError carries a walk or the offending pair."""
    from src.errors import NotSignedError
    from src.hyperlattice import Shape
    from src.prime_structure import Q_ideal
    from src.signed_sets import PointSet

    shape = Shape((2, 3), 1)
    with pytest.raises(NotSignedError, match="odd closed walk") as info:
        Q_ideal(PointSet(shape, shape.points()))
    assert info.value.witness[0] == info.value.witness[-1]

    with pytest.raises(NotSignedError, match="switchable") as info:
        Q_ideal(PointSet(Shape((2, 2), 1), [(1, 1), (2, 2)]))
    assert info.value.witness == ((1, 1), (2, 2))


def test_q_ideal_of_cube():
    """Test Q_N on the cube with t = 1 has four permanents and two determinants."""
    from src.hyperlattice import Shape
    from src.prime_structure import Q_ideal
    from src.signed_sets import PointSet

    shape = Shape((2, 2, 2), 1)
    Q = Q_ideal(PointSet(shape, shape.points()))
    assert Q.variable_gens == ()
    assert len(Q.binomial_gens) == 6
    assert sorted(b.sign for b in Q.binomial_gens) == [-1, -1, -1, -1, 1, 1]


def test_q_ideal_of_singleton_is_variables():
    """Test a one-point set gives the ideal of every other variable."""
    from src.hyperlattice import Shape
    from src.prime_structure import Q_ideal, var_ideal
    from src.signed_sets import PointSet

    shape = Shape((2, 2, 2), 2)
    S = PointSet(shape, [(1, 1, 1)])
    Q = Q_ideal(S)
    assert len(Q.variable_gens) == 7
    assert Q.binomial_gens == ()
    assert Q == var_ideal(S)


def test_normal_form_on_square():
    """Test generic and closed-form reduction of x11 x22."""
    from src.binomial_algebra import Monomial
    from src.prime_structure import normal_form, quad_normal_form

    _, S = _square()
    expected = (-1, Monomial.of((1, 2), (2, 1)))
    assert normal_form(Monomial.of((1, 1), (2, 2)), S) == expected
    assert quad_normal_form((1, 1), (2, 2), S) == expected
    assert normal_form(Monomial.of((1, 2), (2, 1)), S) == (1, Monomial.of((1, 2), (2, 1)))


def test_normal_form_outside_support_is_zero():
    """Test a variable outside S kills the monomial."""
    from src.binomial_algebra import Monomial
    from src.hyperlattice import Shape
    from src.prime_structure import normal_form
    from src.signed_sets import PointSet

    S = PointSet(Shape((2, 2), 1), [(1, 1), (1, 2)])
    assert normal_form(Monomial.of((1, 1), (2, 2)), S) == (1, None)


def test_big_difference_and_extremal_points():
    """Test D, Mm and mM on the 2x2 square."""
    from src.prime_structure import Mm, big_difference, mM

    shape, _ = _square()
    assert big_difference(shape, (2, 2), (1, 1)).D == -1
    assert Mm(shape, (2, 2), (1, 1)) == (2, 1)
    assert mM(shape, (2, 2), (1, 1)) == (1, 2)


def test_big_difference_mirrors_when_b_wins():
    """Test equal tails with b larger at l take D from the reversed pair."""
    from src.prime_structure import big_difference

    shape, _ = _square()
    result = big_difference(shape, (1, 1), (2, 1))
    assert result.mirrored
    assert result.D == big_difference(shape, (2, 1), (1, 1)).D == 0


def test_big_difference_vanishes_past_the_head():
    """Test D = 0 when the first collapsed difference lies in the tail."""
    from src.hyperlattice import Shape
    from src.prime_structure import big_difference

    result = big_difference(Shape((2, 2, 2), 1), (1, 1, 1), (1, 2, 2))
    assert result.l == 2
    assert result.D == 0


def test_mm_is_not_associative():
    """Test the extremal point depends on how triples are grouped."""
    from src.hyperlattice import Shape
    from src.prime_structure import Mm

    shape = Shape((2, 3, 4), 3)
    a, b, c = (2, 2, 2), (1, 3, 3), (2, 2, 4)
    assert Mm(shape, a, b) == (2, 2, 2)
    assert Mm(shape, a, c) == (2, 2, 4)
    assert Mm(shape, c, b) == (2, 2, 3)
    assert Mm(shape, Mm(shape, a, b), c) != Mm(shape, a, Mm(shape, c, b))


def test_quadratic_normal_form_needs_connection():
    """Test the closed form refuses points in different components."""
    from src.errors import NotConnectedError
    from src.hyperlattice import Shape
    from src.prime_structure import quad_normal_form
    from src.signed_sets import PointSet

    S = PointSet(Shape((2, 2, 2), 1), [(1, 1, 1), (2, 2, 2)])
    with pytest.raises(NotConnectedError):
        quad_normal_form((1, 1, 1), (2, 2, 2), S)


@pytest.mark.parametrize("t", [1, 2, 3])
def test_groebner_elements_are_sign_consistent(t):
    """Test every switch set gives the same sign for each leading pair."""
    from src.hyperlattice import Shape
    from src.prime_structure import algebra_for, minimal_prime_sets

    shape = Shape((2, 2, 2), t)
    for S in minimal_prime_sets(shape):
        elements = algebra_for(S).groebner_elements
        leads = [(e.lead, e.trail) for e in elements]
        assert len(leads) == len(set(leads))


def test_ideal_containment():
    """Test Q_N lies in Q_T for T inside N, and not the other way round."""
    from src.errors import InvalidArgumentsError
    from src.hyperlattice import Shape
    from src.ideal_generators import slice_ideal
    from src.prime_structure import IdealPresentation, Q_ideal, ideal_leq
    from src.signed_sets import PointSet

    shape, N = _square()
    T = PointSet(shape, [(1, 1), (1, 2)])
    assert ideal_leq(Q_ideal(N), Q_ideal(T))
    assert not ideal_leq(Q_ideal(T), Q_ideal(N))
    J = IdealPresentation(shape, (), slice_ideal(shape), "J")
    assert ideal_leq(J, Q_ideal(N))
    assert not ideal_leq(Q_ideal(T), J, degree_cap=4)
    with pytest.raises(InvalidArgumentsError, match="different shapes"):
        ideal_leq(J, Q_ideal(PointSet(Shape((2, 2), 2), N.members)))


@pytest.mark.parametrize(
    "radices,t,expected",
    [
        ((2, 2), 1, 1),
        ((2, 3), 1, 5),
        ((3, 3), 1, 15),
        ((2, 2, 2), 1, 3),
        ((2, 2, 2), 2, 5),
        ((2, 2, 2), 3, 5),
        ((3, 2, 2), 1, 5),
        ((3, 2, 2), 2, 19),
        ((2, 2, 3), 1, 17),
        ((2, 2, 3), 2, 19),
    ],
)
def test_minimal_prime_counts(radices, t, expected):
    """Test the number of minimal primes of J<t>."""
    from src.hyperlattice import Shape
    from src.prime_structure import minimal_primes

    assert len(minimal_primes(Shape(radices, t))) == expected


def test_two_dimensional_closed_form():
    """Test the closed form for m x n matrices against enumeration."""
    from src.hyperlattice import Shape
    from src.prime_structure import minimal_primes, two_dimensional_prime_count

    assert two_dimensional_prime_count(3, 3) == 15
    assert two_dimensional_prime_count(3, 4) == 25
    assert len(minimal_primes(Shape((3, 4), 1))) == 25


@pytest.mark.parametrize("radices,expected", [((2, 2, 2), 16), ((3, 2, 2), 25)])
def test_hatj_prime_counts(radices, expected):
    """Test Jhat<3> primes are variable ideals of maximal independent sets."""
    from src.hyperlattice import Shape
    from src.prime_structure import minimal_primes

    primes = minimal_primes(Shape(radices, 3), "hatj")
    assert len(primes) == expected
    assert all(not Q.binomial_gens for Q in primes)


def test_hatj_closed_form_on_cube():
    """Test the Jhat closed form where it matches the enumeration."""
    from src.prime_structure import hatj_prime_count_formula

    assert hatj_prime_count_formula((2, 2, 2)) == 16


@pytest.mark.parametrize("radices,expected", [((2, 2, 2), 6), ((3, 2, 2), 19)])
def test_checkj_prime_counts(radices, expected):
    """Test Jcheck<3> primes against enumeration and the closed form."""
    from src.hyperlattice import Shape
    from src.prime_structure import checkj_prime_count_formula, minimal_primes

    assert len(minimal_primes(Shape(radices, 3), "checkj")) == expected
    assert checkj_prime_count_formula(radices) == expected


def test_minimal_prime_sets_rejects_other_kinds():
    """Test only J, Jhat and Jcheck have a prime description."""
    from src.errors import InvalidArgumentsError
    from src.hyperlattice import Shape
    from src.prime_structure import minimal_prime_sets

    with pytest.raises(InvalidArgumentsError, match="No minimal prime description"):
        minimal_prime_sets(Shape((2, 2), 1), "I_t")


def test_cube_maximal_sets_for_t1():
    """Test the cube with t = 1 has N and two pairs of opposite edges as maximal sets."""
    from src.hyperlattice import Shape
    from src.prime_structure import Q_ideal
    from src.signed_sets import maximal_t_signed

    shape = Shape((2, 2, 2), 1)
    maximal = maximal_t_signed(shape)
    assert sorted(len(S) for S in maximal) == [4, 4, 8]
    pairs = [S for S in maximal if len(S) == 4]
    assert {(1, 1, 1), (2, 1, 1), (1, 2, 2), (2, 2, 2)} in [set(S.members) for S in pairs]
    for S in pairs:
        Q = Q_ideal(S)
        assert len(Q.variable_gens) == 4
        assert Q.binomial_gens == ()
