"""
Tests for the f/g generators and the slice, G_set and distance-3 families.
"""

import itertools
import math

import pytest


def _expected_slice_count(radices, t):
    total = 0
    n = len(radices)
    for i, j in itertools.combinations(range(n), 2):
        if i >= t and j >= t:
            continue
        others = math.prod(r for k, r in enumerate(radices) if k not in (i, j))
        total += math.comb(radices[i], 2) * math.comb(radices[j], 2) * others
    return total


def test_single_permanent():
    """Test J<1> of a 2x2 matrix is one permanent."""
    from src.binomial_algebra import Monomial
    from src.hyperlattice import Shape
    from src.ideal_generators import FamilyKind, slice_ideal

    family = slice_ideal(Shape((2, 2), 1), FamilyKind.J_T)
    assert len(family) == 1
    (g,) = family
    assert g.lead == Monomial.of((1, 1), (2, 2))
    assert g.trail == Monomial.of((1, 2), (2, 1))
    assert g.sign == -1


@pytest.mark.parametrize(
    "radices,t",
    [((2, 2), 1), ((2, 3), 1), ((3, 3), 1), ((2, 2, 2), 1), ((2, 2, 2), 2), ((3, 2, 2), 2), ((2, 2, 3), 1)],
)
def test_slice_generator_counts(radices, t):
    """Test one generator per 2x2 submatrix on an axis pair meeting [t]."""
    from src.hyperlattice import Shape
    from src.ideal_generators import FamilyKind, slice_ideal

    shape = Shape(radices, t)
    expected = _expected_slice_count(radices, t)
    assert len(slice_ideal(shape, FamilyKind.J_T)) == expected
    assert len(slice_ideal(shape, FamilyKind.I_T)) == expected


def test_slice_top_level_matches_n_minus_one():
    """Test J<n> and J<n-1> coincide."""
    from src.hyperlattice import Shape
    from src.ideal_generators import slice_ideal

    assert slice_ideal(Shape((2, 2, 3), 3)).elements == slice_ideal(Shape((2, 2, 3), 2)).elements


def test_determinants_and_permanents_differ_in_sign():
    """Test I<t> and J<t> share monomials with opposite signs."""
    from src.hyperlattice import Shape
    from src.ideal_generators import FamilyKind, slice_ideal

    shape = Shape((2, 3), 1)
    dets = slice_ideal(shape, FamilyKind.I_T)
    perms = slice_ideal(shape, FamilyKind.J_T)
    assert [(d.lead, d.trail) for d in dets] == [(p.lead, p.trail) for p in perms]
    assert {d.sign for d in dets} == {1}
    assert {p.sign for p in perms} == {-1}


def test_degenerate_generators():
    """Test the zero determinant and the doubled permanent."""
    from src.binomial_algebra import Monomial
    from src.ideal_generators import f_gen, g_gen

    a, b = (1, 1), (2, 2)
    assert f_gen(set(), a, b) is None
    doubled = g_gen(set(), a, b)
    assert doubled.is_monomial and doubled.lead == Monomial.of(a, b)


def test_raw_polynomials_keep_degenerate_cases():
    """Test f_poly vanishes and g_poly doubles when the monomials coincide."""
    from src.binomial_algebra import hyper_ring
    from src.hyperlattice import Shape
    from src.ideal_generators import f_poly, g_poly, switch_product_poly

    hr = hyper_ring(Shape((2, 2), 1))
    a, b = (1, 1), (2, 2)
    assert f_poly(hr, {1, 2}, a, b).is_zero
    assert g_poly(hr, set(), a, b) == 2 * hr.points_monomial(a, b)
    assert switch_product_poly(hr, {1}, a, b, 1) == g_poly(hr, {1}, a, b)


def test_g_set():
    """Test G_{L,K} collects the permanents of pairs differing exactly on L."""
    from src.hyperlattice import Shape
    from src.ideal_generators import G_set

    shape = Shape((2, 2, 2), 1)
    family = G_set(shape, {1, 2}, {1})
    assert len(family) == 2
    for g in family:
        assert {p[2] for p in g.points()} in ({1}, {2})
    assert len(G_set(shape, {1, 2, 3}, {1})) == 2


def test_g_set_rejects_k_outside_l():
    """Test that K must be a subset of L."""
    from src.errors import InvalidArgumentsError
    from src.hyperlattice import Shape
    from src.ideal_generators import G_set

    with pytest.raises(InvalidArgumentsError, match="not a subset"):
        G_set(Shape((2, 2, 2), 1), {1}, {2})


def test_slice_ideal_rejects_other_kinds():
    """Test slice_ideal only builds I_t and J_t."""
    from src.errors import InvalidArgumentsError
    from src.hyperlattice import Shape
    from src.ideal_generators import FamilyKind, slice_ideal

    with pytest.raises(InvalidArgumentsError, match="builds I_t or J_t"):
        slice_ideal(Shape((2, 2), 1), FamilyKind.G_SET)


def test_distance_three_families():
    """Test the monomial and binomial forms of Jhat on the 2x2x2 cube."""
    from src.hyperlattice import Shape
    from src.ideal_generators import checkJ_ideal, hatJ_ideal, hatJ_monomial_form

    cube = Shape((2, 2, 2), 3)
    monomials = hatJ_monomial_form(cube)
    assert len(monomials) == 4
    assert all(m.is_monomial for m in monomials)
    binomials = hatJ_ideal(cube)
    assert len(binomials) == 6
    assert all(b.sign == -1 for b in binomials)
    assert len(checkJ_ideal(cube)) == 12
    assert len(hatJ_monomial_form(Shape((2, 2, 2), 2))) == 0


@pytest.mark.parametrize("radices", [(2, 2, 2), (3, 2, 2)])
def test_hatj_forms_generate_the_same_ideal(radices):
    """Test each Jhat presentation lies in the ideal of the other."""
    from src.binomial_algebra import Membership, hyper_ring, ideal_member
    from src.hyperlattice import Shape
    from src.ideal_generators import hatJ_ideal, hatJ_monomial_form

    shape = Shape(radices, 3)
    hr = hyper_ring(shape)
    binomials = hatJ_ideal(shape).polynomials(hr)
    monomials = hatJ_monomial_form(shape).polynomials(hr)
    for f in binomials:
        assert ideal_member(f, monomials, degree_cap=2) == Membership.MEMBER
    for m in monomials:
        assert ideal_member(m, binomials, degree_cap=2) == Membership.MEMBER


def test_hatj_forms_check():
    """Test the verification suite agrees on the 3x2x2 array."""
    from src.hyperlattice import Shape
    from src.verification import check_hatj_forms

    result = check_hatj_forms(Shape((3, 2, 2), 3))
    assert result.passed, result.detail
    assert result.detail == "30 generators"


def test_relabeling_trailing_axis_preserves_family():
    """Test value permutations of an axis beyond t map J<t> onto itself."""
    from src.binomial_algebra import Monomial, SignedBinomial
    from src.hyperlattice import Shape
    from src.ideal_generators import slice_ideal

    shape = Shape((2, 2, 3), 1)
    relabel = {1: 3, 2: 1, 3: 2}

    def move(m):
        return Monomial(tuple((p[0], p[1], relabel[p[2]]) for p in m.points))

    family = slice_ideal(shape)
    moved = {SignedBinomial.make(move(g.lead), move(g.trail), g.sign) for g in family}
    assert moved == set(family.elements)
