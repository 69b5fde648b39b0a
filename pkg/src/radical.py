"""
Radical of J<t>: monomial membership, the sets M and M_3, and a degree-bounded
scan for binomials lying in every minimal prime.
"""

import itertools
import logging
from functools import lru_cache
from typing import Dict, Iterable, List, Optional, Tuple

from src.binomial_algebra import (
    Membership,
    Monomial,
    SignedBinomial,
    buchberger,
    hyper_ring,
    ideal_member,
)
from src.config import settings
from src.hyperlattice import Point, Shape
from src.ideal_generators import FamilyKind, slice_ideal
from src.prime_structure import SignedSetAlgebra, algebra_for, minimal_prime_sets
from src.signed_sets import PointSet, _check_cap, is_subset_of_signed


logger = logging.getLogger(__name__)

NormalFormVector = Tuple[Optional[Monomial], ...]


@lru_cache(maxsize=32)
def _prime_algebras(shape: Shape, cap: Optional[int]) -> Tuple[SignedSetAlgebra, ...]:
    return tuple(algebra_for(S) for S in minimal_prime_sets(shape, FamilyKind.J_T, cap))


def prime_algebras(shape: Shape, cap: Optional[int] = None) -> Tuple[SignedSetAlgebra, ...]:
    """Normal-form engines of the minimal primes Q_S of J<t>."""
    return _prime_algebras(shape, cap)


def _support(shape: Shape, M: Iterable[Point]) -> PointSet:
    return PointSet(shape, M)


def radical_monomial_member(shape: Shape, M: Iterable[Point], cap: Optional[int] = None) -> bool:
    """
    Whether x_M lies in the radical of J<t>.

    x_M is in a prime Q_S exactly when some point of M is outside S, so x_M is
    in the radical iff the support of M fits in none of the maximal t-signed
    sets. Multisets of size at most two never qualify.

    Raises:
        CapExceededError: If the shape has more points than the cap
    """
    M = tuple(M)
    support = _support(shape, M)
    if len(M) <= 2:
        return False
    return not any(support.members <= a.S.members for a in prime_algebras(shape, cap))


def radical_monomial_member_by_closure(shape: Shape, M: Iterable[Point]) -> bool:
    """Same decision through switchable closures; needs no enumeration."""
    return not is_subset_of_signed(_support(shape, M))


def M3_sets(shape: Shape, cap: Optional[int] = None) -> List[PointSet]:
    """Three-element point sets contained in no t-signed set."""
    _check_cap(shape, cap)
    found = [
        PointSet(shape, triple)
        for triple in itertools.combinations(shape.point_list, 3)
        if not is_subset_of_signed(PointSet(shape, triple))
    ]
    logger.info("Shape %s t=%d: %d sets in M_3", shape, shape.t, len(found))
    return sorted(found, key=PointSet.sort_key)


def monomial_in_m3_ideal(shape: Shape, M: Iterable[Point], cap: Optional[int] = None) -> bool:
    """Whether x_M lies in the monomial ideal (x_U : U in M_3)."""
    support = frozenset(M)
    return any(U.members <= support for U in M3_sets(shape, cap))


@lru_cache(maxsize=32)
def _slice_basis(shape: Shape):
    hr = hyper_ring(shape)
    return buchberger(slice_ideal(shape, FamilyKind.J_T).polynomials(hr))


def power_membership(shape: Shape, M: Iterable[Point], k: int) -> Membership:
    """
    Decide x_M^k in J<t> against the full Groebner basis of J<t>.

    Raises:
        ValueError: If k is not positive
    """
    if k < 1:
        raise ValueError(f"Power must be positive, got {k}")
    hr = hyper_ring(shape)
    f = hr.monomial(Monomial(tuple(M)) ** k)
    return ideal_member(f, (), basis=_slice_basis(shape))


def radical_member_by_powers(shape: Shape, M: Iterable[Point], max_power: int = 4) -> bool:
    """Oracle view of radical membership: some x_M^k with k <= max_power lies in J<t>."""
    M = tuple(M)
    return any(
        power_membership(shape, M, k) == Membership.MEMBER for k in range(1, max_power + 1)
    )


def m3_reduction_member(
    shape: Shape, M: Iterable[Point], degree_cap: Optional[int] = None, cap: Optional[int] = None
) -> Membership:
    """Decide x_M in J<t> + (x_U : U in M_3) with a degree-capped oracle run."""
    hr = hyper_ring(shape)
    M = Monomial(tuple(M))
    generators = slice_ideal(shape, FamilyKind.J_T).polynomials(hr)
    generators += [hr.points_monomial(*U.sorted_members) for U in M3_sets(shape, cap)]
    degree_cap = degree_cap if degree_cap is not None else max(M.degree, 3)
    return ideal_member(hr.monomial(M), generators, degree_cap)


def embedded_witness_generators(shape: Shape) -> List[SignedBinomial]:
    """J<t> + (x_a^3 : a in N), the stated embedded component."""
    cubes = [SignedBinomial.monomial(Monomial.of(a, a, a)) for a in shape.point_list]
    return list(slice_ideal(shape, FamilyKind.J_T)) + cubes


def _monomials(shape: Shape, degree: int) -> Iterable[Monomial]:
    for combo in itertools.combinations_with_replacement(shape.point_list, degree):
        yield Monomial(combo)


def _signature(
    m: Monomial, algebras: Tuple[SignedSetAlgebra, ...]
) -> Optional[Tuple[NormalFormVector, Tuple[int, ...], int]]:
    # (normal forms, signs scaled so the first live one is +1, the scale)
    forms = []
    signs = []
    for algebra in algebras:
        sign, nf = algebra.normal_form(m)
        forms.append(nf)
        signs.append(sign if nf is not None else 0)
    live = [s for s in signs if s]
    if not live:
        return None
    scale = live[0]
    return tuple(forms), tuple(s * scale for s in signs), scale


def bounded_radical_binomials(
    shape: Shape, degree_cap: Optional[int] = None, cap: Optional[int] = None
) -> List[SignedBinomial]:
    """
    Binomials x_M - sign*x_M' of degree at most the cap lying in every minimal
    prime of J<t>.

    Two monomials qualify when their normal forms agree prime by prime, both
    vanishing or both equal up to one global sign. Monomials vanishing in every
    prime are radical monomials and are left to radical_monomial_member.

    Returns:
        Canonically sorted binomials, degree by degree
    """
    degree_cap = degree_cap if degree_cap is not None else settings.radical_degree_cap
    algebras = prime_algebras(shape, cap)
    found: List[SignedBinomial] = []
    for degree in range(1, degree_cap + 1):
        groups: Dict[Tuple[NormalFormVector, Tuple[int, ...]], List[Tuple[Monomial, int]]] = {}
        for m in _monomials(shape, degree):
            signature = _signature(m, algebras)
            if signature is None:
                continue
            forms, signs, scale = signature
            groups.setdefault((forms, signs), []).append((m, scale))
        for members in groups.values():
            for (m1, s1), (m2, s2) in itertools.combinations(members, 2):
                element = SignedBinomial.make(m1, m2, s1 * s2)
                if element is not None:
                    found.append(element)
        logger.debug("Degree %d: %d classes of monomials", degree, len(groups))
    logger.info(
        "Shape %s t=%d: %d radical binomials up to degree %d",
        shape,
        shape.t,
        len(found),
        degree_cap,
    )
    return sorted(set(found), key=lambda b: (b.degree, b.sort_key()))
