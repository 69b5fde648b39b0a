"""
Generator families of 2x2 permanental and determinantal ideals.
Builds f/g binomials, the slice ideals I<t>, J<t>, the sets G_{L,K}, and the
distance-3 variants Jhat<t>, Jcheck<t>.
"""

import itertools
import logging
from dataclasses import dataclass
from enum import Enum
from typing import Iterable, List, Optional, Sequence, Tuple

from src.binomial_algebra import HyperRing, Monomial, Polynomial, SignedBinomial
from src.errors import InvalidArgumentsError
from src.hyperlattice import Point, Shape, diff_axes, switch, t_distance


logger = logging.getLogger(__name__)


class FamilyKind(str, Enum):
    I_T = "I_t"
    J_T = "J_t"
    JHAT_T = "Jhat_t"
    JCHECK_T = "Jcheck_t"
    G_SET = "G_set"


@dataclass(frozen=True)
class GeneratorFamily:
    """Canonically sorted, duplicate-free generators of one ideal."""

    kind: FamilyKind
    shape: Shape
    elements: Tuple[SignedBinomial, ...]

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def polynomials(self, hr: HyperRing) -> List[Polynomial]:
        return hr.polynomials(self.elements)


def _family(kind: FamilyKind, shape: Shape, elements: Iterable[SignedBinomial]) -> GeneratorFamily:
    unique = sorted(set(elements), key=SignedBinomial.sort_key, reverse=True)
    logger.debug("%s on %s (t=%d): %d generators", kind.value, shape, shape.t, len(unique))
    return GeneratorFamily(kind, shape, tuple(unique))


def _switched(K: Iterable[int], a: Point, b: Point) -> Monomial:
    return Monomial.of(switch(K, a, b), switch(K, b, a))


def f_gen(K: Iterable[int], a: Point, b: Point) -> Optional[SignedBinomial]:
    """
    The determinant-type binomial f_{K,a,b} = x_a x_b - x_{s(K,a,b)} x_{s(K,b,a)}.

    Returns:
        Canonical SignedBinomial, or None when the two monomials coincide
    """
    return SignedBinomial.make(Monomial.of(a, b), _switched(K, a, b), 1)


def g_gen(K: Iterable[int], a: Point, b: Point) -> Optional[SignedBinomial]:
    """
    The permanent-type binomial g_{K,a,b} = x_a x_b + x_{s(K,a,b)} x_{s(K,b,a)}.

    When both monomials coincide the element is 2*x_a x_b, stored as x_a x_b.
    """
    return SignedBinomial.make(Monomial.of(a, b), _switched(K, a, b), -1)


def switch_product_poly(
    hr: HyperRing, K: Iterable[int], a: Point, b: Point, sign: int
) -> Polynomial:
    """x_a x_b + sign * x_{s(K,a,b)} x_{s(K,b,a)}, vanishing and doubled cases included."""
    K = frozenset(K)
    return hr.points_monomial(a, b) + sign * hr.points_monomial(switch(K, a, b), switch(K, b, a))


def f_poly(hr: HyperRing, K: Iterable[int], a: Point, b: Point) -> Polynomial:
    return switch_product_poly(hr, K, a, b, -1)


def g_poly(hr: HyperRing, K: Iterable[int], a: Point, b: Point) -> Polynomial:
    return switch_product_poly(hr, K, a, b, 1)


def _pairs(shape: Shape) -> Iterable[Tuple[Point, Point]]:
    return itertools.combinations(shape.point_list, 2)


def slice_ideal(shape: Shape, kind: FamilyKind = FamilyKind.J_T) -> GeneratorFamily:
    """
    Slice determinants (I<t>) or slice permanents (J<t>).

    One generator per pair {a,b} at distance 2 and axis i in [t] with a_i != b_i,
    deduplicated under canonical orientation.
    """
    if kind not in (FamilyKind.I_T, FamilyKind.J_T):
        raise InvalidArgumentsError(f"slice_ideal builds I_t or J_t, not {kind.value}")
    build = f_gen if kind == FamilyKind.I_T else g_gen
    elements = []
    for a, b in _pairs(shape):
        axes = diff_axes(a, b)
        if len(axes) != 2:
            continue
        for i in sorted(axes):
            if i <= shape.t:
                elements.append(build({i}, a, b))
    return _family(kind, shape, (e for e in elements if e is not None))


def G_set(shape: Shape, L: Iterable[int], K: Iterable[int]) -> GeneratorFamily:
    """
    All g_{K,a,b} whose points differ exactly on L.

    Raises:
        InvalidArgumentsError: If K is not a subset of L
    """
    L = shape.validate_axes(L)
    K = shape.validate_axes(K)
    if not K <= L:
        raise InvalidArgumentsError(f"K={sorted(K)} is not a subset of L={sorted(L)}")
    elements = [g_gen(K, a, b) for a, b in _pairs(shape) if diff_axes(a, b) == L]
    return _family(FamilyKind.G_SET, shape, (e for e in elements if e is not None))


def distance3_pairs(shape: Shape) -> List[Tuple[Point, Point]]:
    """Pairs with d(a,b) = d_t(a,b) = 3."""
    pairs = []
    for a, b in _pairs(shape):
        axes = diff_axes(a, b)
        if len(axes) == 3 and all(i <= shape.t for i in axes):
            pairs.append((a, b))
    return pairs


def hatJ_ideal(shape: Shape) -> GeneratorFamily:
    """Binomial form of Jhat<t>: g_{i,a,b} over distance-3 pairs and i in D_t(a,b)."""
    elements = []
    for a, b in distance3_pairs(shape):
        _, axes = t_distance(a, b, shape.t)
        elements.extend(g_gen({i}, a, b) for i in sorted(axes))
    return _family(FamilyKind.JHAT_T, shape, (e for e in elements if e is not None))


def hatJ_monomial_form(shape: Shape) -> GeneratorFamily:
    """Monomial form of Jhat<t>: x_a x_b over distance-3 pairs."""
    elements = [SignedBinomial.monomial(Monomial.of(a, b)) for a, b in distance3_pairs(shape)]
    return _family(FamilyKind.JHAT_T, shape, elements)


def checkJ_ideal(shape: Shape) -> GeneratorFamily:
    """Jcheck<t> = J<t> + Jhat<t>."""
    elements = list(slice_ideal(shape, FamilyKind.J_T)) + list(hatJ_ideal(shape))
    return _family(FamilyKind.JCHECK_T, shape, elements)


def _chain_steps(i: int, chain: Sequence[Point], b: Point, start: str) -> List[int]:
    """The axis l_j of every step, after validating the chain."""
    if start not in ("f", "g"):
        raise InvalidArgumentsError(f"start must be 'f' or 'g', not {start!r}")
    if len(chain) < 2:
        raise InvalidArgumentsError("A chain needs at least two points")
    if b[i - 1] == chain[0][i - 1]:
        raise InvalidArgumentsError(f"b must differ from the chain on axis {i}")
    steps = []
    for prev, cur in zip(chain, chain[1:]):
        step = diff_axes(prev, cur)
        if len(step) != 1 or i in step:
            raise InvalidArgumentsError(f"{prev} -> {cur} is not a single step off axis {i}")
        steps.extend(step)
    return steps


def chain_claim(
    shape: Shape, hr: HyperRing, i: int, chain: Sequence[Point], b: Point, start: str = "f"
) -> Tuple[Polynomial, List[Polynomial]]:
    """
    Difference of the two sides of the chain multiplication rule.

    For a chain a_0..a_k whose consecutive points differ in exactly one axis
    l_j != i, and b with b_i != (a_0)_i, multiplying f_{i,a_0,b} by
    x_{a_1}..x_{a_k} gives x_{a_0}..x_{a_{k-1}} times g_{i,a_k,b} (k odd) or
    f_{i,a_k,b} (k even) modulo the sum of the ideals G_{{i,l_j},{i}}. Starting
    from g swaps the roles of f and g.

    Returns:
        The difference of both sides and the generators of the sum of G_{{i,l_j},{i}}
    """
    steps = _chain_steps(i, chain, b, start)
    k = len(chain) - 1
    first = f_poly if start == "f" else g_poly
    other = g_poly if start == "f" else f_poly
    last = other if k % 2 == 1 else first
    lhs = hr.points_monomial(*chain[1:]) * first(hr, {i}, chain[0], b)
    rhs = hr.points_monomial(*chain[:-1]) * last(hr, {i}, chain[-1], b)
    generators: List[Polynomial] = []
    for axis in sorted(set(steps)):
        generators.extend(G_set(shape, {i, axis}, {i}).polynomials(hr))
    return lhs - rhs, generators


@dataclass(frozen=True)
class ChainTerm:
    """multiplier * generator, with generator in G_{{i,axis},{i}}."""

    multiplier: Polynomial
    generator: SignedBinomial
    axis: int


def chain_certificate(
    shape: Shape, hr: HyperRing, i: int, chain: Sequence[Point], b: Point, start: str = "f"
) -> List[ChainTerm]:
    """
    Explicit combination of G_{{i,l_j},{i}} elements equal to the chain_claim difference.

    Step j contributes -/+ x_{s(i,b,a_{j-1})} g_{i,a_j,s(i,a_{j-1},b)} times
    the chain variables other than a_{j-1} and a_j; the sign is - when the
    binomial entering the step is f and + when it is g.
    """
    steps = _chain_steps(i, chain, b, start)
    I = {i}
    terms = []
    entering = start
    for j, axis in enumerate(steps, start=1):
        prev, cur = chain[j - 1], chain[j]
        generator = g_gen(I, cur, switch(I, prev, b))
        others = list(chain[: j - 1]) + list(chain[j + 1 :])
        multiplier = hr.var(switch(I, b, prev)) * hr.points_monomial(*others)
        terms.append(ChainTerm(-multiplier if entering == "f" else multiplier, generator, axis))
        entering = "g" if entering == "f" else "f"
    return terms


def chain_walks(shape: Shape, i: int, start: Point, max_steps: int) -> Iterable[Tuple[Point, ...]]:
    """Walks from start of 1..max_steps single-axis steps avoiding axis i."""
    frontier: List[Tuple[Point, ...]] = [(start,)]
    for _ in range(max_steps):
        extended = []
        for walk in frontier:
            last = walk[-1]
            for axis in range(1, shape.n + 1):
                if axis == i:
                    continue
                for value in range(1, shape.radices[axis - 1] + 1):
                    if value != last[axis - 1]:
                        step = last[: axis - 1] + (value,) + last[axis:]
                        extended.append(walk + (step,))
        yield from extended
        frontier = extended


def syzygy_combination(hr: HyperRing, i: int, a: Point, a1: Point, b: Point) -> Polynomial:
    """
    x_b f_{i,a,a1} - x_{a1} f_{i,a,b} - x_{s(i,b,a)} g_{i,a1,s(i,a,b)}
    + x_{s(i,a,a1)} g_{i,s(i,a1,a),b}, which vanishes identically.
    """
    I = {i}
    return (
        hr.var(b) * f_poly(hr, I, a, a1)
        - hr.var(a1) * f_poly(hr, I, a, b)
        - hr.var(switch(I, b, a)) * g_poly(hr, I, a1, switch(I, a, b))
        + hr.var(switch(I, a, a1)) * g_poly(hr, I, switch(I, a1, a), b)
    )


def switch_relations(
    hr: HyperRing, L: Iterable[int], l: int, a: Point, b: Point
) -> List[Tuple[Polynomial, Polynomial]]:
    """
    The four relations between f and g on L and L+{l}, as (lhs, rhs) pairs.

    With s = s(L,a,b) and s' = s(L,b,a):
    g_{L+l} = f_L + g_{l,s,s'} = g_L - f_{l,s,s'} and
    f_{L+l} = f_L + f_{l,s,s'} = g_L - g_{l,s,s'}.
    """
    L = frozenset(L)
    if l in L:
        raise InvalidArgumentsError(f"Axis {l} already belongs to L={sorted(L)}")
    Ll = L | {l}
    s, s_ = switch(L, a, b), switch(L, b, a)
    return [
        (g_poly(hr, Ll, a, b), f_poly(hr, L, a, b) + g_poly(hr, {l}, s, s_)),
        (g_poly(hr, Ll, a, b), g_poly(hr, L, a, b) - f_poly(hr, {l}, s, s_)),
        (f_poly(hr, Ll, a, b), f_poly(hr, L, a, b) + f_poly(hr, {l}, s, s_)),
        (f_poly(hr, Ll, a, b), g_poly(hr, L, a, b) - g_poly(hr, {l}, s, s_)),
    ]
