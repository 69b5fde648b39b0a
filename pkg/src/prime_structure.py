"""
Prime ideals attached to t-signed sets and their Groebner bases.
Signed h-binomials, Var/Jtilde/Q presentations, sign-tracked normal forms and
the minimal primes of J<t>, Jhat<t> and Jcheck<t>.
"""

import itertools
import logging
import math
import random
from dataclasses import dataclass
from functools import cached_property, lru_cache
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple, Union

from src.binomial_algebra import (
    HyperRing,
    Monomial,
    Polynomial,
    SignedBinomial,
    buchberger,
    hyper_ring,
    reduce,
)
from src.errors import (
    InconsistentSignError,
    InvalidArgumentsError,
    NotConnectedError,
    NotSignedError,
)
from src.hyperlattice import (
    AxisSet,
    CollapsedPoint,
    Point,
    Shape,
    collapse,
    diff_axes,
    switch,
    uncollapse,
)
from src.ideal_generators import FamilyKind
from src.signed_sets import (
    PointSet,
    _check_cap,
    distance3_graph,
    enumerate_t_signed,
    is_t_switchable,
    maximal_independent_sets,
    maximal_t_signed,
)


logger = logging.getLogger(__name__)

NormalForm = Tuple[int, Optional[Monomial]]


@dataclass(frozen=True)
class SignLedger:
    """Switch sets and sign exponent of a cubic reduction (a,b,c) -> (A,B,C)."""

    k1: AxisSet
    k2: AxisSet
    k3: AxisSet
    p: int

    @property
    def parity(self) -> int:
        return self.p % 2


@dataclass(frozen=True)
class BigDifference:
    """
    First collapsed index where a and b differ, and the big difference D.

    ``mirrored`` records that D was taken from D(b, a).
    """

    l: int
    D: int
    mirrored: bool = False


class IdealPresentation:
    """
    Canonical generators of Var + (binomials) for a fixed shape and t.

    Equality compares shape, t and the two sorted generator lists only; the
    kind and support are provenance.
    """

    def __init__(
        self,
        shape: Shape,
        variable_gens: Iterable[Point],
        binomial_gens: Iterable[SignedBinomial],
        kind: str = "generic",
        support: Optional[Iterable[Point]] = None,
    ):
        self.shape = shape
        self.variable_gens: Tuple[Point, ...] = tuple(sorted(set(variable_gens)))
        self.binomial_gens: Tuple[SignedBinomial, ...] = tuple(
            sorted(set(binomial_gens), key=SignedBinomial.sort_key, reverse=True)
        )
        self.kind = kind
        self.support: Optional[FrozenSet[Point]] = (
            frozenset(support) if support is not None else None
        )

    def key(self) -> tuple:
        return (
            self.shape.radices,
            self.shape.t,
            self.variable_gens,
            tuple(b.sort_key() for b in self.binomial_gens),
        )

    def __eq__(self, other) -> bool:
        return isinstance(other, IdealPresentation) and self.key() == other.key()

    def __hash__(self) -> int:
        return hash(self.key())

    def __len__(self) -> int:
        return len(self.variable_gens) + len(self.binomial_gens)

    def __repr__(self) -> str:
        return (
            f"IdealPresentation({self.kind}, {len(self.variable_gens)} variables, "
            f"{len(self.binomial_gens)} binomials)"
        )

    def elements(self) -> List[SignedBinomial]:
        """All generators as SignedBinomials, variables first."""
        variables = [SignedBinomial.monomial(Monomial.of(p)) for p in self.variable_gens]
        return variables + list(self.binomial_gens)

    def polynomials(self, hr: Optional[HyperRing] = None) -> List[Polynomial]:
        hr = hr or hyper_ring(self.shape)
        return hr.polynomials(self.elements())


def _sign(exponent: int) -> int:
    return -1 if exponent % 2 else 1


def _head_diff(shape: Shape, a: Point, b: Point) -> AxisSet:
    return frozenset(i for i in diff_axes(a, b) if i <= shape.t)


def _nonempty_subsets(axes: AxisSet) -> Iterable[AxisSet]:
    ordered = sorted(axes)
    for size in range(1, len(ordered) + 1):
        for combo in itertools.combinations(ordered, size):
            yield frozenset(combo)


def h_exponent(S: PointSet, K: AxisSet, a: Point, b: Point) -> int:
    """#K * ipl_S(a,b); the sign of h is (-1) to this power."""
    if not K:
        return 0
    return len(K) * S.inner_path_length(a, b)


def _h_unchecked(S: PointSet, K: AxisSet, a: Point, b: Point) -> Optional[SignedBinomial]:
    sign = _sign(h_exponent(S, K, a, b))
    return SignedBinomial.make(
        Monomial.of(a, b), Monomial.of(switch(K, a, b), switch(K, b, a)), sign
    )


def h_gen(S: PointSet, K: Iterable[int], a: Point, b: Point) -> Optional[SignedBinomial]:
    """
    h_{S,K,a,b} = x_a x_b - (-1)^(#K * ipl_S(a,b)) x_{s(K,a,b)} x_{s(K,b,a)}.

    Returns:
        Canonical SignedBinomial, or None for the zero element (K empty, d = 1)

    Raises:
        InvalidArgumentsError: If K leaves {i in [t]: a_i != b_i} or a, b are
            not connected in S
    """
    K = frozenset(K)
    if not K <= _head_diff(S.shape, a, b):
        raise InvalidArgumentsError(
            f"K={sorted(K)} is not inside the head difference of {a} and {b}"
        )
    if not S.same_component(a, b):
        raise InvalidArgumentsError(f"{a} and {b} are not connected in {S!r}")
    return _h_unchecked(S, K, a, b)


def h_poly(hr: HyperRing, S: PointSet, K: Iterable[int], a: Point, b: Point) -> Polynomial:
    """h_{S,K,a,b} as a raw polynomial, zero and doubled cases included."""
    K = frozenset(K)
    sign = _sign(h_exponent(S, K, a, b))
    return hr.points_monomial(a, b) - sign * hr.points_monomial(
        switch(K, a, b), switch(K, b, a)
    )


def telescope_h(hr: HyperRing, S: PointSet, K: Iterable[int], a: Point, b: Point) -> Polynomial:
    """
    Sum over K = {k_1 < .. < k_l} of (-1)^((i-1)*ipl(a,b)) times
    h_{S, k_i, s(K_<i, a, b), s(K_<i, b, a)}; equals h_{S,K,a,b}.
    """
    ordered = sorted(K)
    ipl = S.inner_path_length(a, b)
    total = hr.ring.zero
    for i, k in enumerate(ordered):
        prefix = frozenset(ordered[:i])
        c, c_ = switch(prefix, a, b), switch(prefix, b, a)
        total += _sign(i * ipl) * h_poly(hr, S, {k}, c, c_)
    return total


def connected_pairs(S: PointSet) -> List[Tuple[Point, Point]]:
    """Unordered pairs a < b lying in the same component."""
    return [
        (a, b)
        for comp in S.components
        for a, b in itertools.combinations(comp, 2)
    ]


def j_tilde_generators(S: PointSet) -> List[SignedBinomial]:
    """h_{S,i,a,b} over connected a, b and i in [t] with a_i != b_i (nonzero only)."""
    elements = set()
    for a, b in connected_pairs(S):
        for i in sorted(_head_diff(S.shape, a, b)):
            element = _h_unchecked(S, frozenset({i}), a, b)
            if element is not None:
                elements.add(element)
    return sorted(elements, key=SignedBinomial.sort_key, reverse=True)


def _require_signed(S: PointSet) -> None:
    check = is_t_switchable(S)
    if not check.ok:
        a, b, i = check.witness
        raise NotSignedError(
            f"Set is not {S.shape.t}-switchable: s({i},{a},{b}) or s({i},{b},{a}) missing",
            (a, b),
        )
    witness = S.classification.witness
    if witness is not None:
        raise NotSignedError(
            f"Set is not {S.shape.t}-signed: odd closed walk {list(witness)}", witness
        )


class SignedSetAlgebra:
    """
    Groebner machinery of Q<t>_S for one t-signed set S.

    The basis Var_S + Gtilde_S is indexed by leading pairs so a monomial is
    reduced by looking up pairs of its variables.
    """

    def __init__(self, S: PointSet):
        _require_signed(S)
        self.S = S
        self.shape = S.shape

    @cached_property
    def single_axis_generators(self) -> Tuple[SignedBinomial, ...]:
        return tuple(j_tilde_generators(self.S))

    @cached_property
    def groebner_elements(self) -> Tuple[SignedBinomial, ...]:
        """Gtilde_S: h over all nonempty admissible K, with sign consistency enforced."""
        signs: Dict[Tuple[Monomial, Monomial], int] = {}
        for a, b in connected_pairs(self.S):
            for K in _nonempty_subsets(_head_diff(self.shape, a, b)):
                element = _h_unchecked(self.S, K, a, b)
                if element is None:
                    continue
                if element.trail is None:
                    raise InconsistentSignError(
                        f"h_{{S,{sorted(K)},{a},{b}}} collapses to 2*{element.lead}"
                    )
                pair = (element.lead, element.trail)
                if signs.setdefault(pair, element.sign) != element.sign:
                    raise InconsistentSignError(
                        f"Switch sets disagree on the sign of {element.lead} - {element.trail}"
                    )
        elements = [SignedBinomial(lead, trail, sign) for (lead, trail), sign in signs.items()]
        return tuple(sorted(elements, key=SignedBinomial.sort_key))

    @cached_property
    def lead_index(self) -> Dict[Tuple[Point, Point], Tuple[SignedBinomial, ...]]:
        index: Dict[Tuple[Point, Point], List[SignedBinomial]] = {}
        for element in self.groebner_elements:
            index.setdefault(element.lead.points, []).append(element)
        return {k: tuple(v) for k, v in index.items()}

    def applicable(self, m: Monomial) -> List[SignedBinomial]:
        """Basis elements whose leading monomial divides m, in canonical order."""
        found = set()
        for i, j in itertools.combinations(range(m.degree), 2):
            found.update(self.lead_index.get((m.points[i], m.points[j]), ()))
        return sorted(found, key=SignedBinomial.sort_key)

    def normal_form(self, m: Monomial, rng: Optional[random.Random] = None) -> NormalForm:
        """
        Signed normal form of x_m modulo Q_S.

        Returns:
            (sign, monomial), or (1, None) when a variable outside S kills m
        """
        if any(p not in self.S for p in m.points):
            return 1, None
        sign = 1
        while True:
            candidates = self.applicable(m)
            if not candidates:
                return sign, m
            element = rng.choice(candidates) if rng is not None else candidates[0]
            m = m.quotient(element.lead) * element.trail
            sign *= element.sign

    def random_normal_form(self, m: Monomial, rng: random.Random) -> NormalForm:
        """Normal form with reducers picked at random; equal to normal_form by confluence."""
        return self.normal_form(m, rng)

    def contains(self, element: SignedBinomial) -> bool:
        """Whether lead - sign*trail lies in Q_S."""
        s1, n1 = self.normal_form(element.lead)
        if element.trail is None:
            return n1 is None
        s2, n2 = self.normal_form(element.trail)
        if n1 is None or n2 is None:
            return n1 is None and n2 is None
        return n1 == n2 and s1 == element.sign * s2

    def ipl(self, a: Point, b: Point) -> int:
        return self.S.inner_path_length(a, b)


@lru_cache(maxsize=4096)
def algebra_for(S: PointSet) -> SignedSetAlgebra:
    return SignedSetAlgebra(S)


def var_ideal(S: PointSet) -> IdealPresentation:
    """Var_S = (x_a : a not in S)."""
    outside = [p for p in S.shape.point_list if p not in S]
    return IdealPresentation(S.shape, outside, (), "Var", S.members)


def Q_ideal(S: PointSet) -> IdealPresentation:
    """
    Q<t>_S = Var_S + Jtilde_S.

    Raises:
        NotSignedError: If S is not t-signed, carrying the witness
    """
    algebra = algebra_for(S)
    outside = [p for p in S.shape.point_list if p not in S]
    return IdealPresentation(S.shape, outside, algebra.single_axis_generators, "Q", S.members)


def groebner_G(S: PointSet) -> IdealPresentation:
    """Var_S plus the full Gtilde_S (h over every admissible K)."""
    algebra = algebra_for(S)
    outside = [p for p in S.shape.point_list if p not in S]
    return IdealPresentation(S.shape, outside, algebra.groebner_elements, "G", S.members)


def reduced_groebner(S: PointSet) -> IdealPresentation:
    """Self-reduced basis: one element per leading monomial, trail in normal form."""
    algebra = algebra_for(S)
    elements = []
    for lead in sorted({e.lead for e in algebra.groebner_elements}):
        sign, trail = algebra.normal_form(lead)
        element = SignedBinomial.make(lead, trail, sign)
        if element is not None:
            elements.append(element)
    outside = [p for p in S.shape.point_list if p not in S]
    return IdealPresentation(S.shape, outside, elements, "reduced", S.members)


def normal_form(m: Monomial, S: PointSet) -> NormalForm:
    """Signed normal form of x_m modulo Q<t>_S; (1, None) means zero."""
    return algebra_for(S).normal_form(m)


def _collapsed(shape: Shape, a: Point) -> Tuple[int, ...]:
    return collapse(shape, a).as_tuple()


def _first_difference(ca: Sequence[int], cb: Sequence[int]) -> int:
    for i, (x, y) in enumerate(zip(ca, cb), start=1):
        if x != y:
            return i
    return len(ca) + 1


def big_difference(shape: Shape, a: Point, b: Point) -> BigDifference:
    """
    l(a,b) and D(a,b) on the collapsed encoding.

    If the collapsed tails differ, or they agree and a wins at l, D counts the
    head axes where sgn(a_i - b_i) equals sgn(tail(b) - tail(a) + 1/2), minus
    one; otherwise D(a,b) = D(b,a). D = 0 whenever l >= t+1.
    """
    t = shape.t
    ca, cb = _collapsed(shape, a), _collapsed(shape, b)
    l = _first_difference(ca, cb)
    if l >= t + 1:
        return BigDifference(l, 0)
    tail_a, tail_b = ca[t], cb[t]
    if tail_a != tail_b or ca[l - 1] > cb[l - 1]:
        target = 1 if tail_b - tail_a + 0.5 > 0 else -1
        count = sum(
            1 for i in range(t) if a[i] != b[i] and (1 if a[i] > b[i] else -1) == target
        )
        return BigDifference(l, count - 1)
    return BigDifference(l, big_difference(shape, b, a).D, mirrored=True)


def _extremal(shape: Shape, a: Point, b: Point, high_first: bool) -> Point:
    ca, cb = _collapsed(shape, a), _collapsed(shape, b)
    l = _first_difference(ca, cb)
    if l > len(ca):
        return a
    entries = []
    for i, (x, y) in enumerate(zip(ca, cb), start=1):
        take_max = (i <= l) == high_first
        entries.append(max(x, y) if take_max else min(x, y))
    return uncollapse(shape, CollapsedPoint(tuple(entries[:-1]), entries[-1]))


def Mm(shape: Shape, a: Point, b: Point) -> Point:
    """Maxima on collapsed positions 1..l(a,b), minima after."""
    return _extremal(shape, a, b, high_first=True)


def mM(shape: Shape, a: Point, b: Point) -> Point:
    """Minima on collapsed positions 1..l(a,b), maxima after."""
    return _extremal(shape, a, b, high_first=False)


def quad_normal_form(a: Point, b: Point, S: PointSet) -> NormalForm:
    """
    Closed-form normal form of x_a x_b for connected a, b in a t-signed S:
    (-1)^(D(a,b) * ipl_S(a,b)) x_Mm x_mM.

    Raises:
        NotConnectedError: If a and b lie in different components
    """
    shape = S.shape
    if not S.same_component(a, b):
        raise NotConnectedError(f"{a} and {b} are not connected in {S!r}")
    if a == b:
        return 1, Monomial.of(a, b)
    D = big_difference(shape, a, b).D
    sign = _sign(D * S.inner_path_length(a, b))
    return sign, Monomial.of(Mm(shape, a, b), mM(shape, a, b))


def sign_ledger(
    S: PointSet, a: Point, b: Point, c: Point, A: Point, B: Point, C: Point
) -> SignLedger:
    """
    Ledger of the cubic reduction x_a x_b x_c -> (-1)^p x_A x_B x_C.

    K1 moves A's coordinates from b, K2 from c; K3 then turns the switched b
    into B. p sums #K_j times the inner path length of the pair switched.
    """
    algebra = algebra_for(S)
    head = range(1, S.shape.t + 1)
    k1 = frozenset(i for i in head if A[i - 1] == b[i - 1] != a[i - 1])
    k2 = frozenset(i for i in head if A[i - 1] == c[i - 1] != a[i - 1]) - k1
    k3 = frozenset(i for i in k1 if B[i - 1] != a[i - 1]) | (
        frozenset(i for i in head if B[i - 1] != b[i - 1]) - k1
    )

    def term(K: AxisSet, x: Point, y: Point) -> int:
        return len(K) * algebra.ipl(x, y) if K else 0

    p = (
        term(k1, a, b)
        + term(k2, switch(k1, a, b), c)
        + term(k3, switch(k1, b, a), switch(k2, c, a))
    )
    return SignLedger(k1, k2, k3, p)


def ledger_targets(S: PointSet, a: Point, b: Point, c: Point) -> Tuple[Point, Point, Point]:
    """
    Order the normal form of x_a x_b x_c as (A, B, C) with collapsed tails
    matching those of a, b, c.
    """
    shape = S.shape
    _, nf = normal_form(Monomial.of(a, b, c), S)
    tails = tuple(collapse(shape, p).tail for p in (a, b, c))
    for A, B, C in sorted(set(itertools.permutations(nf.points))):
        if tuple(collapse(shape, p).tail for p in (A, B, C)) == tails:
            return A, B, C
    raise InvalidArgumentsError(f"No tail-matched target for {(a, b, c)}")


def ledger_moves(
    S: PointSet, a: Point, b: Point, c: Point, i: int
) -> List[Tuple[Point, Point, Point, int]]:
    """
    The single-axis pair switches on axis i with the inner path length of the
    switched pair: (a', b', c', r).
    """
    algebra = algebra_for(S)
    moves = []
    if a[i - 1] != b[i - 1]:
        moves.append((switch({i}, a, b), switch({i}, b, a), c, algebra.ipl(a, b)))
    if a[i - 1] != c[i - 1]:
        moves.append((switch({i}, a, c), b, switch({i}, c, a), algebra.ipl(a, c)))
    if b[i - 1] != c[i - 1]:
        moves.append((a, switch({i}, b, c), switch({i}, c, b), algebra.ipl(b, c)))
    return moves


def ideal_leq(Q1: IdealPresentation, Q2: IdealPresentation, degree_cap: Optional[int] = None) -> bool:
    """
    Whether Q1 is contained in Q2.

    Presentations built from a t-signed set are decided combinatorially;
    anything else falls back to the Buchberger oracle.
    """
    if (Q1.shape.radices, Q1.shape.t) != (Q2.shape.radices, Q2.shape.t):
        raise InvalidArgumentsError("Presentations belong to different shapes")
    if Q2.kind == "Var" and Q2.support is not None:
        outside = set(Q2.variable_gens)
        if any(p not in outside for p in Q1.variable_gens):
            return False
        return all(
            any(p in outside for p in b.lead.points)
            and (b.trail is None or any(p in outside for p in b.trail.points))
            for b in Q1.binomial_gens
        )
    if Q2.kind in ("Q", "G", "reduced") and Q2.support is not None:
        S = PointSet(Q2.shape, Q2.support)
        if S.is_t_signed:
            algebra = algebra_for(S)
            if any(p in S for p in Q1.variable_gens):
                return False
            return all(algebra.contains(b) for b in Q1.binomial_gens)
    hr = hyper_ring(Q2.shape)
    basis = buchberger(Q2.polynomials(hr), degree_cap)
    return all(reduce(f, basis.basis).is_zero for f in Q1.polynomials(hr))


def q_contained(T: PointSet, S: PointSet) -> bool:
    """Whether Q_T is contained in Q_S, for t-signed T and S."""
    if not S.members <= T.members:
        return False
    algebra = algebra_for(S)
    return all(algebra.contains(h) for h in algebra_for(T).single_axis_generators)


def minimal_q_sets(family: Sequence[PointSet]) -> List[PointSet]:
    """
    Sets of the family whose Q-ideal is inclusion-minimal within the family.

    Q_T within Q_S forces T to contain S, so candidates are visited by
    decreasing size and compared against the strict supersets accepted so far.
    """
    minimal: List[PointSet] = []
    for S in sorted(family, key=lambda X: (-len(X), X.sorted_members)):
        dominated = next(
            (T for T in minimal if S.members < T.members and q_contained(T, S)), None
        )
        if dominated is None:
            minimal.append(S)
        else:
            logger.debug("%r dropped: Q of %r lies inside its Q", S, dominated)
    logger.info("%d of %d candidate sets give minimal Q-ideals", len(minimal), len(family))
    return sorted(minimal, key=PointSet.sort_key)


_KIND_ALIASES = {
    "cj": FamilyKind.J_T,
    "hatj": FamilyKind.JHAT_T,
    "checkj": FamilyKind.JCHECK_T,
}


def _has_distance3_pair(shape: Shape, S: PointSet) -> bool:
    t = shape.t
    return any(
        len(d) == 3 and max(d) <= t
        for d in (diff_axes(a, b) for a, b in itertools.combinations(S.sorted_members, 2))
    )


def checkj_family(shape: Shape, cap: Optional[int] = None) -> List[PointSet]:
    """t-signed sets without a pair at d = d_t = 3."""
    return [S for S in enumerate_t_signed(shape, cap) if not _has_distance3_pair(shape, S)]


def minimal_prime_sets(
    shape: Shape, kind: Union[FamilyKind, str] = FamilyKind.J_T, cap: Optional[int] = None
) -> List[PointSet]:
    """The point sets indexing the minimal primes of the chosen ideal."""
    kind = _KIND_ALIASES.get(kind, kind) if isinstance(kind, str) else kind
    kind = FamilyKind(kind)
    _check_cap(shape, cap)
    if kind == FamilyKind.J_T:
        return maximal_t_signed(shape, cap)
    if kind == FamilyKind.JHAT_T:
        sets = maximal_independent_sets(distance3_graph(shape))
        return sorted((PointSet(shape, s) for s in sets), key=PointSet.sort_key)
    if kind == FamilyKind.JCHECK_T:
        return minimal_q_sets(checkj_family(shape, cap))
    raise InvalidArgumentsError(f"No minimal prime description for {kind.value}")


def minimal_primes(
    shape: Shape, kind: Union[FamilyKind, str] = FamilyKind.J_T, cap: Optional[int] = None
) -> List[IdealPresentation]:
    """
    Minimal primes of J<t>, Jhat<t> or Jcheck<t>.

    Args:
        shape: Hypermatrix format and t
        kind: J_t / Jhat_t / Jcheck_t, or the CLI aliases cj / hatj / checkj
        cap: Enumeration cap (defaults to settings.cap_points)

    Returns:
        Canonically sorted presentations; Q_S for J and Jcheck, Var_S for Jhat

    Raises:
        CapExceededError: If the shape is larger than the cap
    """
    kind = FamilyKind(_KIND_ALIASES.get(kind, kind) if isinstance(kind, str) else kind)
    sets = minimal_prime_sets(shape, kind, cap)
    build = var_ideal if kind == FamilyKind.JHAT_T else Q_ideal
    primes = sorted({build(S) for S in sets}, key=IdealPresentation.key)
    logger.info("%s on %s (t=%d): %d minimal primes", kind.value, shape, shape.t, len(primes))
    return primes


def two_dimensional_prime_count(m: int, n: int) -> int:
    """C(m,2) C(n,2) + m + n minimal primes of J<1> on an m x n matrix."""
    return math.comb(m, 2) * math.comb(n, 2) + m + n


def hatj_prime_count_formula(radices: Sequence[int]) -> int:
    """r1 + r2 + r3 + 10 * C(r1,2) C(r2,2) C(r3,2), for three axes and t = 3."""
    r1, r2, r3 = radices
    return r1 + r2 + r3 + 10 * math.comb(r1, 2) * math.comb(r2, 2) * math.comb(r3, 2)


def checkj_prime_count_formula(radices: Sequence[int]) -> int:
    """Closed form for Jcheck<3> on three axes: lines of length > 2 plus squares."""
    r1, r2, r3 = radices
    return (
        r1 * r2 * (r3 > 2)
        + r1 * r3 * (r2 > 2)
        + r2 * r3 * (r1 > 2)
        + r1 * math.comb(r2, 2) * math.comb(r3, 2)
        + r2 * math.comb(r1, 2) * math.comb(r3, 2)
        + r3 * math.comb(r1, 2) * math.comb(r2, 2)
    )
