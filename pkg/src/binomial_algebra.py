"""
Exact polynomial arithmetic over the rationals in lexicographic order.
Monomials and signed binomials on hypermatrix variables, plus a Buchberger oracle.
"""

import heapq
import logging
import re
from collections import Counter
from dataclasses import dataclass
from enum import Enum
from functools import lru_cache, total_ordering
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from sympy.polys.domains import QQ
from sympy.polys.monomials import monomial_div, monomial_lcm, monomial_mul
from sympy.polys.orderings import lex
from sympy.polys.rings import PolyElement, xring

from src.config import settings
from src.errors import ParseError
from src.hyperlattice import Point, Shape, format_point, parse_point, varname


logger = logging.getLogger(__name__)

Polynomial = PolyElement

_VAR_RE = re.compile(r"^x_(\(\s*\d+(\s*,\s*\d+)*\s*\))$")
_COEFF_RE = re.compile(r"^-?\d+(/\d+)?$")


@total_ordering
@dataclass(frozen=True)
class Monomial:
    """
    A product x_M over a finite multiset M of points.

    Points are stored sorted in descending order, which makes tuple comparison
    of ``points`` the lexicographic term order (larger subscripts are larger
    variables).
    """

    points: Tuple[Point, ...]

    def __post_init__(self):
        object.__setattr__(
            self, "points", tuple(sorted((tuple(p) for p in self.points), reverse=True))
        )

    @classmethod
    def of(cls, *points: Point) -> "Monomial":
        return cls(tuple(points))

    @property
    def degree(self) -> int:
        return len(self.points)

    @property
    def exponents(self) -> Dict[Point, int]:
        return dict(Counter(self.points))

    @property
    def support(self) -> frozenset:
        return frozenset(self.points)

    def __mul__(self, other: "Monomial") -> "Monomial":
        return Monomial(self.points + other.points)

    def __pow__(self, k: int) -> "Monomial":
        return Monomial(self.points * k)

    def lcm(self, other: "Monomial") -> "Monomial":
        return Monomial(tuple((Counter(self.points) | Counter(other.points)).elements()))

    def divides(self, other: "Monomial") -> bool:
        mine, theirs = Counter(self.points), Counter(other.points)
        return all(theirs[p] >= e for p, e in mine.items())

    def quotient(self, divisor: "Monomial") -> "Monomial":
        """self / divisor, assuming divisor divides self."""
        remaining = Counter(self.points)
        remaining.subtract(divisor.points)
        if any(e < 0 for e in remaining.values()):
            raise ValueError(f"{divisor} does not divide {self}")
        return Monomial(tuple(remaining.elements()))

    def __lt__(self, other: "Monomial") -> bool:
        return self.points < other.points

    def __str__(self) -> str:
        if not self.points:
            return "1"
        return "*".join("x_" + format_point(p) for p in reversed(self.points))


def compare(m1: Monomial, m2: Monomial) -> int:
    """Return -1, 0 or 1 as m1 is smaller, equal or larger in the term order."""
    if m1 == m2:
        return 0
    return 1 if m2 < m1 else -1


@dataclass(frozen=True)
class SignedBinomial:
    """
    The element lead - sign*trail, or the pure monomial lead when trail is None.

    With a trail present the lead is always the larger monomial.
    """

    lead: Monomial
    trail: Optional[Monomial]
    sign: int = 1

    @classmethod
    def make(cls, m1: Monomial, m2: Monomial, sign: int) -> Optional["SignedBinomial"]:
        """
        Canonical form of m1 - sign*m2.

        Returns None for the zero element; m + m is kept as the monomial m,
        which generates the same ideal over the rationals.
        """
        if sign not in (1, -1):
            raise ValueError(f"sign must be +1 or -1, got {sign}")
        if m1 == m2:
            return None if sign == 1 else cls(m1, None, 1)
        if m1 < m2:
            m1, m2 = m2, m1
        return cls(m1, m2, sign)

    @classmethod
    def monomial(cls, m: Monomial) -> "SignedBinomial":
        return cls(m, None, 1)

    @property
    def is_monomial(self) -> bool:
        return self.trail is None

    @property
    def degree(self) -> int:
        return self.lead.degree

    def points(self) -> frozenset:
        pts = set(self.lead.points)
        if self.trail is not None:
            pts.update(self.trail.points)
        return frozenset(pts)

    def sort_key(self) -> tuple:
        trail = self.trail.points if self.trail is not None else ()
        return (self.lead.points, trail, self.sign)

    def __lt__(self, other: "SignedBinomial") -> bool:
        return self.sort_key() < other.sort_key()

    def __str__(self) -> str:
        if self.trail is None:
            return str(self.lead)
        op = "+" if self.sign == -1 else "-"
        return f"{self.lead} {op} {self.trail}"


class Membership(str, Enum):
    MEMBER = "member"
    NOT_MEMBER = "not-member"
    UNKNOWN = "unknown"


@dataclass(frozen=True)
class GroebnerResult:
    """Output of Buchberger's algorithm; truncated is set whenever a pair was skipped."""

    basis: Tuple[PolyElement, ...]
    truncated: bool
    degree_cap: Optional[int]


class HyperRing:
    """
    Polynomial ring QQ[x_a : a in N] with lex order.

    Generators are listed from the largest point down so that sympy's lex
    order on exponent vectors is the term order on monomials.
    """

    def __init__(self, shape: Shape):
        self.radices = shape.radices
        self.order_points: Tuple[Point, ...] = tuple(sorted(shape.point_list, reverse=True))
        self.ring, self.gens = xring([varname(p) for p in self.order_points], QQ, lex)
        self._position = {p: i for i, p in enumerate(self.order_points)}

    def var(self, point: Point) -> PolyElement:
        return self.gens[self._position[tuple(point)]]

    def exponents(self, m: Monomial) -> Tuple[int, ...]:
        exps = [0] * len(self.order_points)
        for p in m.points:
            exps[self._position[p]] += 1
        return tuple(exps)

    def to_monomial(self, exps: Sequence[int]) -> Monomial:
        points: List[Point] = []
        for i, e in enumerate(exps):
            points.extend([self.order_points[i]] * e)
        return Monomial(tuple(points))

    def monomial(self, m: Monomial, coeff=1) -> PolyElement:
        return self.ring.from_dict({self.exponents(m): QQ(coeff)})

    def points_monomial(self, *points: Point) -> PolyElement:
        return self.monomial(Monomial(tuple(points)))

    def polynomial(self, b: SignedBinomial) -> PolyElement:
        poly = self.monomial(b.lead)
        if b.trail is not None:
            poly = poly - self.monomial(b.trail, b.sign)
        return poly

    def polynomials(self, elements: Iterable[SignedBinomial]) -> List[PolyElement]:
        return [self.polynomial(b) for b in elements]

    def terms(self, f: PolyElement) -> List[Tuple[Monomial, object]]:
        """Terms of f in descending term order as (Monomial, coefficient)."""
        return [(self.to_monomial(m), c) for m, c in f.terms()]


@lru_cache(maxsize=None)
def hyper_ring(shape: Shape) -> HyperRing:
    """Shared ring for a shape; t does not influence the ring."""
    if shape.t != 1:
        return hyper_ring(shape.with_t(1))
    return HyperRing(shape)


def _degree(f: PolyElement) -> int:
    return max((sum(m) for m in f.itermonoms()), default=0)


def is_homogeneous(f: PolyElement) -> bool:
    return len({sum(m) for m in f.itermonoms()}) <= 1


def divide(f: PolyElement, G: Sequence[PolyElement]) -> Tuple[List[PolyElement], PolyElement]:
    """
    Multivariate division of f by G.

    Returns:
        Quotients q_i and remainder r with f = sum q_i g_i + r and no term of r
        divisible by a leading term of G
    """
    if not G:
        return [], f
    quotients, remainder = f.div(list(G))
    return list(quotients), remainder


def reduce(f: PolyElement, G: Sequence[PolyElement]) -> PolyElement:
    """Normal form of f modulo G by multivariate division."""
    if not G:
        return f
    return f.rem(list(G))


def s_polynomial(f: PolyElement, g: PolyElement) -> PolyElement:
    lcm = monomial_lcm(f.LM, g.LM)
    return f.monic().mul_monom(monomial_div(lcm, f.LM)) - g.monic().mul_monom(
        monomial_div(lcm, g.LM)
    )


def is_groebner(G: Sequence[PolyElement]) -> bool:
    """S-pair criterion: every S-polynomial of G reduces to zero modulo G."""
    G = [g for g in G if not g.is_zero]
    for i in range(len(G)):
        for j in range(i + 1, len(G)):
            if not reduce(s_polynomial(G[i], G[j]), G).is_zero:
                return False
    return True


def _interreduce(basis: List[PolyElement]) -> List[PolyElement]:
    # drop redundant leads, then reduce every tail against the rest
    basis = sorted(basis, key=lambda g: g.LM)
    minimal: List[PolyElement] = []
    for g in basis:
        if not any(monomial_div(g.LM, h.LM) is not None for h in minimal):
            minimal.append(g)
    reduced = []
    for i, g in enumerate(minimal):
        others = minimal[:i] + minimal[i + 1:]
        r = reduce(g, others) if others else g
        reduced.append(r.monic())
    return sorted(reduced, key=lambda g: g.LM, reverse=True)


def buchberger(
    G0: Sequence[PolyElement], degree_cap: Optional[int] = None
) -> GroebnerResult:
    """
    Reduced Groebner basis of (G0) with the normal selection strategy.

    Pairs are processed by increasing (degree of lcm, lcm); pairs whose lcm
    exceeds the degree cap are skipped and the result is flagged truncated.
    For homogeneous input a truncated result still decides membership of
    homogeneous polynomials up to the cap.

    Args:
        G0: Generators, all in the same ring
        degree_cap: Largest lcm degree to process (None = no cap)

    Returns:
        GroebnerResult with the basis and the truncation flag
    """
    key = tuple(sorted({g.monic() for g in G0 if not g.is_zero}, key=lambda g: g.LM))
    return _buchberger_cached(key, degree_cap)


@lru_cache(maxsize=256)
def _buchberger_cached(
    generators: Tuple[PolyElement, ...], degree_cap: Optional[int]
) -> GroebnerResult:
    basis: List[PolyElement] = list(generators)
    if not basis:
        return GroebnerResult((), False, degree_cap)
    truncated = False
    queue: List[tuple] = []

    def push(i: int, j: int) -> None:
        lcm = monomial_lcm(basis[i].LM, basis[j].LM)
        heapq.heappush(queue, (sum(lcm), lcm, i, j))

    for j in range(len(basis)):
        for i in range(j):
            push(i, j)

    processed = 0
    while queue:
        deg, lcm, i, j = heapq.heappop(queue)
        f, g = basis[i], basis[j]
        if lcm == monomial_mul(f.LM, g.LM):
            continue
        if degree_cap is not None and deg > degree_cap:
            truncated = True
            continue
        processed += 1
        r = reduce(s_polynomial(f, g), basis)
        if r.is_zero:
            continue
        basis.append(r.monic())
        new = len(basis) - 1
        for k in range(new):
            push(k, new)

    logger.debug(
        "Buchberger: %d generators, %d pairs reduced, %d basis elements, truncated=%s",
        len(generators),
        processed,
        len(basis),
        truncated,
    )
    if truncated:
        logger.info("Groebner basis truncated at degree %s", degree_cap)
    return GroebnerResult(tuple(_interreduce(basis)), truncated, degree_cap)


def ideal_member(
    f: PolyElement,
    G0: Sequence[PolyElement],
    degree_cap: Optional[int] = None,
    basis: Optional[GroebnerResult] = None,
) -> Membership:
    """
    Decide f in (G0) by reduction against a Groebner basis.

    Args:
        f: Polynomial to test
        G0: Ideal generators
        degree_cap: Degree cap for Buchberger (defaults to settings.cap_degree)
        basis: Precomputed basis to reuse instead of G0

    Returns:
        MEMBER, NOT_MEMBER, or UNKNOWN when truncation makes the answer undecidable
    """
    if basis is None:
        cap = degree_cap if degree_cap is not None else settings.cap_degree
        basis = buchberger(G0, cap)
    if f.is_zero:
        return Membership.MEMBER
    r = reduce(f, basis.basis)
    if r.is_zero:
        return Membership.MEMBER
    if not basis.truncated:
        return Membership.NOT_MEMBER
    exact = (
        basis.degree_cap is not None
        and is_homogeneous(f)
        and _degree(f) <= basis.degree_cap
        and all(is_homogeneous(g) for g in basis.basis)
    )
    return Membership.NOT_MEMBER if exact else Membership.UNKNOWN


def format_polynomial(hr: HyperRing, f: PolyElement) -> str:
    """
    Render f as "c*x_(..)*x_(..) + ..." in descending term order.

    The output is accepted verbatim by parse_polynomial.
    """
    if f.is_zero:
        return "0"
    parts = []
    for m, c in hr.terms(f):
        num, den = QQ.numer(c), QQ.denom(c)
        coeff = f"{num}" if den == 1 else f"{num}/{den}"
        factors = ["x_" + format_point(p) for p in reversed(m.points)]
        parts.append("*".join([coeff] + factors))
    return " + ".join(parts)


def parse_polynomial(hr: HyperRing, text: str) -> PolyElement:
    """
    Parse the text produced by format_polynomial.

    Raises:
        ParseError: If a term or variable is malformed
    """
    text = text.strip()
    if text == "0":
        return hr.ring.zero
    terms: Dict[Tuple[int, ...], object] = {}
    for raw in text.split(" + "):
        tokens = raw.strip().split("*")
        if not tokens or not _COEFF_RE.match(tokens[0]):
            raise ParseError(f"Malformed term: {raw!r}")
        num, _, den = tokens[0].partition("/")
        coeff = QQ(int(num), int(den) if den else 1)
        points = []
        for token in tokens[1:]:
            match = _VAR_RE.match(token.strip())
            if not match:
                raise ParseError(f"Malformed variable: {token!r}")
            point = parse_point(match.group(1))
            if point not in hr._position:
                raise ParseError(f"Variable {token!r} is not in the ring")
            points.append(point)
        exps = hr.exponents(Monomial(tuple(points)))
        terms[exps] = terms.get(exps, QQ.zero) + coeff
    return hr.ring.from_dict({m: c for m, c in terms.items() if c})


def parse_monomial(text: str) -> Monomial:
    """Parse "(a)(b)(c)" into the monomial x_a x_b x_c."""
    text = text.replace(" ", "")
    if not text.startswith("(") or not text.endswith(")"):
        raise ParseError(f"Malformed monomial: {text!r}")
    pieces = text[1:-1].split(")(")
    return Monomial(tuple(parse_point("(" + piece + ")") for piece in pieces))
