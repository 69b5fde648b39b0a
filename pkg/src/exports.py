"""
Output records and renderers for generator families, point sets and ideals.
Plain text, JSON (pydantic records that parse back) and Macaulay2 source.
"""

from typing import Iterable, List, Optional, Sequence

from pydantic import BaseModel, Field, TypeAdapter, ValidationError

from src.binomial_algebra import Monomial, SignedBinomial, format_polynomial, hyper_ring
from src.errors import ParseError
from src.hyperlattice import Point, Shape, format_point, parse_point, varname
from src.prime_structure import IdealPresentation
from src.signed_sets import PointSet


PointList = List[List[int]]


class BinomialRecord(BaseModel):
    """lead - sign*trail; a null trail marks a pure monomial."""

    lead: PointList
    trail: Optional[PointList] = None
    sign: int = Field(default=1)

    @classmethod
    def from_binomial(cls, b: SignedBinomial) -> "BinomialRecord":
        return cls(
            lead=[list(p) for p in reversed(b.lead.points)],
            trail=[list(p) for p in reversed(b.trail.points)] if b.trail is not None else None,
            sign=b.sign,
        )

    def to_binomial(self) -> SignedBinomial:
        lead = Monomial(tuple(tuple(p) for p in self.lead))
        if self.trail is None:
            return SignedBinomial.monomial(lead)
        element = SignedBinomial.make(lead, Monomial(tuple(tuple(p) for p in self.trail)), self.sign)
        if element is None:
            raise ParseError(f"Record {self.model_dump()} describes the zero element")
        return element


class ComponentRecord(BaseModel):
    points: PointList
    condition: str
    witness: Optional[PointList] = None


class PointSetRecord(BaseModel):
    points: PointList
    components: List[ComponentRecord] = Field(default_factory=list)

    @classmethod
    def from_point_set(cls, S: PointSet) -> "PointSetRecord":
        return cls(
            points=[list(p) for p in S.sorted_members],
            components=[
                ComponentRecord(
                    points=[list(p) for p in c.members],
                    condition=c.condition.value,
                    witness=[list(p) for p in c.witness] if c.witness else None,
                )
                for c in S.classification.components
            ],
        )

    def to_point_set(self, shape: Shape) -> PointSet:
        return PointSet(shape, (tuple(p) for p in self.points))


class DiscrepancyRecord(BaseModel):
    """t-signed sets on which the two maximality notions disagree."""

    ideal_only: List[PointSetRecord] = Field(default_factory=list)
    set_only: List[PointSetRecord] = Field(default_factory=list)

    @classmethod
    def from_sets(
        cls, ideal_only: Iterable[PointSet], set_only: Iterable[PointSet]
    ) -> "DiscrepancyRecord":
        return cls(
            ideal_only=[PointSetRecord.from_point_set(S) for S in ideal_only],
            set_only=[PointSetRecord.from_point_set(S) for S in set_only],
        )


class PresentationRecord(BaseModel):
    kind: str
    support: Optional[PointList] = None
    variables: PointList = Field(default_factory=list)
    binomials: List[BinomialRecord] = Field(default_factory=list)

    @classmethod
    def from_presentation(cls, Q: IdealPresentation) -> "PresentationRecord":
        return cls(
            kind=Q.kind,
            support=[list(p) for p in sorted(Q.support)] if Q.support is not None else None,
            variables=[list(p) for p in Q.variable_gens],
            binomials=[BinomialRecord.from_binomial(b) for b in Q.binomial_gens],
        )

    def to_presentation(self, shape: Shape) -> IdealPresentation:
        support = [tuple(p) for p in self.support] if self.support is not None else None
        return IdealPresentation(
            shape,
            (tuple(p) for p in self.variables),
            (b.to_binomial() for b in self.binomials),
            self.kind,
            support,
        )


def _dump(records: Sequence[BaseModel]) -> str:
    adapter = TypeAdapter(List[type(records[0])]) if records else TypeAdapter(list)
    return adapter.dump_json(list(records), indent=2).decode()


def _load(record_type, text: str) -> list:
    try:
        return TypeAdapter(List[record_type]).validate_json(text)
    except ValidationError as exc:
        raise ParseError(f"Malformed {record_type.__name__} JSON: {exc}") from None


def binomials_to_json(elements: Iterable[SignedBinomial]) -> str:
    return _dump([BinomialRecord.from_binomial(b) for b in elements])


def binomials_from_json(text: str) -> List[SignedBinomial]:
    return [r.to_binomial() for r in _load(BinomialRecord, text)]


def point_sets_to_json(sets: Iterable[PointSet]) -> str:
    return _dump([PointSetRecord.from_point_set(S) for S in sets])


def point_sets_from_json(shape: Shape, text: str) -> List[PointSet]:
    return [r.to_point_set(shape) for r in _load(PointSetRecord, text)]


def presentations_to_json(presentations: Iterable[IdealPresentation]) -> str:
    return _dump([PresentationRecord.from_presentation(Q) for Q in presentations])


def presentations_from_json(shape: Shape, text: str) -> List[IdealPresentation]:
    return [r.to_presentation(shape) for r in _load(PresentationRecord, text)]


def _m2_monomial(m: Monomial) -> str:
    factors = []
    for p, e in sorted(m.exponents.items()):
        factors.append(varname(p) if e == 1 else f"{varname(p)}^{e}")
    return "*".join(factors)


def m2_binomial(b: SignedBinomial) -> str:
    """x_1_1_1*x_2_2_1+x_1_2_1*x_2_1_1 style rendering."""
    if b.trail is None:
        return _m2_monomial(b.lead)
    op = "+" if b.sign == -1 else "-"
    return f"{_m2_monomial(b.lead)}{op}{_m2_monomial(b.trail)}"


def m2_ring(shape: Shape) -> str:
    return "R = QQ[" + ", ".join(varname(p) for p in shape.point_list) + "];"


def m2_ideal(elements: Iterable[SignedBinomial]) -> str:
    return "ideal(" + ", ".join(m2_binomial(b) for b in elements) + ")"


def m2_presentation(Q: IdealPresentation) -> str:
    return m2_ideal(Q.elements())


def format_point_set(S: PointSet) -> str:
    return "{" + ", ".join(format_point(p) for p in S.sorted_members) + "}"


def render_family(shape: Shape, elements: Sequence[SignedBinomial], fmt: str) -> str:
    """One generator per line (text), a JSON array, or an M2 ideal."""
    if fmt == "json":
        return binomials_to_json(elements)
    if fmt == "m2":
        return m2_ring(shape) + "\n" + m2_ideal(elements)
    hr = hyper_ring(shape)
    return "\n".join(format_polynomial(hr, hr.polynomial(b)) for b in elements)


def render_point_sets(shape: Shape, sets: Sequence[PointSet], fmt: str) -> str:
    """Each set with its component partition and condition tags."""
    if fmt == "json":
        return point_sets_to_json(sets)
    lines = []
    for S in sets:
        tags = ", ".join(
            f"{format_point_set(PointSet(shape, c.members))}:{c.condition.value}"
            for c in S.classification.components
        )
        lines.append(f"{format_point_set(S)}  [{tags}]")
    return "\n".join(lines)


def render_discrepancies(
    shape: Shape, ideal_only: Sequence[PointSet], set_only: Sequence[PointSet], fmt: str
) -> str:
    if fmt == "json":
        return DiscrepancyRecord.from_sets(ideal_only, set_only).model_dump_json(indent=2)
    lines = ["ideal-maximal, not set-maximal:"]
    if ideal_only:
        lines.append(render_point_sets(shape, ideal_only, fmt))
    lines.append("set-maximal, not ideal-maximal:")
    if set_only:
        lines.append(render_point_sets(shape, set_only, fmt))
    return "\n".join(lines)


def render_presentations(
    shape: Shape, presentations: Sequence[IdealPresentation], fmt: str
) -> str:
    if fmt == "json":
        return presentations_to_json(presentations)
    if fmt == "m2":
        return "\n".join([m2_ring(shape)] + [m2_presentation(Q) for Q in presentations])
    hr = hyper_ring(shape)
    lines = []
    for Q in presentations:
        support = format_point_set(PointSet(shape, Q.support)) if Q.support is not None else "-"
        gens = [f"x_{format_point(p)}" for p in Q.variable_gens]
        gens += [format_polynomial(hr, hr.polynomial(b)) for b in Q.binomial_gens]
        lines.append(f"{Q.kind} S={support}: " + ", ".join(gens))
    return "\n".join(lines)


def parse_point_set_text(text: str) -> List[Point]:
    """
    Read a point-set file: one "(a,b,c)" per line, blank lines and # comments ignored.

    Raises:
        ParseError: If a line is not a point
    """
    points = []
    for line in text.splitlines():
        line = line.split("#", 1)[0].strip()
        if line:
            points.append(parse_point(line))
    return points
