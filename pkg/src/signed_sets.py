"""
Set combinatorics of switchable and t-signed point sets.
Connectivity, path lengths, parity classification, closures, obstructions and
exhaustive enumeration over the subset lattice of N.
"""

import itertools
import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from enum import Enum
from functools import cached_property, lru_cache
from typing import Dict, FrozenSet, Iterable, Iterator, List, Optional, Sequence, Tuple

import networkx as nx

from src.config import settings
from src.errors import CapExceededError, NotConnectedError
from src.hyperlattice import Point, Shape, diff_axes, distance, switch
from src.ideal_generators import distance3_pairs


logger = logging.getLogger(__name__)


class Condition(str, Enum):
    CONST_HEAD = "CONST_HEAD"
    NEAR_SINGLETON = "NEAR_SINGLETON"
    PARITY_CONSISTENT = "PARITY_CONSISTENT"
    NOT_SIGNED = "NOT_SIGNED"


@dataclass(frozen=True)
class ComponentClass:
    """One connected component with the t-signed condition it satisfies."""

    members: Tuple[Point, ...]
    condition: Condition
    witness: Optional[Tuple[Point, ...]] = None


@dataclass(frozen=True)
class SignedClassification:
    components: Tuple[ComponentClass, ...]

    @property
    def is_t_signed(self) -> bool:
        return all(c.condition != Condition.NOT_SIGNED for c in self.components)

    @property
    def witness(self) -> Optional[Tuple[Point, ...]]:
        """An odd closed walk from the first failing component, if any."""
        for component in self.components:
            if component.condition == Condition.NOT_SIGNED:
                return component.witness
        return None


@dataclass(frozen=True)
class SwitchCheck:
    """Result of a switchability test; witness is (a, b, axis) on failure."""

    ok: bool
    witness: Optional[Tuple[Point, Point, int]] = None

    def __bool__(self) -> bool:
        return self.ok


class PointSet:
    """
    A subset S of N for a fixed shape and t, with cached derived structure.

    Two points are connected when a chain of distance-1 steps inside S joins
    them; path lengths are shortest such chains.
    """

    def __init__(self, shape: Shape, members: Iterable[Point]):
        self.shape = shape
        self.members: FrozenSet[Point] = frozenset(shape.validate_point(p) for p in members)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, PointSet)
            and self.shape == other.shape
            and self.members == other.members
        )

    def __hash__(self) -> int:
        return hash((self.shape, self.members))

    def __len__(self) -> int:
        return len(self.members)

    def __iter__(self) -> Iterator[Point]:
        return iter(self.sorted_members)

    def __contains__(self, point) -> bool:
        return point in self.members

    def __repr__(self) -> str:
        return f"PointSet({list(self.sorted_members)})"

    def sort_key(self) -> tuple:
        return (len(self.members), self.sorted_members)

    def issubset(self, other: "PointSet") -> bool:
        return self.members <= other.members

    @cached_property
    def sorted_members(self) -> Tuple[Point, ...]:
        return tuple(sorted(self.members))

    @cached_property
    def mask(self) -> int:
        return sum(1 << self.shape.index(p) for p in self.members)

    @cached_property
    def graph(self) -> nx.Graph:
        graph = nx.Graph()
        graph.add_nodes_from(self.sorted_members)
        for a, b in itertools.combinations(self.sorted_members, 2):
            if distance(a, b) == 1:
                graph.add_edge(a, b)
        return graph

    @cached_property
    def components(self) -> Tuple[Tuple[Point, ...], ...]:
        parts = [tuple(sorted(c)) for c in nx.connected_components(self.graph)]
        return tuple(sorted(parts))

    @cached_property
    def _component_of(self) -> Dict[Point, int]:
        return {p: k for k, comp in enumerate(self.components) for p in comp}

    def component_of(self, point: Point) -> Tuple[Point, ...]:
        return self.components[self._component_of[point]]

    def same_component(self, a: Point, b: Point) -> bool:
        return (
            a in self.members
            and b in self.members
            and self._component_of[a] == self._component_of[b]
        )

    @cached_property
    def _path_lengths(self) -> Dict[Point, Dict[Point, int]]:
        return dict(nx.all_pairs_shortest_path_length(self.graph))

    def path_length(self, a: Point, b: Point) -> int:
        """
        Shortest distance-1 chain length from a to b inside the set.

        Raises:
            NotConnectedError: If a and b lie in different components
        """
        if not self.same_component(a, b):
            raise NotConnectedError(f"{a} and {b} are not connected in {self!r}")
        return self._path_lengths[a][b]

    def inner_path_length(self, a: Point, b: Point) -> int:
        return self.path_length(a, b) - 1

    @cached_property
    def classification(self) -> SignedClassification:
        return classify_signed(self)

    @property
    def is_t_signed(self) -> bool:
        return is_t_switchable(self).ok and self.classification.is_t_signed


def is_t_switchable(S: PointSet) -> SwitchCheck:
    """
    Check closure under s(i,a,b), s(i,b,a) for d(a,b) = 2, i in [t], a_i != b_i.

    Returns:
        SwitchCheck, with the first violating (a, b, i) in canonical order on failure
    """
    t = S.shape.t
    for a, b in itertools.combinations(S.sorted_members, 2):
        axes = diff_axes(a, b)
        if len(axes) != 2:
            continue
        for i in sorted(axes):
            if i <= t and (switch({i}, a, b) not in S or switch({i}, b, a) not in S):
                return SwitchCheck(False, (a, b, i))
    return SwitchCheck(True)


def switchable_closure(U: PointSet) -> PointSet:
    """Smallest t-switchable set containing U."""
    members = set(U.members)
    t = U.shape.t
    frontier = list(members)
    while frontier:
        new: List[Point] = []
        for a in frontier:
            for b in list(members):
                axes = diff_axes(a, b)
                if len(axes) != 2:
                    continue
                for i in axes:
                    if i > t:
                        continue
                    for p in (switch({i}, a, b), switch({i}, b, a)):
                        if p not in members:
                            members.add(p)
                            new.append(p)
        frontier = new
    return PointSet(U.shape, members)


def components(S: PointSet) -> Tuple[Tuple[Point, ...], ...]:
    return S.components


def path_length(S: PointSet, a: Point, b: Point) -> int:
    return S.path_length(a, b)


def odd_walk_witness(graph: nx.Graph, root: Point) -> Optional[Tuple[Point, ...]]:
    """
    An odd closed walk through root's component, or None if it is bipartite.

    Uses a breadth-first tree: an edge joining two vertices of equal depth
    closes an odd walk through the root.
    """
    paths = nx.single_source_shortest_path(graph, root)
    for u, v in sorted(graph.subgraph(paths).edges()):
        if len(paths[u]) == len(paths[v]):
            return tuple(paths[u]) + tuple(reversed(paths[v]))
    return None


def classify_signed(S: PointSet) -> SignedClassification:
    """
    Tag every component with the first t-signed condition it satisfies.

    CONST_HEAD: all members share their first t coordinates.
    NEAR_SINGLETON: all members are pairwise at distance at most 1.
    PARITY_CONSISTENT: the distance-1 graph of the component is bipartite.
    NOT_SIGNED otherwise, with an odd closed walk as witness.
    """
    t = S.shape.t
    classes = []
    for comp in S.components:
        if len({p[:t] for p in comp}) == 1:
            classes.append(ComponentClass(comp, Condition.CONST_HEAD))
        elif all(distance(a, b) <= 1 for a, b in itertools.combinations(comp, 2)):
            classes.append(ComponentClass(comp, Condition.NEAR_SINGLETON))
        else:
            witness = odd_walk_witness(S.graph.subgraph(comp), comp[0])
            if witness is None:
                classes.append(ComponentClass(comp, Condition.PARITY_CONSISTENT))
            else:
                classes.append(ComponentClass(comp, Condition.NOT_SIGNED, witness))
    return SignedClassification(tuple(classes))


@lru_cache(maxsize=None)
def obstruction_cores(shape: Shape) -> Tuple[PointSet, ...]:
    """
    All 2x3 submatrices varying on axes {i, j} with {i, j} meeting [t].

    Such a block lies in a single component, contains a line of three points
    and varies on a head axis, so no t-signed set contains one.
    """
    cores = []
    n = shape.n
    for i, j in itertools.combinations(range(1, n + 1), 2):
        if i > shape.t and j > shape.t:
            continue
        rest = [k for k in range(1, n + 1) if k not in (i, j)]
        for two_axis, three_axis in ((i, j), (j, i)):
            pairs = itertools.combinations(range(1, shape.radices[two_axis - 1] + 1), 2)
            triples = list(
                itertools.combinations(range(1, shape.radices[three_axis - 1] + 1), 3)
            )
            for pair in pairs:
                for triple in triples:
                    for fixed in itertools.product(
                        *(range(1, shape.radices[k - 1] + 1) for k in rest)
                    ):
                        block = []
                        for u in pair:
                            for v in triple:
                                coords = dict(zip(rest, fixed))
                                coords[two_axis] = u
                                coords[three_axis] = v
                                block.append(tuple(coords[k] for k in range(1, n + 1)))
                        cores.append(PointSet(shape, block))
    return tuple(sorted(set(cores), key=PointSet.sort_key))


def has_obstruction_core(S: PointSet) -> bool:
    return any(core.members <= S.members for core in obstruction_cores(S.shape))


def is_subset_of_signed(U: PointSet) -> bool:
    """
    Whether some t-signed set contains U.

    Every t-signed superset contains the switchable closure, so U fits in a
    t-signed set exactly when its closure is t-signed; a 2x3 obstruction core
    inside the closure settles the negative case early.
    """
    closure = switchable_closure(U)
    if has_obstruction_core(closure):
        return False
    return closure.classification.is_t_signed


class SubsetLattice:
    """Bitmask view of the subsets of N with precomputed switch requirements."""

    def __init__(self, shape: Shape):
        self.shape = shape
        self.points = shape.point_list
        self.requirements: List[Tuple[int, int]] = []
        for a, b in itertools.combinations(self.points, 2):
            axes = diff_axes(a, b)
            if len(axes) != 2:
                continue
            required = 0
            for i in axes:
                if i <= shape.t:
                    required |= self.bit(switch({i}, a, b)) | self.bit(switch({i}, b, a))
            if required:
                self.requirements.append((self.bit(a) | self.bit(b), required))
        self.core_masks = [core.mask for core in obstruction_cores(shape)]

    def bit(self, point: Point) -> int:
        return 1 << self.shape.index(point)

    def members(self, mask: int) -> Tuple[Point, ...]:
        return tuple(p for k, p in enumerate(self.points) if mask >> k & 1)

    def is_switchable(self, mask: int) -> bool:
        for pair, required in self.requirements:
            if mask & pair == pair and mask & required != required:
                return False
        return True

    def has_core(self, mask: int) -> bool:
        return any(mask & core == core for core in self.core_masks)

    def scan_switchable(self, start: int, stop: int) -> List[int]:
        return [mask for mask in range(start, stop) if self.is_switchable(mask)]

    def scan(self, start: int, stop: int) -> List[int]:
        """Switchable masks in [start, stop) that contain no obstruction core."""
        return [
            mask
            for mask in range(start, stop)
            if self.is_switchable(mask) and not self.has_core(mask)
        ]


def _scan_block(shape: Shape, start: int, stop: int) -> List[int]:
    return SubsetLattice(shape).scan(start, stop)


def _check_cap(shape: Shape, cap: Optional[int]) -> None:
    cap = cap if cap is not None else settings.cap_points
    if shape.size > cap:
        raise CapExceededError(shape.size, cap)


def enumerate_t_signed(
    shape: Shape, cap: Optional[int] = None, workers: Optional[int] = None
) -> List[PointSet]:
    """
    Every t-signed subset of N, the empty set included.

    Args:
        shape: Hypermatrix format and t
        cap: Largest point count accepted (defaults to settings.cap_points)
        workers: Processes for the subset scan (defaults to settings.workers)

    Returns:
        Canonically sorted list of t-signed PointSets

    Raises:
        CapExceededError: If the shape has more points than the cap
    """
    _check_cap(shape, cap)
    return list(_enumerate_t_signed(shape, workers if workers is not None else settings.workers))


@lru_cache(maxsize=32)
def _enumerate_t_signed(shape: Shape, workers: int) -> Tuple[PointSet, ...]:
    total = 1 << shape.size
    if workers > 1 and shape.size > 8:
        blocks = min(workers * 4, total)
        bounds = [total * k // blocks for k in range(blocks + 1)]
        with ProcessPoolExecutor(max_workers=workers) as pool:
            parts = pool.map(
                _scan_block, [shape] * blocks, bounds[:-1], bounds[1:]
            )
            masks = sorted(m for part in parts for m in part)
    else:
        masks = SubsetLattice(shape).scan(0, total)
    lattice = SubsetLattice(shape)
    signed = []
    for mask in masks:
        S = PointSet(shape, lattice.members(mask))
        if S.classification.is_t_signed:
            signed.append(S)
    logger.info(
        "Shape %s t=%d: %d switchable core-free subsets, %d t-signed",
        shape,
        shape.t,
        len(masks),
        len(signed),
    )
    return tuple(sorted(signed, key=PointSet.sort_key))


def enumerate_t_switchable(shape: Shape, cap: Optional[int] = None) -> List[PointSet]:
    """
    Every t-switchable subset of N, signed or not.

    Raises:
        CapExceededError: If the shape has more points than the cap
    """
    _check_cap(shape, cap)
    lattice = SubsetLattice(shape)
    masks = lattice.scan_switchable(0, 1 << shape.size)
    logger.info("Shape %s t=%d: %d switchable subsets", shape, shape.t, len(masks))
    return sorted((PointSet(shape, lattice.members(m)) for m in masks), key=PointSet.sort_key)


def maximal_t_signed(
    shape: Shape, cap: Optional[int] = None, workers: Optional[int] = None
) -> List[PointSet]:
    """
    t-signed sets whose Q-ideals are inclusion-minimal among all t-signed sets.

    Raises:
        CapExceededError: If the shape has more points than the cap
    """
    from src.prime_structure import minimal_q_sets

    return minimal_q_sets(enumerate_t_signed(shape, cap, workers))


def set_maximal_t_signed(shape: Shape, cap: Optional[int] = None) -> List[PointSet]:
    """t-signed sets that are maximal under set inclusion (diagnostic)."""
    family = enumerate_t_signed(shape, cap)
    return [
        S
        for S in family
        if not any(len(T) > len(S) and S.members < T.members for T in family)
    ]


def maximality_discrepancies(
    shape: Shape, cap: Optional[int] = None
) -> Tuple[List[PointSet], List[PointSet]]:
    """
    Compare ideal-maximal and set-maximal t-signed sets.

    Returns:
        (ideal-maximal but not set-maximal, set-maximal but not ideal-maximal)
    """
    by_ideal = set(maximal_t_signed(shape, cap))
    by_set = set(set_maximal_t_signed(shape, cap))
    return (
        sorted(by_ideal - by_set, key=PointSet.sort_key),
        sorted(by_set - by_ideal, key=PointSet.sort_key),
    )


def box_set(shape: Shape, ranges: Sequence[Iterable[int]]) -> PointSet:
    """The box S_1 x ... x S_n."""
    return PointSet(shape, itertools.product(*(sorted(r) for r in ranges)))


def box_condition(shape: Shape, ranges: Sequence[Iterable[int]]) -> Optional[int]:
    """
    Which box criterion applies, if any.

    1: |S_1| = ... = |S_t| = 1; 2: all but one |S_j| = 1; 3: all |S_i| <= 2.
    """
    sizes = [len(set(r)) for r in ranges]
    if all(s == 1 for s in sizes[: shape.t]):
        return 1
    if sum(1 for s in sizes if s != 1) <= 1:
        return 2
    if all(s <= 2 for s in sizes):
        return 3
    return None


def distance3_graph(shape: Shape) -> nx.Graph:
    """Graph on N joining points with d(a,b) = d_t(a,b) = 3."""
    graph = nx.Graph()
    graph.add_nodes_from(shape.point_list)
    graph.add_edges_from(distance3_pairs(shape))
    return graph


def maximal_independent_sets(graph: nx.Graph) -> List[FrozenSet[Point]]:
    """All maximal independent sets, as maximal cliques of the complement."""
    cliques = nx.find_cliques(nx.complement(graph))
    return sorted((frozenset(c) for c in cliques), key=lambda s: (len(s), sorted(s)))


def box_is_signed_by_conditions(shape: Shape, ranges: Sequence[Iterable[int]]) -> bool:
    """Whether one of the box criteria certifies S_1 x ... x S_n as t-signed."""
    return box_condition(shape, ranges) is not None
