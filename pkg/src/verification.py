"""
Invariant suites behind the verify command.
Each check returns a named pass/fail result; the corpus level runs the
combinatorial suites and the prime-basis oracle, the full level adds the
symbolic identities and the exhaustive scans.
"""

import itertools
import logging
import random
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Dict, FrozenSet, List, Optional, Tuple

import networkx as nx

from src.binomial_algebra import (
    Membership,
    Monomial,
    SignedBinomial,
    buchberger,
    hyper_ring,
    ideal_member,
)
from src.config import settings
from src.errors import PermanentalError
from src.hyperlattice import AxisSet, Point, Shape, diff_axes, distance, switch
from src.ideal_generators import (
    FamilyKind,
    G_set,
    chain_certificate,
    chain_claim,
    chain_walks,
    hatJ_ideal,
    hatJ_monomial_form,
    slice_ideal,
    switch_relations,
    syzygy_combination,
)
from src.prime_structure import (
    Q_ideal,
    _head_diff,
    _nonempty_subsets,
    algebra_for,
    big_difference,
    checkj_prime_count_formula,
    connected_pairs,
    hatj_prime_count_formula,
    j_tilde_generators,
    ledger_moves,
    ledger_targets,
    minimal_prime_sets,
    minimal_primes,
    quad_normal_form,
    reduced_groebner,
    sign_ledger,
    two_dimensional_prime_count,
)
from src.radical import (
    embedded_witness_generators,
    m3_reduction_member,
    radical_member_by_powers,
    radical_monomial_member,
)
from src.signed_sets import (
    PointSet,
    SubsetLattice,
    enumerate_t_signed,
    enumerate_t_switchable,
    is_subset_of_signed,
    is_t_switchable,
    maximality_discrepancies,
    switchable_closure,
)


logger = logging.getLogger(__name__)

# (radices, t, ideal) -> number of minimal primes
KNOWN_PRIME_COUNTS: Dict[Tuple[Tuple[int, ...], int, str], int] = {
    ((2, 2), 1, "cj"): 1,
    ((2, 3), 1, "cj"): 5,
    ((3, 3), 1, "cj"): 15,
    ((3, 4), 1, "cj"): 25,
    ((2, 2, 2), 1, "cj"): 3,
    ((2, 2, 2), 2, "cj"): 5,
    ((2, 2, 2), 3, "cj"): 5,
    ((3, 2, 2), 1, "cj"): 5,
    ((3, 2, 2), 2, "cj"): 19,
    ((2, 2, 3), 1, "cj"): 17,
    ((2, 2, 3), 2, "cj"): 19,
    ((2, 2, 2), 3, "hatj"): 16,
    ((3, 2, 2), 3, "hatj"): 25,
    ((2, 2, 2), 3, "checkj"): 6,
    ((3, 2, 2), 3, "checkj"): 19,
}

ORACLE_POINT_LIMIT = 8
EXHAUSTIVE_POINT_LIMIT = 12


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    detail: str = ""

    def __str__(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"{status} {self.name}: {self.detail}" if self.detail else f"{status} {self.name}"


@dataclass(frozen=True)
class VerificationReport:
    shape: Shape
    level: str
    results: Tuple[CheckResult, ...]
    prime_count: Optional[int] = None

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.results)

    @property
    def failures(self) -> List[CheckResult]:
        return [r for r in self.results if not r.passed]

    def render(self) -> str:
        lines = [str(r) for r in self.results]
        if self.prime_count is not None:
            lines.append(f"minimal primes: {self.prime_count}")
        lines.append(f"{len(self.results) - len(self.failures)}/{len(self.results)} checks passed")
        return "\n".join(lines)


def _guarded(name: str, check: Callable[[], CheckResult]) -> CheckResult:
    try:
        return check()
    except PermanentalError as exc:
        logger.warning("Check %s raised %s", name, exc)
        return CheckResult(name, False, f"{type(exc).__name__}: {exc}")


def _first_failure(name: str, failures: List[str], total: int, unit: str) -> CheckResult:
    if failures:
        return CheckResult(name, False, f"{len(failures)} of {total} {unit} failed, first: {failures[0]}")
    return CheckResult(name, True, f"{total} {unit}")


def check_slice_ideal_in_primes(shape: Shape, sets: List[PointSet]) -> CheckResult:
    """
    Every generator of J<t> lies in Var_S + Jtilde_S for every t-switchable S.

    Signed sets are decided by the signed normal form, the others by a
    degree-2 oracle run, which is exact for quadratic generators.
    """
    hr = hyper_ring(shape)
    gens = list(slice_ideal(shape, FamilyKind.J_T))
    failures = []
    for S in sets:
        if S.is_t_signed:
            algebra = algebra_for(S)
            missing = [g for g in gens if not algebra.contains(g)]
        else:
            outside = [hr.var(p) for p in shape.point_list if p not in S]
            basis = buchberger(outside + hr.polynomials(j_tilde_generators(S)), 2)
            missing = [
                g
                for g in gens
                if ideal_member(hr.polynomial(g), (), basis=basis) != Membership.MEMBER
            ]
        if missing:
            failures.append(f"{missing[0]} not in Q of {S!r}")
    return _first_failure("slice-ideal-in-switchable-primes", failures, len(sets), "sets")


def check_signed_superset_criterion(shape: Shape, family: List[PointSet]) -> CheckResult:
    """The closure test for 'contained in a t-signed set' agrees with the enumerated family."""
    masks = [S.members for S in family]
    failures = []
    total = 0
    for size in range(1, min(4, shape.size) + 1):
        for U in itertools.combinations(shape.point_list, size):
            total += 1
            expected = any(set(U) <= m for m in masks)
            if is_subset_of_signed(PointSet(shape, U)) != expected:
                failures.append(f"{list(U)} expected {expected}")
    return _first_failure("signed-superset-criterion", failures, total, "subsets")


def check_groebner_certificate(shape: Shape, sets: List[PointSet]) -> CheckResult:
    """Every S-pair of Gtilde_S reduces to zero under the signed normal form."""
    failures = []
    pairs = 0
    for S in sets:
        algebra = algebra_for(S)
        elements = algebra.groebner_elements
        for e in elements:
            if e.trail is not None and not e.trail.support <= S.members:
                failures.append(f"trail of {e} leaves {S!r}")
        for e1, e2 in itertools.combinations(elements, 2):
            if not e1.lead.support & e2.lead.support:
                continue
            pairs += 1
            lcm = e1.lead.lcm(e2.lead)
            u = lcm.quotient(e1.lead) * e1.trail
            v = lcm.quotient(e2.lead) * e2.trail
            s_pair = SignedBinomial.make(u, v, e1.sign * e2.sign)
            if s_pair is not None and not algebra.contains(s_pair):
                failures.append(f"S({e1}, {e2}) in {S!r}")
    return _first_failure("groebner-certificate", failures, pairs, "S-pairs")


def check_groebner_oracle(
    shape: Shape, sets: List[PointSet], degree_cap: Optional[int] = None
) -> CheckResult:
    """The reduced combinatorial basis equals sympy's reduced basis of Q_S."""
    hr = hyper_ring(shape)
    failures = []
    for S in sets:
        expected = buchberger(Q_ideal(S).polynomials(hr), degree_cap).basis
        actual = sorted(
            (p.monic() for p in reduced_groebner(S).polynomials(hr)), key=lambda g: g.LM, reverse=True
        )
        if list(expected) != actual:
            failures.append(repr(S))
    return _first_failure("groebner-basis-oracle", failures, len(sets), "sets")


def check_cubic_confluence(
    shape: Shape, sets: List[PointSet], trials: Optional[int] = None, seed: Optional[int] = None
) -> CheckResult:
    """Random reduction orders reach the same signed normal form for cubic monomials."""
    trials = trials if trials is not None else settings.confluence_trials
    rng = random.Random(settings.random_seed if seed is None else seed)
    failures = []
    total = 0
    for S in sets:
        algebra = algebra_for(S)
        for combo in itertools.combinations_with_replacement(S.sorted_members, 3):
            m = Monomial(combo)
            total += 1
            expected = algebra.normal_form(m)
            for _ in range(trials):
                if algebra.random_normal_form(m, rng) != expected:
                    failures.append(f"{m} in {S!r}")
                    break
    return _first_failure("cubic-confluence", failures, total, "monomials")


def _component_triples(S: PointSet):
    for comp in S.components:
        yield from itertools.combinations(comp, 3)


def check_sign_ledger(shape: Shape, sets: List[PointSet]) -> CheckResult:
    """The cubic normal form carries sign (-1)^p of its ledger."""
    failures = []
    total = 0
    for S in sets:
        algebra = algebra_for(S)
        for a, b, c in _component_triples(S):
            total += 1
            sign, _ = algebra.normal_form(Monomial.of(a, b, c))
            A, B, C = ledger_targets(S, a, b, c)
            ledger = sign_ledger(S, a, b, c, A, B, C)
            if (sign == -1) != (ledger.parity == 1):
                failures.append(f"{(a, b, c)} -> {(A, B, C)} in {S!r}")
    return _first_failure("sign-ledger-parity", failures, total, "triples")


def check_ledger_moves(shape: Shape, sets: List[PointSet]) -> CheckResult:
    """A single-axis pair switch changes p by the switched inner path length, mod 2."""
    failures = []
    total = 0
    for S in sets:
        for a, b, c in _component_triples(S):
            A, B, C = ledger_targets(S, a, b, c)
            p = sign_ledger(S, a, b, c, A, B, C).p
            for i in range(1, shape.t + 1):
                for a2, b2, c2, r in ledger_moves(S, a, b, c, i):
                    total += 1
                    p2 = sign_ledger(S, a2, b2, c2, A, B, C).p
                    if (p2 - p + r) % 2:
                        failures.append(f"{(a, b, c)} axis {i} -> {(a2, b2, c2)} in {S!r}")
    return _first_failure("ledger-move-parity", failures, total, "moves")


def check_quadratic_fast_path(shape: Shape, sets: List[PointSet]) -> CheckResult:
    """The closed quadratic normal form matches generic reduction on connected pairs."""
    failures = []
    total = 0
    for S in sets:
        algebra = algebra_for(S)
        for comp in S.components:
            for a, b in itertools.combinations(comp, 2):
                total += 1
                if quad_normal_form(a, b, S) != algebra.normal_form(Monomial.of(a, b)):
                    failures.append(f"x_{a} x_{b} in {S!r}")
    return _first_failure("quadratic-fast-path", failures, total, "pairs")


def check_big_difference_additivity(shape: Shape, sets: List[PointSet]) -> CheckResult:
    """(#K + D(a,b)) * ipl and D(s(K,a,b), s(K,b,a)) * ipl agree mod 2."""
    failures = []
    total = 0
    for S in sets:
        for comp in S.components:
            for a, b in itertools.combinations(comp, 2):
                ipl = S.inner_path_length(a, b)
                head = frozenset(i for i in diff_axes(a, b) if i <= shape.t)
                D = big_difference(shape, a, b).D
                for K in _nonempty_subsets(head):
                    total += 1
                    DK = big_difference(shape, switch(K, a, b), switch(K, b, a)).D
                    if ((len(K) + D) * ipl - DK * ipl) % 2:
                        failures.append(f"{a}, {b}, K={sorted(K)} in {S!r}")
    return _first_failure("big-difference-additivity", failures, total, "cases")


def _head_subsets(shape: Shape) -> List[AxisSet]:
    return list(_nonempty_subsets(shape.head_axes))


def check_closure_operator(shape: Shape) -> CheckResult:
    """switchable_closure is extensive, idempotent, monotone and lands on switchable sets."""
    lattice = SubsetLattice(shape)
    closures: Dict[int, int] = {}
    for mask in range(1 << shape.size):
        closures[mask] = switchable_closure(PointSet(shape, lattice.members(mask))).mask
    failures = []
    for mask, closed in closures.items():
        if mask & closed != mask:
            failures.append(f"{lattice.members(mask)} not extensive")
        elif closures[closed] != closed:
            failures.append(f"{lattice.members(mask)} not idempotent")
        elif not lattice.is_switchable(closed):
            failures.append(f"closure of {lattice.members(mask)} not switchable")
        else:
            for k in range(shape.size):
                if closed & closures[mask | 1 << k] != closed:
                    failures.append(f"{lattice.members(mask)} not monotone at {shape.point_list[k]}")
                    break
    return _first_failure("closure-operator", failures, len(closures), "subsets")


def check_component_switches(shape: Shape, family: List[PointSet]) -> CheckResult:
    """For connected a, b and K in [t], s(K,a,b) and s(K,b,a) stay in the component of a."""
    head_sets = _head_subsets(shape)
    failures = []
    total = 0
    for S in family:
        for a, b in connected_pairs(S):
            for K in head_sets:
                total += 1
                for p in (switch(K, a, b), switch(K, b, a)):
                    if not S.same_component(a, p):
                        failures.append(f"{p} from {a}, {b}, K={sorted(K)} in {S!r}")
                        break
    return _first_failure("component-switches", failures, total, "cases")


def _bipartite_components(S: PointSet) -> List[Tuple[Point, ...]]:
    return [comp for comp in S.components if nx.is_bipartite(S.graph.subgraph(comp))]


def check_parity_switches(shape: Shape, family: List[PointSet]) -> CheckResult:
    """
    On bipartite components, pl(a,b) and pl(s(K,a,b), s(K,b,a)) share parity,
    and pl(a,b) + pl(b,c) has the parity of pl(a,c).
    """
    head_sets = _head_subsets(shape)
    failures = []
    total = 0
    for S in family:
        for comp in _bipartite_components(S):
            for a, b in itertools.combinations(comp, 2):
                pl = S.path_length(a, b)
                for K in head_sets:
                    total += 1
                    if (pl - S.path_length(switch(K, a, b), switch(K, b, a))) % 2:
                        failures.append(f"{a}, {b}, K={sorted(K)} in {S!r}")
            for a, b, c in itertools.permutations(comp, 3):
                total += 1
                if (S.path_length(a, b) + S.path_length(b, c) - S.path_length(a, c)) % 2:
                    failures.append(f"{a}, {b}, {c} in {S!r}")
    return _first_failure("parity-switches", failures, total, "cases")


def check_head_values(shape: Shape, family: List[PointSet]) -> CheckResult:
    """Each component takes at most two values on every head axis, or has diameter at most 1."""
    failures = []
    total = 0
    for S in family:
        for comp in S.components:
            total += 1
            narrow = all(len({p[i - 1] for p in comp}) <= 2 for i in shape.head_axes)
            if not narrow and any(distance(a, b) > 1 for a, b in itertools.combinations(comp, 2)):
                failures.append(f"{comp} in {S!r}")
    return _first_failure("head-value-bound", failures, total, "components")


@lru_cache(maxsize=64)
def _mixed_axis_basis(shape: Shape, i: int, degree_cap: int):
    hr = hyper_ring(shape)
    generators = []
    for j in range(1, shape.n + 1):
        if j != i:
            generators.extend(G_set(shape, {i, j}, {i}).polynomials(hr))
    return buchberger(generators, degree_cap)


def parity_monomial_witness(S: PointSet, i: int, degree_cap: int = 3) -> Optional[Monomial]:
    """
    A monomial with support in S lying in the sum of G_{{i,j},{i}} over j != i.

    Returns:
        The first such monomial by degree then canonical order, or None up to the cap
    """
    shape = S.shape
    hr = hyper_ring(shape)
    basis = _mixed_axis_basis(shape, i, degree_cap)
    for degree in range(2, degree_cap + 1):
        for combo in itertools.combinations_with_replacement(S.sorted_members, degree):
            m = Monomial(combo)
            if ideal_member(hr.monomial(m), (), basis=basis) == Membership.MEMBER:
                return m
    return None


def check_parity_monomials(
    shape: Shape, sets: List[PointSet], degree_cap: int = 3
) -> CheckResult:
    """
    Connected a, b at distance >= 2 with a_i != b_i on a component that has
    paths of both parities force a monomial in S into the mixed-axis G ideal of i.
    """
    failures = []
    total = 0
    for S in sets:
        check = is_t_switchable(S)
        if not check.ok:
            total += 1
            failures.append(f"{S!r} is not switchable at {check.witness}")
            continue
        bipartite = set(_bipartite_components(S))
        axes: FrozenSet[int] = frozenset(
            i
            for comp in S.components
            if comp not in bipartite
            for a, b in itertools.combinations(comp, 2)
            if distance(a, b) >= 2
            for i in _head_diff(shape, a, b)
        )
        for i in sorted(axes):
            total += 1
            if parity_monomial_witness(S, i, degree_cap) is None:
                failures.append(f"axis {i} in {S!r}")
    return _first_failure("path-parity-monomials", failures, total, "axes")


def check_maximality_discrepancies(shape: Shape, cap: Optional[int] = None) -> CheckResult:
    """Every set-maximal t-signed set is ideal-maximal; the converse may fail."""
    ideal_only, set_only = maximality_discrepancies(shape, cap)
    detail = (
        f"{len(ideal_only)} ideal-maximal sets not set-maximal, "
        f"{len(set_only)} set-maximal sets not ideal-maximal"
    )
    if set_only:
        return CheckResult("maximality-discrepancies", False, f"{detail}, first: {set_only[0]!r}")
    return CheckResult("maximality-discrepancies", True, detail)


def check_prime_count(shape: Shape, ideal: str, count: int) -> CheckResult:
    """Known counts and closed forms for the minimal primes."""
    name = "minimal-prime-count"
    key = (shape.radices, shape.t, ideal)
    expected = KNOWN_PRIME_COUNTS.get(key)
    if expected is None and ideal == "cj" and shape.n == 2 and shape.t == 1 and min(shape.radices) >= 3:
        expected = two_dimensional_prime_count(*shape.radices)
    if expected is None and ideal == "hatj" and shape.n == shape.t == 3:
        if all(r == 2 for r in shape.radices):
            expected = hatj_prime_count_formula(shape.radices)
    if expected is None and ideal == "checkj" and shape.n == shape.t == 3:
        expected = checkj_prime_count_formula(shape.radices)
    if expected is None:
        return CheckResult(name, True, f"{count} (no reference value)")
    if count != expected:
        return CheckResult(name, False, f"found {count}, expected {expected}")
    return CheckResult(name, True, f"{count}")


def check_syzygy_identity(shape: Shape) -> CheckResult:
    """The four-term f/g syzygy vanishes for all a, a1, b and head axes i."""
    hr = hyper_ring(shape)
    failures = []
    total = 0
    for i in range(1, shape.t + 1):
        for a, a1, b in itertools.product(shape.point_list, repeat=3):
            total += 1
            if not syzygy_combination(hr, i, a, a1, b).is_zero:
                failures.append(f"i={i}, a={a}, a1={a1}, b={b}")
    return _first_failure("syzygy-identity", failures, total, "cases")


def check_switch_relations(shape: Shape) -> CheckResult:
    """The four f/g relations across L and L+{l}."""
    hr = hyper_ring(shape)
    axes = range(1, shape.n + 1)
    failures = []
    total = 0
    for a, b in itertools.combinations(shape.point_list, 2):
        for size in range(shape.n):
            for L in itertools.combinations(axes, size):
                for l in axes:
                    if l in L:
                        continue
                    for lhs, rhs in switch_relations(hr, L, l, a, b):
                        total += 1
                        if lhs != rhs:
                            failures.append(f"L={list(L)}, l={l}, a={a}, b={b}")
    return _first_failure("switch-relations", failures, total, "relations")


def check_embedded_witness(shape: Shape, cap: Optional[int] = None) -> CheckResult:
    """
    J<t> + (x_a^3) separates J<t> from its radical: it contains J<t> and
    every cube, while no cube lies in J<t> or in the radical of J<t>.
    """
    hr = hyper_ring(shape)
    gens = embedded_witness_generators(shape)
    witness_basis = buchberger(hr.polynomials(gens), 3)
    slice_basis = buchberger(slice_ideal(shape, FamilyKind.J_T).polynomials(hr), 3)
    failures = [
        f"{g} outside the witness ideal"
        for g in gens
        if ideal_member(hr.polynomial(g), (), basis=witness_basis) != Membership.MEMBER
    ]
    for a in shape.point_list:
        cube = Monomial.of(a, a, a)
        if ideal_member(hr.monomial(cube), (), basis=slice_basis) != Membership.NOT_MEMBER:
            failures.append(f"{cube} not separated from J<t>")
        elif radical_monomial_member(shape, cube.points, cap):
            failures.append(f"{cube} inside the radical")
    return _first_failure(
        "embedded-witness-separation", failures, len(gens) + shape.size, "generators and cubes"
    )


def check_chain_claims(shape: Shape, max_steps: int = 4, oracle_steps: int = 2) -> CheckResult:
    """
    Chain multiplication on every walk of up to max_steps steps from the origin.

    Value relabelings on each axis permute every G_{{i,l},{i}}, so walks start
    at (1,..,1). Each walk is settled by its explicit certificate; walks of up
    to oracle_steps steps are also decided by the oracle.
    """
    hr = hyper_ring(shape)
    origin = tuple(1 for _ in shape.radices)
    g_sets: Dict[Tuple[int, int], FrozenSet[SignedBinomial]] = {}
    failures = []
    total = 0
    for i in range(1, shape.n + 1):
        targets = [b for b in shape.point_list if b[i - 1] != origin[i - 1]]
        for chain in chain_walks(shape, i, origin, max_steps):
            for b in targets:
                for start in ("f", "g"):
                    total += 1
                    difference, generators = chain_claim(shape, hr, i, chain, b, start)
                    combination = hr.ring.zero
                    for term in chain_certificate(shape, hr, i, chain, b, start):
                        key = (i, term.axis)
                        if key not in g_sets:
                            g_sets[key] = frozenset(G_set(shape, {i, term.axis}, {i}))
                        if term.generator not in g_sets[key]:
                            failures.append(f"{term.generator} outside G for axes {sorted(key)}")
                        combination += term.multiplier * hr.polynomial(term.generator)
                    label = f"i={i}, chain={list(chain)}, b={b}, start={start}"
                    if combination != difference:
                        failures.append(f"certificate mismatch at {label}")
                    elif len(chain) - 1 <= oracle_steps and (
                        ideal_member(difference, generators, oracle_steps + 2) != Membership.MEMBER
                    ):
                        failures.append(f"oracle rejects {label}")
    return _first_failure("chain-multiplication", failures, total, "chains")


def check_hatj_forms(shape: Shape) -> CheckResult:
    """The binomial and monomial presentations of Jhat<t> contain each other."""
    hr = hyper_ring(shape)
    binomial = hatJ_ideal(shape).polynomials(hr)
    monomial = hatJ_monomial_form(shape).polynomials(hr)
    failures = []
    for label, source, target in (
        ("binomial in monomial", binomial, monomial),
        ("monomial in binomial", monomial, binomial),
    ):
        basis = buchberger(target, 2)
        for f in source:
            if ideal_member(f, (), basis=basis) != Membership.MEMBER:
                failures.append(f"{label}: {f}")
    return _first_failure("hatj-forms", failures, len(binomial) + len(monomial), "generators")


def check_radical_powers(shape: Shape, max_power: int = 4) -> CheckResult:
    """Radical monomial membership agrees with x_M^k in J<t> for k up to max_power."""
    failures = []
    total = 0
    for size in range(1, 4):
        for M in itertools.combinations_with_replacement(shape.point_list, size):
            total += 1
            if radical_monomial_member(shape, M) != radical_member_by_powers(shape, M, max_power):
                failures.append(str(Monomial(M)))
    return _first_failure("radical-monomial-powers", failures, total, "monomials")


def check_m3_reduction(shape: Shape) -> CheckResult:
    """Radical monomials of degree up to 4 lie in J<t> + (x_U : U in M_3)."""
    failures = []
    total = 0
    for size in (3, 4):
        for M in itertools.combinations(shape.point_list, size):
            if not radical_monomial_member(shape, M):
                continue
            total += 1
            if m3_reduction_member(shape, M, degree_cap=4) != Membership.MEMBER:
                failures.append(str(Monomial(M)))
    return _first_failure("m3-reduction", failures, total, "radical monomials")


def run_verification(
    shape: Shape,
    level: Optional[str] = None,
    ideal: str = "cj",
    cap: Optional[int] = None,
    workers: Optional[int] = None,
    degree_cap: Optional[int] = None,
) -> VerificationReport:
    """
    Run the suites for one shape.

    Args:
        shape: Hypermatrix format and t
        level: off / corpus / full (defaults to settings.verify_level)
        ideal: Which ideal's minimal primes to count (cj, hatj or checkj)
        cap: Enumeration cap (defaults to settings.cap_points)
        workers: Processes for the subset scan
        degree_cap: Buchberger degree cap for the oracle comparison

    Returns:
        VerificationReport; the caller decides the exit status from ``passed``

    Raises:
        CapExceededError: If enumeration is refused for this shape
    """
    level = level or settings.verify_level
    if level == "off":
        return VerificationReport(shape, level, ())
    family = enumerate_t_signed(shape, cap, workers)
    switchable = enumerate_t_switchable(shape, cap)
    primes = minimal_primes(shape, ideal, cap)
    prime_sets = minimal_prime_sets(shape, "cj", cap)
    checks: List[Tuple[str, Callable[[], CheckResult]]] = [
        ("minimal-prime-count", lambda: check_prime_count(shape, ideal, len(primes))),
        ("slice-ideal-in-switchable-primes", lambda: check_slice_ideal_in_primes(shape, switchable)),
        ("signed-superset-criterion", lambda: check_signed_superset_criterion(shape, family)),
        ("maximality-discrepancies", lambda: check_maximality_discrepancies(shape, cap)),
        ("component-switches", lambda: check_component_switches(shape, family)),
        ("parity-switches", lambda: check_parity_switches(shape, family)),
        ("head-value-bound", lambda: check_head_values(shape, family)),
        ("groebner-certificate", lambda: check_groebner_certificate(shape, prime_sets)),
        ("groebner-basis-oracle", lambda: check_groebner_oracle(shape, prime_sets, degree_cap)),
        ("cubic-confluence", lambda: check_cubic_confluence(shape, prime_sets)),
        ("sign-ledger-parity", lambda: check_sign_ledger(shape, prime_sets)),
        ("ledger-move-parity", lambda: check_ledger_moves(shape, prime_sets)),
        ("quadratic-fast-path", lambda: check_quadratic_fast_path(shape, prime_sets)),
        ("big-difference-additivity", lambda: check_big_difference_additivity(shape, prime_sets)),
    ]
    if level == "full":
        checks += [
            ("syzygy-identity", lambda: check_syzygy_identity(shape)),
            ("switch-relations", lambda: check_switch_relations(shape)),
            ("hatj-forms", lambda: check_hatj_forms(shape)),
            ("embedded-witness-separation", lambda: check_embedded_witness(shape, cap)),
        ]
        if shape.size <= EXHAUSTIVE_POINT_LIMIT:
            checks += [
                ("closure-operator", lambda: check_closure_operator(shape)),
                ("chain-multiplication", lambda: check_chain_claims(shape)),
            ]
        if shape.size <= ORACLE_POINT_LIMIT:
            full_set = PointSet(shape, shape.point_list)
            checks += [
                ("path-parity-monomials", lambda: check_parity_monomials(shape, [full_set])),
                ("radical-monomial-powers", lambda: check_radical_powers(shape)),
                ("m3-reduction", lambda: check_m3_reduction(shape)),
            ]
    results = []
    for name, check in checks:
        result = _guarded(name, check)
        if not result.passed:
            logger.error("%s", result)
        else:
            logger.info("%s", result)
        results.append(result)
    return VerificationReport(shape, level, tuple(results), len(primes))
