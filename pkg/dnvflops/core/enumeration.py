"""
Breadth-first enumeration of central fibre states up to isomorphism

States are compared through canonical certificates of one coloured graph per
state: tracked curves, boundary sides and components as vertices, pairings,
anchors, membership and gluings as weighted edges. The triple calculus for
all-regular class P states is an independent check on the search.
"""
from collections import deque
from itertools import permutations
from typing import Callable, Dict, Iterable, List, Optional, Set, Tuple

import networkx as nx

from .curve_structure import canonical_certificate
from .degeneration import CLASS_P, CLASS_T, SELF_GLUED, CentralFibreState, build_YP, build_YT, side_name
from .flops import type_I_flops
from .projectivity import VerdictCache, create_oracle, projectivity_pattern
from ..interfaces.base_interface import ProgressReporter, ProjectivityOracle
from ..utils.logger import attach_to_log
from ..utils.validation import ValidationError

logger = attach_to_log(name=__name__)

Triple = Tuple[int, int, int]
Permutation = Tuple[int, int, int]

IDENTITY: Permutation = (1, 2, 3)

ALL_REGULAR = "all_regular"
NONREGULAR_DEGENERATE_REGULAR = "nonregular_degenerate_regular"
TWO_NONREGULAR = "two_nonregular"
NONREGULAR_TWO_NONDEGENERATE = "nonregular_two_nondegenerate"

NONDEGENERATE = "nondegenerate"
ONE_DEGENERATE = "one_degenerate"
TWO_DEGENERATE = "two_degenerate"
REGULAR_STRATA = (NONDEGENERATE, ONE_DEGENERATE, TWO_DEGENERATE)


# -- keys ------------------------------------------------------------------

def _self_glued_sides(state: CentralFibreState) -> Set[Tuple[int, str]]:
    sides = set()
    for g in state.gluings:
        if g.kind == SELF_GLUED:
            sides.update((g.side_a, g.side_b))
    return sides


def state_graph(state: CentralFibreState, labelling: Optional[Permutation] = None,
                transport: bool = False) -> nx.Graph:
    """Coloured graph of a whole state.

    With ``labelling`` the component vertices carry the given positions, so
    certificates only identify states through position-preserving
    isomorphisms. ``transport`` keeps negative curves avoiding self-glued
    sides and drops anchors.
    """
    g = nx.Graph()
    self_glued = _self_glued_sides(state)

    for i, pair in enumerate(state.components, start=1):
        position = labelling[i - 1] if labelling is not None else 0
        comp = ("comp", i)
        g.add_node(comp, color=("comp", i == state.special, position))

        names = []
        for curve in pair.curves:
            square = pair.lattice.pairing(curve.cls, curve.cls)
            if transport:
                if square >= 0:
                    continue
                if any(pair.lattice.pairing(curve.cls, pair.side(s).cls)
                       for (j, s) in self_glued if j == i):
                    continue
            names.append(curve.name)
            g.add_node(("curve", i, curve.name), color=("curve", square))
            g.add_edge(("curve", i, curve.name), comp, weight="in")

        for side in pair.boundary:
            node = ("side", i, side.name)
            g.add_node(node, color=("side", pair.side_square(side.name), side.is_nodal()))
            g.add_edge(node, comp, weight="in")

        for a_pos, a in enumerate(names):
            a_cls = pair.curve(a).cls
            for b in names[a_pos + 1:]:
                k = pair.lattice.pairing(a_cls, pair.curve(b).cls)
                if k:
                    g.add_edge(("curve", i, a), ("curve", i, b), weight=k)

        for side in pair.boundary:
            points = side.point_multiplicities()
            for a in names:
                k = pair.lattice.pairing(pair.curve(a).cls, side.cls)
                if transport:
                    if k:
                        g.add_edge(("curve", i, a), ("side", i, side.name), weight=k)
                    continue
                anchored = side.anchor_multiplicity(a)
                if k or anchored:
                    g.add_edge(("curve", i, a), ("side", i, side.name),
                               weight=(k, anchored, points.get(a, 0)))

    for gluing in state.gluings:
        (i, a), (j, b) = gluing.side_a, gluing.side_b
        g.add_edge(("side", i, a), ("side", j, b), weight=("glue", gluing.kind))
    return g


def _key(state: CentralFibreState, graph: nx.Graph) -> bytes:
    return (state.class_tag + ":" + canonical_certificate(graph)).encode("utf-8")


def iso_class_key(state: CentralFibreState) -> bytes:
    """Equal for two states iff they are isomorphic"""
    return _key(state, state_graph(state))


def labelled_key(state: CentralFibreState, permutation: Permutation = IDENTITY) -> bytes:
    """Key of the state with component i placed at position permutation[i - 1]"""
    return _key(state, state_graph(state, labelling=permutation))


def transport_key(state: CentralFibreState) -> bytes:
    """Labelled key on intrinsic data only, for matching type II targets"""
    return _key(state, state_graph(state, labelling=IDENTITY, transport=True))


def lp_cache() -> VerdictCache:
    """Empty LP verdict cache keyed by isomorphism class"""
    return VerdictCache(iso_class_key)


def automorphism_permutations(state: CentralFibreState) -> List[Permutation]:
    """Component permutations induced by automorphisms of the state"""
    reference = labelled_key(state)
    return [p for p in permutations(IDENTITY) if p == IDENTITY or labelled_key(state, p) == reference]


def _is_transposition(p: Permutation) -> bool:
    return sum(1 for i, j in enumerate(p, start=1) if i != j) == 2


def is_symmetric(state: CentralFibreState) -> bool:
    """Some automorphism exchanges two components"""
    return any(_is_transposition(p) for p in automorphism_permutations(state))


# -- search ----------------------------------------------------------------

def reference_states(class_filter: str) -> List[CentralFibreState]:
    if class_filter == CLASS_P:
        return [build_YP()]
    if class_filter == CLASS_T:
        return [build_YT()]
    if class_filter == "both":
        return [build_YP(), build_YT()]
    raise ValidationError(f"Unknown class filter '{class_filter}'")


def closure(seeds: Iterable[CentralFibreState], key: Callable[[CentralFibreState], bytes],
            oracle: Optional[ProjectivityOracle] = None, max_depth: Optional[int] = None,
            reporter: Optional[ProgressReporter] = None,
            on_edge: Optional[Callable] = None) -> Dict[bytes, CentralFibreState]:
    """Type I closure of the seeds, deduplicated by ``key``.

    States rejected by the oracle are neither kept nor expanded. ``on_edge``
    is called as ``on_edge(key_from, key_to, flop)`` for every kept flop.
    """
    found: Dict[bytes, CentralFibreState] = {}
    rejected: Set[bytes] = set()
    queue = deque()
    for seed in seeds:
        k = key(seed)
        if k not in found:
            found[k] = seed
            queue.append((k, seed, 0))

    while queue:
        k, state, depth = queue.popleft()
        if max_depth is not None and depth >= max_depth:
            continue
        for flop in type_I_flops(state):
            target = flop.execute()
            target_key = key(target)
            if target_key in rejected:
                continue
            if target_key not in found and oracle is not None and not oracle.is_projective(target):
                logger.debug(f"Skipping non-projective target of {flop.label()}")
                rejected.add(target_key)
                continue
            if on_edge is not None:
                on_edge(k, target_key, flop)
            if target_key in found:
                continue
            found[target_key] = target
            queue.append((target_key, target, depth + 1))
            if reporter is not None and len(found) % 50 == 0:
                reporter.report_progress(len(found), f"{len(found)} states")
    return found


def bfs(class_filter: str = "both", projective_only: bool = True,
        oracle: Optional[ProjectivityOracle] = None, max_depth: Optional[int] = None,
        reporter: Optional[ProgressReporter] = None) -> Dict[bytes, CentralFibreState]:
    """Isomorphism classes reachable by type I flops from the reference states.

    Type II flops are not needed: every class T model is reached from Y_T and
    every class P model from Y_P by type I flops alone.
    """
    if projective_only and oracle is None:
        oracle = create_oracle(cache=lp_cache())
    if not projective_only:
        oracle = None

    if reporter is not None:
        reporter.report_start(f"enumerate {class_filter}", 0)
    result: Dict[bytes, CentralFibreState] = {}
    for seed in reference_states(class_filter):
        classes = closure([seed], iso_class_key, oracle=oracle, max_depth=max_depth, reporter=reporter)
        logger.info(f"Class {seed.class_tag}: {len(classes)} isomorphism classes")
        result.update(classes)
    if reporter is not None:
        reporter.report_complete(True, f"{len(result)} classes")
    return result


# -- triples ---------------------------------------------------------------

def shift(t: Triple) -> Triple:
    x, y, z = t
    return (z, x, y)


def involution(t: Triple) -> Triple:
    x, y, z = t
    return (-y, -x, -z)


def triple_orbit(t: Triple) -> Set[Triple]:
    orbit = set()
    for start in (tuple(t), involution(tuple(t))):
        current = start
        for _ in range(3):
            orbit.add(current)
            current = shift(current)
    return orbit


def canonical_triple(t: Triple) -> Triple:
    return min(triple_orbit(t))


def triple_equivalent(a: Triple, b: Triple) -> bool:
    return tuple(b) in triple_orbit(a)


def triple_of(state: CentralFibreState) -> Optional[Triple]:
    """(n1, n2, n3) with D_{i,i+1}^2 = -1 + n_i; None unless every component is regular"""
    if state.class_tag != CLASS_P:
        raise ValidationError("Triples are defined for class P states only")
    if projectivity_pattern(state)["nonregular"]:
        return None
    return tuple(state.component(i).side_square(side_name(i, i % 3 + 1)) + 1 for i in state.indices)


def listed_regular_triples() -> Dict[str, List[Triple]]:
    """The explicit triple lists for all-regular class P models, one per stratum"""
    small = range(-2, 3)

    nondegenerate = [(0, 1, -1), (0, 1, 2), (0, 1, -2), (0, 2, 1), (0, 2, -2), (0, -1, 2),
                     (0, -1, 1), (0, -2, 2), (1, 2, -1), (1, 2, -2), (1, -1, 2), (1, -2, 2)]
    nondegenerate += [(x, y, y) for x in (1, 2) for y in small if y != x]
    nondegenerate += [(0, 1, 1), (0, 2, 2)]
    nondegenerate += [(x, x, x) for x in small]

    one_degenerate = [(3, y, -3) for y in range(0, 3)]
    one_degenerate += [(x, y, z) for x in small for y in small for z in range(x - 6, -2)]

    two_degenerate = [(x, -3, 3) for x in range(3, 10)]
    for y, lowest in ((0, -6), (-1, -7), (-2, -8)):
        two_degenerate += [(x, y, z) for x in range(lowest, -2) for z in range(3, 7 + y)]
    for x, lowest in ((-2, -8), (-1, -7), (0, -6), (1, -5), (2, -4)):
        two_degenerate += [(t, y, x) for y in range(lowest, -2) for t in range(y - 6, -2)]

    return {NONDEGENERATE: nondegenerate, ONE_DEGENERATE: one_degenerate, TWO_DEGENERATE: two_degenerate}


def enumerate_regular_triples() -> Dict[str, Set[Triple]]:
    """Listed triples per stratum, as canonical representatives of equivalence classes"""
    result = {}
    for stratum, triples in listed_regular_triples().items():
        result[stratum] = {canonical_triple(t) for t in triples}
        if len(result[stratum]) != len(triples):
            logger.info(f"Stratum {stratum}: {len(triples)} listed triples, "
                        f"{len(result[stratum])} up to equivalence")
    return result


# -- strata and coordinates -------------------------------------------------

def stratum_of(state: CentralFibreState) -> str:
    if state.class_tag != CLASS_P:
        raise ValidationError("Strata are defined for class P states only")
    pattern = projectivity_pattern(state)
    nonregular = pattern["nonregular"]
    if not nonregular:
        return ALL_REGULAR
    if len(nonregular) >= 2:
        return TWO_NONREGULAR
    if len(pattern["nondegenerate"]) == 2:
        return NONREGULAR_TWO_NONDEGENERATE
    return NONREGULAR_DEGENERATE_REGULAR


def regular_stratum(state: CentralFibreState) -> Optional[str]:
    """Number of degenerate components of an all-regular class P state"""
    pattern = projectivity_pattern(state)
    if pattern["nonregular"]:
        return None
    degenerate = len(pattern["regular_degenerate"])
    if degenerate >= len(REGULAR_STRATA):
        return None
    return REGULAR_STRATA[degenerate]


def t_coordinates(state: CentralFibreState) -> Tuple[int, int]:
    """Squares plus one of the nodal sides on the special component, by smooth component"""
    if state.class_tag != CLASS_T:
        raise ValidationError("Coordinates are defined for class T states only")
    c = state.special
    return tuple(state.component(c).side_square(side_name(c, i)) + 1 for i in state.smooth_components())


def regularity_pattern(state: CentralFibreState) -> str:
    """One letter per component: N non-degenerate, R regular degenerate, X non-regular"""
    pattern = projectivity_pattern(state)
    letters = []
    for i in state.indices:
        if i in pattern["nonregular"]:
            letters.append("X")
        elif i in pattern["nondegenerate"]:
            letters.append("N")
        else:
            letters.append("R")
    return "".join(letters)
