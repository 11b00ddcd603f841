"""
Mori fan as a graph of labelled states

Each node is a marked model up to isomorphism: a state with its component
positions fixed. Edges are flops. The secondary fan is what remains
connected after deleting the type II edges.
"""
from collections import Counter
from dataclasses import dataclass
from typing import Dict, List, Optional, Set

import networkx as nx

from .degeneration import CLASS_P, CLASS_T, TYPE_I, TYPE_II, CentralFibreState, build_YP, build_YT
from .enumeration import (
    automorphism_permutations, bfs, closure, is_symmetric, iso_class_key, labelled_key, lp_cache,
    transport_key
)
from .flops import type_II_flops
from .projectivity import create_oracle
from ..interfaces.base_interface import ProgressReporter, ProjectivityOracle
from ..utils.logger import attach_to_log
from ..utils.validation import InconsistencyError

logger = attach_to_log(name=__name__)


def orbit_length(state: CentralFibreState) -> int:
    """Cones of the model in the Mori fan: 6 over the automorphism-induced component permutations"""
    return 6 // len(automorphism_permutations(state))


@dataclass
class ConeCensus:
    total: int
    by_class: Dict[str, int]
    orbits: Dict[str, Dict[int, int]]
    symmetric: int = 0


def cone_census(classes: Optional[Dict[bytes, CentralFibreState]] = None,
                oracle: Optional[ProjectivityOracle] = None) -> ConeCensus:
    if classes is None:
        classes = bfs("both", projective_only=True, oracle=oracle)

    by_class = {CLASS_P: 0, CLASS_T: 0}
    orbits = {CLASS_P: Counter(), CLASS_T: Counter()}
    symmetric = 0
    for state in classes.values():
        length = orbit_length(state)
        by_class[state.class_tag] += length
        orbits[state.class_tag][length] += 1
        if is_symmetric(state):
            symmetric += 1

    census = ConeCensus(total=sum(by_class.values()), by_class=by_class,
                        orbits={k: dict(sorted(v.items())) for k, v in orbits.items()},
                        symmetric=symmetric)
    logger.info(f"Cone census: {census.total} (P: {by_class[CLASS_P]}, T: {by_class[CLASS_T]})")
    return census


@dataclass
class FlopGraph:
    graph: nx.Graph
    states: Dict[bytes, CentralFibreState]
    reference: bytes
    # type II flops whose image is not projective
    walls: int = 0

    def count_by_class(self) -> Dict[str, int]:
        counts = Counter(data["class_tag"] for _, data in self.graph.nodes(data=True))
        return {CLASS_P: counts.get(CLASS_P, 0), CLASS_T: counts.get(CLASS_T, 0)}

    def edges_of_type(self, kind: str) -> List:
        return [(a, b) for a, b, data in self.graph.edges(data=True) if data["type"] == kind]

    def node_ids(self) -> Dict[bytes, int]:
        return {key: position for position, key in enumerate(self.graph.nodes)}

    def is_connected(self) -> bool:
        return self.graph.number_of_nodes() > 0 and nx.is_connected(self.graph)


def link_type_II(graph: nx.Graph, sources: Dict[bytes, CentralFibreState],
                 targets: Dict[bytes, CentralFibreState], oracle: ProjectivityOracle) -> int:
    """Add type II edges from ``sources`` into ``targets``.

    Images are matched on their intrinsic labelled data, since their tracked
    curves differ from those of the node reached by type I flops. Returns the
    number of flops with a non-projective image; a projective image without
    exactly one matching node raises InconsistencyError.
    """
    index: Dict[bytes, List[bytes]] = {}
    for key, state in targets.items():
        index.setdefault(transport_key(state), []).append(key)

    walls = 0
    for key, state in sources.items():
        for flop in type_II_flops(state):
            target = flop.execute()
            matches = index.get(transport_key(target), [])
            if len(matches) == 1:
                graph.add_edge(key, matches[0], type=TYPE_II, move=flop.label())
                continue
            if not matches and not oracle.is_projective(target):
                walls += 1
                continue
            raise InconsistencyError(f"Type II image of {flop.label()} matches {len(matches)} labelled states")
    return walls


def build_flop_graph(oracle: Optional[ProjectivityOracle] = None,
                     reporter: Optional[ProgressReporter] = None) -> FlopGraph:
    """Labelled type I closures of Y_P and of the three placements of Y_T, joined by type II flops"""
    if oracle is None:
        oracle = create_oracle(cache=lp_cache())
    graph = nx.Graph()

    def on_edge(a: bytes, b: bytes, flop) -> None:
        if a != b:
            graph.add_edge(a, b, type=TYPE_I, move=flop.label())

    if reporter is not None:
        reporter.report_start("flop graph", 0)
    p_nodes = closure([build_YP()], labelled_key, oracle=oracle, reporter=reporter, on_edge=on_edge)
    t_nodes = closure([build_YT(c) for c in (1, 2, 3)], labelled_key, oracle=oracle,
                      reporter=reporter, on_edge=on_edge)
    states = {**p_nodes, **t_nodes}

    iso_ids: Dict[bytes, int] = {}
    for key, state in states.items():
        iso = iso_class_key(state)
        iso_ids.setdefault(iso, len(iso_ids))
        graph.add_node(key, class_tag=state.class_tag, iso_id=iso_ids[iso])

    walls = link_type_II(graph, p_nodes, t_nodes, oracle) + link_type_II(graph, t_nodes, p_nodes, oracle)
    flop_graph = FlopGraph(graph=graph, states=states, reference=labelled_key(build_YP()), walls=walls)
    logger.info(f"Flop graph: {graph.number_of_nodes()} nodes, "
                f"{len(flop_graph.edges_of_type(TYPE_I))} type I and "
                f"{len(flop_graph.edges_of_type(TYPE_II))} type II edges")
    if reporter is not None:
        reporter.report_complete(True, f"{graph.number_of_nodes()} labelled states")
    return flop_graph


def secondary_fan(flop_graph: FlopGraph) -> List[Set[bytes]]:
    """Components of the flop graph without its type II edges, largest first"""
    type_I = nx.Graph()
    type_I.add_nodes_from(flop_graph.graph.nodes)
    type_I.add_edges_from(flop_graph.edges_of_type(TYPE_I))
    components = list(nx.connected_components(type_I))
    ids = flop_graph.node_ids()
    return sorted(components, key=lambda c: (-len(c), min(ids[k] for k in c)))


def component_tally(flop_graph: FlopGraph, component: Set[bytes]) -> Dict[int, int]:
    """Number of isomorphism classes by how many labelled nodes they have in the component"""
    per_class = Counter(flop_graph.graph.nodes[k]["iso_id"] for k in component)
    return dict(sorted(Counter(per_class.values()).items()))
