"""
Curve structures: labelled intersection graphs of tracked curves

Extraction from a component, classification into exceptional vertices, legs,
degenerate and regular structures, and canonical forms used as isomorphism
invariants. Canonical forms come from an individualization-refinement search
over networkx graphs whose nodes carry a ``color`` and edges a ``weight``.
"""
from dataclasses import dataclass, field
from typing import Dict, FrozenSet, List, Optional, Sequence, Tuple

import networkx as nx

from .anticanonical_pairs import AnticanonicalPair
from ..utils.validation import CurveStructureError

TYPE_TAGS = {1: "d1", 2: "d2", 4: "d4"}

FIXED = "fixed"
FREE = "free"


@dataclass(frozen=True)
class CurveStructure:
    vertices: Tuple[Tuple[str, int], ...]
    edges: Tuple[Tuple[str, str], ...]
    type_tag: str

    @property
    def names(self) -> List[str]:
        return [v for v, _ in self.vertices]

    def label(self, vertex: str) -> int:
        return dict(self.vertices)[vertex]

    def graph(self) -> nx.Graph:
        g = nx.Graph()
        for v, square in self.vertices:
            g.add_node(v, square=square)
        g.add_edges_from(self.edges)
        return g


@dataclass(frozen=True)
class AugmentedCurveStructure:
    """Curve structure with boundary vertices and exact incidence numbers"""
    core: CurveStructure
    boundary_vertices: Tuple[Tuple[str, int], ...]
    incidences: Tuple[Tuple[str, str, int], ...]
    smooth_sides: Tuple[str, ...] = ()

    def meets(self, vertex: str) -> Dict[str, int]:
        return {d: k for v, d, k in self.incidences if v == vertex}

    def met_by(self, side: str) -> Dict[str, int]:
        return {v: k for v, d, k in self.incidences if d == side}

    def boundary_square(self, side: str) -> int:
        return dict(self.boundary_vertices)[side]


@dataclass
class Classification:
    exceptional_vertices: FrozenSet[str]
    legs: Dict[str, Tuple[str, ...]]
    degenerate: bool
    regular: bool
    # unique vertex meeting each side, filled in for non-regular structures
    side_vertices: Dict[str, str] = field(default_factory=dict)

    def leg_end(self, exceptional: str) -> str:
        return self.legs[exceptional][-1]

    @property
    def fork(self) -> Optional[str]:
        """Common end of the legs when every leg ends on the same vertex"""
        ends = {leg[-1] for leg in self.legs.values()}
        return ends.pop() if len(ends) == 1 and len(self.legs) > 1 else None


def extract(pair: AnticanonicalPair) -> AugmentedCurveStructure:
    """Build the augmented curve structure of a component"""
    lattice = pair.lattice
    vertices = []
    for curve in pair.curves:
        vertices.append((curve.name, lattice.pairing(curve.cls, curve.cls)))

    edges = []
    curves = list(pair.curves)
    for i, a in enumerate(curves):
        for b in curves[i + 1:]:
            k = lattice.pairing(a.cls, b.cls)
            if k == 1:
                edges.append(tuple(sorted((a.name, b.name))))
            elif k >= 2 or k < 0:
                raise CurveStructureError(f"Curves {a.name} and {b.name} meet with multiplicity {k}")

    boundary_vertices = tuple((s.name, lattice.pairing(s.cls, s.cls)) for s in pair.boundary)
    incidences = []
    for curve in curves:
        for side in pair.boundary:
            k = lattice.pairing(curve.cls, side.cls)
            if k < 0:
                raise CurveStructureError(f"Curve {curve.name} meets {side.name} negatively")
            if k:
                incidences.append((curve.name, side.name, k))

    type_tag = TYPE_TAGS.get(len(pair.boundary), f"d{len(pair.boundary)}")
    smooth = tuple(s.name for s in pair.boundary if not s.is_nodal())
    core = CurveStructure(vertices=tuple(vertices), edges=tuple(sorted(edges)), type_tag=type_tag)
    return AugmentedCurveStructure(core=core, boundary_vertices=boundary_vertices,
                                   incidences=tuple(incidences), smooth_sides=smooth)


def _neighbours(acs: AugmentedCurveStructure) -> Dict[str, List[str]]:
    adjacent = {v: [] for v in acs.core.names}
    for a, b in acs.core.edges:
        adjacent[a].append(b)
        adjacent[b].append(a)
    return adjacent


def exceptional_vertices(acs: AugmentedCurveStructure) -> List[str]:
    adjacent = _neighbours(acs)
    found = []
    for v, square in acs.core.vertices:
        if square != -1:
            continue
        sides = acs.meets(v)
        if len(sides) != 1:
            continue
        (side,) = sides
        if set(acs.met_by(side)) != {v}:
            continue
        if len(adjacent[v]) == 1:
            found.append(v)
    return found


def leg(acs: AugmentedCurveStructure, exceptional: str) -> Tuple[str, ...]:
    """Grow the leg of an exceptional vertex"""
    adjacent = _neighbours(acs)
    path = [exceptional, adjacent[exceptional][0]]
    while True:
        current = path[-1]
        if acs.meets(current):
            break
        ahead = [w for w in adjacent[current] if w not in path]
        if len(ahead) != 1:
            break
        path.append(ahead[0])
    return tuple(path)


def classify(acs: AugmentedCurveStructure) -> Classification:
    exceptional = exceptional_vertices(acs)
    legs = {v: leg(acs, v) for v in exceptional}
    squares = dict(acs.core.vertices)
    smooth = set(acs.smooth_sides)

    degenerate = not exceptional
    for path in legs.values():
        end = path[-1]
        if any(k > 0 and d in smooth for d, k in acs.meets(end).items()):
            degenerate = True

    regular = len(acs.core.vertices) > 1 and all(squares[path[-1]] != 0 for path in legs.values())

    side_vertices = {}
    if not regular:
        for side, _ in acs.boundary_vertices:
            meeting = list(acs.met_by(side))
            if len(meeting) == 1:
                side_vertices[side] = meeting[0]

    return Classification(exceptional_vertices=frozenset(exceptional), legs=legs,
                          degenerate=degenerate, regular=regular, side_vertices=side_vertices)


def classify_pair(pair: AnticanonicalPair) -> Classification:
    return classify(extract(pair))


# -- canonical forms -------------------------------------------------------

def _sort_key(value) -> str:
    return repr(value)


def _refine(graph: nx.Graph, cells: List[List]) -> List[List]:
    """Equitable refinement; cell order only depends on labelling-invariant data"""
    while True:
        index = {}
        for i, cell in enumerate(cells):
            for v in cell:
                index[v] = i
        refined = []
        for i, cell in enumerate(cells):
            if len(cell) == 1:
                refined.append(cell)
                continue
            signature = {}
            for v in cell:
                signature[v] = tuple(sorted(
                    (index[w], _sort_key(graph.edges[v, w].get('weight', 1))) for w in graph.neighbors(v)
                ))
            groups: Dict[tuple, List] = {}
            for v in cell:
                groups.setdefault(signature[v], []).append(v)
            for key in sorted(groups):
                refined.append(groups[key])
        if len(refined) == len(cells):
            return refined
        cells = refined


def _encode(graph: nx.Graph, order: Sequence) -> str:
    position = {v: i for i, v in enumerate(order)}
    colors = tuple(_sort_key(graph.nodes[v].get('color')) for v in order)
    edges = sorted(
        tuple(sorted((position[u], position[v]))) + (_sort_key(d.get('weight', 1)),)
        for u, v, d in graph.edges(data=True)
    )
    return repr((colors, tuple(edges)))


def canonical_labelling(graph: nx.Graph) -> Tuple[str, List]:
    """Minimum encoding over the individualization-refinement search tree.

    Returns the encoding and one vertex order realising it.
    """
    groups: Dict[str, List] = {}
    for v, data in graph.nodes(data=True):
        groups.setdefault(_sort_key(data.get('color')), []).append(v)
    cells = [groups[k] for k in sorted(groups)]

    best: List = [None, None]

    def search(partition: List[List]) -> None:
        partition = _refine(graph, partition)
        target = next((i for i, cell in enumerate(partition) if len(cell) > 1), None)
        if target is None:
            order = [cell[0] for cell in partition]
            code = _encode(graph, order)
            if best[0] is None or code < best[0]:
                best[0], best[1] = code, order
            return
        cell = partition[target]
        for v in cell:
            rest = [w for w in cell if w != v]
            search(partition[:target] + [[v], rest] + partition[target + 1:])

    if graph.number_of_nodes() == 0:
        return repr(((), ())), []
    search(cells)
    return best[0], best[1]


def canonical_certificate(graph: nx.Graph) -> str:
    return canonical_labelling(graph)[0]


def structure_graph(acs: AugmentedCurveStructure, boundary_order: str = FIXED) -> nx.Graph:
    """Coloured graph of an augmented structure; fixed order keeps side names in the colours"""
    g = nx.Graph()
    for v, square in acs.core.vertices:
        g.add_node(("c", v), color=("curve", square))
    for position, (side, square) in enumerate(acs.boundary_vertices):
        tag = side if boundary_order == FIXED else ""
        g.add_node(("d", side), color=("side", square, tag))
    for a, b in acs.core.edges:
        g.add_edge(("c", a), ("c", b), weight=1)
    for v, side, k in acs.incidences:
        g.add_edge(("c", v), ("d", side), weight=k)
    return g


def canonical_form(acs: AugmentedCurveStructure, boundary_order: str = FIXED) -> bytes:
    """Canonical byte string: equal iff the augmented structures are isomorphic"""
    if boundary_order not in (FIXED, FREE):
        raise ValueError(f"boundary_order must be '{FIXED}' or '{FREE}'")
    certificate = canonical_certificate(structure_graph(acs, boundary_order))
    return (acs.core.type_tag + ":" + certificate).encode("utf-8")
