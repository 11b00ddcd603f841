"""
Rigid anticanonical pairs of degree 1, 2 and 4

Each builder replays the blow-up construction on the Picard lattice of the
plane (or of the quadric) so every curve and boundary class is produced by
lattice arithmetic, never typed in by hand.
"""
from dataclasses import dataclass, replace
from typing import Dict, Iterable, List, Optional, Tuple

import networkx as nx

from .picard_lattice import DivisorClass, IntersectionLattice, class_sum
from ..utils.logger import attach_to_log
from ..utils.validation import LatticeError, ValidationError

logger = attach_to_log(name=__name__)

ROLE_ROOT = "root"
ROLE_EXCEPTIONAL = "exceptional"
ROLE_OTHER = "other"

BASE_TAGS = ("Y1", "Y2", "Y4")


@dataclass(frozen=True)
class Curve:
    """Tracked interior curve of a component"""
    name: str
    cls: DivisorClass
    role: str = ROLE_OTHER


@dataclass(frozen=True)
class BoundarySide:
    """One component of the anticanonical cycle.

    ``anchor`` is the multiset of curves through the interior special point of
    this side, with their local intersection number with the side there.
    ``branches`` holds the multiplicity of each anchor curve at the point; it
    is what a blow-up at the point subtracts and equals the anchor entry for
    curves crossing the side transversally. ``nodes`` lists the triple-point
    slots on the side; a nodal side lists its own node twice.
    """
    name: str
    cls: DivisorClass
    anchor: Tuple[Tuple[str, int], ...] = ()
    nodes: Tuple[str, ...] = ()
    branches: Tuple[Tuple[str, int], ...] = ()

    def anchor_multiplicity(self, curve_name: str) -> int:
        return dict(self.anchor).get(curve_name, 0)

    def point_multiplicities(self) -> Dict[str, int]:
        """Multiplicity at the special point of every anchor curve"""
        mults = dict(self.anchor)
        mults.update(self.branches)
        return {c: m for c, m in mults.items() if c in dict(self.anchor)}

    def is_nodal(self) -> bool:
        return len(self.nodes) != len(set(self.nodes))


@dataclass(frozen=True)
class AnticanonicalPair:
    """A smooth rational surface with its anticanonical cycle and tracked curves"""
    lattice: IntersectionLattice
    base_tag: str
    curves: Tuple[Curve, ...]
    boundary: Tuple[BoundarySide, ...]
    canonical_class: DivisorClass
    # (node, curve, multiplicity) for tracked curves passing through a node
    node_through: Tuple[Tuple[str, str, int], ...] = ()

    # -- lookups ---------------------------------------------------------

    @property
    def rank(self) -> int:
        return self.lattice.rank

    @property
    def curve_names(self) -> List[str]:
        return [c.name for c in self.curves]

    @property
    def side_names(self) -> List[str]:
        return [s.name for s in self.boundary]

    def curve(self, name: str) -> Curve:
        for c in self.curves:
            if c.name == name:
                return c
        raise ValidationError(f"No curve named '{name}'")

    def has_curve(self, name: str) -> bool:
        return any(c.name == name for c in self.curves)

    def side(self, name: str) -> BoundarySide:
        for s in self.boundary:
            if s.name == name:
                return s
        raise ValidationError(f"No boundary side named '{name}'")

    def has_side(self, name: str) -> bool:
        return any(s.name == name for s in self.boundary)

    def pairing(self, a: DivisorClass, b: DivisorClass) -> int:
        return self.lattice.pairing(a, b)

    def curve_square(self, name: str) -> int:
        c = self.curve(name).cls
        return self.lattice.pairing(c, c)

    def side_square(self, name: str) -> int:
        d = self.side(name).cls
        return self.lattice.pairing(d, d)

    def boundary_class(self) -> DivisorClass:
        return class_sum((s.cls for s in self.boundary), self.rank)

    def boundary_degree(self, curve_name: str) -> int:
        """Total intersection of a curve with the anticanonical cycle"""
        c = self.curve(curve_name).cls
        return sum(self.lattice.pairing(c, s.cls) for s in self.boundary)

    def node_contributions(self, side_name: str) -> Dict[str, int]:
        """Intersection each curve picks up at the nodes of a side"""
        side = self.side(side_name)
        contributions: Dict[str, int] = {}
        for node, curve_name, mult in self.node_through:
            hits = side.nodes.count(node)
            if hits:
                contributions[curve_name] = contributions.get(curve_name, 0) + hits * mult
        return contributions

    def curves_through_node(self, node: str) -> Dict[str, int]:
        return {c: m for n, c, m in self.node_through if n == node}

    # -- derived data ----------------------------------------------------

    def role_of(self, curve: Curve) -> str:
        square = self.lattice.pairing(curve.cls, curve.cls)
        degree = sum(self.lattice.pairing(curve.cls, s.cls) for s in self.boundary)
        if square == -2 and degree == 0:
            return ROLE_ROOT
        if square == -1 and degree == 1:
            return ROLE_EXCEPTIONAL
        return ROLE_OTHER

    def with_fresh_roles(self) -> 'AnticanonicalPair':
        curves = tuple(replace(c, role=self.role_of(c)) for c in self.curves)
        return replace(self, curves=curves)

    def renamed(self, curve_prefix: str = "", side_names: Optional[Dict[str, str]] = None,
                node_names: Optional[Dict[str, str]] = None) -> 'AnticanonicalPair':
        """Qualify curve names and rename sides or nodes"""
        side_names = side_names or {}
        node_names = node_names or {}

        def cn(name: str) -> str:
            return curve_prefix + name

        def nn(name: str) -> str:
            return node_names.get(name, name)

        curves = tuple(replace(c, name=cn(c.name)) for c in self.curves)
        boundary = tuple(
            replace(s, name=side_names.get(s.name, s.name),
                    anchor=tuple(sorted((cn(a), m) for a, m in s.anchor)),
                    branches=tuple(sorted((cn(a), m) for a, m in s.branches)),
                    nodes=tuple(nn(n) for n in s.nodes))
            for s in self.boundary
        )
        node_through = tuple(sorted((nn(n), cn(c), m) for n, c, m in self.node_through))
        return replace(self, curves=curves, boundary=boundary, node_through=node_through)

    def root_curves(self) -> List[Curve]:
        return [c for c in self.curves if c.role == ROLE_ROOT]

    def exceptional_curves(self) -> List[Curve]:
        return [c for c in self.curves if c.role == ROLE_EXCEPTIONAL]

    def curve_gram(self) -> List[List[int]]:
        return self.lattice.gram_of([c.cls for c in self.curves])

    def combination(self, coefficients: Dict[str, object]) -> DivisorClass:
        """Integer class sum of coefficient * curve over tracked curves"""
        total = DivisorClass.zero(self.rank)
        for name, k in coefficients.items():
            total = total + k * self.curve(name).cls
        return total


class _SurfaceScript:
    """Replays a blow-up construction while keeping named classes current"""

    def __init__(self, lattice: IntersectionLattice, canonical: DivisorClass,
                 classes: Dict[str, DivisorClass]):
        self.lattice = lattice
        self.canonical = canonical
        self.classes = dict(classes)

    def blow_up(self, new_name: str, through: Dict[str, int]) -> None:
        result = self.lattice.blow_up([(self.classes[n], m) for n, m in through.items()], name=new_name)
        embed = result.transform.linear
        classes = {}
        for name, c in self.classes.items():
            classes[name] = embed(c) - through.get(name, 0) * result.exceptional
        classes[new_name] = result.exceptional
        self.lattice = result.lattice
        self.canonical = embed(self.canonical) + result.exceptional
        self.classes = classes

    def blow_down(self, name: str) -> None:
        result = self.lattice.blow_down(self.classes[name])
        self.classes = {n: result.push(c) for n, c in self.classes.items() if n != name}
        self.canonical = result.push(self.canonical)
        self.lattice = result.lattice

    def __getitem__(self, name: str) -> DivisorClass:
        return self.classes[name]

    def define(self, name: str, terms: Dict[str, int]) -> None:
        total = DivisorClass.zero(self.lattice.rank)
        for n, k in terms.items():
            total = total + k * self.classes[n]
        self.classes[name] = total


def _assemble(script: _SurfaceScript, base_tag: str, curve_names: Iterable[str],
              sides: List[Tuple[str, Tuple[Tuple[str, int], ...], Tuple[str, ...]]]) -> AnticanonicalPair:
    curves = tuple(Curve(name=n, cls=script[n]) for n in curve_names)
    boundary = tuple(BoundarySide(name=n, cls=script[n], anchor=a, nodes=nodes) for n, a, nodes in sides)
    pair = AnticanonicalPair(lattice=script.lattice, base_tag=base_tag, curves=curves,
                             boundary=boundary, canonical_class=script.canonical)
    pair = pair.with_fresh_roles()
    problems = check_pair(pair)
    if problems:
        raise LatticeError(f"{base_tag} construction inconsistent: " + "; ".join(problems))
    logger.debug(f"Built {base_tag} of rank {pair.rank} with {len(pair.curves)} tracked curves")
    return pair


def build_Y2() -> AnticanonicalPair:
    """Degree 2 pair: E6 roots, two exceptional curves, two boundary sides of square -1.

    Blow up the plane three times at p, three times at q and twice at r along
    the boundary lines through them, then contract the strict transform of the
    third boundary line.
    """
    plane = IntersectionLattice.projective_plane()
    line = plane.basis("l")
    script = _SurfaceScript(plane, -3 * line, {"D1": line, "D2": line, "Lr": line, "c": line})

    script.blow_up("Ep1", {"D1": 1, "c": 1})
    script.blow_up("Ep2", {"D1": 1, "Ep1": 1})
    script.blow_up("Ep3", {"D1": 1, "Ep2": 1})
    script.blow_up("Eq1", {"D2": 1, "c": 1})
    script.blow_up("Eq2", {"D2": 1, "Eq1": 1})
    script.blow_up("Eq3", {"D2": 1, "Eq2": 1})
    script.blow_up("Er1", {"Lr": 1, "c": 1})
    script.blow_up("Er2", {"Lr": 1, "Er1": 1})
    # Ep1, Eq1, Er1 now hold the chain classes E1 - E2; Ep3, Eq3 are the -1 ends
    script.classes["y"] = script.classes.pop("Er1")
    script.classes["a2"] = script.classes.pop("Ep1")
    script.classes["a1"] = script.classes.pop("Ep2")
    script.classes["e1"] = script.classes.pop("Ep3")
    script.classes["b2"] = script.classes.pop("Eq1")
    script.classes["b1"] = script.classes.pop("Eq2")
    script.classes["e2"] = script.classes.pop("Eq3")
    script.blow_down("Lr")

    return _assemble(
        script, "Y2", ["c", "y", "a2", "a1", "e1", "b2", "b1", "e2"],
        [("D1", (("e1", 1),), ("t1", "t2")),
         ("D2", (("e2", 1),), ("t1", "t2"))],
    )


def build_Y1() -> AnticanonicalPair:
    """Degree 1 pair: E8 roots, one exceptional curve and a nodal boundary of square 1.

    Eight infinitely near blow-ups at a flex of a nodal cubic, the first three
    along the inflectional tangent line.
    """
    plane = IntersectionLattice.projective_plane()
    line = plane.basis("l")
    script = _SurfaceScript(plane, -3 * line, {"D": 3 * line, "u": line})

    script.blow_up("E1", {"D": 1, "u": 1})
    script.blow_up("E2", {"D": 1, "u": 1, "E1": 1})
    script.blow_up("E3", {"D": 1, "u": 1, "E2": 1})
    for i in range(4, 9):
        script.blow_up(f"E{i}", {"D": 1, f"E{i - 1}": 1})

    script.classes["w2"] = script.classes.pop("E1")
    script.classes["w1"] = script.classes.pop("E2")
    script.classes["v"] = script.classes.pop("E3")
    script.classes["r1"] = script.classes.pop("E4")
    script.classes["r2"] = script.classes.pop("E5")
    script.classes["r3"] = script.classes.pop("E6")
    script.classes["r4"] = script.classes.pop("E7")
    script.classes["e"] = script.classes.pop("E8")

    return _assemble(
        script, "Y1", ["v", "u", "w1", "w2", "r1", "r2", "r3", "r4", "e"],
        [("D", (("e", 1),), ("n", "n"))],
    )


def build_Y4() -> AnticanonicalPair:
    """Degree 4 pair: A2 roots, four exceptional curves, a square of sides of square -1"""
    quadric = IntersectionLattice.quadric()
    f1, f2 = quadric.basis("f1"), quadric.basis("f2")
    script = _SurfaceScript(quadric, -2 * f1 - 2 * f2,
                            {"D1": f1, "D2": f2, "D3": f1, "D4": f2, "r1": f2, "r2": f1})

    script.blow_up("e1", {"D1": 1, "r1": 1})
    script.blow_up("e2", {"D2": 1, "r2": 1})
    script.blow_up("e3", {"D3": 1, "r1": 1})
    script.blow_up("e4", {"D4": 1, "r2": 1})

    return _assemble(
        script, "Y4", ["r1", "r2", "e1", "e2", "e3", "e4"],
        [("D1", (("e1", 1),), ("t41", "t12")),
         ("D2", (("e2", 1),), ("t12", "t23")),
         ("D3", (("e3", 1),), ("t23", "t34")),
         ("D4", (("e4", 1),), ("t34", "t41"))],
    )


BUILDERS = {"Y1": build_Y1, "Y2": build_Y2, "Y4": build_Y4}

# Curve coefficients of explicit ample classes on the freshly built pairs
REFERENCE_CERTIFICATES: Dict[str, Dict[str, int]] = {
    "Y2": {"y": 7, "a1": 11, "a2": 13, "c": 16, "b2": 13, "b1": 11, "e1": 10, "e2": 10},
    "Y4": {"r1": 3, "r2": 3, "e1": 2, "e2": 2, "e3": 2, "e4": 2},
    "Y1": {"e": 30, "r4": 31, "r3": 33, "r2": 36, "r1": 40, "v": 45, "u": 22, "w1": 29, "w2": 14},
}


def check_pair(pair: AnticanonicalPair) -> List[str]:
    """Structural checks of a freshly built pair; returns a list of problems"""
    problems = []
    if pair.boundary_class() != -pair.canonical_class:
        problems.append("boundary classes do not sum to -K")
    for curve in pair.curves:
        square = pair.curve_square(curve.name)
        degree = pair.boundary_degree(curve.name)
        if curve.role == ROLE_EXCEPTIONAL and (square, degree) != (-1, 1):
            problems.append(f"exceptional curve {curve.name} has square {square}, boundary degree {degree}")
        if curve.role == ROLE_ROOT and (square, degree) != (-2, 0):
            problems.append(f"root {curve.name} has square {square}, boundary degree {degree}")
    if len(pair.curves) != pair.rank:
        problems.append(f"{len(pair.curves)} curves in a lattice of rank {pair.rank}")
    elif pair.lattice.classes_determinant([c.cls for c in pair.curves]) == 0:
        problems.append("curve classes are not a rational basis")
    for side in pair.boundary:
        for curve_name, mult in side.anchor:
            if pair.pairing(pair.curve(curve_name).cls, side.cls) <= 0:
                problems.append(f"anchor curve {curve_name} does not meet {side.name}")
    return problems


def same_pair_data(a: AnticanonicalPair, b: AnticanonicalPair) -> bool:
    """Equal names, pairings, anchors and nodes; the lattice bases may differ"""
    if a.curve_names != b.curve_names or a.side_names != b.side_names:
        return False
    if sorted(a.node_through) != sorted(b.node_through):
        return False
    for sa, sb in zip(a.boundary, b.boundary):
        if tuple(sorted(sa.anchor)) != tuple(sorted(sb.anchor)) or sa.nodes != sb.nodes:
            return False
        if sa.point_multiplicities() != sb.point_multiplicities():
            return False
    classes_a = [c.cls for c in a.curves] + [s.cls for s in a.boundary] + [a.canonical_class]
    classes_b = [c.cls for c in b.curves] + [s.cls for s in b.boundary] + [b.canonical_class]
    return a.lattice.gram_of(classes_a) == b.lattice.gram_of(classes_b)


def reference_ample_certificate(pair: AnticanonicalPair) -> DivisorClass:
    """Explicit ample class on a freshly built Y1, Y2 or Y4 pair.

    Raises ValidationError when the pair has been modified since it was built.
    """
    builder = BUILDERS.get(pair.base_tag)
    if builder is None or not same_pair_data(pair, builder()):
        raise ValidationError("Reference certificates exist only for unmodified Y1, Y2 and Y4 pairs")

    certificate = pair.combination(REFERENCE_CERTIFICATES[pair.base_tag])
    for c in pair.curves:
        if pair.pairing(certificate, c.cls) <= 0:
            raise LatticeError(f"Reference certificate not positive on {c.name}")
    for s in pair.boundary:
        if pair.pairing(certificate, s.cls) <= 0:
            raise LatticeError(f"Reference certificate not positive on {s.name}")
    return certificate


def certificate_degrees(pair: AnticanonicalPair, certificate: DivisorClass) -> Dict[str, int]:
    """Pairing of a class with every tracked curve and boundary side"""
    degrees = {c.name: pair.pairing(certificate, c.cls) for c in pair.curves}
    degrees.update({s.name: pair.pairing(certificate, s.cls) for s in pair.boundary})
    return degrees


def dynkin_type(gram: List[List[int]]) -> str:
    """Classify a negative definite ADE root configuration from its Gram matrix.

    Connected components are reported in sorted order joined by '+', e.g. 'A1+A2'.
    Returns 'unknown' for anything that is not a simply laced Dynkin diagram.
    """
    n = len(gram)
    if n == 0:
        return ""
    if any(gram[i][i] != -2 for i in range(n)):
        return "unknown"

    graph = nx.Graph()
    graph.add_nodes_from(range(n))
    for i in range(n):
        for j in range(i + 1, n):
            if gram[i][j] == 1:
                graph.add_edge(i, j)
            elif gram[i][j] != 0:
                return "unknown"

    types = []
    for component in nx.connected_components(graph):
        sub = graph.subgraph(component)
        types.append(_connected_dynkin(sub))
    if "unknown" in types:
        return "unknown"
    return "+".join(sorted(types))


def _connected_dynkin(graph: nx.Graph) -> str:
    n = graph.number_of_nodes()
    if not nx.is_tree(graph):
        return "unknown"
    degrees = sorted((d for _, d in graph.degree()), reverse=True)
    if n == 1 or degrees[0] <= 2:
        return f"A{n}"
    forks = [v for v, d in graph.degree() if d == 3]
    if degrees[0] > 3 or len(forks) != 1:
        return "unknown"

    fork = forks[0]
    branches = []
    for neighbour in graph.neighbors(fork):
        length, previous, current = 1, fork, neighbour
        while True:
            ahead = [w for w in graph.neighbors(current) if w != previous]
            if not ahead:
                break
            previous, current = current, ahead[0]
            length += 1
        branches.append(length)
    branches.sort()

    if branches[0] == 1 and branches[1] == 1:
        return f"D{n}"
    if branches[:2] == [1, 2] and branches[2] in (2, 3, 4):
        return f"E{n}"
    return "unknown"
