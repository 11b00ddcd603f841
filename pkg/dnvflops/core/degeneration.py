"""
Central fibre states and the type I / type II flop rewrites

A state is three glued anticanonical pairs. Class P states are three smooth
components in a cycle; class T states have a special component whose two
boundary sides S1 and S2 are glued to each other, and two components with a
nodal boundary glued to the remaining sides of the special component.
"""
from dataclasses import dataclass, replace
from typing import Dict, List, Optional, Tuple

from .anticanonical_pairs import (
    AnticanonicalPair, BoundarySide, Curve, build_Y1, build_Y2, build_Y4, same_pair_data
)
from ..utils.logger import attach_to_log
from ..utils.validation import FlopError, ValidationError

logger = attach_to_log(name=__name__)

CLASS_P = "P"
CLASS_T = "T"

SMOOTH = "smooth"
NODAL = "nodal"
SELF_GLUED = "self_glued"

CONSERVED_SUMS = {SMOOTH: -2, NODAL: 0, SELF_GLUED: -2}

TYPE_I = "I"
TYPE_II = "II"

SideRef = Tuple[int, str]


@dataclass(frozen=True)
class GluingRecord:
    side_a: SideRef
    side_b: SideRef
    kind: str
    conserved_sum: int

    @classmethod
    def create(cls, side_a: SideRef, side_b: SideRef, kind: str) -> 'GluingRecord':
        return cls(side_a=side_a, side_b=side_b, kind=kind, conserved_sum=CONSERVED_SUMS[kind])

    def label(self) -> str:
        return f"{self.side_a[0]}:{self.side_a[1]}~{self.side_b[0]}:{self.side_b[1]}"

    def involves(self, ref: SideRef) -> bool:
        return ref == self.side_a or ref == self.side_b

    def partner(self, ref: SideRef) -> SideRef:
        if ref == self.side_a:
            return self.side_b
        if ref == self.side_b:
            return self.side_a
        raise ValidationError(f"Side {ref} is not part of gluing {self.label()}")

    def components(self) -> Tuple[int, int]:
        return self.side_a[0], self.side_b[0]


@dataclass(frozen=True)
class FlopMove:
    """Type I flop of ``curve`` out of ``component`` across boundary ``side``"""
    component: int
    side: str
    curve: str

    def label(self) -> str:
        return f"{self.component}:{self.side}:{self.curve}"


@dataclass(frozen=True)
class CentralFibreState:
    class_tag: str
    components: Tuple[AnticanonicalPair, AnticanonicalPair, AnticanonicalPair]
    gluings: Tuple[GluingRecord, ...]
    special: Optional[int] = None

    def component(self, index: int) -> AnticanonicalPair:
        return self.components[index - 1]

    @property
    def indices(self) -> Tuple[int, int, int]:
        return (1, 2, 3)

    def side(self, ref: SideRef) -> BoundarySide:
        return self.component(ref[0]).side(ref[1])

    def side_square(self, ref: SideRef) -> int:
        return self.component(ref[0]).side_square(ref[1])

    def gluing_of(self, ref: SideRef) -> GluingRecord:
        for g in self.gluings:
            if g.involves(ref):
                return g
        raise ValidationError(f"Side {ref} is not glued")

    def with_component(self, index: int, pair: AnticanonicalPair) -> 'CentralFibreState':
        components = list(self.components)
        components[index - 1] = pair
        return replace(self, components=tuple(components))

    def curve_count(self) -> int:
        return sum(len(c.curves) for c in self.components)

    def picard_rank(self) -> int:
        return sum(c.rank for c in self.components) - len(self.gluings)

    def locate_curve(self, name: str) -> int:
        for i, c in enumerate(self.components, start=1):
            if c.has_curve(name):
                return i
        raise ValidationError(f"No curve named '{name}'")

    def smooth_components(self) -> List[int]:
        return [i for i in self.indices if i != self.special]

    def dual_edges(self) -> List[Tuple[int, int]]:
        """Component adjacencies of the dual complex, self loops included"""
        return sorted(tuple(sorted(g.components())) for g in self.gluings)


def _qualified(pair: AnticanonicalPair, index: int, side_names: Dict[str, str],
               node_names: Optional[Dict[str, str]] = None) -> AnticanonicalPair:
    pair = replace(pair, boundary=tuple(replace(s, branches=s.anchor) for s in pair.boundary))
    return pair.renamed(curve_prefix=f"{index}:", side_names=side_names, node_names=node_names)


def side_name(i: int, j: int) -> str:
    return f"D{i}{j}"


def build_YP() -> CentralFibreState:
    """Three copies of the degree 2 pair glued in a cycle"""
    components = []
    for i in (1, 2, 3):
        following = i % 3 + 1
        preceding = (i + 1) % 3 + 1
        components.append(_qualified(build_Y2(), i, {"D1": side_name(i, following),
                                                     "D2": side_name(i, preceding)}))
    gluings = tuple(
        GluingRecord.create((i, side_name(i, j)), (j, side_name(j, i)), SMOOTH)
        for i, j in ((1, 2), (2, 3), (3, 1))
    )
    state = CentralFibreState(class_tag=CLASS_P, components=tuple(components), gluings=gluings)
    logger.debug("Built the class P reference state")
    return state


def build_YT(special: int = 3) -> CentralFibreState:
    """Degree 4 pair with two opposite sides glued, and two degree 1 pairs on the others"""
    if special not in (1, 2, 3):
        raise ValidationError(f"Special component must be 1, 2 or 3, got {special}")
    a, b = [i for i in (1, 2, 3) if i != special]
    c = special

    components: Dict[int, AnticanonicalPair] = {}
    for i in (a, b):
        components[i] = _qualified(build_Y1(), i, {"D": side_name(i, c)}, {"n": f"n{i}"})
    components[c] = _qualified(
        build_Y4(), c,
        {"D1": "S1", "D2": side_name(c, a), "D3": "S2", "D4": side_name(c, b)},
        {"t12": "s1a", "t23": "s2a", "t34": "s2b", "t41": "s1b"},
    )
    gluings = (
        GluingRecord.create((c, "S1"), (c, "S2"), SELF_GLUED),
        GluingRecord.create((a, side_name(a, c)), (c, side_name(c, a)), NODAL),
        GluingRecord.create((b, side_name(b, c)), (c, side_name(c, b)), NODAL),
    )
    state = CentralFibreState(class_tag=CLASS_T, components=tuple(components[i] for i in (1, 2, 3)),
                              gluings=gluings, special=c)
    logger.debug(f"Built the class T reference state with special component {c}")
    return state


# -- type I ----------------------------------------------------------------

def available_type_I(state: CentralFibreState) -> List[FlopMove]:
    """Interior (-1)-curves crossing a flippable side once at its special point"""
    moves = []
    for index, pair in enumerate(state.components, start=1):
        for side in pair.boundary:
            if state.gluing_of((index, side.name)).kind == SELF_GLUED:
                continue
            for curve_name, mult in side.anchor:
                if mult != 1:
                    continue
                curve = pair.curve(curve_name).cls
                if pair.lattice.pairing(curve, curve) != -1:
                    continue
                if pair.lattice.pairing(curve, side.cls) != 1:
                    continue
                moves.append(FlopMove(component=index, side=side.name, curve=curve_name))
    return sorted(moves, key=lambda m: (m.component, m.side, m.curve))


def inverse_move(state: CentralFibreState, move: FlopMove) -> FlopMove:
    """The move that flops the same curve back, in the state after ``move``"""
    target, target_side = state.gluing_of((move.component, move.side)).partner((move.component, move.side))
    return FlopMove(component=target, side=target_side, curve=move.curve)


def _replace_side(pair: AnticanonicalPair, side: BoundarySide) -> Tuple[BoundarySide, ...]:
    return tuple(side if s.name == side.name else s for s in pair.boundary)


def contract_curve(pair: AnticanonicalPair, side_name: str, curve_name: str) -> AnticanonicalPair:
    """Donor half of a type I flop: blow down the curve at the special point of a side"""
    lattice = pair.lattice
    c = pair.curve(curve_name).cls
    side = pair.side(side_name)
    anchor = dict(side.anchor)

    meets = {}
    for f in pair.curves:
        if f.name != curve_name:
            meets[f.name] = lattice.pairing(f.cls, c)

    result = lattice.blow_down(c)
    push = result.push

    new_anchor, new_branches = {}, {}
    for name, k in meets.items():
        total = anchor.get(name, 0) + k
        if total > 0:
            new_anchor[name] = total
            new_branches[name] = k

    curves = tuple(Curve(name=f.name, cls=push(f.cls), role=f.role) for f in pair.curves if f.name != curve_name)
    boundary = []
    for s in pair.boundary:
        if s.name == side_name:
            boundary.append(replace(s, cls=push(s.cls), anchor=tuple(sorted(new_anchor.items())),
                                    branches=tuple(sorted(new_branches.items()))))
        else:
            boundary.append(replace(s, cls=push(s.cls)))
    node_through = tuple(t for t in pair.node_through if t[1] != curve_name)
    contracted = replace(pair, lattice=result.lattice, curves=curves, boundary=tuple(boundary),
                         canonical_class=push(pair.canonical_class), node_through=node_through)
    return contracted.with_fresh_roles()


def blow_up_special_point(pair: AnticanonicalPair, side_name: str, new_curve: str) -> AnticanonicalPair:
    """Receiver half of a type I flop: blow up the special point of a side"""
    side = pair.side(side_name)
    anchor = dict(side.anchor)
    points = side.point_multiplicities()

    through = [(pair.curve(name).cls, m) for name, m in points.items()]
    result = pair.lattice.blow_up(through + [(side.cls, 1)], name=new_curve)
    embed, e = result.transform.linear, result.exceptional

    curves = tuple(Curve(name=f.name, cls=embed(f.cls) - points.get(f.name, 0) * e, role=f.role)
                   for f in pair.curves)
    curves = curves + (Curve(name=new_curve, cls=e),)

    new_anchor, new_branches = {new_curve: 1}, {new_curve: 1}
    for name, k in anchor.items():
        left = k - points.get(name, 0)
        if left > 0:
            new_anchor[name] = left
            new_branches[name] = min(points.get(name, 0), left)

    boundary = []
    for s in pair.boundary:
        if s.name == side_name:
            boundary.append(replace(s, cls=embed(s.cls) - e, anchor=tuple(sorted(new_anchor.items())),
                                    branches=tuple(sorted(new_branches.items()))))
        else:
            boundary.append(replace(s, cls=embed(s.cls)))
    grown = replace(pair, lattice=result.lattice, curves=curves, boundary=tuple(boundary),
                    canonical_class=embed(pair.canonical_class) + e)
    return grown.with_fresh_roles()


def apply_type_I(state: CentralFibreState, move: FlopMove) -> CentralFibreState:
    """Flop an interior (-1)-curve across a double curve into the neighbouring component"""
    if move not in available_type_I(state):
        raise FlopError(f"Type I move {move.label()} is not available")

    donor = state.component(move.component)
    receiver_index, receiver_side = state.gluing_of((move.component, move.side)).partner(
        (move.component, move.side))

    new_state = state.with_component(move.component, contract_curve(donor, move.side, move.curve))
    receiver = new_state.component(receiver_index)
    new_state = new_state.with_component(receiver_index,
                                         blow_up_special_point(receiver, receiver_side, move.curve))
    return new_state


# -- type II ---------------------------------------------------------------

def available_type_II(state: CentralFibreState) -> List[GluingRecord]:
    if state.class_tag == CLASS_P:
        return [g for g in state.gluings
                if g.kind == SMOOTH and state.side_square(g.side_a) == -1 and state.side_square(g.side_b) == -1]
    return [g for g in state.gluings
            if g.kind == SELF_GLUED and state.side_square(g.side_a) == -1 and state.side_square(g.side_b) == -1]


def _contract_side(pair: AnticanonicalPair, side_name: str, node: str) -> AnticanonicalPair:
    """Blow down a (-1) boundary side; its neighbours through its nodes meet at ``node``"""
    side = pair.side(side_name)
    lattice = pair.lattice
    occupied = [t for t in pair.node_through if t[0] in side.nodes]
    if occupied:
        raise FlopError(f"Curves pass through the triple points of {side_name}")

    through = {}
    for f in pair.curves:
        k = lattice.pairing(f.cls, side.cls)
        if k > 0:
            through[f.name] = k

    result = lattice.blow_down(side.cls)
    push = result.push
    removed_nodes = set(side.nodes)
    curves = tuple(replace(f, cls=push(f.cls)) for f in pair.curves)
    boundary = []
    for s in pair.boundary:
        if s.name == side_name:
            continue
        nodes = tuple(node if n in removed_nodes else n for n in s.nodes)
        boundary.append(replace(s, cls=push(s.cls), nodes=nodes))
    node_through = pair.node_through + tuple((node, name, k) for name, k in sorted(through.items()))
    contracted = replace(pair, lattice=result.lattice, curves=curves, boundary=tuple(boundary),
                         canonical_class=push(pair.canonical_class), node_through=tuple(sorted(node_through)))
    return contracted.with_fresh_roles()


def _blow_up_node(pair: AnticanonicalPair, node: str, new_side: str,
                  new_nodes: Tuple[str, ...], side_nodes: Dict[str, Tuple[str, ...]],
                  position: Optional[int] = None) -> AnticanonicalPair:
    """Blow up a triple-point slot; the exceptional curve becomes a new boundary side"""
    mults = pair.curves_through_node(node)
    sides_through = {s.name: s.nodes.count(node) for s in pair.boundary if node in s.nodes}

    through = [(pair.curve(name).cls, m) for name, m in mults.items()]
    through += [(pair.side(name).cls, k) for name, k in sides_through.items()]
    result = pair.lattice.blow_up(through, name=new_side)
    embed, e = result.transform.linear, result.exceptional

    curves = tuple(replace(f, cls=embed(f.cls) - mults.get(f.name, 0) * e) for f in pair.curves)
    boundary = []
    for s in pair.boundary:
        k = sides_through.get(s.name, 0)
        nodes = side_nodes.get(s.name, s.nodes)
        boundary.append(replace(s, cls=embed(s.cls) - k * e, nodes=nodes))
    anchor = tuple(sorted(mults.items()))
    created = BoundarySide(name=new_side, cls=e, anchor=anchor, nodes=new_nodes,
                           branches=tuple((name, 1) for name, _ in anchor))
    if position is None:
        boundary.append(created)
    else:
        boundary.insert(position, created)
    node_through = tuple(t for t in pair.node_through if t[0] != node)
    grown = replace(pair, lattice=result.lattice, curves=curves, boundary=tuple(boundary),
                    canonical_class=embed(pair.canonical_class) + e, node_through=node_through)
    return grown.with_fresh_roles()


def _p_to_t(state: CentralFibreState, gluing: GluingRecord) -> CentralFibreState:
    (a, side_ab), (b, side_ba) = gluing.side_a, gluing.side_b
    c = ({1, 2, 3} - {a, b}).pop()
    side_ac = next(s.name for s in state.component(a).boundary if s.name != side_ab)
    side_bc = next(s.name for s in state.component(b).boundary if s.name != side_ba)
    side_ca = state.gluing_of((a, side_ac)).partner((a, side_ac))[1]
    side_cb = state.gluing_of((b, side_bc)).partner((b, side_bc))[1]

    new_state = state
    for index, contracted_side in ((a, side_ab), (b, side_ba)):
        pair = _contract_side(new_state.component(index), contracted_side, f"n{index}")
        new_state = new_state.with_component(index, pair)

    special = new_state.component(c)
    first, second = special.side_names
    t1, t2 = special.side(first).nodes[0], special.side(first).nodes[1]
    special = _blow_up_node(special, t1, "S1", ("s1a", "s1b"), {}, position=1)
    special = _blow_up_node(special, t2, "S2", ("s2a", "s2b"),
                            {first: ("s1a", "s2a"), second: ("s1b", "s2b")}, position=3)
    new_state = new_state.with_component(c, special)

    gluings = (
        GluingRecord.create((c, "S1"), (c, "S2"), SELF_GLUED),
        *sorted([GluingRecord.create((a, side_ac), (c, side_ca), NODAL),
                 GluingRecord.create((b, side_bc), (c, side_cb), NODAL)], key=lambda g: g.side_a),
    )
    return replace(new_state, class_tag=CLASS_T, gluings=gluings, special=c)


def _t_to_p(state: CentralFibreState, gluing: GluingRecord) -> CentralFibreState:
    c = state.special
    nodal = [g for g in state.gluings if g.kind == NODAL]
    # smooth component index -> (its nodal side, the special side it is glued to)
    attached = {}
    for g in nodal:
        ref_smooth, ref_special = (g.side_a, g.side_b) if g.side_a[0] != c else (g.side_b, g.side_a)
        attached[ref_smooth[0]] = (ref_smooth[1], ref_special[1])
    a, b = sorted(attached)

    special = state.component(c)
    special = _contract_side(special, "S1", "t1")
    special = _contract_side(special, "S2", "t2")
    special = replace(special, boundary=tuple(replace(s, nodes=("t1", "t2")) for s in special.boundary))
    new_state = state.with_component(c, _cycle_order(special, c))

    for index, other in ((a, b), (b, a)):
        pair = new_state.component(index)
        nodal_side, _ = attached[index]
        node = pair.side(nodal_side).nodes[0]
        pair = _blow_up_node(pair, node, side_name(index, other), ("t1", "t2"),
                             {nodal_side: ("t1", "t2")})
        new_state = new_state.with_component(index, _cycle_order(pair, index))

    gluings = tuple(
        GluingRecord.create((i, side_name(i, j)), (j, side_name(j, i)), SMOOTH)
        for i, j in ((1, 2), (2, 3), (3, 1))
    )
    return replace(new_state, class_tag=CLASS_P, gluings=gluings, special=None)


def _cycle_order(pair: AnticanonicalPair, index: int) -> AnticanonicalPair:
    """Sides of a class P component: towards the next component first"""
    order = [side_name(index, index % 3 + 1), side_name(index, (index + 1) % 3 + 1)]
    return replace(pair, boundary=tuple(sorted(pair.boundary, key=lambda s: order.index(s.name))))


def apply_type_II(state: CentralFibreState, gluing: GluingRecord) -> CentralFibreState:
    """Flop a double curve of square (-1, -1); switches between class P and class T"""
    if gluing not in available_type_II(state):
        raise FlopError(f"Type II flop along {gluing.label()} is not available")
    if state.class_tag == CLASS_P:
        return _p_to_t(state, gluing)
    return _t_to_p(state, gluing)


def induced_gluing(state: CentralFibreState) -> GluingRecord:
    """The gluing along which a type II flop from this state is undone"""
    available = available_type_II(state)
    if state.class_tag == CLASS_T and available:
        return available[0]
    raise FlopError("No unique inverse type II gluing")


def same_configuration(a: CentralFibreState, b: CentralFibreState) -> bool:
    """Equal up to the choice of lattice bases"""
    if (a.class_tag, a.special, a.gluings) != (b.class_tag, b.special, b.gluings):
        return False
    return all(same_pair_data(x, y) for x, y in zip(a.components, b.components))
