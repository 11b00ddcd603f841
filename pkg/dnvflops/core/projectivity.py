"""
Projectivity of central fibre states

Three independent routes: the combinatorial criteria on curve structures, the
explicit ample divisors built leg by leg on each component and threaded around
the cycle, and an exact rational feasibility problem for a glued ample class.
Ample classes are written as rational coefficient maps f over the tracked
curves, A = sum f(v) C_v, or as lattice coordinates on components whose
tracked curves do not span the Picard lattice.
"""
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from .anticanonical_pairs import AnticanonicalPair
from .curve_structure import Classification, classify, extract
from .degeneration import CLASS_P, CLASS_T, SELF_GLUED, CentralFibreState, side_name
from .picard_lattice import DivisorClass
from .simplex import feasible_point
from ..interfaces.base_interface import ProjectivityOracle
from ..utils.logger import attach_to_log
from ..utils.validation import InconsistencyError, UncoveredCaseError, ValidationError

logger = attach_to_log(name=__name__)

Coefficients = Dict[str, Fraction]
LatticeCoordinates = Tuple[Fraction, ...]

# explicit constructions, by the shape of the curve structure they apply to
FORK = "fork"
FORK_THREE_HALVES = "fork_three_halves"
LEG_PLUS_ONE = "leg_plus_one"
SINGLETON = "singleton"
LEG = "leg"
RECIPES = (FORK, FORK_THREE_HALVES, LEG_PLUS_ONE, SINGLETON, LEG)

BASE_DEGREES = (16, 64, 256, 1024)
BASE_ATTEMPTS = len(BASE_DEGREES)


@dataclass
class AmpleCertificate:
    """Per-component coefficient maps of a glued ample class.

    ``classes`` holds lattice coordinates for components whose tracked curves
    do not span; their coefficient maps are left empty.
    """
    coefficients: Tuple[Coefficients, ...]
    source: str = "lp"
    classes: Tuple[Optional[LatticeCoordinates], ...] = ()

    def class_of(self, index: int) -> Optional[LatticeCoordinates]:
        return self.classes[index] if index < len(self.classes) else None

    def degrees(self, state: CentralFibreState) -> List[Dict[str, Fraction]]:
        result = []
        for index, (pair, f) in enumerate(zip(state.components, self.coefficients)):
            x = self.class_of(index)
            result.append(component_degrees(pair, f) if x is None else class_degrees(pair, x))
        return result

    def problems(self, state: CentralFibreState) -> List[str]:
        found = []
        degrees = self.degrees(state)
        for index, (pair, f) in enumerate(zip(state.components, self.coefficients), start=1):
            if self.class_of(index - 1) is None:
                found.extend(f"component {index}: {p}" for p in ampleness_problems(pair, f))
                found.extend(f"component {index}: {p}" for p in leg_problems(pair, f))
            else:
                found.extend(f"component {index}: degree {d} on {t}"
                             for t, d in degrees[index - 1].items() if d <= 0)
        for g in state.gluings:
            da = degrees[g.side_a[0] - 1][g.side_a[1]]
            db = degrees[g.side_b[0] - 1][g.side_b[1]]
            if da != db:
                found.append(f"gluing {g.label()}: degrees {da} and {db} differ")
        return found

    def is_valid(self, state: CentralFibreState) -> bool:
        return not self.problems(state)


# -- component level -------------------------------------------------------

def _pairing_table(pair: AnticanonicalPair) -> Dict[str, Dict[str, int]]:
    """target name -> {curve name: C_v . target} for every curve and side"""
    lattice = pair.lattice
    targets = [(c.name, c.cls) for c in pair.curves] + [(s.name, s.cls) for s in pair.boundary]
    return {name: {v.name: lattice.pairing(v.cls, cls) for v in pair.curves} for name, cls in targets}


def component_degrees(pair: AnticanonicalPair, f: Coefficients) -> Dict[str, Fraction]:
    """Pairing of A = sum f(v) C_v with every tracked curve and boundary side"""
    table = _pairing_table(pair)
    return {t: sum((Fraction(f.get(v, 0)) * k for v, k in row.items()), Fraction(0)) for t, row in table.items()}


def _basis_table(pair: AnticanonicalPair) -> Dict[str, List[int]]:
    """target name -> pairings of the lattice basis vectors with the target"""
    basis = [DivisorClass.basis(pair.rank, k) for k in range(pair.rank)]
    targets = [(c.name, c.cls) for c in pair.curves] + [(s.name, s.cls) for s in pair.boundary]
    return {name: [pair.pairing(e, cls) for e in basis] for name, cls in targets}


def class_degrees(pair: AnticanonicalPair, x: Sequence) -> Dict[str, Fraction]:
    """Pairing of the class with lattice coordinates x with every tracked curve and side"""
    if len(x) != pair.rank:
        raise ValidationError(f"{len(x)} coordinates for a lattice of rank {pair.rank}")
    return {t: sum((Fraction(a) * k for a, k in zip(x, row)), Fraction(0))
            for t, row in _basis_table(pair).items()}


def spans_lattice(pair: AnticanonicalPair) -> bool:
    """Tracked curves form a rational basis of the Picard lattice"""
    if len(pair.curves) != pair.rank:
        return False
    return pair.lattice.classes_determinant([c.cls for c in pair.curves]) != 0


def ampleness_problems(pair: AnticanonicalPair, f: Coefficients) -> List[str]:
    found = []
    for v in pair.curve_names:
        if Fraction(f.get(v, 0)) <= 0:
            found.append(f"coefficient of {v} is {f.get(v, 0)}")
    for target, degree in component_degrees(pair, f).items():
        if degree <= 0:
            found.append(f"degree {degree} on {target}")
    return found


def leg_problems(pair: AnticanonicalPair, f: Coefficients,
                 classification: Optional[Classification] = None) -> List[str]:
    """Coefficients must strictly increase along every leg from its exceptional vertex"""
    classification = classification or classify(extract(pair))
    found = []
    for exceptional, path in sorted(classification.legs.items()):
        values = [Fraction(f.get(v, 0)) for v in path]
        if any(b <= a for a, b in zip(values, values[1:])):
            found.append(f"leg of {exceptional} not increasing: {[str(x) for x in values]}")
    return found


def is_ample_on(pair: AnticanonicalPair, f: Coefficients) -> bool:
    return not ampleness_problems(pair, f)


def component_ample(pair: AnticanonicalPair, degrees: Optional[Dict[str, object]] = None,
                    proportional: bool = False) -> Optional[Coefficients]:
    """Ample class on one component by exact LP, optionally with prescribed boundary degrees.

    With ``proportional`` the degrees are only prescribed up to a common
    positive factor.
    """
    names = pair.curve_names
    table = _pairing_table(pair)
    degrees = degrees or {}
    n = len(names) + (1 if proportional else 0)

    # f = 1 + g with g >= 0
    inequalities = []
    for target, row in table.items():
        coeffs = [row[v] for v in names] + ([0] if proportional else [])
        inequalities.append((coeffs, 1 - sum(row.values())))
    equalities = []
    for side, degree in degrees.items():
        row = table[side]
        coeffs = [row[v] for v in names]
        if proportional:
            equalities.append((coeffs + [-Fraction(degree)], -sum(row.values())))
        else:
            equalities.append((coeffs, Fraction(degree) - sum(row.values())))

    point = feasible_point(inequalities, equalities, n)
    if point is None:
        return None
    return {v: 1 + point[i] for i, v in enumerate(names)}


def _triangular(i: int) -> Fraction:
    return Fraction(i * (i + 1), 2)


def _fork_shape(pair: AnticanonicalPair, classification: Classification):
    """Two legs meeting at a fork plus one vertex off the legs, or None"""
    fork = classification.fork
    if fork is None or len(classification.legs) != 2:
        return None
    on_legs = {v for path in classification.legs.values() for v in path}
    rest = [v for v in pair.curve_names if v not in on_legs]
    if len(rest) != 1:
        return None
    return fork, rest[0]


def _exceptional_at(pair: AnticanonicalPair, classification: Classification, side: str) -> Optional[str]:
    for v in classification.exceptional_vertices:
        if pair.pairing(pair.curve(v).cls, pair.side(side).cls) > 0:
            return v
    return None


def construct_ample(pair: AnticanonicalPair, recipe: str, e, k1=0, k2=0,
                    first_side: Optional[str] = None) -> Optional[Coefficients]:
    """Explicit ample coefficient map for one of the known curve-structure shapes.

    ``first_side`` is the side whose degree is ``e + k1`` (fork), ``e`` (three
    halves, leg plus one, leg) or the degree-one side of a singleton; it
    defaults to the natural choice for the shape. Returns None when the shape
    or the size hypotheses on ``e`` do not hold.
    """
    if recipe not in RECIPES:
        raise ValidationError(f"Unknown construction '{recipe}'")
    e, k1, k2 = Fraction(e), Fraction(k1), Fraction(k2)
    classification = classify(extract(pair))
    sides = pair.side_names
    f: Coefficients = {}

    if recipe == FORK:
        shape = _fork_shape(pair, classification)
        if shape is None:
            return None
        fork, y = shape
        first = first_side or sides[0]
        other = next(s for s in sides if s != first)
        f0, g0 = _exceptional_at(pair, classification, first), _exceptional_at(pair, classification, other)
        if f0 is None or g0 is None:
            return None
        f_chain, g_chain = classification.legs[f0][:-1], classification.legs[g0][:-1]
        n, m = len(f_chain) - 1, len(g_chain) - 1
        if k1 + _triangular(n) < k2 + _triangular(m):
            f_chain, g_chain, n, m, k1, k2 = g_chain, f_chain, m, n, k2, k1
        delta = 2 * (k1 + _triangular(n) - k2 - _triangular(m) + 2 * max(n, m) + 2) + 2
        if e <= delta:
            return None
        for i, v in enumerate(f_chain):
            f[v] = e + k1 + _triangular(i)
        for i, v in enumerate(g_chain):
            f[v] = e + k2 + _triangular(i)
        f[fork] = max(f[f_chain[-1]], f[g_chain[-1]]) + max(n, m) + 1
        f[y] = Fraction(math.ceil(e / 2)) - 1

    elif recipe == FORK_THREE_HALVES:
        shape = _fork_shape(pair, classification)
        first = first_side or next((s for s in sides if pair.side_square(s) == 1), None)
        if shape is None or first is None or pair.side_square(first) != 1:
            return None
        fork, y = shape
        other = next(s for s in sides if s != first)
        v1, v2 = _exceptional_at(pair, classification, first), _exceptional_at(pair, classification, other)
        if v1 is None or v2 is None or classification.legs[v1] != (v1, fork):
            return None
        chain = classification.legs[v2][:-1]
        n = len(chain) - 1
        delta = n * (n + 1) + 6 * n + 2 * k1 + 10
        if e <= delta or e.denominator != 1 or e.numerator % 2:
            return None
        f[v1] = e
        for i, v in enumerate(chain):
            f[v] = Fraction(3, 2) * e + k1 + _triangular(i)
        f[fork] = f[chain[-1]] + n + 1
        f[y] = e / 2 + _triangular(n) + 2 * n + 3 + k1

    elif recipe == LEG_PLUS_ONE:
        if not classification.regular or not classification.degenerate:
            return None
        first = first_side
        v0 = (_exceptional_at(pair, classification, first) if first
              else next(iter(sorted(classification.exceptional_vertices)), None))
        if v0 is None:
            return None
        path = classification.legs[v0]
        rest = [v for v in pair.curve_names if v not in path]
        if len(rest) != 1:
            return None
        for i, v in enumerate(path):
            f[v] = e + _triangular(i)
        f[rest[0]] = Fraction(len(path))

    elif recipe == SINGLETON:
        if len(pair.curves) != 1:
            return None
        f[pair.curve_names[0]] = e

    elif recipe == LEG:
        if classification.regular:
            return None
        v0 = _exceptional_at(pair, classification, first_side) if first_side else \
            next(iter(sorted(classification.exceptional_vertices)), None)
        if v0 is None:
            return None
        path = classification.legs[v0]
        if set(path) != set(pair.curve_names):
            return None
        for i, v in enumerate(path):
            f[v] = e + _triangular(i)

    if not is_ample_on(pair, f):
        logger.debug(f"Construction '{recipe}' with e={e} is not ample on {pair.base_tag}")
        return None
    return f


# -- criteria --------------------------------------------------------------

def _next(i: int) -> int:
    return i % 3 + 1


def _prev(i: int) -> int:
    return (i + 1) % 3 + 1


def criterion_T(state: CentralFibreState) -> bool:
    """Both preimages of the self-glued double curve are (-1)-curves"""
    if state.class_tag != CLASS_T:
        raise ValidationError("criterion_T applies to class T states only")
    glued = next(g for g in state.gluings if g.kind == SELF_GLUED)
    return state.side_square(glued.side_a) == -1 and state.side_square(glued.side_b) == -1


def _classifications(state: CentralFibreState) -> Dict[int, Tuple[object, Classification]]:
    result = {}
    for i, pair in enumerate(state.components, start=1):
        acs = extract(pair)
        result[i] = (acs, classify(acs))
    return result


def side_vertex_multiplicity(acs, classification: Classification, side: str) -> Optional[int]:
    """v_D . D for the unique vertex meeting a side of a non-regular structure"""
    vertex = classification.side_vertices.get(side)
    if vertex is None:
        return None
    return acs.met_by(side)[vertex]


def projectivity_pattern(state: CentralFibreState) -> Dict[str, List[int]]:
    """Indices of non-degenerate, non-regular and regular-degenerate components"""
    data = _classifications(state)
    return {
        "nondegenerate": [i for i, (_, c) in data.items() if not c.degenerate],
        "nonregular": [i for i, (_, c) in data.items() if not c.regular],
        "regular_degenerate": [i for i, (_, c) in data.items() if c.regular and c.degenerate],
    }


def criterion_P(state: CentralFibreState) -> bool:
    """Case analysis on the degeneracy and regularity of the three curve structures"""
    if state.class_tag != CLASS_P:
        raise ValidationError("criterion_P applies to class P states only")
    data = _classifications(state)
    nondegenerate = [i for i, (_, c) in data.items() if not c.degenerate]
    nonregular = [i for i, (_, c) in data.items() if not c.regular]

    def square(i: int, j: int) -> int:
        return state.component(i).side_square(side_name(i, j))

    def mult(i: int, j: int) -> Optional[int]:
        acs, c = data[i]
        return side_vertex_multiplicity(acs, c, side_name(i, j))

    if not nondegenerate:
        return False
    if not nonregular:
        return True

    if len(nondegenerate) == 1 and len(nonregular) == 2:
        p = nondegenerate[0]
        ones = [i for i in nonregular if mult(i, p) == 1]
        twos = [i for i in nonregular if mult(i, p) == 2]
        if len(twos) == 2:
            return True
        if len(ones) == 1 and len(twos) == 1:
            return square(p, ones[0]) <= 0

    elif len(nondegenerate) == 1 and len(nonregular) == 1:
        p, q = nondegenerate[0], nonregular[0]
        r = ({1, 2, 3} - {p, q}).pop()
        m = mult(q, p)
        if m == 1:
            return square(p, q) <= 0
        if m == 2:
            return square(p, r) <= 0

    elif len(nondegenerate) == 2 and len(nonregular) == 1:
        q = nonregular[0]
        if any(mult(q, j) == 2 for j in (_next(q), _prev(q))):
            return True

    raise UncoveredCaseError(
        f"No criterion covers nondegenerate={nondegenerate}, nonregular={nonregular}"
    )


def remark_condition(state: CentralFibreState) -> bool:
    """Some component has both boundary squares at most 1"""
    if state.class_tag != CLASS_P:
        raise ValidationError("remark_condition applies to class P states only")
    return any(all(state.component(i).side_square(s) <= 1 for s in state.component(i).side_names)
               for i in state.indices)


# -- global feasibility ----------------------------------------------------

def _lp_block(pair: AnticanonicalPair) -> Tuple[List[Dict[str, int]], Dict[str, int]]:
    """Variable columns and constant part of one component.

    Spanning components use f = 1 + g with g >= 0 over the tracked curves.
    Otherwise the unknowns are lattice coordinates x = p - q with p, q >= 0.
    Each column maps every target to its pairing with the variable.
    """
    if spans_lattice(pair):
        table = _pairing_table(pair)
        columns = [{t: row[v] for t, row in table.items()} for v in pair.curve_names]
        return columns, {t: sum(row.values()) for t, row in table.items()}
    table = _basis_table(pair)
    columns = []
    for k in range(pair.rank):
        columns.append({t: row[k] for t, row in table.items()})
        columns.append({t: -row[k] for t, row in table.items()})
    return columns, {t: 0 for t in table}


def lp_feasible(state: CentralFibreState) -> Optional[AmpleCertificate]:
    """Exact rational search for a glued class positive on every generator"""
    offsets, blocks = {}, {}
    n = 0
    for i, pair in enumerate(state.components, start=1):
        offsets[i] = n
        blocks[i] = _lp_block(pair)
        n += len(blocks[i][0])

    def row_for(i: int, target: str, sign: int = 1) -> Tuple[List[int], int]:
        columns, constant = blocks[i]
        coeffs = [0] * n
        for j, column in enumerate(columns):
            coeffs[offsets[i] + j] = sign * column[target]
        return coeffs, sign * constant[target]

    inequalities = []
    for i in state.indices:
        for target in blocks[i][1]:
            coeffs, total = row_for(i, target)
            inequalities.append((coeffs, 1 - total))

    equalities = []
    for g in state.gluings:
        left, total_left = row_for(g.side_a[0], g.side_a[1])
        right, total_right = row_for(g.side_b[0], g.side_b[1], sign=-1)
        equalities.append(([a + b for a, b in zip(left, right)], -(total_left + total_right)))

    point = feasible_point(inequalities, equalities, n)
    if point is None:
        return None
    coefficients, classes = [], []
    for i, pair in enumerate(state.components, start=1):
        values = point[offsets[i]:offsets[i] + len(blocks[i][0])]
        if spans_lattice(pair):
            coefficients.append({v: 1 + values[j] for j, v in enumerate(pair.curve_names)})
            classes.append(None)
        else:
            coefficients.append({})
            classes.append(tuple(values[2 * k] - values[2 * k + 1] for k in range(pair.rank)))
    return AmpleCertificate(coefficients=tuple(coefficients), source="lp", classes=tuple(classes))


# -- glued explicit certificates --------------------------------------------

def _fit_threaded(pair: AnticanonicalPair, classification: Classification,
                  side_in: str, degree_in: Fraction, side_out: str) -> Optional[Coefficients]:
    """Explicit ample class with a prescribed degree on ``side_in``"""
    if not classification.degenerate:
        return construct_ample(pair, FORK, degree_in, first_side=side_in)

    if len(pair.curves) == 1:
        v = pair.curve_names[0]
        k = pair.pairing(pair.curve(v).cls, pair.side(side_in).cls)
        return construct_ample(pair, SINGLETON, degree_in / k)

    recipe = LEG_PLUS_ONE if classification.regular else LEG
    v0 = _exceptional_at(pair, classification, side_in)
    if v0 is not None:
        return construct_ample(pair, recipe, degree_in, first_side=side_in)
    # exceptional vertex on the outgoing side: solve for its degree
    trial = construct_ample(pair, recipe, 8, first_side=side_out)
    if trial is None:
        return None
    d = component_degrees(pair, trial)
    slope = 1 if classification.regular else 2
    e = (degree_in - d[side_in]) / slope + 8
    if e <= 2:
        return None
    return construct_ample(pair, recipe, e, first_side=side_out)


def _absorb(pair: AnticanonicalPair, degrees: Dict[str, Fraction]) -> Optional[Coefficients]:
    (s1, d1), (s2, d2) = sorted(degrees.items(), key=lambda item: item[1])
    f = construct_ample(pair, FORK, d1, k1=0, k2=d2 - d1, first_side=s1)
    if f is not None:
        return f
    if pair.side_square(s1) == 1 and d2 >= Fraction(3, 2) * d1 and d1.denominator == 1 and d1.numerator % 2 == 0:
        f = construct_ample(pair, FORK_THREE_HALVES, d1, k1=d2 - Fraction(3, 2) * d1, first_side=s1)
        if f is not None:
            return f
    return component_ample(pair, degrees)


def _thread_from(state: CentralFibreState, data, p: int, e: Fraction) -> Optional[AmpleCertificate]:
    coefficients: Dict[int, Coefficients] = {}
    q1, q2 = _next(p), _next(_next(p))
    degree = e
    first_degree = e
    for q, previous, following in ((q1, p, q2), (q2, q1, p)):
        pair = state.component(q)
        f = _fit_threaded(pair, data[q][1], side_name(q, previous), degree, side_name(q, following))
        if f is None:
            return None
        coefficients[q] = f
        degree = component_degrees(pair, f)[side_name(q, following)]
    absorbed = _absorb(state.component(p), {side_name(p, q1): first_degree, side_name(p, q2): degree})
    if absorbed is None:
        return None
    coefficients[p] = absorbed
    return AmpleCertificate(coefficients=tuple(coefficients[i] for i in state.indices), source="recipe")


def _three_halves_chain(state: CentralFibreState, data, q: int, e: Fraction) -> Optional[AmpleCertificate]:
    """Non-regular component between two non-degenerate ones with squares 1 facing away"""
    acs, classification = data[q]
    a = next((j for j in (_next(q), _prev(q))
              if side_vertex_multiplicity(acs, classification, side_name(q, j)) == 2), None)
    if a is None:
        return None
    b = ({1, 2, 3} - {q, a}).pop()
    Yq, Ya, Yb = state.component(q), state.component(a), state.component(b)
    if Yb.side_square(side_name(b, q)) != 1 or Ya.side_square(side_name(a, b)) != 1:
        return None

    fb = construct_ample(Yb, FORK_THREE_HALVES, e, first_side=side_name(b, q))
    fq = construct_ample(Yq, LEG, e, first_side=side_name(q, b))
    if fb is None or fq is None:
        return None
    end = classification.leg_end(_exceptional_at(Yq, classification, side_name(q, b)))
    fq = dict(fq)
    fq[end] += e / 4
    if not is_ample_on(Yq, fq):
        return None
    e_a = component_degrees(Yb, fb)[side_name(b, a)]
    k = component_degrees(Yq, fq)[side_name(q, a)] - Fraction(3, 2) * e_a
    fa = construct_ample(Ya, FORK_THREE_HALVES, e_a, k1=k, first_side=side_name(a, b))
    if fa is None:
        return None
    coefficients = {q: fq, a: fa, b: fb}
    return AmpleCertificate(coefficients=tuple(coefficients[i] for i in state.indices), source="recipe")


def glue_certificates(state: CentralFibreState, base_degree: int = BASE_DEGREES[0]) -> Optional[AmpleCertificate]:
    """Explicit ample class on a projective state, threaded around the cycle.

    Boundary degrees start at ``base_degree`` and grow fourfold over
    BASE_ATTEMPTS tries.

    Returns None when the state is not projective by its criterion. Raises
    InconsistencyError when the state is projective but no certificate can be
    assembled.
    """
    if state.class_tag == CLASS_T:
        if not criterion_T(state):
            return None
        certificate = lp_feasible(state)
        if certificate is None:
            raise InconsistencyError("Class T criterion holds but no ample class was found")
        return certificate

    if not criterion_P(state):
        return None
    data = _classifications(state)
    nondegenerate = [i for i, (_, c) in data.items() if not c.degenerate]
    nonregular = [i for i, (_, c) in data.items() if not c.regular]

    for attempt in range(BASE_ATTEMPTS):
        e = Fraction(base_degree * 4 ** attempt)
        if len(nonregular) == 1 and len(nondegenerate) == 2:
            certificate = _three_halves_chain(state, data, nonregular[0], e)
            if certificate is not None and certificate.is_valid(state):
                return certificate
        for p in nondegenerate:
            certificate = _thread_from(state, data, p, e)
            if certificate is not None and certificate.is_valid(state):
                return certificate

    certificate = lp_feasible(state)
    if certificate is None:
        raise InconsistencyError("Criterion holds but no glued ample class exists")
    logger.debug("Threaded constructions did not close; using the LP certificate")
    return certificate


# -- oracles ---------------------------------------------------------------

@dataclass
class Verdict:
    projective: bool
    criterion: Optional[bool] = None
    lp: Optional[bool] = None
    notes: List[str] = field(default_factory=list)

    @property
    def agrees(self) -> bool:
        return self.criterion is None or self.lp is None or self.criterion == self.lp


class VerdictCache:
    """LP verdicts per isomorphism class.

    ``key`` must be constant on isomorphism classes; projectivity is.
    """

    def __init__(self, key: Callable[[CentralFibreState], bytes]):
        self.key = key
        self.hits = 0
        self._verdicts: Dict[bytes, bool] = {}

    def __len__(self) -> int:
        return len(self._verdicts)

    def lp(self, state: CentralFibreState) -> bool:
        k = self.key(state)
        if k in self._verdicts:
            self.hits += 1
            return self._verdicts[k]
        verdict = lp_feasible(state) is not None
        self._verdicts[k] = verdict
        return verdict


class _LPBacked(ProjectivityOracle):

    def __init__(self, cache: Optional[VerdictCache] = None):
        self.cache = cache

    def lp(self, state: CentralFibreState) -> bool:
        if self.cache is None:
            return lp_feasible(state) is not None
        return self.cache.lp(state)


class CriterionOracle(_LPBacked):
    """Combinatorial criteria; uncovered patterns are settled by the LP"""

    name = "criterion"

    def is_projective(self, state: CentralFibreState) -> bool:
        return self.decide(state).projective

    def decide(self, state: CentralFibreState) -> Verdict:
        if state.class_tag == CLASS_T:
            verdict = criterion_T(state)
            return Verdict(projective=verdict, criterion=verdict)
        try:
            verdict = criterion_P(state)
        except UncoveredCaseError as e:
            lp = self.lp(state)
            logger.warning(f"{e}; settled by LP as {'projective' if lp else 'not projective'}")
            return Verdict(projective=lp, lp=lp, notes=[str(e)])
        return Verdict(projective=verdict, criterion=verdict)


class LPOracle(_LPBacked):
    name = "lp"

    def is_projective(self, state: CentralFibreState) -> bool:
        return self.lp(state)

    def decide(self, state: CentralFibreState) -> Verdict:
        verdict = self.is_projective(state)
        return Verdict(projective=verdict, lp=verdict)


class CombinedOracle(_LPBacked):
    """Runs both routes; the LP verdict wins and disagreements are reported"""

    name = "both"

    def is_projective(self, state: CentralFibreState) -> bool:
        return self.decide(state).projective

    def decide(self, state: CentralFibreState) -> Verdict:
        lp = self.lp(state)
        notes = []
        try:
            criterion = criterion_T(state) if state.class_tag == CLASS_T else criterion_P(state)
        except UncoveredCaseError as e:
            criterion = None
            notes.append(str(e))
        verdict = Verdict(projective=lp, criterion=criterion, lp=lp, notes=notes)
        if not verdict.agrees:
            logger.warning(f"Criterion says {criterion}, LP says {lp}")
        return verdict


ORACLES = {"criterion": CriterionOracle, "lp": LPOracle, "both": CombinedOracle}


def create_oracle(method: str = "criterion", cache: Optional[VerdictCache] = None) -> ProjectivityOracle:
    if method not in ORACLES:
        raise ValidationError(f"Unknown projectivity method '{method}'")
    return ORACLES[method](cache=cache)
