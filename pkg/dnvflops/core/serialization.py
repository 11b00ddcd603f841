"""
JSON state documents
"""
import json
from typing import Any, Dict, List

from .anticanonical_pairs import AnticanonicalPair, BoundarySide, Curve
from .degeneration import CONSERVED_SUMS, CLASS_P, CLASS_T, CentralFibreState, GluingRecord
from .picard_lattice import DivisorClass, IntersectionLattice
from ..utils.logger import attach_to_log
from ..utils.validation import DocumentError, ValidationError

logger = attach_to_log(name=__name__)

SCHEMA = "dnvflops.state/1"


def _pairs(entries) -> List[Dict[str, Any]]:
    return [{"curve": c, "mult": m} for c, m in entries]


def component_to_dict(pair: AnticanonicalPair) -> Dict[str, Any]:
    lattice = pair.lattice
    return {
        "base_tag": pair.base_tag,
        "rank": pair.rank,
        "basis": list(lattice.basis_names),
        "gram": [list(row) for row in lattice.gram],
        "canonical_class": list(pair.canonical_class.coeffs),
        "curves": [
            {"name": c.name, "coeffs": list(c.cls.coeffs), "role": c.role,
             "square": lattice.pairing(c.cls, c.cls)}
            for c in pair.curves
        ],
        "boundary": [
            {"name": s.name, "coeffs": list(s.cls.coeffs), "square": lattice.pairing(s.cls, s.cls),
             "anchor": _pairs(s.anchor), "branches": _pairs(s.branches), "nodes": list(s.nodes)}
            for s in pair.boundary
        ],
        "node_through": [{"node": n, "curve": c, "mult": m} for n, c, m in pair.node_through],
    }


def state_to_dict(state: CentralFibreState) -> Dict[str, Any]:
    return {
        "schema": SCHEMA,
        "class": state.class_tag,
        "special": state.special,
        "components": [component_to_dict(pair) for pair in state.components],
        "gluings": [
            {"a": list(g.side_a), "b": list(g.side_b), "kind": g.kind, "conserved_sum": g.conserved_sum}
            for g in state.gluings
        ],
    }


def emit(state: CentralFibreState) -> str:
    """Canonical JSON text of a state"""
    return json.dumps(state_to_dict(state), indent=2, sort_keys=True)


def _require(record: Dict[str, Any], field: str, where: str) -> Any:
    if not isinstance(record, dict) or field not in record:
        raise DocumentError(f"{where}: missing '{field}'")
    return record[field]


def _entries(records, where: str):
    return tuple((_require(r, "curve", where), int(_require(r, "mult", where))) for r in records)


def component_from_dict(record: Dict[str, Any], where: str = "component") -> AnticanonicalPair:
    try:
        lattice = IntersectionLattice(gram=_require(record, "gram", where),
                                      basis_names=_require(record, "basis", where))
    except ValidationError as e:
        raise DocumentError(f"{where}: {e}")
    rank = int(_require(record, "rank", where))
    if rank != lattice.rank:
        raise DocumentError(f"{where}: rank {rank} does not match the gram matrix")

    def cls(coeffs, what: str) -> DivisorClass:
        if len(coeffs) != rank:
            raise DocumentError(f"{where}: {what} has {len(coeffs)} coefficients, expected {rank}")
        return DivisorClass(tuple(int(x) for x in coeffs))

    curves = []
    for c in _require(record, "curves", where):
        name = _require(c, "name", where)
        curve = Curve(name=name, cls=cls(_require(c, "coeffs", where), name), role=c.get("role", "other"))
        if "square" in c and lattice.pairing(curve.cls, curve.cls) != c["square"]:
            raise DocumentError(f"{where}: curve {name} does not have the recorded square {c['square']}")
        curves.append(curve)

    boundary = []
    for s in _require(record, "boundary", where):
        name = _require(s, "name", where)
        side = BoundarySide(name=name, cls=cls(_require(s, "coeffs", where), name),
                            anchor=_entries(s.get("anchor", []), where),
                            nodes=tuple(s.get("nodes", [])),
                            branches=_entries(s.get("branches", []), where))
        if "square" in s and lattice.pairing(side.cls, side.cls) != s["square"]:
            raise DocumentError(f"{where}: side {name} does not have the recorded square {s['square']}")
        boundary.append(side)

    node_through = tuple(
        (_require(n, "node", where), _require(n, "curve", where), int(_require(n, "mult", where)))
        for n in record.get("node_through", [])
    )
    return AnticanonicalPair(lattice=lattice, base_tag=_require(record, "base_tag", where),
                             curves=tuple(curves), boundary=tuple(boundary),
                             canonical_class=cls(_require(record, "canonical_class", where), "canonical class"),
                             node_through=node_through)


def state_from_dict(document: Dict[str, Any]) -> CentralFibreState:
    schema = _require(document, "schema", "document")
    if schema != SCHEMA:
        raise DocumentError(f"Unsupported schema '{schema}', expected '{SCHEMA}'")
    class_tag = _require(document, "class", "document")
    if class_tag not in (CLASS_P, CLASS_T):
        raise DocumentError(f"Unknown class '{class_tag}'")

    records = _require(document, "components", "document")
    if len(records) != 3:
        raise DocumentError(f"Expected 3 components, got {len(records)}")
    components = tuple(component_from_dict(r, f"component {i}") for i, r in enumerate(records, start=1))

    gluings = []
    for g in _require(document, "gluings", "document"):
        kind = _require(g, "kind", "gluing")
        if kind not in CONSERVED_SUMS:
            raise DocumentError(f"Unknown gluing kind '{kind}'")
        a, b = _require(g, "a", "gluing"), _require(g, "b", "gluing")
        record = GluingRecord.create((int(a[0]), a[1]), (int(b[0]), b[1]), kind)
        if g.get("conserved_sum", record.conserved_sum) != record.conserved_sum:
            raise DocumentError(f"Gluing {record.label()} records the wrong conserved sum")
        for index, side in (record.side_a, record.side_b):
            if index not in (1, 2, 3) or not components[index - 1].has_side(side):
                raise DocumentError(f"Gluing {record.label()} names an unknown side {index}:{side}")
        gluings.append(record)

    special = document.get("special")
    if class_tag == CLASS_T and special not in (1, 2, 3):
        raise DocumentError("Class T documents need a special component")
    state = CentralFibreState(class_tag=class_tag, components=components, gluings=tuple(gluings),
                              special=special if class_tag == CLASS_T else None)
    logger.debug(f"Parsed a class {class_tag} state document")
    return state


def parse(text: str) -> CentralFibreState:
    try:
        document = json.loads(text)
    except json.JSONDecodeError as e:
        raise DocumentError(f"Invalid JSON: {e}")
    return state_from_dict(document)
