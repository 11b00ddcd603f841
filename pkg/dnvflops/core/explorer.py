"""
Main explorer that orchestrates enumeration, censuses and checks
"""
import logging
from collections import Counter
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional

from .anticanonical_pairs import BUILDERS, REFERENCE_CERTIFICATES, certificate_degrees, reference_ample_certificate
from .degeneration import (
    CLASS_P, CLASS_T, TYPE_I, TYPE_II, CentralFibreState, apply_type_II, available_type_II,
    build_YP, build_YT, induced_gluing
)
from .enumeration import (
    ALL_REGULAR, bfs, canonical_triple, enumerate_regular_triples, involution, is_symmetric,
    iso_class_key, lp_cache, regular_stratum, regularity_pattern, shift, stratum_of, t_coordinates, triple_of,
    triple_orbit
)
from .morifan import (
    ConeCensus, FlopGraph, build_flop_graph, component_tally, cone_census, orbit_length, secondary_fan
)
from .projectivity import (
    AmpleCertificate, create_oracle, criterion_P, criterion_T, glue_certificates, leg_problems,
    lp_feasible, remark_condition
)
from .serialization import emit
from ..interfaces.base_interface import ProgressReporter
from ..utils import FormatParser, StateValidator, ValidationError, attach_to_log, set_log_level
from ..utils.validation import InconsistencyError, UncoveredCaseError

logger = attach_to_log(name=__name__)

REFERENCES = {"YP": build_YP, "YT": build_YT}

# target counts the verification suite compares against
EXPECTED_CLASSES = {CLASS_P: 450, CLASS_T: 129}
EXPECTED_CONES = {CLASS_P: 2657, CLASS_T: 741}
EXPECTED_SYMMETRIC = 22
EXPECTED_FAN_SIZES = [2657, 247, 247, 247]


@dataclass
class ExplorerConfig:
    """Runtime configuration of the explorer"""
    method: str = "criterion"
    projective_only: bool = True
    max_depth: Optional[int] = None
    base_degree: int = 16
    log_level: str = "WARNING"

    @classmethod
    def from_run_config(cls, run_config: Any) -> 'ExplorerConfig':
        return cls(method=run_config.enumeration.method,
                   projective_only=run_config.enumeration.projective_only,
                   max_depth=run_config.enumeration.max_depth,
                   base_degree=run_config.certificates.base_degree,
                   log_level=run_config.log_level)


class LoggingProgressReporter(ProgressReporter):
    """Progress reporter writing to the package log"""

    def __init__(self, level: int = logging.INFO):
        self.level = level
        self.operation = ""

    def report_start(self, operation: str, total_steps: int) -> None:
        self.operation = operation
        logger.log(self.level, f"Starting {operation}")

    def report_progress(self, step: int, message: str) -> None:
        logger.log(self.level, f"{self.operation}: {message}")

    def report_complete(self, success: bool, message: str) -> None:
        logger.log(self.level, f"{self.operation} {'finished' if success else 'failed'}: {message}")


@dataclass
class BuildResult:
    success: bool
    state: Optional[CentralFibreState] = None
    document: str = ""
    error_message: Optional[str] = None


@dataclass
class EnumerationResult:
    success: bool
    rows: List[Dict[str, Any]] = field(default_factory=list)
    totals: Dict[str, int] = field(default_factory=dict)
    strata: Dict[str, int] = field(default_factory=dict)
    symmetric: int = 0
    error_message: Optional[str] = None


@dataclass
class CensusResult:
    success: bool
    census: Optional[ConeCensus] = None
    error_message: Optional[str] = None

    def summary(self) -> str:
        if self.census is None:
            return ""
        return FormatParser.format_census(self.census.total, self.census.by_class)


@dataclass
class FanResult:
    success: bool
    sizes: List[int] = field(default_factory=list)
    tallies: List[Dict[int, int]] = field(default_factory=list)
    error_message: Optional[str] = None


@dataclass
class GraphResult:
    success: bool
    flop_graph: Optional[FlopGraph] = None
    error_message: Optional[str] = None


@dataclass
class CheckResult:
    success: bool
    class_tag: str = ""
    criterion: Optional[bool] = None
    lp: Optional[bool] = None
    certificate: Optional[AmpleCertificate] = None
    problems: List[str] = field(default_factory=list)
    error_message: Optional[str] = None

    @property
    def agrees(self) -> bool:
        return self.criterion is None or self.lp is None or self.criterion == self.lp


@dataclass
class CheckOutcome:
    name: str
    passed: bool
    detail: str = ""


@dataclass
class VerificationResult:
    success: bool
    checks: List[CheckOutcome] = field(default_factory=list)
    error_message: Optional[str] = None

    @property
    def failures(self) -> List[CheckOutcome]:
        return [c for c in self.checks if not c.passed]


class FlopExplorer:
    """High level interface over the enumeration engines"""

    def __init__(self, config: Optional[ExplorerConfig] = None,
                 reporter: Optional[ProgressReporter] = None):
        self.config = config or ExplorerConfig()
        set_log_level(self.config.log_level)
        self.lp_cache = lp_cache()
        self.oracle = create_oracle(self.config.method, cache=self.lp_cache)
        self.reporter = reporter
        self._classes: Dict[str, Dict[bytes, CentralFibreState]] = {}
        self._flop_graph: Optional[FlopGraph] = None

    # -- cached engines --------------------------------------------------

    def classes(self, class_filter: str = "both") -> Dict[bytes, CentralFibreState]:
        if class_filter not in self._classes:
            if class_filter == "both" and CLASS_P in self._classes and CLASS_T in self._classes:
                self._classes["both"] = {**self._classes[CLASS_P], **self._classes[CLASS_T]}
            else:
                self._classes[class_filter] = bfs(class_filter, projective_only=self.config.projective_only,
                                                  oracle=self.oracle, max_depth=self.config.max_depth,
                                                  reporter=self.reporter)
        return self._classes[class_filter]

    def flop_graph_data(self) -> FlopGraph:
        if self._flop_graph is None:
            self._flop_graph = build_flop_graph(oracle=self.oracle, reporter=self.reporter)
        return self._flop_graph

    # -- operations ------------------------------------------------------

    def build_reference(self, name: str) -> BuildResult:
        """Reference state and its document"""
        if name not in REFERENCES:
            return BuildResult(success=False, error_message=f"Unknown reference '{name}'")
        state = REFERENCES[name]()
        return BuildResult(success=True, state=state, document=emit(state))

    def describe(self, index: int, state: CentralFibreState) -> Dict[str, Any]:
        """Table row of invariants for one isomorphism class"""
        row: Dict[str, Any] = {
            "id": index,
            "class": state.class_tag,
            "pattern": regularity_pattern(state),
            "squares": FormatParser.format_squares(
                state.side_square((i, s)) for i in state.indices for s in state.component(i).side_names
            ),
            "symmetric": is_symmetric(state),
            "orbit_length": orbit_length(state),
        }
        if state.class_tag == CLASS_P:
            triple = triple_of(state)
            row["coordinates"] = canonical_triple(triple) if triple is not None else None
            row["stratum"] = stratum_of(state) if triple is None else regular_stratum(state)
        else:
            row["coordinates"] = t_coordinates(state)
            row["stratum"] = ""
        return row

    def enumerate(self, class_filter: str = "both") -> EnumerationResult:
        try:
            classes = self.classes(class_filter)
        except ValidationError as e:
            return EnumerationResult(success=False, error_message=str(e))

        rows = [self.describe(i, state) for i, state in enumerate(classes.values(), start=1)]
        totals = Counter(row["class"] for row in rows)
        totals["total"] = len(rows)
        strata = Counter(row["stratum"] for row in rows if row["class"] == CLASS_P)
        return EnumerationResult(success=True, rows=rows, totals=dict(totals),
                                 strata=dict(sorted(strata.items())),
                                 symmetric=sum(1 for row in rows if row["symmetric"]))

    def count_cones(self) -> CensusResult:
        try:
            return CensusResult(success=True, census=cone_census(self.classes("both")))
        except ValidationError as e:
            return CensusResult(success=False, error_message=str(e))

    def flop_graph(self) -> GraphResult:
        try:
            return GraphResult(success=True, flop_graph=self.flop_graph_data())
        except ValidationError as e:
            return GraphResult(success=False, error_message=str(e))

    def secondary_fan(self) -> FanResult:
        try:
            flop_graph = self.flop_graph_data()
        except ValidationError as e:
            return FanResult(success=False, error_message=str(e))
        components = secondary_fan(flop_graph)
        return FanResult(success=True, sizes=[len(c) for c in components],
                         tallies=[component_tally(flop_graph, c) for c in components])

    def check(self, state: CentralFibreState) -> CheckResult:
        """Criterion and LP verdicts with an ample certificate when projective"""
        is_valid, problems = StateValidator.validate_state(state)
        result = CheckResult(success=True, class_tag=state.class_tag, problems=problems)
        try:
            result.criterion = criterion_T(state) if state.class_tag == CLASS_T else criterion_P(state)
        except UncoveredCaseError as e:
            result.problems.append(str(e))
        lp_certificate = lp_feasible(state)
        result.lp = lp_certificate is not None

        if result.criterion:
            try:
                result.certificate = glue_certificates(state, base_degree=self.config.base_degree)
            except InconsistencyError as e:
                result.problems.append(str(e))
        if result.certificate is None:
            result.certificate = lp_certificate
        if not result.agrees:
            result.success = False
            result.error_message = f"Criterion says {result.criterion}, LP says {result.lp}"
        if not is_valid:
            result.success = False
            result.error_message = result.error_message or "State violates structural invariants"
        return result

    # -- verification ----------------------------------------------------

    def verify(self, include_counts: bool = True) -> VerificationResult:
        checks: List[CheckOutcome] = []

        def record(name: str, passed: bool, detail: str = "") -> None:
            checks.append(CheckOutcome(name=name, passed=bool(passed), detail=detail))
            if not passed:
                logger.warning(f"Check {name} failed: {detail}")

        for name, builder in REFERENCES.items():
            is_valid, errors = StateValidator.validate_state(builder(), check_lattices=True)
            record(f"structure {name}", is_valid, "; ".join(errors))

        for tag in ("Y1", "Y2", "Y4"):
            pair = BUILDERS[tag]()
            degrees = certificate_degrees(pair, reference_ample_certificate(pair))
            boundary = {degrees[s] for s in pair.side_names}
            legs = leg_problems(pair, REFERENCE_CERTIFICATES[tag])
            record(f"reference certificate {tag}",
                   all(d > 0 for d in degrees.values()) and len(boundary) == 1 and not legs,
                   "; ".join(legs) or f"degrees {degrees}")

        t = (1, 2, -1)
        group_ok = (len(triple_orbit(t)) == 6 and shift(involution(shift(t))) == involution(t)
                    and shift(shift(shift(t))) == t and involution(involution(t)) == t)
        record("triple group relations", group_ok)

        record("type II round trip", self._type_II_round_trip())

        if include_counts:
            self._verify_counts(record)

        return VerificationResult(success=all(c.passed for c in checks), checks=checks)

    def _type_II_round_trip(self) -> bool:
        start = build_YP()
        for gluing in available_type_II(start):
            middle = apply_type_II(start, gluing)
            back = apply_type_II(middle, induced_gluing(middle))
            if iso_class_key(back) != iso_class_key(start):
                return False
        return True

    def _verify_counts(self, record) -> None:
        classes = self.classes("both")
        by_class = Counter(s.class_tag for s in classes.values())
        for tag, expected in EXPECTED_CLASSES.items():
            record(f"class {tag} models", by_class[tag] == expected, f"{by_class[tag]} (expected {expected})")

        regular = {canonical_triple(triple_of(s)) for s in classes.values()
                   if s.class_tag == CLASS_P and stratum_of(s) == ALL_REGULAR}
        listed = set().union(*enumerate_regular_triples().values())
        record("triple oracle", regular == listed,
               f"{len(regular - listed)} found only by search, {len(listed - regular)} only listed")

        census = cone_census(classes)
        record("cone census", census.by_class == EXPECTED_CONES,
               FormatParser.format_census(census.total, census.by_class))
        record("symmetric models", census.symmetric == EXPECTED_SYMMETRIC, f"{census.symmetric}")

        flop_graph = self.flop_graph_data()
        record("labelled nodes", flop_graph.graph.number_of_nodes() == census.total,
               f"{flop_graph.graph.number_of_nodes()} nodes, census {census.total}")
        record("flop graph connected", flop_graph.is_connected(),
               f"{flop_graph.walls} type II flops with non-projective images")
        crossing = all(flop_graph.graph.nodes[a]["class_tag"] != flop_graph.graph.nodes[b]["class_tag"]
                       for a, b in flop_graph.edges_of_type(TYPE_II))
        record("type II edges cross classes", crossing)
        same = all(flop_graph.graph.nodes[a]["class_tag"] == flop_graph.graph.nodes[b]["class_tag"]
                   for a, b in flop_graph.edges_of_type(TYPE_I))
        record("type I edges keep class", same)
        sizes = [len(c) for c in secondary_fan(flop_graph)]
        record("secondary fan", sizes == EXPECTED_FAN_SIZES, f"sizes {sizes}")

        unfiltered = bfs(CLASS_P, projective_only=False)
        disagreements = 0
        off_condition = 0
        for state in unfiltered.values():
            lp = self.lp_cache.lp(state)
            try:
                criterion = criterion_P(state)
            except UncoveredCaseError:
                criterion = None
            if criterion != lp:
                disagreements += 1
            if stratum_of(state) == ALL_REGULAR and remark_condition(state) != lp:
                off_condition += 1
        record("criterion and LP agree", disagreements == 0,
               f"{disagreements} of {len(unfiltered)} states disagree or are uncovered")
        record("boundary-square condition", off_condition == 0,
               f"{off_condition} all-regular states where it differs from the LP")


def create_explorer(**kwargs) -> FlopExplorer:
    """Create explorer with configuration keywords"""
    return FlopExplorer(ExplorerConfig(**kwargs))
