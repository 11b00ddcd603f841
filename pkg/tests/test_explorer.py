import pytest

import dnvflops
from dnvflops.core.degeneration import FlopMove, apply_type_I, build_YP
from dnvflops.core.explorer import (
    EXPECTED_CLASSES, EXPECTED_CONES, ExplorerConfig, FlopExplorer, LoggingProgressReporter,
    create_explorer
)
from dnvflops.core.serialization import emit
from dnvflops.utils.validation import ValidationError


@pytest.fixture
def explorer():
    return create_explorer(max_depth=1)


class RecordingReporter(LoggingProgressReporter):

    def __init__(self):
        super().__init__()
        self.events = []

    def report_start(self, operation, total_steps):
        self.events.append(("start", operation))

    def report_complete(self, success, message):
        self.events.append(("complete", success))


def test_build_reference(explorer):
    result = explorer.build_reference("YT")
    assert result.success
    assert result.state.class_tag == "T"
    assert '"schema": "dnvflops.state/1"' in result.document

    missing = explorer.build_reference("YQ")
    assert not missing.success
    assert "YQ" in missing.error_message


def test_describe_reference_states(explorer):
    p_row = explorer.describe(1, build_YP())
    assert p_row["class"] == "P"
    assert p_row["coordinates"] == (0, 0, 0)
    assert p_row["stratum"] == "nondegenerate"
    assert p_row["pattern"] == "NNN"
    assert p_row["orbit_length"] == 1
    assert p_row["symmetric"] is True

    t_row = explorer.describe(2, explorer.build_reference("YT").state)
    assert t_row["coordinates"] == (0, 0)
    assert t_row["orbit_length"] == 3


def test_shallow_enumeration(explorer):
    result = explorer.enumerate("P")
    assert result.success
    assert result.totals["total"] == len(result.rows) == 2
    assert [row["id"] for row in result.rows] == [1, 2]
    assert result.rows[1]["coordinates"] == (-1, 0, 0)


def test_enumeration_with_bad_filter(explorer):
    result = explorer.enumerate("Q")
    assert not result.success
    assert result.error_message


def test_classes_are_cached(explorer):
    first = explorer.classes("P")
    assert explorer.classes("P") is first
    explorer.classes("T")
    both = explorer.classes("both")
    assert len(both) == len(first) + len(explorer.classes("T"))


def test_reporter_sees_the_search():
    reporter = RecordingReporter()
    FlopExplorer(ExplorerConfig(max_depth=0), reporter=reporter).enumerate("T")
    assert reporter.events[0] == ("start", "enumerate T")
    assert reporter.events[-1] == ("complete", True)


def test_check_reference(explorer):
    result = explorer.check(build_YP())
    assert result.success
    assert result.criterion is True
    assert result.lp is True
    assert result.agrees
    assert result.certificate is not None
    assert result.certificate.is_valid(build_YP())


def test_check_reports_broken_states(explorer):
    state = build_YP()
    broken = state.with_component(1, apply_type_I(state, FlopMove(1, "D12", "1:e1")).component(1))
    result = explorer.check(broken)
    assert not result.success
    assert result.problems


def test_quick_verification(explorer):
    result = explorer.verify(include_counts=False)
    assert result.success, [(c.name, c.detail) for c in result.failures]
    names = {c.name for c in result.checks}
    assert {"structure YP", "structure YT", "type II round trip", "reference certificate Y1"} <= names


def test_unknown_method():
    with pytest.raises(ValidationError):
        create_explorer(method="guess")


def test_target_counts():
    assert EXPECTED_CLASSES == {"P": 450, "T": 129}
    assert sum(EXPECTED_CONES.values()) == 3398


def test_quick_helpers():
    check = dnvflops.quick_check(emit(build_YP()))
    assert check["success"]
    assert check["criterion"] and check["lp"]

    bad = dnvflops.quick_check("[]")
    assert not bad["success"]
    assert dnvflops.get_version() == dnvflops.__version__
