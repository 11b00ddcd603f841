import logging

import networkx as nx
import pytest

from dnvflops.utils import (
    ConfigValidator, DotWriter, FileManager, FormatParser, InputValidator, StateValidator, TableWriter,
    attach_to_log, set_log_level
)


@pytest.mark.parametrize("text, expected", [
    ("(1, 2, -1)", (1, 2, -1)),
    ("1,2,-1", (1, 2, -1)),
    ("(−3, 0, 3)", (-3, 0, 3)),
    ("1,2", None),
    ("", None),
])
def test_parse_triple(text, expected):
    assert FormatParser.parse_triple(text) == expected


def test_formatting():
    assert FormatParser.format_triple((0, -1, 2)) == "(0, -1, 2)"
    assert FormatParser.format_triple(None) == "-"
    assert FormatParser.format_squares([-1, 0, 2]) == "[-1 +0 +2]"
    assert FormatParser.format_census(3398, {"T": 741, "P": 2657}) == "3398 (P: 2657, T: 741)"


def test_table_writer():
    rows = [{"id": 1, "coordinates": (0, 0, 0), "extra": "x"}]
    text = TableWriter.to_csv(rows, ["id", "coordinates"])
    assert text.splitlines() == ["id,coordinates", '1,"(0, 0, 0)"']
    assert TableWriter.to_csv([]) == ""


def test_dot_writer():
    graph = nx.Graph()
    graph.add_node(0, class_tag="P")
    graph.add_node(1, class_tag="T")
    graph.add_edge(0, 1, type="II")
    text = DotWriter.to_dot(graph, name="g")
    assert text.startswith("graph g {")
    assert '"0" -- "1" [type="II"];' in text
    assert '"1" [class_tag="T"];' in text


def test_input_validation():
    assert InputValidator.validate_class_filter("both") == (True, None)
    assert not InputValidator.validate_class_filter("PT")[0]
    assert not InputValidator.validate_method("guess")[0]
    assert not InputValidator.validate_depth(-1)[0]
    assert InputValidator.validate_depth(None)[0]
    assert InputValidator.validate_triple("0,0,0")[0]
    assert not InputValidator.validate_format("png")[0]


def test_config_validation():
    assert ConfigValidator.validate_enumeration_config({"method": "lp", "max_depth": None})[0]
    assert not ConfigValidator.validate_certificate_config({"base_degree": -4})[0]
    assert ConfigValidator.validate_log_level("DEBUG")[0]


def test_state_validation(yp):
    is_valid, errors = StateValidator.validate_state(yp, check_lattices=True)
    assert is_valid, errors


def test_files(tmp_path):
    target = tmp_path / "out" / "doc.json"
    assert FileManager.write_json({"b": 1, "a": 2}, str(target))
    assert FileManager.read_json(str(target)) == {"a": 2, "b": 1}
    assert target.read_text(encoding="utf-8").index('"a"') < target.read_text(encoding="utf-8").index('"b"')
    with pytest.raises(FileNotFoundError):
        FileManager.read_json(str(tmp_path / "none.json"))
    assert FileManager.format_for_path("graph.DOT") == "dot"
    assert FileManager.format_for_path("table.txt") == "json"
    assert FileManager.format_for_path(None, default="csv") == "csv"


def test_log_level():
    set_log_level("debug")
    assert logging.getLogger("dnvflops").level == logging.DEBUG
    set_log_level("WARNING")
    assert attach_to_log(name="dnvflops.core").getEffectiveLevel() == logging.WARNING
