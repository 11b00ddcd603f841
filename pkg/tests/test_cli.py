import json

import pytest

from dnvflops.cli import EXIT_FAILED, EXIT_OK, EXIT_USAGE, build_parser, main


def test_build_prints_a_document(capsys):
    assert main(["build", "YP"]) == EXIT_OK
    document = json.loads(capsys.readouterr().out)
    assert document["schema"] == "dnvflops.state/1"
    assert document["class"] == "P"


def test_build_to_file(tmp_path):
    target = tmp_path / "yt.json"
    assert main(["build", "YT", "-o", str(target)]) == EXIT_OK
    assert json.loads(target.read_text(encoding="utf-8"))["special"] == 3


def test_unknown_reference():
    assert main(["build", "YQ"]) == EXIT_USAGE


def test_missing_command():
    assert main([]) == EXIT_USAGE


def test_check_round_trip(tmp_path, capsys):
    target = tmp_path / "yp.json"
    main(["build", "YP", "-o", str(target)])
    assert main(["check", str(target)]) == EXIT_OK
    report = json.loads(capsys.readouterr().out)
    assert report["criterion"] is True
    assert report["lp"] is True
    assert report["agree"] is True
    assert report["certificate"]["coefficients"]


def test_check_rejects_bad_documents(tmp_path, capsys):
    target = tmp_path / "bad.json"
    target.write_text('{"schema": "other"}', encoding="utf-8")
    assert main(["check", str(target)]) == EXIT_USAGE
    diagnostic = json.loads(capsys.readouterr().err.strip().splitlines()[-1])
    assert diagnostic["error"] == "document"

    assert main(["check", str(tmp_path / "missing.json")]) == EXIT_USAGE


def test_shallow_enumeration_as_csv(capsys):
    assert main(["enumerate", "--class", "both", "--max-depth", "0", "--format", "csv", "-q"]) == EXIT_OK
    lines = capsys.readouterr().out.strip().splitlines()
    assert lines[0].startswith("id,class,coordinates")
    assert len(lines) == 4
    assert lines[-1] == "total,2"


def test_shallow_enumeration_as_json(capsys):
    assert main(["enumerate", "--class", "P", "--max-depth", "1"]) == EXIT_OK
    output = json.loads(capsys.readouterr().out)
    assert output["totals"]["total"] == 2
    assert output["rows"][0]["coordinates"] == [0, 0, 0]


def test_bad_class_filter():
    assert main(["enumerate", "--class", "Q"]) == EXIT_USAGE


def test_triple_filter(capsys):
    assert main(["enumerate", "--class", "P", "--max-depth", "1", "--triple", "1,0,0"]) == EXIT_OK
    rows = json.loads(capsys.readouterr().out)["rows"]
    assert len(rows) == 1
    assert rows[0]["coordinates"] == [-1, 0, 0]


def test_bad_triple_and_depth(capsys):
    assert main(["enumerate", "--triple", "1,0"]) == EXIT_USAGE
    assert main(["enumerate", "--max-depth", "-1"]) == EXIT_USAGE
    diagnostic = json.loads(capsys.readouterr().err.strip().splitlines()[-1])
    assert diagnostic["error"] == "ValidationError"


def test_flop_graph_format_from_output(tmp_path):
    assert main(["flop-graph", "-o", str(tmp_path / "graph.csv")]) == EXIT_USAGE
    args = build_parser().parse_args(["flop-graph", "-o", "fan.json"])
    assert args.format is None
    assert args.output == "fan.json"


def test_config_file(tmp_path, capsys):
    config = tmp_path / "run.json"
    config.write_text(json.dumps({"enumeration": {"max_depth": 0}}), encoding="utf-8")
    assert main(["enumerate", "--class", "T", "--config", str(config)]) == EXIT_OK
    assert json.loads(capsys.readouterr().out)["totals"]["total"] == 1

    assert main(["enumerate", "--config", str(tmp_path / "missing.json")]) == EXIT_USAGE


def test_quick_verify(capsys):
    assert main(["verify", "--quick"]) == EXIT_OK
    out = capsys.readouterr().out
    assert "FAILED" not in out
    assert "type II round trip" in out


def test_parser_flags():
    args = build_parser().parse_args(["enumerate", "--all", "-vv", "--method", "lp"])
    assert args.all_states
    assert args.verbose == 2
    assert args.method == "lp"
    assert build_parser().parse_args(["enumerate"]).all_states is False


@pytest.mark.slow
def test_count_cones(capsys):
    assert main(["count-cones", "--format", "json"]) in (EXIT_OK, EXIT_FAILED)
    output = json.loads(capsys.readouterr().out)
    assert set(output["by_class"]) == {"P", "T"}
