import io
import json
import subprocess
import sys

import pytest

from fibwang.cli import main


def call(*argv):
    out = io.StringIO()
    code = main(list(argv), out)
    return code, out.getvalue()


@pytest.mark.parametrize("argv, expected", [
    (["rep", "--", "-13"], "1000000"),
    (["rep", "--", "-1,6"], "10101/01001"),
    (["rep", "0"], "0"),
    (["val", "0101001"], "19"),
    (["val", "10101/01001"], "-1,6"),
    (["val", "0"], "0"),
    (["tile", "--", "-1,6"], "1"),
    (["tile", "0,0"], "12"),
    (["window", "0", "0", "1", "1"], "12"),
    (["fibword", "--", "-5", "6"], "abaababaaba"),
])
def test_examples(argv, expected):
    code, text = call(*argv)
    assert code == 0
    assert text.strip() == expected


def test_tile_trace():
    code, text = call("tile", "--trace", "--", "-1,6")
    assert code == 0
    assert text.splitlines() == ["START→8→3→8→14→1", "1"]


def test_trailing_options_after_double_dash():
    assert call("tile", "--", "-1,6", "--trace")[1].splitlines()[0] == "START→8→3→8→14→1"


def test_window_text_grid(capsys):
    code, text = call("window", "--", "-5", "-5", "8", "8", "--format", "text")
    assert code == 0
    rows = text.splitlines()
    assert len(rows) == 13 and all(len(r.split()) == 13 for r in rows)
    assert capsys.readouterr().err.strip() == "valid"


def test_window_json_and_svg():
    code, text = call("window", "0", "0", "2", "2", "--format", "json")
    doc = json.loads(text)
    assert code == 0 and doc["window"] == [0, 0, 2, 2] and len(doc["rows"]) == 2
    code, text = call("window", "0", "0", "1", "1", "--format", "svg")
    assert code == 0 and text.startswith("<svg")


def test_pipeline_transcript():
    code, text = call("pipeline")
    lines = text.splitlines()
    assert code == 0
    assert lines[0] == "markers e2 r2: [0,1,2,3,4,5,6]"
    assert "markers e1 r1: [0,1,2,7,8,9,10]" in lines
    assert lines[-1] == "composite == phi: PASS"


def test_automaton_exports():
    code, text = call("automaton", "fib1d", "--format", "dot")
    assert code == 0 and "START" in text and '"a"' in text and '"b"' in text
    code, text = call("automaton", "wang2d", "--format", "json")
    assert code == 0 and len(json.loads(text)["states"]) == 17


def test_fibword_json():
    code, text = call("fibword", "0", "6", "--format", "json")
    assert code == 0 and json.loads(text) == {"range": [0, 6], "word": "abaaba"}


@pytest.mark.parametrize("argv", [
    ["automaton", "nope"],
    ["window", "0", "0", "0", "0"],
    ["val", "01"],
    ["rep", "x"],
    ["bogus"],
    [],
    ["fibword", "3", "3"],
])
def test_usage_errors(argv, capsys):
    code, _ = call(*argv)
    assert code == 1
    err = capsys.readouterr().err.strip()
    assert err and len(err.splitlines()) == 1


def test_strict_val_rejects_non_canonical(capsys):
    assert call("val", "110")[0] == 0
    code, _ = call("val", "--strict", "110")
    assert code == 2
    assert "canonical" in capsys.readouterr().err


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "fibwang", "rep", "--", "-13"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0
    assert proc.stdout.strip() == "1000000"
