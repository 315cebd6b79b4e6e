import json
import os
import subprocess
import sys
from fractions import Fraction
from pathlib import Path

import pytest

from rdlab.cli import main
from rdlab.fields import (
    cyclotomic_field,
    fields_up_to_conductor,
    quadratic_field,
    rational_field,
    to_spec,
)
from rdlab.fieldspec import FieldSpecError, UnsupportedSpec, parse_field_spec
from rdlab.towers import OreReport

GOLDEN = Path(__file__).parent / "golden"

GOLDEN_CASES = [
    (["rd", "Q"], "rd_Q.json"),
    (["rd", "quad:-1"], "rd_quad_-1.json"),
    (["rd", "zeta:5"], "rd_zeta_5.json"),
    (["rd", "zeta:12", "--tsv"], "rd_zeta_12.tsv"),
    (["enumerate", "--bound", "3"], "enumerate_3.jsonl"),
    (["enumerate", "--bound", "2", "--tsv"], "enumerate_2.tsv"),
    (["filtration", "--p", "3", "--n", "2"], "filtration_3_2.json"),
    (["filtration", "--p", "2", "--n", "2"], "filtration_2_2.json"),
    (["filtration", "--p", "3", "--n", "1"], "filtration_3_1.json"),
]


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_parse_specs():
    assert parse_field_spec("Q") == rational_field()
    assert parse_field_spec("quad:-1") == quadratic_field(-1)
    assert parse_field_spec("quad:12") == quadratic_field(3)
    assert parse_field_spec("quad:+5") == quadratic_field(5)
    assert parse_field_spec("zeta:5") == cyclotomic_field(5)
    assert parse_field_spec("zeta:1") == rational_field()
    assert parse_field_spec("chars:mod=12;gens=1/0") == quadratic_field(-1)
    assert parse_field_spec("chars:mod=5;gens=") == rational_field()
    assert parse_field_spec("chars:mod=5;gens=2,4") == quadratic_field(5)


@pytest.mark.parametrize(
    "text, position",
    [
        ("quad:0", 5),
        ("quad:", 5),
        ("quad:1.5", 5),
        ("zeta:0", 5),
        ("zeta:-3", 5),
        ("chars:mod=5;gens=x", 17),
        ("chars:mod=12;gens=1", 18),
        ("chars:mod=12;gens=1/0,1/0/1", 22),
        ("chars:mod=0;gens=", 10),
        ("chars:5", 6),
        ("chars:mod=5", 11),
        ("chars:mod=5;g=1", 12),
        ("", 0),
        ("1:2", 0),
    ],
)
def test_parse_errors_carry_position(text, position):
    with pytest.raises(FieldSpecError) as exc:
        parse_field_spec(text)
    assert exc.value.position == position


@pytest.mark.parametrize("text", ["poly:x^2+1", "ray:5", "K"])
def test_unsupported_kinds(text):
    with pytest.raises(UnsupportedSpec):
        parse_field_spec(text)


def test_spec_round_trip_on_corpus():
    for F in fields_up_to_conductor(60):
        assert parse_field_spec(to_spec(F)) == F


@pytest.mark.parametrize("argv, name", GOLDEN_CASES)
def test_golden_output(capsys, argv, name):
    code, out, err = run(capsys, *argv)
    assert code == 0 and err == ""
    assert out == (GOLDEN / name).read_text(encoding="utf-8")


def test_rd_json_schema(capsys):
    _, out, _ = run(capsys, "rd", "zeta:5")
    report = json.loads(out)
    assert list(report) == ["spec", "degree", "disc", "conductor", "ramified", "signature", "rd"]
    assert report["disc"] == {"value": 125, "factors": [[5, 3]]}
    assert report["rd"] == {"disc": 125, "degree": 4, "approx": 3.3437}
    assert parse_field_spec(report["spec"]) == cyclotomic_field(5)


@pytest.mark.parametrize(
    "argv, code",
    [
        (["rd", "quad:0"], 2),
        (["rd", "chars:mod=5;gens=x"], 2),
        (["rd", "poly:x^2+1"], 3),
        (["filtration", "--p", "4", "--n", "1"], 2),
        (["filtration", "--p", "2", "--n", "1"], 2),
        (["enumerate", "--bound", "0"], 2),
        (["enumerate", "--bound", "abc"], 2),
        (["verify", "--conductor-limit", "0"], 2),
    ],
)
def test_exit_codes(capsys, argv, code):
    got, out, err = run(capsys, *argv)
    assert got == code
    assert out == ""
    assert err


def test_argparse_errors_exit_2(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["rd"])
    assert exc.value.code == 2
    with pytest.raises(SystemExit) as exc:
        main(["verify", "--suite", "nope"])
    assert exc.value.code == 2


def test_parse_error_points_at_position(capsys):
    _, _, err = run(capsys, "rd", "chars:mod=5;gens=x")
    assert "position 17" in err
    assert err.splitlines()[-1] == " " * 19 + "^"


def test_enumerate_ceiling_exit_4(capsys, monkeypatch):
    monkeypatch.setenv("RDLAB_CEILING", "3")
    code, out, err = run(capsys, "enumerate", "--bound", "4")
    assert code == 4 and out == ""
    assert "ceiling 3" in err


def test_enumerate_summary_and_decimal_bound(capsys):
    code, out, _ = run(capsys, "enumerate", "--bound", "2.0", "--max-degree", "2")
    lines = [json.loads(x) for x in out.splitlines()]
    assert code == 0
    assert lines[-1] == {"summary": {"bound": "2", "max_degree": 2, "count": 3}}
    assert [x["rd"]["disc"] for x in lines[:-1]] == [1, 3, 4]


def test_verify_small(capsys):
    code, out, _ = run(capsys, "verify", "--suite", "all", "--conductor-limit", "1")
    assert code == 0
    reports = [json.loads(x) for x in out.splitlines() if not x.startswith("#")]
    assert [r["suite"] for r in reports] == ["mult", "ore", "tower", "hasse-arf", "lemma-j", "ray-class"]
    assert all(r["passed"] for r in reports)
    headers = [x for x in out.splitlines() if x.startswith("#")]
    assert len(headers) == 6


def test_verify_mult_24(capsys):
    code, out, _ = run(capsys, "verify", "--suite", "mult", "--conductor-limit", "24")
    report = json.loads(out.splitlines()[1])
    assert code == 0 and report["passed"] and report["checked"] >= 50


def test_verify_failure_exit_1(capsys, monkeypatch):
    import rdlab.verify as verify

    monkeypatch.setattr(verify, "ore_bound_check", lambda E, p: OreReport(False, 99, Fraction(1)))
    code, out, err = run(capsys, "verify", "--suite", "ore", "--conductor-limit", "5")
    assert code == 1
    report = json.loads(out.splitlines()[1])
    assert not report["passed"] and report["failures"][0]["lhs"] == 99
    assert "ore failed" in err


def test_module_entry_point_is_byte_stable():
    env = dict(os.environ)
    src = str(Path(__file__).resolve().parents[1] / "src")
    env["PYTHONPATH"] = src + os.pathsep + env.get("PYTHONPATH", "")
    cmd = [sys.executable, "-m", "rdlab", "enumerate", "--bound", "3"]
    first = subprocess.run(cmd, capture_output=True, env=env, check=True).stdout
    second = subprocess.run(cmd, capture_output=True, env=env, check=True).stdout
    assert first == second == (GOLDEN / "enumerate_3.jsonl").read_bytes()
