"""CLI contract: output shapes, exit codes, determinism, JSON schema."""

import json
import subprocess
import sys

import jsonschema

from etaquad.cli import main

REPORT_SCHEMA = {
    "type": "object",
    "required": ["case", "params", "p_max", "checked", "skipped", "falsified", "witnesses"],
    "additionalProperties": False,
    "properties": {
        "case": {"type": "string"},
        "params": {
            "oneOf": [
                {"type": "null"},
                {
                    "type": "object",
                    "required": ["a", "b"],
                    "additionalProperties": False,
                    "properties": {
                        "a": {"type": "string", "pattern": "^-?[0-9]+$"},
                        "b": {"type": ["string", "null"], "pattern": "^-?[0-9]+$"},
                    },
                },
            ]
        },
        "p_max": {"type": "string", "pattern": "^-?[0-9]+$"},
        "checked": {"type": "string", "pattern": "^[0-9]+$"},
        "skipped": {"type": "string", "pattern": "^[0-9]+$"},
        "falsified": {"type": "string", "pattern": "^[0-9]+$"},
        "witnesses": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["p", "x", "y", "index", "lhs", "rhs"],
                "additionalProperties": False,
                "properties": {
                    key: {"type": ["string", "null"], "pattern": "^-?[0-9]+$"}
                    for key in ("p", "x", "y", "index", "lhs", "rhs")
                },
            },
        },
    },
}


def run_cli(*argv):
    proc = subprocess.run(
        [sys.executable, "-m", "etaquad", *argv],
        capture_output=True,
        text=True,
        timeout=300,
    )
    return proc


def test_lambda_rows(capsys):
    assert main(["lambda", "--a", "1", "--b", "3", "--n-max", "4"]) == 0
    assert capsys.readouterr().out == "1\t1\n2\t-3\n3\t0\n4\t2\n"


def test_lambda_newton(capsys):
    assert main(["lambda", "--a", "1", "--b", "1", "--n-max", "2", "--method", "newton"]) == 0
    assert capsys.readouterr().out == "1\t1\n2\t-6\n"


def test_lambda_multinomial(capsys):
    assert main(["lambda", "--a", "1", "--b", "1", "--n-max", "3", "--method", "multinomial"]) == 0
    assert capsys.readouterr().out == "1\t1\n2\t-6\n3\t9\n"


def test_lambda_flag_errors(capsys):
    assert main(["lambda", "--a", "0", "--b", "1", "--n-max", "1"]) == 2
    assert main(["lambda", "--a", "1", "--b", "1", "--n-max", "0"]) == 2
    capsys.readouterr()


def test_reps_output(capsys):
    assert main(["reps", "--form", "3,0,5", "--n", "8"]) == 0
    out = capsys.readouterr().out
    assert out == "-1\t-1\n-1\t1\n1\t-1\n1\t1\ncount\t4\n"


def test_reps_flag_errors(capsys):
    assert main(["reps", "--form", "3,0", "--n", "8"]) == 2
    assert main(["reps", "--form", "1,5,1", "--n", "8"]) == 2
    assert main(["reps", "--form", "1,0,1", "--n", "0"]) == 2
    capsys.readouterr()


def test_classgroup_output(capsys):
    assert main(["classgroup", "--disc", "-60"]) == 0
    assert capsys.readouterr().out == "1\t0\t15\n3\t0\t5\n"
    assert main(["classgroup", "--disc", "5"]) == 2
    capsys.readouterr()


def test_closed_output(capsys):
    assert main(["closed", "--family", "L13", "--n", "1"]) == 0
    assert capsys.readouterr().out == "-3\n"
    assert main(["closed", "--family", "LEMMA51", "--n", "6", "--a", "1", "--b", "3"]) == 0
    assert capsys.readouterr().out == "-22\n"
    assert main(["closed", "--family", "LEMMA51", "--n", "6"]) == 2
    capsys.readouterr()


def test_verify_tsv_and_exit(capsys):
    assert main(["verify", "--case", "E1.6", "--p-max", "100"]) == 0
    out = capsys.readouterr().out
    assert "case\tE1.6" in out
    assert "checked\t9" in out
    assert "skipped\t15" in out
    assert "falsified\t0" in out


def test_verify_with_params(capsys):
    assert main(["verify", "--case", "T3.1", "--a", "1", "--b", "3", "--p-max", "200"]) == 0
    out = capsys.readouterr().out
    assert "falsified\t0" in out


def test_verify_unknown_case(capsys):
    assert main(["verify", "--case", "bogus", "--p-max", "10"]) == 2
    assert main(["verify", "--case", "T3.1", "--p-max", "10"]) == 2  # missing params
    assert main(["verify", "--case", "E1.6", "--a", "1", "--b", "7", "--p-max", "10"]) == 2
    capsys.readouterr()


def test_verify_json_schema(capsys):
    assert main(["verify", "--case", "T3.1", "--a", "1", "--b", "3", "--p-max", "100", "--json"]) == 0
    doc = json.loads(capsys.readouterr().out)
    jsonschema.validate(doc, REPORT_SCHEMA)
    assert doc["case"] == "T3.1"
    assert doc["params"] == {"a": "1", "b": "3"}
    assert doc["falsified"] == "0"

    assert main(["verify", "--case", "C3.4", "--a", "3", "--p-max", "50", "--json"]) == 0
    doc = json.loads(capsys.readouterr().out)
    jsonschema.validate(doc, REPORT_SCHEMA)
    assert doc["params"] == {"a": "3", "b": None}

    assert main(["verify", "--case", "E1.7", "--p-max", "50", "--json"]) == 0
    doc = json.loads(capsys.readouterr().out)
    jsonschema.validate(doc, REPORT_SCHEMA)
    assert doc["params"] is None


def test_byte_identical_runs_and_thread_hint():
    args = ["verify", "--case", "T3.1", "--a", "3", "--b", "5", "--p-max", "300", "--json"]
    first = run_cli(*args)
    second = run_cli(*args)
    third = run_cli(*args, "--threads", "4")
    assert first.returncode == second.returncode == third.returncode == 0
    assert first.stdout == second.stdout == third.stdout

    assert run_cli("verify", "--case", "E1.6", "--p-max", "10", "--threads", "0").returncode == 2


def test_console_invocation_smoke():
    proc = run_cli("lambda", "--a", "2", "--b", "6", "--n-max", "3")
    assert proc.returncode == 0
    assert proc.stdout == "1\t1\n2\t0\n3\t-3\n"


def test_argparse_usage_error_is_exit_2():
    proc = run_cli("lambda", "--a", "1")  # missing required flags
    assert proc.returncode == 2
    proc = run_cli("nonsense")
    assert proc.returncode == 2


def test_verify_exit_1_on_falsification(capsys, monkeypatch):
    # no true identity falsifies, so splice in a poisoned verdict source
    import etaquad.cli as cli_mod
    from etaquad import RangeReport, Verdict, make_case

    def fake_report(case_id, p_max, grid=None, cache=None):
        bad = Verdict(
            "falsified", make_case("E1.6"), 11, witness=(2, 1), index=11, lhs=-6, rhs=5
        )
        return RangeReport(case_id, (), p_max, checked=1, skipped=0, falsified=(bad,))

    monkeypatch.setattr(cli_mod, "range_report", fake_report)
    assert main(["verify", "--case", "E1.6", "--p-max", "20"]) == 1
    out = capsys.readouterr().out
    assert "falsified\t1" in out

    assert main(["verify", "--case", "E1.6", "--p-max", "20", "--json"]) == 1
    doc = json.loads(capsys.readouterr().out)
    jsonschema.validate(doc, REPORT_SCHEMA)
    assert doc["witnesses"] == [
        {"p": "11", "x": "2", "y": "1", "index": "11", "lhs": "-6", "rhs": "5"}
    ]


def test_overflow_exit_3(capsys, monkeypatch):
    import etaquad.cli as cli_mod

    def boom(*args, **kwargs):
        raise OverflowError("coefficient exceeds the signed 128-bit range")

    monkeypatch.setattr(cli_mod, "lambda_table", boom)
    assert main(["lambda", "--a", "1", "--b", "1", "--n-max", "4"]) == 3
    capsys.readouterr()
