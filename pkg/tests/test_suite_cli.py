import json

import pytest

from qkernel.cli import main
from qkernel.suite import SCHEMA, run_suite


def test_filtered_suite_passes():
    report = run_suite("equitable.*")
    assert report.records and report.passed
    assert all(r.id.startswith("equitable.") for r in report.records)
    assert run_suite("hopf.*").passed


def test_report_ordering_and_determinism(tmp_path):
    a = run_suite("[ct]*")
    b = run_suite("[ct]*")
    ids = [r.id for r in a.records]
    assert ids == sorted(ids) and len(ids) == len(set(ids))
    assert a.to_json(timings=False) == b.to_json(timings=False)
    out = tmp_path / "report.json"
    run_suite("tilde.*", out)
    data = json.loads(out.read_text())
    assert data["schema"] == SCHEMA
    assert {"id", "anchor", "status", "residual", "wall_time"} <= set(data["records"][0])


def test_corrupted_fixture_fails():
    report = run_suite("fixture.*", inject_corrupted=True)
    [rec] = report.records
    assert rec.status == "fail" and rec.residual
    assert report.exit_code != 0


def test_unwritable_output(tmp_path):
    with pytest.raises(OSError):
        run_suite("tilde.kk_inv", tmp_path / "missing" / "r.json")


def test_cli_normalize(capsys):
    assert main(["normalize", "P*P"]) == 0
    assert capsys.readouterr().out.strip() == "1"
    assert main(["normalize", "x*y", "--alg", "slq_equitable"]) == 0


def test_cli_check(capsys):
    assert main(["check", "{A+, A-}", "==", "(K - K^-1)/(s - s^-1)"]) == 0
    assert main(["check", "A+*A- == A-*A+"]) == 1
    assert main(["check", "A+"]) == 2


def test_cli_rep(capsys):
    assert main(["rep", "--N", "2", "--e", "-1", "--matrix", "P", "--eval-s", "3"]) == 0
    data = json.loads(capsys.readouterr().out)
    assert data["matrix"] == [["-1", "0", "0"], ["0", "1", "0"], ["0", "0", "-1"]]
    assert main(["rep", "--N", "3", "--matrix", "K"]) == 2


def test_cli_suite_exit_codes(tmp_path, capsys):
    assert main(["suite", "--filter", "tilde.*", "--json", str(tmp_path / "r.json")]) == 0
    assert main(["suite", "--filter", "fixture.*", "--inject-corrupted"]) == 1


def test_cli_limits_and_confluence(capsys):
    assert main(["limits"]) == 0
    assert main(["confluence", "--alg", "qbi"]) == 0
    assert "not joinable" in capsys.readouterr().out


def test_cli_errors(capsys):
    assert main(["normalize", "A+ * ("]) == 2
    assert main(["normalize", "Foo"]) == 2
    assert main(["normalize", "1", "--alg", "nope"]) == 2


def test_step_limit_env(monkeypatch, capsys):
    monkeypatch.setenv("QKERNEL_STEP_LIMIT", "1")
    assert main(["normalize", "(P*A-*K)^3"]) == 2
