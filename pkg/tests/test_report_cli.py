import json
from fractions import Fraction

import pytest

from openbooks.cli import main
from openbooks.d3 import OVERTWISTED_CERTIFIED
from openbooks.lens import LensSpace
from openbooks.report import InternalCheckError, run_family, run_sweep
from openbooks.serialize import canonical_dumps, canonical_line


def test_run_family_1_1():
    report = run_family(1, 1)
    assert report.lens == LensSpace(4, 3)
    assert report.order == 4
    assert report.verdict.status == OVERTWISTED_CERTIFIED
    assert report.verdict.d3_value == Fraction(1, 2)
    assert report.destabilization.conclusion == "NOT_DESTABILIZABLE"
    assert all(ok for _, ok in report.checks)
    assert dict(report.checks)["lens_chain_equals_formula"]


def test_run_family_2_1_lens():
    assert run_family(2, 1).lens == LensSpace(5, 4)


def test_run_family_usage_errors():
    with pytest.raises(ValueError):
        run_family(0, 1)


def test_report_json_roundtrip_is_byte_identical():
    report = run_family(2, 2)
    for verbose in (False, True):
        payload = report.to_jsonable(verbose=verbose)
        text = canonical_dumps(payload)
        assert canonical_dumps(json.loads(text)) == text
        line = canonical_line(payload)
        assert canonical_line(json.loads(line)) == line


def test_report_verbose_gates_move_log():
    report = run_family(1, 2)
    assert "moves" not in report.to_jsonable(verbose=False)["reduced_diagram"]
    verbose = report.to_jsonable(verbose=True)
    assert len(verbose["reduced_diagram"]["moves"]) == len(report.reduced.move_log)
    assert "tree" in verbose["certificate"]


def test_rationals_serialized_as_strings():
    payload = run_family(1, 1).to_jsonable()
    assert payload["verdict"]["d3"] == "1/2"
    assert payload["contact_diagram"]["components"][0]["coeff"] == "1/2"
    assert payload["chain"] == ["-2", "-2", "-2"]
    text = canonical_dumps(payload)
    assert "0.5" not in text


def test_run_sweep_consistency(tmp_path):
    out = tmp_path / "sweep.jsonl"
    summary = run_sweep(2, 2, str(out))
    assert summary["rows"] == 4
    assert summary["verdicts"] == {OVERTWISTED_CERTIFIED: 4}
    lines = out.read_text().splitlines()
    assert len(lines) == 4
    first = json.loads(lines[0])
    assert first == run_family(1, 1).to_jsonable()
    # deterministic h-major ordering
    hk = [(json.loads(l)["h"], json.loads(l)["k"]) for l in lines]
    assert hk == [(1, 1), (1, 2), (2, 1), (2, 2)]


def test_run_sweep_io_error():
    with pytest.raises(OSError, match="no/such/dir"):
        run_sweep(1, 1, "/no/such/dir/out.jsonl")


def test_run_sweep_bounds():
    with pytest.raises(ValueError):
        run_sweep(0, 5)


def test_cli_family_text_and_json(capsys):
    assert main(["family", "--h", "1", "--k", "1"]) == 0
    out = capsys.readouterr().out
    assert "L(4,3)" in out
    assert "OVERTWISTED_CERTIFIED" in out
    assert "NOT_DESTABILIZABLE" in out

    assert main(["family", "--h", "1", "--k", "1", "--json"]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["lens"] == {"p": 4, "q": 3}
    assert payload["verdict"]["d3"] == "1/2"


def test_cli_usage_exit_codes(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["family", "--h", "0", "--k", "1"])
    assert exc.value.code == 2
    with pytest.raises(SystemExit) as exc:
        main(["no-such-verb"])
    assert exc.value.code == 2
    capsys.readouterr()


def test_cli_internal_check_failure_exits_3(monkeypatch, capsys):
    import openbooks.report as report_mod

    monkeypatch.setattr(
        report_mod, "family_lens", lambda h, k: LensSpace(
            7, 1)
    )
    assert main(["family", "--h", "1", "--k", "1"]) == 3
    err = capsys.readouterr().err
    assert "lens_chain_equals_formula" in err


def test_cli_lens_verbs(capsys):
    assert main(["lens", "cf", "8/5", "--json"]) == 0
    assert json.loads(capsys.readouterr().out) == {
        "p": 8, "q": 5, "cf": [2, 3, 2], "chain": [-2, -3, -2]
    }
    assert main(["lens", "chain", "[-2,-3,-2]", "--json"]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert (payload["p"], payload["q"]) == (8, 5)
    assert main(["lens", "eq", "7,2", "7,4", "--json"]) == 0
    assert json.loads(capsys.readouterr().out)["equal"] is True
    assert main(["lens", "eq", "4,1", "4,3", "--json"]) == 0
    assert json.loads(capsys.readouterr().out)["equal"] is False
    assert main(["lens", "eq", "4,1", "4,3", "--unoriented", "--json"]) == 0
    assert json.loads(capsys.readouterr().out)["equal"] is True


def test_cli_census(capsys):
    assert main(["census", "4", "3", "--json"]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["count"] == 1
    assert payload["census"][0]["d3"] == "1/4"


def test_cli_d3_family(capsys):
    assert main(["d3", "family", "1", "1", "--json"]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["d3"] == "1/2"
    assert payload["Q"] == [[-1, -2, -2], [-2, -1, -2], [-2, -2, -4]]
    assert payload["rho"] == [-1, -1, -2]
    assert payload["sigma"] == -1
    assert payload["c_squared"] == "-1"
    assert payload["q_plus"] == 2
    assert payload["status"] == OVERTWISTED_CERTIFIED


def test_cli_rv_prove_and_check(tmp_path, capsys):
    cert_path = tmp_path / "cert.json"
    assert main(["rv", "prove", "--h", "2", "--k", "2", "--out", str(cert_path)]) == 0
    capsys.readouterr()
    assert main(["rv", "check", str(cert_path)]) == 0
    assert "valid" in capsys.readouterr().out

    data = json.loads(cert_path.read_text())
    data["goals"]["∂d"]["children"][1]["arc"] = "γ_ab"
    bad_path = tmp_path / "bad.json"
    bad_path.write_text(json.dumps(data))
    assert main(["rv", "check", str(bad_path)]) == 3
    assert "INVALID" in capsys.readouterr().err


def test_cli_kirby_replay(tmp_path, capsys):
    from openbooks.contact import presentation_for, smooth_diagram

    diagram_path = tmp_path / "diagram.json"
    script_path = tmp_path / "script.json"
    d = smooth_diagram(presentation_for(1, 1))
    diagram_path.write_text(canonical_dumps(d.to_jsonable()))
    script_path.write_text(json.dumps([
        {"move": "blow_up", "args": {"sign": 1, "star": {"K_e": 1, "K_a": 1}, "id": "p1"}},
        {"move": "blow_down", "args": {"vertex": "p1"}},
    ]))
    assert main([
        "kirby", "replay",
        "--diagram", str(diagram_path),
        "--script", str(script_path),
        "--json",
    ]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["h1_order"] == 4
    assert len(payload["moves"]) == 2

    script_path.write_text(json.dumps([
        {"move": "blow_down", "args": {"vertex": "K_e"}},
    ]))
    assert main([
        "kirby", "replay",
        "--diagram", str(diagram_path),
        "--script", str(script_path),
    ]) == 3  # illegal move: framing is not +-1
    assert "error" in capsys.readouterr().err


def test_cli_sweep(tmp_path, capsys):
    out = tmp_path / "rows.jsonl"
    assert main(["sweep", "--hmax", "1", "--kmax", "2", "--out", str(out), "--json"]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["rows"] == 2
    assert out.exists()


def test_internal_check_error_reports_first_violation(monkeypatch):
    import openbooks.report as report_mod

    monkeypatch.setattr(report_mod, "family_lens", lambda h, k: LensSpace(7, 1))
    with pytest.raises(InternalCheckError, match="lens_chain_equals_formula"):
        run_family(1, 1)
