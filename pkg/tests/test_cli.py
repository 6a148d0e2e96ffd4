import json

import pytest

import krlab_cli
from krlab_cli import DEFAULT_MAX_N, main


def test_count_kr1_nine(capsys):
    assert main(["count", "--variant", "kr1", "--max-n", "9"]) == 0
    rows = capsys.readouterr().out.splitlines()
    assert rows[0] == "n,m,count"
    assert {"9,1,1", "9,2,4", "9,3,2"} <= set(rows)


def test_count_zero_is_the_empty_partition(capsys):
    assert main(["count", "--variant", "kr1", "--max-n", "0"]) == 0
    assert capsys.readouterr().out == "n,m,count\n0,0,1\n"


def test_count_json(capsys):
    assert main(["count", "--variant", "kr3_1", "--max-n", "5", "--format", "json"]) == 0
    obj = json.loads(capsys.readouterr().out)
    assert obj["variant"] == "kr3-1"
    assert obj["max_n"] == 5


def test_count_and_series_agree(capsys):
    assert main(["count", "--variant", "kr5", "--max-n", "20"]) == 0
    counted = capsys.readouterr().out
    assert main(["series", "--variant", "kr5", "--max-n", "20"]) == 0
    assert capsys.readouterr().out == counted


def test_series_at_x1(capsys):
    assert main(["series", "--variant", "kr1", "--max-n", "9", "--at-x1"]) == 0
    rows = capsys.readouterr().out.splitlines()
    assert rows[0] == "n,count"
    assert rows[-1] == "9,7"


def test_product_csv(capsys):
    assert main(["product", "--id", "1", "--max-n", "9"]) == 0
    rows = capsys.readouterr().out.splitlines()
    assert rows[-1] == "9,7"


def test_unknown_variant_exits_2(capsys):
    assert main(["count", "--variant", "kr9", "--max-n", "3"]) == 2
    assert "unknown variant" in capsys.readouterr().err


def test_usage_error_exits_2(capsys):
    assert main(["count"]) == 2


def test_bijection_decode_krb1_1(capsys):
    assert main(["bijection", "--variant", "krb11", "--parts", "1,6,7,9,11,14,14"]) == 0
    out = capsys.readouterr().out
    assert "μ=3+3" in out
    assert "η=6+9" in out
    assert "62 = 41 + 6 + 15" in out


def test_bijection_rejects_non_member(capsys):
    assert main(["bijection", "--variant", "kr1", "--parts", "2,3"]) == 2
    assert "sum to 5" in capsys.readouterr().err


def test_bijection_bad_literal_names_index(capsys):
    assert main(["bijection", "--variant", "kr1", "--parts", "4,2"]) == 2
    assert "part #1" in capsys.readouterr().err


def test_bijection_encode_with_trace_file(tmp_path, capsys):
    trace = tmp_path / "trace.jsonl"
    argv = [
        "bijection", "--variant", "kr1", "--encode", "--counts", "3,2",
        "--mu", "0,1,1", "--eta", "3,6", "--trace", str(trace), "--format", "json",
    ]
    assert main(argv) == 0
    obj = json.loads(capsys.readouterr().out)
    assert obj["partition"] == [1, 4, 5, 7, 9, 12, 12]
    assert obj["tuple"]["weight"] == 50
    events = [json.loads(s) for s in trace.read_text(encoding="utf-8").splitlines()]
    assert len(events) == 9
    assert events[-1]["parts"] == [1, 4, 5, 7, 9, 12, 12]


def test_verify_roundtrip_zero(capsys):
    assert main(["verify", "--suite", "roundtrip", "--max-n", "0"]) == 0
    captured = capsys.readouterr()
    report = json.loads(captured.out)
    assert report["status"] == "pass"
    assert len(report["checks"]) == 13
    assert all(c["truncation"] == 0 for c in report["checks"])
    assert "wall_time_s" not in report
    assert "13/13 passed" in captured.err


def test_verify_timing_and_out(tmp_path, capsys):
    out = tmp_path / "report.json"
    assert main(["verify", "--suite", "section5", "--max-n", "8", "--timing", "--out", str(out)]) == 0
    report = json.loads(out.read_text(encoding="utf-8"))
    assert report["suite"] == "section5"
    assert "wall_time_s" in report


def _broken_bijection(max_n):
    from krlab_bijection import BijectionIntegrityError

    raise BijectionIntegrityError(f"slot order lost at n={max_n}")


def _broken_decomposition(max_n):
    from krlab_gordon import DecompositionError

    raise DecompositionError("no cluster ends at 7")


def test_verify_failure_exits_1(monkeypatch, capsys):
    from krlab_genfun import CheckResult

    def plan(suite, max_n, *rest):
        return [krlab_cli.PlannedCheck("broken", max_n, CheckResult, ("broken", False, max_n))]

    monkeypatch.setenv("KRLAB_THREADS", "1")
    monkeypatch.setattr(krlab_cli, "suite_checks", plan)
    assert main(["verify", "--suite", "theorems", "--max-n", "3"]) == 1
    assert json.loads(capsys.readouterr().out)["status"] == "fail"


@pytest.mark.parametrize(
    "fn,kind",
    [(_broken_bijection, "BijectionIntegrityError"), (_broken_decomposition, "DecompositionError")],
)
def test_raising_check_becomes_a_failed_result(monkeypatch, capsys, fn, kind):
    from krlab_genfun import CheckResult

    def plan(suite, max_n, *rest):
        return [
            krlab_cli.PlannedCheck("fine", max_n, CheckResult, ("fine", True, max_n)),
            krlab_cli.PlannedCheck("raises", max_n, fn, (max_n,)),
        ]

    monkeypatch.setenv("KRLAB_THREADS", "1")
    monkeypatch.setattr(krlab_cli, "suite_checks", plan)
    assert main(["verify", "--suite", "roundtrip", "--max-n", "5"]) == 1
    captured = capsys.readouterr()
    report = json.loads(captured.out)
    assert report["status"] == "fail"
    assert [c["status"] for c in report["checks"]] == ["pass", "fail"]
    bad = report["checks"][1]
    assert bad["name"] == "raises"
    assert bad["truncation"] == 5
    assert bad["detail"].startswith(f"{kind}: ")
    assert "FAIL  raises" in captured.err


def test_planned_check_catches_exceptions():
    r = krlab_cli.PlannedCheck("raises", 7, _broken_bijection, (7,)).run()
    assert not r.ok
    assert r.truncation == 7
    assert r.detail == "BijectionIntegrityError: slot order lost at n=7"


def test_worker_processes_match_in_process_run():
    one = krlab_cli.run_suite("section5", 8, workers=1)
    two = krlab_cli.run_suite("section5", 8, workers=2)
    assert [c.to_json() for c in one.checks] == [c.to_json() for c in two.checks]
    assert two.ok


@pytest.mark.parametrize("value", ["0", "-2", "many"])
def test_bad_thread_setting(monkeypatch, capsys, value):
    monkeypatch.setenv("KRLAB_THREADS", value)
    assert main(["verify", "--suite", "roundtrip", "--max-n", "0"]) == 2
    assert "KRLAB_THREADS" in capsys.readouterr().err


def test_defaults():
    assert DEFAULT_MAX_N == {
        "theorems": 35,
        "conjectures": 60,
        "roundtrip": 24,
        "section5": 30,
        "properties": 18,
        "minimality": 24,
    }


def test_properties_minimality_runs_to_24():
    checks = krlab_cli.suite_checks("properties", 18, DEFAULT_MAX_N["minimality"])
    minimality = [c for c in checks if c.name.startswith("base minimality")]
    others = [c for c in checks if c.name.startswith(("marking", "shift"))]
    assert len(minimality) == 13
    assert {c.truncation for c in minimality} == {24}
    assert {c.args[-1] for c in minimality} == {24}
    assert {c.truncation for c in others} == {18}


def test_max_n_override_applies_to_minimality():
    checks = krlab_cli.suite_checks("properties", 6)
    assert {c.truncation for c in checks if c.name.startswith("base minimality")} == {6}


def test_all_suites_at_default_truncations(capsys):
    report = krlab_cli.run_suite("all", workers=krlab_cli._workers())
    failed = [(c.name, c.detail) for c in report.failures]
    assert report.ok, failed

    def truncations(prefix):
        return {c.truncation for c in report.checks if c.name.startswith(prefix)}

    assert truncations("theorem kr1:") == {35}
    assert truncations("conj1: product") == {60}
    assert truncations("conj1: counts") == {35}
    assert truncations("roundtrip ") == {24}
    assert truncations("marking properties ") == {18}
    assert truncations("base minimality ") == {24}


def test_bijection_stdout_trace_rejects_json(capsys):
    argv = ["bijection", "--variant", "krb1-1", "--parts", "1,6,7,9,11,14,14", "--trace", "-", "--format", "json"]
    assert main(argv) == 2
    captured = capsys.readouterr()
    assert captured.out == ""
    assert "--trace -" in captured.err


def test_bijection_stdout_trace_is_jsonl(capsys):
    argv = ["bijection", "--variant", "krb1-1", "--parts", "1,6,7,9,11,14,14", "--trace", "-"]
    assert main(argv) == 0
    lines = capsys.readouterr().out.splitlines()
    events = [json.loads(s) for s in lines if s.startswith("{")]
    assert len(events) == 13
    assert events[0]["parts"] == [1, 5, 5, 9, 11, 14, 14]


def test_help_lists_aliases(capsys):
    assert main(["--help"]) == 0
    out = capsys.readouterr().out
    for alias in ("kr3-1", "krb4-2", "krc2-1", "cong6"):
        assert alias in out


def test_render_trace_event():
    from tools.render_trace import render_event

    ev = {"step": 1, "kind": "move", "rank": 1, "weight_delta": 1, "weight": 4, "parts": [2, 1, 1]}
    assert render_event(ev) == "#1 move (rank 1, +1) |λ|=4\n3 |   2\n2 | 1\n1 | 1"
