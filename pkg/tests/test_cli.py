import json
from pathlib import Path

import pytest

from supersylow.cli import EXIT_FAIL, EXIT_OK, EXIT_USAGE, main

GOLDEN = Path(__file__).parent / "golden"


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


@pytest.mark.parametrize("argv,golden", [
    (["verify", "weyl", "--family", "psq", "--n", "2"], "weyl_psq_n2.json"),
    (["verify", "weyl", "--family", "psq", "--n", "2", "--format", "md"], "weyl_psq_n2.md"),
    (["verify", "counterexample", "--n", "2", "--seed", "0"], "counterexample_n2.json"),
    (["export", "sl(1|1)"], "sl11.json"),
])
def test_golden_output(capsys, monkeypatch, argv, golden):
    monkeypatch.delenv("SUPERSYLOW_SEED", raising=False)
    code, out, _ = run(capsys, *argv)
    assert code == EXIT_OK
    assert out == (GOLDEN / golden).read_text(encoding="utf-8")


def test_weyl_report_contains_count_three(capsys):
    _, out, _ = run(capsys, "verify", "weyl", "--family", "psq", "--n", "2")
    reports = {r["target"]: r for r in json.loads(out)["reports"]}
    checks = {c["name"]: c for c in reports["weyl:psq(4)"]["checks"]}
    assert checks["third_sylow_count"]["details"]["computed"] == 3


def test_counterexample_report_content(capsys):
    _, out, _ = run(capsys, "verify", "counterexample", "--n", "2")
    (rep,) = json.loads(out)["reports"]
    checks = {c["name"]: c for c in rep["checks"]}
    assert checks["zero_certificate"]["pass"] is True
    assert checks["table_verdict"]["details"]["verdict"] == "not_sylow(dim_mismatch)"
    assert checks["table_verdict"]["details"]["dims"] == [4, 5]


def test_out_dir_and_jobs_are_byte_stable(tmp_path, capsys):
    a, b = tmp_path / "a", tmp_path / "b"
    ca, outa, _ = run(capsys, "verify", "normalizers", "--family", "sl", "--out", str(a))
    cb, outb, _ = run(capsys, "verify", "normalizers", "--family", "sl", "--jobs", "3", "--out", str(b))
    assert ca == cb == EXIT_OK and outa == outb
    names = sorted(p.name for p in a.iterdir())
    assert names == sorted(p.name for p in b.iterdir())
    assert "summary.md" in names and len(names) > 2
    for n in names:
        assert (a / n).read_bytes() == (b / n).read_bytes()


def test_timing_flag_adds_runtime(capsys):
    _, out, _ = run(capsys, "verify", "ds", "--timing")
    assert all("runtime_ms" in r for r in json.loads(out)["reports"])
    _, out, _ = run(capsys, "verify", "ds")
    assert not any("runtime_ms" in r for r in json.loads(out)["reports"])


def test_seed_env_and_flag_precedence(capsys, monkeypatch):
    monkeypatch.setenv("SUPERSYLOW_SEED", "11")
    _, out, _ = run(capsys, "verify", "counterexample")
    assert json.loads(out)["seed"] == 11
    _, out, _ = run(capsys, "verify", "counterexample", "--seed", "4")
    assert json.loads(out)["seed"] == 4
    monkeypatch.setenv("SUPERSYLOW_SEED", "abc")
    code, _, err = run(capsys, "verify", "counterexample")
    assert code == EXIT_USAGE and "SUPERSYLOW_SEED" in err


def test_failure_exit_code(capsys):
    code, out, _ = run(capsys, "verify", "sylow", "--family", "psq", "--max-rank", "2")
    assert code == EXIT_FAIL
    assert json.loads(out)["reports"][0]["verdict"] == "fail"


def test_usage_errors(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["verify", "nosuchtable"])
    assert exc.value.code == EXIT_USAGE
    capsys.readouterr()
    code, _, err = run(capsys, "verify", "sylow", "--family", "nope")
    assert code == EXIT_USAGE and err
    code, _, err = run(capsys, "export", "gl(0|0)")
    assert code == EXIT_USAGE


def test_analyze_exported_algebras(tmp_path, capsys):
    for name, verdict, reason in [("sl(1|1)", True, None),
                                  ("osp(1|2)", False, "simple_ideal_present")]:
        f = tmp_path / "a.json"
        assert main(["export", name, "--out", str(f)]) == EXIT_OK
        code, out, _ = run(capsys, "analyze", str(f), "--roots")
        assert code == EXIT_OK
        d = json.loads(out)
        assert d["zero_certificate"]["verdict"] is verdict
        assert d["zero_certificate"]["failure_reason"] == reason
        assert "root_decomposition" in d


def test_analyze_schema_errors(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text('{"dim_even": 1,\n  "dim_odd": }')
    code, _, err = run(capsys, "analyze", str(bad))
    assert code == EXIT_USAGE and "line 2" in err
    bad.write_text('{"dim_even": 1}')
    code, _, err = run(capsys, "analyze", str(bad))
    assert code == EXIT_USAGE and "dim_odd" in err
    code, _, err = run(capsys, "analyze", str(tmp_path / "missing.json"))
    assert code == EXIT_USAGE and "I/O error" in err


def test_analyze_rejects_jacobi_violation(tmp_path, capsys):
    f = tmp_path / "a.json"
    main(["export", "sl(1|2)", "--out", str(f)])
    capsys.readouterr()
    data = json.loads(f.read_text())
    data["brackets"][0][2][0][1] = "7"
    f.write_text(json.dumps(data))
    code, _, err = run(capsys, "analyze", str(f))
    assert code == EXIT_USAGE and "super-Jacobi" in err
