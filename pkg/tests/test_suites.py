import pytest

from supersylow.cli import markdown_summary, resolve_seed
from supersylow.reports import TABULATED, VerificationReport
from supersylow.suites import (
    ZERO_FALSE, build_algebra, embed_counterexample, run_task, task_keys,
)


def test_task_keys_for_tables():
    keys = task_keys("sylow", 3)
    assert len(set(keys)) == len(keys)
    assert {"sl(1|2)", "psl(2|2)", "osp(3|2)", "pe(3)", "psq(3)"} <= set(keys)
    assert task_keys("weyl", 3, "psq", 2) == ["psq(4)", "psq(5)"]
    assert task_keys("counterexample", n=3) == ["3"]
    with pytest.raises(ValueError):
        task_keys("nosuch")


def test_zero_classification_keys_cover_both_sides():
    keys = task_keys("zero-classification")
    assert set(ZERO_FALSE) <= set(keys)
    assert any(k.startswith("sylow:") for k in keys)


@pytest.mark.parametrize("label,sd", [
    ("sl(1|1)^2", (2, 4)),
    ("sylow:sl(1|2)", (1, 2)),
    ("takiff0(sl2+sl3;d=[1,0])", (11, 12)),
])
def test_build_algebra_labels(label, sd):
    a = build_algebra(label)
    assert (a.dim_even, a.dim_odd) == sd


def test_counterexample_embedding_dims():
    assert embed_counterexample(2).sdim == (4, 5)


def test_run_task_dispatch():
    rep = run_task("ds", "rank-one", 0)
    assert rep.target == "ds:rank-one" and rep.ok


def test_tabulated_unknown_does_not_block_pass():
    rep = VerificationReport("x")
    rep.add("cited", None, source=TABULATED)
    assert rep.verdict == "pass"
    rep.add("open", None)
    assert rep.verdict == "unknown"
    rep.add("bad", False)
    assert rep.verdict == "fail"


def test_markdown_summary_columns():
    rep = VerificationReport("row")
    rep.add("dims", True, computed=(2, 2), table=(2, 2))
    md = markdown_summary("sylow", 5, [rep])
    assert "| row | dims | (2|2) | (2|2) | yes |" in md
    assert "seed: 5" in md and "1/1 targets pass" in md


def test_resolve_seed_default(monkeypatch):
    monkeypatch.delenv("SUPERSYLOW_SEED", raising=False)
    assert resolve_seed(None) == 0
    assert resolve_seed(9) == 9
