"""Verification suites shared by the command line and the test-suite.

Each task is identified by ``(suite, key)`` strings so that rows can be
shipped to worker processes and reassembled in a fixed order.
"""

from __future__ import annotations

import random

from .dsrep import adjoint, ds, dual, sdim, standard, tensor, trivial
from .families import construct, parse_family, sylow_candidate
from .liesuper import (
    SuperAlgebra, Subalgebra, check_jacobi, coords_of_matrix, derived_subalgebra,
    restrict, subalgebra,
)
from .exactla import Subspace
from .relcoh import ber_module, ext1, restriction_injective_ext1
from .reports import TABULATED, VerificationReport
from .structure import homological_cone_sample, is_zero_superalgebra
from .sylow import (
    is_sylow_by_table, table_rows, verify_normalizer_row, verify_sylow_row,
    verify_weyl_row,
)

ZERO_TRUE = ["sl(1|1)", "sl(1|1)^2", "sl(1|1)^3", "psq(2)", "spe(2)^2", "counterexample(2)",
             "takiff0(sl2)", "takiff0(sl2+sl3;d=[1,-1])"]
ZERO_FALSE = ["gl(1|1)", "osp(1|2)", "psq(3)", "takiff0(sl2+sl3;d=[1,0])"]
ACCEPTANCE_ROWS = ["sl(1|2)", "sl(2|3)", "sl(2|4)", "psl(2|2)", "psl(3|3)", "osp(3|2)",
                   "osp(5|2)", "osp(2|4)", "osp(4|4)", "pe(2)", "pe(3)", "spe(4)", "spe(5)",
                   "psq(2)", "psq(3)", "psq(4)", "psq(5)"]
SUITES = ("sylow", "normalizers", "weyl", "zero-classification", "counterexample", "ds", "ext")


def build_algebra(label: str) -> SuperAlgebra:
    """Family labels plus ``name^k`` powers and Sylow candidates ``sylow:row``."""
    from .liesuper import direct_sum
    if label.startswith("sylow:"):
        return restrict(sylow_candidate(parse_family(label[6:])))
    if "^" in label and not label.startswith("takiff"):
        base, k = label.rsplit("^", 1)
        return direct_sum(*[construct(parse_family(base)) for _ in range(int(k))])
    if label == "takiff0(sl2+sl3;d=[1,0])":
        spec = parse_family(label)
        from dataclasses import replace
        return construct(replace(spec, require_surjective=False))
    return construct(parse_family(label))


# ---------------------------------------------------------------------------
# task keys
# ---------------------------------------------------------------------------

def task_keys(suite: str, max_rank: int = 3, family: str | None = None,
              n: int | None = None) -> list[str]:
    if suite in ("sylow", "normalizers"):
        rows = [r.label() for r in table_rows(max_rank, family)]
        return rows
    if suite == "weyl":
        rows = table_rows(max_rank if n is None else max(max_rank, 2 * n + 1), family)
        if n is not None:
            rows = [r for r in rows if _table_index(r) == n]
        return [r.label() for r in rows]
    if suite == "zero-classification":
        return ZERO_TRUE + [f"sylow:{r}" for r in ACCEPTANCE_ROWS if r != "psq(2)"] + ZERO_FALSE
    if suite == "counterexample":
        return [str(n if n is not None else 2)]
    if suite == "ds":
        return ["sdim-invariance", "rank-one"]
    if suite == "ext":
        return ["semisimple-criterion", "splitting-by-ext"]
    raise ValueError(f"unknown suite {suite!r}")


def _table_index(spec) -> int:
    """The table's ``n``: half the size for queer and periplectic rows,
    the defect-relevant smaller parameter otherwise."""
    if spec.family in ("psq", "pe", "spe"):
        return spec.params[0] // 2
    if spec.family == "osp":
        return spec.params[1] // 2
    return max(spec.params)


def run_task(suite: str, key: str, seed: int) -> VerificationReport:
    if suite == "sylow":
        return verify_sylow_row(key, seed)
    if suite == "normalizers":
        return verify_normalizer_row(key, seed)
    if suite == "weyl":
        return verify_weyl_row(key, seed)
    if suite == "zero-classification":
        return zero_classification_row(key, seed)
    if suite == "counterexample":
        return counterexample_report(int(key), seed)
    if suite == "ds":
        return ds_invariance_report(seed) if key == "sdim-invariance" else ds_rank_one_report(seed)
    if suite == "ext":
        return semisimple_criterion_report(seed) if key == "semisimple-criterion" \
            else splitting_by_ext_report(seed)
    raise ValueError(f"unknown suite {suite!r}")


# ---------------------------------------------------------------------------
# individual suites
# ---------------------------------------------------------------------------

def zero_classification_row(label: str, seed: int = 0) -> VerificationReport:
    expected = label not in ZERO_FALSE
    a = build_algebra(label)
    cert = is_zero_superalgebra(a, seed)
    rep = VerificationReport(f"zero:{label}", seed=seed)
    rep.add("jacobi", check_jacobi(a) == [])
    rep.add("verdict", cert.verdict == expected, expected=expected, **cert.to_dict())
    return rep


def embed_counterexample(n: int) -> Subalgebra:
    g = construct(parse_family(f"gl({n}|{n})"))
    c = construct(parse_family(f"counterexample({n})"))
    return subalgebra(g, [coords_of_matrix(g, m) for m in c.realization.matrices])


def counterexample_report(n: int = 2, seed: int = 0) -> VerificationReport:
    k = embed_counterexample(n)
    rep = VerificationReport(f"counterexample:{n}", seed=seed)
    cert = is_zero_superalgebra(restrict(k), seed)
    rep.add("zero_certificate", cert.verdict, **cert.to_dict())
    verdict = is_sylow_by_table(f"gl({n}|{n})", k, seed)
    rep.add("table_verdict", str(verdict) == "not_sylow(dim_mismatch)", source=TABULATED,
            verdict=str(verdict), dims=list(k.sdim))
    return rep


def _square_zero_odd(a: SuperAlgebra, k: Subalgebra) -> list[list]:
    """A greedy set of odd vectors of ``k`` with all pairwise brackets zero."""
    chosen: list[list] = []
    for u in k.odd_basis():
        if any(a.bracket(u, u)):
            continue
        if all(not any(a.bracket(u, v)) for v in chosen):
            chosen.append(u)
    return chosen


DS_ALGEBRAS = ["gl(1|1)", "gl(2|1)", "gl(2|2)", "sl(1|2)", "osp(3|2)", "osp(2|2)", "pe(2)", "q(2)"]


def ds_invariance_report(seed: int = 0, triples: int = 100) -> VerificationReport:
    rng = random.Random(seed)
    rep = VerificationReport("ds:sdim-invariance", seed=seed)
    cache: dict = {}
    mismatches = []
    for t in range(triples):
        name = DS_ALGEBRAS[rng.randrange(len(DS_ALGEBRAS))]
        if name not in cache:
            a = construct(parse_family(name))
            k = sylow_candidate(parse_family(name)) if name != "q(2)" else None
            gens = _square_zero_odd(a, k) if k is not None else \
                [a.basis_vector(i) for i in range(a.dim_even, a.dim)
                 if not any(a.bracket(a.basis_vector(i), a.basis_vector(i)))][:1]
            v = standard(a)
            mods = [("trivial", trivial(a)), ("standard", v), ("dual", dual(v)),
                    ("adjoint", adjoint(a)), ("standard*dual", tensor(v, dual(v)))]
            cache[name] = (a, gens, mods)
        a, gens, mods = cache[name]
        mname, mod = mods[rng.randrange(len(mods))]
        x = [0] * a.dim
        while not any(x):
            for u in gens:
                c = rng.randint(-5, 5)
                x = [p + c * q for p, q in zip(x, u)]
        r = ds(mod, x)
        if r.sdim() != sdim(mod):
            mismatches.append({"algebra": name, "module": mname, "x": x})
    rep.add("sdim_preserved", not mismatches, triples=triples, mismatches=mismatches)
    return rep


def ds_rank_one_report(seed: int = 0) -> VerificationReport:
    rep = VerificationReport("ds:rank-one", seed=seed)
    for m, n in [(1, 1), (2, 2), (2, 3)]:
        a = construct(parse_family(f"gl({m}|{n})"))
        x = [0] * a.dim
        x[a.names.index(f"E1,{m + 1}")] = 1
        out = ds(standard(a), x).output_dims
        rep.add(f"gl({m}|{n})", out == (m - 1, n - 1), computed=list(out), expected=[m - 1, n - 1])
    return rep


def semisimple_criterion_report(seed: int = 0) -> VerificationReport:
    rep = VerificationReport("ext:semisimple-criterion", seed=seed)
    b = construct(parse_family("osp(1|2)"))
    sample = homological_cone_sample(b, 1000, seed)
    rep.add("osp(1|2) homological fraction", sample["homological"] == 0, **sample)
    e1 = ext1(b, trivial(b), standard(b))
    rep.add("osp(1|2) ext1(C, standard)", e1 == (0, 0), computed=list(e1))
    e2 = ext1(b, standard(b), standard(b))
    rep.add("osp(1|2) ext1(standard, standard)", e2 == (0, 0), computed=list(e2))
    s = construct(parse_family("sl(1|1)"))
    e3 = ext1(s, trivial(s), adjoint(s))
    rep.add("sl(1|1) ext1(C, adjoint)", e3 != (0, 0), computed=list(e3))
    return rep


def probe_modules(g: SuperAlgebra) -> list:
    v = standard(g)
    return [("trivial", trivial(g)), ("standard", v), ("dual", dual(v)),
            ("ber", ber_module(g)), ("ber^-1", ber_module(g, -1))]


def splitting_by_ext_report(seed: int = 0) -> VerificationReport:
    rep = VerificationReport("ext:splitting-by-ext", seed=seed)
    for name in ("gl(1|1)", "gl(1|2)"):
        g = construct(parse_family(name))
        k = sylow_candidate(parse_family(name))
        probes = probe_modules(g)
        failures, nonzero = [], 0
        for mn, m in probes:
            for nn, n in probes:
                if sum(ext1(g, m, n)):
                    nonzero += 1
                if not restriction_injective_ext1(g, k, m, n):
                    failures.append([mn, nn])
        rep.add(f"{name} restriction to Sylow injective", not failures,
                probes=[p for p, _ in probes], nonzero_ext_pairs=nonzero, failures=failures)
    g = construct(parse_family("gl(1|1)"))
    torus = Subalgebra(g, Subspace.span([g.basis_vector(0), g.basis_vector(1)], g.dim))
    m, n = trivial(g), ber_module(g)
    e = ext1(g, m, n)
    rep.add("gl(1|1) restriction to even torus not injective",
            e != (0, 0) and not restriction_injective_ext1(g, torus, m, n),
            pair=["trivial", "ber"], ext1=list(e))
    return rep
