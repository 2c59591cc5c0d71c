import math

import pytest

from supersylow.families import construct, parse_family, sylow_candidate
from supersylow.liesuper import coords_of_matrix, derived_subalgebra, restrict, subalgebra, whole
from supersylow.structure import is_zero_superalgebra
from supersylow.sylow import (
    ber_character, expected_weyl_orders, find_generic, is_sylow_by_table,
    normalizer_template, splitting_necessary, sylow_template, table_rows,
    third_sylow_count, verify_normalizer_row, verify_sylow_row, weyl_data,
)
from conftest import alg, basis_vec

ROWS = ["sl(1|2)", "sl(2|3)", "osp(3|2)", "osp(2|4)", "psl(2|2)", "pe(3)", "spe(4)", "psq(4)"]


def span_of(a, names):
    return subalgebra(a, [basis_vec(a, n) for n in names])


def test_ber_character_examples():
    a = alg("gl(1|1)")
    assert ber_character(a, derived_subalgebra(a)).trivial
    bor = span_of(a, ["E1,1", "E2,2", "E1,2"])
    assert [int(x) for x in ber_character(a, bor).functional] == [1, -1]
    assert ber_character(a, whole(a)).functional == (0, 0)


@pytest.mark.parametrize("name", ROWS)
def test_ber_vanishes_on_derived_even_part(name):
    spec = parse_family(name)
    g, k = construct(spec), sylow_candidate(spec)
    kk = restrict(k)
    d = derived_subalgebra(kk)
    basis = k.even_basis() + k.odd_basis()
    vecs = []
    for v in d.even_basis():
        w = [0] * g.dim
        for c, b in zip(v, basis):
            if c:
                w = [x + c * y for x, y in zip(w, b)]
        vecs.append(w)
    if vecs:
        sub = subalgebra(g, vecs)
        assert ber_character(g, sub).trivial


def test_splitting_necessary_examples():
    spec = parse_family("gl(2|2)")
    g = construct(spec)
    r = splitting_necessary(g, sylow_candidate(spec), seed=3)
    assert r["ber_trivial"] and r["hom_orbit_ok"] is True
    a = alg("gl(1|1)")
    assert not splitting_necessary(a, span_of(a, ["E1,1", "E2,2", "E1,2"]))["ber_trivial"]
    w = splitting_necessary(a, whole(a))
    assert w["ber_trivial"] and w["hom_orbit_ok"] is True
    b = alg("osp(1|2)")
    assert splitting_necessary(b, whole(b))["hom_orbit_ok"] is None


@pytest.mark.parametrize("name", ROWS)
def test_sylow_rows_pass(name):
    assert verify_sylow_row(name, seed=1).verdict == "pass"


@pytest.mark.parametrize("name", ROWS)
def test_normalizer_rows_pass(name):
    assert verify_normalizer_row(name, seed=1).verdict == "pass"


@pytest.mark.parametrize("name,sd", [("sl(1|2)", (2, 2)), ("psq(4)", (7, 7)), ("spe(4)", (7, 8)),
                                     ("osp(5|2)", (5, 2)), ("psl(2|2)", (2, 4))])
def test_normalizer_dims(name, sd):
    assert normalizer_template(parse_family(name)).sdim == sd


@pytest.mark.parametrize("name", ["sl(2|3)", "psq(3)", "spe(4)"])
def test_orderings_agree(name):
    a = verify_sylow_row(name, ordering="antidiagonal")
    b = verify_sylow_row(name, ordering="straight")
    assert a.to_dict()["verdict"] == b.to_dict()["verdict"]
    for key in ("zero_certificate", "ber_trivial", "table_dims"):
        assert a.check(key).passed == b.check(key).passed


def test_find_generic_gl11():
    g = alg("gl(1|1)")
    o = sylow_candidate(parse_family("gl(1|1)"))
    x = find_generic(g, o, seed=2)
    y = g.bracket(x, x)
    assert y[g.names.index("E1,1")] == y[g.names.index("E2,2")] != 0


def fact(n):
    return math.factorial(n)


@pytest.mark.parametrize("n", [2, 3, 4, 5, 6])
def test_psq_third_sylow_count_matches_group_orders(n):
    k = n // 2
    wd = weyl_data(f"psq({n})")
    assert wd.order_g == fact(n)
    assert wd.order_n == 2 ** k * fact(k)
    assert third_sylow_count(wd) == fact(n) // (2 ** k * fact(k))


@pytest.mark.parametrize("name", ["sl(1|2)", "sl(2|3)", "sl(2|4)", "psl(3|3)", "osp(3|2)",
                                  "osp(5|2)", "osp(2|4)", "osp(4|4)", "osp(3|4)", "pe(3)",
                                  "spe(4)", "spe(5)"])
def test_non_queer_count_is_one(name):
    wd = weyl_data(name)
    assert third_sylow_count(wd) == 1
    assert (wd.order_g, wd.order_n) == expected_weyl_orders(parse_family(name))


def test_weyl_examples():
    assert weyl_data("sl(2|3)").order_g == 2
    assert weyl_data("osp(5|2)").order_g == 2
    assert weyl_data("osp(4|4)").order_g == 4


def test_counterexample_not_sylow_but_zero():
    g = alg("gl(2|2)")
    c = alg("counterexample(2)")
    k = subalgebra(g, [coords_of_matrix(g, m) for m in c.realization.matrices])
    assert k.sdim == (4, 5)
    assert is_zero_superalgebra(restrict(k)).verdict
    assert str(is_sylow_by_table("gl(2|2)", k)) == "not_sylow(dim_mismatch)"


def test_table_oracle_other_cases():
    assert str(is_sylow_by_table("gl(1|1)", sylow_candidate(parse_family("gl(1|1)")))) == "sylow"
    g = alg("sl(1|2)")
    b = span_of(g, ["H1", "E1,2", "E1,3"])
    assert str(is_sylow_by_table("sl(1|2)", b)) == "not_sylow(ber_nontrivial)"


def test_templates_are_consistent():
    assert sylow_template(parse_family("psq(5)")).sdim == (8, 8)
    assert sylow_template(parse_family("pe(3)")).sdim == (3, 5)
    assert sylow_template(parse_family("psl(3|3)")).sdim == (2, 6)


def test_table_rows_listing():
    rows = [r.label() for r in table_rows(3)]
    assert "sl(1|2)" in rows and "psq(3)" in rows and "osp(3|2)" in rows
    assert all(r.startswith("psq") for r in (s.label() for s in table_rows(3, "psq")))
