import random

import pytest

from supersylow.families import parse_family, sylow_candidate
from supersylow.liesuper import center, quotient, restrict
from supersylow.structure import (
    StructureError, cartan_from_element, fingerprint, homological_cone_sample,
    is_homological, is_takiff, is_takiff0, is_zero_superalgebra, minimal_ideals,
    neat_witness, nilcone_weight_member, odd_abelian_radical, random_vector,
    odd_basis, root_decomposition, rootzero_report,
)
from conftest import alg, basis_vec


def combo(a, **coeffs):
    v = [0] * a.dim
    for name, c in coeffs.items():
        v[a.names.index(name.replace("_", ",").replace("~", "."))] = c
    return v


@pytest.mark.parametrize("name,frac", [
    ("gl(1|1)", "1"), ("gl(2|2)", "1"), ("sl(1|2)", "1"), ("osp(1|2)", "0"),
])
def test_homological_cone_fraction(name, frac):
    assert homological_cone_sample(alg(name), 300, seed=5)["fraction_homological"] == frac


def test_homological_requires_odd():
    a = alg("gl(1|1)")
    with pytest.raises(StructureError):
        is_homological(a, basis_vec(a, "E1,1"))
    assert is_homological(a, basis_vec(a, "E1,2"))


def test_neat_witness_osp12_and_none_for_square_zero():
    b = alg("osp(1|2)")
    for i in range(b.dim_even, b.dim):
        k = neat_witness(b, b.basis_vector(i))
        assert k is not None and k.sdim == (3, 2)
    a = alg("gl(1|1)")
    assert neat_witness(a, basis_vec(a, "E1,2")) is None
    # [x,x] semisimple and nonzero: cannot sit in osp(1|2)
    x = [p + q for p, q in zip(basis_vec(a, "E1,2"), basis_vec(a, "E2,1"))]
    assert neat_witness(a, x) is None


def test_neat_witness_inside_bigger_algebra():
    a = alg("osp(3|2)")
    found = [neat_witness(a, a.basis_vector(i)) for i in range(a.dim_even, a.dim)]
    assert any(k is not None for k in found)


def test_cartan_and_roots_takiff0():
    a = alg("takiff0(sl2)")
    x = combo(a, D1=1, **{"H1~xi": 1})
    h = cartan_from_element(a, x)
    assert h.sdim == (1, 2)
    rd = root_decomposition(a, h)
    assert sorted(int(r[0]) for r in rd.roots) == [-2, 2]
    rep = rootzero_report(rd)
    assert rep["cartan_is_zero_weight_space"] and rep["even_roots_equal_all_roots"]
    assert rep["odd_square_fills_even"] and rep["root_spaces_irreducible"]
    assert rep["rank_one_ok"] and rep["root_space_sdims"] == [(1, 1)]


@pytest.mark.parametrize("name,odd", [("pq(2)", "B1_1"), ("spe(2)", None)])
def test_cartan_of_pq2_and_spe2_is_one_two(name, odd):
    a = alg(name)
    if odd:
        x = combo(a, **{odd: 1})
    else:
        x = [p + q for p, q in zip(a.basis_vector(a.dim - 1), a.basis_vector(a.dim - 3))]
    assert cartan_from_element(a, x).sdim == (1, 2)


def test_nilcone_weight_membership():
    a = alg("takiff0(sl2)")
    rd = root_decomposition(a, cartan_from_element(a, combo(a, D1=1, **{"H1~xi": 1})))
    e = combo(a, **{"E1_2~xi": 1})
    f = combo(a, **{"E2_1~xi": 1})
    assert nilcone_weight_member(a, rd, e)
    assert not nilcone_weight_member(a, rd, [p + q for p, q in zip(e, f)])
    assert nilcone_weight_member(a, rd, [0] * a.dim)


def test_takiff_recognition():
    assert is_takiff(alg("takiff(sl2*2)"))
    assert is_takiff(alg("psq(2)"))
    assert not is_takiff(alg("pq(2)"))
    assert is_takiff0(alg("takiff0(sl2)"))
    assert is_takiff0(alg("pq(2)"))
    assert is_takiff0(alg("spe(2)"))
    assert not is_takiff0(alg("psq(2)"))
    assert not is_takiff0(alg("osp(1|2)"))


def test_odd_abelian_radical():
    assert odd_abelian_radical(alg("takiff0(sl2)")).dim == 0
    a = alg("sl(1|1)")
    assert odd_abelian_radical(a).dim == 0
    assert odd_abelian_radical(quotient(a, center(a))).dim == 2


def test_minimal_ideals_of_direct_sum():
    a = alg("sl(3)")
    assert [m.dim for m in minimal_ideals(a)] == [8]
    b = restrict(sylow_candidate(parse_family("spe(4)")))
    kinds = sorted(m.sdim for m in minimal_ideals(b))
    assert kinds == [(3, 3), (3, 3)]


@pytest.mark.parametrize("name,verdict,reason", [
    ("sl(1|1)", True, None),
    ("counterexample(2)", True, None),
    ("takiff0(sl2)", True, None),
    ("takiff0(sl2+sl3;d=[1,-1])", True, None),
    ("pq(2)", True, None),
    ("gl(1|1)", False, "not_oddly_generated"),
    ("osp(1|2)", False, "simple_ideal_present"),
    ("psq(3)", False, "simple_ideal_present"),
])
def test_zero_superalgebra_verdicts(name, verdict, reason):
    c = is_zero_superalgebra(alg(name))
    assert c.verdict is verdict and c.failure_reason == reason


def test_zero_certificate_parts_counterexample():
    c = is_zero_superalgebra(alg("counterexample(2)")).to_dict()
    assert c["center"] == [1, 0]
    assert c["takiff_part"] == [3, 3]
    assert c["odd_abelian_part"] == [0, 1] and c["derivation_part"] == [0, 1]


def test_fingerprint_distinguishes():
    assert fingerprint(alg("pq(2)")) == fingerprint(alg("spe(2)"))
    assert fingerprint(alg("pq(2)")) != fingerprint(alg("psq(2)"))


def test_random_vector_is_seeded():
    a = alg("gl(1|1)")
    u = random_vector(odd_basis(a), random.Random(1))
    v = random_vector(odd_basis(a), random.Random(1))
    assert u == v
