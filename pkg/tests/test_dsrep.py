import pytest

from supersylow.dsrep import (
    FdModule, ModuleError, adjoint, check_module, direct_sum, ds, dual,
    restrict, sdim, standard, tensor, trivial, weight_spaces,
)
from supersylow.families import parse_family, sylow_candidate
from conftest import alg, basis_vec

ALGS = ["gl(1|1)", "gl(2|1)", "osp(1|2)", "pe(2)", "q(2)", "counterexample(2)"]


@pytest.mark.parametrize("name", ALGS)
def test_constructions_are_modules(name):
    a = alg(name)
    v = standard(a)
    for m in (v, dual(v), tensor(v, v), adjoint(a), tensor(dual(v), v),
              direct_sum(v, trivial(a))):
        assert check_module(m) == []


def test_broken_action_is_reported():
    a = alg("gl(1|1)")
    v = standard(a)
    mats = [list(map(list, m)) for m in v.action]
    mats[0][0][0] += 1
    assert check_module(FdModule(a, 1, 1, tuple(mats)))


def rank_one(a, m):
    return basis_vec(a, f"E1,{m + 1}")


@pytest.mark.parametrize("m,n", [(1, 1), (2, 1), (2, 2), (2, 3), (3, 2)])
def test_ds_of_standard_drops_one_each(m, n):
    a = alg(f"gl({m}|{n})")
    r = ds(standard(a), rank_one(a, m))
    assert r.output_dims == (m - 1, n - 1)


@pytest.mark.parametrize("m,n", [(1, 1), (2, 1), (2, 2)])
def test_ds_of_adjoint_is_smaller_gl(m, n):
    a = alg(f"gl({m}|{n})")
    r = ds(adjoint(a), rank_one(a, m))
    mm, nn = m - 1, n - 1
    assert r.output_dims == (mm * mm + nn * nn, 2 * mm * nn)


@pytest.mark.parametrize("name", ["gl(2|2)", "osp(3|2)", "pe(2)"])
def test_ds_preserves_superdimension(name):
    a = alg(name)
    k = sylow_candidate(parse_family(name))
    x = k.odd_basis()[0]
    y = [p + q for p, q in zip(k.odd_basis()[0], k.odd_basis()[-1])]
    for mod in (standard(a), tensor(standard(a), dual(standard(a)))):
        for el in (x, y):
            try:
                r = ds(mod, el)
            except ModuleError:
                continue
            assert r.sdim() == sdim(mod)


def test_ds_rejects_even_and_nonsemisimple():
    a = alg("gl(1|1)")
    with pytest.raises(ModuleError):
        ds(standard(a), basis_vec(a, "E1,1"))
    b = alg("osp(1|2)")
    x = b.basis_vector(b.dim_even)
    with pytest.raises(ModuleError):
        ds(standard(b), x)


def test_restriction_and_weights():
    a = alg("gl(2|2)")
    k = sylow_candidate(parse_family("gl(2|2)"))
    m = restrict(standard(a), k)
    assert check_module(m) == []
    torus = [basis_vec(a, "E1,1"), basis_vec(a, "E2,2")]
    w = weight_spaces(standard(a), torus)
    assert sum(e + o for e, o in w.values()) == 4


def test_module_json_round_trip():
    a = alg("gl(2|1)")
    m = tensor(standard(a), dual(standard(a)))
    assert FdModule.from_json(a, m.to_json()).action == m.action
