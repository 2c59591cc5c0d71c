import itertools

import pytest
from hypothesis import given, settings, strategies as st

from supersylow.exactla import ZERO, Subspace, rat
from supersylow.liesuper import (
    AlgebraError, SuperAlgebra, center, centralizer, check_jacobi,
    derived_subalgebra, direct_sum, from_matrices, generated_subalgebra,
    ideal_generated, is_oddly_generated, normalizer, quotient, restrict,
    supercommutator, whole,
)
from conftest import alg, basis_vec

FAMILIES = ["gl(1|1)", "gl(2|1)", "sl(2|2)", "psl(2|2)", "osp(1|2)", "osp(3|2)",
            "q(2)", "pq(2)", "psq(3)", "pe(2)", "spe(3)", "counterexample(2)",
            "takiff0(sl2)"]


@pytest.mark.parametrize("name", FAMILIES)
def test_super_jacobi_holds(name):
    assert check_jacobi(alg(name)) == []


def test_broken_table_is_reported():
    # odd x with [x,x] = h and [h,x] = x violates super-Jacobi
    a = SuperAlgebra(1, 1, ("h", "x"), {(0, 1): ((1, 1),), (1, 0): ((1, -1),),
                                        (1, 1): ((0, 1),)})
    assert check_jacobi(a)


def test_antisymmetry_signs():
    a = alg("gl(1|1)")
    for i, j in itertools.product(range(a.dim), repeat=2):
        s = -1 if a.parity(i) & a.parity(j) else 1
        lhs = a.bracket_basis(i, j)
        rhs = [-s * c for c in a.bracket_basis(j, i)]
        assert lhs == rhs


vectors = st.lists(st.integers(-4, 4), min_size=16, max_size=16)


@settings(max_examples=40, deadline=None)
@given(vectors, vectors)
def test_realization_is_a_homomorphism(u, v):
    a = alg("gl(2|2)")
    r = a.realization
    # split into homogeneous parts so the matrix supercommutator applies
    for pu in (0, 1):
        for pv in (0, 1):
            x = [c if a.parity(i) == pu else 0 for i, c in enumerate(u)]
            y = [c if a.parity(i) == pv else 0 for i, c in enumerate(v)]
            assert r.image(a.bracket(x, y)) == supercommutator(r.image(x), pu, r.image(y), pv)


def test_gl11_structure():
    a = alg("gl(1|1)")
    assert a.sdim == (2, 2)
    assert center(a).sdim == (1, 0)
    assert derived_subalgebra(a).sdim == (1, 2)
    assert not is_oddly_generated(a)
    assert is_oddly_generated(alg("sl(1|1)"))


def test_from_matrices_sorts_parity_and_rejects_mixed():
    m_odd = [[0, 1], [0, 0]]
    m_even = [[1, 0], [0, 0]]
    a = from_matrices([m_odd, m_even], (1, 1))
    assert a.sdim == (1, 1)
    with pytest.raises(AlgebraError):
        from_matrices([[[1, 1], [0, 0]]], (1, 1))


def test_generated_and_ideal():
    a = alg("gl(2|2)")
    x = basis_vec(a, "E1,3")
    y = basis_vec(a, "E3,1")
    k = generated_subalgebra(a, [x, y])
    assert k.sdim == (1, 2)
    i = ideal_generated(a, [x])
    assert i.sdim == (7, 8)  # the ideal sl(2|2)


def test_quotient_by_center_and_restrict():
    a = alg("sl(2|2)")
    z = center(a)
    assert z.sdim == (1, 0)
    b = quotient(a, z)
    assert b.sdim == (6, 8) and check_jacobi(b) == []
    s = restrict(derived_subalgebra(alg("gl(1|1)")))
    assert s.sdim == (1, 2) and check_jacobi(s) == []


def test_normalizer_and_centralizer():
    a = alg("gl(1|1)")
    h = Subspace.span([basis_vec(a, "E1,1")], a.dim)
    c = centralizer(a, h)
    assert c.sdim == (2, 0)
    k = generated_subalgebra(a, [basis_vec(a, "E1,2")])
    assert normalizer(a, k).sdim == (2, 1)
    assert normalizer(a, whole(a)).dim == a.dim


def test_direct_sum_dims_and_json_round_trip():
    a = direct_sum(alg("sl(1|1)"), alg("sl(1|1)"))
    assert a.sdim == (2, 4) and check_jacobi(a) == []
    b = SuperAlgebra.from_json(a.to_json())
    assert all(b.bracket_basis(i, j) == a.bracket_basis(i, j)
               for i in range(a.dim) for j in range(a.dim))
