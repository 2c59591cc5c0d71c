import pytest

from supersylow.dsrep import FdModule, ModuleError, adjoint, dual, restrict, standard, trivial
from supersylow.exactla import Subspace, solve, transpose
from supersylow.families import parse_family, sylow_candidate
from supersylow.liesuper import (
    SuperAlgebra, Subalgebra, derived_subalgebra, normalizer, restrict as restrict_algebra, whole,
)
from supersylow.relcoh import (
    ber_module, build_complex, ext1, hom_module, restriction_injective_ext1,
)
from conftest import alg


def test_single_odd_generator():
    x = SuperAlgebra(0, 1, ("x",), {})
    cx = build_complex(x, trivial(x), 2)
    assert [cx.invariants[k].dim for k in range(3)] == [1, 1, 1]
    assert cx.cohomology_dims(0) == (1, 0)
    assert cx.cohomology_dims(1) == (0, 1)


def test_invariants_of_trivial_module():
    s = alg("sl(1|1)")
    assert build_complex(s, trivial(s)).cohomology_dims(0) == (1, 0)


def test_osp12_is_semisimple_category():
    b = alg("osp(1|2)")
    assert ext1(b, trivial(b), trivial(b)) == (0, 0)
    assert ext1(b, trivial(b), standard(b)) == (0, 0)
    assert ext1(b, standard(b), standard(b)) == (0, 0)


def test_sl11_has_extensions():
    s = alg("sl(1|1)")
    assert sum(ext1(s, trivial(s), adjoint(s))) > 0


def test_even_algebra_has_no_ext():
    a = alg("sl(2)")
    v = standard(a)
    assert ext1(a, v, v) == (0, 0)


def test_differential_squares_to_zero_on_invariants():
    g = alg("gl(1|2)")
    for m in (standard(g), hom_module(standard(g), ber_module(g, -1))):
        build_complex(g, m, 2)  # raises on failure


def test_non_semisimple_even_action_rejected():
    g = alg("gl(1|1)")
    # E1,1 acting by a Jordan block
    bad = FdModule(g, 1, 1, tuple([[[1, 0], [1, 1]]] + [[[0, 0], [0, 0]]] * 3))
    with pytest.raises(ModuleError):
        build_complex(g, bad)


def gl_probes(g):
    return [trivial(g), standard(g), dual(standard(g)), ber_module(g), ber_module(g, -1)]


def test_restriction_to_sl11_in_gl11_is_injective():
    g = alg("gl(1|1)")
    k = derived_subalgebra(g)
    for m in gl_probes(g):
        for n in gl_probes(g):
            assert restriction_injective_ext1(g, k, m, n)


def test_restriction_to_torus_fails():
    g = alg("gl(1|1)")
    torus = Subalgebra(g, Subspace.span([g.basis_vector(0), g.basis_vector(1)], g.dim))
    m, n = trivial(g), ber_module(g)
    assert ext1(g, m, n) != (0, 0)
    assert not restriction_injective_ext1(g, torus, m, n)


def test_identity_restriction():
    g = alg("gl(1|1)")
    assert restriction_injective_ext1(g, whole(g), trivial(g), ber_module(g))


def test_sylow_in_gl12_and_transitivity_on_probes():
    g = alg("gl(1|2)")
    o = sylow_candidate(parse_family("gl(1|2)"))
    h = normalizer(g, o)
    hal = restrict_algebra(h)
    hb = h.even_basis() + h.odd_basis()
    o_in_h = Subalgebra(hal, Subspace.span([solve(transpose(hb), v) for v in o.space.vectors()],
                                           hal.dim))
    probes = gl_probes(g)[:4]
    seen_nonzero = False
    for m in probes:
        for n in probes:
            go = restriction_injective_ext1(g, o, m, n)
            gh = restriction_injective_ext1(g, h, m, n)
            ho = restriction_injective_ext1(hal, o_in_h, restrict(m, h, hal), restrict(n, h, hal))
            assert go
            assert go == (gh and ho)
            seen_nonzero |= ext1(g, m, n) != (0, 0)
    assert seen_nonzero
