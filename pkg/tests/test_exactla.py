import itertools
import random

import pytest
from hypothesis import given, settings, strategies as st

from supersylow.exactla import (
    ONE, ZERO, Subspace, as_matrix, halfspace_feasible, identity, inverse,
    is_nilpotent_matrix, is_semisimple_matrix, jordan_decomposition,
    kernel_basis, mat_add, matmul, minimal_polynomial, rank, rat, rref, solve,
)


def test_rat_rejects_float():
    with pytest.raises(TypeError):
        rat(0.5)
    assert rat("3/6") == rat(1) / 2


def test_rref_small_cases():
    red, piv, rk = rref(as_matrix([[1, 2], [2, 4]]))
    assert rk == 1 and piv == [0]
    assert red[0] == [1, 2] and red[1] == [0, 0]
    assert rank(identity(3)) == 3
    assert rank(as_matrix([[0, 0], [0, 0]])) == 0


def test_kernel_and_solve():
    k = kernel_basis(as_matrix([[1, 1]]))
    assert k.dim == 1 and k.contains([1, -1])
    assert solve(as_matrix([[1, 1], [1, -1]]), [2, 0]) == [1, 1]
    assert solve(as_matrix([[1, 1], [1, 1]]), [1, 2]) is None


def test_inverse_roundtrip():
    m = as_matrix([[2, 1], [1, 1]])
    assert matmul(m, inverse(m)) == identity(2)
    with pytest.raises(ZeroDivisionError):
        inverse(as_matrix([[1, 2], [2, 4]]))


def test_subspace_ops():
    a = Subspace.span([[1, 0, 0], [0, 1, 0]], 3)
    b = Subspace.span([[0, 1, 0], [0, 0, 1]], 3)
    assert a.intersect(b) == Subspace.span([[0, 1, 0]], 3)
    assert (a + b).dim == 3
    assert a.coords([2, 3, 0]) == [2, 3]
    with pytest.raises(ValueError):
        a.coords([0, 0, 1])
    assert a.complement_coords() == [2]


def test_minimal_polynomials():
    assert minimal_polynomial(as_matrix([[0, 1], [0, 0]])) == [0, 0, 1]
    # (x-1)(x-2) = 2 - 3x + x^2
    assert minimal_polynomial(as_matrix([[1, 0], [0, 2]])) == [2, -3, 1]
    assert minimal_polynomial(identity(3)) == [-1, 1]


def test_semisimple_over_q_includes_irrational_spectrum():
    assert is_semisimple_matrix(as_matrix([[0, 1], [-1, 0]]))
    assert not is_semisimple_matrix(as_matrix([[1, 1], [0, 1]]))
    assert is_nilpotent_matrix(as_matrix([[0, 1], [0, 0]]))


def test_jordan_unipotent_block():
    s, n = jordan_decomposition([[1, 1], [0, 1]])
    assert s == identity(2)
    assert n == as_matrix([[0, 1], [0, 0]])


def _random_conjugated(rng):
    # block-diagonal Jordan form, conjugated by a random unimodular-ish matrix
    j = [[ZERO] * 4 for _ in range(4)]
    ev = [rng.randint(-2, 2) for _ in range(4)]
    for i in range(4):
        j[i][i] = rat(ev[i])
    for i in range(3):
        if ev[i] == ev[i + 1] and rng.random() < 0.6:
            j[i][i + 1] = ONE
    while True:
        p = as_matrix([[rng.randint(-2, 2) for _ in range(4)] for _ in range(4)])
        if rank(p) == 4:
            break
    return matmul(matmul(p, j), inverse(p))


def test_jordan_random_4x4():
    rng = random.Random(7)
    for _ in range(200):
        m = _random_conjugated(rng)
        s, n = jordan_decomposition(m)
        assert mat_add(s, n) == m
        assert matmul(s, n) == matmul(n, s)
        assert is_semisimple_matrix(s)
        assert is_nilpotent_matrix(n)


def _grid_feasible(weights):
    # oracle: with entries in {-1,0,1} in dimension 3, a basic solution of
    # W phi >= 1 scaled by its determinant has integer entries of size <= 6
    for phi in itertools.product(range(-6, 7), repeat=len(weights[0])):
        if all(sum(a * b for a, b in zip(phi, w)) > 0 for w in weights):
            return True
    return False


@settings(max_examples=150, deadline=None)
@given(st.lists(st.tuples(*[st.integers(-1, 1)] * 3), min_size=1, max_size=5))
def test_halfspace_matches_grid(ws):
    ws = [list(w) for w in ws]
    assert halfspace_feasible(ws) == _grid_feasible(ws)


def test_halfspace_examples():
    assert halfspace_feasible([[1, 0], [0, 1]])
    assert not halfspace_feasible([[1, 0], [-1, 0]])
    assert not halfspace_feasible([[0, 0]])
