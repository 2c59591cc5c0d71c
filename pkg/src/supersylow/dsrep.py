"""Finite-dimensional modules and the Duflo-Serganova functor.

Module bases list even vectors first.  Odd algebra elements act by matrices
that swap the two blocks; even elements preserve them.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .exactla import (
    ONE, ZERO, Matrix, Subspace, is_semisimple_matrix, kernel_basis,
    mat_add, mat_scale, matmul, rat, rat_str, simultaneous_eigenspaces,
    transpose, zeros,
)
from .liesuper import SuperAlgebra, Subalgebra, restrict as restrict_algebra


class ModuleError(ValueError):
    """Raised for malformed modules or DS preconditions that fail."""


@dataclass(frozen=True, eq=False)
class FdModule:
    algebra: SuperAlgebra
    dim_even: int
    dim_odd: int
    action: tuple

    def __post_init__(self):
        d = self.dim
        mats = tuple(tuple(tuple(rat(x) for x in row) for row in m) for m in self.action)
        if len(mats) != self.algebra.dim:
            raise ModuleError("need one action matrix per algebra basis element")
        if any(len(m) != d or any(len(r) != d for r in m) for m in mats):
            raise ModuleError("action matrices have the wrong size")
        object.__setattr__(self, "action", tuple([list(r) for r in m] for m in mats))

    @property
    def dim(self) -> int:
        return self.dim_even + self.dim_odd

    @property
    def sdims(self) -> tuple[int, int]:
        return (self.dim_even, self.dim_odd)

    def parity(self, i: int) -> int:
        return 0 if i < self.dim_even else 1

    def rho(self, x: Sequence) -> Matrix:
        """Action matrix of an algebra vector."""
        d = self.dim
        out = zeros(d, d)
        for c, m in zip(x, self.action):
            if c:
                c = rat(c)
                for i in range(d):
                    row, src = out[i], m[i]
                    for j in range(d):
                        if src[j]:
                            row[j] += c * src[j]
        return out

    def graded_dims(self, space: Subspace) -> tuple[int, int]:
        """(even, odd) dimensions of a graded subspace of the module."""
        ev = sum(1 for p in space.pivots if p < self.dim_even)
        return (ev, space.dim - ev)

    def to_json(self) -> dict:
        return {"dim_even": self.dim_even, "dim_odd": self.dim_odd,
                "action": [[[rat_str(x) for x in row] for row in m] for m in self.action]}

    @classmethod
    def from_json(cls, algebra: SuperAlgebra, data: dict) -> "FdModule":
        try:
            return cls(algebra, int(data["dim_even"]), int(data["dim_odd"]),
                       tuple([[rat(x) for x in row] for row in m] for m in data["action"]))
        except (KeyError, TypeError) as exc:
            raise ModuleError(f"malformed module JSON: {exc}") from exc


def check_module(m: FdModule) -> list[tuple]:
    """Parity-block and homomorphism violations; empty means a valid module."""
    a = m.algebra
    bad: list[tuple] = []
    p = m.dim_even
    for i, mat in enumerate(m.action):
        want = a.parity(i)
        for r in range(m.dim):
            for c in range(m.dim):
                if mat[r][c] and ((r < p) != (c < p)) != bool(want):
                    bad.append(("parity", i))
                    break
            else:
                continue
            break
    for i in range(a.dim):
        for j in range(i, a.dim):
            lhs = m.rho(a.bracket_basis(i, j))
            sign = -ONE if a.parity(i) & a.parity(j) else ONE
            rhs = mat_add(matmul(m.action[i], m.action[j]),
                          matmul(m.action[j], m.action[i]), -sign)
            if lhs != rhs:
                bad.append((i, j))
    return bad


# ---------------------------------------------------------------------------
# constructions
# ---------------------------------------------------------------------------

def trivial(a: SuperAlgebra) -> FdModule:
    return FdModule(a, 1, 0, tuple([[ZERO]] for _ in range(a.dim)))


def standard(a: SuperAlgebra) -> FdModule:
    r = a.realization
    if r is None or not r.faithful:
        raise ModuleError("standard module needs a faithful matrix realization")
    return FdModule(a, r.super_size[0], r.super_size[1], r.matrices)


def adjoint(a: SuperAlgebra) -> FdModule:
    return FdModule(a, a.dim_even, a.dim_odd, tuple(a.ad_basis(i) for i in range(a.dim)))


def _even_first(parities: Sequence[int]) -> list[int]:
    return sorted(range(len(parities)), key=lambda i: parities[i])


def _reorder(mats, order):
    return tuple([[m[r][c] for c in order] for r in order] for m in mats)


def tensor(m: FdModule, n: FdModule) -> FdModule:
    """``m ⊗ n`` with the Koszul sign on the second factor."""
    if m.algebra is not n.algebra:
        raise ModuleError("modules over different algebras")
    a = m.algebra
    pairs = [(i, j) for i in range(m.dim) for j in range(n.dim)]
    pars = [(m.parity(i) + n.parity(j)) % 2 for i, j in pairs]
    order = _even_first(pars)
    pairs = [pairs[t] for t in order]
    idx = {pq: t for t, pq in enumerate(pairs)}
    d = len(pairs)
    mats = []
    for x in range(a.dim):
        px = a.parity(x)
        A, B = m.action[x], n.action[x]
        out = zeros(d, d)
        for col, (i, j) in enumerate(pairs):
            for r in range(m.dim):
                if A[r][i]:
                    out[idx[(r, j)]][col] += A[r][i]
            sign = -ONE if px & m.parity(i) else ONE
            for s in range(n.dim):
                if B[s][j]:
                    out[idx[(i, s)]][col] += sign * B[s][j]
        mats.append(out)
    ev = sum(1 for t in order if pars[t] == 0)
    return FdModule(a, ev, d - ev, tuple(mats))


def dual(m: FdModule) -> FdModule:
    """Dual module: ``rho*(x)[i][j] = -(-1)^{|x||j|} rho(x)[j][i]``."""
    a = m.algebra
    mats = []
    for x in range(a.dim):
        px = a.parity(x)
        src = m.action[x]
        out = zeros(m.dim, m.dim)
        for i in range(m.dim):
            for j in range(m.dim):
                if src[j][i]:
                    sign = ONE if px & m.parity(j) else -ONE
                    out[i][j] = sign * src[j][i]
        mats.append(out)
    return FdModule(a, m.dim_even, m.dim_odd, tuple(mats))


def direct_sum(m: FdModule, n: FdModule) -> FdModule:
    if m.algebra is not n.algebra:
        raise ModuleError("modules over different algebras")
    pars = [m.parity(i) for i in range(m.dim)] + [n.parity(j) for j in range(n.dim)]
    order = _even_first(pars)
    d = m.dim + n.dim
    mats = []
    for x in range(m.algebra.dim):
        out = zeros(d, d)
        for i in range(m.dim):
            out[i][:m.dim] = list(m.action[x][i])
        for j in range(n.dim):
            out[m.dim + j][m.dim:] = list(n.action[x][j])
        mats.append(out)
    mats = _reorder(mats, order)
    return FdModule(m.algebra, m.dim_even + n.dim_even, m.dim_odd + n.dim_odd, mats)


def restrict(m: FdModule, k: Subalgebra, sub: SuperAlgebra | None = None) -> FdModule:
    """Restriction to a graded subalgebra, over ``restrict_algebra(k)``.

    Pass ``sub`` to reuse one standalone algebra for several modules.
    """
    if k.parent is not m.algebra:
        raise ModuleError("subalgebra of a different algebra")
    if sub is None:
        sub = restrict_algebra(k)
    elif sub.dim != k.dim:
        raise ModuleError("standalone algebra does not match the subalgebra")
    basis = k.even_basis() + k.odd_basis()
    return FdModule(sub, m.dim_even, m.dim_odd, tuple(m.rho(v) for v in basis))


def sdim(m: FdModule) -> int:
    return m.dim_even - m.dim_odd


# ---------------------------------------------------------------------------
# Duflo-Serganova functor
# ---------------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class DsResult:
    input: FdModule
    x: tuple
    kernel_dim: tuple
    image_cap_kernel_dim: tuple
    output_dims: tuple
    representatives: tuple

    def sdim(self) -> int:
        return self.output_dims[0] - self.output_dims[1]


def ds(m: FdModule, x: Sequence) -> DsResult:
    """``ker rho(x) / (im rho(x) ∩ ker rho(x))`` on the kernel of ``rho([x,x])``.

    When ``[x,x]`` acts by zero the restriction step is the identity.  A
    non-semisimple action of ``[x,x]`` is rejected.
    """
    a = m.algebra
    x = [rat(c) for c in x]
    if a.vector_parity(x) != 1 and any(x):
        raise ModuleError("DS needs an odd element")
    X = m.rho(x)
    Y = m.rho(a.bracket(x, x))
    if matmul(X, X) != mat_scale(Y, rat(1) / 2):
        raise ModuleError("action does not satisfy rho(x)^2 = rho([x,x])/2")
    if not is_semisimple_matrix(Y):
        raise ModuleError("[x,x] does not act semisimply")
    d = m.dim
    dom = kernel_basis(Y, d) if any(any(r) for r in Y) else Subspace.full(d)
    # kernel of X inside dom: coefficients c with X (sum c_i v_i) = 0
    vs = dom.vectors()
    if vs:
        cols = [[sum((X[r][t] * v[t] for t in range(d) if v[t]), ZERO) for r in range(d)] for v in vs]
        images = cols
        coeff_ker = kernel_basis(transpose(cols), len(vs))
        ker_vecs = []
        for c in coeff_ker.basis:
            w = [ZERO] * d
            for coef, v in zip(c, vs):
                if coef:
                    w = [p + coef * q for p, q in zip(w, v)]
            ker_vecs.append(w)
        ker = Subspace.span(ker_vecs, d)
        img = Subspace.span([v for v in images if any(v)], d).intersect(ker)
    else:
        ker = Subspace.zero(d)
        img = Subspace.zero(d)
    kd = m.graded_dims(ker)
    idim = m.graded_dims(img)
    reps = []
    acc = img
    for v in ker.basis:
        if not acc.contains(v):
            reps.append(tuple(v))
            acc = acc + Subspace.span([v], d)
    out = (kd[0] - idim[0], kd[1] - idim[1])
    return DsResult(m, tuple(x), kd, idim, out, tuple(reps))


def weight_spaces(m: FdModule, torus) -> dict:
    """Joint eigenspace dimensions of a torus, keyed by weight tuples.

    ``torus`` is a list of algebra vectors or any object with a ``torus``
    attribute holding one.
    """
    vecs = getattr(torus, "torus", torus)
    mats = [m.rho(t) for t in vecs]
    try:
        pieces = simultaneous_eigenspaces(mats, Subspace.full(m.dim))
    except ValueError as exc:
        raise ModuleError(str(exc)) from exc
    return {w: m.graded_dims(s) for w, s in pieces}
