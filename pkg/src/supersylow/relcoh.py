"""Relative Chevalley-Eilenberg cohomology for the pair ``(g, g_0)``.

Cochains of degree k are ``g_0``-equivariant maps ``S^k(g_1) -> M`` (the odd
part is purely odd, so its exterior powers are symmetric powers).  They are
stored as coefficient vectors indexed by (sorted multiset of odd basis
indices, module basis index).  A bracket of two odd arguments lands in
``g_0`` where relative cochains vanish, so the differential keeps only the
module-action term ``(dc)(x_0..x_k) = sum_i x_i . c(.. omit x_i ..)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations_with_replacement
from typing import Sequence

from .dsrep import FdModule, ModuleError, dual, restrict, tensor
from .exactla import (
    ZERO, Matrix, Subspace, is_semisimple_matrix, kernel_basis, matmul, rank,
    transpose, zeros,
)
from .liesuper import SuperAlgebra, Subalgebra, center, restrict as restrict_algebra

MAX_MODULE_DIM = 16
MAX_ODD_DIM = 8


def _multisets(n: int, k: int) -> list[tuple]:
    return list(combinations_with_replacement(range(n), k))


@dataclass(frozen=True, eq=False)
class RelComplex:
    algebra: SuperAlgebra
    module: FdModule
    multisets: tuple          # per degree, the index tuples
    invariants: tuple         # per degree, Subspace of invariant cochains
    differentials: tuple      # per degree k, matrix C^k -> C^{k+1} on full cochains

    def cochain_parity(self, k: int, pos: int) -> int:
        m = self.module
        return (k + m.parity(pos % m.dim)) % 2

    def graded_dims(self, k: int, space: Subspace) -> tuple[int, int]:
        ev = sum(1 for p in space.pivots if self.cochain_parity(k, p) == 0)
        return (ev, space.dim - ev)

    def cocycles(self, k: int) -> Subspace:
        inv = self.invariants[k]
        if k >= len(self.differentials):
            raise ValueError("degree beyond the truncation")
        d = self.differentials[k]
        vecs = inv.vectors()
        if not vecs:
            return inv
        imgs = [_apply(d, v) for v in vecs]
        coeffs = kernel_basis(transpose(imgs), len(vecs))
        return Subspace.span([_combine(vecs, c) for c in coeffs.basis], inv.ambient_dim) \
            if coeffs.dim else Subspace.zero(inv.ambient_dim)

    def coboundaries(self, k: int) -> Subspace:
        n = len(self.multisets[k]) * self.module.dim
        if k == 0:
            return Subspace.zero(n)
        d = self.differentials[k - 1]
        imgs = [_apply(d, v) for v in self.invariants[k - 1].vectors()]
        return Subspace.span([v for v in imgs if any(v)], n)

    def cohomology_dims(self, k: int) -> tuple[int, int]:
        z = self.graded_dims(k, self.cocycles(k))
        b = self.graded_dims(k, self.coboundaries(k))
        return (z[0] - b[0], z[1] - b[1])


def _apply(m: Matrix, v: Sequence) -> list:
    nz = [(j, x) for j, x in enumerate(v) if x]
    return [sum((row[j] * x for j, x in nz if row[j]), ZERO) for row in m]


def _combine(vecs, coeffs):
    out = [ZERO] * len(vecs[0])
    for c, v in zip(coeffs, vecs):
        if c:
            out = [a + c * b for a, b in zip(out, v)]
    return out


def check_even_semisimple(g: SuperAlgebra, m: FdModule) -> bool:
    """``g_0`` is reductive here, so its module is semisimple exactly when
    the center of ``g_0`` acts semisimply."""
    if g.dim_even == 0:
        return True
    g0 = restrict_algebra(Subalgebra(g, Subspace.span(
        [g.basis_vector(i) for i in range(g.dim_even)], g.dim)))
    z = center(g0)
    for v in z.space.basis:
        full = list(v) + [ZERO] * g.dim_odd
        if not is_semisimple_matrix(m.rho(full)):
            return False
    return True


def _even_action(g: SuperAlgebra, m: FdModule, k: int, sets: list[tuple], y: int) -> Matrix:
    """Action of even basis element ``y`` on degree-k cochains."""
    n0, d = g.dim_even, m.dim
    idx = {s: t for t, s in enumerate(sets)}
    size = len(sets) * d
    out = zeros(size, size)
    rho = m.action[y]
    ad = g.ad_basis(y)
    for t, s in enumerate(sets):
        for j in range(d):
            col = t * d + j
            # rho(y) c(args)
            for r in range(d):
                if rho[r][j]:
                    out[t * d + r][col] += rho[r][j]
            # - c(.., [y, x_l], ..): the dual action moves weight between multisets
    for t, s in enumerate(sets):
        for pos in range(len(s)):
            rest = s[:pos] + s[pos + 1:]
            src = n0 + s[pos]
            for tgt in range(g.dim_odd):
                c = ad[n0 + tgt][src]
                if c:
                    u = tuple(sorted(rest + (tgt,)))
                    # (y.c)(s) gains -c_{y}(..)*c(u) where [y, x_src] = c x_tgt
                    for j in range(d):
                        out[t * d + j][idx[u] * d + j] -= c
    return out


def _differential(g: SuperAlgebra, m: FdModule, k: int, src_sets, dst_sets) -> Matrix:
    n0, d = g.dim_even, m.dim
    sidx = {s: t for t, s in enumerate(src_sets)}
    out = zeros(len(dst_sets) * d, len(src_sets) * d)
    for t, s in enumerate(dst_sets):
        for pos in range(len(s)):
            rest = s[:pos] + s[pos + 1:]
            u = sidx[rest]
            rho = m.action[n0 + s[pos]]
            for r in range(d):
                for j in range(d):
                    if rho[r][j]:
                        out[t * d + r][u * d + j] += rho[r][j]
    return out


def build_complex(g: SuperAlgebra, m: FdModule, max_degree: int = 2) -> RelComplex:
    if m.algebra is not g:
        raise ModuleError("module over a different algebra")
    if not check_even_semisimple(g, m):
        raise ModuleError("even part does not act semisimply")
    if g.dim_odd > MAX_ODD_DIM or m.dim > MAX_MODULE_DIM:
        raise ModuleError("complex exceeds the desk-scale caps")
    sets = [_multisets(g.dim_odd, k) for k in range(max_degree + 1)]
    invariants = []
    for k in range(max_degree + 1):
        size = len(sets[k]) * m.dim
        rows = []
        for y in range(g.dim_even):
            rows.extend(_even_action(g, m, k, sets[k], y))
        invariants.append(kernel_basis(rows, size) if rows else Subspace.full(size))
    diffs = tuple(_differential(g, m, k, sets[k], sets[k + 1]) for k in range(max_degree))
    cx = RelComplex(g, m, tuple(sets), tuple(invariants), diffs)
    for k in range(max_degree - 1):
        for v in invariants[k].basis:
            if any(_apply(diffs[k + 1], _apply(diffs[k], v))):
                raise ArithmeticError("d^2 != 0 on invariant cochains")
    return cx


def hom_module(m: FdModule, n: FdModule) -> FdModule:
    return tensor(dual(m), n)


def ext1(g: SuperAlgebra, m: FdModule, n: FdModule) -> tuple[int, int]:
    """Graded dimension of relative Ext^1(M, N), computed as H^1(M* ⊗ N)."""
    return build_complex(g, hom_module(m, n), 2).cohomology_dims(1)


def restriction_injective_ext1(g: SuperAlgebra, k: Subalgebra, m: FdModule, n: FdModule) -> bool:
    """Is ``Ext^1_g(M,N) -> Ext^1_k(M,N)`` injective?"""
    v = hom_module(m, n)
    cg = build_complex(g, v, 2)
    vk = restrict(v, k)
    ck = build_complex(vk.algebra, vk, 1)
    z = cg.cocycles(1)
    b = cg.coboundaries(1)
    if z.dim == b.dim:
        return True
    # restriction of a degree-1 cochain: c'(u_s) = sum_a u_s[a] c(x_a)
    d = v.dim
    n0 = g.dim_even
    k_odd = k.odd_basis()
    bk = ck.coboundaries(1)
    nk = len(k_odd) * d

    def res(c):
        out = [ZERO] * nk
        for s, u in enumerate(k_odd):
            for a in range(g.dim_odd):
                coef = u[n0 + a]
                if coef:
                    for j in range(d):
                        if c[a * d + j]:
                            out[s * d + j] += coef * c[a * d + j]
        return out

    zv = z.vectors()
    # solve: combination of cocycles whose restriction lies in B^1(k)
    imgs = [bk.reduce(res(c)) for c in zv]
    coeffs = kernel_basis(transpose(imgs), len(zv)) if imgs else Subspace.zero(0)
    pre = Subspace.span([_combine(zv, c) for c in coeffs.basis], z.ambient_dim) \
        if coeffs.dim else Subspace.zero(z.ambient_dim)
    return pre.dim == b.dim


def character_module(g: SuperAlgebra, functional: Sequence, parity: int = 0) -> FdModule:
    """One-dimensional module on which even basis element i acts by
    ``functional[i]``; the functional must vanish on ``[g, g]``."""
    mats = []
    for i in range(g.dim):
        val = functional[i] if i < g.dim_even else 0
        mats.append([[val]])
    de, do = (1, 0) if parity == 0 else (0, 1)
    return FdModule(g, de, do, tuple(mats))


def ber_module(g: SuperAlgebra, power: int = 1) -> FdModule:
    """The supertrace character (realized algebras only) raised to ``power``."""
    r = g.realization
    if r is None:
        raise ModuleError("supertrace needs a matrix realization")
    p, q = r.super_size
    vals = []
    for i in range(g.dim):
        mat = r.matrices[i]
        s = sum((mat[t][t] for t in range(p)), ZERO) - sum((mat[t][t] for t in range(p, p + q)), ZERO)
        vals.append(power * s)
    return character_module(g, vals)
