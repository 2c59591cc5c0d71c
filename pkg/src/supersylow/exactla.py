"""Exact rational linear algebra.

Vectors are plain lists of ``mpq`` and matrices are lists of rows.  Nothing
in here touches floating point; every routine returns exact results.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from gmpy2 import mpq

Rat = type(mpq(0))
Vector = list
Matrix = list

ZERO = mpq(0)
ONE = mpq(1)


def rat(x) -> mpq:
    """Coerce ints, Fractions, mpq values and ``"num/den"`` strings."""
    if isinstance(x, Rat):
        return x
    if isinstance(x, Fraction):
        return mpq(x.numerator, x.denominator)
    if isinstance(x, str):
        return mpq(x.strip())
    if isinstance(x, float):
        raise TypeError("floats are not accepted by the exact kernel")
    return mpq(x)


def rat_str(x: mpq) -> str:
    x = rat(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


# ---------------------------------------------------------------------------
# dense helpers
# ---------------------------------------------------------------------------

def zeros(rows: int, cols: int) -> Matrix:
    return [[ZERO] * cols for _ in range(rows)]


def identity(n: int) -> Matrix:
    m = zeros(n, n)
    for i in range(n):
        m[i][i] = ONE
    return m


def as_matrix(rows: Iterable[Iterable]) -> Matrix:
    return [[rat(x) for x in row] for row in rows]


def copy_matrix(m: Matrix) -> Matrix:
    return [list(row) for row in m]


def shape(m: Matrix) -> tuple[int, int]:
    return len(m), (len(m[0]) if m else 0)


def transpose(m: Matrix) -> Matrix:
    return [list(col) for col in zip(*m)] if m else []


def matmul(a: Matrix, b: Matrix) -> Matrix:
    n = len(b[0]) if b else 0
    out = []
    b_nz = [[(j, v) for j, v in enumerate(row) if v] for row in b]
    for row in a:
        acc = [ZERO] * n
        for k, x in enumerate(row):
            if x:
                for j, v in b_nz[k]:
                    acc[j] += x * v
        out.append(acc)
    return out


def matvec(a: Matrix, v: Sequence) -> Vector:
    nz = [(j, x) for j, x in enumerate(v) if x]
    return [sum((row[j] * x for j, x in nz), ZERO) for row in a]


def mat_add(a: Matrix, b: Matrix, scale_b=ONE) -> Matrix:
    return [[x + scale_b * y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def mat_scale(a: Matrix, c) -> Matrix:
    c = rat(c)
    return [[c * x for x in row] for row in a]


def is_zero_matrix(a: Matrix) -> bool:
    return all(not x for row in a for x in row)


def vec_add(u: Sequence, v: Sequence, c=ONE) -> Vector:
    return [x + c * y for x, y in zip(u, v)]


def vec_scale(u: Sequence, c) -> Vector:
    return [c * x for x in u]


def is_zero_vector(v: Sequence) -> bool:
    return not any(v)


def flatten(m: Matrix) -> Vector:
    return [x for row in m for x in row]


def unflatten(v: Sequence, rows: int, cols: int) -> Matrix:
    return [list(v[r * cols:(r + 1) * cols]) for r in range(rows)]


def trace(m: Matrix) -> mpq:
    return sum((m[i][i] for i in range(len(m))), ZERO)


def rank(m: Matrix) -> int:
    return rref(m)[2]


# ---------------------------------------------------------------------------
# row reduction
# ---------------------------------------------------------------------------

def rref(m: Matrix) -> tuple[Matrix, list[int], int]:
    """Reduced row echelon form.

    Returns ``(reduced, pivots, rank)``.  The reduced matrix has the same
    shape as ``m``; zero rows sit at the bottom.
    """
    rows = [list(map(rat, row)) for row in m]
    if not rows:
        return [], [], 0
    ncols = len(rows[0])
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        if r == len(rows):
            break
        p = next((i for i in range(r, len(rows)) if rows[i][c]), None)
        if p is None:
            continue
        rows[r], rows[p] = rows[p], rows[r]
        piv = rows[r]
        inv = ONE / piv[c]
        if inv != ONE:
            piv = [x * inv for x in piv]
            rows[r] = piv
        nz = [(j, x) for j, x in enumerate(piv) if x and j >= c]
        for i in range(len(rows)):
            if i != r:
                f = rows[i][c]
                if f:
                    row = rows[i]
                    for j, x in nz:
                        row[j] -= f * x
        pivots.append(c)
        r += 1
    return rows, pivots, r


def _reduce_against(v: list, basis: Sequence[Sequence], pivots: Sequence[int]) -> list:
    v = list(v)
    for row, p in zip(basis, pivots):
        f = v[p]
        if f:
            for j, x in enumerate(row):
                if x:
                    v[j] -= f * x
    return v


@dataclass(frozen=True)
class Subspace:
    """A subspace of Q^n stored by its canonical reduced echelon basis."""

    ambient_dim: int
    basis: tuple
    pivots: tuple

    @classmethod
    def span(cls, vectors: Iterable[Sequence], ambient_dim: int) -> "Subspace":
        vecs = [list(map(rat, v)) for v in vectors]
        for v in vecs:
            if len(v) != ambient_dim:
                raise ValueError(f"vector of length {len(v)} in ambient dimension {ambient_dim}")
        if not vecs:
            return cls(ambient_dim, (), ())
        red, piv, rk = rref(vecs)
        return cls(ambient_dim, tuple(tuple(row) for row in red[:rk]), tuple(piv))

    @classmethod
    def zero(cls, n: int) -> "Subspace":
        return cls(n, (), ())

    @classmethod
    def full(cls, n: int) -> "Subspace":
        return cls.span(identity(n), n)

    @property
    def dim(self) -> int:
        return len(self.basis)

    def vectors(self) -> list[list]:
        return [list(row) for row in self.basis]

    def reduce(self, v: Sequence) -> list:
        """Residual of ``v`` after elimination against the basis."""
        return _reduce_against(v, self.basis, self.pivots)

    def contains(self, v: Sequence) -> bool:
        return is_zero_vector(self.reduce(v))

    def contains_space(self, other: "Subspace") -> bool:
        return all(self.contains(v) for v in other.basis)

    def coords(self, v: Sequence) -> list:
        """Coefficients of ``v`` in the stored basis; raises if ``v`` is outside."""
        c = [rat(v[p]) for p in self.pivots]
        res = list(map(rat, v))
        for row, f in zip(self.basis, c):
            if f:
                for j, x in enumerate(row):
                    if x:
                        res[j] -= f * x
        if any(res):
            raise ValueError("vector is not in the subspace")
        return c

    def __add__(self, other: "Subspace") -> "Subspace":
        return Subspace.span(list(self.basis) + list(other.basis), self.ambient_dim)

    def intersect(self, other: "Subspace") -> "Subspace":
        if self.dim == 0 or other.dim == 0:
            return Subspace.zero(self.ambient_dim)
        # a.x = b.y  <=>  [A^T | -B^T] (x, y) = 0
        k = self.dim
        cols = [list(r) for r in self.basis] + [[-x for x in r] for r in other.basis]
        ker = kernel_basis(transpose(cols))
        vecs = []
        for sol in ker.basis:
            w = [ZERO] * self.ambient_dim
            for coef, row in zip(sol[:k], self.basis):
                if coef:
                    w = vec_add(w, row, coef)
            vecs.append(w)
        return Subspace.span(vecs, self.ambient_dim)

    def complement_coords(self) -> list[int]:
        """Coordinate indices spanning a complement (the non-pivot columns)."""
        piv = set(self.pivots)
        return [j for j in range(self.ambient_dim) if j not in piv]

    def quotient_coords(self, v: Sequence) -> list:
        """Coordinates of the class of ``v`` in ambient/self w.r.t. ``complement_coords``."""
        res = self.reduce(v)
        return [res[j] for j in self.complement_coords()]


def kernel_basis(m: Matrix, ncols: int | None = None) -> Subspace:
    """Basis of {v : m v = 0}."""
    if not m:
        n = ncols if ncols is not None else 0
        return Subspace.full(n)
    n = len(m[0])
    red, piv, rk = rref(m)
    free = [j for j in range(n) if j not in set(piv)]
    vecs = []
    for f in free:
        v = [ZERO] * n
        v[f] = ONE
        for r, p in enumerate(piv):
            v[p] = -red[r][f]
        vecs.append(v)
    return Subspace.span(vecs, n)


def solve(m: Matrix, b: Sequence) -> list | None:
    """A particular solution of ``m x = b`` (free variables zero) or None."""
    if not m:
        return [] if not any(b) else None
    n = len(m[0])
    aug = [list(row) + [rat(bi)] for row, bi in zip(m, b)]
    red, piv, rk = rref(aug)
    if piv and piv[-1] == n:
        return None
    x = [ZERO] * n
    for r, p in enumerate(piv):
        x[p] = red[r][n]
    return x


def inverse(m: Matrix) -> Matrix:
    n = len(m)
    aug = [list(row) + e for row, e in zip(m, identity(n))]
    red, piv, rk = rref(aug)
    if rk < n or piv[n - 1] != n - 1:
        raise ZeroDivisionError("matrix is singular")
    return [row[n:] for row in red]


# ---------------------------------------------------------------------------
# polynomials: coefficient lists, constant term first
# ---------------------------------------------------------------------------

def poly_trim(p: Sequence) -> list:
    p = list(p)
    while p and not p[-1]:
        p.pop()
    return p


def poly_monic(p: Sequence) -> list:
    p = poly_trim(p)
    if not p:
        return p
    lead = p[-1]
    return [x / lead for x in p]


def poly_deriv(p: Sequence) -> list:
    return poly_trim([i * p[i] for i in range(1, len(p))])


def poly_mul(p: Sequence, q: Sequence) -> list:
    if not p or not q:
        return []
    out = [ZERO] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a:
            for j, b in enumerate(q):
                out[i + j] += a * b
    return poly_trim(out)


def poly_divmod(p: Sequence, q: Sequence) -> tuple[list, list]:
    p, q = poly_trim(p), poly_trim(q)
    if not q:
        raise ZeroDivisionError("polynomial division by zero")
    r = list(p)
    quo = [ZERO] * max(len(p) - len(q) + 1, 0)
    lead = q[-1]
    while len(r) >= len(q) and r:
        shift = len(r) - len(q)
        f = r[-1] / lead
        quo[shift] = f
        for i, c in enumerate(q):
            r[i + shift] -= f * c
        r = poly_trim(r)
    return poly_trim(quo), r


def poly_gcd(p: Sequence, q: Sequence) -> list:
    a, b = poly_trim(p), poly_trim(q)
    while b:
        a, b = b, poly_divmod(a, b)[1]
    return poly_monic(a)


def poly_lcm(p: Sequence, q: Sequence) -> list:
    g = poly_gcd(p, q)
    return poly_monic(poly_divmod(poly_mul(p, q), g)[0])


def poly_eval_matrix(p: Sequence, m: Matrix) -> Matrix:
    n = len(m)
    out = zeros(n, n)
    for c in reversed(poly_trim(p)):
        out = matmul(out, m)
        for i in range(n):
            out[i][i] += c
    return out


def poly_eval_vector(p: Sequence, m: Matrix, v: Sequence) -> Vector:
    out = [ZERO] * len(v)
    for c in reversed(poly_trim(p)):
        out = vec_add(matvec(m, out), v, c)
    return out


def squarefree_part(p: Sequence) -> list:
    g = poly_gcd(p, poly_deriv(p))
    return poly_monic(poly_divmod(p, g)[0])


# ---------------------------------------------------------------------------
# spectral-free matrix invariants
# ---------------------------------------------------------------------------

def _local_minpoly(m: Matrix, v: Sequence) -> list:
    """Monic generator of {p : p(m) v = 0}, by Krylov elimination."""
    n = len(m)
    basis: list[list] = []   # reduced Krylov vectors
    pivots: list[int] = []
    exprs: list[list] = []   # each basis row as a polynomial in m applied to v
    k = list(v)
    for deg in range(n + 1):
        red = list(k)
        expr = [ZERO] * (n + 1)
        expr[deg] = ONE
        for row, p, e in zip(basis, pivots, exprs):
            f = red[p]
            if f:
                red = vec_add(red, row, -f)
                expr = vec_add(expr, e, -f)
        if not any(red):
            return poly_monic(expr)
        p = next(j for j, x in enumerate(red) if x)
        inv = ONE / red[p]
        basis.append([x * inv for x in red])
        exprs.append([x * inv for x in expr])
        pivots.append(p)
        k = matvec(m, k)
    raise AssertionError("Krylov sequence did not terminate")


def minimal_polynomial(m: Matrix) -> list:
    """Monic minimal polynomial, coefficients from the constant term upward."""
    n = len(m)
    if any(len(row) != n for row in m):
        raise ValueError("minimal polynomial needs a square matrix")
    p = [ONE]
    for i in range(n):
        e = [ZERO] * n
        e[i] = ONE
        if any(poly_eval_vector(p, m, e)):
            p = poly_lcm(p, _local_minpoly(m, e))
    return p


def is_semisimple_matrix(m: Matrix) -> bool:
    """True iff the minimal polynomial is squarefree over Q."""
    p = minimal_polynomial(m)
    return len(poly_gcd(p, poly_deriv(p))) <= 1


def is_nilpotent_matrix(m: Matrix) -> bool:
    p = minimal_polynomial(m)
    return all(not c for c in p[:-1])


def jordan_decomposition(m: Matrix) -> tuple[Matrix, Matrix]:
    """Additive Jordan decomposition ``m = s + n`` over Q.

    Newton iteration on the squarefree part ``q`` of the minimal polynomial:
    ``s <- s - q(s) q'(s)^{-1}``.  Both parts are polynomials in ``m``.
    """
    m = as_matrix(m)
    q = squarefree_part(minimal_polynomial(m))
    dq = poly_deriv(q)
    s = copy_matrix(m)
    while True:
        qs = poly_eval_matrix(q, s)
        if is_zero_matrix(qs):
            break
        s = mat_add(s, matmul(qs, inverse(poly_eval_matrix(dq, s))), -ONE)
    return s, mat_add(m, s, -ONE)


# ---------------------------------------------------------------------------
# strict half-space feasibility
# ---------------------------------------------------------------------------

def halfspace_feasible(weights: Sequence[Sequence]) -> bool:
    """Is there a functional phi with phi(w) > 0 for every listed weight?

    Scaling lets us ask for phi(w) >= 1 instead; the resulting system is
    decided by Fourier-Motzkin elimination.
    """
    if not weights:
        raise ValueError("need at least one weight")
    dim = len(weights[0])
    # rows: (coefficients, rhs) meaning coeffs . phi >= rhs
    rows = {tuple(rat(x) for x in w) + (ONE,) for w in weights}
    rows = {_normalize_row(r) for r in rows}
    for var in range(dim):
        pos, neg, rest = [], [], []
        for r in rows:
            (pos if r[var] > 0 else neg if r[var] < 0 else rest).append(r)
        new = set(rest)
        for p, n in itertools.product(pos, neg):
            a, b = p[var], -n[var]
            new.add(_normalize_row(tuple(b * x + a * y for x, y in zip(p, n))))
        rows = new
    return all(r[-1] <= 0 for r in rows)


def _normalize_row(r: tuple) -> tuple:
    scale = max((abs(x) for x in r[:-1]), default=ZERO)
    if not scale:
        # 0 >= rhs: keep only the sign of rhs
        return tuple(ZERO for _ in r[:-1]) + ((ONE if r[-1] > 0 else -ONE if r[-1] < 0 else ZERO),)
    return tuple(x / scale for x in r)


# ---------------------------------------------------------------------------
# rational spectra
# ---------------------------------------------------------------------------

def rational_roots(p: Sequence) -> list | None:
    """Roots of ``p`` if it splits into linear factors over Q, else None.

    Factorization is delegated to sympy; multiplicities are dropped.
    """
    import sympy

    p = poly_trim(p)
    if len(p) <= 1:
        return []
    t = sympy.Symbol("t")
    expr = sum(sympy.Rational(int(c.numerator), int(c.denominator)) * t ** i
               for i, c in enumerate(p) if c)
    _, factors = sympy.factor_list(sympy.Poly(expr, t, domain="QQ"))
    roots = []
    for f, _mult in factors:
        if f.degree() != 1:
            return None
        a, b = f.all_coeffs()
        r = -sympy.Rational(b) / sympy.Rational(a)
        roots.append(mpq(int(r.p), int(r.q)))
    return sorted(roots)


def _restricted(m: Matrix, space: Subspace) -> Matrix:
    """Matrix of ``m`` on an invariant subspace, in the stored basis."""
    cols = [space.coords(matvec(m, list(b))) for b in space.basis]
    return transpose(cols)


def simultaneous_eigenspaces(mats: Sequence[Matrix], space: Subspace) -> list[tuple[tuple, Subspace]]:
    """Split ``space`` into joint eigenspaces of commuting diagonalizable matrices.

    Returns ``(eigenvalue tuple, subspace)`` pairs sorted by eigenvalues.
    Raises ValueError when some matrix is not diagonalizable over Q on the
    space.
    """
    pieces = [((), space)]
    for m in mats:
        refined = []
        for eigs, v in pieces:
            if v.dim == 0:
                continue
            r = _restricted(m, v)
            roots = rational_roots(minimal_polynomial(r))
            if roots is None:
                raise ValueError("spectrum is not rational")
            total = 0
            for lam in roots:
                shifted = mat_add(r, identity(len(r)), -lam)
                ker = kernel_basis(shifted, len(r))
                total += ker.dim
                vecs = []
                for c in ker.basis:
                    w = [ZERO] * space.ambient_dim
                    for coef, b in zip(c, v.basis):
                        if coef:
                            w = vec_add(w, b, coef)
                    vecs.append(w)
                refined.append((eigs + (lam,), Subspace.span(vecs, space.ambient_dim)))
            if total != v.dim:
                raise ValueError("matrix is not diagonalizable")
        pieces = refined
    return sorted(pieces, key=lambda t: t[0])
