"""Lie superalgebras given by rational structure constants.

A :class:`SuperAlgebra` stores its basis with all even elements first.  The
bracket table is sparse: ``table[(i, j)]`` is a tuple of ``(k, c)`` pairs for
every ordered pair with a nonzero bracket.  Subspaces are kept as canonical
echelon bases, so a graded subspace always has homogeneous basis rows.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .exactla import (
    ONE, ZERO, Matrix, Subspace, flatten, identity, kernel_basis, matmul,
    mat_add, rat, rat_str, rref, zeros,
)


class AlgebraError(ValueError):
    """Raised for malformed algebras, failed derivation checks and bad ideals."""


# ---------------------------------------------------------------------------
# matrix realizations
# ---------------------------------------------------------------------------

def matrix_parity(m: Matrix, p: int) -> int | None:
    """Parity of a square matrix on C^{p|q}: 0, 1, or None if inhomogeneous.

    The zero matrix counts as even.
    """
    n = len(m)
    even = odd = False
    for i in range(n):
        for j in range(n):
            if m[i][j]:
                if (i < p) == (j < p):
                    even = True
                else:
                    odd = True
    if even and odd:
        return None
    return 1 if odd else 0


def supercommutator(a: Matrix, pa: int, b: Matrix, pb: int) -> Matrix:
    sign = -ONE if pa & pb else ONE
    return mat_add(matmul(a, b), matmul(b, a), -sign)


@dataclass(frozen=True)
class Realization:
    """Matrices on C^{p|q} representing each basis element.

    ``central_ideal`` is a subspace of flattened (p+q)x(p+q) matrices.  The
    bracket of two representatives equals the representative of the
    structure-constant bracket modulo this ideal.  It is zero when the
    realization is faithful.
    """

    super_size: tuple
    matrices: tuple
    central_ideal: Subspace

    @property
    def size(self) -> int:
        return self.super_size[0] + self.super_size[1]

    @property
    def faithful(self) -> bool:
        return self.central_ideal.dim == 0

    def scalar_central_ideal(self) -> bool:
        """True if the tracked ideal is zero or spanned by the identity."""
        if self.central_ideal.dim == 0:
            return True
        ident = Subspace.span([flatten(identity(self.size))], self.size ** 2)
        return self.central_ideal == ident

    def image(self, x: Sequence) -> Matrix:
        """Representative matrix of the coordinate vector ``x``."""
        n = self.size
        out = zeros(n, n)
        for c, m in zip(x, self.matrices):
            if c:
                for i in range(n):
                    row, src = out[i], m[i]
                    for j in range(n):
                        if src[j]:
                            row[j] += c * src[j]
        return out


class _Coordinatizer:
    """Solve ``v = sum c_i b_i (+ ideal)`` repeatedly for a fixed basis."""

    def __init__(self, basis: Sequence[Sequence], extra: Sequence[Sequence] = ()):
        self.k = len(basis)
        rows = [list(map(rat, b)) for b in basis] + [list(map(rat, e)) for e in extra]
        total = len(rows)
        self.n = len(rows[0]) if rows else 0
        aug = [r + [ONE if t == i else ZERO for t in range(total)] for i, r in enumerate(rows)]
        red, piv, rk = rref(aug) if aug else ([], [], 0)
        if any(p >= self.n for p in piv):
            raise AlgebraError("basis vectors are linearly dependent")
        self.rows = [r[:self.n] for r in red[:rk]]
        self.trans = [r[self.n:self.n + self.k] for r in red[:rk]]
        self.pivots = piv

    def coords(self, v: Sequence) -> list | None:
        res = list(v)
        out = [ZERO] * self.k
        for row, t, p in zip(self.rows, self.trans, self.pivots):
            f = res[p]
            if f:
                for j, x in enumerate(row):
                    if x:
                        res[j] -= f * x
                for j, x in enumerate(t):
                    if x:
                        out[j] += f * x
        if any(res):
            return None
        return out


# ---------------------------------------------------------------------------
# the algebra
# ---------------------------------------------------------------------------

class SuperAlgebra:
    """Finite-dimensional Lie superalgebra over Q with even basis first."""

    def __init__(self, dim_even: int, dim_odd: int, names: Sequence[str],
                 brackets: dict, realization: Realization | None = None):
        self.dim_even = dim_even
        self.dim_odd = dim_odd
        self.names = tuple(names)
        if len(self.names) != self.dim:
            raise AlgebraError("wrong number of basis names")
        table = {}
        for (i, j), vec in brackets.items():
            items = vec.items() if isinstance(vec, dict) else vec
            entries = tuple(sorted((k, rat(c)) for k, c in items if c))
            if entries:
                table[(i, j)] = entries
        self._table = table
        self.realization = realization
        self._ad_cache: dict[int, Matrix] = {}
        self._matrix_coords = None

    # -- basics ------------------------------------------------------------
    @property
    def dim(self) -> int:
        return self.dim_even + self.dim_odd

    @property
    def sdim(self) -> tuple[int, int]:
        return (self.dim_even, self.dim_odd)

    def parity(self, i: int) -> int:
        return 0 if i < self.dim_even else 1

    def basis_vector(self, i: int) -> list:
        v = [ZERO] * self.dim
        v[i] = ONE
        return v

    def vector_parity(self, x: Sequence) -> int | None:
        """0 or 1 for homogeneous nonzero vectors, 0 for zero, None otherwise."""
        ev = any(x[:self.dim_even])
        od = any(x[self.dim_even:])
        if ev and od:
            return None
        return 1 if od else 0

    def even_part(self, x: Sequence) -> list:
        return list(x[:self.dim_even]) + [ZERO] * self.dim_odd

    def odd_part(self, x: Sequence) -> list:
        return [ZERO] * self.dim_even + list(x[self.dim_even:])

    def structure(self, i: int, j: int) -> tuple:
        return self._table.get((i, j), ())

    def nonzero_pairs(self):
        return self._table.keys()

    def bracket(self, x: Sequence, y: Sequence) -> list:
        if len(x) != self.dim or len(y) != self.dim:
            raise AlgebraError("dimension mismatch in bracket")
        out = [ZERO] * self.dim
        ynz = [(j, b) for j, b in enumerate(y) if b]
        for i, a in enumerate(x):
            if not a:
                continue
            for j, b in ynz:
                ent = self._table.get((i, j))
                if ent:
                    ab = a * b
                    for k, c in ent:
                        out[k] += ab * c
        return out

    def bracket_basis(self, i: int, j: int) -> list:
        out = [ZERO] * self.dim
        for k, c in self.structure(i, j):
            out[k] = c
        return out

    def ad(self, x: Sequence) -> Matrix:
        """Matrix of ``[x, -]``; column j is ``[x, b_j]``."""
        n = self.dim
        m = zeros(n, n)
        for i, a in enumerate(x):
            if a:
                for j in range(n):
                    for k, c in self._table.get((i, j), ()):
                        m[k][j] += a * c
        return m

    def ad_basis(self, i: int) -> Matrix:
        if i not in self._ad_cache:
            self._ad_cache[i] = self.ad(self.basis_vector(i))
        return self._ad_cache[i]

    def right_map(self, y: Sequence) -> Matrix:
        """Matrix of ``x -> [x, y]``; column i is ``[b_i, y]``."""
        n = self.dim
        m = zeros(n, n)
        for j, b in enumerate(y):
            if b:
                for i in range(n):
                    for k, c in self._table.get((i, j), ()):
                        m[k][i] += b * c
        return m

    def __repr__(self) -> str:
        return f"SuperAlgebra(dim=({self.dim_even}|{self.dim_odd}))"

    # -- serialization -------------------------------------------------------
    def to_json(self) -> dict:
        br = []
        for (i, j) in sorted(self._table):
            if i <= j:
                br.append([i, j, [[k, rat_str(c)] for k, c in self._table[(i, j)]]])
        real = None
        if self.realization is not None:
            r = self.realization
            real = {
                "super_size": list(r.super_size),
                "matrices": [[[rat_str(x) for x in row] for row in m] for m in r.matrices],
                "central_ideal": [[rat_str(x) for x in v] for v in r.central_ideal.basis],
            }
        return {"dim_even": self.dim_even, "dim_odd": self.dim_odd,
                "names": list(self.names), "brackets": br, "realization": real}

    @classmethod
    def from_json(cls, data: dict) -> "SuperAlgebra":
        try:
            p, q = int(data["dim_even"]), int(data["dim_odd"])
            names = list(data["names"])
            n = p + q
            brackets: dict = {}
            for i, j, entries in data["brackets"]:
                if not (0 <= i <= j < n):
                    raise AlgebraError(f"bracket index out of range or unordered: {(i, j)}")
                vec = {int(k): rat(c) for k, c in entries}
                if any(not 0 <= k < n for k in vec):
                    raise AlgebraError("bracket coefficient index out of range")
                brackets[(i, j)] = vec
                if i != j:
                    sign = ONE if (i >= p and j >= p) else -ONE
                    brackets[(j, i)] = {k: sign * c for k, c in vec.items()}
            real = None
            if data.get("realization") is not None:
                r = data["realization"]
                sp, sq = r["super_size"]
                mats = tuple(tuple(tuple(rat(x) for x in row) for row in m) for m in r["matrices"])
                size = sp + sq
                ideal = Subspace.span([[rat(x) for x in v] for v in r.get("central_ideal", [])], size * size)
                real = Realization((sp, sq), tuple([list(row) for row in m] for m in mats), ideal)
        except (KeyError, TypeError) as exc:
            raise AlgebraError(f"malformed algebra JSON: {exc}") from exc
        return cls(p, q, names, brackets, real)


# ---------------------------------------------------------------------------
# construction
# ---------------------------------------------------------------------------

def from_matrices(matrices: Sequence[Matrix], super_size: tuple[int, int],
                  names: Sequence[str] | None = None,
                  central_ideal: Iterable[Sequence] = ()) -> SuperAlgebra:
    """Structure constants of the span of homogeneous supermatrices.

    ``central_ideal`` lists flattened matrices that are treated as zero; the
    span must be closed under the supercommutator modulo them.
    """
    p = super_size[0]
    mats = [[list(map(rat, row)) for row in m] for m in matrices]
    pars = []
    for m in mats:
        par = matrix_parity(m, p)
        if par is None:
            raise AlgebraError("basis matrix is not homogeneous")
        pars.append(par)
    order = sorted(range(len(mats)), key=lambda i: pars[i])
    mats = [mats[i] for i in order]
    pars = [pars[i] for i in order]
    if names is None:
        names = [f"b{i}" for i in range(len(mats))]
    else:
        names = [names[i] for i in order]
    size = len(mats[0]) if mats else sum(super_size)
    ideal_vecs = [list(map(rat, v)) for v in central_ideal]
    coord = _Coordinatizer([flatten(m) for m in mats], ideal_vecs) if mats else None
    brackets = {}
    for i in range(len(mats)):
        for j in range(i, len(mats)):
            c = supercommutator(mats[i], pars[i], mats[j], pars[j])
            flat = flatten(c)
            if not any(flat):
                continue
            v = coord.coords(flat)
            if v is None:
                raise AlgebraError(f"span not closed under bracket at ({names[i]}, {names[j]})")
            vec = {k: x for k, x in enumerate(v) if x}
            if not vec:
                continue
            brackets[(i, j)] = vec
            if i != j:
                sign = ONE if pars[i] & pars[j] else -ONE
                brackets[(j, i)] = {k: sign * x for k, x in vec.items()}
    dim_even = pars.count(0)
    real = Realization(tuple(super_size), tuple(mats),
                       Subspace.span(ideal_vecs, size * size))
    return SuperAlgebra(dim_even, len(mats) - dim_even, names, brackets, real)


def coords_of_matrix(a: SuperAlgebra, m: Matrix) -> list | None:
    """Coordinates of a matrix in the realization basis, or None if outside."""
    r = a.realization
    if r is None:
        raise AlgebraError("algebra has no matrix realization")
    if a._matrix_coords is None:
        a._matrix_coords = _Coordinatizer([flatten(x) for x in r.matrices],
                                          list(r.central_ideal.basis))
    return a._matrix_coords.coords(flatten([list(map(rat, row)) for row in m]))


# ---------------------------------------------------------------------------
# consistency checks
# ---------------------------------------------------------------------------

def check_jacobi(a: SuperAlgebra) -> list[tuple]:
    """Violations of super-antisymmetry and of the graded Jacobi identity.

    Antisymmetry violations are reported as ``(i, j)`` pairs.  With
    antisymmetry in place the cyclic Jacobi expression changes only by a sign
    under transpositions, so sorted triples ``i <= j <= k`` suffice.
    """
    bad: list[tuple] = []
    n = a.dim
    for i in range(n):
        for j in range(i, n):
            sign = ONE if a.parity(i) & a.parity(j) else -ONE
            u = a.bracket_basis(i, j)
            v = a.bracket_basis(j, i)
            if any(x - sign * y for x, y in zip(u, v)):
                bad.append((i, j))
    if bad:
        return bad
    ads = [a.ad_basis(i) for i in range(n)]

    def br_basis_vec(i, v):
        m = ads[i]
        nz = [(t, x) for t, x in enumerate(v) if x]
        return [sum((m[r][t] * x for t, x in nz), ZERO) for r in range(n)]

    for i in range(n):
        for j in range(i, n):
            bij = a.bracket_basis(i, j)
            for k in range(j, n):
                pi, pj, pk = a.parity(i), a.parity(j), a.parity(k)
                t1 = br_basis_vec(i, a.bracket_basis(j, k))
                t2 = br_basis_vec(j, a.bracket_basis(k, i))
                t3 = br_basis_vec(k, bij)
                s1 = -ONE if pi & pk else ONE
                s2 = -ONE if pj & pi else ONE
                s3 = -ONE if pk & pj else ONE
                if any(s1 * x + s2 * y + s3 * z for x, y, z in zip(t1, t2, t3)):
                    bad.append((i, j, k))
    return bad


def verify(a: SuperAlgebra) -> SuperAlgebra:
    bad = check_jacobi(a)
    if bad:
        raise AlgebraError(f"Jacobi identity fails at {bad[:3]}")
    return a


# ---------------------------------------------------------------------------
# subalgebras
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Subalgebra:
    """A bracket-closed subspace of ``parent`` in parent coordinates."""

    parent: SuperAlgebra = field(compare=False)
    space: Subspace

    @property
    def dim(self) -> int:
        return self.space.dim

    @property
    def graded(self) -> bool:
        return all(self.parent.vector_parity(v) is not None for v in self.space.basis)

    @property
    def sdim(self) -> tuple[int, int]:
        ev = sum(1 for p in self.space.pivots if p < self.parent.dim_even)
        return (ev, self.dim - ev)

    def even_basis(self) -> list[list]:
        return [list(v) for v, p in zip(self.space.basis, self.space.pivots)
                if p < self.parent.dim_even]

    def odd_basis(self) -> list[list]:
        return [list(v) for v, p in zip(self.space.basis, self.space.pivots)
                if p >= self.parent.dim_even]

    def contains(self, v: Sequence) -> bool:
        return self.space.contains(v)

    def is_ideal(self) -> bool:
        a = self.parent
        return all(self.space.contains(a.bracket(a.basis_vector(i), v))
                   for i in range(a.dim) for v in self.space.basis)

    def as_algebra(self, names: Sequence[str] | None = None) -> SuperAlgebra:
        """The subalgebra as a standalone algebra on its echelon basis."""
        return restrict(self, names)

    def __repr__(self) -> str:
        e, o = self.sdim
        return f"Subalgebra(dim=({e}|{o}))"


def subalgebra(a: SuperAlgebra, vectors: Iterable[Sequence]) -> Subalgebra:
    """Wrap a spanning set, checking closure."""
    s = Subalgebra(a, Subspace.span(list(vectors), a.dim))
    basis = s.space.basis
    for i, u in enumerate(basis):
        for v in basis[i:]:
            if not s.space.contains(a.bracket(u, v)):
                raise AlgebraError("subspace is not closed under the bracket")
    return s


def whole(a: SuperAlgebra) -> Subalgebra:
    return Subalgebra(a, Subspace.full(a.dim))


def zero_subalgebra(a: SuperAlgebra) -> Subalgebra:
    return Subalgebra(a, Subspace.zero(a.dim))


def _homogeneous_pieces(a: SuperAlgebra, vectors: Iterable[Sequence]) -> list[list]:
    out = []
    for v in vectors:
        v = list(map(rat, v))
        for piece in (a.even_part(v), a.odd_part(v)):
            if any(piece):
                out.append(piece)
    return out


def generated_subalgebra(a: SuperAlgebra, gens: Iterable[Sequence]) -> Subalgebra:
    """Smallest graded subalgebra containing ``gens``.

    Generators are split into homogeneous components first.
    """
    space = Subspace.span(_homogeneous_pieces(a, gens), a.dim)
    frontier = space.vectors()
    while frontier:
        basis = space.vectors()
        new = []
        for u in frontier:
            for v in basis:
                w = a.bracket(u, v)
                if any(w) and not space.contains(w):
                    space = space + Subspace.span([w], a.dim)
                    new.append(w)
        frontier = new
    return Subalgebra(a, space)


def center(a: SuperAlgebra) -> Subalgebra:
    return centralizer(a, Subspace.full(a.dim))


def centralizer(a: SuperAlgebra, s: Subspace) -> Subalgebra:
    """Elements commuting with every vector of ``s``."""
    rows = []
    for v in s.basis:
        rows.extend(a.right_map(v))
    if not rows:
        return whole(a)
    return Subalgebra(a, kernel_basis(rows))


def derived_subalgebra(a: SuperAlgebra) -> Subalgebra:
    vecs = [a.bracket_basis(i, j) for (i, j) in a.nonzero_pairs() if i <= j]
    return Subalgebra(a, Subspace.span(vecs, a.dim))


def odd_generated_part(a: SuperAlgebra) -> Subalgebra:
    """``[g_1, g_1] + g_1``."""
    n0 = a.dim_even
    vecs = [a.bracket_basis(i, j) for (i, j) in a.nonzero_pairs()
            if n0 <= i <= j]
    vecs += [a.basis_vector(i) for i in range(n0, a.dim)]
    return Subalgebra(a, Subspace.span(vecs, a.dim))


def is_oddly_generated(a: SuperAlgebra) -> bool:
    return odd_generated_part(a).dim == a.dim


def normalizer(a: SuperAlgebra, k: Subalgebra) -> Subalgebra:
    """``{x : [x, k] ⊆ k}``."""
    space = k.space
    free = space.complement_coords()
    if not free:
        return whole(a)
    rows = []
    for v in space.basis:
        m = a.right_map(v)  # column i: [b_i, v]
        cols = list(zip(*m))
        for c in free:
            row = []
            for col in cols:
                res = space.reduce(col)
                row.append(res[c])
            rows.append(row)
    if not rows:
        return whole(a)
    return Subalgebra(a, kernel_basis(rows))


def ideal_generated(a: SuperAlgebra, vectors: Iterable[Sequence]) -> Subalgebra:
    """Smallest graded ideal containing ``vectors``."""
    rows: list[tuple[int, list]] = []

    def absorb(w: list) -> bool:
        w = list(w)
        for p, r in rows:
            c = w[p]
            if c:
                for j, x in enumerate(r):
                    if x:
                        w[j] -= c * x
        piv = next((j for j, x in enumerate(w) if x), None)
        if piv is None:
            return False
        inv = 1 / w[piv]
        rows.append((piv, [x * inv for x in w]))
        return True

    frontier = [list(v) for v in _homogeneous_pieces(a, vectors) if absorb(v)]
    basis = [a.basis_vector(i) for i in range(a.dim)]
    while frontier:
        new = []
        for v in frontier:
            for b in basis:
                w = a.bracket(b, v)
                if any(w) and absorb(w):
                    new.append(w)
        frontier = new
    return Subalgebra(a, Subspace.span([r for _, r in rows], a.dim))


# ---------------------------------------------------------------------------
# new algebras from old
# ---------------------------------------------------------------------------

def restrict(k: Subalgebra, names: Sequence[str] | None = None) -> SuperAlgebra:
    """Standalone algebra on the echelon basis of a graded subalgebra."""
    a = k.parent
    if not k.graded:
        raise AlgebraError("only graded subalgebras can be restricted")
    basis = k.even_basis() + k.odd_basis()
    coord = _Coordinatizer(basis)
    brackets = {}
    for i, u in enumerate(basis):
        for j, v in enumerate(basis):
            w = a.bracket(u, v)
            if any(w):
                c = coord.coords(w)
                if c is None:
                    raise AlgebraError("subspace is not closed under the bracket")
                brackets[(i, j)] = {t: x for t, x in enumerate(c) if x}
    if names is None:
        names = [_vector_name(a, v) for v in basis]
    real = None
    if a.realization is not None:
        r = a.realization
        real = Realization(r.super_size, tuple(r.image(v) for v in basis), r.central_ideal)
    ev = len(k.even_basis())
    return SuperAlgebra(ev, len(basis) - ev, names, brackets, real)


def _vector_name(a: SuperAlgebra, v: Sequence) -> str:
    nz = [(i, c) for i, c in enumerate(v) if c]
    if len(nz) == 1 and nz[0][1] == 1:
        return a.names[nz[0][0]]
    parts = []
    for i, c in nz:
        parts.append(a.names[i] if c == 1 else f"({rat_str(c)}){a.names[i]}")
    return "+".join(parts)


def quotient(a: SuperAlgebra, ideal: Subalgebra) -> SuperAlgebra:
    """Induced structure on the coordinate complement of the echelonized ideal."""
    if not ideal.is_ideal():
        raise AlgebraError("quotient by a subspace that is not an ideal")
    space = ideal.space
    keep = space.complement_coords()
    pos = {c: t for t, c in enumerate(keep)}
    brackets = {}
    for (i, j), ent in ((p, a.structure(*p)) for p in a.nonzero_pairs()):
        if i in pos and j in pos:
            w = [ZERO] * a.dim
            for k, c in ent:
                w[k] = c
            res = space.reduce(w)
            vec = {pos[c]: res[c] for c in keep if res[c]}
            if vec:
                brackets[(pos[i], pos[j])] = vec
    ev = sum(1 for c in keep if c < a.dim_even)
    real = None
    central = center(a).space.contains_space(space)
    if a.realization is not None and central:
        r = a.realization
        extra = [flatten(r.image(v)) for v in space.basis]
        ideal_space = r.central_ideal + Subspace.span(extra, r.size ** 2) if extra else r.central_ideal
        real = Realization(r.super_size, tuple(r.matrices[c] for c in keep), ideal_space)
    return SuperAlgebra(ev, len(keep) - ev, [a.names[c] for c in keep], brackets, real)


def projection(a: SuperAlgebra, ideal: Subalgebra, v: Sequence) -> list:
    """Image of ``v`` in ``quotient(a, ideal)`` coordinates."""
    return ideal.space.quotient_coords(v)


def direct_sum(*parts: SuperAlgebra) -> SuperAlgebra:
    """Direct sum; the basis lists the even parts, then the odd parts, in order."""
    index = []  # (part, local index) in new order
    for par in (0, 1):
        for t, a in enumerate(parts):
            rng = range(a.dim_even) if par == 0 else range(a.dim_even, a.dim)
            index.extend((t, i) for i in rng)
    pos = {key: n for n, key in enumerate(index)}
    brackets = {}
    for t, a in enumerate(parts):
        for (i, j) in a.nonzero_pairs():
            brackets[(pos[(t, i)], pos[(t, j)])] = {pos[(t, k)]: c for k, c in a.structure(i, j)}
    names = []
    for t, i in index:
        nm = parts[t].names[i]
        names.append(nm if len(parts) == 1 else f"{nm}#{t}")
    dim_even = sum(a.dim_even for a in parts)
    real = None
    if parts and all(a.realization is not None for a in parts):
        real = _block_realization(parts, index)
    return SuperAlgebra(dim_even, len(index) - dim_even, names, brackets, real)


def _block_realization(parts, index) -> Realization:
    sizes = [a.realization.super_size for a in parts]
    P = sum(s[0] for s in sizes)
    Q = sum(s[1] for s in sizes)
    N = P + Q
    # new row index of old coordinate r in part t
    maps = []
    e_off = o_off = 0
    for (p, q) in sizes:
        maps.append([e_off + r if r < p else P + o_off + (r - p) for r in range(p + q)])
        e_off += p
        o_off += q

    def embed(t, m):
        out = zeros(N, N)
        mp = maps[t]
        for i, row in enumerate(m):
            for j, x in enumerate(row):
                if x:
                    out[mp[i]][mp[j]] = x
        return out

    mats = tuple(embed(t, parts[t].realization.matrices[i]) for t, i in index)
    ideal = []
    for t, a in enumerate(parts):
        n = sum(sizes[t])
        for v in a.realization.central_ideal.basis:
            m = [list(v[r * n:(r + 1) * n]) for r in range(n)]
            ideal.append(flatten(embed(t, m)))
    return Realization((P, Q), mats, Subspace.span(ideal, N * N))


def is_derivation(a: SuperAlgebra, d: Matrix, parity: int) -> bool:
    for i in range(a.dim):
        for j in range(a.dim):
            lhs = _apply(d, a.bracket_basis(i, j))
            di = [row[i] for row in d]
            dj = [row[j] for row in d]
            sign = -ONE if parity & a.parity(i) else ONE
            rhs = [x + sign * y for x, y in zip(a.bracket(di, a.basis_vector(j)),
                                                 a.bracket(a.basis_vector(i), dj))]
            if lhs != rhs:
                return False
    return True


def _apply(m: Matrix, v: Sequence) -> list:
    nz = [(j, x) for j, x in enumerate(v) if x]
    return [sum((row[j] * x for j, x in nz), ZERO) for row in m]


def _matrix_parity_on(a: SuperAlgebra, d: Matrix) -> int | None:
    return matrix_parity(d, a.dim_even)


def semidirect(a: SuperAlgebra, ders: Sequence[Matrix],
               names: Sequence[str] | None = None,
               der_realization: Sequence[Matrix] | None = None) -> SuperAlgebra:
    """``a`` extended by a space of homogeneous derivations.

    The span of ``ders`` must be closed under the supercommutator.  If
    ``der_realization`` gives matrices for the derivations in the ambient
    realization of ``a``, the realization is carried over.
    """
    ders = [[list(map(rat, row)) for row in d] for d in ders]
    pars = []
    for d in ders:
        par = _matrix_parity_on(a, d)
        if par is None:
            raise AlgebraError("derivation is not homogeneous")
        if not is_derivation(a, d, par):
            raise AlgebraError("matrix is not a derivation")
        pars.append(par)
    if names is None:
        names = [f"d{t}" for t in range(len(ders))]
    n = a.dim
    # new order: even of a, even ders, odd of a, odd ders
    ev_d = [t for t in range(len(ders)) if pars[t] == 0]
    od_d = [t for t in range(len(ders)) if pars[t] == 1]
    new_of_old = {}
    new_of_der = {}
    cursor = 0
    for i in range(a.dim_even):
        new_of_old[i] = cursor
        cursor += 1
    for t in ev_d:
        new_of_der[t] = cursor
        cursor += 1
    for i in range(a.dim_even, n):
        new_of_old[i] = cursor
        cursor += 1
    for t in od_d:
        new_of_der[t] = cursor
        cursor += 1
    total = cursor
    brackets: dict = {}

    def put(i, j, vec):
        if vec:
            brackets[(i, j)] = vec

    for (i, j) in a.nonzero_pairs():
        put(new_of_old[i], new_of_old[j], {new_of_old[k]: c for k, c in a.structure(i, j)})
    for t, d in enumerate(ders):
        for i in range(n):
            col = {new_of_old[k]: d[k][i] for k in range(n) if d[k][i]}
            put(new_of_der[t], new_of_old[i], col)
            sign = ONE if pars[t] & a.parity(i) else -ONE
            put(new_of_old[i], new_of_der[t], {k: sign * c for k, c in col.items()})
    flat = [flatten(d) for d in ders]
    coord = _Coordinatizer(flat) if ders else None
    for s, ds in enumerate(ders):
        for t, dt in enumerate(ders):
            c = supercommutator(ds, pars[s], dt, pars[t])
            f = flatten(c)
            if not any(f):
                continue
            v = coord.coords(f)
            if v is None:
                raise AlgebraError("derivations do not close under the bracket")
            put(new_of_der[s], new_of_der[t], {new_of_der[u]: x for u, x in enumerate(v) if x})
    all_names = [None] * total
    for i, p in new_of_old.items():
        all_names[p] = a.names[i]
    for t, p in new_of_der.items():
        all_names[p] = names[t]
    real = None
    if der_realization is not None and a.realization is not None:
        r = a.realization
        mats = [None] * total
        for i, p in new_of_old.items():
            mats[p] = r.matrices[i]
        for t, p in new_of_der.items():
            mats[p] = [list(map(rat, row)) for row in der_realization[t]]
        real = Realization(r.super_size, tuple(mats), r.central_ideal)
    dim_even = a.dim_even + len(ev_d)
    return verify(SuperAlgebra(dim_even, total - dim_even, all_names, brackets, real))


def adjoint_matrix(a: SuperAlgebra, x: Sequence) -> Matrix:
    return a.ad([rat(c) for c in x])


def bracket(a: SuperAlgebra, x: Sequence, y: Sequence) -> list:
    return a.bracket([rat(c) for c in x], [rat(c) for c in y])
