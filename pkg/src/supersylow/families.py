"""Constructors for the matrix superalgebra families and their Sylow recipes.

Every family is built from homogeneous supermatrices on C^{p|q}.  Algebras
without a faithful small realization (psl, pq, psq) are quotients by the
identity matrix, tracked in ``realization.central_ideal``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence

from .exactla import (
    ONE, ZERO, Subspace, flatten, identity, kernel_basis, rat, zeros,
)
from .liesuper import (
    AlgebraError, SuperAlgebra, Subalgebra, coords_of_matrix, from_matrices,
    generated_subalgebra, quotient, subalgebra,
)

FAMILIES = ("gl", "sl", "psl", "osp", "q", "sq", "pq", "psq", "pe", "spe",
            "takiff", "takiff0", "counterexample", "sl2", "sln", "son", "sp2n")


@dataclass(frozen=True)
class FamilySpec:
    """A named family with integer parameters.

    ``params`` holds ``(m, n)`` for gl/sl/psl, ``(m, 2n)`` for osp, ``(n,)``
    for the queer, periplectic and counterexample families, and a tuple of
    ``(kind, size)`` simple factors for takiff/takiff0.  ``derivations`` is
    used by takiff0 only: vectors in the coordinates of the odd derivations
    ``d/dxi_1, ..., d/dxi_k``.
    """

    family: str
    params: tuple
    derivations: tuple | None = None
    require_surjective: bool = True

    def label(self) -> str:
        f, p = self.family, self.params
        if f in ("gl", "sl", "psl", "osp"):
            return f"{f}({p[0]}|{p[1]})"
        if f in ("takiff", "takiff0"):
            inner = "+".join(f"{k}{s}" for k, s in p)
            if f == "takiff0" and self.derivations is not None:
                vecs = ";".join("[" + ",".join(str(x) for x in v) + "]" for v in self.derivations)
                return f"{f}({inner};d={vecs})"
            return f"{f}({inner})"
        if f in ("sl2",):
            return "sl(2)"
        if f == "sln":
            return f"sl({p[0]})"
        if f == "son":
            return f"so({p[0]})"
        if f == "sp2n":
            return f"sp({p[0]})"
        return f"{f}({p[0]})"

    def __str__(self) -> str:
        return self.label()


_SIMPLE = re.compile(r"^(sl|so|sp)(\d+)$")


def _parse_factors(text: str) -> tuple:
    factors = []
    for chunk in re.split(r"[+⊕]", text):
        chunk = chunk.strip().replace("(", "").replace(")", "")
        mult = 1
        if "*" in chunk:
            chunk, m = chunk.split("*")
            mult = int(m)
        m = _SIMPLE.match(chunk.strip())
        if not m:
            raise ValueError(f"unknown simple factor {chunk!r}")
        kind, size = m.group(1), int(m.group(2))
        factors.extend([(kind, size)] * mult)
    return tuple(factors)


def _parse_vectors(text: str) -> tuple:
    text = text.strip()
    groups = re.findall(r"\[([^\[\]]*)\]", text)
    if not groups:
        raise ValueError(f"cannot parse derivation vectors {text!r}")
    return tuple(tuple(int(x) for x in g.split(",") if x.strip()) for g in groups)


def parse_family(text: str) -> FamilySpec:
    """Parse strings such as ``gl(2|3)``, ``psq(4)``, ``takiff0(sl2*2;d=[1,-1])``.

    Parameter ranges are checked here so that bad input fails before any
    construction work.
    """
    spec = _parse_raw(text)
    _check_params(spec)
    return spec


def _check_params(spec: FamilySpec) -> None:
    f, p = spec.family, spec.params
    if f in ("gl", "sl", "psl", "osp") and min(p) < 0:
        raise ValueError("parameters must be non-negative")
    low = {"gl": 1, "sl": 2, "psl": 4, "osp": 1}
    if f in low and sum(p) < low[f]:
        raise ValueError(f"{spec.label()} is too small")
    if f == "psl" and p[0] != p[1]:
        raise ValueError("psl needs m = n")
    if f == "osp" and p[1] % 2:
        raise ValueError("osp(m|2n) needs an even second parameter")
    if f in ("q", "sq", "pq", "pe", "spe", "counterexample") and p[0] < 1:
        raise ValueError(f"{f} needs n >= 1")
    if f == "psq" and p[0] < 2:
        raise ValueError("psq(n) needs n >= 2")
    if f == "takiff0" and spec.derivations is not None:
        if any(len(v) != len(p) for v in spec.derivations):
            raise ValueError("derivation vectors must have one entry per factor")


def _parse_raw(text: str) -> FamilySpec:
    s = text.strip().replace(" ", "")
    m = re.match(r"^([a-z]+\d*)\((.*)\)$", s)
    if not m:
        m2 = _SIMPLE.match(s)
        if m2:
            return _simple_spec(m2.group(1), int(m2.group(2)))
        raise ValueError(f"cannot parse family {text!r}")
    name, body = m.group(1), m.group(2)
    if name in ("gl", "sl", "psl", "osp") and "|" in body:
        a, b = body.split("|")
        return FamilySpec(name, (int(a), int(b)))
    if name in ("sl", "so", "sp") and body.isdigit():
        return _simple_spec(name, int(body))
    if name in ("q", "sq", "pq", "psq", "pe", "spe", "counterexample"):
        return FamilySpec(name, (int(body),))
    if name in ("takiff", "takiff0"):
        ders = None
        if ";" in body:
            body, rest = body.split(";", 1)
            rest = rest.strip()
            if not rest.startswith("d="):
                raise ValueError(f"expected d=[...] in {text!r}")
            ders = _parse_vectors(rest[2:])
        factors = _parse_factors(body)
        if name == "takiff" and ders is not None:
            raise ValueError("takiff takes no derivations")
        return FamilySpec(name, factors, ders)
    raise ValueError(f"unknown family {name!r}")


def _simple_spec(kind: str, size: int) -> FamilySpec:
    if kind == "sl":
        return FamilySpec("sl2", (2,)) if size == 2 else FamilySpec("sln", (size,))
    if kind == "so":
        return FamilySpec("son", (size,))
    return FamilySpec("sp2n", (size,))


# ---------------------------------------------------------------------------
# matrix helpers
# ---------------------------------------------------------------------------

def elementary(n: int, i: int, j: int) -> list:
    m = zeros(n, n)
    m[i][j] = ONE
    return m


def _name(i: int, j: int) -> str:
    return f"E{i + 1},{j + 1}"


def _form_stabilizer(form: list, p: int, q: int, extra=None) -> tuple[list, list]:
    """Homogeneous basis of {X : B(Xu,v) + (-1)^{|X||u|} B(u,Xv) = 0}.

    ``extra(parity)`` may return additional linear rows on flattened X.
    Returns matrices and names.
    """
    n = p + q
    par = [0] * p + [1] * q
    mats, names = [], []
    for xpar in (0, 1):
        support = [(a, b) for a in range(n) for b in range(n) if (par[a] ^ par[b]) == xpar]
        index = {e: t for t, e in enumerate(support)}
        rows = []
        for a in range(n):
            for b in range(n):
                row = [ZERO] * len(support)
                sign = -ONE if xpar and par[a] else ONE
                for c in range(n):
                    if form[c][b] and (c, a) in index:
                        row[index[(c, a)]] += form[c][b]
                    if form[a][c] and (c, b) in index:
                        row[index[(c, b)]] += sign * form[a][c]
                if any(row):
                    rows.append(row)
        if extra is not None:
            for lin in extra(xpar):
                rows.append([lin[a * n + b] for (a, b) in support])
        ker = kernel_basis(rows, len(support)) if rows else Subspace.full(len(support))
        for v in ker.basis:
            m = zeros(n, n)
            for t, x in enumerate(v):
                if x:
                    a, b = support[t]
                    m[a][b] = x
            lead = next(t for t, x in enumerate(v) if x)
            mats.append(m)
            names.append("X" + _name(*support[lead])[1:])
    return mats, names


def osp_form(m: int, two_n: int) -> list:
    n = two_n // 2
    size = m + two_n
    b = zeros(size, size)
    for i in range(m):
        b[i][m - 1 - i] = ONE
    for i in range(two_n):
        b[m + i][m + two_n - 1 - i] = ONE if i < n else -ONE
    return b


def pe_form(n: int) -> list:
    b = zeros(2 * n, 2 * n)
    for i in range(n):
        b[i][n + i] = ONE
        b[n + i][i] = ONE
    return b


def _trace_rows(n: int, p: int):
    """Linear row(s) on flattened matrices computing the supertrace."""
    row = [ZERO] * (n * n)
    for i in range(n):
        row[i * n + i] = ONE if i < p else -ONE
    return [row]


# ---------------------------------------------------------------------------
# families
# ---------------------------------------------------------------------------

def gl(m: int, n: int) -> SuperAlgebra:
    size = m + n
    mats = [elementary(size, i, j) for i in range(size) for j in range(size)]
    names = [_name(i, j) for i in range(size) for j in range(size)]
    return from_matrices(mats, (m, n), names)


def _sl_matrices(m: int, n: int):
    size = m + n
    w = [ONE] * m + [-ONE] * n
    mats, names = [], []
    for i in range(size):
        for j in range(size):
            if i != j:
                mats.append(elementary(size, i, j))
                names.append(_name(i, j))
    for k in range(size - 1):
        h = zeros(size, size)
        h[k][k] = ONE
        h[k + 1][k + 1] = -w[k] / w[k + 1]
        mats.append(h)
        names.append(f"H{k + 1}")
    return mats, names


def sl(m: int, n: int) -> SuperAlgebra:
    if m + n < 2:
        raise ValueError("sl(m|n) needs m+n >= 2")
    mats, names = _sl_matrices(m, n)
    return from_matrices(mats, (m, n), names)


def _mod_identity(a: SuperAlgebra) -> SuperAlgebra:
    size = a.realization.size
    c = coords_of_matrix(a, identity(size))
    if c is None:
        raise AlgebraError("identity matrix is not in the algebra")
    return quotient(a, subalgebra(a, [c]))


def psl(n: int) -> SuperAlgebra:
    if n < 2:
        raise ValueError("psl(n|n) needs n >= 2")
    return _mod_identity(sl(n, n))


def osp(m: int, two_n: int) -> SuperAlgebra:
    if two_n % 2:
        raise ValueError("osp(m|2n) needs an even second parameter")
    if m + two_n == 0:
        raise ValueError("osp(0|0) is empty")
    mats, names = _form_stabilizer(osp_form(m, two_n), m, two_n)
    return from_matrices(mats, (m, two_n), names)


def _q_basis(n: int, odd_trace_zero: bool):
    size = 2 * n
    mats, names = [], []
    for i in range(n):
        for j in range(n):
            e = zeros(size, size)
            e[i][j] = ONE
            e[n + i][n + j] = ONE
            mats.append(e)
            names.append(f"A{i + 1},{j + 1}")
    for i in range(n):
        for j in range(n):
            if odd_trace_zero and i == j:
                continue
            o = zeros(size, size)
            o[i][n + j] = ONE
            o[n + i][j] = ONE
            mats.append(o)
            names.append(f"B{i + 1},{j + 1}")
    diag = range(n - 1) if odd_trace_zero else ()
    for k in diag:
        o = zeros(size, size)
        o[k][n + k] = ONE
        o[n + k][k] = ONE
        o[k + 1][n + k + 1] = -ONE
        o[n + k + 1][k + 1] = -ONE
        mats.append(o)
        names.append(f"K{k + 1}")
    return mats, names


def q(n: int) -> SuperAlgebra:
    mats, names = _q_basis(n, False)
    return from_matrices(mats, (n, n), names)


def sq(n: int) -> SuperAlgebra:
    mats, names = _q_basis(n, True)
    return from_matrices(mats, (n, n), names)


def pq(n: int) -> SuperAlgebra:
    return _mod_identity(q(n))


def psq(n: int) -> SuperAlgebra:
    if n < 2:
        raise ValueError("psq(n) needs n >= 2")
    return _mod_identity(sq(n))


def pe(n: int) -> SuperAlgebra:
    mats, names = _form_stabilizer(pe_form(n), n, n)
    return from_matrices(mats, (n, n), names)


def spe(n: int) -> SuperAlgebra:
    size = 2 * n
    mats, names = _form_stabilizer(
        pe_form(n), n, n, extra=lambda par: _trace_rows(size, n) if par == 0 else [])
    return from_matrices(mats, (n, n), names)


def counterexample(n: int) -> SuperAlgebra:
    """``{[[A, B], [c I, A]]}`` inside gl(n|n)."""
    size = 2 * n
    mats, names = [], []
    for i in range(n):
        for j in range(n):
            e = zeros(size, size)
            e[i][j] = ONE
            e[n + i][n + j] = ONE
            mats.append(e)
            names.append(f"A{i + 1},{j + 1}")
    for i in range(n):
        for j in range(n):
            mats.append(elementary(size, i, n + j))
            names.append(f"B{i + 1},{j + 1}")
    lam = zeros(size, size)
    for i in range(n):
        lam[n + i][i] = ONE
    mats.append(lam)
    names.append("L")
    return from_matrices(mats, (n, n), names)


def simple_matrices(kind: str, size: int) -> tuple[list, list]:
    """Plain matrices of sl(n), so(n) or sp(n) with names."""
    if kind == "sl":
        mats, names = _sl_matrices(size, 0)
    elif kind == "so":
        mats, names = _form_stabilizer(osp_form(size, 0), size, 0)
    elif kind == "sp":
        if size % 2:
            raise ValueError("sp needs even size")
        mats, names = _form_stabilizer(osp_form(0, size), 0, size)
    else:
        raise ValueError(f"unknown simple kind {kind!r}")
    return mats, names


def lie_algebra(kind: str, size: int) -> SuperAlgebra:
    mats, names = simple_matrices(kind, size)
    return from_matrices(mats, (size, 0), names)


def _takiff_matrices(factors: Sequence[tuple]) -> tuple[list, list, list, tuple]:
    """Block realization of the Takiff algebra and its odd derivations."""
    blocks = [simple_matrices(k, s) for k, s in factors]
    sizes = [len(b[0][0]) for b in blocks]
    R = sum(sizes)
    N = 2 * R
    mats, names, ders = [], [], []
    off = 0
    for t, ((bm, bn), r) in enumerate(zip(blocks, sizes)):
        tag = f"{factors[t][0]}{factors[t][1]}#{t + 1}" if len(factors) > 1 else ""
        for mat, nm in zip(bm, bn):
            ev = zeros(N, N)
            od = zeros(N, N)
            for i in range(r):
                for j in range(r):
                    if mat[i][j]:
                        ev[off + i][off + j] = mat[i][j]
                        ev[R + off + i][R + off + j] = mat[i][j]
                        od[R + off + i][off + j] = mat[i][j]
            mats.extend([ev, od])
            names.extend([f"{nm}{tag}", f"{nm}.xi{tag}"])
        d = zeros(N, N)
        for i in range(r):
            d[off + i][R + off + i] = ONE
        ders.append(d)
        off += r
    return mats, names, ders, (R, R)


def takiff(factors: Sequence[tuple]) -> SuperAlgebra:
    mats, names, _, size = _takiff_matrices(factors)
    return from_matrices(mats, size, names)


def takiff0(factors: Sequence[tuple], derivations: Sequence[Sequence] | None = None,
            require_surjective: bool = True) -> SuperAlgebra:
    mats, names, ders, size = _takiff_matrices(factors)
    k = len(factors)
    if derivations is None:
        derivations = [[ONE if i == j else ZERO for j in range(k)] for i in range(k)]
    vecs = [list(map(rat, v)) for v in derivations]
    if any(len(v) != k for v in vecs):
        raise ValueError("derivation vectors must have one entry per factor")
    vecs = Subspace.span(vecs, k).vectors()
    if require_surjective:
        for i in range(k):
            if not any(v[i] for v in vecs):
                raise ValueError(f"derivation space does not project onto d/dxi_{i + 1}")
    n = size[0] + size[1]
    for t, v in enumerate(vecs):
        d = zeros(n, n)
        for i, c in enumerate(v):
            if c:
                for r in range(n):
                    for s in range(n):
                        if ders[i][r][s]:
                            d[r][s] += c * ders[i][r][s]
        mats.append(d)
        names.append(f"D{t + 1}")
    return from_matrices(mats, size, names)


@lru_cache(maxsize=None)
def construct(spec: FamilySpec) -> SuperAlgebra:
    """Build the algebra named by ``spec``; results are cached and shared."""
    f, p = spec.family, spec.params
    if f == "gl":
        return gl(*p)
    if f == "sl":
        return sl(*p)
    if f == "psl":
        if p[0] != p[1]:
            raise ValueError("psl needs m = n")
        return psl(p[0])
    if f == "osp":
        return osp(*p)
    if f in ("q", "sq", "pq", "psq", "pe", "spe", "counterexample"):
        n = p[0]
        if n < 1:
            raise ValueError(f"{f} needs n >= 1")
        return {"q": q, "sq": sq, "pq": pq, "psq": psq, "pe": pe, "spe": spe,
                "counterexample": counterexample}[f](n)
    if f == "takiff":
        return takiff(p)
    if f == "takiff0":
        return takiff0(p, spec.derivations, spec.require_surjective)
    if f in ("sl2", "sln"):
        return lie_algebra("sl", p[0])
    if f == "son":
        return lie_algebra("so", p[0])
    if f == "sp2n":
        return lie_algebra("sp", p[0])
    raise ValueError(f"unknown family {f!r}")


def standard_module(a: SuperAlgebra):
    """The defining representation of a faithfully realized algebra."""
    from .dsrep import FdModule
    r = a.realization
    if r is None or not r.faithful:
        raise AlgebraError("standard module needs a faithful matrix realization")
    return FdModule(a, r.super_size[0], r.super_size[1], r.matrices)


# ---------------------------------------------------------------------------
# pattern subspaces and Sylow recipes
# ---------------------------------------------------------------------------

def pattern_subspace(a: SuperAlgebra, allowed, extra_rows=()) -> Subspace:
    """Elements whose representative matrix is supported on ``allowed``.

    Representatives may be shifted by the tracked central ideal.  ``allowed``
    is a predicate on entry positions; ``extra_rows`` are linear functionals
    on flattened matrices that must also vanish.
    """
    r = a.realization
    n = r.size
    ideal = list(r.central_ideal.basis)
    flats = [flatten(m) for m in r.matrices] + ideal
    rows = []
    for pos in range(n * n):
        if allowed(pos // n, pos % n):
            continue
        row = [f[pos] for f in flats]
        if any(row):
            rows.append(row)
    for lin in extra_rows:
        row = [sum((x * y for x, y in zip(lin, f) if x), ZERO) for f in flats]
        if any(row):
            rows.append(row)
    total = len(flats)
    ker = kernel_basis(rows, total) if rows else Subspace.full(total)
    return Subspace.span([v[:a.dim] for v in ker.basis], a.dim)


def pattern_subalgebra(a: SuperAlgebra, allowed, extra_rows=()) -> Subalgebra:
    return subalgebra(a, pattern_subspace(a, allowed, extra_rows).basis)


def defect(spec: FamilySpec) -> int:
    m, n = spec.params[0], spec.params[1]
    if spec.family == "osp":
        return min(m // 2, n // 2)
    return min(m, n)


def isotropic_pairs(spec: FamilySpec, ordering: str = "antidiagonal") -> list[tuple[int, int]]:
    """Pairs (even index, odd index) of mutually orthogonal isotropic roots."""
    d = defect(spec)
    if ordering == "antidiagonal":
        return [(i, d - 1 - i) for i in range(d)]
    if ordering == "straight":
        return [(i, i) for i in range(d)]
    raise ValueError(f"unknown ordering {ordering!r}")


def osp_weights(m: int, two_n: int) -> list[tuple]:
    """Torus weight of each coordinate of C^{m|2n} in (eps_1..eps_k, delta_1..delta_n)."""
    k, n = m // 2, two_n // 2
    out = []
    for a in range(m):
        w = [0] * (k + n)
        if a < k:
            w[a] = 1
        elif a >= m - k:
            w[m - 1 - a] = -1
        out.append(tuple(w))
    for b in range(two_n):
        w = [0] * (k + n)
        if b < n:
            w[k + b] = 1
        else:
            w[k + two_n - 1 - b] = -1
        out.append(tuple(w))
    return out


def root_space(a: SuperAlgebra, weights: Sequence[tuple], alpha: tuple) -> Subspace:
    """Elements supported on matrix entries of torus weight ``alpha``."""
    def allowed(i, j):
        return tuple(x - y for x, y in zip(weights[i], weights[j])) == alpha
    return pattern_subspace(a, allowed)


def _q_blocks(n: int) -> list[list[int]]:
    return [[2 * i, 2 * i + 1] for i in range(n // 2)] + ([[n - 1]] if n % 2 else [])


def sylow_blocks(spec: FamilySpec, ordering: str = "antidiagonal") -> list[list[int]]:
    """Coordinate blocks of C^{p|q} that the Sylow candidate lives on."""
    f, p = spec.family, spec.params
    if f in ("gl", "sl", "psl"):
        m = p[0]
        return [[i, m + j] for i, j in isotropic_pairs(spec, ordering)]
    if f == "osp":
        m, two_n = p
        out = []
        for i, j in isotropic_pairs(spec, ordering):
            out.append([i, m + j])
            out.append([m - 1 - i, m + two_n - 1 - j])
        return out
    if f in ("q", "sq", "pq", "psq", "pe", "spe"):
        n = p[0]
        return [b + [n + x for x in b] for b in _q_blocks(n)]
    raise ValueError(f"no Sylow recipe for {spec.label()}")


def sylow_candidate(spec: FamilySpec, ordering: str = "antidiagonal") -> Subalgebra:
    """The tabulated Sylow subalgebra of ``construct(spec)``.

    Kac-Moody type rows use the subalgebra generated by the root spaces of
    ``+-(eps_i - delta_j)`` over the chosen isotropic pairs; osp uses the
    defect ``min(floor(m/2), n)``.  Queer rows are the block-diagonal
    ``q(2)^k (x q(1))`` pattern intersected with the algebra; periplectic
    rows take the same blocks with each block supertrace zero.
    """
    g = construct(spec)
    f, p = spec.family, spec.params
    if f in ("gl", "sl", "psl"):
        m = p[0]
        size = p[0] + p[1]
        gens = []
        for i, j in isotropic_pairs(spec, ordering):
            for mat in (elementary(size, i, m + j), elementary(size, m + j, i)):
                c = coords_of_matrix(g, mat)
                if c is None:
                    raise AlgebraError("root vector outside the algebra")
                gens.append(c)
        return generated_subalgebra(g, gens)
    if f == "osp":
        m, two_n = p
        k = m // 2
        wts = osp_weights(m, two_n)
        gens = []
        for i, j in isotropic_pairs(spec, ordering):
            alpha = [0] * (k + two_n // 2)
            alpha[i] = 1
            alpha[k + j] = -1
            for sgn in (1, -1):
                space = root_space(g, wts, tuple(sgn * x for x in alpha))
                if space.dim != 1:
                    raise AlgebraError("isotropic root space is not one-dimensional")
                gens.extend(space.vectors())
        return generated_subalgebra(g, gens)
    if f in ("q", "sq", "pq", "psq"):
        return pattern_subalgebra(g, _block_predicate(spec.params[0]))
    if f in ("pe", "spe"):
        n = p[0]
        size = 2 * n
        rows = []
        for blk in _q_blocks(n):
            row = [ZERO] * (size * size)
            for x in blk:
                row[x * size + x] = ONE
                row[(n + x) * size + n + x] = -ONE
            rows.append(row)
        return pattern_subalgebra(g, _block_predicate(n), rows)
    raise AlgebraError(f"no Sylow recipe for {spec.label()}")


def _block_predicate(n: int):
    blk = {}
    for t, b in enumerate(_q_blocks(n)):
        for x in b:
            blk[x] = t
            blk[n + x] = t
    return lambda i, j: blk[i] == blk[j]


def table_label(spec: FamilySpec) -> str:
    """Name of the tabulated Sylow type for a row."""
    f, p = spec.family, spec.params
    if f in ("gl", "sl", "osp"):
        return f"sl(1|1)^{defect(spec)}"
    if f == "psl":
        return f"p(sl(1|1)^{p[0]})"
    n = p[0]
    if f in ("pe", "spe"):
        return f"spe(2)^{n // 2}" + (" x spe(1)" if n % 2 else "")
    if f == "psq":
        return f"ps(q(2)^{n // 2}" + (" x q(1))" if n % 2 else ")")
    raise ValueError(f"no table row for {spec.label()}")
