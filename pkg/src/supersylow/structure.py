"""Structural predicates: homological and neat elements, Cartan data, Takiff
recognition and the classification-based zero-superalgebra test."""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Sequence

from .exactla import (
    ONE, ZERO, Subspace, flatten, halfspace_feasible, inverse,
    is_semisimple_matrix, jordan_decomposition, kernel_basis, minimal_polynomial,
    poly_eval_matrix, poly_mul, rank, rat, rational_roots,
    simultaneous_eigenspaces, solve, transpose,
)
from .liesuper import (
    AlgebraError, SuperAlgebra, Subalgebra, center, centralizer,
    coords_of_matrix, derived_subalgebra, generated_subalgebra,
    ideal_generated, is_oddly_generated, odd_generated_part, quotient,
    restrict, whole,
)

SAMPLE_RANGE = 2 ** 31


class StructureError(ValueError):
    """Raised when a precondition fails or a randomized search gives up."""


# ---------------------------------------------------------------------------
# sampling
# ---------------------------------------------------------------------------

def random_vector(basis: Sequence[Sequence], rng: random.Random, bound: int = SAMPLE_RANGE) -> list:
    if not basis:
        raise StructureError("cannot sample from an empty basis")
    n = len(basis[0])
    out = [ZERO] * n
    for b in basis:
        c = rat(rng.randint(-bound, bound))
        if c:
            out = [x + c * y for x, y in zip(out, b)]
    return out


def odd_basis(a: SuperAlgebra) -> list[list]:
    return [a.basis_vector(i) for i in range(a.dim_even, a.dim)]


def even_basis(a: SuperAlgebra) -> list[list]:
    return [a.basis_vector(i) for i in range(a.dim_even)]


# ---------------------------------------------------------------------------
# homological elements
# ---------------------------------------------------------------------------

def element_matrix(a: SuperAlgebra, y: Sequence):
    """Matrix used to test semisimplicity of an even element.

    The realization is used when it is faithful or only loses scalars
    (shifting by a scalar keeps the nilpotent part); otherwise ``ad y``.
    """
    r = a.realization
    if r is not None and r.scalar_central_ideal():
        return r.image(y)
    return a.ad(y)


def is_semisimple_element(a: SuperAlgebra, y: Sequence) -> bool:
    return is_semisimple_matrix(element_matrix(a, y))


def _require_odd(a: SuperAlgebra, x: Sequence) -> list:
    x = [rat(c) for c in x]
    if len(x) != a.dim:
        raise StructureError("vector has the wrong length")
    if any(x[:a.dim_even]):
        raise StructureError("expected a homogeneous odd vector")
    return x


def is_homological(a: SuperAlgebra, x: Sequence) -> bool:
    x = _require_odd(a, x)
    return is_semisimple_element(a, a.bracket(x, x))


def homological_cone_sample(a: SuperAlgebra, trials: int = 1000, seed: int = 0) -> dict:
    """Fraction of random nonzero odd vectors that are homological."""
    rng = random.Random(seed)
    basis = odd_basis(a)
    if not basis:
        return {"trials": 0, "homological": 0, "fraction_homological": "1"}
    hits = 0
    for _ in range(trials):
        x = random_vector(basis, rng)
        while not any(x):
            x = random_vector(basis, rng)
        if is_semisimple_element(a, a.bracket(x, x)):
            hits += 1
    frac = rat(hits) / trials
    return {"trials": trials, "homological": hits,
            "fraction_homological": f"{frac.numerator}/{frac.denominator}" if frac.denominator != 1 else str(frac.numerator)}


def homological_dense(a: SuperAlgebra, trials: int = 1000, seed: int = 0) -> bool:
    s = homological_cone_sample(a, trials, seed)
    return s["homological"] == s["trials"]


# ---------------------------------------------------------------------------
# neat elements
# ---------------------------------------------------------------------------

def nilpotent_part(a: SuperAlgebra, y: Sequence) -> tuple[list | None, bool]:
    """Coordinates of the nilpotent Jordan part of ``y`` and whether the
    semisimple part vanishes (modulo the center)."""
    r = a.realization
    if r is not None and r.scalar_central_ideal():
        s, n = jordan_decomposition(r.image(y))
        e = coords_of_matrix(a, n)
        if e is not None:
            ss = coords_of_matrix(a, s)
            return e, ss is not None and not any(ss)
    s, n = jordan_decomposition(a.ad(y))
    e = _solve_ad(a, n)
    s_zero = not any(x for row in s for x in row)
    return e, s_zero


def _solve_ad(a: SuperAlgebra, target) -> list | None:
    """Some ``e`` with ``ad e = target``, or None."""
    n = a.dim
    cols = [flatten(a.ad_basis(i)) for i in range(n)]
    return solve(transpose(cols), flatten(target))


def _linear_solutions(a: SuperAlgebra, unknown_basis: Sequence[Sequence], conditions) -> tuple:
    """Affine solution set of ``sum c_i L(u_i) = rhs`` stacked over conditions.

    ``conditions`` is a list of (linear map on vectors, rhs vector).
    Returns ``(particular, kernel basis)`` in ``unknown_basis`` coordinates
    or ``(None, None)``.
    """
    rows_cols = []
    rhs = []
    for lin, target in conditions:
        imgs = [lin(u) for u in unknown_basis]
        for k in range(len(target)):
            rows_cols.append([img[k] for img in imgs])
            rhs.append(target[k])
    if not unknown_basis:
        return (None, None)
    part = solve(rows_cols, rhs)
    if part is None:
        return (None, None)
    ker = kernel_basis(rows_cols, len(unknown_basis))
    return part, ker.vectors()


def _combine(basis, coeffs):
    out = [ZERO] * len(basis[0])
    for c, b in zip(coeffs, basis):
        if c:
            out = [x + c * y for x, y in zip(out, b)]
    return out


def looks_like_osp12(k: Subalgebra) -> bool:
    if k.sdim != (3, 2):
        return False
    b = restrict(k)
    if center(b).dim:
        return False
    d = derived_subalgebra(b)
    return d.dim == b.dim and is_oddly_generated(b)


def neat_witness(a: SuperAlgebra, x: Sequence, seed: int = 0, attempts: int = 6) -> Subalgebra | None:
    """Try to embed ``x`` into a copy of osp(1|2).

    Inside osp(1|2) every odd element squares to a nilpotent, so a nonzero
    semisimple part of ``[x,x]`` already rules ``x`` out.  Otherwise
    ``e = [x,x]`` is completed to an sl2-triple by linear solves and the
    subalgebra generated by ``x`` and ``f`` is tested.  None is one-sided:
    it does not prove that ``x`` is not neat.
    """
    x = _require_odd(a, x)
    if not any(x):
        raise StructureError("neat_witness needs a nonzero odd vector")
    y = a.bracket(x, x)
    if not any(y):
        return None
    e, s_zero = nilpotent_part(a, y)
    if e is None or not s_zero or not any(e):
        return None
    rng = random.Random(seed)
    ev = even_basis(a)
    # h = [e, z] with [h, e] = 2e and [h, x] = x
    im_e = Subspace.span([a.bracket(e, z) for z in ev], a.dim).vectors()
    if not im_e:
        return None
    part, ker = _linear_solutions(a, im_e, [
        (lambda u: a.bracket(u, e), [2 * c for c in e]),
        (lambda u: a.bracket(u, x), x),
    ])
    if part is None:
        return None
    for _ in range(attempts):
        coeff = part
        if ker:
            extra = _combine(ker, [rat(rng.randint(-3, 3)) for _ in ker])
            coeff = [p + q for p, q in zip(part, extra)]
        h = _combine(im_e, coeff)
        # [e, f] = h and ([h, .] + 2) f = 0
        fpart, fker = _linear_solutions(a, ev, [
            (lambda u: a.bracket(e, u), h),
            (lambda u: [p + 2 * q for p, q in zip(a.bracket(h, u), u)], [ZERO] * a.dim),
        ])
        if fpart is None:
            continue
        fc = fpart
        if fker:
            extra = _combine(fker, [rat(rng.randint(-3, 3)) for _ in fker])
            fc = [p + q for p, q in zip(fpart, extra)]
        f = _combine(ev, fc)
        k = generated_subalgebra(a, [x, f])
        if looks_like_osp12(k):
            return k
    return None


# ---------------------------------------------------------------------------
# Cartan subalgebras and roots
# ---------------------------------------------------------------------------

def cartan_from_element(a: SuperAlgebra, x: Sequence) -> Subalgebra:
    x = _require_odd(a, x)
    if not is_homological(a, x):
        raise StructureError("element is not homological")
    y = a.bracket(x, x)
    if not any(y):
        return whole(a)
    return centralizer(a, Subspace.span([y], a.dim))


@dataclass(frozen=True, eq=False)
class RootDatum:
    algebra: SuperAlgebra
    cartan: Subalgebra
    torus: tuple
    roots: tuple
    root_spaces: dict
    zero_space: Subspace

    def root_sdims(self) -> dict:
        a = self.algebra
        out = {}
        for r, s in self.root_spaces.items():
            ev = sum(1 for p in s.pivots if p < a.dim_even)
            out[r] = (ev, s.dim - ev)
        return out


def root_decomposition(a: SuperAlgebra, h: Subalgebra) -> RootDatum:
    """Joint eigenspaces of ``ad h_0`` on ``a``."""
    torus = tuple(tuple(v) for v in h.even_basis())
    mats = [a.ad(list(t)) for t in torus]
    try:
        pieces = simultaneous_eigenspaces(mats, Subspace.full(a.dim))
    except ValueError as exc:
        raise StructureError(f"Cartan does not act diagonalizably over Q: {exc}") from exc
    zero = tuple(ZERO for _ in torus)
    roots, spaces = [], {}
    zero_space = Subspace.zero(a.dim)
    for w, s in pieces:
        if w == zero:
            zero_space = s
        else:
            roots.append(w)
            spaces[w] = s
    return RootDatum(a, h, torus, tuple(roots), spaces, zero_space)


def _sdim_of(a: SuperAlgebra, s: Subspace) -> tuple[int, int]:
    ev = sum(1 for p in s.pivots if p < a.dim_even)
    return (ev, s.dim - ev)


def _graded_irreducible(parts_even, parts_odd, ops) -> bool:
    """Is the graded space irreducible under the odd operators ``ops``?

    Exact when each parity piece has dimension at most one, which is the
    shape of root spaces met here; larger pieces are checked on basis
    vectors only.
    """
    vecs = [v for v in parts_even] + [v for v in parts_odd]
    if not vecs:
        return True
    n = len(vecs[0])
    total = Subspace.span(vecs, n)
    for v in vecs:
        span = Subspace.span([v], n)
        frontier = [v]
        while frontier:
            new = []
            for w in frontier:
                for op in ops:
                    u = op(w)
                    if any(u) and not span.contains(u):
                        span = span + Subspace.span([u], n)
                        new.append(u)
            frontier = new
        if span.dim != total.dim:
            return False
    return True


def rootzero_report(rd: RootDatum) -> dict:
    """Checks that a Cartan of a zero-superalgebra should pass."""
    a = rd.algebra
    h = rd.cartan
    h0 = Subspace.span(h.even_basis(), a.dim)
    h1 = h.odd_basis()
    brackets = [a.bracket(u, v) for u in h1 for v in h1]
    h1h1 = Subspace.span([b for b in brackets if any(b)], a.dim) if brackets else Subspace.zero(a.dim)
    even_roots = {r for r, s in rd.root_spaces.items() if _sdim_of(a, s)[0] > 0}
    irreducible = {}
    for r, s in rd.root_spaces.items():
        vs = s.vectors()
        ev = [v for v in vs if a.vector_parity(v) == 0]
        od = [v for v in vs if a.vector_parity(v) == 1]
        ops = [(lambda w, u=u: a.bracket(u, w)) for u in h1]
        irreducible[r] = _graded_irreducible(ev, od, ops)
    rank_one = {}
    for r, s in rd.root_spaces.items():
        neg = tuple(-x for x in r)
        if neg not in rd.root_spaces:
            rank_one[r] = None
            continue
        k = generated_subalgebra(a, s.vectors() + rd.root_spaces[neg].vectors())
        rank_one[r] = match_template(restrict(k), ("psq(2)", "sq(2)"))
    return {
        "cartan_is_zero_weight_space": rd.zero_space == h.space,
        "even_roots_equal_all_roots": even_roots == set(rd.roots),
        "odd_square_fills_even": h1h1 == h0,
        "root_spaces_irreducible": all(irreducible.values()),
        "rank_one_types": {str(tuple(str(x) for x in r)): t for r, t in rank_one.items()},
        "rank_one_ok": all(t is not None for t in rank_one.values()),
        "root_space_sdims": sorted({_sdim_of(a, s) for s in rd.root_spaces.values()}),
    }


def nilcone_weight_member(a: SuperAlgebra, rd: RootDatum, x: Sequence) -> bool:
    """Torus-destabilizability of ``x`` via strict half-space feasibility."""
    x = [rat(c) for c in x]
    if not any(x):
        return True
    keys = [w for w in rd.roots] + [None]
    spaces = [rd.root_spaces[w] for w in rd.roots] + [rd.zero_space]
    basis, owner = [], []
    for key, s in zip(keys, spaces):
        for v in s.basis:
            basis.append(list(v))
            owner.append(key)
    coeff = solve(transpose(basis), x) if basis else None
    if coeff is None:
        raise StructureError("vector is not supported on the root decomposition")
    zero = [ZERO] * len(rd.torus)
    support = set()
    for c, key in zip(coeff, owner):
        if c:
            support.add(tuple(zero) if key is None else key)
    return halfspace_feasible([list(w) for w in sorted(support)])


# ---------------------------------------------------------------------------
# Killing forms, intertwiners, Takiff recognition
# ---------------------------------------------------------------------------

def even_killing_nondegenerate(a: SuperAlgebra) -> bool:
    """Is ``a_0`` semisimple?  Tests the Killing form of ``a_0`` on itself."""
    n0 = a.dim_even
    if n0 == 0:
        return True
    ads = []
    for i in range(n0):
        m = a.ad_basis(i)
        ads.append([row[:n0] for row in m[:n0]])
    gram = [[sum((ads[i][r][c] * ads[j][c][r] for r in range(n0) for c in range(n0)
                  if ads[i][r][c] and ads[j][c][r]), ZERO) for j in range(n0)] for i in range(n0)]
    return rank(gram) == n0


def intertwiner(a: SuperAlgebra, source: Sequence[Sequence], target: Sequence[Sequence],
                acting: Sequence[Sequence], rng: random.Random, tries: int = 10):
    """Invertible linear map ``phi: span(source) -> span(target)`` with
    ``phi([u, v]) = [u, phi(v)]`` for ``u`` in ``acting`` and ``v`` in
    ``source``; returns the matrix or None."""
    ns, nt = len(source), len(target)
    if ns != nt:
        return None
    if ns == 0:
        return []
    # coordinates of [u, s_j] in the source basis, as c[u][j] -> list over l
    src_coord = _Basis(source)
    rows = []
    for u in acting:
        act_src = [src_coord.coords(a.bracket(u, s)) for s in source]
        if any(c is None for c in act_src):
            return None
        act_tgt = [a.bracket(u, t) for t in target]
        # unknown Phi[k][j]: phi(s_j) = sum_k Phi[k][j] t_k
        for j in range(ns):
            for r in range(a.dim):
                row = [ZERO] * (nt * ns)
                for l, c in enumerate(act_src[j]):
                    if c:
                        for k in range(nt):
                            if target[k][r]:
                                row[k * ns + l] += c * target[k][r]
                for k in range(nt):
                    if act_tgt[k][r]:
                        row[k * ns + j] -= act_tgt[k][r]
                if any(row):
                    rows.append(row)
    sols = kernel_basis(rows, nt * ns).vectors() if rows else [
        [ONE if t == s else ZERO for t in range(nt * ns)] for s in range(nt * ns)]
    if not sols:
        return None
    for _ in range(tries):
        v = _combine(sols, [rat(rng.randint(-5, 5)) for _ in sols])
        mat = [v[k * ns:(k + 1) * ns] for k in range(nt)]
        if rank(mat) == ns:
            return mat
    return None


class _Basis:
    def __init__(self, vecs):
        self.vecs = [list(v) for v in vecs]
        self.n = len(vecs[0]) if vecs else 0

    def coords(self, v):
        if not self.vecs:
            return [] if not any(v) else None
        return solve(transpose(self.vecs), v)


def is_takiff(a: SuperAlgebra, seed: int = 0) -> bool:
    """``a_0`` semisimple, ``[a_1, a_1] = 0`` and ``a_1 ≅ a_0`` as ``a_0``-modules."""
    if a.dim_even == 0 or a.dim_even != a.dim_odd:
        return False
    if not even_killing_nondegenerate(a):
        return False
    od = odd_basis(a)
    if any(any(a.bracket(u, v)) for u in od for v in od):
        return False
    ev = even_basis(a)
    return intertwiner(a, ev, od, ev, random.Random(seed)) is not None


def odd_abelian_radical(a: SuperAlgebra) -> Subspace:
    """``{v in a_1 : [v, a_1] = 0}``, the largest odd abelian ideal."""
    od = odd_basis(a)
    if not od:
        return Subspace.zero(a.dim)
    rows = []
    for u in od:
        m = a.right_map(u)
        rows.extend(row for row in m)
    # restrict unknowns to odd coordinates
    n0 = a.dim_even
    sub = [row[n0:] for row in rows]
    ker = kernel_basis(sub, a.dim_odd)
    return Subspace.span([[ZERO] * n0 + list(v) for v in ker.basis], a.dim)


def is_takiff0(a: SuperAlgebra, seed: int = 0) -> bool:
    """Derived part Takiff, no center, no odd abelian ideal, oddly generated,
    and every simple factor of the derived part is hit by some odd
    derivation direction."""
    if not is_oddly_generated(a):
        return False
    if center(a).dim or odd_abelian_radical(a).dim:
        return False
    d = derived_subalgebra(a)
    if d.dim == a.dim:
        return False
    dalg = restrict(d)
    if not is_takiff(dalg, seed):
        return False
    # simple factors of the even part of d
    d0 = restrict(Subalgebra(dalg, Subspace.span(even_basis(dalg), dalg.dim)))
    factors = minimal_ideals(d0, seed)
    basis = d.even_basis() + d.odd_basis()
    d_odd = d.odd_basis()
    for fac in factors:
        s_vecs = [_combine(basis, _pad(v, dalg.dim, 0)) for v in fac.space.vectors()]
        s_xi = [w for s in s_vecs for u in d_odd if any(w := a.bracket(s, u))]
        if not s_xi:
            return False
        if not any(any(a.bracket(u, w)[:a.dim_even]) for u in odd_basis(a) for w in s_xi):
            return False
    return True


def _pad(v, total, offset):
    out = [ZERO] * total
    for i, x in enumerate(v):
        out[offset + i] = x
    return out


# ---------------------------------------------------------------------------
# minimal ideals
# ---------------------------------------------------------------------------

def _primary_pieces(a: SuperAlgebra, t: Sequence) -> list[Subspace] | None:
    """Graded primary components of ``ad t`` (irreducible factors over Q)."""
    import sympy

    m = a.ad(t)
    p = minimal_polynomial(m)
    sym = sympy.Symbol("s")
    expr = sum(sympy.Rational(int(c.numerator), int(c.denominator)) * sym ** i for i, c in enumerate(p) if c)
    _, factors = sympy.factor_list(sympy.Poly(expr, sym, domain="QQ"))
    pieces = []
    for f, mult in factors:
        coeffs = [rat(f"{sympy.Rational(c).p}/{sympy.Rational(c).q}") for c in reversed(f.all_coeffs())]
        power = [ONE]
        for _ in range(mult):
            power = poly_mul(power, coeffs)
        ker = kernel_basis(poly_eval_matrix(power, m), a.dim)
        for par in (0, 1):
            vecs = [v for v in ker.vectors() if a.vector_parity(v) == par and any(v)]
            if vecs:
                pieces.append(Subspace.span(vecs, a.dim))
    return pieces


def _refine(a: SuperAlgebra, ideal: Subalgebra, pieces, rng) -> Subalgebra:
    """Shrink ``ideal`` until every probe vector regenerates it."""
    while True:
        shrunk = None
        for piece in pieces:
            inside = piece.intersect(ideal.space)
            if inside.dim == 0:
                continue
            probes = inside.vectors()
            if inside.dim > 1:
                probes += [random_vector(inside.vectors(), rng, 7) for _ in range(2)]
            for v in probes:
                if not any(v):
                    continue
                j = ideal_generated(a, [v])
                if j.dim < ideal.dim:
                    shrunk = j
                    break
            if shrunk is not None:
                break
        if shrunk is None:
            return ideal
        ideal = shrunk


def minimal_ideals(a: SuperAlgebra, seed: int = 0, attempts: int = 20) -> list[Subalgebra]:
    """Minimal graded ideals reachable from the primary pieces of a random
    even element, refined until every probe vector regenerates them.

    Each result is re-certified against the pieces of a second, independent
    random element.  The list is sorted canonically.
    """
    if a.dim == 0:
        return []
    rng = random.Random(seed)
    ev = even_basis(a)
    for _ in range(attempts):
        t = random_vector(ev, rng, 50) if ev else [ZERO] * a.dim
        t2 = random_vector(ev, rng, 50) if ev else [ZERO] * a.dim
        pieces = _primary_pieces(a, t)
        check = _primary_pieces(a, t2)
        if pieces is None or check is None:
            continue
        found: dict = {}
        ok = True
        for piece in pieces:
            for v in piece.vectors():
                if any(f.space.contains(v) for f in found.values()):
                    continue
                cand = _refine(a, ideal_generated(a, [v]), pieces, rng)
                final = _refine(a, cand, check, rng)
                if final.dim != cand.dim:
                    ok = False
                    cand = _refine(a, final, pieces, rng)
                found[cand.space.basis] = cand
        if ok or found:
            return [found[k] for k in sorted(found, key=lambda b: (len(b), b))]
    raise StructureError("minimal ideal search failed")


def classify_ideal(a: SuperAlgebra, ideal: Subalgebra) -> str:
    """'odd_abelian', 'takiff_like', 'simple' or 'other' for a minimal ideal."""
    ev, od = ideal.even_basis(), ideal.odd_basis()
    if not ev and all(not any(a.bracket(u, v)) for u in od for v in od):
        return "odd_abelian"
    if ev and od and all(not any(a.bracket(u, v)) for u in od for v in od):
        return "takiff_like"
    sub = restrict(ideal)
    if derived_subalgebra(sub).dim == sub.dim:
        return "simple"
    return "other"


# ---------------------------------------------------------------------------
# the zero-superalgebra test
# ---------------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class ZeroCertificate:
    verdict: bool
    center: Subalgebra
    takiff_part: Subalgebra | None = None
    odd_abelian_part: Subalgebra | None = None
    derivation_part: Subalgebra | None = None
    failure_reason: str | None = None
    quotient: SuperAlgebra | None = None
    minimal_ideal_kinds: tuple = field(default_factory=tuple)

    def to_dict(self) -> dict:
        def sd(s):
            return None if s is None else list(s.sdim)
        return {
            "verdict": self.verdict,
            "failure_reason": self.failure_reason,
            "center": sd(self.center),
            "takiff_part": sd(self.takiff_part),
            "odd_abelian_part": sd(self.odd_abelian_part),
            "derivation_part": sd(self.derivation_part),
            "minimal_ideal_kinds": list(self.minimal_ideal_kinds),
        }


def is_zero_superalgebra(a: SuperAlgebra, seed: int = 0) -> ZeroCertificate:
    z = center(a)
    if not is_oddly_generated(a):
        return ZeroCertificate(False, z, failure_reason="not_oddly_generated")
    bar = quotient(a, z) if z.dim else a
    ideals = minimal_ideals(bar, seed)
    kinds = tuple(sorted(classify_ideal(bar, i) for i in ideals))
    if "simple" in kinds:
        return ZeroCertificate(False, z, failure_reason="simple_ideal_present",
                               quotient=bar, minimal_ideal_kinds=kinds)

    def mismatch():
        return ZeroCertificate(False, z, failure_reason="structure_mismatch",
                               quotient=bar, minimal_ideal_kinds=kinds)

    if not even_killing_nondegenerate(bar):
        return mismatch()
    ev, od = even_basis(bar), odd_basis(bar)
    s1 = Subspace.span([w for u in ev for v in od if any(w := bar.bracket(u, v))], bar.dim) \
        if ev and od else Subspace.zero(bar.dim)
    s1v = s1.vectors()
    if any(any(bar.bracket(u, v)) for u in s1v for v in s1v):
        return mismatch()
    if intertwiner(bar, ev, s1v, ev, random.Random(seed)) is None:
        return mismatch()
    # odd invariants of the even part
    if ev and od:
        rows = []
        for u in ev:
            m = bar.ad(u)
            rows.extend(row[bar.dim_even:] for row in m)
        inv = kernel_basis(rows, bar.dim_odd)
        dprime = Subspace.span([[ZERO] * bar.dim_even + list(v) for v in inv.basis], bar.dim)
    else:
        dprime = Subspace.span(od, bar.dim)
    dpv = dprime.vectors()
    if any(any(bar.bracket(u, v)) for u in dpv for v in dpv):
        return mismatch()
    if s1.intersect(dprime).dim or s1.dim + dprime.dim != bar.dim_odd:
        return mismatch()
    zbar = center(bar).space
    v_part = dprime.intersect(zbar)
    keep = [list(v) for v in dprime.basis if not v_part.contains(v)]
    comp = Subspace.zero(bar.dim)
    for v in keep:
        if not (comp + v_part).contains(v):
            comp = comp + Subspace.span([v], bar.dim)
    takiff_space = Subspace.span(ev + s1v, bar.dim)
    return ZeroCertificate(
        True, z,
        takiff_part=Subalgebra(bar, takiff_space),
        odd_abelian_part=Subalgebra(bar, v_part),
        derivation_part=Subalgebra(bar, comp),
        quotient=bar, minimal_ideal_kinds=kinds)


# ---------------------------------------------------------------------------
# fingerprints and named templates
# ---------------------------------------------------------------------------

def fingerprint(a: SuperAlgebra) -> dict:
    """Cheap isomorphism invariants, graded dimensions throughout."""
    d = derived_subalgebra(a)
    dalg = restrict(d)
    d2 = derived_subalgebra(dalg)
    return {
        "sdim": list(a.sdim),
        "center": list(center(a).sdim),
        "derived": list(d.sdim),
        "derived2": list(d2.sdim),
        "odd_generated": list(odd_generated_part(a).sdim),
        "odd_abelian_radical": odd_abelian_radical(a).dim,
        "derived_center": list(center(dalg).sdim),
    }


def match_template(a: SuperAlgebra, names: Sequence[str]) -> str | None:
    from .families import construct, parse_family
    fp = fingerprint(a)
    for nm in names:
        if fingerprint(construct(parse_family(nm))) == fp:
            return nm
    return None


# ---------------------------------------------------------------------------
# tori
# ---------------------------------------------------------------------------

def is_ad_diagonalizable(a: SuperAlgebra, v: Sequence) -> bool:
    p = minimal_polynomial(element_matrix(a, v))
    from .exactla import poly_deriv, poly_gcd
    if len(poly_gcd(p, poly_deriv(p))) > 1:
        return False
    return rational_roots(p) is not None


def maximal_torus(a: SuperAlgebra, k: Subalgebra, seed: int = 0, tries: int = 20) -> list[list]:
    """Greedy maximal abelian subspace of ``k_0`` acting diagonalizably over Q."""
    rng = random.Random(seed)
    torus: list[list] = []
    while True:
        span_t = Subspace.span(torus, a.dim) if torus else Subspace.zero(a.dim)
        c = centralizer(a, span_t) if torus else whole(a)
        cand_space = Subspace.span(k.even_basis(), a.dim).intersect(c.space)
        if cand_space.dim == span_t.dim:
            return torus
        cands = [v for v in cand_space.vectors() if not span_t.contains(v)]
        cands += [random_vector(cand_space.vectors(), rng, 5) for _ in range(tries)]
        added = False
        for v in cands:
            if span_t.contains(v):
                continue
            if is_ad_diagonalizable(a, v):
                torus.append(v)
                added = True
                break
        if not added:
            return torus
