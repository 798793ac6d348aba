"""Quiver representations and their morphism-level calculus.

A representation assigns k^{d_i} to each vertex and a matrix to each arrow;
a morphism is a tuple of vertex maps making every arrow square commute.
Everything here reduces to exact linear algebra: Hom spaces are kernels of
the defect map, kernels/cokernels/images are computed vertex-wise with the
induced arrow maps solved for in the chosen bases.

All values are immutable after construction and all operations are pure;
randomized searches take an explicit seeded ``random.Random``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Optional, Sequence

from .errors import AuditError, InconclusiveError, MismatchError
from .linalg import (Field, Matrix, hstack, inverse, kernel_basis, matrix_power,
                     random_matrix, rank, rref, solve_matrix)
from .quiver import Quiver, check_dim_vector

ISO_RANDOM_TRIALS = 32
ISO_EXHAUSTIVE_DIM = 4
ISO_EXHAUSTIVE_BUDGET = 10**6


class Representation:
    """A finite-dimensional representation: per-vertex dimensions plus one
    ``dims[target] x dims[source]`` matrix per arrow (missing = zero)."""

    __slots__ = ("quiver", "field", "dims", "mats")

    def __init__(self, quiver: Quiver, field: Field, dims: Sequence[int], mats=None):
        dims = check_dim_vector(quiver, dims)
        full = {}
        mats = dict(mats or {})
        for a in quiver.arrows:
            shape = (dims[a.target - 1], dims[a.source - 1])
            m = mats.pop(a.name, None)
            if m is None:
                m = Matrix.zeros(field, *shape)
            if m.field != field:
                raise MismatchError(f"matrix for arrow {a.name!r} is over the wrong field")
            if (m.rows, m.cols) != shape:
                raise MismatchError(
                    f"matrix for arrow {a.name!r} has shape {m.rows}x{m.cols}, expected {shape[0]}x{shape[1]}")
            full[a.name] = m
        if mats:
            raise MismatchError(f"matrices for unknown arrows: {sorted(mats)}")
        object.__setattr__(self, "quiver", quiver)
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "dims", dims)
        object.__setattr__(self, "mats", full)

    def __setattr__(self, name, value):
        raise AttributeError("Representation is immutable")

    def mat(self, arrow_name: str) -> Matrix:
        return self.mats[arrow_name]

    @property
    def length(self) -> int:
        return sum(self.dims)

    def is_zero(self) -> bool:
        return self.length == 0

    def sort_key(self):
        return (self.length, self.dims,
                tuple((a.name, self.mats[a.name].data) for a in self.quiver.arrows))

    def __eq__(self, other):
        return (isinstance(other, Representation) and self.quiver == other.quiver
                and self.field == other.field and self.dims == other.dims
                and all(self.mats[a.name] == other.mats[a.name] for a in self.quiver.arrows))

    def __repr__(self):
        return f"Representation(dims={self.dims}, field={self.field})"


def zero_rep(q: Quiver, f: Field) -> Representation:
    return Representation(q, f, (0,) * q.n)

def simple_rep(q: Quiver, f: Field, vertex: int) -> Representation:
    dims = tuple(1 if v == vertex else 0 for v in range(1, q.n + 1))
    return Representation(q, f, dims)

def vertex_simples(q: Quiver, f: Field) -> list[Representation]:
    return [simple_rep(q, f, v) for v in range(1, q.n + 1)]

def random_rep(q: Quiver, d: Sequence[int], f: Field, rng) -> Representation:
    """Arrow matrices drawn via ``random_matrix`` in quiver arrow order."""
    d = check_dim_vector(q, d)
    mats = {a.name: random_matrix(d[a.target - 1], d[a.source - 1], f, rng) for a in q.arrows}
    return Representation(q, f, d, mats)


def direct_sum(ms: Sequence[Representation], *, quiver: Quiver = None,
               field: Field = None) -> Representation:
    """Block-diagonal direct sum; the empty sum needs explicit quiver/field."""
    ms = list(ms)
    if not ms:
        if quiver is None or field is None:
            raise MismatchError("empty direct sum needs quiver and field")
        return zero_rep(quiver, field)
    q, f = ms[0].quiver, ms[0].field
    _check_family(ms)
    dims = tuple(sum(m.dims[v] for m in ms) for v in range(q.n))
    mats = {}
    for a in q.arrows:
        from .linalg import block_diag
        mats[a.name] = block_diag(f, [m.mats[a.name] for m in ms])
    return Representation(q, f, dims, mats)


def _check_family(ms):
    q, f = ms[0].quiver, ms[0].field
    for m in ms[1:]:
        if m.quiver != q or m.field != f:
            raise MismatchError("representations live over different quivers or fields")


class RepMorphism:
    """A morphism of representations: one ``target.dims[i] x source.dims[i]``
    matrix per vertex, satisfying every arrow's commuting square (checked)."""

    __slots__ = ("source", "target", "comps")

    def __init__(self, source: Representation, target: Representation, comps):
        if source.quiver != target.quiver or source.field != target.field:
            raise MismatchError("morphism between representations over different quivers/fields")
        comps = tuple(comps)
        q = source.quiver
        if len(comps) != q.n:
            raise MismatchError(f"expected {q.n} vertex components, got {len(comps)}")
        for v in range(q.n):
            c = comps[v]
            if (c.rows, c.cols) != (target.dims[v], source.dims[v]):
                raise MismatchError(f"component at vertex {v + 1} has the wrong shape")
        for a in q.arrows:
            i, j = a.source - 1, a.target - 1
            if comps[j] @ source.mats[a.name] != target.mats[a.name] @ comps[i]:
                raise MismatchError(f"square at arrow {a.name!r} does not commute")
        object.__setattr__(self, "source", source)
        object.__setattr__(self, "target", target)
        object.__setattr__(self, "comps", comps)

    def __setattr__(self, name, value):
        raise AttributeError("RepMorphism is immutable")

    @classmethod
    def identity(cls, m: Representation) -> "RepMorphism":
        return cls(m, m, [Matrix.identity(m.field, d) for d in m.dims])

    @classmethod
    def zero(cls, source: Representation, target: Representation) -> "RepMorphism":
        return cls(source, target,
                   [Matrix.zeros(source.field, target.dims[v], source.dims[v])
                    for v in range(source.quiver.n)])

    def compose(self, other: "RepMorphism") -> "RepMorphism":
        """self after other."""
        if other.target is not self.source and other.target != self.source:
            raise MismatchError("composition mismatch")
        return RepMorphism(other.source, self.target,
                           [a @ b for a, b in zip(self.comps, other.comps)])

    def __add__(self, other: "RepMorphism") -> "RepMorphism":
        return RepMorphism(self.source, self.target,
                           [a + b for a, b in zip(self.comps, other.comps)])

    def scale(self, s) -> "RepMorphism":
        return RepMorphism(self.source, self.target, [c.scale(s) for c in self.comps])

    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self.comps)

    def is_mono(self) -> bool:
        return all(rank(c) == c.cols for c in self.comps)

    def is_epi(self) -> bool:
        return all(rank(c) == c.rows for c in self.comps)

    def is_invertible(self) -> bool:
        return all(c.rows == c.cols and rank(c) == c.rows for c in self.comps)

    def inverse(self) -> "RepMorphism":
        return RepMorphism(self.target, self.source, [inverse(c) for c in self.comps])

    def power(self, k: int) -> "RepMorphism":
        if self.source != self.target:
            raise MismatchError("power of a non-endomorphism")
        return RepMorphism(self.source, self.target,
                           [matrix_power(c, k) for c in self.comps])

    def __repr__(self):
        return f"RepMorphism({self.source.dims} -> {self.target.dims})"


@dataclass(frozen=True)
class HomSpace:
    source: Representation
    target: Representation
    basis: tuple

    @property
    def dim(self) -> int:
        return len(self.basis)


@dataclass(frozen=True)
class DefectSystem:
    """The linear system whose kernel is Hom(m, n) and whose cokernel
    classifies extensions of m by n: phi(f) = (f_j M(a) - N(a) f_i)_a."""

    matrix: Matrix
    var_offsets: tuple      # per vertex, start of the flattened f_v block
    eq_offsets: tuple       # per arrow, start of the flattened equation block


def defect_system(m: Representation, n: Representation) -> DefectSystem:
    _check_family([m, n])
    q, f = m.quiver, m.field
    zero = f.zero
    var_offsets = []
    V = 0
    for v in range(q.n):
        var_offsets.append(V)
        V += n.dims[v] * m.dims[v]
    eq_offsets = []
    W = 0
    for a in q.arrows:
        eq_offsets.append(W)
        W += n.dims[a.target - 1] * m.dims[a.source - 1]
    phi = [[zero] * V for _ in range(W)]
    sub, add = f.sub, f.add
    for idx, a in enumerate(q.arrows):
        i, j = a.source - 1, a.target - 1
        Ma, Na = m.mats[a.name], n.mats[a.name]
        mi, mj, ni, nj = m.dims[i], m.dims[j], n.dims[i], n.dims[j]
        base = eq_offsets[idx]
        for r in range(nj):
            for c in range(mi):
                row = phi[base + r * mi + c]
                # + (f_j M(a))[r][c] contributes M(a)[s][c] at variable f_j[r][s]
                off_j = var_offsets[j] + r * mj
                for s in range(mj):
                    coef = Ma.data[s][c]
                    if coef != zero:
                        row[off_j + s] = add(row[off_j + s], coef)
                # - (N(a) f_i)[r][c] contributes -N(a)[r][s] at variable f_i[s][c]
                for s in range(ni):
                    coef = Na.data[r][s]
                    if coef != zero:
                        col = var_offsets[i] + s * mi + c
                        row[col] = sub(row[col], coef)
    return DefectSystem(Matrix._make(f, W, V, phi), tuple(var_offsets), tuple(eq_offsets))


def hom_basis(m: Representation, n: Representation) -> HomSpace:
    """Basis of Hom(m, n) as the kernel of the defect map, canonical in the
    free-variable form of the RREF."""
    sysm = defect_system(m, n)
    K = kernel_basis(sysm.matrix)
    q, f = m.quiver, m.field
    basis = []
    for k in range(K.cols):
        col = K.column(k)
        comps = []
        for v in range(q.n):
            rows_v, cols_v = n.dims[v], m.dims[v]
            off = sysm.var_offsets[v]
            comps.append(Matrix._make(
                f, rows_v, cols_v,
                [[col[off + r * cols_v + c] for c in range(cols_v)] for r in range(rows_v)]))
        basis.append(RepMorphism(m, n, comps))
    return HomSpace(m, n, tuple(basis))


def combine_morphisms(space: HomSpace, coeffs) -> RepMorphism:
    """The linear combination sum_k coeffs[k] * basis[k]."""
    f = space.source.field
    q = space.source.quiver
    comps = [Matrix.zeros(f, space.target.dims[v], space.source.dims[v]) for v in range(q.n)]
    for c, g in zip(coeffs, space.basis):
        c = f.scalar(c)
        if c == f.zero:
            continue
        comps = [acc + comp.scale(c) for acc, comp in zip(comps, g.comps)]
    return RepMorphism(space.source, space.target, comps)


def _column_space(m: Matrix) -> Matrix:
    """Canonical basis of the column space: the pivot columns of ``m``."""
    piv = rref(m).pivots
    if not piv:
        return Matrix.zeros(m.field, m.rows, 0)
    return hstack([Matrix.from_columns(m.field, [m.column(j)], m.rows) for j in piv])


def _coordinates(basis: Matrix, vectors: Matrix) -> Matrix:
    """Express ``vectors`` in ``basis`` (full column rank); raises if outside."""
    x = solve_matrix(basis, vectors)
    if x is None:
        raise AuditError("vectors fall outside the expected subspace")
    return x


def _quotient_projection(sub_cols: Matrix):
    """Projection q: k^n -> k^n/(span sub_cols) with section s, q s = id.

    Coordinates are the non-pivot positions of the reduced row-space basis of
    the subspace; the projection subtracts the unique row-space combination
    matching a vector on the pivot positions.
    """
    f = sub_cols.field
    nall = sub_cols.rows
    red, rk, pivots = rref(sub_cols.transpose())
    pivset = set(pivots)
    free = [c for c in range(nall) if c not in pivset]
    zero, one, neg = f.zero, f.one, f.neg
    proj = []
    for fc in free:
        row = [zero] * nall
        row[fc] = one
        for r, p in enumerate(pivots):
            entry = red.data[r][fc]
            if entry != zero:
                row[p] = neg(entry)
        proj.append(row)
    q = Matrix._make(f, len(free), nall, proj)
    s = Matrix.from_columns(
        f, [[one if i == fc else zero for i in range(nall)] for fc in free], nall)
    return q, s


def _subrep_from_bases(x: Representation, bases: list[Matrix]):
    """Subrepresentation spanned vertex-wise by ``bases`` (must be arrow
    stable); returns it with the inclusion morphism."""
    q, f = x.quiver, x.field
    dims = tuple(b.cols for b in bases)
    mats = {}
    for a in q.arrows:
        i, j = a.source - 1, a.target - 1
        mats[a.name] = _coordinates(bases[j], x.mats[a.name] @ bases[i]) \
            if dims[j] or dims[i] else Matrix.zeros(f, dims[j], dims[i])
    sub = Representation(q, f, dims, mats)
    return sub, RepMorphism(sub, x, bases)


def kernel(g: RepMorphism):
    """Vertex-wise kernel with induced arrow maps; returns (rep, mono into source)."""
    bases = [kernel_basis(c) for c in g.comps]
    return _subrep_from_bases(g.source, bases)


def image(g: RepMorphism):
    """Vertex-wise column space with induced arrow maps; returns (rep, mono into target)."""
    bases = [_column_space(c) for c in g.comps]
    return _subrep_from_bases(g.target, bases)


def cokernel(g: RepMorphism):
    """Vertex-wise quotient by the image; returns (rep, epi from target)."""
    q, f = g.target.quiver, g.target.field
    projs, sections = [], []
    for c in g.comps:
        pr, se = _quotient_projection(_column_space(c))
        projs.append(pr)
        sections.append(se)
    dims = tuple(p.rows for p in projs)
    mats = {}
    for a in q.arrows:
        i, j = a.source - 1, a.target - 1
        mats[a.name] = projs[j] @ g.target.mats[a.name] @ sections[i]
    cok = Representation(q, f, dims, mats)
    return cok, RepMorphism(g.target, cok, projs)


def _radical_bases(m: Representation) -> list[Matrix]:
    # rad(M)(j) = sum over arrows a: i->j of the image of M(a)
    q, f = m.quiver, m.field
    bases = []
    for v in range(1, q.n + 1):
        incoming = [m.mats[a.name] for a in q.arrows_into(v)]
        incoming = [c for c in incoming if c.cols > 0]
        if not incoming:
            bases.append(Matrix.zeros(f, m.dims[v - 1], 0))
        else:
            bases.append(_column_space(hstack(incoming)))
    return bases


def radical(m: Representation):
    """The radical subrepresentation (sum of arrow images) with its inclusion."""
    return _subrep_from_bases(m, _radical_bases(m))


def simple_quotient(m: Representation):
    """The canonical epi onto a simple: smallest vertex with nonzero top,
    first quotient coordinate there.  Requires m != 0."""
    if m.is_zero():
        raise MismatchError("zero representation has no simple quotient")
    rad = _radical_bases(m)
    q, f = m.quiver, m.field
    for v in range(q.n):
        if rad[v].cols < m.dims[v]:
            proj, _ = _quotient_projection(rad[v])
            pi = Matrix._make(f, 1, m.dims[v], [proj.data[0]])
            s = simple_rep(q, f, v + 1)
            comps = [pi if u == v else Matrix.zeros(f, s.dims[u], m.dims[u])
                     for u in range(q.n)]
            return v + 1, RepMorphism(m, s, comps)
    raise AuditError("nonzero representation with zero top")


def composition_series(m: Representation) -> list[int]:
    """Vertex labels of the composition factors, top to bottom."""
    labels = []
    cur = m
    while not cur.is_zero():
        v, epi = simple_quotient(cur)
        labels.append(v)
        cur, _ = kernel(epi)
    return labels


def trace_subrep(m: Representation, x: Representation):
    """The subrepresentation of x generated by the images of all morphisms
    from m; x is generated by m exactly when the trace is all of x."""
    _check_family([m, x])
    q, f = x.quiver, x.field
    basis = hom_basis(m, x).basis
    bases = []
    for v in range(q.n):
        comps_v = [g.comps[v] for g in basis if g.comps[v].cols > 0]
        if not comps_v:
            bases.append(Matrix.zeros(f, x.dims[v], 0))
        else:
            bases.append(_column_space(hstack(comps_v)))
    return _subrep_from_bases(x, bases)


def conjugate(m: Representation, vertex_maps: Sequence[Matrix]):
    """Transport m along invertible vertex maps g: returns (n, iso m -> n)
    with n(a) = g_j m(a) g_i^{-1}."""
    q, f = m.quiver, m.field
    gs = list(vertex_maps)
    if len(gs) != q.n:
        raise MismatchError("need one vertex map per vertex")
    invs = [inverse(g) for g in gs]
    mats = {}
    for a in q.arrows:
        i, j = a.source - 1, a.target - 1
        mats[a.name] = gs[j] @ m.mats[a.name] @ invs[i]
    n = Representation(q, f, m.dims, mats)
    return n, RepMorphism(m, n, gs)


def is_isomorphic(m: Representation, n: Representation, rng) -> Optional[RepMorphism]:
    """An isomorphism m -> n, or None when definitely not isomorphic.

    Search order: 32 random linear combinations of the Hom basis, then an
    exhaustive sweep over F_p when dim Hom <= 4 and p^dim <= 10^6.  When the
    exhaustive fallback is infeasible and randomization found nothing,
    raises InconclusiveError rather than guessing.
    """
    _check_family([m, n])
    if m.dims != n.dims:
        return None
    if m.length == 0:
        return RepMorphism.zero(m, n)  # both zero; the empty morphism is an iso
    space = hom_basis(m, n)
    d = space.dim
    if d == 0:
        return None
    f = m.field
    for _ in range(ISO_RANDOM_TRIALS):
        g = combine_morphisms(space, [f.random(rng) for _ in range(d)])
        if g.is_invertible():
            return g
    if not f.is_rationals and d <= ISO_EXHAUSTIVE_DIM and f.p**d <= ISO_EXHAUSTIVE_BUDGET:
        for coeffs in itertools.product(f.elements(), repeat=d):
            if all(c == 0 for c in coeffs):
                continue
            comps = _combine_comps(space, coeffs)
            if all(c.rows == c.cols and rank(c) == c.rows for c in comps):
                return RepMorphism(m, n, comps)
        return None
    raise InconclusiveError(
        f"isomorphism test undecided for dims {m.dims} over {f} (dim Hom = {d})")


def _combine_comps(space: HomSpace, coeffs):
    # Combination of basis components without constructing the morphism.
    f = space.source.field
    q = space.source.quiver
    comps = [Matrix.zeros(f, space.target.dims[v], space.source.dims[v]) for v in range(q.n)]
    for c, g in zip(coeffs, space.basis):
        c = f.scalar(c)
        if c == f.zero:
            continue
        comps = [acc + comp.scale(c) for acc, comp in zip(comps, g.comps)]
    return comps
