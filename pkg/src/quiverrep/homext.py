"""Ext^1 spaces, middle terms of extensions, and extension enumeration.

Over an acyclic quiver the path algebra is hereditary, so Ext^1(m, n) is the
cokernel of the same defect map whose kernel is Hom(m, n); no projective
resolutions are materialized.  A cocycle is a tuple of matrices, one of
shape ``n.dims[target] x m.dims[source]`` per arrow, and its middle term is
the block upper-triangular representation gluing n under m.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Sequence

from .errors import AuditError, InconclusiveError, MismatchError
from .linalg import Matrix, hstack, kernel_basis, rank, rref
from .rep import (Representation, RepMorphism, _check_family, defect_system,
                  is_isomorphic)

Cocycle = tuple  # one Matrix per arrow, in quiver arrow order

SAMPLED_COMBINATIONS = 32


@dataclass(frozen=True)
class ExtSpace:
    """Basis of Ext^1(quotient, sub): elementary cocycles lifting a basis of
    the cokernel of the defect map (one 1 in a non-pivot coordinate each)."""

    quotient: Representation
    sub: Representation
    cocycles: tuple

    @property
    def dim(self) -> int:
        return len(self.cocycles)


@dataclass(frozen=True)
class Extension:
    """A short exact sequence 0 -> sub -> middle -> quotient -> 0."""

    sub: Representation
    middle: Representation
    quotient: Representation
    inclusion: RepMorphism
    projection: RepMorphism


@dataclass(frozen=True)
class MiddleTermSet:
    """Middle terms up to isomorphism; ``complete`` is False when the cocycle
    space was only sampled (infinite field or beyond budget)."""

    reps: tuple
    complete: bool


def zero_cocycle(m: Representation, n: Representation) -> Cocycle:
    q, f = m.quiver, m.field
    return tuple(Matrix.zeros(f, n.dims[a.target - 1], m.dims[a.source - 1])
                 for a in q.arrows)


def ext_basis(m: Representation, n: Representation) -> ExtSpace:
    """Basis of Ext^1(m, n) for the hereditary ambient category.

    The basis consists of the elementary cocycles at the coordinates not hit
    by the column space of the defect map, so dim Hom - dim Ext equals the
    Euler form of the dimension vectors.
    """
    _check_family([m, n])
    sysm = defect_system(m, n)
    q, f = m.quiver, m.field
    W = sysm.matrix.rows
    pivset = set(rref(sysm.matrix.transpose()).pivots)
    shapes = [(n.dims[a.target - 1], m.dims[a.source - 1]) for a in q.arrows]
    cocycles = []
    for w in range(W):
        if w in pivset:
            continue
        # Decode w into (arrow index, row, col) of the cocycle grid.
        idx = len(sysm.eq_offsets) - 1
        while sysm.eq_offsets[idx] > w:
            idx -= 1
        local = w - sysm.eq_offsets[idx]
        nj, mi = shapes[idx]
        r, c = divmod(local, mi)
        coc = []
        for k, (rows_k, cols_k) in enumerate(shapes):
            if k != idx:
                coc.append(Matrix.zeros(f, rows_k, cols_k))
            else:
                data = [[f.one if (i == r and j == c) else f.zero for j in range(cols_k)]
                        for i in range(rows_k)]
                coc.append(Matrix._make(f, rows_k, cols_k, data))
        cocycles.append(tuple(coc))
    return ExtSpace(m, n, tuple(cocycles))


def combine_cocycles(space: ExtSpace, coeffs) -> Cocycle:
    f = space.quotient.field
    out = list(zero_cocycle(space.quotient, space.sub))
    for c, coc in zip(coeffs, space.cocycles):
        c = f.scalar(c)
        if c == f.zero:
            continue
        out = [acc + m.scale(c) for acc, m in zip(out, coc)]
    return tuple(out)


def coboundary(m: Representation, n: Representation, vertex_maps: Sequence[Matrix]) -> Cocycle:
    """The defect phi(f) = (f_j M(a) - N(a) f_i)_a of an arbitrary tuple of
    vertex maps; cocycles differing by one of these are cohomologous."""
    q = m.quiver
    out = []
    for a in q.arrows:
        i, j = a.source - 1, a.target - 1
        out.append(vertex_maps[j] @ m.mats[a.name] - n.mats[a.name] @ vertex_maps[i])
    return tuple(out)


def middle_term(c: Cocycle, m: Representation, n: Representation) -> Extension:
    """The extension of m by n glued along cocycle c.

    The middle term has e(i) = n(i) + m(i) and arrow blocks
    [[n(a), c_a], [0, m(a)]]; the zero cocycle gives the split sequence.
    """
    _check_family([m, n])
    q, f = m.quiver, m.field
    c = tuple(c)
    if len(c) != len(q.arrows):
        raise MismatchError("cocycle must have one matrix per arrow")
    dims = tuple(n.dims[v] + m.dims[v] for v in range(q.n))
    mats = {}
    for idx, a in enumerate(q.arrows):
        i, j = a.source - 1, a.target - 1
        Na, Ma, Ca = n.mats[a.name], m.mats[a.name], c[idx]
        if (Ca.rows, Ca.cols) != (n.dims[j], m.dims[i]):
            raise MismatchError(f"cocycle block for arrow {a.name!r} has the wrong shape")
        z = f.zero
        block = [[z] * dims[i] for _ in range(dims[j])]
        for r in range(n.dims[j]):
            block[r][:n.dims[i]] = list(Na.data[r])
            block[r][n.dims[i]:] = list(Ca.data[r])
        for r in range(m.dims[j]):
            block[n.dims[j] + r][n.dims[i]:] = list(Ma.data[r])
        mats[a.name] = Matrix._make(f, dims[j], dims[i], block)
    e = Representation(q, f, dims, mats)
    inc = RepMorphism(n, e, [_inclusion_block(f, n.dims[v], m.dims[v]) for v in range(q.n)])
    proj = RepMorphism(e, m, [_projection_block(f, n.dims[v], m.dims[v]) for v in range(q.n)])
    return Extension(n, e, m, inc, proj)


def _inclusion_block(f, ntop: int, mbot: int) -> Matrix:
    data = [[f.one if i == j else f.zero for j in range(ntop)] for i in range(ntop)]
    data += [[f.zero] * ntop for _ in range(mbot)]
    return Matrix._make(f, ntop + mbot, ntop, data)


def _projection_block(f, ntop: int, mbot: int) -> Matrix:
    data = [[f.one if j == ntop + i else f.zero for j in range(ntop + mbot)]
            for i in range(mbot)]
    return Matrix._make(f, mbot, ntop + mbot, data)


def audit_extension(ext: Extension) -> bool:
    """Exactness audit: mono in, epi out, zero composite, image = kernel
    vertex-wise, and additive lengths.  Raises AuditError on any failure."""
    if not ext.inclusion.is_mono():
        raise AuditError("inclusion is not a monomorphism")
    if not ext.projection.is_epi():
        raise AuditError("projection is not an epimorphism")
    if not ext.projection.compose(ext.inclusion).is_zero():
        raise AuditError("projection after inclusion is nonzero")
    if ext.middle.length != ext.sub.length + ext.quotient.length:
        raise AuditError("middle term length is not additive")
    for v in range(ext.middle.quiver.n):
        inc = ext.inclusion.comps[v]
        ker = kernel_basis(ext.projection.comps[v])
        r_inc, r_ker = rank(inc), rank(ker)
        if r_inc != r_ker:
            raise AuditError("image and kernel differ at a vertex")
        if inc.cols + ker.cols > 0 and rank(hstack([inc, ker])) != r_inc:
            raise AuditError("image and kernel span different subspaces")
    return True


def all_middle_terms(m: Representation, n: Representation, budget: int, rng) -> MiddleTermSet:
    """Middle terms of extensions of m by n, deduplicated up to isomorphism.

    Over a prime field with p^dim <= budget every cocycle class is realized
    (complete).  Otherwise the basis cocycles plus 32 seeded random
    combinations are sampled and the result is flagged incomplete.
    """
    space = ext_basis(m, n)
    d = space.dim
    f = m.field
    if d == 0:
        ext = middle_term(zero_cocycle(m, n), m, n)
        audit_extension(ext)
        return MiddleTermSet((ext.middle,), True)
    if not f.is_rationals and f.p**d <= budget:
        coeff_iter = itertools.product(f.elements(), repeat=d)
        complete = True
    else:
        seen = [tuple(0 for _ in range(d))]
        for k in range(d):
            seen.append(tuple(f.one if i == k else 0 for i in range(d)))
        seen += [tuple(f.random(rng) for _ in range(d)) for _ in range(SAMPLED_COMBINATIONS)]
        coeff_iter = iter(seen)
        complete = False
    reps = []
    for coeffs in coeff_iter:
        ext = middle_term(combine_cocycles(space, coeffs), m, n)
        audit_extension(ext)
        e = ext.middle
        duplicate = False
        for r in reps:
            if e.dims != r.dims:
                continue
            try:
                if is_isomorphic(e, r, rng) is not None:
                    duplicate = True
                    break
            except InconclusiveError:
                # keep both candidates rather than guessing; the flag records
                # that the list is no longer a canonical set of classes
                complete = False
        if not duplicate:
            reps.append(e)
    return MiddleTermSet(tuple(reps), complete)
