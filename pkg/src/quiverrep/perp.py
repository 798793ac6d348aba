"""Perpendicular subcategories, rigid-representation search, Kronecker demo.

Membership of X in the perpendicular category of a dimension vector d is an
existential statement (some N in rep(Q, d) with Hom(X,N) = 0 = Ext^1(X,N)).
It is implemented by seeded sampling with an explicit evidence status: a
found witness proves membership, while ``no_witness_found`` is only absence
of evidence, never a proof of non-membership.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Optional, Sequence

from .decomp import is_brick
from .errors import MismatchError
from .homext import ext_basis
from .linalg import Field, Matrix
from .quiver import Quiver, check_dim_vector, euler_form, kronecker_quiver
from .rep import Representation, hom_basis, random_rep
from .subcat import BrickSet, closure, is_hom_orthogonal, verify_bijection
from .generators import BOUND_EXCEEDED, tower

MEMBER_WITH_WITNESS = "member_with_witness"
NO_WITNESS_FOUND = "no_witness_found"


@dataclass(frozen=True)
class PerpVerdict:
    status: str
    witness: Optional[Representation]
    samples: int
    seed: int
    reason: Optional[str] = None


def in_perp(x: Representation, d: Sequence[int], samples: int = 100,
            seed: int = 0) -> PerpVerdict:
    """Search for N in rep(Q, d) with Hom(x, N) = 0 = Ext^1(x, N).

    Fast path: when the Euler form of (dims(x), d) is nonzero, no N can kill
    both Hom and Ext, so the verdict is immediate with reason
    "euler obstruction".  Identical seeds give identical verdicts.
    """
    q, f = x.quiver, x.field
    d = check_dim_vector(q, d)
    if euler_form(q, x.dims, d) != 0:
        return PerpVerdict(NO_WITNESS_FOUND, None, 0, seed, "euler obstruction")
    rng = random.Random(seed)
    for k in range(samples):
        n = random_rep(q, d, f, rng)
        if hom_basis(x, n).dim == 0 and ext_basis(x, n).dim == 0:
            return PerpVerdict(MEMBER_WITH_WITNESS, n, k + 1, seed)
    return PerpVerdict(NO_WITNESS_FOUND, None, samples, seed, "samples exhausted")


def find_rigid(q: Quiver, f: Field, d: Sequence[int], samples: int = 100,
               seed: int = 0) -> Optional[Representation]:
    """First sampled V in rep(q, d) with Ext^1(V, V) = 0, or None."""
    d = check_dim_vector(q, d)
    rng = random.Random(seed)
    for _ in range(samples):
        v = random_rep(q, d, f, rng)
        if ext_basis(v, v).dim == 0:
            return v
    return None


def normalize_point(f: Field, point) -> tuple:
    """Canonical homogeneous coordinates on the projective line: [1 : y] when
    the first coordinate is nonzero, else [0 : 1]."""
    a, b = (f.scalar(point[0]), f.scalar(point[1]))
    if a != f.zero:
        return (f.one, f.div(b, a))
    if b != f.zero:
        return (f.zero, f.one)
    raise MismatchError("(0, 0) is not a projective point")


def projective_line(f: Field) -> list[tuple]:
    """All p + 1 normalized points of the projective line over F_p."""
    if f.is_rationals:
        raise MismatchError("cannot enumerate the projective line over Q")
    pts = [(f.one, f.scalar(y)) for y in f.elements()]
    pts.append((f.zero, f.one))
    return pts


def kronecker_regular(point, f: Field, q: Quiver = None) -> Representation:
    """The regular representation of the Kronecker quiver at a projective
    point: one-dimensional at both vertices, arrow a acting by the first
    coordinate and arrow b by the second."""
    if q is None:
        q = kronecker_quiver()
    a, b = normalize_point(f, point)
    mats = {"a": Matrix(f, [[a]]), "b": Matrix(f, [[b]])}
    return Representation(q, f, (1, 1), mats)


@dataclass(frozen=True)
class KroneckerReport:
    p: int
    seed: int
    simples: tuple
    hom_orthogonal: bool
    all_bricks: bool
    self_ext_dims: tuple
    memberships: tuple        # PerpVerdict per simple
    rigid: Optional[Representation]
    bijection_passes: int
    bijection_total: int
    towers_bounded: bool

    @property
    def passed(self) -> bool:
        return (self.hom_orthogonal and self.all_bricks
                and all(d == 1 for d in self.self_ext_dims)
                and all(v.status == MEMBER_WITH_WITNESS for v in self.memberships)
                and self.rigid is None
                and self.bijection_passes == self.bijection_total
                and self.towers_bounded)


def kronecker_report(p: int, maxlen: int = 4, samples: int = 100, seed: int = 0,
                     budget: int = 10**6) -> KroneckerReport:
    """Exercise the regular Kronecker simples over F_p.

    Builds all p + 1 regular simples, checks they are pairwise Hom-orthogonal
    bricks with one-dimensional self-extensions and witnessed perpendicular
    membership, that no rigid representation of dimension vector (1, 1)
    exists among the samples, that every two-point brick set verifies the
    simple/closure bijection at ``maxlen``, and that towers never terminate.
    """
    f = Field.prime(p)
    q = kronecker_quiver()
    simples = tuple(kronecker_regular(pt, f, q) for pt in projective_line(f))
    orth, _ = is_hom_orthogonal(simples)
    bricks = all(is_brick(r) for r in simples)
    self_ext = tuple(ext_basis(r, r).dim for r in simples)
    memberships = tuple(in_perp(r, (1, 1), samples, seed) for r in simples)
    rigid = find_rigid(q, f, (1, 1), samples, seed)
    passes = total = 0
    rng = random.Random(seed)
    for i in range(len(simples)):
        for j in range(i + 1, len(simples)):
            total += 1
            report = verify_bijection(BrickSet((simples[i], simples[j])),
                                      maxlen, budget, rng)
            if report.passed:
                passes += 1
    towers_bounded = True
    for r in simples:
        u = closure([r], maxlen, "brick", budget, random.Random(seed))
        tr = tower(r, u, maxlen, budget, random.Random(seed))
        if tr.outcome != BOUND_EXCEEDED:
            towers_bounded = False
    return KroneckerReport(p, seed, simples, orth, bricks, self_ext,
                           memberships, rigid, passes, total, towers_bounded)
