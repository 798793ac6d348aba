"""Indecomposable decomposition via Fitting splits, and brick detection.

Indecomposability is certified operationally: an object is declared
indecomposable when no endomorphism among the Hom basis and 64 seeded random
combinations yields a nontrivial Fitting split.  Brick testing distinguishes
a definite yes, a definite no with a witness endomorphism, and an explicit
inconclusive outcome; it never guesses.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import lcm

from .errors import AuditError, InconclusiveError, MismatchError
from .linalg import Field, Matrix, hstack, rank
from .rep import (HomSpace, Representation, RepMorphism, _combine_comps,
                  combine_morphisms, direct_sum, hom_basis, image,
                  is_isomorphic, kernel)

SPLIT_RANDOM_TRIALS = 64
SHIFT_TRIALS = 8
BRICK_EXHAUSTIVE_BUDGET = 10**6
ROOT_SWEEP_LIMIT = 4096
DIVISOR_TRIAL_LIMIT = 10**5


@dataclass(frozen=True)
class IndecSummandList:
    """Multiset of certified-indecomposable summands with multiplicities."""

    summands: tuple  # of (Representation, multiplicity)

    def total_dims(self):
        if not self.summands:
            return None
        q = self.summands[0][0].quiver
        return tuple(sum(s.dims[v] * k for s, k in self.summands) for v in range(q.n))

    @property
    def count(self) -> int:
        return sum(k for _, k in self.summands)


def fitting_split(m: Representation, f: RepMorphism):
    """Split m along the stabilized power of an endomorphism.

    With N = length(m), returns (a, b, iso) where a = ker f^N, b = im f^N and
    iso is the certified isomorphism a + b -> m assembled from the two
    inclusions.  One factor is zero exactly when f is nilpotent or invertible.
    """
    if f.source != m or f.target != m:
        raise MismatchError("fitting_split needs an endomorphism of m")
    g = f.power(m.length)
    a, inc_a = kernel(g)
    b, inc_b = image(g)
    combined = RepMorphism(direct_sum([a, b]), m,
                           [hstack([ca, cb]) for ca, cb in zip(inc_a.comps, inc_b.comps)])
    if not combined.is_invertible():
        raise AuditError("Fitting decomposition failed to split the object")
    return a, b, combined


def _charpoly(a: Matrix) -> list:
    """Coefficients (ascending, monic) of det(xI - a), via Hessenberg form
    and the last-column expansion recurrence.  Works over any field."""
    f = a.field
    n = a.rows
    zero, one = f.zero, f.one
    h = [list(row) for row in a.data]
    for j in range(n - 2):
        piv = None
        for i in range(j + 1, n):
            if h[i][j] != zero:
                piv = i
                break
        if piv is None:
            continue
        if piv != j + 1:
            h[piv], h[j + 1] = h[j + 1], h[piv]
            for row in h:
                row[piv], row[j + 1] = row[j + 1], row[piv]
        for i in range(j + 2, n):
            if h[i][j] == zero:
                continue
            t = f.div(h[i][j], h[j + 1][j])
            for c in range(n):
                h[i][c] = f.sub(h[i][c], f.mul(t, h[j + 1][c]))
            for r in range(n):
                h[r][j + 1] = f.add(h[r][j + 1], f.mul(t, h[r][i]))
    polys = [[one]]
    for m_sz in range(1, n + 1):
        prev = polys[m_sz - 1]
        cur = [zero] + list(prev)  # x * prev
        diag = h[m_sz - 1][m_sz - 1]
        for k, c in enumerate(prev):
            cur[k] = f.sub(cur[k], f.mul(diag, c))
        subprod = one
        for k in range(m_sz - 2, -1, -1):
            subprod = f.mul(subprod, h[k + 1][k])
            coef = f.mul(h[k][m_sz - 1], subprod)
            if coef != zero:
                for t, c in enumerate(polys[k]):
                    cur[t] = f.sub(cur[t], f.mul(coef, c))
        polys.append(cur)
    return polys[n]


def _poly_eval(f: Field, coeffs, x):
    acc = f.zero
    for c in reversed(coeffs):
        acc = f.add(f.mul(acc, x), c)
    return acc


def _bounded_divisors(n: int) -> list:
    n = abs(n)
    if n == 0:
        return []
    out = set()
    d = 1
    while d * d <= n and d <= DIVISOR_TRIAL_LIMIT:
        if n % d == 0:
            out.add(d)
            out.add(n // d)
        d += 1
    return sorted(out)


def _field_roots(f: Field, coeffs) -> list:
    """Roots of a monic polynomial in the field; exhaustive over small prime
    fields, rational-root candidates over Q, best effort otherwise."""
    if not f.is_rationals:
        if f.p > ROOT_SWEEP_LIMIT:
            return []
        return [x for x in f.elements() if _poly_eval(f, coeffs, x) == 0]
    scale = lcm(*(c.denominator for c in coeffs)) if coeffs else 1
    ints = [int(c * scale) for c in coeffs]
    lead, const = ints[-1], ints[0]
    if const == 0:
        return [Fraction(0)] + [r for r in _field_roots(f, coeffs[1:]) if r != 0]
    cands = {Fraction(0)}
    for r in _bounded_divisors(const):
        for s in _bounded_divisors(lead):
            cands.add(Fraction(r, s))
            cands.add(Fraction(-r, s))
    return sorted(x for x in cands if _poly_eval(f, coeffs, x) == 0)


def _shift_candidates(m: Representation, g: RepMorphism):
    """Endomorphisms g - lambda*id for each eigenvalue lambda of g in the
    field; these are singular without being nilpotent whenever g has two
    distinct eigenvalues, which is what generic Fitting trials miss over
    large fields."""
    f = m.field
    eigs = []
    for comp in g.comps:
        if comp.rows == 0:
            continue
        for lam in _field_roots(f, _charpoly(comp)):
            if lam != f.zero and lam not in eigs:
                eigs.append(lam)
    out = []
    for lam in eigs:
        comps = [c - Matrix.identity(f, c.rows).scale(lam) for c in g.comps]
        out.append(RepMorphism(m, m, comps))
    return out


def _find_split(m: Representation, endos: HomSpace, rng):
    """A nontrivial Fitting split of m, or None if all trials are trivial.

    Trials are the Hom basis plus 64 seeded random combinations; when none
    splits, the basis and the first few random trials are retried shifted by
    their field eigenvalues.
    """
    fld = m.field
    d = endos.dim
    candidates = list(endos.basis)
    for _ in range(SPLIT_RANDOM_TRIALS):
        candidates.append(combine_morphisms(endos, [fld.random(rng) for _ in range(d)]))

    def try_one(f):
        g = f.power(m.length)
        if g.is_zero() or g.is_invertible():
            return None
        a, b, _ = fitting_split(m, f)
        if a.length and b.length:
            return a, b
        return None

    for f in candidates:
        got = try_one(f)
        if got:
            return got
    for f in candidates[:d + SHIFT_TRIALS]:
        for shifted in _shift_candidates(m, f):
            got = try_one(shifted)
            if got:
                return got
    return None


def decompose(m: Representation, rng) -> IndecSummandList:
    """Krull-Remak-Schmidt decomposition by recursive Fitting splitting.

    Summand classes are deduplicated with is_isomorphic (its inconclusive
    outcome propagates) and returned in a canonical order.
    """
    leaves = []
    stack = [m]
    while stack:
        x = stack.pop()
        if x.is_zero():
            continue
        sp = _find_split(x, hom_basis(x, x), rng)
        if sp is None:
            leaves.append(x)
        else:
            a, b = sp
            stack.append(b)
            stack.append(a)
    classes = []  # (representative, multiplicity)
    for leaf in leaves:
        for i, (r, k) in enumerate(classes):
            if r.dims == leaf.dims and is_isomorphic(r, leaf, rng) is not None:
                classes[i] = (r, k + 1)
                break
        else:
            classes.append((leaf, 1))
    classes.sort(key=lambda rk: rk[0].sort_key())
    return IndecSummandList(tuple(classes))


def endomorphism_dim(m: Representation) -> int:
    return hom_basis(m, m).dim


def is_brick(m: Representation) -> bool:
    """True when every nonzero endomorphism of m is invertible.

    dim End = 1 is a certificate; a nonzero non-invertible basis endomorphism
    is a witness against.  Otherwise all endomorphisms are swept over F_p
    when p^(dim End) <= 10^6; beyond that the answer is InconclusiveError.
    """
    if m.is_zero():
        raise MismatchError("the zero representation is not eligible for brick testing")
    endos = hom_basis(m, m)
    d = endos.dim
    if d == 1:
        return True
    for f in endos.basis:
        if not f.is_zero() and not f.is_invertible():
            return False
    fld = m.field
    if not fld.is_rationals and fld.p**d <= BRICK_EXHAUSTIVE_BUDGET:
        for coeffs in itertools.product(fld.elements(), repeat=d):
            if all(c == 0 for c in coeffs):
                continue
            comps = _combine_comps(endos, coeffs)
            nonzero = not all(c.is_zero() for c in comps)
            invertible = all(c.rows == c.cols and rank(c) == c.rows for c in comps)
            if nonzero and not invertible:
                return False
        return True
    raise InconclusiveError(
        f"brick test undecided: dim End = {d} over {fld} exceeds the exhaustive budget")
