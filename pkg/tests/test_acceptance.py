"""Acceptance suite: one test per criterion, each printing a PASS/FAIL line.

Run with ``pytest tests/test_acceptance.py -v -s`` to see the per-criterion
lines.  Everything is seeded and deterministic.
"""

import itertools
import random

import pytest

from quiverrep import (BrickSet, Field, all_middle_terms, audit_extension,
                       closure, composition_series, decompose, direct_sum,
                       enumerate_brick_sets, ext_basis, euler_form,
                       full_universe, hom_basis, indec_projectives, is_brick,
                       is_isomorphic, is_thick, kronecker_quiver,
                       kronecker_report, line_quiver, middle_term,
                       projective_generator, random_rep, relative_simples,
                       sub_universe, tower, verify_bijection)
from quiverrep.errors import InconclusiveError
from quiverrep.generators import BOUND_EXCEEDED, PROJECTIVE_REACHED
from quiverrep.homext import combine_cocycles
from quiverrep.linalg import random_invertible_matrix
from quiverrep.perp import MEMBER_WITH_WITNESS, find_rigid, kronecker_regular
from quiverrep.quiver import Arrow, Quiver
from quiverrep.rep import conjugate

F2 = Field.prime(2)
F101 = Field.prime(101)
QQ = Field.rationals()

A3 = line_quiver(3)
KRON = kronecker_quiver()
Q4 = Quiver(4, (Arrow("a", 1, 2), Arrow("b", 1, 2), Arrow("c", 2, 4),
                Arrow("d", 3, 4), Arrow("e", 1, 3)), name="q4")

QUIVERS = (A3, KRON, Q4)


def _report(number, description, ok):
    print(f"ACCEPTANCE {number} [{'PASS' if ok else 'FAIL'}] {description}")
    assert ok, f"criterion {number} failed: {description}"


def _random_dims(q, rng, bound=4):
    return tuple(rng.randrange(bound + 1) for _ in range(q.n))


def test_criterion_1_euler_identity():
    rng = random.Random(1001)
    grid = [(q, f) for q in QUIVERS for f in (QQ, F101)]
    failures = 0
    checked = 0
    while checked < 200:
        q, f = grid[checked % len(grid)]
        m = random_rep(q, _random_dims(q, rng), f, rng)
        n = random_rep(q, _random_dims(q, rng), f, rng)
        lhs = hom_basis(m, n).dim - ext_basis(m, n).dim
        if lhs != euler_form(q, m.dims, n.dims):
            failures += 1
        checked += 1
    _report(1, f"Euler identity on {checked} random pairs ({failures} failures)",
            failures == 0)


def test_criterion_2_jordan_holder():
    rng = random.Random(1002)
    failures = 0
    per_quiver = 100
    for q in QUIVERS:
        for k in range(per_quiver):
            f = F101 if k % 2 == 0 else QQ
            m = random_rep(q, _random_dims(q, rng), f, rng)
            labels = composition_series(m)
            if tuple(labels.count(v) for v in range(1, q.n + 1)) != m.dims:
                failures += 1
    _report(2, f"Jordan-Holder factor multisets, {per_quiver} per quiver "
               f"({failures} failures)", failures == 0)


def _summand_multisets_match(a, b, rng):
    left = list(a.summands)
    right = list(b.summands)
    if sum(k for _, k in left) != sum(k for _, k in right):
        return False
    for s, k in left:
        hit = None
        for i, (t, k2) in enumerate(right):
            if s.dims != t.dims or k != k2:
                continue
            try:
                if is_isomorphic(s, t, rng) is not None:
                    hit = i
                    break
            except InconclusiveError:
                continue
        if hit is None:
            return False
        right.pop(hit)
    return not right


def test_criterion_3_krull_schmidt_stability():
    rng = random.Random(1003)
    failures = 0
    for k in range(50):
        q = QUIVERS[k % len(QUIVERS)]
        m = random_rep(q, _random_dims(q, rng), F101, rng)
        gs = [random_invertible_matrix(d, F101, rng) for d in m.dims]
        n, _ = conjugate(m, gs)
        if not _summand_multisets_match(decompose(m, rng), decompose(n, rng), rng):
            failures += 1
    _report(3, f"Krull-Schmidt stability on 50 conjugated representations "
               f"({failures} failures)", failures == 0)


def test_criterion_4_a2_catalogue():
    rng = random.Random(1004)
    a2 = line_quiver(2)
    u = full_universe(a2, F2, 4, rng=rng)
    ok = len(u.indecs) == 3 and u.complete
    dims = sorted(m.dims for m in u.indecs)
    ok = ok and dims == [(0, 1), (1, 0), (1, 1)]

    brick_sets = enumerate_brick_sets(u)
    ok = ok and len(brick_sets) == 5

    expected_thick = {(), ((0, 1),), ((1, 0),), ((1, 1),),
                      ((0, 1), (1, 0), (1, 1))}
    thick_found = set()
    for r in range(len(u.indecs) + 1):
        for idx in itertools.combinations(range(len(u.indecs)), r):
            sub = sub_universe(u, idx)
            if is_thick(sub, 10**6, random.Random(0)).thick:
                thick_found.add(tuple(sorted(m.dims for m in sub.indecs)))
    ok = ok and thick_found == expected_thick
    ok = ok and len(thick_found) == len(brick_sets)
    _report(4, "A_2 catalogue: 3 indecomposables, 5 brick sets, the same 5 "
               "thick sub-universes", ok)


def test_criterion_5_bijection_soundness_a3():
    rng = random.Random(1005)
    u = full_universe(A3, F2, 6, rng=rng)
    ok = len(u.indecs) == 6 and all(is_brick(m) for m in u.indecs)
    brick_sets = [s for s in enumerate_brick_sets(u) if s.bricks]
    ok = ok and len(brick_sets) == 13  # nonempty Hom-orthogonal subsets of A_3
    passes = 0
    for s in brick_sets:
        report = verify_bijection(s, 6, 10**6, rng)
        if report.passed and report.complete:
            passes += 1
    ok = ok and passes == len(brick_sets)
    _report(5, f"bijection holds for all {len(brick_sets)} brick sets in the "
               "A_3 universe", ok)


def test_criterion_6_tower_and_projective_generator_a3():
    rng = random.Random(1006)
    u = full_universe(A3, F2, 6, rng=rng)
    projectives = indec_projectives(A3, F2)
    sims = relative_simples(u)
    ok = len(sims) == 3
    for s in sims:
        trace = tower(s, u, 6, 10**6, rng)
        ok = ok and trace.outcome == PROJECTIVE_REACHED
        ok = ok and any(is_isomorphic(trace.final, p, rng) is not None
                        for p in projectives)
    result = projective_generator(u, 6, 10**6, rng)
    ok = ok and result.found and result.generator_certified and result.projective_certified
    expected = direct_sum(projectives)
    ok = ok and is_isomorphic(result.projective, expected, rng) is not None
    _report(6, "A_3 towers end at the projectives; projective generator "
               "P1+P2+P3 certified", ok)


@pytest.mark.parametrize("p", [2, 5])
def test_criterion_7_kronecker_demo(p):
    report = kronecker_report(p, maxlen=4, samples=1000, seed=1007)
    ok = len(report.simples) == p + 1
    ok = ok and report.hom_orthogonal and report.all_bricks
    ok = ok and all(d == 1 for d in report.self_ext_dims)
    ok = ok and all(v.status == MEMBER_WITH_WITNESS for v in report.memberships)
    ok = ok and report.rigid is None
    ok = ok and report.towers_bounded
    ok = ok and report.bijection_passes == report.bijection_total
    _report(7, f"Kronecker demo p={p}: {p + 1} regular simples, rigid-free, "
               "towers bounded", ok)


def test_criterion_8_exactness_audits():
    rng = random.Random(1008)
    audited = 0

    # every extension class between members of small complete universes
    universes = [full_universe(line_quiver(2), F2, 4, rng=rng),
                 full_universe(A3, F2, 6, rng=rng),
                 closure([kronecker_regular((1, 0), F2, KRON)], 4,
                         "brick", 10**6, rng),
                 closure([kronecker_regular((1, 1), Field.prime(5), KRON)], 4,
                         "brick", 10**6, rng)]
    for u in universes:
        p = u.field.p
        for m in u.indecs:
            for n in u.indecs:
                space = ext_basis(m, n)
                for coeffs in itertools.product(range(p), repeat=space.dim):
                    ext = middle_term(combine_cocycles(space, coeffs), m, n)
                    audit_extension(ext)
                    audited += 1

    # random cocycles over larger fields and the rationals
    for f in (F101, QQ):
        for _ in range(20):
            m = random_rep(Q4, _random_dims(Q4, rng, 3), f, rng)
            n = random_rep(Q4, _random_dims(Q4, rng, 3), f, rng)
            space = ext_basis(m, n)
            coeffs = [f.random(rng) for _ in range(space.dim)]
            ext = middle_term(combine_cocycles(space, coeffs), m, n)
            audit_extension(ext)
            audited += 1

    # closures audit every short exact sequence they build internally
    closure([kronecker_regular((1, 1), F2, KRON)], 4, "brick", 10**6, rng)

    _report(8, f"exactness audits: {audited} short exact sequences, 100% pass",
            audited >= 100)
