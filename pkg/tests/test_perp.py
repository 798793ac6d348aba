import random

import pytest

from quiverrep import (Field, ext_basis, euler_form, find_rigid, hom_basis,
                       in_perp, is_isomorphic, kronecker_regular,
                       kronecker_report, projective_line, random_rep,
                       zero_rep)
from quiverrep.errors import MismatchError
from quiverrep.generators import indec_projectives
from quiverrep.perp import MEMBER_WITH_WITNESS, NO_WITNESS_FOUND, normalize_point

from conftest import make_a2_reps


def test_in_perp_zero_object(kron, f2):
    verdict = in_perp(zero_rep(kron, f2), (1, 1), samples=10, seed=0)
    assert verdict.status == MEMBER_WITH_WITNESS


def test_in_perp_regular_simple(kron, f5):
    r = kronecker_regular((1, 2), f5, kron)
    verdict = in_perp(r, (1, 1), samples=100, seed=0)
    assert verdict.status == MEMBER_WITH_WITNESS
    n = verdict.witness
    assert hom_basis(r, n).dim == 0 and ext_basis(r, n).dim == 0


def test_in_perp_euler_obstruction(kron, f5):
    p1 = indec_projectives(kron, f5)[0]
    assert p1.dims == (1, 2)
    assert euler_form(kron, (1, 2), (1, 1)) == 1
    verdict = in_perp(p1, (1, 1), samples=50, seed=0)
    assert verdict.status == NO_WITNESS_FOUND
    assert verdict.reason == "euler obstruction"
    assert verdict.samples == 0


def test_in_perp_determinism(kron, f5):
    r = kronecker_regular((1, 2), f5, kron)
    a = in_perp(r, (1, 1), samples=40, seed=9)
    b = in_perp(r, (1, 1), samples=40, seed=9)
    assert a.status == b.status and a.samples == b.samples
    assert a.witness == b.witness


def test_euler_obstruction_soundness(kron, f5):
    # when the euler form is nonzero, Hom and Ext never both vanish
    p1 = indec_projectives(kron, f5)[0]
    rng = random.Random(3)
    for _ in range(50):
        n = random_rep(kron, (1, 1), f5, rng)
        assert not (hom_basis(p1, n).dim == 0 and ext_basis(p1, n).dim == 0)


def test_find_rigid_a2(a2, f2, rng):
    _, _, p1 = make_a2_reps(a2, f2)
    v = find_rigid(a2, f2, (1, 1), samples=50, seed=0)
    assert v is not None
    assert ext_basis(v, v).dim == 0
    assert is_isomorphic(v, p1, rng) is not None


def test_find_rigid_kronecker_none(kron, f2, f5):
    for f in (f2, f5):
        assert find_rigid(kron, f, (1, 1), samples=200, seed=0) is None


def test_find_rigid_zero_vector(a2, f2):
    v = find_rigid(a2, f2, (0, 0), samples=1, seed=0)
    assert v is not None and v.is_zero()


def test_kronecker_regular_points(kron, f5):
    r = kronecker_regular((1, 0), f5, kron)
    assert r.mats["a"].data == ((1,),) and r.mats["b"].data == ((0,),)
    r = kronecker_regular((0, 1), f5, kron)
    assert r.mats["a"].data == ((0,),) and r.mats["b"].data == ((1,),)
    with pytest.raises(MismatchError):
        kronecker_regular((0, 0), f5, kron)


def test_normalize_point(f5):
    assert normalize_point(f5, (2, 3)) == (1, 4)  # 3/2 = 3*3 = 9 = 4 mod 5
    assert normalize_point(f5, (0, 2)) == (0, 1)


def test_projective_line_count(f2, f5):
    assert len(projective_line(f2)) == 3
    assert len(projective_line(f5)) == 6
    with pytest.raises(MismatchError):
        projective_line(Field.rationals())


def test_regulars_pairwise_non_isomorphic(kron, f5, rng):
    pts = projective_line(f5)
    reps = [kronecker_regular(pt, f5, kron) for pt in pts]
    for i in range(len(reps)):
        for j in range(i + 1, len(reps)):
            assert is_isomorphic(reps[i], reps[j], rng) is None


def test_distinct_points_fully_orthogonal(kron, f5):
    r1 = kronecker_regular((1, 2), f5, kron)
    r2 = kronecker_regular((0, 1), f5, kron)
    assert hom_basis(r1, r2).dim == 0 and ext_basis(r1, r2).dim == 0
    assert hom_basis(r2, r1).dim == 0 and ext_basis(r2, r1).dim == 0


def test_kronecker_report_p2():
    report = kronecker_report(2, maxlen=4, samples=100, seed=0)
    assert len(report.simples) == 3
    assert report.passed
    assert report.bijection_total == 3
