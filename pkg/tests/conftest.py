import itertools
import random

import pytest

from quiverrep import Field, Matrix, Representation, kronecker_quiver, line_quiver
from quiverrep.quiver import Arrow, Quiver


@pytest.fixture
def f2():
    return Field.prime(2)


@pytest.fixture
def f5():
    return Field.prime(5)


@pytest.fixture
def fq():
    return Field.rationals()


@pytest.fixture
def a2():
    return line_quiver(2)


@pytest.fixture
def a3():
    return line_quiver(3)


@pytest.fixture
def kron():
    return kronecker_quiver()


@pytest.fixture
def q4():
    # 4 vertices, multi-arrow (two parallel arrows 1 -> 2), acyclic
    return Quiver(4, (Arrow("a", 1, 2), Arrow("b", 1, 2), Arrow("c", 2, 4),
                      Arrow("d", 3, 4), Arrow("e", 1, 3)), name="q4")


def make_a2_reps(q, f):
    """The three indecomposables of the A_2 quiver: S1, S2, P1."""
    s1 = Representation(q, f, (1, 0))
    s2 = Representation(q, f, (0, 1))
    p1 = Representation(q, f, (1, 1), {q.arrows[0].name: Matrix(f, [[1]])})
    return s1, s2, p1


@pytest.fixture
def a2_reps(a2, f2):
    return make_a2_reps(a2, f2)


def brute_hom_dim(m, n):
    """Independent Hom-dimension oracle: enumerate every tuple of vertex maps
    over F_p and count the ones whose squares all commute, with matrix
    products done by hand on plain ints.  Only for tiny prime-field cases."""
    f = m.field
    p = f.p
    q = m.quiver
    shapes = [(n.dims[v], m.dims[v]) for v in range(q.n)]
    nvars = sum(r * c for r, c in shapes)
    assert p**nvars <= 2**16, "oracle only meant for tiny instances"

    def matmul(a, b, bcols):
        return [[sum(arow[k] * b[k][j] for k in range(len(b))) % p
                 for j in range(bcols)] for arow in a]

    def grid(mat):
        return [list(row) for row in mat.data]

    count = 0
    for flat in itertools.product(range(p), repeat=nvars):
        comps = []
        k = 0
        for r, c in shapes:
            comps.append([[flat[k + i * c + j] for j in range(c)] for i in range(r)])
            k += r * c
        ok = True
        for a in q.arrows:
            i, j = a.source - 1, a.target - 1
            lhs = matmul(comps[j], grid(m.mats[a.name]), m.dims[i])
            rhs = matmul(grid(n.mats[a.name]), comps[i], m.dims[i])
            if lhs != rhs:
                ok = False
                break
        if ok:
            count += 1
    d = 0
    while p**d < count:
        d += 1
    assert p**d == count
    return d


@pytest.fixture
def rng():
    return random.Random(0)
