import random

import pytest

from quiverrep import euler_form, parse_quiver, topological_order
from quiverrep.errors import CycleError, MismatchError, ParseError
from quiverrep.quiver import Arrow, Quiver, emit_quiver, line_quiver

A2_TEXT = """
# two vertices, one arrow
vertices 2
arrow a 1 2
"""

KRONECKER_TEXT = """
vertices 2
arrow a 1 2
arrow b 1 2
"""


def test_parse_a2():
    q = parse_quiver(A2_TEXT)
    assert q.n == 2 and len(q.arrows) == 1
    assert q.arrows[0] == Arrow("a", 1, 2)


def test_parse_kronecker_multiarrow():
    q = parse_quiver(KRONECKER_TEXT)
    assert q.n == 2 and len(q.arrows) == 2
    assert all(a.source == 1 and a.target == 2 for a in q.arrows)


def test_parse_loop_is_cycle_error():
    with pytest.raises(CycleError) as err:
        parse_quiver("vertices 1\narrow l 1 1\n")
    assert list(err.value.cycle) == [1, 1]


def test_parse_two_cycle_witness():
    with pytest.raises(CycleError) as err:
        parse_quiver("vertices 2\narrow a 1 2\narrow b 2 1\n")
    cyc = list(err.value.cycle)
    assert cyc[0] == cyc[-1] and set(cyc) == {1, 2}


def test_parse_errors_carry_line_numbers():
    with pytest.raises(ParseError) as err:
        parse_quiver("vertices 2\narrow a 1\n")
    assert err.value.line == 2
    with pytest.raises(ParseError) as err:
        parse_quiver("vertices 2\narrow a 1 3\n")
    assert err.value.line == 2
    with pytest.raises(ParseError) as err:
        parse_quiver("arrow a 1 2\n")
    assert err.value.line == 1
    with pytest.raises(ParseError):
        parse_quiver("vertices 2\narrow a 1 2\narrow a 1 2\n")


def test_emit_round_trip():
    q = parse_quiver(KRONECKER_TEXT)
    assert parse_quiver(emit_quiver(q)) == Quiver(2, q.arrows)


def test_topological_order_lines():
    assert topological_order(line_quiver(2)) == [1, 2]
    assert topological_order(line_quiver(3)) == [1, 2, 3]


def test_topological_order_tie_break():
    q = Quiver(3, (Arrow("a", 2, 1), Arrow("b", 3, 1)))
    assert topological_order(q) == [2, 3, 1]


def test_euler_zero_vector():
    q = line_quiver(3)
    assert euler_form(q, (0, 0, 0), (2, 1, 4)) == 0


def test_euler_a2():
    assert euler_form(line_quiver(2), (1, 0), (0, 1)) == -1


def test_euler_kronecker():
    from quiverrep import kronecker_quiver
    assert euler_form(kronecker_quiver(), (1, 1), (1, 1)) == 0


def test_euler_dimension_mismatch():
    with pytest.raises(MismatchError):
        euler_form(line_quiver(2), (1, 0, 0), (0, 1))


def test_euler_bilinear_random_triples(q4):
    rng = random.Random(3)
    for _ in range(40):
        d = tuple(rng.randrange(5) for _ in range(q4.n))
        e = tuple(rng.randrange(5) for _ in range(q4.n))
        g = tuple(rng.randrange(5) for _ in range(q4.n))
        de = tuple(x + y for x, y in zip(d, e))
        assert euler_form(q4, de, g) == euler_form(q4, d, g) + euler_form(q4, e, g)
        assert euler_form(q4, g, de) == euler_form(q4, g, d) + euler_form(q4, g, e)
