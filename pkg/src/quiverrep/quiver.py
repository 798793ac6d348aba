"""Finite acyclic quivers, dimension vectors, and the Euler form."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence, Tuple

from .errors import CycleError, MismatchError, ParseError

MAX_VERTICES = 64

DimVector = Tuple[int, ...]


@dataclass(frozen=True)
class Arrow:
    name: str
    source: int
    target: int


@dataclass(frozen=True)
class Quiver:
    """A finite acyclic directed multigraph with vertices labeled 1..n."""

    n: int
    arrows: Tuple[Arrow, ...]
    name: str = ""

    def __post_init__(self):
        if not (0 <= self.n <= MAX_VERTICES):
            raise ValueError(f"vertex count must be in 0..{MAX_VERTICES}, got {self.n}")
        object.__setattr__(self, "arrows", tuple(self.arrows))
        seen = set()
        for a in self.arrows:
            if a.name in seen:
                raise ValueError(f"duplicate arrow id {a.name!r}")
            seen.add(a.name)
            for v in (a.source, a.target):
                if not (1 <= v <= self.n):
                    raise ValueError(f"arrow {a.name!r} uses vertex {v} outside 1..{self.n}")
        cyc = _find_cycle(self)
        if cyc is not None:
            raise CycleError(cyc)

    def arrow(self, name: str) -> Arrow:
        for a in self.arrows:
            if a.name == name:
                return a
        raise KeyError(name)

    def arrows_into(self, v: int) -> list[Arrow]:
        return [a for a in self.arrows if a.target == v]

    def arrows_out_of(self, v: int) -> list[Arrow]:
        return [a for a in self.arrows if a.source == v]

    def __str__(self):
        label = self.name or f"{self.n} vertices"
        return f"Quiver({label}, {len(self.arrows)} arrows)"


def _find_cycle(q: Quiver):
    # Iterative DFS with colors; returns a witness walk v0 -> ... -> v0 or None.
    succ = {v: [] for v in range(1, q.n + 1)}
    for a in q.arrows:
        succ[a.source].append(a.target)
        if a.source == a.target:
            return [a.source, a.target]
    color = {v: 0 for v in range(1, q.n + 1)}  # 0 new, 1 on stack, 2 done
    for start in range(1, q.n + 1):
        if color[start] != 0:
            continue
        stack = [(start, iter(succ[start]))]
        color[start] = 1
        path = [start]
        while stack:
            v, it = stack[-1]
            advanced = False
            for w in it:
                if color[w] == 1:
                    return path[path.index(w):] + [w]
                if color[w] == 0:
                    color[w] = 1
                    path.append(w)
                    stack.append((w, iter(succ[w])))
                    advanced = True
                    break
            if not advanced:
                color[v] = 2
                path.pop()
                stack.pop()
    return None


def topological_order(q: Quiver) -> list[int]:
    """Vertices in a topological order, lowest label first among ready ones."""
    indeg = {v: 0 for v in range(1, q.n + 1)}
    for a in q.arrows:
        indeg[a.target] += 1
    order = []
    ready = sorted(v for v, d in indeg.items() if d == 0)
    while ready:
        v = ready.pop(0)
        order.append(v)
        changed = False
        for a in q.arrows_out_of(v):
            indeg[a.target] -= 1
            if indeg[a.target] == 0:
                ready.append(a.target)
                changed = True
        if changed:
            ready.sort()
    return order


def check_dim_vector(q: Quiver, d: Sequence[int]) -> DimVector:
    d = tuple(int(x) for x in d)
    if len(d) != q.n:
        raise MismatchError(f"dimension vector has length {len(d)}, expected {q.n}")
    if any(x < 0 for x in d):
        raise MismatchError("dimension vector entries must be non-negative")
    return d


def euler_form(q: Quiver, d: Sequence[int], e: Sequence[int]) -> int:
    """The bilinear form  <d, e> = sum_i d_i e_i - sum_{a: i->j} d_i e_j.

    For representations M, N this equals dim Hom(M,N) - dim Ext^1(M,N),
    which is what makes it usable as an independent oracle for the
    defect-map computations.
    """
    d = check_dim_vector(q, d)
    e = check_dim_vector(q, e)
    total = sum(di * ei for di, ei in zip(d, e))
    for a in q.arrows:
        total -= d[a.source - 1] * e[a.target - 1]
    return total


def parse_quiver(text: str, name: str = "") -> Quiver:
    """Parse the line-oriented quiver format.

    Grammar (UTF-8, ``#`` starts a comment)::

        vertices <n>
        arrow <id> <source> <target>   # one line per arrow

    Raises ParseError with a line number on syntax problems and CycleError
    (listing a witness) when the input has a directed cycle.
    """
    n = None
    arrows = []
    seen_ids = set()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if parts[0] == "vertices":
            if n is not None:
                raise ParseError("duplicate 'vertices' line", lineno)
            if len(parts) != 2 or not parts[1].isdigit():
                raise ParseError("expected 'vertices <n>'", lineno)
            n = int(parts[1])
            if n > MAX_VERTICES:
                raise ParseError(f"at most {MAX_VERTICES} vertices supported", lineno)
        elif parts[0] == "arrow":
            if n is None:
                raise ParseError("'arrow' before 'vertices'", lineno)
            if len(parts) != 4:
                raise ParseError("expected 'arrow <id> <source> <target>'", lineno)
            aid = parts[1]
            if aid in seen_ids:
                raise ParseError(f"duplicate arrow id {aid!r}", lineno)
            seen_ids.add(aid)
            try:
                s, t = int(parts[2]), int(parts[3])
            except ValueError:
                raise ParseError("arrow endpoints must be integers", lineno) from None
            if not (1 <= s <= n and 1 <= t <= n):
                raise ParseError(f"arrow {aid!r} endpoint outside 1..{n}", lineno)
            arrows.append(Arrow(aid, s, t))
        else:
            raise ParseError(f"unknown directive {parts[0]!r}", lineno)
    if n is None:
        raise ParseError("missing 'vertices' line", 1)
    return Quiver(n, tuple(arrows), name=name)


def emit_quiver(q: Quiver) -> str:
    lines = [f"vertices {q.n}"]
    lines += [f"arrow {a.name} {a.source} {a.target}" for a in q.arrows]
    return "\n".join(lines) + "\n"


def line_quiver(n: int, name: str = "") -> Quiver:
    """The equioriented A_n quiver 1 -> 2 -> ... -> n."""
    arrows = tuple(Arrow(f"a{i}", i, i + 1) for i in range(1, n))
    return Quiver(n, arrows, name=name or f"A{n}")


def kronecker_quiver(name: str = "kronecker") -> Quiver:
    """Two vertices and two parallel arrows 1 -> 2."""
    return Quiver(2, (Arrow("a", 1, 2), Arrow("b", 1, 2)), name=name)
