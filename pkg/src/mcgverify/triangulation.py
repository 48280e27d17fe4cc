"""Ideal triangulations with labelled oriented edges, normal arcs and flips.

Edges are numbered ``0 .. n-1``.  The label ``e`` is edge ``e`` traversed
from its tail to its head and ``~e`` (``-e - 1``) is the reverse traversal.
A triangle is a triple of labels read counterclockwise, so every label
occurs in exactly one triangle slot.

Vertices of the triangulation are treated as punctures: normal coordinates
are exact invariants of curves in the complement of the vertex set.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterator, Sequence


def edge_of(label: int) -> int:
    return label if label >= 0 else ~label


class Triangulation:
    def __init__(self, triangles: Sequence[Sequence[int]]):
        self.triangles = tuple(tuple(t) for t in triangles)
        labels = [x for t in self.triangles for x in t]
        self.zeta = len(labels) // 2
        if sorted(labels) != list(range(-self.zeta, self.zeta)):
            raise ValueError("every edge must appear once in each direction")
        self._slot = {}
        for i, t in enumerate(self.triangles):
            if len(t) != 3:
                raise ValueError("triangles must have three sides")
            for k, x in enumerate(t):
                self._slot[x] = (i, k)

    def __eq__(self, other):
        return isinstance(other, Triangulation) and self.triangles == other.triangles

    def __hash__(self):
        return hash(self.triangles)

    def __repr__(self):
        return f"Triangulation({list(self.triangles)!r})"

    def slot(self, label: int) -> tuple[int, int]:
        """Triangle index and position of ``label``."""
        return self._slot[label]

    def triangle_of(self, label: int) -> int:
        return self._slot[label][0]

    def rotated(self, label: int) -> tuple[int, int, int]:
        """The triangle containing ``label``, rotated to start with it."""
        i, k = self._slot[label]
        t = self.triangles[i]
        return t[k], t[(k + 1) % 3], t[(k + 2) % 3]

    # -- vertices ---------------------------------------------------------

    @cached_property
    def vertex_of_tail(self) -> dict[int, int]:
        """Vertex index at the tail of each label."""
        parent = list(range(2 * self.zeta))

        def node(label):  # tail node of a label
            return 2 * label if label >= 0 else 2 * (~label) + 1

        def find(u):
            while parent[u] != u:
                parent[u] = parent[parent[u]]
                u = parent[u]
            return u

        for t in self.triangles:
            for k in range(3):
                # head of t[k] is the tail of t[k+1]
                a, b = find(node(~t[k])), find(node(t[(k + 1) % 3]))
                if a != b:
                    parent[max(a, b)] = min(a, b)
        roots = sorted({find(u) for u in range(2 * self.zeta)})
        index = {r: i for i, r in enumerate(roots)}
        return {x: index[find(node(x))] for x in range(-self.zeta, self.zeta)}

    @property
    def num_vertices(self) -> int:
        return len(set(self.vertex_of_tail.values()))

    def euler_characteristic(self) -> int:
        return self.num_vertices - self.zeta + len(self.triangles)

    # -- flips ------------------------------------------------------------

    def is_flippable(self, edge: int) -> bool:
        return self.triangle_of(edge) != self.triangle_of(~edge)

    def square(self, edge: int) -> tuple[int, int, int, int]:
        """Boundary labels ``a, b, c, d`` of the square around ``edge``.

        The triangles are ``(edge, a, b)`` and ``(~edge, c, d)``; ``a`` is
        opposite ``c`` and ``b`` is opposite ``d``.
        """
        _, a, b = self.rotated(edge)
        _, c, d = self.rotated(~edge)
        return a, b, c, d

    def flip(self, edge: int) -> "Triangulation":
        if not self.is_flippable(edge):
            raise ValueError(f"edge {edge} is not flippable")
        a, b, c, d = self.square(edge)
        i, j = self.triangle_of(edge), self.triangle_of(~edge)
        triangles = list(self.triangles)
        triangles[i] = (edge, b, c)
        triangles[j] = (~edge, d, a)
        return Triangulation(triangles)


# -- normal arcs ------------------------------------------------------------


def corner_counts(weights: Sequence[int], triangle: Sequence[int]) -> tuple[int, int, int]:
    """Arc counts at the three corners of a triangle.

    Corner ``k`` sits at the tail of ``triangle[k]`` and joins it to
    ``triangle[k - 1]``.
    """
    w = [weights[edge_of(x)] for x in triangle]
    return tuple((w[k - 1] + w[k] - w[(k + 1) % 3]) // 2 for k in range(3))


def check_triangles(weights: Sequence[int], T: Triangulation) -> list[str]:
    """Return a description of every violated matching condition."""
    problems = []
    for i, t in enumerate(T.triangles):
        w = [weights[edge_of(x)] for x in t]
        if sum(w) % 2:
            problems.append(f"triangle {i}: odd weight sum {sum(w)}")
            continue
        for k in range(3):
            if w[k] > w[(k + 1) % 3] + w[(k + 2) % 3]:
                problems.append(f"triangle {i}: triangle inequality fails on edge {edge_of(t[k])}")
    return problems


@dataclass(frozen=True)
class Point:
    """A point of a normal multicurve on an edge: a label plus a
    counterclockwise position inside the triangle holding that label."""

    label: int
    position: int


class ArcSystem:
    """Explicit normal arcs of a multicurve on a triangulation.

    Point positions are counted along the label's direction, i.e.
    counterclockwise inside its triangle.  Tracing is linear in the total
    weight, so this is only meant for curves of moderate size.
    """

    def __init__(self, T: Triangulation, weights: Sequence[int]):
        self.T = T
        self.weights = tuple(weights)
        problems = check_triangles(self.weights, T)
        if problems:
            raise ValueError("; ".join(problems))
        self.corners = [corner_counts(self.weights, t) for t in T.triangles]

    def weight(self, label: int) -> int:
        return self.weights[edge_of(label)]

    def across(self, p: Point) -> Point:
        """The same point seen from the triangle on the other side."""
        return Point(~p.label, self.weight(p.label) - 1 - p.position)

    def partner(self, p: Point) -> Point:
        """Other endpoint of the arc through ``p`` in ``p``'s triangle."""
        i, k = self.T.slot(p.label)
        t = self.T.triangles[i]
        c = self.corners[i][k]
        w = self.weight(p.label)
        if p.position < c:
            prev = t[k - 1]
            return Point(prev, self.weight(prev) - 1 - p.position)
        nxt = t[(k + 1) % 3]
        return Point(nxt, w - 1 - p.position)

    def corner_of(self, p: Point, q: Point) -> tuple[int, int]:
        """(triangle, corner) of the arc from ``p`` to ``q``."""
        i, k = self.T.slot(p.label)
        _, kq = self.T.slot(q.label)
        return (i, k) if kq == (k - 1) % 3 else (i, kq)

    def trace(self, start: Point) -> list[tuple[Point, Point]]:
        """Arcs of the component through ``start``, in traversal order.

        Each arc is ``(entry, exit)`` with both points in the same triangle;
        the walk leaves through ``exit.label``.
        """
        arcs = []
        p = start
        while True:
            q = self.partner(p)
            arcs.append((p, q))
            p = self.across(q)
            if p == start:
                return arcs
            if len(arcs) > 2 * sum(self.weights) + 2:
                raise RuntimeError("arc tracing did not close up")

    def points(self) -> Iterator[Point]:
        for e, w in enumerate(self.weights):
            for x in range(w):
                yield Point(e, x)

    def components(self) -> list[list[tuple[Point, Point]]]:
        seen = set()
        result = []
        for p in self.points():
            if p in seen:
                continue
            arcs = self.trace(p)
            for a, b in arcs:
                for x in (a, b):
                    seen.add(x if x.label >= 0 else self.across(x))
            result.append(arcs)
        return result

    def is_peripheral(self, arcs: list[tuple[Point, Point]]) -> bool:
        """Whether every arc of a traced component cuts off a corner at one
        and the same vertex (so the component lies in a punctured disk)."""
        vertices = set()
        for p, q in arcs:
            i, k = self.corner_of(p, q)
            vertices.add(self.T.vertex_of_tail[self.T.triangles[i][k]])
        return len(vertices) == 1

    def weights_of(self, arcs) -> tuple[int, ...]:
        w = [0] * self.T.zeta
        for _, q in arcs:
            w[edge_of(q.label)] += 1
        return tuple(w)


def walk_of(arcs) -> list[int]:
    """Exit labels of a traced component."""
    return [q.label for _, q in arcs]


def reduce_walk(walk: Sequence[int]) -> list[int]:
    """Cyclically cancel backtracks ``x, ~x`` in a closed dual walk."""
    stack: list[int] = []
    for x in walk:
        if stack and stack[-1] == ~x:
            stack.pop()
        else:
            stack.append(x)
    i, j = 0, len(stack) - 1
    while i < j and stack[i] == ~stack[j]:
        i += 1
        j -= 1
    return stack[i:j + 1]


def walk_weights(walk: Sequence[int], zeta: int) -> tuple[int, ...]:
    w = [0] * zeta
    for x in walk:
        w[edge_of(x)] += 1
    return tuple(w)


# -- moves on coordinates ---------------------------------------------------


@dataclass(frozen=True)
class Flip:
    """Flip of ``edge`` in a square with opposite pairs (a, c) and (b, d).

    The update is an involution, so the same move also undoes itself in the
    flipped triangulation.
    """

    edge: int
    a: int
    b: int
    c: int
    d: int

    def apply(self, w: list[int]) -> None:
        w[self.edge] = max(w[self.a] + w[self.c], w[self.b] + w[self.d]) - w[self.edge]


@dataclass(frozen=True)
class AnnulusTwist:
    """Dehn twist about the core of a two-triangle annulus.

    ``x`` and ``y`` are the boundary edges, ``e1`` follows ``x``
    counterclockwise in its triangle and ``e2`` precedes it.  ``sign`` +1
    is the right-handed twist.
    """

    e1: int
    e2: int
    x: int
    y: int
    sign: int

    def apply(self, w: list[int]) -> None:
        s = w[self.x] + w[self.y]
        if self.sign > 0:
            w[self.e1], w[self.e2] = max(s, 2 * w[self.e1]) - w[self.e2], w[self.e1]
        else:
            w[self.e1], w[self.e2] = w[self.e2], max(s, 2 * w[self.e2]) - w[self.e1]

    def inverse(self) -> "AnnulusTwist":
        return AnnulusTwist(self.e1, self.e2, self.x, self.y, -self.sign)


def flip_move(T: Triangulation, edge: int) -> Flip:
    a, b, c, d = T.square(edge)
    return Flip(edge, edge_of(a), edge_of(b), edge_of(c), edge_of(d))


def apply_moves(moves: Sequence, weights: Sequence[int], max_bits: int | None = None) -> tuple[int, ...]:
    w = list(weights)
    for m in moves:
        m.apply(w)
    if max_bits is not None:
        top = max(w, default=0)
        if top.bit_length() > max_bits:
            raise OverflowError(f"coordinate exceeds {max_bits} bits")
    return tuple(w)


def compile_moves(moves: Sequence) -> tuple:
    """Flatten moves into tuples for :func:`run_compiled`."""
    out = []
    for m in moves:
        if isinstance(m, Flip):
            out.append((0, m.edge, m.a, m.b, m.c, m.d))
        else:
            out.append((1 if m.sign > 0 else 2, m.e1, m.e2, m.x, m.y, 0))
    return tuple(out)


def run_compiled(ops: Sequence[tuple], w: list[int]) -> None:
    """In-place equivalent of applying the original moves one by one."""
    for kind, p, q, r, s, t in ops:
        if kind == 0:
            x = w[q] + w[s]
            y = w[r] + w[t]
            w[p] = (x if x > y else y) - w[p]
        else:
            h = w[r] + w[s]
            if kind == 1:
                d = 2 * w[p]
                w[p], w[q] = (h if h > d else d) - w[q], w[p]
            else:
                d = 2 * w[q]
                w[p], w[q] = w[q], (h if h > d else d) - w[p]
