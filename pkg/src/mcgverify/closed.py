"""The surface with only the polygon's center marked.

Normal coordinates on the fan triangulation are canonical for the surface
with three marked points (center and the two corner classes).  Identities
of mapping classes are ultimately claims about the closed surface, and
relations that hold there can fail once the corner points are marked, so
comparisons are made after forgetting the corners.

The loops ``d_s`` (center -> midpoint of side ``s`` -> midpoint of side
``s + 2g + 1`` -> center) cut the surface into two disks, one around each
corner class.  Fanning each disk from one of its corners gives an ideal
triangulation whose only vertex is the center.  A curve drawn on the fan
triangulation is projected by recording its crossings with the loops,
cancelling backtracks (which is exactly homotopy once the corners are
forgotten) and filling in the unique diagonal crossings inside each disk.

Sector ``j`` is the part of the polygon around corner ``j`` between the
radii to the midpoints of sides ``j - 1`` and ``j``; sectors of equal
parity form one disk.
"""

from __future__ import annotations

from collections import Counter
from functools import lru_cache
from typing import Sequence

from .triangulation import (
    ArcSystem,
    Triangulation,
    edge_of,
    reduce_walk,
    walk_weights,
)


class ClosedChart:
    """One-vertex triangulation of the genus ``g`` surface with the center
    marked.  Edges ``0 .. 2g`` are the loops ``d_s``; the rest are the
    diagonals of the two disks."""

    def __init__(self, genus: int):
        self.genus = g = genus
        self.n = n = 2 * g + 1  # sides of each disk
        self.sides = 4 * g + 2
        self.boundary = [self._disk_boundary(f) for f in (0, 1)]
        # label -> (disk, position on its boundary)
        self.position = {x: (f, i) for f in (0, 1) for i, x in enumerate(self.boundary[f])}
        self.diagonals = []  # diagonals[f][k] for k = 2 .. n-2
        triangles = []
        nxt = n
        for f in (0, 1):
            E = self.boundary[f]
            D = {k: nxt + k - 2 for k in range(2, n - 1)}
            nxt += n - 3
            self.diagonals.append(D)
            triangles.append((E[0], E[1], ~D[2]))
            for k in range(2, n - 2):
                triangles.append((D[k], E[k], ~D[k + 1]))
            triangles.append((D[n - 2], E[n - 2], E[n - 1]))
        self.triangulation = Triangulation(triangles)
        self.num_edges = self.triangulation.zeta

    def loop_label(self, j: int) -> int:
        """Label of the loop through the radius to midpoint ``j``, traversed
        outward along that radius."""
        j %= self.sides
        return j if j < self.n else ~(j - self.n)

    def _disk_boundary(self, f: int) -> list[int]:
        # Going around the disk with the disk on the left, the corner in
        # sector j is followed by the corner in sector j + 2g, reached along
        # the loop leaving outward through midpoint j - 1.
        out, j = [], f
        for _ in range(self.n):
            out.append(self.loop_label(j - 1))
            j = (j + 2 * self.genus) % self.sides
        return out

    def exit_label(self, s: int, disk: int) -> int:
        """Label for leaving ``disk`` through loop ``s``."""
        return s if (s + 1) % 2 == disk else ~s

    def _diagonal_path(self, f: int, a: int, b: int) -> list[int]:
        """Diagonal exits inside disk ``f`` from boundary slot ``a`` to ``b``."""
        n = self.n
        D = self.diagonals[f]

        def tri(i):
            return min(max(i, 1), n - 2)

        ta, tb = tri(a), tri(b)
        if ta < tb:
            return [~D[k] for k in range(ta + 1, tb + 1)]
        return [D[k] for k in range(ta, tb, -1)]

    def walk_from_loops(self, loops: Sequence[tuple[int, int]]) -> list[int]:
        """Closed dual walk from a cyclically reduced loop sequence of
        ``(loop, disk left)`` pairs."""
        walk = []
        m = len(loops)
        for i, (s, f) in enumerate(loops):
            ps, pf = loops[i - 1]
            entry = ~self.exit_label(ps, pf)
            x = self.exit_label(s, f)
            _, a = self.position[entry]
            _, b = self.position[x]
            walk.extend(self._diagonal_path(f, a, b))
            walk.append(x)
        return walk if m else []

    def is_peripheral(self, weights: Sequence[int]) -> bool:
        """The loop around the center crosses every edge twice."""
        return all(x == 2 for x in weights)

    def components(self, weights: Sequence[int]) -> list[tuple[int, ...]]:
        arcs = ArcSystem(self.triangulation, weights)
        return sorted(arcs.weights_of(c) for c in arcs.components())


@lru_cache(maxsize=16)
def chart(genus: int) -> ClosedChart:
    return ClosedChart(genus)


def fan_loop_sequence(genus: int, walk: Sequence[int]) -> list[tuple[int, int]]:
    """Loop crossings of a closed walk on the fan triangulation.

    Side crossings are placed on the half of each side that lies in the
    triangle of higher index for that side class; a normal arc then
    crosses the radius of its triangle exactly when it joins the two
    halves of the triangle.
    """
    n = 2 * genus + 1
    out = []
    for i, x in enumerate(walk):
        entry = ~walk[i - 1]
        j = _triangle_of_label(genus, x)
        ra, rb = _half(genus, j, entry), _half(genus, j, x)
        if ra != rb:
            # from sector j (half 0) to sector j + 1 (half 1) or back
            disk = j % 2 if ra == 0 else (j + 1) % 2
            out.append((j % n, disk))
    return _reduce_loops(out)


def _triangle_of_label(genus: int, x: int) -> int:
    """Fan triangle holding label ``x``: triangle ``j`` is
    ``(spoke j, side j, ~spoke j+1)``."""
    sides = 4 * genus + 2
    n = 2 * genus + 1
    e = edge_of(x)
    if e < sides:
        return e if x >= 0 else (e - 1) % sides
    s = e - sides
    return s if x >= 0 else s + n


def _half(genus: int, j: int, x: int) -> int:
    """0 for the half of fan triangle ``j`` in sector ``j``, 1 for the half
    in sector ``j + 1``."""
    sides = 4 * genus + 2
    e = edge_of(x)
    if e < sides:
        return 0 if e == j else 1
    return 1 if j <= 2 * genus else 0


def _reduce_loops(seq):
    stack = []
    for x in seq:
        if stack and stack[-1][0] == x[0]:
            stack.pop()
        else:
            stack.append(x)
    i, k = 0, len(stack) - 1
    while i < k and stack[i][0] == stack[k][0]:
        i += 1
        k -= 1
    return stack[i:k + 1]


@lru_cache(maxsize=1 << 16)
def _project(genus: int, fan_weights: tuple) -> tuple:
    from .curves import NormalCurve, oriented_walk

    walk = oriented_walk(NormalCurve(genus, fan_weights))
    loops = fan_loop_sequence(genus, walk)
    C = chart(genus)
    cw = reduce_walk(C.walk_from_loops(loops))
    return walk_weights(cw, C.num_edges)


def project(c) -> tuple[int, ...]:
    """Normal coordinates of a fan curve once the corners are forgotten.

    The zero vector means the curve bounds a disk; the all-twos vector is
    the loop around the center.
    """
    return _project(c.genus, c.weights)


def same_class(a, b) -> bool:
    return a.weights == b.weights or project(a) == project(b)


def is_essential(c) -> bool:
    w = project(c)
    return any(w) and not chart(c.genus).is_peripheral(w)


def disjoint_closed(a, b) -> bool:
    """Disjointness after forgetting the corners.

    The components of the sum must be the two curves themselves (the same
    curve twice for equal classes).
    """
    C = chart(a.genus)
    wa, wb = project(a), project(b)
    total = tuple(x + y for x, y in zip(wa, wb))
    try:
        comps = C.components(total)
    except ValueError:
        return False
    return Counter(comps) == Counter([wa, wb])


def is_separating_chart(weights: Sequence[int]) -> bool:
    """On the one-vertex chart every edge is a loop, so a simple curve is
    null in mod-2 homology, hence separating, iff all its weights are
    even."""
    return all(x % 2 == 0 for x in weights)


@lru_cache(maxsize=4096)
def _shortening(genus: int, weights: tuple):
    from .twist import ShorteningError, shorten

    if is_separating_chart(weights):
        # a separating curve never crosses an edge an odd number of times,
        # so it cannot be the core of a two-triangle annulus
        raise ShorteningError("separating axis: no annulus core exists on the chart")
    return shorten(chart(genus).triangulation, weights)


def intersection_closed(a, b) -> int:
    """Exact geometric intersection number once the corners are forgotten.

    ``a`` is shortened to the core of a two-triangle annulus of the
    one-vertex triangulation and the crossings of ``b`` are counted there.
    """
    from .curves import CurveError, InessentialCurve
    from .twist import annulus_crossings

    wa, wb = project(a), project(b)
    C = chart(a.genus)
    for w in (wa, wb):
        if not any(w) or C.is_peripheral(w):
            raise InessentialCurve("curve is inessential once the corners are forgotten")
    if wa == wb:
        return 0
    if is_separating_chart(wa):
        if is_separating_chart(wb):
            raise CurveError("intersection of two separating curves is not supported")
        wa, wb = wb, wa
    return annulus_crossings(_shortening(a.genus, wa), wb)


def intersection_bracket(a, b) -> tuple[int, int]:
    """``(lower, upper)`` bounds on the geometric intersection number.

    The lower bound comes from disjointness and the algebraic intersection
    number alone; the upper bound is the exact count of
    :func:`intersection_closed`, so the two agree whenever the cheap bound
    is sharp.
    """
    from .curves import algebraic_intersection

    if disjoint_closed(a, b):
        lower = 0
    else:
        alg = abs(algebraic_intersection(a, b))
        lower = max(alg, 2 - alg % 2)
    return lower, intersection_closed(a, b)


# -- the symmetries on chart coordinates ------------------------------------------


def _slot_map(genus: int, kind: str):
    """Where the rotation (``r``), its inverse (``R``) or the reflection
    (``t``) sends the corner in slot ``i`` of disk ``f``."""
    n = 2 * genus + 1
    if kind == "r":
        return lambda f, i: (1, i) if f == 0 else (0, (i - 2) % n)
    if kind == "R":
        return lambda f, i: (1, (i + 2) % n) if f == 0 else (0, i)
    if kind == "t":
        return lambda f, i: (f, (2 * f - i) % n)
    raise ValueError(kind)


@lru_cache(maxsize=64)
def symmetry_stages(genus: int, kind: str) -> tuple:
    """Stages ``("g", gather)`` / ``("m", compiled flips)`` computing the
    image of chart coordinates under a symmetry of the polygon.

    The symmetry carries the chart to a triangulation with the same loops
    whose disks are fanned from another corner; flips inside each disk
    bring the fans back to corner 0.
    """
    C = chart(genus)
    n = C.n
    pi = _slot_map(genus, kind)
    side = [{i: edge_of(C.boundary[f][i]) for i in range(n)} for f in (0, 1)]
    src = list(range(C.num_edges))
    # loops: the side (i, i+1) of disk f goes to the side between the images
    for f in (0, 1):
        for i in range(n):
            f2, a = pi(f, i)
            _, b = pi(f, (i + 1) % n)
            lo = a if (b - a) % n == 1 else b
            src[side[f2][lo]] = side[f][i]
    # diagonals: the image of (0, k) in disk f is (pi(0), pi(k)) in disk f'
    where = [{}, {}]  # disk -> {(a, b): edge index currently holding it}
    for f in (0, 1):
        for k, e in C.diagonals[f].items():
            f2, a = pi(f, 0)
            _, b = pi(f, k)
            where[f2][(min(a, b), max(a, b))] = e
    # indices are reused: the image diagonals of disk f land in disk f'
    order = {f2: sorted(where[f2]) for f2 in (0, 1)}
    holder = {}
    first = [0] * C.num_edges
    for f2 in (0, 1):
        slots = sorted(C.diagonals[f2].values())
        for idx, pair in zip(slots, order[f2]):
            first[idx] = where[f2][pair]
            holder[(f2, pair)] = idx
    for f2 in (0, 1):
        for i in range(n):
            first[side[f2][i]] = src[side[f2][i]]
    flips, final = [], list(range(C.num_edges))
    for f2 in (0, 1):
        diag = {pair: holder[(f2, pair)] for pair in order[f2]}

        def index(a, b, f2=f2, diag=diag):
            a, b = min(a, b), max(a, b)
            if b - a == 1:
                return side[f2][a]
            if a == 0 and b == n - 1:
                return side[f2][n - 1]
            return diag[(a, b)]

        while True:
            nbrs = sorted({0 + 1, n - 1} | {b for (a, b) in diag if a == 0})
            gap = next(((u, v) for u, v in zip(nbrs, nbrs[1:]) if v - u > 1), None)
            if gap is None:
                break
            u, v = gap
            c = next(x for x in range(u + 1, v)
                     if (x - u == 1 or (u, x) in diag) and (v - x == 1 or (x, v) in diag))
            e = diag.pop((u, v))
            flips.append((0, e, index(0, u), index(u, c), index(c, v), index(v, 0)))
            diag[(0, c)] = e
        for (a, b), e in diag.items():
            final[C.diagonals[f2][b]] = e
    stages = [("g", tuple(first))]
    if flips:
        stages.append(("m", tuple(flips)))
    stages.append(("g", tuple(final)))
    return tuple(stages)


def run_stages(stages, w: list[int]) -> list[int]:
    from .triangulation import run_compiled

    for kind, data in stages:
        if kind == "g":
            w = [w[i] for i in data]
        else:
            run_compiled(data, w)
    return w


@lru_cache(maxsize=4096)
def twist_stages(genus: int, weights: tuple, sign: int) -> tuple:
    """Stages of the twist about a curve given by chart coordinates."""
    from .triangulation import compile_moves

    return (("m", compile_moves(_shortening(genus, weights).moves(sign))),)
