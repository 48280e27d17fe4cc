"""Normal curves on the fan-triangulated polygon.

A curve is stored as its vector of edge weights.  The polygon's center
and corner points are vertices of the triangulation, so weight vectors
are canonical for curves with those three points marked.  The ``*_marked``
queries answer in that surface; ``same_curve``, ``disjoint`` and
``intersection_bracket`` answer after forgetting the corners (see
:mod:`mcgverify.closed`), which is what statements about the closed
surface need.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .surface import PolygonSurface
from .triangulation import (
    ArcSystem,
    Point,
    check_triangles,
    edge_of,
    reduce_walk,
    walk_weights,
)

# explicit arc tracing is linear in the total weight
MAX_TRACE_WEIGHT = 5_000_000


class CurveError(ValueError):
    pass


class InessentialCurve(CurveError):
    pass


@dataclass(frozen=True)
class Multicurve:
    genus: int
    weights: tuple[int, ...]

    def __add__(self, other: "Multicurve") -> "Multicurve":
        if self.genus != other.genus:
            raise CurveError("curves live on different surfaces")
        return Multicurve(self.genus, tuple(x + y for x, y in zip(self.weights, other.weights)))

    def scaled(self, k: int) -> "Multicurve":
        return Multicurve(self.genus, tuple(k * x for x in self.weights))

    @property
    def total_weight(self) -> int:
        return sum(self.weights)

    @property
    def surface(self) -> PolygonSurface:
        return PolygonSurface(self.genus)

    def is_empty(self) -> bool:
        return not any(self.weights)

    def bits(self) -> int:
        return max(self.weights, default=0).bit_length()


@dataclass(frozen=True)
class NormalCurve(Multicurve):
    """A single essential simple closed curve."""


def _same_surface(S: PolygonSurface, *curves: Multicurve) -> None:
    for c in curves:
        if c.genus != S.genus:
            raise CurveError(f"curve of genus {c.genus} used on genus {S.genus} surface")


def validate_coordinates(S: PolygonSurface, weights: Sequence[int]) -> Multicurve:
    w = tuple(int(x) for x in weights)
    if len(w) != S.num_edges:
        raise CurveError(f"expected {S.num_edges} weights, got {len(w)}")
    if any(x < 0 for x in w):
        raise CurveError("weights must be non-negative")
    problems = check_triangles(w, S.triangulation)
    if problems:
        raise CurveError("; ".join(problems))
    return Multicurve(S.genus, w)


def arc_system(S: PolygonSurface, m: Multicurve) -> ArcSystem:
    if m.total_weight > MAX_TRACE_WEIGHT:
        raise CurveError(f"total weight {m.total_weight} too large for explicit arcs")
    return ArcSystem(S.triangulation, m.weights)


def components(S: PolygonSurface, m: Multicurve) -> tuple[list[NormalCurve], list[Multicurve]]:
    """Split a multicurve into essential curves and vertex-linking loops."""
    _same_surface(S, m)
    arcs = arc_system(S, m)
    essential, peripheral = [], []
    for comp in arcs.components():
        w = arcs.weights_of(comp)
        if arcs.is_peripheral(comp):
            peripheral.append(Multicurve(S.genus, w))
        else:
            essential.append(NormalCurve(S.genus, w))
    essential.sort(key=lambda c: c.weights)
    peripheral.sort(key=lambda c: c.weights)
    return essential, peripheral


def curve(S: PolygonSurface, weights: Sequence[int]) -> NormalCurve:
    """Validate ``weights`` as a single essential curve."""
    m = validate_coordinates(S, weights)
    if m.is_empty():
        raise InessentialCurve("empty curve")
    essential, peripheral = components(S, m)
    if peripheral:
        raise InessentialCurve("curve has a vertex-linking component")
    if len(essential) != 1:
        raise CurveError(f"weights describe {len(essential)} components")
    return essential[0]


def disjoint_marked(a: NormalCurve, b: NormalCurve) -> bool:
    """Disjointness with all three vertex classes marked."""
    if a.genus != b.genus:
        raise CurveError("curves live on different surfaces")
    S = a.surface
    essential, peripheral = components(S, a + b)
    return not peripheral and Counter(c.weights for c in essential) == Counter([a.weights, b.weights])


def same_curve(a: NormalCurve, b: NormalCurve) -> bool:
    from .closed import same_class

    if a.genus != b.genus:
        raise CurveError("curves live on different surfaces")
    return same_class(a, b)


def disjoint(a: NormalCurve, b: NormalCurve) -> bool:
    """Geometric intersection zero once the corners are forgotten."""
    from .closed import disjoint_closed

    if a.genus != b.genus:
        raise CurveError("curves live on different surfaces")
    # disjoint lifts stay disjoint, and the marked test is cheaper
    return disjoint_marked(a, b) or disjoint_closed(a, b)


# -- oriented walks and homology -------------------------------------------


def oriented_walk(c: NormalCurve) -> list[int]:
    """Exit labels of ``c`` in its canonical orientation.

    The walk starts just after crossing the lowest-indexed edge of positive
    weight at the point nearest that edge's tail, moving into the triangle
    that holds the edge's forward label.
    """
    S = c.surface
    arcs = arc_system(S, c)
    e0 = next(e for e, x in enumerate(c.weights) if x)
    return [q.label for _, q in arcs.trace(Point(e0, 0))]


def side_vector(S: PolygonSurface, walk: Iterable[int]) -> tuple[int, ...]:
    """Signed count of polygon exits through each side class.

    Leaving through side ``s`` (``s <= 2g``) counts +1 and leaving through
    side ``s + 2g + 1`` counts -1 for class ``s``.  This is the homology
    class of the walk written in the loops joining the center to the
    midpoints of opposite sides; it is defined up to the alternating
    vector (the boundary of a corner).
    """
    v = [0] * S.num_side_classes
    for x in walk:
        e = edge_of(x)
        if S.is_side(e):
            v[e - S.sides] += 1 if x >= 0 else -1
    return tuple(v)


def side_pairing(u: Sequence[int], v: Sequence[int]) -> int:
    """Algebraic intersection of two side vectors.

    The center-to-side loops of classes ``s < t`` cross once at the center
    with sign +1.
    """
    total = 0
    prefix = 0  # sum of u_s for s < t
    for t in range(len(v)):
        total += prefix * v[t]
        prefix += u[t]
    suffix = 0
    for t in range(len(v) - 1, -1, -1):
        total -= suffix * v[t]
        suffix += u[t]
    return total


def homology_vector(c: NormalCurve) -> tuple[int, ...]:
    return side_vector(c.surface, oriented_walk(c))


def algebraic_intersection(a: NormalCurve, b: NormalCurve) -> int:
    if a.genus != b.genus:
        raise CurveError("curves live on different surfaces")
    return side_pairing(homology_vector(a), homology_vector(b))


# -- raw paths ---------------------------------------------------------------


def path_to_walk(S: PolygonSurface, raw) -> list[int]:
    """Turn a closed crossing path into exit labels.

    ``raw`` is either a list of exit labels or a list of
    ``(triangle, entry_edge, exit_edge)`` triples.
    """
    raw = list(raw)
    if not raw:
        return []
    if all(isinstance(x, int) for x in raw):
        return list(raw)
    T = S.triangulation
    walk = []
    for n, (t, entry, exit_) in enumerate(raw):
        tri = T.triangles[t]
        labels = [x for x in tri if edge_of(x) == exit_]
        if not labels:
            raise CurveError(f"step {n}: edge {exit_} is not a side of triangle {t}")
        walk.append(labels[0])
    for n, (t, entry, exit_) in enumerate(raw):
        prev = walk[n - 1]
        if T.triangle_of(~prev) != t or edge_of(prev) != entry:
            raise CurveError(f"step {n}: path does not enter triangle {t} through edge {entry}")
    return walk


def _cyclic_equal(u: Sequence[int], v: Sequence[int]) -> bool:
    if len(u) != len(v):
        return False
    if not u:
        return True
    doubled = list(u) + list(u)
    n = len(u)
    return any(doubled[i:i + n] == list(v) for i in range(n))


def normalize_path(S: PolygonSurface, raw) -> NormalCurve:
    """Normal form of a closed transverse path.

    Backtracks (arcs entering and leaving a triangle through the same edge)
    are cancelled until none remain.  The reduced walk must then be the walk
    of a simple essential curve.
    """
    walk = reduce_walk(path_to_walk(S, raw))
    if not walk:
        raise InessentialCurve("path is null-homotopic")
    m = validate_coordinates(S, walk_weights(walk, S.num_edges))
    essential, peripheral = components(S, m)
    if peripheral and not essential and len(peripheral) == 1:
        raise InessentialCurve("path is vertex-linking")
    if len(essential) + len(peripheral) != 1:
        raise CurveError("path is not homotopic to a simple closed curve")
    c = essential[0]
    w = oriented_walk(c)
    reverse = [~x for x in reversed(w)]
    if not (_cyclic_equal(w, walk) or _cyclic_equal(reverse, walk)):
        raise CurveError("path is not homotopic to a simple closed curve")
    return c


# -- overlays ------------------------------------------------------------------


@dataclass
class ArcRealization:
    """Explicit arcs of one or two multicurves drawn together.

    ``edge_points[e]`` lists ``(owner, index)`` for the points on edge ``e``
    from its tail to its head, where ``index`` is the position of the point
    among its owner's points.  ``chords[t]`` lists ``(owner, p, q)`` with
    ``p`` and ``q`` counterclockwise perimeter coordinates ``(slot, pos)``.
    """

    surface: PolygonSurface
    curves: tuple
    edge_points: list
    chords: list
    cycles: list = field(default_factory=list)
    crossings: list = field(default_factory=list)

    @property
    def crossing_count(self) -> int:
        return len(self.crossings)


def _interleaved(p, q, r, s) -> bool:
    lo, hi = min(p, q), max(p, q)
    return (lo < r < hi) != (lo < s < hi)


def realize_arcs(S: PolygonSurface, curves: Sequence[Multicurve]) -> ArcRealization:
    """Draw one or two multicurves with explicit points and chords.

    Two disjoint curves are drawn from the realization of their sum, so
    they do not cross.  Otherwise each edge lists the points of both curves
    sorted by the corner they turn into on either side, the first curve
    first within a bundle; crossings are the pairs of chords whose
    endpoints interleave.
    """
    curves = tuple(curves)
    if not 1 <= len(curves) <= 2:
        raise CurveError("realize_arcs takes one or two multicurves")
    _same_surface(S, *curves)
    T = S.triangulation
    systems = [arc_system(S, m) for m in curves]

    owners = None
    if len(curves) == 2 and all(isinstance(c, NormalCurve) for c in curves) and disjoint_marked(*curves):
        owners = _owners_from_sum(S, curves)

    edge_points = []
    for e in range(S.num_edges):
        if owners is not None:
            pts = owners[e]
        else:
            keyed = []
            for o, arcs in enumerate(systems):
                w = arcs.weights[e]
                i, k = T.slot(e)
                j, kk = T.slot(~e)
                for x in range(w):
                    near_tail = x < arcs.corners[i][k]
                    near_head_other = (w - 1 - x) < arcs.corners[j][kk]
                    keyed.append(((not near_tail, near_head_other, o), o, x))
            keyed.sort(key=lambda t: t[0])
            pts = [(o, x) for _, o, x in keyed]
        edge_points.append(pts)

    # perimeter coordinates of each owner's point inside the triangle of a label
    where = {}
    for e, pts in enumerate(edge_points):
        n = len(pts)
        for pos, (o, x) in enumerate(pts):
            where[(o, e, x)] = pos
            where[(o, ~e, systems[o].weights[e] - 1 - x)] = n - 1 - pos

    chords = [[] for _ in T.triangles]
    cycles = []
    for o, arcs in enumerate(systems):
        for comp in arcs.components():
            cyc = []
            for p, q in comp:
                t, kp = T.slot(p.label)
                _, kq = T.slot(q.label)
                cp = (kp, where[(o, p.label, p.position)])
                cq = (kq, where[(o, q.label, q.position)])
                chords[t].append((o, cp, cq))
                cyc.append((t, cp, cq))
            cycles.append((o, cyc))

    crossings = []
    for t, cs in enumerate(chords):
        first = [c for c in cs if c[0] == 0]
        second = [c for c in cs if c[0] == 1]
        for _, p, q in first:
            for _, r, s in second:
                if _interleaved(p, q, r, s):
                    crossings.append((t, (p, q), (r, s)))
    return ArcRealization(S, curves, edge_points, chords, cycles, crossings)


def _owners_from_sum(S: PolygonSurface, curves) -> list:
    total = curves[0] + curves[1]
    arcs = arc_system(S, total)
    seen_owner = {}
    used = Counter()
    targets = [c.weights for c in curves]
    for comp in arcs.components():
        w = arcs.weights_of(comp)
        o = 0 if w == targets[0] and used[0] == 0 else 1
        used[o] += 1
        for p, q in comp:
            for pt in (p, q):
                canon = pt if pt.label >= 0 else arcs.across(pt)
                seen_owner[(canon.label, canon.position)] = o
    owners = []
    for e in range(S.num_edges):
        counts = [0, 0]
        pts = []
        for x in range(total.weights[e]):
            o = seen_owner[(e, x)]
            pts.append((o, counts[o]))
            counts[o] += 1
        owners.append(pts)
    return owners


def overlay_algebraic_intersection(a: NormalCurve, b: NormalCurve) -> int:
    """Signed crossing count of an explicit overlay of the oriented curves.

    Independent of :func:`algebraic_intersection`, which works through the
    side vectors.
    """
    S = a.surface
    R = realize_arcs(S, [a, b]) if not disjoint_marked(a, b) else None
    if R is None:
        return 0
    walks = []
    T = S.triangulation
    # orient chords by each curve's canonical walk
    direction = {}
    for o, c in enumerate((a, b)):
        arcs = arc_system(S, c)
        e0 = next(e for e, x in enumerate(c.weights) if x)
        for p, q in arcs.trace(Point(e0, 0)):
            direction[(o, p.label, p.position)] = (q.label, q.position)
        walks.append(arcs)
    # map perimeter coordinates back to per-owner points
    back = {}
    for e, pts in enumerate(R.edge_points):
        n = len(pts)
        for pos, (o, x) in enumerate(pts):
            back[(o, e, pos)] = (e, x)
            back[(o, ~e, n - 1 - pos)] = (~e, walks[o].weights[e] - 1 - x)
    total = 0
    for t, (p, q), (r, s) in R.crossings:
        tri = T.triangles[t]
        p_pt = back[(0, tri[p[0]], p[1])]
        q_pt = back[(0, tri[q[0]], q[1])]
        r_pt = back[(1, tri[r[0]], r[1])]
        s_pt = back[(1, tri[s[0]], s[1])]
        if direction.get((0,) + p_pt) != q_pt:
            p, q = q, p
        if direction.get((1,) + r_pt) != s_pt:
            r, s = s, r
        # chord of a goes p -> q; the counterclockwise arc from p to q lies
        # to its right.  If b starts on that arc it crosses from right to
        # left, which is a positive crossing for (a, b).
        lo, hi = p, q
        on_ccw_arc = (lo < r < hi) if lo < hi else not (hi <= r <= lo)
        total += 1 if on_ccw_arc else -1
    return total
