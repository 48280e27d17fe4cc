"""Seed curves: shipped data and the bounded search that produced it.

A seed file holds the weights of ``a0`` and ``b0`` and, optionally, a
transport chain (see :func:`search_transport`).  Nothing in a seed file is
trusted: the replayer validates every table before use.
"""

from __future__ import annotations

import heapq
import json
from importlib import resources
from pathlib import Path

from .closed import fan_loop_sequence, intersection_bracket, same_class
from .curves import (
    CurveError,
    NormalCurve,
    normalize_path,
    oriented_walk,
)
from .surface import PolygonSurface, reflection_map, rotation_map
from .triangulation import apply_moves

SHIPPED_GENERA = (5, 6, 7, 8)


class SeedError(ValueError):
    pass


def seed_path(genus: int):
    return resources.files("mcgverify") / "data" / f"seeds_g{genus}.json"


def load_seed_data(genus: int, path: str | Path | None = None) -> dict:
    if path is None:
        if genus not in SHIPPED_GENERA:
            raise SeedError(f"no shipped seeds for genus {genus}; pass a seed file or search")
        text = seed_path(genus).read_text()
    else:
        text = Path(path).read_text()
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SeedError(f"seed file is not valid JSON: {exc}") from None
    for key in ("genus", "a0", "b0"):
        if key not in data:
            raise SeedError(f"seed file lacks {key!r}")
    if data["genus"] != genus:
        raise SeedError(f"seed file is for genus {data['genus']}, not {genus}")
    return data


def seed_curve(S: PolygonSurface, raw) -> NormalCurve:
    """A seed given as weights (``6g+3`` integers) or as a crossing path."""
    from .curves import curve

    raw = list(raw)
    if len(raw) == S.num_edges and all(isinstance(x, int) and x >= 0 for x in raw):
        try:
            return curve(S, raw)
        except CurveError:
            pass
    return normalize_path(S, raw)


# -- the search oracle ------------------------------------------------------------


def _orbit(S, w, k):
    sigma = rotation_map(S)
    out = [w]
    for _ in range(k - 1):
        out.append(sigma.apply_weights(out[-1]))
    return out


def closed_walks(S: PolygonSurface, max_len: int):
    """Closed non-backtracking dual walks, each listed once from its lowest
    triangle, in a fixed depth-first order."""
    T = S.triangulation
    for start in range(len(T.triangles)):
        stack = [(start, (), None)]
        while stack:
            t, path, entry = stack.pop()
            if path and t == start and len(path) >= 2:
                yield list(path)
            if len(path) >= max_len:
                continue
            for x in reversed(T.triangles[t]):
                if x == entry:
                    continue
                nt = T.triangle_of(~x)
                if nt < start:
                    continue
                stack.append((nt, path + (x,), ~x))


def _curves_from_walks(S, walks):
    seen = set()
    for walk in walks:
        try:
            c = normalize_path(S, walk)
        except CurveError:
            continue
        if c.weights not in seen:
            seen.add(c.weights)
            yield c


def chain_candidates(S: PolygonSurface, max_len: int = 4) -> list[NormalCurve]:
    """Curves whose rotation orbit is a closed chain of ``2g+1`` curves with
    ``tau(a_i) = a_{c-i}``, sorted by weight then coordinates."""
    g = S.genus
    n = 2 * g + 1
    tau = reflection_map(S)
    out = []
    for c in _curves_from_walks(S, closed_walks(S, max_len)):
        orbit = _orbit(S, c.weights, n + 1)
        if orbit[n] != c.weights or len(set(orbit[:n])) != n:
            continue
        a = [NormalCurve(g, w) for w in orbit[:n]]
        if [intersection_bracket(a[0], a[j]) for j in range(n)] != (
            [(0, 0), (1, 1)] + [(0, 0)] * (n - 3) + [(1, 1)]
        ):
            continue
        image = tau.apply_weights(c.weights)
        if image not in orbit[:n]:
            continue
        out.append(c)
    return sorted(out, key=lambda c: (c.total_weight, c.weights))


def _mirror_labels(S: PolygonSurface) -> set[int]:
    """Labels ``x`` the reflection sends to ``~x``: crossings of the mirror."""
    tau = reflection_map(S)
    return {x for x, y in tau.label_map.items() if y == ~x}


def symmetric_candidates(S: PolygonSurface, half_len: int):
    """Reflection-invariant curves crossing the mirror: a path ``x1 .. xk``
    between mirror crossings, closed up by its reflection traversed
    backwards (``~tau(x_{k-1}) .. ~tau(x_2)``)."""
    T = S.triangulation
    tau = reflection_map(S).label_map
    mirror = _mirror_labels(S)

    def walks():
        for first in sorted(mirror):
            stack = [((first,), ~first)]
            while stack:
                path, entry = stack.pop()
                if len(path) > 1 and path[-1] in mirror:
                    yield list(path) + [~tau[x] for x in reversed(path[1:-1])]
                    continue
                if len(path) > half_len:
                    continue
                for x in reversed(T.triangles[T.triangle_of(entry)]):
                    if x != entry:
                        stack.append((path + (x,), ~x))

    tau_map = reflection_map(S)
    for c in _curves_from_walks(S, walks()):
        if tau_map.apply_weights(c.weights) == c.weights:
            yield c


def b_table_ok(a: list[NormalCurve], b0: NormalCurve) -> bool:
    """Step-1, Step-2 and duality tables for a candidate ``b0``."""
    from .curves import disjoint

    S = b0.surface
    g = S.genus
    n, m = 2 * g + 1, 4 * g + 2
    orbit = _orbit(S, b0.weights, m + 1)
    if orbit[m] != b0.weights or len(set(orbit[:m])) != m:
        return False
    b = [NormalCurve(g, w) for w in orbit[:m]]
    for i in range(n):
        if disjoint(a[i], b0) != (i not in (0, 4)):
            return False
    if intersection_bracket(b0, a[4]) != (1, 1):
        return False
    want = set(range(4, 4 * g - 1)) - {2 * g - 2, 2 * g, 2 * g + 2, 2 * g + 4}
    if {k for k in range(1, m) if disjoint(b0, b[k])} != want:
        return False
    return all(
        disjoint(a[i], b[j]) == (i % n not in (j % n, (j + 4) % n))
        for i in range(n)
        for j in range(m)
    )


def search_seeds(genus: int, max_half: int = 10, a_len: int = 4) -> dict:
    """Deterministic bounded search for ``(a0, b0)`` satisfying every table.

    ``a0`` ranges over short chain curves; ``b0`` over reflection-invariant
    curves built from mirror-to-mirror paths of at most ``max_half`` steps.
    """
    S = PolygonSurface(genus)
    n = 2 * genus + 1
    chains = chain_candidates(S, a_len)
    if not chains:
        raise SeedError(f"no chain curve found with walks of length <= {a_len}")
    tau = reflection_map(S)
    bs = sorted(symmetric_candidates(S, max_half), key=lambda c: (c.total_weight, c.weights))
    for a0 in chains:
        a = [NormalCurve(genus, w) for w in _orbit(S, a0.weights, n)]
        # tau must act as a_i -> a_{4-i} for a b0 meeting exactly a_0 and a_4
        if NormalCurve(genus, tau.apply_weights(a[0].weights)) != a[4]:
            continue
        for b0 in bs:
            if b_table_ok(a, b0):
                return {"genus": genus, "a0": list(a0.weights), "b0": list(b0.weights)}
    raise SeedError("no seed pair satisfies the tables within the search bounds")


# -- transport search -------------------------------------------------------------


def loop_key(genus: int, c: NormalCurve, rotations: bool = True) -> tuple:
    """Canonical key of a curve's class with the corners forgotten, up to
    reversal and (optionally) the rotation."""
    seq = fan_loop_sequence(genus, oriented_walk(c))
    n = 2 * genus + 1
    shifts = range(4 * genus + 2) if rotations else (0,)
    best = None
    for k in shifts:
        rot = [((s + k) % n, f ^ (k & 1)) for s, f in seq]
        rev = [(s, 1 - f) for s, f in reversed(rot)]
        for cand in (rot, rev):
            for i in range(len(cand) or 1):
                key = tuple(cand[i:] + cand[:i])
                if best is None or key < best:
                    best = key
    return best


def search_transport(registry, evaluator, max_expansions: int = 2000, max_weight: int = 5000):
    """Best-first search for a chain of moves carrying ``b0`` to some
    ``a_j`` once the corners are forgotten.  Returns ``(j, chain)`` or
    ``None``.

    A move ``(v, k, s)`` applies ``(B_v B_k^-1)^s`` with ``b_v`` and ``b_k``
    disjoint, which fixes ``b_v``.  States are compared up to rotation; the
    returned chain is re-checked by the replayer, so the search itself
    carries no proof obligations.
    """
    from .curves import disjoint

    g = registry.genus
    m = 4 * g + 2
    bs = [registry.b(j) for j in range(m)]
    pairs = [(v, k) for v in range(m) for k in range(m) if v != k and disjoint(bs[v], bs[k])]
    moves = {}
    for j in range(m):
        for s in (1, -1):
            moves[(j, s)] = evaluator._twist(f"b{j}", s)
    # the a-curves form one rotation orbit, so targets are matched up to
    # rotation and the actual index is recovered afterwards
    targets = {loop_key(g, registry.a(i)) for i in range(2 * g + 1)}
    start = bs[0].weights
    k0 = loop_key(g, bs[0])
    parent = {k0: None}
    heap = [(len(k0), sum(start), k0, start)]
    expanded = 0
    while heap and expanded < max_expansions:
        _, _, key, w = heapq.heappop(heap)
        expanded += 1
        if key in targets:
            c = NormalCurve(g, w)
            hit = next(i for i in range(2 * g + 1) if same_class(c, registry.a(i)))
            chain = []
            while parent[key] is not None:
                prev, move = parent[key]
                chain.append(list(move))
                key = prev
            return hit, chain[::-1]
        for v, k in pairs:
            for s in (1, -1):
                nw = apply_moves(moves[(v, s)], apply_moves(moves[(k, -s)], w))
                if sum(nw) > max_weight:
                    continue
                nk = loop_key(g, NormalCurve(g, nw))
                if nk not in parent:
                    parent[nk] = (key, (v, k, s))
                    heapq.heappush(heap, (len(nk), sum(nw), nk, nw))
    return None


__all__ = [
    "SeedError",
    "chain_candidates",
    "load_seed_data",
    "search_seeds",
    "search_transport",
    "seed_curve",
]
