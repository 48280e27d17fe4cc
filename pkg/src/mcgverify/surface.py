"""The glued (4g+2)-gon, fan-triangulated from its center, and its
rotation and reflection symmetries as simplicial maps.

Numbering (all indices counterclockwise, mod ``4g+2``):

* corner ``j`` is the polygon vertex ``p_j``; side ``j`` runs from ``p_j``
  to ``p_{j+1}`` and is glued by translation to side ``j + 2g + 1``;
* spoke ``j`` is edge ``j`` and runs from the center to ``p_j``;
* side class ``s`` (``0 <= s <= 2g``) is edge ``4g + 2 + s``, oriented like
  side ``s``; side ``s + 2g + 1`` is the same edge traversed backwards;
* fan triangle ``j`` is ``(spoke j, side j, ~spoke j+1)``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import cached_property

from .triangulation import Triangulation, edge_of


@dataclass(frozen=True)
class PolygonSurface:
    genus: int

    def __post_init__(self):
        if not isinstance(self.genus, int) or self.genus < 2:
            raise ValueError(f"genus must be an integer >= 2, got {self.genus!r}")

    @property
    def sides(self) -> int:
        return 4 * self.genus + 2

    @property
    def num_side_classes(self) -> int:
        return 2 * self.genus + 1

    @property
    def num_edges(self) -> int:
        return 6 * self.genus + 3

    def spoke(self, j: int) -> int:
        return j % self.sides

    def side_edge(self, j: int) -> int:
        return self.sides + (j % self.sides) % self.num_side_classes

    def side_label(self, j: int) -> int:
        """Label of side ``j`` read counterclockwise along the polygon."""
        j %= self.sides
        e = self.sides + j % self.num_side_classes
        return e if j < self.num_side_classes else ~e

    def is_side(self, edge: int) -> bool:
        return edge >= self.sides

    @cached_property
    def triangulation(self) -> Triangulation:
        n = self.sides
        return Triangulation(
            [(self.spoke(j), self.side_label(j), ~self.spoke(j + 1)) for j in range(n)]
        )

    @property
    def triangles(self):
        return self.triangulation.triangles

    @cached_property
    def center_vertex(self) -> int:
        return self.triangulation.vertex_of_tail[self.spoke(0)]

    def corner_vertex(self, j: int) -> int:
        return self.triangulation.vertex_of_tail[~self.spoke(j)]

    def corner_classes(self) -> list[list[int]]:
        classes: dict[int, list[int]] = {}
        for j in range(self.sides):
            classes.setdefault(self.corner_vertex(j), []).append(j)
        return sorted(classes.values())

    def euler_characteristic(self) -> int:
        return self.triangulation.euler_characteristic()

    def describe(self) -> dict:
        """Deterministic description of the cell structure for debugging."""
        T = self.triangulation
        return {
            "genus": self.genus,
            "sides": self.sides,
            "edges": [
                {
                    "index": e,
                    "kind": "side" if self.is_side(e) else "spoke",
                    "polygon_sides": [j for j in range(self.sides) if self.side_edge(j) == e]
                    if self.is_side(e)
                    else [],
                    "tail": T.vertex_of_tail[e],
                    "head": T.vertex_of_tail[~e],
                }
                for e in range(self.num_edges)
            ],
            "gluing": [[s, s + self.num_side_classes] for s in range(self.num_side_classes)],
            "triangles": [list(t) for t in T.triangles],
            "vertices": T.num_vertices,
            "corner_classes": self.corner_classes(),
            "euler_characteristic": self.euler_characteristic(),
        }

    def dump(self) -> str:
        return json.dumps(self.describe(), sort_keys=True, indent=1)


def build_surface(g: int) -> PolygonSurface:
    return PolygonSurface(g)


@dataclass(frozen=True)
class SimplicialMap:
    """A symmetry of the fan triangulation.

    ``slots[i][k]`` is the ``(triangle, position)`` that slot ``k`` of
    triangle ``i`` is carried to.  ``character`` is +1 for orientation
    preserving maps and -1 for orientation reversing ones.
    """

    genus: int
    slots: tuple
    character: int

    @cached_property
    def surface(self) -> PolygonSurface:
        return PolygonSurface(self.genus)

    @cached_property
    def label_map(self) -> dict[int, int]:
        T = self.surface.triangulation
        out = {}
        for i, t in enumerate(T.triangles):
            for k, x in enumerate(t):
                ti, tk = self.slots[i][k]
                out[x] = T.triangles[ti][tk]
        return out

    @cached_property
    def edge_permutation(self) -> tuple[int, ...]:
        return tuple(edge_of(self.label_map[e]) for e in range(self.surface.num_edges))

    @cached_property
    def direction_flags(self) -> tuple[bool, ...]:
        """Whether each edge keeps its tail-to-head direction."""
        flags = []
        for e in range(self.surface.num_edges):
            same = self.label_map[e] >= 0
            flags.append(same if self.character > 0 else not same)
        return tuple(flags)

    def __matmul__(self, other: "SimplicialMap") -> "SimplicialMap":
        """Composition ``self @ other``: apply ``other`` first."""
        if self.genus != other.genus:
            raise ValueError("maps live on different surfaces")
        slots = tuple(
            tuple(self.slots[ti][tk] for ti, tk in row) for row in other.slots
        )
        return SimplicialMap(self.genus, slots, self.character * other.character)

    def inverse(self) -> "SimplicialMap":
        n = len(self.slots)
        inv = [[None] * 3 for _ in range(n)]
        for i in range(n):
            for k in range(3):
                ti, tk = self.slots[i][k]
                inv[ti][tk] = (i, k)
        return SimplicialMap(self.genus, tuple(tuple(r) for r in inv), self.character)

    def __pow__(self, k: int) -> "SimplicialMap":
        base = self if k >= 0 else self.inverse()
        result = identity_map(PolygonSurface(self.genus))
        for _ in range(abs(k)):
            result = base @ result
        return result

    def is_identity(self) -> bool:
        return self.character == 1 and all(
            self.slots[i][k] == (i, k) for i in range(len(self.slots)) for k in range(3)
        )

    def apply_weights(self, weights):
        out = [0] * len(weights)
        for e, w in enumerate(weights):
            out[self.edge_permutation[e]] = w
        return tuple(out)

    def apply_walk(self, walk):
        """Image of a closed dual walk, given as exit labels."""
        return [self.label_map[x] for x in walk]


def identity_map(S: PolygonSurface) -> SimplicialMap:
    n = S.sides
    return SimplicialMap(S.genus, tuple(tuple((i, k) for k in range(3)) for i in range(n)), 1)


def rotation_map(S: PolygonSurface) -> SimplicialMap:
    n = S.sides
    return SimplicialMap(
        S.genus, tuple(tuple(((i + 1) % n, k) for k in range(3)) for i in range(n)), 1
    )


def reflection_map(S: PolygonSurface) -> SimplicialMap:
    """Reflection in the axis through corners 0 and 2g+1.

    Fan triangle ``j`` goes to triangle ``-1-j`` with its two spokes
    exchanged, which reverses the counterclockwise order of its slots.
    """
    n = S.sides
    slots = tuple(
        tuple(((-1 - i) % n, (2, 1, 0)[k]) for k in range(3)) for i in range(n)
    )
    return SimplicialMap(S.genus, slots, -1)
