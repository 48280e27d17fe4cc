import pytest

from mcgverify.surface import PolygonSurface, build_surface, identity_map, reflection_map, rotation_map


@pytest.mark.parametrize("g", [2, 3, 5, 8])
def test_cell_counts_and_euler(g):
    S = build_surface(g)
    T = S.triangulation
    assert (S.sides, S.num_edges, len(T.triangles), T.num_vertices) == (4 * g + 2, 6 * g + 3, 4 * g + 2, 3)
    assert S.euler_characteristic() == 2 - 2 * g


def test_genus_five_shape():
    S = build_surface(5)
    assert (S.sides, S.num_edges, len(S.triangles)) == (22, 33, 22)
    assert sorted(len(c) for c in S.corner_classes()) == [11, 11]


def test_corner_classes_alternate():
    S = build_surface(6)
    assert S.corner_classes() == [list(range(0, 26, 2)), list(range(1, 26, 2))]


@pytest.mark.parametrize("g", [1, 0, -3])
def test_rejects_small_genus(g):
    with pytest.raises(ValueError):
        build_surface(g)


def test_each_side_class_glues_opposite_sides():
    S = build_surface(5)
    for s in range(S.sides):
        assert S.side_edge(s) == S.side_edge(s + 2 * 5 + 1)
        assert S.side_label(s) == ~S.side_label(s + 11)


@pytest.mark.parametrize("g", [2, 5, 7])
def test_rotation_order_and_character(g):
    S = build_surface(g)
    sigma = rotation_map(S)
    assert sigma.character == 1
    assert (sigma ** (4 * g + 2)).is_identity()
    assert not any((sigma ** d).is_identity() for d in range(1, 4 * g + 2))


def test_rotation_shifts_triangles():
    S = build_surface(5)
    sigma = rotation_map(S)
    for j in range(S.sides):
        assert sigma.slots[j][0][0] == (j + 1) % S.sides


@pytest.mark.parametrize("g", [2, 5, 8])
def test_reflection_involution_and_dihedral_relation(g):
    S = build_surface(g)
    sigma, tau = rotation_map(S), reflection_map(S)
    assert tau.character == -1
    assert not tau.is_identity()
    assert (tau @ tau).is_identity()
    assert (tau @ sigma @ tau) == sigma.inverse()


def test_reflection_on_spokes_and_sides():
    S = build_surface(5)
    perm = reflection_map(S).edge_permutation
    n = S.sides
    for j in range(n):
        assert perm[S.spoke(j)] == S.spoke(-j)
        assert perm[S.side_edge(j)] == S.side_edge(-1 - j)


def test_composition_character_is_product():
    S = build_surface(5)
    sigma, tau = rotation_map(S), reflection_map(S)
    assert (sigma @ tau).character == -1
    assert (tau @ sigma @ tau).character == 1
    assert identity_map(S).is_identity()


def test_describe_is_deterministic():
    assert build_surface(5).dump() == build_surface(5).dump()
    d = build_surface(5).describe()
    assert d["euler_characteristic"] == -8 and d["vertices"] == 3
