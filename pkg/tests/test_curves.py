import pytest
from hypothesis import given, settings, strategies as st

from mcgverify.closed import intersection_bracket, is_essential
from mcgverify.curves import (
    CurveError,
    InessentialCurve,
    NormalCurve,
    algebraic_intersection,
    components,
    curve,
    disjoint,
    normalize_path,
    oriented_walk,
    realize_arcs,
    validate_coordinates,
)
from mcgverify.surface import reflection_map, rotation_map
from mcgverify.twist import TwistSpec, dehn_twist

from conftest import registry


def test_zero_vector_is_empty_multicurve(reg5):
    m = validate_coordinates(reg5.surface, [0] * 33)
    assert m.is_empty()


def test_odd_triangle_sum_names_triangle(reg5):
    w = [0] * 33
    w[0] = 1
    with pytest.raises(CurveError, match="triangle"):
        validate_coordinates(reg5.surface, w)


def test_wrong_length_and_negative(reg5):
    with pytest.raises(CurveError):
        validate_coordinates(reg5.surface, [0] * 32)
    with pytest.raises(CurveError):
        validate_coordinates(reg5.surface, [-1] + [0] * 32)


def test_sum_of_crossing_curves_is_a_multicurve_not_a_curve(reg5):
    S = reg5.surface
    w = [x + y for x, y in zip(reg5.a(0).weights, reg5.a(1).weights)]
    m = validate_coordinates(S, w)
    # the coordinates describe the resolved multicurve, never the crossing pair
    ess, _ = components(S, m)
    assert sorted(c.weights for c in ess) != sorted([reg5.a(0).weights, reg5.a(1).weights])


def test_single_curve_traversal_closes(reg5):
    R = realize_arcs(reg5.surface, [reg5.a(0)])
    assert len(R.cycles) == 1 and R.crossing_count == 0


def test_chain_neighbours_cross_once(reg5):
    assert realize_arcs(reg5.surface, [reg5.a(0), reg5.a(1)]).crossing_count == 1


def test_step1_pair_overlay_has_no_crossings(reg5):
    assert realize_arcs(reg5.surface, [reg5.b(0), reg5.b(4)]).crossing_count == 0


def test_components(reg5):
    S = reg5.surface
    a0, b0, b4 = reg5.a(0), reg5.b(0), reg5.b(4)
    assert components(S, a0) == ([a0], [])
    ess, per = components(S, b0 + b4)
    assert sorted(c.weights for c in ess) == sorted([b0.weights, b4.weights]) and not per
    assert components(S, a0.scaled(2)) == ([a0, a0], [])


def test_disjointness_examples(reg5):
    g = 5
    assert disjoint(reg5.b(0), reg5.b(4))
    assert not disjoint(reg5.b(0), reg5.b(2 * g))
    for c in (reg5.a(0), reg5.b(3)):
        assert disjoint(c, c)


def test_algebraic_intersection_examples(reg5):
    assert abs(algebraic_intersection(reg5.a(4), reg5.b(0))) == 1
    assert algebraic_intersection(reg5.a(1), reg5.a(3)) == 0
    assert algebraic_intersection(reg5.b(0), reg5.b(0)) == 0


def test_brackets(reg5):
    assert intersection_bracket(reg5.a(4), reg5.b(0)) == (1, 1)
    assert intersection_bracket(reg5.b(0), reg5.b(4)) == (0, 0)
    lower, upper = intersection_bracket(reg5.b(0), reg5.b(2))
    assert 1 <= lower <= upper


def test_normalize_fixpoint_and_backtrack(reg5):
    S = reg5.surface
    a0 = reg5.a(0)
    assert normalize_path(S, oriented_walk(a0)) == a0
    # cross spoke 1 out of triangle 0 and come straight back
    x = S.triangles[0][2]
    with pytest.raises(InessentialCurve):
        normalize_path(S, [x, ~x])


def test_normalize_with_inserted_backtrack(reg5):
    S = reg5.surface
    walk = oriented_walk(reg5.b(0))
    T = S.triangulation
    # insert an excursion across an edge of the current triangle and back
    t = T.triangle_of(~walk[-1])
    y = next(x for x in T.triangles[t] if x != ~walk[-1] and x != walk[0])
    assert normalize_path(S, walk + [y, ~y]) == reg5.b(0)


def test_normalize_triple_format(reg5):
    from mcgverify.triangulation import edge_of

    S = reg5.surface
    T = S.triangulation
    walk = oriented_walk(reg5.a(2))
    triples = [(T.triangle_of(~walk[n - 1]), edge_of(walk[n - 1]), edge_of(x)) for n, x in enumerate(walk)]
    assert normalize_path(S, triples) == reg5.a(2)


def test_twisted_curve_normalizes_with_bracket_one(reg5):
    b = dehn_twist(TwistSpec(reg5.a(1), 1), reg5.a(2))
    assert isinstance(b, NormalCurve) and is_essential(b)
    assert intersection_bracket(b, reg5.a(2)) == (1, 1)


# -- properties over registry curves


def _reg_curves(g):
    r = registry(g)
    return [c for _, c in r.filling_family()]


CURVES5 = _reg_curves(5)
pairs = st.tuples(st.sampled_from(CURVES5), st.sampled_from(CURVES5))


@settings(max_examples=40, deadline=None)
@given(pairs)
def test_symmetry_and_antisymmetry(p):
    a, b = p
    assert disjoint(a, b) == disjoint(b, a)
    assert algebraic_intersection(a, b) == -algebraic_intersection(b, a)


@settings(max_examples=40, deadline=None)
@given(pairs, st.sampled_from(["sigma", "tau"]))
def test_equivariance(p, which):
    a, b = p
    S = a.surface
    m = rotation_map(S) if which == "sigma" else reflection_map(S)
    ma, mb = NormalCurve(5, m.apply_weights(a.weights)), NormalCurve(5, m.apply_weights(b.weights))
    assert ma.total_weight == a.total_weight
    assert disjoint(ma, mb) == disjoint(a, b)
    assert abs(algebraic_intersection(ma, mb)) == abs(algebraic_intersection(a, b))


@settings(max_examples=40, deadline=None)
@given(pairs)
def test_additivity_of_disjoint_pairs(p):
    a, b = p
    if a != b and disjoint(a, b):
        S = a.surface
        validate_coordinates(S, (a + b).weights)
        ess, _ = components(S, a + b)
        if len(ess) == 2:
            assert sorted(c.weights for c in ess) == sorted([a.weights, b.weights])


@pytest.mark.parametrize("g", [5, 6, 7, 8])
def test_bracket_parity_on_registry_pairs(g):
    cs = _reg_curves(g)
    for i, a in enumerate(cs):
        for b in cs[i:]:
            lo, up = intersection_bracket(a, b)
            assert lo <= up and (up - lo) % 2 == 0
