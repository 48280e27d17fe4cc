import pytest
from hypothesis import given, settings, strategies as st

from mcgverify.words import (
    Letter,
    MCWord,
    WordParseError,
    conj,
    free_reduce,
    leaf,
    parse_word,
    reduce_rotations,
    rotation_word,
)

from conftest import evaluator, registry

E = evaluator(5)
REG = registry(5)
M = 22


# -- syntax


def test_parse_round_trip():
    w = parse_word("r R t q T[a0] T'[b12]")
    assert str(w) == "rRtqT[a0]T'[b12]"
    assert [x.kind for x in w.letters] == list("rRtqTT")
    assert w.letters[-1] == Letter("T", "b12", -1)


@pytest.mark.parametrize("text,pos", [("x", 1), ("rrx", 3), ("r T[a0", 3), ("T[]", 1)])
def test_parse_errors_report_position(text, pos):
    with pytest.raises(WordParseError) as info:
        parse_word(text)
    assert info.value.position == pos


def test_free_reduce():
    assert free_reduce(parse_word("tt")) == MCWord()
    assert free_reduce(parse_word("rRT[c]")) == parse_word("T[c]")
    w = parse_word("rT[a0]qR")
    assert free_reduce(w) == w
    assert free_reduce(parse_word("T[a1]T'[a1]q")) == parse_word("q")


def test_reduce_rotations_modulo_order():
    assert reduce_rotations(rotation_word(M), M) == MCWord()
    assert reduce_rotations(rotation_word(M - 1), M) == parse_word("R")
    assert reduce_rotations(parse_word("rqR"), M) == parse_word("rqR")
    # q is its own inverse letter (its order is checked by the replayer)
    assert reduce_rotations(parse_word("rqqR"), M) == MCWord()


def test_character():
    assert parse_word("q").character == -1
    assert parse_word("tqrT[a0]").character == 1
    u, v = parse_word("rtq"), parse_word("qT[b0]")
    assert (u * v).character == u.character * v.character


# -- the identity criterion


def test_torsion_examples():
    assert E.is_identity(parse_word("qq"))
    assert E.is_identity(rotation_word(M))
    for d in (1, 2, 11):
        v = E.is_identity(rotation_word(d))
        assert not v and v.witness
    v = E.is_identity(parse_word("r"))
    assert not v and v.witness == "curve a0 moved"
    assert E.is_identity(parse_word("q")).witness == "character -1"


def test_hyperelliptic_involution_caught_by_homology():
    # sigma^(2g+1) fixes every chain curve but acts as -I on homology
    chain = [(f"a{i}", REG.a(i)) for i in range(11)]
    v = E.is_identity(rotation_word(11), curves=chain)
    assert not v and v.witness == "homology matrix != I"


def test_evaluate_examples():
    assert E.evaluate(parse_word("r"), REG.a(0)) == REG.a(1)
    assert E.evaluate(parse_word("q"), REG.b(0)) == REG.b(0)


def test_step1_word_examples():
    for k in (4, 5):
        assert E.equal(rotation_word(k) * parse_word("q") * rotation_word(k) * parse_word("q"),
                       parse_word(f"T[b0]T'[b{k}]"))


def test_reflection_inverts_twists():
    # tau T_a1 tau^-1 = (T_{tau(a1)})^-1
    img = E.evaluate(parse_word("t"), REG.a(1))
    name = next(n for n, c in REG.filling_family() if c == img)
    assert E.equal(parse_word("tT[a1]t"), parse_word(f"T'[{name}]"))
    assert not E.equal(parse_word("tT[a1]t"), parse_word(f"T[{name}]"))


def test_noncommuting_twists():
    v = E.equal(parse_word("T[a1]T[b1]"), parse_word("T[b1]T[a1]"))
    assert not v and v.witness.startswith("curve ")


def test_expr_tree_matches_flat_word():
    e = conj(3, leaf(parse_word("T[a0]qT'[b2]")))
    assert str(e.flat()) == "rrrT[a0]qT'[b2]RRR"
    c = REG.b(5)
    from mcgverify.closed import project

    assert E.evaluate_expr(e, project(c)) == E.evaluate_chart(e.flat(), project(c))


# -- random words

LETTERS = ["r", "R", "t", "q", "T[a0]", "T'[a3]", "T[b1]", "T'[b6]", "T[a7]"]
words = st.lists(st.sampled_from(LETTERS), min_size=0, max_size=6).map(lambda xs: parse_word("".join(xs)))


@settings(max_examples=40, deadline=None)
@given(words)
def test_homology_action_is_symplectic(w):
    H = E.homology_action(w)
    assert H.character == w.character
    assert H.preserves_form(REG.J)


@settings(max_examples=30, deadline=None)
@given(words, st.sampled_from(range(33)))
def test_homology_of_images(w, idx):
    _, c = REG.filling_family()[idx]
    got = REG.homology_class(E.evaluate(w, c))
    want = E.homology_action(w).apply(REG.homology_class(c))
    assert got == want or got == [-x for x in want]


@settings(max_examples=25, deadline=None)
@given(words, words)
def test_equal_is_reflexive_and_symmetric(u, v):
    assert E.equal(u, u)
    assert bool(E.equal(u, v)) == bool(E.equal(v, u))


@settings(max_examples=25, deadline=None)
@given(words, st.sampled_from(["a0", "a5", "b0", "b9"]))
def test_conjugation_naturality(w, name):
    img = E.evaluate(w, REG.resolve(name))
    REG.add("_img", img)
    try:
        sign = w.character
        assert E.equal(w * parse_word(f"T[{name}]") * w.inverse(), MCWord.twist("_img", sign))
    finally:
        REG.curves.pop("_img")
        E.clear_cache()
