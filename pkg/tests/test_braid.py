import random

import pytest

from cbord.braid import (
    BraidWord, QuasipositiveWord, band_generator, band_word, bennequin_genus, closure_components,
    conjugate, destabilize, expand_quasipositive, format_braid, format_quasipositive, free_reduce,
    mirror, parse_braid, parse_quasipositive, permutation, split_union, stabilize, torus_braid, writhe,
)
from cbord.errors import InputError

from conftest import random_braid


def test_letters_must_fit_the_strands():
    with pytest.raises(InputError):
        BraidWord(2, (2,))
    with pytest.raises(InputError):
        BraidWord(3, (0,))
    with pytest.raises(InputError):
        BraidWord(0, ())


@pytest.mark.parametrize("word, expected", [
    (BraidWord(2, (1, 1, 1)), (1, 0)),
    (BraidWord(3, ()), (0, 1, 2)),
    (BraidWord(3, (1, -2, 1, -2)), (1, 2, 0)),
])
def test_permutation(word, expected):
    assert permutation(word) == expected


@pytest.mark.parametrize("word, components", [
    (BraidWord(2, (1, 1)), 2),
    (BraidWord(2, (1, 1, 1)), 1),
    (BraidWord(4, ()), 4),
    (BraidWord(3, (1, -2, 1, -2)), 1),
])
def test_closure_components(word, components):
    info = closure_components(word)
    assert info.components == components
    assert sorted(k for cycle in info.cycles for k in cycle) == list(range(1, word.strands + 1))


def test_writhe():
    assert writhe(BraidWord(2, (1, 1, 1))) == 3
    assert writhe(BraidWord(3, (1, -2, 1, -2))) == 0
    assert writhe(BraidWord(2, (-1,) * 5)) == -5


def test_mirror():
    assert mirror(BraidWord(2, (1, 1, 1))) == BraidWord(2, (-1, -1, -1))
    assert mirror(BraidWord(3, (1, -2, 1, -2))) == BraidWord(3, (-1, 2, -1, 2))


def test_free_reduce():
    assert free_reduce(BraidWord(2, (1, -1))) == BraidWord(2, ())
    assert free_reduce(BraidWord(3, (1, 2, -2, 1))) == BraidWord(3, (1, 1))
    assert free_reduce(BraidWord(2, (1, 1, 1))) == BraidWord(2, (1, 1, 1))
    assert free_reduce(BraidWord(3, (1, 2, -2, -1, 2))) == BraidWord(3, (2,))


def test_markov_moves():
    trefoil = BraidWord(2, (1, 1, 1))
    assert stabilize(trefoil, 1) == BraidWord(3, (1, 1, 1, 2))
    assert stabilize(trefoil, -1) == BraidWord(3, (1, 1, 1, -2))
    assert destabilize(BraidWord(3, (1, 1, 1, 2))) == trefoil
    assert destabilize(BraidWord(3, (1, -2, 1))) == BraidWord(2, (1, 1))
    assert destabilize(BraidWord(2, (1, 1))) is None
    assert destabilize(BraidWord(1, ())) is None
    with pytest.raises(InputError):
        stabilize(trefoil, 2)


def test_conjugate():
    trefoil = BraidWord(2, (1, 1, 1))
    assert conjugate(trefoil, (1,)) == BraidWord(2, (1, 1, 1, 1, -1))
    assert free_reduce(conjugate(trefoil, (1,))) == trefoil
    assert conjugate(trefoil, ()) == trefoil
    assert free_reduce(conjugate(BraidWord(3, (1, 2)), (2,))) == BraidWord(3, (2, 1))
    with pytest.raises(InputError):
        conjugate(trefoil, (2,))


def test_expand_quasipositive():
    assert expand_quasipositive(QuasipositiveWord(2, (((), 1),) * 3)) == BraidWord(2, (1, 1, 1))
    assert expand_quasipositive(QuasipositiveWord(3, (((1,), 2),))) == BraidWord(3, (1, 2, -1))


def test_band_generator():
    assert band_generator(2, 1, 2) == ((), 1)
    assert band_generator(3, 1, 3) == ((1,), 2)
    assert expand_quasipositive(QuasipositiveWord(4, (band_generator(4, 2, 4),))) == BraidWord(4, (2, 3, -2))
    with pytest.raises(InputError):
        band_generator(3, 2, 2)
    with pytest.raises(InputError):
        band_generator(3, 1, 4)
    assert band_word(3, [(1, 2), (2, 3), (1, 3)]).band_count == 3


def test_torus_braid():
    assert torus_braid(2, 3) == BraidWord(2, (1, 1, 1))
    assert torus_braid(2, -3) == BraidWord(2, (-1, -1, -1))
    t32 = torus_braid(3, 2)
    assert t32 == BraidWord(3, (1, 2, 1, 2))
    assert closure_components(t32).components == 1
    assert closure_components(torus_braid(3, 3)).components == 3
    with pytest.raises(InputError):
        torus_braid(1, 3)


def test_split_union():
    trefoil = BraidWord(2, (1, 1, 1))
    assert split_union(trefoil, trefoil) == BraidWord(4, (1, 1, 1, 3, 3, 3))
    assert split_union(trefoil, BraidWord(1, ())) == BraidWord(3, (1, 1, 1))
    assert closure_components(split_union(trefoil, BraidWord(2, (-1, -1)))).components == 3


def test_bennequin_genus():
    assert bennequin_genus(BraidWord(2, (1, 1, 1))) == 1
    assert bennequin_genus(BraidWord(2, (1, 1))) == 0
    assert bennequin_genus(torus_braid(3, 4)) == 3
    with pytest.raises(InputError, match="disconnected"):
        bennequin_genus(BraidWord(3, (1, 1)))


@pytest.mark.parametrize("text", ["B2: 1 1 1", "B3: 1 -2 1 -2", "B1:", "B4: 3 -1"])
def test_braid_text_round_trip(text):
    b = parse_braid(text)
    assert format_braid(b) == text
    assert parse_braid(format_braid(b)) == b


def test_braid_text_is_normalized():
    assert format_braid(parse_braid("  B2 :1   1 1 ")) == "B2: 1 1 1"


@pytest.mark.parametrize("text", ["C2: 1", "B2: 1 x", "B2: 2", "B2 1 1"])
def test_braid_text_errors(text):
    with pytest.raises(InputError):
        parse_braid(text)


def test_braid_parse_error_position():
    with pytest.raises(InputError) as info:
        parse_braid("B2: 1 x")
    assert info.value.position == 6


def test_quasipositive_text_round_trip():
    q = parse_quasipositive("QP3: (1 | 2) (| 1)")
    assert q.bands == (((1,), 2), ((), 1))
    assert format_quasipositive(q) == "QP3: (1 | 2) (| 1)"
    assert parse_quasipositive(format_quasipositive(q)) == q
    assert format_quasipositive(QuasipositiveWord(2, ())) == "QP2:"


@pytest.mark.parametrize("text", ["QP3: (1 | 2) junk", "QP3: (1 | 3)", "QP3: (4 | 1)", "B3: 1"])
def test_quasipositive_text_errors(text):
    with pytest.raises(InputError):
        parse_quasipositive(text)


def test_closure_invariants_over_random_words():
    rng = random.Random(20240517)
    for _ in range(200):
        b = random_braid(rng)
        r = closure_components(b).components
        assert closure_components(free_reduce(b)).components == r
        if b.strands > 1:
            w = tuple(rng.choice((1, -1)) * rng.randint(1, b.strands - 1) for _ in range(rng.randint(0, 3)))
            assert closure_components(conjugate(b, w)).components == r
        assert closure_components(stabilize(b, rng.choice((1, -1)))).components == r
        assert writhe(mirror(b)) == -writhe(b)
        assert permutation(mirror(b)) == permutation(b)
        assert mirror(mirror(b)) == b


def test_expanded_quasipositive_writhe_counts_bands():
    rng = random.Random(7)
    for _ in range(100):
        n = rng.randint(2, 5)
        bands = []
        for _ in range(rng.randint(0, 6)):
            w = tuple(rng.choice((1, -1)) * rng.randint(1, n - 1) for _ in range(rng.randint(0, 4)))
            bands.append((w, rng.randint(1, n - 1)))
        q = QuasipositiveWord(n, tuple(bands))
        assert writhe(expand_quasipositive(q)) == q.band_count
