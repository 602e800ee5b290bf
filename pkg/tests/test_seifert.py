import logging
import random

import numpy as np
import pytest

from cbord.algebra import LaurentPoly1
from cbord.braid import BraidWord, bennequin_genus, closure_components, mirror, torus_braid
from cbord.plumbing import parse_tree, tree_seifert_matrix
from cbord.seifert import (
    SeifertMatrix, alexander, bennequin_seifert_matrix, boundary_rank, determinant_and_nullity, inertia,
    is_alexander_trivial, signature,
)

from conftest import random_braid


def _connected_random_braid(rng, max_strands=5, max_letters=12):
    while True:
        b = random_braid(rng, max_strands, max_letters)
        if {abs(g) for g in b.letters} == set(range(1, b.strands)):
            return b


def _evaluate(p: LaurentPoly1, x: int) -> int:
    return sum(c * x ** k for k, c in p.terms.items())


def test_trefoil(braids):
    V = bennequin_seifert_matrix(braids["trefoil"])
    assert V.rows() == [[-1, 1], [0, -1]]
    assert V.source == "braid:B2: 1 1 1"
    assert signature(V) == -2
    assert inertia(V) == (0, 2, 0)
    assert determinant_and_nullity(V) == (3, 0)
    assert alexander(V) == LaurentPoly1({0: 1, 1: -1, 2: 1})
    assert not is_alexander_trivial(V)


def test_figure_eight(braids):
    V = bennequin_seifert_matrix(braids["figure_eight"])
    assert V.rows() == [[-1, 1], [0, 1]]
    assert signature(V) == 0
    assert determinant_and_nullity(V) == (-5, 0)
    assert str(alexander(V)) == "1 - 3*t^1 + 1*t^2"


def test_hopf_link(braids):
    V = bennequin_seifert_matrix(braids["hopf_pos"])
    assert V.rows() == [[-1]]
    assert signature(V) == -1
    assert determinant_and_nullity(V) == (-2, 0)
    assert alexander(V) == LaurentPoly1({0: -1, 1: 1})
    assert boundary_rank(V) == 2


def test_torus_knots(braids):
    assert signature(bennequin_seifert_matrix(braids["cinquefoil"])) == -4
    V = bennequin_seifert_matrix(torus_braid(3, 4))
    assert V.size == 6
    assert signature(V) == -6
    assert determinant_and_nullity(V)[0] == 3


def test_unknot_gives_the_empty_matrix(braids):
    V = bennequin_seifert_matrix(braids["unknot"])
    assert V.size == 0
    assert signature(V) == 0
    assert determinant_and_nullity(V) == (1, 0)
    assert alexander(V) == 1
    assert is_alexander_trivial(V)
    assert boundary_rank(V) == 1


def test_split_closure_is_flagged(braids, caplog):
    with caplog.at_level(logging.WARNING, logger="cbord.seifert"):
        V = bennequin_seifert_matrix(braids["unlink2"])
    assert V.split
    assert "disconnected" in caplog.text
    assert alexander(V).is_zero()

    V = bennequin_seifert_matrix(BraidWord(3, (1, 1, 1)))
    assert V.split
    assert alexander(V).is_zero()


def test_matrix_value_semantics():
    a = SeifertMatrix([[1, 0], [1, 1]])
    b = SeifertMatrix(np.array([[1, 0], [1, 1]]))
    assert a == b
    assert hash(a) == hash(b)
    assert a != SeifertMatrix([[1, 0], [1, 1]], split=True)
    assert a.symmetrized().tolist() == [[2, 1], [1, 2]]
    with pytest.raises(ValueError):
        a.entries[0, 0] = 5
    with pytest.raises(ValueError):
        SeifertMatrix([[1, 2, 3]])


def test_hyperbolic_pivot_when_the_diagonal_vanishes():
    V = SeifertMatrix([[0, 1], [0, 0]])
    assert inertia(V) == (1, 1, 0)
    V = SeifertMatrix([[0, 0], [0, 0]])
    assert inertia(V) == (0, 0, 2)
    assert determinant_and_nullity(V) == (0, 2)


def test_mirror_negates_the_signature():
    rng = random.Random(41)
    for _ in range(50):
        b = random_braid(rng)
        assert signature(bennequin_seifert_matrix(mirror(b))) == -signature(bennequin_seifert_matrix(b))


def test_alexander_polynomial_properties():
    rng = random.Random(43)
    for _ in range(40):
        b = _connected_random_braid(rng, max_strands=4, max_letters=10)
        V = bennequin_seifert_matrix(b)
        delta = alexander(V)
        assert delta.reciprocal().normalized() == delta
        det, _ = determinant_and_nullity(V)
        assert abs(_evaluate(delta, -1)) == abs(det)
        if closure_components(b).components == 1:
            assert det % 2 == 1
            assert _evaluate(delta, 1) in (1, -1)
            assert abs(signature(V)) <= 2 * bennequin_genus(b)


def test_boundary_rank_counts_closure_components():
    rng = random.Random(47)
    for _ in range(40):
        b = _connected_random_braid(rng)
        V = bennequin_seifert_matrix(b)
        assert boundary_rank(V) == closure_components(b).components


@pytest.mark.parametrize("tree, braid", [
    ("(-2)", BraidWord(2, (1, 1))),
    ("(-2 (-2))", BraidWord(2, (1, 1, 1))),
    ("(-2 (-2 (-2)))", BraidWord(2, (1, 1, 1, 1))),
])
def test_negative_chains_match_positive_torus_braids(tree, braid):
    assert tree_seifert_matrix(parse_tree(tree)) == bennequin_seifert_matrix(braid)


def test_tree_and_braid_presentations_of_the_figure_eight(braids):
    T = tree_seifert_matrix(parse_tree("(2 (-2))"))
    B = bennequin_seifert_matrix(braids["figure_eight"])
    assert signature(T) == signature(B) == 0
    assert determinant_and_nullity(T) == determinant_and_nullity(B)
    assert alexander(T) == alexander(B)
