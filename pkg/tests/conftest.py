import random
import sys
from pathlib import Path

import pytest

# Make the package importable from a plain checkout, as the entry points do
project_root = Path(__file__).resolve().parent.parent
sys.path.insert(0, str(project_root / 'src'))

from cbord.braid import BraidWord  # noqa: E402
from cbord.homfly import HomflyBudget  # noqa: E402


def random_braid(rng: random.Random, max_strands: int = 5, max_letters: int = 12) -> BraidWord:
    n = rng.randint(1, max_strands)
    if n == 1:
        return BraidWord(1, ())
    length = rng.randint(0, max_letters)
    return BraidWord(n, tuple(rng.choice((1, -1)) * rng.randint(1, n - 1) for _ in range(length)))


def random_tree_text(rng: random.Random, max_vertices: int = 6, weights=(-4, -2, 2, 4)) -> str:
    """A random even-weighted tree in s-expression form."""
    count = rng.randint(1, max_vertices)
    children = {0: []}
    for e in range(1, count):
        children[e] = []
        children[rng.randrange(e)].append(e)
    chosen = {e: rng.choice(weights) for e in range(count)}

    def render(e):
        return "(" + " ".join([str(chosen[e])] + [render(c) for c in children[e]]) + ")"

    return render(0)


@pytest.fixture
def braids():
    return {
        "unknot": BraidWord(1, ()),
        "unlink2": BraidWord(2, ()),
        "hopf_pos": BraidWord(2, (1, 1)),
        "hopf_neg": BraidWord(2, (-1, -1)),
        "trefoil": BraidWord(2, (1, 1, 1)),
        "left_trefoil": BraidWord(2, (-1, -1, -1)),
        "figure_eight": BraidWord(3, (1, -2, 1, -2)),
        "cinquefoil": BraidWord(2, (1, 1, 1, 1, 1)),
    }


@pytest.fixture
def budget():
    return HomflyBudget(max_strands=8, max_letters=60)
