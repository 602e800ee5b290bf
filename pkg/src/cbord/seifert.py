"""
Seifert matrices and the invariants read off them.

Matrices come from two places: the braided (Bennequin) surface of a closed
braid, built here, and plumbing trees (see ``cbord.plumbing``). Everything is
computed exactly; the signature uses congruence diagonalization over the
rationals and determinants go through sympy.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Tuple

import numpy as np
import sympy

from cbord.algebra import LaurentPoly1
from cbord.braid import BraidWord, format_braid

logger = logging.getLogger(__name__)

_T = sympy.Symbol("t")


@dataclass(frozen=True, eq=False)
class SeifertMatrix:
    """
    An integer Seifert matrix V with a provenance tag.

    ``split`` marks matrices of disconnected surfaces, whose boundary is a
    split link.
    """

    entries: np.ndarray
    source: str = ""
    split: bool = False

    def __post_init__(self):
        array = np.array(self.entries, dtype=np.int64)
        if array.size == 0:
            array = np.zeros((0, 0), dtype=np.int64)
        if array.ndim != 2 or array.shape[0] != array.shape[1]:
            raise ValueError(f"a Seifert matrix must be square, got shape {array.shape}")
        array.setflags(write=False)
        object.__setattr__(self, "entries", array)

    @property
    def size(self) -> int:
        return self.entries.shape[0]

    def rows(self) -> List[List[int]]:
        return [[int(x) for x in row] for row in self.entries]

    def symmetrized(self) -> np.ndarray:
        return self.entries + self.entries.T

    def __eq__(self, other):
        if not isinstance(other, SeifertMatrix):
            return NotImplemented
        return self.split == other.split and np.array_equal(self.entries, other.entries)

    def __hash__(self):
        return hash((self.entries.shape, self.entries.tobytes(), self.split))


def bennequin_seifert_matrix(b: BraidWord) -> SeifertMatrix:
    """
    Seifert matrix of the braided surface of the closure of ``b``.

    The surface has a disk per strand and a twisted band per letter. A basis of
    its first homology is given by one loop per pair of consecutive letters
    with the same generator index, so the matrix size is the letter count
    minus the number of distinct generators used.
    """
    x = b.letters
    count = len(x)
    next_same = [None] * count
    for i in range(count):
        for j in range(i + 1, count):
            if abs(x[j]) == abs(x[i]):
                next_same[i] = j
                break
    loops = [i for i in range(count) if next_same[i] is not None]
    m = len(loops)
    V = np.zeros((m, m), dtype=np.int64)

    for a, i in enumerate(loops):
        hi = next_same[i]
        V[a, a] = -int(np.sign(x[i] + x[hi]))
        for c in range(a + 1, m):
            j = loops[c]
            hj = next_same[j]
            if hi > hj or hi < j:
                continue
            if hi == j:
                if x[j] > 0:
                    V[a, c] = 1
                else:
                    V[c, a] = -1
                continue
            diff = abs(x[i]) - abs(x[j])
            if diff == 1:
                V[c, a] = -1
            elif diff == -1:
                V[a, c] = 1

    used = {abs(g) for g in x}
    split = b.strands > 1 and len(used) < b.strands - 1
    if split:
        logger.warning(f"Braided surface of {format_braid(b)} is disconnected; the closure is split")
    return SeifertMatrix(V, source=f"braid:{format_braid(b)}", split=split)


def _rational_matrix(M: np.ndarray) -> List[List[Fraction]]:
    return [[Fraction(int(x)) for x in row] for row in M]


def inertia(V: SeifertMatrix) -> Tuple[int, int, int]:
    """
    Return (positive, negative, zero) counts of the symmetric form V + V^T.

    Nonzero diagonal entries are used as pivots first; when the remaining
    diagonal vanishes, a nonzero off-diagonal entry b gives a hyperbolic block
    [[0, b], [b, 0]] with one positive and one negative square.
    """
    S = _rational_matrix(V.symmetrized())
    active = list(range(len(S)))
    positive = negative = 0
    while active:
        pivot = next((i for i in active if S[i][i] != 0), None)
        if pivot is not None:
            d = S[pivot][pivot]
            active.remove(pivot)
            for k in active:
                factor = S[k][pivot] / d
                if factor:
                    for col in active:
                        S[k][col] -= factor * S[pivot][col]
            if d > 0:
                positive += 1
            else:
                negative += 1
            continue

        pair = next(((i, j) for i in active for j in active if i < j and S[i][j] != 0), None)
        if pair is None:
            break
        i, j = pair
        b = S[i][j]
        active.remove(i)
        active.remove(j)
        # Schur complement of the hyperbolic block
        updates = {}
        for k in active:
            for col in active:
                updates[k, col] = S[k][col] - (S[k][i] * S[j][col] + S[k][j] * S[i][col]) / b
        for (k, col), value in updates.items():
            S[k][col] = value
        positive += 1
        negative += 1
    return positive, negative, len(active)


def signature(V: SeifertMatrix) -> int:
    """
    Signature of the link: positive minus negative eigenvalues of V + V^T.

    Args:
        V: A Seifert matrix; the 0 x 0 matrix of the unknot has signature 0.

    Returns:
        The signature as an exact integer.
    """
    positive, negative, _ = inertia(V)
    return positive - negative


def determinant_and_nullity(V: SeifertMatrix) -> Tuple[int, int]:
    """det(V + V^T) and the dimension of its kernel."""
    if V.size == 0:
        return 1, 0
    det = sympy.Matrix(V.symmetrized().tolist()).det(method="bareiss")
    return int(det), inertia(V)[2]


def alexander(V: SeifertMatrix) -> LaurentPoly1:
    """
    det(V - t V^T), normalized to lowest exponent 0 and positive leading coefficient.

    Split surfaces give 0.
    """
    if V.split:
        return LaurentPoly1({})
    if V.size == 0:
        return LaurentPoly1({0: 1})
    A = sympy.Matrix(V.entries.tolist())
    det = sympy.expand((A - _T * A.T).det(method="berkowitz"))
    if det == 0:
        return LaurentPoly1({})
    poly = sympy.Poly(det, _T)
    return LaurentPoly1({k: int(c) for (k,), c in poly.terms()}).normalized()


def is_alexander_trivial(V: SeifertMatrix) -> bool:
    """True when the Alexander polynomial is a unit +-t^k."""
    return alexander(V) == 1


def boundary_rank(V: SeifertMatrix) -> int:
    """Boundary circle count of a connected surface: 1 + nullity(V - V^T)."""
    if V.size == 0:
        return 1
    antisymmetric = sympy.Matrix((V.entries - V.entries.T).tolist())
    return 1 + V.size - antisymmetric.rank()
