"""
HOMFLY polynomial of closed braids in the (v, z) convention

    P(L+) = v z P(L0) + v^2 P(L-),    P(unknot) = 1.

The engine expands the braid word in the permutation basis T_w of the Hecke
algebra, where the generators satisfy g^2 = v z g + v^2, and evaluates the
closure with a Markov trace:

    tr(x (+) 1) = delta * tr(x),    tr(x g_n) = tr(x),    delta = (v^-1 - v) z^-1.

Positive letters are the L+ crossings.
"""

from __future__ import annotations

import logging
import os
import re
from dataclasses import dataclass
from functools import lru_cache
from typing import Dict, Mapping, Optional, Tuple

from cbord.algebra import LaurentPoly1, LaurentPoly2
from cbord.braid import BraidWord, closure_components, destabilize, free_reduce, writhe
from cbord.errors import BudgetExceededError, InputError

logger = logging.getLogger(__name__)

BUDGET_ENV = "CBORD_BUDGET"

# Permutations whose closure traces are kept between calls
TRACE_CACHE_SIZE = 1 << 16

VZ = LaurentPoly2.monomial(1, 1, 1)
V2 = LaurentPoly2.monomial(1, 2, 0)
V_INV2 = LaurentPoly2.monomial(1, -2, 0)
NEG_V_INV_Z = LaurentPoly2.monomial(-1, -1, 1)
DELTA = LaurentPoly2({(-1, -1): 1, (1, -1): -1})
ONE = LaurentPoly2.one()

Perm = Tuple[int, ...]
HeckeElement = Dict[Perm, LaurentPoly2]


@dataclass(frozen=True)
class HomflyBudget:
    """Size limits for the engine, checked on the simplified word."""

    max_strands: int = 8
    max_letters: int = 40

    @classmethod
    def from_env(cls, environ: Optional[Mapping[str, str]] = None) -> "HomflyBudget":
        """
        Read the budget from ``CBORD_BUDGET``.

        Accepted forms are ``"strands=8,letters=40"`` (either key may be left
        out) and ``"8:40"``. Unset or empty means the defaults.
        """
        environ = os.environ if environ is None else environ
        raw = environ.get(BUDGET_ENV, "").strip()
        if not raw:
            return cls()
        match = re.fullmatch(r"(\d+)\s*:\s*(\d+)", raw)
        if match:
            return cls(int(match.group(1)), int(match.group(2)))
        values = {}
        for item in raw.split(","):
            key, sep, value = item.partition("=")
            key = key.strip().lower()
            if not sep or key not in ("strands", "letters") or not value.strip().isdigit():
                raise InputError(f"{BUDGET_ENV} must look like 'strands=8,letters=40' or '8:40', got {raw!r}")
            values[key] = int(value)
        default = cls()
        return cls(values.get("strands", default.max_strands), values.get("letters", default.max_letters))


@dataclass(frozen=True)
class HomflyResult:
    polynomial: LaurentPoly2
    ord_v: int
    maxdeg_v: int
    components: int

    def v_slices(self) -> Dict[int, LaurentPoly1]:
        return self.polynomial.v_slices()


# Hecke algebra ------------------------------------------------------------

def _accumulate(target: HeckeElement, perm: Perm, coeff: LaurentPoly2) -> None:
    total = target.get(perm, LaurentPoly2.zero()) + coeff
    if total.is_zero():
        target.pop(perm, None)
    else:
        target[perm] = total


def _right_multiply(element: HeckeElement, letter: int) -> HeckeElement:
    """Multiply on the right by g_k^{+-1}; g_k swaps positions k-1 and k."""
    k = abs(letter) - 1
    result: HeckeElement = {}
    for w, c in element.items():
        ws = w[:k] + (w[k + 1], w[k]) + w[k + 2:]
        if w[k] < w[k + 1]:
            if letter > 0:
                _accumulate(result, ws, c)
            else:
                _accumulate(result, ws, c * V_INV2)
                _accumulate(result, w, c * NEG_V_INV_Z)
        else:
            if letter > 0:
                _accumulate(result, w, c * VZ)
                _accumulate(result, ws, c * V2)
            else:
                _accumulate(result, ws, c)
    return result


def _left_multiply(element: HeckeElement, i: int) -> HeckeElement:
    """Multiply on the left by g_{i+1}, which swaps the values i and i+1."""
    result: HeckeElement = {}
    for u, c in element.items():
        su = tuple(i + 1 if x == i else i if x == i + 1 else x for x in u)
        if u.index(i) < u.index(i + 1):
            _accumulate(result, su, c)
        else:
            _accumulate(result, u, c * VZ)
            _accumulate(result, su, c * V2)
    return result


@lru_cache(maxsize=TRACE_CACHE_SIZE)
def _trace(w: Perm) -> LaurentPoly2:
    n = len(w)
    if n == 1:
        return ONE
    m = n - 1
    if w[m] == m:
        return DELTA * _trace(w[:m])
    # T_w = T_u g_{m} ... g_{j+1} with u = w minus its top value; cycle the
    # lower generators to the front and drop the top one by stabilization.
    j = w.index(m)
    reduced = tuple(x for x in w if x != m)
    element: HeckeElement = {reduced: ONE}
    for i in range(j, m - 1):
        element = _left_multiply(element, i)
    total = LaurentPoly2.zero()
    for u, c in element.items():
        total = total + c * _trace(u)
    return total


def clear_trace_cache() -> None:
    """Drop the memoized closure traces, e.g. at the end of a batch run."""
    logger.debug(f"Clearing trace cache {_trace.cache_info()}")
    _trace.cache_clear()


def _simplify(b: BraidWord) -> Tuple[BraidWord, int]:
    """
    Shrink a word without changing its closure.

    Returns the simplified word and the number of split unknots peeled off
    (each contributes a factor delta).
    """
    split = 0
    word = free_reduce(b)
    while True:
        letters = word.letters
        if len(letters) >= 2 and letters[0] == -letters[-1]:
            word = BraidWord(word.strands, letters[1:-1])
            continue
        if word.strands > 1 and all(abs(g) != word.strands - 1 for g in letters):
            word = BraidWord(word.strands - 1, letters)
            split += 1
            continue
        smaller = destabilize(word)
        if smaller is None:
            return word, split
        word = free_reduce(smaller)


def homfly(b: BraidWord, budget: Optional[HomflyBudget] = None) -> HomflyResult:
    """
    Compute the HOMFLY polynomial of the closure of ``b``.

    Args:
        b: Any braid word; the empty word on n strands is the n-component unlink.
        budget: Size limits; defaults to ``HomflyBudget.from_env()``.

    Returns:
        A HomflyResult with the polynomial, its v-valuation, top v-degree and
        the component count of the closure.

    Raises:
        BudgetExceededError: The simplified word is larger than the budget.
    """
    budget = budget or HomflyBudget.from_env()
    word, split = _simplify(b)
    logger.debug(f"Simplified {b} to {word} with {split} split unknot(s)")
    if word.strands > budget.max_strands or len(word) > budget.max_letters:
        raise BudgetExceededError(
            f"braid with {word.strands} strands and {len(word)} letters exceeds the budget "
            f"of {budget.max_strands} strands and {budget.max_letters} letters"
        )

    element: HeckeElement = {tuple(range(word.strands)): ONE}
    for letter in word.letters:
        element = _right_multiply(element, letter)

    polynomial = LaurentPoly2.zero()
    for w, c in element.items():
        polynomial = polynomial + c * _trace(w)
    if split:
        polynomial = polynomial * DELTA ** split
    logger.debug(f"Hecke expansion used {len(element)} basis elements; trace cache {_trace.cache_info()}")

    return HomflyResult(
        polynomial=polynomial,
        ord_v=polynomial.ord_v(),
        maxdeg_v=polynomial.maxdeg_v(),
        components=closure_components(b).components,
    )


def skein_children(b: BraidWord, position: int) -> Tuple[BraidWord, BraidWord]:
    """Return (smoothed, switched): the letter at ``position`` deleted, and sign-flipped."""
    if not 0 <= position < len(b):
        raise InputError(f"no letter at position {position} in a word of length {len(b)}")
    letters = b.letters
    smoothed = BraidWord(b.strands, letters[:position] + letters[position + 1:])
    switched = BraidWord(b.strands, letters[:position] + (-letters[position],) + letters[position + 1:])
    return smoothed, switched


def mfw_bounds(b: BraidWord) -> Tuple[int, int]:
    """The braid bounds e - n + 1 <= ord_v <= maxdeg_v <= e + n - 1."""
    e = writhe(b)
    return e - b.strands + 1, e + b.strands - 1
