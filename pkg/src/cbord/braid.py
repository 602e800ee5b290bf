"""
Braid words, their closures, Markov moves and quasipositive constructors.

A letter ``+i`` stands for the Artin generator sigma_i and ``-i`` for its
inverse; sigma_i crosses strands i and i+1 (1-based). Words are immutable
``BraidWord`` values and every operation returns a new word.
"""

from __future__ import annotations

import logging
import re
from dataclasses import dataclass, field
from typing import List, Optional, Sequence, Tuple

from cbord.errors import InputError

logger = logging.getLogger(__name__)

Letters = Tuple[int, ...]


@dataclass(frozen=True)
class BraidWord:
    """A word in the braid group on ``strands`` strands."""

    strands: int
    letters: Letters = ()

    def __post_init__(self):
        object.__setattr__(self, "letters", tuple(int(g) for g in self.letters))
        if self.strands < 1:
            raise InputError(f"a braid needs at least one strand, got {self.strands}")
        _check_letters(self.letters, self.strands)

    def __len__(self) -> int:
        return len(self.letters)

    def __str__(self) -> str:
        return format_braid(self)


@dataclass(frozen=True)
class ClosureInfo:
    """Component data of a braid closure."""

    components: int
    cycles: Tuple[Tuple[int, ...], ...] = field(default=())


@dataclass(frozen=True)
class QuasipositiveWord:
    """A product of bands w sigma_i w^-1 on ``strands`` strands."""

    strands: int
    bands: Tuple[Tuple[Letters, int], ...] = ()

    def __post_init__(self):
        bands = tuple((tuple(int(g) for g in w), int(i)) for w, i in self.bands)
        object.__setattr__(self, "bands", bands)
        if self.strands < 1:
            raise InputError(f"a braid needs at least one strand, got {self.strands}")
        for w, i in bands:
            _check_letters(w, self.strands)
            if not 1 <= i < self.strands:
                raise InputError(f"band generator {i} is not a positive generator on {self.strands} strands")

    @property
    def band_count(self) -> int:
        return len(self.bands)

    def __str__(self) -> str:
        return format_quasipositive(self)


def _check_letters(letters: Sequence[int], strands: int) -> None:
    for g in letters:
        if g == 0 or abs(g) >= strands:
            raise InputError(f"letter {g} is not a generator on {strands} strands")


def _inverse(letters: Sequence[int]) -> Letters:
    return tuple(-g for g in reversed(letters))


def permutation(b: BraidWord) -> Tuple[int, ...]:
    """
    The permutation of strand positions induced by ``b``.

    Entry k is the (0-based) position where the strand starting at position k
    ends after reading the word left to right.
    """
    perm = []
    for start in range(b.strands):
        pos = start
        for g in b.letters:
            i = abs(g)
            if pos == i - 1:
                pos = i
            elif pos == i:
                pos = i - 1
        perm.append(pos)
    return tuple(perm)


def closure_components(b: BraidWord) -> ClosureInfo:
    """Count the components of the closure as cycles of the permutation."""
    perm = permutation(b)
    seen = [False] * b.strands
    cycles: List[Tuple[int, ...]] = []
    for start in range(b.strands):
        if seen[start]:
            continue
        cycle = []
        k = start
        while not seen[k]:
            seen[k] = True
            cycle.append(k + 1)
            k = perm[k]
        cycles.append(tuple(cycle))
    return ClosureInfo(components=len(cycles), cycles=tuple(cycles))


def writhe(b: BraidWord) -> int:
    """Algebraic length e: positive letters minus negative letters."""
    return sum(1 if g > 0 else -1 for g in b.letters)


def mirror(b: BraidWord) -> BraidWord:
    """Negate every letter; the closure becomes its mirror image."""
    return BraidWord(b.strands, tuple(-g for g in b.letters))


def free_reduce(b: BraidWord) -> BraidWord:
    """Delete adjacent inverse pairs until none remain."""
    stack: List[int] = []
    for g in b.letters:
        if stack and stack[-1] == -g:
            stack.pop()
        else:
            stack.append(g)
    return BraidWord(b.strands, tuple(stack))


def stabilize(b: BraidWord, sign: int = 1) -> BraidWord:
    """Positive or negative Markov stabilization: append sigma_n^{+-1} on n+1 strands."""
    if sign not in (1, -1):
        raise InputError(f"stabilization sign must be +1 or -1, got {sign}")
    return BraidWord(b.strands + 1, b.letters + (sign * b.strands,))


def destabilize(b: BraidWord) -> Optional[BraidWord]:
    """
    Remove the unique occurrence of the top generator sigma_{n-1}^{+-1}.

    Returns None when the move is not applicable (fewer than two strands, or the
    top generator does not occur exactly once).
    """
    top = b.strands - 1
    if top < 1:
        return None
    positions = [k for k, g in enumerate(b.letters) if abs(g) == top]
    if len(positions) != 1:
        return None
    k = positions[0]
    return BraidWord(b.strands - 1, b.letters[:k] + b.letters[k + 1:])


def conjugate(b: BraidWord, w: Sequence[int]) -> BraidWord:
    """Return w . b . w^-1 (not reduced)."""
    w = tuple(int(g) for g in w)
    _check_letters(w, b.strands)
    return BraidWord(b.strands, w + b.letters + _inverse(w))


def expand_quasipositive(q: QuasipositiveWord) -> BraidWord:
    """
    Multiply out the bands of a quasipositive word.

    Args:
        q: Bands (w, i), each standing for w sigma_i w^-1.

    Returns:
        The free-reduced braid word on the same number of strands.
    """
    letters: List[int] = []
    for w, i in q.bands:
        letters.extend(w)
        letters.append(i)
        letters.extend(_inverse(w))
    return free_reduce(BraidWord(q.strands, tuple(letters)))


def band_generator(n: int, i: int, j: int) -> Tuple[Letters, int]:
    """
    The strongly quasipositive band sigma_{i,j} joining strands i < j.

    Returned as a band (w, j-1) meaning (sigma_i ... sigma_{j-2}) sigma_{j-1} (...)^-1.
    """
    if not 1 <= i < j <= n:
        raise InputError(f"band generator needs 1 <= i < j <= n, got i={i}, j={j}, n={n}")
    return tuple(range(i, j - 1)), j - 1


def band_word(n: int, pairs: Sequence[Tuple[int, int]]) -> QuasipositiveWord:
    """A strongly quasipositive word from a sequence of (i, j) strand pairs."""
    return QuasipositiveWord(n, tuple(band_generator(n, i, j) for i, j in pairs))


def torus_braid(p: int, q: int) -> BraidWord:
    """(sigma_1 ... sigma_{p-1})^q on p strands; letters negated when q < 0."""
    if p < 2:
        raise InputError(f"a torus braid needs p >= 2 strands, got {p}")
    sign = -1 if q < 0 else 1
    return BraidWord(p, tuple(sign * i for _ in range(abs(q)) for i in range(1, p)))


def split_union(b1: BraidWord, b2: BraidWord) -> BraidWord:
    """Place ``b2`` beside ``b1`` on fresh strands; the closure is the split union of the two closures."""
    shifted = tuple(g + b1.strands if g > 0 else g - b1.strands for g in b2.letters)
    return BraidWord(b1.strands + b2.strands, b1.letters + shifted)


def bennequin_genus(b: BraidWord) -> int:
    """
    Genus of the braided Seifert surface (disks for strands, bands for letters).

    Only meaningful for a connected surface, i.e. when every generator occurs.
    """
    used = {abs(g) for g in b.letters}
    if len(used) != b.strands - 1:
        raise InputError("the braided surface is disconnected (a generator is unused)")
    euler = b.strands - len(b.letters)
    r = closure_components(b).components
    twice_genus = 2 - euler - r
    return twice_genus // 2


# Text formats -------------------------------------------------------------

_BRAID_RE = re.compile(r"^\s*B\s*(\d+)\s*:(.*)$")
_QP_RE = re.compile(r"^\s*QP\s*(\d+)\s*:(.*)$")
_BAND_RE = re.compile(r"\(\s*([^|()]*?)\s*\|\s*(-?\d+)\s*\)")


def _parse_ints(text: str, offset: int) -> Letters:
    letters = []
    for match in re.finditer(r"\S+", text):
        token = match.group(0)
        try:
            letters.append(int(token))
        except ValueError:
            raise InputError(f"expected an integer letter, got {token!r}", position=offset + match.start())
    return tuple(letters)


def parse_braid(text: str) -> BraidWord:
    """Parse ``B<n>: g1 g2 ...``, e.g. ``B2: 1 1 1`` for sigma_1^3."""
    match = _BRAID_RE.match(text)
    if match is None:
        raise InputError(f"expected 'B<n>: letters', got {text!r}", position=0)
    strands = int(match.group(1))
    return BraidWord(strands, _parse_ints(match.group(2), match.start(2)))


def format_braid(b: BraidWord) -> str:
    """Canonical ``B<n>: g1 g2 ...`` text."""
    body = " ".join(str(g) for g in b.letters)
    return f"B{b.strands}: {body}" if body else f"B{b.strands}:"


def parse_quasipositive(text: str) -> QuasipositiveWord:
    """Parse ``QP<n>: (w | i) (w | i) ...`` where w is a space separated word."""
    match = _QP_RE.match(text)
    if match is None:
        raise InputError(f"expected 'QP<n>: (w | i) ...', got {text!r}", position=0)
    strands = int(match.group(1))
    body, offset = match.group(2), match.start(2)
    bands = []
    pos = 0
    for band in _BAND_RE.finditer(body):
        gap = body[pos:band.start()]
        if gap.strip():
            raise InputError(f"unexpected text {gap.strip()!r} between bands", position=offset + pos)
        conjugator = _parse_ints(band.group(1), offset + band.start(1))
        bands.append((conjugator, int(band.group(2))))
        pos = band.end()
    if body[pos:].strip():
        raise InputError(f"unexpected trailing text {body[pos:].strip()!r}", position=offset + pos)
    return QuasipositiveWord(strands, tuple(bands))


def format_quasipositive(q: QuasipositiveWord) -> str:
    """Canonical ``QP<n>: (w | i) ...`` text."""
    bands = " ".join(f"({' '.join(str(g) for g in w)} | {i})" if w else f"(| {i})" for w, i in q.bands)
    return f"QP{q.strands}: {bands}" if bands else f"QP{q.strands}:"
