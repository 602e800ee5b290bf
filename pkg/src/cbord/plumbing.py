"""
Even planar weighted trees and their arborescent links.

A vertex of weight 2n stands for an unknotted annulus with n full twists
(A(0; n)); tree edges are plumbings, made along each band core in the
planar order of the tree (parent first, then children left to right).
Weight -2 is the Hopf band whose boundary is the positive Hopf link.

Text form is an s-expression ``(weight child child ...)``; vertices are
numbered in preorder, so the root is 0.
"""

from __future__ import annotations

import logging
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Tuple

import networkx as nx

from cbord.errors import FormulaOutOfScopeError, InputError
from cbord.obstruction import Certificate, tree_valuation_certificate
from cbord.seifert import SeifertMatrix

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class PlumbingTree:
    """Weights indexed by preorder vertex id, and each vertex's children in planar order."""

    weights: Tuple[int, ...]
    children: Tuple[Tuple[int, ...], ...]

    def __post_init__(self):
        object.__setattr__(self, "weights", tuple(int(w) for w in self.weights))
        object.__setattr__(self, "children", tuple(tuple(int(c) for c in kids) for kids in self.children))
        m = len(self.weights)
        if m == 0:
            raise InputError("a plumbing tree needs at least one vertex")
        if len(self.children) != m:
            raise InputError("every vertex needs a (possibly empty) child list")
        for e, w in enumerate(self.weights):
            if w % 2:
                raise InputError(f"weights must be even, vertex {e} has weight {w}")
        seen = {0}
        stack = [0]
        while stack:
            e = stack.pop()
            for c in self.children[e]:
                if not 0 < c < m or c in seen:
                    raise InputError(f"vertex {c} is not a valid child of {e}: the edges must form a tree")
                seen.add(c)
                stack.append(c)
        if len(seen) != m:
            raise InputError("the plumbing tree is disconnected")

    @property
    def size(self) -> int:
        return len(self.weights)

    def twists(self, e: int) -> int:
        """n(e), half the weight."""
        return self.weights[e] // 2

    def edges(self) -> List[Tuple[int, int]]:
        return [(e, c) for e, kids in enumerate(self.children) for c in kids]

    def parents(self) -> Dict[int, Optional[int]]:
        parent: Dict[int, Optional[int]] = {0: None}
        for e, c in self.edges():
            parent[c] = e
        return parent

    def valence(self, e: int) -> int:
        return len(self.children[e]) + (0 if e == 0 else 1)

    def graph(self) -> nx.Graph:
        G = nx.Graph()
        for e, w in enumerate(self.weights):
            G.add_node(e, weight=w)
        G.add_edges_from(self.edges())
        return G

    def __str__(self) -> str:
        return format_tree(self)


@dataclass(frozen=True)
class UniformDecomposition:
    """
    Sign-homogeneous subtrees left after deleting the mixed-sign edges.

    Positive subtrees come first; ``vertex_sets`` maps each subtree back to
    the original vertex ids (subtree vertex k is ``vertex_sets[i][k]``).
    """

    subtrees: Tuple[PlumbingTree, ...]
    vertex_sets: Tuple[Tuple[int, ...], ...]
    s: int
    p: int
    q: int

    @property
    def k(self) -> int:
        return len(self.subtrees)


@dataclass(frozen=True)
class VertexFailure:
    vertex: int
    weight: int
    valence: int
    condition: str
    message: str


@dataclass(frozen=True)
class ExcessivenessReport:
    strongly_excessive: bool
    failures: Tuple[VertexFailure, ...] = ()

    def __bool__(self) -> bool:
        return self.strongly_excessive


@dataclass(frozen=True)
class SpcVerdict:
    is_cboundary: bool
    certificate: Certificate


# Text form ----------------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(\()|(\))|([+-]?\d+)|(\S))")


def parse_tree(text: str) -> PlumbingTree:
    """Parse ``(weight child ...)``; raises InputError with the offending position."""
    tokens = []
    for match in _TOKEN.finditer(text):
        if match.group(4):
            raise InputError(f"unexpected character {match.group(4)!r} in tree", position=match.start(4))
        tokens.append((match.lastindex, match.group(match.lastindex), match.start(match.lastindex)))

    def at(k: int) -> Tuple[Optional[int], Optional[str], int]:
        return tokens[k] if k < len(tokens) else (None, None, len(text))

    weights: List[int] = []
    children: List[List[int]] = []
    # vertices whose ')' has not been read yet, innermost last
    open_vertices: List[int] = []
    cursor = 0
    while True:
        kind, _, where = at(cursor)
        if kind == 1:
            weight_kind, value, weight_at = at(cursor + 1)
            if weight_kind != 3:
                raise InputError("expected an integer weight", position=weight_at)
            weight = int(value)
            if weight % 2:
                raise InputError(f"weights must be even, got {weight}", position=weight_at)
            e = len(weights)
            weights.append(weight)
            children.append([])
            if open_vertices:
                children[open_vertices[-1]].append(e)
            open_vertices.append(e)
            cursor += 2
        elif not open_vertices:
            raise InputError("expected '('", position=where)
        elif kind == 2:
            open_vertices.pop()
            cursor += 1
            if not open_vertices:
                break
        else:
            raise InputError("expected ')'", position=where)

    if cursor != len(tokens):
        raise InputError("unexpected text after the tree", position=tokens[cursor][2])
    return PlumbingTree(tuple(weights), tuple(tuple(kids) for kids in children))


def format_tree(T: PlumbingTree) -> str:
    """Canonical ``(weight child ...)`` text in preorder."""
    pieces: List[str] = []
    # vertex ids to open, None for a pending ')'
    stack: List[Optional[int]] = [0]
    while stack:
        e = stack.pop()
        if e is None:
            pieces.append(")")
            continue
        pieces.append(f" ({T.weights[e]}" if pieces else f"({T.weights[e]}")
        stack.append(None)
        stack.extend(reversed(T.children[e]))
    return "".join(pieces)


def mirror_tree(T: PlumbingTree) -> PlumbingTree:
    """Negate every weight; the boundary link becomes its mirror image."""
    return PlumbingTree(tuple(-w for w in T.weights), T.children)


def twist_knot_tree(rho: int, clasp: int) -> PlumbingTree:
    """
    The clasp pattern W_{rho, clasp} as the two-vertex tree ``(c (2 rho))``.

    The clasp vertex has weight -2 for a positive clasp and +2 for a negative
    one, so W_{rho,+} with rho < 0 is all-negative and the mirror of W_{rho,-}
    is W_{-rho,+}.
    """
    if rho == 0:
        raise InputError("the twist region needs rho != 0 full twists")
    if clasp not in (1, -1):
        raise InputError(f"clasp sign must be +1 or -1, got {clasp}")
    return PlumbingTree((-2 if clasp > 0 else 2, 2 * rho), ((1,), ()))


# Decomposition and excessiveness ------------------------------------------

def _reject_zero_weights(T: PlumbingTree) -> None:
    for e, w in enumerate(T.weights):
        if w == 0:
            raise InputError(f"zero weight at vertex {e}: every weight must be nonzero")


def _subtree(T: PlumbingTree, vertices: set) -> Tuple[PlumbingTree, Tuple[int, ...]]:
    root = min(vertices)
    order: List[int] = []
    stack = [root]
    while stack:
        e = stack.pop()
        order.append(e)
        stack.extend(reversed([c for c in T.children[e] if c in vertices]))
    index = {e: k for k, e in enumerate(order)}
    weights = tuple(T.weights[e] for e in order)
    children = tuple(tuple(index[c] for c in T.children[e] if c in vertices) for e in order)
    return PlumbingTree(weights, children), tuple(order)


def uniform_decomposition(T: PlumbingTree) -> UniformDecomposition:
    """Delete every edge joining weights of opposite sign and split into components."""
    _reject_zero_weights(T)
    G = T.graph()
    G.remove_edges_from([(a, b) for a, b in T.edges() if (T.weights[a] > 0) != (T.weights[b] > 0)])
    components = sorted(nx.connected_components(G), key=lambda part: (T.weights[min(part)] < 0, min(part)))
    pieces = [_subtree(T, set(part)) for part in components]
    s = sum(1 for part in components if T.weights[min(part)] > 0)
    q = sum(1 for w in T.weights if w > 0)
    p = T.size - q
    logger.debug(f"Uniform decomposition of {format_tree(T)}: k={len(pieces)}, s={s}, p={p}, q={q}")
    return UniformDecomposition(
        subtrees=tuple(tree for tree, _ in pieces),
        vertex_sets=tuple(ids for _, ids in pieces),
        s=s,
        p=p,
        q=q,
    )


def is_strongly_excessive(T: PlumbingTree) -> ExcessivenessReport:
    """
    Check n(e) != 0 and |n(e)| >= v(e) - 1 for every vertex.

    The valence v(e) is measured inside the sign-homogeneous subtree of the
    uniform decomposition containing e.
    """
    zeros = tuple(
        VertexFailure(e, w, T.valence(e), "a", f"vertex {e} has zero weight")
        for e, w in enumerate(T.weights) if w == 0
    )
    if zeros:
        return ExcessivenessReport(False, zeros)

    decomposition = uniform_decomposition(T)
    failures = []
    for subtree, ids in zip(decomposition.subtrees, decomposition.vertex_sets):
        for k, e in enumerate(ids):
            n, v = subtree.twists(k), subtree.valence(k)
            if abs(n) < v - 1:
                failures.append(VertexFailure(
                    e, T.weights[e], v, "b", f"vertex {e} has |n| = {abs(n)} < v - 1 = {v - 1}"
                ))
    return ExcessivenessReport(not failures, tuple(failures))


def _require_strongly_excessive(T: PlumbingTree) -> UniformDecomposition:
    report = is_strongly_excessive(T)
    if not report:
        details = "; ".join(f.message for f in report.failures)
        raise FormulaOutOfScopeError(f"formula out of scope: {format_tree(T)} is not strongly excessive ({details})")
    return uniform_decomposition(T)


def mp_ord_v(T: PlumbingTree) -> int:
    """Ord_v of the HOMFLY polynomial: p + q - 2 * sum(n > 0) - 2s."""
    decomposition = _require_strongly_excessive(T)
    positive_sum = sum(T.twists(e) for e in range(T.size) if T.weights[e] > 0)
    return decomposition.p + decomposition.q - 2 * positive_sum - 2 * decomposition.s


# Surface topology ---------------------------------------------------------

def boundary_components(T: PlumbingTree) -> int:
    """
    Count the boundary circles of the plumbing surface.

    Each annulus side is cut into arcs by its plumbing points. At a plumbing
    square the parent runs across and the child runs along; each of the four
    corners joins one parent arc to one child arc. The boundary circles are
    the connected components of the resulting arc graph. Twisting does not
    change the abstract surface, so weights are ignored.
    """
    if T.size == 1:
        return 2
    parents = T.parents()
    # plumbing points along each core: parent first, then children
    points = {e: ([parents[e]] if parents[e] is not None else []) + list(T.children[e]) for e in range(T.size)}

    def arc(e: int, side: str, k: int) -> Tuple[int, str, int]:
        return e, side, k % len(points[e])

    G = nx.MultiGraph()
    for e in range(T.size):
        for side in "+-":
            for k in range(len(points[e])):
                G.add_node(arc(e, side, k))
    for a, b in T.edges():
        i = points[a].index(b)
        j = points[b].index(a)
        G.add_edge(arc(a, "+", i - 1), arc(b, "+", j))
        G.add_edge(arc(a, "+", i), arc(b, "-", j))
        G.add_edge(arc(a, "-", i - 1), arc(b, "+", j - 1))
        G.add_edge(arc(a, "-", i), arc(b, "-", j - 1))
    return nx.number_connected_components(G)


def genus_lower_bound(T: PlumbingTree) -> Fraction:
    """(r - 1 + p - q) / 2, unclamped."""
    decomposition = uniform_decomposition(T)
    r = boundary_components(T)
    return Fraction(r - 1 + decomposition.p - decomposition.q, 2)


def tree_seifert_matrix(T: PlumbingTree) -> SeifertMatrix:
    """Diagonal n(e); entry 1 from each parent to each child, 0 back."""
    m = T.size
    rows = [[0] * m for _ in range(m)]
    for e in range(m):
        rows[e][e] = T.twists(e)
    for parent, child in T.edges():
        rows[parent][child] = 1
    return SeifertMatrix(rows, source=f"tree:{format_tree(T)}")


# Decision -----------------------------------------------------------------

def is_spc_cboundary(T: PlumbingTree) -> SpcVerdict:
    """
    Decide whether the arborescent link of an even strongly excessive tree is an spc-C-boundary.

    The answer is yes exactly when every weight is negative. A no comes with
    the valuation certificate: Ord_v falls below p - q, the value that the
    genus bound forces for an spc-C-boundary.
    """
    decomposition = _require_strongly_excessive(T)
    certificate = tree_valuation_certificate(
        ord_v=mp_ord_v(T),
        r=boundary_components(T),
        p=decomposition.p,
        q=decomposition.q,
        positive_weight_sum=sum(T.twists(e) for e in range(T.size) if T.weights[e] > 0),
        s=decomposition.s,
    )
    return SpcVerdict(is_cboundary=not certificate.obstructed, certificate=certificate)


def is_strongly_quasipositive(T: PlumbingTree) -> bool:
    """For even strongly excessive trees this coincides with being an spc-C-boundary."""
    return is_spc_cboundary(T).is_cboundary
