"""Maps between decorated trees and faces of the m-Catalan and m-Shi arrangements.

Forward: :func:`phi_catalan` reads a sign vector straight off a tree.
Backward: a point is summarised by its m-Catalan code (ranks of the shifted
coordinates ``(p_k + s, -s)`` in lexicographic order, plus the index sets
of coordinates sitting exactly ``s`` above another), and the code is
grown into a tree one site at a time by :func:`code_to_tree`.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Optional, Sequence

from .arrangement import (
    Arrangement,
    FaceCode,
    Kind,
    RationalPoint,
    as_point,
    face_code_of_point,
    restrict_to_shi,
)
from .trees import DecoratedTree, Node, Path, TreeError, order_key


class NonRealizableCode(ValueError):
    """The budding construction broke down; the input did not come from a point."""


# -- tree -> face ------------------------------------------------------------


def catalan_sign(tree: DecoratedTree, i: int, j: int, s: int) -> int:
    """Choice function for the hyperplane ``x_i - x_j = s`` with ``s`` in [0, m]."""
    vi, vj = tree.locate(i), tree.locate(j)
    if s == 0:
        return tree.prec(vi, vj)
    w = tree.child(vj, s)
    if tree.prec(vi, w) < 0:
        return -1
    if vi == tree.nextlive(w) and tree.dashed_path(vj, vi):
        return 0
    return 1


def phi_catalan(tree: DecoratedTree) -> FaceCode:
    arr = Arrangement(Kind.CATALAN, tree.n, tree.m)
    signs = []
    for i, j, s in arr.triples:
        signs.append(catalan_sign(tree, i, j, s) if s >= 0 else -catalan_sign(tree, j, i, -s))
    return FaceCode(arr, tuple(signs))


def phi_shi(tree: DecoratedTree) -> FaceCode:
    if not tree.is_shi_type():
        raise TreeError(f"{tree} is not of Shi type")
    return restrict_to_shi(phi_catalan(tree))


def nudge(q: int) -> Fraction:
    """Offset given to the q-th solid internal edge (q = 0 is the base offset)."""
    return Fraction(1, 2 ** (q + 2))


def witness_point(tree: DecoratedTree) -> RationalPoint:
    """An exact point of ``phi_catalan(tree)``.

    Coordinate ``i`` is ``nudge(0)`` plus the sum of ranks down to the node
    of ``i`` plus ``nudge(q)`` for every solid internal edge ``q`` on the way.
    Solid internal edges are numbered 1, 2, ... in vertex order of their
    lower endpoints.
    """
    solid = sorted((p for p in tree.internal_edges() if not tree.is_dashed_edge(p)), key=order_key)
    weight = {p: nudge(q) for q, p in enumerate(solid, start=1)}
    point = []
    for i in range(1, tree.n + 1):
        path = tree.locate(i)
        extra = sum((weight.get(path[:q], 0) for q in range(1, len(path) + 1)), Fraction(0))
        point.append(nudge(0) + sum(path) + extra)
    return tuple(point)


# -- point -> code -----------------------------------------------------------


@dataclass(frozen=True)
class MCatalanCode:
    n: int
    m: int
    ranks: tuple[tuple[int, ...], ...]  # ranks[s][k-1]: rank of (p_k + s, -s)
    above_sets: tuple[frozenset[int], ...]  # above_sets[s-1]: coordinates sitting exactly s above another

    @property
    def sites(self) -> int:
        return max(max(row) for row in self.ranks)

    def site_type(self, t: int) -> int:
        types = [s for s in range(self.m + 1) if t in self.ranks[s]]
        if len(types) != 1:
            raise NonRealizableCode(f"site {t} has types {types}")
        return types[0]

    def preimage(self, s: int, t: int) -> frozenset[int]:
        return frozenset(k for k in range(1, self.n + 1) if self.ranks[s][k - 1] == t)

    def above(self, s: int) -> frozenset[int]:
        return self.above_sets[s - 1]

    def is_dash_site(self, t: int) -> bool:
        if t < 1 or t >= self.sites:
            return False
        s = self.site_type(t)
        if s == 0:
            return False
        s2 = self.site_type(t + 1)
        return s2 < s and self.preimage(s2, t + 1) <= self.above(s - s2)

    def dash_sites(self) -> list[int]:
        return [t for t in range(1, self.sites + 1) if self.is_dash_site(t)]


def catalan_code_of_point(p: Sequence, m: int) -> MCatalanCode:
    p = as_point(p)
    n = len(p)
    shifted = sorted({(x + s, -s) for x in p for s in range(m + 1)})
    rank = {w: q for q, w in enumerate(shifted, start=1)}
    ranks = tuple(tuple(rank[(p[k] + s, -s)] for k in range(n)) for s in range(m + 1))
    values = set(p)
    above = tuple(frozenset(k + 1 for k in range(n) if p[k] - s in values) for s in range(1, m + 1))
    return MCatalanCode(n, m, ranks, above)


# -- code -> tree ------------------------------------------------------------


class _BuddingTree:
    """Mutable (m+1)-ary tree whose open slots are buds."""

    BUD, LEAF = "bud", "leaf"

    def __init__(self, m: int):
        self.m = m
        self.slots: dict[Path, object] = {(): self.BUD}  # path -> BUD | LEAF | (labels, dashed)
        self.dashed_rank: dict[Path, int] = {}

    def first_bud(self) -> Path:
        buds = [p for p, v in self.slots.items() if v is self.BUD]
        if not buds:
            raise NonRealizableCode("ran out of buds")
        return min(buds, key=order_key)

    def close(self) -> None:
        self.slots[self.first_bud()] = self.LEAF

    def open(self, labels: frozenset[int], dashed: bool) -> None:
        b = self.first_bud()
        if dashed:
            if not b or b[-1] == 0:
                raise NonRealizableCode(f"dashed edge of rank 0 at {b}")
            parent = b[:-1]
            if parent in self.dashed_rank:
                raise NonRealizableCode(f"second dashed child under {parent}")
            self.dashed_rank[parent] = b[-1]
        self.slots[b] = labels
        for r in range(self.m + 1):
            self.slots[b + (r,)] = self.BUD

    def freeze(self, n: int) -> DecoratedTree:
        def build(path: Path) -> Optional[Node]:
            v = self.slots[path]
            if v is self.LEAF:
                return None
            if v is self.BUD:
                raise NonRealizableCode(f"bud left at {path}")
            return Node(v, tuple(build(path + (r,)) for r in range(self.m + 1)), self.dashed_rank.get(path))

        try:
            return DecoratedTree(build(()), self.m, n)
        except TreeError as exc:
            raise NonRealizableCode(str(exc)) from None


def code_to_tree(code: MCatalanCode) -> DecoratedTree:
    budding = _BuddingTree(code.m)
    any_above = frozenset().union(*code.above_sets) if code.above_sets else frozenset()
    for t in range(1, code.sites + 1):
        s = code.site_type(t)
        if s > 0:
            budding.close()
        else:
            labels = code.preimage(0, t)
            budding.open(labels, dashed=labels <= any_above)
    budding.close()
    return budding.freeze(code.n)


def point_to_tree(p: Sequence, m: int) -> DecoratedTree:
    return code_to_tree(catalan_code_of_point(p, m))


# -- Shi repair --------------------------------------------------------------


def shirank(code: FaceCode) -> int:
    """Number of strict inequalities ``x_i + m > x_j`` with ``i < j``."""
    arr = code.arrangement
    if arr.kind is not Kind.CATALAN:
        raise ValueError("shirank is defined on m_catalan codes")
    return sum(1 for (i, j, s), v in code.items() if s == -arr.m and v == 1)


def _non_descent_rank_m_edges(tree: DecoratedTree) -> list[Path]:
    bad = [p for p in tree.internal_edges() if p[-1] == tree.m and not tree.is_descent(p)]
    return sorted(bad, key=order_key)


def rotate(tree: DecoratedTree, w: Path) -> DecoratedTree:
    """Lift the rank-m child ``w`` onto the live leaf just before it in the order.

    ``w``'s rank-0 subtree takes its place; the leaf becomes a node with ``w``'s
    label, a leaf at rank 0 and ``w``'s other subtrees.
    """
    pos = tree.position[w]
    leaf = tree.order[pos - 1]
    if tree.is_node(leaf) or tree.is_dead_leaf(leaf):
        raise AssertionError(f"vertex before {w} is not a live leaf")
    wn = tree.nodes[w]
    lifted = Node(wn.labels, (None,) + wn.children[1:], wn.dashed)
    t0 = wn.children[0]

    def rebuild(path: Path, v: Optional[Node]) -> Optional[Node]:
        if path == w:
            return t0
        if path == leaf:
            return lifted
        if v is None:
            return None
        kids = tuple(rebuild(path + (r,), c) for r, c in enumerate(v.children))
        dashed = v.dashed
        if dashed is not None and path + (dashed,) == w:
            dashed = None  # x_b = x_a + m is not a Shi hyperplane when a < b
        return Node(v.labels, kids, dashed)

    return DecoratedTree(rebuild((), tree.root), tree.m, tree.n)


def shi_repair(tree: DecoratedTree, trace: Optional[list] = None) -> DecoratedTree:
    """Rotate away rank-m non-descents until the tree is of Shi type.

    If ``trace`` is given, every intermediate tree (input included) is appended.
    """
    if trace is not None:
        trace.append(tree)
    while True:
        bad = _non_descent_rank_m_edges(tree)
        if not bad:
            return tree
        tree = rotate(tree, bad[0])
        if trace is not None:
            trace.append(tree)


def shi_tree_of_face(shi_code: FaceCode, census) -> DecoratedTree:
    """The Shi-type tree whose Shi face is ``shi_code``.

    ``census`` is an m-Catalan :class:`~facetrees.oracle.FaceCensus` with
    representative points.
    """
    if shi_code.arrangement.kind is not Kind.SHI:
        raise ValueError("expected an m_shi code")
    arr = census.arrangement
    if arr.kind is not Kind.CATALAN or (arr.n, arr.m) != (shi_code.arrangement.n, shi_code.arrangement.m):
        raise ValueError("census must be the m_catalan census with the same n and m")
    for code, point in census.representatives.items():
        if restrict_to_shi(code) == shi_code:
            return shi_repair(point_to_tree(point, arr.m))
    raise NonRealizableCode("no m-Catalan face restricts to the given Shi code")


def constituents(census) -> dict[FaceCode, list[FaceCode]]:
    """Group the faces of an m-Catalan census by their Shi face."""
    groups: dict[FaceCode, list[FaceCode]] = {}
    for code in census.sorted_faces():
        groups.setdefault(restrict_to_shi(code), []).append(code)
    return groups
