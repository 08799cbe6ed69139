"""Shi-type trees -> marked singleton trees -> Cayley m-foliages -> marked functions.

Each step has an inverse; composing the forward maps turns a Shi-type
decorated tree with ``k`` free nodes into a pair ``(f, S)`` with
``f: [n-1] -> [mn+1]`` and ``|S| = n - k``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterator, Optional

from .trees import DecoratedTree, Node, TreeError


class ChainError(ValueError):
    pass


# -- U: (m+1)-ary trees labelled bijectively by [n], with marks ---------------


@dataclass(frozen=True)
class MarkedAryTree:
    root: Node  # singleton labels, no dashed edges
    m: int
    n: int
    marked: frozenset[int]

    def nodes(self) -> Iterator[Node]:
        stack = [self.root]
        while stack:
            v = stack.pop()
            if v is not None:
                yield v
                stack.extend(v.children)

    def validate(self) -> None:
        labels = []
        for v in self.nodes():
            if len(v.labels) != 1 or v.dashed is not None or len(v.children) != self.m + 1:
                raise ChainError(f"bad node {sorted(v.labels)}")
            (a,) = v.labels
            labels.append(a)
            top = v.children[self.m]
            if top is not None and not a > min(top.labels):
                raise ChainError(f"rank-{self.m} edge {a} -> {min(top.labels)} is not a descent")
            if a in self.marked and all(c is None for c in v.children[: self.m]):
                raise ChainError(f"marked node {a} has no node child of rank < m")
        if sorted(labels) != list(range(1, self.n + 1)):
            raise ChainError("node labels are not a bijection onto [n]")
        if not self.marked <= set(labels):
            raise ChainError("marks outside [n]")


def _label(v: Node) -> int:
    (a,) = v.labels
    return a


def t_to_u(tree: DecoratedTree) -> MarkedAryTree:
    if not tree.is_shi_type():
        raise ChainError(f"{tree} is not of Shi type")
    m = tree.m
    marked: set[int] = set()

    def conv(v: Optional[Node]) -> Optional[Node]:
        if v is None:
            return None
        kids = [conv(c) for c in v.children]
        labels = sorted(v.labels)
        top = labels[-1]
        if v.dashed is not None:
            marked.add(top)
            if all(c is None for c in kids[:m]):
                kids[0], kids[m] = kids[m], kids[0]
        node = Node(frozenset([top]), tuple(kids))
        # smaller labels become an increasing chain of marked rank-0 ancestors
        for a in reversed(labels[:-1]):
            marked.add(a)
            node = Node(frozenset([a]), (node,) + (None,) * m)
        return node

    return MarkedAryTree(conv(tree.root), m, tree.n, frozenset(marked))


def u_to_t(u: MarkedAryTree) -> DecoratedTree:
    u.validate()
    m = u.m

    def conv(v: Optional[Node]) -> Optional[Node]:
        if v is None:
            return None
        a = _label(v)
        kids = tuple(conv(c) for c in v.children)
        if a not in u.marked:
            return Node(frozenset([a]), kids)
        upper = [r for r in range(1, m + 1) if v.children[r] is not None]
        if upper:
            return Node(frozenset([a]), kids, upper[-1])
        low = v.children[0]
        if a > _label(low):
            return Node(frozenset([a]), (None,) * m + (kids[0],), m)
        merged = kids[0]
        return Node(merged.labels | {a}, merged.children, merged.dashed)

    try:
        return DecoratedTree(conv(u.root), m, u.n)
    except TreeError as exc:
        raise ChainError(str(exc)) from None


# -- V: Cayley m-foliages -----------------------------------------------------


@dataclass(frozen=True)
class CayleyFoliage:
    n: int
    m: int
    edges: frozenset[tuple[int, int, int]]  # (a, b, color) with a < b
    marked: frozenset[int]

    def adjacency(self) -> dict[int, dict[int, int]]:
        adj: dict[int, dict[int, int]] = {v: {} for v in range(1, self.n + 2)}
        for a, b, c in self.edges:
            adj[a][b] = c
            adj[b][a] = c
        return adj

    def degree(self, v: int) -> int:
        return sum(1 for a, b, _ in self.edges if v in (a, b))

    def validate(self) -> None:
        n = self.n
        if len(self.edges) != n:
            raise ChainError(f"{len(self.edges)} edges on {n + 1} vertices")
        adj = self.adjacency()
        seen, stack = {n + 1}, [n + 1]
        while stack:
            for w in adj[stack.pop()]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        if len(seen) != n + 1:
            raise ChainError("not connected")
        for a, b, c in self.edges:
            if not 0 <= c < self.m:
                raise ChainError(f"color {c} outside [0, {self.m - 1}]")
            if b == n + 1 and c != 0:
                raise ChainError(f"edge {a}-{b} at the maximum vertex has color {c}")
        for v in self.marked:
            if not 1 <= v <= n or len(adj[v]) < 2:
                raise ChainError(f"marked vertex {v} is not an internal node in [n]")


def _rightpath(v: Node, m: int) -> Iterator[Node]:
    while v is not None:
        yield v
        v = v.children[m]


def u_to_v(u: MarkedAryTree) -> CayleyFoliage:
    m, n = u.m, u.n
    edges = set()
    for v in u.nodes():
        a = _label(v)
        for i in range(m):
            if v.children[i] is not None:
                for x in _rightpath(v.children[i], m):
                    b = _label(x)
                    edges.add((min(a, b), max(a, b), i))
    for x in _rightpath(u.root, m):
        edges.add((_label(x), n + 1, 0))
    return CayleyFoliage(n, m, frozenset(edges), u.marked)


def v_to_u(v: CayleyFoliage) -> MarkedAryTree:
    v.validate()
    n, m = v.n, v.m
    adj = v.adjacency()
    parent = {n + 1: None}
    order = [n + 1]
    for x in order:
        for y in adj[x]:
            if y not in parent:
                parent[y] = x
                order.append(y)
    slot: dict[tuple[int, int], int] = {}  # (vertex, rank) -> child label
    roots = []
    for x in order:
        kids = [y for y in adj[x] if parent.get(y) == x]
        for color in range(m):
            chain = sorted((y for y in kids if adj[x][y] == color), reverse=True)
            if not chain:
                continue
            if x == n + 1:
                roots.append(chain[0])
            else:
                slot[(x, color)] = chain[0]
            for hi, lo in zip(chain, chain[1:]):
                slot[(hi, m)] = lo
    if len(roots) != 1:
        raise ChainError("vertex n+1 must have neighbours of color 0 only")

    def build(a: int) -> Node:
        kids = tuple(build(slot[(a, r)]) if (a, r) in slot else None for r in range(m + 1))
        return Node(frozenset([a]), kids)

    out = MarkedAryTree(build(roots[0]), m, n, v.marked)
    out.validate()
    return out


# -- W: marked functions --------------------------------------------------------


@dataclass(frozen=True)
class MarkedFunction:
    n: int
    m: int
    values: tuple[int, ...]  # the function on [n-1], values in [1, mn+1]
    marks: frozenset[int]

    def pairs(self) -> list[tuple[int, int]]:
        """Values decoded as (vertex, color); ``mn+1`` is ``(n+1, 0)``."""
        return [decode_value(x, self.n, self.m) for x in self.values]

    def validate(self) -> None:
        n, m = self.n, self.m
        if len(self.values) != n - 1:
            raise ChainError(f"f must have {n - 1} values, got {len(self.values)}")
        if any(not 1 <= x <= m * n + 1 for x in self.values):
            raise ChainError(f"f values must lie in [1, {m * n + 1}]")
        if not self.marks <= set(range(1, n + 1)):
            raise ChainError("S must be a subset of [n]")
        image = set(self.values)
        for i in self.marks:
            if not image & set(range((i - 1) * m + 1, i * m + 1)):
                raise ChainError(f"S contains {i} but f misses [{(i - 1) * m + 1}, {i * m}]")

    @property
    def k(self) -> int:
        return self.n - len(self.marks)

    def render(self) -> str:
        if self.m == 1:
            fs = ",".join(str(x) for x in self.values)
        else:
            fs = ",".join(f"{a}@{c}" for a, c in self.pairs())
        return f"f={fs} S={{{','.join(str(s) for s in sorted(self.marks))}}}"

    @classmethod
    def parse(cls, text: str, n: Optional[int] = None, m: int = 1) -> "MarkedFunction":
        """Inverse of :meth:`render`.  ``n`` defaults to ``len(f) + 1``."""
        try:
            fpart, spart = text.split("S=")
            fpart = fpart.strip()
            if not fpart.startswith("f="):
                raise ValueError("missing 'f='")
            items = [x for x in fpart[2:].split(",") if x.strip()]
            n = len(items) + 1 if n is None else n
            values = []
            for x in items:
                if "@" in x:
                    a, c = (int(y) for y in x.split("@"))
                    values.append(encode_pair(a, c, n, m))
                else:
                    if m != 1:
                        raise ValueError(f"value {x!r} needs a color suffix when m > 1")
                    values.append(int(x))
            marks = frozenset(int(x) for x in spart.strip().strip("{}").split(",") if x.strip())
        except ValueError as exc:
            raise ChainError(f"cannot parse marked function {text!r}: {exc}") from None
        out = cls(n, m, tuple(values), marks)
        out.validate()
        return out


def encode_pair(a: int, c: int, n: int, m: int) -> int:
    if a == n + 1:
        if c != 0:
            raise ChainError("vertex n+1 only carries color 0")
        return m * n + 1
    if not (1 <= a <= n and 0 <= c < m):
        raise ChainError(f"pair ({a},{c}) out of range")
    return (a - 1) * m + c + 1


def decode_value(x: int, n: int, m: int) -> tuple[int, int]:
    if x == m * n + 1:
        return n + 1, 0
    return (x - 1) // m + 1, (x - 1) % m


def v_to_w(v: CayleyFoliage) -> MarkedFunction:
    v.validate()
    n, m = v.n, v.m
    adj = {a: dict(nb) for a, nb in v.adjacency().items()}
    values = []
    for _ in range(n - 1):
        leaf = min(x for x, nb in adj.items() if len(nb) == 1)
        (a, c), = adj[leaf].items()
        values.append(encode_pair(a, c, n, m))
        del adj[a][leaf]
        del adj[leaf]
    return MarkedFunction(n, m, tuple(values), v.marked)


def w_to_v(w: MarkedFunction) -> CayleyFoliage:
    w.validate()
    n, m = w.n, w.m
    pairs = w.pairs()
    degree = {x: 1 for x in range(1, n + 2)}
    for a, _ in pairs:
        degree[a] += 1
    edges = set()
    alive = set(degree)
    for a, c in pairs:
        leaf = min(x for x in alive if degree[x] == 1)
        edges.add((min(leaf, a), max(leaf, a), c))
        alive.discard(leaf)
        degree[a] -= 1
    x, y = sorted(alive)
    edges.add((x, y, 0))  # y is n+1, whose edges all have color 0
    out = CayleyFoliage(n, m, frozenset(edges), w.marks)
    out.validate()
    return out


def t_to_w(tree: DecoratedTree) -> MarkedFunction:
    return v_to_w(u_to_v(t_to_u(tree)))


def w_to_t(w: MarkedFunction) -> DecoratedTree:
    return u_to_t(v_to_u(w_to_v(w)))


def enumerate_marked_functions(n: int, m: int, k: int) -> Iterator[MarkedFunction]:
    """All pairs ``(f, S)`` with ``|S| = n - k`` meeting the image condition."""
    for values in itertools.product(range(1, m * n + 2), repeat=n - 1):
        image = set(values)
        hit = [i for i in range(1, n + 1) if image & set(range((i - 1) * m + 1, i * m + 1))]
        for marks in itertools.combinations(hit, n - k):
            yield MarkedFunction(n, m, values, frozenset(marks))
