"""Decorated (m+1)-ary trees, the vertex order they carry, and a text codec.

A vertex is addressed by its path word from the root, a tuple of child ranks
(``()`` is the root).  Leaves are stored as ``None`` children.

Text form: ``({2} . ~({1} . .))`` is a root labelled ``{2}`` whose rank-0
child is a leaf and whose rank-1 child, joined by a dashed edge, is a node
labelled ``{1}`` with two leaf children.  Children left out at the end of a
node are leaves, so ``({1,2})`` is a single node.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from functools import cached_property
from typing import Iterator, Optional, Sequence

Path = tuple[int, ...]


@dataclass(frozen=True)
class Node:
    labels: frozenset[int]
    children: tuple[Optional["Node"], ...]
    dashed: Optional[int] = None  # rank of the dashed child edge, if any

    def __post_init__(self):
        object.__setattr__(self, "labels", frozenset(self.labels))
        object.__setattr__(self, "children", tuple(self.children))

    def cadet(self) -> Optional[int]:
        """Rank of the rightmost node child of rank > 0."""
        for r in range(len(self.children) - 1, 0, -1):
            if self.children[r] is not None:
                return r
        return None


def leaf_node(labels, m: int) -> Node:
    return Node(frozenset(labels), (None,) * (m + 1))


class TreeError(ValueError):
    def __init__(self, msg: str, pos: Optional[int] = None):
        self.pos = pos
        super().__init__(msg if pos is None else f"{msg} (at position {pos})")


def path_weight(path: Path) -> int:
    return sum(path)


def order_key(path: Path) -> tuple:
    """Sort key realising the vertex order: weight first, then paths compared
    letter by letter with larger ranks first and prefixes before extensions."""
    return (sum(path), tuple(-r for r in path))


class DecoratedTree:
    """An [n]-decorated (m+1)-ary tree.  Immutable; equality is structural."""

    def __init__(self, root: Node, m: int, n: Optional[int] = None, *, check: bool = True):
        self.root = root
        self.m = m
        if n is None:
            n = max((max(v.labels) for v in self.nodes.values()), default=0)
        self.n = n
        if check:
            self.validate()

    # -- structure -------------------------------------------------------
    @cached_property
    def vertices(self) -> dict[Path, Optional[Node]]:
        out: dict[Path, Optional[Node]] = {}
        stack: list[tuple[Path, Optional[Node]]] = [((), self.root)]
        while stack:
            path, v = stack.pop()
            out[path] = v
            if v is not None:
                for r, c in enumerate(v.children):
                    stack.append((path + (r,), c))
        return out

    @cached_property
    def nodes(self) -> dict[Path, Node]:
        return {p: v for p, v in self.vertices.items() if v is not None}

    @cached_property
    def order(self) -> list[Path]:
        return sorted(self.vertices, key=order_key)

    @cached_property
    def position(self) -> dict[Path, int]:
        return {p: q for q, p in enumerate(self.order)}

    @cached_property
    def label_paths(self) -> dict[int, Path]:
        return {i: p for p, v in self.nodes.items() for i in v.labels}

    def validate(self) -> None:
        seen: set[int] = set()
        for path, v in self.nodes.items():
            if len(v.children) != self.m + 1:
                raise TreeError(f"node at {path} has {len(v.children)} children, expected {self.m + 1}")
            if not v.labels:
                raise TreeError(f"node at {path} has an empty label")
            if seen & v.labels:
                raise TreeError(f"labels {sorted(seen & v.labels)} repeated")
            seen |= v.labels
            if v.dashed is not None and v.dashed != v.cadet():
                raise TreeError(f"dashed edge at {path + (v.dashed,)} is not a cadet edge")
        if seen != set(range(1, self.n + 1)):
            raise TreeError(f"labels {sorted(seen)} do not partition [{self.n}]")

    def __eq__(self, other):
        return isinstance(other, DecoratedTree) and (self.m, self.n, self.root) == (other.m, other.n, other.root)

    def __hash__(self):
        return hash((self.m, self.n, self.root))

    def __repr__(self):
        return f"DecoratedTree({render_tree(self)!r}, m={self.m})"

    def __str__(self):
        return render_tree(self)

    # -- vertex vocabulary ---------------------------------------------------
    def node_at(self, v: Path) -> Optional[Node]:
        if v not in self.vertices:
            raise KeyError(f"{v} is not a vertex of this tree")
        return self.vertices[v]

    def is_node(self, v: Path) -> bool:
        return self.node_at(v) is not None

    def prec(self, v: Path, w: Path) -> int:
        """-1, 0 or +1 as ``v`` comes before, equals or follows ``w``."""
        pv, pw = self.position[v], self.position[w]
        return (pv > pw) - (pv < pw)

    def locate(self, i: int) -> Path:
        try:
            return self.label_paths[i]
        except KeyError:
            raise KeyError(f"label {i} not in [{self.n}]") from None

    def child(self, v: Path, s: int) -> Path:
        if self.node_at(v) is None:
            raise TreeError(f"leaf {v} has no children")
        if not 0 <= s <= self.m:
            raise TreeError(f"rank {s} outside [0, {self.m}]")
        return v + (s,)

    def is_captive(self, v: Path) -> bool:
        if not v or self.node_at(v) is None:
            return False
        return self.vertices[v[:-1]].dashed == v[-1]

    def is_free(self, v: Path) -> bool:
        return self.node_at(v) is not None and not self.is_captive(v)

    def is_dashed_edge(self, child: Path) -> bool:
        return bool(child) and self.vertices[child[:-1]].dashed == child[-1]

    def is_dead_leaf(self, v: Path) -> bool:
        if not v or self.node_at(v) is not None:
            return False
        d = self.vertices[v[:-1]].dashed
        return d is not None and d < v[-1]

    def nextlive(self, v: Path) -> Path:
        for w in self.order[self.position[v]:]:
            if not self.is_dead_leaf(w):
                return w
        raise AssertionError("the last vertex of the order is never a dead leaf")

    def dashed_path(self, v: Path, w: Path) -> bool:
        """True if ``w`` is reached from ``v`` by a non-empty run of dashed edges."""
        if len(w) <= len(v) or w[: len(v)] != v:
            return False
        return all(self.is_dashed_edge(w[:q]) for q in range(len(v) + 1, len(w) + 1))

    def drift(self, path: Sequence[Path]) -> int:
        """Sum of the ranks of the vertices after the first along a downward path."""
        total = 0
        for a, b in zip(path, path[1:]):
            if len(b) != len(a) + 1 or b[:-1] != a:
                raise TreeError(f"{a} -> {b} is not a parent-child step")
            total += b[-1]
        return total

    def internal_edges(self) -> Iterator[Path]:
        """Child endpoints of all node-to-node edges."""
        return (p for p in self.nodes if p)

    def is_descent(self, child: Path) -> bool:
        parent = self.nodes.get(child[:-1]) if child else None
        node = self.nodes.get(child)
        if parent is None or node is None:
            raise TreeError(f"{child} does not end an internal edge")
        return max(parent.labels) > min(node.labels)

    def is_shi_type(self) -> bool:
        return all(self.is_descent(p) for p in self.internal_edges() if p[-1] == self.m)

    def free_node_count(self) -> int:
        return sum(1 for p in self.nodes if not self.is_captive(p))

    def captive_count(self) -> int:
        return sum(1 for p in self.nodes if self.is_captive(p))

    def to_json(self) -> dict:
        def enc(v: Optional[Node]):
            if v is None:
                return None
            return {"labels": sorted(v.labels), "dashed": v.dashed, "children": [enc(c) for c in v.children]}

        return {"m": self.m, "n": self.n, "root": enc(self.root)}

    @classmethod
    def from_json(cls, data) -> "DecoratedTree":
        if isinstance(data, str):
            data = json.loads(data)

        def dec(d):
            if d is None:
                return None
            return Node(frozenset(d["labels"]), tuple(dec(c) for c in d["children"]), d.get("dashed"))

        return cls(dec(data["root"]), int(data["m"]), int(data["n"]))


def prec_T(tree: DecoratedTree, v: Path, w: Path) -> str:
    return {-1: "less", 0: "equal", 1: "greater"}[tree.prec(v, w)]


def vertex_order(tree: DecoratedTree) -> list[Path]:
    return list(tree.order)


# -- enumeration -------------------------------------------------------------

Shape = Optional[tuple]  # None for a leaf, else a tuple of m+1 child shapes


def shapes(nodes: int, m: int) -> list[Shape]:
    """All (m+1)-ary plane tree shapes with exactly ``nodes`` internal nodes."""
    return list(_shapes(nodes, m + 1))


_shape_cache: dict[tuple[int, int], list] = {}


def _shapes(k: int, arity: int) -> list:
    key = (k, arity)
    if key in _shape_cache:
        return _shape_cache[key]
    if k == 0:
        res: list = [None]
    else:
        res = []
        for sizes in _compositions(k - 1, arity):
            for kids in itertools.product(*(_shapes(s, arity) for s in sizes)):
                res.append(tuple(kids))
    _shape_cache[key] = res
    return res


def _compositions(total: int, parts: int) -> Iterator[tuple[int, ...]]:
    if parts == 1:
        yield (total,)
        return
    for first in range(total + 1):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


def dash_trees(nodes: int, m: int) -> Iterator[Shape]:
    """Unlabelled dash trees: shapes with each node optionally dashing its cadet.

    Nodes are encoded as ``(dashed_rank_or_None, children)``.
    """
    for shape in shapes(nodes, m):
        yield from _dash_variants(shape)


def _dash_variants(shape: Shape) -> Iterator:
    if shape is None:
        yield None
        return
    cadet = next((r for r in range(len(shape) - 1, 0, -1) if shape[r] is not None), None)
    for kids in itertools.product(*(list(_dash_variants(c)) for c in shape)):
        yield (None, kids)
        if cadet is not None:
            yield (cadet, kids)


def _count_nodes(t) -> int:
    return 0 if t is None else 1 + sum(_count_nodes(c) for c in t[1])


def ordered_set_partitions(items: Sequence[int], blocks: int) -> Iterator[tuple[frozenset, ...]]:
    """Ordered set partitions of ``items`` into exactly ``blocks`` non-empty blocks."""
    items = list(items)
    for assignment in itertools.product(range(blocks), repeat=len(items)):
        if len(set(assignment)) != blocks:
            continue
        parts = [[] for _ in range(blocks)]
        for x, b in zip(items, assignment):
            parts[b].append(x)
        yield tuple(frozenset(p) for p in parts)


def _dress(t, blocks: Iterator[frozenset]) -> Optional[Node]:
    if t is None:
        return None
    dashed, kids = t
    labels = next(blocks)  # depth-first, parent before children
    return Node(labels, tuple(_dress(c, blocks) for c in kids), dashed)


def enumerate_trees(n: int, m: int, shi_only: bool = False) -> Iterator[DecoratedTree]:
    """Every [n]-decorated (m+1)-ary tree exactly once (Shi type only if asked)."""
    if n < 1 or m < 1:
        raise ValueError("need n >= 1 and m >= 1")
    for i in range(1, n + 1):
        skeletons = list(dash_trees(i, m))
        for partition in ordered_set_partitions(range(1, n + 1), i):
            for sk in skeletons:
                tree = DecoratedTree(_dress(sk, iter(partition)), m, n, check=False)
                if not shi_only or tree.is_shi_type():
                    yield tree


# -- text codec --------------------------------------------------------------


def render_tree(tree: DecoratedTree) -> str:
    def rend(v: Optional[Node]) -> str:
        if v is None:
            return "."
        labels = "{" + ",".join(str(x) for x in sorted(v.labels)) + "}"
        kids = []
        for r, c in enumerate(v.children):
            kids.append(("~" if v.dashed == r else "") + rend(c))
        return "(" + " ".join([labels] + kids) + ")"

    return rend(tree.root)


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def skip(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        self.skip()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def expect(self, ch: str):
        if self.peek() != ch:
            found = self.peek() or "end of input"
            raise TreeError(f"expected {ch!r}, found {found!r}", self.pos)
        self.pos += 1

    def number(self) -> int:
        self.skip()
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if start == self.pos:
            raise TreeError("expected a label", start)
        return int(self.text[start:self.pos])

    def labelset(self) -> tuple[list[int], int]:
        start = self.pos
        self.expect("{")
        out = [self.number()]
        while self.peek() == ",":
            self.pos += 1
            out.append(self.number())
        self.expect("}")
        return out, start

    def node(self):
        """Returns (labels, label_pos, [(dashed, child, child_pos)], node_pos)."""
        self.skip()
        start = self.pos
        self.expect("(")
        labels, lpos = self.labelset()
        kids = []
        while self.peek() not in (")", ""):
            dashed = False
            cpos = self.pos
            if self.peek() == "~":
                dashed = True
                self.pos += 1
            if self.peek() == ".":
                self.pos += 1
                kids.append((dashed, None, cpos))
            elif self.peek() == "(":
                kids.append((dashed, self.node(), cpos))
            else:
                raise TreeError(f"unexpected {self.peek()!r}", self.pos)
        self.expect(")")
        return labels, lpos, kids, start


def _max_arity(raw) -> int:
    labels, _, kids, _ = raw
    return max([len(kids)] + [_max_arity(c) for _, c, _ in kids if c is not None])


def parse_tree(text: str, m: Optional[int] = None) -> DecoratedTree:
    """Parse the text form.  ``m`` is inferred from the widest node if omitted."""
    p = _Parser(text)
    raw = p.node()
    if p.peek():
        raise TreeError("trailing characters", p.pos)
    if m is None:
        m = max(1, _max_arity(raw) - 1)

    seen: dict[int, int] = {}

    def build(r) -> Node:
        labels, lpos, kids, npos = r
        for x in labels:
            if x < 1:
                raise TreeError(f"label {x} must be positive", lpos)
            if x in seen:
                raise TreeError(f"label {x} appears twice", lpos)
            seen[x] = lpos
        if len(kids) > m + 1:
            raise TreeError(f"node has {len(kids)} children but m+1 = {m + 1}", npos)
        children = [build(c) if c is not None else None for _, c, _ in kids]
        children += [None] * (m + 1 - len(children))
        dashed = None
        for r_, (d, c, cpos) in enumerate(kids):
            if not d:
                continue
            if dashed is not None:
                raise TreeError("a node can have at most one dashed child edge", cpos)
            dashed = r_
        node = Node(frozenset(labels), tuple(children), dashed)
        if dashed is not None and node.cadet() != dashed:
            raise TreeError("dashed edge is not a cadet edge", kids[dashed][2])
        return node

    root = build(raw)
    n = max(seen)
    missing = sorted(set(range(1, n + 1)) - set(seen))
    if missing:
        raise TreeError(f"labels do not partition [{n}]: missing {missing}", 0)
    return DecoratedTree(root, m, n)
