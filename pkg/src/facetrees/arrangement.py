"""Arrangements, exact points, face sign vectors and face dimensions.

Hyperplanes are keyed by triples ``(i, j, s)`` with ``i < j`` meaning
``x_i - x_j = s``.  A hyperplane ``x_i - x_j = s`` with ``i > j`` is the same
as ``(j, i, -s)``; every public function here speaks the normalized form.
"""

from __future__ import annotations

import enum
import json
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Mapping, Sequence

Triple = tuple[int, int, int]
RationalPoint = tuple[Fraction, ...]


class Kind(str, enum.Enum):
    BRAID = "braid"
    CATALAN = "m_catalan"
    SHI = "m_shi"

    @classmethod
    def parse(cls, text: str) -> "Kind":
        aliases = {"catalan": cls.CATALAN, "shi": cls.SHI}
        text = text.strip().lower()
        if text in aliases:
            return aliases[text]
        return cls(text)


@dataclass(frozen=True)
class Arrangement:
    kind: Kind
    n: int
    m: int = 1

    def __post_init__(self):
        object.__setattr__(self, "kind", Kind.parse(self.kind) if isinstance(self.kind, str) else self.kind)
        if self.n < 1 or self.m < 1:
            raise ValueError(f"need n >= 1 and m >= 1, got n={self.n}, m={self.m}")
        if self.kind is Kind.BRAID and self.m != 1:
            raise ValueError("the braid arrangement has no extension parameter (m must be 1)")

    def offsets(self) -> range:
        if self.kind is Kind.BRAID:
            return range(0, 1)
        if self.kind is Kind.CATALAN:
            return range(-self.m, self.m + 1)
        return range(-self.m + 1, self.m + 1)

    @cached_property
    def triples(self) -> tuple[Triple, ...]:
        return tuple(
            (i, j, s)
            for i in range(1, self.n + 1)
            for j in range(i + 1, self.n + 1)
            for s in self.offsets()
        )

    @cached_property
    def index(self) -> dict[Triple, int]:
        return {t: q for q, t in enumerate(self.triples)}

    def to_json(self) -> dict:
        return {"kind": self.kind.value, "n": self.n, "m": self.m}


def hyperplane_triples(arr: Arrangement) -> list[Triple]:
    """Hyperplanes of ``arr`` in lexicographic ``(i, j, s)`` order."""
    return list(arr.triples)


@dataclass(frozen=True)
class FaceCode:
    """Sign vector of a face: ``signs[q]`` is the side of ``arr.triples[q]``.

    -1 means ``x_i - x_j < s``, 0 means equality and +1 means ``x_i - x_j > s``.
    """

    arrangement: Arrangement
    signs: tuple[int, ...]

    def __post_init__(self):
        if len(self.signs) != len(self.arrangement.triples):
            raise ValueError("sign vector length does not match the hyperplane set")
        if any(v not in (-1, 0, 1) for v in self.signs):
            raise ValueError("signs must be -1, 0 or +1")

    @classmethod
    def from_mapping(cls, arr: Arrangement, sign: Mapping[Triple, int]) -> "FaceCode":
        if set(sign) != set(arr.triples):
            raise ValueError("sign map domain differs from the hyperplane set")
        return cls(arr, tuple(sign[t] for t in arr.triples))

    def sign(self, i: int, j: int, s: int) -> int:
        """Side of ``x_i - x_j = s``; accepts either orientation of the pair."""
        if i > j:
            return -self.sign(j, i, -s)
        return self.signs[self.arrangement.index[(i, j, s)]]

    def items(self) -> Iterable[tuple[Triple, int]]:
        return zip(self.arrangement.triples, self.signs)

    def equalities(self) -> list[Triple]:
        return [t for t, v in self.items() if v == 0]

    def to_json(self) -> dict:
        d = self.arrangement.to_json()
        d["signs"] = [{"i": i, "j": j, "s": s, "sign": v} for (i, j, s), v in self.items()]
        return d

    def serialize(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True, separators=(",", ":"))

    @classmethod
    def from_json(cls, data: Mapping) -> "FaceCode":
        arr = Arrangement(Kind(data["kind"]), int(data["n"]), int(data["m"]))
        sign = {(e["i"], e["j"], e["s"]): int(e["sign"]) for e in data["signs"]}
        return cls.from_mapping(arr, sign)

    def describe(self) -> str:
        """Compact human form, e.g. ``x1-x2<-1 x1-x2=0 ...``."""
        rel = {-1: "<", 0: "=", 1: ">"}
        return " ".join(f"x{i}-x{j}{rel[v]}{s}" for (i, j, s), v in self.items())


def _sgn(x) -> int:
    return (x > 0) - (x < 0)


def as_point(coords: Iterable) -> RationalPoint:
    """Coerce numbers or decimal strings to an exact rational point."""
    out = []
    for c in coords:
        if isinstance(c, float):
            # floats would smuggle binary rounding into strict comparisons
            c = repr(c)
        out.append(Fraction(c))
    return tuple(out)


def parse_point(text: str) -> RationalPoint:
    """Parse ``"1.0, 1.1, 3/2"`` into exact rationals (``1.1`` is ``11/10``)."""
    parts = [p for p in text.replace("(", "").replace(")", "").split(",")]
    try:
        return tuple(Fraction(p.strip()) for p in parts)
    except ValueError as exc:
        raise ValueError(f"cannot parse point {text!r}: {exc}") from None


def face_code_of_point(arr: Arrangement, p: Sequence) -> FaceCode:
    if len(p) != arr.n:
        raise ValueError(f"point has {len(p)} coordinates, arrangement needs {arr.n}")
    p = as_point(p)
    return FaceCode(arr, tuple(_sgn(p[i - 1] - p[j - 1] - s) for i, j, s in arr.triples))


def restrict_to_shi(code: FaceCode) -> FaceCode:
    """Forget the hyperplanes of the m-Catalan arrangement absent from m-Shi."""
    arr = code.arrangement
    if arr.kind is not Kind.CATALAN:
        raise ValueError(f"restrict_to_shi expects an m_catalan code, got {arr.kind.value}")
    shi = Arrangement(Kind.SHI, arr.n, arr.m)
    return FaceCode(shi, tuple(code.signs[arr.index[t]] for t in shi.triples))


class InconsistentEqualities(ValueError):
    """Two equalities force the same difference to two different offsets."""


class _PotentialUnionFind:
    """Union-find storing ``x_v - x_root`` on every element."""

    def __init__(self, n: int):
        self.parent = list(range(n + 1))
        self.offset = [0] * (n + 1)
        self.components = n

    def find(self, v: int) -> tuple[int, int]:
        path = []
        while self.parent[v] != v:
            path.append(v)
            v = self.parent[v]
        root, acc = v, 0
        for u in reversed(path):
            acc += self.offset[u]
            self.offset[u] = acc
            self.parent[u] = root
        return root, (self.offset[path[0]] if path else 0)

    def union(self, i: int, j: int, diff: int) -> None:
        """Impose ``x_i - x_j = diff``."""
        ri, oi = self.find(i)
        rj, oj = self.find(j)
        if ri == rj:
            if oi - oj != diff:
                raise InconsistentEqualities(f"x{i}-x{j} forced to {oi - oj} and {diff}")
            return
        # x_ri = x_i - oi, x_rj = x_j - oj  =>  x_ri - x_rj = diff - oi + oj
        self.parent[ri] = rj
        self.offset[ri] = diff - oi + oj
        self.components -= 1


def face_dimension(code: FaceCode) -> int:
    uf = _PotentialUnionFind(code.arrangement.n)
    for i, j, s in code.equalities():
        uf.union(i, j, s)
    return uf.components
