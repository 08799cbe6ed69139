"""Brute-force face census over a rational grid.

Faces are translation invariant, so ``x_n`` is pinned to 0 and the other
coordinates run over ``{k / d : |k / d| <= half_span}``.  With ``d = n + 1`` and
``half_span = (m + 1)(n - 1) + 1`` every face has a grid point: a face depends
only on the integer parts of the coordinates (gaps larger than ``m + 1`` can be
shrunk by an integer) and the weak order of the at most ``n`` fractional parts,
which can be moved to ``j / (n + 1)``.

Work is done on integer numerators, so the grid is exact.
"""

from __future__ import annotations

import json
import os
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable

import numpy as np

from .arrangement import Arrangement, FaceCode, RationalPoint, face_dimension

WORKERS_ENV = "FACETREES_WORKERS"


@dataclass
class FaceCensus:
    arrangement: Arrangement
    faces: frozenset[FaceCode]
    counts_by_dim: dict[int, int]
    # first grid point (in iteration order) found in each face
    representatives: dict[FaceCode, RationalPoint] = field(default_factory=dict, repr=False)
    denominator: int = 0
    half_span: Fraction = Fraction(0)

    @property
    def total(self) -> int:
        return len(self.faces)

    def sorted_faces(self) -> list[FaceCode]:
        return sorted(self.faces, key=FaceCode.serialize)

    def to_json(self) -> dict:
        return {
            "arrangement": self.arrangement.to_json(),
            "parameters": {"denominator": self.denominator, "half_span": str(self.half_span)},
            "faces": [f.to_json() for f in self.sorted_faces()],
            "counts_by_dim": {str(k): v for k, v in sorted(self.counts_by_dim.items())},
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=1, sort_keys=True)


def default_parameters(arr: Arrangement) -> tuple[int, Fraction]:
    return arr.n + 1, Fraction((arr.m + 1) * (arr.n - 1) + 1)


def _check_parameters(arr: Arrangement, denominator: int, half_span: Fraction) -> None:
    d0, h0 = default_parameters(arr)
    if denominator < d0:
        raise ValueError(f"denominator {denominator} < n+1 = {d0}: some faces could be missed")
    if half_span < h0:
        raise ValueError(f"half_span {half_span} < (m+1)(n-1)+1 = {h0}: some faces could be missed")


def _shard_codes(arr: Arrangement, denominator: int, bound: int, first: Iterable[int]):
    """Unique sign rows for all grid points whose first coordinate is in ``first``.

    Returns a list of (sign_row_bytes, grid_point_numerators) in iteration order.
    """
    n = arr.n
    ks = np.arange(-bound, bound + 1, dtype=np.int64)
    triples = np.array(arr.triples, dtype=np.int64).reshape(-1, 3)
    out = []
    for k1 in first:
        if n == 1:
            pts = np.zeros((1, 1), dtype=np.int64)
        else:
            rest = n - 2
            if rest:
                mesh = np.stack(np.meshgrid(*([ks] * rest), indexing="ij"), axis=-1).reshape(-1, rest)
            else:
                mesh = np.zeros((1, 0), dtype=np.int64)
            pts = np.concatenate(
                [np.full((mesh.shape[0], 1), k1, dtype=np.int64), mesh, np.zeros((mesh.shape[0], 1), dtype=np.int64)],
                axis=1,
            )
        if len(triples):
            diff = pts[:, triples[:, 0] - 1] - pts[:, triples[:, 1] - 1] - triples[:, 2] * denominator
            signs = np.sign(diff).astype(np.int8)
        else:
            signs = np.zeros((pts.shape[0], 0), dtype=np.int8)
        _, first_idx = np.unique(signs, axis=0, return_index=True)
        for q in np.sort(first_idx):
            out.append((signs[q].tobytes(), tuple(int(v) for v in pts[q])))
        if n == 1:
            break
    return out


def _worker(args):
    return _shard_codes(*args)


def enumerate_faces(
    arr: Arrangement,
    denominator: int | None = None,
    half_span=None,
    workers: int | None = None,
) -> FaceCensus:
    d0, h0 = default_parameters(arr)
    denominator = d0 if denominator is None else int(denominator)
    half_span = h0 if half_span is None else Fraction(half_span)
    _check_parameters(arr, denominator, half_span)
    bound = int(half_span * denominator)  # floor: |k/d| <= half_span
    firsts = list(range(-bound, bound + 1))
    if workers is None:
        workers = int(os.environ.get(WORKERS_ENV, "1"))

    if workers > 1 and len(firsts) > 1:
        size = -(-len(firsts) // workers)
        shards = [firsts[a:a + size] for a in range(0, len(firsts), size)]
        with ProcessPoolExecutor(max_workers=workers) as ex:
            results = list(ex.map(_worker, [(arr, denominator, bound, s) for s in shards]))
    else:
        results = [_shard_codes(arr, denominator, bound, firsts)]

    reps: dict[bytes, tuple[int, ...]] = {}
    for shard in results:  # shards are in grid order, so the first hit wins
        for row, pt in shard:
            reps.setdefault(row, pt)

    representatives = {}
    for row, pt in reps.items():
        code = FaceCode(arr, tuple(int(v) for v in np.frombuffer(row, dtype=np.int8)))
        representatives[code] = tuple(Fraction(v, denominator) for v in pt)
    counts = Counter(face_dimension(c) for c in representatives)
    return FaceCensus(
        arrangement=arr,
        faces=frozenset(representatives),
        counts_by_dim=dict(sorted(counts.items())),
        representatives=representatives,
        denominator=denominator,
        half_span=half_span,
    )


@dataclass(frozen=True)
class CensusDiff:
    missing: frozenset[FaceCode]  # in the census, absent from the other set
    extra: frozenset[FaceCode]  # in the other set, absent from the census

    @property
    def empty(self) -> bool:
        return not self.missing and not self.extra


def census_diff(census: FaceCensus, codes: Iterable[FaceCode]) -> CensusDiff:
    codes = frozenset(codes)
    for c in codes:
        if c.arrangement != census.arrangement:
            raise ValueError(
                f"arrangement mismatch: census is {census.arrangement}, code is {c.arrangement}"
            )
    return CensusDiff(census.faces - codes, codes - census.faces)
