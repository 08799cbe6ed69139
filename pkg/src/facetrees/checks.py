"""Cross-check suites shared by ``facetrees verify`` and the test suite.

Each suite returns a :class:`SuiteResult`; a failing result names the
invariant and the first counterexample found.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from math import factorial
from typing import Callable, Iterable, Optional

from . import counting
from .arrangement import Arrangement, Kind, face_code_of_point, face_dimension, restrict_to_shi
from .chain import enumerate_marked_functions, t_to_w, w_to_t
from .facemaps import (
    constituents,
    phi_catalan,
    phi_shi,
    point_to_tree,
    shi_repair,
    shirank,
    witness_point,
)
from .oracle import FaceCensus, census_diff, enumerate_faces
from .trees import enumerate_trees


@dataclass
class SuiteResult:
    name: str
    n: Optional[int]
    m: Optional[int]
    checked: int
    failure: Optional[str] = None

    @property
    def passed(self) -> bool:
        return self.failure is None

    def line(self) -> str:
        scale = f" n={self.n} m={self.m}" if self.n is not None else (f" m={self.m}" if self.m else "")
        status = "PASS" if self.passed else f"FAIL  {self.failure}"
        return f"{self.name}{scale}: {self.checked} checked  {status}"


class _Fail(Exception):
    pass


def _suite(name: str, n, m, body: Callable[[], int]) -> SuiteResult:
    try:
        return SuiteResult(name, n, m, body())
    except _Fail as exc:
        return SuiteResult(name, n, m, 0, str(exc))


class CensusCache:
    """Memoises oracle censuses so several suites can share them."""

    def __init__(self, workers: Optional[int] = None):
        self.workers = workers
        self._store: dict[Arrangement, FaceCensus] = {}

    def get(self, kind, n: int, m: int) -> FaceCensus:
        arr = Arrangement(kind, n, m)
        if arr not in self._store:
            self._store[arr] = enumerate_faces(arr, workers=self.workers)
        return self._store[arr]


def formula_counts(kind: Kind, n: int, m: int) -> dict[int, int]:
    fn = counting.FACE_COUNTS[Kind(kind).value]
    return {k: fn(n, k, m) for k in range(1, n + 1)}


# -- suites ------------------------------------------------------------------


def census_counts(cache: CensusCache, n: int, m: int) -> SuiteResult:
    def body():
        kinds = [Kind.CATALAN, Kind.SHI] + ([Kind.BRAID] if m == 1 else [])
        for kind in kinds:
            got = cache.get(kind, n, m).counts_by_dim
            want = {k: v for k, v in formula_counts(kind, n, m).items() if v}
            if got != want:
                raise _Fail(f"{kind.value} census by dimension {got} != closed form {want}")
        return len(kinds)

    return _suite("census_counts", n, m, body)


def catalan_bijection(cache: CensusCache, n: int, m: int) -> SuiteResult:
    def body():
        census = cache.get(Kind.CATALAN, n, m)
        codes = []
        for tree in enumerate_trees(n, m):
            code = phi_catalan(tree)
            if face_dimension(code) != tree.free_node_count():
                raise _Fail(f"dimension {face_dimension(code)} != free nodes {tree.free_node_count()} for {tree}")
            codes.append(code)
        if len(set(codes)) != len(codes):
            dup = next(c for c, v in Counter(codes).items() if v > 1)
            raise _Fail(f"two trees share the face {dup.describe()}")
        diff = census_diff(census, codes)
        if not diff.empty:
            ex = next(iter(diff.missing or diff.extra))
            side = "not hit by any tree" if diff.missing else "not in the census"
            raise _Fail(f"{len(diff.missing)} missing, {len(diff.extra)} extra; e.g. {ex.describe()} {side}")
        return len(codes)

    return _suite("catalan_bijection", n, m, body)


def inverse_map(n: int, m: int) -> SuiteResult:
    def body():
        count = 0
        arr = Arrangement(Kind.CATALAN, n, m)
        for tree in enumerate_trees(n, m):
            p = witness_point(tree)
            if face_code_of_point(arr, p) != phi_catalan(tree):
                raise _Fail(f"witness point {p} is not in the face of {tree}")
            back = point_to_tree(p, m)
            if back != tree:
                raise _Fail(f"point_to_tree(witness({tree})) = {back}")
            count += 1
        return count

    return _suite("inverse_map", n, m, body)


def shi_bijection(cache: CensusCache, n: int, m: int) -> SuiteResult:
    def body():
        census = cache.get(Kind.SHI, n, m)
        codes = []
        for tree in enumerate_trees(n, m, shi_only=True):
            code = phi_shi(tree)
            if face_dimension(code) != tree.free_node_count():
                raise _Fail(f"Shi dimension {face_dimension(code)} != free nodes for {tree}")
            codes.append(code)
        if len(set(codes)) != len(codes):
            raise _Fail("two Shi-type trees share a Shi face")
        diff = census_diff(census, codes)
        if not diff.empty:
            raise _Fail(f"Shi image differs from census: {len(diff.missing)} missing, {len(diff.extra)} extra")
        return len(codes)

    return _suite("shi_bijection", n, m, body)


def shi_uniqueness_repair(cache: CensusCache, n: int, m: int) -> SuiteResult:
    def body():
        census = cache.get(Kind.CATALAN, n, m)
        groups = constituents(census)
        for shi_code, members in groups.items():
            trees = {c: point_to_tree(census.representatives[c], m) for c in members}
            shi_type = [c for c, tree in trees.items() if tree.is_shi_type()]
            if len(shi_type) != 1:
                raise _Fail(f"Shi face {shi_code.describe()} has {len(shi_type)} Shi-type constituents")
            target = trees[shi_type[0]]
            for c, tree in trees.items():
                trace = []
                if shi_repair(tree, trace) != target:
                    raise _Fail(f"repair of {tree} misses {target}")
                ranks = [shirank(phi_catalan(step)) for step in trace]
                if any(a >= b for a, b in zip(ranks, ranks[1:])):
                    raise _Fail(f"shirank not strictly increasing along repair of {tree}: {ranks}")
                if any(restrict_to_shi(phi_catalan(step)) != shi_code for step in trace):
                    raise _Fail(f"repair of {tree} left the Shi face")
        return len(groups)

    return _suite("shi_uniqueness_repair", n, m, body)


def code_chain(n: int, m: int) -> SuiteResult:
    def body():
        by_k: Counter = Counter()
        images = set()
        for tree in enumerate_trees(n, m, shi_only=True):
            w = t_to_w(tree)
            w.validate()
            if w.k != tree.free_node_count():
                raise _Fail(f"{tree} has {tree.free_node_count()} free nodes but |S| = {len(w.marks)}")
            if w_to_t(w) != tree:
                raise _Fail(f"w_to_t(t_to_w({tree})) = {w_to_t(w)}")
            images.add(w)
            by_k[w.k] += 1
        if len(images) != sum(by_k.values()):
            raise _Fail("t_to_w is not injective")
        checked = len(images)
        for k in range(1, n + 1):
            direct = 0
            for w in enumerate_marked_functions(n, m, k):
                direct += 1
                if w not in images:
                    raise _Fail(f"{w.render()} is not the image of any Shi-type tree")
                if t_to_w(w_to_t(w)) != w:
                    raise _Fail(f"t_to_w(w_to_t({w.render()})) differs")
            want = counting.shi_face_count(n, k, m)
            if not by_k[k] == direct == want:
                raise _Fail(f"k={k}: trees {by_k[k]}, marked functions {direct}, closed form {want}")
        if by_k[1] != factorial(n) * m ** (n - 1):
            raise _Fail(f"k=1 count {by_k[1]} != n! m^(n-1)")
        return checked

    return _suite("code_chain", n, m, body)


def series(m: int, N: Optional[int] = None) -> list[SuiteResult]:
    N = N if N is not None else (6 if m == 1 else 5)
    out = []
    for fn in (counting.verify_catalan_gf, counting.verify_shi_gf):
        rep = fn(m, N)
        out.append(SuiteResult(rep.name, None, m, N, None if rep.passed else rep.summary()))
    return out


def identities(n_max: int = 6, i_max: int = 12, m_max: int = 3, twodim_n: int = 8) -> list[SuiteResult]:
    reps = [counting.verify_m1_simplification(i_max), counting.verify_shi_twodim(twodim_n, m_max)]
    reps += [counting.verify_dash_tree_sum(n_max, m) for m in range(1, m_max + 1)]
    return [SuiteResult(r.name, None, None, r.checked, None if r.passed else r.summary()) for r in reps]


def run_verify(n_max: int, m_max: int, workers: Optional[int] = None, progress=None) -> list[SuiteResult]:
    """Every suite at every ``n <= n_max``, ``m <= m_max``."""
    cache = CensusCache(workers)
    results: list[SuiteResult] = []

    def emit(items: Iterable[SuiteResult]):
        for r in items:
            results.append(r)
            if progress:
                progress(r)

    for m in range(1, m_max + 1):
        for n in range(1, n_max + 1):
            emit([
                census_counts(cache, n, m),
                catalan_bijection(cache, n, m),
                inverse_map(n, m),
                shi_bijection(cache, n, m),
                shi_uniqueness_repair(cache, n, m),
                code_chain(n, m),
            ])
        emit(series(m))
    emit(identities())
    return results


# -- counts.csv --------------------------------------------------------------

COUNT_COLUMNS = ("kind", "m", "n", "k", "formula_count", "oracle_count", "tree_count", "w_count")


def count_rows(kind, n: int, m: int, cross: bool = False, cache: Optional[CensusCache] = None) -> list[dict]:
    """One row per dimension ``k``; with ``cross`` the oracle, tree and 𝒲 columns are filled."""
    kind = Kind.parse(kind) if isinstance(kind, str) else kind
    Arrangement(kind, n, m)  # validates
    formula = formula_counts(kind, n, m)
    oracle = trees = wcount = None
    if cross:
        cache = cache or CensusCache()
        oracle = cache.get(kind, n, m).counts_by_dim
        if kind is not Kind.BRAID:
            trees = Counter(tree.free_node_count() for tree in enumerate_trees(n, m, shi_only=kind is Kind.SHI))
        if kind is Kind.SHI:
            wcount = {k: sum(1 for _ in enumerate_marked_functions(n, m, k)) for k in range(1, n + 1)}
    rows = []
    for k in range(1, n + 1):
        rows.append({
            "kind": kind.value, "m": m, "n": n, "k": k,
            "formula_count": formula[k],
            "oracle_count": "" if oracle is None else oracle.get(k, 0),
            "tree_count": "" if trees is None else trees.get(k, 0),
            "w_count": "" if wcount is None else wcount[k],
        })
    return rows
