from facetrees.arrangement import Kind
from facetrees.checks import CensusCache, count_rows, run_verify, series


def test_verify_small_scale_passes():
    results = run_verify(3, 1)
    assert results and all(r.passed for r in results), [r.line() for r in results if not r.passed]
    names = {r.name for r in results}
    assert {"census_counts", "catalan_bijection", "inverse_map", "shi_bijection",
            "shi_uniqueness_repair", "code_chain", "catalan_gf", "shi_gf", "m1_simplification"} <= names


def test_series_suite_lines():
    lines = [r.line() for r in series(2)]
    assert lines == ["catalan_gf m=2: 5 checked  PASS", "shi_gf m=2: 5 checked  PASS"]


def test_count_rows_cross(censuses):
    rows = count_rows(Kind.SHI, 3, 1, cross=True, cache=censuses)
    assert [(r["k"], r["formula_count"], r["oracle_count"], r["tree_count"], r["w_count"]) for r in rows] == [
        (1, 6, 6, 6, 6), (2, 21, 21, 21, 21), (3, 16, 16, 16, 16)]
    rows = count_rows("braid", 3, 1)
    assert [r["formula_count"] for r in rows] == [1, 6, 6] and rows[0]["oracle_count"] == ""
