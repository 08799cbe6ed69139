from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from facetrees.arrangement import Arrangement, Kind, face_code_of_point, face_dimension
from facetrees.counting import stirling2
from facetrees.oracle import census_diff, default_parameters, enumerate_faces

from math import factorial


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_braid_counts(n):
    # k-dimensional braid faces are ordered set partitions into k blocks
    census = enumerate_faces(Arrangement(Kind.BRAID, n))
    assert census.counts_by_dim == {k: factorial(k) * stirling2(n, k) for k in range(1, n + 1)}


def test_shi_and_catalan_n3(censuses):
    shi = censuses.get(Kind.SHI, 3, 1)
    assert shi.counts_by_dim == {1: 6, 2: 21, 3: 16} and shi.total == 43
    cat = censuses.get(Kind.CATALAN, 3, 1)
    assert cat.counts_by_dim == {1: 13, 2: 42, 3: 30} and cat.total == 85


def test_census_consistency(censuses):
    census = censuses.get(Kind.CATALAN, 3, 2)
    assert sum(census.counts_by_dim.values()) == census.total
    for code, p in census.representatives.items():
        assert face_code_of_point(census.arrangement, p) == code
        assert p[-1] == 0


def test_finer_grid_finds_nothing_new():
    arr = Arrangement(Kind.CATALAN, 3, 1)
    base = enumerate_faces(arr)
    d, h = default_parameters(arr)
    finer = enumerate_faces(arr, denominator=2 * d, half_span=h + 2)
    assert census_diff(base, finer.faces).empty


def test_parameters_below_bound_rejected():
    arr = Arrangement(Kind.SHI, 3, 1)
    with pytest.raises(ValueError):
        enumerate_faces(arr, denominator=2)
    with pytest.raises(ValueError):
        enumerate_faces(arr, half_span=1)


def test_workers_give_same_census():
    arr = Arrangement(Kind.SHI, 3, 2)
    a = enumerate_faces(arr, workers=1)
    b = enumerate_faces(arr, workers=2)
    assert a.faces == b.faces and a.representatives == b.representatives


def test_census_diff():
    shi2 = enumerate_faces(Arrangement(Kind.SHI, 2, 1))
    assert shi2.total == 5
    assert census_diff(shi2, shi2.faces).empty
    some = set(list(shi2.faces)[:2])
    diff = census_diff(shi2, some)
    assert len(diff.missing) == 3 and not diff.extra
    other = enumerate_faces(Arrangement(Kind.CATALAN, 2, 1))
    with pytest.raises(ValueError):
        census_diff(shi2, other.faces)


def test_json_shape(censuses):
    data = censuses.get(Kind.SHI, 2, 1).to_json()
    assert data["arrangement"] == {"kind": "m_shi", "n": 2, "m": 1}
    assert data["counts_by_dim"] == {"1": 2, "2": 3}
    assert len(data["faces"]) == 5


@settings(max_examples=300, deadline=None)
@given(st.lists(st.fractions(min_value=-7, max_value=7, max_denominator=7), min_size=3, max_size=3))
def test_random_points_land_in_census(censuses, p):
    # faces are translation invariant, so any point's face must be in the census
    for kind in (Kind.CATALAN, Kind.SHI):
        census = censuses.get(kind, 3, 2)
        assert face_code_of_point(census.arrangement, p) in census.faces
