from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from facetrees.arrangement import (
    Arrangement,
    FaceCode,
    InconsistentEqualities,
    Kind,
    as_point,
    face_code_of_point,
    face_dimension,
    hyperplane_triples,
    parse_point,
    restrict_to_shi,
)


def rank_dimension(code):
    """Independent oracle: n minus the rank of the equality normals."""
    n = code.arrangement.n
    rows = []
    for i, j, s in code.equalities():
        r = [0] * n
        r[i - 1], r[j - 1] = 1, -1
        rows.append(r)
    return n - (np.linalg.matrix_rank(np.array(rows)) if rows else 0)


def test_triples_examples():
    assert hyperplane_triples(Arrangement(Kind.BRAID, 2)) == [(1, 2, 0)]
    assert hyperplane_triples(Arrangement(Kind.CATALAN, 2, 1)) == [(1, 2, -1), (1, 2, 0), (1, 2, 1)]
    shi = hyperplane_triples(Arrangement(Kind.SHI, 3, 1))
    assert set(shi) == {(i, j, s) for i in (1, 2, 3) for j in (1, 2, 3) if i < j for s in (0, 1)}
    assert len(shi) == 6


@pytest.mark.parametrize("kind,m,per_pair", [("braid", 1, 1), ("m_catalan", 2, 5), ("m_shi", 3, 6)])
def test_triples_sorted_unique(kind, m, per_pair):
    t = hyperplane_triples(Arrangement(kind, 4, m))
    assert t == sorted(set(t))
    assert len(t) == 6 * per_pair
    assert all(i < j for i, j, _ in t)


def test_bad_arrangements():
    with pytest.raises(ValueError):
        Arrangement(Kind.BRAID, 3, 2)
    with pytest.raises(ValueError):
        Arrangement(Kind.SHI, 0, 1)
    with pytest.raises(ValueError):
        Kind.parse("ish")
    assert Kind.parse("Catalan") is Kind.CATALAN


def test_equal_coordinates():
    code = face_code_of_point(Arrangement(Kind.CATALAN, 2, 1), (0, 0))
    assert (code.sign(1, 2, -1), code.sign(1, 2, 0), code.sign(1, 2, 1)) == (1, 0, -1)
    assert face_dimension(code) == 1


def test_sign_accepts_either_orientation():
    code = face_code_of_point(Arrangement(Kind.CATALAN, 2, 1), (0, 1))
    assert code.sign(1, 2, -1) == 0
    assert code.sign(2, 1, 1) == 0
    assert code.sign(2, 1, 0) == 1


def test_seven_point_example():
    p = parse_point("1.3,1.0,1.0,2.3,2.1,2.4,2.2")
    code = face_code_of_point(Arrangement(Kind.CATALAN, 7, 1), p)
    assert code.sign(2, 3, 0) == 0
    chain = [3, 1, 5, 7, 4, 6]
    assert all(code.sign(a, b, 0) == -1 for a, b in zip(chain, chain[1:]))
    assert code.sign(4, 1, 1) == 0  # x_1 + 1 = x_4
    assert face_dimension(code) == 5


def test_nine_point_example():
    p = parse_point("2.3,1.5,3.3,1.4,1.4,1.0,3.1,4.3,4.2")
    code = face_code_of_point(Arrangement(Kind.CATALAN, 9, 2), p)
    assert code.sign(8, 1, 2) == 0
    assert code.sign(8, 3, 1) == 0


def test_restrict_to_shi_examples():
    cat = Arrangement(Kind.CATALAN, 2, 1)
    shi = restrict_to_shi(face_code_of_point(cat, (0, 1)))
    assert shi.arrangement.kind is Kind.SHI
    assert (shi.sign(1, 2, 0), shi.sign(1, 2, 1)) == (-1, -1)
    shi = restrict_to_shi(face_code_of_point(cat, (0, 0)))
    assert (shi.sign(1, 2, 0), shi.sign(1, 2, 1)) == (0, -1)
    with pytest.raises(ValueError):
        restrict_to_shi(shi)


def test_catalan_regions_restrict_to_shi_regions(censuses):
    census = censuses.get(Kind.CATALAN, 3, 1)
    regions = [c for c in census.faces if face_dimension(c) == 3]
    assert len(regions) == 30
    assert len({restrict_to_shi(c) for c in regions}) == 16


def test_dimension_examples():
    arr = Arrangement(Kind.SHI, 3, 1)
    region = face_code_of_point(arr, (Fraction(1, 2), Fraction(1, 3), 0))
    assert 0 not in region.signs and face_dimension(region) == 3


def test_inconsistent_equalities():
    arr = Arrangement(Kind.CATALAN, 2, 1)
    code = FaceCode(arr, (0, 0, -1))  # x1 - x2 = -1 and = 0
    with pytest.raises(InconsistentEqualities):
        face_dimension(code)


def test_code_validation_and_json():
    arr = Arrangement(Kind.CATALAN, 3, 1)
    with pytest.raises(ValueError):
        FaceCode(arr, (0,))
    with pytest.raises(ValueError):
        FaceCode(arr, (2,) * len(arr.triples))
    with pytest.raises(ValueError):
        face_code_of_point(arr, (0, 1))
    code = face_code_of_point(arr, (0, 1, Fraction(3, 2)))
    assert FaceCode.from_json(code.to_json()) == code


def test_exact_decimals():
    assert parse_point("1.1, 3/2") == (Fraction(11, 10), Fraction(3, 2))
    assert as_point([0.1]) == (Fraction(1, 10),)
    with pytest.raises(ValueError):
        parse_point("1.0,abc")


points = st.integers(2, 5).flatmap(
    lambda n: st.lists(st.fractions(min_value=-4, max_value=4, max_denominator=3), min_size=n, max_size=n)
)


@settings(max_examples=200, deadline=None)
@given(points, st.integers(1, 3))
def test_dimension_matches_rank_oracle(p, m):
    code = face_code_of_point(Arrangement(Kind.CATALAN, len(p), m), p)
    assert face_dimension(code) == rank_dimension(code)
    shi = restrict_to_shi(code)
    assert shi == face_code_of_point(Arrangement(Kind.SHI, len(p), m), p)
    assert face_dimension(shi) == rank_dimension(shi)
