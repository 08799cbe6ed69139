from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from facetrees.arrangement import Arrangement, Kind, face_code_of_point, face_dimension, parse_point, restrict_to_shi
from facetrees.facemaps import (
    MCatalanCode,
    NonRealizableCode,
    catalan_code_of_point,
    code_to_tree,
    constituents,
    phi_catalan,
    phi_shi,
    point_to_tree,
    rotate,
    shi_repair,
    shi_tree_of_face,
    shirank,
    witness_point,
)
from facetrees.trees import TreeError, enumerate_trees, parse_tree

P6 = "1.0,1.0,1.1,2.0,2.2,4.0"
P6_TREE = "({1,2} ({3} . ({5} . ({6} . .))) ~({4} . .))"
P7 = "1.3,1.0,1.0,2.3,2.1,2.4,2.2"
P7_TREE = "({2,3} ({1} . ~({4} ({6} . .) .)) ({5} ({7} . .) .))"
P9 = "2.3,1.5,3.3,1.4,1.4,1.0,3.1,4.3,4.2"
P9_TREE = "({6} ({4,5} ({2} . . .) . .) ({1} . ~({3} . ~({8} . . .) .) .) ({7} . ({9} . . .) .))"

LEFT, RIGHT, DASHED = "({1} ({2} . .) .)", "({1} . ({2} . .))", "({2} . ~({1} . .))"
RIGHT_DASHED = "({1} . ~({2} . .))"


def test_single_node_face():
    tree = parse_tree("({1,2,3})")
    code = phi_catalan(tree)
    for (i, j, s), v in code.items():
        assert v == (0 if s == 0 else (-1 if s > 0 else 1))
    assert face_dimension(code) == 1


def test_right_child_face():
    code = phi_catalan(parse_tree(RIGHT))
    assert code.sign(2, 1, 1) == 1  # x_2 > x_1 + 1
    assert face_code_of_point(code.arrangement, (0, 2)) == code


def test_witness_examples():
    assert witness_point(parse_tree("({1,2})")) == (Fraction(1, 4), Fraction(1, 4))
    assert witness_point(parse_tree(DASHED)) == (Fraction(5, 4), Fraction(1, 4))
    assert witness_point(parse_tree(LEFT)) == (Fraction(1, 4), Fraction(3, 8))


def test_six_point_code():
    code = catalan_code_of_point(parse_point(P6), 1)
    assert code.ranks[0] == (1, 1, 2, 4, 6, 9)
    assert code.ranks[1] == (3, 3, 5, 7, 8, 10)
    assert code.above(1) == {4}
    assert code.dash_sites() == [3]
    assert str(code_to_tree(code)) == P6_TREE


def test_seven_point_tree():
    tree = point_to_tree(parse_point(P7), 1)
    assert str(tree) == P7_TREE
    assert tree.free_node_count() == 5
    code = catalan_code_of_point(parse_point(P7), 1)
    assert code.sites == 12
    assert phi_catalan(tree) == face_code_of_point(Arrangement(Kind.CATALAN, 7, 1), parse_point(P7))


def test_nine_point_code():
    code = catalan_code_of_point(parse_point(P9), 2)
    assert code.ranks == (
        (5, 3, 11, 2, 2, 1, 9, 18, 15),
        (10, 7, 17, 6, 6, 4, 14, 22, 20),
        (16, 13, 21, 12, 12, 8, 19, 24, 23),
    )
    assert code.sites == 24
    assert code.above(1) == {3, 8} and code.above(2) == {8}
    assert [t for t in range(1, 25) if code.site_type(t) == 0] == [1, 2, 3, 5, 9, 11, 15, 18]
    assert [t for t in range(1, 25) if code.site_type(t) == 1] == [4, 6, 7, 10, 14, 17, 20, 22]
    # site 21 (x_3 + 2) is followed by site 22 (x_8 + 1) and x_3 + 1 = x_8, so it is a dash site too
    assert code.dash_sites() == [10, 16, 17, 21]
    tree = code_to_tree(code)
    assert str(tree) == P9_TREE
    assert tree.free_node_count() == 6


def test_trivial_code():
    code = catalan_code_of_point((0, 0), 1)
    assert code.ranks == ((1, 1), (2, 2)) and code.above(1) == frozenset()
    assert str(code_to_tree(code)) == "({1,2} . .)"


def test_non_realizable_code():
    bogus = MCatalanCode(2, 1, ((1, 1), (1, 2)), (frozenset(),))
    with pytest.raises(NonRealizableCode):
        code_to_tree(bogus)
    with pytest.raises(NonRealizableCode):
        code_to_tree(MCatalanCode(1, 1, ((1,), (3,)), (frozenset(),)))


@settings(max_examples=300, deadline=None)
@given(
    st.integers(1, 5).flatmap(
        lambda n: st.lists(st.fractions(min_value=-3, max_value=3, max_denominator=4), min_size=n, max_size=n)
    ),
    st.integers(1, 3),
)
def test_point_to_tree_lands_in_face(p, m):
    tree = point_to_tree(p, m)
    code = face_code_of_point(Arrangement(Kind.CATALAN, len(p), m), p)
    assert phi_catalan(tree) == code
    assert tree.free_node_count() == face_dimension(code)


@pytest.mark.parametrize("n,m", [(2, 1), (3, 1), (2, 2), (3, 2)])
def test_witness_round_trip(n, m):
    arr = Arrangement(Kind.CATALAN, n, m)
    for tree in enumerate_trees(n, m):
        p = witness_point(tree)
        assert face_code_of_point(arr, p) == phi_catalan(tree)
        assert point_to_tree(p, m) == tree


def test_shirank_examples():
    assert shirank(phi_catalan(parse_tree(RIGHT))) == 0
    assert shirank(phi_catalan(parse_tree(LEFT))) == 1
    assert shirank(phi_catalan(parse_tree("({1,2})"))) == 1
    with pytest.raises(ValueError):
        shirank(phi_shi(parse_tree(LEFT)))


def test_repair_examples():
    left = parse_tree(LEFT)
    assert shi_repair(left) == left
    assert shi_repair(parse_tree(RIGHT)) == left
    trace = []
    assert shi_repair(parse_tree(RIGHT_DASHED), trace) == left
    assert len(trace) == 2
    assert rotate(parse_tree(RIGHT), (1,)) == left


def test_phi_shi_examples():
    code = phi_shi(parse_tree(LEFT))
    assert (code.sign(1, 2, 0), code.sign(1, 2, 1)) == (-1, -1)
    code = phi_shi(parse_tree(DASHED))
    assert code.sign(1, 2, 1) == 0
    with pytest.raises(TreeError):
        phi_shi(parse_tree(RIGHT))


def test_two_dim_shi_trees_n3(censuses):
    shi = censuses.get(Kind.SHI, 3, 1)
    two_dim = [tree for tree in enumerate_trees(3, 1, shi_only=True) if tree.free_node_count() == 2]
    assert len(two_dim) == 21
    assert {phi_shi(tree) for tree in two_dim} == {c for c in shi.faces if face_dimension(c) == 2}


def test_shi_tree_of_face(censuses):
    cat = censuses.get(Kind.CATALAN, 2, 1)
    left = phi_shi(parse_tree(LEFT))
    assert shi_tree_of_face(left, cat) == parse_tree(LEFT)
    dashed = phi_shi(parse_tree(DASHED))
    assert shi_tree_of_face(dashed, cat) == parse_tree(DASHED)
    with pytest.raises(ValueError):
        shi_tree_of_face(phi_catalan(parse_tree(LEFT)), cat)


def test_shi_tree_of_face_round_trip(censuses):
    cat = censuses.get(Kind.CATALAN, 3, 1)
    shi = censuses.get(Kind.SHI, 3, 1)
    for code in shi.faces:
        tree = shi_tree_of_face(code, cat)
        assert tree.is_shi_type() and phi_shi(tree) == code


def test_constituents_partition(censuses):
    cat = censuses.get(Kind.CATALAN, 3, 2)
    groups = constituents(cat)
    assert len(groups) == censuses.get(Kind.SHI, 3, 2).total
    assert sum(len(g) for g in groups.values()) == cat.total
    for shi_code, members in groups.items():
        assert all(restrict_to_shi(c) == shi_code for c in members)
