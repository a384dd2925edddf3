import pytest

from zpgabor.config import get_settings
from zpgabor.cyclotomic.cyclotomic import CycNum
from zpgabor.errors import CapExceededError, DomainError, FieldMismatchError
from zpgabor.group.group import (
    GroupParams,
    Point,
    PointSet,
    character,
    check_same_params,
    dot,
    is_graph,
    is_graph_in_some_direction,
    line_directions,
    subgroup_and_complement,
    translate_set,
)

from helpers import column, row


def test_points_are_ranked_lexicographically(z3sq):
    assert [z3sq.index_of(c) for c in [(0, 0), (0, 2), (1, 0), (2, 2)]] == [0, 2, 3, 8]
    assert z3sq.point(5).coords == (1, 2)
    assert list(z3sq.coordinates)[:4] == [(0, 0), (0, 1), (0, 2), (1, 0)]


def test_point_arithmetic_reduces_mod_p(z3sq):
    x = Point.of(z3sq, 2, 1)
    y = Point.of(z3sq, 2, 2)
    assert (x + y).coords == (1, 0)
    assert (x - y).coords == (0, 2)
    assert (-x).coords == (1, 2)
    assert Point.of(z3sq, 5, -1).coords == (2, 2)
    assert z3sq.add_indices(x.index, y.index) == (x + y).index
    assert z3sq.sub_indices(x.index, y.index) == (x - y).index
    assert z3sq.neg_index(x.index) == (-x).index


def test_dot_and_character(z3sq):
    x = Point.of(z3sq, 1, 2)
    m = Point.of(z3sq, 2, 2)
    assert dot(x, m) == (2 + 4) % 3
    assert character(x, m) == CycNum.root(3, 0)
    assert character(x, Point.of(z3sq, 1, 0)) == CycNum.root(3, 1)
    assert z3sq.dot_indices(x.index, m.index) == dot(x, m)


def test_point_set_basics(z3sq):
    E = PointSet.from_points(z3sq, [(1, 1), (0, 0), (2, 1)])
    assert E.size == len(E) == 3
    assert E.to_lists() == [[0, 0], [1, 1], [2, 1]]
    assert Point.of(z3sq, 1, 1) in E
    assert Point.of(z3sq, 1, 2) not in E
    assert E.issubset(PointSet.full(z3sq))
    assert not PointSet.empty(z3sq)
    assert (E | row(z3sq)).size == 5
    assert (E & row(z3sq)).to_lists() == [[0, 0]]
    assert str(E) == "{(0, 0), (1, 1), (2, 1)}"


def test_translate_and_negate(z3sq):
    E = PointSet.from_points(z3sq, [(0, 0), (1, 2)])
    moved = translate_set(E, Point.of(z3sq, 1, 1))
    assert moved.to_lists() == [[1, 1], [2, 0]]
    assert E.negate().to_lists() == [[0, 0], [2, 1]]


def test_difference_set(z3sq):
    E = PointSet.from_points(z3sq, [(0, 0), (1, 0)])
    diffs = [z3sq.coordinates[i] for i in E.differences()]
    assert diffs == [(0, 0), (1, 0), (2, 0)]


def test_point_set_document_round_trip(z3sq):
    E = PointSet.from_points(z3sq, [(2, 2), (0, 1)])
    doc = E.to_document()
    assert doc.points == [[0, 1], [2, 2]]
    assert PointSet.from_document(doc) == E


def test_mask_outside_group_rejected(z2sq):
    with pytest.raises(DomainError):
        PointSet(z2sq, 1 << 4)
    with pytest.raises(DomainError):
        PointSet.from_indices(z2sq, [4])


def test_group_parameter_validation():
    with pytest.raises(DomainError):
        GroupParams(4, 1)
    with pytest.raises(DomainError):
        GroupParams(3, 0)
    with pytest.raises(DomainError):
        GroupParams(3, 5)


def test_enumeration_cap():
    with pytest.raises(CapExceededError):
        GroupParams(181, 2)
    assert GroupParams(181, 2, allow_large=True).size == 181 ** 2


def test_enumeration_cap_from_environment(monkeypatch):
    monkeypatch.setenv("ZPGABOR_ENUMERATION_CAP", "100")
    get_settings.cache_clear()
    with pytest.raises(CapExceededError) as info:
        GroupParams(11, 2)
    assert info.value.context["cap"] == 100
    assert GroupParams(7, 2).size == 49


def test_mismatched_groups(z2sq, z3sq):
    with pytest.raises(FieldMismatchError):
        check_same_params(PointSet.full(z2sq), PointSet.full(z3sq))
    with pytest.raises(FieldMismatchError):
        Point.of(z2sq, 0, 1) + Point.of(GroupParams(2, 3), 0, 1, 1)


@pytest.mark.parametrize("p", [2, 3, 5, 7])
def test_parabola_is_a_graph(p):
    params = GroupParams(p, 2)
    F = PointSet.from_points(params, [(t, t * t) for t in range(p)])
    verdict = is_graph(F)
    assert verdict.passed
    assert verdict.certificate["function"] == [t * t % p for t in range(p)]


def test_vertical_line_is_not_a_graph(z3sq):
    verdict = is_graph(column(z3sq))
    assert not verdict.passed
    assert verdict.witness == {"abscissa": 0, "count": 3, "ordinates": [0, 1, 2]}


def test_graph_needs_the_plane():
    with pytest.raises(DomainError):
        is_graph(PointSet.full(GroupParams(3, 1)))
    with pytest.raises(DomainError):
        is_graph_in_some_direction(PointSet.full(GroupParams(3, 1)))


def test_line_directions():
    assert line_directions(3) == [(0, 1), (1, 0), (1, 1), (1, 2)]


def test_graph_directions_of_lines(z3sq):
    assert is_graph_in_some_direction(row(z3sq)).certificate == {"direction": [0, 1]}
    assert is_graph_in_some_direction(column(z3sq)).certificate == {"direction": [1, 0]}


def test_graph_direction_after_a_shear(z3sq):
    corner = PointSet.from_points(z3sq, [(0, 0), (1, 0), (0, 1)])
    assert not is_graph(corner).passed
    assert is_graph_in_some_direction(corner).certificate == {"direction": [1, 1]}


def test_graph_direction_failures(z3sq):
    verdict = is_graph_in_some_direction(PointSet.full(z3sq))
    assert verdict.witness == {"size": 9, "expected": 3}
    params = GroupParams(5, 2)
    spread = PointSet.from_points(params, [(0, 0), (1, 0), (0, 1), (1, 1), (2, 3)])
    verdict = is_graph_in_some_direction(spread)
    assert not verdict.passed
    assert verdict.witness == {"blocked_directions": 6}


def test_subgroup_and_complement(z3sq):
    A, B = subgroup_and_complement(z3sq, 1)
    assert A == row(z3sq)
    assert B == column(z3sq)
    params = GroupParams(2, 3)
    A, B = subgroup_and_complement(params, 2)
    assert A.size == 4 and B.size == 2
    with pytest.raises(DomainError):
        subgroup_and_complement(z3sq, 2)
