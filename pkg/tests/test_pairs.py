from fractions import Fraction

import pytest

from zpgabor.errors import DomainError, PreconditionError
from zpgabor.fourier.fourier import Window
from zpgabor.gabor.windows import make_parabola
from zpgabor.group.group import GroupParams, Point, PointSet
from zpgabor.models.documents import Backend
from zpgabor.pairs.pairs import (
    WeightFn,
    cover_counts,
    is_packing,
    is_spectral_pair,
    is_tiling_pair,
    square_sum_identity,
    weighted_spectrum_check,
)
from zpgabor.search.enumeration import find_spectrum

from helpers import column, row


def test_row_is_spectral_with_row(z3sq):
    verdict = is_spectral_pair(row(z3sq), row(z3sq))
    assert verdict.passed
    assert verdict.certificate == {"size": 3}


def test_row_is_not_spectral_with_column(z3sq):
    verdict = is_spectral_pair(row(z3sq), column(z3sq))
    assert not verdict.passed
    assert verdict.witness == {"b": [0, 0], "b_prime": [0, 1]}


def test_spectral_size_mismatch(z3sq):
    B = PointSet.from_points(z3sq, [(0, 0), (1, 0)])
    verdict = is_spectral_pair(row(z3sq), B)
    assert verdict.witness == {"reason": "size", "E_size": 3, "B_size": 2}


def test_spectral_needs_nonempty_set(z3sq):
    with pytest.raises(PreconditionError):
        is_spectral_pair(PointSet.empty(z3sq), PointSet.empty(z3sq))


def test_singleton_and_full_group(z3sq):
    single = PointSet.from_points(z3sq, [(2, 1)])
    assert is_spectral_pair(single, PointSet.from_points(z3sq, [(1, 1)]))
    full = PointSet.full(z3sq)
    assert is_spectral_pair(full, full)
    assert is_tiling_pair(full, PointSet.from_indices(z3sq, [0]))


def test_row_tiles_with_column(z3sq):
    verdict = is_tiling_pair(row(z3sq), column(z3sq))
    assert verdict.passed
    assert verdict.certificate["cover_counts"] == [1] * 9


def test_tiling_witness_reports_double_cover(z3sq):
    verdict = is_tiling_pair(row(z3sq), row(z3sq))
    assert not verdict.passed
    assert verdict.witness == {"point": [0, 0], "count": 3}


def test_tiling_witness_on_z2(z2sq):
    E = PointSet.from_points(z2sq, [(0, 0), (1, 0)])
    A = PointSet.from_points(z2sq, [(0, 0), (1, 0)])
    verdict = is_tiling_pair(E, A)
    assert verdict.witness == {"point": [0, 0], "count": 2}


def test_packing(z3sq):
    E = PointSet.from_points(z3sq, [(0, 0), (1, 0)])
    assert is_packing(E, PointSet.from_points(z3sq, [(0, 0), (0, 1)])).passed
    verdict = is_packing(E, PointSet.from_points(z3sq, [(0, 0), (1, 0)]))
    assert not verdict.passed
    assert verdict.witness == {"point": [1, 0], "count": 2}


def test_cover_counts_total(z3sq):
    E = PointSet.from_points(z3sq, [(0, 0), (1, 2)])
    A = PointSet.from_points(z3sq, [(0, 0), (2, 2), (1, 1)])
    assert int(cover_counts(E, A).sum()) == E.size * A.size


def test_uniform_weight_matches_unweighted_spectrum(z3sq):
    w = WeightFn.uniform(row(z3sq))
    assert weighted_spectrum_check(w, row(z3sq)).passed
    verdict = weighted_spectrum_check(w, column(z3sq))
    assert verdict.witness["reason"] == "orthogonality"


def test_weighted_spectrum_incomplete(z3sq):
    w = WeightFn.uniform(row(z3sq))
    B = PointSet.from_points(z3sq, [(0, 0), (1, 0)])
    verdict = weighted_spectrum_check(w, B)
    assert verdict.witness == {"reason": "incomplete", "B_size": 2, "support_size": 3}


def test_non_constant_weight_can_break_orthogonality(z3sq):
    values = [0] * 9
    values[z3sq.index_of((0, 0))] = 1
    values[z3sq.index_of((1, 0))] = 2
    values[z3sq.index_of((2, 0))] = 1
    w = WeightFn.from_values(z3sq, values)
    verdict = weighted_spectrum_check(w, row(z3sq))
    assert verdict.witness["reason"] == "orthogonality"


def test_weights_on_z2():
    params = GroupParams(2, 1)
    w = WeightFn.from_values(params, [Fraction(1, 2), Fraction(1, 2)])
    assert weighted_spectrum_check(w, PointSet.full(params)).passed
    w = WeightFn.from_values(params, [Fraction(1, 3), Fraction(2, 3)])
    assert not weighted_spectrum_check(w, PointSet.full(params)).passed


def test_square_sum_identity_everywhere(z3sq):
    w = WeightFn.uniform(row(z3sq))
    verdict = square_sum_identity(w, row(z3sq))
    assert verdict.passed
    assert verdict.certificate == {"points_checked": 9, "value": "1/81"}


def test_square_sum_identity_at_a_point(z3sq):
    w = WeightFn.uniform(row(z3sq))
    verdict = square_sum_identity(w, row(z3sq), Point.of(z3sq, 2, 1))
    assert verdict.certificate["points_checked"] == 1


@pytest.mark.parametrize("p", [3, 5])
def test_square_sum_identity_on_the_parabola(p):
    F = make_parabola(p)
    w = WeightFn.uniform(F)
    assert w.rationals[0] == Fraction(1, p)
    B = find_spectrum(F)
    assert weighted_spectrum_check(w, B).passed
    verdict = square_sum_identity(w, B)
    assert verdict.passed
    assert verdict.certificate == {"points_checked": p * p, "value": str(Fraction(1, p ** 4))}


def test_square_sum_preconditions(z3sq):
    with pytest.raises(PreconditionError):
        square_sum_identity(WeightFn.from_values(z3sq, [1] * 9), PointSet.full(z3sq))
    with pytest.raises(PreconditionError):
        square_sum_identity(WeightFn.uniform(row(z3sq)), column(z3sq))


def test_weight_validation(z3sq):
    with pytest.raises(DomainError):
        WeightFn.from_values(z3sq, [-1] + [0] * 8)
    with pytest.raises(DomainError):
        WeightFn(Window.constant(z3sq, 1, Backend.FLOAT))
    with pytest.raises(PreconditionError):
        WeightFn.uniform(PointSet.empty(z3sq))
    with pytest.raises(PreconditionError):
        WeightFn.from_values(z3sq, [0] * 9).normalized()
    with pytest.raises(PreconditionError):
        weighted_spectrum_check(WeightFn.from_values(z3sq, [0] * 9), row(z3sq))


def test_normalized_weight(z3sq):
    w = WeightFn.from_values(z3sq, [2, 0, 0, 2, 0, 0, 2, 0, 0])
    assert w.is_constant_on_support()
    n = w.normalized()
    assert n.mass == 1
    assert n.support == row(z3sq)
    assert n.rationals[0] == Fraction(1, 3)
