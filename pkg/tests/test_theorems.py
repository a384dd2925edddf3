import pytest

from zpgabor.cyclotomic.cyclotomic import CycNum
from zpgabor.errors import DomainError, PreconditionError
from zpgabor.fourier.fourier import Window
from zpgabor.gabor.theorems import (
    indicator_equivalence_check,
    non_indicator_window_check,
    positive_window_check,
    subspace_lattice_check,
    support_size_window_check,
)
from zpgabor.gabor.windows import make_flat_window, make_gauss_window, make_product_window, make_qr_row_window, make_sign_window
from zpgabor.group.group import GroupParams, PointSet, subgroup_and_complement
from zpgabor.models.documents import Backend

from helpers import column, random_subset, random_window, row, subsets


def window_on(params, E, values):
    out = [0] * params.size
    for i, v in zip(E.indices(), values):
        out[i] = v
    return Window(params, tuple(out))


def test_indicator_equivalence_exhaustive_on_z2_squared(z2sq):
    everything = [PointSet.empty(z2sq)] + subsets(z2sq)
    bases = 0
    for E in subsets(z2sq):
        for A in everything:
            for B in everything:
                verdict = indicator_equivalence_check(E, A, B)
                assert verdict.passed, (E, A, B)
                bases += verdict.parts["basis"].passed
    assert bases > 0


def test_indicator_equivalence_on_random_z3_squared_triples(z3sq, rng):
    for _ in range(200):
        E = random_subset(z3sq, rng)
        A = random_subset(z3sq, rng, 9 // E.size if rng.random() < 0.5 else None)
        B = random_subset(z3sq, rng, E.size if rng.random() < 0.5 else None)
        assert indicator_equivalence_check(E, A, B).passed


@pytest.mark.slow
def test_indicator_equivalence_on_many_z3_squared_triples(z3sq, rng):
    for _ in range(10 ** 4):
        E = random_subset(z3sq, rng)
        A = random_subset(z3sq, rng, 9 // E.size if rng.random() < 0.5 else None)
        B = random_subset(z3sq, rng, E.size if rng.random() < 0.5 else None)
        assert indicator_equivalence_check(E, A, B).passed


def test_indicator_equivalence_parts(z3sq):
    verdict = indicator_equivalence_check(row(z3sq), column(z3sq), row(z3sq))
    assert verdict.certificate == {"basis": True, "conclusions": True}
    assert set(verdict.parts) == {"basis", "spectral", "tiling"}
    verdict = indicator_equivalence_check(row(z3sq), row(z3sq), row(z3sq))
    assert verdict.certificate == {"basis": False, "conclusions": False}
    assert not verdict.parts["tiling"].passed


def test_indicator_equivalence_needs_nonempty_set(z3sq):
    with pytest.raises(PreconditionError):
        indicator_equivalence_check(PointSet.empty(z3sq), column(z3sq), row(z3sq))


def test_support_size_window_with_unimodular_values(z3sq):
    g = window_on(z3sq, row(z3sq), [1, CycNum.root(3, 1), -CycNum.root(3, 2)])
    verdict = support_size_window_check(g, column(z3sq), row(z3sq))
    assert verdict.passed
    assert verdict.parts["basis"].passed
    assert verdict.parts["graph"].passed


def test_support_size_window_on_a_vertical_line(z3sq):
    g = Window.indicator(column(z3sq))
    verdict = support_size_window_check(g, row(z3sq), column(z3sq))
    assert verdict.passed
    assert verdict.parts["basis"].passed
    assert verdict.parts["graph"].certificate == {"direction": [1, 0]}


def test_support_size_window_on_a_sheared_set(z3sq):
    corner = PointSet.from_points(z3sq, [(0, 0), (1, 0), (0, 1)])
    g = window_on(z3sq, corner, [1, -1, CycNum.root(3, 2)])
    A = PointSet.from_points(z3sq, [(0, 0), (1, 1), (2, 2)])
    verdict = support_size_window_check(g, A, row(z3sq))
    assert verdict.parts["tiling"].passed
    assert verdict.parts["graph"].passed
    assert verdict.passed


def test_support_size_window_with_uneven_modulus(z3sq):
    g = window_on(z3sq, row(z3sq), [1, 2, 1])
    verdict = support_size_window_check(g, column(z3sq), row(z3sq))
    assert verdict.passed
    assert not verdict.parts["basis"].passed
    assert not verdict.parts["modulus"].passed


def test_support_size_window_on_random_windows(z3sq, rng):
    for _ in range(30):
        E = random_subset(z3sq, rng)
        values = [rng.choice([1, -1, 2, CycNum.root(3, 1)]) for _ in range(E.size)]
        g = window_on(z3sq, E, values)
        A = random_subset(z3sq, rng, 9 // E.size)
        B = random_subset(z3sq, rng, E.size)
        assert support_size_window_check(g, A, B).passed


def test_support_size_window_precondition(z3sq):
    g = Window.indicator(row(z3sq))
    with pytest.raises(PreconditionError):
        support_size_window_check(g, column(z3sq), PointSet.full(z3sq))


def test_positive_window(z3sq):
    g = Window.indicator(row(z3sq)).scaled(2)
    verdict = positive_window_check(g, column(z3sq), row(z3sq))
    assert verdict.passed
    assert verdict.certificate == {"basis": True, "conclusions": True}
    uneven = window_on(z3sq, row(z3sq), [1, 2, 1])
    verdict = positive_window_check(uneven, column(z3sq), row(z3sq))
    assert verdict.passed
    assert not verdict.parts["constant"].passed


def test_positive_window_on_random_windows(z3sq, rng):
    for _ in range(30):
        g = random_window(z3sq, rng, values=(0, 0, 1, 2))
        A = random_subset(z3sq, rng)
        B = random_subset(z3sq, rng, g.support.size)
        assert positive_window_check(g, A, B).passed


def test_positive_window_rejects_signed_or_float_windows(z3sq):
    with pytest.raises(DomainError):
        positive_window_check(window_on(z3sq, row(z3sq), [1, -1, 1]), column(z3sq), row(z3sq))
    with pytest.raises(DomainError):
        positive_window_check(Window.indicator(row(z3sq), Backend.FLOAT), column(z3sq), row(z3sq))
    with pytest.raises(PreconditionError):
        positive_window_check(Window.constant(z3sq, 0), column(z3sq), row(z3sq))


@pytest.mark.parametrize("p", [5, 13])
def test_subspace_lattice_for_qr_row_window(p):
    verdict = subspace_lattice_check(make_qr_row_window(p), 1)
    assert verdict.passed
    assert verdict.parts["basis"].passed
    assert verdict.parts["a"].passed and verdict.parts["b"].passed


def test_subspace_lattice_for_product_window():
    g = make_product_window(make_gauss_window(5), make_sign_window(5))
    verdict = subspace_lattice_check(g, 1)
    assert verdict.passed
    assert verdict.parts["basis"].passed


def test_subspace_lattice_detects_uneven_slices(z3sq):
    g = window_on(z3sq, PointSet.full(z3sq), [1, 1, 1, 1, 1, 1, 1, 1, 2])
    verdict = subspace_lattice_check(g, 1)
    assert verdict.passed
    assert not verdict.parts["basis"].passed


@pytest.mark.parametrize("p,d,k", [(3, 2, 1), (2, 3, 1), (2, 3, 2), (2, 2, 1)])
def test_subspace_lattice_on_random_windows(p, d, k, rng):
    params = GroupParams(p, d)
    for _ in range(10):
        assert subspace_lattice_check(random_window(params, rng), k).passed


def test_subspace_lattice_rejects_zero_window(z3sq):
    with pytest.raises(PreconditionError):
        subspace_lattice_check(Window.constant(z3sq, 0), 1)


@pytest.mark.parametrize("p", [5, 13])
def test_gauss_times_sign_is_a_non_indicator_basis(p):
    g = make_product_window(make_gauss_window(p), make_sign_window(p))
    A, B = subgroup_and_complement(g.params, 1)
    verdict = non_indicator_window_check(g, A, B)
    assert verdict.passed
    assert verdict.certificate == {
        "basis": True,
        "window_modulus_is_indicator": False,
        "transform_modulus_is_indicator": False,
    }


@pytest.mark.parametrize("p", [3, 5, 7])
def test_flat_times_sign_is_a_non_indicator_basis(p):
    g = make_product_window(make_flat_window(p), make_sign_window(p))
    A, B = subgroup_and_complement(g.params, 1)
    assert non_indicator_window_check(g, A, B).passed


def test_indicator_window_is_not_exotic(z3sq):
    verdict = non_indicator_window_check(Window.indicator(row(z3sq)), column(z3sq), row(z3sq))
    assert not verdict.passed
    assert verdict.witness["basis"] is True
    assert verdict.witness["window_modulus_is_indicator"] is True


@pytest.mark.slow
def test_indicator_equivalence_on_many_z5_squared_triples(rng):
    params = GroupParams(5, 2)
    for _ in range(10 ** 4):
        E = random_subset(params, rng, rng.choice([1, 5, 5, 5, 25, rng.randint(1, 25)]))
        A = random_subset(params, rng, 25 // E.size if rng.random() < 0.5 else None)
        B = random_subset(params, rng, E.size if rng.random() < 0.5 else None)
        assert indicator_equivalence_check(E, A, B).passed


@pytest.mark.slow
def test_subspace_lattice_on_many_random_windows(rng):
    params = GroupParams(5, 2)
    for _ in range(10 ** 3):
        assert subspace_lattice_check(random_window(params, rng), 1).passed
