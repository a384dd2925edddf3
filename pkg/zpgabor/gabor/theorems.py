"""Instance checkers relating Gabor bases to spectral and tiling pairs.

Each checker decides the basis property and the structural conclusions
independently and passes when they agree as the corresponding result
predicts. Both sides are always reported in `parts`.
"""
from __future__ import annotations

from typing import Dict, List

from zpgabor.errors import DomainError, PreconditionError
from zpgabor.fourier.fourier import Window, dft
from zpgabor.gabor.system import GaborSystem, is_orthonormal_basis
from zpgabor.group.group import GroupParams, PointSet, check_same_params, is_graph_in_some_direction, subgroup_and_complement
from zpgabor.models.documents import Backend
from zpgabor.models.verdict import Verdict
from zpgabor.pairs.pairs import is_spectral_pair, is_tiling_pair


def _flag(check: str, holds: bool, detail: Dict) -> Verdict:
    if holds:
        return Verdict(check=check, passed=True, certificate=detail)
    return Verdict(check=check, passed=False, witness=detail)


def _modulus_constant_on_support(window: Window, check: str) -> Verdict:
    """|w|^2 takes a single value on supp(w)."""
    ops = window.ops
    support = window.support.indices()
    squares = [ops.abs_sq(window.values[i]) for i in support]
    distinct = ops.distinct(squares, window.scale ** 2)
    detail = {"support_size": len(support), "distinct_values": len(distinct)}
    if len(distinct) > 1:
        detail["examples"] = [ops.to_json(v) for v in distinct[:2]]
    return _flag(check, len(distinct) <= 1, detail)


def _agreement(check: str, expected: bool, actual: bool, parts: Dict[str, Verdict], authoritative: bool) -> Verdict:
    detail = {"basis": actual, "conclusions": expected}
    if expected == actual:
        return Verdict(check=check, passed=True, certificate=detail, parts=parts, authoritative=authoritative)
    return Verdict(check=check, passed=False, witness=detail, parts=parts, authoritative=authoritative)


def indicator_equivalence_check(E: PointSet, A: PointSet, B: PointSet) -> Verdict:
    """G(1_E, A, B) is an orthonormal basis iff (E, B) is spectral and (E, A) tiles."""
    check_same_params(E, A, B)
    if not E:
        raise PreconditionError("indicator check needs a nonempty E", {})
    basis = is_orthonormal_basis(GaborSystem(Window.indicator(E), A, B), scale_free=True)
    spectral = is_spectral_pair(E, B)
    tiling = is_tiling_pair(E, A)
    parts = {"basis": basis, "spectral": spectral, "tiling": tiling}
    return _agreement("indicator_equivalence", spectral.passed and tiling.passed, basis.passed, parts, True)


def support_size_window_check(g: Window, A: PointSet, B: PointSet) -> Verdict:
    """With |supp g| = |B|: G(g, A, B) is a basis iff |g| is constant on E = supp g,
    (E, B) is spectral and (E, A) tiles. For d = 2 and 1 < |A|, |B| < p^2 a
    basis also forces E to be the graph of a function after a linear change
    of variables (one of E and A is a line, so E meets each coset of some
    line once).
    """
    params = check_same_params(g.params, A, B)
    E = g.support
    if not E or E.size != B.size:
        raise PreconditionError(
            f"|supp g| = {E.size} must equal |B| = {B.size} and be nonzero",
            {"support_size": E.size, "B_size": B.size},
        )
    basis = is_orthonormal_basis(GaborSystem(g, A, B), scale_free=True)
    parts = {
        "basis": basis,
        "modulus": _modulus_constant_on_support(g, "modulus_constant"),
        "spectral": is_spectral_pair(E, B),
        "tiling": is_tiling_pair(E, A),
    }
    conclusions = all(parts[k].passed for k in ("modulus", "spectral", "tiling"))
    if params.d == 2 and 1 < A.size < params.size and 1 < B.size < params.size:
        parts["graph"] = is_graph_in_some_direction(E)
        if basis.passed and not parts["graph"].passed:
            return Verdict(
                check="support_size_window",
                passed=False,
                witness={"basis": True, "graph": False},
                parts=parts,
                authoritative=basis.authoritative,
            )
    return _agreement("support_size_window", conclusions, basis.passed, parts, basis.authoritative)


def positive_window_check(g: Window, A: PointSet, B: PointSet) -> Verdict:
    """For g >= 0: G(g, A, B) is a basis iff g is constant on E = supp g,
    (E, B) is spectral and (E, A) tiles.
    """
    check_same_params(g.params, A, B)
    if g.backend != Backend.EXACT:
        raise DomainError("positive window check needs exact rational values", {"backend": g.backend.value})
    for i, v in enumerate(g.values):
        q = g.ops.as_rational(v)
        if q is None or q < 0:
            raise DomainError(
                f"window value at {g.params.coordinates[i]} is not a nonnegative rational",
                {"point": list(g.params.coordinates[i]), "value": str(v)},
            )
    E = g.support
    if not E:
        raise PreconditionError("positive window check needs a nonzero window", {})
    basis = is_orthonormal_basis(GaborSystem(g, A, B), scale_free=True)
    values = {g.values[i] for i in E.indices()}
    parts = {
        "basis": basis,
        "constant": _flag("constant_on_support", len(values) == 1, {"distinct_values": len(values)}),
        "spectral": is_spectral_pair(E, B),
        "tiling": is_tiling_pair(E, A),
    }
    conclusions = all(parts[k].passed for k in ("constant", "spectral", "tiling"))
    return _agreement("positive_window", conclusions, basis.passed, parts, True)


def _slices(g: Window, k: int) -> List[Window]:
    """x_1 -> g(x_1, x_2) over Z_p^k, one window per x_2 in Z_p^(d-k)."""
    params = g.params
    inner = GroupParams(params.p, k)
    count = params.p ** (params.d - k)
    return [
        Window(inner, tuple(g.values[i1 * count + i2] for i1 in range(inner.size)), g.backend)
        for i2 in range(count)
    ]


def subspace_lattice_check(g: Window, k: int) -> Verdict:
    """With A = Z_p^k x {0} and B = {0} x Z_p^(d-k), G(g, A, B) is a basis iff
    (a) on every slice x_2 the modulus of the partial transform in x_1 is
    constant, and (b) sum_{x_1} |g(x_1, x_2)|^2 does not depend on x_2.
    """
    params = g.params
    A, B = subgroup_and_complement(params, k)
    if g.is_zero():
        raise PreconditionError("subspace lattice check needs a nonzero window", {})
    ops = g.ops
    scale = g.scale ** 2 * params.size
    slices = _slices(g, k)
    bad_slice = None
    for i2, row in enumerate(slices):
        squares = dft(row).abs_sq_values()
        if len(ops.distinct(squares, scale)) > 1:
            bad_slice = i2
            break
    inner_count = slices[0].params.size
    x2_params = GroupParams(params.p, params.d - k)
    condition_a = _flag(
        "partial_transform_modulus",
        bad_slice is None,
        {"slice": list(x2_params.coordinates[bad_slice])} if bad_slice is not None else {"slices": len(slices)},
    )
    masses = [row.norm_sq() for row in slices]
    distinct_masses = ops.distinct(masses, scale)
    condition_b = _flag(
        "slice_mass",
        len(distinct_masses) == 1,
        {"distinct_masses": [ops.to_json(m) for m in distinct_masses[:2]], "inner_size": inner_count},
    )
    basis = is_orthonormal_basis(GaborSystem(g, A, B), scale_free=True)
    parts = {"basis": basis, "a": condition_a, "b": condition_b}
    return _agreement(
        "subspace_lattice",
        condition_a.passed and condition_b.passed,
        basis.passed,
        parts,
        basis.authoritative,
    )


def non_indicator_window_check(g: Window, A: PointSet, B: PointSet) -> Verdict:
    """G(g, A, B) is a basis while neither |g| nor |g^| is a multiple of an indicator."""
    check_same_params(g.params, A, B)
    basis = is_orthonormal_basis(GaborSystem(g, A, B), scale_free=True)
    modulus = _modulus_constant_on_support(g, "window_modulus_constant")
    transform_modulus = _modulus_constant_on_support(dft(g), "transform_modulus_constant")
    parts = {"basis": basis, "window_modulus": modulus, "transform_modulus": transform_modulus}
    detail = {
        "basis": basis.passed,
        "window_modulus_is_indicator": modulus.passed,
        "transform_modulus_is_indicator": transform_modulus.passed,
    }
    passed = basis.passed and not modulus.passed and not transform_modulus.passed
    if passed:
        return Verdict(check="non_indicator_window", passed=True, certificate=detail, parts=parts,
                       authoritative=basis.authoritative)
    return Verdict(check="non_indicator_window", passed=False, witness=detail, parts=parts,
                   authoritative=basis.authoritative)
