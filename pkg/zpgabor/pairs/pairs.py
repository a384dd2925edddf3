"""Spectral pairs, tiling pairs, packings and weighted spectra.

All decisions here are exact. A character sum sum_x w(x) zeta^(x.m) vanishes
iff the weight collected on each residue class of x.m mod p is the same for
every class, so no field arithmetic is needed beyond bucket sums.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from itertools import combinations
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from zpgabor.cyclotomic.cyclotomic import group_ring_is_zero
from zpgabor.errors import DomainError, PreconditionError
from zpgabor.fourier.fourier import Window, dft
from zpgabor.group.group import GroupParams, Point, PointSet, check_same_params
from zpgabor.models.documents import Backend
from zpgabor.models.verdict import Verdict


@dataclass(frozen=True)
class WeightFn:
    """A nonnegative rational weight w on Z_p^d."""
    window: Window

    def __post_init__(self):
        if self.window.backend != Backend.EXACT:
            raise DomainError("weights live in the exact backend", {"backend": self.window.backend.value})
        for i, v in enumerate(self.window.values):
            q = self.window.ops.as_rational(v)
            if q is None or q < 0:
                raise DomainError(
                    f"weight at {self.window.params.coordinates[i]} is not a nonnegative rational",
                    {"point": list(self.window.params.coordinates[i]), "value": str(v)},
                )

    @classmethod
    def from_values(cls, params: GroupParams, values: Sequence[Fraction]) -> WeightFn:
        return cls(Window(params, tuple(Fraction(v) for v in values)))

    @classmethod
    def uniform(cls, E: PointSet) -> WeightFn:
        """|E|^-1 1_E."""
        if not E:
            raise PreconditionError("uniform weight needs a nonempty set", {})
        c = Fraction(1, E.size)
        return cls(Window(E.params, tuple(c if i in E else 0 for i in range(E.params.size))))

    @property
    def params(self) -> GroupParams:
        return self.window.params

    @cached_property
    def rationals(self) -> Tuple[Fraction, ...]:
        return tuple(v.to_rational() for v in self.window.values)

    @property
    def support(self) -> PointSet:
        return self.window.support

    @property
    def mass(self) -> Fraction:
        return sum(self.rationals, Fraction(0))

    def normalized(self) -> WeightFn:
        mass = self.mass
        if mass == 0:
            raise PreconditionError("cannot normalize the zero weight", {})
        return WeightFn.from_values(self.params, [v / mass for v in self.rationals])

    def is_constant_on_support(self) -> bool:
        return len({self.rationals[i] for i in self.support.indices()}) <= 1


def weighted_sum_is_zero(params: GroupParams, indices: Sequence[int], weights: Sequence[Fraction], m: int) -> bool:
    k = params.dot_table(m)
    buckets = [Fraction(0)] * params.p
    for x, w in zip(indices, weights):
        buckets[int(k[x])] += w
    return group_ring_is_zero(buckets)


def character_sum_is_zero(params: GroupParams, indices: Sequence[int], m: int) -> bool:
    counts = np.bincount(params.dot_table(m)[list(indices)], minlength=params.p)
    return group_ring_is_zero(counts.tolist())


def first_nonorthogonal_pair(
    params: GroupParams,
    indices: Sequence[int],
    B: PointSet,
    weights: Optional[Sequence[Fraction]] = None,
) -> Optional[Tuple[int, int]]:
    """First (b, b') in B, b < b', whose characters are not orthogonal on the weighted set."""
    seen: Dict[int, bool] = {}
    for b, b2 in combinations(B.indices(), 2):
        delta = params.sub_indices(b, b2)
        if delta not in seen:
            if weights is None:
                seen[delta] = character_sum_is_zero(params, indices, delta)
            else:
                seen[delta] = weighted_sum_is_zero(params, indices, weights, delta)
        if not seen[delta]:
            return b, b2
    return None


def is_spectral_pair(E: PointSet, B: PointSet) -> Verdict:
    params = check_same_params(E, B)
    if not E:
        raise PreconditionError("spectral test needs a nonempty E", {})
    if B.size != E.size:
        return Verdict(
            check="spectral",
            passed=False,
            witness={"reason": "size", "E_size": E.size, "B_size": B.size},
        )
    bad = first_nonorthogonal_pair(params, E.indices(), B)
    if bad is not None:
        b, b2 = bad
        return Verdict(
            check="spectral",
            passed=False,
            witness={"b": list(params.coordinates[b]), "b_prime": list(params.coordinates[b2])},
        )
    return Verdict(check="spectral", passed=True, certificate={"size": E.size})


def cover_counts(E: PointSet, A: PointSet) -> np.ndarray:
    """Number of a in A with x - a in E, for every x."""
    params = check_same_params(E, A)
    counts = np.zeros(params.size, dtype=np.int64)
    e_idx = np.asarray(E.indices(), dtype=np.int64)
    for a in A.indices():
        np.add.at(counts, params.translation_table(a)[e_idx], 1)
    return counts


def is_tiling_pair(E: PointSet, A: PointSet) -> Verdict:
    params = check_same_params(E, A)
    counts = cover_counts(E, A)
    bad = np.flatnonzero(counts != 1)
    if bad.size:
        x = int(bad[0])
        return Verdict(
            check="tiling",
            passed=False,
            witness={"point": list(params.coordinates[x]), "count": int(counts[x])},
        )
    return Verdict(check="tiling", passed=True, certificate={"cover_counts": counts.tolist()})


def is_packing(E: PointSet, A: PointSet) -> Verdict:
    params = check_same_params(E, A)
    counts = cover_counts(E, A)
    bad = np.flatnonzero(counts > 1)
    if bad.size:
        x = int(bad[0])
        return Verdict(
            check="packing",
            passed=False,
            witness={"point": list(params.coordinates[x]), "count": int(counts[x])},
        )
    return Verdict(check="packing", passed=True, certificate={"max_cover": int(counts.max(initial=0))})


def weighted_spectrum_check(w: WeightFn, B: PointSet) -> Verdict:
    """Characters indexed by B form an orthogonal basis of L^2(w).

    Orthogonal characters are nonzero in L^2(w), so they span it exactly when
    there are |supp(w)| of them.
    """
    params = check_same_params(w.params, B)
    support = w.support
    if not support:
        raise PreconditionError("weight has empty support", {})
    indices = support.indices()
    bad = first_nonorthogonal_pair(params, indices, B, [w.rationals[i] for i in indices])
    if bad is not None:
        b, b2 = bad
        return Verdict(
            check="weighted_spectrum",
            passed=False,
            witness={
                "reason": "orthogonality",
                "b": list(params.coordinates[b]),
                "b_prime": list(params.coordinates[b2]),
            },
        )
    if B.size != support.size:
        return Verdict(
            check="weighted_spectrum",
            passed=False,
            witness={"reason": "incomplete", "B_size": B.size, "support_size": support.size},
        )
    return Verdict(check="weighted_spectrum", passed=True, certificate={"size": B.size})


def square_sum_identity(w: WeightFn, B: PointSet, x: Optional[Point] = None) -> Verdict:
    """sum_{b in B} |w^(x - b)|^2 = p^(-2d), at x or at every x when x is None.

    Raises PreconditionError when w is not normalized or (w, B) is not a
    weighted spectral pair; an identity failure is a failed verdict.
    """
    params = check_same_params(w.params, B)
    if w.mass != 1:
        raise PreconditionError("weight must be normalized to total mass 1", {"mass": str(w.mass)})
    spectrum = weighted_spectrum_check(w, B)
    if not spectrum:
        raise PreconditionError("(w, B) is not a weighted spectral pair", {"witness": spectrum.witness})
    expected = Fraction(1, params.size ** 2)
    transform = dft(w.window)
    squares = transform.abs_sq_values()
    points = [x.index] if x is not None else range(params.size)
    b_idx = B.indices()
    for xi in points:
        total = sum((squares[params.sub_indices(xi, b)] for b in b_idx), transform.ops.zero(params.p))
        if total != expected:
            return Verdict(
                check="square_sum",
                passed=False,
                witness={"x": list(params.coordinates[xi]), "value": str(total), "expected": str(expected)},
            )
    return Verdict(
        check="square_sum",
        passed=True,
        certificate={"points_checked": len(points), "value": str(expected)},
    )
