"""Window hunts: exotic Gabor windows, weighted spectra and non-separable
index sets.

Candidate windows and weights are enumerated as base-K digit strings over a
finite value alphabet, the first point being the most significant digit.
"""
from __future__ import annotations

import itertools
from fractions import Fraction
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

import numpy as np

from zpgabor.config import get_settings
from zpgabor.errors import DomainError
from zpgabor.fourier.backends import FloatBackend, get_backend
from zpgabor.fourier.fourier import Window, dft
from zpgabor.gabor.system import GaborSystem, is_orthonormal_basis
from zpgabor.group.group import MAX_DIMENSION, GroupParams, PointSet
from zpgabor.models.documents import Backend
from zpgabor.models.search import SearchJob
from zpgabor.pairs.pairs import WeightFn, square_sum_identity, weighted_sum_is_zero
from zpgabor.search.enumeration import (
    Budget,
    CandidateResult,
    SearchKernel,
    clique_search,
    difference_adjacency,
    iter_bits,
    search_tiling_complement,
)


def parse_alphabet(alphabet: Sequence[str]) -> List[Fraction]:
    try:
        values = [Fraction(a.strip()) for a in alphabet]
    except (ValueError, ZeroDivisionError):
        raise DomainError(f"alphabet entries must be rationals, got {list(alphabet)}", {"alphabet": list(alphabet)})
    if len(set(values)) != len(values):
        raise DomainError("alphabet has repeated values", {"alphabet": list(alphabet)})
    return values


def digits(candidate: int, base: int, length: int) -> List[int]:
    out = [0] * length
    for i in range(length - 1, -1, -1):
        candidate, out[i] = divmod(candidate, base)
    return out


def is_product_window(g: Window) -> bool:
    """Whether g is a product of single-variable functions.

    A d-way array has that form iff every unfolding (one axis against the
    rest) has rank at most 1, i.e. all its 2 x 2 minors vanish.
    """
    params = g.params
    if params.d == 1:
        return True
    p = params.p
    arr = np.empty(params.size, dtype=object)
    arr[:] = list(g.values)
    arr = arr.reshape((p,) * params.d)
    ops = g.ops
    for axis in range(params.d):
        matrix = np.moveaxis(arr, axis, 0).reshape(p, -1)
        cols = matrix.shape[1]
        for r1, r2 in itertools.combinations(range(p), 2):
            for c1, c2 in itertools.combinations(range(cols), 2):
                minor = matrix[r1, c1] * matrix[r2, c2] - matrix[r1, c2] * matrix[r2, c1]
                if not ops.is_zero(minor, g.scale ** 2):
                    return False
    return True


def ambiguity_zero_masks(g: Window, prefilter: bool) -> List[int]:
    """masks[u] has bit v set iff V(u, v) = 0, confirmed exactly.

    With `prefilter` the float shadow screens out entries that are clearly
    nonzero; only the survivors are evaluated exactly.
    """
    params = g.params
    exact = get_backend(Backend.EXACT)
    everything = list(range(params.size))
    shadow = FloatBackend(get_settings().prefilter_tolerance) if prefilter else None
    if shadow is not None:
        approx_values = [shadow.coerce(params.p, v) for v in g.values]
        scale = sum(abs(v) ** 2 for v in approx_values)
    masks = []
    for u in everything:
        candidates = everything
        if shadow is not None:
            approx = shadow.ambiguity(params, approx_values, u, everything)
            candidates = [v for v, z in zip(everything, approx) if shadow.is_zero(z, scale)]
        mask = 0
        if candidates:
            for v, value in zip(candidates, exact.ambiguity(params, g.values, u, candidates)):
                if value.is_zero():
                    mask |= 1 << v
        masks.append(mask)
    return masks


def find_gabor_systems(
    params: GroupParams,
    masks: List[int],
    budget: Budget,
    skip_b_size: Optional[int] = None,
) -> Iterator[Tuple[PointSet, PointSet]]:
    """(A, B) with 0 in A and B and G(g, A, B) an orthonormal basis, from V's zero masks."""
    n = params.size
    translations = 0
    for u in range(1, n):
        if masks[u] & 1:
            translations |= 1 << u
    modulations = masks[0] & ~1
    a_adjacency = difference_adjacency(params, translations)
    for a_size in range(1, n + 1):
        if n % a_size or n // a_size == skip_b_size:
            continue
        for a_clique in clique_search(a_adjacency, a_size, budget):
            A = PointSet.from_indices(params, a_clique)
            allowed = modulations
            for da in A.differences():
                if da:
                    allowed &= masks[da]
            b_adjacency = difference_adjacency(params, allowed)
            for b_clique in clique_search(b_adjacency, n // a_size, budget):
                yield A, PointSet.from_indices(params, b_clique)


class ExoticWindowHunt(SearchKernel):
    """Windows over an alphabet with an orthonormal Gabor system such that g is
    not a product, not nonnegative, |g| and |g^| are not multiples of
    indicators, |supp g| differs from |B| and supp g does not tile.
    """

    def __init__(self, job: SearchJob):
        super().__init__(job)
        self.alphabet = parse_alphabet(job.alphabet)
        self._space = len(self.alphabet) ** self.params.size

    @property
    def space(self) -> int:
        return self._space

    def window(self, candidate: int) -> Window:
        return Window(
            self.params,
            tuple(self.alphabet[i] for i in digits(candidate, len(self.alphabet), self.params.size)),
        )

    @staticmethod
    def _modulus_varies(window: Window) -> bool:
        squares = [window.ops.abs_sq(window.values[i]) for i in window.support.indices()]
        return len(window.ops.distinct(squares)) > 1

    def properties(self, g: Window, budget: Budget) -> Dict[str, bool]:
        return {
            "non_product": not is_product_window(g),
            "non_positive": any(v.to_rational() < 0 for v in g.values),
            "modulus_not_indicator": self._modulus_varies(g),
            "transform_modulus_not_indicator": self._modulus_varies(dft(g)),
            "non_tile": search_tiling_complement(g.support, budget) is None,
        }

    def evaluate(self, candidate: int, budget: Budget) -> CandidateResult:
        result = CandidateResult()
        g = self.window(candidate)
        if g.is_zero():
            result.bump("zero_windows")
            return result
        flags = self.properties(g, budget)
        for name, holds in flags.items():
            if holds:
                result.bump(name)
        if not all(flags.values()):
            return result
        result.bump("screened")
        E = g.support
        masks = ambiguity_zero_masks(g, self.job.prefilter)
        for A, B in find_gabor_systems(self.params, masks, budget, skip_b_size=E.size):
            verdict = is_orthonormal_basis(GaborSystem(g, A, B), scale_free=True)
            if not verdict:
                result.bump("rejected_by_exact_check")
                continue
            result.found += 1
            result.certificates.append({
                "candidate": candidate,
                "window": [str(v) for v in g.values],
                "A": A.to_lists(),
                "B": B.to_lists(),
                "flags": {**flags, "size_mismatch": E.size != B.size},
            })
            break
        return result


class WeightedSpectrumSweep(SearchKernel):
    """Nonnegative weights over an alphabet and every weighted spectrum through 0.

    Constancy on the support and the square-sum identity are recorded for every
    pair found; both are expected to hold.
    """
    first_candidate = 1

    def __init__(self, job: SearchJob):
        super().__init__(job)
        self.alphabet = parse_alphabet(job.alphabet)
        if any(v < 0 for v in self.alphabet):
            raise DomainError("weights must be nonnegative", {"alphabet": job.alphabet})
        self._space = len(self.alphabet) ** self.params.size

    @property
    def space(self) -> int:
        return self._space

    def weight(self, candidate: int) -> WeightFn:
        return WeightFn.from_values(
            self.params,
            [self.alphabet[i] for i in digits(candidate, len(self.alphabet), self.params.size)],
        )

    def evaluate(self, candidate: int, budget: Budget) -> CandidateResult:
        result = CandidateResult()
        w = self.weight(candidate)
        support = w.support
        if not support:
            result.bump("zero_weights")
            return result
        params = self.params
        indices = support.indices()
        weights = [w.rationals[i] for i in indices]
        allowed = 0
        for m in range(1, params.size):
            budget.tick()
            if weighted_sum_is_zero(params, indices, weights, m):
                allowed |= 1 << m
        normalized = w.normalized()
        constant = w.is_constant_on_support()
        spectra = 0
        for clique in clique_search(difference_adjacency(params, allowed), support.size, budget):
            B = PointSet.from_indices(params, clique)
            spectra += 1
            result.bump("pairs")
            if not constant:
                result.bump("non_constant_pairs")
                result.certificates.append({
                    "candidate": candidate,
                    "weight": [str(v) for v in w.rationals],
                    "spectrum": B.to_lists(),
                    "reason": "non_constant",
                })
            identity = square_sum_identity(normalized, B)
            result.bump("square_sum_checked")
            if not identity:
                result.bump("square_sum_failures")
                result.certificates.append({
                    "candidate": candidate,
                    "weight": [str(v) for v in w.rationals],
                    "spectrum": B.to_lists(),
                    "reason": "square_sum",
                    "witness": identity.witness,
                })
        if spectra:
            result.found = 1
            result.bump("weights_with_spectrum")
        return result


class NonseparableHunt(SearchKernel):
    """Index sets S in Z_p^d x Z_p^d, |S| = p^d, with {g(x - a) zeta^(x.b)}_{(a,b) in S}
    orthonormal and S not a product A x B. Exploratory.
    """
    exploratory = True

    def __init__(self, job: SearchJob):
        super().__init__(job)
        if 2 * job.d > MAX_DIMENSION:
            raise DomainError(f"index sets live in Z_p^{2 * job.d}; d must be at most {MAX_DIMENSION // 2}", {"d": job.d})
        self.window = Window.from_document(job.window)
        if self.window.params != self.params:
            raise DomainError("window does not live in the job's group", {"job": [job.p, job.d]})
        if self.window.backend != Backend.EXACT:
            raise DomainError("the hunt confirms systems exactly and needs an exact window", {"backend": self.window.backend.value})
        self.pairs = GroupParams(job.p, 2 * job.d)

    @property
    def space(self) -> int:
        return 1

    def evaluate(self, candidate: int, budget: Budget) -> CandidateResult:
        result = CandidateResult()
        n = self.params.size
        masks = ambiguity_zero_masks(self.window, self.job.prefilter)
        allowed = 0
        for u in range(n):
            for v in iter_bits(masks[u]):
                if u or v:
                    allowed |= 1 << (u * n + v)
        adjacency = difference_adjacency(self.pairs, allowed)
        for clique in clique_search(adjacency, n, budget):
            result.bump("systems")
            translations = sorted({s // n for s in clique})
            modulations = sorted({s % n for s in clique})
            if len(translations) * len(modulations) == n:
                result.bump("separable")
                continue
            result.bump("nonseparable")
            result.found += 1
            result.certificates.append({
                "candidate": len(result.certificates),
                "pairs": [
                    [list(self.params.coordinates[s // n]), list(self.params.coordinates[s % n])]
                    for s in clique
                ],
            })
        return result
