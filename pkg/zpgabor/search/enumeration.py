"""Search kernels for spectra, tiling complements and subset sweeps.

Both searches look for sets containing 0: spectra and tiling complements are
closed under translation, so the lexicographically smallest one (as a sorted
index sequence) starts at 0 and is the first hit of a depth-first search that
adds indices in increasing order.
"""
from __future__ import annotations

import logging
import time
from abc import ABC, abstractmethod
from dataclasses import dataclass, field
from typing import Any, Callable, Dict, Iterator, List, Optional

from zpgabor.config import get_settings
from zpgabor.errors import CapExceededError, FieldMismatchError
from zpgabor.group.group import GroupParams, PointSet
from zpgabor.models.search import SearchJob
from zpgabor.pairs.pairs import character_sum_is_zero


class BudgetExhausted(Exception):
    def __init__(self, reason: str):
        super().__init__(reason)
        self.reason = reason


class Budget:
    """Node and wall-clock limits shared by everything a shard runs."""

    def __init__(self, node_budget: Optional[int] = None, time_limit: Optional[float] = None):
        self.node_budget = node_budget if node_budget is not None else get_settings().default_node_budget
        self.time_limit = time_limit
        self.nodes = 0
        self._start = time.monotonic()

    def tick(self, n: int = 1) -> None:
        self.nodes += n
        if self.nodes > self.node_budget:
            raise BudgetExhausted("node_budget")
        if self.time_limit is not None and self.nodes % 256 == 0 and time.monotonic() - self._start > self.time_limit:
            raise BudgetExhausted("time_limit")

    def check_time(self) -> None:
        if self.time_limit is not None and time.monotonic() - self._start > self.time_limit:
            raise BudgetExhausted("time_limit")


@dataclass
class CandidateResult:
    found: int = 0
    representatives: int = 0
    counts: Dict[str, int] = field(default_factory=dict)
    certificates: List[Dict[str, Any]] = field(default_factory=list)

    def bump(self, key: str, n: int = 1) -> None:
        self.counts[key] = self.counts.get(key, 0) + n


def iter_bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def zero_set(params: GroupParams, E: PointSet) -> int:
    """Mask of nonzero m with sum over x in E of zeta^(x.m) = 0."""
    idx = E.indices()
    mask = 0
    for m in range(1, params.size):
        if character_sum_is_zero(params, idx, m):
            mask |= 1 << m
    return mask


def difference_adjacency(params: GroupParams, allowed: int) -> List[int]:
    """adj[i] = mask of j with j - i in `allowed`."""
    adj = []
    for i in range(params.size):
        row = 0
        for j in range(params.size):
            if allowed >> params.sub_indices(j, i) & 1:
                row |= 1 << j
        adj.append(row)
    return adj


def clique_search(
    adjacency: List[int],
    size: int,
    budget: Budget,
    start: int = 0,
) -> Iterator[List[int]]:
    """Increasing index sequences containing `start`, pairwise adjacent, of the given size.

    Yields in lexicographic order.
    """
    if size <= 0:
        return
    if size == 1:
        budget.tick()
        yield [start]
        return

    def extend(chosen: List[int], candidates: int) -> Iterator[List[int]]:
        budget.tick()
        need = size - len(chosen)
        if need == 0:
            yield list(chosen)
            return
        if candidates.bit_count() < need:
            return
        for j in iter_bits(candidates):
            rest = candidates & adjacency[j] & ~((1 << (j + 1)) - 1)
            chosen.append(j)
            yield from extend(chosen, rest)
            chosen.pop()

    initial = adjacency[start] & ~((1 << (start + 1)) - 1)
    yield from extend([start], initial)


def spectrum_candidates(params: GroupParams, E: PointSet) -> List[int]:
    return difference_adjacency(params, zero_set(params, E))


def search_spectrum(E: PointSet, budget: Budget) -> Optional[PointSet]:
    params = E.params
    if not E:
        return None
    adjacency = spectrum_candidates(params, E)
    for clique in clique_search(adjacency, E.size, budget):
        return PointSet.from_indices(params, clique)
    return None


def search_tiling_complement(E: PointSet, budget: Budget) -> Optional[PointSet]:
    params = E.params
    n = params.size
    if not E or n % E.size:
        return None
    target = n // E.size
    full = (1 << n) - 1
    e_idx = E.indices()
    masks = [0] * n
    for a in range(n):
        table = params.translation_table(a)
        for e in e_idx:
            masks[a] |= 1 << int(table[e])
    # coverers[u] = translates a with u in E + a, increasing
    coverers: List[List[int]] = [[] for _ in range(n)]
    for a in range(n):
        for u in iter_bits(masks[a]):
            coverers[u].append(a)

    def extend(chosen: List[int], covered: int) -> Optional[List[int]]:
        budget.tick()
        if covered == full:
            return list(chosen) if len(chosen) == target else None
        if len(chosen) == target:
            return None
        last = chosen[-1]
        uncovered = (~covered & full)
        u = (uncovered & -uncovered).bit_length() - 1
        if not any(a > last and not masks[a] & covered for a in coverers[u]):
            return None
        for a in range(last + 1, n):
            if masks[a] & covered:
                continue
            chosen.append(a)
            found = extend(chosen, covered | masks[a])
            chosen.pop()
            if found is not None:
                return found
        return None

    found = extend([0], masks[0])
    return PointSet.from_indices(params, found) if found is not None else None


def _run_bounded(fn: Callable[[PointSet, Budget], Optional[PointSet]], E: PointSet, node_budget: Optional[int]) -> Optional[PointSet]:
    budget = Budget(node_budget)
    try:
        return fn(E, budget)
    except BudgetExhausted as e:
        logging.warning(f"Search on {E.size}-point set in Z_{E.params.p}^{E.params.d} stopped: {e.reason}")
        raise CapExceededError(
            f"search stopped after {budget.nodes} nodes ({e.reason})",
            {"nodes": budget.nodes, "reason": e.reason},
        )


def find_spectrum(E: PointSet, node_budget: Optional[int] = None) -> Optional[PointSet]:
    """Lexicographically smallest B with (E, B) spectral, or None."""
    return _run_bounded(search_spectrum, E, node_budget)


def find_tiling_complement(E: PointSet, node_budget: Optional[int] = None) -> Optional[PointSet]:
    """Lexicographically smallest A with (E, A) a tiling pair, or None."""
    return _run_bounded(search_tiling_complement, E, node_budget)


def translation_orbit_minimum(E: PointSet) -> int:
    return min(E.translate(E.params.point(a)).mask for a in range(E.params.size))


def shard_candidates(space: int, index: int, count: int, start: int = 0) -> Iterator[int]:
    """Candidates s in [start, space) with s = index mod count, increasing."""
    first = start + (index - start) % count
    return iter(range(first, space, count))


def check_subset_space(params: GroupParams) -> int:
    space = 1 << params.size
    cap = get_settings().subset_enumeration_cap
    if space > cap:
        raise CapExceededError(
            f"2^{params.size} subsets exceed the subset enumeration cap {cap}",
            {"subsets": space, "cap": cap},
        )
    return space



SpectrumPredicate = Callable[[PointSet, Budget], Optional[PointSet]]


class SearchKernel(ABC):
    """A search kind: a space of candidate integers and how to evaluate one."""
    exploratory = False
    first_candidate = 0

    def __init__(self, job: SearchJob):
        self.job = job
        self.params = GroupParams(job.p, job.d)

    @property
    @abstractmethod
    def space(self) -> int:
        pass

    @abstractmethod
    def evaluate(self, candidate: int, budget: Budget) -> CandidateResult:
        pass


class SubsetSweep(SearchKernel):
    """All nonempty subsets of Z_p^d, as masks in integer order."""
    first_candidate = 1

    def __init__(self, job: SearchJob):
        super().__init__(job)
        self._space = check_subset_space(self.params)

    @property
    def space(self) -> int:
        return self._space

    def representative(self, E: PointSet) -> int:
        if not self.job.symmetry_reduction:
            return 0
        return int(translation_orbit_minimum(E) == E.mask)


class TileSweep(SubsetSweep):
    def evaluate(self, candidate: int, budget: Budget) -> CandidateResult:
        result = CandidateResult()
        E = PointSet(self.params, candidate)
        A = search_tiling_complement(E, budget)
        if A is not None:
            result.found = 1
            result.bump("tiles")
            result.bump(f"size_{E.size}")
            result.representatives = self.representative(E)
            result.certificates.append({"candidate": candidate, "set": E.to_lists(), "complement": A.to_lists()})
        return result


class SpectralSweep(SubsetSweep):
    def evaluate(self, candidate: int, budget: Budget) -> CandidateResult:
        result = CandidateResult()
        E = PointSet(self.params, candidate)
        B = search_spectrum(E, budget)
        if B is not None:
            result.found = 1
            result.bump("spectral")
            result.bump(f"size_{E.size}")
            result.representatives = self.representative(E)
            result.certificates.append({"candidate": candidate, "set": E.to_lists(), "spectrum": B.to_lists()})
        return result


class FugledeSweep(SubsetSweep):
    """Every subset is tested both ways; disagreements are the certificates."""

    def __init__(
        self,
        job: SearchJob,
        tiling_search: SpectrumPredicate = search_tiling_complement,
        spectrum_search: SpectrumPredicate = search_spectrum,
    ):
        super().__init__(job)
        self.tiling_search = tiling_search
        self.spectrum_search = spectrum_search

    def evaluate(self, candidate: int, budget: Budget) -> CandidateResult:
        result = CandidateResult()
        E = PointSet(self.params, candidate)
        A = self.tiling_search(E, budget)
        B = self.spectrum_search(E, budget)
        if A is not None:
            result.bump("tiles")
        if B is not None:
            result.bump("spectral")
        if (A is None) != (B is None):
            result.found = 1
            result.bump("mismatches")
            result.certificates.append({
                "candidate": candidate,
                "set": E.to_lists(),
                "complement": A.to_lists() if A is not None else None,
                "spectrum": B.to_lists() if B is not None else None,
            })
        elif A is not None:
            result.representatives = self.representative(E)
        return result


class SingleSearch(SearchKernel):
    """One bounded search for a set paired with the job's target."""
    label = "set"

    def __init__(self, job: SearchJob):
        super().__init__(job)
        self.target = PointSet.from_document(job.target)
        if self.target.params != self.params:
            raise FieldMismatchError(
                "target set does not live in the job's group",
                {"job": [job.p, job.d], "target": [job.target.p, job.target.d]},
            )

    @property
    def space(self) -> int:
        return 1

    @abstractmethod
    def search(self, budget: Budget) -> Optional[PointSet]:
        pass

    def evaluate(self, candidate: int, budget: Budget) -> CandidateResult:
        result = CandidateResult()
        found = self.search(budget)
        if found is None:
            result.bump("none")
        else:
            result.found = 1
            result.certificates.append({
                "candidate": candidate,
                "set": self.target.to_lists(),
                self.label: found.to_lists(),
            })
        return result


class FindSpectrum(SingleSearch):
    label = "spectrum"

    def search(self, budget: Budget) -> Optional[PointSet]:
        return search_spectrum(self.target, budget)


class FindTilingComplement(SingleSearch):
    label = "complement"

    def search(self, budget: Budget) -> Optional[PointSet]:
        return search_tiling_complement(self.target, budget)
