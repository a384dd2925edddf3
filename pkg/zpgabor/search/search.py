"""Public search operations: thin wrappers that build a SearchJob and run it."""
from __future__ import annotations

from typing import Optional, Sequence

from zpgabor.engine.engine import Engine
from zpgabor.fourier.fourier import Window
from zpgabor.group.group import GroupParams
from zpgabor.models.search import SearchJob, SearchKind, SearchReport
from zpgabor.models.verdict import Verdict
from zpgabor.search.enumeration import (
    FugledeSweep,
    SpectrumPredicate,
    find_spectrum,
    find_tiling_complement,
    search_spectrum,
    search_tiling_complement,
)

__all__ = [
    "enumerate_tiles",
    "enumerate_spectral",
    "fuglede_compare",
    "fuglede_verdict",
    "find_spectrum",
    "find_tiling_complement",
    "exotic_window_hunt",
    "weighted_spectrum_sweep",
    "nonseparable_hunt",
]


def _run(job: SearchJob, engine: Optional[Engine]) -> SearchReport:
    return (engine or Engine()).run(job)


def enumerate_tiles(params: GroupParams, engine: Optional[Engine] = None, **options) -> SearchReport:
    """Every nonempty E that tiles Z_p^d, each with its smallest complement."""
    return _run(SearchJob(p=params.p, d=params.d, kind=SearchKind.ALL_TILES, **options), engine)


def enumerate_spectral(params: GroupParams, engine: Optional[Engine] = None, **options) -> SearchReport:
    """Every nonempty E that has a spectrum, each with its smallest spectrum."""
    return _run(SearchJob(p=params.p, d=params.d, kind=SearchKind.ALL_SPECTRAL, **options), engine)


def fuglede_verdict(report: SearchReport) -> Verdict:
    counts = report.counts
    detail = {
        "subsets": report.enumerated,
        "tiles": counts.get("tiles", 0),
        "spectral": counts.get("spectral", 0),
    }
    if not report.exhausted:
        return Verdict(
            check="fuglede",
            passed=False,
            witness={"reason": "truncated", "truncated_reason": report.truncated_reason, **detail},
        )
    if report.found:
        first = report.certificates[0]
        return Verdict(
            check="fuglede",
            passed=False,
            witness={
                "reason": "mismatch",
                "mismatches": report.found,
                "set": first["set"],
                "tiles": first["complement"] is not None,
                "spectral": first["spectrum"] is not None,
                **detail,
            },
        )
    return Verdict(check="fuglede", passed=True, certificate=detail)


def fuglede_compare(
    params: GroupParams,
    engine: Optional[Engine] = None,
    tiling_search: SpectrumPredicate = search_tiling_complement,
    spectrum_search: SpectrumPredicate = search_spectrum,
    **options,
) -> Verdict:
    """Tiles and spectral sets of Z_p^d coincide, decided over every subset.

    Substitute predicates run in-process; they exist to check that the
    comparison notices a broken predicate.
    """
    job = SearchJob(p=params.p, d=params.d, kind=SearchKind.FUGLEDE_COMPARE, **options)
    if tiling_search is search_tiling_complement and spectrum_search is search_spectrum:
        report = _run(job, engine)
    else:
        kernel = FugledeSweep(job, tiling_search=tiling_search, spectrum_search=spectrum_search)
        report = (engine or Engine()).run(job, kernel=kernel)
    return fuglede_verdict(report)


def exotic_window_hunt(
    params: GroupParams,
    alphabet: Sequence[str],
    engine: Optional[Engine] = None,
    **options,
) -> SearchReport:
    """Windows over `alphabet` generating an orthonormal basis while avoiding
    every structural property a basis window usually has."""
    job = SearchJob(
        p=params.p, d=params.d, kind=SearchKind.EXOTIC_WINDOW, alphabet=[str(a) for a in alphabet], **options
    )
    return _run(job, engine)


def weighted_spectrum_sweep(
    params: GroupParams,
    alphabet: Sequence[str],
    engine: Optional[Engine] = None,
    **options,
) -> SearchReport:
    job = SearchJob(
        p=params.p, d=params.d, kind=SearchKind.WEIGHTED_SWEEP, alphabet=[str(a) for a in alphabet], **options
    )
    return _run(job, engine)


def nonseparable_hunt(window: Window, engine: Optional[Engine] = None, **options) -> SearchReport:
    """Orthonormal bases of time-frequency shifts of `window` indexed by non-product sets. Exploratory."""
    params = window.params
    job = SearchJob(p=params.p, d=params.d, kind=SearchKind.NONSEPARABLE, window=window.to_document(), **options)
    return _run(job, engine)
