import logging
import time
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path
from typing import Dict, List, Optional, Type, Union

import psutil

from zpgabor.config import get_settings
from zpgabor.models.search import SearchJob, SearchKind, SearchReport, merge_reports
from zpgabor.search.enumeration import (
    Budget,
    BudgetExhausted,
    CandidateResult,
    FindSpectrum,
    FindTilingComplement,
    FugledeSweep,
    SearchKernel,
    SpectralSweep,
    TileSweep,
    shard_candidates,
)
from zpgabor.search.question import ExoticWindowHunt, NonseparableHunt, WeightedSpectrumSweep
from zpgabor.storage.checkpoint import CheckpointStore
from zpgabor.storage.storage import ReportStorage

KERNELS: Dict[SearchKind, Type[SearchKernel]] = {
    SearchKind.ALL_TILES: TileSweep,
    SearchKind.ALL_SPECTRAL: SpectralSweep,
    SearchKind.FUGLEDE_COMPARE: FugledeSweep,
    SearchKind.FIND_SPECTRUM: FindSpectrum,
    SearchKind.FIND_TILING: FindTilingComplement,
    SearchKind.EXOTIC_WINDOW: ExoticWindowHunt,
    SearchKind.WEIGHTED_SWEEP: WeightedSpectrumSweep,
    SearchKind.NONSEPARABLE: NonseparableHunt,
}


def make_kernel(job: SearchJob) -> SearchKernel:
    return KERNELS[job.kind](job)


def _absorb(report: SearchReport, result: CandidateResult) -> None:
    report.enumerated += 1
    report.found += result.found
    for key, value in result.counts.items():
        report.bump(key, value)
    report.certificates.extend(result.certificates)
    if report.orbit_representatives is not None:
        report.orbit_representatives += result.representatives


def run_shard(
    job: SearchJob,
    checkpoint_path: Optional[Union[str, Path]] = None,
    checkpoint_interval: Optional[int] = None,
    kernel: Optional[SearchKernel] = None,
) -> SearchReport:
    """Visit every candidate of the job's shard in increasing order.

    The report is exhausted only when the loop reached the end of the shard.
    A budget stop leaves a checkpoint behind (when a path is given); the next
    run of the same job resumes after the last fully evaluated candidate with
    a fresh budget.
    """
    kernel = kernel or make_kernel(job)
    interval = checkpoint_interval or get_settings().checkpoint_interval
    store = CheckpointStore(checkpoint_path) if checkpoint_path else None

    report = SearchReport(job=job, exploratory=kernel.exploratory)
    if job.symmetry_reduction:
        report.orbit_representatives = 0
    start = kernel.first_candidate
    checkpoint = store.load(job) if store else None
    if checkpoint is not None:
        report = checkpoint.partial_report
        report.truncated_reason = None
        start = checkpoint.last_candidate + 1
    base_nodes = report.nodes

    budget = Budget(job.node_budget, job.time_limit)
    last = start - 1
    since_checkpoint = 0
    try:
        for candidate in shard_candidates(kernel.space, job.shard_index, job.shard_count, start):
            budget.check_time()
            _absorb(report, kernel.evaluate(candidate, budget))
            last = candidate
            since_checkpoint += 1
            if store and since_checkpoint >= interval:
                report.nodes = base_nodes + budget.nodes
                store.save(job, last, report)
                since_checkpoint = 0
        report.exhausted = True
    except BudgetExhausted as e:
        report.truncated_reason = e.reason
        logging.warning(
            f"Shard {job.shard_index}/{job.shard_count} of {job.kind.value} stopped by {e.reason} after candidate {last}"
        )
    report.nodes = base_nodes + budget.nodes

    if store:
        if report.exhausted:
            store.clear()
        else:
            store.save(job, last, report)
    return report


def shard_checkpoint_path(path: Union[str, Path], job: SearchJob) -> Path:
    path = Path(path)
    return path.with_name(f"{path.stem}.shard{job.shard_index}of{job.shard_count}{path.suffix or '.json'}")


class Engine:
    def __init__(
        self,
        jobs: int = 1,
        checkpoint_path: Optional[Union[str, Path]] = None,
        storage: Optional[ReportStorage] = None,
        checkpoint_interval: Optional[int] = None,
    ):
        if jobs < 0:
            raise ValueError("jobs must be nonnegative")
        self.jobs = jobs or psutil.cpu_count(logical=False) or 1
        self.checkpoint_path = checkpoint_path
        self.storage = storage
        self.checkpoint_interval = checkpoint_interval

    def split(self, job: SearchJob) -> List[SearchJob]:
        """Sub-shards (i + n*j, n*N) of the shard (i, n), j = 0..N-1."""
        if self.jobs == 1 or not job.shardable:
            return [job]
        count = job.shard_count * self.jobs
        return [job.shard(job.shard_index + job.shard_count * j, count) for j in range(self.jobs)]

    def run(self, job: SearchJob, kernel: Optional[SearchKernel] = None) -> SearchReport:
        logging.info(
            f"Starting {job.kind.value} on Z_{job.p}^{job.d}, shard {job.shard_index}/{job.shard_count}, {self.jobs} worker(s)"
        )
        started = time.perf_counter()
        subjobs = self.split(job) if kernel is None else [job]
        if len(subjobs) == 1:
            reports = [run_shard(job, self.checkpoint_path, self.checkpoint_interval, kernel)]
        else:
            paths = [shard_checkpoint_path(self.checkpoint_path, sub) if self.checkpoint_path else None for sub in subjobs]
            with ProcessPoolExecutor(max_workers=len(subjobs)) as pool:
                futures = [
                    pool.submit(run_shard, sub, path, self.checkpoint_interval)
                    for sub, path in zip(subjobs, paths)
                ]
                reports = [f.result() for f in futures]
        # canonical certificate order for serial and parallel runs alike
        report = merge_reports(reports, job)
        report.wall_time = time.perf_counter() - started

        state = "exhausted" if report.exhausted else f"truncated ({report.truncated_reason})"
        logging.info(
            f"Finished {job.kind.value}: {report.enumerated} candidates, {report.found} found, {state}, {report.wall_time:.2f}s"
        )
        if self.storage is not None:
            self.storage.save_report(report)
        return report
