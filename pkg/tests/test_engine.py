from pathlib import Path

import psutil
import pytest

from zpgabor.engine.engine import Engine, make_kernel, run_shard, shard_checkpoint_path
from zpgabor.models.search import SearchJob, SearchKind, merge_reports
from zpgabor.search.enumeration import TileSweep, shard_candidates
from zpgabor.storage.checkpoint import CheckpointStore
from zpgabor.storage.sqlite_storage import SQLiteReportStorage
from zpgabor.storage.storage import ReportStorageError

from helpers import PROPERTY_CASES


def tiles_job(**options):
    return SearchJob(p=2, d=2, kind=SearchKind.ALL_TILES, **options)


def test_kernel_lookup():
    assert isinstance(make_kernel(tiles_job()), TileSweep)


@pytest.mark.parametrize("count", [1, 2, 3, 7])
def test_shard_candidates_partition(count):
    seen = sorted(c for i in range(count) for c in shard_candidates(20, i, count))
    assert seen == list(range(20))


@pytest.mark.parametrize("p,d", [(p, d) for p in (2, 3, 5, 7) for d in (1, 2)])
def test_shard_candidates_partition_random_spaces(p, d, rng):
    size = p ** d
    for _ in range(PROPERTY_CASES):
        space = rng.randint(0, 1 << min(size, 10))
        count = rng.randint(1, 12)
        start = rng.randint(0, space)
        shards = [list(shard_candidates(space, i, count, start)) for i in range(count)]
        assert sorted(c for shard in shards for c in shard) == list(range(start, space))
        for i, shard in enumerate(shards):
            assert all(c % count == i for c in shard)
            assert shard == sorted(shard)


@pytest.mark.parametrize("p,d", [(2, 1), (3, 1), (2, 2)])
def test_random_shard_counts_merge_to_the_full_sweep(p, d, rng):
    job = SearchJob(p=p, d=d, kind=SearchKind.ALL_SPECTRAL)
    full = Engine().run(job)
    for _ in range(5):
        count = rng.randint(1, 9)
        merged = merge_reports([Engine().run(job.shard(i, count)) for i in range(count)], job)
        assert merged.model_dump() == full.model_dump()


def test_shard_candidates_resume_point():
    assert list(shard_candidates(20, 1, 3, 5)) == [7, 10, 13, 16, 19]
    assert list(shard_candidates(20, 0, 1, 18)) == [18, 19]


def test_resume_until_exhausted(tmp_path):
    full = Engine().run(tiles_job())
    path = tmp_path / "tiles.json"
    job = tiles_job(node_budget=5)
    engine = Engine(checkpoint_path=path)
    runs = 0
    while True:
        report = engine.run(job)
        runs += 1
        if report.exhausted:
            break
        assert report.truncated_reason == "node_budget"
        assert path.exists()
        assert runs < 50
    assert runs > 1
    assert not path.exists()
    assert report.enumerated == full.enumerated
    assert report.found == full.found
    assert report.counts == full.counts
    assert report.certificates == full.certificates


def test_truncated_run_leaves_checkpoint(tmp_path):
    path = tmp_path / "tiles.json"
    job = tiles_job(node_budget=5)
    report = run_shard(job, path)
    checkpoint = CheckpointStore(path).load(job)
    assert checkpoint is not None
    assert checkpoint.last_candidate == report.enumerated
    assert checkpoint.partial_report.enumerated == report.enumerated


def test_periodic_checkpoints_are_cleared_on_completion(tmp_path):
    path = tmp_path / "tiles.json"
    report = run_shard(tiles_job(), path, checkpoint_interval=1)
    assert report.exhausted
    assert not path.exists()


def test_checkpoint_of_another_job_is_ignored(tmp_path):
    path = tmp_path / "tiles.json"
    other = tiles_job(node_budget=5)
    run_shard(other, path)
    assert CheckpointStore(path).load(tiles_job()) is None
    report = run_shard(tiles_job(), path)
    assert report.exhausted
    assert report.found == 11


def test_unreadable_checkpoint(tmp_path):
    path = tmp_path / "tiles.json"
    path.write_text("not json", encoding="utf-8")
    with pytest.raises(ReportStorageError):
        CheckpointStore(path).load(tiles_job())


def test_shard_checkpoint_path():
    job = tiles_job(shard_index=1, shard_count=4)
    assert shard_checkpoint_path("run/ck.json", job) == Path("run/ck.shard1of4.json")
    assert shard_checkpoint_path("run/ck", job) == Path("run/ck.shard1of4.json")


def test_split_interleaves_sub_shards():
    engine = Engine(jobs=3)
    subjobs = engine.split(tiles_job(shard_index=1, shard_count=2))
    assert [(j.shard_index, j.shard_count) for j in subjobs] == [(1, 6), (3, 6), (5, 6)]
    single = SearchJob(p=2, d=2, kind=SearchKind.FIND_SPECTRUM, target={"p": 2, "d": 2, "points": [[0, 0]]})
    assert engine.split(single) == [single]
    assert Engine().split(tiles_job()) == [tiles_job()]


def test_parallel_run_matches_serial():
    serial = Engine().run(tiles_job())
    parallel = Engine(jobs=2).run(tiles_job())
    assert parallel.model_dump() == serial.model_dump()


def test_worker_count_defaults_to_physical_cores(monkeypatch):
    monkeypatch.setattr(psutil, "cpu_count", lambda logical=True: 6)
    assert Engine(jobs=0).jobs == 6
    monkeypatch.setattr(psutil, "cpu_count", lambda logical=True: None)
    assert Engine(jobs=0).jobs == 1
    with pytest.raises(ValueError):
        Engine(jobs=-1)


def test_finished_reports_are_archived(tmp_path):
    storage = SQLiteReportStorage(tmp_path / "reports.db")
    report = Engine(storage=storage).run(tiles_job())
    (summary,) = storage.list_reports()
    assert summary["kind"] == "all-tiles"
    assert summary["found"] == report.found
    assert summary["exhausted"] is True
    assert storage.get_report(summary["id"]).certificates == report.certificates
