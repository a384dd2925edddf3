import json
from enum import Enum
from typing import Any, Dict, List, Optional

from pydantic import BaseModel, Field, model_validator

from zpgabor.config import get_settings
from zpgabor.models.documents import PointSetDocument, WindowDocument


class SearchKind(str, Enum):
    ALL_TILES = "all-tiles"
    ALL_SPECTRAL = "all-spectral"
    FUGLEDE_COMPARE = "fuglede-compare"
    FIND_SPECTRUM = "find-spectrum"
    FIND_TILING = "find-tiling"
    EXOTIC_WINDOW = "exotic-window"
    WEIGHTED_SWEEP = "weighted-sweep"
    NONSEPARABLE = "nonseparable"


SHARDABLE_KINDS = {
    SearchKind.ALL_TILES,
    SearchKind.ALL_SPECTRAL,
    SearchKind.FUGLEDE_COMPARE,
    SearchKind.EXOTIC_WINDOW,
    SearchKind.WEIGHTED_SWEEP,
}


class SearchJob(BaseModel):
    p: int
    d: int
    kind: SearchKind
    target: Optional[PointSetDocument] = None
    window: Optional[WindowDocument] = None
    alphabet: List[str] = Field(default_factory=list)
    node_budget: int = Field(default_factory=lambda: get_settings().default_node_budget, gt=0)
    time_limit: Optional[float] = Field(default=None, gt=0)
    shard_index: int = Field(default=0, ge=0)
    shard_count: int = Field(default=1, ge=1)
    symmetry_reduction: bool = False
    prefilter: bool = True

    @model_validator(mode="after")
    def validate_job(self) -> "SearchJob":
        if self.shard_index >= self.shard_count:
            raise ValueError(f"shard index {self.shard_index} must be below shard count {self.shard_count}")
        if self.kind in (SearchKind.FIND_SPECTRUM, SearchKind.FIND_TILING) and self.target is None:
            raise ValueError(f"{self.kind.value} needs a target set")
        if self.kind == SearchKind.NONSEPARABLE and self.window is None:
            raise ValueError("nonseparable hunt needs a window")
        if self.kind in (SearchKind.EXOTIC_WINDOW, SearchKind.WEIGHTED_SWEEP) and not self.alphabet:
            raise ValueError(f"{self.kind.value} needs a value alphabet")
        if self.kind not in SHARDABLE_KINDS and self.shard_count != 1:
            raise ValueError(f"{self.kind.value} is a single search and cannot be sharded")
        return self

    @property
    def shardable(self) -> bool:
        return self.kind in SHARDABLE_KINDS

    def shard(self, index: int, count: int) -> "SearchJob":
        return self.model_copy(update={"shard_index": index, "shard_count": count})


def _certificate_key(cert: Dict[str, Any]):
    return cert.get("candidate", -1), json.dumps(cert, sort_keys=True)


class SearchReport(BaseModel):
    job: SearchJob
    enumerated: int = 0
    nodes: int = 0
    found: int = 0
    counts: Dict[str, int] = Field(default_factory=dict)
    certificates: List[Dict[str, Any]] = Field(default_factory=list)
    exhausted: bool = False
    truncated_reason: Optional[str] = None
    orbit_representatives: Optional[int] = None
    exploratory: bool = False
    wall_time: float = Field(default=0.0, exclude=True)

    def bump(self, key: str, n: int = 1) -> None:
        self.counts[key] = self.counts.get(key, 0) + n

    def to_json(self) -> str:
        return json.dumps(self.model_dump(mode="json"), indent=2, sort_keys=True)


class Checkpoint(BaseModel):
    job: SearchJob
    last_candidate: int
    partial_report: SearchReport


def merge_reports(reports: List[SearchReport], job: SearchJob) -> SearchReport:
    """Combine reports of disjoint shards of `job`; order of `reports` does not matter."""
    merged = SearchReport(job=job, exhausted=all(r.exhausted for r in reports) if reports else False)
    reasons = sorted({r.truncated_reason for r in reports if r.truncated_reason})
    merged.truncated_reason = reasons[0] if reasons else None
    orbit_counts = [r.orbit_representatives for r in reports if r.orbit_representatives is not None]
    merged.orbit_representatives = sum(orbit_counts) if orbit_counts else None
    for r in reports:
        merged.enumerated += r.enumerated
        merged.nodes += r.nodes
        merged.found += r.found
        merged.exploratory = merged.exploratory or r.exploratory
        merged.wall_time = max(merged.wall_time, r.wall_time)
        for key, value in r.counts.items():
            merged.bump(key, value)
        merged.certificates.extend(r.certificates)
    merged.certificates.sort(key=_certificate_key)
    return merged
