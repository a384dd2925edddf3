"""Resumable search checkpoints: one JSON file per shard, replaced atomically."""
import logging
import os
import tempfile
from pathlib import Path
from typing import Optional, Union

from pydantic import ValidationError

from zpgabor.models.search import Checkpoint, SearchJob, SearchReport
from zpgabor.storage.storage import ReportStorageError


class CheckpointStore:
    def __init__(self, path: Union[str, Path]):
        self.path = Path(path)

    def load(self, job: SearchJob) -> Optional[Checkpoint]:
        """The stored checkpoint if it belongs to `job`, otherwise None."""
        if not self.path.exists():
            return None
        try:
            checkpoint = Checkpoint.model_validate_json(self.path.read_text(encoding="utf-8"))
        except (OSError, ValidationError) as e:
            raise ReportStorageError(f"unreadable checkpoint {self.path}: {e}", {"path": str(self.path)})
        if checkpoint.job != job:
            logging.warning(f"Ignoring checkpoint {self.path}: it was written for a different job")
            return None
        logging.info(f"Resuming from checkpoint {self.path} after candidate {checkpoint.last_candidate}")
        return checkpoint

    def save(self, job: SearchJob, last_candidate: int, partial: SearchReport) -> None:
        checkpoint = Checkpoint(job=job, last_candidate=last_candidate, partial_report=partial)
        directory = self.path.parent
        directory.mkdir(parents=True, exist_ok=True)
        fd, tmp = tempfile.mkstemp(prefix=self.path.name, suffix=".tmp", dir=directory)
        try:
            with os.fdopen(fd, "w", encoding="utf-8") as f:
                f.write(checkpoint.model_dump_json(indent=2))
            os.replace(tmp, self.path)
        except OSError as e:
            if os.path.exists(tmp):
                os.unlink(tmp)
            raise ReportStorageError(f"cannot write checkpoint {self.path}: {e}", {"path": str(self.path)})
        logging.info(f"Checkpoint written to {self.path} at candidate {last_candidate}")

    def clear(self) -> None:
        if self.path.exists():
            self.path.unlink()
